//! Candidate extreme rays. A bundled list of order-4 ratios, a parser
//! for the bracket-list ratio grammar, symmetry orbits, and a
//! verification pipeline that checks a candidate from every angle and
//! reports each verdict together with its certificate or witness.

pub mod search;
pub mod wsep;

use crate::cone::{self, ConeV, Int, MemberOutcome};
use crate::error::{Error, Result};
use crate::network::{subfree, PluckerTable};
use crate::pluecker::{PluckerIndex, RatioVector};
use crate::tropical::{bounded_exact, bounded_sampled, BoundedVerdict, FSystem, TropicalProfile};
use serde::Serialize;

/// Order-4 ratios bundled with the crate, one per line in the
/// `parse_ratio` grammar.
const BUNDLED: &str = include_str!("../../assets/extreme_rays_n4.txt");

fn parse_side(n: u8, text: &str, side: &str) -> Result<Vec<PluckerIndex>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('[') {
            return Err(Error::Parse(format!(
                "{side} side: expected '[' before {rest:?}"
            )));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| Error::Parse(format!("{side} side: unclosed bracket")))?;
        out.push(PluckerIndex::parse(n, &rest[..=close])?);
        rest = rest[close + 1..].trim_start();
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("{side} side is empty")));
    }
    Ok(out)
}

/// Parses a ratio written as bracketed index sets, numerator and
/// denominator separated by a single `/`. Repeated brackets
/// accumulate: the coefficient of an index set is its numerator
/// multiplicity minus its denominator multiplicity.
pub fn parse_ratio(n: u8, text: &str) -> Result<RatioVector> {
    let mut halves = text.split('/');
    let (num, den) = match (halves.next(), halves.next(), halves.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(Error::Parse(format!(
                "expected exactly one '/' in {text:?}"
            )))
        }
    };
    let mut support = Vec::new();
    for s in parse_side(n, num, "numerator")? {
        support.push((s, 1));
    }
    for s in parse_side(n, den, "denominator")? {
        support.push((s, -1));
    }
    RatioVector::from_support(n, &support)
}

/// The nine bundled order-4 ratios, in file order. Comment and blank
/// lines in the asset are skipped.
pub fn bundled_rays() -> Result<Vec<RatioVector>> {
    let mut out = Vec::new();
    for line in BUNDLED.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_ratio(4, line)?);
    }
    Ok(out)
}

/// Closure of `v` under the cyclic shift and the reflection, in
/// discovery order starting from `v` itself. The two symmetries
/// generate a dihedral group of order 4n, so the orbit has at most
/// 4n elements and its size divides 4n.
pub fn orbit(v: &RatioVector) -> Vec<RatioVector> {
    let mut out = vec![v.clone()];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for img in [cur.cyclic_shift(), cur.reflect()] {
            if !out.iter().any(|w| w.alpha() == img.alpha()) {
                out.push(img);
            }
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
}

/// Boundedness verdict together with the mode that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundedReport {
    /// Tested against a full inequality system.
    Exact {
        bounded: bool,
        witness_direction: Option<Vec<i64>>,
    },
    /// Sampled weight directions only; necessary, not sufficient.
    SampledNoViolation { checked: usize },
    /// A sampled direction along which the ratio diverges.
    SampledViolation { direction: Vec<i64> },
    /// The elementwise balance condition failed, which already rules
    /// out boundedness.
    BalanceFailed { element: usize },
}

/// Outcome of the membership test against the primitive hull. Both
/// branches carry an exact certificate, re-verified before return.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MemberReport {
    Inside {
        ray_coefficients: Vec<String>,
        lineality_coefficients: Vec<String>,
    },
    Separated { functional: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExtremalReport {
    Yes,
    No,
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SubFreeReport {
    /// The expanded denominator minus numerator was checked
    /// coefficient by coefficient.
    Symbolic {
        certified: bool,
        difference_terms: usize,
        negative_term: Option<String>,
    },
    /// Term cap hit; fell back to exact evaluation at random positive
    /// integer weights.
    SampledWeights {
        samples: usize,
        violation: Option<Vec<u64>>,
    },
    Skipped { reason: String },
}

/// Full verification record for one candidate ray.
#[derive(Clone, Debug, Serialize)]
pub struct RayReport {
    pub n: u8,
    pub ratio: String,
    pub st0: CheckOutcome,
    pub degree_balance: CheckOutcome,
    pub bounded: BoundedReport,
    pub primitive_member: MemberReport,
    pub extremal: ExtremalReport,
    pub subtraction_free: SubFreeReport,
}

impl RayReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything the pipeline may consult. Without `exact` the
/// boundedness check degrades to sampling and extremality is
/// reported unknown; every degradation is labeled in the report.
pub struct VerifyResources<'a> {
    pub exact: Option<&'a FSystem>,
    pub profile: &'a TropicalProfile,
    pub table: &'a PluckerTable,
    pub primitives: &'a ConeV,
    /// Random weight directions for the sampled boundedness tier.
    pub samples: usize,
    pub halfwidth: i64,
    /// Random positive weight vectors for the sampled ratio tier.
    pub weight_samples: usize,
    pub seed: u64,
    pub term_cap: usize,
}

/// Runs every check on one candidate: elementwise balance, degree
/// balance, boundedness, membership in the primitive hull,
/// extremality, and the subtraction-free certificate.
pub fn verify_ray(v: &RatioVector, res: &VerifyResources) -> Result<RayReport> {
    if v.n() != res.table.n() {
        return Err(Error::Unsupported(format!(
            "ratio has order {}, resources have order {}",
            v.n(),
            res.table.n()
        )));
    }

    let defects = v.st0_defects();
    let st0 = match defects.iter().position(|&d| d != 0) {
        None => CheckOutcome::Pass,
        Some(e) => CheckOutcome::Fail(format!(
            "element {} has numerator count minus denominator count = {:+}",
            e + 1,
            defects[e]
        )),
    };

    let nd = v.numerator_degree();
    let dd = v.denominator_degree();
    let degree_balance = if nd == dd {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail(format!("numerator degree {nd}, denominator degree {dd}"))
    };

    let bounded = match res.exact {
        Some(f) => match bounded_exact(f, v)? {
            BoundedVerdict::Bounded => BoundedReport::Exact {
                bounded: true,
                witness_direction: None,
            },
            BoundedVerdict::Violated { lambda } => BoundedReport::Exact {
                bounded: false,
                witness_direction: Some(lambda),
            },
            BoundedVerdict::St0Failure { element } => BoundedReport::BalanceFailed { element },
            BoundedVerdict::NoViolationFound { .. } => {
                unreachable!("exact mode never samples")
            }
        },
        None => match bounded_sampled(
            res.profile,
            v,
            res.samples,
            res.halfwidth,
            res.seed,
            &[],
        )? {
            BoundedVerdict::NoViolationFound { checked } => {
                BoundedReport::SampledNoViolation { checked }
            }
            BoundedVerdict::Violated { lambda } => {
                BoundedReport::SampledViolation { direction: lambda }
            }
            BoundedVerdict::St0Failure { element } => BoundedReport::BalanceFailed { element },
            BoundedVerdict::Bounded => unreachable!("sampled mode never proves boundedness"),
        },
    };

    let x: Vec<Int> = v.alpha().iter().map(|&a| Int::from(a)).collect();
    let primitive_member = match cone::member_v(&x, res.primitives)? {
        MemberOutcome::Inside {
            ray_coeffs,
            lin_coeffs,
        } => MemberReport::Inside {
            ray_coefficients: ray_coeffs.iter().map(|c| c.to_string()).collect(),
            lineality_coefficients: lin_coeffs.iter().map(|c| c.to_string()).collect(),
        },
        MemberOutcome::Separated { functional } => MemberReport::Separated {
            functional: functional.iter().map(|c| c.to_string()).collect(),
        },
    };

    let extremal = match res.exact {
        None => ExtremalReport::Unknown {
            reason: "no exact facet system supplied".into(),
        },
        Some(f) => match cone::extremality_test(&x, f.cone()) {
            Ok(true) => ExtremalReport::Yes,
            Ok(false) => ExtremalReport::No,
            Err(e) => ExtremalReport::Unknown {
                reason: e.to_string(),
            },
        },
    };

    let subtraction_free = if st0 != CheckOutcome::Pass {
        SubFreeReport::Skipped {
            reason: "ratio is not balanced".into(),
        }
    } else {
        match subfree::subtraction_free_check(res.table, v, res.term_cap) {
            Ok(out) => SubFreeReport::Symbolic {
                certified: out.certified,
                difference_terms: out.difference_terms,
                negative_term: out
                    .witness
                    .map(|(exps, c)| format!("coefficient {c} at exponents {exps:?}")),
            },
            Err(Error::TermCap { .. }) => {
                let s = subfree::bounded_on_samples(res.table, v, res.weight_samples, res.seed)?;
                SubFreeReport::SampledWeights {
                    samples: s.samples,
                    violation: s.violation,
                }
            }
            Err(e) => return Err(e),
        }
    };

    Ok(RayReport {
        n: v.n(),
        ratio: v.ratio_text(),
        st0,
        degree_balance,
        bounded,
        primitive_member,
        extremal,
        subtraction_free,
    })
}
