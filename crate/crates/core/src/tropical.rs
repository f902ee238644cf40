//! Leading-exponent analysis of the path polynomials under power-law
//! weights, and the linear description of the boundedness cone it
//! induces.
//!
//! Substituting `w_j = t^{lambda_j}` for the free face weights (and 1
//! for the boundary faces) turns every minor into a function of `t`
//! whose leading exponent is `T_i(lambda) = max_{mu} lambda . mu` over
//! the support of the free part. A ratio with exponent vector `alpha`
//! stays bounded along that family only if
//! `sum_i alpha_i T_i(lambda) <= 0`. Each `T_i` is piecewise linear;
//! on every maximal cone of the common refinement of the support
//! normal fans the whole sum is linear, so it suffices to impose the
//! inequality at the extreme directions of those cones. Harvesting
//! them yields a finite system which, together with the boundary
//! balance equalities, cuts out the cone of bounded exponent vectors.

use std::collections::HashSet;
use std::time::Instant;

use num::integer::gcd;
use num::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cone::{dd_rays, reduce, simplex, ConeH, Int, Rat};
use crate::error::{Error, Result};
use crate::network::{free_count, PluckerTable};
use crate::pluecker::{all_indices, RatioVector};

/// Newton point set of the free part of every minor, in lex rank order.
#[derive(Clone, Debug)]
pub struct TropicalProfile {
    dim: usize,
    supports: Vec<Vec<Vec<i64>>>,
}

impl TropicalProfile {
    pub fn new(table: &PluckerTable) -> Self {
        let dim = free_count(table.n());
        let supports = table
            .minors()
            .iter()
            .map(|m| m.free().support_points())
            .collect();
        TropicalProfile { dim, supports }
    }

    /// Profile over arbitrary point sets; every set must be non-empty
    /// and live in the same ambient dimension.
    pub fn from_supports(dim: usize, supports: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        for s in &supports {
            if s.is_empty() {
                return Err(Error::Unsupported("empty support".into()));
            }
            for p in s {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: p.len(),
                    });
                }
            }
        }
        Ok(TropicalProfile { dim, supports })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn supports(&self) -> &[Vec<Vec<i64>>] {
        &self.supports
    }
}

/// Nonzero integer direction in weight-exponent space, content 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaRay {
    lambda: Vec<i64>,
}

impl LambdaRay {
    pub fn new(mut lambda: Vec<i64>) -> Result<Self> {
        let g = lambda.iter().fold(0i64, |acc, &x| gcd(acc, x));
        if g == 0 {
            return Err(Error::Unsupported("zero weight direction".into()));
        }
        for x in &mut lambda {
            *x /= g;
        }
        Ok(LambdaRay { lambda })
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }
}

fn dot_i(p: &[i64], lambda: &[i64]) -> i128 {
    p.iter()
        .zip(lambda)
        .map(|(&a, &b)| i128::from(a) * i128::from(b))
        .sum()
}

/// Leading exponent of a minor at weights `t^lambda`: the largest dot
/// product over the support, together with the indices achieving it.
pub fn tropical_value(support: &[Vec<i64>], lambda: &[i64]) -> (i64, Vec<usize>) {
    assert!(!support.is_empty(), "support must be non-empty");
    let mut best = i128::MIN;
    let mut arg = Vec::new();
    for (j, p) in support.iter().enumerate() {
        let v = dot_i(p, lambda);
        if v > best {
            best = v;
            arg.clear();
        }
        if v == best {
            arg.push(j);
        }
    }
    (i64::try_from(best).expect("leading exponent fits i64"), arg)
}

/// Row of leading exponents `(T_1(lambda), .., T_N(lambda))`. Exponent
/// vectors of bounded ratios satisfy `row . alpha <= 0`.
pub fn alpha_inequality(profile: &TropicalProfile, lambda: &[i64]) -> Vec<i64> {
    profile
        .supports
        .iter()
        .map(|s| tropical_value(s, lambda).0)
        .collect()
}

/// `sum_i alpha_i T_i(lambda)`, summing only over the support of alpha.
fn tropic_score(profile: &TropicalProfile, alpha: &[i64], lambda: &[i64]) -> i128 {
    alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| i128::from(a) * i128::from(tropical_value(&profile.supports[i], lambda).0))
        .sum()
}

/// Maximal cone of the common refinement fan. `rows` are the defining
/// halfspaces (`row . lambda >= 0`); `picks[i]` is the index of the
/// support point of coordinate `i` that leads on this cone.
#[derive(Clone, Debug)]
pub struct FanCone {
    rows: Vec<Vec<i64>>,
    rays: Vec<LambdaRay>,
    lin: Vec<LambdaRay>,
    picks: Vec<usize>,
}

impl FanCone {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rays(&self) -> &[LambdaRay] {
        &self.rays
    }

    pub fn lin(&self) -> &[LambdaRay] {
        &self.lin
    }

    pub fn picks(&self) -> &[usize] {
        &self.picks
    }

    pub fn contains(&self, lambda: &[i64]) -> bool {
        self.rows.iter().all(|r| dot_i(r, lambda) >= 0)
    }
}

fn normalize_i64(mut row: Vec<i64>) -> Vec<i64> {
    let g = row.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g > 1 {
        for x in &mut row {
            *x /= g;
        }
    }
    row
}

/// Whether `{lambda : row . lambda >= 0 for all rows}` is full
/// dimensional, i.e. admits a point with every row strictly positive.
fn strictly_feasible(rows: &[Vec<i64>], dim: usize) -> bool {
    if rows.is_empty() {
        return true;
    }
    // lambda = u - v with u, v >= 0 and one slack per row:
    // row . (u - v) - s = 1.
    let m = rows.len();
    let a: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut eq = Vec::with_capacity(2 * dim + m);
            for &x in row {
                eq.push(Rat::from_integer(Int::from(x)));
            }
            for &x in row {
                eq.push(Rat::from_integer(Int::from(-x)));
            }
            for s in 0..m {
                eq.push(if s == r { -Rat::one() } else { Rat::from_integer(Int::from(0)) });
            }
            eq
        })
        .collect();
    let b = vec![Rat::one(); m];
    simplex::feasible(&a, &b).is_ok()
}

struct Cell {
    rows: Vec<Vec<i64>>,
    picks: Vec<usize>,
}

fn check_budget(start: Instant, budget_seconds: Option<u64>) -> Result<()> {
    if let Some(limit) = budget_seconds {
        if start.elapsed().as_secs() >= limit {
            return Err(Error::Budget { seconds: limit });
        }
    }
    Ok(())
}

/// Common refinement of the support normal fans, built incrementally:
/// each multi-point support splits every surviving cell once per
/// selectable leading point, and only full-dimensional cells survive.
pub fn refine_fan(
    profile: &TropicalProfile,
    budget_seconds: Option<u64>,
) -> Result<Vec<FanCone>> {
    let start = Instant::now();
    let d = profile.dim;

    // Distinct multi-point supports; coordinates sharing a support
    // always lead at the same point, so they refine identically.
    let mut groups: Vec<&Vec<Vec<i64>>> = Vec::new();
    let mut group_of: Vec<Option<usize>> = vec![None; profile.supports.len()];
    for (i, s) in profile.supports.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        let g = match groups.iter().position(|t| *t == s) {
            Some(g) => g,
            None => {
                groups.push(s);
                groups.len() - 1
            }
        };
        group_of[i] = Some(g);
    }

    // A point can lead on a full-dimensional cell only if its normal
    // cone within its own support is full dimensional.
    let selectable: Vec<Vec<usize>> = groups
        .par_iter()
        .map(|pts| {
            (0..pts.len())
                .filter(|&j| {
                    let rows: Vec<Vec<i64>> = (0..pts.len())
                        .filter(|&l| l != j)
                        .map(|l| {
                            normalize_i64(
                                pts[j].iter().zip(&pts[l]).map(|(a, b)| a - b).collect(),
                            )
                        })
                        .collect();
                    strictly_feasible(&rows, d)
                })
                .collect()
        })
        .collect();

    let mut cells = vec![Cell {
        rows: Vec::new(),
        picks: Vec::new(),
    }];
    for (g, pts) in groups.iter().enumerate() {
        check_budget(start, budget_seconds)?;
        let split: Vec<Vec<Cell>> = cells
            .par_iter()
            .map(|cell| -> Result<Vec<Cell>> {
                check_budget(start, budget_seconds)?;
                let mut out = Vec::new();
                for &j in &selectable[g] {
                    let mut rows = cell.rows.clone();
                    for l in 0..pts.len() {
                        if l != j {
                            rows.push(normalize_i64(
                                pts[j].iter().zip(&pts[l]).map(|(a, b)| a - b).collect(),
                            ));
                        }
                    }
                    rows.sort();
                    rows.dedup();
                    if strictly_feasible(&rows, d) {
                        let mut picks = cell.picks.clone();
                        picks.push(j);
                        out.push(Cell { rows, picks });
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        cells = split.into_iter().flatten().collect();
    }

    cells
        .par_iter()
        .map(|cell| -> Result<FanCone> {
            check_budget(start, budget_seconds)?;
            // cell rows are row . lambda >= 0; the cone type wants <= 0
            let rows_int: Vec<Vec<Int>> = cell
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| Int::from(-x)).collect())
                .collect();
            let v = dd_rays(&ConeH::new(d, rows_int, Vec::new())?);
            let to_i64 = |row: &Vec<Int>| -> Result<Vec<i64>> {
                row.iter()
                    .map(|x| {
                        i64::try_from(x)
                            .map_err(|_| Error::Overflow("fan generator exceeds i64".into()))
                    })
                    .collect()
            };
            let rays = v
                .rays()
                .iter()
                .map(|r| LambdaRay::new(to_i64(r)?))
                .collect::<Result<Vec<_>>>()?;
            let lin = v
                .lin()
                .iter()
                .map(|l| LambdaRay::new(to_i64(l)?))
                .collect::<Result<Vec<_>>>()?;
            let picks = group_of
                .iter()
                .map(|g| g.map_or(0, |g| cell.picks[g]))
                .collect();
            Ok(FanCone {
                rows: cell.rows.clone(),
                rays,
                lin,
                picks,
            })
        })
        .collect()
}

/// One balance equality per network edge label: the exponents of the
/// index sets containing the label must sum to zero.
fn balance_rows(n: u8) -> Vec<Vec<Int>> {
    let idxs = all_indices(n);
    (1..=2 * n)
        .map(|e| {
            idxs.iter()
                .map(|s| Int::from(i64::from(s.contains(e))))
                .collect()
        })
        .collect()
}

/// Irredundant linear description of the boundedness cone, together
/// with the weight direction that generated each surviving inequality.
/// Inequality rows follow the cone convention `row . alpha <= 0`.
#[derive(Clone, Debug)]
pub struct FSystem {
    n: u8,
    cone: ConeH,
    sources: Vec<LambdaRay>,
}

impl FSystem {
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn cone(&self) -> &ConeH {
        &self.cone
    }

    /// Generating weight direction per inequality row of `cone`.
    pub fn sources(&self) -> &[LambdaRay] {
        &self.sources
    }
}

pub fn build_f(n: u8, budget_seconds: Option<u64>) -> Result<FSystem> {
    let table = PluckerTable::new(n)?;
    build_f_from(&table, budget_seconds)
}

pub fn build_f_from(table: &PluckerTable, budget_seconds: Option<u64>) -> Result<FSystem> {
    let profile = TropicalProfile::new(table);
    let fan = refine_fan(&profile, budget_seconds)?;

    // Extreme directions repeat across adjacent cones; keep first
    // occurrences. Lineality directions constrain both signs.
    let mut seen_dir: HashSet<Vec<i64>> = HashSet::new();
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    let mut push_dir = |lam: &[i64], dirs: &mut Vec<Vec<i64>>| {
        if seen_dir.insert(lam.to_vec()) {
            dirs.push(lam.to_vec());
        }
    };
    for cone in &fan {
        for r in cone.rays() {
            push_dir(r.lambda(), &mut dirs);
        }
        for l in cone.lin() {
            push_dir(l.lambda(), &mut dirs);
            let neg: Vec<i64> = l.lambda().iter().map(|x| -x).collect();
            push_dir(&neg, &mut dirs);
        }
    }

    let mut seen_row: HashSet<Vec<i64>> = HashSet::new();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut sources: Vec<LambdaRay> = Vec::new();
    for dir in dirs {
        // The harvested condition T-row . alpha <= 0 matches the cone
        // row convention as is.
        let row = alpha_inequality(&profile, &dir);
        if row.iter().all(|&x| x == 0) {
            continue;
        }
        let row = normalize_i64(row);
        if seen_row.insert(row.clone()) {
            rows.push(row.into_iter().map(Int::from).collect());
            sources.push(LambdaRay::new(dir)?);
        }
    }

    let h = ConeH::new(profile.len(), rows, balance_rows(table.n()))?;
    let (cone, provenance) = reduce(&h);
    let sources = provenance.into_iter().map(|i| sources[i].clone()).collect();
    Ok(FSystem {
        n: table.n(),
        cone,
        sources,
    })
}

/// Verdict of a boundedness test. `Violated` carries a weight
/// direction along which the ratio provably diverges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedVerdict {
    Bounded,
    NoViolationFound { checked: usize },
    Violated { lambda: Vec<i64> },
    St0Failure { element: usize },
}

/// Membership test against the full system. A violated inequality is
/// reported through its generating weight direction.
pub fn bounded_exact(f: &FSystem, v: &RatioVector) -> Result<BoundedVerdict> {
    let alpha = v.alpha();
    if alpha.len() != f.cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.cone.dim(),
            got: alpha.len(),
        });
    }
    if let Some(e) = v.st0_defects().iter().position(|d| *d != 0) {
        return Ok(BoundedVerdict::St0Failure { element: e + 1 });
    }
    for (row, src) in f.cone.ineqs().iter().zip(&f.sources) {
        let dot: Int = row
            .iter()
            .zip(alpha)
            .map(|(r, &a)| r * Int::from(a))
            .sum();
        if dot.is_positive() {
            return Ok(BoundedVerdict::Violated {
                lambda: src.lambda().to_vec(),
            });
        }
    }
    Ok(BoundedVerdict::Bounded)
}

/// Necessary boundedness check by sampling weight directions: all
/// signed axes, the supplied extra directions, then `k` integer
/// directions drawn uniformly from `[-halfwidth, halfwidth]^d`.
pub fn bounded_sampled(
    profile: &TropicalProfile,
    v: &RatioVector,
    k: usize,
    halfwidth: i64,
    seed: u64,
    extra: &[Vec<i64>],
) -> Result<BoundedVerdict> {
    let alpha = v.alpha();
    if alpha.len() != profile.len() {
        return Err(Error::DimensionMismatch {
            expected: profile.len(),
            got: alpha.len(),
        });
    }
    if let Some(e) = v.st0_defects().iter().position(|d| *d != 0) {
        return Ok(BoundedVerdict::St0Failure { element: e + 1 });
    }
    let d = profile.dim;
    let mut checked = 0;
    let probe = |lam: &[i64], checked: &mut usize| -> Option<BoundedVerdict> {
        *checked += 1;
        (tropic_score(profile, alpha, lam) > 0).then(|| BoundedVerdict::Violated {
            lambda: lam.to_vec(),
        })
    };
    for j in 0..d {
        for sign in [1i64, -1] {
            let mut lam = vec![0i64; d];
            lam[j] = sign;
            if let Some(v) = probe(&lam, &mut checked) {
                return Ok(v);
            }
        }
    }
    for lam in extra {
        if lam.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: lam.len(),
            });
        }
        if let Some(v) = probe(lam, &mut checked) {
            return Ok(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..k {
        let lam: Vec<i64> = (0..d).map(|_| rng.gen_range(-halfwidth..=halfwidth)).collect();
        if let Some(v) = probe(&lam, &mut checked) {
            return Ok(v);
        }
    }
    Ok(BoundedVerdict::NoViolationFound { checked })
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use num::{BigInt, Zero};

    use super::*;
    use crate::network::MinorPoly;
    use crate::primitive::all_primitives;

    fn table3() -> &'static PluckerTable {
        static T: OnceLock<PluckerTable> = OnceLock::new();
        T.get_or_init(|| PluckerTable::new(3).unwrap())
    }

    fn f3() -> &'static FSystem {
        static F: OnceLock<FSystem> = OnceLock::new();
        F.get_or_init(|| build_f_from(table3(), None).unwrap())
    }

    #[test]
    fn leading_exponent_on_simple_supports() {
        let constant = vec![vec![0i64, 0]];
        assert_eq!(tropical_value(&constant, &[7, -3]), (0, vec![0]));

        // segment {0, e1}: sorted support order puts 0 first
        let seg = vec![vec![0i64], vec![1]];
        assert_eq!(tropical_value(&seg, &[1]), (1, vec![1]));
        assert_eq!(tropical_value(&seg, &[-1]), (0, vec![0]));
        // tie at lambda = 0
        assert_eq!(tropical_value(&seg, &[0]), (0, vec![0, 1]));
    }

    #[test]
    fn direction_normalization() {
        let r = LambdaRay::new(vec![4, -6, 0]).unwrap();
        assert_eq!(r.lambda(), &[2, -3, 0]);
        assert!(LambdaRay::new(vec![0, 0]).is_err());
    }

    #[test]
    fn zero_direction_gives_vacuous_row() {
        let profile = TropicalProfile::new(table3());
        let row = alpha_inequality(&profile, &[0, 0, 0, 0]);
        assert!(row.iter().all(|&t| t == 0));
    }

    #[test]
    fn fan_of_singletons_is_whole_space() {
        let profile =
            TropicalProfile::from_supports(2, vec![vec![vec![0, 0]], vec![vec![1, 2]]]).unwrap();
        let fan = refine_fan(&profile, None).unwrap();
        assert_eq!(fan.len(), 1);
        assert!(fan[0].rays().is_empty());
        assert_eq!(fan[0].lin().len(), 2);
        assert_eq!(fan[0].picks(), &[0, 0]);
        assert!(fan[0].contains(&[3, -5]));
    }

    #[test]
    fn fan_of_segment_splits_line() {
        let profile = TropicalProfile::from_supports(
            1,
            vec![vec![vec![0], vec![1]], vec![vec![5]]],
        )
        .unwrap();
        let fan = refine_fan(&profile, None).unwrap();
        assert_eq!(fan.len(), 2);
        // cell choosing the point 0 leads on lambda <= 0
        assert_eq!(fan[0].picks(), &[0, 0]);
        assert_eq!(fan[0].rays()[0].lambda(), &[-1]);
        assert_eq!(fan[1].picks(), &[1, 0]);
        assert_eq!(fan[1].rays()[0].lambda(), &[1]);
        assert!(fan[0].contains(&[-4]) && fan[1].contains(&[4]));
    }

    #[test]
    fn zero_budget_aborts() {
        assert!(matches!(
            build_f(3, Some(0)),
            Err(Error::Budget { seconds: 0 })
        ));
    }

    // Order 2 end to end, fully hand checked. The only multi-point
    // support is the one-variable segment {0, 1} of the [1 3] minor,
    // so the fan splits the line at the origin; harvesting both
    // directions yields exactly the two facets of the hull of the two
    // elementary ratio vectors.
    #[test]
    fn order_two_system_matches_hand_computation() {
        let f = build_f(2, None).unwrap();
        assert_eq!(f.cone().dim(), 6);
        assert_eq!(f.cone().eqs().len(), 4);
        assert_eq!(f.cone().ineqs().len(), 2);
        assert_eq!(f.sources().len(), 2);

        let v = dd_rays(f.cone());
        assert!(v.lin().is_empty());
        let rays: Vec<Vec<i64>> = v
            .rays()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let mut expect = vec![vec![0, -1, 1, 1, -1, 0], vec![1, -1, 0, 0, -1, 1]];
        expect.sort();
        assert_eq!(rays, expect);

        let prims = all_primitives(2);
        for p in &prims {
            assert_eq!(bounded_exact(&f, &p.vector()).unwrap(), BoundedVerdict::Bounded);
        }
        // reciprocal of a bounded ratio escapes along some direction
        match bounded_exact(&f, &prims[0].vector().negated()).unwrap() {
            BoundedVerdict::Violated { lambda } => assert_eq!(lambda.len(), 1),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn fan_covers_sampled_directions() {
        let profile = TropicalProfile::new(table3());
        let fan = refine_fan(&profile, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let lam: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
            assert!(fan.iter().any(|c| c.contains(&lam)));
        }
    }

    #[test]
    fn leading_point_constant_on_each_cone() {
        let profile = TropicalProfile::new(table3());
        let fan = refine_fan(&profile, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for cone in &fan {
            // sum of extreme rays is interior; lineality shifts stay so
            let mut x = vec![0i64; profile.dim()];
            for r in cone.rays() {
                for (xi, &ri) in x.iter_mut().zip(r.lambda()) {
                    *xi += ri;
                }
            }
            for l in cone.lin() {
                let z = rng.gen_range(-3i64..=3);
                for (xi, &li) in x.iter_mut().zip(l.lambda()) {
                    *xi += z * li;
                }
            }
            for (i, s) in profile.supports().iter().enumerate() {
                let (val, arg) = tropical_value(s, &x);
                let pick = cone.picks()[i];
                assert_eq!(i128::from(val), dot_i(&s[pick], &x));
                if s.len() > 1 {
                    assert_eq!(arg, vec![pick]);
                }
            }
        }
    }

    #[test]
    fn elementary_vectors_never_violate_order_three() {
        let profile = TropicalProfile::new(table3());
        let prims: Vec<Vec<i64>> = all_primitives(3)
            .iter()
            .map(|p| p.vector().alpha().to_vec())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let lam: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
            let row = alpha_inequality(&profile, &lam);
            for alpha in &prims {
                let s: i128 = row
                    .iter()
                    .zip(alpha)
                    .map(|(&t, &a)| i128::from(t) * i128::from(a))
                    .sum();
                assert!(s <= 0, "violated at lambda {lam:?}");
            }
        }
    }

    #[test]
    fn elementary_vectors_never_violate_order_four() {
        let table = PluckerTable::new(4).unwrap();
        let profile = TropicalProfile::new(&table);
        let prims: Vec<Vec<i64>> = all_primitives(4)
            .iter()
            .map(|p| p.vector().alpha().to_vec())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..1000 {
            let lam: Vec<i64> = (0..9).map(|_| rng.gen_range(-20..=20)).collect();
            let row = alpha_inequality(&profile, &lam);
            for alpha in &prims {
                let s: i128 = row
                    .iter()
                    .zip(alpha)
                    .map(|(&t, &a)| i128::from(t) * i128::from(a))
                    .sum();
                assert!(s <= 0, "violated at lambda {lam:?}");
            }
        }
    }

    #[test]
    fn sampled_check_accepts_elementary_vectors() {
        let profile = TropicalProfile::new(table3());
        for p in all_primitives(3) {
            let verdict =
                bounded_sampled(&profile, &p.vector(), 500, 9, 15, &[]).unwrap();
            assert_eq!(verdict, BoundedVerdict::NoViolationFound { checked: 508 });
        }
    }

    #[test]
    fn trivial_memberships() {
        let f = f3();
        assert_eq!(
            bounded_exact(f, &RatioVector::zero(3)).unwrap(),
            BoundedVerdict::Bounded
        );
        // a single minor with exponent 1 fails balance at its smallest element
        let idx = crate::pluecker::PluckerIndex::new(3, vec![1, 2, 3]).unwrap();
        let v = RatioVector::from_support(3, &[(idx, 1)]).unwrap();
        assert_eq!(
            bounded_exact(f, &v).unwrap(),
            BoundedVerdict::St0Failure { element: 1 }
        );
        let profile = TropicalProfile::new(table3());
        assert_eq!(
            bounded_sampled(&profile, &v, 10, 5, 1, &[]).unwrap(),
            BoundedVerdict::St0Failure { element: 1 }
        );
    }

    // The reduced order 3 system: the hull of the 18 elementary ratio
    // vectors, cut out by 16 facets inside the 14-dimensional balance
    // subspace.
    #[test]
    fn order_three_system_is_elementary_hull() {
        let f = f3();
        assert_eq!(f.cone().dim(), 20);
        assert_eq!(f.cone().eqs().len(), 6);
        assert_eq!(f.cone().ineqs().len(), 16);
        assert_eq!(f.sources().len(), 16);

        let v = dd_rays(f.cone());
        assert!(v.lin().is_empty());
        assert_eq!(v.span_dim(), 14);
        let mut expect: Vec<Vec<Int>> = all_primitives(3)
            .iter()
            .map(|p| p.vector().alpha().iter().map(|&a| Int::from(a)).collect())
            .collect();
        expect.sort();
        assert_eq!(v.rays(), &expect[..]);
    }

    #[test]
    fn system_invariant_under_relabeling() {
        let f = f3();
        for p in all_primitives(3) {
            let v = p.vector();
            for image in [v.cyclic_shift(), v.reflect()] {
                assert_eq!(bounded_exact(f, &image).unwrap(), BoundedVerdict::Bounded);
            }
        }
    }

    fn rat_pow(base: &Rat, e: i64) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e.unsigned_abs() {
            acc *= base;
        }
        if e < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    fn minor_at(m: &MinorPoly, w: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (exps, c) in m.free().sorted_terms() {
            let mut term = Rat::from_integer(BigInt::from(c));
            for (j, &e) in exps.iter().enumerate() {
                term *= rat_pow(&w[j], i64::from(e));
            }
            acc += term;
        }
        acc
    }

    fn ratio_at(table: &PluckerTable, v: &RatioVector, w: &[Rat]) -> Rat {
        let mut acc = Rat::one();
        for (idx, e) in v.support() {
            acc *= rat_pow(&minor_at(table.get(&idx), w), e);
        }
        acc
    }

    // A certified escape direction really does drive the reciprocal of
    // a bounded ratio upward along the weight family t^lambda.
    #[test]
    fn violation_direction_drives_reciprocal_up() {
        let table = table3();
        let profile = TropicalProfile::new(table);
        let recip = all_primitives(3)[0].vector().negated();
        let lambda = match bounded_sampled(&profile, &recip, 2000, 5, 7, &[]).unwrap() {
            BoundedVerdict::Violated { lambda } => lambda,
            other => panic!("expected violation, got {other:?}"),
        };
        let mut last = Rat::zero();
        for k in 2..=6u32 {
            let t = Rat::from_integer(BigInt::from(1i64 << k));
            let w: Vec<Rat> = lambda.iter().map(|&e| rat_pow(&t, e)).collect();
            let val = ratio_at(table, &recip, &w);
            assert!(val > last, "not increasing at t = 2^{k}");
            last = val;
        }
    }
}
