//! Discovery of extreme rays outside a conjectured sub-cone. Both
//! methods compare the full system `F` against the facets of a
//! candidate cone: a facet of the candidate that is not implied by
//! `F` certifies that the candidate is a strict sub-cone, and
//! minimizing a random functional over the part of `F` beyond that
//! facet lands on an extreme ray of `F` that the candidate misses.

use crate::cone::matrix::{normalized, rat_row_to_int};
use crate::cone::{self, ConeH, ConeV, Int, MinimizeOutcome};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One facet repair: the index of the missing facet row in the
/// scanned system and the ray found strictly beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchFind {
    pub facet: usize,
    pub ray: Vec<Int>,
    pub extremal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Indices of candidate facet rows not implied by the full system.
    /// Empty means the candidate cone already contains the full cone.
    pub missing_facets: Vec<usize>,
    pub finds: Vec<SearchFind>,
}

fn scan(f: &ConeH, p: &ConeH, rng: &mut ChaCha8Rng, attempts: usize) -> Result<SearchOutcome> {
    if p.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: p.dim(),
        });
    }
    let mut missing_facets = Vec::new();
    for (i, row) in p.ineqs().iter().enumerate() {
        if !cone::implied_row(f, row)? {
            missing_facets.push(i);
        }
    }

    let mut finds = Vec::new();
    for &i in &missing_facets {
        let l = &p.ineqs()[i];
        let flipped: Vec<Int> = l.iter().map(|x| -x).collect();
        let mut rows = f.ineqs().to_vec();
        rows.push(flipped.clone());
        let beyond = ConeH::new(f.dim(), rows, f.eqs().to_vec())?;
        // Slice the cone by flipped.x = -1, i.e. l.x = 1: nonempty
        // exactly because l is missing, and it excludes the origin.
        let rhs = -Int::from(1);
        for _ in 0..attempts {
            let objective: Vec<Int> = (0..f.dim())
                .map(|_| Int::from(rng.gen_range(-1000i64..=1000)))
                .collect();
            match cone::minimize(&objective, &beyond, &flipped, &rhs)? {
                MinimizeOutcome::Optimal { x, .. } => {
                    let ray = rat_row_to_int(&x);
                    let extremal = cone::extremality_test(&ray, f)?;
                    finds.push(SearchFind {
                        facet: i,
                        ray,
                        extremal,
                    });
                    break;
                }
                // The functional was unbounded on the slice; redraw.
                MinimizeOutcome::Unbounded => continue,
                // Unreachable with exact arithmetic: a missing facet
                // guarantees a feasible slice.
                MinimizeOutcome::Infeasible => break,
            }
        }
    }
    Ok(SearchOutcome {
        missing_facets,
        finds,
    })
}

/// Scans the facet rows of `p` against the full system `f`; for every
/// missing facet, minimizes seeded random functionals over the part
/// of `f` strictly beyond it and reports the optimal vertex together
/// with its extremality verdict. An outcome with no missing facets
/// means `f`'s cone is contained in `p`'s.
pub fn search_method_1(
    f: &ConeH,
    p: &ConeH,
    seed: u64,
    attempts: usize,
) -> Result<SearchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    scan(f, p, &mut rng, attempts)
}

#[derive(Clone, Debug)]
pub struct GrowOutcome {
    /// Number of facet scans performed.
    pub rounds_run: usize,
    /// True when the last scan found no missing facet, i.e. the grown
    /// cone contains the full cone.
    pub converged: bool,
    /// Extremal rays discovered across all rounds, first occurrence,
    /// entries coprime.
    pub rays_added: Vec<Vec<Int>>,
    /// The candidate cone after the last extension.
    pub grown: ConeV,
}

/// Grows a candidate generator set towards the full cone: each round
/// recomputes the candidate's facets, repairs every missing one via
/// the method-1 scan, and adjoins the extremal finds as new
/// generators. Stops after `rounds` extensions, on convergence, or
/// when a round produces nothing new.
pub fn search_method_2(
    f: &ConeH,
    k1: &ConeV,
    rounds: usize,
    seed: u64,
    attempts: usize,
) -> Result<GrowOutcome> {
    if k1.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: k1.dim(),
        });
    }
    let mut rays: Vec<Vec<Int>> = k1.rays().to_vec();
    let lin: Vec<Vec<Int>> = k1.lin().to_vec();
    let mut rays_added = Vec::new();
    let mut converged = false;
    let mut rounds_run = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for round in 0..=rounds {
        rounds_run = round + 1;
        let k = ConeV::new(f.dim(), rays.clone(), lin.clone())?;
        let facets = cone::dd_facets(&k);
        let outcome = scan(f, &facets, &mut rng, attempts)?;
        if outcome.missing_facets.is_empty() {
            converged = true;
            break;
        }
        let mut fresh: Vec<Vec<Int>> = Vec::new();
        for find in outcome.finds.into_iter().filter(|x| x.extremal) {
            let r = normalized(find.ray);
            if !rays.contains(&r) && !fresh.contains(&r) {
                fresh.push(r);
            }
        }
        rays_added.extend(fresh.iter().cloned());
        if round == rounds || fresh.is_empty() {
            break;
        }
        rays.extend(fresh);
    }

    Ok(GrowOutcome {
        rounds_run,
        converged,
        rays_added,
        grown: ConeV::new(f.dim(), rays, lin)?,
    })
}
