//! Exact polyhedral cone engine. Cones live in R^dim and are either
//! inequality-described (`ConeH`: rows a with a.x <= 0 plus equality
//! rows) or generator-described (`ConeV`: extreme rays plus a lineality
//! basis). Conversions run double description over arbitrary-precision
//! integers; memberships and redundancy run an exact simplex, and every
//! certificate is re-verified before it is returned.

pub(crate) mod dd;
pub(crate) mod matrix;
pub(crate) mod simplex;

pub mod io;

use crate::error::{Error, Result};
use matrix::{canonical_basis_int, dot_int, int_row_to_rat, normalized, nullspace_int, rank_int};
use num::{Signed, Zero};
use simplex::LpOutcome;

pub type Int = num::BigInt;
pub type Rat = num::BigRational;

fn validated_rows(dim: usize, rows: Vec<Vec<Int>>, what: &str) -> Result<Vec<Vec<Int>>> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        let row = normalized(row);
        if row.iter().any(|x| !x.is_zero()) {
            out.push(row);
        }
        let _ = what;
    }
    Ok(out)
}

/// Cone { x : a.x <= 0 for ineq rows a, e.x = 0 for eq rows e }.
/// Rows are stored with coprime entries; zero rows are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeH {
    dim: usize,
    ineqs: Vec<Vec<Int>>,
    eqs: Vec<Vec<Int>>,
}

impl ConeH {
    pub fn new(dim: usize, ineqs: Vec<Vec<Int>>, eqs: Vec<Vec<Int>>) -> Result<Self> {
        Ok(ConeH {
            dim,
            ineqs: validated_rows(dim, ineqs, "inequality")?,
            eqs: validated_rows(dim, eqs, "equality")?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[Vec<Int>] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[Vec<Int>] {
        &self.eqs
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.ineqs.iter().all(|a| !dot_int(a, x).is_positive())
            && self.eqs.iter().all(|e| dot_int(e, x).is_zero()))
    }

    /// Dimension of the linear span of the cone's tightest face
    /// containing x, i.e. dim minus the rank of the rows tight at x.
    pub fn face_dim(&self, x: &[Int]) -> Result<usize> {
        if !self.contains(x)? {
            return Err(Error::NotInCone(format!(
                "point is outside the cone: {:?}",
                x
            )));
        }
        let mut tight: Vec<Vec<Int>> = self.eqs.clone();
        for a in &self.ineqs {
            if dot_int(a, x).is_zero() {
                tight.push(a.clone());
            }
        }
        Ok(self.dim - rank_int(&tight, self.dim))
    }
}

/// Cone generated by rays (nonnegative combinations) and a lineality
/// basis (arbitrary combinations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeV {
    dim: usize,
    rays: Vec<Vec<Int>>,
    lin: Vec<Vec<Int>>,
}

impl ConeV {
    pub fn new(dim: usize, rays: Vec<Vec<Int>>, lin: Vec<Vec<Int>>) -> Result<Self> {
        Ok(ConeV {
            dim,
            rays: validated_rows(dim, rays, "ray")?,
            lin: validated_rows(dim, lin, "lineality")?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lin(&self) -> &[Vec<Int>] {
        &self.lin
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        let mut rows = self.rays.clone();
        rows.extend(self.lin.iter().cloned());
        rank_int(&rows, self.dim)
    }
}

/// Insertion order for double description: fewest nonzeros first,
/// then lexicographic. Keeps intermediate ray counts small and the
/// whole pipeline deterministic.
fn dd_row_order(rows: &mut [Vec<Int>]) {
    rows.sort_by(|a, b| {
        let na = a.iter().filter(|x| !x.is_zero()).count();
        let nb = b.iter().filter(|x| !x.is_zero()).count();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
}

/// Converts an inequality description to extreme rays plus lineality.
/// Equalities are eliminated by restricting to their integer null
/// space basis, so double description runs in the reduced dimension.
pub fn dd_rays(h: &ConeH) -> ConeV {
    let (reduced_dim, project): (usize, Option<Vec<Vec<Int>>>) = if h.eqs.is_empty() {
        (h.dim, None)
    } else {
        let k = nullspace_int(&h.eqs, h.dim);
        (k.len(), Some(k))
    };

    let mut rows: Vec<Vec<Int>> = match &project {
        None => h.ineqs.clone(),
        Some(k) => h
            .ineqs
            .iter()
            .map(|a| normalized(k.iter().map(|kj| dot_int(a, kj)).collect()))
            .collect(),
    };
    dd_row_order(&mut rows);
    let out = dd::double_description(reduced_dim, &rows);

    let lift = |v: &Vec<Int>| -> Vec<Int> {
        match &project {
            None => v.clone(),
            Some(k) => {
                let mut x = vec![Int::zero(); h.dim];
                for (c, kj) in v.iter().zip(k) {
                    for (xi, kji) in x.iter_mut().zip(kj) {
                        *xi += c * kji;
                    }
                }
                normalized(x)
            }
        }
    };

    let mut rays: Vec<Vec<Int>> = out.rays.iter().map(&lift).collect();
    rays.sort();
    let lin_lifted: Vec<Vec<Int>> = out.lin.iter().map(&lift).collect();
    let lin = canonical_basis_int(&lin_lifted, h.dim);

    for r in &rays {
        debug_assert!(h.contains(r).unwrap());
    }
    ConeV {
        dim: h.dim,
        rays,
        lin,
    }
}

/// Converts generators to a facet description via polarity: the facet
/// normals of cone(V) are the extreme rays of { h : h.r <= 0, h.l = 0 }.
pub fn dd_facets(v: &ConeV) -> ConeH {
    let polar = ConeH {
        dim: v.dim,
        ineqs: v.rays.clone(),
        eqs: v.lin.clone(),
    };
    let out = dd_rays(&polar);
    ConeH {
        dim: v.dim,
        ineqs: out.rays,
        eqs: out.lin,
    }
}

pub enum MemberOutcome {
    /// x = sum ray_coeffs[k] * ray_k + sum lin_coeffs[j] * lin_j,
    /// with nonnegative ray coefficients. Verified exactly.
    Inside {
        ray_coeffs: Vec<Rat>,
        lin_coeffs: Vec<Rat>,
    },
    /// h.x > 0 while h.r <= 0 for every ray and h.l = 0 for the
    /// lineality basis. Verified exactly.
    Separated { functional: Vec<Int> },
}

/// Decides whether x lies in cone(V), returning either an explicit
/// conic combination or a separating functional.
pub fn member_v(x: &[Int], v: &ConeV) -> Result<MemberOutcome> {
    if x.len() != v.dim {
        return Err(Error::DimensionMismatch {
            expected: v.dim,
            got: x.len(),
        });
    }
    let nr = v.rays.len();
    let nl = v.lin.len();
    // Columns: one per ray (nonnegative), then +/- per lineality vector.
    let a: Vec<Vec<Rat>> = (0..v.dim)
        .map(|i| {
            let mut row = Vec::with_capacity(nr + 2 * nl);
            for r in &v.rays {
                row.push(Rat::from_integer(r[i].clone()));
            }
            for l in &v.lin {
                row.push(Rat::from_integer(l[i].clone()));
                row.push(Rat::from_integer(-&l[i]));
            }
            row
        })
        .collect();
    let b: Vec<Rat> = int_row_to_rat(x);
    match simplex::feasible(&a, &b) {
        Ok(sol) => {
            let ray_coeffs: Vec<Rat> = sol[..nr].to_vec();
            let lin_coeffs: Vec<Rat> = (0..nl)
                .map(|j| &sol[nr + 2 * j] - &sol[nr + 2 * j + 1])
                .collect();
            let mut combo = vec![Rat::zero(); v.dim];
            for (c, r) in ray_coeffs.iter().zip(&v.rays) {
                for (ci, ri) in combo.iter_mut().zip(r) {
                    *ci += c * &Rat::from_integer(ri.clone());
                }
            }
            for (c, l) in lin_coeffs.iter().zip(&v.lin) {
                for (ci, li) in combo.iter_mut().zip(l) {
                    *ci += c * &Rat::from_integer(li.clone());
                }
            }
            assert_eq!(combo, b, "conic combination must reproduce the point");
            Ok(MemberOutcome::Inside {
                ray_coeffs,
                lin_coeffs,
            })
        }
        Err(y) => {
            let h = matrix::rat_row_to_int(&y);
            assert!(dot_int(&h, x).is_positive());
            assert!(v.rays.iter().all(|r| !dot_int(&h, r).is_positive()));
            assert!(v.lin.iter().all(|l| dot_int(&h, l).is_zero()));
            Ok(MemberOutcome::Separated { functional: h })
        }
    }
}

/// Tests whether `row` is implied by nonnegative combinations of
/// `others` modulo the span of `eqs`.
fn row_redundant(row: &[Int], others: &[&Vec<Int>], eqs: &[Vec<Int>], dim: usize) -> bool {
    let no = others.len();
    let ne = eqs.len();
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut r = Vec::with_capacity(no + 2 * ne);
            for o in others {
                r.push(Rat::from_integer(o[i].clone()));
            }
            for e in eqs {
                r.push(Rat::from_integer(e[i].clone()));
                r.push(Rat::from_integer(-&e[i]));
            }
            r
        })
        .collect();
    let b: Vec<Rat> = int_row_to_rat(row);
    simplex::feasible(&a, &b).is_ok()
}

/// Tests whether `row . x <= 0` holds everywhere on the cone, i.e.
/// whether appending `row` to the system would change nothing. By
/// Farkas duality this is the case exactly when `row` is a
/// nonnegative combination of the inequality rows plus a combination
/// of the equality rows.
pub fn implied_row(h: &ConeH, row: &[Int]) -> Result<bool> {
    if row.len() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            got: row.len(),
        });
    }
    let others: Vec<&Vec<Int>> = h.ineqs.iter().collect();
    Ok(row_redundant(row, &others, &h.eqs, h.dim))
}

/// Removes duplicate and implied inequality rows. Returns the reduced
/// system together with, for each kept inequality, the index of the
/// row of `h` it came from (first occurrence for duplicates).
pub fn reduce(h: &ConeH) -> (ConeH, Vec<usize>) {
    let eqs = canonical_basis_int(&h.eqs, h.dim);

    let mut uniq: Vec<(Vec<Int>, usize)> = Vec::new();
    for (i, row) in h.ineqs.iter().enumerate() {
        if !uniq.iter().any(|(r, _)| r == row) {
            uniq.push((row.clone(), i));
        }
    }
    uniq.sort_by(|(a, _), (b, _)| {
        let na = a.iter().filter(|x| !x.is_zero()).count();
        let nb = b.iter().filter(|x| !x.is_zero()).count();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });

    let mut alive: Vec<bool> = vec![true; uniq.len()];
    for i in 0..uniq.len() {
        let others: Vec<&Vec<Int>> = uniq
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && alive[*j])
            .map(|(_, (r, _))| r)
            .collect();
        if row_redundant(&uniq[i].0, &others, &eqs, h.dim) {
            alive[i] = false;
        }
    }

    let mut ineqs = Vec::new();
    let mut provenance = Vec::new();
    for (keep, (row, src)) in alive.iter().zip(uniq) {
        if *keep {
            ineqs.push(row);
            provenance.push(src);
        }
    }
    (
        ConeH {
            dim: h.dim,
            ineqs,
            eqs,
        },
        provenance,
    )
}

/// Extreme ray test: x must satisfy the system; it spans an extreme
/// ray iff the rows tight at x have rank dim - 1.
pub fn extremality_test(x: &[Int], h: &ConeH) -> Result<bool> {
    Ok(h.face_dim(x)? == 1)
}

pub enum MinimizeOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Unbounded,
    Infeasible,
}

/// Minimizes f.x over the cone sliced by the affine normalization
/// norm.x = rhs. The slice makes linear programs over cones bounded
/// when the normalization row is chosen along the objective cone.
pub fn minimize(f: &[Int], h: &ConeH, norm: &[Int], rhs: &Int) -> Result<MinimizeOutcome> {
    if f.len() != h.dim || norm.len() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            got: if f.len() != h.dim { f.len() } else { norm.len() },
        });
    }
    let ni = h.ineqs.len();
    // Variables: slack per inequality (nonnegative), then x (free).
    let ncols = ni + h.dim;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for (k, arow) in h.ineqs.iter().enumerate() {
        let mut r = vec![Rat::zero(); ncols];
        r[k] = Rat::from_integer(Int::from(1));
        for (j, aj) in arow.iter().enumerate() {
            r[ni + j] = Rat::from_integer(aj.clone());
        }
        rows.push(r);
        b.push(Rat::zero());
    }
    for erow in &h.eqs {
        let mut r = vec![Rat::zero(); ncols];
        for (j, ej) in erow.iter().enumerate() {
            r[ni + j] = Rat::from_integer(ej.clone());
        }
        rows.push(r);
        b.push(Rat::zero());
    }
    {
        let mut r = vec![Rat::zero(); ncols];
        for (j, hj) in norm.iter().enumerate() {
            r[ni + j] = Rat::from_integer(hj.clone());
        }
        rows.push(r);
        b.push(Rat::from_integer(rhs.clone()));
    }
    let mut c = vec![Rat::zero(); ncols];
    for (j, fj) in f.iter().enumerate() {
        c[ni + j] = Rat::from_integer(fj.clone());
    }
    Ok(match simplex::solve_mixed(&rows, &b, &c, ni) {
        LpOutcome::Optimal { x, value } => MinimizeOutcome::Optimal {
            x: x[ni..].to_vec(),
            value,
        },
        LpOutcome::Unbounded => MinimizeOutcome::Unbounded,
        LpOutcome::Infeasible { .. } => MinimizeOutcome::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn ivs(vs: &[&[i64]]) -> Vec<Vec<Int>> {
        vs.iter().map(|v| iv(v)).collect()
    }

    #[test]
    fn constructor_normalizes() {
        let h = ConeH::new(2, ivs(&[&[2, 4], &[0, 0], &[1, 2]]), vec![]).unwrap();
        assert_eq!(h.ineqs(), &ivs(&[&[1, 2], &[1, 2]])[..]);
        assert!(ConeH::new(2, ivs(&[&[1, 2, 3]]), vec![]).is_err());
    }

    #[test]
    fn rays_of_orthant() {
        let h = ConeH::new(3, ivs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![]).unwrap();
        let v = dd_rays(&h);
        assert!(v.lin().is_empty());
        assert_eq!(
            v.rays(),
            &ivs(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]])[..]
        );
        assert_eq!(v.span_dim(), 3);
    }

    #[test]
    fn rays_with_equalities() {
        // x + y + z = 0, x <= 0 in R^3: a wedge with one lineality dir
        let h = ConeH::new(3, ivs(&[&[1, 0, 0]]), ivs(&[&[1, 1, 1]])).unwrap();
        let v = dd_rays(&h);
        assert_eq!(v.lin().len(), 1);
        assert_eq!(v.rays().len(), 1);
        let r = &v.rays()[0];
        assert!(r[0].is_negative());
        assert!((&r[0] + &r[1] + &r[2]).is_zero());
        assert!(dot_int(&iv(&[1, 1, 1]), &v.lin()[0]).is_zero());
        assert!(v.lin()[0][0].is_zero());
    }

    #[test]
    fn facets_of_single_ray() {
        let v = ConeV::new(2, ivs(&[&[1, 0]]), vec![]).unwrap();
        let h = dd_facets(&v);
        assert_eq!(h.eqs(), &ivs(&[&[0, 1]])[..]);
        assert_eq!(h.ineqs(), &ivs(&[&[-1, 0]])[..]);
    }

    #[test]
    fn facet_ray_round_trip() {
        let rays = ivs(&[&[2, 1, 0], &[0, 1, 2], &[1, 1, 1], &[1, 0, 2]]);
        let v = ConeV::new(3, rays, vec![]).unwrap();
        let h = dd_facets(&v);
        let v2 = dd_rays(&h);
        // (1,1,1) is interior to the cone of the other three, so the
        // round trip keeps only the extreme generators.
        assert_eq!(
            v2.rays(),
            &ivs(&[&[0, 1, 2], &[1, 0, 2], &[2, 1, 0]])[..]
        );
        assert!(v2.lin().is_empty());
    }

    #[test]
    fn membership_inside_and_outside() {
        let v = ConeV::new(2, ivs(&[&[1, 0], &[1, 1]]), vec![]).unwrap();
        match member_v(&iv(&[3, 1]), &v).unwrap() {
            MemberOutcome::Inside { ray_coeffs, .. } => {
                assert_eq!(ray_coeffs.len(), 2);
            }
            _ => panic!("expected inside"),
        }
        match member_v(&iv(&[-1, 1]), &v).unwrap() {
            MemberOutcome::Separated { functional } => {
                assert!(dot_int(&functional, &iv(&[-1, 1])).is_positive());
            }
            _ => panic!("expected separated"),
        }
    }

    #[test]
    fn membership_uses_lineality() {
        let v = ConeV::new(2, ivs(&[&[1, 0]]), ivs(&[&[0, 1]])).unwrap();
        assert!(matches!(
            member_v(&iv(&[2, -5]), &v).unwrap(),
            MemberOutcome::Inside { .. }
        ));
        assert!(matches!(
            member_v(&iv(&[-1, 3]), &v).unwrap(),
            MemberOutcome::Separated { .. }
        ));
    }

    #[test]
    fn reduce_drops_implied_rows() {
        let h = ConeH::new(
            2,
            ivs(&[&[1, 0], &[2, 0], &[1, 1], &[0, 1]]),
            vec![],
        )
        .unwrap();
        let (r, kept) = reduce(&h);
        assert_eq!(r.ineqs(), &ivs(&[&[0, 1], &[1, 0]])[..]);
        assert_eq!(kept, vec![3, 0]);
    }

    #[test]
    fn reduce_respects_equalities() {
        // modulo x + y = 0 the rows (1,0) and (0,-1) coincide
        let h = ConeH::new(2, ivs(&[&[1, 0], &[0, -1]]), ivs(&[&[1, 1]])).unwrap();
        let (r, kept) = reduce(&h);
        assert_eq!(r.ineqs().len(), 1);
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn extremality_on_orthant() {
        let h = ConeH::new(3, ivs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), vec![]).unwrap();
        assert!(extremality_test(&iv(&[-1, 0, 0]), &h).unwrap());
        assert!(!extremality_test(&iv(&[-1, -1, 0]), &h).unwrap());
        assert!(extremality_test(&iv(&[2, 0, 0]), &h).is_err());
    }

    #[test]
    fn minimize_over_slice() {
        // cone x <= 0, y <= 0; minimize x + 2y on slice x + y = -1
        let h = ConeH::new(2, ivs(&[&[1, 0], &[0, 1]]), vec![]).unwrap();
        match minimize(&iv(&[1, 2]), &h, &iv(&[1, 1]), &Int::from(-1)).unwrap() {
            MinimizeOutcome::Optimal { x, value } => {
                assert_eq!(value, Rat::from_integer(Int::from(-2)));
                assert_eq!(x[0], Rat::from_integer(Int::from(0)));
            }
            _ => panic!("expected optimum"),
        }
        match minimize(&iv(&[1, 0]), &h, &iv(&[0, 0]), &Int::from(0)).unwrap() {
            MinimizeOutcome::Unbounded => {}
            _ => panic!("expected unbounded"),
        }
        match minimize(&iv(&[0, 0]), &h, &iv(&[1, 1]), &Int::from(1)).unwrap() {
            MinimizeOutcome::Infeasible => {}
            _ => panic!("expected infeasible"),
        }
    }
}
