//! Double description: incremental conversion of a homogeneous
//! inequality system A x <= 0 into extreme rays plus a lineality
//! basis. The invariant after each step is that (rays, lin) generate
//! exactly the cone of the rows processed so far and the rays are
//! extreme modulo lineality, so the combinatorial adjacency test
//! (no third ray tight on a superset of the common tight set) is exact.

use super::matrix::{dot_int, normalize_row, normalized};
use super::Int;
use num::{Signed, Zero};

#[derive(Clone)]
struct Ray {
    v: Vec<Int>,
    zeros: ZeroSet,
}

#[derive(Clone, PartialEq)]
struct ZeroSet {
    bits: Vec<u64>,
}

impl ZeroSet {
    fn new(nrows: usize) -> Self {
        ZeroSet {
            bits: vec![0; nrows.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn contains(&self, other: &ZeroSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & b == *b)
    }
}

pub struct DdOutput {
    pub rays: Vec<Vec<Int>>,
    pub lin: Vec<Vec<Int>>,
}

/// Computes the extreme rays and lineality space of
/// { x in R^dim : row . x <= 0 for every row }.
pub fn double_description(dim: usize, rows: &[Vec<Int>]) -> DdOutput {
    let nrows = rows.len();
    let mut lin: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        let lin_dots: Vec<Int> = lin.iter().map(|l| dot_int(a, l)).collect();
        if let Some(idx) = lin_dots.iter().position(|d| !d.is_zero()) {
            // The row cuts the lineality space: split off one basis
            // vector, project the rest, and demote it to a ray.
            let mut l_star = lin.remove(idx);
            let mut s = lin_dots[idx].clone();
            if s.is_positive() {
                for x in l_star.iter_mut() {
                    *x = -&*x;
                }
                s = -s;
            }
            debug_assert!(s.is_negative());
            for (pos, l) in lin.iter_mut().enumerate() {
                let d = &lin_dots[if pos < idx { pos } else { pos + 1 }];
                if !d.is_zero() {
                    for (lj, sj) in l.iter_mut().zip(&l_star) {
                        let v = &*lj * &(-&s) + sj * d;
                        *lj = v;
                    }
                    normalize_row(l);
                }
            }
            for ray in rays.iter_mut() {
                let d = dot_int(a, &ray.v);
                if !d.is_zero() {
                    for (rj, sj) in ray.v.iter_mut().zip(&l_star) {
                        let v = &*rj * &(-&s) + sj * &d;
                        *rj = v;
                    }
                    normalize_row(&mut ray.v);
                }
                ray.zeros.set(k);
            }
            let mut zeros = ZeroSet::new(nrows);
            for i in 0..k {
                zeros.set(i);
            }
            normalize_row(&mut l_star);
            rays.push(Ray { v: l_star, zeros });
            continue;
        }

        let dots: Vec<Int> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        let mut plus: Vec<usize> = Vec::new();
        let mut minus: Vec<usize> = Vec::new();
        for (i, d) in dots.iter().enumerate() {
            if d.is_positive() {
                plus.push(i);
            } else if d.is_negative() {
                minus.push(i);
            } else {
                rays[i].zeros.set(k);
            }
        }
        if plus.is_empty() {
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let common = rays[p].zeros.intersect(&rays[m].zeros);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(q, other)| q == p || q == m || !other.zeros.contains(&common));
                if !adjacent {
                    continue;
                }
                // (a.p) m - (a.m) p has positive weight on both parents
                let (dp, dm) = (&dots[p], &dots[m]);
                let v: Vec<Int> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[m].v)
                    .map(|(pj, mj)| mj * dp - pj * dm)
                    .collect();
                let mut zeros = common;
                zeros.set(k);
                fresh.push(Ray {
                    v: normalized(v),
                    zeros,
                });
            }
        }
        let keep: Vec<usize> = plus.clone();
        let mut retained: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, ray) in rays.into_iter().enumerate() {
            if !keep.contains(&i) {
                retained.push(ray);
            }
        }
        retained.extend(fresh);
        rays = retained;
    }

    for r in &rays {
        for row in rows {
            debug_assert!(!dot_int(row, &r.v).is_positive());
        }
    }
    DdOutput {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lin,
    }
}
