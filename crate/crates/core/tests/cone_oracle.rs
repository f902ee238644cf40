//! Randomized cross-check of the double description conversion
//! against an independently written brute-force enumerator: for a
//! pointed cone, every extreme ray is the kernel of some rank d-1
//! subset of tight rows, so exhaustive subset enumeration over
//! machine integers gives a second opinion with no shared code.

use num::BigInt;
use proptest::prelude::*;
use tpcone::cone::{self, ConeH, Int};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn normalize(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Cofactor determinant; matrices here are at most 3x3.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut acc = 0;
            for (j, lead) in m[0].iter().enumerate() {
                if *lead == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = lead * det(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

/// Row rank by exact cross-multiplication elimination. Entries stay
/// small because inputs are tiny and the dimension is at most four.
fn rank(rows: &[Vec<i128>], dim: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let factor = m[i][c];
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x = *x * pivot - *y * factor;
                }
                m[i] = normalize(std::mem::take(&mut m[i]));
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Kernel generator of a (d-1) x d integer matrix via signed maximal
/// minors; the zero vector signals a rank drop.
fn kernel_ray(rows: &[Vec<i128>], dim: usize) -> Vec<i128> {
    (0..dim)
        .map(|skip| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != skip)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > m {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance the lexicographically next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All extreme rays of the pointed cone {x : rows.x <= 0}, one
/// representative per ray, entries coprime.
fn brute_force_rays(rows: &[Vec<i128>], dim: usize) -> Vec<Vec<i128>> {
    let mut found: Vec<Vec<i128>> = Vec::new();
    for subset in subsets(rows.len(), dim - 1) {
        let chosen: Vec<Vec<i128>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let g = kernel_ray(&chosen, dim);
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let g = normalize(g);
        for cand in [g.clone(), g.iter().map(|&x| -x).collect()] {
            if rows.iter().all(|r| dot(r, &cand) <= 0) && !found.contains(&cand) {
                found.push(cand);
            }
        }
    }
    found.sort();
    found
}

fn to_int_rows(rows: &[Vec<i128>]) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn random_system() -> impl Strategy<Value = (usize, Vec<Vec<i128>>)> {
    (2usize..=4).prop_flat_map(|dim| {
        (
            Just(dim),
            prop::collection::vec(prop::collection::vec(-3i128..=3, dim), 1..=8),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dd_matches_brute_force_on_pointed_cones((dim, rows) in random_system()) {
        // Pointed exactly when the rows have full column rank.
        prop_assume!(rank(&rows, dim) == dim);

        let h = ConeH::new(dim, to_int_rows(&rows), vec![]).unwrap();
        let v = cone::dd_rays(&h);
        prop_assert!(v.lin().is_empty(), "pointed cone reported lineality");

        let mut got: Vec<Vec<Int>> = v.rays().to_vec();
        got.sort();
        let want: Vec<Vec<Int>> = to_int_rows(&brute_force_rays(&rows, dim));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn facet_rays_round_trip_preserves_the_cone((dim, rows) in random_system()) {
        let h = ConeH::new(dim, to_int_rows(&rows), vec![]).unwrap();
        let back = cone::dd_facets(&cone::dd_rays(&h));
        for row in back.ineqs() {
            prop_assert!(cone::implied_row(&h, row).unwrap());
        }
        for eq in back.eqs() {
            let neg: Vec<Int> = eq.iter().map(|x| -x).collect();
            prop_assert!(cone::implied_row(&h, eq).unwrap());
            prop_assert!(cone::implied_row(&h, &neg).unwrap());
        }
        for row in h.ineqs() {
            prop_assert!(cone::implied_row(&back, row).unwrap());
        }
    }

    #[test]
    fn equality_rows_match_opposite_inequality_pairs((dim, rows) in random_system()) {
        prop_assume!(rows.len() >= 2);
        let (eq, ineqs) = rows.split_first().unwrap();
        prop_assume!(eq.iter().any(|&x| x != 0));

        let with_eq = ConeH::new(dim, to_int_rows(ineqs), vec![eq.iter().map(|&x| BigInt::from(x)).collect()]).unwrap();
        let mut doubled = to_int_rows(ineqs);
        doubled.push(eq.iter().map(|&x| BigInt::from(x)).collect());
        doubled.push(eq.iter().map(|&x| BigInt::from(-x)).collect());
        let paired = ConeH::new(dim, doubled, vec![]).unwrap();

        let va = cone::dd_rays(&with_eq);
        let vb = cone::dd_rays(&paired);
        let mut ra: Vec<Vec<Int>> = va.rays().to_vec();
        let mut rb: Vec<Vec<Int>> = vb.rays().to_vec();
        ra.sort();
        rb.sort();
        prop_assert_eq!(ra, rb);

        // Lineality spaces agree as sets: mutual membership in the
        // other description.
        for l in va.lin() {
            prop_assert!(paired.contains(l).unwrap());
            let neg: Vec<Int> = l.iter().map(|x| -x).collect();
            prop_assert!(paired.contains(&neg).unwrap());
        }
        for l in vb.lin() {
            prop_assert!(with_eq.contains(l).unwrap());
            let neg: Vec<Int> = l.iter().map(|x| -x).collect();
            prop_assert!(with_eq.contains(&neg).unwrap());
        }
    }
}
