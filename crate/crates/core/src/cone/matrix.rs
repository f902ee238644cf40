//! Exact linear algebra over integers and rationals: echelon forms,
//! rank, null spaces, and row normalization. Pivots are chosen by
//! position only (first nonzero in column order), never by magnitude,
//! so pivot and free columns depend only on the column order.

use super::{Int, Rat};
use num::{Integer, One, Zero};

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Gcd of the absolute values of the entries; zero for a zero row.
pub fn content(row: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in row {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divides the row by its content, preserving signs.
pub fn normalize_row(row: &mut [Int]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn normalized(mut row: Vec<Int>) -> Vec<Int> {
    normalize_row(&mut row);
    row
}

/// Clears denominators and divides by the content, preserving direction.
pub fn rat_row_to_int(row: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalized(ints)
}

pub fn int_row_to_rat(row: &[Int]) -> Vec<Rat> {
    row.iter()
        .map(|x| Rat::from_integer(x.clone()))
        .collect()
}

pub struct Echelon {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Integer-preserving forward elimination; rows are consumed.
pub fn int_echelon(mut rows: Vec<Vec<Int>>, ncols: usize) -> Echelon {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let g = prow[c].gcd(&row[c]);
                let fa = &prow[c] / &g;
                let fb = &row[c] / &g;
                for (x, pj) in row.iter_mut().zip(&prow).skip(c) {
                    let v = &*x * &fa - pj * &fb;
                    *x = v;
                }
                normalize_row(row);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_cols,
    }
}

pub fn rank_int(rows: &[Vec<Int>], ncols: usize) -> usize {
    int_echelon(rows.to_vec(), ncols).rank
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_rat(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut().skip(c) {
            let v = &*x / &inv;
            *x = v;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pj) in row.iter_mut().zip(&prow).skip(c) {
                    let v = &*x - &f * pj;
                    *x = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivot_cols
}

/// Integer basis of the null space { x : rows * x = 0 }.
pub fn nullspace_int(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let mut rat: Vec<Vec<Rat>> = rows.iter().map(|r| int_row_to_rat(r)).collect();
    let pivots = rref_rat(&mut rat, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rat[r][f].clone();
        }
        basis.push(rat_row_to_int(&v));
    }
    basis
}

/// Canonical integer basis of the row span: RREF rows scaled to
/// coprime integers with positive leading entry.
pub fn canonical_basis_int(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let mut rat: Vec<Vec<Rat>> = rows.iter().map(|r| int_row_to_rat(r)).collect();
    rref_rat(&mut rat, ncols);
    rat.iter().map(|r| rat_row_to_int(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn echelon_rank_and_pivots() {
        let rows = vec![iv(&[0, 2, 4]), iv(&[1, 1, 1]), iv(&[1, 3, 5])];
        let e = int_echelon(rows, 3);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn pivoting_is_positional() {
        // column 0 is a pivot column even though column 1 has larger entries
        let rows = vec![iv(&[1, 100, 0]), iv(&[1, 100, 1])];
        let e = int_echelon(rows, 3);
        assert_eq!(e.pivot_cols, vec![0, 2]);
    }

    #[test]
    fn nullspace_orthogonal() {
        let rows = vec![iv(&[1, 1, 0, 0]), iv(&[0, 1, 1, 0])];
        let ns = nullspace_int(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert!(dot_int(r, v).is_zero());
            }
        }
        assert_eq!(rank_int(&ns, 4), 2);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalized(iv(&[2, -4, 6])), iv(&[1, -2, 3]));
        assert_eq!(normalized(iv(&[0, 0])), iv(&[0, 0]));
        let rats: Vec<Rat> = vec![
            Rat::new(Int::from(1), Int::from(2)),
            Rat::new(Int::from(-1), Int::from(3)),
        ];
        assert_eq!(rat_row_to_int(&rats), iv(&[3, -2]));
    }
}
