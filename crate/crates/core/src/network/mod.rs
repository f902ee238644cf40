//! Planar-network parameterization of totally positive matrices.
//!
//! The network for order n is an n-by-n grid of vertices. Source i
//! enters row i from the left; sink j leaves the bottom row downward
//! at geometric column n+1-j, so sink 1 is rightmost. Paths move right
//! along their current row and drop down at weakly increasing columns.
//! Each path is weighted by the product of the faces below-left of it,
//! one face per (row, column) slot: the (n-1)^2 interior faces carry
//! the free parameters, the 2n-1 boundary faces (leftmost column, then
//! bottom row) are fixed to 1 but tracked symbolically as exponents.
//!
//! By the Lindstrom expansion, the minor on rows I and columns J equals
//! the sum over vertex-disjoint path families joining the p-th smallest
//! source to the p-th smallest sink. Every entry of the resulting
//! matrix is a polynomial with nonnegative coefficients, all of whose
//! minors are again such polynomials; the matrices swept out as the
//! free weights range over positive reals are exactly the totally
//! positive ones used throughout this crate.

pub mod poly;
pub mod subfree;

use crate::error::{Error, Result};
use crate::pluecker::{all_indices, MinorSpec, PluckerIndex};
use num::BigInt;
use poly::{key_from_exponents, SparsePoly, MAX_VARS};
use rayon::prelude::*;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub use poly::DEFAULT_TERM_CAP;

/// Number of free (interior) face parameters.
pub fn free_count(n: u8) -> usize {
    (n as usize - 1) * (n as usize - 1)
}

/// Number of boundary faces: leftmost column top to bottom, then the
/// bottom row left to right.
pub fn boundary_count(n: u8) -> usize {
    2 * n as usize - 1
}

fn free_index(n: u8, r: u8, c: u8) -> usize {
    debug_assert!(r >= 1 && r < n && c >= 2 && c <= n);
    (r as usize - 1) * (n as usize - 1) + (c as usize - 2)
}

fn boundary_index(n: u8, r: u8, c: u8) -> usize {
    if c == 1 {
        r as usize - 1
    } else {
        debug_assert!(r == n && c >= 2 && c <= n);
        n as usize + c as usize - 2
    }
}

/// One source-to-sink path: its interior-face exponent key, boundary
/// face exponents, and the set of grid vertices it visits.
struct PathData {
    free_key: u128,
    boundary: Vec<u32>,
    vmask: u64,
}

/// All paths from source `source` to the sink with geometric exit
/// column `exit`. A path is the weakly increasing list of columns at
/// which it drops down through rows source..n.
fn paths(n: u8, source: u8, exit: u8) -> Vec<PathData> {
    fn gen(cols: &mut Vec<u8>, lo: u8, remaining: usize, exit: u8, out: &mut Vec<Vec<u8>>) {
        if remaining == 0 {
            out.push(cols.clone());
            return;
        }
        for c in lo..=exit {
            cols.push(c);
            gen(cols, c, remaining - 1, exit, out);
            cols.pop();
        }
    }
    let mut seqs = Vec::new();
    gen(
        &mut Vec::new(),
        1,
        (n - source) as usize,
        exit,
        &mut seqs,
    );

    let d = free_count(n);
    let bc = boundary_count(n);
    let mut out = Vec::with_capacity(seqs.len());
    for mut cols in seqs {
        cols.push(exit);
        let mut exps = vec![0u8; d];
        let mut boundary = vec![0u32; bc];
        let mut vmask = 0u64;
        let mut prev = 1u8;
        for (off, &col) in cols.iter().enumerate() {
            let r = source + off as u8;
            boundary[boundary_index(n, r, 1)] += 1;
            if r < n {
                for c in 2..=col {
                    exps[free_index(n, r, c)] += 1;
                }
            } else {
                for c in 2..=col {
                    boundary[boundary_index(n, n, c)] += 1;
                }
            }
            for c in prev..=col {
                vmask |= 1u64 << ((r as usize - 1) * n as usize + (c as usize - 1));
            }
            prev = col;
        }
        out.push(PathData {
            free_key: key_from_exponents(&exps),
            boundary,
            vmask,
        });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_families(
    per_source: &[Vec<PathData>],
    p: usize,
    mask: u64,
    free_acc: u128,
    bnd_acc: &mut Vec<u32>,
    free: &mut SparsePoly,
    boundary: &mut Option<Vec<u32>>,
    count: &mut u64,
) -> Result<()> {
    if p == per_source.len() {
        free.add_term(free_acc, 1)?;
        match boundary {
            None => *boundary = Some(bnd_acc.clone()),
            Some(b) => assert_eq!(
                b, bnd_acc,
                "boundary exponents must be the same for every family"
            ),
        }
        *count += 1;
        return Ok(());
    }
    for path in &per_source[p] {
        if mask & path.vmask == 0 {
            for (acc, e) in bnd_acc.iter_mut().zip(&path.boundary) {
                *acc += e;
            }
            collect_families(
                per_source,
                p + 1,
                mask | path.vmask,
                // per-face exponents stay below 8 bits: each path adds
                // at most 1 per face and there are at most n paths
                free_acc + path.free_key,
                bnd_acc,
                free,
                boundary,
                count,
            )?;
            for (acc, e) in bnd_acc.iter_mut().zip(&path.boundary) {
                *acc -= e;
            }
        }
    }
    Ok(())
}

/// A minor of the parameterized matrix: polynomial in the interior
/// face weights times a fixed monomial in the boundary faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorPoly {
    index: PluckerIndex,
    rows: Vec<u8>,
    cols: Vec<u8>,
    free: SparsePoly,
    boundary: Vec<u32>,
    families: u64,
}

impl MinorPoly {
    pub fn n(&self) -> u8 {
        self.index.n()
    }

    pub fn index(&self) -> &PluckerIndex {
        &self.index
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn cols(&self) -> &[u8] {
        &self.cols
    }

    /// Polynomial in the (n-1)^2 interior face weights.
    pub fn free(&self) -> &SparsePoly {
        &self.free
    }

    /// Exponents of the 2n-1 boundary faces, common to every term.
    pub fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    /// Number of vertex-disjoint path families, i.e. the sum of the
    /// coefficients of the interior polynomial.
    pub fn families(&self) -> u64 {
        self.families
    }

    /// Value at positive integer interior weights (boundary faces
    /// evaluate to 1).
    pub fn eval(&self, weights: &[BigInt]) -> BigInt {
        self.free.eval_big(weights)
    }

    pub fn write(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "P n={} coord={}", self.n(), self.index)?;
        let bnd: Vec<String> = self.boundary.iter().map(|b| b.to_string()).collect();
        writeln!(w, "boundary {}", bnd.join(" "))?;
        let terms = self.free.sorted_terms();
        writeln!(w, "terms {}", terms.len())?;
        for (exps, coeff) in terms {
            let parts: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
            writeln!(w, "{}: {}", coeff, parts.join(" "))?;
        }
        Ok(())
    }

    pub fn read(r: &mut impl BufRead) -> Result<MinorPoly> {
        let mut line = String::new();
        let mut next = |buf: &mut String| -> Result<bool> {
            loop {
                buf.clear();
                if r.read_line(buf)? == 0 {
                    return Ok(false);
                }
                let t = buf.split('#').next().unwrap_or("").trim().to_string();
                if !t.is_empty() {
                    buf.clear();
                    buf.push_str(&t);
                    return Ok(true);
                }
            }
        };
        if !next(&mut line)? {
            return Err(Error::Parse("empty minor file".into()));
        }
        let head = line.clone();
        let mut it = head.split_whitespace();
        if it.next() != Some("P") {
            return Err(Error::Parse(format!("expected P header, got {head:?}")));
        }
        let n: u8 = it
            .next()
            .and_then(|t| t.strip_prefix("n="))
            .ok_or_else(|| Error::Parse(format!("missing n= in {head:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad n in {head:?}: {e}")))?;
        let coord = it
            .next()
            .and_then(|t| t.strip_prefix("coord="))
            .ok_or_else(|| Error::Parse(format!("missing coord= in {head:?}")))?;
        // Display form has spaces inside the bracket; recover the rest.
        let mut coord = coord.to_string();
        for t in it {
            coord.push(' ');
            coord.push_str(t);
        }
        let index = PluckerIndex::parse(n, &coord)?;

        if !next(&mut line)? {
            return Err(Error::Parse("missing boundary line".into()));
        }
        let boundary: Vec<u32> = line
            .strip_prefix("boundary")
            .ok_or_else(|| Error::Parse(format!("expected boundary line, got {line:?}")))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad boundary exponent {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if boundary.len() != boundary_count(n) {
            return Err(Error::DimensionMismatch {
                expected: boundary_count(n),
                got: boundary.len(),
            });
        }

        if !next(&mut line)? {
            return Err(Error::Parse("missing terms line".into()));
        }
        let nterms: usize = line
            .strip_prefix("terms")
            .ok_or_else(|| Error::Parse(format!("expected terms line, got {line:?}")))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad term count in {line:?}: {e}")))?;

        let d = free_count(n);
        let mut free = SparsePoly::zero(d);
        let mut families = 0i128;
        for _ in 0..nterms {
            if !next(&mut line)? {
                return Err(Error::Parse("truncated term list".into()));
            }
            let (coeff, exps) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected coeff: exps, got {line:?}")))?;
            let coeff: i64 = coeff
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient {coeff:?}: {e}")))?;
            let exps: Vec<u8> = exps
                .split_whitespace()
                .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad exponent {t:?}: {e}"))))
                .collect::<Result<_>>()?;
            if exps.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: exps.len(),
                });
            }
            free.add_term(key_from_exponents(&exps), coeff)?;
            families += coeff as i128;
        }
        let spec = MinorSpec::from_index(&index);
        Ok(MinorPoly {
            index,
            rows: spec.rows().to_vec(),
            cols: spec.cols().to_vec(),
            free,
            boundary,
            families: u64::try_from(families)
                .map_err(|_| Error::Parse("negative family count".into()))?,
        })
    }
}

/// Computes the minor indexed by a Plucker coordinate by enumerating
/// vertex-disjoint path families.
pub fn minor_poly(index: &PluckerIndex) -> Result<MinorPoly> {
    let n = index.n();
    if free_count(n) > MAX_VARS {
        return Err(Error::Unsupported(format!(
            "interior polynomials need {} variables, limit {MAX_VARS}",
            free_count(n)
        )));
    }
    let spec = MinorSpec::from_index(index);
    let rows = spec.rows().to_vec();
    let cols = spec.cols().to_vec();
    // p-th smallest row pairs with the p-th smallest column label,
    // which exits at the p-th largest geometric column
    let per_source: Vec<Vec<PathData>> = rows
        .iter()
        .zip(&cols)
        .map(|(&i, &j)| paths(n, i, n + 1 - j))
        .collect();
    let mut free = SparsePoly::zero(free_count(n));
    let mut boundary: Option<Vec<u32>> = None;
    let mut count = 0u64;
    let mut bnd_acc = vec![0u32; boundary_count(n)];
    collect_families(
        &per_source,
        0,
        0,
        0,
        &mut bnd_acc,
        &mut free,
        &mut boundary,
        &mut count,
    )?;
    Ok(MinorPoly {
        index: index.clone(),
        rows,
        cols,
        free,
        boundary: boundary.unwrap_or_else(|| vec![0; boundary_count(n)]),
        families: count,
    })
}

/// All minors of order n, indexed by Plucker lex rank.
pub struct PluckerTable {
    n: u8,
    minors: Vec<MinorPoly>,
}

impl PluckerTable {
    pub fn new(n: u8) -> Result<PluckerTable> {
        let indices = all_indices(n);
        let minors: Vec<MinorPoly> = indices
            .par_iter()
            .map(minor_poly)
            .collect::<Result<_>>()?;
        Ok(PluckerTable { n, minors })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn minors(&self) -> &[MinorPoly] {
        &self.minors
    }

    pub fn by_rank(&self, rank: usize) -> &MinorPoly {
        &self.minors[rank]
    }

    pub fn get(&self, index: &PluckerIndex) -> &MinorPoly {
        &self.minors[index.lex_rank()]
    }
}

/// The same minor with boundary faces kept as variables; needs
/// (n-1)^2 + 2n - 1 packed variables, so n <= 4.
pub fn minor_full_poly(index: &PluckerIndex) -> Result<SparsePoly> {
    let n = index.n();
    let d = free_count(n);
    let nvars = d + boundary_count(n);
    if nvars > MAX_VARS {
        return Err(Error::Unsupported(format!(
            "full polynomials need {nvars} variables, limit {MAX_VARS}"
        )));
    }
    let m = minor_poly(index)?;
    let mut bnd_key = 0u128;
    for (b, &e) in m.boundary.iter().enumerate() {
        if e > poly::MAX_EXP {
            return Err(Error::Overflow("boundary exponent".into()));
        }
        bnd_key |= (e as u128) << (8 * (d + b));
    }
    let mut out = SparsePoly::zero(nvars);
    for (k, c) in m.free.terms() {
        out.add_term(k + bnd_key, c)?;
    }
    Ok(out)
}

/// Cofactor-expansion determinant of a square matrix of polynomials,
/// memoized on (depth, remaining column set).
fn poly_det(
    mat: &[Vec<SparsePoly>],
    depth: usize,
    cols_mask: u32,
    memo: &mut std::collections::HashMap<(usize, u32), SparsePoly>,
    nvars: usize,
    term_cap: usize,
) -> Result<SparsePoly> {
    if cols_mask == 0 {
        return Ok(SparsePoly::one(nvars));
    }
    if let Some(p) = memo.get(&(depth, cols_mask)) {
        return Ok(p.clone());
    }
    let mut acc = SparsePoly::zero(nvars);
    let mut sign = 1i64;
    for j in 0..32 {
        if cols_mask & (1 << j) != 0 {
            let sub = poly_det(mat, depth + 1, cols_mask & !(1 << j), memo, nvars, term_cap)?;
            let term = mat[depth][j].mul(&sub, term_cap)?;
            acc = if sign > 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
            sign = -sign;
        }
    }
    memo.insert((depth, cols_mask), acc.clone());
    Ok(acc)
}

/// Checks that for every Plucker coordinate the path-family expansion
/// equals the cofactor-expansion determinant of the corresponding
/// submatrix of entry polynomials, boundary variables included.
pub fn det_oracle_matches(n: u8, term_cap: usize) -> Result<bool> {
    let nvars = free_count(n) + boundary_count(n);
    if nvars > MAX_VARS {
        return Err(Error::Unsupported(format!(
            "determinant oracle needs {nvars} variables, limit {MAX_VARS}"
        )));
    }
    let mut entries: Vec<Vec<SparsePoly>> = Vec::new();
    for i in 1..=n {
        let mut row = Vec::new();
        for j in 1..=n {
            let idx = MinorSpec::new(n, vec![i], vec![j])?.embed();
            row.push(minor_full_poly(&idx)?);
        }
        entries.push(row);
    }
    for index in all_indices(n) {
        let spec = MinorSpec::from_index(&index);
        let sub: Vec<Vec<SparsePoly>> = spec
            .rows()
            .iter()
            .map(|&i| {
                spec.cols()
                    .iter()
                    .map(|&j| entries[i as usize - 1][j as usize - 1].clone())
                    .collect()
            })
            .collect();
        let k = sub.len();
        let mut memo = std::collections::HashMap::new();
        let det = if k == 0 {
            SparsePoly::one(nvars)
        } else {
            poly_det(&sub, 0, (1u32 << k) - 1, &mut memo, nvars, term_cap)?
        };
        if det != minor_full_poly(&index)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact integer determinant by cofactor expansion (small matrices).
pub fn det_bigint(mat: &[Vec<BigInt>]) -> BigInt {
    let k = mat.len();
    if k == 0 {
        return BigInt::from(1);
    }
    fn rec(mat: &[Vec<BigInt>], depth: usize, cols_mask: u32) -> BigInt {
        if cols_mask == 0 {
            return BigInt::from(1);
        }
        let mut acc = BigInt::from(0);
        let mut sign = 1i64;
        for j in 0..32 {
            if cols_mask & (1 << j) != 0 {
                let sub = rec(mat, depth + 1, cols_mask & !(1 << j));
                let term = &mat[depth][j] * sub;
                if sign > 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
                sign = -sign;
            }
        }
        acc
    }
    rec(mat, 0, (1u32 << k) - 1)
}

/// Parses a weight vector "w1 w2 ... wd" of positive integers.
pub fn parse_weights(n: u8, text: &str) -> Result<Vec<BigInt>> {
    let weights: Vec<BigInt> = text
        .split_whitespace()
        .map(|t| BigInt::from_str(t).map_err(|e| Error::Parse(format!("bad weight {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if weights.len() != free_count(n) {
        return Err(Error::DimensionMismatch {
            expected: free_count(n),
            got: weights.len(),
        });
    }
    if weights.iter().any(|w| *w <= BigInt::from(0)) {
        return Err(Error::Parse("weights must be positive".into()));
    }
    Ok(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::{binomial, coordinate_count};
    use num::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn idx(n: u8, elems: &[u8]) -> PluckerIndex {
        PluckerIndex::new(n, elems.to_vec()).unwrap()
    }

    fn entry(n: u8, i: u8, j: u8) -> MinorPoly {
        let s = MinorSpec::new(n, vec![i], vec![j]).unwrap();
        minor_poly(&s.embed()).unwrap()
    }

    #[test]
    fn order_two_matrix_frozen() {
        // d = 1 free face; boundary faces (1,1), (2,1), (2,2)
        let x11 = entry(2, 1, 1);
        assert_eq!(x11.free().sorted_terms(), vec![(vec![0], 1), (vec![1], 1)]);
        assert_eq!(x11.boundary(), &[1, 1, 1]);

        let x12 = entry(2, 1, 2);
        assert_eq!(x12.free().sorted_terms(), vec![(vec![0], 1)]);
        assert_eq!(x12.boundary(), &[1, 1, 0]);

        let x21 = entry(2, 2, 1);
        assert_eq!(x21.free().sorted_terms(), vec![(vec![0], 1)]);
        assert_eq!(x21.boundary(), &[0, 1, 1]);

        let x22 = entry(2, 2, 2);
        assert_eq!(x22.free().sorted_terms(), vec![(vec![0], 1)]);
        assert_eq!(x22.boundary(), &[0, 1, 0]);

        let det = minor_poly(&idx(2, &[1, 2])).unwrap();
        assert_eq!(det.free().sorted_terms(), vec![(vec![1], 1)]);
        assert_eq!(det.boundary(), &[1, 2, 1]);
        assert_eq!(det.families(), 1);

        let empty = minor_poly(&idx(2, &[3, 4])).unwrap();
        assert_eq!(empty.free().sorted_terms(), vec![(vec![0], 1)]);
        assert_eq!(empty.boundary(), &[0, 0, 0]);
    }

    #[test]
    fn path_counts_are_binomial() {
        for n in 2..=5u8 {
            for i in 1..=n {
                for j in 1..=n {
                    let m = entry(n, i, j);
                    let g = (n + 1 - j) as u64;
                    let expect = binomial((n - i) as u64 + g - 1, (n - i) as u64);
                    assert_eq!(m.families(), expect, "n={n} entry ({i},{j})");
                    assert_eq!(m.free().sum_coeffs(), expect as i128);
                }
            }
        }
    }

    #[test]
    fn minors_positive_at_random_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4u8 {
            let table = PluckerTable::new(n).unwrap();
            assert_eq!(table.len(), coordinate_count(n));
            for _ in 0..25 {
                let w: Vec<BigInt> = (0..free_count(n))
                    .map(|_| BigInt::from(rng.gen_range(1..=100i64)))
                    .collect();
                for m in table.minors() {
                    assert!(m.eval(&w) > BigInt::zero(), "minor {:?}", m.index());
                }
            }
        }
    }

    #[test]
    fn lindstrom_matches_numeric_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4u8 {
            let table = PluckerTable::new(n).unwrap();
            for _ in 0..5 {
                let w: Vec<BigInt> = (0..free_count(n))
                    .map(|_| BigInt::from(rng.gen_range(1..=50i64)))
                    .collect();
                let x: Vec<Vec<BigInt>> = (1..=n)
                    .map(|i| (1..=n).map(|j| entry(n, i, j).eval(&w)).collect())
                    .collect();
                for m in table.minors() {
                    let sub: Vec<Vec<BigInt>> = m
                        .rows()
                        .iter()
                        .map(|&i| {
                            m.cols()
                                .iter()
                                .map(|&j| x[i as usize - 1][j as usize - 1].clone())
                                .collect()
                        })
                        .collect();
                    assert_eq!(det_bigint(&sub), m.eval(&w), "minor {:?}", m.index());
                }
            }
        }
    }

    #[test]
    fn determinant_oracle_small() {
        assert!(det_oracle_matches(2, DEFAULT_TERM_CAP).unwrap());
        assert!(det_oracle_matches(3, DEFAULT_TERM_CAP).unwrap());
        assert!(det_oracle_matches(5, DEFAULT_TERM_CAP).is_err());
    }

    #[test]
    fn boundary_depends_only_on_row_and_column_sets() {
        let n = 3u8;
        for index in all_indices(n) {
            let m = minor_poly(&index).unwrap();
            // leftmost column: one unit per source at or above each row
            let spec = MinorSpec::from_index(&index);
            for r in 1..=n {
                let expect = spec.rows().iter().filter(|&&i| i <= r).count() as u32;
                assert_eq!(m.boundary()[(r - 1) as usize], expect);
            }
            for c in 2..=n {
                let expect = spec
                    .cols()
                    .iter()
                    .filter(|&&j| (n + 1 - j) >= c)
                    .count() as u32;
                assert_eq!(m.boundary()[(n + c - 2) as usize], expect);
            }
        }
    }

    #[test]
    fn interior_exponents_bounded() {
        let table = PluckerTable::new(3).unwrap();
        for m in table.minors() {
            for v in m.free().lane_max().iter() {
                assert!(*v <= 2);
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        for index in all_indices(3) {
            let m = minor_poly(&index).unwrap();
            let mut buf = Vec::new();
            m.write(&mut buf).unwrap();
            let back = MinorPoly::read(&mut buf.as_slice()).unwrap();
            assert_eq!(m, back);
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(parse_weights(2, "5").unwrap(), vec![BigInt::from(5)]);
        assert!(parse_weights(2, "0").is_err());
        assert!(parse_weights(2, "1 2").is_err());
        assert!(parse_weights(2, "x").is_err());
    }
}
