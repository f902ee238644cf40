//! Index-set combinatorics for the Plücker coordinates of an n-by-2n
//! totally positive test matrix: lexicographic ranking of n-subsets of
//! {1..2n}, the embedding of a row/column minor as an index set, the
//! cyclic and reflective symmetries, and ratio vectors with the ST0
//! balance test.

use crate::error::{Error, Result};
use std::fmt;

/// Binomial coefficient; sizes here stay far below u64 overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of Plücker coordinates for a given n, i.e. C(2n, n).
pub fn coordinate_count(n: u8) -> usize {
    binomial(2 * n as u64, n as u64) as usize
}

/// A sorted n-element subset of {1..2n}, identifying one Plücker
/// coordinate of the Grassmannian embedding.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluckerIndex {
    n: u8,
    elems: Vec<u8>,
}

impl PluckerIndex {
    pub fn new(n: u8, elems: Vec<u8>) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::InvalidIndexSet(format!("n={n} out of range 1..=8")));
        }
        if elems.len() != n as usize {
            return Err(Error::InvalidIndexSet(format!(
                "expected {n} elements, got {}",
                elems.len()
            )));
        }
        let mut sorted = elems;
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidIndexSet(format!("repeated element {}", w[0])));
            }
        }
        if sorted[0] < 1 || *sorted.last().unwrap() > 2 * n {
            return Err(Error::InvalidIndexSet(format!(
                "elements must lie in 1..={}",
                2 * n
            )));
        }
        Ok(Self { n, elems: sorted })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn elems(&self) -> &[u8] {
        &self.elems
    }

    pub fn contains(&self, e: u8) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// Position in the lexicographic order of all n-subsets of {1..2n}.
    pub fn lex_rank(&self) -> usize {
        let n = self.n as u64;
        let mut rank: u64 = 0;
        let mut prev: u64 = 0;
        for (p, &e) in self.elems.iter().enumerate() {
            for v in prev + 1..e as u64 {
                rank += binomial(2 * n - v, n - 1 - p as u64);
            }
            prev = e as u64;
        }
        rank as usize
    }

    /// Inverse of `lex_rank`.
    pub fn from_rank(n: u8, rank: usize) -> Result<Self> {
        let total = coordinate_count(n);
        if rank >= total {
            return Err(Error::InvalidIndexSet(format!(
                "rank {rank} out of range for n={n} (max {})",
                total - 1
            )));
        }
        let mut rest = rank as u64;
        let nn = n as u64;
        let mut elems = Vec::with_capacity(n as usize);
        let mut v: u64 = 1;
        for p in 0..nn {
            loop {
                let block = binomial(2 * nn - v, nn - 1 - p);
                if rest < block {
                    elems.push(v as u8);
                    v += 1;
                    break;
                }
                rest -= block;
                v += 1;
            }
        }
        Self::new(n, elems)
    }

    /// Image under the cyclic shift i -> i+1 (with 2n -> 1).
    pub fn shifted(&self) -> Self {
        let m = 2 * self.n;
        let elems = self.elems.iter().map(|&e| e % m + 1).collect();
        Self::new(self.n, elems).expect("shift preserves validity")
    }

    /// Image under the reflection i -> 2n+1-i.
    pub fn reflected(&self) -> Self {
        let m = 2 * self.n;
        let elems = self.elems.iter().map(|&e| m + 1 - e).collect();
        Self::new(self.n, elems).expect("reflection preserves validity")
    }

    /// Compact digit form like "1368"; only valid while 2n <= 9.
    pub fn compact(&self) -> String {
        assert!(2 * self.n <= 9, "compact form needs single-digit elements");
        self.elems.iter().map(|e| e.to_string()).collect()
    }

    /// Parses either the spaced form "[1 3 6 8]" or, when 2n <= 9, the
    /// compact form "[1368]".
    pub fn parse(n: u8, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("index set must be bracketed: {text:?}")))?;
        let elems = parse_elements(n, inner)?;
        Self::new(n, elems)
    }
}

pub(crate) fn parse_elements(n: u8, inner: &str) -> Result<Vec<u8>> {
    let inner = inner.trim();
    if inner.contains(|c: char| c.is_whitespace() || c == ',') {
        inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad element {t:?}")))
            })
            .collect()
    } else {
        if 2 * n > 9 {
            return Err(Error::Parse(format!(
                "compact form {inner:?} is ambiguous for 2n={} > 9",
                2 * n
            )));
        }
        inner
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
            })
            .collect()
    }
}

impl fmt::Display for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All n-subsets of {1..2n} in lexicographic order.
pub fn all_indices(n: u8) -> Vec<PluckerIndex> {
    (0..coordinate_count(n))
        .map(|r| PluckerIndex::from_rank(n, r).unwrap())
        .collect()
}

/// A k-by-k minor of the n-by-n seed matrix: row set and column set,
/// both sorted subsets of {1..n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSpec {
    n: u8,
    rows: Vec<u8>,
    cols: Vec<u8>,
}

impl MinorSpec {
    pub fn new(n: u8, rows: Vec<u8>, cols: Vec<u8>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidMinor(format!(
                "row set size {} != column set size {}",
                rows.len(),
                cols.len()
            )));
        }
        let mut rows = rows;
        let mut cols = cols;
        rows.sort_unstable();
        cols.sort_unstable();
        for set in [&rows, &cols] {
            for w in set.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidMinor(format!("repeated index {}", w[0])));
                }
            }
            if !set.is_empty() && (set[0] < 1 || *set.last().unwrap() > n) {
                return Err(Error::InvalidMinor(format!("indices must lie in 1..={n}")));
            }
        }
        Ok(Self { n, rows, cols })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn cols(&self) -> &[u8] {
        &self.cols
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Index set of this minor in the Grassmannian embedding:
    /// I" = I ∪ { 2n+1-i : i in [n] \ I' }.
    pub fn embed(&self) -> PluckerIndex {
        let n = self.n;
        let mut elems: Vec<u8> = self.rows.clone();
        for i in 1..=n {
            if !self.cols.contains(&i) {
                elems.push(2 * n + 1 - i);
            }
        }
        PluckerIndex::new(n, elems).expect("embedding yields a valid index set")
    }

    /// Inverse of `embed`: recovers the minor whose index set is `s`.
    pub fn from_index(s: &PluckerIndex) -> Self {
        let n = s.n();
        let rows: Vec<u8> = s.elems().iter().copied().filter(|&e| e <= n).collect();
        let cols: Vec<u8> = (n + 1..=2 * n)
            .filter(|c| !s.contains(*c))
            .map(|c| 2 * n + 1 - c)
            .collect();
        Self::new(n, rows, cols).expect("index set yields a valid minor")
    }
}

/// An integer exponent vector over the C(2n, n) Plücker coordinates;
/// positive entries are numerator exponents, negative are denominator
/// exponents of a Laurent-monomial ratio of minors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatioVector {
    n: u8,
    alpha: Vec<i64>,
}

impl RatioVector {
    pub fn zero(n: u8) -> Self {
        Self {
            n,
            alpha: vec![0; coordinate_count(n)],
        }
    }

    pub fn new(n: u8, alpha: Vec<i64>) -> Result<Self> {
        let want = coordinate_count(n);
        if alpha.len() != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                got: alpha.len(),
            });
        }
        Ok(Self { n, alpha })
    }

    pub fn from_support(n: u8, support: &[(PluckerIndex, i64)]) -> Result<Self> {
        let mut v = Self::zero(n);
        for (s, c) in support {
            if s.n() != n {
                return Err(Error::InvalidIndexSet(format!(
                    "index set {s} has n={}, expected {n}",
                    s.n()
                )));
            }
            v.alpha[s.lex_rank()] += c;
        }
        Ok(v)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn coeff(&self, s: &PluckerIndex) -> i64 {
        self.alpha[s.lex_rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0)
    }

    /// Nonzero coordinates with their exponents, in lex order.
    pub fn support(&self) -> Vec<(PluckerIndex, i64)> {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(r, &a)| (PluckerIndex::from_rank(self.n, r).unwrap(), a))
            .collect()
    }

    /// Applies the cyclic shift to every index set.
    pub fn cyclic_shift(&self) -> Self {
        self.permute(|s| s.shifted())
    }

    /// Applies the reflection to every index set.
    pub fn reflect(&self) -> Self {
        self.permute(|s| s.reflected())
    }

    fn permute(&self, f: impl Fn(&PluckerIndex) -> PluckerIndex) -> Self {
        let mut alpha = vec![0; self.alpha.len()];
        for (r, &a) in self.alpha.iter().enumerate() {
            if a != 0 {
                let s = PluckerIndex::from_rank(self.n, r).unwrap();
                alpha[f(&s).lex_rank()] = a;
            }
        }
        Self { n: self.n, alpha }
    }

    /// Sum of exponents over coordinates containing each of 1..2n; the
    /// ratio is ST0 when every entry vanishes.
    pub fn st0_defects(&self) -> Vec<i64> {
        let m = 2 * self.n as usize;
        let mut defects = vec![0i64; m];
        for (r, &a) in self.alpha.iter().enumerate() {
            if a != 0 {
                let s = PluckerIndex::from_rank(self.n, r).unwrap();
                for &e in s.elems() {
                    defects[e as usize - 1] += a;
                }
            }
        }
        defects
    }

    pub fn is_st0(&self) -> bool {
        self.st0_defects().iter().all(|&d| d == 0)
    }

    /// Total degree of the numerator (sum of positive exponents).
    pub fn numerator_degree(&self) -> i64 {
        self.alpha.iter().filter(|&&a| a > 0).sum()
    }

    /// Total degree of the denominator (negated sum of negative exponents).
    pub fn denominator_degree(&self) -> i64 {
        -self.alpha.iter().filter(|&&a| a < 0).sum::<i64>()
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            alpha: self.alpha.iter().map(|&a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            alpha: self
                .alpha
                .iter()
                .zip(&other.alpha)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Renders the ratio in bracket notation, numerator then denominator.
    pub fn ratio_text(&self) -> String {
        let mut num = String::new();
        let mut den = String::new();
        for (s, a) in self.support() {
            let (target, count) = if a > 0 { (&mut num, a) } else { (&mut den, -a) };
            for _ in 0..count {
                target.push_str(&s.to_string());
            }
        }
        if num.is_empty() {
            num.push('1');
        }
        if den.is_empty() {
            den.push('1');
        }
        format!("{num} / {den}")
    }
}

impl fmt::Debug for RatioVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatioVector(n={}, {})", self.n, self.ratio_text())
    }
}
