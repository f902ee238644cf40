//! Primitive ratios: the distinguished degree-2/2 bounded ratios whose
//! exponent vectors generate the conjectured cone. A primitive is
//! determined by two disjoint cyclic arcs {i, i+1} and {j, j+1} on
//! [1, 2n] (successor wraps 2n -> 1) together with a set Delta of n-2
//! further elements avoiding both arcs; its ratio puts +1 on the
//! coordinates {i, j+1} u Delta and {i+1, j} u Delta and -1 on
//! {i, j} u Delta and {i+1, j+1} u Delta, successors taken cyclically.

use crate::cone::matrix::{int_echelon, Echelon};
use crate::cone::{ConeH, ConeV, Int};
use crate::error::{Error, Result};
use crate::pluecker::{binomial, coordinate_count, PluckerIndex, RatioVector};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Cyclic successor on [1, 2n].
pub fn succ(n: u8, e: u8) -> u8 {
    e % (2 * n) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveSpec {
    n: u8,
    i: u8,
    j: u8,
    delta: Vec<u8>,
}

impl PrimitiveSpec {
    pub fn new(n: u8, i: u8, j: u8, delta: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPrimitive(format!("order {n} too small")));
        }
        let m = 2 * n;
        if !(1 <= i && i < j && j <= m) {
            return Err(Error::InvalidPrimitive(format!(
                "need 1 <= i < j <= {m}, got i={i} j={j}"
            )));
        }
        let arcs = [i, succ(n, i), j, succ(n, j)];
        if arcs[0] == arcs[3] || arcs[1] == arcs[2] {
            return Err(Error::InvalidPrimitive(format!(
                "arcs {{{i},{}}} and {{{j},{}}} overlap",
                succ(n, i),
                succ(n, j)
            )));
        }
        if delta.len() != n as usize - 2 {
            return Err(Error::InvalidPrimitive(format!(
                "need |Delta| = {}, got {}",
                n - 2,
                delta.len()
            )));
        }
        let mut sorted = delta.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != delta.len() {
            return Err(Error::InvalidPrimitive("Delta has repeats".into()));
        }
        for &d in &sorted {
            if d < 1 || d > m {
                return Err(Error::InvalidPrimitive(format!("Delta element {d} out of range")));
            }
            if arcs.contains(&d) {
                return Err(Error::InvalidPrimitive(format!(
                    "Delta element {d} lies on an arc"
                )));
            }
        }
        Ok(PrimitiveSpec {
            n,
            i,
            j,
            delta: sorted,
        })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    fn coordinate(&self, a: u8, b: u8) -> PluckerIndex {
        let mut elems = self.delta.clone();
        elems.push(a);
        elems.push(b);
        elems.sort_unstable();
        PluckerIndex::new(self.n, elems).expect("arc elements avoid Delta")
    }

    /// Exponent vector of the primitive ratio.
    pub fn vector(&self) -> RatioVector {
        let (n, i, j) = (self.n, self.i, self.j);
        let support = [
            (self.coordinate(i, succ(n, j)), 1),
            (self.coordinate(succ(n, i), j), 1),
            (self.coordinate(i, j), -1),
            (self.coordinate(succ(n, i), succ(n, j)), -1),
        ];
        RatioVector::from_support(n, &support).expect("primitive coordinates are distinct")
    }

    /// A primitive is isolated when its arcs are antipodal (j - i = n)
    /// and Delta fills one of the two cyclic gaps between them.
    pub fn is_isolated(&self) -> bool {
        if self.j - self.i != self.n {
            return false;
        }
        let gap_low: Vec<u8> = (self.i + 2..self.j).collect();
        // The high gap wraps cyclically: walk from succ(succ(j)) until we hit i.
        let mut gap_high = Vec::new();
        let mut e = succ(self.n, succ(self.n, self.j));
        while e != self.i {
            gap_high.push(e);
            e = succ(self.n, e);
        }
        gap_high.sort_unstable();
        self.delta == gap_low || self.delta == gap_high
    }

    pub fn parse(n: u8, text: &str) -> Result<Self> {
        let body = text.trim();
        let rest = body
            .strip_prefix('R')
            .ok_or_else(|| Error::Parse(format!("expected R i j [Delta], got {body:?}")))?
            .trim();
        let (pair, delta) = rest
            .split_once('[')
            .ok_or_else(|| Error::Parse(format!("missing [Delta] in {body:?}")))?;
        let delta = delta
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("missing closing ] in {body:?}")))?;
        let mut it = pair.split_whitespace();
        let mut num = |what: &str| -> Result<u8> {
            it.next()
                .ok_or_else(|| Error::Parse(format!("missing {what} in {body:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad {what} in {body:?}: {e}")))
        };
        let i = num("i")?;
        let j = num("j")?;
        let delta: Vec<u8> = delta
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::Parse(format!("bad Delta element {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        PrimitiveSpec::new(n, i, j, delta)
    }
}

impl fmt::Display for PrimitiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let delta: Vec<String> = self.delta.iter().map(|d| d.to_string()).collect();
        write!(f, "R {} {} [{}]", self.i, self.j, delta.join(" "))
    }
}

/// All primitives of order n: arc pairs in lexicographic order, Delta
/// sets in lexicographic order within each pair.
pub fn all_primitives(n: u8) -> Vec<PrimitiveSpec> {
    let m = 2 * n;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let arcs = [i, succ(n, i), j, succ(n, j)];
            if arcs[0] == arcs[3] || arcs[1] == arcs[2] {
                continue;
            }
            let pool: Vec<u8> = (1..=m).filter(|e| !arcs.contains(e)).collect();
            let k = n as usize - 2;
            fn subsets(
                pool: &[u8],
                k: usize,
                start: usize,
                pick: &mut Vec<u8>,
                out: &mut Vec<Vec<u8>>,
            ) {
                if pick.len() == k {
                    out.push(pick.clone());
                    return;
                }
                for s in start..pool.len() {
                    pick.push(pool[s]);
                    subsets(pool, k, s + 1, pick, out);
                    pick.pop();
                }
            }
            let mut deltas = Vec::new();
            subsets(&pool, k, 0, &mut Vec::new(), &mut deltas);
            for delta in deltas {
                out.push(PrimitiveSpec::new(n, i, j, delta).expect("enumerated primitive"));
            }
        }
    }
    out
}

/// Expected number of primitives: one per ordered disjoint arc pair
/// and (2n-4 choose n-2) Delta choices.
pub fn primitive_count_formula(n: u8) -> u64 {
    let m = 2 * n as u64;
    let pairs = m * (m - 3) / 2;
    pairs * binomial(m - 4, n as u64 - 2)
}

/// A six-term linear relation among primitive vectors: with the ids
/// paired as (a1,b1),(a2,b2),(a3,b3), the differences v[a]-v[b] of all
/// three pairs are equal as exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub pairs: [(usize, usize); 3],
}

impl Chain {
    fn canonical(mut pairs: [(usize, usize); 3]) -> Chain {
        pairs.sort_unstable();
        let mut flipped = pairs.map(|(a, b)| (b, a));
        flipped.sort_unstable();
        Chain {
            pairs: pairs.min(flipped),
        }
    }

    pub fn ids(&self) -> [usize; 6] {
        let [(a1, b1), (a2, b2), (a3, b3)] = self.pairs;
        [a1, b1, a2, b2, a3, b3]
    }
}

/// Enumerates the relation chains of order n and verifies each one by
/// exact vector arithmetic. For every primitive (i, j, Delta) and each
/// x in Delta whose successor is free, moving x to its successor
/// changes the vector by the same amount as trading x against either
/// arc, which yields the three pairs of the chain.
pub fn relation_chains(n: u8, prims: &[PrimitiveSpec]) -> Result<Vec<Chain>> {
    let id_of: HashMap<&PrimitiveSpec, usize> =
        prims.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let lookup = |spec: PrimitiveSpec| -> Result<usize> {
        id_of
            .get(&spec)
            .copied()
            .ok_or_else(|| Error::InvalidPrimitive(format!("{spec} not in the enumeration")))
    };

    let mut seen = BTreeSet::new();
    for p in prims {
        let (i, j) = (p.i, p.j);
        for &x in &p.delta {
            let sx = succ(n, x);
            if p.delta.contains(&sx) || sx == i || sx == j {
                continue;
            }
            let rest: Vec<u8> = p.delta.iter().copied().filter(|&d| d != x).collect();
            let with = |extra: u8| -> Vec<u8> {
                let mut d = rest.clone();
                d.push(extra);
                d
            };
            let v1 = lookup(p.clone())?;
            let v2 = lookup(PrimitiveSpec::new(n, i, j, with(sx))?)?;
            let v3 = lookup(PrimitiveSpec::new(n, x.min(j), x.max(j), with(i))?)?;
            let v4 = lookup(PrimitiveSpec::new(n, x.min(j), x.max(j), with(succ(n, i)))?)?;
            let v5 = lookup(PrimitiveSpec::new(n, x.min(i), x.max(i), with(j))?)?;
            let v6 = lookup(PrimitiveSpec::new(n, x.min(i), x.max(i), with(succ(n, j)))?)?;
            seen.insert(Chain::canonical([(v1, v2), (v3, v4), (v5, v6)]));
        }
    }

    let vectors: Vec<RatioVector> = prims.iter().map(|p| p.vector()).collect();
    for chain in &seen {
        let diffs: Vec<RatioVector> = chain
            .pairs
            .iter()
            .map(|&(a, b)| vectors[a].sub(&vectors[b]))
            .collect();
        if diffs[0] != diffs[1] || diffs[1] != diffs[2] {
            return Err(Error::InvalidPrimitive(format!(
                "chain {:?} fails the difference identity",
                chain.pairs
            )));
        }
        if diffs[0].is_zero() {
            return Err(Error::InvalidPrimitive(format!(
                "chain {:?} is degenerate",
                chain.pairs
            )));
        }
    }
    Ok(seen.into_iter().collect())
}

pub struct RankReport {
    pub rank: usize,
    /// Coordinates not hit by a pivot during column-ordered elimination
    /// of the primitive-vector matrix, in lexicographic rank order.
    pub free_columns: Vec<PluckerIndex>,
}

/// Rank of the span of the primitive vectors inside coordinate space.
pub fn rank_report(n: u8, prims: &[PrimitiveSpec]) -> RankReport {
    let ncols = coordinate_count(n);
    let rows: Vec<Vec<Int>> = prims
        .iter()
        .map(|p| p.vector().alpha().iter().map(|&a| Int::from(a)).collect())
        .collect();
    let Echelon { rank, pivot_cols } = int_echelon(rows, ncols);
    let pivot: BTreeSet<usize> = pivot_cols.into_iter().collect();
    let free_columns = (0..ncols)
        .filter(|c| !pivot.contains(c))
        .map(|c| PluckerIndex::from_rank(n, c).expect("rank in range"))
        .collect();
    RankReport { rank, free_columns }
}

/// The distinguished spanning subset of primitives: Delta must take a
/// prefix of the positions before arc i, a prefix of the positions
/// between the arcs, and an arbitrary subset of the positions after
/// arc j. When j = 2n the first stretch starts at 2 (element 1 lies on
/// the wrapping arc) and the tail stretch is empty.
pub fn basis(n: u8) -> Vec<PrimitiveSpec> {
    let m = 2 * n;
    let need = n as usize - 2;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let arcs = [i, succ(n, i), j, succ(n, j)];
            if arcs[0] == arcs[3] || arcs[1] == arcs[2] {
                continue;
            }
            let (first, mid, tail): (Vec<u8>, Vec<u8>, Vec<u8>) = if j < m {
                (
                    (1..i).collect(),
                    (i + 2..j).collect(),
                    (j + 2..=m).collect(),
                )
            } else {
                ((2..i).collect(), (i + 2..j).collect(), Vec::new())
            };
            for t1 in 0..=first.len() {
                for t2 in 0..=mid.len() {
                    if t1 + t2 > need {
                        continue;
                    }
                    let want = need - t1 - t2;
                    if want > tail.len() {
                        continue;
                    }
                    let mut stem: Vec<u8> = Vec::with_capacity(need);
                    stem.extend_from_slice(&first[..t1]);
                    stem.extend_from_slice(&mid[..t2]);
                    let mut tails = Vec::new();
                    fn subsets(
                        pool: &[u8],
                        k: usize,
                        start: usize,
                        pick: &mut Vec<u8>,
                        out: &mut Vec<Vec<u8>>,
                    ) {
                        if pick.len() == k {
                            out.push(pick.clone());
                            return;
                        }
                        for s in start..pool.len() {
                            pick.push(pool[s]);
                            subsets(pool, k, s + 1, pick, out);
                            pick.pop();
                        }
                    }
                    subsets(&tail, want, 0, &mut Vec::new(), &mut tails);
                    for t in tails {
                        let mut delta = stem.clone();
                        delta.extend(t);
                        out.push(PrimitiveSpec::new(n, i, j, delta).expect("basis primitive"));
                    }
                }
            }
        }
    }
    out
}

/// Closed form for the basis size; equals (2n choose n) - 2n.
pub fn basis_count_formula(n: u8) -> u64 {
    let n64 = n as u64;
    let mut total = (n64 - 1) * (n64 - 1);
    for k in 0..=n64 - 2 {
        for j in n64 - k + 1..=2 * n64 - k - 1 {
            total += binomial(2 * n64 - j - 1, k) * (n64 - k - 1) * (j + k - n64);
        }
    }
    total
}

/// The generator description of the cone spanned by the primitives.
pub fn primitive_cone(n: u8, prims: &[PrimitiveSpec]) -> Result<ConeV> {
    let rays: Vec<Vec<Int>> = prims
        .iter()
        .map(|p| p.vector().alpha().iter().map(|&a| Int::from(a)).collect())
        .collect();
    ConeV::new(coordinate_count(n), rays, Vec::new())
}

/// For each facet inequality, the ids of the primitives strictly off
/// the facet (every generator satisfies a.v <= 0, so off means < 0).
pub fn outer_sets(h: &ConeH, prims: &[PrimitiveSpec]) -> Vec<BTreeSet<usize>> {
    use crate::cone::matrix::dot_int;
    use num::Zero;
    let vectors: Vec<Vec<Int>> = prims
        .iter()
        .map(|p| p.vector().alpha().iter().map(|&a| Int::from(a)).collect())
        .collect();
    h.ineqs()
        .iter()
        .map(|a| {
            vectors
                .iter()
                .enumerate()
                .filter(|(_, v)| !dot_int(a, v).is_zero())
                .map(|(k, _)| k)
                .collect()
        })
        .collect()
}

/// The outer-set family predicted by the chain structure: a singleton
/// per isolated primitive, the three difference pairs of each chain,
/// and per chain the set of firsts and the set of seconds.
pub fn predicted_outer_family(
    prims: &[PrimitiveSpec],
    chains: &[Chain],
) -> BTreeSet<BTreeSet<usize>> {
    let mut family = BTreeSet::new();
    for (k, p) in prims.iter().enumerate() {
        if p.is_isolated() {
            family.insert(BTreeSet::from([k]));
        }
    }
    for chain in chains {
        for &(a, b) in &chain.pairs {
            family.insert(BTreeSet::from([a, b]));
        }
        family.insert(chain.pairs.iter().map(|&(a, _)| a).collect());
        family.insert(chain.pairs.iter().map(|&(_, b)| b).collect());
    }
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_formula() {
        for n in 2..=4u8 {
            let prims = all_primitives(n);
            assert_eq!(prims.len() as u64, primitive_count_formula(n));
        }
        assert_eq!(all_primitives(2).len(), 2);
        assert_eq!(all_primitives(3).len(), 18);
        assert_eq!(all_primitives(4).len(), 120);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(PrimitiveSpec::new(3, 1, 2, vec![4]).is_err()); // arcs overlap
        assert!(PrimitiveSpec::new(3, 1, 6, vec![3]).is_err()); // wrap overlap
        assert!(PrimitiveSpec::new(3, 1, 3, vec![]).is_err()); // short Delta
        assert!(PrimitiveSpec::new(3, 1, 3, vec![2]).is_err()); // on arc
        assert!(PrimitiveSpec::new(3, 1, 3, vec![5]).is_ok());
        assert!(PrimitiveSpec::new(2, 1, 3, vec![]).is_ok());
    }

    #[test]
    fn vectors_are_st0_and_degree_two() {
        for n in 2..=4u8 {
            for p in all_primitives(n) {
                let v = p.vector();
                assert!(v.is_st0(), "{p}");
                assert_eq!(v.numerator_degree(), 2);
                assert_eq!(v.denominator_degree(), 2);
            }
        }
    }

    #[test]
    fn order_two_vectors_frozen() {
        // coordinates of order 2 in lex order: 12 13 14 23 24 34
        let prims = all_primitives(2);
        // R 1 3 []: plus at {1,4},{2,3}, minus at {1,3},{2,4}
        let v13 = prims[0].vector();
        assert_eq!(v13.alpha(), &[0, -1, 1, 1, -1, 0]);
        // R 2 4 []: plus at {1,2},{3,4}, minus at {2,4},{1,3}
        let v24 = prims[1].vector();
        assert_eq!(v24.alpha(), &[1, -1, 0, 0, -1, 1]);
    }

    #[test]
    fn isolated_classification() {
        for (n, want) in [(3u8, 6usize), (4, 8)] {
            let prims = all_primitives(n);
            let isolated: Vec<&PrimitiveSpec> =
                prims.iter().filter(|p| p.is_isolated()).collect();
            assert_eq!(isolated.len(), want);
            for p in isolated {
                assert_eq!(p.j - p.i, n);
            }
        }
        // antipodal arcs but Delta not a full gap
        let split = PrimitiveSpec::new(4, 1, 5, vec![3, 7]).unwrap();
        assert!(!split.is_isolated());
        let gap = PrimitiveSpec::new(4, 1, 5, vec![3, 4]).unwrap();
        assert!(gap.is_isolated());
        let wrap_gap = PrimitiveSpec::new(4, 1, 5, vec![7, 8]).unwrap();
        assert!(wrap_gap.is_isolated());
    }

    #[test]
    fn chain_counts() {
        let prims3 = all_primitives(3);
        let chains3 = relation_chains(3, &prims3).unwrap();
        assert_eq!(chains3.len(), 2);
        let prims4 = all_primitives(4);
        let chains4 = relation_chains(4, &prims4).unwrap();
        assert_eq!(chains4.len(), 32);
    }

    #[test]
    fn chain_construction_frozen() {
        // start from (1, 3, {5}) and move x = 5
        let n = 3;
        let prims = all_primitives(n);
        let find = |i, j, d: &[u8]| -> usize {
            let spec = PrimitiveSpec::new(n, i, j, d.to_vec()).unwrap();
            prims.iter().position(|p| *p == spec).unwrap()
        };
        let chains = relation_chains(n, &prims).unwrap();
        let expect = Chain::canonical([
            (find(1, 3, &[5]), find(1, 3, &[6])),
            (find(3, 5, &[1]), find(3, 5, &[2])),
            (find(1, 5, &[3]), find(1, 5, &[4])),
        ]);
        assert!(chains.contains(&expect));
    }

    #[test]
    fn rank_drop_is_2n() {
        for n in 2..=3u8 {
            let prims = all_primitives(n);
            let report = rank_report(n, &prims);
            assert_eq!(report.rank, coordinate_count(n) - 2 * n as usize);
            assert_eq!(report.free_columns.len(), 2 * n as usize);
        }
    }

    #[test]
    fn free_columns_order_three() {
        let prims = all_primitives(3);
        let report = rank_report(3, &prims);
        let compact: Vec<String> = report
            .free_columns
            .iter()
            .map(|s| s.compact())
            .collect();
        assert_eq!(compact, vec!["156", "256", "345", "346", "356", "456"]);
    }

    #[test]
    fn basis_is_spanning_and_independent() {
        for n in 2..=3u8 {
            let b = basis(n);
            assert_eq!(b.len() as u64, basis_count_formula(n));
            let report = rank_report(n, &b);
            assert_eq!(report.rank, b.len(), "independent");
            let all = all_primitives(n);
            let full = rank_report(n, &all);
            assert_eq!(report.rank, full.rank, "spanning");
            for p in &b {
                assert!(all.contains(p));
            }
        }
    }

    #[test]
    fn basis_count_matches_enumeration_and_closed_form() {
        for n in 2..=6u8 {
            let m = 2 * n as u64;
            assert_eq!(
                basis_count_formula(n),
                binomial(m, n as u64) - m,
                "n={n}"
            );
            assert_eq!(basis(n).len() as u64, basis_count_formula(n), "n={n}");
        }
    }

    #[test]
    fn basis_membership_by_pair_order_three() {
        let b = basis(3);
        assert_eq!(b.len(), 14);
        let mut by_pair: HashMap<(u8, u8), usize> = HashMap::new();
        for p in &b {
            *by_pair.entry((p.i, p.j)).or_default() += 1;
        }
        let expect = [
            ((1, 3), 2),
            ((1, 4), 2),
            ((1, 5), 1),
            ((2, 4), 2),
            ((2, 5), 2),
            ((2, 6), 1),
            ((3, 5), 1),
            ((3, 6), 2),
            ((4, 6), 1),
        ];
        for (pair, count) in expect {
            assert_eq!(by_pair.get(&pair), Some(&count), "pair {pair:?}");
        }
        assert_eq!(by_pair.len(), 9);
    }

    #[test]
    fn parse_display_round_trip() {
        for p in all_primitives(3) {
            let text = p.to_string();
            assert_eq!(PrimitiveSpec::parse(3, &text).unwrap(), p);
        }
        assert!(PrimitiveSpec::parse(3, "R 1 3").is_err());
        assert!(PrimitiveSpec::parse(3, "1 3 [5]").is_err());
    }
}
