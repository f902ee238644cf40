//! Weak-separation graphs. Each ratio gets a graph on its support,
//! vertices labeled by the side they appear on, with an edge exactly
//! between weakly separated index sets; ratios are then compared by
//! label-respecting graph isomorphism.

use crate::pluecker::{PluckerIndex, RatioVector};

/// Two subsets of the cyclically ordered ground set {1..2n} are
/// weakly separated when no cyclic alternation a, b, c, d exists with
/// a, c in the first set only and b, d in the second set only.
/// Equivalently, walking the cycle once, the elements belonging to
/// exactly one of the sets change sides at most twice.
pub fn weakly_separated(a: &PluckerIndex, b: &PluckerIndex) -> bool {
    assert_eq!(a.n(), b.n(), "index sets live on different ground sets");
    let m = 2 * a.n();
    let mut labels = Vec::new();
    for e in 1..=m {
        match (a.contains(e), b.contains(e)) {
            (true, false) => labels.push(true),
            (false, true) => labels.push(false),
            _ => {}
        }
    }
    if labels.is_empty() {
        return true;
    }
    let changes = (0..labels.len())
        .filter(|&i| labels[i] != labels[(i + 1) % labels.len()])
        .count();
    changes <= 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WsVertex {
    pub index: PluckerIndex,
    /// True when the index set sits in the numerator.
    pub numerator: bool,
}

/// Undirected graph without self-loops; vertices keep the support
/// order of the ratio they came from.
#[derive(Clone, Debug)]
pub struct WsGraph {
    vertices: Vec<WsVertex>,
    edges: Vec<(usize, usize)>,
}

impl WsGraph {
    pub fn vertices(&self) -> &[WsVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }
}

/// Graph on the distinct index sets of the ratio, side labels from
/// the coefficient signs, an edge for every weakly separated pair.
pub fn ws_graph(v: &RatioVector) -> WsGraph {
    let vertices: Vec<WsVertex> = v
        .support()
        .into_iter()
        .map(|(index, c)| WsVertex {
            numerator: c > 0,
            index,
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if weakly_separated(&vertices[i].index, &vertices[j].index) {
                edges.push((i, j));
            }
        }
    }
    WsGraph { vertices, edges }
}

/// Side label, degree, and the sorted (label, degree) list of the
/// neighbors: a cheap isomorphism invariant used to prune matching.
type Signature = (bool, usize, Vec<(bool, usize)>);

fn signatures(g: &WsGraph, adj: &[Vec<bool>]) -> Vec<Signature> {
    let n = g.vertices.len();
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    (0..n)
        .map(|i| {
            let mut nb: Vec<(bool, usize)> = (0..n)
                .filter(|&j| adj[i][j])
                .map(|j| (g.vertices[j].numerator, deg[j]))
                .collect();
            nb.sort_unstable();
            (g.vertices[i].numerator, deg[i], nb)
        })
        .collect()
}

struct Matching<'a> {
    order: &'a [usize],
    adj1: &'a [Vec<bool>],
    adj2: &'a [Vec<bool>],
    sig1: &'a [Signature],
    sig2: &'a [Signature],
}

impl Matching<'_> {
    fn extend(&self, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let i = self.order[k];
        for cand in 0..used.len() {
            if used[cand] || self.sig2[cand] != self.sig1[i] {
                continue;
            }
            let consistent = self.order[..k]
                .iter()
                .all(|&p| self.adj1[i][p] == self.adj2[cand][map[p]]);
            if consistent {
                map[i] = cand;
                used[cand] = true;
                if self.extend(k + 1, map, used) {
                    return true;
                }
                used[cand] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
}

/// Label-respecting graph isomorphism: numerator vertices map to
/// numerator vertices. Exhaustive backtracking after signature
/// pruning, so a `true` comes with an explicit vertex bijection
/// having been found.
pub fn ws_isomorphic(g1: &WsGraph, g2: &WsGraph) -> bool {
    let n = g1.vertices.len();
    if n != g2.vertices.len() || g1.edges.len() != g2.edges.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let adj1 = g1.adjacency();
    let adj2 = g2.adjacency();
    let sig1 = signatures(g1, &adj1);
    let sig2 = signatures(g2, &adj2);
    {
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
    }
    // Match the rarest signatures first to fail fast.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| sig2.iter().filter(|s| **s == sig1[i]).count());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let m = Matching {
        order: &order,
        adj1: &adj1,
        adj2: &adj2,
        sig1: &sig1,
        sig2: &sig2,
    };
    m.extend(0, &mut map, &mut used)
}
