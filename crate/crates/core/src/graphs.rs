//! Matchings in simple graphs and their link to integrals of products of
//! Chebyshev-Hermite polynomials.
//!
//! `∫ e^{−x²/2} ∏ He_{nᵢ}(x) dx = √(2π) P(n⃗)`, where `P(n⃗)` counts the
//! perfect matchings of the complete multipartite graph with parts of
//! sizes `n⃗`. The matching polynomial of `K_m` is `He_m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::hermite::{hermite_explicit, PolyFamily};
use crate::scalar::Scalar;
use crate::{ExactPolynomial, Rational};

/// Largest graph the exact matching counter accepts.
pub const MAX_MATCHING_VERTICES: usize = 24;

/// Undirected simple graph on vertices `0..vertex_count`. Edges are stored
/// as `(u, v)` with `u < v`. The text format numbers vertices from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph { vertex_count, edges: BTreeSet::new() }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Loops, out-of-range vertices and repeated edges are errors.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidEdge { u, v, reason: "loops are not allowed" });
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidEdge { u, v, reason: "vertex out of range" });
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidEdge { u, v, reason: "duplicate edge" });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Parses the edge-list format: the vertex count on the first line, then
    /// one `u v` pair per line with 1-based vertices. Blank lines and text
    /// after `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut graph: Option<SimpleGraph> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(g) = graph.as_mut() else {
                let [count] = fields[..] else {
                    return Err(parse_err(format!("expected the vertex count, found '{line}'")));
                };
                let n = count
                    .parse::<usize>()
                    .map_err(|_| parse_err(format!("invalid vertex count '{count}'")))?;
                graph = Some(SimpleGraph::new(n));
                continue;
            };
            let [a, b] = fields[..] else {
                return Err(parse_err(format!("expected 'u v', found '{line}'")));
            };
            let vertex = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(parse_err(format!("invalid vertex '{s}'"))),
                }
            };
            let (u, v) = (vertex(a)?, vertex(b)?);
            g.add_edge(u, v).map_err(|e| match e {
                Error::InvalidEdge { reason, .. } => parse_err(format!("edge {a} {b}: {reason}")),
                other => other,
            })?;
        }
        graph.ok_or(Error::Parse { line: 1, message: "missing vertex count".into() })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    fn adjacency_masks(&self) -> Result<Vec<u32>> {
        if self.vertex_count > MAX_MATCHING_VERTICES {
            return Err(Error::GraphTooLarge { vertices: self.vertex_count, max: MAX_MATCHING_VERTICES });
        }
        let mut adj = vec![0u32; self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }
}

/// `p(G, j)`, the number of `j`-matches, for `j = 0..=ν(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCountTable {
    counts: Vec<BigUint>,
}

impl MatchCountTable {
    pub fn new(graph: &SimpleGraph) -> Result<Self> {
        let adj = graph.adjacency_masks()?;
        let mut memo = HashMap::new();
        let counts = (*match_counts(&adj, &mut memo)).clone();
        Ok(MatchCountTable { counts })
    }

    /// `p(G, j)`; zero past the matching number.
    pub fn get(&self, j: usize) -> BigUint {
        self.counts.get(j).cloned().unwrap_or_default()
    }

    /// Size of a maximum matching.
    pub fn matching_number(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// Drops isolated vertices and relabels the rest in order, so graphs that
/// differ only by isolated vertices share a memo entry.
fn compact(adj: &[u32]) -> Vec<u32> {
    let keep: Vec<usize> = (0..adj.len()).filter(|&v| adj[v] != 0).collect();
    if keep.len() == adj.len() {
        return adj.to_vec();
    }
    let mut relabel = [u32::MAX; 32];
    for (new, &old) in keep.iter().enumerate() {
        relabel[old] = new as u32;
    }
    keep.iter()
        .map(|&old| {
            let mut mask = adj[old];
            let mut out = 0u32;
            while mask != 0 {
                let b = mask.trailing_zeros() as usize;
                out |= 1 << relabel[b];
                mask &= mask - 1;
            }
            out
        })
        .collect()
}

/// `p(G, ·)` by `p(G, j) = p(G − e, j) + p(G − {u, v}, j − 1)` on the edge
/// `e = {u, v}` at the lowest vertex.
fn match_counts(adj: &[u32], memo: &mut HashMap<Vec<u32>, std::rc::Rc<Vec<BigUint>>>) -> std::rc::Rc<Vec<BigUint>> {
    let key = compact(adj);
    if key.is_empty() {
        return std::rc::Rc::new(vec![BigUint::one()]);
    }
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let u = 0;
    let v = key[u].trailing_zeros() as usize;

    let mut without_edge = key.clone();
    without_edge[u] &= !(1 << v);
    without_edge[v] &= !(1 << u);

    let both = (1u32 << u) | (1 << v);
    let mut without_ends: Vec<u32> = key.iter().map(|m| m & !both).collect();
    without_ends[u] = 0;
    without_ends[v] = 0;

    let a = match_counts(&without_edge, memo);
    let b = match_counts(&without_ends, memo);
    let len = a.len().max(b.len() + 1);
    let mut out = vec![BigUint::zero(); len];
    for (j, c) in a.iter().enumerate() {
        out[j] += c;
    }
    for (j, c) in b.iter().enumerate() {
        out[j + 1] += c;
    }
    let out = std::rc::Rc::new(out);
    memo.insert(key, out.clone());
    out
}

/// Number of `j`-matches of `graph`.
pub fn count_j_matches(graph: &SimpleGraph, j: usize) -> Result<BigUint> {
    Ok(MatchCountTable::new(graph)?.get(j))
}

/// `α(G, x) = Σ_j (−1)ʲ p(G, j) x^{|v| − 2j}`.
pub fn matching_polynomial(graph: &SimpleGraph) -> Result<ExactPolynomial> {
    let table = MatchCountTable::new(graph)?;
    Ok(signed_matching_polynomial(graph.vertex_count(), table.counts()))
}

fn signed_matching_polynomial(m: usize, counts: &[BigUint]) -> ExactPolynomial {
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (j, c) in counts.iter().enumerate() {
        let v = Rational::from_integer(c.clone().into());
        coeffs[m - 2 * j] = if j % 2 == 1 { -v } else { v };
    }
    ExactPolynomial::from_coeffs(coeffs)
}

pub fn complete_graph(m: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(m);
    for u in 0..m {
        for v in u + 1..m {
            g.edges.insert((u, v));
        }
    }
    g
}

/// `p(K_m, j) = m! / (2ʲ (m−2j)! j!)`.
pub fn complete_graph_match_count(m: usize, j: usize) -> BigUint {
    if 2 * j > m {
        return BigUint::zero();
    }
    factorial(m) / (factorial(m - 2 * j) * factorial(j) * (BigUint::one() << j))
}

/// Largest `m` for which [`verify_hermite_matching`] counts matchings on the
/// graph itself rather than using the closed count.
pub const BRUTE_FORCE_COMPLETE_LIMIT: usize = 14;

/// Whether `α(K_m) = He_m` holds coefficient for coefficient.
pub fn verify_hermite_matching(m: usize) -> Result<bool> {
    let alpha = if m <= BRUTE_FORCE_COMPLETE_LIMIT {
        matching_polynomial(&complete_graph(m))?
    } else {
        let counts: Vec<BigUint> = (0..=m / 2).map(|j| complete_graph_match_count(m, j)).collect();
        signed_matching_polynomial(m, &counts)
    };
    Ok(alpha == hermite_explicit(m, PolyFamily::ProbabilistHe))
}

/// Part sizes `(n₁, …, n_k)` of a complete multipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultipartiteSpec {
    parts: Vec<usize>,
}

impl MultipartiteSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("a multipartite graph needs at least one part".into()));
        }
        Ok(MultipartiteSpec { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl std::str::FromStr for MultipartiteSpec {
    type Err = Error;

    /// Comma-separated sizes, e.g. `1,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("invalid part size '{}'", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Vertices `0..n₁` form part 1, the next `n₂` part 2, and so on.
pub fn complete_kpartite(spec: &MultipartiteSpec) -> SimpleGraph {
    let mut owner = Vec::with_capacity(spec.total());
    for (p, &size) in spec.parts.iter().enumerate() {
        owner.extend(std::iter::repeat_n(p, size));
    }
    let mut g = SimpleGraph::new(owner.len());
    for u in 0..owner.len() {
        for v in u + 1..owner.len() {
            if owner[u] != owner[v] {
                g.edges.insert((u, v));
            }
        }
    }
    g
}

/// `P(n⃗)`, the number of perfect matchings of the complete multipartite
/// graph, by `P(n⃗) = Σ_{i≥2} nᵢ P(n₁−1, …, nᵢ−1, …)` with `P(0⃗) = 1`.
pub fn count_complete_matches(spec: &MultipartiteSpec) -> BigUint {
    let mut memo = HashMap::new();
    complete_matches(spec.parts.clone(), &mut memo)
}

fn complete_matches(mut parts: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    parts.retain(|&n| n > 0);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts.is_empty() {
        return BigUint::one();
    }
    let total: usize = parts.iter().sum();
    // the largest part must fit against the rest
    if total % 2 == 1 || 2 * parts[0] > total {
        return BigUint::zero();
    }
    if let Some(hit) = memo.get(&parts) {
        return hit.clone();
    }
    let mut acc = BigUint::zero();
    for i in 1..parts.len() {
        let mut next = parts.clone();
        next[0] -= 1;
        next[i] -= 1;
        acc += complete_matches(next, memo) * BigUint::from(parts[i]);
    }
    memo.insert(parts, acc.clone());
    acc
}

/// `P(m, n) = m! δ_{mn}` and
/// `P(l, m, n) = l! m! n! / ((s−l)! (s−m)! (s−n)!)` with `s = (l+m+n)/2`,
/// zero unless the sum is even and each part is at most the sum of the others.
pub fn partite_closed_form(parts: &[usize]) -> Result<BigUint> {
    match *parts {
        [m, n] => Ok(if m == n { factorial(m) } else { BigUint::zero() }),
        [l, m, n] => {
            let sum = l + m + n;
            if sum % 2 == 1 {
                return Ok(BigUint::zero());
            }
            let s = sum / 2;
            if l > s || m > s || n > s {
                return Ok(BigUint::zero());
            }
            Ok(factorial(l) * factorial(m) * factorial(n) / (factorial(s - l) * factorial(s - m) * factorial(s - n)))
        }
        _ => Err(Error::ClosedFormArity(parts.len())),
    }
}

/// `∫ e^{−x²/2} ∏ He_{nᵢ}(x) dx = √(2π) P(n⃗)`.
pub fn hermite_product_integral(parts: &[usize]) -> f64 {
    let p = if parts.is_empty() {
        BigUint::one()
    } else {
        count_complete_matches(&MultipartiteSpec { parts: parts.to_vec() })
    };
    p.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::TAU.sqrt()
}

/// `He_m He_n = Σ_l a_l He_l` with `l = m+n−2j` and `a_l = C(m,j) C(n,j) j!`.
pub fn linearization_coeffs(m: usize, n: usize) -> BTreeMap<usize, BigUint> {
    (0..=m.min(n))
        .map(|j| (m + n - 2 * j, binomial(m, j) * binomial(n, j) * factorial(j)))
        .collect()
}

/// The same coefficients read off the three-part matching count:
/// `a_l = J(l, m, n) / (√(2π) l!) = P(l, m, n) / l!`.
pub fn linearization_from_matchings(m: usize, n: usize) -> BTreeMap<usize, BigUint> {
    (0..=m + n)
        .filter_map(|l| {
            let p = count_complete_matches(&MultipartiteSpec { parts: vec![l, m, n] });
            (!p.is_zero()).then(|| (l, p / factorial(l)))
        })
        .collect()
}

/// `Σ_l a_l He_l` as an exact polynomial.
pub fn linearization_polynomial(coeffs: &BTreeMap<usize, BigUint>) -> ExactPolynomial {
    coeffs.iter().fold(ExactPolynomial::zero(), |acc, (&l, a)| {
        acc + hermite_explicit(l, PolyFamily::ProbabilistHe).scale(&Rational::from_bigint(&a.clone().into()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_value;
    use crate::quadrature::{gauss_hermite_rule, integrate_weighted};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn spec(parts: &[usize]) -> MultipartiteSpec {
        MultipartiteSpec::new(parts.to_vec()).unwrap()
    }

    /// Enumerates matchings edge by edge; exponential, for small graphs only.
    fn brute_force_counts(g: &SimpleGraph) -> Vec<u64> {
        fn walk(edges: &[(usize, usize)], start: usize, used: u64, size: usize, out: &mut Vec<u64>) {
            if out.len() <= size {
                out.resize(size + 1, 0);
            }
            out[size] += 1;
            for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
                let mask = (1u64 << u) | (1u64 << v);
                if used & mask == 0 {
                    walk(edges, i + 1, used | mask, size + 1, out);
                }
            }
        }
        let edges: Vec<_> = g.edges().collect();
        let mut out = Vec::new();
        walk(&edges, 0, 0, 0, &mut out);
        out
    }

    #[test]
    fn j_match_examples() {
        assert_eq!(count_j_matches(&cycle(4), 2).unwrap(), big(2));
        assert_eq!(count_j_matches(&cycle(7), 0).unwrap(), big(1));
        assert_eq!(count_j_matches(&SimpleGraph::new(0), 0).unwrap(), big(1));
        assert_eq!(count_j_matches(&complete_graph(4), 2).unwrap(), big(3));
        assert_eq!(
            count_j_matches(&SimpleGraph::new(25), 0),
            Err(Error::GraphTooLarge { vertices: 25, max: 24 })
        );
    }

    #[test]
    fn matching_polynomial_examples() {
        assert_eq!(matching_polynomial(&SimpleGraph::new(5)).unwrap(), ExactPolynomial::from_ints(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(matching_polynomial(&cycle(4)).unwrap(), ExactPolynomial::from_ints(&[2, 0, -4, 0, 1]));
        assert_eq!(matching_polynomial(&complete_graph(4)).unwrap(), ExactPolynomial::from_ints(&[3, 0, -6, 0, 1]));
    }

    #[test]
    fn complete_graph_edges() {
        assert_eq!(complete_graph(1).edge_count(), 0);
        assert_eq!(complete_graph(4).edge_count(), 6);
        assert_eq!(complete_graph(5).edge_count(), 10);
    }

    #[test]
    fn hermite_matching_theorem() {
        for m in 0..=20 {
            assert!(verify_hermite_matching(m).unwrap(), "m={m}");
        }
        for m in 0..=BRUTE_FORCE_COMPLETE_LIMIT {
            let table = MatchCountTable::new(&complete_graph(m)).unwrap();
            for j in 0..=m / 2 {
                assert_eq!(table.get(j), complete_graph_match_count(m, j));
            }
        }
    }

    #[test]
    fn counts_up_to_the_size_limit() {
        let table = MatchCountTable::new(&complete_graph(24)).unwrap();
        assert_eq!(table.get(12), complete_graph_match_count(24, 12));
        let table = MatchCountTable::new(&cycle(24)).unwrap();
        assert_eq!(table.get(12), big(2));
    }

    #[test]
    fn random_graphs_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4865);
        for _ in 0..50 {
            let n = rng.gen_range(1..=10);
            let density: f64 = rng.gen_range(0.1..0.9);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let table = MatchCountTable::new(&g).unwrap();
            assert_eq!(table.get(0), big(1));
            assert_eq!(table.get(1), big(g.edge_count() as u64));
            for j in n / 2 + 1..=n {
                assert!(table.get(j).is_zero());
            }
            let brute = brute_force_counts(&g);
            assert_eq!(table.counts(), brute.iter().map(|&c| big(c)).collect::<Vec<_>>().as_slice());
        }
    }

    #[test]
    fn edge_validation() {
        let mut g = SimpleGraph::new(3);
        assert!(matches!(g.add_edge(1, 1), Err(Error::InvalidEdge { reason: "loops are not allowed", .. })));
        assert!(matches!(g.add_edge(0, 3), Err(Error::InvalidEdge { reason: "vertex out of range", .. })));
        g.add_edge(2, 0).unwrap();
        assert!(g.has_edge(0, 2));
        assert!(matches!(g.add_edge(0, 2), Err(Error::InvalidEdge { reason: "duplicate edge", .. })));
    }

    #[test]
    fn edge_list_format() {
        let g = SimpleGraph::parse_edge_list("# square\n4\n1 2\n2 3\n\n3 4\n4 1\n").unwrap();
        assert_eq!(g, cycle(4));
        assert_eq!(SimpleGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(
            SimpleGraph::parse_edge_list("3\n1 2\n2 1\n"),
            Err(Error::Parse { line: 3, message: "edge 2 1: duplicate edge".into() })
        );
        assert_eq!(
            SimpleGraph::parse_edge_list("3\n1 2 3\n"),
            Err(Error::Parse { line: 2, message: "expected 'u v', found '1 2 3'".into() })
        );
        assert!(matches!(SimpleGraph::parse_edge_list("3\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(SimpleGraph::parse_edge_list("x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(SimpleGraph::parse_edge_list(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn kpartite_examples() {
        assert_eq!(complete_kpartite(&spec(&[1, 1])), complete_graph(2));
        let c4 = complete_kpartite(&spec(&[2, 2]));
        assert_eq!(c4.edge_count(), 4);
        assert!(!c4.has_edge(0, 1) && !c4.has_edge(2, 3));
        assert_eq!(complete_kpartite(&spec(&[1, 1, 1])), complete_graph(3));
        assert!(MultipartiteSpec::new(vec![]).is_err());
        assert_eq!("1, 1,2".parse::<MultipartiteSpec>().unwrap(), spec(&[1, 1, 2]));
    }

    #[test]
    fn complete_match_examples() {
        assert_eq!(count_complete_matches(&spec(&[3, 3])), big(6));
        assert_eq!(count_complete_matches(&spec(&[1, 1, 2])), big(2));
        // 2!3!3!/(2!1!1!): one A-B pair, one A-C pair, two B-C pairs
        assert_eq!(count_complete_matches(&spec(&[2, 3, 3])), big(36));
        assert_eq!(count_j_matches(&complete_kpartite(&spec(&[2, 3, 3])), 4).unwrap(), big(36));
        assert_eq!(count_complete_matches(&spec(&[1, 2])), big(0));
        assert_eq!(count_complete_matches(&spec(&[0, 0, 0])), big(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(partite_closed_form(&[2, 2]).unwrap(), big(2));
        assert_eq!(partite_closed_form(&[1, 1, 2]).unwrap(), big(2));
        assert_eq!(partite_closed_form(&[1, 2, 4]).unwrap(), big(0));
        assert_eq!(partite_closed_form(&[1, 1, 4]).unwrap(), big(0));
        assert_eq!(partite_closed_form(&[3]), Err(Error::ClosedFormArity(1)));
        assert_eq!(partite_closed_form(&[1, 1, 1, 1]), Err(Error::ClosedFormArity(4)));
    }

    fn part_vectors(max_total: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn grow(cur: &mut Vec<usize>, left: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            if cur.len() == max_len {
                return;
            }
            for n in 0..=left {
                cur.push(n);
                grow(cur, left - n, max_len, out);
                cur.pop();
            }
        }
        grow(&mut Vec::new(), max_total, max_len, &mut out);
        out
    }

    #[test]
    fn triple_agreement() {
        for parts in part_vectors(12, 4) {
            let s = spec(&parts);
            let total = s.total();
            let recurrence = count_complete_matches(&s);
            if total % 2 == 0 {
                let brute = count_j_matches(&complete_kpartite(&s), total / 2).unwrap();
                assert_eq!(recurrence, brute, "{parts:?}");
            } else {
                assert!(recurrence.is_zero());
            }
            if matches!(parts.len(), 2 | 3) {
                assert_eq!(partite_closed_form(&parts).unwrap(), recurrence, "{parts:?}");
            }
        }
    }

    #[test]
    fn product_integral_examples() {
        let s2p = std::f64::consts::TAU.sqrt();
        assert_eq!(hermite_product_integral(&[0, 0, 0]), s2p);
        assert_eq!(hermite_product_integral(&[]), s2p);
        assert_eq!(hermite_product_integral(&[4, 4]), 24.0 * s2p);
        assert_eq!(hermite_product_integral(&[1, 1, 2]), 2.0 * s2p);
    }

    #[test]
    fn product_integral_matches_quadrature() {
        for parts in part_vectors(12, 4) {
            let total: usize = parts.iter().sum();
            let rule = gauss_hermite_rule::<f64>(total / 2 + 1).unwrap();
            let direct = integrate_weighted(
                |x| parts.iter().map(|&n| hermite_value(n, x, PolyFamily::ProbabilistHe)).product(),
                &rule,
            )
            .unwrap();
            let combinatorial = hermite_product_integral(&parts);
            // odd totals vanish; compare against the size of the integrand there
            let scale = if combinatorial == 0.0 {
                parts.iter().map(|&n| (1..=n).map(|k| k as f64).product::<f64>().sqrt()).product::<f64>()
            } else {
                combinatorial
            };
            assert!((direct - combinatorial).abs() <= 1e-8 * scale, "{parts:?}: {direct} vs {combinatorial}");
        }
    }

    #[test]
    fn linearization_examples() {
        let as_map = |v: &[(usize, u64)]| v.iter().map(|&(l, a)| (l, big(a))).collect::<BTreeMap<_, _>>();
        assert_eq!(linearization_coeffs(1, 1), as_map(&[(2, 1), (0, 1)]));
        assert_eq!(linearization_coeffs(2, 2), as_map(&[(4, 1), (2, 4), (0, 2)]));
        assert_eq!(linearization_coeffs(0, 5), as_map(&[(5, 1)]));
    }

    #[test]
    fn linearization_reproduces_products() {
        for m in 0..=10 {
            for n in 0..=10 {
                let coeffs = linearization_coeffs(m, n);
                let product = hermite_explicit(m, PolyFamily::ProbabilistHe) * hermite_explicit(n, PolyFamily::ProbabilistHe);
                assert_eq!(linearization_polynomial(&coeffs), product, "m={m} n={n}");
                assert_eq!(linearization_from_matchings(m, n), coeffs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn linearization_matches_basis_change() {
        use crate::moments::{change_of_basis, BasisTag};
        for m in 0..=6 {
            for n in 0..=6 {
                let product = hermite_explicit(m, PolyFamily::ProbabilistHe) * hermite_explicit(n, PolyFamily::ProbabilistHe);
                let to_he = change_of_basis(m + n, BasisTag::Monomial, BasisTag::He).unwrap();
                let he_coords = to_he.apply(product.coeffs()).unwrap();
                let coeffs = linearization_coeffs(m, n);
                for (l, c) in he_coords.iter().enumerate() {
                    let expected = coeffs.get(&l).map(|a| Rational::from_bigint(&a.clone().into())).unwrap_or_default();
                    assert_eq!(*c, expected, "m={m} n={n} l={l}");
                }
            }
        }
    }
}
