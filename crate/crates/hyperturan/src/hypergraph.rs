//! Validated linear r-uniform hypergraphs.
//!
//! [`LinearHypergraph`] is the universal object every other module consumes.
//! Construction goes through [`LinearHypergraph::validate`], which enforces
//! uniformity, vertex range, and linearity (every vertex pair in at most one
//! edge), and canonicalizes the representation: each edge sorted ascending,
//! the edge list sorted lexicographically. After validation the structure is
//! immutable, so it can be shared freely across threads.

use crate::bitset::VertexSet;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge:?} violates {r}-uniformity")]
    UniformityViolation { r: usize, edge: Vec<usize> },
    #[error("pair {{{u},{v}}} occurs in two edges: {first:?} and {second:?}")]
    LinearityViolation {
        u: usize,
        v: usize,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("uniformity r={r} must be at least 2")]
    UniformityTooSmall { r: usize },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// An r-uniform linear hypergraph on vertices `0..n`, canonical after
/// validation. Isolated vertices are allowed: `n` may exceed the support of
/// the edge set, and every bound downstream is stated against the declared `n`.
#[derive(Clone)]
pub struct LinearHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    edge_bits: Vec<VertexSet>,
    incidence: Vec<Vec<usize>>,
}

impl LinearHypergraph {
    /// Validates and canonicalizes raw input.
    pub fn validate(
        n: usize,
        r: usize,
        raw_edges: &[Vec<usize>],
    ) -> Result<Self, HypergraphError> {
        if r < 2 {
            return Err(HypergraphError::UniformityTooSmall { r });
        }
        let mut edges: Vec<Vec<usize>> = Vec::with_capacity(raw_edges.len());
        for raw in raw_edges {
            if raw.len() != r {
                return Err(HypergraphError::UniformityViolation {
                    r,
                    edge: raw.clone(),
                });
            }
            let mut e = raw.clone();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::UniformityViolation {
                    r,
                    edge: raw.clone(),
                });
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.push(e);
        }
        edges.sort_unstable();

        // The pair map doubles as the linearity check; it also catches
        // duplicate edges since r >= 2 means every edge carries a pair.
        let mut pair_owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (idx, e) in edges.iter().enumerate() {
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    let key = (e[i], e[j]);
                    if let Some(&prev) = pair_owner.get(&key) {
                        return Err(HypergraphError::LinearityViolation {
                            u: e[i],
                            v: e[j],
                            first: edges[prev].clone(),
                            second: e.clone(),
                        });
                    }
                    pair_owner.insert(key, idx);
                }
            }
        }

        let edge_bits = edges
            .iter()
            .map(|e| VertexSet::from_iter(n, e.iter().copied()))
            .collect();
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        Ok(LinearHypergraph {
            n,
            r,
            edges,
            edge_bits,
            incidence,
        })
    }

    pub fn empty(n: usize, r: usize) -> Self {
        LinearHypergraph::validate(n, r, &[]).expect("empty edge set is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> {
        self.edges.iter().map(|e| e.as_slice())
    }

    pub fn edge_list(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_bits(&self, idx: usize) -> &VertexSet {
        &self.edge_bits[idx]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Edge indices through `v`, ascending.
    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// The single shared vertex of two distinct edges, or `None` if disjoint.
    pub fn shared_vertex(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_bits[i].first_common(&self.edge_bits[j])
    }

    pub fn edges_disjoint(&self, i: usize, j: usize) -> bool {
        self.edge_bits[i].is_disjoint(&self.edge_bits[j])
    }

    /// Index of the edge containing both `u` and `v`, if any.
    pub fn pair_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence[u]
            .iter()
            .copied()
            .find(|&e| self.edge_bits[e].contains(v))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mut histogram = BTreeMap::new();
        for &d in &degrees {
            *histogram.entry(d).or_insert(0usize) += 1;
        }
        DegreeProfile {
            degrees,
            min,
            max,
            histogram,
        }
    }

    /// Connected components under the "chain of intersecting edges" relation.
    /// Labels are assigned in order of smallest contained vertex, so the
    /// labeling is independent of edge-list order.
    pub fn components(&self) -> ComponentPartition {
        let mut labels = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v] {
                    for &u in &self.edges[e] {
                        if labels[u] == usize::MAX {
                            labels[u] = count;
                            stack.push(u);
                        }
                    }
                }
            }
            count += 1;
        }
        ComponentPartition { labels, count }
    }

    /// Extracts one component as its own hypergraph with vertices relabeled
    /// densely in increasing order of original id. Returns the sub-hypergraph
    /// and the original ids of its vertices.
    pub fn component_subgraph(
        &self,
        partition: &ComponentPartition,
        label: usize,
    ) -> (LinearHypergraph, Vec<usize>) {
        let verts: Vec<usize> = (0..self.n)
            .filter(|&v| partition.labels[v] == label)
            .collect();
        let mut remap = vec![usize::MAX; self.n];
        for (new, &old) in verts.iter().enumerate() {
            remap[old] = new;
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| partition.labels[e[0]] == label)
            .map(|e| e.iter().map(|&v| remap[v]).collect())
            .collect();
        let sub = LinearHypergraph::validate(verts.len(), self.r, &edges)
            .expect("component of a valid hypergraph is valid");
        (sub, verts)
    }

    /// Parses the `.lhg` text format: header `r n m`, then `m` lines of `r`
    /// vertex ids; `#`-prefixed lines are ignored.
    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim_end_matches('\r');
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
            let parse_field = |s: &str| -> Result<usize, HypergraphError> {
                s.parse().map_err(|_| HypergraphError::Format {
                    line: lineno + 1,
                    msg: format!("expected integer, got {s:?}"),
                })
            };
            match header {
                None => {
                    if fields.len() != 3 {
                        return Err(HypergraphError::Format {
                            line: lineno + 1,
                            msg: format!("header must be `r n m`, got {} fields", fields.len()),
                        });
                    }
                    let r = parse_field(fields[0])?;
                    let n = parse_field(fields[1])?;
                    let m = parse_field(fields[2])?;
                    header = Some((r, n, m));
                }
                Some((r, _, m)) => {
                    if edges.len() == m {
                        return Err(HypergraphError::Format {
                            line: lineno + 1,
                            msg: format!("more than the declared {m} edges"),
                        });
                    }
                    if fields.len() != r {
                        return Err(HypergraphError::Format {
                            line: lineno + 1,
                            msg: format!("edge arity mismatch: expected {r} ids, got {}", fields.len()),
                        });
                    }
                    let edge = fields
                        .iter()
                        .map(|s| parse_field(s))
                        .collect::<Result<Vec<usize>, _>>()?;
                    edges.push(edge);
                }
            }
        }
        let Some((r, n, m)) = header else {
            return Err(HypergraphError::Format {
                line: 1,
                msg: "missing `r n m` header".into(),
            });
        };
        if edges.len() != m {
            return Err(HypergraphError::Format {
                line: text.lines().count() + 1,
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        LinearHypergraph::validate(n, r, &edges)
    }

    /// Serializes to the `.lhg` text format in canonical order.
    /// `parse(serialize(h)) == h` for every valid hypergraph.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {} {}\n", self.r, self.n, self.edges.len());
        for e in &self.edges {
            let ids: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

impl PartialEq for LinearHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for LinearHypergraph {}

impl std::fmt::Debug for LinearHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearHypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

// JSON mirror: {"r":…,"n":…,"edges":[[…]…]} with edges in canonical order.
impl Serialize for LinearHypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mirror<'a> {
            r: usize,
            n: usize,
            edges: &'a [Vec<usize>],
        }
        Mirror {
            r: self.r,
            n: self.n,
            edges: &self.edges,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearHypergraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Mirror {
            r: usize,
            n: usize,
            edges: Vec<Vec<usize>>,
        }
        let m = Mirror::deserialize(deserializer)?;
        LinearHypergraph::validate(m.n, m.r, &m.edges).map_err(D::Error::custom)
    }
}

/// Per-vertex degrees with min, max, and a degree-value histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Partition of the vertex set into connected components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    pub labels: Vec<usize>,
    pub count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard cyclic difference-set labeling of the Fano plane.
    pub(crate) fn fano_blocks() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ]
    }

    /// Test-local pair-coverage oracle: every vertex pair in exactly one edge.
    fn pair_coverage_exact(h: &LinearHypergraph) -> bool {
        let n = h.n();
        let mut cover = vec![0usize; n * n];
        for e in h.edges() {
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    cover[e[i] * n + e[j]] += 1;
                }
            }
        }
        (0..n).all(|u| ((u + 1)..n).all(|v| cover[u * n + v] == 1))
    }

    #[test]
    fn fano_validates_and_is_steiner() {
        let h = LinearHypergraph::validate(7, 3, &fano_blocks()).unwrap();
        assert_eq!(h.edge_count(), 7);
        assert!(pair_coverage_exact(&h));
    }

    #[test]
    fn empty_edge_set_is_valid() {
        let h = LinearHypergraph::validate(3, 3, &[]).unwrap();
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn repeated_pair_is_linearity_violation() {
        let err = LinearHypergraph::validate(5, 3, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap_err();
        match err {
            HypergraphError::LinearityViolation { u, v, first, second } => {
                assert_eq!((u, v), (0, 1));
                assert_eq!(first, vec![0, 1, 2]);
                assert_eq!(second, vec![0, 1, 3]);
            }
            other => panic!("expected linearity violation, got {other:?}"),
        }
    }

    #[test]
    fn uniformity_and_range_errors() {
        assert!(matches!(
            LinearHypergraph::validate(5, 3, &[vec![0, 1]]),
            Err(HypergraphError::UniformityViolation { .. })
        ));
        assert!(matches!(
            LinearHypergraph::validate(5, 3, &[vec![0, 1, 1]]),
            Err(HypergraphError::UniformityViolation { .. })
        ));
        assert!(matches!(
            LinearHypergraph::validate(3, 3, &[vec![0, 1, 5]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 5, n: 3 })
        ));
        assert!(matches!(
            LinearHypergraph::validate(3, 1, &[]),
            Err(HypergraphError::UniformityTooSmall { r: 1 })
        ));
    }

    #[test]
    fn duplicate_edge_rejected() {
        assert!(matches!(
            LinearHypergraph::validate(5, 3, &[vec![0, 1, 2], vec![2, 0, 1]]),
            Err(HypergraphError::LinearityViolation { .. })
        ));
    }

    #[test]
    fn canonical_order() {
        let h = LinearHypergraph::validate(6, 3, &[vec![5, 4, 3], vec![2, 1, 0]]).unwrap();
        assert_eq!(h.edge_list(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn degree_profile_examples() {
        let fano = LinearHypergraph::validate(7, 3, &fano_blocks()).unwrap();
        let p = fano.degree_profile();
        assert_eq!((p.min, p.max), (3, 3));
        assert_eq!(p.degrees, vec![3; 7]);

        let empty = LinearHypergraph::empty(4, 3);
        assert_eq!(empty.degree_profile().degrees, vec![0; 4]);

        let single = LinearHypergraph::validate(5, 3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(single.degree_profile().degrees, vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn handshake_identity() {
        for h in [
            LinearHypergraph::validate(7, 3, &fano_blocks()).unwrap(),
            LinearHypergraph::validate(5, 3, &[vec![0, 1, 2]]).unwrap(),
            LinearHypergraph::empty(9, 4),
        ] {
            let total: usize = (0..h.n()).map(|v| h.degree(v)).sum();
            assert_eq!(total, h.r() * h.edge_count());
        }
    }

    #[test]
    fn components_examples() {
        let fano = LinearHypergraph::validate(7, 3, &fano_blocks()).unwrap();
        assert_eq!(fano.components().count, 1);

        let mut two = fano_blocks();
        two.extend(fano_blocks().iter().map(|e| e.iter().map(|v| v + 7).collect::<Vec<_>>()));
        let h = LinearHypergraph::validate(14, 3, &two).unwrap();
        assert_eq!(h.components().count, 2);

        let h = LinearHypergraph::validate(5, 3, &[vec![0, 1, 2]]).unwrap();
        let parts = h.components();
        assert_eq!(parts.count, 3);
        assert_eq!(parts.labels, vec![0, 0, 0, 1, 2]);
    }

    #[test]
    fn parse_and_serialize() {
        let h = LinearHypergraph::parse("3 3 1\n0 1 2\n").unwrap();
        assert_eq!((h.n(), h.r()), (3, 3));
        assert_eq!(h.edge_list(), &[vec![0, 1, 2]]);

        let s = "3 7 7\n0 1 3\n0 2 6\n0 4 5\n1 2 4\n1 5 6\n2 3 5\n3 4 6\n";
        let parsed = LinearHypergraph::parse(s).unwrap();
        assert_eq!(parsed.serialize(), s);
    }

    #[test]
    fn parse_errors() {
        // Arity mismatch is a format error, not a uniformity error.
        match LinearHypergraph::parse("3 3 1\n0 1\n") {
            Err(HypergraphError::Format { line: 2, .. }) => {}
            other => panic!("expected format error on line 2, got {other:?}"),
        }
        assert!(matches!(
            LinearHypergraph::parse(""),
            Err(HypergraphError::Format { .. })
        ));
        assert!(matches!(
            LinearHypergraph::parse("3 3\n"),
            Err(HypergraphError::Format { line: 1, .. })
        ));
        assert!(matches!(
            LinearHypergraph::parse("3 9 2\n0 1 2\n"),
            Err(HypergraphError::Format { .. })
        ));
        assert!(matches!(
            LinearHypergraph::parse("3 9 1\n0 1 2\n3 4 5\n"),
            Err(HypergraphError::Format { .. })
        ));
        // Comments and blank lines are fine.
        let h = LinearHypergraph::parse("# steiner\n3 3 1\n\n0 1 2\n").unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn json_mirror_round_trip() {
        let h = LinearHypergraph::validate(7, 3, &fano_blocks()).unwrap();
        let json = serde_json::to_string(&h).unwrap();
        let back: LinearHypergraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["r"], 3);
        assert_eq!(v["n"], 7);
        assert_eq!(v["edges"][0], serde_json::json!([0, 1, 3]));
    }

    #[test]
    fn json_mirror_rejects_invalid() {
        let bad = r#"{"r":3,"n":5,"edges":[[0,1,2],[0,1,3]]}"#;
        assert!(serde_json::from_str::<LinearHypergraph>(bad).is_err());
    }
}
