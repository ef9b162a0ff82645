//! Forbidden configurations and containment tests.
//!
//! Patterns are tree expansions (each tree edge inflated with r-2 fresh
//! vertices) plus the crown: a base edge met by three pairwise disjoint
//! edges. "Contains" means sub-hypergraph containment: an injective vertex
//! map carrying pattern edges onto host edges setwise.
//!
//! Detectors come in two forms: specialized routines per pattern family, and
//! a generic backtracking embedder used to cross-validate them. Both operate
//! on any [`Host`], so the search frontier can run the same code paths as a
//! finished hypergraph. All detectors are deterministic: hosts are scanned by
//! smallest vertex id, then lexicographic edge order, and the first embedding
//! found is returned.

use crate::hypergraph::LinearHypergraph;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("path length k={k} is unsupported: k must be between 2 and 4")]
    UnsupportedK { k: usize },
    #[error("edge index {edge} is not in the host")]
    EdgeNotInHost { edge: usize },
}

/// Read-only view of a linear r-uniform edge system. `edge_verts` must be
/// sorted ascending, `edges_at` ascending by edge index; both requirements
/// keep detector output deterministic.
pub trait Host {
    fn n(&self) -> usize;
    fn r(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn edge_verts(&self, e: usize) -> &[usize];
    fn edges_at(&self, v: usize) -> &[usize];

    fn degree(&self, v: usize) -> usize {
        self.edges_at(v).len()
    }

    fn shared_vertex(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (self.edge_verts(i), self.edge_verts(j));
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => return Some(a[x]),
            }
        }
        None
    }

    fn edges_disjoint(&self, i: usize, j: usize) -> bool {
        self.shared_vertex(i, j).is_none()
    }
}

impl Host for LinearHypergraph {
    fn n(&self) -> usize {
        LinearHypergraph::n(self)
    }
    fn r(&self) -> usize {
        LinearHypergraph::r(self)
    }
    fn edge_count(&self) -> usize {
        LinearHypergraph::edge_count(self)
    }
    fn edge_verts(&self, e: usize) -> &[usize] {
        self.edge(e)
    }
    fn edges_at(&self, v: usize) -> &[usize] {
        LinearHypergraph::edges_at(self, v)
    }
    fn shared_vertex(&self, i: usize, j: usize) -> Option<usize> {
        LinearHypergraph::shared_vertex(self, i, j)
    }
    fn edges_disjoint(&self, i: usize, j: usize) -> bool {
        LinearHypergraph::edges_disjoint(self, i, j)
    }
}

/// A tree on vertices 0..=k with k edges, the object that gets expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(raw: Vec<(usize, usize)>) -> Result<Tree, PatternError> {
        let k = raw.len();
        if k == 0 {
            return Err(PatternError::InvalidTree("no edges".into()));
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(k);
        for (u, v) in raw {
            if u == v {
                return Err(PatternError::InvalidTree(format!("self-loop at {u}")));
            }
            if u.max(v) > k {
                return Err(PatternError::InvalidTree(format!(
                    "vertex {} out of range for a tree with {k} edges",
                    u.max(v)
                )));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        // k edges on k+1 vertices plus connectivity forces a tree.
        let mut seen = vec![false; k + 1];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &(u, v) in &edges {
                let other = if u == x {
                    v
                } else if v == x {
                    u
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    reached += 1;
                    stack.push(other);
                }
            }
        }
        if reached != k + 1 {
            return Err(PatternError::InvalidTree("not connected".into()));
        }
        Ok(Tree { edges })
    }

    /// k edges from center 0 to leaves 1..=k.
    pub fn star(k: usize) -> Tree {
        Tree::new((1..=k).map(|i| (0, i)).collect()).expect("star is a tree")
    }

    /// Path 0-1-...-k.
    pub fn path(k: usize) -> Tree {
        Tree::new((0..k).map(|i| (i, i + 1)).collect()).expect("path is a tree")
    }

    /// Star with 3 edges plus one edge hanging off leaf 1.
    pub fn broom4() -> Tree {
        Tree::new(vec![(0, 1), (0, 2), (0, 3), (1, 4)]).expect("broom is a tree")
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Star(usize),
    Path(usize),
    Broom4,
    Crown4,
    GenericTree,
}

/// A forbidden configuration, carried as a hypergraph in its own right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub kind: PatternKind,
    pub r: usize,
    pub hypergraph: LinearHypergraph,
}

impl Pattern {
    pub fn star(k: usize, r: usize) -> Pattern {
        let mut p = expand_tree(&Tree::star(k), r);
        p.kind = PatternKind::Star(k);
        p
    }

    pub fn path(k: usize, r: usize) -> Pattern {
        let mut p = expand_tree(&Tree::path(k), r);
        p.kind = PatternKind::Path(k);
        p
    }

    pub fn broom4(r: usize) -> Pattern {
        let mut p = expand_tree(&Tree::broom4(), r);
        p.kind = PatternKind::Broom4;
        p
    }
}

/// Inflates each tree edge {u,v} to an r-edge {u, v, r-2 fresh vertices}.
/// Tree vertices keep their labels; fresh vertices are numbered from k+1 in
/// tree-edge order. The result has (r-1)k+1 vertices and stays linear.
pub fn expand_tree(t: &Tree, r: usize) -> Pattern {
    assert!(r >= 2);
    let k = t.k();
    let n = (r - 1) * k + 1;
    let mut fresh = k + 1;
    let mut edges = Vec::with_capacity(k);
    for &(u, v) in t.edges() {
        let mut e = vec![u, v];
        for _ in 0..(r - 2) {
            e.push(fresh);
            fresh += 1;
        }
        edges.push(e);
    }
    let hypergraph =
        LinearHypergraph::validate(n, r, &edges).expect("tree expansion is linear");
    assert_eq!(hypergraph.n(), n);
    Pattern {
        kind: PatternKind::GenericTree,
        r,
        hypergraph,
    }
}

/// The crown: base edge {0..r-1} and three pairwise disjoint edges, each
/// meeting the base in exactly one of the vertices 0, 1, 2. Has 4r-3
/// vertices; requires r >= 3 so the attachment vertices are distinct.
pub fn crown(r: usize) -> Pattern {
    assert!(r >= 3, "crown needs a base edge with 3 distinct vertices");
    let mut edges = vec![(0..r).collect::<Vec<usize>>()];
    let mut fresh = r;
    for attach in 0..3 {
        let mut e = vec![attach];
        for _ in 0..(r - 1) {
            e.push(fresh);
            fresh += 1;
        }
        edges.push(e);
    }
    let hypergraph =
        LinearHypergraph::validate(4 * r - 3, r, &edges).expect("crown is linear");
    Pattern {
        kind: PatternKind::Crown4,
        r,
        hypergraph,
    }
}

/// Witness that a pattern occurs in a host: `vertex_map[p]` is the host image
/// of pattern vertex p, `edge_map[i]` the host edge carrying pattern edge i
/// (pattern edges in canonical order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Embedding {
    /// Full validity check: injectivity of both maps and setwise edge images.
    pub fn verify<H: Host + ?Sized>(&self, host: &H, pattern: &Pattern) -> bool {
        let ph = &pattern.hypergraph;
        if self.vertex_map.len() != ph.n() || self.edge_map.len() != ph.edge_count() {
            return false;
        }
        if self.vertex_map.iter().any(|&hv| hv >= host.n()) {
            return false;
        }
        let mut vs = self.vertex_map.clone();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let mut es = self.edge_map.clone();
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for (pe, &he) in self.edge_map.iter().enumerate() {
            if he >= host.edge_count() {
                return false;
            }
            let mut image: Vec<usize> =
                ph.edge(pe).iter().map(|&pv| self.vertex_map[pv]).collect();
            image.sort_unstable();
            if image != host.edge_verts(he) {
                return false;
            }
        }
        true
    }
}

/// Completes an embedding from the host edges chosen for each pattern edge
/// and pinned images for the pattern vertices shared between edges. Unpinned
/// pattern vertices are filled in ascending order against the unused host
/// vertices of their edge, which is well defined because every pattern vertex
/// in more than one pattern edge must be pinned.
fn fill_embedding<H: Host + ?Sized>(
    host: &H,
    pattern: &Pattern,
    host_edges: &[usize],
    pins: &[(usize, usize)],
) -> Embedding {
    let ph = &pattern.hypergraph;
    let mut vmap = vec![usize::MAX; ph.n()];
    for &(pv, hv) in pins {
        vmap[pv] = hv;
    }
    for (pe, &he) in host_edges.iter().enumerate() {
        let pverts = ph.edge(pe);
        let images: Vec<usize> = pverts
            .iter()
            .filter(|&&pv| vmap[pv] != usize::MAX)
            .map(|&pv| vmap[pv])
            .collect();
        let mut remaining: Vec<usize> = host
            .edge_verts(he)
            .iter()
            .copied()
            .filter(|hv| !images.contains(hv))
            .collect();
        remaining.sort_unstable();
        let mut next = remaining.into_iter();
        for &pv in pverts {
            if vmap[pv] == usize::MAX {
                vmap[pv] = next.next().expect("host edge has room for fresh vertices");
            }
        }
    }
    let embedding = Embedding {
        vertex_map: vmap,
        edge_map: host_edges.to_vec(),
    };
    debug_assert!(embedding.verify(host, pattern));
    embedding
}

/// Edge indices meeting edge `e`, ascending, excluding `e` itself.
fn edges_meeting<H: Host + ?Sized>(h: &H, e: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &v in h.edge_verts(e) {
        out.extend(h.edges_at(v).iter().copied().filter(|&f| f != e));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// S_k^r sits at any vertex of degree at least k: k edges through one vertex
/// of a linear host pairwise meet only there.
pub fn contains_star<H: Host + ?Sized>(h: &H, k: usize) -> Option<Embedding> {
    assert!(k >= 1);
    for v in 0..h.n() {
        if h.degree(v) >= k {
            let host_edges: Vec<usize> = h.edges_at(v)[..k].to_vec();
            let pattern = Pattern::star(k, h.r());
            return Some(fill_embedding(h, &pattern, &host_edges, &[(0, v)]));
        }
    }
    None
}

fn extend_path<H: Host + ?Sized>(h: &H, seq: &mut Vec<usize>, k: usize) -> bool {
    if seq.len() == k {
        return true;
    }
    let last = *seq.last().unwrap();
    for f in edges_meeting(h, last) {
        if seq.contains(&f) {
            continue;
        }
        // Consecutive edges meet (in one vertex, by linearity); all other
        // pairs must be disjoint. Distinctness of the link vertices follows.
        if seq[..seq.len() - 1]
            .iter()
            .all(|&g| h.edges_disjoint(f, g))
        {
            seq.push(f);
            if extend_path(h, seq, k) {
                return true;
            }
            seq.pop();
        }
    }
    false
}

/// P_k^r: edges e_1..e_k, consecutive pairs sharing one vertex, all other
/// pairs disjoint. Supported for 2 <= k <= 4.
pub fn contains_path<H: Host + ?Sized>(
    h: &H,
    k: usize,
) -> Result<Option<Embedding>, PatternError> {
    if !(2..=4).contains(&k) {
        return Err(PatternError::UnsupportedK { k });
    }
    for e1 in 0..h.edge_count() {
        let mut seq = vec![e1];
        if extend_path(h, &mut seq, k) {
            let pattern = Pattern::path(k, h.r());
            let pins: Vec<(usize, usize)> = (1..k)
                .map(|i| (i, h.shared_vertex(seq[i - 1], seq[i]).unwrap()))
                .collect();
            return Ok(Some(fill_embedding(h, &pattern, &seq, &pins)));
        }
    }
    Ok(None)
}

/// B_4^r: three edges through a common vertex v plus an edge f attached to
/// one of them at a vertex other than v, with f avoiding v and the other two
/// star edges entirely.
pub fn contains_b4<H: Host + ?Sized>(h: &H) -> Option<Embedding> {
    assert!(h.r() >= 3);
    for v in 0..h.n() {
        let at_v = h.edges_at(v);
        if at_v.len() < 3 {
            continue;
        }
        for &e1 in at_v {
            for &u in h.edge_verts(e1) {
                if u == v {
                    continue;
                }
                for &f in h.edges_at(u) {
                    if f == e1 || h.edge_verts(f).contains(&v) {
                        continue;
                    }
                    let mut rest = at_v
                        .iter()
                        .copied()
                        .filter(|&g| g != e1 && h.edges_disjoint(g, f));
                    if let (Some(e2), Some(e3)) = (rest.next(), rest.next()) {
                        let pattern = Pattern::broom4(h.r());
                        // Canonical pattern edges: the attachment star edge,
                        // the two plain star edges, then the hanging edge.
                        let host_edges = vec![e1, e2, e3, f];
                        let pins = vec![(0, v), (1, u)];
                        return Some(fill_embedding(h, &pattern, &host_edges, &pins));
                    }
                }
            }
        }
    }
    None
}

fn crown_embedding<H: Host + ?Sized>(
    h: &H,
    base: usize,
    mut legs: [usize; 3],
) -> Embedding {
    legs.sort_unstable();
    let pattern = crown(h.r());
    let host_edges = vec![base, legs[0], legs[1], legs[2]];
    let pins: Vec<(usize, usize)> = legs
        .iter()
        .enumerate()
        .map(|(i, &f)| (i, h.shared_vertex(base, f).expect("leg meets base")))
        .collect();
    fill_embedding(h, &pattern, &host_edges, &pins)
}

/// E_4^r: a base edge met by three pairwise disjoint edges. By linearity each
/// meets the base in one vertex, and disjointness makes those three distinct.
pub fn contains_crown<H: Host + ?Sized>(h: &H) -> Option<Embedding> {
    assert!(h.r() >= 3);
    (0..h.edge_count()).find_map(|base| crown_on_base(h, base))
}

fn crown_on_base<H: Host + ?Sized>(h: &H, base: usize) -> Option<Embedding> {
    let meet = edges_meeting(h, base);
    for (i, &f) in meet.iter().enumerate() {
        for (j, &g) in meet.iter().enumerate().skip(i + 1) {
            if !h.edges_disjoint(f, g) {
                continue;
            }
            for &x in &meet[j + 1..] {
                if h.edges_disjoint(f, x) && h.edges_disjoint(g, x) {
                    return Some(crown_embedding(h, base, [f, g, x]));
                }
            }
        }
    }
    None
}

/// Crown found with a prescribed base, tagged with which branch produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrownSearch {
    pub embedding: Embedding,
    /// True when the three-step degree-guided construction succeeded without
    /// any search; false when the exhaustive fallback was needed.
    pub greedy: bool,
}

/// Finds a crown with base `e` if one exists. First tries the constructive
/// route: order the base vertices by degree, call the top three a, b, c; if
/// d(a) >= 2r, d(b) >= r+1, d(c) >= 2, then picking any f at c, then g at b
/// avoiding f (at most r-1 edges at b other than e meet f), then x at a
/// avoiding both (at most 2(r-1) blocked) cannot fail. Otherwise falls back
/// to exhaustive search over triples restricted to this base.
pub fn find_crown_with_base<H: Host + ?Sized>(
    h: &H,
    e: usize,
) -> Result<Option<CrownSearch>, PatternError> {
    assert!(h.r() >= 3);
    if e >= h.edge_count() {
        return Err(PatternError::EdgeNotInHost { edge: e });
    }
    let r = h.r();
    let mut by_degree: Vec<usize> = h.edge_verts(e).to_vec();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let (a, b, c) = (by_degree[0], by_degree[1], by_degree[2]);
    if h.degree(a) >= 2 * r && h.degree(b) >= r + 1 && h.degree(c) >= 2 {
        let f = h.edges_at(c).iter().copied().find(|&f| f != e);
        let g = f.and_then(|f| {
            h.edges_at(b)
                .iter()
                .copied()
                .find(|&g| g != e && h.edges_disjoint(g, f))
        });
        let x = match (f, g) {
            (Some(f), Some(g)) => h
                .edges_at(a)
                .iter()
                .copied()
                .find(|&x| x != e && h.edges_disjoint(x, f) && h.edges_disjoint(x, g)),
            _ => None,
        };
        if let (Some(f), Some(g), Some(x)) = (f, g, x) {
            return Ok(Some(CrownSearch {
                embedding: crown_embedding(h, e, [f, g, x]),
                greedy: true,
            }));
        }
        debug_assert!(false, "degree-guided crown construction cannot fail");
    }
    Ok(crown_on_base(h, e).map(|embedding| CrownSearch {
        embedding,
        greedy: false,
    }))
}

struct GenericSearch<'a, H: Host + ?Sized> {
    host: &'a H,
    pattern: &'a LinearHypergraph,
    vmap: Vec<usize>,
    vused: Vec<bool>,
    eused: Vec<bool>,
    emap: Vec<usize>,
}

impl<'a, H: Host + ?Sized> GenericSearch<'a, H> {
    fn place_edge(&mut self, pe: usize) -> bool {
        if pe == self.pattern.edge_count() {
            return true;
        }
        for he in 0..self.host.edge_count() {
            if self.eused[he] {
                continue;
            }
            let hverts = self.host.edge_verts(he);
            let pverts = self.pattern.edge(pe);
            // Mapped pattern vertices of this edge must land inside he, and
            // every already-used host vertex of he must be one of their
            // images; otherwise injectivity would be violated.
            let ok = pverts
                .iter()
                .all(|&pv| self.vmap[pv] == usize::MAX || hverts.contains(&self.vmap[pv]))
                && hverts.iter().all(|&hv| {
                    !self.vused[hv]
                        || pverts.iter().any(|&pv| self.vmap[pv] == hv)
                });
            if !ok {
                continue;
            }
            self.eused[he] = true;
            self.emap[pe] = he;
            let unmapped: Vec<usize> = pverts
                .iter()
                .copied()
                .filter(|&pv| self.vmap[pv] == usize::MAX)
                .collect();
            if self.assign(pe, he, &unmapped, 0) {
                return true;
            }
            self.eused[he] = false;
            self.emap[pe] = usize::MAX;
        }
        false
    }

    /// Branches over all injections of the edge's unmapped pattern vertices
    /// into the unused host vertices of he. The choice matters: an unmapped
    /// vertex may recur in later pattern edges.
    fn assign(&mut self, pe: usize, he: usize, unmapped: &[usize], i: usize) -> bool {
        if i == unmapped.len() {
            return self.place_edge(pe + 1);
        }
        let pv = unmapped[i];
        let hverts: Vec<usize> = self.host.edge_verts(he).to_vec();
        for hv in hverts {
            if self.vused[hv] {
                continue;
            }
            self.vmap[pv] = hv;
            self.vused[hv] = true;
            if self.assign(pe, he, unmapped, i + 1) {
                return true;
            }
            self.vused[hv] = false;
            self.vmap[pv] = usize::MAX;
        }
        false
    }
}

/// Backtracking embedder for arbitrary patterns; the oracle the specialized
/// detectors are checked against. First embedding in canonical scan order.
pub fn contains_pattern_generic<H: Host + ?Sized>(h: &H, p: &Pattern) -> Option<Embedding> {
    assert_eq!(h.r(), p.r, "host and pattern uniformity must match");
    if p.hypergraph.n() > h.n() || p.hypergraph.edge_count() > h.edge_count() {
        return None;
    }
    let mut search = GenericSearch {
        host: h,
        pattern: &p.hypergraph,
        vmap: vec![usize::MAX; p.hypergraph.n()],
        vused: vec![false; h.n()],
        eused: vec![false; h.edge_count()],
        emap: vec![usize::MAX; p.hypergraph.edge_count()],
    };
    if search.place_edge(0) {
        let embedding = Embedding {
            vertex_map: search.vmap,
            edge_map: search.emap,
        };
        debug_assert!(embedding.verify(h, p));
        Some(embedding)
    } else {
        None
    }
}

// Required-edge checks: given that the host was pattern-free before `e` was
// added, the host contains the pattern iff it contains a copy using `e`.
// These run inside the search hot loop, so they return plain booleans.

/// Some vertex of `e` has degree at least k.
pub fn star_using<H: Host + ?Sized>(h: &H, k: usize, e: usize) -> bool {
    h.edge_verts(e).iter().any(|&v| h.degree(v) >= k)
}

fn grow_path<H: Host + ?Sized>(
    h: &H,
    seq: &mut VecDeque<usize>,
    left: usize,
    right: usize,
) -> bool {
    if left == 0 && right == 0 {
        return true;
    }
    if left > 0 {
        let front = *seq.front().unwrap();
        for f in edges_meeting(h, front) {
            if seq.contains(&f) {
                continue;
            }
            if seq.iter().skip(1).all(|&g| h.edges_disjoint(f, g)) {
                seq.push_front(f);
                if grow_path(h, seq, left - 1, right) {
                    return true;
                }
                seq.pop_front();
            }
        }
    } else {
        let back = *seq.back().unwrap();
        let len = seq.len();
        for f in edges_meeting(h, back) {
            if seq.contains(&f) {
                continue;
            }
            if seq.iter().take(len - 1).all(|&g| h.edges_disjoint(f, g)) {
                seq.push_back(f);
                if grow_path(h, seq, 0, right - 1) {
                    return true;
                }
                seq.pop_back();
            }
        }
    }
    false
}

/// Some P_k^r goes through edge `e`.
pub fn path_using<H: Host + ?Sized>(h: &H, k: usize, e: usize) -> bool {
    assert!((2..=4).contains(&k));
    let mut seq = VecDeque::with_capacity(k);
    seq.push_back(e);
    for left in 0..k {
        if grow_path(h, &mut seq, left, k - 1 - left) {
            return true;
        }
        debug_assert_eq!(seq.len(), 1);
    }
    false
}

/// Some B_4^r uses edge `e`, in any of its roles.
pub fn b4_using<H: Host + ?Sized>(h: &H, e: usize) -> bool {
    // Role 1: e is the hanging edge f.
    for &u in h.edge_verts(e) {
        for &e1 in h.edges_at(u) {
            if e1 == e {
                continue;
            }
            for &v in h.edge_verts(e1) {
                if v == u || h.edge_verts(e).contains(&v) {
                    continue;
                }
                let free = h
                    .edges_at(v)
                    .iter()
                    .filter(|&&g| g != e1 && h.edges_disjoint(g, e))
                    .count();
                if free >= 2 {
                    return true;
                }
            }
        }
    }
    // Role 2: e is the star edge carrying the attachment.
    for &v in h.edge_verts(e) {
        for &u in h.edge_verts(e) {
            if u == v {
                continue;
            }
            for &f in h.edges_at(u) {
                if f == e || h.edge_verts(f).contains(&v) {
                    continue;
                }
                let free = h
                    .edges_at(v)
                    .iter()
                    .filter(|&&g| g != e && h.edges_disjoint(g, f))
                    .count();
                if free >= 2 {
                    return true;
                }
            }
        }
    }
    // Role 3: e is one of the two plain star edges.
    for &v in h.edge_verts(e) {
        for &e1 in h.edges_at(v) {
            if e1 == e {
                continue;
            }
            for &e3 in h.edges_at(v) {
                if e3 == e || e3 == e1 {
                    continue;
                }
                for &u in h.edge_verts(e1) {
                    if u == v {
                        continue;
                    }
                    for &f in h.edges_at(u) {
                        if f != e1
                            && !h.edge_verts(f).contains(&v)
                            && h.edges_disjoint(f, e)
                            && h.edges_disjoint(f, e3)
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Some E_4^r uses edge `e`, as base or as one of the legs.
pub fn crown_using<H: Host + ?Sized>(h: &H, e: usize) -> bool {
    if crown_on_base(h, e).is_some() {
        return true;
    }
    // e as a leg: find a base through a vertex of e and two more legs
    // avoiding e and each other.
    for &u in h.edge_verts(e) {
        for &base in h.edges_at(u) {
            if base == e {
                continue;
            }
            let meet = edges_meeting(h, base);
            let free: Vec<usize> = meet
                .into_iter()
                .filter(|&g| g != e && h.edges_disjoint(g, e))
                .collect();
            for (i, &g) in free.iter().enumerate() {
                if free[i + 1..].iter().any(|&x| h.edges_disjoint(g, x)) {
                    return true;
                }
            }
        }
    }
    false
}
