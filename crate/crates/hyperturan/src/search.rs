//! Exact maximum-size computations by exhaustive branch and bound.
//!
//! The search enumerates linear r-uniform systems on a fixed vertex set as
//! a set-enumeration tree over the lexicographically ordered list of all
//! candidate edges: a node extends its edge set only by candidates that are
//! lex-greater than the last one chosen. Every edge set is therefore
//! visited exactly once, in lex order of its sorted candidate-index list,
//! and the first strict improvement encountered is the lex-least witness
//! of its size. Pruning never uses the formula bounds from `bounds`; only
//! the candidate count and the pair-counting ceiling, both of which hold
//! unconditionally, may cut a branch.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds::{conjectured_p4_ceiling, is_disjoint_steiner_square_union, rational_serde, Statement};
use crate::corpus::all_r_subsets;
use crate::hypergraph::LinearHypergraph;
use crate::patterns::{
    b4_using, contains_b4, contains_crown, contains_path, contains_star, crown_using, path_using,
    star_using, Host,
};

/// Largest vertex count the search accepts; C(24,5) candidate edges is
/// already past what exhaustive enumeration can finish, so refusing larger
/// inputs loudly beats silently running forever.
pub const SEARCH_CAP_N: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("n = {n} exceeds the search cap of {cap} vertices")]
    CapExceeded { n: usize, cap: usize },
    #[error("uniformity must be at least 2, got r = {r}")]
    UniformityTooSmall { r: usize },
    #[error("forbidden pattern {pattern} is not supported: {reason}")]
    UnsupportedPattern { pattern: String, reason: String },
}

/// A forbidden configuration the search must avoid. Paths are supported
/// for 2 <= k <= 4, stars for any k >= 1; the broom and the crown need
/// uniformity at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Forbidden {
    Path(usize),
    Star(usize),
    Broom4,
    Crown4,
}

impl Forbidden {
    fn validate(self, r: usize) -> Result<(), SearchError> {
        let unsupported = |reason: &str| SearchError::UnsupportedPattern {
            pattern: self.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Forbidden::Path(k) if !(2..=4).contains(&k) => {
                Err(unsupported("paths are detected for 2 <= k <= 4 only"))
            }
            Forbidden::Star(0) => Err(unsupported("a star needs at least one edge")),
            Forbidden::Broom4 | Forbidden::Crown4 if r < 3 => {
                Err(unsupported("requires uniformity at least 3"))
            }
            _ => Ok(()),
        }
    }

    /// Full-host detection.
    fn present<H: Host>(self, h: &H) -> bool {
        match self {
            Forbidden::Path(k) => contains_path(h, k).expect("k validated").is_some(),
            Forbidden::Star(k) => contains_star(h, k).is_some(),
            Forbidden::Broom4 => contains_b4(h).is_some(),
            Forbidden::Crown4 => contains_crown(h).is_some(),
        }
    }

    /// Detection restricted to copies through edge `e`; sound as a full
    /// check whenever the host without `e` is already pattern-free.
    fn present_using<H: Host>(self, h: &H, e: usize) -> bool {
        match self {
            Forbidden::Path(k) => path_using(h, k, e),
            Forbidden::Star(k) => star_using(h, k, e),
            Forbidden::Broom4 => b4_using(h, e),
            Forbidden::Crown4 => crown_using(h, e),
        }
    }
}

impl fmt::Display for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forbidden::Path(k) => write!(f, "p{k}"),
            Forbidden::Star(k) => write!(f, "s:{k}"),
            Forbidden::Broom4 => write!(f, "b4"),
            Forbidden::Crown4 => write!(f, "crown"),
        }
    }
}

impl FromStr for Forbidden {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown pattern {s:?}, expected p2|p3|p4|s:k|b4|crown");
        match s {
            "b4" => Ok(Forbidden::Broom4),
            "crown" => Ok(Forbidden::Crown4),
            _ => {
                if let Some(k) = s.strip_prefix('p') {
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if (2..=4).contains(&k) {
                        return Ok(Forbidden::Path(k));
                    }
                    return Err(format!("paths are supported for k in 2..=4, got p{k}"));
                }
                if let Some(k) = s.strip_prefix("s:") {
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Err("a star needs at least one edge".to_string());
                    }
                    return Ok(Forbidden::Star(k));
                }
                Err(bad())
            }
        }
    }
}

impl Serialize for Forbidden {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Forbidden {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of search nodes to expand; exceeding it returns the
    /// best value found so far with `optimal = false`.
    pub node_budget: Option<u64>,
    /// Wall-clock limit, same truncation semantics as the node budget.
    pub time_budget: Option<Duration>,
    /// Reject extensions whose edge set is not lexicographically least in
    /// its relabeling orbit. Sound: prefixes of a lex-least set are
    /// lex-least, so the lex-least witness of every value survives.
    pub symmetry: bool,
    /// Depth up to which the (comparatively expensive) canonicity check
    /// runs; deeper nodes are extended unconditionally.
    pub symmetry_depth: usize,
    /// Detect forbidden patterns only through the newly added edge rather
    /// than rescanning the whole frontier. Equivalent by induction: the
    /// frontier below was already pattern-free.
    pub incremental_detection: bool,
    /// Worker count for splitting the first branching level. Results are
    /// independent of the count when no budget is hit; node budgets are
    /// split into fixed per-worker quotas.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: None,
            time_budget: None,
            symmetry: true,
            symmetry_depth: 3,
            incremental_detection: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub value: usize,
    pub witness: LinearHypergraph,
    /// True iff the search space was exhausted (or the unconditional pair
    /// ceiling was attained); false means a budget truncated the run.
    pub optimal: bool,
    pub nodes: u64,
    /// Wall-clock seconds; excluded from reproducibility comparisons.
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeStatus {
    Optimal,
    Inconclusive,
}

/// Outcome of a conjecture probe: the exact (or truncated) search value
/// next to the conjectured ceiling. `consistent` reports a comparison,
/// never a proof; a truncated run is flagged inconclusive.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub search: SearchResult,
    pub statement: Statement,
    #[serde(with = "rational_serde")]
    pub ceiling: Ratio<i64>,
    pub consistent: bool,
    pub status: ProbeStatus,
    /// When the optimal value meets the ceiling exactly and r² | n: does
    /// the lex-least witness decompose into Steiner systems on r² points?
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape_verified: Option<bool>,
}

/// Unconditional ceiling ⌊C(n,2)/C(r,2)⌋ from counting vertex pairs.
fn pair_ceiling(n: usize, r: usize) -> usize {
    (n * n.saturating_sub(1)) / (r * (r - 1))
}

/// The partial system at a search node. Edges are indices into the shared
/// candidate list; `chosen` is strictly increasing, so the edge list is
/// automatically in lex order.
struct Frontier<'a> {
    n: usize,
    r: usize,
    candidates: &'a [Vec<usize>],
    cand_bits: &'a [VertexSet],
    chosen: Vec<usize>,
    incidence: Vec<Vec<usize>>,
    pair_used: Vec<bool>,
}

impl<'a> Frontier<'a> {
    fn new(n: usize, r: usize, candidates: &'a [Vec<usize>], cand_bits: &'a [VertexSet]) -> Self {
        Frontier {
            n,
            r,
            candidates,
            cand_bits,
            chosen: Vec::new(),
            incidence: vec![Vec::new(); n],
            pair_used: vec![false; n * n],
        }
    }

    fn pairs_free(&self, cand: usize) -> bool {
        let verts = &self.candidates[cand];
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if self.pair_used[u * self.n + v] {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, cand: usize) {
        let pos = self.chosen.len();
        self.chosen.push(cand);
        let verts = &self.candidates[cand];
        for (i, &u) in verts.iter().enumerate() {
            self.incidence[u].push(pos);
            for &v in &verts[i + 1..] {
                self.pair_used[u * self.n + v] = true;
                self.pair_used[v * self.n + u] = true;
            }
        }
    }

    fn pop(&mut self) {
        let cand = self.chosen.pop().expect("pop on empty frontier");
        let verts = &self.candidates[cand];
        for (i, &u) in verts.iter().enumerate() {
            self.incidence[u].pop();
            for &v in &verts[i + 1..] {
                self.pair_used[u * self.n + v] = false;
                self.pair_used[v * self.n + u] = false;
            }
        }
    }

    fn edge_views(&self) -> Vec<&[usize]> {
        self.chosen
            .iter()
            .map(|&c| self.candidates[c].as_slice())
            .collect()
    }
}

impl Host for Frontier<'_> {
    fn n(&self) -> usize {
        self.n
    }

    fn r(&self) -> usize {
        self.r
    }

    fn edge_count(&self) -> usize {
        self.chosen.len()
    }

    fn edge_verts(&self, e: usize) -> &[usize] {
        &self.candidates[self.chosen[e]]
    }

    fn edges_at(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    fn shared_vertex(&self, e: usize, f: usize) -> Option<usize> {
        self.cand_bits[self.chosen[e]].first_common(&self.cand_bits[self.chosen[f]])
    }

    fn edges_disjoint(&self, e: usize, f: usize) -> bool {
        self.cand_bits[self.chosen[e]].is_disjoint(&self.cand_bits[self.chosen[f]])
    }
}

/// One strict improvement: the first-level branch it happened under, the
/// value reached, and the chosen candidate indices.
struct Improvement {
    branch: usize,
    value: usize,
    chosen: Vec<usize>,
}

struct Searcher<'a> {
    cfg: &'a SearchConfig,
    forbidden: &'a [Forbidden],
    frontier: Frontier<'a>,
    best: usize,
    improvements: Vec<Improvement>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    ceiling: usize,
    branch: usize,
    truncated: bool,
    complete: bool,
}

impl<'a> Searcher<'a> {
    fn new(
        cfg: &'a SearchConfig,
        forbidden: &'a [Forbidden],
        frontier: Frontier<'a>,
        node_budget: u64,
        deadline: Option<Instant>,
        ceiling: usize,
    ) -> Self {
        Searcher {
            cfg,
            forbidden,
            frontier,
            best: 0,
            improvements: Vec::new(),
            nodes: 0,
            node_budget,
            deadline,
            ceiling,
            branch: 0,
            truncated: false,
            complete: false,
        }
    }

    fn created_forbidden(&self) -> bool {
        let newest = self.frontier.chosen.len() - 1;
        if self.cfg.incremental_detection {
            self.forbidden
                .iter()
                .any(|f| f.present_using(&self.frontier, newest))
        } else {
            self.forbidden.iter().any(|f| f.present(&self.frontier))
        }
    }

    /// Expands the node for candidate `cand` (pairs already checked) and
    /// recurses. Returns without descending on budget exhaustion.
    fn expand(&mut self, cand: usize, depth: usize) {
        self.frontier.push(cand);
        self.nodes += 1;
        if self.nodes >= self.node_budget {
            self.truncated = true;
        } else if self.nodes & 0xFFF == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.truncated = true;
                }
            }
        }
        if self.truncated {
            self.frontier.pop();
            return;
        }
        let keep = !self.created_forbidden()
            && (!self.cfg.symmetry
                || depth >= self.cfg.symmetry_depth
                || is_lex_min(&self.frontier.edge_views(), self.frontier.n));
        if keep {
            if self.frontier.chosen.len() > self.best {
                self.best = self.frontier.chosen.len();
                self.improvements.push(Improvement {
                    branch: self.branch,
                    value: self.best,
                    chosen: self.frontier.chosen.clone(),
                });
                if self.best >= self.ceiling {
                    self.complete = true;
                    self.frontier.pop();
                    return;
                }
            }
            self.dfs(cand + 1, depth + 1);
        }
        self.frontier.pop();
    }

    fn dfs(&mut self, start: usize, depth: usize) {
        let total = self.frontier.candidates.len();
        for cand in start..total {
            if self.truncated || self.complete {
                return;
            }
            // Even taking every remaining candidate cannot beat the best.
            if self.frontier.chosen.len() + (total - cand) <= self.best {
                return;
            }
            if self.frontier.pairs_free(cand) {
                self.expand(cand, depth);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lex-least canonicity. An edge set S (a sorted list of sorted r-sets) is
// canonical iff no vertex relabeling π of 0..n produces a lex-smaller
// sorted list π(S). Every prefix of a canonical set is canonical: the j
// smallest images under π of a superset are elementwise at most the j
// smallest images of the subset, so a relabeling shrinking a prefix
// shrinks the whole set. Rejecting non-canonical prefixes therefore keeps
// exactly the lex-least representative of every isomorphism class.

/// Does some relabeling send `edges` to a strictly lex-smaller list? The
/// search builds the image list one edge at a time: at list position `pos`
/// either some unused source edge maps strictly below edges[pos] (any
/// completion of π then wins), or a source edge maps exactly onto it and
/// the next position is examined.
fn exists_smaller_image(
    edges: &[&[usize]],
    n: usize,
    pos: usize,
    edge_used: &mut [bool],
    pi: &mut [usize],
    target_used: &mut [bool],
) -> bool {
    if pos == edges.len() {
        return false;
    }
    let target = edges[pos];
    for ei in 0..edges.len() {
        if edge_used[ei] {
            continue;
        }
        let source = edges[ei];
        if can_map_below(source, target, n, pi, target_used) {
            return true;
        }
        for assignment in onto_assignments(source, target, pi, target_used) {
            for &(s, t) in &assignment {
                pi[s] = t;
                target_used[t] = true;
            }
            edge_used[ei] = true;
            let found = exists_smaller_image(edges, n, pos + 1, edge_used, pi, target_used);
            edge_used[ei] = false;
            for &(s, t) in &assignment {
                pi[s] = usize::MAX;
                target_used[t] = false;
            }
            if found {
                return true;
            }
        }
    }
    false
}

/// Can `source` map onto some sorted image strictly lex-below `target`,
/// consistently with the partial relabeling? Walks the image positions in
/// ascending value order, keeping a "still equal to target" flag; once the
/// image is strictly below at some position, any arrangement of the
/// remaining values works, so feasibility reduces to counting.
fn can_map_below(
    source: &[usize],
    target: &[usize],
    n: usize,
    pi: &[usize],
    target_used: &[bool],
) -> bool {
    let forced: Vec<usize> = {
        let mut f: Vec<usize> = source
            .iter()
            .filter(|&&v| pi[v] != usize::MAX)
            .map(|&v| pi[v])
            .collect();
        f.sort_unstable();
        f
    };
    let free_slots = source.len() - forced.len();

    // Remaining forced values all exceed `from` by construction; the free
    // slots just need enough unused values at or above `from`.
    let loose_ok = |fi: usize, free_left: usize, from: usize| -> bool {
        let mut avail = 0;
        for v in from..n {
            if !target_used[v] && !forced[fi..].contains(&v) {
                avail += 1;
                if avail >= free_left {
                    return true;
                }
            }
        }
        free_left == 0
    };

    fn tight(
        target: &[usize],
        forced: &[usize],
        target_used: &[bool],
        loose_ok: &dyn Fn(usize, usize, usize) -> bool,
        j: usize,
        fi: usize,
        free_left: usize,
        from: usize,
    ) -> bool {
        if j == target.len() {
            // Every position matched target exactly: equality, not below.
            return false;
        }
        for v in from..=target[j] {
            if fi < forced.len() && v > forced[fi] {
                // A pending forced value was skipped; no ascending image
                // can place it any more.
                return false;
            }
            if fi < forced.len() && v == forced[fi] {
                if v < target[j] {
                    return loose_ok(fi + 1, free_left, v + 1);
                }
                return tight(target, forced, target_used, loose_ok, j + 1, fi + 1, free_left, v + 1);
            }
            if free_left > 0 && !target_used[v] {
                if v < target[j] {
                    if loose_ok(fi, free_left - 1, v + 1) {
                        return true;
                    }
                } else if tight(target, forced, target_used, loose_ok, j + 1, fi, free_left - 1, v + 1) {
                    return true;
                }
            }
        }
        false
    }

    tight(target, &forced, target_used, &loose_ok, 0, 0, free_slots, 0)
}

/// All extensions of the partial relabeling mapping `source` setwise onto
/// exactly `target`, as (source vertex, image) pairs for the previously
/// unmapped vertices.
fn onto_assignments(
    source: &[usize],
    target: &[usize],
    pi: &[usize],
    target_used: &[bool],
) -> Vec<Vec<(usize, usize)>> {
    let mut unmapped = Vec::new();
    for &v in source {
        if pi[v] == usize::MAX {
            unmapped.push(v);
        } else if !target.contains(&pi[v]) {
            return Vec::new();
        }
    }
    let open: Vec<usize> = target
        .iter()
        .copied()
        .filter(|&t| !source.iter().any(|&v| pi[v] == t))
        .collect();
    if open.len() != unmapped.len() || open.iter().any(|&t| target_used[t]) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut taken = vec![false; open.len()];
    let mut current = Vec::with_capacity(open.len());
    fn rec(
        unmapped: &[usize],
        open: &[usize],
        taken: &mut [bool],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if current.len() == unmapped.len() {
            out.push(current.clone());
            return;
        }
        let v = unmapped[current.len()];
        for (i, &t) in open.iter().enumerate() {
            if !taken[i] {
                taken[i] = true;
                current.push((v, t));
                rec(unmapped, open, taken, current, out);
                current.pop();
                taken[i] = false;
            }
        }
    }
    rec(&unmapped, &open, &mut taken, &mut current, &mut out);
    out
}

/// True iff no vertex relabeling sends the edge list to a lex-smaller one.
fn is_lex_min(edges: &[&[usize]], n: usize) -> bool {
    debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
    let mut edge_used = vec![false; edges.len()];
    let mut pi = vec![usize::MAX; n];
    let mut target_used = vec![false; n];
    !exists_smaller_image(edges, n, 0, &mut edge_used, &mut pi, &mut target_used)
}

// ---------------------------------------------------------------------------

fn merge_improvements(improvements: &[Improvement]) -> (usize, Vec<usize>) {
    let mut value = 0;
    let mut branch = usize::MAX;
    let mut chosen: &[usize] = &[];
    for imp in improvements {
        if imp.value > value || (imp.value == value && imp.branch < branch) {
            value = imp.value;
            branch = imp.branch;
            chosen = &imp.chosen;
        }
    }
    (value, chosen.to_vec())
}

/// Maximum number of edges in a linear r-uniform system on n labeled
/// vertices containing none of the forbidden configurations. The witness
/// is the lex-least maximum system; `optimal` is false iff a budget
/// truncated the enumeration, in which case value and witness are the best
/// found so far (still sound as a lower bound).
pub fn exact_linear_turan(
    n: usize,
    r: usize,
    forbidden: &[Forbidden],
    cfg: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    if r < 2 {
        return Err(SearchError::UniformityTooSmall { r });
    }
    if n > SEARCH_CAP_N {
        return Err(SearchError::CapExceeded { n, cap: SEARCH_CAP_N });
    }
    for f in forbidden {
        f.validate(r)?;
    }
    let started = Instant::now();
    let candidates = if n >= r { all_r_subsets(n, r) } else { Vec::new() };
    let cand_bits: Vec<VertexSet> = candidates
        .iter()
        .map(|e| VertexSet::from_iter(n, e.iter().copied()))
        .collect();
    let deadline = cfg.time_budget.map(|b| started + b);
    let ceiling = if r <= n { pair_ceiling(n, r).max(1) } else { 1 };
    let threads = cfg.threads.max(1).min(candidates.len().max(1));

    let (value, chosen, nodes, truncated) = if threads == 1 {
        let frontier = Frontier::new(n, r, &candidates, &cand_bits);
        let mut searcher = Searcher::new(
            cfg,
            forbidden,
            frontier,
            cfg.node_budget.unwrap_or(u64::MAX),
            deadline,
            ceiling,
        );
        searcher.dfs(0, 0);
        let (value, chosen) = merge_improvements(&searcher.improvements);
        (value, chosen, searcher.nodes, searcher.truncated)
    } else {
        search_parallel(n, r, forbidden, cfg, &candidates, &cand_bits, deadline, ceiling, threads)
    };

    let edges: Vec<Vec<usize>> = chosen.iter().map(|&c| candidates[c].clone()).collect();
    let witness =
        LinearHypergraph::validate(n, r, &edges).expect("search frontier stays linear");
    for f in forbidden {
        assert!(!f.present(&witness), "witness contains forbidden {f}");
    }
    Ok(SearchResult {
        value,
        witness,
        optimal: !truncated,
        nodes,
        elapsed: started.elapsed().as_secs_f64(),
    })
}

/// First-level split: worker w owns the branches whose first candidate
/// index is congruent to w, explores them in order with a private best and
/// a fixed share of the node budget, and records every improvement with
/// its branch. The preorder merge keeps the earliest branch on ties, so
/// value and witness match the sequential run whenever no budget bites.
#[allow(clippy::too_many_arguments)]
fn search_parallel(
    n: usize,
    r: usize,
    forbidden: &[Forbidden],
    cfg: &SearchConfig,
    candidates: &[Vec<usize>],
    cand_bits: &[VertexSet],
    deadline: Option<Instant>,
    ceiling: usize,
    threads: usize,
) -> (usize, Vec<usize>, u64, bool) {
    let quota = |w: usize| -> u64 {
        match cfg.node_budget {
            None => u64::MAX,
            Some(b) => b / threads as u64 + u64::from((w as u64) < b % threads as u64),
        }
    };
    let outcomes: Vec<(Vec<Improvement>, u64, bool)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let node_quota = quota(w);
                scope.spawn(move || {
                    let frontier = Frontier::new(n, r, candidates, cand_bits);
                    let mut searcher =
                        Searcher::new(cfg, forbidden, frontier, node_quota, deadline, ceiling);
                    let total = candidates.len();
                    for first in (w..total).step_by(threads) {
                        if searcher.truncated || searcher.complete {
                            break;
                        }
                        if total - first <= searcher.best {
                            break;
                        }
                        searcher.branch = first;
                        searcher.expand(first, 0);
                        debug_assert!(searcher.frontier.chosen.is_empty());
                    }
                    (searcher.improvements, searcher.nodes, searcher.truncated)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut improvements = Vec::new();
    let mut nodes = 0;
    let mut truncated = false;
    for (imps, worker_nodes, worker_truncated) in outcomes {
        improvements.extend(imps);
        nodes += worker_nodes;
        truncated |= worker_truncated;
    }
    let (value, chosen) = merge_improvements(&improvements);
    (value, chosen, nodes, truncated)
}

/// Maximum size of a linear r-uniform system on n vertices, no forbidden
/// configurations at all. Attains the pair ceiling exactly when a Steiner
/// system S(2,r,n) exists.
pub fn max_linear_system(n: usize, r: usize, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    exact_linear_turan(n, r, &[], cfg)
}

/// Runs the path-of-four search and compares the outcome against the
/// conjectured ceiling (r+1)n/r. Reports consistency of the data point,
/// never a proof; budget truncation downgrades the status to inconclusive.
pub fn conjecture_probe(n: usize, r: usize, cfg: &SearchConfig) -> Result<ProbeResult, SearchError> {
    assert!(r >= 3, "the path-of-four ceiling concerns r >= 3");
    let search = exact_linear_turan(n, r, &[Forbidden::Path(4)], cfg)?;
    let ceiling = conjectured_p4_ceiling(n, r);
    let value = Ratio::from_integer(search.value as i64);
    let consistent = value <= ceiling;
    let status = if search.optimal {
        ProbeStatus::Optimal
    } else {
        ProbeStatus::Inconclusive
    };
    let shape_verified = if search.optimal && n % (r * r) == 0 && value == ceiling {
        Some(is_disjoint_steiner_square_union(&search.witness))
    } else {
        None
    };
    Ok(ProbeResult {
        search,
        statement: Statement::PathFourConjecture,
        ceiling,
        consistent,
        status,
        shape_verified,
    })
}

/// Breadth-first reference enumerator for tiny instances: every linear
/// system, no ordering tricks, full-host detection only. Test oracle.
#[cfg(test)]
fn brute_force_value(n: usize, r: usize, forbidden: &[Forbidden]) -> usize {
    use std::collections::VecDeque;

    let candidates = all_r_subsets(n, r);
    let mut best = 0;
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    queue.push_back(Vec::new());
    while let Some(chosen) = queue.pop_front() {
        best = best.max(chosen.len());
        let start = chosen.last().map_or(0, |&c| c + 1);
        for cand in start..candidates.len() {
            let mut next = chosen.clone();
            next.push(cand);
            let edges: Vec<Vec<usize>> = next.iter().map(|&c| candidates[c].clone()).collect();
            let Ok(h) = LinearHypergraph::validate(n, r, &edges) else {
                continue;
            };
            if forbidden.iter().any(|f| f.present(&h)) {
                continue;
            }
            queue.push_back(next);
        }
    }
    best
}
