//! Bound formulas, lower-bound witness constructions, the extremal
//! certificate for broom-free systems, and edge-weight diagnostics.
//!
//! Values are reported as exact rationals with the integer floor alongside;
//! no silent rounding. Lower-bound constructions return the witness itself
//! and re-check its pattern-freeness before reporting, failing loudly if the
//! witness is ever wrong.

use crate::designs::{self, DesignStatus};
use crate::hypergraph::LinearHypergraph;
use crate::patterns::{
    contains_b4, contains_path, contains_pattern_generic, contains_star, Embedding, Pattern,
};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Serializes a rational as the string "p/q" (denominator always present).
pub mod rational_serde {
    use num_rational::Ratio;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let text = String::deserialize(d)?;
        let (p, q) = text
            .split_once('/')
            .ok_or_else(|| D::Error::custom("expected \"p/q\""))?;
        let p: i64 = p.parse().map_err(D::Error::custom)?;
        let q: i64 = q.parse().map_err(D::Error::custom)?;
        if q == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(p, q))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("unsupported bound kind: {0}")]
    UnsupportedKind(String),
    #[error("{condition}")]
    DivisibilityFailure { condition: String },
    #[error("S(2,{r},{t}) is {status}; cannot build the witness")]
    DesignUnavailable { r: usize, t: usize, status: String },
}

/// Which established result a report instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// Star-free systems have bounded degree: at most n(k-1)/r edges.
    StarUpper,
    /// Disjoint Steiner systems on groups of (r-1)(k-1)+1 vertices give
    /// n(k-1)/r edges with no k-edge tree expansion.
    TreeLower,
    /// Broom-free systems have at most (r+1)n/r edges.
    BroomUpper,
    /// Crown-free systems have at most (2r-1)n/r edges.
    CrownUpper,
    /// Disjoint copies of S(2,r,r²) give (r+1)n/r edges with no 4-edge path.
    PathFourLower,
    /// Two-edge-path-free means a matching: exactly floor(n/r) edges.
    PathTwoExact,
    /// Three-edge-path-free systems have at most n edges.
    PathThreeUpper,
    /// k-edge-path-free systems (k >= 4) have at most (2r-3)kn/2 edges.
    LongPathUpper,
    /// Linearity alone: at most C(n,2)/C(r,2) edges.
    PairBound,
    /// Conjectured: four-edge-path-free systems have at most (r+1)n/r edges.
    PathFourConjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lower,
    Upper,
    Exact,
}

/// A divisibility or existence condition a report relies on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub description: String,
    pub holds: bool,
}

/// An evaluated bound: exact rational value, its floor, and (for lower
/// bounds) the witness hypergraph achieving it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub statement: Statement,
    pub side: Side,
    #[serde(with = "rational_serde")]
    pub value: Ratio<i64>,
    pub floor: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<LinearHypergraph>,
    pub assumptions: Vec<Assumption>,
}

impl BoundReport {
    fn formula(statement: Statement, side: Side, value: Ratio<i64>) -> BoundReport {
        BoundReport {
            statement,
            side,
            value,
            floor: value.floor().to_integer(),
            witness: None,
            assumptions: Vec::new(),
        }
    }
}

/// Families the `upper_bound` evaluator knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Star,
    Broom4,
    Crown4,
    Path,
    Pair,
}

/// Evaluates the ceiling formula for a forbidden family. `k` is required for
/// Star and Path and rejected elsewhere. Path with k=2 is the exact value,
/// not just an upper bound.
pub fn upper_bound(
    kind: BoundKind,
    n: usize,
    r: usize,
    k: Option<usize>,
) -> Result<BoundReport, BoundError> {
    if r < 3 {
        return Err(BoundError::UnsupportedKind(format!(
            "bound formulas require r >= 3, got r = {r}"
        )));
    }
    let (ni, ri) = (n as i64, r as i64);
    let need_k = matches!(kind, BoundKind::Star | BoundKind::Path);
    if need_k != k.is_some() {
        return Err(BoundError::UnsupportedKind(if need_k {
            format!("{kind:?} requires k")
        } else {
            format!("{kind:?} does not take k")
        }));
    }
    Ok(match kind {
        BoundKind::Star => {
            let k = k.unwrap();
            if k < 1 {
                return Err(BoundError::UnsupportedKind("star requires k >= 1".into()));
            }
            BoundReport::formula(
                Statement::StarUpper,
                Side::Upper,
                Ratio::new(ni * (k as i64 - 1), ri),
            )
        }
        BoundKind::Broom4 => BoundReport::formula(
            Statement::BroomUpper,
            Side::Upper,
            Ratio::new((ri + 1) * ni, ri),
        ),
        BoundKind::Crown4 => BoundReport::formula(
            Statement::CrownUpper,
            Side::Upper,
            Ratio::new((2 * ri - 1) * ni, ri),
        ),
        BoundKind::Path => match k.unwrap() {
            2 => BoundReport::formula(Statement::PathTwoExact, Side::Exact, Ratio::new(ni, ri)),
            3 => BoundReport::formula(
                Statement::PathThreeUpper,
                Side::Upper,
                Ratio::from_integer(ni),
            ),
            k if k >= 4 => BoundReport::formula(
                Statement::LongPathUpper,
                Side::Upper,
                Ratio::new((2 * ri - 3) * (k as i64) * ni, 2),
            ),
            k => {
                return Err(BoundError::UnsupportedKind(format!(
                    "path requires k >= 2, got k = {k}"
                )))
            }
        },
        BoundKind::Pair => BoundReport::formula(
            Statement::PairBound,
            Side::Upper,
            Ratio::new(ni * (ni - 1), ri * (ri - 1)),
        ),
    })
}

/// The conjectured ceiling (r+1)n/r for four-edge-path-free systems. The
/// same value the broom bound proves, but unproved for paths; callers must
/// present it as a conjecture, never as a bound.
pub fn conjectured_p4_ceiling(n: usize, r: usize) -> Ratio<i64> {
    Ratio::new((r as i64 + 1) * n as i64, r as i64)
}

/// `count` vertex-disjoint copies of `base`, copy c shifted by c * base.n().
pub fn disjoint_copies(base: &LinearHypergraph, count: usize) -> LinearHypergraph {
    let t = base.n();
    let mut edges = Vec::with_capacity(base.edge_count() * count);
    for c in 0..count {
        for e in base.edges() {
            edges.push(e.iter().map(|&v| v + c * t).collect());
        }
    }
    LinearHypergraph::validate(t * count, base.r(), &edges)
        .expect("disjoint shifted copies stay linear")
}

fn status_word(status: DesignStatus) -> String {
    match status {
        DesignStatus::Constructible(_) => "constructible".into(),
        DesignStatus::KnownNonexistent => "known not to exist".into(),
        DesignStatus::Unknown => "of unknown existence".into(),
    }
}

/// Witness with n(k-1)/r edges and no k-edge tree expansion: disjoint
/// Steiner systems on groups of t = (r-1)(k-1)+1 vertices. Freeness holds
/// because any k-edge tree expansion spans (r-1)k+1 > t vertices of one
/// component; re-checked by the explicit detectors for k <= 4.
pub fn tree_lower_construction(n: usize, r: usize, k: usize) -> Result<BoundReport, BoundError> {
    assert!(r >= 2 && k >= 1);
    let t = (r - 1) * (k - 1) + 1;
    if n == 0 {
        return Ok(BoundReport {
            statement: Statement::TreeLower,
            side: Side::Lower,
            value: Ratio::from_integer(0),
            floor: 0,
            witness: Some(LinearHypergraph::empty(0, r)),
            assumptions: vec![Assumption {
                description: "n = 0: empty witness".into(),
                holds: true,
            }],
        });
    }
    if n % t != 0 {
        return Err(BoundError::DivisibilityFailure {
            condition: format!("t = (r-1)(k-1)+1 = {t} does not divide n = {n}"),
        });
    }
    let spec = designs::design_spec(r, t);
    if !matches!(spec.status, DesignStatus::Constructible(_)) {
        return Err(BoundError::DesignUnavailable {
            r,
            t,
            status: status_word(spec.status),
        });
    }
    let base = designs::construct_steiner(r, t).expect("status said constructible");
    let witness = disjoint_copies(&base, n / t);

    let parts = witness.components();
    let mut sizes = vec![0usize; parts.count];
    for v in 0..witness.n() {
        sizes[parts.labels[v]] += 1;
    }
    assert!(
        sizes.iter().all(|&s| s < (r - 1) * k + 1),
        "a component is large enough to hold a k-edge tree expansion"
    );
    if (2..=4).contains(&k) {
        assert!(
            contains_star(&witness, k).is_none(),
            "witness contains the k-edge star expansion"
        );
        assert!(
            contains_path(&witness, k).unwrap().is_none(),
            "witness contains the k-edge path expansion"
        );
        if k == 4 {
            let broom_found = if r >= 3 {
                contains_b4(&witness).is_some()
            } else {
                contains_pattern_generic(&witness, &Pattern::broom4(r)).is_some()
            };
            assert!(!broom_found, "witness contains the broom expansion");
        }
    }

    let value = Ratio::new((n * (k - 1)) as i64, r as i64);
    assert_eq!(
        value,
        Ratio::from_integer(witness.edge_count() as i64),
        "witness edge count must equal n(k-1)/r"
    );
    Ok(BoundReport {
        statement: Statement::TreeLower,
        side: Side::Lower,
        value,
        floor: value.to_integer(),
        witness: Some(witness),
        assumptions: vec![
            Assumption {
                description: format!("t = (r-1)(k-1)+1 = {t} divides n = {n}"),
                holds: true,
            },
            Assumption {
                description: format!("S(2,{r},{t}) is constructible"),
                holds: true,
            },
        ],
    })
}

/// Witness with (r+1)n/r edges and no four-edge path: disjoint copies of
/// S(2,r,r²). Freeness re-checked by the path detector.
pub fn p4_lower_construction(n: usize, r: usize) -> Result<BoundReport, BoundError> {
    assert!(r >= 2);
    if n == 0 {
        return Ok(BoundReport {
            statement: Statement::PathFourLower,
            side: Side::Lower,
            value: Ratio::from_integer(0),
            floor: 0,
            witness: Some(LinearHypergraph::empty(0, r)),
            assumptions: vec![Assumption {
                description: "n = 0: empty witness".into(),
                holds: true,
            }],
        });
    }
    let t = r * r;
    if n % t != 0 {
        return Err(BoundError::DivisibilityFailure {
            condition: format!("r² = {t} does not divide n = {n}"),
        });
    }
    let spec = designs::design_spec(r, t);
    if !matches!(spec.status, DesignStatus::Constructible(_)) {
        return Err(BoundError::DesignUnavailable {
            r,
            t,
            status: status_word(spec.status),
        });
    }
    let base = designs::construct_steiner(r, t).expect("status said constructible");
    let witness = disjoint_copies(&base, n / t);
    assert!(
        contains_path(&witness, 4).unwrap().is_none(),
        "witness contains a four-edge path expansion"
    );

    let value = Ratio::new(((r + 1) * n) as i64, r as i64);
    assert_eq!(
        value,
        Ratio::from_integer(witness.edge_count() as i64),
        "witness edge count must equal (r+1)n/r"
    );
    Ok(BoundReport {
        statement: Statement::PathFourLower,
        side: Side::Lower,
        value,
        floor: value.to_integer(),
        witness: Some(witness),
        assumptions: vec![
            Assumption {
                description: format!("r² = {t} divides n = {n}"),
                holds: true,
            },
            Assumption {
                description: format!("S(2,{r},{t}) is constructible"),
                holds: true,
            },
        ],
    })
}

/// First clause of the extremal characterization that `H` violates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum B4ExtremalFailure {
    ContainsBroom {
        embedding: Embedding,
    },
    EdgeCount {
        found: usize,
        #[serde(with = "rational_serde")]
        required: Ratio<i64>,
    },
    NotRegular {
        vertex: usize,
        degree: usize,
        required: usize,
    },
    ComponentSize {
        component: usize,
        vertices: usize,
        required: usize,
    },
    ComponentNotSteiner {
        component: usize,
        uncovered_pair: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct B4Certificate {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<B4ExtremalFailure>,
}

/// Checks that `H` is extremal for the broom bound in the structured sense:
/// (a) broom-free, (b) exactly (r+1)n/r edges, (c) (r+1)-regular, (d) every
/// component has r² vertices, (e) every component is a Steiner system.
/// Clauses are checked in order and the first failure is reported.
pub fn verify_b4_extremal(h: &LinearHypergraph) -> B4Certificate {
    assert!(h.r() >= 3);
    let fail = |failure| B4Certificate {
        pass: false,
        failure: Some(failure),
    };
    let (n, r) = (h.n(), h.r());
    if let Some(embedding) = contains_b4(h) {
        return fail(B4ExtremalFailure::ContainsBroom { embedding });
    }
    let required = Ratio::new(((r + 1) * n) as i64, r as i64);
    if Ratio::from_integer(h.edge_count() as i64) != required {
        return fail(B4ExtremalFailure::EdgeCount {
            found: h.edge_count(),
            required,
        });
    }
    for v in 0..n {
        if h.degree(v) != r + 1 {
            return fail(B4ExtremalFailure::NotRegular {
                vertex: v,
                degree: h.degree(v),
                required: r + 1,
            });
        }
    }
    let parts = h.components();
    for label in 0..parts.count {
        let (sub, verts) = h.component_subgraph(&parts, label);
        if sub.n() != r * r {
            return fail(B4ExtremalFailure::ComponentSize {
                component: label,
                vertices: sub.n(),
                required: r * r,
            });
        }
        if !designs::verify_steiner(&sub) {
            let uncovered = (0..sub.n())
                .flat_map(|u| ((u + 1)..sub.n()).map(move |v| (u, v)))
                .find(|&(u, v)| sub.pair_edge(u, v).is_none())
                .expect("non-Steiner linear system has an uncovered pair");
            return fail(B4ExtremalFailure::ComponentNotSteiner {
                component: label,
                uncovered_pair: (verts[uncovered.0], verts[uncovered.1]),
            });
        }
    }
    B4Certificate {
        pass: true,
        failure: None,
    }
}

/// True iff the system is a disjoint union of Steiner systems on r²
/// vertices each, the shape the broom bound is tight on.
pub fn is_disjoint_steiner_square_union(h: &LinearHypergraph) -> bool {
    let r = h.r();
    let parts = h.components();
    (0..parts.count).all(|label| {
        let (sub, _) = h.component_subgraph(&parts, label);
        sub.n() == r * r && designs::verify_steiner(&sub)
    })
}

/// Per-edge degree-sum weights with the capped variant: s(e) sums the
/// degrees over e; vertices of degree >= a = 4r-3 are "large", and edges
/// touching a large vertex have their weight capped at b = r²+3r-3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWeightDiagnostics {
    pub a: usize,
    pub b: usize,
    pub s: Vec<usize>,
    pub s_star: Vec<usize>,
    pub large: Vec<usize>,
}

pub fn edge_weight_diagnostics(h: &LinearHypergraph) -> EdgeWeightDiagnostics {
    let r = h.r();
    assert!(r >= 3);
    let a = 4 * r - 3;
    let b = r * r + 3 * r - 3;
    let large: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= a).collect();
    let s: Vec<usize> = h
        .edges()
        .map(|e| e.iter().map(|&v| h.degree(v)).sum())
        .collect();
    let s_star: Vec<usize> = h
        .edges()
        .zip(&s)
        .map(|(e, &se)| {
            if e.iter().any(|&v| h.degree(v) >= a) {
                se.min(b)
            } else {
                se
            }
        })
        .collect();
    EdgeWeightDiagnostics {
        a,
        b,
        s,
        s_star,
        large,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::designs::{construct_affine_plane, construct_sts};
    use crate::patterns::contains_crown;

    #[test]
    fn upper_bound_examples() {
        let b4 = upper_bound(BoundKind::Broom4, 9, 3, None).unwrap();
        assert_eq!(b4.value, Ratio::from_integer(12));
        assert_eq!(b4.floor, 12);
        assert_eq!(b4.side, Side::Upper);

        let crown = upper_bound(BoundKind::Crown4, 9, 3, None).unwrap();
        assert_eq!(crown.value, Ratio::from_integer(15));

        let star = upper_bound(BoundKind::Star, 9, 3, Some(4)).unwrap();
        assert_eq!(star.value, Ratio::from_integer(9));

        let p2 = upper_bound(BoundKind::Path, 7, 3, Some(2)).unwrap();
        assert_eq!(p2.value, Ratio::new(7, 3));
        assert_eq!(p2.floor, 2);
        assert_eq!(p2.side, Side::Exact);

        let p3 = upper_bound(BoundKind::Path, 11, 3, Some(3)).unwrap();
        assert_eq!(p3.value, Ratio::from_integer(11));

        let p4 = upper_bound(BoundKind::Path, 10, 3, Some(4)).unwrap();
        assert_eq!(p4.value, Ratio::from_integer(60));
        assert_eq!(p4.statement, Statement::LongPathUpper);

        let pair = upper_bound(BoundKind::Pair, 9, 3, None).unwrap();
        assert_eq!(pair.value, Ratio::from_integer(12));
    }

    #[test]
    fn upper_bound_rejections() {
        assert!(upper_bound(BoundKind::Star, 9, 3, None).is_err());
        assert!(upper_bound(BoundKind::Broom4, 9, 3, Some(4)).is_err());
        assert!(upper_bound(BoundKind::Path, 9, 3, Some(1)).is_err());
        assert!(upper_bound(BoundKind::Broom4, 9, 2, None).is_err());
    }

    #[test]
    fn report_serialization() {
        let crown = upper_bound(BoundKind::Crown4, 9, 3, None).unwrap();
        let json = serde_json::to_value(&crown).unwrap();
        assert_eq!(json["value"], "15/1");
        assert_eq!(json["floor"], 15);
        assert_eq!(json["statement"], "crown-upper");
        assert_eq!(json["side"], "upper");
    }

    #[test]
    fn tree_lower_examples() {
        let two_fanos = tree_lower_construction(14, 3, 4).unwrap();
        assert_eq!(two_fanos.value, Ratio::from_integer(14));
        let w = two_fanos.witness.as_ref().unwrap();
        assert_eq!(w.edge_count(), 14);
        assert!(contains_path(w, 4).unwrap().is_none());
        assert!(contains_star(w, 4).is_none());
        assert!(contains_b4(w).is_none());
        assert!(two_fanos.assumptions.iter().all(|a| a.holds));

        let one = tree_lower_construction(7, 3, 4).unwrap();
        assert_eq!(one.witness.unwrap().edge_count(), 7);

        assert!(matches!(
            tree_lower_construction(10, 3, 4),
            Err(BoundError::DivisibilityFailure { .. })
        ));

        let zero = tree_lower_construction(0, 3, 4).unwrap();
        assert_eq!(zero.value, Ratio::from_integer(0));
        assert_eq!(zero.witness.unwrap().edge_count(), 0);
    }

    #[test]
    fn tree_lower_unavailable_design() {
        // k = 3, r = 6 needs S(2,6,11): 11 = (6-1)(3-1)+1, divisibility
        // fails (10/5 = 2 but 110/30 is not an integer), so nonexistent.
        assert!(matches!(
            tree_lower_construction(11, 6, 3),
            Err(BoundError::DesignUnavailable { .. })
        ));
    }

    #[test]
    fn p4_lower_examples() {
        let one = p4_lower_construction(9, 3).unwrap();
        assert_eq!(one.value, Ratio::from_integer(12));
        assert!(contains_path(one.witness.as_ref().unwrap(), 4)
            .unwrap()
            .is_none());

        let two = p4_lower_construction(18, 3).unwrap();
        assert_eq!(two.value, Ratio::from_integer(24));
        assert_eq!(two.witness.as_ref().unwrap().edge_count(), 24);
        assert!(contains_path(two.witness.as_ref().unwrap(), 4)
            .unwrap()
            .is_none());

        assert!(matches!(
            p4_lower_construction(12, 3),
            Err(BoundError::DivisibilityFailure { .. })
        ));
        // r = 6: S(2,6,36) would be an affine plane of order 6.
        assert!(matches!(
            p4_lower_construction(36, 6),
            Err(BoundError::DesignUnavailable { .. })
        ));
    }

    #[test]
    fn lower_witnesses_respect_pair_bound() {
        for report in [
            tree_lower_construction(14, 3, 4).unwrap(),
            tree_lower_construction(21, 3, 4).unwrap(),
            p4_lower_construction(18, 3).unwrap(),
        ] {
            let w = report.witness.unwrap();
            let (n, r) = (w.n() as i64, w.r() as i64);
            let pair = Ratio::new(n * (n - 1), r * (r - 1));
            assert!(Ratio::from_integer(w.edge_count() as i64) <= pair);
        }
    }

    #[test]
    fn b4_extremal_positive_cases() {
        let ag3 = construct_affine_plane(3).unwrap();
        assert!(verify_b4_extremal(&ag3).pass);

        let double = disjoint_copies(&ag3, 2);
        assert!(verify_b4_extremal(&double).pass);

        // Isomorphic relabeling must still pass.
        let permuted: Vec<Vec<usize>> = ag3
            .edge_list()
            .iter()
            .map(|e| e.iter().map(|&v| (v * 5 + 2) % 9).collect())
            .collect();
        let p = LinearHypergraph::validate(9, 3, &permuted).unwrap();
        assert!(verify_b4_extremal(&p).pass);
    }

    #[test]
    fn b4_extremal_failures() {
        let ag3 = construct_affine_plane(3).unwrap();
        let truncated: Vec<Vec<usize>> = ag3.edge_list().iter().take(11).cloned().collect();
        let t = LinearHypergraph::validate(9, 3, &truncated).unwrap();
        let cert = verify_b4_extremal(&t);
        assert!(!cert.pass);
        assert!(matches!(
            cert.failure,
            Some(B4ExtremalFailure::EdgeCount { found: 11, .. })
        ));

        let s13 = construct_sts(13).unwrap();
        let cert = verify_b4_extremal(&s13);
        assert!(matches!(
            cert.failure,
            Some(B4ExtremalFailure::ContainsBroom { .. })
        ));

        // Extra isolated vertex breaks the edge-count clause (non-integer
        // requirement).
        let padded = LinearHypergraph::validate(10, 3, &ag3.edge_list().to_vec()).unwrap();
        let cert = verify_b4_extremal(&padded);
        assert!(matches!(
            cert.failure,
            Some(B4ExtremalFailure::EdgeCount { found: 12, .. })
        ));
    }

    #[test]
    fn diagnostics_examples() {
        let fano = crate::designs::construct_projective_plane(2).unwrap();
        let d = edge_weight_diagnostics(&fano);
        assert_eq!((d.a, d.b), (9, 15));
        assert!(d.large.is_empty());
        assert!(d.s.iter().all(|&x| x == 9));
        assert_eq!(d.s, d.s_star);

        let s13 = construct_sts(13).unwrap();
        let d = edge_weight_diagnostics(&s13);
        assert!(d.large.is_empty());
        assert!(d.s.iter().all(|&x| x == 18));
        assert_eq!(d.s, d.s_star);

        let star10 = Pattern::star(10, 3).hypergraph;
        let d = edge_weight_diagnostics(&star10);
        assert_eq!(d.large, vec![0]);
        assert!(d.s.iter().all(|&x| x == 12));
        assert!(d.s_star.iter().all(|&x| x == 12));
    }

    #[test]
    fn weight_sum_identity() {
        let mut hosts = corpus::corpus(25, 12, &[3, 4], &[0.4, 1.0], 999);
        hosts.push(construct_sts(13).unwrap());
        hosts.push(construct_affine_plane(3).unwrap());
        for h in &hosts {
            let d = edge_weight_diagnostics(h);
            let lhs: usize = d.s.iter().sum();
            let rhs: usize = (0..h.n()).map(|v| h.degree(v) * h.degree(v)).sum();
            assert_eq!(lhs, rhs);
            assert!(d.s_star.iter().zip(&d.s).all(|(st, s)| st <= s));
        }
    }

    #[test]
    fn formula_consistency_on_corpus() {
        let hosts = corpus::corpus(40, 12, &[3, 4], &[0.4, 1.0], 314);
        for h in &hosts {
            let m = Ratio::from_integer(h.edge_count() as i64);
            let (n, r) = (h.n(), h.r());
            if contains_b4(h).is_none() {
                assert!(
                    m <= upper_bound(BoundKind::Broom4, n, r, None).unwrap().value,
                    "broom bound violated on a broom-free instance"
                );
            }
            if m > upper_bound(BoundKind::Crown4, n, r, None).unwrap().value {
                assert!(contains_crown(h).is_some(), "crown bound exceeded crown-free");
            }
            for k in [3, 4] {
                if m > upper_bound(BoundKind::Star, n, r, Some(k)).unwrap().value {
                    assert!(contains_star(h, k).is_some(), "star bound exceeded star-free");
                }
            }
        }
    }
}
