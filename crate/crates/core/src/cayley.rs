//! Cayley sum graphs `CayS(G, S)`: `x ~ y` iff `xy ∈ S`.
//!
//! `S` must be normal and square-free, which makes the graph simple, undirected
//! and `|S|`-regular. This module checks `(α, β)`-regularity of vertex subsets,
//! equitable 2-partitions, and the transversal structure of connection sets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::Group;
use crate::subgroup::{right_cosets, CosetDecomposition, Subgroup};

/// A validated normal square-free subset of a group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet(ElementSet);

impl ConnectionSet {
    pub fn elements(&self) -> &ElementSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> ElementSet {
        self.0
    }
}

pub fn make_connection_set(g: &Group, s: ElementSet) -> Result<ConnectionSet> {
    if s.universe() != g.order() {
        return Err(Error::OutOfRange(
            "connection set over a different group".into(),
        ));
    }
    if s.contains(0) {
        return Err(Error::ContainsIdentity);
    }
    let squares = g.squares();
    if let Some(x) = s.intersection(&squares).min() {
        return Err(Error::SquareElement(x));
    }
    if let Some((element, conjugate)) = g.first_normality_violation(&s) {
        return Err(Error::NotNormal { element, conjugate });
    }
    Ok(ConnectionSet(s))
}

/// Adjacency rows of `CayS(G, S)`; row `x` holds `{ y : xy ∈ S } = x^{-1} S`.
#[derive(Debug, Clone)]
pub struct CaySGraph {
    rows: Vec<ElementSet>,
    connection: ConnectionSet,
}

pub fn build_graph(g: &Group, c: &ConnectionSet) -> CaySGraph {
    build_graph_with(g, c, Execution::default())
}

pub fn build_graph_with(g: &Group, c: &ConnectionSet, exec: Execution) -> CaySGraph {
    let vertices: Vec<usize> = g.elements().collect();
    let rows = exec.map(&vertices, |&x| {
        let xi = g.inv(x);
        g.set_of(c.elements().iter().map(|s| g.mul(xi, s)))
    });
    CaySGraph {
        rows,
        connection: c.clone(),
    }
}

impl CaySGraph {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn neighbours(&self, x: usize) -> &ElementSet {
        &self.rows[x]
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Edges `(x, y)` with `x < y`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().filter(move |&y| y > x).map(move |y| (x, y)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(x, row)| row.iter().all(|y| self.rows[y].contains(x)))
    }

    pub fn is_loopless(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(x, row)| !row.contains(x))
    }

    pub fn is_regular(&self) -> bool {
        let k = self.degree();
        self.rows.iter().all(|r| r.len() == k)
    }
}

pub type QuotientMatrix = [[usize; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Regular {
        alpha: usize,
        beta: usize,
    },
    NotRegular {
        vertex: usize,
        inside_degree: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityResult {
    pub subject: ElementSet,
    pub verdict: Verdict,
    pub quotient: Option<QuotientMatrix>,
    /// `|S ∩ Hx|` per right coset (coset order), for subgroup subjects only.
    pub coset_counts: Option<Vec<usize>>,
}

impl RegularityResult {
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.verdict {
            Verdict::Regular { alpha, beta } => Some((alpha, beta)),
            Verdict::NotRegular { .. } => None,
        }
    }
}

/// Checks whether `c` is an `(α, β)`-regular set of the graph.
///
/// The first vertex of `C` fixes `α` and the first vertex outside fixes `β`;
/// the first vertex (by index) that deviates is reported.
pub fn check_regular_set(graph: &CaySGraph, c: &ElementSet) -> Result<RegularityResult> {
    if c.is_empty() || c.is_full() || c.universe() != graph.order() {
        return Err(Error::DegeneratePartition);
    }
    let inside_degree = |v: usize| graph.neighbours(v).intersection_len(c);
    let alpha = inside_degree(c.min().unwrap());
    let beta = inside_degree(c.complement().min().unwrap());
    let failure = (0..graph.order()).find_map(|v| {
        let expected = if c.contains(v) { alpha } else { beta };
        let got = inside_degree(v);
        (got != expected).then_some((v, got, expected))
    });
    let k = graph.degree();
    let (verdict, quotient) = match failure {
        None => (
            Verdict::Regular { alpha, beta },
            Some([[alpha, k - alpha], [beta, k - beta]]),
        ),
        Some((vertex, inside_degree, expected)) => (
            Verdict::NotRegular {
                vertex,
                inside_degree,
                expected,
            },
            None,
        ),
    };
    Ok(RegularityResult {
        subject: c.clone(),
        verdict,
        quotient,
        coset_counts: None,
    })
}

/// [`check_regular_set`] for a subgroup, with per-coset intersection sizes.
pub fn check_regular_subgroup(
    g: &Group,
    graph: &CaySGraph,
    h: &Subgroup,
) -> Result<RegularityResult> {
    let mut result = check_regular_set(graph, h.elements())?;
    let cosets = right_cosets(g, h);
    result.coset_counts = Some(coset_counts(&cosets, graph.connection().elements()));
    Ok(result)
}

/// `|S ∩ Hx|` for each right coset, `H` first.
pub fn coset_counts(cosets: &CosetDecomposition, s: &ElementSet) -> Vec<usize> {
    cosets
        .cosets()
        .iter()
        .map(|c| c.intersection_len(s))
        .collect()
}

/// Quotient matrix of the equitable partition `{C, V \ C}`.
pub fn quotient_matrix(graph: &CaySGraph, c: &ElementSet) -> Result<QuotientMatrix> {
    let result = check_regular_set(graph, c)?;
    match result.verdict {
        Verdict::Regular { .. } => Ok(result.quotient.unwrap()),
        Verdict::NotRegular {
            vertex,
            inside_degree,
            expected,
        } => Err(Error::NotEquitable {
            vertex,
            inside: inside_degree,
            expected,
        }),
    }
}

/// The three equivalent characterisations of `H` being a perfect code of `CayS(G, S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PerfectCodeConditions {
    /// `H` is a `(0, 1)`-regular set of the graph.
    pub perfect_code: bool,
    /// `S ∪ {e}` is a right transversal of `H`.
    pub transversal: bool,
    /// `[G:H] = |S| + 1` and `(S ∪ SS^{-1}) ∩ H ⊆ {e}`.
    pub index_condition: bool,
}

impl PerfectCodeConditions {
    pub fn holds(&self) -> bool {
        self.perfect_code
    }
}

/// Evaluates all three conditions and fails loudly if they disagree.
pub fn check_perfect_code_conditions(
    g: &Group,
    h: &Subgroup,
    c: &ConnectionSet,
) -> Result<PerfectCodeConditions> {
    let s = c.elements();
    let graph = build_graph(g, c);
    // Direct count so that H = G (no outside vertices) is handled too.
    let perfect_code = g.elements().all(|v| {
        let inside = graph.neighbours(v).intersection_len(h.elements());
        if h.contains(v) {
            inside == 0
        } else {
            inside == 1
        }
    });

    let cosets = right_cosets(g, h);
    let mut with_identity = s.clone();
    with_identity.insert(0);
    let transversal = cosets.is_transversal(&with_identity);

    let index_ok = h.index_in(g) == s.len() + 1;
    let meets_only_identity = s
        .iter()
        .all(|x| !h.contains(x) && s.iter().all(|y| x == y || !h.contains(g.mul(x, g.inv(y)))));
    let index_condition = index_ok && meets_only_identity;

    let conditions = PerfectCodeConditions {
        perfect_code,
        transversal,
        index_condition,
    };
    if perfect_code != transversal || transversal != index_condition {
        return Err(Error::ConditionDisagreement {
            perfect_code,
            transversal,
            index_condition,
        });
    }
    Ok(conditions)
}

/// `S ∩ H` and disjoint parts `T_1..T_β` of `S \ H`, each `T_i ∪ {e}` a right transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub inside: ElementSet,
    pub parts: Vec<ElementSet>,
}

impl Decomposition {
    pub fn beta(&self) -> usize {
        self.parts.len()
    }
}

/// Splits `S` per coset; `T_i` takes the i-th smallest element of `S ∩ Hx` in every coset.
pub fn decompose_connection_set(
    g: &Group,
    h: &Subgroup,
    c: &ConnectionSet,
) -> Result<Decomposition> {
    let s = c.elements();
    let cosets = right_cosets(g, h);
    let inside = s.intersection(h.elements());
    let per_coset: Vec<(usize, Vec<usize>)> = cosets
        .non_trivial()
        .map(|(rep, coset)| (rep, coset.intersection(s).to_vec()))
        .collect();
    let beta = per_coset.first().map_or(0, |(_, xs)| xs.len());
    if let Some((rep, xs)) = per_coset.iter().find(|(_, xs)| xs.len() != beta) {
        return Err(Error::NotZeroBetaRegular {
            representative: *rep,
            count: xs.len(),
            expected: beta,
        });
    }
    let parts = (0..beta)
        .map(|i| g.set_of(per_coset.iter().map(|(_, xs)| xs[i])))
        .collect();
    Ok(Decomposition { inside, parts })
}

/// Inverse of [`decompose_connection_set`]: validates the parts and returns their union.
pub fn build_from_transversals(
    g: &Group,
    h: &Subgroup,
    inside: &ElementSet,
    parts: &[ElementSet],
) -> Result<ConnectionSet> {
    if !inside.is_subset(h.elements()) {
        return Err(Error::BadTransversal("inside part leaves H".into()));
    }
    let cosets = right_cosets(g, h);
    let mut union = inside.clone();
    for (i, part) in parts.iter().enumerate() {
        if part.contains(0) {
            return Err(Error::BadTransversal(format!("part {i} contains e")));
        }
        let mut t = part.clone();
        t.insert(0);
        if !cosets.is_transversal(&t) {
            return Err(Error::BadTransversal(format!(
                "part {i} ∪ {{e}} is not a transversal"
            )));
        }
        if !union.is_disjoint(part) {
            return Err(Error::BadTransversal(format!(
                "part {i} overlaps earlier parts"
            )));
        }
        union.union_with(part);
    }
    make_connection_set(g, union)
}

/// `S ∩ H` and `S \ H` for a normal subgroup `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub inside: ConnectionSet,
    pub outside: ConnectionSet,
}

/// Splits `S` along a normal subgroup and re-checks that `H` is `(α, β)`-regular for `S`
/// iff it is `(α, 0)`-regular for the inside part and `(0, β)`-regular for the outside part.
pub fn split_by_subgroup(g: &Group, h: &Subgroup, c: &ConnectionSet) -> Result<Split> {
    if !h.is_normal_in(g) {
        return Err(Error::NotNormalSubgroup);
    }
    let s = c.elements();
    let inside = make_connection_set(g, s.intersection(h.elements()))?;
    let outside = make_connection_set(g, s.difference(h.elements()))?;
    if !h.is_whole() {
        let pair_of = |cs: &ConnectionSet| {
            check_regular_set(&build_graph(g, cs), h.elements()).map(|r| r.pair())
        };
        let whole = pair_of(c)?;
        let parts = match (pair_of(&inside)?, pair_of(&outside)?) {
            (Some((alpha, 0)), Some((0, beta))) => Some((alpha, beta)),
            _ => None,
        };
        if whole != parts {
            return Err(Error::WitnessVerification(format!(
                "split disagrees with whole set: {whole:?} vs {parts:?}"
            )));
        }
    }
    Ok(Split { inside, outside })
}

/// JSON-facing regularity report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub group_spec: String,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<usize>,
    pub verdict: String,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub quotient_matrix: Option<QuotientMatrix>,
}

impl RegularityReport {
    pub fn new(g: &Group, graph: &CaySGraph, result: &RegularityResult) -> Self {
        let (verdict, alpha, beta) = match result.verdict {
            Verdict::Regular { alpha, beta } => ("regular", Some(alpha), Some(beta)),
            Verdict::NotRegular { .. } => ("not-regular", None, None),
        };
        Self {
            group_spec: g.spec().to_string(),
            s: graph.connection().elements().to_vec(),
            c: result.subject.to_vec(),
            verdict: verdict.to_string(),
            alpha,
            beta,
            quotient_matrix: result.quotient,
        }
    }
}

/// Graphviz rendering. Vertices of `highlight` are hollow; edges inside it are
/// dashed and edges crossing its boundary are bold.
pub fn to_dot(g: &Group, graph: &CaySGraph, highlight: Option<&ElementSet>) -> String {
    let marked = |x: usize| highlight.is_some_and(|h| h.contains(x));
    let mut out = String::new();
    let _ = writeln!(out, "graph \"CayS({})\" {{", g.spec());
    let _ = writeln!(
        out,
        "  node [shape=circle, width=0.25, fixedsize=true, label=\"\"];"
    );
    for x in g.elements() {
        let style = if marked(x) {
            "style=solid, fillcolor=white"
        } else {
            "style=filled, fillcolor=black"
        };
        let _ = writeln!(out, "  {x} [xlabel=\"{}\", {style}];", g.render(x));
    }
    for (x, y) in graph.edges() {
        let style = match (highlight.is_some(), marked(x), marked(y)) {
            (true, true, true) => " [style=dashed]",
            (true, a, b) if a != b => " [style=bold, penwidth=3]",
            _ => "",
        };
        let _ = writeln!(out, "  {x} -- {y}{style};");
    }
    out.push_str("}\n");
    out
}
