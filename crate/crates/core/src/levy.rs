//! Lifting graphs, Levy cycles and minimal strong reduction systems.

use crate::exact::{ExactRational, Rational};
use crate::graph::{simple_cycles, strongly_connected_components};
use crate::obstruction::{primitive, subset_obstructed, LabeledMulticurve, LiftingData, ObstructionError, Prepared};
use crate::skeleton::{is_topological_polynomial, CoverSkeleton};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Above this many curves `minimal_srs` peels greedily instead of searching
/// subsets by size.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftEdge {
    pub from: String,
    pub to: String,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disk_degree: Option<u32>,
}

/// Vertices are curves; an edge `γ → δ` for each component of `f⁻¹(γ)`
/// homotopic to `δ`, labeled by the degree of `f` on that component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingGraph {
    pub vertices: Vec<String>,
    pub labels: BTreeMap<String, ExactRational>,
    pub edges: Vec<LiftEdge>,
}

impl LiftingGraph {
    fn index(&self, id: &str) -> usize {
        self.vertices.iter().position(|v| v == id).expect("edge endpoint is a vertex")
    }

    fn indexed_edges(&self, only_degree_one: bool) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| !only_degree_one || e.degree == 1)
            .map(|e| (self.index(&e.from), self.index(&e.to)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LevyError {
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error("the multicurve carries no strong reduction system")]
    Unobstructed,
    #[error("innermost-curve analysis needs a nesting forest; supply \"nesting\"")]
    MissingNesting,
    #[error("the cover is not a topological polynomial")]
    NotPolynomial,
    #[error("skeleton degree {skeleton} differs from lifting degree {lifting}")]
    DegreeMismatch { skeleton: u32, lifting: u32 },
}

pub fn lifting_graph(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Result<LiftingGraph, LevyError> {
    if multicurve.curves.is_empty() {
        return Ok(LiftingGraph { vertices: Vec::new(), labels: BTreeMap::new(), edges: Vec::new() });
    }
    let p = Prepared::new(multicurve, lifting, None)?;
    let mut edges = Vec::new();
    for (j, from) in p.curves.iter().enumerate() {
        // Disk degrees are looked up on the original components, in order.
        let originals = lifting.of(from);
        for (k, &(degree, class, _)) in p.components[j].iter().enumerate() {
            if let Some(i) = class {
                edges.push(LiftEdge {
                    from: from.clone(),
                    to: p.curves[i].clone(),
                    degree,
                    disk_degree: originals[k].disk_degree,
                });
            }
        }
    }
    let labels = p
        .curves
        .iter()
        .zip(&p.labels)
        .map(|(c, l)| (c.clone(), ExactRational(l.clone())))
        .collect();
    Ok(LiftingGraph { vertices: p.curves, labels, edges })
}

/// Simple cycles all of whose edges have degree 1, each listed from its
/// first vertex in graph order and following edge direction.
pub fn find_levy_cycles(graph: &LiftingGraph) -> Vec<Vec<String>> {
    simple_cycles(graph.vertices.len(), &graph.indexed_edges(true))
        .into_iter()
        .map(|c| c.into_iter().map(|i| graph.vertices[i].clone()).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalSrs {
    pub curves: Vec<String>,
    pub witness_labels: BTreeMap<String, ExactRational>,
    pub method: SearchMethod,
    /// Every subset with one curve fewer was checked and is unobstructed.
    pub certified_minimal: bool,
}

fn support_edges(m: &[Vec<Rational>], subset: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate() {
            if !m[i][j].is_zero() {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn strongly_connected(m: &[Vec<Rational>], subset: &[usize]) -> bool {
    strongly_connected_components(subset.len(), &support_edges(m, subset)).len() == 1
}

/// Next k-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn exhaustive(m: &[Vec<Rational>]) -> Option<(Vec<usize>, Vec<Rational>)> {
    // A minimal obstructed set induces an irreducible block (otherwise one of
    // its strongly connected pieces is already obstructed), so it lies inside
    // one strongly connected component of the whole graph.
    let all: Vec<usize> = (0..m.len()).collect();
    let comps = strongly_connected_components(m.len(), &support_edges(m, &all));
    let comps: Vec<Vec<usize>> = comps.into_iter().filter(|c| subset_obstructed(m, c).is_some()).collect();
    let largest = comps.iter().map(Vec::len).max()?;
    for k in 1..=largest {
        for comp in comps.iter().filter(|c| c.len() >= k) {
            let mut pick: Vec<usize> = (0..k).collect();
            loop {
                let subset: Vec<usize> = pick.iter().map(|&i| comp[i]).collect();
                if strongly_connected(m, &subset) {
                    if let Some(v) = subset_obstructed(m, &subset) {
                        return Some((subset, v));
                    }
                }
                if !next_combination(&mut pick, comp.len()) {
                    break;
                }
            }
        }
    }
    None
}

fn greedy(m: &[Vec<Rational>]) -> Option<(Vec<usize>, Vec<Rational>)> {
    let mut current: Vec<usize> = (0..m.len()).collect();
    let mut v = subset_obstructed(m, &current)?;
    let mut i = 0;
    while i < current.len() {
        let mut trial = current.clone();
        trial.remove(i);
        match subset_obstructed(m, &trial) {
            Some(w) => {
                current = trial;
                v = w;
            }
            None => i += 1,
        }
    }
    Some((current, v))
}

pub fn minimal_srs(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Result<MinimalSrs, LevyError> {
    if multicurve.curves.is_empty() {
        return Err(LevyError::Unobstructed);
    }
    let p = Prepared::new(multicurve, lifting, None)?;
    let m = p.matrix();
    let (method, found) = if m.len() <= EXHAUSTIVE_LIMIT {
        (SearchMethod::Exhaustive, exhaustive(&m))
    } else {
        (SearchMethod::Greedy, greedy(&m))
    };
    let (subset, v) = found.ok_or(LevyError::Unobstructed)?;
    let certified_minimal = (0..subset.len()).all(|skip| {
        let smaller: Vec<usize> =
            subset.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
        subset_obstructed(&m, &smaller).is_none()
    });
    let labels = primitive(&v);
    Ok(MinimalSrs {
        curves: subset.iter().map(|&i| p.curves[i].clone()).collect(),
        witness_labels: subset
            .iter()
            .zip(labels)
            .map(|(&i, l)| (p.curves[i].clone(), ExactRational(l)))
            .collect(),
        method,
        certified_minimal,
    })
}

/// Outcome of checking that a minimal strong reduction system of a
/// topological polynomial is a degenerate Levy cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevyVerdict {
    pub minimal_srs: MinimalSrs,
    /// The cycle in edge order, when the restricted lifting graph is one.
    pub cycle: Option<Vec<String>>,
    pub single_cycle: bool,
    pub degrees_one: bool,
    pub innermost: bool,
    /// `None` when some edge of the cycle has no disk degree on record; the
    /// disk degrees then equal the curve degrees by the interior-mapping
    /// argument, which `degeneracy_implied` records.
    pub disk_degrees_one: Option<bool>,
    pub degeneracy_implied: bool,
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

pub fn check_prop_levy(
    multicurve: &LabeledMulticurve,
    lifting: &LiftingData,
    skeleton: &CoverSkeleton,
) -> Result<LevyVerdict, LevyError> {
    if is_topological_polynomial(skeleton).is_none() {
        return Err(LevyError::NotPolynomial);
    }
    if multicurve.nesting.is_none() {
        return Err(LevyError::MissingNesting);
    }
    let prepared = Prepared::new(multicurve, lifting, None)?;
    if prepared.degree != skeleton.degree() {
        return Err(LevyError::DegreeMismatch { skeleton: skeleton.degree(), lifting: prepared.degree });
    }
    let minimal = minimal_srs(multicurve, lifting)?;
    let graph = lifting_graph(multicurve, lifting)?;
    let in_set = |id: &str| minimal.curves.iter().any(|c| c == id);
    let edges: Vec<&LiftEdge> = graph.edges.iter().filter(|e| in_set(&e.from) && in_set(&e.to)).collect();
    let mut diagnostics = Vec::new();

    let mut out_deg: BTreeMap<&str, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &edges {
        *out_deg.entry(&e.from).or_default() += 1;
        *in_deg.entry(&e.to).or_default() += 1;
    }
    let mut cycle = None;
    let regular = minimal
        .curves
        .iter()
        .all(|c| out_deg.get(c.as_str()) == Some(&1) && in_deg.get(c.as_str()) == Some(&1));
    if regular {
        let mut order = vec![minimal.curves[0].clone()];
        loop {
            let last = order.last().unwrap();
            let next = &edges.iter().find(|e| &e.from == last).unwrap().to;
            if next == &order[0] {
                break;
            }
            order.push(next.clone());
        }
        if order.len() == minimal.curves.len() {
            cycle = Some(order);
        }
    }
    let single_cycle = cycle.is_some();
    if !single_cycle {
        diagnostics.push(format!(
            "restricted lifting graph on {:?} is not a single directed cycle (edges: {})",
            minimal.curves,
            edges.iter().map(|e| format!("{}->{}", e.from, e.to)).collect::<Vec<_>>().join(", ")
        ));
    }

    let heavy: Vec<String> = edges
        .iter()
        .filter(|e| e.degree != 1)
        .map(|e| format!("{}->{} has degree {}", e.from, e.to, e.degree))
        .collect();
    let degrees_one = heavy.is_empty();
    diagnostics.extend(heavy);

    let nested: Vec<String> = minimal
        .curves
        .iter()
        .flat_map(|outer| {
            minimal
                .curves
                .iter()
                .filter(move |inner| multicurve.is_inside(inner, outer))
                .map(move |inner| format!("{inner} lies inside {outer}"))
        })
        .collect();
    let innermost = nested.is_empty();
    diagnostics.extend(nested);

    let disk: Vec<Option<u32>> = edges.iter().map(|e| e.disk_degree).collect();
    let (disk_degrees_one, degeneracy_implied) = if !disk.is_empty() && disk.iter().all(Option::is_some) {
        let ok = disk.iter().all(|d| *d == Some(1));
        if !ok {
            diagnostics.push("some disk of the cycle maps with degree above 1".into());
        }
        (Some(ok), false)
    } else {
        (None, true)
    };

    let pass = single_cycle && degrees_one && innermost && disk_degrees_one.unwrap_or(true);
    Ok(LevyVerdict {
        minimal_srs: minimal,
        cycle,
        single_cycle,
        degrees_one,
        innermost,
        disk_degrees_one,
        degeneracy_implied,
        pass,
        diagnostics,
    })
}
