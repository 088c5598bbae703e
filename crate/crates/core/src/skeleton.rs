//! Combinatorial skeletons of dynamical branched covers.
//!
//! A skeleton records the degree of the cover, the marked and critical
//! vertices with their local degrees, and the forward map on those vertices.
//! Preimages outside the marked and critical vertices are never stored; their
//! number is recovered from the preimage budget
//! `d - sum over critical c with f(c) = p of (deg_c - 1)`.
//!
//! [`SkeletonDoc`] is the raw JSON document. [`CoverSkeleton`] can only be
//! built from a document that passes [`validate`], so every operation on it
//! may assume the invariants hold.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Sphere,
    Torus,
}

impl Surface {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Surface::Sphere => 2,
            Surface::Torus => 0,
        }
    }

    /// Maximum number of pairwise disjoint, pairwise non-homotopic essential
    /// curves on the surface with `marked` marked points.
    pub fn max_multicurve_size(self, marked: usize) -> usize {
        match self {
            Surface::Sphere => marked.saturating_sub(3),
            Surface::Torus => marked.max(1),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Sphere => f.write_str("sphere"),
            Surface::Torus => f.write_str("torus"),
        }
    }
}

/// Vertex entry of a skeleton document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub marked: bool,
    pub local_degree: i64,
}

/// Raw JSON form of a skeleton; may violate any invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDoc {
    pub surface: Surface,
    pub degree: i64,
    pub vertices: Vec<VertexDoc>,
    pub forward: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub id: String,
    pub marked: bool,
    pub local_degree: u32,
}

impl VertexRecord {
    pub fn is_critical(&self) -> bool {
        self.local_degree > 1
    }
}

/// One violated invariant. `vertex` names the offending vertex when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: Invariant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    PositiveDegree,
    UniqueIds,
    PositiveLocalDegree,
    LocalDegreeAtMostDegree,
    ForwardTotal,
    ForwardTargetExists,
    RepresentableVertex,
    RiemannHurwitz,
    BranchedTorus,
    PreimageBudget,
    CriticalValuesMarked,
    MarkedClosed,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Invariant::PositiveDegree => "positive-degree",
            Invariant::UniqueIds => "unique-ids",
            Invariant::PositiveLocalDegree => "positive-local-degree",
            Invariant::LocalDegreeAtMostDegree => "local-degree-at-most-degree",
            Invariant::ForwardTotal => "forward-total",
            Invariant::ForwardTargetExists => "forward-target-exists",
            Invariant::RepresentableVertex => "representable-vertex",
            Invariant::RiemannHurwitz => "riemann-hurwitz",
            Invariant::BranchedTorus => "branched-torus",
            Invariant::PreimageBudget => "preimage-budget",
            Invariant::CriticalValuesMarked => "critical-values-marked",
            Invariant::MarkedClosed => "marked-closed",
        };
        f.write_str(name)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.vertex {
            Some(v) => write!(f, "{} at {}: {}", self.invariant, v, self.detail),
            None => write!(f, "{}: {}", self.invariant, self.detail),
        }
    }
}

/// Result of [`validate`]; empty on success.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, invariant: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    fn push(&mut self, invariant: Invariant, vertex: Option<&str>, detail: String) {
        self.violations.push(Violation {
            invariant,
            vertex: vertex.map(str::to_string),
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Checks every skeleton invariant and reports each violation.
pub fn validate(doc: &SkeletonDoc) -> ValidationReport {
    let mut report = ValidationReport::default();

    if doc.degree < 1 {
        report.push(
            Invariant::PositiveDegree,
            None,
            format!("degree {} is not positive", doc.degree),
        );
    }

    let mut by_id: HashMap<&str, &VertexDoc> = HashMap::new();
    for v in &doc.vertices {
        if by_id.insert(v.id.as_str(), v).is_some() {
            report.push(Invariant::UniqueIds, Some(&v.id), "duplicate vertex id".into());
        }
        if v.local_degree < 1 {
            report.push(
                Invariant::PositiveLocalDegree,
                Some(&v.id),
                format!("local degree {} is not positive", v.local_degree),
            );
        } else if doc.degree >= 1 && v.local_degree > doc.degree {
            report.push(
                Invariant::LocalDegreeAtMostDegree,
                Some(&v.id),
                format!("local degree {} exceeds degree {}", v.local_degree, doc.degree),
            );
        }
        if !v.marked && v.local_degree == 1 {
            report.push(
                Invariant::RepresentableVertex,
                Some(&v.id),
                "vertex is neither marked nor critical".into(),
            );
        }
        if doc.surface == Surface::Torus && v.local_degree > 1 {
            report.push(
                Invariant::BranchedTorus,
                Some(&v.id),
                "torus covers are unbranched; critical vertices are not allowed".into(),
            );
        }
    }

    for (src, dst) in &doc.forward {
        if !by_id.contains_key(src.as_str()) {
            report.push(
                Invariant::ForwardTargetExists,
                Some(src),
                "forward map has an entry for an unknown vertex".into(),
            );
        }
        if !by_id.contains_key(dst.as_str()) {
            report.push(
                Invariant::ForwardTargetExists,
                Some(src),
                format!("forward image {dst:?} is not a vertex"),
            );
        }
    }
    let mut seen = BTreeSet::new();
    for v in &doc.vertices {
        if seen.insert(v.id.as_str()) && !doc.forward.contains_key(&v.id) {
            report.push(Invariant::ForwardTotal, Some(&v.id), "vertex has no forward image".into());
        }
    }

    // The remaining checks need well-formed degrees and a total forward map.
    if !report.is_valid() {
        return report;
    }

    let d = doc.degree;
    let deficiency: i64 = doc.vertices.iter().map(|v| v.local_degree - 1).sum();
    let expected = match doc.surface {
        Surface::Sphere => 2 * d - 2,
        Surface::Torus => 0,
    };
    if deficiency != expected {
        report.push(
            Invariant::RiemannHurwitz,
            None,
            format!(
                "sum of (local degree - 1) over critical vertices is {deficiency}, expected {expected} (deficit {})",
                expected - deficiency
            ),
        );
    }

    let mut weighted: BTreeMap<&str, i64> = BTreeMap::new();
    for v in &doc.vertices {
        *weighted.entry(doc.forward[&v.id].as_str()).or_default() += v.local_degree;
    }
    for (target, w) in &weighted {
        if *w > d {
            report.push(
                Invariant::PreimageBudget,
                Some(target),
                format!("preimages weighted by local degree sum to {w} > degree {d}"),
            );
        }
    }

    for v in &doc.vertices {
        let image = by_id[doc.forward[&v.id].as_str()];
        if v.local_degree > 1 && !image.marked {
            report.push(
                Invariant::CriticalValuesMarked,
                Some(&image.id),
                format!("critical value of {} is not marked", v.id),
            );
        }
        if v.marked && !image.marked {
            report.push(
                Invariant::MarkedClosed,
                Some(&v.id),
                format!("marked vertex maps to unmarked vertex {}", image.id),
            );
        }
    }

    report
}

/// A validated dynamical branched cover skeleton.
///
/// Vertices are stored sorted by id and addressed by index internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSkeleton {
    surface: Surface,
    degree: u32,
    vertices: Vec<VertexRecord>,
    forward: Vec<usize>,
    index: BTreeMap<String, usize>,
}

impl CoverSkeleton {
    pub fn from_doc(doc: &SkeletonDoc) -> Result<Self, ValidationReport> {
        let report = validate(doc);
        if !report.is_valid() {
            return Err(report);
        }
        let mut vertices: Vec<VertexRecord> = doc
            .vertices
            .iter()
            .map(|v| VertexRecord {
                id: v.id.clone(),
                marked: v.marked,
                local_degree: v.local_degree as u32,
            })
            .collect();
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        let index: BTreeMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let forward = vertices.iter().map(|v| index[&doc.forward[&v.id]]).collect();
        Ok(CoverSkeleton {
            surface: doc.surface,
            degree: doc.degree as u32,
            vertices,
            forward,
            index,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SkeletonParseError> {
        let doc: SkeletonDoc = serde_json::from_str(text)?;
        Ok(Self::from_doc(&doc)?)
    }

    pub fn to_doc(&self) -> SkeletonDoc {
        SkeletonDoc {
            surface: self.surface,
            degree: self.degree as i64,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.clone(),
                    marked: v.marked,
                    local_degree: v.local_degree as i64,
                })
                .collect(),
            forward: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| (v.id.clone(), self.vertices[self.forward[i]].id.clone()))
                .collect(),
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.vertices[index].id
    }

    pub fn forward_index(&self, index: usize) -> usize {
        self.forward[index]
    }

    pub fn forward(&self, id: &str) -> Option<&str> {
        self.index_of(id).map(|i| self.id(self.forward[i]))
    }

    pub fn local_degree(&self, index: usize) -> u32 {
        self.vertices[index].local_degree
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.vertices[index].marked
    }

    pub fn is_critical(&self, index: usize) -> bool {
        self.vertices[index].is_critical()
    }

    pub fn marked_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_marked(i))
    }

    pub fn critical_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_critical(i))
    }

    pub fn marked_count(&self) -> usize {
        self.marked_indices().count()
    }

    /// Skeleton vertices mapping to `index`, in id order.
    pub fn preimages(&self, index: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.forward[w] == index).collect()
    }

    /// Number of distinct geometric preimages of `index`:
    /// `d - sum over critical c with f(c) = index of (deg_c - 1)`.
    pub fn preimage_count(&self, index: usize) -> u32 {
        let lost: u32 = self
            .preimages(index)
            .into_iter()
            .map(|w| self.local_degree(w) - 1)
            .sum();
        self.degree - lost
    }

    pub(crate) fn post_critical_indices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for c in self.critical_indices() {
            let mut v = self.forward[c];
            while out.insert(v) {
                v = self.forward[v];
            }
        }
        out
    }

    /// Ids of `indices`, in id order.
    pub(crate) fn ids(&self, indices: impl IntoIterator<Item = usize>) -> BTreeSet<String> {
        indices.into_iter().map(|i| self.id(i).to_string()).collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SkeletonParseError {
    #[error("malformed skeleton document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid skeleton:\n{0}")]
    Invalid(#[from] ValidationReport),
}

/// Union of the forward orbits of the critical values.
pub fn post_critical_set(skeleton: &CoverSkeleton) -> BTreeSet<String> {
    skeleton.ids(skeleton.post_critical_indices())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PortraitEdge {
    pub from: String,
    pub to: String,
    pub label: u32,
}

/// Directed graph with out-degree one, edges labelled by local degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Portrait {
    pub vertices: Vec<String>,
    pub edges: Vec<PortraitEdge>,
}

impl Portrait {
    fn over(skeleton: &CoverSkeleton, keep: &BTreeSet<usize>) -> Portrait {
        let vertices = keep.iter().map(|&i| skeleton.id(i).to_string()).collect();
        let edges = keep
            .iter()
            .map(|&i| PortraitEdge {
                from: skeleton.id(i).to_string(),
                to: skeleton.id(skeleton.forward_index(i)).to_string(),
                label: skeleton.local_degree(i),
            })
            .collect();
        Portrait { vertices, edges }
    }

    pub fn edge_from(&self, id: &str) -> Option<&PortraitEdge> {
        self.edges.iter().find(|e| e.from == id)
    }
}

/// Portrait on the post-critical vertices.
pub fn portrait(skeleton: &CoverSkeleton) -> Portrait {
    Portrait::over(skeleton, &skeleton.post_critical_indices())
}

/// Portrait on critical and post-critical vertices.
pub fn extended_portrait(skeleton: &CoverSkeleton) -> Portrait {
    let mut keep = skeleton.post_critical_indices();
    keep.extend(skeleton.critical_indices());
    Portrait::over(skeleton, &keep)
}

/// Returns a marked fixed vertex whose local degree equals the degree, if any.
///
/// Only meaningful for sphere skeletons; torus skeletons always return `None`.
pub fn is_topological_polynomial(skeleton: &CoverSkeleton) -> Option<String> {
    if skeleton.surface() != Surface::Sphere {
        return None;
    }
    skeleton
        .marked_indices()
        .find(|&i| skeleton.forward_index(i) == i && skeleton.local_degree(i) == skeleton.degree())
        .map(|i| skeleton.id(i).to_string())
}

/// True iff every marked vertex has a critical vertex in its forward orbit
/// (the vertex itself included).
pub fn levy_berstein_criterion(skeleton: &CoverSkeleton) -> bool {
    skeleton.marked_indices().all(|p| {
        let mut seen = BTreeSet::new();
        let mut v = p;
        while seen.insert(v) {
            if skeleton.is_critical(v) {
                return true;
            }
            v = skeleton.forward_index(v);
        }
        false
    })
}

/// Small builder used by examples, tests, and the descent construction.
#[derive(Debug, Clone)]
pub struct SkeletonBuilder {
    doc: SkeletonDoc,
}

impl SkeletonBuilder {
    pub fn new(surface: Surface, degree: i64) -> Self {
        SkeletonBuilder {
            doc: SkeletonDoc {
                surface,
                degree,
                vertices: Vec::new(),
                forward: BTreeMap::new(),
            },
        }
    }

    pub fn sphere(degree: i64) -> Self {
        Self::new(Surface::Sphere, degree)
    }

    /// Adds a vertex mapping to `image`.
    pub fn vertex(mut self, id: &str, marked: bool, local_degree: i64, image: &str) -> Self {
        self.doc.vertices.push(VertexDoc {
            id: id.to_string(),
            marked,
            local_degree,
        });
        self.doc.forward.insert(id.to_string(), image.to_string());
        self
    }

    pub fn doc(self) -> SkeletonDoc {
        self.doc
    }

    pub fn build(self) -> Result<CoverSkeleton, ValidationReport> {
        CoverSkeleton::from_doc(&self.doc)
    }
}

/// Skeletons of a few classical maps, shared by tests and examples.
pub mod samples {
    use super::*;

    /// `z -> z^2`: 0 and infinity are critical fixed points.
    pub fn z_squared() -> CoverSkeleton {
        SkeletonBuilder::sphere(2)
            .vertex("0", true, 2, "0")
            .vertex("inf", true, 2, "inf")
            .build()
            .expect("z^2 skeleton is valid")
    }

    /// Douady rabbit: `c0 -> p1 -> p2 -> c0`, infinity critical and fixed.
    pub fn rabbit() -> CoverSkeleton {
        SkeletonBuilder::sphere(2)
            .vertex("c0", true, 2, "p1")
            .vertex("p1", true, 1, "p2")
            .vertex("p2", true, 1, "c0")
            .vertex("inf", true, 2, "inf")
            .build()
            .expect("rabbit skeleton is valid")
    }

    /// Basilica `z^2 - 1`: `0 -> -1 -> 0`, infinity critical and fixed.
    pub fn basilica() -> CoverSkeleton {
        SkeletonBuilder::sphere(2)
            .vertex("0", true, 2, "-1")
            .vertex("-1", true, 1, "0")
            .vertex("inf", true, 2, "inf")
            .build()
            .expect("basilica skeleton is valid")
    }

    /// Degree-one sphere map fixing three marked points.
    pub fn identity3() -> CoverSkeleton {
        SkeletonBuilder::sphere(1)
            .vertex("a", true, 1, "a")
            .vertex("b", true, 1, "b")
            .vertex("c", true, 1, "c")
            .build()
            .expect("identity skeleton is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    fn set(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn classical_skeletons_validate() {
        z_squared();
        rabbit();
        basilica();
        identity3();
    }

    #[test]
    fn single_simple_critical_point_violates_riemann_hurwitz() {
        let doc = SkeletonBuilder::sphere(2)
            .vertex("c", true, 2, "c")
            .vertex("p", true, 1, "p")
            .doc();
        let report = validate(&doc);
        assert!(report.violates(Invariant::RiemannHurwitz));
        assert!(report.violations[0].detail.contains("deficit 1"));
    }

    #[test]
    fn malformed_input_is_reported_not_repaired() {
        let mut doc = SkeletonBuilder::sphere(0).vertex("a", true, 0, "ghost").doc();
        doc.vertices.push(VertexDoc {
            id: "a".into(),
            marked: true,
            local_degree: 1,
        });
        let report = validate(&doc);
        for inv in [
            Invariant::PositiveDegree,
            Invariant::PositiveLocalDegree,
            Invariant::ForwardTargetExists,
            Invariant::UniqueIds,
        ] {
            assert!(report.violates(inv), "missing {inv}: {report}");
        }
        let dangling = report
            .violations
            .iter()
            .find(|v| v.invariant == Invariant::ForwardTargetExists)
            .unwrap();
        assert_eq!(dangling.vertex.as_deref(), Some("a"));
    }

    #[test]
    fn missing_forward_entry_is_reported() {
        let mut doc = z_squared().to_doc();
        doc.forward.remove("0");
        assert!(validate(&doc).violates(Invariant::ForwardTotal));
    }

    #[test]
    fn preimage_budget_and_marking_checks() {
        // Three degree-one points all mapping to `a` in degree 2.
        let doc = SkeletonBuilder::sphere(2)
            .vertex("a", true, 2, "a")
            .vertex("b", true, 1, "a")
            .vertex("c", true, 2, "d")
            .vertex("d", false, 2, "a")
            .doc();
        let report = validate(&doc);
        assert!(report.violates(Invariant::PreimageBudget), "{report}");
        assert!(report.violates(Invariant::CriticalValuesMarked), "{report}");
        assert!(report.violates(Invariant::MarkedClosed), "{report}");
    }

    #[test]
    fn branched_torus_is_rejected() {
        let doc = SkeletonBuilder::new(Surface::Torus, 2).vertex("c", true, 2, "c").doc();
        let report = validate(&doc);
        assert!(report.violates(Invariant::BranchedTorus));
    }

    #[test]
    fn unmarked_regular_vertex_is_unrepresentable() {
        let doc = SkeletonBuilder::sphere(1)
            .vertex("a", true, 1, "a")
            .vertex("b", false, 1, "a")
            .doc();
        assert!(validate(&doc).violates(Invariant::RepresentableVertex));
    }

    #[test]
    fn post_critical_sets() {
        assert_eq!(post_critical_set(&z_squared()), set(&["0", "inf"]));
        assert_eq!(post_critical_set(&rabbit()), set(&["c0", "inf", "p1", "p2"]));
        assert!(post_critical_set(&identity3()).is_empty());
    }

    #[test]
    fn extended_portraits() {
        let z2 = extended_portrait(&z_squared());
        assert_eq!(z2.edges.len(), 2);
        assert!(z2.edges.iter().all(|e| e.from == e.to && e.label == 2));

        let rabbit = extended_portrait(&rabbit());
        let labels: Vec<(&str, &str, u32)> = rabbit
            .edges
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str(), e.label))
            .collect();
        assert_eq!(
            labels,
            vec![("c0", "p1", 2), ("inf", "inf", 2), ("p1", "p2", 1), ("p2", "c0", 1)]
        );

        let id = portrait(&identity3());
        assert!(id.vertices.is_empty() && id.edges.is_empty());
    }

    #[test]
    fn topological_polynomial_witness() {
        assert_eq!(is_topological_polynomial(&z_squared()).as_deref(), Some("0"));
        assert_eq!(is_topological_polynomial(&rabbit()).as_deref(), Some("inf"));
        assert_eq!(is_topological_polynomial(&identity3()).as_deref(), Some("a"));
    }

    #[test]
    fn levy_berstein() {
        assert!(levy_berstein_criterion(&rabbit()));
        assert!(levy_berstein_criterion(&z_squared()));
        let with_free_fixed_point = SkeletonBuilder::sphere(2)
            .vertex("0", true, 2, "0")
            .vertex("inf", true, 2, "inf")
            .vertex("1", true, 1, "1")
            .build()
            .unwrap();
        assert!(!levy_berstein_criterion(&with_free_fixed_point));
    }

    #[test]
    fn doc_round_trip_is_sorted() {
        let r = rabbit();
        let doc = r.to_doc();
        let ids: Vec<&str> = doc.vertices.iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, vec!["c0", "inf", "p1", "p2"]);
        assert_eq!(CoverSkeleton::from_doc(&doc).unwrap(), r);
    }

    #[test]
    fn json_schema_parses() {
        let text = r#"{"surface":"sphere","degree":2,
            "vertices":[{"id":"0","marked":true,"local_degree":2},{"id":"inf","marked":true,"local_degree":2}],
            "forward":{"0":"0","inf":"inf"}}"#;
        assert_eq!(CoverSkeleton::from_json(text).unwrap(), z_squared());
    }
}
