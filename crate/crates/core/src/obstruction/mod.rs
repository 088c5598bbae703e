//! Labeled multicurves, caller-supplied lifting data, transition matrices and
//! the exact strong-reduction-system decision.
//!
//! Curves are opaque ids. For each curve `γ_j` the caller lists the
//! components of `f⁻¹(γ_j)` with their degrees and the curve of the
//! multicurve each one is homotopic to (or `inessential` / `other`). The
//! transition matrix has `m_ij = Σ 1/deg` over components of `f⁻¹(γ_j)`
//! homotopic to `γ_i`, so the pulled-back labels are `M · labels`.

mod constants;
mod srs;

pub use constants::{k_upper_bound, proof_constants, ConstantsError, ConstantsInput, ProofConstants};
pub use srs::{
    decide_srs_matrix, lemma_p, primitive, lemma_p_with_limit, spectral_radius_estimate, subset_obstructed,
    SrsDecision, LEMMA_P_LIMIT,
};

use crate::exact::{ExactRational, Rational};
use crate::skeleton::SkeletonDoc;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};

pub const INESSENTIAL: &str = "inessential";
pub const OTHER: &str = "other";

/// What a preimage component is homotopic to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentClass {
    Curve(String),
    Inessential,
    /// Essential but not homotopic to any curve of the multicurve.
    Other,
}

impl ComponentClass {
    pub fn curve(id: &str) -> Self {
        ComponentClass::Curve(id.to_string())
    }

    pub fn as_str(&self) -> &str {
        match self {
            ComponentClass::Curve(id) => id,
            ComponentClass::Inessential => INESSENTIAL,
            ComponentClass::Other => OTHER,
        }
    }
}

impl Serialize for ComponentClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ComponentClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            INESSENTIAL => ComponentClass::Inessential,
            OTHER => ComponentClass::Other,
            "" => return Err(D::Error::custom("empty component class")),
            _ => ComponentClass::Curve(s),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageComponent {
    pub degree: u32,
    pub class: ComponentClass,
    /// Degree of `f` on the disk bounded by the component, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk_degree: Option<u32>,
}

impl PreimageComponent {
    pub fn new(degree: u32, class: ComponentClass) -> Self {
        PreimageComponent { degree, class, disk_degree: None }
    }

    pub fn with_disk_degree(mut self, disk_degree: u32) -> Self {
        self.disk_degree = Some(disk_degree);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMulticurve {
    pub curves: Vec<String>,
    pub labels: BTreeMap<String, Rational>,
    /// child -> parent: the child lies in the interior of the parent.
    pub nesting: Option<BTreeMap<String, String>>,
}

impl LabeledMulticurve {
    /// Every curve labeled 1, no nesting.
    pub fn new<S: AsRef<str>>(curves: &[S]) -> Self {
        let curves: Vec<String> = curves.iter().map(|c| c.as_ref().to_string()).collect();
        let labels = curves.iter().map(|c| (c.clone(), Rational::one())).collect();
        LabeledMulticurve { curves, labels, nesting: None }
    }

    pub fn with_label(mut self, id: &str, label: Rational) -> Self {
        self.labels.insert(id.to_string(), label);
        self
    }

    pub fn with_nesting(mut self, child: &str, parent: &str) -> Self {
        self.nesting
            .get_or_insert_with(BTreeMap::new)
            .insert(child.to_string(), parent.to_string());
        self
    }

    /// Declares an empty nesting forest (every curve is a root).
    pub fn with_flat_nesting(mut self) -> Self {
        self.nesting.get_or_insert_with(BTreeMap::new);
        self
    }

    pub fn label(&self, id: &str) -> Rational {
        self.labels.get(id).cloned().unwrap_or_else(Rational::one)
    }

    /// Curves with a positive label, in multicurve order.
    pub fn active_curves(&self) -> Vec<String> {
        self.curves.iter().filter(|c| self.label(c).is_positive()).cloned().collect()
    }

    /// Strict ancestors of `id` in the nesting forest, nearest first.
    pub fn ancestors(&self, id: &str) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(nest) = &self.nesting {
            let mut cur = id;
            while let Some(p) = nest.get(cur) {
                if out.iter().any(|a| a == p) || p == id {
                    break;
                }
                out.push(p.clone());
                cur = p;
            }
        }
        out
    }

    /// True when `inner` lies strictly inside `outer`.
    pub fn is_inside(&self, inner: &str, outer: &str) -> bool {
        self.ancestors(inner).iter().any(|a| a == outer)
    }

    pub fn validate(&self) -> Result<(), ObstructionError> {
        let mut seen = BTreeSet::new();
        for c in &self.curves {
            if c == INESSENTIAL || c == OTHER || c.is_empty() {
                return Err(ObstructionError::ReservedCurveId(c.clone()));
            }
            if !seen.insert(c.as_str()) {
                return Err(ObstructionError::DuplicateCurve(c.clone()));
            }
        }
        for (id, label) in &self.labels {
            if !seen.contains(id.as_str()) {
                return Err(ObstructionError::UnknownCurve { context: "labels".into(), id: id.clone() });
            }
            if label.is_negative() {
                return Err(ObstructionError::NegativeLabel(id.clone()));
            }
        }
        if let Some(nest) = &self.nesting {
            for (child, parent) in nest {
                for id in [child, parent] {
                    if !seen.contains(id.as_str()) {
                        return Err(ObstructionError::UnknownCurve { context: "nesting".into(), id: id.clone() });
                    }
                }
            }
            for start in nest.keys() {
                let mut cur = start.as_str();
                let mut steps = 0;
                while let Some(p) = nest.get(cur) {
                    steps += 1;
                    if p == start || steps > nest.len() {
                        return Err(ObstructionError::NestingCycle(start.clone()));
                    }
                    cur = p;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LiftingData {
    pub components: BTreeMap<String, Vec<PreimageComponent>>,
}

impl LiftingData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, curve: &str, component: PreimageComponent) -> Self {
        self.components.entry(curve.to_string()).or_default().push(component);
        self
    }

    /// Appends inessential degree-1 components to every listed curve until its
    /// preimage degrees sum to `degree`.
    pub fn padded(mut self, degree: u32) -> Self {
        for comps in self.components.values_mut() {
            let sum: u32 = comps.iter().map(|c| c.degree).sum();
            for _ in sum..degree {
                comps.push(PreimageComponent::new(1, ComponentClass::Inessential));
            }
        }
        self
    }

    pub fn of(&self, curve: &str) -> &[PreimageComponent] {
        self.components.get(curve).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error("curve id {0:?} appears twice")]
    DuplicateCurve(String),
    #[error("curve id {0:?} is reserved or empty")]
    ReservedCurveId(String),
    #[error("label of curve {0:?} is negative")]
    NegativeLabel(String),
    #[error("{context} refers to unknown curve {id:?}")]
    UnknownCurve { context: String, id: String },
    #[error("nesting forest has a cycle through {0:?}")]
    NestingCycle(String),
    #[error("no lifting data for curve {0:?}")]
    MissingLifting(String),
    #[error("a preimage component of {0:?} has degree 0")]
    ZeroDegree(String),
    #[error("preimage degrees of {curve:?} sum to {sum}, expected {degree}")]
    DegreePartition { curve: String, sum: u32, degree: u32 },
    #[error("the multicurve is empty, so the cover degree cannot be inferred")]
    UnknownDegree,
}

/// A validated multicurve with its lifting data, restricted to positively
/// labeled curves. Components classed as a dropped curve count as `other`.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub curves: Vec<String>,
    pub labels: Vec<Rational>,
    pub degree: u32,
    /// `components[j]` lists `(degree, class index)` for `f⁻¹(curves[j])`;
    /// `None` marks an inessential or other component.
    pub components: Vec<Vec<(u32, Option<usize>, ComponentClass)>>,
}

impl Prepared {
    pub fn new(
        multicurve: &LabeledMulticurve,
        lifting: &LiftingData,
        degree: Option<u32>,
    ) -> Result<Self, ObstructionError> {
        multicurve.validate()?;
        let all: BTreeSet<&str> = multicurve.curves.iter().map(String::as_str).collect();
        for key in lifting.components.keys() {
            if !all.contains(key.as_str()) {
                return Err(ObstructionError::UnknownCurve { context: "lifting".into(), id: key.clone() });
            }
        }
        for c in &multicurve.curves {
            let comps = lifting
                .components
                .get(c)
                .ok_or_else(|| ObstructionError::MissingLifting(c.clone()))?;
            for comp in comps {
                if comp.degree == 0 {
                    return Err(ObstructionError::ZeroDegree(c.clone()));
                }
                if let ComponentClass::Curve(id) = &comp.class {
                    if !all.contains(id.as_str()) {
                        return Err(ObstructionError::UnknownCurve {
                            context: format!("lifting of {c:?}"),
                            id: id.clone(),
                        });
                    }
                }
            }
        }
        let degree = match degree {
            Some(d) => d,
            None => {
                let first = multicurve.curves.first().ok_or(ObstructionError::UnknownDegree)?;
                lifting.of(first).iter().map(|c| c.degree).sum()
            }
        };
        for c in &multicurve.curves {
            let sum: u32 = lifting.of(c).iter().map(|x| x.degree).sum();
            if sum != degree {
                return Err(ObstructionError::DegreePartition { curve: c.clone(), sum, degree });
            }
        }

        let curves = multicurve.active_curves();
        let index: BTreeMap<&str, usize> =
            curves.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let labels = curves.iter().map(|c| multicurve.label(c)).collect();
        let components = curves
            .iter()
            .map(|c| {
                lifting
                    .of(c)
                    .iter()
                    .map(|comp| match &comp.class {
                        ComponentClass::Curve(id) => match index.get(id.as_str()) {
                            Some(&i) => (comp.degree, Some(i), comp.class.clone()),
                            None => (comp.degree, None, ComponentClass::Other),
                        },
                        other => (comp.degree, None, other.clone()),
                    })
                    .collect()
            })
            .collect();
        Ok(Prepared { curves, labels, degree, components })
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.curves.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, comps) in self.components.iter().enumerate() {
            for &(deg, class, _) in comps {
                if let Some(i) = class {
                    m[i][j] += Rational::new(1.into(), deg.into());
                }
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub curves: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

impl TransitionMatrix {
    pub fn entry(&self, row: &str, col: &str) -> Option<&Rational> {
        let i = self.curves.iter().position(|c| c == row)?;
        let j = self.curves.iter().position(|c| c == col)?;
        Some(&self.entries[i][j])
    }
}

impl Serialize for TransitionMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            curves: &'a [String],
            entries: Vec<Vec<ExactRational>>,
        }
        Repr {
            curves: &self.curves,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().cloned().map(ExactRational).collect())
                .collect(),
        }
        .serialize(s)
    }
}

pub fn transition_matrix(
    multicurve: &LabeledMulticurve,
    lifting: &LiftingData,
    degree: u32,
) -> Result<TransitionMatrix, ObstructionError> {
    let prepared = Prepared::new(multicurve, lifting, Some(degree))?;
    Ok(TransitionMatrix { entries: prepared.matrix(), curves: prepared.curves })
}

/// Every curve is homotopic to some component of `f⁻¹(Γ)`.
pub fn is_f_stable(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Result<bool, ObstructionError> {
    let p = Prepared::new(multicurve, lifting, None)?;
    let mut hit = vec![false; p.curves.len()];
    for comps in &p.components {
        for &(_, class, _) in comps {
            if let Some(i) = class {
                hit[i] = true;
            }
        }
    }
    Ok(hit.into_iter().all(|h| h))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub srs_exists: bool,
    pub witness_labels: Option<BTreeMap<String, ExactRational>>,
    pub witness_support: Vec<String>,
    pub spectral_radius_estimate: f64,
    pub lemma_p: Option<u32>,
    /// Whether the supplied labels themselves satisfy `M·labels ≥ labels`.
    pub labels_are_srs: bool,
    pub matrix: TransitionMatrix,
}

pub fn decide_srs(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Result<ObstructionReport, ObstructionError> {
    if multicurve.curves.is_empty() {
        return Ok(ObstructionReport {
            srs_exists: false,
            witness_labels: None,
            witness_support: Vec::new(),
            spectral_radius_estimate: 0.0,
            lemma_p: Some(1),
            labels_are_srs: false,
            matrix: TransitionMatrix { curves: Vec::new(), entries: Vec::new() },
        });
    }
    let p = Prepared::new(multicurve, lifting, None)?;
    let m = p.matrix();
    let decision = decide_srs_matrix(&m);
    let witness_labels = decision.witness.as_ref().map(|w| {
        p.curves
            .iter()
            .zip(w)
            .map(|(c, x)| (c.clone(), ExactRational(x.clone())))
            .collect()
    });
    let witness_support = decision
        .witness
        .as_ref()
        .map(|w| {
            p.curves
                .iter()
                .zip(w)
                .filter(|(_, x)| x.is_positive())
                .map(|(c, _)| c.clone())
                .collect()
        })
        .unwrap_or_default();
    let labels_are_srs = !p.labels.is_empty() && dominates(&m, &p.labels);
    Ok(ObstructionReport {
        srs_exists: decision.exists,
        witness_labels,
        witness_support,
        spectral_radius_estimate: decision.spectral_radius_estimate,
        lemma_p: decision.lemma_p,
        labels_are_srs,
        matrix: TransitionMatrix { curves: p.curves, entries: m },
    })
}

/// `M v ≥ v` componentwise.
pub fn dominates(m: &[Vec<Rational>], v: &[Rational]) -> bool {
    m.iter().zip(v).all(|(row, vi)| {
        let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
        s >= *vi
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PulledComponent {
    pub from: String,
    pub class: ComponentClass,
    pub degree: u32,
    pub label: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pullback {
    /// Labels of `f*(Γ)` on the homotopy classes of `Γ`.
    pub labels: BTreeMap<String, ExactRational>,
    /// Inessential and other components, each with label `label(from)/degree`.
    pub discarded: Vec<PulledComponent>,
}

impl Pullback {
    pub fn label(&self, id: &str) -> Option<&Rational> {
        self.labels.get(id).map(|x| &x.0)
    }

    pub fn as_multicurve(&self, template: &LabeledMulticurve) -> LabeledMulticurve {
        LabeledMulticurve {
            curves: template.curves.clone(),
            labels: template
                .curves
                .iter()
                .map(|c| (c.clone(), self.labels.get(c).map(|x| x.0.clone()).unwrap_or_else(Rational::zero)))
                .collect(),
            nesting: template.nesting.clone(),
        }
    }
}

pub fn pullback_labels(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Result<Pullback, ObstructionError> {
    let p = Prepared::new(multicurve, lifting, None)?;
    let m = p.matrix();
    let labels = p
        .curves
        .iter()
        .zip(&m)
        .map(|(c, row)| {
            let s: Rational = row.iter().zip(&p.labels).map(|(a, b)| a * b).sum();
            (c.clone(), ExactRational(s))
        })
        .collect();
    let mut discarded = Vec::new();
    for (j, comps) in p.components.iter().enumerate() {
        for (deg, class, kind) in comps {
            if class.is_none() {
                discarded.push(PulledComponent {
                    from: p.curves[j].clone(),
                    class: kind.clone(),
                    degree: *deg,
                    label: ExactRational(&p.labels[j] / Rational::from_integer((*deg).into())),
                });
            }
        }
    }
    Ok(Pullback { labels, discarded })
}

/// JSON document shared by the obstruction and Levy commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionDoc {
    pub curves: Vec<String>,
    #[serde(default)]
    pub labels: BTreeMap<String, ExactRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nesting: Option<BTreeMap<String, String>>,
    pub lifting: LiftingData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skeleton: Option<SkeletonDoc>,
}

impl ObstructionDoc {
    pub fn multicurve(&self) -> LabeledMulticurve {
        let mut mc = LabeledMulticurve::new(&self.curves);
        for (id, label) in &self.labels {
            mc.labels.insert(id.clone(), label.0.clone());
        }
        mc.nesting = self.nesting.clone();
        mc
    }

    pub fn from_parts(multicurve: &LabeledMulticurve, lifting: &LiftingData) -> Self {
        ObstructionDoc {
            curves: multicurve.curves.clone(),
            labels: multicurve
                .labels
                .iter()
                .map(|(k, v)| (k.clone(), ExactRational(v.clone())))
                .collect(),
            nesting: multicurve.nesting.clone(),
            lifting: lifting.clone(),
            degree: None,
            skeleton: None,
        }
    }
}
