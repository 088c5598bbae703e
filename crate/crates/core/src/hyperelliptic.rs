//! Quotients of linear torus maps by the elliptic involution `ι = −Id`.
//!
//! An affine map `v ↦ Mv + t` with `2t ∈ Z²` commutes with `ι`, so it
//! descends to a sphere cover marked at the images of the four fixed points
//! of `ι` (the Weierstrass points). Over each Weierstrass point `w'` there are
//! `deg` torus preimages. Those of them that are Weierstrass points become
//! unbranched marked preimages; the rest come in `ι`-pairs, and each pair
//! becomes one simple critical point of the quotient map.

use crate::obstruction::{ComponentClass, LabeledMulticurve, LiftingData, ObstructionDoc, PreimageComponent};
use crate::skeleton::{CoverSkeleton, SkeletonBuilder, SkeletonDoc, ValidationReport};
use crate::torus::{classify, construct_srs, TorusError, TorusMapSpec, TorusVerdict};
use serde::Serialize;
use std::collections::BTreeMap;

/// Weierstrass points as half-unit coordinates, with their vertex ids.
pub const WEIERSTRASS: [(&str, [u8; 2]); 4] = [("w1", [0, 0]), ("w2", [1, 0]), ("w3", [0, 1]), ("w4", [1, 1])];

fn weierstrass_index(bits: [u8; 2]) -> usize {
    WEIERSTRASS.iter().position(|(_, b)| *b == bits).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassMap {
    pub images: BTreeMap<String, String>,
    /// True exactly when `det M` is odd.
    pub is_permutation: bool,
}

impl WeierstrassMap {
    pub fn image_index(&self, i: usize) -> usize {
        let target = &self.images[WEIERSTRASS[i].0];
        WEIERSTRASS.iter().position(|(id, _)| id == target).unwrap()
    }

    /// `k_{w'}`: how many Weierstrass points land on each one.
    pub fn hit_counts(&self) -> [u32; 4] {
        let mut counts = [0; 4];
        for i in 0..4 {
            counts[self.image_index(i)] += 1;
        }
        counts
    }
}

/// The action of `v ↦ Mv + t` on `{0, 1/2}²` modulo `Z²`.
pub fn weierstrass_permutation(spec: &TorusMapSpec) -> Result<WeierstrassMap, TorusError> {
    spec.validate()?;
    let [[a, b], [c, d]] = spec.matrix;
    let t = spec.translation.unwrap_or([0, 0]);
    let mut images = BTreeMap::new();
    let mut seen = [false; 4];
    for (id, [h1, h2]) in WEIERSTRASS {
        let (h1, h2) = (h1 as i64, h2 as i64);
        let x = (a * h1 + b * h2 + t[0] as i64).rem_euclid(2) as u8;
        let y = (c * h1 + d * h2 + t[1] as i64).rem_euclid(2) as u8;
        let j = weierstrass_index([x, y]);
        seen[j] = true;
        images.insert(id.to_string(), WEIERSTRASS[j].0.to_string());
    }
    Ok(WeierstrassMap { images, is_permutation: seen.iter().all(|&s| s) })
}

#[derive(Debug, thiserror::Error)]
pub enum HyperellipticError {
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("descended skeleton failed validation (internal error): {0}")]
    Internal(ValidationReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalSphereMap {
    #[serde(serialize_with = "serialize_skeleton")]
    pub skeleton: CoverSkeleton,
    pub permutation: WeierstrassMap,
    /// Degree-one descents are sphere homeomorphisms, not exceptional maps.
    pub homeomorphism: bool,
    pub torus_map: TorusMapSpec,
    pub torus_verdict: TorusVerdict,
}

fn serialize_skeleton<S: serde::Serializer>(skeleton: &CoverSkeleton, s: S) -> Result<S::Ok, S::Error> {
    skeleton.to_doc().serialize(s)
}

impl ExceptionalSphereMap {
    pub fn doc(&self) -> SkeletonDoc {
        self.skeleton.to_doc()
    }
}

pub fn descend(spec: &TorusMapSpec) -> Result<ExceptionalSphereMap, HyperellipticError> {
    let verdict = classify(spec)?;
    let permutation = weierstrass_permutation(spec)?;
    let degree = spec.degree() as u32;
    let mut builder = SkeletonBuilder::sphere(degree as i64);
    for (i, (id, _)) in WEIERSTRASS.iter().enumerate() {
        builder = builder.vertex(id, true, 1, WEIERSTRASS[permutation.image_index(i)].0);
    }
    for (j, k) in permutation.hit_counts().into_iter().enumerate() {
        let target = WEIERSTRASS[j].0;
        for n in 0..(degree - k) / 2 {
            builder = builder.vertex(&format!("c-{target}-{n}"), false, 2, target);
        }
    }
    let skeleton = builder.build().map_err(HyperellipticError::Internal)?;
    Ok(ExceptionalSphereMap {
        skeleton,
        permutation,
        homeomorphism: degree == 1,
        torus_map: *spec,
        torus_verdict: verdict,
    })
}

#[derive(Debug, Clone)]
pub struct DescendedSrs {
    pub multicurve: LabeledMulticurve,
    pub lifting: LiftingData,
    pub degree: u32,
}

/// Pushes the invariant-slope reduction system of a torus map down to the
/// 4-marked sphere. The curve and its `ι`-image are identified, so the
/// sphere curve is covered by the images of the same `deg/|μ|` components,
/// each still of degree `|μ|`, and the transition entry stays `deg/μ²`.
pub fn descend_srs(spec: &TorusMapSpec) -> Result<DescendedSrs, TorusError> {
    let srs = construct_srs(spec)?;
    let mut lifting = LiftingData::new();
    for _ in 0..srs.components {
        lifting = lifting.with(&srs.curve, PreimageComponent::new(srs.component_degree, ComponentClass::curve(&srs.curve)));
    }
    Ok(DescendedSrs {
        multicurve: LabeledMulticurve::new(&[srs.curve.as_str()]),
        lifting,
        degree: spec.degree() as u32,
    })
}

impl DescendedSrs {
    /// The obstruction input document for the descended system.
    pub fn doc(&self) -> ObstructionDoc {
        let mut doc = ObstructionDoc::from_parts(&self.multicurve, &self.lifting);
        doc.degree = Some(self.degree);
        doc
    }
}
