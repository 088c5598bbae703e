//! Orbifold signature of a dynamical branched cover.
//!
//! The label of a marked point `p` is the lcm of the local degrees of `f^k`
//! at critical points `c` with `f^k(c) = p`, taken over all `k >= 1`. Since
//! the forward map on the skeleton has out-degree one, every critical orbit is
//! eventually periodic. A label is infinite exactly when `p` lies on the
//! periodic part of some critical orbit whose cycle has local-degree product
//! greater than one; all other contributions are finitely many and are
//! collected by walking each orbit once around its cycle.

use crate::exact::{ExactRational, Rational};
use crate::skeleton::{CoverSkeleton, Surface};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Element of the extended naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(BigUint),
    Infinite,
}

impl Label {
    pub fn one() -> Self {
        Label::Finite(BigUint::one())
    }

    pub fn finite(n: u64) -> Self {
        Label::Finite(BigUint::from(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Label::Infinite)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Label::Finite(n) if n.is_one())
    }

    pub fn lcm(&self, other: &Label) -> Label {
        match (self, other) {
            (Label::Finite(a), Label::Finite(b)) => Label::Finite(a.lcm(b)),
            _ => Label::Infinite,
        }
    }

    /// `1/label` with `1/inf = 0`.
    pub fn reciprocal(&self) -> Rational {
        match self {
            Label::Finite(n) => Rational::new(1.into(), num_bigint::BigInt::from(n.clone())),
            Label::Infinite => Rational::zero(),
        }
    }

    /// Divisibility with infinity divisible by everything.
    pub fn divides(&self, other: &Label) -> bool {
        match (self, other) {
            (_, Label::Infinite) => true,
            (Label::Infinite, Label::Finite(_)) => false,
            (Label::Finite(a), Label::Finite(b)) => b.is_multiple_of(a),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(n) => write!(f, "{n}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(n) => match u64::try_from(n) {
                Ok(small) => serializer.serialize_u64(small),
                Err(_) => serializer.serialize_str(&n.to_string()),
            },
            Label::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbifoldType {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl OrbifoldType {
    fn of(euler: &Rational) -> Self {
        if euler.is_positive() {
            OrbifoldType::Spherical
        } else if euler.is_zero() {
            OrbifoldType::Euclidean
        } else {
            OrbifoldType::Hyperbolic
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldSignature {
    /// Label of every marked vertex, keyed by id.
    pub labels: BTreeMap<String, Label>,
    pub euler: ExactRational,
    #[serde(rename = "type")]
    pub kind: OrbifoldType,
}

impl OrbifoldSignature {
    pub fn label(&self, id: &str) -> Option<&Label> {
        self.labels.get(id)
    }

    pub fn euler(&self) -> &Rational {
        &self.euler.0
    }

    /// Number of labels different from one.
    pub fn cone_points(&self) -> usize {
        self.labels.values().filter(|l| !l.is_one()).count()
    }
}

/// Label of every skeleton vertex reached by a critical orbit.
pub(crate) fn vertex_labels(skeleton: &CoverSkeleton) -> Vec<Label> {
    let n = skeleton.len();
    let mut labels = vec![Label::one(); n];
    for c in skeleton.critical_indices() {
        // Step k holds (vertex f^k(c), local degree of f^k at c).
        let mut first_visit: HashMap<usize, usize> = HashMap::new();
        let mut path: Vec<(usize, BigUint)> = Vec::new();
        let mut product = BigUint::from(skeleton.local_degree(c));
        let mut v = skeleton.forward_index(c);
        loop {
            if let Some(&start) = first_visit.get(&v) {
                let cycle_product = &product / &path[start].1;
                let cycle = &path[start..];
                if cycle_product > BigUint::one() {
                    for (w, _) in cycle {
                        labels[*w] = Label::Infinite;
                    }
                }
                break;
            }
            first_visit.insert(v, path.len());
            labels[v] = labels[v].lcm(&Label::Finite(product.clone()));
            path.push((v, product.clone()));
            product *= BigUint::from(skeleton.local_degree(v));
            v = skeleton.forward_index(v);
        }
    }
    labels
}

pub fn orbifold_signature(skeleton: &CoverSkeleton) -> OrbifoldSignature {
    let all = vertex_labels(skeleton);
    let mut euler = Rational::from_integer(skeleton.surface().euler_characteristic().into());
    let mut labels = BTreeMap::new();
    for p in skeleton.marked_indices() {
        euler += all[p].reciprocal() - Rational::one();
        labels.insert(skeleton.id(p).to_string(), all[p].clone());
    }
    let kind = OrbifoldType::of(&euler);
    OrbifoldSignature {
        labels,
        euler: ExactRational(euler),
        kind,
    }
}

/// Torus covers of degree above one, and sphere covers with the
/// (2,2,2,2)-orbifold.
pub fn is_exceptional(skeleton: &CoverSkeleton) -> bool {
    match skeleton.surface() {
        Surface::Torus => skeleton.degree() > 1,
        Surface::Sphere => is_2222(skeleton, &orbifold_signature(skeleton)),
    }
}

fn is_2222(skeleton: &CoverSkeleton, signature: &OrbifoldSignature) -> bool {
    let post_critical = skeleton.post_critical_indices();
    let two = Label::finite(2);
    post_critical.len() == 4
        && post_critical
            .iter()
            .all(|&p| signature.labels[skeleton.id(p)] == two)
        && signature.cone_points() == 4
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusLift {
    pub lifts: bool,
    /// Cone points where the local degree is not 1. Always empty for a valid
    /// (2,2,2,2) skeleton; anything here is a contradiction in the input model.
    pub branched_cone_points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("torus lifting is only defined for sphere covers")]
    NotSphere,
}

/// Whether the cover lifts through the hyperelliptic quotient to a torus map.
pub fn lifts_to_torus(skeleton: &CoverSkeleton) -> Result<TorusLift, OrbifoldError> {
    if skeleton.surface() != Surface::Sphere {
        return Err(OrbifoldError::NotSphere);
    }
    let signature = orbifold_signature(skeleton);
    if !is_2222(skeleton, &signature) {
        return Ok(TorusLift {
            lifts: false,
            branched_cone_points: Vec::new(),
        });
    }
    let branched_cone_points = skeleton
        .post_critical_indices()
        .into_iter()
        .filter(|&p| skeleton.local_degree(p) != 1)
        .map(|p| skeleton.id(p).to_string())
        .collect();
    Ok(TorusLift {
        lifts: true,
        branched_cone_points,
    })
}
