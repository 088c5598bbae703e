//! Stable and infinitely stable marked points.
//!
//! `p` is stable when every geometric preimage of `p` is a skeleton vertex,
//! i.e. the number of skeleton preimages equals the preimage budget. A stable
//! point is infinitely stable when each of its non-critical preimages is again
//! infinitely stable: preimages reached through a critical point are critical
//! for every deeper iterate. The infinitely stable set is therefore the
//! greatest fixed point of that condition and is found by peeling.

use crate::orbifold::is_exceptional;
use crate::skeleton::{CoverSkeleton, Surface};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PreimageBudget {
    /// Distinct geometric preimages.
    pub expected: u32,
    /// Preimages present in the skeleton.
    pub accounted: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: BTreeSet<String>,
    pub infinitely_stable: BTreeSet<String>,
    pub budgets: BTreeMap<String, PreimageBudget>,
    /// Peeling rounds that removed at least one point.
    #[serde(skip)]
    pub rounds: usize,
}

fn budget(skeleton: &CoverSkeleton, p: usize) -> PreimageBudget {
    PreimageBudget {
        expected: skeleton.preimage_count(p),
        accounted: skeleton.preimages(p).len() as u32,
    }
}

fn stable_indices(skeleton: &CoverSkeleton) -> BTreeSet<usize> {
    skeleton
        .marked_indices()
        .filter(|&p| {
            let b = budget(skeleton, p);
            b.expected == b.accounted
        })
        .collect()
}

pub fn stable_points(skeleton: &CoverSkeleton) -> BTreeSet<String> {
    skeleton.ids(stable_indices(skeleton))
}

pub fn infinitely_stable_points(skeleton: &CoverSkeleton) -> StabilityReport {
    let stable = stable_indices(skeleton);
    let mut q = stable.clone();
    let mut rounds = 0;
    loop {
        let violating: Vec<usize> = q
            .iter()
            .copied()
            .filter(|&p| {
                skeleton
                    .preimages(p)
                    .into_iter()
                    .any(|w| !skeleton.is_critical(w) && !q.contains(&w))
            })
            .collect();
        if violating.is_empty() {
            break;
        }
        rounds += 1;
        for p in violating {
            q.remove(&p);
        }
    }
    let budgets = skeleton
        .marked_indices()
        .map(|p| (skeleton.id(p).to_string(), budget(skeleton, p)))
        .collect();
    StabilityReport {
        stable: skeleton.ids(stable),
        infinitely_stable: skeleton.ids(q),
        budgets,
        rounds,
    }
}

/// Outcome of checking that a non-exceptional sphere cover of degree above
/// one has at most three infinitely stable points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableCountVerdict {
    pub infinitely_stable: usize,
    pub exceptional: bool,
    /// False only if a non-exceptional cover has four or more infinitely
    /// stable points, which would contradict the counting argument.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("the stable-point bound applies to sphere covers only")]
    NotSphere,
    #[error("the stable-point bound needs degree > 1, got {0}")]
    DegreeOne(u32),
}

pub fn check_prop_stable(skeleton: &CoverSkeleton) -> Result<StableCountVerdict, StabilityError> {
    if skeleton.surface() != Surface::Sphere {
        return Err(StabilityError::NotSphere);
    }
    if skeleton.degree() < 2 {
        return Err(StabilityError::DegreeOne(skeleton.degree()));
    }
    let count = infinitely_stable_points(skeleton).infinitely_stable.len();
    let exceptional = is_exceptional(skeleton);
    Ok(StableCountVerdict {
        infinitely_stable: count,
        exceptional,
        consistent: exceptional || count < 4,
    })
}
