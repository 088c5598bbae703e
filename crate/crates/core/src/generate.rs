//! Seeded random instances: sphere skeletons, lifting data, and nested
//! multicurves whose lifting data respects the way polynomial preimages nest.

use crate::obstruction::{decide_srs, ComponentClass, LabeledMulticurve, LiftingData, PreimageComponent};
use crate::skeleton::{CoverSkeleton, SkeletonBuilder};
use crate::torus::TorusMapSpec;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkeletonParams {
    pub degree: u32,
    pub max_marked: usize,
    /// Adds a totally ramified fixed vertex `inf`.
    pub polynomial: bool,
}

impl SkeletonParams {
    pub fn new(degree: u32, max_marked: usize) -> Self {
        SkeletonParams { degree, max_marked, polynomial: false }
    }

    pub fn polynomial(mut self) -> Self {
        self.polynomial = true;
        self
    }
}

/// Splits `total` into parts in `1..=max_part`.
fn random_partition<R: Rng>(rng: &mut R, total: u32, max_part: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let p = rng.gen_range(1..=left.min(max_part));
        parts.push(p);
        left -= p;
    }
    parts
}

/// Draws until a valid skeleton comes out. Critical points are simple or
/// higher order at random, critical points are marked with probability 1/2,
/// and images are assigned uniformly among marked vertices that still have
/// preimage budget.
pub fn random_sphere_skeleton<R: Rng>(rng: &mut R, params: SkeletonParams) -> CoverSkeleton {
    let d = params.degree.max(2);
    let max_marked = params.max_marked.max(if params.polynomial { 2 } else { 1 });
    loop {
        if let Some(s) = try_skeleton(rng, d, max_marked, params.polynomial) {
            return s;
        }
    }
}

fn try_skeleton<R: Rng>(rng: &mut R, d: u32, max_marked: usize, polynomial: bool) -> Option<CoverSkeleton> {
    // (id, marked, local degree)
    let mut vertices: Vec<(String, bool, u32)> = Vec::new();
    let mut deficiency = 2 * d - 2;
    if polynomial {
        vertices.push(("inf".into(), true, d));
        deficiency -= d - 1;
    }
    for (i, part) in random_partition(rng, deficiency, d - 1).into_iter().enumerate() {
        vertices.push((format!("c{i}"), false, part + 1));
    }
    let mut marked = usize::from(polynomial);
    for v in vertices.iter_mut().skip(usize::from(polynomial)) {
        if marked < max_marked && rng.gen_bool(0.5) {
            v.1 = true;
            marked += 1;
        }
    }
    let finite_marked = marked - usize::from(polynomial);
    let floor = usize::from(finite_marked == 0);
    if marked + floor > max_marked {
        return None;
    }
    let extra = rng.gen_range(floor..=max_marked - marked);
    for i in 0..extra {
        vertices.push((format!("p{i}"), true, 1));
    }

    let targets: Vec<usize> = (0..vertices.len()).filter(|&i| vertices[i].1).collect();
    let mut budget: BTreeMap<usize, u32> = targets.iter().map(|&t| (t, d)).collect();
    let mut images = vec![usize::MAX; vertices.len()];
    if polynomial {
        images[0] = 0;
        budget.insert(0, 0);
    }
    let mut order: Vec<usize> = (usize::from(polynomial)..vertices.len()).collect();
    order.shuffle(rng);
    order.sort_by_key(|&i| std::cmp::Reverse(vertices[i].2));
    for i in order {
        let need = vertices[i].2;
        let open: Vec<usize> = targets.iter().copied().filter(|t| budget[t] >= need).collect();
        let &t = open.choose(rng)?;
        *budget.get_mut(&t).unwrap() -= need;
        images[i] = t;
    }
    let mut builder = SkeletonBuilder::sphere(d as i64);
    for (i, (id, m, deg)) in vertices.iter().enumerate() {
        builder = builder.vertex(id, *m, *deg as i64, &vertices[images[i]].0);
    }
    builder.build().ok()
}

/// A random affine torus map with `2 ≤ det ≤ max_det` and small entries.
pub fn random_torus_map<R: Rng>(rng: &mut R, max_det: i64) -> TorusMapSpec {
    loop {
        let mut e = || rng.gen_range(-5i64..=5);
        let spec = TorusMapSpec::new(e(), e(), e(), e());
        let det = spec.degree();
        if (2..=max_det as i128).contains(&det) {
            return spec.with_translation(rng.gen_range(0..=1), rng.gen_range(0..=1));
        }
    }
}

/// A random Anosov map with `1 ≤ det ≤ max_det`.
pub fn random_anosov<R: Rng>(rng: &mut R, max_det: i64) -> TorusMapSpec {
    loop {
        let mut e = || rng.gen_range(-6i64..=6);
        let spec = TorusMapSpec::new(e(), e(), e(), e());
        if (1..=max_det as i128).contains(&spec.degree()) && spec.discriminant() > 0 {
            return spec;
        }
    }
}

#[derive(Debug, Clone)]
pub struct LiftingInstance {
    pub multicurve: LabeledMulticurve,
    pub lifting: LiftingData,
    pub degree: u32,
}

fn curve_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

/// Unconstrained lifting data on `1..=max_curves` flat curves.
pub fn random_lifting_instance<R: Rng>(rng: &mut R, max_curves: usize) -> LiftingInstance {
    let n = rng.gen_range(1..=max_curves.max(1));
    let d = rng.gen_range(2..=5u32);
    let ids = curve_ids(n);
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut mc = LabeledMulticurve::new(&refs);
    for id in &ids {
        mc = mc.with_label(id, crate::exact::int(rng.gen_range(1..=3)));
    }
    let mut lifting = LiftingData::new();
    for id in &ids {
        let mut left = d;
        while left > 0 {
            let deg = rng.gen_range(1..=left);
            left -= deg;
            let roll: f64 = rng.gen();
            let class = if roll < 0.6 {
                ComponentClass::curve(ids.choose(rng).unwrap())
            } else if roll < 0.75 {
                ComponentClass::Other
            } else {
                ComponentClass::Inessential
            };
            lifting = lifting.with(id, PreimageComponent::new(deg, class));
        }
    }
    LiftingInstance { multicurve: mc, lifting, degree: d }
}

/// An obstructed nested instance together with a polynomial skeleton of the
/// same degree.
#[derive(Debug, Clone)]
pub struct LevyInstance {
    pub multicurve: LabeledMulticurve,
    pub lifting: LiftingData,
    pub skeleton: CoverSkeleton,
}

/// Checks the nesting rules polynomial preimages obey. Interiors map onto
/// interiors, so for edges `γ→δ` and `φ→ε` with `ε` strictly inside `δ`,
/// `φ` is strictly inside `γ`. Preimages of un-nested curves are un-nested
/// and pairwise distinct, and so are the preimage components of one curve.
pub fn polynomial_consistent(mc: &LabeledMulticurve, lifting: &LiftingData) -> bool {
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for (from, comps) in &lifting.components {
        for c in comps {
            if let ComponentClass::Curve(to) = &c.class {
                edges.push((from, to));
            }
        }
    }
    let strictly_inside = |a: &str, b: &str| a != b && mc.is_inside(a, b);
    let unnested = |a: &str, b: &str| a != b && !mc.is_inside(a, b) && !mc.is_inside(b, a);
    for (i, &(g, dl)) in edges.iter().enumerate() {
        for (j, &(phi, eps)) in edges.iter().enumerate() {
            if strictly_inside(eps, dl) && !strictly_inside(phi, g) {
                return false;
            }
            if i != j && (g == phi || unnested(g, phi)) && !unnested(dl, eps) {
                return false;
            }
        }
    }
    true
}

fn random_nested_instance<R: Rng>(rng: &mut R, max_curves: usize, d: u32) -> (LabeledMulticurve, LiftingData) {
    let n = rng.gen_range(1..=max_curves.max(1));
    let ids = curve_ids(n);
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut mc = LabeledMulticurve::new(&refs).with_flat_nesting();
    for i in 1..n {
        if rng.gen_bool(0.4) {
            mc = mc.with_nesting(&ids[i], &ids[rng.gen_range(0..i)]);
        }
    }
    // Following one random cyclic order for the first component of each
    // curve makes longer cycles common.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut successor = ids.clone();
    for w in 0..n {
        successor[order[w]] = ids[order[(w + 1) % n]].clone();
    }
    let mut lifting = LiftingData::new();
    for (k, id) in ids.iter().enumerate() {
        let mut left = d;
        let essential = rng.gen_range(0..=2usize);
        for e in 0..essential {
            if left == 0 {
                break;
            }
            let deg = if rng.gen_bool(0.6) { 1 } else { rng.gen_range(1..=left) };
            left -= deg;
            let class = if e == 0 && rng.gen_bool(0.8) {
                ComponentClass::curve(&successor[k])
            } else if rng.gen_bool(0.85) {
                ComponentClass::curve(ids.choose(rng).unwrap())
            } else {
                ComponentClass::Other
            };
            lifting = lifting.with(id, PreimageComponent::new(deg, class).with_disk_degree(deg));
        }
        while left > 0 {
            lifting = lifting.with(id, PreimageComponent::new(1, ComponentClass::Inessential).with_disk_degree(1));
            left -= 1;
        }
    }
    (mc, lifting)
}

/// Rejection-samples nested instances until one satisfies
/// [`polynomial_consistent`] and has a strong reduction system.
pub fn random_levy_instance<R: Rng>(rng: &mut R, max_curves: usize) -> LevyInstance {
    let d = rng.gen_range(2..=5u32);
    loop {
        let (mc, lifting) = random_nested_instance(rng, max_curves, d);
        if !polynomial_consistent(&mc, &lifting) {
            continue;
        }
        match decide_srs(&mc, &lifting) {
            Ok(r) if r.srs_exists => {
                let skeleton = random_sphere_skeleton(rng, SkeletonParams::new(d, 6).polynomial());
                return LevyInstance { multicurve: mc, lifting, skeleton };
            }
            _ => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::is_topological_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn skeletons_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=5 {
            for _ in 0..200 {
                let s = random_sphere_skeleton(&mut rng, SkeletonParams::new(d, 8));
                assert_eq!(s.degree(), d);
                assert!(s.marked_count() <= 8);
            }
        }
    }

    #[test]
    fn polynomial_skeletons_are_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 2..=5 {
            for _ in 0..100 {
                let s = random_sphere_skeleton(&mut rng, SkeletonParams::new(d, 6).polynomial());
                assert!(is_topological_polynomial(&s).is_some());
                assert_eq!(s.forward("inf"), Some("inf"));
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_sphere_skeleton(&mut ChaCha8Rng::seed_from_u64(3), SkeletonParams::new(4, 8));
        let b = random_sphere_skeleton(&mut ChaCha8Rng::seed_from_u64(3), SkeletonParams::new(4, 8));
        assert_eq!(a, b);
    }

    #[test]
    fn consistency_rejects_nested_images_of_unnested_curves() {
        // a and b are disjoint disks; both lift into c.
        let mc = LabeledMulticurve::new(&["a", "b", "c"]).with_flat_nesting();
        let l = LiftingData::new()
            .with("a", PreimageComponent::new(1, ComponentClass::curve("c")))
            .with("b", PreimageComponent::new(1, ComponentClass::curve("c")))
            .padded(2);
        assert!(!polynomial_consistent(&mc, &l));
        let l = LiftingData::new()
            .with("a", PreimageComponent::new(1, ComponentClass::curve("b")))
            .with("b", PreimageComponent::new(1, ComponentClass::curve("a")))
            .padded(2);
        assert!(polynomial_consistent(&mc, &l));
    }

    #[test]
    fn consistency_requires_interiors_to_map_inside() {
        // b inside a; a lifts to a, and b lifts to b: fine.
        let mc = LabeledMulticurve::new(&["a", "b"]).with_nesting("b", "a");
        let ok = LiftingData::new()
            .with("a", PreimageComponent::new(1, ComponentClass::curve("a")))
            .with("b", PreimageComponent::new(1, ComponentClass::curve("b")))
            .padded(2);
        assert!(polynomial_consistent(&mc, &ok));
        // a lifts into b while b lifts into a: the inner image comes from the outer curve.
        let bad = LiftingData::new()
            .with("a", PreimageComponent::new(1, ComponentClass::curve("b")))
            .with("b", PreimageComponent::new(1, ComponentClass::curve("a")))
            .padded(2);
        assert!(!polynomial_consistent(&mc, &bad));
    }
}
