mod common;

use branchcover::exact::{frac, Rational};
use branchcover::generate::{random_levy_instance, random_lifting_instance, random_sphere_skeleton, SkeletonParams};
use branchcover::hyperelliptic::{descend, weierstrass_permutation};
use branchcover::levy::{check_prop_levy, find_levy_cycles, lifting_graph};
use branchcover::obstruction::{
    decide_srs, decide_srs_matrix, proof_constants, spectral_radius_estimate, ComponentClass, ConstantsInput,
    LabeledMulticurve, LiftingData, PreimageComponent,
};
use branchcover::orbifold::{is_exceptional, lifts_to_torus, orbifold_signature, Label, OrbifoldType};
use branchcover::skeleton::{
    extended_portrait, post_critical_set, validate, CoverSkeleton, Invariant, SkeletonDoc, Surface,
};
use branchcover::stability::infinitely_stable_points;
use branchcover::torus::{
    classify, construct_srs, curve_modulus, orbit, teich_action, teich_distance, translation_length, BoundaryPoint,
    TeichPoint, TorusMapSpec,
};
use common::{brute_force_srs, inf_norm, mat_mul, oracle_matrix};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

fn skeleton_from_seed(seed: u64) -> CoverSkeleton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(2..=5);
    random_sphere_skeleton(&mut rng, SkeletonParams::new(d, 8))
}

fn torus_spec() -> impl Strategy<Value = TorusMapSpec> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6, 0u8..=1, 0u8..=1)
        .prop_map(|(a, b, c, d, h1, h2)| TorusMapSpec::new(a, b, c, d).with_translation(h1, h2))
        .prop_filter("orientation-preserving cover", |s| s.degree() >= 1)
}

fn upper_half_plane() -> impl Strategy<Value = TeichPoint> {
    (-3.0f64..3.0, 0.05f64..4.0).prop_map(|(re, im)| TeichPoint::new(re, im).unwrap())
}

fn parabolic_spec() -> impl Strategy<Value = TorusMapSpec> {
    // μ·I + t·(ab, −a²; b², −ab): the added matrix is nilpotent and nonzero.
    (1i64..=4, -3i64..=3, -3i64..=3, prop_oneof![-2i64..=-1, 1i64..=2])
        .prop_filter("nonzero direction", |(_, a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(mu, a, b, t)| TorusMapSpec::new(mu + t * a * b, -t * a * a, t * b * b, mu - t * a * b))
}

/// `f^{-k}(p) ⊆ P ∪ Crit(f^k)` for all `k ≤ depth`, by walking the preimage
/// tree. A branch ends at a critical vertex: everything above it is critical
/// for the deeper iterates.
fn definitionally_stable(s: &CoverSkeleton, p: usize, depth: usize) -> bool {
    fn walk(s: &CoverSkeleton, y: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let pre = s.preimages(y);
        if pre.len() as u32 != s.preimage_count(y) {
            return false;
        }
        pre.into_iter().filter(|&z| !s.is_critical(z)).all(|z| walk(s, z, remaining - 1))
    }
    s.is_marked(p) && walk(s, p, depth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_skeletons_satisfy_riemann_hurwitz_and_budgets(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let doc = s.to_doc();
        let d = doc.degree;
        let deficiency: i64 = doc.vertices.iter().map(|v| v.local_degree - 1).sum();
        prop_assert_eq!(deficiency, 2 * d - 2);
        let mut weight: BTreeMap<&str, i64> = BTreeMap::new();
        for v in &doc.vertices {
            *weight.entry(doc.forward[&v.id].as_str()).or_default() += v.local_degree;
        }
        prop_assert!(weight.values().all(|&w| w <= d));
    }

    #[test]
    fn validation_catches_a_changed_local_degree(seed in any::<u64>(), bump in 1i64..=2) {
        let s = skeleton_from_seed(seed);
        let mut doc = s.to_doc();
        let i = (seed % doc.vertices.len() as u64) as usize;
        doc.vertices[i].local_degree += bump;
        let report = validate(&doc);
        prop_assert!(!report.is_valid());
        prop_assert!(
            report.violates(Invariant::RiemannHurwitz) || report.violates(Invariant::LocalDegreeAtMostDegree)
        );
    }

    #[test]
    fn post_critical_set_is_forward_invariant(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let pc = post_critical_set(&s);
        for c in s.critical_indices() {
            prop_assert!(pc.contains(s.id(s.forward_index(c))));
        }
        for p in &pc {
            prop_assert!(pc.contains(s.forward(p).unwrap()));
        }
    }

    #[test]
    fn extended_portrait_ignores_vertex_order(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let mut doc: SkeletonDoc = s.to_doc();
        doc.vertices.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let t = CoverSkeleton::from_doc(&doc).unwrap();
        prop_assert_eq!(extended_portrait(&s), extended_portrait(&t));
    }

    #[test]
    fn orbifold_labels_divide_along_unbranched_preimages(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let sig = orbifold_signature(&s);
        for q in s.marked_indices() {
            if s.is_critical(q) {
                continue;
            }
            let p = s.id(s.forward_index(q));
            let (nq, np) = (&sig.labels[s.id(q)], &sig.labels[p]);
            prop_assert!(nq.divides(np), "{} = {:?} does not divide {} = {:?}", s.id(q), nq, p, np);
        }
    }

    #[test]
    fn exceptional_covers_are_euclidean(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        if is_exceptional(&s) {
            prop_assert_eq!(orbifold_signature(&s).kind, OrbifoldType::Euclidean);
        }
    }

    #[test]
    fn three_marked_points_carry_no_reduction_system(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        if s.marked_count() == 3 {
            let c = proof_constants(&ConstantsInput::new(Surface::Sphere, 3, s.degree(), Rational::one(), Rational::zero())).unwrap();
            prop_assert_eq!(c.xi, 0);
            let empty: [&str; 0] = [];
            let report = decide_srs(&LabeledMulticurve::new(&empty), &LiftingData::new()).unwrap();
            prop_assert!(!report.srs_exists);
        }
    }

    #[test]
    fn peeling_terminates_within_marked_count(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let report = infinitely_stable_points(&s);
        prop_assert!(report.rounds <= s.marked_count());
        prop_assert!(report.infinitely_stable.is_subset(&report.stable));
    }

    #[test]
    fn infinitely_stable_matches_preimage_tree(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        let depth = s.marked_count() + 2;
        let oracle: BTreeSet<String> = s
            .marked_indices()
            .filter(|&p| definitionally_stable(&s, p, depth))
            .map(|p| s.id(p).to_string())
            .collect();
        prop_assert_eq!(infinitely_stable_points(&s).infinitely_stable, oracle);
    }

    #[test]
    fn non_exceptional_covers_have_at_most_three_infinitely_stable_points(seed in any::<u64>()) {
        let s = skeleton_from_seed(seed);
        if !is_exceptional(&s) {
            prop_assert!(infinitely_stable_points(&s).infinitely_stable.len() <= 3);
        }
    }
}

fn unit_fraction_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(1i64..=5, 0..=2), n), n)
            .prop_map(|rows| {
                rows.into_iter()
                    .map(|row| row.into_iter().map(|ks| ks.into_iter().map(|k| frac(1, k)).sum()).collect())
                    .collect()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn float_radius_agrees_away_from_one(m in unit_fraction_matrix()) {
        let rho = spectral_radius_estimate(&m);
        if (rho - 1.0).abs() > 1e-6 {
            prop_assert_eq!(decide_srs_matrix(&m).exists, rho > 1.0);
        }
    }

    #[test]
    fn decide_srs_agrees_with_subset_enumeration(seed in any::<u64>()) {
        let inst = random_lifting_instance(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let m = oracle_matrix(&inst.multicurve.curves, &inst.lifting);
        let report = decide_srs(&inst.multicurve, &inst.lifting).unwrap();
        prop_assert_eq!(report.srs_exists, brute_force_srs(&m));
    }

    #[test]
    fn reclassifying_a_component_as_a_curve_keeps_an_obstruction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_lifting_instance(&mut rng, 5);
        let before = decide_srs(&inst.multicurve, &inst.lifting).unwrap().srs_exists;
        let curves = &inst.multicurve.curves;
        let from = curves.choose(&mut rng).unwrap();
        let to = curves.choose(&mut rng).unwrap();
        let mut grown = inst.lifting.clone();
        let comps = grown.components.entry(from.clone()).or_default();
        if let Some(c) = comps.iter_mut().find(|c| !matches!(c.class, ComponentClass::Curve(_))) {
            c.class = ComponentClass::curve(to);
            let after = decide_srs(&inst.multicurve, &grown).unwrap().srs_exists;
            prop_assert!(!before || after);
        }
    }

    #[test]
    fn lemma_p_is_least_exponent(seed in any::<u64>()) {
        let inst = random_lifting_instance(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let report = decide_srs(&inst.multicurve, &inst.lifting).unwrap();
        if !report.srs_exists {
            let m = oracle_matrix(&inst.multicurve.curves, &inst.lifting);
            let p = report.lemma_p.expect("unobstructed matrices have an exponent");
            let half = frac(1, 2);
            let mut power = m.clone();
            for k in 1..p {
                prop_assert!(inf_norm(&power) >= half, "exponent {} already works", k);
                power = mat_mul(&power, &m);
            }
            prop_assert!(inf_norm(&power) < half);
        }
    }

    #[test]
    fn levy_cycles_are_reduction_systems(seed in any::<u64>()) {
        let inst = random_lifting_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6);
        let graph = lifting_graph(&inst.multicurve, &inst.lifting).unwrap();
        for cycle in find_levy_cycles(&graph) {
            let mut lifting = LiftingData::new();
            for c in &cycle {
                for comp in inst.lifting.of(c) {
                    let class = match &comp.class {
                        ComponentClass::Curve(id) if !cycle.contains(id) => ComponentClass::Other,
                        other => other.clone(),
                    };
                    lifting = lifting.with(c, PreimageComponent::new(comp.degree, class));
                }
            }
            let report = decide_srs(&LabeledMulticurve::new(&cycle), &lifting).unwrap();
            prop_assert!(report.srs_exists, "cycle {:?}", cycle);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_reduction_systems_of_polynomials_are_levy_cycles(seed in any::<u64>()) {
        let inst = random_levy_instance(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let verdict = check_prop_levy(&inst.multicurve, &inst.lifting, &inst.skeleton).unwrap();
        prop_assert!(verdict.pass, "{:?}", verdict.diagnostics);
    }

    #[test]
    fn levy_cycles_match_hamiltonian_cycle_counts(
        n in 1usize..=10,
        edges in proptest::collection::vec((0usize..10, 0usize..10, 1u32..=2), 0..24),
    ) {
        let ids: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let mut lifting = LiftingData::new();
        let mut adj = vec![vec![false; n]; n];
        for (a, b, deg) in edges.into_iter().filter(|(a, b, _)| *a < n && *b < n) {
            lifting = lifting.with(&ids[a], PreimageComponent::new(deg, ComponentClass::curve(&ids[b])));
            adj[a][b] |= deg == 1;
        }
        for id in &ids {
            lifting.components.entry(id.clone()).or_default();
        }
        let d = ids.iter().map(|c| lifting.of(c).iter().map(|x| x.degree).sum::<u32>()).max().unwrap().max(1);
        let lifting = lifting.padded(d);
        let graph = lifting_graph(&LabeledMulticurve::new(&ids), &lifting).unwrap();
        let found = find_levy_cycles(&graph);

        let index = |id: &String| ids.iter().position(|x| x == id).unwrap();
        let mut by_mask: BTreeMap<u32, u64> = BTreeMap::new();
        for cycle in &found {
            let idx: Vec<usize> = cycle.iter().map(index).collect();
            prop_assert_eq!(idx[0], *idx.iter().min().unwrap());
            prop_assert_eq!(idx.iter().collect::<BTreeSet<_>>().len(), idx.len());
            for w in 0..idx.len() {
                prop_assert!(adj[idx[w]][idx[(w + 1) % idx.len()]]);
            }
            *by_mask.entry(idx.iter().map(|&i| 1u32 << i).sum()).or_default() += 1;
        }

        // Paths from s through vertices above s, counted by bitmask DP.
        let mut oracle: BTreeMap<u32, u64> = BTreeMap::new();
        for s in 0..n {
            let mut dp = vec![vec![0u64; n]; 1 << n];
            dp[1 << s][s] = 1;
            for mask in 0..1u32 << n {
                if mask & (1 << s) == 0 || mask & ((1 << s) - 1) != 0 {
                    continue;
                }
                for v in 0..n {
                    let ways = dp[mask as usize][v];
                    if ways == 0 {
                        continue;
                    }
                    if adj[v][s] {
                        *oracle.entry(mask).or_default() += ways;
                    }
                    for w in s + 1..n {
                        if adj[v][w] && mask & (1 << w) == 0 {
                            dp[(mask | 1 << w) as usize][w] += ways;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(by_mask, oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pullback_is_an_isometry(spec in torus_spec(), t1 in upper_half_plane(), t2 in upper_half_plane()) {
        let before = teich_distance(t1, t2);
        let after = teich_distance(teich_action(&spec, t1), teich_action(&spec, t2));
        prop_assert!((before - after).abs() <= 1e-9, "{} vs {}", before, after);
    }

    #[test]
    fn flags_match_fixed_point_structure(spec in torus_spec(), probe in upper_half_plane()) {
        let v = classify(&spec).unwrap();
        let t = translation_length(&spec, 2_000, 1e-9).unwrap();
        let delta = spec.discriminant();
        if delta < 0 {
            let fp = v.fixed_point.unwrap();
            let z = TeichPoint::new(fp.re, fp.im).unwrap();
            prop_assert!(teich_distance(z, teich_action(&spec, z)) < 1e-9);
        } else if delta == 0 && !spec.is_scalar() {
            prop_assert_eq!(t.tau_sigma, 0.0);
            prop_assert!(!t.realized);
            prop_assert!(teich_distance(probe, teich_action(&spec, probe)) > 0.0);
        } else if delta > 0 {
            // A point on the axis moves along it by the translation length.
            let [e1, e2] = t.axis_endpoints.unwrap();
            let (z, on_axis): (TeichPoint, Box<dyn Fn(TeichPoint) -> f64>) = match (e1, e2) {
                (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
                    let (c, r) = ((a + b) / 2.0, (a - b).abs() / 2.0);
                    (TeichPoint::new(c, r).unwrap(), Box::new(move |w: TeichPoint| ((w.re - c).hypot(w.im) - r) / r))
                }
                (_, BoundaryPoint::Finite(x)) | (BoundaryPoint::Finite(x), _) => {
                    (TeichPoint::new(x, 1.0).unwrap(), Box::new(move |w: TeichPoint| (w.re - x) / w.im))
                }
                _ => unreachable!(),
            };
            let image = teich_action(&spec, z);
            prop_assert!(on_axis(image).abs() < 1e-9);
            prop_assert!((teich_distance(z, image) - t.tau_sigma).abs() < 1e-9);
        }
    }

    #[test]
    fn torus_reduction_systems_are_obstructed(spec in torus_spec()) {
        if let Ok(srs) = construct_srs(&spec) {
            let report = decide_srs(&srs.multicurve, &srs.lifting).unwrap();
            prop_assert!(report.srs_exists);
            let total: u32 = srs.lifting.of(&srs.curve).iter().map(|c| c.degree).sum();
            prop_assert_eq!(total as i128, spec.degree());
        }
    }

    #[test]
    fn eigenvalues_multiply_to_the_degree(spec in torus_spec()) {
        let v = classify(&spec).unwrap();
        if let Some(s) = &v.invariant_slope {
            prop_assert_eq!(s.eigenvalue as i128 * s.other_eigenvalue as i128, spec.degree());
        }
        if let Some(st) = &v.stretch {
            let d = spec.degree() as f64;
            prop_assert!((st.expanding_eigenvalue * st.contracting_eigenvalue - d).abs() <= 1e-12 * d);
            prop_assert!(st.lambda > 1.0);
        }
    }

    #[test]
    fn parabolic_orbits_escape_in_a_standard_slope(spec in parabolic_spec()) {
        let mut best: f64 = 0.0;
        for tau in orbit(&spec, TeichPoint::i(), 10_000) {
            best = best.max(curve_modulus(tau, 1, 0).unwrap()).max(curve_modulus(tau, 0, 1).unwrap());
            if best > 1e3 {
                break;
            }
        }
        prop_assert!(best > 1e3, "max standard-slope modulus {} after 10^4 iterations of {:?}", best, spec.matrix);
    }

    #[test]
    fn elliptic_orbits_stay_in_a_bounded_disk(spec in torus_spec()) {
        if spec.discriminant() < 0 {
            let fp = classify(&spec).unwrap().fixed_point.unwrap();
            let center = TeichPoint::new(fp.re, fp.im).unwrap();
            let radius = teich_distance(TeichPoint::i(), center);
            // Largest height in the closed disk, for τ and for −1/τ.
            let flipped = center.im / (center.re * center.re + center.im * center.im);
            let bound = center.im.max(flipped) * (2.0 * radius).exp() * (1.0 + 1e-9);
            for tau in orbit(&spec, TeichPoint::i(), 1_000) {
                let m = curve_modulus(tau, 1, 0).unwrap().max(curve_modulus(tau, 0, 1).unwrap());
                prop_assert!(m <= bound, "modulus {} above {}", m, bound);
            }
        }
    }

    #[test]
    fn descended_marked_points_follow_weierstrass_map(spec in torus_spec()) {
        let e = descend(&spec).unwrap();
        let w = weierstrass_permutation(&spec).unwrap();
        for (id, image) in &w.images {
            prop_assert_eq!(e.skeleton.forward(id), Some(image.as_str()));
        }
    }

    #[test]
    fn descents_are_2222_and_lift(spec in torus_spec()) {
        let e = descend(&spec).unwrap();
        let s = &e.skeleton;
        prop_assert_eq!(s.degree() as i128, spec.degree());
        let deficiency: u32 = s.critical_indices().map(|c| s.local_degree(c) - 1).sum();
        prop_assert_eq!(deficiency as i128, 2 * spec.degree() - 2);
        if spec.degree() > 1 {
            let sig = orbifold_signature(s);
            for w in ["w1", "w2", "w3", "w4"] {
                prop_assert_eq!(sig.label(w), Some(&Label::finite(2)));
            }
            prop_assert_eq!(sig.kind, OrbifoldType::Euclidean);
            prop_assert!(is_exceptional(s));
            prop_assert!(lifts_to_torus(s).unwrap().lifts);
        }
    }
}
