//! Seeded generators for skeletons, torus maps and obstruction instances.

use branchcover::generate::{random_anosov, random_lifting_instance, random_sphere_skeleton, SkeletonParams};
use branchcover::{decide_srs, orbifold_signature, validate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for params in [SkeletonParams::new(3, 6), SkeletonParams::new(3, 6).polynomial()] {
        let s = random_sphere_skeleton(&mut rng, params);
        let doc = s.to_doc();
        println!(
            "degree {} skeleton with {} vertices: valid {}, {:?}",
            doc.degree,
            doc.vertices.len(),
            validate(&doc).is_valid(),
            orbifold_signature(&s).kind
        );
    }
    println!("Anosov map: {:?}", random_anosov(&mut rng, 10).matrix);
    let inst = random_lifting_instance(&mut rng, 4);
    let report = decide_srs(&inst.multicurve, &inst.lifting).unwrap();
    println!("lifting instance on {:?}: obstructed {}", inst.multicurve.curves, report.srs_exists);
}
