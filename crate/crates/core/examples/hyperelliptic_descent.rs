//! Push torus maps down to the sphere through the elliptic involution.

use branchcover::{descend, descend_srs, is_exceptional, weierstrass_permutation, TorusMapSpec};

fn main() {
    for spec in [TorusMapSpec::new(2, 0, 0, 2), TorusMapSpec::new(2, 1, 0, 2).with_translation(1, 0)] {
        let w = weierstrass_permutation(&spec).unwrap();
        let e = descend(&spec).unwrap();
        println!("{:?} + {:?}", spec.matrix, spec.translation);
        println!("  Weierstrass points: {:?} (permutation: {})", w.images, w.is_permutation);
        println!("  quotient skeleton: {}", serde_json::to_string(&e.skeleton.to_doc()).unwrap());
        println!("  exceptional: {}", is_exceptional(&e.skeleton));
        if let Ok(srs) = descend_srs(&spec) {
            println!("  descended reduction system: {}", serde_json::to_string(&srs.doc()).unwrap());
        }
    }
}
