//! Transition matrices and the strong reduction system decision.

use branchcover::obstruction::{ComponentClass, PreimageComponent};
use branchcover::{decide_srs, LabeledMulticurve, LiftingData};

fn swap(degree: u32) -> LiftingData {
    // a and b each pull back to one essential component homotopic to the other.
    LiftingData::new()
        .with("a", PreimageComponent::new(degree, ComponentClass::curve("b")))
        .with("b", PreimageComponent::new(degree, ComponentClass::curve("a")))
        .padded(2)
}

fn main() {
    let mc = LabeledMulticurve::new(&["a", "b"]);
    for degree in [1, 2] {
        let report = decide_srs(&mc, &swap(degree)).unwrap();
        println!("components of degree {degree}:");
        println!("  matrix {}", serde_json::to_string(&report.matrix).unwrap());
        println!("  spectral radius ~ {:.6}", report.spectral_radius_estimate);
        println!("  strong reduction system: {}", report.srs_exists);
        if let Some(w) = &report.witness_labels {
            println!("  witness labels {w:?} on {:?}", report.witness_support);
        }
        if let Some(p) = report.lemma_p {
            println!("  M^{p} has norm below 1/2");
        }
    }
}
