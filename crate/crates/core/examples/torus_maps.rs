//! Classify linear torus maps and follow the pullback on the upper half-plane.

use branchcover::torus::{orbit, shortest_slope, TeichPoint};
use branchcover::{classify, construct_srs, translation_length, TorusMapSpec};

fn main() {
    for (a, b, c, d) in [(0, 2, -2, 0), (2, 0, 0, 2), (2, 1, 0, 2), (4, 0, 0, 1), (5, 4, 4, 4)] {
        let spec = TorusMapSpec::new(a, b, c, d);
        let v = classify(&spec).unwrap();
        let t = translation_length(&spec, 10_000, 1e-9).unwrap();
        println!(
            "({a} {b}; {c} {d}): {:?}, translation length {:.6} (probe {:.6} after {} iterations)",
            v.flags(),
            t.tau_sigma,
            t.probe.estimate,
            t.probe.iterations
        );
        if let Ok(srs) = construct_srs(&spec) {
            println!("  invariant slope {:?}: {} components of degree {}", srs.slope, srs.components, srs.component_degree);
        }
    }

    println!("orbit of i under (2 1; 0 2):");
    for tau in orbit(&TorusMapSpec::new(2, 1, 0, 2), TeichPoint::i(), 6) {
        let (p, q, m) = shortest_slope(tau);
        println!("  tau = {:.4} + {:.4}i, largest modulus {m:.4} at slope ({p},{q})", tau.re, tau.im);
    }
}
