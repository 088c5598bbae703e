//! Build a cover skeleton by hand, validate it, and print its portraits.

use branchcover::skeleton::{extended_portrait, portrait, post_critical_set, validate, SkeletonBuilder};

fn main() {
    // The rabbit: a degree-2 polynomial whose finite critical point has period 3.
    let rabbit = SkeletonBuilder::sphere(2)
        .vertex("c0", true, 2, "p1")
        .vertex("p1", true, 1, "p2")
        .vertex("p2", true, 1, "c0")
        .vertex("inf", true, 2, "inf");
    let skeleton = rabbit.clone().build().expect("the rabbit is a valid skeleton");
    println!("post-critical set: {:?}", post_critical_set(&skeleton));
    println!("portrait: {}", serde_json::to_string(&portrait(&skeleton)).unwrap());
    println!("extended portrait: {}", serde_json::to_string(&extended_portrait(&skeleton)).unwrap());

    // A second finite critical point breaks Riemann-Hurwitz.
    let mut doc = rabbit.doc();
    doc.vertices[1].local_degree = 2;
    let report = validate(&doc);
    println!("after making p1 critical: valid = {}", report.is_valid());
    for v in &report.violations {
        println!("  {}", serde_json::to_string(v).unwrap());
    }
}
