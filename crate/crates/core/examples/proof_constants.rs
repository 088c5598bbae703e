//! Constants of the compactness argument for a given surface, degree and bounds.

use branchcover::exact::frac;
use branchcover::obstruction::ConstantsInput;
use branchcover::{proof_constants, Surface};

fn main() {
    for (marked, degree) in [(4, 2), (5, 3), (8, 4)] {
        let input = ConstantsInput::new(Surface::Sphere, marked, degree, frac(1, 10), frac(1, 2));
        let c = proof_constants(&input).unwrap();
        println!("|P| = {marked}, d = {degree}: {}", serde_json::to_string(&c).unwrap());
    }
}
