//! Stable and infinitely stable marked points.

use branchcover::skeleton::samples::rabbit;
use branchcover::{check_prop_stable, descend, infinitely_stable_points, TorusMapSpec};

fn main() {
    let r = infinitely_stable_points(&rabbit());
    println!("rabbit: stable {:?}, infinitely stable {:?} after {} rounds", r.stable, r.infinitely_stable, r.rounds);
    println!("rabbit count check: {:?}", check_prop_stable(&rabbit()).unwrap());

    // Every marked point of an exceptional quotient of a torus map is infinitely stable.
    let lattes = descend(&TorusMapSpec::new(3, 1, 1, 2)).unwrap().skeleton;
    let l = infinitely_stable_points(&lattes);
    println!("quotient of (3 1; 1 2): infinitely stable {:?}", l.infinitely_stable);
    println!("count check: {:?}", check_prop_stable(&lattes).unwrap());
}
