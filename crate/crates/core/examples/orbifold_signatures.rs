//! Orbifold labels and types of a few classic covers.

use branchcover::orbifold::{is_exceptional, orbifold_signature};
use branchcover::skeleton::samples::{basilica, rabbit, z_squared};
use branchcover::{descend, TorusMapSpec};

fn main() {
    let lattes = descend(&TorusMapSpec::new(2, 0, 0, 2)).unwrap().skeleton;
    for (name, s) in [("z^2", z_squared()), ("basilica", basilica()), ("rabbit", rabbit()), ("Lattes", lattes)] {
        let sig = orbifold_signature(&s);
        let labels: Vec<String> = sig.labels.iter().map(|(id, l)| format!("{id}={l}")).collect();
        println!(
            "{name:>9}: {:?}, euler {}, exceptional {}, labels [{}]",
            sig.kind,
            sig.euler(),
            is_exceptional(&s),
            labels.join(", ")
        );
    }
}
