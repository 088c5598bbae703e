//! Lifting graphs, Levy cycles and minimal reduction systems of polynomials.

use branchcover::generate::random_levy_instance;
use branchcover::{check_prop_levy, find_levy_cycles, lifting_graph, minimal_srs};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..3 {
        let inst = random_levy_instance(&mut rng, 5);
        println!("curves {:?} with nesting {:?}", inst.multicurve.curves, inst.multicurve.nesting);
        let graph = lifting_graph(&inst.multicurve, &inst.lifting).unwrap();
        for e in &graph.edges {
            println!("  {} -> {} (degree {})", e.from, e.to, e.degree);
        }
        println!("  Levy cycles: {:?}", find_levy_cycles(&graph));
        let minimal = minimal_srs(&inst.multicurve, &inst.lifting).unwrap();
        println!("  minimal reduction system {:?} ({:?})", minimal.curves, minimal.method);
        let verdict = check_prop_levy(&inst.multicurve, &inst.lifting, &inst.skeleton).unwrap();
        println!("  degenerate Levy cycle: {} {:?}", verdict.pass, verdict.cycle);
    }
}
