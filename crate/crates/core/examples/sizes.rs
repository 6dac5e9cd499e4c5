use std::time::Instant;

use sigdim_core::gpt::{
    correlation_matrix, extremal_effects, extremal_measurements, measurement_classes, homogenize,
};
use sigdim_core::polytope::extreme_points;
use sigdim_core::sigdim::{bounds, classical_vertices};
use sigdim_core::gpt::CorrelationMatrix;
use sigdim_core::solids::{generate_solid, SolidSpec};
use sigdim_core::symmetry::find_symmetries;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    for arg in args {
        let spec = SolidSpec::parse(&arg).unwrap();
        let t = Instant::now();
        let v = generate_solid(&spec).unwrap();
        let s = homogenize(&v).unwrap();
        let b = bounds(&s).unwrap();
        let effects = extremal_effects(&s).unwrap();
        println!(
            "{spec}: m={} lin={} cs={} bounds=[{},{}] effects={} nontrivial={}  ({:.2?})",
            s.num_states(),
            s.lin_dim(),
            b.cs,
            b.lower,
            b.upper,
            effects.len(),
            effects.nontrivial_indices().len(),
            t.elapsed()
        );
        let t = Instant::now();
        let meas = extremal_measurements(&s, &effects).unwrap();
        println!("  |M| = {}  ({:.2?})", meas.len(), t.elapsed());
        let t = Instant::now();
        let group = find_symmetries(s.states()).unwrap();
        println!("  |G| = {}  ({:.2?})", group.order(), t.elapsed());
        let t = Instant::now();
        let classes = measurement_classes(&effects, &meas, &group).unwrap();
        println!("  |M'| = {}  ({:.2?})", classes.len(), t.elapsed());
        for (ci, orbit) in classes.iter().enumerate() {
            let rep = &orbit.representative;
            let p = correlation_matrix(&s, &effects, rep).unwrap();
            let reduced = CorrelationMatrix::new(extreme_points(p.rows()).unwrap()).unwrap();
            let supports: Vec<usize> = reduced.support().iter().map(Vec::len).collect();
            print!(
                "  class {ci}: n={} size={} m_red={} supports={supports:?} V:",
                rep.num_outcomes(),
                orbit.members.len(),
                reduced.num_rows()
            );
            for d in b.lower..b.upper {
                let count = classical_vertices(&reduced, d).count();
                print!(" d{d}={count}");
            }
            println!();
        }
    }
}
