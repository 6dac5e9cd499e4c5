use std::time::Instant;

use sigdim_core::report::{report_row, ReportRow};
use sigdim_core::solids::{generate_solid, SolidSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let specs: Vec<SolidSpec> = if args.is_empty() {
        SolidSpec::regular_solids()
    } else {
        args.iter().map(|a| SolidSpec::parse(a).unwrap()).collect()
    };
    for spec in specs {
        let t = Instant::now();
        let v = generate_solid(&spec).unwrap();
        match report_row(&spec.name(), &v) {
            Ok(ReportRow {
                name,
                m,
                aff_dim,
                cs,
                group_order,
                num_measurements,
                num_classes,
                sigdim,
            }) => println!(
                "{name}: m={m} aff={aff_dim} cs={cs} |G|={group_order} |M|={num_measurements} |M'|={num_classes} sigdim={sigdim}  ({:.2?})",
                t.elapsed()
            ),
            Err(e) => println!("{spec}: ERROR {e}"),
        }
    }
}
