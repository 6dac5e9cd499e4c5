//! Catalogue-style reports: one row per system, computed by the full
//! pipeline, with text, JSON, and CSV renderings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpt::homogenize;
use crate::polytope::VRep;
use crate::sigdim::{signaling_dimension, PipelineOptions, SigDimReport};
use crate::solids::{generate_solid, SolidSpec};

/// One report row, column-for-column comparable with the catalogue tables:
/// name, m, aff.dim, CS, group order, measurement count, class count, and
/// the exact signaling dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub m: usize,
    pub aff_dim: usize,
    pub cs: bool,
    pub group_order: usize,
    pub num_measurements: usize,
    pub num_classes: usize,
    pub sigdim: usize,
}

/// Runs the full pipeline on a vertex set. The two-dimensional shortcut is
/// disabled so the measurement and class columns are always populated.
pub fn report_row(name: &str, vrep: &VRep) -> Result<ReportRow> {
    let s = homogenize(vrep)?;
    let report = signaling_dimension(
        &s,
        PipelineOptions {
            use_corollary_2d: false,
            use_symmetry: true,
        },
    )?;
    row_from_report(name, s.num_states(), s.aff_dim(), &report)
}

fn row_from_report(
    name: &str,
    m: usize,
    aff_dim: usize,
    report: &SigDimReport,
) -> Result<ReportRow> {
    let (group_order, num_measurements, num_classes) = match (
        report.group_order,
        report.num_measurements,
        report.num_classes,
    ) {
        (Some(g), Some(nm), Some(nc)) => (g, nm, nc),
        _ => {
            return Err(Error::Internal(
                "report rows require the full pipeline".into(),
            ))
        }
    };
    Ok(ReportRow {
        name: name.to_string(),
        m,
        aff_dim,
        cs: report.bounds.cs,
        group_order,
        num_measurements,
        num_classes,
        sigdim: report.value,
    })
}

/// One row per spec; a failing row carries its error while the remaining
/// rows are still computed.
pub fn report(specs: &[SolidSpec]) -> Vec<(String, Result<ReportRow>)> {
    specs
        .iter()
        .map(|spec| {
            let name = spec.name();
            let row = generate_solid(spec).and_then(|v| report_row(&name, &v));
            (name, row)
        })
        .collect()
}

/// Aligned text table over the successful rows.
pub fn format_table(rows: &[ReportRow]) -> String {
    let headers = [
        "name", "m", "aff.dim", "CS", "|G|", "|M|", "|M'|", "sig.dim",
    ];
    let mut cells: Vec<Vec<String>> = vec![headers.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        cells.push(vec![
            r.name.clone(),
            r.m.to_string(),
            r.aff_dim.to_string(),
            if r.cs { "True" } else { "False" }.to_string(),
            r.group_order.to_string(),
            r.num_measurements.to_string(),
            r.num_classes.to_string(),
            r.sigdim.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..headers.len())
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{:width$}", cell, width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// CSV rendering with a header line.
pub fn format_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("name,m,aff_dim,cs,group_order,num_measurements,num_classes,sigdim\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.name,
            r.m,
            r.aff_dim,
            if r.cs { "True" } else { "False" },
            r.group_order,
            r.num_measurements,
            r.num_classes,
            r.sigdim
        ));
    }
    out
}

/// Pretty JSON array.
pub fn format_json(rows: &[ReportRow]) -> Result<String> {
    serde_json::to_string_pretty(rows)
        .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_row_matches_catalogue() {
        let v = generate_solid(&SolidSpec::Octahedron).unwrap();
        let row = report_row("octahedron", &v).unwrap();
        assert_eq!(
            row,
            ReportRow {
                name: "octahedron".into(),
                m: 6,
                aff_dim: 3,
                cs: true,
                group_order: 48,
                num_measurements: 6,
                num_classes: 2,
                sigdim: 3,
            }
        );
    }

    #[test]
    fn report_survives_per_row_failure() {
        let rows = report(&[SolidSpec::Hyperoctahedron(2), SolidSpec::Cube]);
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|(_, r)| r.is_ok()));
    }

    #[test]
    fn formats_are_stable() {
        let v = generate_solid(&SolidSpec::Cube).unwrap();
        let row = report_row("cube", &v).unwrap();
        let rows = vec![row];
        let table_a = format_table(&rows);
        let table_b = format_table(&rows);
        assert_eq!(table_a, table_b);
        assert!(table_a.contains("cube"));
        let csv = format_csv(&rows);
        assert!(csv.starts_with("name,"));
        assert!(csv.contains("cube,8,3,True,48,3,1,2"));
        let json = format_json(&rows).unwrap();
        assert!(json.contains("\"sigdim\": 2"));
    }
}
