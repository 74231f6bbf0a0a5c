//! Shared fixture loading for the oracle-table test suites.

use std::path::PathBuf;

pub struct OracleRow {
    pub x: f64,
    pub value: f64,
}

/// Loads one of the 25-digit reference tables generated offline by
/// `tools/gen_oracle_fixtures.py`.
pub fn load_table(name: &str) -> Vec<OracleRow> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()));
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let x: f64 = fields.next().unwrap().parse().unwrap();
        let value: f64 = fields.next().unwrap().parse().unwrap();
        rows.push(OracleRow { x, value });
    }
    assert!(rows.len() >= 50, "{name}: fixture unexpectedly small");
    rows
}

/// Relative-error comparison with an absolute escape hatch for values near
/// a zero crossing.
pub fn check_against(
    rows: &[OracleRow],
    mut f: impl FnMut(f64) -> f64,
    rel_tol: f64,
    near_zero_abs: Option<(f64, f64)>,
) -> f64 {
    let mut worst_rel: f64 = 0.0;
    for row in rows {
        let got = f(row.x);
        let abs_err = (got - row.value).abs();
        if let Some((zero_scale, abs_tol)) = near_zero_abs {
            if row.value.abs() < zero_scale {
                assert!(
                    abs_err <= abs_tol,
                    "x = {}: |{got} - {}| = {abs_err} > {abs_tol} (absolute regime)",
                    row.x,
                    row.value
                );
                continue;
            }
        }
        let rel = abs_err / row.value.abs();
        assert!(
            rel <= rel_tol,
            "x = {}: got {got}, oracle {}, rel err {rel}",
            row.x,
            row.value
        );
        worst_rel = worst_rel.max(rel);
    }
    worst_rel
}
