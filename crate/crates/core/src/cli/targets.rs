use serde::Deserialize;

use super::CliError;

const EMBEDDED: &str = include_str!("targets.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Targets {
    pub table1: TableTargets,
    pub table2: TableTargets,
    pub cubature: CubatureTargets,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableTargets {
    pub n: usize,
    pub relative_tolerance: f64,
    pub origin: String,
    pub rows: Vec<TableRow>,
    pub monomial: Option<MonomialTarget>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub k: u32,
    pub value: f64,
    pub digits: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialTarget {
    pub k: u32,
    pub value: f64,
    pub factor: f64,
    pub origin: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubatureTargets {
    pub relative_tolerance: f64,
    pub origin: String,
    pub rows: Vec<CubatureRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubatureRow {
    pub s: u32,
    pub value: f64,
    pub digits: usize,
}

pub fn load() -> Result<Targets, CliError> {
    toml::from_str(EMBEDDED).map_err(|e| CliError::Targets(e.to_string()))
}

/// `value` rounded to `digits` significant digits.
pub fn round_to_digits(value: f64, digits: usize) -> f64 {
    format!("{:.*e}", digits.max(1) - 1, value).parse().unwrap_or(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_targets_parse() {
        let t = load().unwrap();
        assert_eq!(t.table1.rows.len(), 5);
        assert_eq!(t.table2.rows.len(), 7);
        assert_eq!(t.cubature.rows.len(), 5);
        assert_eq!(t.table1.monomial.as_ref().unwrap().k, 30);
        assert!(t.table2.monomial.is_none());
        for row in &t.table1.rows {
            assert_eq!(round_to_digits(row.value, row.digits), row.value);
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_to_digits(0.000330, 1), 0.0003);
        assert_eq!(round_to_digits(2.000595, 2), 2.0);
        assert_eq!(round_to_digits(399.455, 4), 399.5);
    }
}
