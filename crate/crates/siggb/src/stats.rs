//! Per-run statistics and their CSV form.

use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "system,strategy,pairs_reduced,zero_reductions,basis_size,skipped_inputs,time_ms";

/// The statistics row of one benchmark run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub system: String,
    pub strategy: String,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub basis_size: u64,
    pub skipped_inputs: u64,
    pub time_ms: u64,
}

impl RunStats {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.system,
            self.strategy,
            self.pairs_reduced,
            self.zero_reductions,
            self.basis_size,
            self.skipped_inputs,
            self.time_ms
        )
    }

    pub fn from_csv_row(row: &str) -> Result<RunStats> {
        let fields: Vec<&str> = row.trim_end().split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("expected 7 CSV fields, got {}", fields.len()),
            });
        }
        let num = |i: usize| -> Result<u64> {
            fields[i].parse::<u64>().map_err(|_| Error::Parse {
                line: 1,
                col: i + 1,
                msg: format!("field {} is not a number", i + 1),
            })
        };
        Ok(RunStats {
            system: fields[0].to_string(),
            strategy: fields[1].to_string(),
            pairs_reduced: num(2)?,
            zero_reductions: num(3)?,
            basis_size: num(4)?,
            skipped_inputs: num(5)?,
            time_ms: num(6)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let s = RunStats {
            system: "cyclic6".into(),
            strategy: "arri".into(),
            pairs_reduced: 123,
            zero_reductions: 4,
            basis_size: 45,
            skipped_inputs: 0,
            time_ms: 17,
        };
        assert_eq!(RunStats::from_csv_row(&s.to_csv_row()).unwrap(), s);
    }
}
