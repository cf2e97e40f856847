use std::fmt::Write;

use super::ExperimentError;
use crate::game::{GameSpec, Player, Variant};
use crate::graph::path;
use crate::solver::{reversal, solve_with_symmetry, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathRow {
    pub n: usize,
    pub a_start: i32,
    pub i_start: i32,
}

/// Values on `P_1, P_2, ...`; `error` is set when the run stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTable {
    pub variant: Variant,
    pub rows: Vec<PathRow>,
    pub error: Option<ExperimentError>,
}

impl PathTable {
    pub fn row(&self, n: usize) -> Option<&PathRow> {
        self.rows.get(n.checked_sub(1)?)
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, n: usize, start: Player) -> Option<i32> {
        self.row(n).map(|r| match start {
            Player::Admirable => r.a_start,
            Player::Impish => r.i_start,
        })
    }
}

/// Solves both starts on every path up to `max_n`, folding positions under
/// the path reversal.
pub fn path_tables(max_n: usize, variant: Variant, options: &SolveOptions) -> PathTable {
    let mut table = PathTable { variant, rows: Vec::new(), error: None };
    for n in 1..=max_n {
        let row = (|| -> Result<PathRow, ExperimentError> {
            let g = path(n)?;
            let mut v = [0; 2];
            for (slot, start) in v.iter_mut().zip([Player::Admirable, Player::Impish]) {
                let spec = GameSpec::new(variant, start);
                *slot = solve_with_symmetry(&g, spec, vec![reversal(n)], options.clone())?.value;
            }
            Ok(PathRow { n, a_start: v[0], i_start: v[1] })
        })();
        match row {
            Ok(r) => table.rows.push(r),
            Err(e) => {
                table.error = Some(e);
                break;
            }
        }
    }
    table
}

/// CSV with header `n,a_start,i_start`.
pub fn path_table_csv(table: &PathTable) -> String {
    let mut out = String::from("n,a_start,i_start\n");
    for r in &table.rows {
        writeln!(out, "{},{},{}", r.n, r.a_start, r.i_start).unwrap();
    }
    out
}
