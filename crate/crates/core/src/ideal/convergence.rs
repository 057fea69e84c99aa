use std::io::Write;

use serde::Serialize;

use crate::boundary::{omega_norm, BoundaryFunction, DEFAULT_PAIR_BUDGET};
use crate::error::{Error, Result};
use crate::moduli::Modulus;

/// Decay factor required between the first and last total gap.
pub const DECAY_GATE: f64 = 0.1;

/// Gaps `member − target` along a monotone parameter sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub params: Vec<f64>,
    pub sup_gaps: Vec<f64>,
    pub seminorm_gaps: Vec<f64>,
    pub total_gaps: Vec<f64>,
}

impl ConvergenceTable {
    /// Total gap at the last parameter is at most a tenth of the first.
    pub fn passes_gate(&self) -> bool {
        match (self.total_gaps.first(), self.total_gaps.last()) {
            (Some(&a), Some(&b)) => b <= DECAY_GATE * a,
            _ => false,
        }
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.total_gaps.windows(2).all(|w| w[1] < w[0])
    }

    pub fn nonincreasing(&self) -> bool {
        self.total_gaps.windows(2).all(|w| w[1] <= w[0])
    }

    /// CSV with columns `param, sup_gap, seminorm_gap, total_gap`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["param", "sup_gap", "seminorm_gap", "total_gap"])?;
        for i in 0..self.params.len() {
            wr.write_record(&[
                format!("{:.17e}", self.params[i]),
                format!("{:.17e}", self.sup_gaps[i]),
                format!("{:.17e}", self.seminorm_gaps[i]),
                format!("{:.17e}", self.total_gaps[i]),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

pub fn convergence_table(
    family: &[(f64, BoundaryFunction)],
    target: &BoundaryFunction,
    w: &Modulus,
    seed: u64,
) -> Result<ConvergenceTable> {
    convergence_table_with_budget(family, target, w, seed, DEFAULT_PAIR_BUDGET)
}

pub fn convergence_table_with_budget(
    family: &[(f64, BoundaryFunction)],
    target: &BoundaryFunction,
    w: &Modulus,
    seed: u64,
    pair_budget: usize,
) -> Result<ConvergenceTable> {
    let params: Vec<f64> = family.iter().map(|m| m.0).collect();
    if params.len() >= 2 {
        let up = params[1] > params[0];
        if let Some(i) = params
            .windows(2)
            .position(|p| if up { p[1] <= p[0] } else { p[1] >= p[0] })
        {
            return Err(Error::NonMonotone(i + 1));
        }
    }
    let mut t = ConvergenceTable {
        params,
        sup_gaps: Vec::new(),
        seminorm_gaps: Vec::new(),
        total_gaps: Vec::new(),
    };
    for (_, member) in family {
        let gap = omega_norm(&member.sub(target)?, w, pair_budget, seed)?;
        t.sup_gaps.push(gap.sup_norm);
        t.seminorm_gaps.push(gap.seminorm);
        t.total_gaps.push(gap.total);
    }
    Ok(t)
}
