use alloc::vec::Vec;

use super::BlockOperator;
use crate::sweep::Schedule;
use crate::{Error, Result};

/// Block structure of an operator renumbered by sweep rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangularityReport {
    /// Off-diagonal blocks strictly above the block diagonal.
    pub upper_blocks: usize,
    /// Off-diagonal blocks below the block diagonal.
    pub lower_blocks: usize,
    /// Scalar nonzeros strictly above the diagonal of the renumbered matrix.
    pub upper_entries: usize,
}

impl TriangularityReport {
    pub fn is_block_lower_triangular(&self) -> bool {
        self.upper_blocks == 0
    }
}

/// Renumbers cells by their rank in `schedule` (rows and columns alike),
/// giving `P A P^T`, and reports how far it is from block lower triangular.
pub fn apply_permutation(op: &BlockOperator, schedule: &Schedule) -> Result<(BlockOperator, TriangularityReport)> {
    if schedule.order.len() != op.n_cells() || !schedule.is_complete() {
        return Err(Error::SizeMismatch {
            expected: op.n_cells(),
            found: schedule.order.len(),
        });
    }
    let nb = op.block_size();
    let mut diagonal = Vec::with_capacity(op.n_dofs() * nb);
    let mut upwind = Vec::with_capacity(op.n_cells());
    let mut report = TriangularityReport {
        upper_blocks: 0,
        lower_blocks: 0,
        upper_entries: 0,
    };
    for &t in &schedule.order {
        let row = schedule.rank[t];
        diagonal.extend_from_slice(op.diagonal_block(t));
        let mut blocks: Vec<(usize, Vec<f64>)> = op
            .upwind_blocks(t)
            .iter()
            .map(|(up, b)| (schedule.rank[*up], b.clone()))
            .collect();
        for (col, b) in &blocks {
            if *col > row {
                report.upper_blocks += 1;
                report.upper_entries += b.iter().filter(|v| **v != 0.0).count();
            } else {
                report.lower_blocks += 1;
            }
        }
        blocks.sort_by_key(|(c, _)| *c);
        upwind.push(blocks);
    }
    // Entries above the diagonal inside the diagonal blocks.
    for t in 0..op.n_cells() {
        let d = op.diagonal_block(t);
        for a in 0..nb {
            for b in a + 1..nb {
                if d[a * nb + b] != 0.0 {
                    report.upper_entries += 1;
                }
            }
        }
    }
    let permuted = BlockOperator::from_blocks(nb, op.direction().clone(), diagonal, upwind)?;
    Ok((permuted, report))
}
