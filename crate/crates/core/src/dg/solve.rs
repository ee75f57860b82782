use alloc::vec;
use alloc::vec::Vec;

use super::BlockOperator;
use crate::linalg::{dense_solve, gemv_add};
use crate::sweep::Schedule;
use crate::{Error, Result};

/// DG coefficients, cell-major with `n_basis` entries per cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionField {
    pub n_basis: usize,
    pub coefficients: Vec<f64>,
}

impl SolutionField {
    pub fn zeros(n_cells: usize, n_basis: usize) -> Self {
        Self {
            n_basis,
            coefficients: vec![0.0; n_cells * n_basis],
        }
    }

    pub fn n_cells(&self) -> usize {
        self.coefficients.len() / self.n_basis
    }

    pub fn cell(&self, t: usize) -> &[f64] {
        &self.coefficients[t * self.n_basis..(t + 1) * self.n_basis]
    }

    pub fn cell_mut(&mut self, t: usize) -> &mut [f64] {
        &mut self.coefficients[t * self.n_basis..(t + 1) * self.n_basis]
    }

    pub fn is_finite(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_finite())
    }
}

/// Forward substitution in schedule order: every cell is solved once its
/// upwind neighbours are known.
pub fn sweep_solve(op: &BlockOperator, schedule: &Schedule, rhs: &[f64]) -> Result<SolutionField> {
    let nb = op.block_size();
    if rhs.len() != op.n_dofs() {
        return Err(Error::SizeMismatch {
            expected: op.n_dofs(),
            found: rhs.len(),
        });
    }
    if schedule.order.len() != op.n_cells() || !schedule.is_complete() {
        return Err(Error::SizeMismatch {
            expected: op.n_cells(),
            found: schedule.order.len(),
        });
    }
    let mut u = SolutionField::zeros(op.n_cells(), nb);
    let mut solved = vec![false; op.n_cells()];
    let mut local = vec![0.0; nb];
    let mut coupling = vec![0.0; nb];
    for &t in &schedule.order {
        coupling.iter_mut().for_each(|c| *c = 0.0);
        for (up, block) in op.upwind_blocks(t) {
            if !solved[*up] {
                return Err(Error::ScheduleInvalid { cell: t, upwind: *up });
            }
            gemv_add(block, nb, nb, u.cell(*up), &mut coupling);
        }
        for ((l, r), c) in local.iter_mut().zip(&rhs[t * nb..(t + 1) * nb]).zip(&coupling) {
            *l = r - c;
        }
        op.factor(t).solve_in_place(&mut local);
        u.cell_mut(t).copy_from_slice(&local);
        solved[t] = true;
    }
    Ok(u)
}

/// Expands the operator into a dense matrix and solves it with partial
/// pivoting and iterative refinement. Intended for small systems and as an oracle for sweeps.
pub fn direct_solve(op: &BlockOperator, rhs: &[f64]) -> Result<SolutionField> {
    let n = op.n_dofs();
    if rhs.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    let dense = op.to_coo().to_dense();
    let x = dense_solve(dense, n, rhs)?;
    Ok(SolutionField {
        n_basis: op.block_size(),
        coefficients: x,
    })
}
