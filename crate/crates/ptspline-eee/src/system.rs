use num_traits::Zero;

use ptspline_bspline::{BSplineError, Edge, TensorBSpline};
use ptspline_exact::{dense, Rational};
use ptspline_extension::{edge_blocks, ExtensionPlan};

/// One scalar equation: the coefficient of `s^power` in the jump across
/// extended edge `edge`, `s` measured from the edge's low end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EeeRow {
    pub edge: usize,
    pub power: usize,
    /// Dense over the extended basis.
    pub coeffs: Vec<Rational>,
}

/// The linear conditions under which a combination of extended-basis
/// splines has no top-order jump across any extended edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EeeSystem {
    pub ncols: usize,
    pub edges: Vec<Edge>,
    /// Identically zero equations are dropped.
    pub rows: Vec<EeeRow>,
    /// Extended-edge groups that share no spline, ordered by first edge.
    pub blocks: Vec<Vec<usize>>,
}

impl EeeSystem {
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.coeffs.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        dense::rank(&self.matrix(), self.ncols)
    }

    /// Columns that appear in some equation.
    pub fn active_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&j| self.rows.iter().any(|r| !r.coeffs[j].is_zero()))
            .collect()
    }

    /// `M c`, which is zero exactly for solutions.
    pub fn residual(&self, c: &[Rational]) -> Vec<Rational> {
        dense::mat_vec(&self.matrix(), c)
    }

    /// Rows of one block restricted to `cols`.
    fn block_matrix(&self, block: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .filter(|r| block.contains(&r.edge))
            .map(|r| cols.iter().map(|&j| r.coeffs[j].clone()).collect())
            .collect()
    }
}

pub fn assemble_eee(
    basis: &[TensorBSpline],
    plan: &ExtensionPlan,
) -> Result<EeeSystem, BSplineError> {
    assemble_on_edges(basis, &plan.extended_edges)
}

/// The system for an explicit list of edges.
pub fn assemble_on_edges(
    basis: &[TensorBSpline],
    edges: &[Edge],
) -> Result<EeeSystem, BSplineError> {
    let mut rows = Vec::new();
    for (e, edge) in edges.iter().enumerate() {
        let jumps = basis
            .iter()
            .map(|b| b.derivative_jump(edge))
            .collect::<Result<Vec<_>, _>>()?;
        let len = jumps.iter().map(|p| p.len()).max().unwrap_or(0);
        for power in 0..len {
            let coeffs: Vec<Rational> = jumps
                .iter()
                .map(|p| p.coeffs.get(power).cloned().unwrap_or_else(Rational::zero))
                .collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                rows.push(EeeRow {
                    edge: e,
                    power,
                    coeffs,
                });
            }
        }
    }
    Ok(EeeSystem {
        ncols: basis.len(),
        edges: edges.to_vec(),
        rows,
        blocks: edge_blocks(edges, basis),
    })
}

fn as_rationals(v: Vec<ptspline_exact::Integer>) -> Vec<Rational> {
    v.into_iter().map(Rational::from_integer).collect()
}

/// Canonical null-space basis solved one block at a time. Each vector has
/// a 1-free column `f` (zero at every other free column), is scaled to
/// coprime integers with a positive entry at `f`, and vectors come in
/// increasing `f`.
pub fn nullspace(sys: &EeeSystem) -> Vec<Vec<Rational>> {
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut covered = vec![false; sys.ncols];
    for block in &sys.blocks {
        let cols: Vec<usize> = (0..sys.ncols)
            .filter(|&j| {
                sys.rows
                    .iter()
                    .any(|r| block.contains(&r.edge) && !r.coeffs[j].is_zero())
            })
            .collect();
        if cols.is_empty() {
            continue;
        }
        let m = sys.block_matrix(block, &cols);
        let free = dense::rref(&m, cols.len()).free_columns();
        for (f, v) in free.into_iter().zip(dense::nullspace(&m, cols.len())) {
            let mut full = vec![Rational::zero(); sys.ncols];
            for (&j, c) in cols.iter().zip(as_rationals(v)) {
                full[j] = c;
            }
            out.push((cols[f], full));
        }
        for j in cols {
            covered[j] = true;
        }
    }
    for (j, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
        let mut unit = vec![Rational::zero(); sys.ncols];
        unit[j] = Rational::from_integer(1.into());
        out.push((j, unit));
    }
    out.sort_by_key(|(f, _)| *f);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Same basis as [`nullspace`], from one elimination of the whole matrix.
pub fn nullspace_monolithic(sys: &EeeSystem) -> Vec<Vec<Rational>> {
    dense::nullspace(&sys.matrix(), sys.ncols)
        .into_iter()
        .map(as_rationals)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_exact::{frac, int};

    fn system(rows: Vec<Vec<Rational>>, blocks: Vec<Vec<usize>>) -> EeeSystem {
        EeeSystem {
            ncols: rows[0].len(),
            edges: Vec::new(),
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(i, coeffs)| EeeRow {
                    edge: i,
                    power: 0,
                    coeffs,
                })
                .collect(),
            blocks,
        }
    }

    #[test]
    fn two_by_two_with_empty_kernel() {
        let sys = system(
            vec![vec![frac(2, 3), frac(-4, 9)], vec![frac(-1, 3), frac(4, 9)]],
            vec![vec![0, 1]],
        );
        assert!(nullspace(&sys).is_empty());
        assert!(nullspace_monolithic(&sys).is_empty());
    }

    #[test]
    fn untouched_columns_become_units() {
        let sys = system(
            vec![vec![int(0), frac(1, 2), int(-1), int(0)]],
            vec![vec![0]],
        );
        let n = nullspace(&sys);
        assert_eq!(
            n,
            vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(2), int(1), int(0)],
                vec![int(0), int(0), int(0), int(1)],
            ]
        );
        assert_eq!(n, nullspace_monolithic(&sys));
        assert!(n
            .iter()
            .all(|v| sys.residual(v).iter().all(|r| r.is_zero())));
    }

    #[test]
    fn blocks_merge_in_free_column_order() {
        let sys = system(
            vec![
                vec![int(1), int(0), int(1), int(0)],
                vec![int(0), int(1), int(0), int(-3)],
            ],
            vec![vec![0], vec![1]],
        );
        let n = nullspace(&sys);
        assert_eq!(n, nullspace_monolithic(&sys));
        assert_eq!(n[0], vec![int(-1), int(0), int(1), int(0)]);
        assert_eq!(n[1], vec![int(0), int(3), int(0), int(1)]);
    }
}
