//! PT-spline bases on arbitrary T-meshes.
//!
//! The mesh is extended until a basis of associated tensor B-splines
//! exists, and the combinations of that basis with no top-order derivative
//! jump across any added edge form a basis of the spline space on the
//! original mesh.

mod nonneg;
mod system;

pub use nonneg::{nonnegativize, nonnegativize_with, NonnegError, NonnegativeBasis};
pub use system::{
    assemble_eee, assemble_on_edges, nullspace, nullspace_monolithic, EeeRow, EeeSystem,
};

use num_traits::{One, Zero};
use thiserror::Error;

use ptspline_basis::{assemble_extended_basis, BasisError, ExtendedBasis};
use ptspline_bspline::{BSplineError, SplineCombination};
use ptspline_exact::Rational;
use ptspline_extension::{plan_extension, ExtensionPlan, Strategy};
use ptspline_mesh::TMesh;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EeeError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    BSpline(#[from] BSplineError),
}

/// A combination of extended-basis splines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtSpline {
    /// `(extended basis index, coefficient)`, increasing index, no zeros.
    pub terms: Vec<(usize, Rational)>,
}

impl PtSpline {
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        PtSpline {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    /// A single extended-basis spline with coefficient 1.
    pub fn is_single(&self) -> bool {
        matches!(self.terms.as_slice(), [(_, c)] if c.is_one())
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.terms
            .iter()
            .find(|(i, _)| *i == index)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }
}

#[derive(Debug, Clone)]
pub struct PtBasis {
    pub mesh: TMesh,
    pub plan: ExtensionPlan,
    pub extended: ExtendedBasis,
    pub system: EeeSystem,
    pub splines: Vec<PtSpline>,
}

impl PtBasis {
    pub fn len(&self) -> usize {
        self.splines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splines.is_empty()
    }

    pub fn combination(&self, s: &PtSpline) -> SplineCombination {
        SplineCombination::new(
            s.terms
                .iter()
                .map(|(i, c)| (c.clone(), self.extended.get(*i).clone()))
                .collect(),
        )
    }

    pub fn combinations(&self) -> Vec<SplineCombination> {
        self.splines.iter().map(|s| self.combination(s)).collect()
    }
}

pub fn build_pt_basis(mesh: &TMesh) -> Result<PtBasis, EeeError> {
    build_pt_basis_with(mesh, Strategy::MinimalGreedy)
}

pub fn build_pt_basis_with(mesh: &TMesh, strategy: Strategy) -> Result<PtBasis, EeeError> {
    build_from_plan(mesh, plan_extension(mesh, strategy))
}

/// Runs the pipeline on an already planned extension of `mesh`.
pub fn build_from_plan(mesh: &TMesh, plan: ExtensionPlan) -> Result<PtBasis, EeeError> {
    let extended = assemble_extended_basis(&plan.extended_mesh)?;
    let system = assemble_eee(&extended.to_vec(), &plan)?;
    let splines = nullspace(&system)
        .iter()
        .map(|v| PtSpline::from_dense(v))
        .collect();
    Ok(PtBasis {
        mesh: mesh.clone(),
        plan,
        extended,
        system,
        splines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_exact::int;
    use ptspline_mesh::generate::integer_tensor_mesh;

    #[test]
    fn dense_round_trip() {
        let s = PtSpline::from_dense(&[int(0), int(2), int(0), int(1)]);
        assert_eq!(s.terms, vec![(1, int(2)), (3, int(1))]);
        assert_eq!(s.to_dense(4), vec![int(0), int(2), int(0), int(1)]);
        assert!(!s.is_single());
        assert_eq!(s.coefficient(2), int(0));
    }

    #[test]
    fn tensor_mesh_passes_through() {
        let mesh = integer_tensor_mesh(2, 1, 3, 2);
        let b = build_pt_basis(&mesh).unwrap();
        assert!(b.system.rows.is_empty());
        assert_eq!(b.len(), 5 * 3);
        assert!(b.splines.iter().all(PtSpline::is_single));
    }
}
