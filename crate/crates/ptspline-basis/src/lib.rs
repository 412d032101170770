//! Bases of tensor-product B-splines on diagonalizable T-meshes.
//!
//! The basis has three parts: the open-knot tensor basis over the
//! cross-cuts, splines associated with the T l-edges in the order of a
//! t-partition, and splines associated with the rays. Each T l-edge or ray
//! receives exactly as many splines as it contributes to the closed-form
//! dimension. A candidate is accepted only if it raises the exact rank of
//! everything chosen so far, and within one l-edge only if its tangential
//! factor is independent of the tangential factors already chosen there.

mod candidates;
mod rank;

use thiserror::Error;

use ptspline_bspline::{SplineTag, TensorBSpline};
use ptspline_mesh::{
    dimension_split, is_diagonalizable, ray_partition, DimensionError, LEdge, Orientation, TMesh,
    TPartition,
};

use candidates::{associated, associated_candidates, cross_splines, fits, IndexSpline};
use rank::{grid_row, line_row, Tracker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error("l-edge {ledge} needs {quota} associated splines, found {found}")]
    QuotaUnsatisfiable {
        ledge: usize,
        quota: usize,
        found: usize,
    },
}

/// Which l-edge a spline was chosen for and at which of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub tag: SplineTag,
    /// Mesh vertex indices of the tangential knots on the l-edge (empty for
    /// cross splines).
    pub vertices: Vec<usize>,
}

/// Exact certificate that the basis is linearly independent: its per-cell
/// coefficient matrix has full rank modulo `prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub prime: u64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedBasis {
    pub cross: Vec<TensorBSpline>,
    pub tjoint: Vec<TensorBSpline>,
    pub ray: Vec<TensorBSpline>,
    /// One entry per spline, in the order of [`ExtendedBasis::iter`].
    pub provenance: Vec<Provenance>,
    pub certificate: IndependenceCertificate,
}

impl ExtendedBasis {
    pub fn len(&self) -> usize {
        self.cross.len() + self.tjoint.len() + self.ray.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cross splines, then T l-edge splines, then ray splines.
    pub fn iter(&self) -> impl Iterator<Item = &TensorBSpline> {
        self.cross.iter().chain(&self.tjoint).chain(&self.ray)
    }

    pub fn get(&self, i: usize) -> &TensorBSpline {
        self.iter().nth(i).expect("index in range")
    }

    pub fn to_vec(&self) -> Vec<TensorBSpline> {
        self.iter().cloned().collect()
    }
}

/// Shortfall of one l-edge during selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shortfall {
    pub ledge: usize,
    pub quota: usize,
    pub found: usize,
}

struct Selection {
    cross: Vec<TensorBSpline>,
    tjoint: Vec<TensorBSpline>,
    ray: Vec<TensorBSpline>,
    provenance: Vec<Provenance>,
    shortfalls: Vec<Shortfall>,
    tracker: Tracker,
}

struct Selector<'a> {
    mesh: &'a TMesh,
    tracker: Tracker,
    provenance: Vec<Provenance>,
}

impl<'a> Selector<'a> {
    fn new(mesh: &'a TMesh) -> (Self, Vec<TensorBSpline>) {
        let mut s = Selector {
            mesh,
            tracker: Tracker::new(),
            provenance: Vec::new(),
        };
        let cross: Vec<TensorBSpline> = cross_splines(mesh)
            .iter()
            .map(|c| c.to_spline(mesh, SplineTag::Cross))
            .collect();
        for b in &cross {
            let fresh = s.tracker.insert(grid_row(mesh, b));
            debug_assert!(fresh, "open-knot tensor splines are independent");
            s.provenance.push(Provenance {
                tag: SplineTag::Cross,
                vertices: Vec::new(),
            });
        }
        (s, cross)
    }

    /// Picks up to `quota` splines for `l`, skipping any associated with
    /// one of `earlier`.
    fn pick(
        &mut self,
        l: &LEdge,
        quota: usize,
        earlier: &[&LEdge],
        tag: SplineTag,
    ) -> (Vec<TensorBSpline>, Option<Shortfall>) {
        let mesh = self.mesh;
        let lines = match l.orientation {
            Orientation::Horizontal => mesh.xs(),
            Orientation::Vertical => mesh.ys(),
        };
        let mut tangential = Tracker::new();
        let mut chosen = Vec::new();
        if quota > 0 {
            for c in associated_candidates(mesh, l) {
                if earlier.iter().any(|e| associated(&c.spline, e)) {
                    continue;
                }
                let b = c.spline.to_spline(mesh, tag);
                let kv = match l.orientation {
                    Orientation::Horizontal => &b.x,
                    Orientation::Vertical => &b.y,
                };
                let t_row = line_row(lines, kv);
                if !tangential.accepts(&t_row) {
                    continue;
                }
                if !self.tracker.insert(grid_row(mesh, &b)) {
                    continue;
                }
                tangential.insert(t_row);
                self.provenance.push(Provenance {
                    tag,
                    vertices: knot_vertices(mesh, l, &c.spline),
                });
                chosen.push(b);
                if chosen.len() == quota {
                    break;
                }
            }
        }
        let short = (chosen.len() < quota).then_some(Shortfall {
            ledge: l.id,
            quota,
            found: chosen.len(),
        });
        (chosen, short)
    }
}

fn knot_vertices(mesh: &TMesh, l: &LEdge, s: &IndexSpline) -> Vec<usize> {
    let mut ts = match l.orientation {
        Orientation::Horizontal => s.x.clone(),
        Orientation::Vertical => s.y.clone(),
    };
    ts.dedup();
    ts.into_iter()
        .filter_map(|t| match l.orientation {
            Orientation::Horizontal => mesh.vertex_index(t, l.grid.fixed),
            Orientation::Vertical => mesh.vertex_index(l.grid.fixed, t),
        })
        .collect()
}

fn quota(mesh: &TMesh, l: &LEdge, kept: usize) -> usize {
    kept.saturating_sub(mesh.tangential_degree(l.orientation) + 1)
}

fn select(ext: &TMesh, part: &TPartition) -> Selection {
    let (mut sel, cross) = Selector::new(ext);
    let ledges = ext.ledges();
    let mut shortfalls = Vec::new();
    let mut tjoint = Vec::new();
    let mut done: Vec<&LEdge> = Vec::new();
    for p in &part.parts {
        let l = &ledges[p.source];
        let q = quota(ext, l, p.vertices.len());
        let (chosen, short) = sel.pick(l, q, &done, SplineTag::TLedge(l.id));
        tjoint.extend(chosen);
        shortfalls.extend(short);
        done.push(l);
    }
    let mut ray = Vec::new();
    let mut done: Vec<&LEdge> = Vec::new();
    for p in ray_partition(ext) {
        let l = &ledges[p.source];
        let (chosen, short) = sel.pick(l, p.vertices.len(), &done, SplineTag::Ray(l.id));
        ray.extend(chosen);
        shortfalls.extend(short);
        done.push(l);
    }
    Selection {
        cross,
        tjoint,
        ray,
        provenance: sel.provenance,
        shortfalls,
        tracker: sel.tracker,
    }
}

fn witness(ext: &TMesh) -> Result<TPartition, BasisError> {
    // Also rejects vanished l-edges.
    dimension_split(ext)?;
    is_diagonalizable(ext)
        .1
        .ok_or(BasisError::Dimension(DimensionError::NotDiagonalizable))
}

/// The open-knot tensor-product basis over the cross-cuts of `ext`, built
/// from consecutive cross-cut lines in both directions.
pub fn select_cross_basis(ext: &TMesh) -> Vec<TensorBSpline> {
    cross_splines(ext)
        .iter()
        .map(|c| c.to_spline(ext, SplineTag::Cross))
        .collect()
}

/// Splines associated with the T l-edges of `part`, in partition order.
pub fn select_tledge_basis(
    ext: &TMesh,
    part: &TPartition,
) -> Result<Vec<TensorBSpline>, BasisError> {
    let s = select(ext, part);
    let tledges: Vec<usize> = part.order();
    match s.shortfalls.iter().find(|f| tledges.contains(&f.ledge)) {
        Some(f) => Err(quota_error(f)),
        None => Ok(s.tjoint),
    }
}

/// Splines associated with the reduced rays, rays in id order.
pub fn select_ray_basis(ext: &TMesh) -> Result<Vec<TensorBSpline>, BasisError> {
    let part = witness(ext)?;
    let s = select(ext, &part);
    let rays = ext.ray_ids();
    match s.shortfalls.iter().find(|f| rays.contains(&f.ledge)) {
        Some(f) => Err(quota_error(f)),
        None => Ok(s.ray),
    }
}

fn quota_error(f: &Shortfall) -> BasisError {
    BasisError::QuotaUnsatisfiable {
        ledge: f.ledge,
        quota: f.quota,
        found: f.found,
    }
}

/// Per-l-edge shortfalls of the selection on `ext`; empty iff
/// [`assemble_extended_basis`] succeeds.
pub fn quota_shortfalls(ext: &TMesh) -> Result<Vec<Shortfall>, BasisError> {
    let part = witness(ext)?;
    Ok(select(ext, &part).shortfalls)
}

/// The full basis of the spline space over a diagonalizable mesh without
/// vanished l-edges.
pub fn assemble_extended_basis(ext: &TMesh) -> Result<ExtendedBasis, BasisError> {
    let part = witness(ext)?;
    assemble_with_partition(ext, &part)
}

pub fn assemble_with_partition(
    ext: &TMesh,
    part: &TPartition,
) -> Result<ExtendedBasis, BasisError> {
    let s = select(ext, part);
    if let Some(f) = s.shortfalls.first() {
        return Err(quota_error(f));
    }
    let basis = ExtendedBasis {
        certificate: IndependenceCertificate {
            prime: s.tracker.prime(),
            rank: s.tracker.rank(),
        },
        cross: s.cross,
        tjoint: s.tjoint,
        ray: s.ray,
        provenance: s.provenance,
    };
    debug_assert_eq!(basis.certificate.rank, basis.len());
    Ok(basis)
}

fn indices(mesh: &TMesh, b: &TensorBSpline) -> Option<IndexSpline> {
    let idx = |kv: &ptspline_bspline::KnotVector, lines: &[ptspline_exact::Rational]| {
        kv.knots()
            .iter()
            .map(|k| lines.binary_search(k).ok())
            .collect::<Option<Vec<usize>>>()
    };
    Some(IndexSpline {
        x: idx(&b.x, mesh.xs())?,
        y: idx(&b.y, mesh.ys())?,
    })
}

/// Whether every knot line of `b` runs through the mesh across the whole
/// support of `b`, so that `b` lies in the spline space over `mesh`.
pub fn fits_mesh(mesh: &TMesh, b: &TensorBSpline) -> bool {
    indices(mesh, b).is_some_and(|s| fits(mesh, &s))
}

/// Whether `b` has a knot segment lying inside the l-edge `l`.
pub fn is_associated(mesh: &TMesh, b: &TensorBSpline, l: &LEdge) -> bool {
    indices(mesh, b).is_some_and(|s| associated(&s, l))
}
