use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::{LEdgeKind, MeshError, TMesh, VertexKind};

/// An l-edge with the vertices it keeps after removing those claimed by
/// earlier l-edges of the ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedLEdge {
    /// Id of the source l-edge.
    pub source: usize,
    /// Kept vertex indices, in order along the l-edge.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TPartition {
    pub parts: Vec<ReducedLEdge>,
}

impl TPartition {
    pub fn order(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.source).collect()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.vertices.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("the mesh is not diagonalizable")]
    NotDiagonalizable,
    #[error("the mesh has vanished l-edges {0:?}")]
    HasVanishedLEdge(Vec<usize>),
}

/// The three parts of the closed-form dimension: tensor part, T l-edge part
/// and ray part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionSplit {
    pub tensor: i64,
    pub tjoint: i64,
    pub ray: i64,
}

impl DimensionSplit {
    pub fn total(&self) -> i64 {
        self.tensor + self.tjoint + self.ray
    }
}

/// Reduces the T l-edges in the given order.
pub fn t_partition(mesh: &TMesh, order: &[usize]) -> Result<TPartition, MeshError> {
    let mut expected = mesh.t_ledge_ids();
    let mut given = order.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(MeshError::InvalidOrder);
    }
    let mut taken: HashSet<usize> = HashSet::new();
    let parts = order
        .iter()
        .map(|&id| {
            let l = &mesh.ledges()[id];
            let vertices: Vec<usize> = l
                .vertices
                .iter()
                .copied()
                .filter(|v| !taken.contains(v))
                .collect();
            taken.extend(l.vertices.iter().copied());
            ReducedLEdge {
                source: id,
                vertices,
            }
        })
        .collect();
    Ok(TPartition { parts })
}

/// Smallest reduced size a T l-edge needs in a diagonalizable ordering.
fn required(mesh: &TMesh, id: usize) -> usize {
    mesh.tangential_degree(mesh.ledges()[id].orientation) + 1
}

/// Peels T l-edges whose neighbours among the remaining ones do not exceed
/// their slack. Returns the peeled ids in removal order and the ids left
/// when no further edge can be peeled.
///
/// Two T l-edges share at most one vertex, so the reduced size of `l_i` is
/// its vertex count minus the number of earlier T l-edges it meets. An
/// ordering therefore exists iff peeling empties the set; removals only
/// lower the other degrees, so the order of removal never matters.
fn peel(mesh: &TMesh) -> (Vec<usize>, Vec<usize>) {
    let ids = mesh.t_ledge_ids();
    let ledges = mesh.ledges();
    let sets: Vec<HashSet<usize>> = ids
        .iter()
        .map(|&id| ledges[id].vertices.iter().copied().collect())
        .collect();
    let meets = |a: usize, b: usize| a != b && !sets[a].is_disjoint(&sets[b]);
    let mut remaining: BTreeSet<usize> = (0..ids.len()).collect();
    let mut peeled = Vec::with_capacity(ids.len());
    while !remaining.is_empty() {
        // Shortest peelable edge goes last, so longer edges come first.
        let pick = remaining
            .iter()
            .copied()
            .filter(|&a| {
                let deg = remaining.iter().filter(|&&b| meets(a, b)).count();
                let n = ledges[ids[a]].vertex_count();
                n >= deg + required(mesh, ids[a])
            })
            .min_by_key(|&a| (ledges[ids[a]].vertex_count(), std::cmp::Reverse(ids[a])));
        let Some(a) = pick else {
            break;
        };
        remaining.remove(&a);
        peeled.push(ids[a]);
    }
    (peeled, remaining.into_iter().map(|a| ids[a]).collect())
}

/// Decides diagonalizability and returns a witness partition.
pub fn is_diagonalizable(mesh: &TMesh) -> (bool, Option<TPartition>) {
    let (mut order, stuck) = peel(mesh);
    if !stuck.is_empty() {
        return (false, None);
    }
    order.reverse();
    let part = t_partition(mesh, &order).expect("permutation of T l-edges");
    debug_assert!(part
        .parts
        .iter()
        .all(|p| p.vertices.len() >= required(mesh, p.source)));
    (true, Some(part))
}

/// T l-edges that block every diagonalizable ordering (empty iff the mesh
/// is diagonalizable).
pub fn diagonalization_obstruction(mesh: &TMesh) -> Vec<usize> {
    peel(mesh).1
}

/// T l-edges with at most `d + 1` vertices (`d` the tangential degree).
pub fn detect_vanished_ledges(mesh: &TMesh) -> Vec<usize> {
    mesh.ledges()
        .iter()
        .filter(|l| l.kind == LEdgeKind::TLedge && l.vertex_count() <= required(mesh, l.id))
        .map(|l| l.id)
        .collect()
}

fn check_formula_applies(mesh: &TMesh) -> Result<(), DimensionError> {
    let vanished = detect_vanished_ledges(mesh);
    if !vanished.is_empty() {
        return Err(DimensionError::HasVanishedLEdge(vanished));
    }
    if !is_diagonalizable(mesh).0 {
        return Err(DimensionError::NotDiagonalizable);
    }
    Ok(())
}

/// Closed-form dimension of the maximal-smoothness spline space on a
/// diagonalizable mesh without vanished l-edges.
pub fn dimension_diagonalizable(mesh: &TMesh) -> Result<usize, DimensionError> {
    check_formula_applies(mesh)?;
    let (d1, d2) = mesh.degrees();
    let c = mesh.census();
    let value = (d1 + 1) * (d2 + 1) + c.c_h * (d1 + 1) + c.c_v * (d2 + 1) + c.n_v
        - ((d1 + 1) * c.t_h + (d2 + 1) * c.t_v);
    Ok(value)
}

/// Tensor / T l-edge / ray split of [`dimension_diagonalizable`].
pub fn dimension_split(mesh: &TMesh) -> Result<DimensionSplit, DimensionError> {
    check_formula_applies(mesh)?;
    let (d1, d2) = (mesh.degrees().0 as i64, mesh.degrees().1 as i64);
    let c = mesh.census();
    let [c_h, c_v, t_h, t_v, n_v, n_t] =
        [c.c_h, c.c_v, c.t_h, c.t_v, c.n_v, c.n_t].map(|v| v as i64);
    Ok(DimensionSplit {
        // Vertical cross-cuts are knots in x.
        tensor: (d1 + 1 + c_v) * (d2 + 1 + c_h),
        tjoint: n_t - (d1 + 1) * t_h - (d2 + 1) * t_v,
        ray: n_v - n_t - c_v * c_h,
    })
}

/// Reduced rays: each ray keeps its interior vertices that lie on no T
/// l-edge and on no earlier ray. Rays are taken in id order.
pub fn ray_partition(mesh: &TMesh) -> Vec<ReducedLEdge> {
    let mut taken: HashSet<usize> = HashSet::new();
    for &id in &mesh.t_ledge_ids() {
        taken.extend(mesh.ledges()[id].vertices.iter().copied());
    }
    mesh.ray_ids()
        .into_iter()
        .map(|id| {
            let l = &mesh.ledges()[id];
            let vertices: Vec<usize> = l
                .vertices
                .iter()
                .copied()
                .filter(|&v| mesh.vertices()[v].kind != VertexKind::Boundary && !taken.contains(&v))
                .collect();
            taken.extend(l.vertices.iter().copied());
            ReducedLEdge {
                source: id,
                vertices,
            }
        })
        .collect()
}
