use std::collections::BTreeSet;

use ptspline_exact::Rational;

use crate::{GridSegment, Orientation, TMesh, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LEdgeKind {
    /// Both ends on the boundary.
    CrossCut,
    /// Exactly one end on the boundary.
    Ray,
    /// Both ends are T-nodes.
    TLedge,
}

/// Maximal interior segment with its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LEdge {
    /// Position in [`TMesh::ledges`].
    pub id: usize,
    pub orientation: Orientation,
    pub fixed: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub grid: GridSegment,
    pub kind: LEdgeKind,
    /// Vertex indices ordered by increasing tangential coordinate, ends
    /// included.
    pub vertices: Vec<usize>,
    /// Knot multiplicity of the line (1 for every interior l-edge).
    pub multiplicity: usize,
}

impl LEdge {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_horizontal(&self) -> bool {
        self.orientation == Orientation::Horizontal
    }
}

/// Vertex and l-edge counts of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    /// Horizontal cross-cuts.
    pub c_h: usize,
    /// Vertical cross-cuts.
    pub c_v: usize,
    /// Horizontal T l-edges.
    pub t_h: usize,
    /// Vertical T l-edges.
    pub t_v: usize,
    pub rays_h: usize,
    pub rays_v: usize,
    /// Interior vertices.
    pub n_v: usize,
    /// Distinct vertices lying on T l-edges.
    pub n_t: usize,
    pub t_nodes: usize,
    pub crossings: usize,
}

impl Census {
    pub fn t(&self) -> usize {
        self.t_h + self.t_v
    }
}

pub(crate) fn derive_ledges(mesh: &TMesh) -> Vec<LEdge> {
    let mut out = Vec::new();
    for g in mesh.grid_segments() {
        let points: Vec<(usize, usize)> = match g.orientation {
            Orientation::Horizontal => (g.lo..=g.hi).map(|ix| (ix, g.fixed)).collect(),
            Orientation::Vertical => (g.lo..=g.hi).map(|iy| (g.fixed, iy)).collect(),
        };
        let vertices: Vec<usize> = points
            .into_iter()
            .filter_map(|(ix, iy)| mesh.vertex_index(ix, iy))
            .collect();
        let on_boundary = |v: usize| mesh.vertices()[v].kind == VertexKind::Boundary;
        let first = on_boundary(vertices[0]);
        let last = on_boundary(*vertices.last().expect("segment has ends"));
        let kind = match (first, last) {
            (true, true) => LEdgeKind::CrossCut,
            (false, false) => LEdgeKind::TLedge,
            _ => LEdgeKind::Ray,
        };
        let s = mesh.to_segment(g);
        out.push(LEdge {
            id: out.len(),
            orientation: g.orientation,
            fixed: s.fixed,
            lo: s.lo,
            hi: s.hi,
            grid: *g,
            kind,
            vertices,
            multiplicity: 1,
        });
    }
    out
}

/// All interior l-edges: horizontal ones first, each group sorted by
/// `(fixed, lo)`.
pub fn classify_ledges(mesh: &TMesh) -> Vec<LEdge> {
    mesh.ledges().to_vec()
}

impl TMesh {
    pub fn census(&self) -> Census {
        let mut c = Census::default();
        let mut on_t: BTreeSet<usize> = BTreeSet::new();
        for l in self.ledges() {
            let h = l.is_horizontal();
            match l.kind {
                LEdgeKind::CrossCut if h => c.c_h += 1,
                LEdgeKind::CrossCut => c.c_v += 1,
                LEdgeKind::Ray if h => c.rays_h += 1,
                LEdgeKind::Ray => c.rays_v += 1,
                LEdgeKind::TLedge => {
                    if h {
                        c.t_h += 1
                    } else {
                        c.t_v += 1
                    }
                    on_t.extend(l.vertices.iter().copied());
                }
            }
        }
        c.n_t = on_t.len();
        for v in self.vertices() {
            match v.kind {
                VertexKind::TNode => c.t_nodes += 1,
                VertexKind::CrossingNode => c.crossings += 1,
                VertexKind::Boundary => {}
            }
        }
        c.n_v = c.t_nodes + c.crossings;
        c
    }

    /// Ids of the T l-edges.
    pub fn t_ledge_ids(&self) -> Vec<usize> {
        self.ledges()
            .iter()
            .filter(|l| l.kind == LEdgeKind::TLedge)
            .map(|l| l.id)
            .collect()
    }

    pub fn ray_ids(&self) -> Vec<usize> {
        self.ledges()
            .iter()
            .filter(|l| l.kind == LEdgeKind::Ray)
            .map(|l| l.id)
            .collect()
    }
}
