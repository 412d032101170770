use num_traits::Zero;

use ptspline_bspline::{Edge, TensorBSpline};

use crate::ExtensionPlan;

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partition of the extended edges (as indices into
/// `plan.extended_edges`) such that no spline of `basis` jumps across edges
/// of two different groups. Groups are ordered by their first edge.
pub fn eee_block_structure(plan: &ExtensionPlan, basis: &[TensorBSpline]) -> Vec<Vec<usize>> {
    edge_blocks(&plan.extended_edges, basis)
}

/// As [`eee_block_structure`] for an explicit edge list.
pub fn edge_blocks(edges: &[Edge], basis: &[TensorBSpline]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for b in basis {
        let mut first: Option<usize> = None;
        for (i, e) in edges.iter().enumerate() {
            let jumps = b
                .derivative_jump(e)
                .expect("knots lie on mesh vertices")
                .coeffs
                .iter()
                .any(|c| !c.is_zero());
            if !jumps {
                continue;
            }
            match first {
                None => first = Some(i),
                Some(f) => {
                    let (a, c) = (find(&mut parent, f), find(&mut parent, i));
                    parent[a.max(c)] = a.min(c);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match slot[r] {
            Some(g) => groups[g].push(i),
            None => {
                slot[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}
