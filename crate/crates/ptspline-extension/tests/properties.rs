use ptspline_basis::assemble_extended_basis;
use ptspline_extension::{eee_block_structure, plan_extension, Route, Strategy};
use ptspline_oracle::oracle_dimension;
use ptspline_testkit::random_meshes;

#[test]
fn plans_are_complete_idempotent_and_no_longer_than_the_fallback() {
    for mesh in random_meshes(5, 40, 40, &[(1, 1), (2, 2)]) {
        let plan = plan_extension(&mesh, Strategy::MinimalGreedy);
        let ext = &plan.extended_mesh;
        assert!(assemble_extended_basis(ext).is_ok());
        assert!(plan_extension(ext, Strategy::MinimalGreedy)
            .steps
            .is_empty());
        let fh = plan_extension(&mesh, Strategy::FullHorizontal);
        assert!(assemble_extended_basis(&fh.extended_mesh).is_ok());
        if plan.route == Route::Greedy {
            assert!(plan.steps.len() <= fh.steps.len());
        }
        let last = plan.chain(&mesh).pop().unwrap();
        assert_eq!(last.hsegments(), ext.hsegments());
        assert_eq!(last.vsegments(), ext.vsegments());
    }
}

#[test]
fn oracle_dimension_grows_along_chains() {
    for mesh in random_meshes(6, 12, 30, &[(1, 1), (2, 2)]) {
        let plan = plan_extension(&mesh, Strategy::MinimalGreedy);
        let dims: Vec<usize> = plan.chain(&mesh).iter().map(oracle_dimension).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    }
}

#[test]
fn blocks_partition_edges_and_separate_jumps() {
    for mesh in random_meshes(7, 40, 40, &[(1, 1), (2, 2)]) {
        let plan = plan_extension(&mesh, Strategy::MinimalGreedy);
        let basis = assemble_extended_basis(&plan.extended_mesh)
            .unwrap()
            .to_vec();
        let groups = eee_block_structure(&plan, &basis);
        let mut all: Vec<usize> = groups.iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, (0..plan.extended_edges.len()).collect::<Vec<_>>());
        let jumps = |b, e: usize| {
            ptspline_bspline::TensorBSpline::derivative_jump(b, &plan.extended_edges[e])
                .unwrap()
                .coeffs
                .iter()
                .any(|c| !num_traits::Zero::is_zero(c))
        };
        for b in &basis {
            let hit: Vec<usize> = groups
                .iter()
                .enumerate()
                .filter(|(_, g)| g.iter().any(|&e| jumps(b, e)))
                .map(|(i, _)| i)
                .collect();
            assert!(hit.len() <= 1, "spline jumps in groups {hit:?}");
        }
    }
}
