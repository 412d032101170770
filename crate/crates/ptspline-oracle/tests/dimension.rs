use ptspline_mesh::dimension_diagonalizable;
use ptspline_mesh::generate::integer_tensor_mesh;
use ptspline_oracle::oracle_dimension;
use ptspline_testkit::load_mesh;

#[test]
fn tensor_meshes() {
    for (d1, d2) in [(1, 1), (2, 2), (3, 1), (2, 3)] {
        for (m, n) in [(1, 1), (2, 3), (4, 2)] {
            let mesh = integer_tensor_mesh(d1, d2, m, n);
            assert_eq!(
                oracle_dimension(&mesh),
                (m + d1) * (n + d2),
                "{d1} {d2} {m} {n}"
            );
        }
    }
}

#[test]
fn seven_by_seven() {
    let m = load_mesh("t_mesh_7x7.json");
    assert_eq!(oracle_dimension(&m), 47);
    assert_eq!(dimension_diagonalizable(&m), Ok(47));
}
