use ptspline_exact::int;
use ptspline_mesh::{
    classify_ledges, detect_vanished_ledges, dimension_diagonalizable, dimension_split,
    is_diagonalizable, ray_partition, t_partition, LEdgeKind, Orientation, TMesh, VertexKind,
};
use ptspline_testkit::load_mesh;

fn find(mesh: &TMesh, o: Orientation, fixed: i64) -> usize {
    mesh.ledges()
        .iter()
        .find(|l| l.orientation == o && l.fixed == int(fixed))
        .map(|l| l.id)
        .expect("l-edge exists")
}

#[test]
fn seven_by_seven_classification() {
    let m = load_mesh("t_mesh_7x7.json");
    let ledges = classify_ledges(&m);
    let t: Vec<_> = ledges
        .iter()
        .filter(|l| l.kind == LEdgeKind::TLedge)
        .collect();
    assert_eq!(t.len(), 3);
    let vertical_t = &ledges[find(&m, Orientation::Vertical, 4)];
    assert_eq!(vertical_t.kind, LEdgeKind::TLedge);
    assert_eq!(
        (vertical_t.lo.clone(), vertical_t.hi.clone()),
        (int(2), int(5))
    );
    assert_eq!(
        ledges[find(&m, Orientation::Horizontal, 2)].kind,
        LEdgeKind::TLedge
    );
    assert_eq!(
        ledges[find(&m, Orientation::Horizontal, 5)].kind,
        LEdgeKind::TLedge
    );
    // The ray ending on the top-left boundary.
    let ray = &ledges[find(&m, Orientation::Horizontal, 6)];
    assert_eq!(ray.kind, LEdgeKind::Ray);
    let first = &m.vertices()[ray.vertices[0]];
    assert_eq!(first.kind, VertexKind::Boundary);
    assert_eq!(
        ledges.iter().filter(|l| l.kind == LEdgeKind::Ray).count(),
        3
    );

    let c = m.census();
    assert_eq!((c.c_h, c.c_v, c.t_h, c.t_v), (2, 4, 2, 1));
    assert_eq!(c.n_v, 29);
    assert_eq!(c.n_t, 12);
    assert_eq!(c.n_v, c.t_nodes + c.crossings);
}

#[test]
fn seven_by_seven_partition_and_dimension() {
    let m = load_mesh("t_mesh_7x7.json");
    let l1 = find(&m, Orientation::Vertical, 4);
    let l2 = find(&m, Orientation::Horizontal, 2);
    let l3 = find(&m, Orientation::Horizontal, 5);
    let p = t_partition(&m, &[l1, l2, l3]).unwrap();
    let sizes: Vec<usize> = p.parts.iter().map(|r| r.vertices.len()).collect();
    assert_eq!(sizes, vec![4, 4, 4]);
    // l2 loses its crossing with l1, l3 likewise.
    let lost = |part: usize, src: usize| {
        let all = &m.ledges()[src].vertices;
        all.iter()
            .filter(|v| !p.parts[part].vertices.contains(v))
            .map(|&v| (m.vertices()[v].x.clone(), m.vertices()[v].y.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(lost(1, l2), vec![(int(4), int(2))]);
    assert_eq!(lost(2, l3), vec![(int(4), int(5))]);
    assert_eq!(p.total(), m.census().n_t);

    let (ok, witness) = is_diagonalizable(&m);
    assert!(ok);
    assert_eq!(witness.unwrap().total(), 12);
    assert!(detect_vanished_ledges(&m).is_empty());
    assert_eq!(dimension_diagonalizable(&m), Ok(47));
    let split = dimension_split(&m).unwrap();
    assert_eq!((split.tensor, split.tjoint, split.ray), (35, 3, 9));

    let rays = ray_partition(&m);
    let mut counts: Vec<usize> = rays.iter().map(|r| r.vertices.len()).collect();
    counts.sort();
    assert_eq!(counts, vec![2, 3, 4]);
}

#[test]
fn partition_rejects_bad_order() {
    let m = load_mesh("t_mesh_7x7.json");
    assert!(t_partition(&m, &[0]).is_err());
}

#[test]
fn vanished_boundary_of_definition() {
    // Horizontal T l-edge with exactly d1 + 2 = 4 vertices at d1 = 2, and
    // the same mesh at d1 = 3 where it has only d1 + 1.
    let xs: Vec<_> = (0..=5).map(int).collect();
    let ys: Vec<_> = (0..=3).map(int).collect();
    let seg = |f, lo, hi| ptspline_mesh::Segment::new(int(f), int(lo), int(hi));
    let hs = vec![seg(1, 0, 5), seg(2, 1, 4)];
    let vs = vec![seg(1, 0, 3), seg(2, 0, 3), seg(3, 0, 3), seg(4, 0, 3)];
    let m =
        ptspline_mesh::build_mesh(2, 2, xs.clone(), ys.clone(), hs.clone(), vs.clone()).unwrap();
    let t = m.t_ledge_ids();
    assert_eq!(t.len(), 1);
    assert_eq!(m.ledges()[t[0]].vertex_count(), 4);
    assert!(detect_vanished_ledges(&m).is_empty());
    let p = t_partition(&m, &t).unwrap();
    assert_eq!(p.parts[0].vertices, m.ledges()[t[0]].vertices);
    let m3 = m.with_degrees(3, 2).unwrap();
    assert_eq!(detect_vanished_ledges(&m3), t);
}

#[test]
fn tensor_is_vacuously_diagonalizable() {
    let m = ptspline_mesh::generate::integer_tensor_mesh(2, 3, 4, 5);
    assert!(m.is_tensor());
    assert_eq!(m.census().t(), 0);
    let (ok, w) = is_diagonalizable(&m);
    assert!(ok && w.unwrap().parts.is_empty());
    assert_eq!(dimension_diagonalizable(&m), Ok((4 + 2) * (5 + 3)));
}
