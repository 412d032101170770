//! Fixture loading and seeded mesh generation shared by the test suites.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ptspline_exact::{parse_rational, Rational};
use ptspline_mesh::generate::{random_mesh, MeshShape};
use ptspline_mesh::{build_mesh, Segment, TMesh};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn rationals(v: &Value) -> Vec<Rational> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| parse_rational(s.as_str().expect("string")).expect("rational"))
        .collect()
}

fn segments(v: &Value) -> Vec<Segment> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| {
            let f = |k: &str| parse_rational(s[k].as_str().expect("string")).expect("rational");
            Segment::new(f("fixed"), f("lo"), f("hi"))
        })
        .collect()
}

/// Loads `fixtures/<name>` (mesh file format).
pub fn load_mesh(name: &str) -> TMesh {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    let v: Value = serde_json::from_str(&text).expect("fixture is JSON");
    let d = v["degrees"].as_array().expect("degrees");
    build_mesh(
        d[0].as_u64().expect("d1") as usize,
        d[1].as_u64().expect("d2") as usize,
        rationals(&v["x"]),
        rationals(&v["y"]),
        segments(&v["hsegments"]),
        segments(&v["vsegments"]),
    )
    .expect("fixture mesh is valid")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The deterministic family of random meshes used by the property suites:
/// `count` meshes with at most `max_cells` cells, degrees cycling through
/// `degrees`.
pub fn random_meshes(
    seed: u64,
    count: usize,
    max_cells: usize,
    degrees: &[(usize, usize)],
) -> Vec<TMesh> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let (d1, d2) = degrees[i % degrees.len()];
            let cells = 4 + (i * 7) % max_cells.saturating_sub(3).max(1);
            random_mesh(
                &mut r,
                MeshShape {
                    d1,
                    d2,
                    cells: cells.min(max_cells),
                    resolution: 10,
                    continue_prob: 0.5,
                },
            )
        })
        .collect()
}
