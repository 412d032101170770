use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use ptspline_eee::{build_pt_basis_with, nonnegativize, EeeError, NonnegError};
use ptspline_exact::{to_f64, Rational};
use ptspline_extension::Strategy;
use ptspline_mesh::{
    detect_vanished_ledges, dimension_diagonalizable, is_diagonalizable, DimensionError, TMesh,
};
use ptspline_oracle::{function_rank, oracle_dimension, smoothness_violation};

use crate::files::{mesh_hash, BasisFile, FileError, MeshFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File { path: String, source: FileError },
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error(transparent)]
    Pipeline(#[from] EeeError),
    #[error(transparent)]
    Nonneg(#[from] NonnegError),
    #[error("basis was built for mesh {expected}, got {found}")]
    MeshHashMismatch { expected: String, found: String },
    #[error("verification failed")]
    Verification,
    #[error("formula gives {formula}, oracle gives {oracle}")]
    Disagreement { formula: usize, oracle: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification => 3,
            CliError::Disagreement { .. } | CliError::Pipeline(_) => 4,
            _ => 2,
        }
    }
}

/// Output of a command: the report printed to stdout and the error that
/// decides the exit code, if any.
pub struct Outcome {
    pub report: String,
    pub error: Option<CliError>,
}

impl From<String> for Outcome {
    fn from(report: String) -> Self {
        Outcome {
            report,
            error: None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn file_error(path: &Path) -> impl FnOnce(FileError) -> CliError + '_ {
    move |source| CliError::File {
        path: path.display().to_string(),
        source,
    }
}

pub fn load_mesh(path: &Path) -> Result<TMesh, CliError> {
    MeshFile::parse(&read(path)?)
        .and_then(|f| f.to_mesh())
        .map_err(file_error(path))
}

pub fn load_basis(path: &Path) -> Result<BasisFile, CliError> {
    BasisFile::parse(&read(path)?).map_err(file_error(path))
}

pub fn validate(path: &Path) -> Result<Outcome, CliError> {
    let mesh = load_mesh(path)?;
    let c = mesh.census();
    let (diag, part) = is_diagonalizable(&mesh);
    let vanished = detect_vanished_ledges(&mesh);
    let mut out = String::new();
    let (d1, d2) = mesh.degrees();
    writeln!(out, "degrees: ({d1}, {d2})").unwrap();
    writeln!(out, "cells: {}", mesh.cells().len()).unwrap();
    writeln!(out, "cross-cuts: c_h = {}, c_v = {}", c.c_h, c.c_v).unwrap();
    writeln!(out, "T l-edges: t_h = {}, t_v = {}", c.t_h, c.t_v).unwrap();
    writeln!(out, "rays: {} horizontal, {} vertical", c.rays_h, c.rays_v).unwrap();
    writeln!(
        out,
        "interior vertices: n_v = {}, on T l-edges n_T = {}",
        c.n_v, c.n_t
    )
    .unwrap();
    writeln!(out, "T-nodes: {}, crossings: {}", c.t_nodes, c.crossings).unwrap();
    for l in mesh.ledges() {
        writeln!(
            out,
            "  l-edge {}: {:?} {:?} at {} over [{}, {}], {} vertices",
            l.id,
            l.kind,
            l.orientation,
            ptspline_exact::format_rational(&l.fixed),
            ptspline_exact::format_rational(&l.lo),
            ptspline_exact::format_rational(&l.hi),
            l.vertices.len()
        )
        .unwrap();
    }
    writeln!(out, "diagonalizable: {diag}, t = {}", c.t_h + c.t_v).unwrap();
    if let Some(p) = part {
        writeln!(out, "t-partition: {:?}", p.order()).unwrap();
    }
    writeln!(out, "vanished l-edges: {vanished:?}").unwrap();
    Ok(out.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DimMethod {
    Formula,
    Oracle,
    Both,
}

pub fn dim(path: &Path, method: DimMethod) -> Result<Outcome, CliError> {
    let mesh = load_mesh(path)?;
    match method {
        DimMethod::Formula => Ok(format!("formula: {}\n", dimension_diagonalizable(&mesh)?).into()),
        DimMethod::Oracle => Ok(format!("oracle: {}\n", oracle_dimension(&mesh)).into()),
        DimMethod::Both => {
            let oracle = oracle_dimension(&mesh);
            match dimension_diagonalizable(&mesh) {
                Ok(formula) => Ok(Outcome {
                    report: format!("formula: {formula}\noracle: {oracle}\n"),
                    error: (formula != oracle)
                        .then_some(CliError::Disagreement { formula, oracle }),
                }),
                Err(e) => Ok(format!("formula: not applicable ({e})\noracle: {oracle}\n").into()),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StrategyArg {
    Greedy,
    FullHorizontal,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Greedy => Strategy::MinimalGreedy,
            StrategyArg::FullHorizontal => Strategy::FullHorizontal,
        }
    }
}

pub fn basis(
    path: &Path,
    strategy: StrategyArg,
    nonneg: bool,
    out: &Path,
) -> Result<Outcome, CliError> {
    let mesh = load_mesh(path)?;
    let mut basis = build_pt_basis_with(&mesh, strategy.into())?;
    if nonneg {
        basis.splines = nonnegativize(&basis)?.splines;
    }
    let file = BasisFile::from_basis(&basis, nonneg);
    write(out, &file.to_json())?;
    let m = &file.metadata;
    Ok(format!(
        "extension steps: {}\nextended edges: {}\nEEE: {} rows in {} blocks\nbasis size: {}\n",
        m.extension_steps, m.extended_edges, m.eee_rows, m.eee_blocks, m.dimension
    )
    .into())
}

pub fn verify(mesh_path: &Path, basis_path: &Path) -> Result<Outcome, CliError> {
    let mesh = load_mesh(mesh_path)?;
    let file = load_basis(basis_path)?;
    let found = mesh_hash(&mesh);
    if file.mesh_hash != found {
        return Err(CliError::MeshHashMismatch {
            expected: file.mesh_hash,
            found,
        });
    }
    let fs = file.to_combinations().map_err(file_error(basis_path))?;
    let mut out = String::new();
    let mut ok = true;
    let mut smooth = 0;
    for (k, f) in fs.iter().enumerate() {
        match smoothness_violation(f, &mesh) {
            None => smooth += 1,
            Some(v) => {
                ok = false;
                writeln!(out, "function {k}: {v}").unwrap();
            }
        }
    }
    writeln!(out, "smoothness: {smooth} of {} pass", fs.len()).unwrap();
    let rank = function_rank(&fs, &mesh);
    writeln!(out, "independence: rank {rank} of {}", fs.len()).unwrap();
    let dim = oracle_dimension(&mesh);
    writeln!(out, "completeness: {} functions, dimension {dim}", fs.len()).unwrap();
    ok &= rank == fs.len() && fs.len() == dim;
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" }).unwrap();
    Ok(Outcome {
        report: out,
        error: (!ok).then_some(CliError::Verification),
    })
}

fn render(q: &Rational) -> String {
    format!("{:.16e}", to_f64(q))
}

/// Evaluates every basis function on an `(nx + 1) x (ny + 1)` grid over
/// the mesh domain and writes one comma-separated row per point.
pub fn sample(
    mesh_path: &Path,
    basis_path: &Path,
    nx: usize,
    ny: usize,
    out: &Path,
) -> Result<Outcome, CliError> {
    let mesh = load_mesh(mesh_path)?;
    let file = load_basis(basis_path)?;
    let fs = file.to_combinations().map_err(file_error(basis_path))?;
    let (nx, ny) = (nx.max(1), ny.max(1));
    let axis = |lines: &[Rational], n: usize| -> Vec<Rational> {
        let (a, b) = (&lines[0], &lines[lines.len() - 1]);
        (0..=n)
            .map(|i| {
                a + (b - a) * Rational::from_integer(i.into()) / Rational::from_integer(n.into())
            })
            .collect()
    };
    let (xs, ys) = (axis(mesh.xs(), nx), axis(mesh.ys(), ny));
    let mut text = String::from("x,y");
    for k in 0..fs.len() {
        text.push(',');
        text.push_str(&file.label(k));
    }
    text.push('\n');
    for y in &ys {
        for x in &xs {
            text.push_str(&render(x));
            text.push(',');
            text.push_str(&render(y));
            for f in &fs {
                text.push(',');
                text.push_str(&render(&f.eval(x, y)));
            }
            text.push('\n');
        }
    }
    write(out, &text)?;
    Ok(format!("{} points, {} functions\n", xs.len() * ys.len(), fs.len()).into())
}
