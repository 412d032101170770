use ptspline_bspline::{KnotVector, TensorBSpline};
use ptspline_exact::modular::{reduce_row, Echelon, PRIMES};
use ptspline_exact::Rational;
use ptspline_mesh::TMesh;

pub(crate) type Row = Vec<(usize, Rational)>;

/// Coefficients of `b` on every grid cell of `mesh`, in the local monomial
/// basis of each cell.
pub(crate) fn grid_row(mesh: &TMesh, b: &TensorBSpline) -> Row {
    let (d1, d2) = b.degrees();
    let per_cell = (d1 + 1) * (d2 + 1);
    let cols = mesh.nx() - 1;
    let span = |lines: &[Rational], kv: &KnotVector| {
        let lo = lines
            .binary_search(kv.start())
            .expect("knot on a grid line");
        let hi = lines.binary_search(kv.end()).expect("knot on a grid line");
        lo..hi
    };
    let mut row = Row::new();
    for j in span(mesh.ys(), &b.y) {
        for i in span(mesh.xs(), &b.x) {
            let p = b
                .cell_polynomial(mesh.x(i), mesh.x(i + 1), mesh.y(j), mesh.y(j + 1))
                .expect("knots lie on grid lines");
            let base = (j * cols + i) * per_cell;
            row.extend(
                p.flatten()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (base + k, c.clone())),
            );
        }
    }
    row
}

/// Piece coefficients of a univariate B-spline over consecutive `lines`.
pub(crate) fn line_row(lines: &[Rational], kv: &KnotVector) -> Row {
    let per = kv.degree() + 1;
    let mut row = Row::new();
    for i in 0..lines.len() - 1 {
        if lines[i + 1] <= *kv.start() || lines[i] >= *kv.end() {
            continue;
        }
        let p = kv
            .poly_on(&lines[i], &lines[i + 1])
            .expect("knots on lines");
        row.extend(
            p.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| (i * per + k, c.clone())),
        );
    }
    row
}

/// Greedy independent subset of rational rows, decided modulo a prime.
/// Independence modulo `p` implies independence over the rationals.
#[derive(Debug, Clone)]
pub(crate) struct Tracker {
    rows: Vec<Row>,
    prime: usize,
    echelon: Echelon,
}

impl Tracker {
    pub(crate) fn new() -> Self {
        Tracker {
            rows: Vec::new(),
            prime: 0,
            echelon: Echelon::new(PRIMES[0]),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub(crate) fn prime(&self) -> u64 {
        self.echelon.prime()
    }

    fn rebuild(&mut self) {
        'primes: loop {
            self.prime += 1;
            let p = *PRIMES.get(self.prime).expect("ran out of primes");
            let mut e = Echelon::new(p);
            for r in &self.rows {
                if !reduce_row(r, p).is_some_and(|m| e.insert(m)) {
                    continue 'primes;
                }
            }
            self.echelon = e;
            return;
        }
    }

    /// Whether `row` would raise the rank, without inserting it.
    pub(crate) fn accepts(&mut self, row: &Row) -> bool {
        loop {
            if let Some(m) = reduce_row(row, self.echelon.prime()) {
                return self.echelon.is_independent(m);
            }
            self.rebuild();
        }
    }

    /// Inserts `row` if it raises the rank.
    pub(crate) fn insert(&mut self, row: Row) -> bool {
        loop {
            if let Some(m) = reduce_row(&row, self.echelon.prime()) {
                if self.echelon.insert(m) {
                    self.rows.push(row);
                    return true;
                }
                return false;
            }
            self.rebuild();
        }
    }
}
