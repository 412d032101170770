use num_traits::Zero;
use proptest::prelude::*;

use ptspline_bspline::{Edge, KnotVector, SplineCombination, SplineTag, TensorBSpline};
use ptspline_exact::{frac, int, Rational};
use ptspline_mesh::Orientation;

/// Pointwise recursion on half-open intervals, independent of the piece cache.
fn naive(t: &[Rational], i: usize, p: usize, x: &Rational) -> Rational {
    if p == 0 {
        return if &t[i] <= x && x < &t[i + 1] {
            int(1)
        } else {
            int(0)
        };
    }
    let mut acc = Rational::zero();
    let den = &t[i + p] - &t[i];
    if !den.is_zero() {
        acc += (x - &t[i]) / &den * naive(t, i, p - 1, x);
    }
    let den = &t[i + p + 1] - &t[i + 1];
    if !den.is_zero() {
        acc += (&t[i + p + 1] - x) / &den * naive(t, i + 1, p - 1, x);
    }
    acc
}

fn knots_strategy() -> impl Strategy<Value = Vec<Rational>> {
    (1usize..5)
        .prop_flat_map(|d| prop::collection::vec(0i64..4, d + 1))
        .prop_map(|gaps| {
            let mut t = vec![int(0)];
            for g in gaps {
                let last = t.last().unwrap().clone();
                t.push(last + frac(g, 2));
            }
            t
        })
        .prop_filter("nonempty support", |t| t.first() != t.last())
}

proptest! {
    #[test]
    fn pieces_agree_with_pointwise_recursion(t in knots_strategy(), num in 0i64..64) {
        let k = KnotVector::new(t.clone()).unwrap();
        let span = t.last().unwrap() - &t[0];
        let x = &t[0] + span * frac(num, 64);
        prop_assert_eq!(k.eval(&x), naive(&t, 0, t.len() - 2, &x));
    }

    #[test]
    fn open_knot_partition_of_unity(d in 1usize..4, inner in prop::collection::vec(1i64..3, 1..5), num in 0i64..32) {
        let mut seq = vec![int(0); d + 1];
        let mut last = int(0);
        for g in inner {
            last += int(g);
            seq.push(last.clone());
        }
        let end = last.clone() + int(1);
        seq.extend(std::iter::repeat(end.clone()).take(d + 1));
        let x = &end * frac(num, 32);
        let total: Rational = seq
            .windows(d + 2)
            .filter(|w| w[0] != w[d + 1])
            .map(|w| KnotVector::new(w.to_vec()).unwrap().eval(&x))
            .sum();
        prop_assert_eq!(total, int(1));
    }

    #[test]
    fn jumps_are_linear(a in -5i64..5, b in -5i64..5) {
        let b1 = TensorBSpline::from_ints(&[0, 1, 2, 4], &[0, 2, 3, 4], SplineTag::Cross).unwrap();
        let b2 = TensorBSpline::from_ints(&[1, 2, 3, 4], &[0, 1, 2, 3], SplineTag::Cross).unwrap();
        let e = Edge::new(Orientation::Horizontal, int(2), int(2), int(3));
        let combo = SplineCombination::new(vec![(int(a), b1.clone()), (int(b), b2.clone())]);
        let direct = b1.derivative_jump(&e).unwrap().scale(&int(a))
            .add(&b2.derivative_jump(&e).unwrap().scale(&int(b)));
        prop_assert_eq!(combo.jump_on_edge(&e, 2).unwrap(), direct);
    }
}

#[test]
fn jumps_on_a_short_horizontal_edge() {
    // Edge [1,2] x {2}, degree (2,2).
    let e = Edge::new(Orientation::Horizontal, int(2), int(1), int(2));
    let first = TensorBSpline::from_ints(&[1, 2, 3, 4], &[2, 3, 4, 5], SplineTag::Cross).unwrap();
    let j = first.derivative_jump(&e).unwrap();
    // 1 * (x - 1)^2 / 2
    assert_eq!(j.coeffs, vec![int(0), int(0), frac(1, 2)]);

    let second = TensorBSpline::from_ints(&[1, 2, 4, 5], &[1, 2, 4, 5], SplineTag::Cross).unwrap();
    let j = second.derivative_jump(&e).unwrap();
    // (-2/3 - 2/3) * (x - 1)^2 / 3
    assert_eq!(j.coeffs, vec![int(0), int(0), frac(-4, 9)]);
}

#[test]
fn rational_knot_is_respected() {
    let k = KnotVector::new(vec![int(1), int(2), frac(5, 2), int(4)]).unwrap();
    assert_eq!(k.pieces().len(), 3);
    assert_eq!(k.eval(&frac(5, 2)), naive(k.knots(), 0, 2, &frac(5, 2)));
    assert_eq!(k.to_string(), "[1,2,5/2,4]");
}
