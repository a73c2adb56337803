//! Application of a bidiagonal factorization to right-hand sides.

use alloc::vec::Vec;

use crate::{structured, BidiagonalFactorization, DenseMatrix, Error, NodeSet, Result, Vector};

/// Which chain of factors to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum System {
    /// `A x = b`: `G_1 ... G_n D^{-1} F_n ... F_1 b`.
    Primal,
    /// `A^T x = b`: `F_1^T ... F_n^T D^{-1} G_n^T ... G_1^T b`.
    Dual,
}

type Entry<'a> = &'a dyn Fn(usize, usize) -> f64;

/// Applies the factor chain stored in `compact` to `x` in place.
///
/// `observe(a, b)` is called with both addends of every update `a + b`.
pub(crate) fn apply_in_place(
    order: usize,
    compact: &[f64],
    system: System,
    x: &mut [f64],
    mut observe: impl FnMut(f64, f64),
) {
    debug_assert_eq!(compact.len(), order * order);
    debug_assert_eq!(x.len(), order);
    let lower = |i: usize, j: usize| compact[i * order + j];
    let upper = |i: usize, j: usize| compact[j * order + i];
    let (first, second): (Entry, Entry) = match system {
        System::Primal => (&lower, &upper),
        System::Dual => (&upper, &lower),
    };

    // Lower bidiagonal factors, first one applied first. Descending k keeps
    // x[k - 1] at its pre-update value.
    for i in 0..order - 1 {
        for k in (i + 1..order).rev() {
            let t = -first(k, i) * x[k - 1];
            observe(x[k], t);
            x[k] += t;
        }
    }
    for (k, xk) in x.iter_mut().enumerate() {
        *xk /= compact[k * (order + 1)];
    }
    // Upper bidiagonal factors, last one applied first. Ascending k keeps
    // x[k + 1] at its pre-update value.
    for i in (0..order - 1).rev() {
        for k in i..order - 1 {
            let t = -second(k + 1, i) * x[k + 1];
            observe(x[k], t);
            x[k] += t;
        }
    }
}

fn run(f: &BidiagonalFactorization, b: &[f64], system: System) -> Result<Vector> {
    if b.len() != f.order() {
        return Err(Error::DimensionMismatch {
            expected: f.order(),
            found: b.len(),
        });
    }
    let mut x = b.to_vec();
    apply_in_place(f.order(), f.compact(), system, &mut x, |_, _| {});
    Ok(Vector::from_vec_unchecked(x))
}

/// Solves `A x = b` with `O(n^2)` flops and no scratch beyond the result.
pub fn solve(f: &BidiagonalFactorization, b: &[f64]) -> Result<Vector> {
    run(f, b, System::Primal)
}

/// Solves the dual system `A^T x = b`.
pub fn solve_dual(f: &BidiagonalFactorization, b: &[f64]) -> Result<Vector> {
    run(f, b, System::Dual)
}

/// Count of additions whose operands had opposite signs during a solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CancellationReport {
    pub additions: usize,
    /// Additions combining a strictly positive and a strictly negative operand.
    pub opposite_sign: usize,
}

impl CancellationReport {
    pub fn is_subtraction_free(&self) -> bool {
        self.opposite_sign == 0
    }
}

/// [`solve`] (or [`solve_dual`] when `dual`) that also records every addition
/// combining operands of opposite sign.
///
/// When `b` alternates in sign, the checkerboard sign pattern of `A^{-1}` makes
/// the whole application subtraction-free; the report makes that checkable.
pub fn solve_traced(
    f: &BidiagonalFactorization,
    b: &[f64],
    dual: bool,
) -> Result<(Vector, CancellationReport)> {
    if b.len() != f.order() {
        return Err(Error::DimensionMismatch {
            expected: f.order(),
            found: b.len(),
        });
    }
    let system = if dual { System::Dual } else { System::Primal };
    let mut report = CancellationReport::default();
    let mut x = b.to_vec();
    apply_in_place(f.order(), f.compact(), system, &mut x, |a, t| {
        report.additions += 1;
        if (a > 0.0 && t < 0.0) || (a < 0.0 && t > 0.0) {
            report.opposite_sign += 1;
        }
    });
    Ok((Vector::from_vec_unchecked(x), report))
}

/// `A^{-1}`, one [`solve`] per identity column.
pub fn inverse(f: &BidiagonalFactorization) -> DenseMatrix {
    let order = f.order();
    let mut inv = DenseMatrix::zeros(order, order);
    let mut col = Vec::with_capacity(order);
    for j in 0..order {
        col.clear();
        col.extend((0..order).map(|i| if i == j { 1.0 } else { 0.0 }));
        apply_in_place(order, f.compact(), System::Primal, &mut col, |_, _| {});
        for (i, v) in col.iter().enumerate() {
            inv[(i, j)] = *v;
        }
    }
    inv
}

/// `kappa_inf(A) = ||A^{-1}||_inf`, since every row of a Bernstein–Vandermonde
/// matrix sums to one.
pub fn condition_inf(nodes: &NodeSet) -> Result<f64> {
    Ok(inverse(&structured::factorize(nodes)?).norm_inf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize;

    fn two_node() -> BidiagonalFactorization {
        factorize(&NodeSet::from_slice(&[0.25, 0.75]).unwrap()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1.0))
    }

    #[test]
    fn two_by_two_solves() {
        let f = two_node();
        assert!(close(&solve(&f, &[1.0, 0.0]).unwrap(), &[1.5, -0.5], 1e-15));
        assert!(close(
            &solve_dual(&f, &[1.0, 0.0]).unwrap(),
            &[1.5, -0.5],
            1e-15
        ));
        assert_eq!(solve(&f, &[0.0, 0.0]).unwrap().as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn degree_zero_divides_by_the_pivot() {
        let f = factorize(&NodeSet::from_slice(&[0.4]).unwrap()).unwrap();
        assert_eq!(solve_dual(&f, &[3.0]).unwrap().as_slice(), &[3.0]);
        assert_eq!(inverse(&f).as_slice(), &[1.0]);
        assert_eq!(
            condition_inf(&NodeSet::from_slice(&[0.4]).unwrap()).unwrap(),
            1.0
        );
    }

    #[test]
    fn dimension_mismatch() {
        let f = two_node();
        assert_eq!(
            solve(&f, &[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(solve_dual(&f, &[1.0, 2.0, 3.0]).is_err());
        assert!(solve_traced(&f, &[1.0], false).is_err());
    }

    #[test]
    fn inverse_of_two_by_two() {
        let inv = inverse(&two_node());
        assert!(close(inv.as_slice(), &[1.5, -0.5, -0.5, 1.5], 1e-15));
    }

    #[test]
    fn residual_is_small() {
        let s = NodeSet::equispaced(10);
        let a = crate::bernstein::build_matrix(&s);
        let f = factorize(&s).unwrap();
        let b = [1.0, 0.0, 2.0, -1.0, 3.0, 1.0, -2.0, 0.0, 0.0, 3.0, 5.0];
        let x = solve(&f, &b).unwrap();
        let r = a.mul_vec(&x).unwrap();
        let res = r
            .iter()
            .zip(&b)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max);
        assert!(res <= 1e-12 * 5.0, "{res}");
        let y = solve_dual(&f, &b).unwrap();
        let r = a.transpose().mul_vec(&y).unwrap();
        let res = r
            .iter()
            .zip(&b)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max);
        assert!(res <= 1e-12 * 5.0, "{res}");
    }

    #[test]
    fn alternating_rhs_is_subtraction_free() {
        let f = factorize(&NodeSet::equispaced(15)).unwrap();
        let b: Vec<f64> = (0..16)
            .map(|i| {
                if i % 2 == 0 {
                    1.0 + i as f64 / 4.0
                } else {
                    -2.0
                }
            })
            .collect();
        let (x, report) = solve_traced(&f, &b, false).unwrap();
        assert!(report.is_subtraction_free(), "{report:?}");
        assert_eq!(report.additions, 15 * 16);
        assert_eq!(x, solve(&f, &b).unwrap());
        let (_, dual) = solve_traced(&f, &b, true).unwrap();
        assert!(dual.is_subtraction_free());
        let (_, mixed) = solve_traced(&f, &[1.0; 16], false).unwrap();
        assert!(!mixed.is_subtraction_free());
    }

    #[test]
    fn linearity() {
        let f = factorize(&NodeSet::equispaced(15)).unwrap();
        let b: Vec<f64> = (0..16).map(|i| (i as f64 * 0.7).sin()).collect();
        let c: Vec<f64> = (0..16).map(|i| (i as f64 * 1.3).cos()).collect();
        let (alpha, beta) = (0.75, -2.5);
        let combo: Vec<f64> = b
            .iter()
            .zip(&c)
            .map(|(u, v)| alpha * u + beta * v)
            .collect();
        let lhs = solve(&f, &combo).unwrap();
        let xb = solve(&f, &b).unwrap();
        let xc = solve(&f, &c).unwrap();
        let rhs: Vec<f64> = xb
            .iter()
            .zip(xc.iter())
            .map(|(u, v)| alpha * u + beta * v)
            .collect();
        let diff: f64 = lhs
            .iter()
            .zip(&rhs)
            .map(|(u, v)| (u - v) * (u - v))
            .sum::<f64>();
        let norm: f64 = rhs.iter().map(|v| v * v).sum::<f64>();
        assert!(libm::sqrt(diff / norm) <= 1e-13);
    }

    #[test]
    fn condition_numbers_follow_table_trend() {
        let published = [2.1e4, 2.6e6, 3.5e8, 4.7e10, 6.6e12, 9.0e14, 1.3e17];
        let mut prev = 0.0;
        for (k, expected) in published.iter().enumerate() {
            let n = 10 + 5 * k;
            let kappa = condition_inf(&NodeSet::equispaced(n)).unwrap();
            assert!(kappa > prev);
            assert!(
                kappa / expected < 2.0 && expected / kappa < 2.0,
                "n = {n}: {kappa}"
            );
            prev = kappa;
        }
    }

    #[test]
    fn inverse_has_checkerboard_signs() {
        let inv = inverse(&factorize(&NodeSet::equispaced(10)).unwrap());
        for i in 0..11 {
            for j in 0..11 {
                let v = inv[(i, j)];
                assert!(if (i + j) % 2 == 0 { v > 0.0 } else { v < 0.0 });
            }
        }
    }
}
