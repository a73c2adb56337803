//! Bernstein basis on [0, 1], the Bernstein–Vandermonde matrix, and its
//! closed-form determinants.

use alloc::vec;
use alloc::vec::Vec;

use crate::wide::Wide;
use crate::{DenseMatrix, Error, NodeSet, Result};

/// `C(n, k)` by the multiplicative recurrence `C(n, k) = C(n, k-1) (n-k+1) / k`.
///
/// Exact in binary64 for `n <= 54` (the intermediate `C(n, k-1) (n-k+1)`
/// needs more than 53 bits beyond that).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        c = c * (n - i + 1) as f64 / i as f64;
    }
    c
}

/// All of `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    let mut c = 1.0;
    for k in 1..=n / 2 {
        c = c * (n - k + 1) as f64 / k as f64;
        row[k] = c;
        row[n - k] = c;
    }
    row
}

fn powi(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, _| acc * x)
}

/// `b_k^{(n)}(x) = C(n, k) (1 - x)^{n - k} x^k`.
pub fn basis_value(n: usize, k: usize, x: f64) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange {
            index: k,
            degree: n,
        });
    }
    Ok(binomial(n, k) * powi(1.0 - x, n - k) * powi(x, k))
}

/// The `(n+1) x (n+1)` Bernstein–Vandermonde matrix, entry `(i, j) = b_j^{(n)}(x_i)`.
pub fn build_matrix(nodes: &NodeSet) -> DenseMatrix {
    let order = nodes.order();
    let n = nodes.degree();
    let binom = binomial_row(n);
    let mut data = vec![0.0; order * order];
    let mut pow_x = vec![1.0; order];
    let mut pow_1mx = vec![1.0; order];
    for (i, &x) in nodes.iter().enumerate() {
        let omx = 1.0 - x;
        for k in 1..order {
            pow_x[k] = pow_x[k - 1] * x;
            pow_1mx[k] = pow_1mx[k - 1] * omx;
        }
        let row = &mut data[i * order..(i + 1) * order];
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = binom[j] * pow_1mx[n - j] * pow_x[j];
        }
    }
    DenseMatrix::from_vec_unchecked(order, order, data)
}

/// Polynomial `p(x) = sum_k a_k b_k^{(n)}(x)` in Bernstein form.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPolynomial {
    coefficients: Vec<f64>,
}

impl BernsteinPolynomial {
    pub fn new(coefficients: Vec<f64>) -> Result<BernsteinPolynomial> {
        if coefficients.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(BernsteinPolynomial { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// de Casteljau evaluation.
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut beta = self.coefficients.clone();
        let omx = 1.0 - x;
        for r in 1..beta.len() {
            for k in 0..beta.len() - r {
                beta[k] = omx * beta[k] + x * beta[k + 1];
            }
        }
        beta[0]
    }
}

fn wide_determinant(nodes: &NodeSet, with_binomials: bool) -> Wide {
    let n = nodes.degree();
    let mut acc = Wide::ONE;
    if with_binomials {
        for c in binomial_row(n) {
            acc = acc.mul_f64(c);
        }
    }
    for j in 1..nodes.order() {
        for i in 0..j {
            acc = acc.mul_f64(nodes[j] - nodes[i]);
        }
    }
    acc
}

fn checked(det: Wide) -> Result<f64> {
    let v = det.to_f64();
    if v == 0.0 || !v.is_finite() {
        Err(Error::DeterminantOverflow)
    } else {
        Ok(v)
    }
}

/// `det A = prod_k C(n, k) * prod_{i<j} (x_j - x_i)`.
pub fn determinant_formula(nodes: &NodeSet) -> Result<f64> {
    checked(wide_determinant(nodes, true))
}

/// Natural logarithm of [`determinant_formula`]; never overflows.
pub fn log_determinant_formula(nodes: &NodeSet) -> f64 {
    wide_determinant(nodes, true).ln()
}

/// Determinant without the binomial factors, `prod_{i<j} (x_j - x_i)`.
pub fn scaled_determinant_formula(nodes: &NodeSet) -> Result<f64> {
    checked(wide_determinant(nodes, false))
}

pub fn log_scaled_determinant_formula(nodes: &NodeSet) -> f64 {
    wide_determinant(nodes, false).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodes(v: &[f64]) -> NodeSet {
        NodeSet::from_slice(v).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_value(0, 0, 0.3).unwrap(), 1.0);
        assert_eq!(basis_value(1, 1, 0.25).unwrap(), 0.25);
        assert_eq!(basis_value(2, 1, 0.5).unwrap(), 0.5);
        assert_eq!(
            basis_value(2, 3, 0.5),
            Err(Error::IndexOutOfRange {
                index: 3,
                degree: 2
            })
        );
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(10, 5), 252.0);
        assert_eq!(binomial(54, 27), 1946939425648112.0);
        assert_eq!(binomial_row(54)[26], 1877405874732108.0);
        assert_eq!(binomial_row(4), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        assert_eq!(binomial(3, 4), 0.0);
    }

    #[test]
    fn matrix_examples() {
        let a = build_matrix(&nodes(&[0.25, 0.75]));
        assert_eq!(a.as_slice(), &[0.75, 0.25, 0.25, 0.75]);
        let one = build_matrix(&nodes(&[0.5]));
        assert_eq!(one.as_slice(), &[1.0]);
    }

    #[test]
    fn matrix_entries_match_basis_values() {
        let s = NodeSet::equispaced(7);
        let a = build_matrix(&s);
        for i in 0..8 {
            for j in 0..8 {
                let b = basis_value(7, j, s[i]).unwrap();
                assert!((a[(i, j)] - b).abs() <= 4.0 * f64::EPSILON * b);
            }
        }
    }

    #[test]
    fn rows_are_a_partition_of_unity() {
        for n in [0usize, 1, 5, 10, 15, 30] {
            let a = build_matrix(&NodeSet::equispaced(n));
            for i in 0..=n {
                let s: f64 = a.row(i).iter().sum();
                assert!((s - 1.0).abs() <= (n + 1) as f64 * libm::pow(2.0, -50.0));
                assert!(a.row(i).iter().all(|&v| v > 0.0 && v < 1.0 || n == 0));
            }
        }
    }

    #[test]
    fn de_casteljau_examples() {
        let p = BernsteinPolynomial::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(0.7), 1.0);
        let q = BernsteinPolynomial::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(q.evaluate(0.25), 0.25);
        // Coefficients of the 2x2 solve (1, 0) at nodes 1/4, 3/4.
        let r = BernsteinPolynomial::new(vec![1.5, -0.5]).unwrap();
        assert_eq!(r.evaluate(0.25), 1.0);
        assert_eq!(r.evaluate(0.75), 0.0);
    }

    #[test]
    fn de_casteljau_agrees_with_basis_sum() {
        let coeffs = vec![1.0, -2.0, 0.5, 3.0, -1.0, 2.0];
        let p = BernsteinPolynomial::new(coeffs.clone()).unwrap();
        for t in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            let direct: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a * basis_value(5, k, t).unwrap())
                .sum();
            assert!((p.evaluate(t) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn determinant_examples() {
        let s = nodes(&[0.25, 0.75]);
        assert_eq!(determinant_formula(&s).unwrap(), 0.5);
        assert_eq!(scaled_determinant_formula(&s).unwrap(), 0.5);
        assert_eq!(determinant_formula(&nodes(&[0.3])).unwrap(), 1.0);
        assert_eq!(scaled_determinant_formula(&nodes(&[0.3])).unwrap(), 1.0);
    }

    #[test]
    fn determinant_factorizes_through_binomials() {
        for n in 1..=15 {
            let s = NodeSet::equispaced(n);
            let d = determinant_formula(&s).unwrap();
            let v = scaled_determinant_formula(&s).unwrap();
            let b: f64 = binomial_row(n).iter().product();
            assert!((d - b * v).abs() <= 1e-13 * d, "n = {n}");
        }
    }

    #[test]
    fn determinant_out_of_range_is_reported() {
        let s = NodeSet::equispaced(200);
        assert_eq!(determinant_formula(&s), Err(Error::DeterminantOverflow));
        let ln = log_determinant_formula(&s);
        assert!(ln.is_finite() && ln < -700.0);
        assert!(log_scaled_determinant_formula(&s) < ln);
    }
}
