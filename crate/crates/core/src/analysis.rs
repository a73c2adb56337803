//! Accuracy and conditioning instruments: relative errors, a one-sided
//! Jacobi SVD, the Chan–Foulser number and rank correlation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::norm2;
use crate::{DenseMatrix, Error, Result, Vector};

/// `||x - x_exact||_2 / ||x_exact||_2`.
pub fn relative_error(x: &[f64], x_exact: &[f64]) -> Result<f64> {
    if x.len() != x_exact.len() {
        return Err(Error::DimensionMismatch {
            expected: x_exact.len(),
            found: x.len(),
        });
    }
    let den = norm2(x_exact);
    if den == 0.0 {
        return Err(Error::ZeroReference);
    }
    let diff: Vec<f64> = x.iter().zip(x_exact).map(|(a, b)| a - b).collect();
    Ok(norm2(&diff) / den)
}

/// Largest componentwise relative error; zero reference entries compare
/// absolutely.
pub fn componentwise_error(x: &[f64], x_exact: &[f64]) -> f64 {
    x.iter()
        .zip(x_exact)
        .map(|(a, e)| {
            if *e == 0.0 {
                a.abs()
            } else {
                ((a - e) / e).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Singular value decomposition `A = U diag(sigma) V^T` of a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Left singular vectors as columns.
    pub u: DenseMatrix,
    /// Right singular vectors as columns.
    pub v: DenseMatrix,
    pub sweeps: usize,
}

impl SvdResult {
    /// `sigma_1 / sigma_n`.
    pub fn condition_number(&self) -> f64 {
        self.singular_values[0] / self.singular_values[self.singular_values.len() - 1]
    }

    /// `u_{i+1}` in 1-based notation.
    pub fn left_singular_vector(&self, i: usize) -> Vector {
        Vector::from_vec_unchecked(self.u.column(i))
    }

    pub fn right_singular_vector(&self, i: usize) -> Vector {
        Vector::from_vec_unchecked(self.v.column(i))
    }
}

/// Rotations whose normalized Gram entry is below this are skipped.
const JACOBI_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 60;

/// One-sided (Hestenes) Jacobi SVD with cyclic-by-row sweeps.
///
/// Each left singular vector is scaled so that its largest-magnitude entry
/// (lowest index on ties) is positive; the matching right vector follows.
pub fn svd(a: &DenseMatrix) -> Result<SvdResult> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    // Column-major working copies.
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let mut sweeps = 0;
    loop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = w[p]
                    .iter()
                    .zip(&w[q])
                    .fold((0.0, 0.0, 0.0), |(a, b, g), (x, y)| {
                        (a + x * x, b + y * y, g + x * y)
                    });
                if gamma == 0.0 || gamma.abs() <= JACOBI_TOL * libm::sqrt(alpha) * libm::sqrt(beta)
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::hypot(1.0, zeta));
                let c = 1.0 / libm::hypot(1.0, t);
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = w.iter().map(|col| norm2(col)).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    // Stable sort keeps the original column order on ties.
    idx.sort_by(|&i, &j| {
        sigma[j]
            .partial_cmp(&sigma[i])
            .unwrap_or(core::cmp::Ordering::Equal)
    });

    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut v_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for &k in &idx {
        let s = sigma[k];
        let mut u: Vec<f64> = if s > 0.0 {
            w[k].iter().map(|x| x / s).collect()
        } else {
            complete_basis(&u_cols, n)
        };
        let mut vk = v[k].clone();
        let lead = u.iter().enumerate().fold(
            0,
            |best, (i, x)| if x.abs() > u[best].abs() { i } else { best },
        );
        if u[lead] < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
            vk.iter_mut().for_each(|x| *x = -*x);
        }
        values.push(s);
        u_cols.push(u);
        v_cols.push(vk);
    }

    Ok(SvdResult {
        singular_values: values,
        u: from_columns(&u_cols),
        v: from_columns(&v_cols),
        sweeps,
    })
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// A unit vector orthogonal to `basis`, by Gram–Schmidt on standard vectors.
fn complete_basis(basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    let mut best = vec![0.0; n];
    let mut best_norm = -1.0;
    for e in 0..n {
        let mut cand = vec![0.0; n];
        cand[e] = 1.0;
        for _ in 0..2 {
            for b in basis {
                let d: f64 = cand.iter().zip(b).map(|(x, y)| x * y).sum();
                cand.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let nrm = norm2(&cand);
        if nrm > best_norm {
            best_norm = nrm;
            best = cand.iter().map(|x| x / nrm).collect();
        }
    }
    best
}

fn from_columns(cols: &[Vec<f64>]) -> DenseMatrix {
    let n = cols.len();
    let mut m = DenseMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[(i, j)] = *x;
        }
    }
    m
}

/// 2-norm condition number `sigma_1 / sigma_n`.
pub fn condition_2(a: &DenseMatrix) -> Result<f64> {
    Ok(svd(a)?.condition_number())
}

/// Chan–Foulser number
/// `gamma(A, f) = min_k (sigma_{n-k+1} / sigma_n) ||f||_2 / ||P_k f||_2`,
/// where `P_k` projects onto the `k` smallest left singular vectors.
///
/// Terms with `P_k f = 0` are skipped.
pub fn chan_foulser(a: &DenseMatrix, f: &[f64]) -> Result<f64> {
    chan_foulser_with(&svd(a)?, f)
}

/// [`chan_foulser`] against a precomputed decomposition.
pub fn chan_foulser_with(svd: &SvdResult, f: &[f64]) -> Result<f64> {
    let n = svd.singular_values.len();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let f_norm = norm2(f);
    if f_norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    // U_k has orthonormal columns, so ||U_k U_k^T f|| = ||U_k^T f||.
    let coeffs: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|r| svd.u[(r, i)] * f[r]).sum())
        .collect();
    let sigma_n = svd.singular_values[n - 1];
    let mut best = f64::INFINITY;
    for k in 1..=n {
        let proj = norm2(&coeffs[n - k..]);
        if proj == 0.0 {
            continue;
        }
        let term = (svd.singular_values[n - k] / sigma_n) * (f_norm / proj);
        best = best.min(term);
    }
    Ok(best)
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut r = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start;
        while end + 1 < idx.len() && values[idx[end + 1]] == values[idx[start]] {
            end += 1;
        }
        let avg = (start + end) as f64 / 2.0 + 1.0;
        for &k in &idx[start..=end] {
            r[k] = avg;
        }
        start = end + 1;
    }
    r
}

/// Spearman rank correlation (average ranks on ties).
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let m = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / m, rb.iter().sum::<f64>() / m);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    Ok(sab / libm::sqrt(saa * sbb))
}

/// Scientific notation with `digits` after the point and a signed two-digit
/// exponent, e.g. `2.1e+04`.
pub fn format_sci(x: f64, digits: usize) -> String {
    let s = alloc::format!("{:.*e}", digits, x);
    match s.split_once('e') {
        Some((mant, exp)) => {
            let e: i32 = exp.parse().unwrap_or(0);
            let sign = if e < 0 { '-' } else { '+' };
            alloc::format!("{mant}e{sign}{:02}", e.abs())
        }
        None => s,
    }
}

/// `true` if `x` and `reference` agree when both are rounded to two
/// significant digits.
pub fn matches_two_digits(x: f64, reference: f64) -> bool {
    format_sci(x, 1) == format_sci(reference, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bernstein, NodeSet};

    #[test]
    fn relative_error_examples() {
        assert_eq!(relative_error(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(relative_error(&[2.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(relative_error(&[1.0], &[0.0]), Err(Error::ZeroReference));
        assert!(relative_error(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn svd_of_simple_matrices() {
        let id = svd(&DenseMatrix::identity(4)).unwrap();
        assert_eq!(id.singular_values, vec![1.0; 4]);
        let d = svd(&DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 3.0]]).unwrap()).unwrap();
        assert_eq!(d.singular_values, vec![3.0, 1.0]);
        assert_eq!(d.u.as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        let z = svd(&DenseMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z.singular_values, vec![0.0, 0.0]);
        let ztz = z.u.transpose().mul(&z.u).unwrap();
        assert!((ztz[(0, 1)]).abs() < 1e-15 && (ztz[(1, 1)] - 1.0).abs() < 1e-15);
    }

    fn check_invariants(a: &DenseMatrix, s: &SvdResult) {
        let n = a.rows();
        assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let utu = s.u.transpose().mul(&s.u).unwrap();
        let vtv = s.v.transpose().mul(&s.v).unwrap();
        for i in 0..n {
            assert!((norm2(&s.u.column(i)) - 1.0).abs() <= 1e-12);
            for j in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((utu[(i, j)] - id).abs() <= 1e-10);
                assert!((vtv[(i, j)] - id).abs() <= 1e-10);
            }
        }
        let mut recon = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                recon[(i, j)] = (0..n)
                    .map(|k| s.u[(i, k)] * s.singular_values[k] * s.v[(j, k)])
                    .sum();
            }
        }
        let diff: Vec<f64> = recon
            .as_slice()
            .iter()
            .zip(a.as_slice())
            .map(|(x, y)| x - y)
            .collect();
        assert!(norm2(&diff) <= 1e-10 * a.norm_fro());
        for k in 0..n {
            let u = s.u.column(k);
            let lead = u
                .iter()
                .enumerate()
                .fold(0, |b, (i, x)| if x.abs() > u[b].abs() { i } else { b });
            assert!(u[lead] > 0.0);
        }
    }

    #[test]
    fn svd_invariants_on_bernstein_matrices() {
        for n in [1usize, 4, 10, 15] {
            let a = bernstein::build_matrix(&NodeSet::equispaced(n));
            check_invariants(&a, &svd(&a).unwrap());
        }
        let a =
            DenseMatrix::from_rows(&[[2.0, -1.0, 0.5], [0.0, 3.0, 1.0], [4.0, 1.0, -2.0]]).unwrap();
        check_invariants(&a, &svd(&a).unwrap());
    }

    #[test]
    fn example_condition_numbers() {
        let a = bernstein::build_matrix(
            &NodeSet::from_slice(&(1..=16).map(|i| i as f64 / 17.0).collect::<Vec<_>>()).unwrap(),
        );
        let s = svd(&a).unwrap();
        assert_eq!(format_sci(s.condition_number(), 1), "2.3e+06");
    }

    #[test]
    fn chan_foulser_on_singular_vectors() {
        let a = bernstein::build_matrix(&NodeSet::equispaced(10));
        let s = svd(&a).unwrap();
        let n = 11;
        for i in 0..n {
            let g = chan_foulser_with(&s, &s.u.column(i)).unwrap();
            let expected = s.singular_values[i] / s.singular_values[n - 1];
            assert!(((g - expected) / expected).abs() <= 1e-8, "i = {i}");
            assert!(g <= s.condition_number() * (1.0 + 1e-8));
        }
        assert!((chan_foulser_with(&s, &s.u.column(n - 1)).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(chan_foulser(&a, &[0.0; 11]), Err(Error::ZeroVector));
        assert!(chan_foulser(&a, &[1.0; 3]).is_err());
    }

    #[test]
    fn chan_foulser_bounded_by_kappa() {
        let a = bernstein::build_matrix(&NodeSet::equispaced(8));
        let s = svd(&a).unwrap();
        for seed in 0..20 {
            let f: Vec<f64> = (0..9)
                .map(|i| libm::sin((seed * 9 + i) as f64 * 1.7))
                .collect();
            let g = chan_foulser_with(&s, &f).unwrap();
            assert!(g >= 1.0 - 1e-12 && g <= s.condition_number() * (1.0 + 1e-8));
        }
    }

    #[test]
    fn spearman_basics() {
        assert_eq!(
            spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]).unwrap(),
            1.0
        );
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), -1.0);
        let r = spearman(&[1.0, 1.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(r > 0.9 && r < 1.0);
        assert!(spearman(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(format_sci(20510.4, 1), "2.1e+04");
        assert_eq!(format_sci(1.3e-15, 1), "1.3e-15");
        assert_eq!(format_sci(1.0, 1), "1.0e+00");
        assert_eq!(format_sci(1.27237e17, 1), "1.3e+17");
        assert!(matches_two_digits(2.29063e6, 2.3e6));
        assert!(!matches_two_digits(2.36e6, 2.3e6));
    }
}
