//! Structure-blind baselines: dense Neville elimination (producing the same
//! compact bidiagonal array from matrix entries) and Gaussian elimination with
//! partial pivoting.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Div, Mul, Sub};

use num_traits::Zero;

use crate::solve::{apply_in_place, System};
use crate::{BidiagonalFactorization, DenseMatrix, Error, Result, Vector};

/// Scalars Neville elimination can run over.
pub trait Scalar:
    Clone + Zero + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> Scalar for T where T: Clone + Zero + Sub<Output = T> + Mul<Output = T> + Div<Output = T> {}

/// Record of one Neville elimination pass over a square matrix.
///
/// Entries are row-major `order x order`; `pivots[(i, j)]` and
/// `multipliers[(i, j)]` are only meaningful for `j <= i` and `j < i`.
#[derive(Debug, Clone, PartialEq)]
pub struct NevilleElimination<T> {
    pub order: usize,
    pub pivots: Vec<T>,
    pub multipliers: Vec<T>,
    /// The final upper triangular matrix.
    pub upper: Vec<T>,
    /// Rows were moved to the bottom to get past a zero pivot.
    pub exchanged: bool,
    /// `(row, column)` of the first zero pivot that forced an exchange.
    pub first_exchange: Option<(usize, usize)>,
}

impl<T: Scalar> NevilleElimination<T> {
    pub fn pivot(&self, i: usize, j: usize) -> &T {
        &self.pivots[i * self.order + j]
    }

    pub fn multiplier(&self, i: usize, j: usize) -> &T {
        &self.multipliers[i * self.order + j]
    }
}

/// Neville elimination of the row-major `order x order` matrix `a`.
///
/// Each step zeroes column `t` below the diagonal by subtracting from row `i`
/// a multiple of row `i - 1`, bottom row first. When a zero sits above a
/// nonzero entry in the active column, the zero rows are moved to the bottom
/// (keeping their relative order) and `exchanged` is set. A multiplier whose
/// pivot and predecessor are both zero is recorded as zero.
pub fn neville<T: Scalar>(order: usize, a: &[T]) -> Result<NevilleElimination<T>> {
    if order == 0 {
        return Err(Error::EmptyInput);
    }
    if a.len() != order * order {
        return Err(Error::DimensionMismatch {
            expected: order * order,
            found: a.len(),
        });
    }
    let mut rows: Vec<Vec<T>> = a.chunks(order).map(|r| r.to_vec()).collect();
    let mut pivots = vec![T::zero(); order * order];
    let mut multipliers = vec![T::zero(); order * order];
    let mut first_exchange = None;

    for t in 0..order {
        let active = &mut rows[t..];
        let first_zero = active.iter().position(|r| r[t].is_zero());
        if let Some(z) = first_zero {
            if active[z..].iter().any(|r| !r[t].is_zero()) {
                let (mut nonzero, zero): (Vec<_>, Vec<_>) =
                    active.iter().cloned().partition(|r| !r[t].is_zero());
                nonzero.extend(zero);
                active.clone_from_slice(&nonzero);
                first_exchange.get_or_insert((t + z, t));
            }
            if rows[t][t].is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        for i in t..order {
            pivots[i * order + t] = rows[i][t].clone();
        }
        for i in (t + 1..order).rev() {
            let m = if rows[i - 1][t].is_zero() {
                T::zero()
            } else {
                rows[i][t].clone() / rows[i - 1][t].clone()
            };
            if !m.is_zero() {
                let (above, below) = rows.split_at_mut(i);
                for (v, a) in below[0][t + 1..].iter_mut().zip(&above[i - 1][t + 1..]) {
                    *v = v.clone() - m.clone() * a.clone();
                }
            }
            rows[i][t] = T::zero();
            multipliers[i * order + t] = m;
        }
    }
    Ok(NevilleElimination {
        order,
        pivots,
        multipliers,
        upper: rows.into_iter().flatten().collect(),
        exchanged: first_exchange.is_some(),
        first_exchange,
    })
}

fn transposed<T: Clone>(order: usize, a: &[T]) -> Vec<T> {
    (0..order * order)
        .map(|k| a[(k % order) * order + k / order].clone())
        .collect()
}

/// Complete Neville elimination: passes over `A` and over `A^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct NevilleTrace<T> {
    /// Elimination of `A`: pivots `p(i, j)` and multipliers `m(i, j)`.
    pub matrix: NevilleElimination<T>,
    /// Elimination of `A^T`: its multipliers are `m~(i, j)`.
    pub transpose: NevilleElimination<T>,
}

impl<T: Scalar> NevilleTrace<T> {
    pub fn order(&self) -> usize {
        self.matrix.order
    }

    pub fn exchanged(&self) -> bool {
        self.matrix.exchanged || self.transpose.exchanged
    }

    /// The compact bidiagonal array: `m` below, diagonal pivots on, `m~`
    /// (transposed) above the diagonal.
    pub fn compact(&self) -> Vec<T> {
        let order = self.order();
        let mut out = vec![T::zero(); order * order];
        for i in 0..order {
            for j in 0..i {
                out[i * order + j] = self.matrix.multiplier(i, j).clone();
                out[j * order + i] = self.transpose.multiplier(i, j).clone();
            }
            out[i * order + i] = self.matrix.pivot(i, i).clone();
        }
        out
    }
}

/// Complete Neville elimination of `a` over any field.
pub fn complete_neville<T: Scalar>(order: usize, a: &[T]) -> Result<NevilleTrace<T>> {
    Ok(NevilleTrace {
        matrix: neville(order, a)?,
        transpose: neville(order, &transposed(order, a))?,
    })
}

/// Complete Neville elimination of a dense binary64 matrix.
pub fn neville_eliminate(a: &DenseMatrix) -> Result<NevilleTrace<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    complete_neville(a.rows(), a.as_slice())
}

impl NevilleTrace<f64> {
    /// The trace as a validated [`BidiagonalFactorization`]; fails unless the
    /// matrix was certified strictly totally positive.
    pub fn to_factorization(&self) -> Result<BidiagonalFactorization> {
        if self.exchanged() {
            return Err(Error::SingularMatrix);
        }
        BidiagonalFactorization::from_compact(self.order(), self.compact())
    }
}

fn check_system(a: &DenseMatrix, b: &[f64]) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Solves `a x = b` by building the bidiagonal factorization of `a^{-1}` from
/// the entries of `a` (Neville elimination of `a` and `a^T`) and applying it.
///
/// The elimination subtracts computed quantities, so unlike
/// [`crate::factorize`] it loses relative accuracy as `a` grows
/// ill-conditioned. Only matrices whose elimination needs no row exchanges
/// are accepted.
pub fn tnbd_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vector> {
    check_system(a, b)?;
    let trace = neville_eliminate(a)?;
    if trace.exchanged() {
        return Err(Error::SingularMatrix);
    }
    let order = a.rows();
    let compact = trace.compact();
    if (0..order).any(|i| compact[i * (order + 1)] == 0.0) {
        return Err(Error::SingularMatrix);
    }
    let mut x = b.to_vec();
    apply_in_place(order, &compact, System::Primal, &mut x, |_, _| {});
    Ok(Vector::from_vec_unchecked(x))
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    order: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactorization {
    /// Pivots on the largest magnitude in each column, lowest row on ties.
    pub fn new(a: &DenseMatrix) -> Result<LuFactorization> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if lu[i * n + k].abs() > lu[p * n + k].abs() {
                    p = i;
                }
            }
            if lu[p * n + k] == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let l = lu[i * n + k] / pivot;
                lu[i * n + k] = l;
                if l != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= l * lu[k * n + j];
                    }
                }
            }
        }
        Ok(LuFactorization { order: n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vector> {
        let n = self.order;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(Vector::from_vec_unchecked(x))
    }
}

/// Solves `a x = b` by LU with partial pivoting and two triangular solves.
pub fn gauss_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vector> {
    check_system(a, b)?;
    LuFactorization::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bernstein, factorize, NodeSet};

    fn bv(nodes: &[f64]) -> DenseMatrix {
        bernstein::build_matrix(&NodeSet::from_slice(nodes).unwrap())
    }

    #[test]
    fn identity_has_zero_multipliers_and_unit_pivots() {
        let t = neville_eliminate(&DenseMatrix::identity(3)).unwrap();
        assert!(!t.exchanged());
        for i in 0..3 {
            assert_eq!(*t.matrix.pivot(i, i), 1.0);
            for j in 0..i {
                assert_eq!(*t.matrix.multiplier(i, j), 0.0);
                assert_eq!(*t.transpose.multiplier(i, j), 0.0);
            }
        }
        assert!(t.to_factorization().is_err());
    }

    #[test]
    fn two_by_two_bernstein_matrix() {
        let t = neville_eliminate(&bv(&[0.25, 0.75])).unwrap();
        assert!((t.matrix.multiplier(1, 0) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(*t.matrix.pivot(0, 0), 0.75);
        assert!((t.matrix.pivot(1, 1) - 2.0 / 3.0).abs() < 1e-16);
        let f = t.to_factorization().unwrap();
        let g = factorize(&NodeSet::from_slice(&[0.25, 0.75]).unwrap()).unwrap();
        for (u, v) in f.compact().iter().zip(g.compact()) {
            assert!((u - v).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_pivot_moves_rows_to_the_bottom() {
        // Column 0 reads (1, 0, 2): the zero row must sink below the 2.
        let a =
            DenseMatrix::from_rows(&[[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [2.0, 1.0, 3.0]]).unwrap();
        let t = neville_eliminate(&a).unwrap();
        assert!(t.matrix.exchanged);
        assert!(t.exchanged());
        assert!(matches!(
            tnbd_solve(&a, &[1.0, 1.0, 1.0]),
            Err(Error::SingularMatrix)
        ));
        let u = &t.matrix.upper;
        for i in 0..3 {
            for j in 0..i {
                assert_eq!(u[i * 3 + j], 0.0);
            }
        }
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(
            tnbd_solve(&a, &[1.0, 1.0]),
            Err(Error::SingularMatrix)
        ));
        assert!(matches!(
            gauss_solve(&a, &[1.0, 1.0]),
            Err(Error::SingularMatrix)
        ));
        let z = DenseMatrix::from_rows(&[[0.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(neville_eliminate(&z), Err(Error::SingularMatrix)));
    }

    #[test]
    fn baselines_solve_small_systems() {
        let a = bv(&[0.25, 0.75]);
        let x = tnbd_solve(&a, &[1.0, 0.0]).unwrap();
        assert!((x[0] - 1.5).abs() <= 1.5e-14 && (x[1] + 0.5).abs() <= 0.5e-14);
        let y = gauss_solve(&a, &[1.0, 0.0]).unwrap();
        assert!((y[0] - 1.5).abs() <= 1.5e-15 && (y[1] + 0.5).abs() <= 0.5e-15);
        let b = [3.0, -1.0, 2.0];
        assert_eq!(
            gauss_solve(&DenseMatrix::identity(3), &b)
                .unwrap()
                .as_slice(),
            &b
        );
    }

    #[test]
    fn partial_pivoting_handles_zero_leading_entry() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(
            gauss_solve(&a, &[2.0, 3.0]).unwrap().as_slice(),
            &[3.0, 2.0]
        );
    }

    #[test]
    fn dense_neville_tracks_closed_forms() {
        let s = NodeSet::equispaced(15);
        let t = neville_eliminate(&bernstein::build_matrix(&s)).unwrap();
        assert!(!t.exchanged());
        let f = factorize(&s).unwrap();
        for i in 0..16 {
            for j in 0..i {
                let m = t.matrix.multiplier(i, j);
                assert!(
                    ((m - f.lower(i, j)) / f.lower(i, j)).abs() < 1e-8,
                    "({i},{j})"
                );
                assert!(*m > 0.0);
            }
        }
    }

    #[test]
    fn dimension_checks() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(neville_eliminate(&a).is_err());
        assert!(gauss_solve(&DenseMatrix::identity(2), &[1.0]).is_err());
        assert!(tnbd_solve(&DenseMatrix::identity(2), &[1.0, 2.0, 3.0]).is_err());
    }
}
