use alloc::vec::Vec;

use crate::{DenseMatrix, Error, Result};

/// Bidiagonal factorization `A^{-1} = G_1 ... G_n D^{-1} F_n ... F_1` in
/// compact form.
///
/// The `(n+1) x (n+1)` row-major array holds
///
/// * below the diagonal, at `(i, j)` with `i > j`: the multiplier `m(i, j)` of
///   the Neville elimination of `A` (entry `-m(i, j)` of `F_{j+1}`),
/// * on the diagonal: the pivots `p(i, i)` forming `D`,
/// * above the diagonal, at `(j, i)` with `i > j`: the multiplier `m~(i, j)`
///   of the Neville elimination of `A^T` (entry `-m~(i, j)` of `G_{j+1}^T`).
///
/// Every stored entry is strictly positive and finite, which certifies strict
/// total positivity of `A`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BidiagonalFactorization {
    order: usize,
    compact: Vec<f64>,
}

impl BidiagonalFactorization {
    /// Validates a compact array of `order * order` entries.
    pub fn from_compact(order: usize, compact: Vec<f64>) -> Result<BidiagonalFactorization> {
        if order == 0 {
            return Err(Error::EmptyInput);
        }
        if compact.len() != order * order {
            return Err(Error::DimensionMismatch {
                expected: order * order,
                found: compact.len(),
            });
        }
        if let Some(pos) = compact.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::NotStrictlyPositive {
                row: pos / order,
                col: pos % order,
            });
        }
        Ok(BidiagonalFactorization { order, compact })
    }

    pub(crate) fn from_compact_unchecked(order: usize, compact: Vec<f64>) -> Self {
        BidiagonalFactorization { order, compact }
    }

    /// Polynomial degree `n`.
    pub fn degree(&self) -> usize {
        self.order - 1
    }

    /// Matrix order `n + 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `m(i, j)`, `i > j`.
    pub fn lower(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i > j && i < self.order);
        self.compact[i * self.order + j]
    }

    /// `m~(i, j)`, `i > j`.
    pub fn upper(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i > j && i < self.order);
        self.compact[j * self.order + i]
    }

    /// Diagonal pivot `p(i, i)`.
    pub fn pivot(&self, i: usize) -> f64 {
        self.compact[i * (self.order + 1)]
    }

    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.order).map(move |i| self.pivot(i))
    }

    /// The row-major compact array.
    pub fn compact(&self) -> &[f64] {
        &self.compact
    }

    pub fn into_compact(self) -> Vec<f64> {
        self.compact
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_vec_unchecked(self.order, self.order, self.compact.clone())
    }

    /// Product of the diagonal pivots, which is `det A`.
    pub fn determinant(&self) -> f64 {
        self.pivots().product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn layout_accessors() {
        let f = BidiagonalFactorization::from_compact(2, vec![0.75, 0.2, 0.3, 2.0 / 3.0]).unwrap();
        assert_eq!(f.lower(1, 0), 0.3);
        assert_eq!(f.upper(1, 0), 0.2);
        assert_eq!(f.pivots().collect::<Vec<_>>(), vec![0.75, 2.0 / 3.0]);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn rejects_bad_arrays() {
        assert!(matches!(
            BidiagonalFactorization::from_compact(2, vec![1.0; 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
        assert_eq!(
            BidiagonalFactorization::from_compact(2, vec![1.0, 1.0, 0.0, 1.0]),
            Err(Error::NotStrictlyPositive { row: 1, col: 0 })
        );
        assert_eq!(
            BidiagonalFactorization::from_compact(1, vec![f64::NAN]),
            Err(Error::NotStrictlyPositive { row: 0, col: 0 })
        );
    }

    proptest! {
        #[test]
        fn compact_round_trip(order in 1usize..8, seed in proptest::collection::vec(1e-3f64..1e3, 64)) {
            let data: Vec<f64> = seed[..order * order].to_vec();
            let f = BidiagonalFactorization::from_compact(order, data.clone()).unwrap();
            prop_assert_eq!(f.compact(), &data[..]);
            prop_assert_eq!(f.into_compact(), data);
        }
    }
}
