//! Closed-form bidiagonal factorization of the inverse of a
//! Bernstein–Vandermonde matrix, computed from the nodes in `O(n^2)`.
//!
//! Every subtraction below acts on input data: `1 - x_i` or `x_i - x_j`.
//! All other operations multiply or divide positive quantities, so each
//! entry carries a small relative error no matter how ill-conditioned `A` is.

use alloc::vec;
use alloc::vec::Vec;

use crate::wide::Wide;
use crate::{BidiagonalFactorization, Error, NodeSet, Result};

fn store(compact: &mut [f64], pos: usize, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonFiniteIntermediate);
    }
    compact[pos] = value;
    Ok(())
}

/// Factorization `A^{-1} = G_1 ... G_n D^{-1} F_n ... F_1` of the
/// Bernstein–Vandermonde matrix at `nodes`, without forming `A`.
///
/// Intermediate powers and products are carried with an unbounded exponent,
/// so the only failure is an entry that itself leaves the binary64 range.
pub fn factorize(nodes: &NodeSet) -> Result<BidiagonalFactorization> {
    let x: &[f64] = nodes;
    let order = nodes.order();
    let n = nodes.degree();
    let omx: Vec<f64> = x.iter().map(|v| 1.0 - v).collect();
    let mut compact = vec![0.0; order * order];

    // Multipliers of the Neville elimination of A, one running product per row.
    for i in 1..order {
        let mut big_m = Wide::powi(omx[i], n).div(Wide::powi(omx[i - 1], n + 1));
        store(&mut compact, i * order, big_m.mul_f64(omx[i - 1]).to_f64())?;
        for j in 1..i {
            let num = omx[i - 1] * (x[i] - x[i - j]);
            let den = omx[i] * (x[i - 1] - x[i - j - 1]);
            debug_assert!(num > 0.0 && den > 0.0);
            big_m = big_m.mul_f64(num / den);
            store(
                &mut compact,
                i * order + j,
                big_m.mul_f64(omx[i - j - 1]).to_f64(),
            )?;
        }
    }

    // Multipliers of the Neville elimination of A^T, stored transposed.
    for j in 0..n {
        let c = x[j] / omx[j];
        for i in j + 1..order {
            let ratio = (n - i + 1) as f64 / i as f64;
            store(&mut compact, j * order + i, ratio * c)?;
        }
    }

    // Diagonal pivots.
    store(&mut compact, 0, Wide::powi(omx[0], n).to_f64())?;
    let mut q = Wide::ONE;
    for i in 1..order {
        q = q.mul_f64((n - i + 1) as f64 / (i as f64 * omx[i - 1]));
        let mut aux = Wide::ONE;
        for &xk in &x[..i] {
            debug_assert!(x[i] - xk > 0.0);
            aux = aux.mul_f64(x[i] - xk);
        }
        let p = q.mul(Wide::powi(omx[i], n - i)).mul(aux);
        store(&mut compact, i * (order + 1), p.to_f64())?;
    }

    Ok(BidiagonalFactorization::from_compact_unchecked(
        order, compact,
    ))
}

/// Factorization used for the dual system `A^T x = b`.
///
/// `A^{-T} = F_1^T ... F_n^T D^{-1} G_n^T ... G_1^T` reuses the same
/// multipliers and pivots with the factor roles swapped, so the compact array
/// is identical to [`factorize`]. [`crate::solve_dual`] applies it in the
/// transposed order.
pub fn factorize_dual(nodes: &NodeSet) -> Result<BidiagonalFactorization> {
    factorize(nodes)
}
