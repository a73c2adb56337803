//! Exact rational reference: matrix assembly, fraction-free solves, exact
//! Neville elimination and exact evaluation of the closed-form factorization.
//!
//! Values cross into binary64 only through [`to_f64`], which rounds to
//! nearest.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elimination::{complete_neville, NevilleTrace};
use crate::{BidiagonalFactorization, Error, Result};

pub use num_rational::BigRational;

pub type RationalVector = Vec<BigRational>;

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The exact value of a finite binary64 number.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Round to the nearest binary64, ties to even; overflows to infinity.
pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    // Scale so the integer quotient carries at least 65 bits.
    let shift = 65 - (n.bits() as i64 - d.bits() as i64);
    let (num, den) = if shift >= 0 {
        (n << shift as u64, d.clone())
    } else {
        (n.clone(), d << shift.unsigned_abs())
    };
    let (q, rem) = num.div_rem(&den);
    let qbits = q.bits() as i64;
    let exp = qbits - 1 - shift;
    if exp > 1023 {
        return sign * f64::INFINITY;
    }
    let keep = if exp >= -1022 { 53 } else { 53 - (-1022 - exp) };
    if keep < 0 {
        return sign * 0.0;
    }
    let drop = (qbits - keep) as u64;
    let mut m = (&q >> drop).to_u64().unwrap_or(0);
    let half = q.bit(drop - 1);
    let sticky = !rem.is_zero() || q.trailing_zeros().is_some_and(|t| t < drop - 1);
    if half && (sticky || m & 1 == 1) {
        m += 1;
    }
    sign * libm::scalbn(m as f64, (exp - keep + 1) as i32)
}

pub fn vector_to_f64(v: &[BigRational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<RationalMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.data
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Result<RationalVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &x[j])
                    .fold(BigRational::zero(), |acc, v| acc + v)
            })
            .collect())
    }

    /// Submatrix of the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        RationalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn to_f64(&self) -> crate::DenseMatrix {
        crate::DenseMatrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().map(to_f64).collect(),
        )
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Checks `0 < x_1 < ... < x_{n+1} < 1` exactly.
pub fn validate_nodes(nodes: &[BigRational]) -> Result<()> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if nodes.is_empty() {
        return Err(Error::EmptyInput);
    }
    if nodes.iter().any(|x| *x <= zero || *x >= one) || nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidNodes);
    }
    Ok(())
}

fn binomial_exact(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - i + 1) / BigInt::from(i);
    }
    c
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// The Bernstein–Vandermonde matrix of `nodes`, exactly.
pub fn exact_build(nodes: &[BigRational]) -> Result<RationalMatrix> {
    validate_nodes(nodes)?;
    let order = nodes.len();
    let n = order - 1;
    let one = BigRational::one();
    let mut a = RationalMatrix::zeros(order, order);
    for (i, x) in nodes.iter().enumerate() {
        let omx = &one - x;
        for j in 0..order {
            a[(i, j)] =
                BigRational::from_integer(binomial_exact(n, j)) * pow(&omx, n - j) * pow(x, j);
        }
    }
    Ok(a)
}

/// Fraction-free (Bareiss) elimination of `[a | rhs]`, then back substitution.
///
/// Each row is scaled to integers first; every intermediate division in the
/// elimination is exact.
fn bareiss(a: &RationalMatrix, rhs: &[RationalVector]) -> Result<Vec<RationalVector>> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.cols,
        });
    }
    if let Some(bad) = rhs.iter().find(|b| b.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let width = n + rhs.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row: Vec<&BigRational> = (0..n)
                .map(|j| &a[(i, j)])
                .chain(rhs.iter().map(|b| &b[i]))
                .collect();
            let lcm = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    Ok((0..rhs.len())
        .map(|c| {
            let mut x = vec![BigRational::zero(); n];
            for i in (0..n).rev() {
                let mut s = BigRational::from_integer(m[i][n + c].clone());
                for j in i + 1..n {
                    s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
                }
                x[i] = s / BigRational::from_integer(m[i][i].clone());
            }
            x
        })
        .collect())
}

/// Exact solution of `a x = b`.
pub fn exact_solve(a: &RationalMatrix, b: &[BigRational]) -> Result<RationalVector> {
    Ok(bareiss(a, &[b.to_vec()])?.remove(0))
}

/// Exact solutions of `a x = b` for several right-hand sides.
pub fn exact_solve_many(a: &RationalMatrix, bs: &[RationalVector]) -> Result<Vec<RationalVector>> {
    bareiss(a, bs)
}

pub fn exact_inverse(a: &RationalMatrix) -> Result<RationalMatrix> {
    let n = a.rows;
    let cols: Vec<RationalVector> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let xs = bareiss(a, &cols)?;
    let mut inv = RationalMatrix::zeros(n, n);
    for (j, x) in xs.into_iter().enumerate() {
        for (i, v) in x.into_iter().enumerate() {
            inv[(i, j)] = v;
        }
    }
    Ok(inv)
}

/// Exact determinant by fraction-free elimination.
pub fn exact_determinant(a: &RationalMatrix) -> Result<BigRational> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.cols,
        });
    }
    // Clear denominators row by row; det scales by the product of the lcms.
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let lcm = (0..n).fold(BigInt::one(), |l, j| l.lcm(a[(i, j)].denom()));
            let row = (0..n)
                .map(|j| a[(i, j)].numer() * (&lcm / a[(i, j)].denom()))
                .collect();
            scale *= lcm;
            row
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(BigRational::new(sign * prev, scale))
}

/// `prod_k C(n, k) * prod_{i<j} (x_j - x_i)` in exact arithmetic.
pub fn exact_determinant_formula(nodes: &[BigRational]) -> Result<BigRational> {
    validate_nodes(nodes)?;
    let n = nodes.len() - 1;
    let mut d = BigRational::one();
    for k in 0..=n {
        d *= BigRational::from_integer(binomial_exact(n, k));
    }
    for j in 1..nodes.len() {
        for i in 0..j {
            d *= &nodes[j] - &nodes[i];
        }
    }
    Ok(d)
}

/// Exact counterpart of [`BidiagonalFactorization`], in the same compact
/// layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactFactorization {
    pub order: usize,
    pub compact: Vec<BigRational>,
}

impl ExactFactorization {
    pub fn lower(&self, i: usize, j: usize) -> &BigRational {
        &self.compact[i * self.order + j]
    }

    pub fn upper(&self, i: usize, j: usize) -> &BigRational {
        &self.compact[j * self.order + i]
    }

    pub fn pivot(&self, i: usize) -> &BigRational {
        &self.compact[i * (self.order + 1)]
    }

    /// Entries rounded to nearest binary64.
    pub fn to_f64(&self) -> Result<BidiagonalFactorization> {
        BidiagonalFactorization::from_compact(self.order, vector_to_f64(&self.compact))
    }

    /// `G_1 ... G_n D^{-1} F_n ... F_1` multiplied out from explicit factor
    /// matrices.
    pub fn product(&self) -> RationalMatrix {
        let order = self.order;
        let n = order - 1;
        let mut acc = RationalMatrix::identity(order);
        // Build right to left: acc = F_i acc for i = 1..n.
        for i in 0..n {
            let mut f = RationalMatrix::identity(order);
            for k in i + 1..order {
                f[(k, k - 1)] = -self.lower(k, i).clone();
            }
            acc = f.mul(&acc).expect("square factors");
        }
        let mut d_inv = RationalMatrix::zeros(order, order);
        for k in 0..order {
            d_inv[(k, k)] = BigRational::one() / self.pivot(k);
        }
        acc = d_inv.mul(&acc).expect("square factors");
        for i in (0..n).rev() {
            let mut g = RationalMatrix::identity(order);
            for k in i..n {
                g[(k, k + 1)] = -self.upper(k + 1, i).clone();
            }
            acc = g.mul(&acc).expect("square factors");
        }
        acc
    }
}

/// The closed-form multipliers and pivots, evaluated term by term in exact
/// arithmetic (no recurrences).
pub fn exact_bd_formulas(nodes: &[BigRational]) -> Result<ExactFactorization> {
    validate_nodes(nodes)?;
    let order = nodes.len();
    let n = order - 1;
    let one = BigRational::one();
    // 1-based accessors to follow the closed forms literally.
    let x = |i: usize| &nodes[i - 1];
    let omx = |i: usize| &one - &nodes[i - 1];
    let mut compact = vec![BigRational::zero(); order * order];

    for j in 1..=n {
        for i in j + 1..=n + 1 {
            let mut num = pow(&omx(i), n - j + 1) * omx(i - j);
            for k in 1..j {
                num *= x(i) - x(i - k);
            }
            let mut den = pow(&omx(i - 1), n - j + 2);
            for k in 2..=j {
                den *= x(i - 1) - x(i - k);
            }
            compact[(i - 1) * order + (j - 1)] = num / den;

            let upper = integer((n + 2 - i) as i64) * x(j) / (integer((i - 1) as i64) * omx(j));
            compact[(j - 1) * order + (i - 1)] = upper;
        }
    }
    for i in 1..=n + 1 {
        let mut num = BigRational::from_integer(binomial_exact(n, i - 1)) * pow(&omx(i), n + 1 - i);
        let mut den = BigRational::one();
        for k in 1..i {
            num *= x(i) - x(k);
            den *= omx(k);
        }
        compact[(i - 1) * (order + 1)] = num / den;
    }
    Ok(ExactFactorization { order, compact })
}

/// Complete Neville elimination in exact arithmetic; fails with
/// [`Error::ZeroPivot`] if a row exchange would be needed.
pub fn exact_neville(a: &RationalMatrix) -> Result<NevilleTrace<BigRational>> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: a.cols,
        });
    }
    let trace = complete_neville(a.rows, &a.data)?;
    for pass in [&trace.matrix, &trace.transpose] {
        if let Some((row, col)) = pass.first_exchange {
            return Err(Error::ZeroPivot { row, col });
        }
    }
    Ok(trace)
}

impl NevilleTrace<BigRational> {
    pub fn to_exact_factorization(&self) -> ExactFactorization {
        ExactFactorization {
            order: self.order(),
            compact: self.compact(),
        }
    }
}

/// Largest componentwise relative error `|x_i - e_i| / |e_i|` against an exact
/// reference, evaluated in binary64 after rounding the reference. Zero
/// reference components are compared absolutely.
pub fn componentwise_relative_error(x: &[f64], exact: &[BigRational]) -> f64 {
    x.iter()
        .zip(exact)
        .map(|(v, e)| {
            let e = to_f64(e);
            if e == 0.0 {
                v.abs()
            } else {
                ((v - e) / e).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// `true` if `r` is strictly positive.
pub fn is_positive(r: &BigRational) -> bool {
    r.is_positive()
}
