//! Binary64 mantissa with an unbounded exponent.
//!
//! Products such as `(1 - x)^n` or `C(n, i) / prod(1 - x_k)` leave the
//! binary64 range long before the factorization entries they feed do. Keeping
//! the mantissa in [0.5, 1) and the exponent in an `i64` makes every product
//! and quotient round exactly as the plain binary64 operation would, minus
//! the overflow.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Wide {
    mant: f64,
    exp: i64,
}

impl Wide {
    pub(crate) const ONE: Wide = Wide { mant: 0.5, exp: 1 };

    pub(crate) fn new(x: f64) -> Wide {
        let (mant, exp) = libm::frexp(x);
        Wide {
            mant,
            exp: exp as i64,
        }
    }

    fn normalized(mant: f64, exp: i64) -> Wide {
        let (m, e) = libm::frexp(mant);
        Wide {
            mant: m,
            exp: exp + e as i64,
        }
    }

    pub(crate) fn mul(self, rhs: Wide) -> Wide {
        Wide::normalized(self.mant * rhs.mant, self.exp + rhs.exp)
    }

    pub(crate) fn mul_f64(self, rhs: f64) -> Wide {
        self.mul(Wide::new(rhs))
    }

    pub(crate) fn div(self, rhs: Wide) -> Wide {
        Wide::normalized(self.mant / rhs.mant, self.exp - rhs.exp)
    }

    /// `base^n` by binary powering.
    pub(crate) fn powi(base: f64, mut n: usize) -> Wide {
        let mut acc = Wide::ONE;
        let mut sq = Wide::new(base);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(sq);
            }
        }
        acc
    }

    /// Natural logarithm; `-inf` for zero.
    pub(crate) fn ln(self) -> f64 {
        libm::log(self.mant) + self.exp as f64 * core::f64::consts::LN_2
    }

    /// Rounds to binary64; saturates to `0` or `inf` outside the range.
    pub(crate) fn to_f64(self) -> f64 {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return self.mant;
        }
        let e = self.exp.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
        libm::scalbn(self.mant, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_match_plain_arithmetic_in_range() {
        let a = Wide::new(0.3).mul_f64(7.25).div(Wide::new(1.1));
        assert_eq!(a.to_f64(), 0.3 * 7.25 / 1.1);
        assert_eq!(Wide::powi(0.75, 5).to_f64(), 0.75f64.powi(5));
        assert_eq!(Wide::powi(2.0, 0).to_f64(), 1.0);
    }

    #[test]
    fn survives_ranges_binary64_cannot_hold() {
        let tiny = Wide::powi(1.0 / 402.0, 400);
        let huge = Wide::powi(402.0, 400);
        assert_eq!(tiny.to_f64(), 0.0);
        assert_eq!(huge.to_f64(), f64::INFINITY);
        let r = tiny.mul(huge).to_f64();
        assert!((r - 1.0).abs() < 1e-12, "{r}");
        assert!((tiny.ln() - 400.0 * libm::log(1.0 / 402.0)).abs() < 1e-9);
    }
}
