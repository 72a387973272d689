use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{factorial, r_stirling2};
use crate::error::Result;
use crate::guard::Guard;

/// A bivariate power series in `x`, `y` with exact rational coefficients,
/// truncated above a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    degree: usize,
    /// `coeffs[a][b]` is the coefficient of `x^a y^b`, with `a + b ≤ degree`.
    coeffs: Vec<Vec<BigRational>>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: (0..=degree)
                .map(|a| vec![BigRational::zero(); degree - a + 1])
                .collect(),
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0][0] = BigRational::one();
        s
    }

    /// Largest total degree kept.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `x^a y^b`; zero beyond the truncation.
    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        self.coeffs
            .get(a)
            .and_then(|col| col.get(b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Adds `c·x^a y^b`, dropping the term beyond the truncation.
    pub fn add_term(&mut self, a: usize, b: usize, c: BigRational) {
        if a + b <= self.degree {
            self.coeffs[a][b] += c;
        }
    }

    /// Nonzero coefficients keyed by `(x exponent, y exponent)`.
    pub fn terms(&self) -> BTreeMap<(usize, usize), BigRational> {
        let mut out = BTreeMap::new();
        for (a, col) in self.coeffs.iter().enumerate() {
            for (b, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    out.insert((a, b), c.clone());
                }
            }
        }
        out
    }

    /// The coefficient of `y^b` as a polynomial in `x`, lowest power first.
    pub fn y_block(&self, b: usize) -> Vec<BigRational> {
        (0..=self.degree.saturating_sub(b))
            .map(|a| self.coeff(a, b))
            .collect()
    }

    fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|x| *x *= c);
        out
    }

    fn has_constant_term(&self) -> bool {
        !self.coeffs[0][0].is_zero()
    }

    /// `exp(self)`; the constant term must vanish so the sum terminates.
    pub fn exp(&self) -> Self {
        assert!(
            !self.has_constant_term(),
            "exp needs a series without constant term"
        );
        let mut out = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        for k in 1..=self.degree {
            power = &power * self;
            out = &out + &power.scale(&BigRational::new(BigInt::one(), factorial(k).into()));
        }
        out
    }

    /// `1/(1 + self)` as `Σ (−self)^k`; the constant term must vanish.
    pub fn one_plus_inverse(&self) -> Self {
        assert!(
            !self.has_constant_term(),
            "inverse needs a series without constant term"
        );
        let minus = -self;
        let mut out = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        for _ in 1..=self.degree {
            power = &power * &minus;
            out = &out + &power;
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, other: &TruncatedSeries) -> TruncatedSeries {
        let degree = self.degree.min(other.degree);
        let mut out = TruncatedSeries::zero(degree);
        for a in 0..=degree {
            for b in 0..=degree - a {
                out.coeffs[a][b] = &self.coeffs[a][b] + &other.coeffs[a][b];
            }
        }
        out
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, other: &TruncatedSeries) -> TruncatedSeries {
        let degree = self.degree.min(other.degree);
        let mut out = TruncatedSeries::zero(degree);
        for (a1, col) in self.coeffs.iter().enumerate().take(degree + 1) {
            for (b1, c1) in col.iter().enumerate().take(degree - a1 + 1) {
                if c1.is_zero() {
                    continue;
                }
                for a2 in 0..=degree - a1 - b1 {
                    for b2 in 0..=degree - a1 - b1 - a2 {
                        let c2 = &other.coeffs[a2][b2];
                        if !c2.is_zero() {
                            out.coeffs[a1 + a2][b1 + b2] += c1 * c2;
                        }
                    }
                }
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }
}

/// Maps `"a,b"` (exponents of `x` and `y`) to the coefficient as `"p/q"`.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms()
            .into_iter()
            .map(|((a, b), c)| (format!("{a},{b}"), c.to_string()))
            .collect();
        map.serialize(serializer)
    }
}

/// `Σ B_{i,j} x^j y^i / i!` with `B_{i,j} = {2i atop j}_i`, keeping every
/// monomial of total degree `≤ 3d`. This covers the `y^i` blocks for `i ≤ d` in full.
pub fn series_direct(d: usize, guard: &Guard) -> Result<TruncatedSeries> {
    guard.check("series order", d as u128, guard.max_series_order as u128)?;
    let degree = 3 * d;
    let mut s = TruncatedSeries::zero(degree);
    for i in 0..=degree {
        let inv = BigRational::new(BigInt::one(), factorial(i).into());
        for j in 0..=degree - i {
            let b = r_stirling2(2 * i, j, i);
            if !b.is_zero() {
                s.add_term(j, i, BigRational::from(BigInt::from(b)) * &inv);
            }
        }
    }
    Ok(s)
}

/// `e^{−(W(−xy)/y + x)} / (1 + W(−xy))` with `W(z) = Σ_{i≥1} (−i)^{i−1} z^i / i!`,
/// composed in truncated series arithmetic at total degree `3d`.
pub fn series_closed(d: usize, guard: &Guard) -> Result<TruncatedSeries> {
    guard.check("series order", d as u128, guard.max_series_order as u128)?;
    let degree = 3 * d;
    // W(−xy) and W(−xy)/y, term by term: (−i)^{i−1} (−1)^i x^i y^i / i!
    let mut w = TruncatedSeries::zero(degree);
    let mut w_over_y = TruncatedSeries::zero(degree);
    for i in 1..=degree {
        let coefficient = BigRational::new(
            BigInt::from(-(i as i64)).pow(i as u32 - 1) * if i % 2 == 0 { 1 } else { -1 },
            factorial(i).into(),
        );
        w.add_term(i, i, coefficient.clone());
        w_over_y.add_term(i, i - 1, coefficient);
    }
    let mut exponent = -&w_over_y;
    exponent.add_term(1, 0, -BigRational::one());
    debug_assert!(exponent.coeff(1, 0).is_zero());
    Ok(&exponent.exp() * &w.one_plus_inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn exp_of_x() {
        let mut x = TruncatedSeries::zero(4);
        x.add_term(1, 0, q(1, 1));
        let e = x.exp();
        assert_eq!(e.coeff(3, 0), q(1, 6));
        assert_eq!(e.coeff(4, 0), q(1, 24));
        assert_eq!(e.coeff(0, 1), q(0, 1));
    }

    #[test]
    fn inverse_of_one_plus_y() {
        let mut y = TruncatedSeries::zero(3);
        y.add_term(0, 1, q(1, 1));
        let inv = y.one_plus_inverse();
        assert_eq!(inv.y_block(0), [q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(
            (0..=3).map(|b| inv.coeff(0, b)).collect::<Vec<_>>(),
            [q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)]
        );
    }

    #[test]
    fn low_order_terms() {
        let s = series_closed(2, &Guard::default()).unwrap();
        assert_eq!(s.coeff(0, 0), q(1, 1));
        assert_eq!(s.coeff(1, 1), q(1, 1));
        assert_eq!(s.coeff(2, 1), q(1, 1));
        // x²(x+4)(1+x)/2 = (4x² + 5x³ + x⁴)/2
        assert_eq!(s.coeff(2, 2), q(2, 1));
        assert_eq!(s.coeff(3, 2), q(5, 2));
        assert_eq!(s.coeff(4, 2), q(1, 2));
        assert_eq!(s, series_direct(2, &Guard::default()).unwrap());
    }

    #[test]
    fn guard_limits_the_order() {
        assert!(series_direct(100, &Guard::default()).is_err());
    }
}
