//! Truncated Laurent series with in-band truncation orders.
//!
//! A series knows its coefficients for exponents `min..=order` and nothing
//! beyond `order`. Every operation propagates the order it can actually
//! guarantee, and reading past it is an error rather than a silent zero.

use super::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series in different variables: {0} vs {1}")]
    VarMismatch(char, char),
    #[error("series has a zero (or unknown) leading coefficient")]
    ZeroLeading,
    #[error("log1p needs a series with zero constant term and no poles")]
    NotSmall,
    #[error("coefficient of {var}^{requested} requested but the series is only known up to {var}^{order}")]
    BeyondOrder { var: char, requested: i64, order: i64 },
    #[error("operation needs a power series starting at {var}^1")]
    NotInvertibleComposition { var: char },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    var: char,
    min: i64,
    coeffs: Vec<Scalar>,
    order: i64,
}

impl Series {
    /// Series with coefficients for exponents `min, min+1, ...`, known up to
    /// `order`; missing coefficients below `order` are zero, extra ones
    /// beyond it are dropped.
    pub fn new(var: char, min: i64, mut coeffs: Vec<Scalar>, order: i64) -> Series {
        let len = (order - min + 1).max(0) as usize;
        coeffs.resize(len, Scalar::zero());
        Series { var, min, coeffs, order }
    }

    pub fn zero(var: char, order: i64) -> Series {
        Series::new(var, order + 1, Vec::new(), order)
    }

    pub fn one(var: char, order: i64) -> Series {
        Series::monomial(var, Scalar::one(), 0, order)
    }

    pub fn monomial(var: char, c: Scalar, e: i64, order: i64) -> Series {
        Series::new(var, e, vec![c], order)
    }

    /// Power series from coefficients of `var^0, var^1, ...`.
    pub fn from_coeffs(var: char, coeffs: Vec<Scalar>, order: i64) -> Series {
        Series::new(var, 0, coeffs, order)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn min_exponent(&self) -> i64 {
        self.min
    }

    /// Lowest exponent with a nonzero coefficient, or `order + 1` if every
    /// known coefficient vanishes.
    pub fn valuation(&self) -> i64 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min + i as i64)
            .unwrap_or(self.order + 1)
    }

    pub fn coeff(&self, e: i64) -> Result<Scalar, SeriesError> {
        if e > self.order {
            return Err(SeriesError::BeyondOrder { var: self.var, requested: e, order: self.order });
        }
        Ok(self.coeff_unchecked(e))
    }

    fn coeff_unchecked(&self, e: i64) -> Scalar {
        if e < self.min || e > self.order {
            Scalar::zero()
        } else {
            self.coeffs[(e - self.min) as usize].clone()
        }
    }

    fn coeff_ref(&self, e: i64) -> Option<&Scalar> {
        if e < self.min || e > self.order {
            None
        } else {
            Some(&self.coeffs[(e - self.min) as usize])
        }
    }

    /// Coefficient of `var^-1`.
    pub fn residue(&self) -> Result<Scalar, SeriesError> {
        self.coeff(-1)
    }

    /// Known nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min + i as i64, c))
    }

    fn check_var(&self, other: &Series) -> Result<(), SeriesError> {
        if self.var != other.var {
            Err(SeriesError::VarMismatch(self.var, other.var))
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, order: i64) -> Series {
        let order = order.min(self.order);
        Series::new(self.var, self.min, self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let min = self.min.min(other.min);
        let coeffs = (min..=order)
            .map(|e| match (self.coeff_ref(e), other.coeff_ref(e)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Scalar::zero(),
            })
            .collect();
        Ok(Series::new(self.var, min, coeffs, order))
    }

    pub fn neg(&self) -> Series {
        Series { var: self.var, min: self.min, coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series { var: self.var, min: self.min, coeffs: self.coeffs.iter().map(|a| a * c).collect(), order: self.order }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series { var: self.var, min: self.min + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    /// Cauchy product, known up to `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let va = self.valuation();
        let vb = other.valuation();
        let order = (self.order + vb).min(other.order + va);
        let min = va + vb;
        if min > order {
            return Ok(Series::zero(self.var, order));
        }
        let mut out = vec![Scalar::zero(); (order - min + 1) as usize];
        for (ea, a) in self.terms() {
            if ea + vb > order {
                break;
            }
            for (eb, b) in other.terms() {
                let e = ea + eb;
                if e > order {
                    break;
                }
                out[(e - min) as usize] += a * b;
            }
        }
        Ok(Series::new(self.var, min, out, order))
    }

    /// Multiplicative inverse. For `a = c z^v (1 + ...)` known to order `N`,
    /// the inverse is known to order `N - 2v`.
    pub fn inv(&self) -> Result<Series, SeriesError> {
        let v = self.valuation();
        if v > self.order {
            return Err(SeriesError::ZeroLeading);
        }
        let lead_inv = self.coeff_unchecked(v).inv().ok_or(SeriesError::ZeroLeading)?;
        let n = (self.order - v) as usize;
        // normalized a(z) / (c z^v) = 1 + sum_{k>=1} a_k z^k
        let a: Vec<Scalar> = (0..=n).map(|k| &self.coeff_unchecked(v + k as i64) * &lead_inv).collect();
        let mut b = vec![Scalar::zero(); n + 1];
        b[0] = Scalar::one();
        for k in 1..=n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                if !a[j].is_zero() {
                    acc -= &a[j] * &b[k - j];
                }
            }
            b[k] = acc;
        }
        let b: Vec<Scalar> = b.into_iter().map(|x| x * &lead_inv).collect();
        Ok(Series::new(self.var, -v, b, self.order - 2 * v))
    }

    /// `log(1 + a)` for a power series `a` with zero constant term.
    pub fn log1p(&self) -> Result<Series, SeriesError> {
        if self.valuation() < 1 {
            return Err(SeriesError::NotSmall);
        }
        // d/dz log(1+a) = a' / (1+a)
        let one_plus = self.add(&Series::one(self.var, self.order))?;
        let quotient = self.derivative().mul(&one_plus.inv()?)?;
        Ok(quotient.integrate())
    }

    /// `exp(a)` for a power series `a` with zero constant term.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if self.valuation() < 1 {
            return Err(SeriesError::NotSmall);
        }
        let n = self.order.max(0) as usize;
        let a: Vec<Scalar> = (0..=n).map(|k| self.coeff_unchecked(k as i64)).collect();
        let mut e = vec![Scalar::zero(); n + 1];
        e[0] = Scalar::one();
        for m in 1..=n {
            let mut acc = Scalar::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    acc += Scalar::int(k as i64) * &a[k] * &e[m - k];
                }
            }
            e[m] = acc * Scalar::frac(1, m as i64);
        }
        Ok(Series::new(self.var, 0, e, self.order))
    }

    pub fn derivative(&self) -> Series {
        let coeffs = (self.min..=self.order).map(|e| Scalar::int(e) * self.coeff_unchecked(e)).collect();
        Series::new(self.var, self.min - 1, coeffs, self.order - 1)
    }

    /// Formal antiderivative with zero constant; panics on a `var^-1` term.
    pub fn integrate(&self) -> Series {
        let coeffs = (self.min..=self.order)
            .map(|e| {
                let c = self.coeff_unchecked(e);
                if c.is_zero() {
                    c
                } else {
                    assert!(e != -1, "antiderivative of a series with a residue");
                    c * Scalar::frac(1, e + 1)
                }
            })
            .collect();
        Series::new(self.var, self.min + 1, coeffs, self.order + 1)
    }

    /// `a(-z)`.
    pub fn reflect(&self) -> Series {
        let coeffs = (self.min..=self.order)
            .map(|e| {
                let c = self.coeff_unchecked(e);
                if e % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Series::new(self.var, self.min, coeffs, self.order)
    }

    /// `self(inner(t))` for a power series `self` and an `inner` with
    /// positive valuation; the result lives in `inner`'s variable.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        let v = inner.valuation();
        if v < 1 || self.min < 0 {
            return Err(SeriesError::NotInvertibleComposition { var: inner.var });
        }
        // terms a_k t^{kv+...} beyond order k > self.order are unknown
        let order = inner.order.min((self.order + 1) * v - 1);
        let inner = inner.truncate(order);
        let mut acc = Series::zero(inner.var, order);
        for k in (0..=self.order.max(0)).rev() {
            acc = acc.mul(&inner)?.truncate(order);
            acc = acc.add(&Series::monomial(inner.var, self.coeff_unchecked(k), 0, order))?;
        }
        Ok(acc)
    }

    /// Compositional inverse of `a_1 z + a_2 z^2 + ...` with `a_1` invertible.
    pub fn revert(&self, new_var: char) -> Result<Series, SeriesError> {
        if self.valuation() != 1 {
            return Err(SeriesError::NotInvertibleComposition { var: self.var });
        }
        let n = self.order as usize;
        // Lagrange inversion: [t^m] b = (1/m) [z^{m-1}] (z / a(z))^m
        let h = self.shift(-1).inv()?;
        let mut b = vec![Scalar::zero(); n + 1];
        let mut power = Series::one(self.var, h.order());
        for m in 1..=n {
            power = power.mul(&h)?;
            b[m] = power.coeff(m as i64 - 1)? * Scalar::frac(1, m as i64);
        }
        Ok(Series::from_coeffs(new_var, b, self.order))
    }
}
