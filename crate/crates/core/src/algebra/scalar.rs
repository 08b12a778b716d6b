//! Exact scalars in one of three ring modes.
//!
//! A plain rational embeds into every mode, so mixed arithmetic between a
//! rational and a rational function (or a quadratic element) promotes the
//! rational. Mixing a rational function with a quadratic element, or two
//! quadratic elements over different `r`, is a programming error and panics.
//!
//! Canonical forms make equality structural: values that happen to be
//! rational are always demoted to [`Scalar::Rat`].

use super::poly::{parse_rational, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Which coefficient field a computation lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingMode {
    Rational,
    /// Rational functions in the formal indeterminate `q`.
    RatFun,
    /// `Q[s]/(s^2 - r)`.
    Quadratic(BigRational),
}

impl RingMode {
    pub fn name(&self) -> &'static str {
        match self {
            RingMode::Rational => "rational",
            RingMode::RatFun => "ratfun",
            RingMode::Quadratic(_) => "quadratic",
        }
    }

    /// True when `r` is the square of a rational, which would make mode (c)
    /// a ring with zero divisors.
    pub fn is_degenerate(&self) -> bool {
        match self {
            RingMode::Quadratic(r) => rational_sqrt(r).is_some(),
            _ => false,
        }
    }
}

/// A reduced rational function with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().unwrap().recip();
        RatFun { num: n.scale(&lead), den: d.scale(&lead) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(self.num.add(&o.num), self.den.clone());
        }
        RatFun::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn recip(&self) -> RatFun {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    fn derivative(&self) -> RatFun {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(n, self.den.mul(&self.den))
    }
}

/// `a + b*s` with `s^2 = r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
    pub r: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fun(RatFun),
    Quad(QuadElem),
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn big(n: BigInt) -> Scalar {
        Scalar::Rat(BigRational::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn rat(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// The formal indeterminate `q` of ring mode (b).
    pub fn q() -> Scalar {
        Scalar::Fun(RatFun::new(Poly::x(), Poly::one()))
    }

    /// The generator `s` of `Q[s]/(s^2 - r)`.
    pub fn sqrt_of(r: BigRational) -> Scalar {
        Scalar::quad(BigRational::zero(), BigRational::one(), r)
    }

    pub fn quad(a: BigRational, b: BigRational, r: BigRational) -> Scalar {
        if b.is_zero() {
            Scalar::Rat(a)
        } else {
            Scalar::Quad(QuadElem { a, b, r })
        }
    }

    pub fn ratfun(num: Poly, den: Poly) -> Scalar {
        Scalar::from_fun(RatFun::new(num, den))
    }

    fn from_fun(f: RatFun) -> Scalar {
        match f.as_rational() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Fun(f),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// The ring mode this value requires (rationals live everywhere).
    pub fn mode(&self) -> RingMode {
        match self {
            Scalar::Rat(_) => RingMode::Rational,
            Scalar::Fun(_) => RingMode::RatFun,
            Scalar::Quad(e) => RingMode::Quadratic(e.r.clone()),
        }
    }

    pub fn fits(&self, mode: &RingMode) -> bool {
        match (self, mode) {
            (Scalar::Rat(_), _) => true,
            (Scalar::Fun(_), RingMode::RatFun) => true,
            (Scalar::Quad(e), RingMode::Quadratic(r)) => &e.r == r,
            _ => false,
        }
    }

    /// Multiplicative inverse; `None` for zero (and for zero divisors in a
    /// degenerate quadratic ring).
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => (!r.is_zero()).then(|| Scalar::Rat(r.recip())),
            Scalar::Fun(f) => Some(Scalar::from_fun(f.recip())),
            Scalar::Quad(e) => {
                let norm = &e.a * &e.a - &e.b * &e.b * &e.r;
                if norm.is_zero() {
                    return None;
                }
                Some(Scalar::quad(&e.a / &norm, -&e.b / &norm, e.r.clone()))
            }
        }
    }

    pub fn pow(&self, mut e: i64) -> Scalar {
        let mut base = if e < 0 {
            e = -e;
            self.inv().expect("negative power of a non-invertible scalar")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Formal derivative with respect to `q` (zero for rationals, an error
    /// for quadratic elements).
    pub fn dq(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::zero(),
            Scalar::Fun(f) => Scalar::from_fun(f.derivative()),
            Scalar::Quad(_) => panic!("q-derivative of a quadratic-extension element"),
        }
    }

    /// Evaluates a rational function at a rational point of `q`.
    pub fn eval_q(&self, at: &BigRational) -> Option<Scalar> {
        match self {
            Scalar::Fun(f) => {
                let d = f.den.eval(at);
                (!d.is_zero()).then(|| Scalar::Rat(f.num.eval(at) / d))
            }
            other => Some(other.clone()),
        }
    }

    /// Canonical string in the core serialization.
    pub fn to_canonical(&self) -> String {
        match self {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Fun(f) => format!("({})/({})", f.num, f.den),
            Scalar::Quad(e) => {
                let b = if e.b.is_one() {
                    "s".to_string()
                } else if (-&e.b).is_one() {
                    "-s".to_string()
                } else {
                    format!("{}*s", e.b)
                };
                if e.a.is_zero() {
                    b
                } else if b.starts_with('-') {
                    format!("{}{}", e.a, b)
                } else {
                    format!("{}+{}", e.a, b)
                }
            }
        }
    }

    /// Parses a scalar string within the given ring mode.
    pub fn parse(s: &str, mode: &RingMode) -> Result<Scalar, String> {
        let s = s.trim();
        let bad = || format!("malformed {} scalar {s:?}", mode.name());
        if let Some(r) = parse_rational(s) {
            return Ok(Scalar::Rat(r));
        }
        match mode {
            RingMode::Rational => Err(bad()),
            RingMode::RatFun => {
                if let Some((n, d)) = split_fraction(s) {
                    let n = Poly::parse(n, 'q').ok_or_else(bad)?;
                    let d = Poly::parse(d, 'q').ok_or_else(bad)?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::ratfun(n, d))
                } else {
                    let p = Poly::parse(s, 'q').ok_or_else(bad)?;
                    Ok(Scalar::ratfun(p, Poly::one()))
                }
            }
            RingMode::Quadratic(r) => {
                let p = Poly::parse(s, 's').ok_or_else(bad)?;
                if p.degree().unwrap_or(0) > 1 {
                    return Err(bad());
                }
                let c = p.coeffs();
                let a = c.first().cloned().unwrap_or_else(BigRational::zero);
                let b = c.get(1).cloned().unwrap_or_else(BigRational::zero);
                Ok(Scalar::quad(a, b, r.clone()))
            }
        }
    }
}

/// Splits `(num)/(den)` at the top-level slash.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let inner = s.strip_prefix('(')?;
    let close = inner.find(')')?;
    let num = &inner[..close];
    let rest = inner[close + 1..].strip_prefix("/(")?;
    let den = rest.strip_suffix(')')?;
    Some((num, den))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }
}

fn promote_fun(r: &BigRational) -> RatFun {
    RatFun::new(Poly::constant(r.clone()), Poly::one())
}

fn check_r(x: &QuadElem, y: &QuadElem) {
    assert!(x.r == y.r, "quadratic elements over different rings: s^2={} vs s^2={}", x.r, y.r);
}

fn add(x: &Scalar, y: &Scalar) -> Scalar {
    use Scalar::*;
    match (x, y) {
        (Rat(a), Rat(b)) => Rat(a + b),
        (Fun(a), Fun(b)) => Scalar::from_fun(a.add(b)),
        (Fun(a), Rat(b)) | (Rat(b), Fun(a)) => Scalar::from_fun(a.add(&promote_fun(b))),
        (Quad(a), Quad(b)) => {
            check_r(a, b);
            Scalar::quad(&a.a + &b.a, &a.b + &b.b, a.r.clone())
        }
        (Quad(a), Rat(b)) | (Rat(b), Quad(a)) => Scalar::quad(&a.a + b, a.b.clone(), a.r.clone()),
        _ => panic!("mixing rational-function and quadratic scalars"),
    }
}

fn mul(x: &Scalar, y: &Scalar) -> Scalar {
    use Scalar::*;
    match (x, y) {
        (Rat(a), Rat(b)) => Rat(a * b),
        (Fun(a), Fun(b)) => Scalar::from_fun(a.mul(b)),
        (Fun(a), Rat(b)) | (Rat(b), Fun(a)) => {
            if b.is_zero() {
                Scalar::zero()
            } else {
                Scalar::from_fun(RatFun { num: a.num.scale(b), den: a.den.clone() })
            }
        }
        (Quad(a), Quad(b)) => {
            check_r(a, b);
            Scalar::quad(
                &a.a * &b.a + &a.b * &b.b * &a.r,
                &a.a * &b.b + &a.b * &b.a,
                a.r.clone(),
            )
        }
        (Quad(a), Rat(b)) | (Rat(b), Quad(a)) => Scalar::quad(&a.a * b, &a.b * b, a.r.clone()),
        _ => panic!("mixing rational-function and quadratic scalars"),
    }
}

fn neg(x: &Scalar) -> Scalar {
    match x {
        Scalar::Rat(a) => Scalar::Rat(-a),
        Scalar::Fun(f) => Scalar::Fun(RatFun { num: f.num.neg(), den: f.den.clone() }),
        Scalar::Quad(e) => Scalar::Quad(QuadElem { a: -&e.a, b: -&e.b, r: e.r.clone() }),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Mul, mul, mul);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add(a, &neg(b)));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| mul(a, &b.inv().expect("division by zero scalar")));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add(self, rhs);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = add(self, &rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add(self, &neg(rhs));
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = add(self, &neg(&rhs));
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}
