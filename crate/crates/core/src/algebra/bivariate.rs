//! Bivariate power series truncated by total degree.
//!
//! Used for two-point objects: the Bergman deviation in a local coordinate
//! and the boundary generating functions. Everything of total degree up to
//! `degree` is exact.

use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    degree: usize,
    // rows[i][j] is the coefficient of a^i b^j, i + j <= degree
    rows: Vec<Vec<Scalar>>,
}

impl BiSeries {
    pub fn zero(degree: usize) -> BiSeries {
        let rows = (0..=degree).map(|i| vec![Scalar::zero(); degree - i + 1]).collect();
        BiSeries { degree, rows }
    }

    pub fn one(degree: usize) -> BiSeries {
        let mut s = BiSeries::zero(degree);
        s.rows[0][0] = Scalar::one();
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        if i + j > self.degree {
            panic!("coefficient a^{i} b^{j} beyond total degree {}", self.degree);
        }
        self.rows[i][j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        if i + j <= self.degree {
            self.rows[i][j] = v;
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        if i + j <= self.degree {
            self.rows[i][j] += v;
        }
    }

    /// `f(a) + g(b)` from univariate coefficient lists.
    pub fn separable_sum(f: &[Scalar], g: &[Scalar], degree: usize) -> BiSeries {
        let mut s = BiSeries::zero(degree);
        for (i, c) in f.iter().enumerate().take(degree + 1) {
            s.add_at(i, 0, c);
        }
        for (j, c) in g.iter().enumerate().take(degree + 1) {
            s.add_at(0, j, c);
        }
        s
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        let degree = self.degree.min(o.degree);
        let mut s = BiSeries::zero(degree);
        for i in 0..=degree {
            for j in 0..=degree - i {
                s.rows[i][j] = &self.rows[i][j] + &o.rows[i][j];
            }
        }
        s
    }

    pub fn scale(&self, c: &Scalar) -> BiSeries {
        BiSeries {
            degree: self.degree,
            rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &BiSeries) -> BiSeries {
        let degree = self.degree.min(o.degree);
        let mut s = BiSeries::zero(degree);
        for i1 in 0..=degree {
            for j1 in 0..=degree - i1 {
                let a = &self.rows[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=degree - i1 - j1 {
                    for j2 in 0..=degree - i1 - j1 - i2 {
                        let b = &o.rows[i2][j2];
                        if !b.is_zero() {
                            s.rows[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        s
    }

    /// Inverse of a series with invertible constant term.
    pub fn inv(&self) -> Option<BiSeries> {
        let c_inv = self.rows[0][0].inv()?;
        let d = self.degree;
        let mut out = BiSeries::zero(d);
        out.rows[0][0] = c_inv.clone();
        for total in 1..=d {
            for i in 0..=total {
                let j = total - i;
                let mut acc = Scalar::zero();
                for p in 0..=i {
                    for q in 0..=j {
                        if p + q == 0 {
                            continue;
                        }
                        let a = &self.rows[p][q];
                        if !a.is_zero() {
                            acc -= a * &out.rows[i - p][j - q];
                        }
                    }
                }
                out.rows[i][j] = acc * &c_inv;
            }
        }
        Some(out)
    }

    /// `exp(self)` for a series with zero constant term, via the total-degree
    /// Euler operator: `D exp(f) = D(f) exp(f)`.
    pub fn exp(&self) -> BiSeries {
        assert!(self.rows[0][0].is_zero(), "exp of a bivariate series with a constant term");
        let d = self.degree;
        let mut out = BiSeries::one(d);
        for total in 1..=d {
            for i in 0..=total {
                let j = total - i;
                let mut acc = Scalar::zero();
                for p in 0..=i {
                    for q in 0..=j {
                        let k = p + q;
                        if k == 0 {
                            continue;
                        }
                        let a = &self.rows[p][q];
                        if !a.is_zero() {
                            acc += Scalar::int(k as i64) * a * &out.rows[i - p][j - q];
                        }
                    }
                }
                out.rows[i][j] = acc * Scalar::frac(1, total as i64);
            }
        }
        out
    }

    /// `d/da`; the result has total degree `degree - 1`.
    pub fn da(&self) -> BiSeries {
        assert!(self.degree >= 1);
        let d = self.degree - 1;
        let mut out = BiSeries::zero(d);
        for i in 0..=d {
            for j in 0..=d - i {
                out.rows[i][j] = Scalar::int((i + 1) as i64) * &self.rows[i + 1][j];
            }
        }
        out
    }

    /// `d/db`; the result has total degree `degree - 1`.
    pub fn db(&self) -> BiSeries {
        assert!(self.degree >= 1);
        let d = self.degree - 1;
        let mut out = BiSeries::zero(d);
        for i in 0..=d {
            for j in 0..=d - i {
                out.rows[i][j] = Scalar::int((j + 1) as i64) * &self.rows[i][j + 1];
            }
        }
        out
    }

    /// `d/da d/db` of the series; the result has total degree `degree - 2`.
    pub fn mixed_derivative(&self) -> BiSeries {
        assert!(self.degree >= 2);
        let d = self.degree - 2;
        let mut out = BiSeries::zero(d);
        for i in 0..=d {
            for j in 0..=d - i {
                out.rows[i][j] = Scalar::int(((i + 1) * (j + 1)) as i64) * &self.rows[i + 1][j + 1];
            }
        }
        out
    }

    /// Exact quotient by `(a + b)`, or `None` if `(a + b)` does not divide
    /// the series (checked on every homogeneous component up to `degree`).
    /// The quotient has total degree `degree - 1`.
    pub fn div_by_sum(&self) -> Option<BiSeries> {
        assert!(self.degree >= 1);
        let d = self.degree - 1;
        let mut out = BiSeries::zero(d);
        if !self.rows[0][0].is_zero() {
            return None;
        }
        for total in 1..=self.degree {
            // homogeneous part p(a,b) = (a+b) h(a,b); solve from a^total down
            let mut h = vec![Scalar::zero(); total];
            // coefficient of a^{total-k} b^{k} in (a+b)h: h_{k} + h_{k-1}
            // where h_k multiplies a^{total-1-k} b^{k}
            for k in 0..total {
                let target = &self.rows[total - k][k];
                h[k] = if k == 0 { target.clone() } else { target - &h[k - 1] };
            }
            if self.rows[0][total] != h[total - 1] {
                return None;
            }
            for (k, v) in h.into_iter().enumerate() {
                out.rows[total - 1 - k][k] = v;
            }
        }
        Some(out)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..=self.degree).all(|i| (0..=self.degree - i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let mut s = BiSeries::one(6);
        s.set(1, 0, Scalar::int(2));
        s.set(0, 1, Scalar::frac(1, 3));
        s.set(1, 1, Scalar::int(-5));
        let p = s.mul(&s.inv().unwrap());
        assert_eq!(p, BiSeries::one(6));
    }

    #[test]
    fn exact_division_by_sum() {
        // a^3 + b^3 = (a + b)(a^2 - ab + b^2)
        let s = BiSeries::separable_sum(&[Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()], &[Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()], 5);
        let q = s.div_by_sum().unwrap();
        assert_eq!(q.get(2, 0), Scalar::one());
        assert_eq!(q.get(1, 1), Scalar::int(-1));
        assert_eq!(q.get(0, 2), Scalar::one());
        // a^2 + b^2 is not divisible
        let t = BiSeries::separable_sum(&[Scalar::zero(), Scalar::zero(), Scalar::one()], &[Scalar::zero(), Scalar::zero(), Scalar::one()], 5);
        assert!(t.div_by_sum().is_none());
    }

    #[test]
    fn exp_of_separable_sum_factorizes() {
        let f = [Scalar::zero(), Scalar::int(1), Scalar::frac(1, 2)];
        let s = BiSeries::separable_sum(&f, &f, 5).exp();
        // exp(f(a)) exp(f(b)) has a^1 b^1 coefficient 1
        assert_eq!(s.get(1, 1), Scalar::one());
        assert!(s.is_symmetric());
    }
}
