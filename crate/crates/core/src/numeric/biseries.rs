use num_traits::{One, Zero};

use super::scalar::{int, Scalar};
use crate::error::{Error, Result};

/// Power series in (u, t) truncated at u^U and t^T; `c[i][j]` is the
/// coefficient of u^i t^j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    u_order: usize,
    t_order: usize,
    c: Vec<Vec<Scalar>>,
}

impl BiSeries {
    pub fn zero(u_order: usize, t_order: usize) -> Self {
        BiSeries { u_order, t_order, c: vec![vec![Scalar::zero(); t_order + 1]; u_order + 1] }
    }

    pub fn one(u_order: usize, t_order: usize) -> Self {
        let mut s = Self::zero(u_order, t_order);
        s.c[0][0] = Scalar::one();
        s
    }

    /// Builds Σ_{i,j} f(i,j) u^i t^j within the truncation.
    pub fn from_fn(u_order: usize, t_order: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut s = Self::zero(u_order, t_order);
        for i in 0..=u_order {
            for j in 0..=t_order {
                s.c[i][j] = f(i, j);
            }
        }
        s
    }

    pub fn u_order(&self) -> usize {
        self.u_order
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.c[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.c[i][j] = v;
    }

    /// Coefficient of u^i as a polynomial in t.
    pub fn u_coefficient(&self, i: usize) -> Vec<Scalar> {
        self.c[i].clone()
    }

    fn same_shape(&self, o: &BiSeries) {
        assert!(self.u_order == o.u_order && self.t_order == o.t_order, "truncation mismatch");
    }

    pub fn add(&self, o: &BiSeries) -> BiSeries {
        self.same_shape(o);
        Self::from_fn(self.u_order, self.t_order, |i, j| &self.c[i][j] + &o.c[i][j])
    }

    pub fn scale(&self, a: &Scalar) -> BiSeries {
        Self::from_fn(self.u_order, self.t_order, |i, j| &self.c[i][j] * a)
    }

    pub fn mul(&self, o: &BiSeries) -> BiSeries {
        self.same_shape(o);
        let mut r = Self::zero(self.u_order, self.t_order);
        for i1 in 0..=self.u_order {
            for j1 in 0..=self.t_order {
                let a = &self.c[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=self.u_order - i1 {
                    for j2 in 0..=self.t_order - j1 {
                        let b = &o.c[i2][j2];
                        if !b.is_zero() {
                            r.c[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        r
    }

    /// exp(g) = Σ g^k/k!; g must have zero constant term. Since g ∈ (u, t),
    /// g^k vanishes once k exceeds U + T.
    pub fn exp(&self) -> Result<BiSeries> {
        if !self.c[0][0].is_zero() {
            return Err(Error::ExpUndefined);
        }
        let mut result = Self::one(self.u_order, self.t_order);
        let mut term = Self::one(self.u_order, self.t_order);
        for k in 1..=(self.u_order + self.t_order) {
            term = term.mul(self).scale(&int(k as i64).recip());
            result = result.add(&term);
        }
        Ok(result)
    }
}

/// Truncated exponential of a bivariate series.
pub fn truncated_exp(g: &BiSeries) -> Result<BiSeries> {
    g.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn exp_of_u() {
        let g = BiSeries::from_fn(3, 0, |i, _| if i == 1 { int(1) } else { int(0) });
        let e = g.exp().unwrap();
        assert_eq!(e.get(0, 0), &int(1));
        assert_eq!(e.get(1, 0), &int(1));
        assert_eq!(e.get(2, 0), &rat(1, 2));
        assert_eq!(e.get(3, 0), &rat(1, 6));
    }

    #[test]
    fn constant_term_rejected() {
        let g = BiSeries::one(2, 2);
        assert_eq!(g.exp().unwrap_err(), Error::ExpUndefined);
    }
}
