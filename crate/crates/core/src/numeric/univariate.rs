use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::scalar::{int, scalar_to_string, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial in t, coefficients from degree 0 upward.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// (1 + a·t)
    pub fn linear(a: i64) -> Self {
        Self::from_ints(&[1, a])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.c.iter().rev().fold(Scalar::zero(), |acc, a| acc * t + a)
    }

    /// Coefficients as integers; `None` if some coefficient is fractional.
    pub fn int_coeffs(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.c
            .iter()
            .map(|x| if x.denom().is_one() { x.numer().to_i64() } else { None })
            .collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    /// `1 + 6t + 6t^2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Scalar::zero();
            let abs = if neg { -a.clone() } else { a.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if abs.is_one() && k > 0 { String::new() } else { scalar_to_string(&abs) };
            match k {
                0 => write!(f, "{}", coef)?,
                1 => write!(f, "{}t", coef)?,
                _ => write!(f, "{}t^{}", coef, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// num(t)/den(t) with den(0) ≠ 0, so the function has a Taylor expansion at 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniRationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl UniRationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::NotExpandable);
        }
        Ok(UniRationalFunction { num, den })
    }

    /// num / (1 - t)^k
    pub fn over_one_minus_t_pow(num: UniPoly, k: u32) -> Self {
        Self::new(num, UniPoly::from_ints(&[1, -1]).pow(k)).expect("(1-t)^k is expandable")
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn expand(&self, d: usize) -> Vec<Scalar> {
        let c0_inv = self.den.coeff(0).recip();
        let mut out: Vec<Scalar> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut s = self.num.coeff(k);
            for i in 1..=k.min(self.den.c.len().saturating_sub(1)) {
                s -= &self.den.c[i] * &out[k - i];
            }
            out.push(s * &c0_inv);
        }
        out
    }
}

impl fmt::Display for UniRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Taylor coefficients c_0..c_D of f at t = 0.
pub fn series_expand(f: &UniRationalFunction, d: usize) -> Result<Vec<Scalar>> {
    if f.den.coeff(0).is_zero() {
        return Err(Error::NotExpandable);
    }
    Ok(f.expand(d))
}
