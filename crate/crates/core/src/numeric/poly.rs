use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{scalar_to_string, Scalar};
use super::Mono;

/// Multivariate polynomial with rational coefficients. Terms are kept in
/// strictly descending grevlex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: Vec<(Mono, Scalar)>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n <= super::MAX_VARS);
        MultiPoly { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(n, Mono::one(), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn monomial(n: usize, m: Mono, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::monomial(n, Mono::var(i), Scalar::one())
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut acc: HashMap<Mono, Scalar> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: HashMap<Mono, Scalar>) -> Self {
        let mut terms: Vec<(Mono, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { n, terms }
    }

    /// Linear form Σ c_i x_i.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Mono::var(i), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Mono, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn leading(&self) -> Option<&(Mono, Scalar)> {
        self.terms.first()
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    /// Drops all terms of total degree > d.
    pub fn truncate(&self, d: u32) -> Self {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).cloned().collect(),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Mono::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let k = m.exp(i);
            let mut m2 = *m;
            m2.set_exp(i, k - 1);
            (m2, c * Scalar::from_integer(k.into()))
        });
        Self::from_terms(self.n, terms)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n);
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in m.support() {
                v *= num_traits::pow(point[i].clone(), m.exp(i) as usize);
            }
            total += v;
        }
        total
    }

    /// Substitutes x_i := images[i]; all images share one ring.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.n);
        let m = images.first().map_or(0, |p| p.n);
        let mut out = Self::zero(m);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![Self::one(m), p.clone()]).collect();
        for (mono, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for i in mono.support() {
                let e = mono.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        out
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Self {
        let (dm, dc) = d.leading().expect("division by zero polynomial").clone();
        let mut rem = self.clone();
        let mut q: Vec<(Mono, Scalar)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            assert!(dm.divides(&m), "inexact polynomial division");
            let qm = m.div(&dm);
            let qc = &c / &dc;
            rem = &rem - &d.mul_mono(&qm).scale(&qc);
            q.push((qm, qc));
        }
        Self::from_terms(self.n, q)
    }

    /// Embeds into a ring with more variables (new ones unused).
    pub fn extend_vars(&self, n: usize) -> Self {
        assert!(n >= self.n && n <= super::MAX_VARS);
        MultiPoly { n, terms: self.terms.clone() }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(names);
            if mono == "1" {
                s.push_str(&scalar_to_string(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", scalar_to_string(&a), mono));
            }
        }
        s
    }

    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{}", i)).collect()
    }
}

fn merge(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    assert_eq!(a.n, b.n, "variable count mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = if i == a.terms.len() {
            std::cmp::Ordering::Less
        } else if j == b.terms.len() {
            std::cmp::Ordering::Greater
        } else {
            a.terms[i].0.cmp(&b.terms[j].0)
        };
        match ord {
            std::cmp::Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -b.terms[j].1.clone() } else { b.terms[j].1.clone() };
                out.push((b.terms[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    MultiPoly { n: a.n, terms: out }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        merge(self, o, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        merge(self, o, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, o.n, "variable count mismatch");
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero(self.n);
        }
        let mut acc: HashMap<Mono, Scalar> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Scalar::zero) += c1 * c2;
            }
        }
        MultiPoly::from_map(self.n, acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&MultiPoly::default_names(self.n)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&MultiPoly::default_names(self.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn ring_ops() {
        let p = &x(0) + &x(1);
        let q = &x(0) - &x(1);
        let pq = &p * &q;
        let expect = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(pq, expect);
        assert!((&p - &p).is_zero());
        assert_eq!(p.pow(2).len(), 3);
        assert_eq!(pq.div_exact(&p), q);
    }

    #[test]
    fn eval_derivative_compose() {
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(p.eval(&[int(2), int(3), int(5)]), int(12));
        assert_eq!(p.derivative(0), (&x(0) * &x(1)).scale(&int(2)));
        let sub = p.compose(&[&x(1) + &MultiPoly::one(3), x(1), x(2)]);
        assert_eq!(sub.eval(&[int(0), int(2), int(0)]), int(18));
    }

    #[test]
    fn display() {
        let p = &(&x(0) * &x(1)).scale(&int(-2)) + &MultiPoly::one(3);
        assert_eq!(p.to_string(), "-2*x1*x2 + 1");
    }
}
