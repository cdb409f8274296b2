use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{scalar_to_string, Scalar};
use super::{Mono, MultiPoly};

/// Laurent polynomial in t_1..t_n with integer exponents.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exps: Vec<i32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Multiplies by the monomial t^shift.
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.n])
    }

    /// Value at t = (1, …, 1).
    pub fn augmentation(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |a, c| a + c)
    }

    /// Substitutes t_i = 1 + x_i; requires non-negative exponents.
    pub fn substitute_one_plus_x(&self) -> Option<MultiPoly> {
        let n = self.n;
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().any(|&a| a < 0) {
                return None;
            }
            // product of binomial expansions
            let mut acc: Vec<(Mono, Scalar)> = vec![(Mono::one(), c.clone())];
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut next = Vec::new();
                let mut binom = BigInt::one();
                for k in 0..=a as u32 {
                    if k > 0 {
                        binom = binom * BigInt::from(a as u32 - k + 1) / BigInt::from(k);
                    }
                    for (m, c0) in &acc {
                        let mut m2 = *m;
                        m2.set_exp(i, k);
                        next.push((m2, c0 * Scalar::from_integer(binom.clone())));
                    }
                }
                acc = next;
            }
            out.extend(acc);
        }
        Some(MultiPoly::from_terms(n, out))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, &a)| if a == 1 { names[i].clone() } else { format!("{}^{}", names[i], a) })
                    .collect();
                if mono.is_empty() {
                    scalar_to_string(c)
                } else {
                    format!("{}*{}", scalar_to_string(c), mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("t{}", i)).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn substitution_and_shift() {
        // t1^2 * t2^-1
        let p = LaurentPoly::monomial(2, vec![2, -1], int(1));
        assert!(p.substitute_one_plus_x().is_none());
        let q = p.shift(&[0, 1]);
        let s = q.substitute_one_plus_x().unwrap();
        // (1+x1)^2 = 1 + 2x1 + x1^2
        assert_eq!(s.len(), 3);
        assert_eq!(s.eval(&[int(1), int(7)]), int(4));
        assert_eq!(p.min_exponents(), vec![2, -1]);
        assert_eq!(p.add(&p).sub(&p), p);
    }
}
