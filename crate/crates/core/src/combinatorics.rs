//! Stirling and Lah numbers, the Möbius function, Witt's formula and three
//! independent extractions of lower central series ranks from a Poincaré
//! polynomial f(t) = 1 + b₁t + … + b_n tⁿ with Hilb(U, −t)·f(t) = 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    Stirling1,
    Stirling2,
    Lah,
}

/// LCS ranks φ_1..φ_K of a group or family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTable {
    pub label: String,
    pub ranks: Vec<(usize, i64)>,
}

impl RankTable {
    pub fn new(label: impl Into<String>, values: Vec<i64>) -> Self {
        RankTable { label: label.into(), ranks: values.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect() }
    }

    pub fn values(&self) -> Vec<i64> {
        self.ranks.iter().map(|&(_, v)| v).collect()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Generalized binomial C(a, k) for any integer a.
fn binomial_signed(a: &BigInt, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (a - BigInt::from(i)) / BigInt::from(i + 1);
    }
    r
}

/// c(n,k), S(n,k) or L(n,k) from the standard recurrences.
pub fn special_number(kind: SpecialKind, n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n {
        return invalid(format!("special number needs 0 <= k <= n, got n={}, k={}", n, k));
    }
    let (n, k) = (n as usize, k as usize);
    // row-by-row table
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let left = &row[j - 1];
            let keep = if j < m { row[j].clone() } else { BigInt::zero() };
            next[j] = match kind {
                // c(m,j) = c(m-1,j-1) + (m-1) c(m-1,j)
                SpecialKind::Stirling1 => left + BigInt::from(m - 1) * keep,
                // S(m,j) = S(m-1,j-1) + j S(m-1,j)
                SpecialKind::Stirling2 => left + BigInt::from(j) * keep,
                // L(m,j) = L(m-1,j-1) + (m-1+j) L(m-1,j)
                SpecialKind::Lah => left + BigInt::from(m - 1 + j) * keep,
            };
        }
        row = next;
    }
    Ok(row[k].clone())
}

/// L(n, n−i) = C(n−1, i)·n!/(n−i)!, valid for n ≥ 1.
pub fn lah_closed(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return invalid("lah needs k <= n");
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if k == 0 {
        return Ok(BigInt::zero());
    }
    let i = n - k;
    Ok(binomial(n - 1, i) * factorial(n) / factorial(n - i))
}

/// S(n, k) = (1/k!) Σ_j (−1)^j C(k, j) (k − j)^n.
pub fn stirling2_explicit(n: u64, k: u64) -> BigInt {
    let mut s = BigInt::zero();
    for j in 0..=k {
        let t = binomial(k, j) * num_traits::pow(BigInt::from(k - j), n as usize);
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s / factorial(k)
}

pub fn bell(n: u64) -> BigInt {
    (0..=n as i64).map(|k| special_number(SpecialKind::Stirling2, n as i64, k).unwrap()).sum()
}

pub fn mobius(n: i64) -> Result<i64> {
    if n < 1 {
        return invalid(format!("mobius needs n >= 1, got {}", n));
    }
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    Ok(result)
}

fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k % d == 0).collect()
}

/// (1/k) Σ_{d|k} μ(k/d) n^d: the number of degree-k Hall elements on n letters.
pub fn witt(n: u64, k: u64) -> i64 {
    assert!(n >= 1 && k >= 1);
    let mut s = BigInt::zero();
    for d in divisors(k as usize) {
        s += BigInt::from(mobius((k as usize / d) as i64).unwrap()) * num_traits::pow(BigInt::from(n), d);
    }
    (s / BigInt::from(k)).to_i64().expect("witt value overflows i64")
}

/// Coefficients of f(−t) = 1 − b₁t + b₂t² − …
fn f_minus_t(b: &[i64]) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for (i, &bi) in b.iter().enumerate() {
        let s = if (i + 1) % 2 == 1 { -bi } else { bi };
        c.push(BigInt::from(s));
    }
    c
}

/// Coefficients 0..=K of Hilb(U, t) = 1/f(−t).
pub fn hilb_u_series(b: &[i64], k_max: usize) -> Vec<BigInt> {
    let g = f_minus_t(b);
    let mut h = vec![BigInt::zero(); k_max + 1];
    h[0] = BigInt::one();
    for k in 1..=k_max {
        let mut s = BigInt::zero();
        for i in 1..=k.min(g.len() - 1) {
            s += &g[i] * &h[k - i];
        }
        h[k] = -s;
    }
    h
}

fn to_table(label: &str, vals: Vec<BigInt>) -> Result<RankTable> {
    let v: Option<Vec<i64>> = vals.iter().map(|x| x.to_i64()).collect();
    match v {
        Some(v) => Ok(RankTable::new(label, v)),
        None => Err(Error::Budget("rank exceeds 64-bit range".into())),
    }
}

/// Partitions of d into parts ≤ n as multiplicity vectors m_1..m_n.
fn partitions_multiplicities(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut m = vec![0usize; n];
    fn rec(part: usize, left: usize, m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(m.clone());
            return;
        }
        if part == 0 {
            return;
        }
        for c in (0..=left / part).rev() {
            m[part - 1] = c;
            rec(part - 1, left - c * part, m, out);
        }
        m[part - 1] = 0;
    }
    if n > 0 {
        rec(n, d, &mut m, &mut out);
    }
    out
}

/// Möbius/multinomial formula:
/// φ_k = (1/k) Σ_{d|k} μ(k/d) Σ_{Σ j·m_j = d} (−1)^{Σ m_{2i}} d·m!·∏ b_j^{m_j}/m_j!,
/// with m = Σ m_j − 1.
pub fn lcs_ranks_mobius(b: &[i64], k_max: usize) -> Result<RankTable> {
    let n = b.len();
    let mut inner: Vec<BigRational> = vec![BigRational::zero(); k_max + 1];
    for d in 1..=k_max {
        let mut s = BigRational::zero();
        for m in partitions_multiplicities(d, n) {
            let total: usize = m.iter().sum();
            let even: usize = m.iter().enumerate().filter(|(j, _)| (j + 1) % 2 == 0).map(|(_, &c)| c).sum();
            let mut term = BigRational::from_integer(BigInt::from(d) * factorial(total as u64 - 1));
            for (j, &mj) in m.iter().enumerate() {
                term *= BigRational::new(num_traits::pow(BigInt::from(b[j]), mj), factorial(mj as u64));
            }
            if even % 2 == 1 {
                term = -term;
            }
            s += term;
        }
        inner[d] = s;
    }
    let mut vals = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut s = BigRational::zero();
        for d in divisors(k) {
            s += BigRational::from_integer(BigInt::from(mobius((k / d) as i64)?)) * &inner[d];
        }
        s /= BigRational::from_integer(BigInt::from(k));
        if !s.is_integer() {
            return invalid(format!("non-integral rank in degree {}", k));
        }
        vals.push(s.to_integer());
    }
    to_table("mobius", vals)
}

/// PBW extraction: expand 1/f(−t) and strip the factors (1 − t^k)^{−φ_k}
/// degree by degree.
pub fn lcs_ranks_pbw(b: &[i64], k_max: usize) -> Result<RankTable> {
    let mut cur = hilb_u_series(b, k_max);
    let mut vals = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let phi = cur[k].clone();
        if phi.is_negative() {
            return Err(Error::NotPbw { degree: k, value: phi.to_string() });
        }
        // multiply by (1 − t^k)^φ
        let mut next = vec![BigInt::zero(); k_max + 1];
        for (i, ci) in cur.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let mut j = 0u64;
            while i + k * j as usize <= k_max {
                let c = binomial_signed(&phi, j);
                let c = if j % 2 == 1 { -c } else { c };
                next[i + k * j as usize] += ci * c;
                j += 1;
            }
        }
        cur = next;
        vals.push(phi);
    }
    to_table("pbw", vals)
}

/// Power sums of the inverse roots of f(−t), from Newton's identities:
/// f(−t) = ∏(1 − w_i t) so e_j(w) = (−1)^j·[t^j]f(−t).
pub fn inverse_root_power_sums(b: &[i64], d_max: usize) -> Vec<BigInt> {
    let g = f_minus_t(b);
    let e: Vec<BigInt> = (0..=d_max)
        .map(|j| {
            if j < g.len() {
                if j % 2 == 1 {
                    -g[j].clone()
                } else {
                    g[j].clone()
                }
            } else {
                BigInt::zero()
            }
        })
        .collect();
    let mut p = vec![BigInt::zero(); d_max + 1];
    for d in 1..=d_max {
        let mut s = BigInt::zero();
        for j in 1..d {
            let t = &e[j] * &p[d - j];
            if (j - 1) % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
        }
        let t = BigInt::from(d) * &e[d];
        if (d - 1) % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
        p[d] = s;
    }
    p
}

/// Power-sum formula φ_k = (1/k) Σ_{d|k} μ(k/d) Σ_i z_i^{−d}, with the power
/// sums computed exactly.
pub fn lcs_ranks_powersum(b: &[i64], k_max: usize) -> Result<RankTable> {
    let p = inverse_root_power_sums(b, k_max);
    let mut vals = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut s = BigInt::zero();
        for d in divisors(k) {
            s += BigInt::from(mobius((k / d) as i64)?) * &p[d];
        }
        if (&s % BigInt::from(k)) != BigInt::zero() {
            return invalid(format!("non-integral rank in degree {}", k));
        }
        vals.push(s / BigInt::from(k));
    }
    to_table("powersum", vals)
}

/// Σ_{s=1}^{n−1} witt(s, k): LCS ranks of the pure braid group P_n.
pub fn pure_braid_lcs(n: u64, k: u64) -> i64 {
    (1..n).map(|s| witt(s, k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // Brute-force oracles.

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn cycles(p: &[usize]) -> usize {
        let mut seen = vec![false; p.len()];
        let mut c = 0;
        for i in 0..p.len() {
            if !seen[i] {
                c += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = p[j];
                }
            }
        }
        c
    }

    /// Set partitions as block-label vectors in restricted growth form.
    fn set_partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(i: usize, n: usize, maxb: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for b in 0..=maxb {
                cur.push(b);
                rec(i + 1, n, if b == maxb { maxb + 1 } else { maxb }, cur, out);
                cur.pop();
            }
        }
        rec(0, n, 0, &mut Vec::new(), &mut out);
        out
    }

    fn blocks(p: &[usize]) -> usize {
        p.iter().collect::<HashSet<_>>().len()
    }

    /// Ordered set partitions of {1..n} into k blocks, each block linearly ordered
    /// (Lah count): partitions into k blocks times the internal orderings.
    fn lah_brute(n: usize, k: usize) -> u64 {
        set_partitions(n)
            .iter()
            .filter(|p| blocks(p) == k)
            .map(|p| {
                let mut sizes = vec![0u64; k];
                for &b in p {
                    sizes[b] += 1;
                }
                sizes.iter().map(|&s| (1..=s).product::<u64>()).product::<u64>()
            })
            .sum()
    }

    #[test]
    fn special_numbers_against_enumeration() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        let c42 = perms.iter().filter(|p| cycles(p) == 2).count() as i64;
        assert_eq!(c42, 11);
        assert_eq!(special_number(SpecialKind::Stirling1, 4, 2).unwrap(), BigInt::from(c42));
        let s42 = set_partitions(4).iter().filter(|p| blocks(p) == 2).count() as i64;
        assert_eq!(s42, 7);
        assert_eq!(special_number(SpecialKind::Stirling2, 4, 2).unwrap(), BigInt::from(s42));
        assert_eq!(lah_brute(3, 2), 6);
        assert_eq!(special_number(SpecialKind::Lah, 3, 2).unwrap(), BigInt::from(6));
        for n in 1..=7u64 {
            for k in 0..=n {
                let rec = special_number(SpecialKind::Lah, n as i64, k as i64).unwrap();
                assert_eq!(rec, lah_closed(n, k).unwrap());
                if k >= 1 && n <= 6 {
                    assert_eq!(rec, BigInt::from(lah_brute(n as usize, k as usize)));
                }
            }
        }
        assert!(special_number(SpecialKind::Lah, 2, 3).is_err());
        assert!(special_number(SpecialKind::Stirling1, -1, 0).is_err());
    }

    #[test]
    fn row_sums() {
        for n in 0..=10u64 {
            let c: BigInt = (0..=n).map(|k| special_number(SpecialKind::Stirling1, n as i64, k as i64).unwrap()).sum();
            assert_eq!(c, factorial(n));
            let brute_bell = set_partitions(n as usize).len();
            if n <= 8 {
                assert_eq!(bell(n), BigInt::from(brute_bell));
            }
        }
        assert_eq!(bell(10), BigInt::from(115975));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(7).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt(2, 1), 2);
        assert_eq!(witt(2, 3), 2);
        assert_eq!(witt(6, 2), 15);
        assert_eq!(witt(6, 3), 70);
    }

    #[test]
    fn lcs_examples() {
        for f in [lcs_ranks_mobius, lcs_ranks_pbw, lcs_ranks_powersum] {
            assert_eq!(f(&[3, 1], 3).unwrap().values(), vec![3, 2, 5]);
            assert_eq!(f(&[2], 4).unwrap().values(), vec![2, 1, 2, 3]);
            assert_eq!(f(&[1], 3).unwrap().values(), vec![1, 0, 0]);
            assert_eq!(f(&[5], 2).unwrap().values(), vec![5, 10]);
            // P4: φ_k = Σ_{s≤3} witt(s,k)
            assert_eq!(f(&[6, 11, 6], 3).unwrap().values(), vec![6, 4, 10]);
        }
    }

    #[test]
    fn pbw_rejects_non_pbw_series() {
        // 1/(1 - t - t^2)... f(-t) = 1 - t + 2t^2 gives a negative coefficient
        assert!(matches!(lcs_ranks_pbw(&[1, 2], 3), Err(Error::NotPbw { .. })));
    }

    #[test]
    fn pure_braid_relation() {
        // Poin(P_n) = ∏_{k<n}(1+kt)
        for n in 2..=5u64 {
            let mut poly = vec![1i64];
            for k in 1..n as i64 {
                let mut next = vec![0i64; poly.len() + 1];
                for (i, &c) in poly.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c * k;
                }
                poly = next;
            }
            let b: Vec<i64> = poly[1..].to_vec();
            let ranks = lcs_ranks_pbw(&b, 10).unwrap().values();
            for k in 1..=10u64 {
                assert_eq!(ranks[k as usize - 1], pure_braid_lcs(n, k));
            }
        }
    }
}
