use rand::Rng;

use super::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Prime field F_p with p < 2^31; products are reduced with a Barrett
/// constant so hot loops avoid hardware division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    m: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!(p >= 3 && p < (1 << 31), "prime must lie in [3, 2^31)");
        let p = p as u64;
        // floor(2^64 / p)
        let m = (u128::from(u64::MAX) + 1).div_euclid(p as u128) as u64;
        PrimeField { p, m }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    /// Reduces x < 2^63.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r as u32
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p {
            (s - self.p) as u32
        } else {
            s as u32
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p - b as u64) as u32
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - a as u64) as u32
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn from_bigint(&self, x: &BigInt) -> u32 {
        x.mod_floor(&BigInt::from(self.p)).to_u32().unwrap()
    }

    /// Image of a rational, or `None` when p divides the denominator.
    pub fn from_scalar(&self, s: &Scalar) -> Option<u32> {
        let d = self.from_bigint(s.denom());
        if d == 0 {
            return None;
        }
        let n = self.from_bigint(s.numer());
        Some(self.mul(n, self.inv(d)))
    }

    /// Symmetric lift to (-p/2, p/2].
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        if a > (self.p as i64) / 2 {
            a - self.p as i64
        } else {
            a
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes drawn uniformly from [2^30, 2^31).
pub fn random_primes<R: Rng>(rng: &mut R, count: usize) -> Vec<PrimeField> {
    let mut out: Vec<PrimeField> = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range((1u32 << 30)..(1u32 << 31)) | 1;
        if is_prime_u64(c as u64) && out.iter().all(|f| f.p() != c) {
            out.push(PrimeField::new(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn barrett_matches_remainder() {
        let f = PrimeField::new(2147483629);
        let mut x: u64 = 0x1234_5678_9abc;
        for _ in 0..10000 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (x >> 33) as u32 % f.p();
            let b = (x >> 7) as u32 % f.p();
            assert_eq!(f.mul(a, b) as u64, (a as u64 * b as u64) % f.p() as u64);
        }
    }

    #[test]
    fn inverse_and_primes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let ps = random_primes(&mut rng, 3);
        for f in ps {
            assert!(is_prime_u64(f.p() as u64));
            assert!(f.p() >= 1 << 30);
            for a in [1u32, 2, 12345, f.p() - 1] {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
        assert!(!is_prime_u64(2147483647 * 3));
        assert!(is_prime_u64(2147483647));
    }
}
