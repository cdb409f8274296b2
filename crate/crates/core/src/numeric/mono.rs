use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of polynomial variables.
pub const MAX_VARS: usize = 16;

/// Dense exponent vector. Ordering is graded reverse lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    e: [u8; MAX_VARS],
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mono::default();
        m.e[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Mono::default();
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = u8::try_from(x).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, v: u32) {
        self.e[i] = u8::try_from(v).expect("exponent overflow");
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r
    }

    #[inline]
    pub fn divides(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// self / o, assuming `o` divides `self`.
    #[inline]
    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i] - o.e[i];
        }
        r
    }

    #[inline]
    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(o.e[i]);
        }
        r
    }

    #[inline]
    pub fn gcd_is_one(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.e[i] != 0)
    }

    pub fn cmp_lex(&self, o: &Mono) -> Ordering {
        self.e.cmp(&o.e)
    }

    pub fn cmp_grevlex(&self, o: &Mono) -> Ordering {
        let (a, b) = (self.degree(), o.degree());
        if a != b {
            return a.cmp(&b);
        }
        for i in (0..MAX_VARS).rev() {
            if self.e[i] != o.e[i] {
                return o.e[i].cmp(&self.e[i]);
            }
        }
        Ordering::Equal
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.e[i] {
                0 => {}
                1 => parts.push(name.clone()),
                k => parts.push(format!("{}^{}", name, k)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// All monomials in `n` variables of total degree `d`, in descending
    /// lexicographic order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = Mono::default();
        fn rec(i: usize, n: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
            if i + 1 == n {
                cur.e[i] = left as u8;
                out.push(*cur);
                cur.e[i] = 0;
                return;
            }
            for k in (0..=left).rev() {
                cur.e[i] = k as u8;
                rec(i + 1, n, left - k, cur, out);
            }
            cur.e[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(cur);
            }
            return out;
        }
        rec(0, n, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_grevlex(o)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.e[i] != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        let z = Mono::var(2);
        assert!(x > y && y > z);
        // x*z < y^2 in grevlex
        assert!(x.mul(&z) < y.mul(&y));
        assert!(x.mul(&x) > x);
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Mono::all_of_degree(3, 2).len(), 6);
        assert_eq!(Mono::all_of_degree(6, 3).len(), 56);
        assert_eq!(Mono::all_of_degree(1, 4).len(), 1);
        assert_eq!(Mono::all_of_degree(0, 0).len(), 1);
    }
}
