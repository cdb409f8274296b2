//! Buchberger's algorithm over ℚ with primitive integer polynomials,
//! Gebauer-Möller pair pruning and the normal selection strategy.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::numeric::{Mono, MultiPoly, Scalar, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// Monomial order: `kind` applied after renaming variable perm[i] to
/// position i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: (0..n).collect() }
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..n).collect() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        if self.perm.len() != n {
            return invalid("order permutation has the wrong length");
        }
        for &p in &self.perm {
            if p >= n || seen[p] {
                return invalid("order permutation is not a bijection");
            }
            seen[p] = true;
        }
        Ok(())
    }

    fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => a.cmp_grevlex(b),
            OrderKind::Lex => a.cmp_lex(b),
        }
    }

    fn permute(&self, m: &Mono) -> Mono {
        let mut r = Mono::one();
        for (i, &p) in self.perm.iter().enumerate() {
            r.set_exp(i, m.exp(p));
        }
        r
    }

    fn unpermute(&self, m: &Mono) -> Mono {
        let mut r = Mono::one();
        for (i, &p) in self.perm.iter().enumerate() {
            r.set_exp(p, m.exp(i));
        }
        r
    }
}

/// Support bit mask of a monomial.
fn mask(m: &Mono) -> u32 {
    let mut b = 0u32;
    for i in 0..MAX_VARS {
        if m.exp(i) > 0 {
            b |= 1 << i;
        }
    }
    b
}

/// Polynomial with integer coefficients, terms in decreasing order.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Mono, BigInt)>,
    mask: u32,
    sugar: u32,
}

impl GPoly {
    fn new(terms: Vec<(Mono, BigInt)>) -> Self {
        let sugar = terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        let mut p = GPoly { terms, mask: 0, sugar };
        p.refresh();
        p
    }

    fn refresh(&mut self) {
        self.mask = self.terms.first().map_or(0, |t| mask(&t.0));
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return;
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
}

/// a·p − b·(t·g), merging in the given order.
fn combine(ord: &MonomialOrder, a: &BigInt, p: &[(Mono, BigInt)], b: &BigInt, t: &Mono, g: &[(Mono, BigInt)]) -> Vec<(Mono, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let scale_p = |c: &BigInt| if a.is_one() { c.clone() } else { a * c };
    while i < p.len() || j < g.len() {
        let gm = (j < g.len()).then(|| g[j].0.mul(t));
        let ord_ij = match (i < p.len(), gm) {
            (true, Some(m)) => ord.cmp(&p[i].0, &m),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord_ij {
            Ordering::Greater => {
                out.push((p[i].0, scale_p(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = scale_p(&p[i].1) - b * &g[j].1;
                if !c.is_zero() {
                    out.push((p[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Engine<'a> {
    ord: &'a MonomialOrder,
    polys: Vec<GPoly>,
}

impl Engine<'_> {
    fn find_reducer(&self, basis: &[usize], m: &Mono) -> Option<usize> {
        let mm = mask(m);
        basis.iter().copied().find(|&k| {
            let g = &self.polys[k];
            g.mask & !mm == 0 && g.lm().divides(m)
        })
    }

    /// Reduces p by the basis; `full` also reduces the tail.
    fn reduce(&self, mut p: GPoly, basis: &[usize], full: bool) -> GPoly {
        let mut done: Vec<(Mono, BigInt)> = Vec::new();
        let mut steps = 0usize;
        let mut rest = std::mem::take(&mut p.terms);
        loop {
            let Some((m, c)) = rest.first().cloned() else { break };
            match self.find_reducer(basis, &m) {
                Some(k) => {
                    let g = &self.polys[k];
                    let t = m.div(g.lm());
                    let lc = g.lc();
                    let d = c.gcd(lc);
                    let a = lc / &d;
                    let b = &c / &d;
                    rest = combine(self.ord, &a, &rest, &b, &t, &g.terms);
                    if !a.is_one() {
                        for (_, x) in done.iter_mut() {
                            *x *= &a;
                        }
                    }
                    p.sugar = p.sugar.max(g.sugar + t.degree());
                    steps += 1;
                    if steps % 16 == 0 {
                        remove_joint_content(&mut done, &mut rest);
                    }
                }
                None => {
                    if !full {
                        done.push(rest.remove(0));
                        done.extend(rest.drain(..));
                        break;
                    }
                    done.push(rest.remove(0));
                }
            }
        }
        p.terms = done;
        p.make_primitive();
        p.refresh();
        p
    }
}

fn remove_joint_content(a: &mut [(Mono, BigInt)], b: &mut [(Mono, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, c) in a.iter_mut().chain(b.iter_mut()) {
        *c = &*c / &g;
    }
}

fn to_gpoly(f: &MultiPoly, ord: &MonomialOrder) -> GPoly {
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.denom());
    }
    let mut terms: Vec<(Mono, BigInt)> = f
        .terms()
        .iter()
        .map(|(m, c)| (ord.permute(m), (c * Scalar::from_integer(den.clone())).to_integer()))
        .collect();
    terms.sort_by(|x, y| ord.cmp(&y.0, &x.0));
    let mut p = GPoly::new(terms);
    p.make_primitive();
    p
}

fn from_gpoly(p: &GPoly, n: usize, ord: &MonomialOrder, monic: bool) -> MultiPoly {
    let lc = Scalar::from_integer(p.lc().clone());
    MultiPoly::from_terms(
        n,
        p.terms.iter().map(|(m, c)| {
            let c = Scalar::from_integer(c.clone());
            (ord.unpermute(m), if monic { c / &lc } else { c })
        }),
    )
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn update(eng: &Engine, basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let ph = &eng.polys[h];
    let lh = *ph.lm();
    let mk = |g: usize| {
        let pg = &eng.polys[g];
        let l = lh.lcm(pg.lm());
        let sugar = (ph.sugar + l.degree() - lh.degree()).max(pg.sugar + l.degree() - pg.lm().degree());
        Pair { i: g, j: h, lcm: l, sugar }
    };
    let mut c: Vec<Pair> = basis.iter().map(|&g| mk(g)).collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = lh.gcd_is_one(eng.polys[p.i].lm());
        if coprime || (!c.iter().any(|q| q.lcm.divides(&p.lcm)) && !d.iter().any(|q| q.lcm.divides(&p.lcm))) {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !lh.gcd_is_one(eng.polys[p.i].lm())).collect();
    pairs.retain(|p| {
        let li = *eng.polys[p.i].lm();
        let lj = *eng.polys[p.j].lm();
        !(lh.divides(&p.lcm) && li.lcm(&lh) != p.lcm && lj.lcm(&lh) != p.lcm)
    });
    pairs.extend(e);
    basis.retain(|&g| !lh.divides(eng.polys[g].lm()));
    basis.push(h);
}

fn spoly(eng: &Engine, p: &Pair) -> GPoly {
    let f = &eng.polys[p.i];
    let g = &eng.polys[p.j];
    let tf = p.lcm.div(f.lm());
    let tg = p.lcm.div(g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    // a·tf·f − b·tg·g
    let ff: Vec<(Mono, BigInt)> = f.terms.iter().map(|(m, c)| (m.mul(&tf), c.clone())).collect();
    let terms = combine(eng.ord, &a, &ff, &b, &tg, &g.terms);
    let mut s = GPoly::new(terms);
    s.sugar = p.sugar;
    s
}

/// Reduced Gröbner basis (monic, sorted by leading monomial ascending).
pub fn buchberger(gens: &[MultiPoly], nvars: usize, ord: &MonomialOrder) -> Result<Vec<MultiPoly>> {
    ord.validate(nvars)?;
    if nvars > MAX_VARS {
        return invalid("too many variables");
    }
    let mut eng = Engine { ord, polys: Vec::new() };
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<GPoly> = gens.iter().filter(|f| !f.is_zero()).map(|f| to_gpoly(f, ord)).collect();
    inputs.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for f in inputs {
        let r = eng.reduce(f, &basis, false);
        if r.is_zero() {
            continue;
        }
        eng.polys.push(r);
        let h = eng.polys.len() - 1;
        update(&eng, &mut basis, &mut pairs, h);
    }
    while !pairs.is_empty() {
        // normal strategy, sugar as tie-break
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm).then(a.sugar.cmp(&b.sugar)))
            .expect("nonempty");
        let p = pairs.swap_remove(k);
        let s = spoly(&eng, &p);
        let r = eng.reduce(s, &basis, false);
        if r.is_zero() {
            continue;
        }
        if r.lm().degree() == 0 {
            return Ok(vec![MultiPoly::one(nvars)]);
        }
        eng.polys.push(r);
        let h = eng.polys.len() - 1;
        update(&eng, &mut basis, &mut pairs, h);
    }
    // minimal, then interreduced
    basis.sort_by(|&a, &b| ord.cmp(eng.polys[a].lm(), eng.polys[b].lm()));
    let mut minimal: Vec<usize> = Vec::new();
    for &g in &basis {
        if !minimal.iter().any(|&h| eng.polys[h].lm().divides(eng.polys[g].lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (k, &g) in minimal.iter().enumerate() {
        let others: Vec<usize> = minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &h)| h).collect();
        let p = &eng.polys[g];
        let (mult, tail) = tail_scale(&eng, p, &others);
        let mut terms = vec![(p.terms[0].0, &p.terms[0].1 * &mult)];
        terms.extend(tail.terms);
        let mut q = GPoly::new(terms);
        q.make_primitive();
        out.push(from_gpoly(&q, nvars, ord, true));
    }
    Ok(out)
}

/// Fully reduces the tail of p modulo `others` keeping p's lead:
/// returns (multiplier for the lead, reduced tail) with p ≡ mult·lead + tail.
fn tail_scale(eng: &Engine, p: &GPoly, others: &[usize]) -> (BigInt, GPoly) {
    // reduce the whole polynomial but never touch the lead term
    let mut head_mult = BigInt::one();
    let mut rest: Vec<(Mono, BigInt)> = p.terms[1..].to_vec();
    let mut done: Vec<(Mono, BigInt)> = Vec::new();
    while let Some((m, c)) = rest.first().cloned() {
        match eng.find_reducer(others, &m) {
            Some(k) => {
                let g = &eng.polys[k];
                let t = m.div(g.lm());
                let d = c.gcd(g.lc());
                let a = g.lc() / &d;
                let b = &c / &d;
                rest = combine(eng.ord, &a, &rest, &b, &t, &g.terms);
                if !a.is_one() {
                    head_mult *= &a;
                    for (_, x) in done.iter_mut() {
                        *x *= &a;
                    }
                }
            }
            None => done.push(rest.remove(0)),
        }
    }
    (head_mult, GPoly { terms: done, mask: 0, sugar: 0 })
}

/// Normal form of f modulo a Gröbner basis (up to a nonzero scalar).
fn normal_form(f: &MultiPoly, gb: &[MultiPoly], ord: &MonomialOrder) -> GPoly {
    let mut eng = Engine { ord, polys: gb.iter().map(|g| to_gpoly(g, ord)).collect() };
    let idx: Vec<usize> = (0..eng.polys.len()).collect();
    let r = eng.reduce(to_gpoly(f, ord), &idx, true);
    eng.polys.clear();
    r
}

/// Polynomial ideal with a lazily computed grevlex Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<MultiPoly>,
    gb: OnceLock<Vec<MultiPoly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { nvars: self.nvars, gens: self.gens.clone(), gb }
    }
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Self {
        Ideal { nvars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect(), gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced grevlex Gröbner basis (cached).
    pub fn groebner_basis(&self) -> Result<&[MultiPoly]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(&self.gens, self.nvars, &MonomialOrder::grevlex(self.nvars))?;
        Ok(self.gb.get_or_init(|| g))
    }

    pub fn contains_one(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.degree() == Some(0)))
    }
}

pub fn ideal_membership(f: &MultiPoly, i: &Ideal) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let gb = i.groebner_basis()?;
    Ok(normal_form(f, gb, &MonomialOrder::grevlex(i.nvars)).is_zero())
}

/// Powers tried before the Rabinowitsch test.
const RADICAL_POWERS: u32 = 4;

/// f ∈ √I: first tries fᵏ ∈ I for small k, then 1 ∈ I + ⟨1 − y·f⟩.
pub fn radical_membership(f: &MultiPoly, i: &Ideal) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let gb = i.groebner_basis()?;
    let ord = MonomialOrder::grevlex(i.nvars);
    let mut p = f.clone();
    for _ in 0..RADICAL_POWERS {
        if normal_form(&p, gb, &ord).is_zero() {
            return Ok(true);
        }
        p = &p * f;
    }
    rabinowitsch(f, i)
}

/// 1 ∈ I + ⟨1 − y·f⟩ in one more variable.
pub fn rabinowitsch(f: &MultiPoly, i: &Ideal) -> Result<bool> {
    let n = i.nvars;
    if n + 1 > MAX_VARS {
        return invalid("no room for the Rabinowitsch variable");
    }
    let mut gens: Vec<MultiPoly> = i.gens.iter().map(|g| g.extend_vars(n + 1)).collect();
    let y = MultiPoly::var(n + 1, n);
    gens.push(&MultiPoly::one(n + 1) - &(&y * &f.extend_vars(n + 1)));
    let gb = buchberger(&gens, n + 1, &MonomialOrder::grevlex(n + 1))?;
    Ok(gb.iter().any(|g| g.degree() == Some(0)))
}

/// Dimension of V(I) ⊆ affine n-space; −1 for the empty variety.
pub fn krull_dimension(i: &Ideal) -> Result<i64> {
    let n = i.nvars;
    if i.gens.is_empty() {
        return Ok(n as i64);
    }
    let gb = i.groebner_basis()?;
    if gb.iter().any(|g| g.degree() == Some(0)) {
        return Ok(-1);
    }
    let lead_masks: Vec<u32> = gb.iter().map(|g| mask(&g.leading().expect("nonzero").0)).collect();
    let mut best = 0;
    for s in 0u32..(1u32 << n) {
        let size = s.count_ones();
        if size > best && lead_masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(best as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use rand::{Rng, SeedableRng};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn simple_bases() {
        let b = buchberger(&[x(2, 0), x(2, 1)], 2, &MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(b.len(), 2);
        assert!(buchberger(&[MultiPoly::zero(2)], 2, &MonomialOrder::grevlex(2)).unwrap().is_empty());
    }

    #[test]
    fn membership_x4_minus_x() {
        let n = 2;
        let f1 = &x(n, 0).pow(2) - &x(n, 1);
        let f2 = &x(n, 1).pow(2) - &x(n, 0);
        let i = Ideal::new(n, vec![f1.clone(), f2.clone()]);
        let target = &x(n, 0).pow(4) - &x(n, 0);
        assert!(ideal_membership(&target, &i).unwrap());
        assert!(!ideal_membership(&x(n, 0), &i).unwrap());
        // points of the variety: x = y², y⁴ = y; rational roots y ∈ {0, 1}
        for y in [0, 1] {
            let pt = [int(y * y), int(y)];
            assert!(f1.eval(&pt).is_zero() && f2.eval(&pt).is_zero());
            assert!(target.eval(&pt).is_zero());
        }
        // idempotence
        let gb = i.groebner_basis().unwrap().to_vec();
        assert_eq!(buchberger(&gb, n, &MonomialOrder::grevlex(n)).unwrap(), gb);
        let lex = buchberger(&[f1, f2], n, &MonomialOrder::lex(n)).unwrap();
        assert_eq!(buchberger(&lex, n, &MonomialOrder::lex(n)).unwrap(), lex);
    }

    #[test]
    fn radical_examples() {
        let i = Ideal::new(1, vec![x(1, 0).pow(2)]);
        assert!(!ideal_membership(&x(1, 0), &i).unwrap());
        assert!(radical_membership(&x(1, 0), &i).unwrap());
        assert!(rabinowitsch(&x(1, 0), &i).unwrap());
        let j = Ideal::new(1, vec![x(1, 0)]);
        assert!(!ideal_membership(&MultiPoly::one(1), &j).unwrap());
        assert!(!radical_membership(&MultiPoly::one(1), &j).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(krull_dimension(&Ideal::new(3, vec![x(3, 0)])).unwrap(), 2);
        assert_eq!(krull_dimension(&Ideal::new(3, vec![])).unwrap(), 3);
        assert_eq!(krull_dimension(&Ideal::new(3, vec![MultiPoly::one(3)])).unwrap(), -1);
        let twisted = Ideal::new(3, vec![&x(3, 1) - &x(3, 0).pow(2), &x(3, 2) - &x(3, 0).pow(3)]);
        assert_eq!(krull_dimension(&twisted).unwrap(), 1);
    }

    #[test]
    fn generators_reduce_to_zero_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 3;
            let gens: Vec<MultiPoly> = (0..3)
                .map(|_| {
                    MultiPoly::from_terms(
                        n,
                        (0..3).map(|_| {
                            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                            (Mono::from_exps(&e), int(rng.gen_range(-5..=5)))
                        }),
                    )
                })
                .collect();
            let i = Ideal::new(n, gens.clone());
            for g in &gens {
                assert!(ideal_membership(g, &i).unwrap());
            }
            let gb = i.groebner_basis().unwrap().to_vec();
            assert_eq!(buchberger(&gb, n, &MonomialOrder::grevlex(n)).unwrap(), gb);
        }
    }
}
