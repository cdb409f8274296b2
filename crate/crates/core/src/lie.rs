//! Free Lie algebras on a basic-commutator (Hall) basis, graded quotients by
//! homogeneous ideals, holonomy Lie algebras, Lie-level Chen ranks and
//! Anick's mildness test.
//!
//! Hall order: by degree, then by creation index. A basic commutator of
//! degree ≥ 2 is [a, b] with a > b and, when a = [a₁, a₂], b ≥ a₂.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cohomology::TwoStepAlgebra;
use crate::combinatorics::{hilb_u_series, witt};
use crate::error::{invalid, Error, Result};
use crate::groups::GroupPresentation;
use crate::numeric::sparse::{normalize_row, Echelon, Row};
use crate::numeric::{PrimeField, Scalar};

/// Default per-degree limit on the free Lie dimension.
pub const DEFAULT_HALL_BUDGET: u64 = 250_000;

const LEAF: u32 = u32::MAX;

/// Integer combination of Hall elements, sorted by id.
pub type LieVec = Vec<(u32, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HallElem {
    deg: u32,
    left: u32,
    right: u32,
}

/// Hall basis of the free Lie algebra on n letters through degree K, with a
/// memoized rewriting table for brackets.
pub struct HallBasis {
    n: usize,
    max_deg: usize,
    elems: Vec<HallElem>,
    deg_start: Vec<usize>,
    pair: HashMap<(u32, u32), u32>,
    memo: HashMap<(u32, u32), LieVec>,
}

impl HallBasis {
    pub fn new(n: usize, max_deg: usize, budget: u64) -> Result<Self> {
        if n == 0 || max_deg == 0 {
            return invalid("Hall basis needs n >= 1 and K >= 1");
        }
        for k in 1..=max_deg {
            let w = witt(n as u64, k as u64);
            if w as u64 > budget {
                return Err(Error::Budget(format!("free Lie dimension {} in degree {} exceeds {}", w, k, budget)));
            }
        }
        let mut elems: Vec<HallElem> = (0..n).map(|_| HallElem { deg: 1, left: LEAF, right: LEAF }).collect();
        let mut deg_start = vec![0, 0, n];
        let mut pair = HashMap::new();
        for k in 2..=max_deg {
            let start = elems.len();
            for da in (1..k).rev() {
                let db = k - da;
                for a in deg_start[da]..deg_start[da + 1] {
                    for b in deg_start[db]..deg_start[db + 1] {
                        if a <= b {
                            continue;
                        }
                        let ea = elems[a];
                        if ea.deg > 1 && (b as u32) < ea.right {
                            continue;
                        }
                        pair.insert((a as u32, b as u32), elems.len() as u32);
                        elems.push(HallElem { deg: k as u32, left: a as u32, right: b as u32 });
                    }
                }
            }
            let _ = start;
            deg_start.push(elems.len());
        }
        Ok(HallBasis { n, max_deg, elems, deg_start, pair, memo: HashMap::new() })
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_deg
    }

    /// Number of basis elements of degree k.
    pub fn count(&self, k: usize) -> usize {
        self.deg_start[k + 1] - self.deg_start[k]
    }

    pub fn counts(&self) -> Vec<usize> {
        (1..=self.max_deg).map(|k| self.count(k)).collect()
    }

    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        self.deg_start[k]..self.deg_start[k + 1]
    }

    pub fn degree(&self, id: u32) -> usize {
        self.elems[id as usize].deg as usize
    }

    /// Children of a non-letter element.
    pub fn factors(&self, id: u32) -> Option<(u32, u32)> {
        let e = self.elems[id as usize];
        (e.deg > 1).then_some((e.left, e.right))
    }

    /// Bracket tree of an element, e.g. `[[x2,x1],x1]`.
    pub fn format(&self, id: u32, names: &[String]) -> String {
        match self.factors(id) {
            None => names[id as usize].clone(),
            Some((a, b)) => format!("[{},{}]", self.format(a, names), self.format(b, names)),
        }
    }

    /// True iff the element satisfies the basic-commutator condition.
    pub fn is_basic(&self, id: u32) -> bool {
        match self.factors(id) {
            None => true,
            Some((a, b)) => a > b && self.factors(a).is_none_or(|(_, a2)| b >= a2),
        }
    }

    /// [u, v] expanded in the Hall basis.
    pub fn bracket(&mut self, u: u32, v: u32) -> LieVec {
        if u == v {
            return Vec::new();
        }
        if self.elems[u as usize].deg as usize + self.elems[v as usize].deg as usize > self.max_deg {
            panic!("bracket exceeds the basis degree");
        }
        if let Some(r) = self.memo.get(&(u, v)) {
            return r.clone();
        }
        let result = if u < v {
            negate(self.bracket(v, u))
        } else {
            let eu = self.elems[u as usize];
            if eu.deg == 1 || v >= eu.right {
                vec![(self.pair[&(u, v)], 1)]
            } else {
                // [[a,b],v] = [[a,v],b] + [a,[b,v]]
                let (a, b) = (eu.left, eu.right);
                let mut acc: HashMap<u32, i64> = HashMap::new();
                let av = self.bracket(a, v);
                for (h, c) in av {
                    for (h2, c2) in self.bracket(h, b) {
                        *acc.entry(h2).or_insert(0) += c * c2;
                    }
                }
                let bv = self.bracket(b, v);
                for (h, c) in bv {
                    for (h2, c2) in self.bracket(a, h) {
                        *acc.entry(h2).or_insert(0) += c * c2;
                    }
                }
                collect(acc)
            }
        };
        self.memo.insert((u, v), result.clone());
        result
    }

    /// Bracket of two combinations.
    pub fn bracket_vec(&mut self, x: &LieVec, y: &LieVec) -> LieVec {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for (h, c) in self.bracket(a, b) {
                    *acc.entry(h).or_insert(0) += ca * cb * c;
                }
            }
        }
        collect(acc)
    }

    /// Expands a bracket tree.
    pub fn expand(&mut self, t: &LieTree) -> LieVec {
        match t {
            LieTree::Gen(i) => vec![(*i as u32, 1)],
            LieTree::Br(a, b) => {
                let x = self.expand(a);
                let y = self.expand(b);
                self.bracket_vec(&x, &y)
            }
        }
    }
}

fn negate(v: LieVec) -> LieVec {
    v.into_iter().map(|(h, c)| (h, -c)).collect()
}

fn collect(acc: HashMap<u32, i64>) -> LieVec {
    let mut v: LieVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    v
}

/// Bracket expression over generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieTree {
    Gen(usize),
    Br(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn br(a: LieTree, b: LieTree) -> LieTree {
        LieTree::Br(Box::new(a), Box::new(b))
    }

    pub fn gens(i: usize, j: usize) -> LieTree {
        LieTree::br(LieTree::Gen(i), LieTree::Gen(j))
    }

    pub fn degree(&self) -> usize {
        match self {
            LieTree::Gen(_) => 1,
            LieTree::Br(a, b) => a.degree() + b.degree(),
        }
    }
}

/// Homogeneous element of a free Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub degree: usize,
    pub terms: Vec<(LieTree, Scalar)>,
}

/// Generators in degree 1 plus homogeneous relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    pub ngens: usize,
    pub names: Vec<String>,
    pub relators: Vec<LieElement>,
}

impl LiePresentation {
    pub fn free(n: usize) -> Self {
        LiePresentation { ngens: n, names: (1..=n).map(|i| format!("x{}", i)).collect(), relators: vec![] }
    }

    /// Quadratic relators Σ_{i<j} c_ij [x_i, x_j] from coefficient rows
    /// indexed by lexicographic pairs.
    pub fn quadratic(n: usize, names: Vec<String>, rows: &[Vec<Scalar>]) -> Self {
        let pairs = crate::numeric::subsets(n, 2);
        let relators = rows
            .iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .map(|r| LieElement {
                degree: 2,
                terms: pairs
                    .iter()
                    .zip(r)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| (LieTree::gens(p[0], p[1]), c.clone()))
                    .collect(),
            })
            .collect();
        LiePresentation { ngens: n, names, relators }
    }
}

/// (degree, dimension) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<(usize, i64)>,
}

impl GradedDims {
    pub fn from_values(v: Vec<i64>) -> Self {
        GradedDims { dims: v.into_iter().enumerate().map(|(i, d)| (i + 1, d)).collect() }
    }

    pub fn values(&self) -> Vec<i64> {
        self.dims.iter().map(|&(_, d)| d).collect()
    }
}

/// Holonomy Lie algebra: generators dual to A¹, relators the rows of the
/// cup matrix, i.e. the image of the dual of Λ²A¹ → A².
pub fn holonomy_presentation(a: &TwoStepAlgebra) -> LiePresentation {
    LiePresentation::quadratic(a.b1, a.basis1.clone(), &a.cup)
}

/// Quadratic part of the Magnus expansion of a commutator relator:
/// coefficient of X_i X_j.
pub fn magnus_quadratic(w: &crate::groups::Word, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    let letters = w.letters();
    for (p, lp) in letters.iter().enumerate() {
        let sp = if lp.inv { -1 } else { 1 };
        if lp.inv {
            c[lp.gen][lp.gen] += 1;
        }
        for lq in &letters[p + 1..] {
            let sq = if lq.inv { -1 } else { 1 };
            c[lp.gen][lq.gen] += sp * sq;
        }
    }
    c
}

/// Lie presentation by the degree-2 initial forms of the relators.
pub fn initial_form_presentation(g: &GroupPresentation) -> Result<LiePresentation> {
    let n = g.ngens();
    let mut rows = Vec::new();
    for r in g.relators() {
        if r.exponent_sums(n).iter().any(|&s| s != 0) {
            return invalid("relator of weight 1 (not a commutator)");
        }
        let c = magnus_quadratic(r, n);
        let mut row = Vec::new();
        for i in 0..n {
            if c[i][i] != 0 {
                return invalid("quadratic Magnus part is not a Lie element");
            }
            for j in i + 1..n {
                if c[i][j] != -c[j][i] {
                    return invalid("quadratic Magnus part is not a Lie element");
                }
                row.push(Scalar::from_integer(c[i][j].into()));
            }
        }
        if row.iter().all(|x| x.is_zero()) {
            return invalid("relator has weight > 2; only quadratic initial forms are supported");
        }
        rows.push(row);
    }
    Ok(LiePresentation::quadratic(n, g.labels().to_vec(), &rows))
}

fn vec_to_row(f: &PrimeField, v: &LieVec, base: usize) -> Row {
    normalize_row(f, v.iter().map(|&(h, c)| ((h as usize - base) as u32, f.from_i64(c))).collect())
}

/// Integer relator vectors in the Hall basis, grouped by degree.
fn relator_vectors(hb: &mut HallBasis, l: &LiePresentation, f: &PrimeField) -> Result<Vec<Vec<Row>>> {
    let k_max = hb.max_degree();
    let mut by_deg: Vec<Vec<Row>> = vec![Vec::new(); k_max + 1];
    for r in &l.relators {
        if r.degree > k_max {
            continue;
        }
        let mut acc: HashMap<u32, u32> = HashMap::new();
        for (t, c) in &r.terms {
            if t.degree() != r.degree {
                return invalid("relator is not homogeneous");
            }
            let cf = f.from_scalar(c).ok_or_else(|| Error::PrimeDisagreement("prime divides a denominator".into()))?;
            for (h, x) in hb.expand(t) {
                let e = acc.entry(h).or_insert(0);
                *e = f.add(*e, f.mul(cf, f.from_i64(x)));
            }
        }
        let base = hb.degree_range(r.degree).start;
        let row = normalize_row(f, acc.into_iter().map(|(h, v)| ((h as usize - base) as u32, v)).collect());
        by_deg[r.degree].push(row);
    }
    Ok(by_deg)
}

/// Bases (mod p) of the ideal layers J_1..J_K in Hall coordinates:
/// J_k = span{[x_i, v] : v ∈ J_{k−1}} + (relators of degree k).
fn ideal_layers(hb: &mut HallBasis, l: &LiePresentation, f: PrimeField) -> Result<Vec<Vec<Row>>> {
    let k_max = hb.max_degree();
    let n = hb.ngens();
    let rel = relator_vectors(hb, l, &f)?;
    let mut layers: Vec<Vec<Row>> = vec![Vec::new(); k_max + 1];
    for k in 1..=k_max {
        let base = hb.degree_range(k).start;
        let width = hb.count(k);
        let mut cand: Vec<Row> = rel[k].clone();
        if k >= 2 {
            let prev_base = hb.degree_range(k - 1).start;
            let prev = std::mem::take(&mut layers[k - 1]);
            let mut acc = vec![0u32; width];
            let mut touched: Vec<u32> = Vec::new();
            for v in &prev {
                for i in 0..n {
                    for &(col, c) in v {
                        let h = (prev_base + col as usize) as u32;
                        for (h2, x) in hb.bracket(i as u32, h) {
                            let j = h2 as usize - base;
                            if acc[j] == 0 {
                                touched.push(j as u32);
                            }
                            acc[j] = f.add(acc[j], f.mul(c, f.from_i64(x)));
                        }
                    }
                    let mut row: Row = Vec::with_capacity(touched.len());
                    for &j in &touched {
                        if acc[j as usize] != 0 {
                            row.push((j, acc[j as usize]));
                        }
                        acc[j as usize] = 0;
                    }
                    touched.clear();
                    row.sort_unstable_by_key(|e| e.0);
                    cand.push(row);
                }
            }
            layers[k - 1] = prev;
        }
        // Independent generating rows are far sparser than reduced rows, so
        // they are kept as the basis passed to the next degree.
        cand.sort_by_key(|r| (r.first().map_or(u32::MAX, |e| e.0), r.len()));
        let mut e = Echelon::new(f, width);
        let mut kept = Vec::new();
        for r in cand {
            if !r.is_empty() && e.insert(&r).is_some() {
                kept.push(r);
            }
        }
        layers[k] = kept;
    }
    Ok(layers)
}

fn run_two<F>(primes: &[PrimeField], job: F) -> Result<Vec<i64>>
where
    F: Fn(PrimeField) -> Result<Vec<i64>>,
{
    if primes.is_empty() {
        return invalid("no primes configured");
    }
    let first = job(primes[0])?;
    for &f in &primes[1..] {
        let other = job(f)?;
        if other != first {
            return Err(Error::PrimeDisagreement(format!("{:?} vs {:?}", first, other)));
        }
    }
    Ok(first)
}

/// φ_k of the quotient L/J for k ≤ K.
pub fn graded_dims(l: &LiePresentation, k_max: usize, budget: u64, primes: &[PrimeField]) -> Result<GradedDims> {
    let vals = run_two(primes, |f| {
        let mut hb = HallBasis::new(l.ngens, k_max, budget)?;
        let layers = ideal_layers(&mut hb, l, f)?;
        Ok((1..=k_max).map(|k| (hb.count(k) - layers[k].len()) as i64).collect())
    })?;
    Ok(GradedDims::from_values(vals))
}

/// θ_k(𝔤) = dim 𝔤_k − dim 𝔤''_k, with 𝔤''_k spanned by brackets of Hall
/// elements of degrees p, q ≥ 2, p + q = k.
pub fn chen_dims(l: &LiePresentation, k_max: usize, budget: u64, primes: &[PrimeField]) -> Result<GradedDims> {
    let vals = run_two(primes, |f| {
        let mut hb = HallBasis::new(l.ngens, k_max, budget)?;
        let layers = ideal_layers(&mut hb, l, f)?;
        let mut out = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            let width = hb.count(k);
            let base = hb.degree_range(k).start;
            let mut e = Echelon::new(f, width);
            for r in &layers[k] {
                e.insert(r);
            }
            for p in 2..=k / 2 {
                let qd = k - p;
                if qd < 2 {
                    continue;
                }
                let rp = hb.degree_range(p);
                let rq = hb.degree_range(qd);
                for a in rp.clone() {
                    for b in rq.clone() {
                        if p == qd && b <= a {
                            continue;
                        }
                        let v = hb.bracket(a as u32, b as u32);
                        let row = vec_to_row(&f, &v, base);
                        if !row.is_empty() {
                            e.insert(&row);
                        }
                    }
                }
            }
            out.push((width - e.rank()) as i64);
        }
        Ok(out)
    })?;
    Ok(GradedDims::from_values(vals))
}

/// Result of Anick's criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MildVerdict {
    MildUpTo(usize),
    FailsAt { degree: usize, expected: i64, actual: i64 },
}

/// Compares ∏(1−t^k)^{−φ_k} (φ from the initial-form presentation) with
/// 1/(1 − n t + m t²) through degree K.
pub fn mildness_check(g: &GroupPresentation, k_max: usize, budget: u64, primes: &[PrimeField]) -> Result<MildVerdict> {
    let l = initial_form_presentation(g)?;
    let phi = graded_dims(&l, k_max, budget, primes)?.values();
    let n = g.ngens() as i64;
    let m = g.relators().len() as i64;
    // 1/(1 - n t + m t^2) = 1/f(-t) with b = [n, m]
    let target = hilb_u_series(&[n, m], k_max);
    let actual = pbw_product(&phi, k_max);
    for k in 0..=k_max {
        if target[k] != actual[k] {
            return Ok(MildVerdict::FailsAt {
                degree: k,
                expected: target[k].to_i64().unwrap_or(i64::MAX),
                actual: actual[k].to_i64().unwrap_or(i64::MAX),
            });
        }
    }
    Ok(MildVerdict::MildUpTo(k_max))
}

/// Coefficients through K of ∏_k (1 − t^k)^{−φ_k}.
pub fn pbw_product(phi: &[i64], k_max: usize) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut cur = vec![BigInt::zero(); k_max + 1];
    cur[0] = BigInt::from(1);
    for (idx, &p) in phi.iter().enumerate() {
        let k = idx + 1;
        if k > k_max {
            break;
        }
        // multiply by (1 - t^k)^{-p} = Σ_j C(p+j-1, j) t^{kj}
        let mut next = vec![BigInt::zero(); k_max + 1];
        for (i, ci) in cur.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let mut j = 0usize;
            let mut coef = BigInt::from(1);
            while i + k * j <= k_max {
                next[i + k * j] += ci * &coef;
                j += 1;
                coef = coef * BigInt::from(p + j as i64 - 1) / BigInt::from(j as i64);
            }
        }
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{family, Family};
    use crate::numeric::int;

    fn primes() -> Vec<PrimeField> {
        vec![PrimeField::new(2147483629), PrimeField::new(2147483587)]
    }

    #[test]
    fn hall_counts_match_witt() {
        for n in 1..=8usize {
            let k = if n <= 4 { 6 } else { 5 };
            let hb = HallBasis::new(n, k, DEFAULT_HALL_BUDGET).unwrap();
            for d in 1..=k {
                assert_eq!(hb.count(d) as i64, witt(n as u64, d as u64), "n={} k={}", n, d);
            }
        }
        assert_eq!(HallBasis::new(2, 3, DEFAULT_HALL_BUDGET).unwrap().counts(), vec![2, 1, 2]);
        assert_eq!(HallBasis::new(1, 3, DEFAULT_HALL_BUDGET).unwrap().counts(), vec![1, 0, 0]);
        assert_eq!(HallBasis::new(6, 3, DEFAULT_HALL_BUDGET).unwrap().counts(), vec![6, 15, 70]);
        assert!(matches!(HallBasis::new(6, 8, 1000), Err(Error::Budget(_))));
    }

    #[test]
    fn rewriting_is_antisymmetric_and_jacobi() {
        let mut hb = HallBasis::new(3, 5, DEFAULT_HALL_BUDGET).unwrap();
        let ids: Vec<u32> = hb.degree_range(1).chain(hb.degree_range(2)).map(|x| x as u32).collect();
        for &a in &ids {
            for &b in &ids {
                let ab = hb.bracket(a, b);
                let ba = hb.bracket(b, a);
                assert_eq!(ab, negate(ba));
                for &c in &ids[..3] {
                    if hb.degree(a) + hb.degree(b) + 1 > 5 {
                        continue;
                    }
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    let bc = hb.bracket(b, c);
                    let ca = hb.bracket(c, a);
                    let t1 = hb.bracket_vec(&ab, &vec![(c, 1)]);
                    let t2 = hb.bracket_vec(&bc, &vec![(a, 1)]);
                    let t3 = hb.bracket_vec(&ca, &vec![(b, 1)]);
                    let mut acc: HashMap<u32, i64> = HashMap::new();
                    for (h, x) in t1.into_iter().chain(t2).chain(t3) {
                        *acc.entry(h).or_insert(0) += x;
                    }
                    assert!(acc.values().all(|&x| x == 0));
                }
            }
        }
        for id in 0..hb.elems.len() as u32 {
            assert!(hb.is_basic(id));
        }
    }

    #[test]
    fn graded_dims_examples() {
        let torus = LiePresentation::quadratic(2, vec!["x".into(), "y".into()], &[vec![int(1)]]);
        assert_eq!(graded_dims(&torus, 3, DEFAULT_HALL_BUDGET, &primes()).unwrap().values(), vec![2, 0, 0]);
        let free2 = LiePresentation::free(2);
        assert_eq!(graded_dims(&free2, 4, DEFAULT_HALL_BUDGET, &primes()).unwrap().values(), vec![2, 1, 2, 3]);
    }

    #[test]
    fn chen_dims_free() {
        let p = primes();
        assert_eq!(chen_dims(&LiePresentation::free(2), 4, DEFAULT_HALL_BUDGET, &p).unwrap().values(), vec![2, 1, 2, 3]);
        let f3 = chen_dims(&LiePresentation::free(3), 4, DEFAULT_HALL_BUDGET, &p).unwrap().values();
        assert_eq!(f3[3], 15);
    }

    #[test]
    fn holonomy_matches_pbw() {
        use crate::cohomology::{algebra_family, AlgebraFamily};
        use crate::combinatorics::lcs_ranks_pbw;
        let p = primes();
        let cases = [(AlgebraFamily::BeerVPPlus(3), vec![3, 1], 6), (AlgebraFamily::BeerVPPlus(4), vec![6, 7, 1], 5), (AlgebraFamily::BeerVP(3), vec![6, 6], 5)];
        for (fam, b, k) in cases {
            let l = holonomy_presentation(&algebra_family(fam).unwrap());
            let phi = graded_dims(&l, k, DEFAULT_HALL_BUDGET, &p).unwrap();
            assert_eq!(phi.values(), lcs_ranks_pbw(&b, k).unwrap().values(), "{:?}", fam);
        }
        let ab = holonomy_presentation(&algebra_family(AlgebraFamily::Abelian(2)).unwrap());
        assert_eq!(ab.relators.len(), 1);
        let v3 = holonomy_presentation(&algebra_family(AlgebraFamily::BeerVP(3)).unwrap());
        assert_eq!(v3.relators.len(), 6);
    }

    #[test]
    fn holonomy_chen_ranks_vp4_plus() {
        use crate::cohomology::{algebra_family, AlgebraFamily};
        let l = holonomy_presentation(&algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap());
        let theta = chen_dims(&l, 4, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        let phi = graded_dims(&l, 4, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        assert_eq!(theta, vec![6, 8, 29, 69]);
        assert_eq!(&theta[..3], &phi[..3]);
        assert!(theta.iter().zip(&phi).all(|(t, f)| t <= f));
    }

    #[test]
    fn magnus_of_commutator() {
        let g = family(Family::Abelian(2)).unwrap();
        let l = initial_form_presentation(&g).unwrap();
        assert_eq!(l.relators.len(), 1);
        assert_eq!(l.relators[0].terms, vec![(LieTree::gens(0, 1), int(1))]);
    }

    #[test]
    fn mildness_examples() {
        let p = primes();
        let torus = family(Family::Abelian(2)).unwrap();
        assert_eq!(mildness_check(&torus, 5, DEFAULT_HALL_BUDGET, &p).unwrap(), MildVerdict::MildUpTo(5));
        let v3 = family(Family::VPPlus(3)).unwrap();
        assert_eq!(mildness_check(&v3, 6, DEFAULT_HALL_BUDGET, &p).unwrap(), MildVerdict::MildUpTo(6));
        let v4 = family(Family::VPPlus(4)).unwrap();
        assert!(matches!(mildness_check(&v4, 4, DEFAULT_HALL_BUDGET, &p).unwrap(), MildVerdict::FailsAt { degree: 3, .. }));
    }
}
