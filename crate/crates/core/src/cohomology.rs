//! Degree-≤2 truncations A⁰ ⊕ A¹ ⊕ A² of cohomology algebras, closed-form
//! Poincaré polynomials and exponential generating function checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{special_number, SpecialKind};
use crate::error::{invalid, Result};
use crate::groups::{colex_pairs, vp_generators, GroupPresentation};
use crate::lie::magnus_quadratic;
use crate::numeric::{int, rref, nullspace, scalar_to_string, subsets, BiSeries, Scalar, UniPoly};

/// A¹, A² and the cup map Λ²A¹ → A².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepAlgebra {
    pub b1: usize,
    pub basis1: Vec<String>,
    pub b2: usize,
    pub basis2: Vec<String>,
    /// b₂ × C(b₁,2); column (i,j), i < j, in lexicographic pair order, is the
    /// image of e_i ∧ e_j.
    pub cup: Vec<Vec<Scalar>>,
    /// Set when A³ = 0 is known, so that χ = 1 − b₁ + b₂.
    pub top_degree_two: bool,
}

/// Index of the pair {i, j} in lexicographic order on 2-subsets of 0..n.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// e_i ∧ e_j as (pair index, sign); None when i = j.
pub fn wedge(n: usize, i: usize, j: usize) -> Option<(usize, i64)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((pair_index(n, i, j), 1)),
        std::cmp::Ordering::Greater => Some((pair_index(n, i, j), -1)),
    }
}

impl TwoStepAlgebra {
    /// Euler characteristic, when the top degree is known to be ≤ 2.
    pub fn chi(&self) -> Option<i64> {
        self.top_degree_two.then(|| 1 - self.b1 as i64 + self.b2 as i64)
    }

    /// e_i · e_j in the A² basis (antisymmetric in i, j).
    pub fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        match wedge(self.b1, i, j) {
            None => vec![Scalar::zero(); self.b2],
            Some((p, s)) => self.cup.iter().map(|row| &row[p] * int(s)).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = AlgebraJson {
            basis1: self.basis1.clone(),
            basis2: self.basis2.clone(),
            cup: self.cup.iter().map(|r| r.iter().map(scalar_to_string).collect()).collect(),
            top_degree_two: self.top_degree_two,
        };
        serde_json::to_value(j).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    basis1: Vec<String>,
    basis2: Vec<String>,
    cup: Vec<Vec<String>>,
    top_degree_two: bool,
}

/// A² := Λ²A¹ / span(relations), with basis the monomials e_i∧e_j outside
/// the pivot columns of the reduced relation matrix.
pub fn quadratic_algebra(b1: usize, basis1: Vec<String>, relations: &[Vec<Scalar>]) -> Result<TwoStepAlgebra> {
    let npairs = b1 * b1.saturating_sub(1) / 2;
    if basis1.len() != b1 {
        return invalid("label count differs from b1");
    }
    if relations.iter().any(|r| r.len() != npairs) {
        return invalid(format!("relation vectors must have length C(b1,2) = {}", npairs));
    }
    let (red, piv) = rref(relations);
    let free: Vec<usize> = (0..npairs).filter(|c| !piv.contains(c)).collect();
    let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let pairs = subsets(b1, 2);
    let basis2 = free.iter().map(|&c| format!("{}∧{}", basis1[pairs[c][0]], basis1[pairs[c][1]])).collect();
    let mut cup = vec![vec![Scalar::zero(); npairs]; free.len()];
    for c in 0..npairs {
        if let Some(&k) = pos.get(&c) {
            cup[k][c] = Scalar::one();
        }
    }
    // e_p ≡ −Σ_{free c} red[p][c] e_c
    for (row, &p) in red.iter().zip(&piv) {
        for (k, &c) in free.iter().enumerate() {
            cup[k][p] = -row[c].clone();
        }
    }
    Ok(TwoStepAlgebra { b1, basis1, b2: free.len(), basis2, cup, top_degree_two: false })
}

/// Named presentations of cohomology algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraFamily {
    /// H*(P_n): generators a_ij, i < j.
    Arnold(usize),
    /// H*(vP_n): generators a_ij, i ≠ j.
    BeerVP(usize),
    /// H*(vP_n⁺), simplified: generators e_ij, i < j.
    BeerVPPlus(usize),
    Free(usize),
    Abelian(usize),
}

impl AlgebraFamily {
    pub fn parse(name: &str, n: usize) -> Result<Self> {
        Ok(match name {
            "arnold" | "P" => AlgebraFamily::Arnold(n),
            "beer_vP" | "vP" => AlgebraFamily::BeerVP(n),
            "beer_vP_plus" | "vP_plus" | "vP+" => AlgebraFamily::BeerVPPlus(n),
            "free" => AlgebraFamily::Free(n),
            "abelian" => AlgebraFamily::Abelian(n),
            _ => return invalid(format!("unknown algebra family '{}'", name)),
        })
    }
}

struct RelBuilder {
    n: usize,
    rows: Vec<Vec<Scalar>>,
}

impl RelBuilder {
    /// Appends Σ c · g_a g_b.
    fn push(&mut self, terms: &[(i64, usize, usize)]) {
        let mut row = vec![Scalar::zero(); self.n * self.n.saturating_sub(1) / 2];
        for &(c, a, b) in terms {
            if let Some((p, s)) = wedge(self.n, a, b) {
                row[p] += int(c * s);
            }
        }
        self.rows.push(row);
    }
}

pub fn algebra_family(f: AlgebraFamily) -> Result<TwoStepAlgebra> {
    let label = |p: char, (i, j): (usize, usize)| format!("{}{}{}", p, i, j);
    match f {
        AlgebraFamily::Free(n) | AlgebraFamily::Abelian(n) => {
            if n == 0 {
                return invalid("n must be >= 1");
            }
            let labels = (1..=n).map(|i| format!("x{}", i)).collect();
            let npairs = n * (n - 1) / 2;
            let rels: Vec<Vec<Scalar>> = if matches!(f, AlgebraFamily::Free(_)) {
                (0..npairs).map(|p| (0..npairs).map(|q| if p == q { int(1) } else { int(0) }).collect()).collect()
            } else {
                vec![]
            };
            quadratic_algebra(n, labels, &rels)
        }
        AlgebraFamily::Arnold(n) | AlgebraFamily::BeerVPPlus(n) => {
            if n < 2 {
                return invalid("n must be >= 2");
            }
            let gens = colex_pairs(n);
            let idx: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let g = |i: usize, j: usize| idx[&(i, j)];
            let mut rb = RelBuilder { n: gens.len(), rows: vec![] };
            for k in 1..=n {
                for j in 1..k {
                    for i in 1..j {
                        if matches!(f, AlgebraFamily::Arnold(_)) {
                            // a_ik a_jk = a_ij (a_jk − a_ik)
                            rb.push(&[(1, g(i, k), g(j, k)), (-1, g(i, j), g(j, k)), (1, g(i, j), g(i, k))]);
                        } else {
                            // e_ij (e_ik − e_jk), (e_ij − e_ik) e_jk
                            rb.push(&[(1, g(i, j), g(i, k)), (-1, g(i, j), g(j, k))]);
                            rb.push(&[(1, g(i, j), g(j, k)), (-1, g(i, k), g(j, k))]);
                        }
                    }
                }
            }
            let p = if matches!(f, AlgebraFamily::Arnold(_)) { 'a' } else { 'e' };
            quadratic_algebra(gens.len(), gens.iter().map(|&q| label(p, q)).collect(), &rb.rows)
        }
        AlgebraFamily::BeerVP(n) => {
            if n < 2 {
                return invalid("n must be >= 2");
            }
            let gens = vp_generators(n);
            let idx: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let g = |i: usize, j: usize| idx[&(i, j)];
            let mut rb = RelBuilder { n: gens.len(), rows: vec![] };
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    if i < j {
                        rb.push(&[(1, g(i, j), g(j, i))]);
                    }
                    for k in 1..=n {
                        if k == i || k == j {
                            continue;
                        }
                        // a_ij a_ik = a_ij a_jk − a_ik a_kj
                        rb.push(&[(1, g(i, j), g(i, k)), (-1, g(i, j), g(j, k)), (1, g(i, k), g(k, j))]);
                        // a_ik a_jk = a_ij a_jk − a_ji a_ik
                        rb.push(&[(1, g(i, k), g(j, k)), (-1, g(i, j), g(j, k)), (1, g(j, i), g(i, k))]);
                    }
                }
            }
            quadratic_algebra(gens.len(), gens.iter().map(|&q| label('a', q)).collect(), &rb.rows)
        }
    }
}

/// Truncated cohomology of a commutator-relator presentation 2-complex: the
/// cup map sends e_i∧e_j to the quadratic Magnus coefficients of the
/// relators, and A² is its image.
pub fn presentation_algebra(g: &GroupPresentation, top_degree_two: bool) -> Result<TwoStepAlgebra> {
    let n = g.ngens();
    let pairs = subsets(n, 2);
    let mut rows = Vec::new();
    for r in g.relators() {
        if r.exponent_sums(n).iter().any(|&s| s != 0) {
            return invalid("relator is not a commutator");
        }
        let c = magnus_quadratic(r, n);
        rows.push(pairs.iter().map(|p| int(c[p[0]][p[1]])).collect::<Vec<_>>());
    }
    let rels = if rows.is_empty() { vec![] } else { nullspace(&rows, pairs.len()) };
    let rels = if rows.is_empty() && n >= 2 {
        // no relators: the presentation complex is a wedge of circles
        (0..pairs.len()).map(|p| (0..pairs.len()).map(|q| if p == q { int(1) } else { int(0) }).collect()).collect()
    } else {
        rels
    };
    let mut a = quadratic_algebra(n, g.labels().to_vec(), &rels)?;
    a.top_degree_two = top_degree_two;
    Ok(a)
}

fn direct_sum_labels(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> Vec<String> {
    let mut out = a.basis1.clone();
    for l in &b.basis1 {
        let mut name = l.clone();
        while out.contains(&name) {
            name.push('\'');
        }
        out.push(name);
    }
    out
}

fn combine(a: &TwoStepAlgebra, b: &TwoStepAlgebra, cross: bool) -> TwoStepAlgebra {
    let n = a.b1 + b.b1;
    let basis1 = direct_sum_labels(a, b);
    let npairs = n * n.saturating_sub(1) / 2;
    let ncross = if cross { a.b1 * b.b1 } else { 0 };
    let b2 = a.b2 + ncross + b.b2;
    let mut cup = vec![vec![Scalar::zero(); npairs]; b2];
    let mut basis2 = a.basis2.clone();
    for i in 0..n {
        for j in i + 1..n {
            let p = pair_index(n, i, j);
            if j < a.b1 {
                let q = pair_index(a.b1, i, j);
                for r in 0..a.b2 {
                    cup[r][p] = a.cup[r][q].clone();
                }
            } else if i >= a.b1 {
                let q = pair_index(b.b1, i - a.b1, j - a.b1);
                for r in 0..b.b2 {
                    cup[a.b2 + ncross + r][p] = b.cup[r][q].clone();
                }
            } else if cross {
                cup[a.b2 + i * b.b1 + (j - a.b1)][p] = Scalar::one();
            }
        }
    }
    if cross {
        for i in 0..a.b1 {
            for j in 0..b.b1 {
                basis2.push(format!("{}⊗{}", basis1[i], basis1[a.b1 + j]));
            }
        }
    }
    basis2.extend(b.basis2.iter().cloned());
    TwoStepAlgebra {
        b1: n,
        basis1,
        b2,
        basis2,
        cup,
        top_degree_two: a.top_degree_two && b.top_degree_two && !cross,
    }
}

/// Cohomology of a product: A ⊗ B truncated at degree 2.
pub fn tensor_algebra(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> TwoStepAlgebra {
    combine(a, b, true)
}

/// Cohomology of a free product: cross products vanish.
pub fn coproduct_algebra(a: &TwoStepAlgebra, b: &TwoStepAlgebra) -> TwoStepAlgebra {
    combine(a, b, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PoincareFamily {
    P,
    VP,
    VPPlus,
}

impl PoincareFamily {
    fn kind(self) -> SpecialKind {
        match self {
            PoincareFamily::P => SpecialKind::Stirling1,
            PoincareFamily::VP => SpecialKind::Lah,
            PoincareFamily::VPPlus => SpecialKind::Stirling2,
        }
    }
}

/// Σ_i X(n, n−i) tⁱ with X = c, L or S.
pub fn poincare_closed(fam: PoincareFamily, n: usize) -> Result<UniPoly> {
    if n == 0 {
        return invalid("n must be >= 1");
    }
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let v: BigInt = special_number(fam.kind(), n as i64, (n - i) as i64)?;
        c.push(Scalar::from_integer(v));
    }
    Ok(UniPoly::new(c))
}

/// ∏_{k<n} (1 + k t).
pub fn poincare_product_p(n: usize) -> UniPoly {
    let mut p = UniPoly::one();
    for k in 1..n {
        p = &p * &UniPoly::from_ints(&[1, k as i64]);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EgfReport {
    pub holds: bool,
    /// (n, closed form, coefficient of uⁿ/n!)
    pub mismatches: Vec<(usize, String, String)>,
}

/// Expands the exponential generating function of the family through uᵁ and
/// compares n!·[uⁿ] with the closed-form Poincaré polynomial.
pub fn egf_identity_check(fam: PoincareFamily, u_max: usize) -> Result<EgfReport> {
    if u_max > 8 {
        return invalid("egf check supports U <= 8");
    }
    let t_max = u_max;
    // inner series g(u,t) = Σ_{m≥1} w(m) t^{m−1} u^m
    let weight = |m: usize| -> Scalar {
        match fam {
            // −log(1−tu)/t
            PoincareFamily::P => Scalar::new(1.into(), (m as i64).into()),
            // u/(1−tu)
            PoincareFamily::VP => int(1),
            // (exp(tu)−1)/t
            PoincareFamily::VPPlus => Scalar::from_integer(1.into()) / Scalar::from_integer(crate::combinatorics::factorial(m as u64)),
        }
    };
    let g = BiSeries::from_fn(u_max, t_max, |i, j| if i >= 1 && j + 1 == i { weight(i) } else { Scalar::zero() });
    let e = g.exp()?;
    let mut mismatches = Vec::new();
    for n in 1..=u_max {
        let fact = Scalar::from_integer(crate::combinatorics::factorial(n as u64));
        let got = UniPoly::new(e.u_coefficient(n).into_iter().map(|c| c * &fact).collect());
        let want = poincare_closed(fam, n)?;
        if got != want {
            mismatches.push((n, want.to_string(), got.to_string()));
        }
    }
    Ok(EgfReport { holds: mismatches.is_empty(), mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::lah_closed;
    use crate::groups::{family, Family};

    #[test]
    fn small_algebras() {
        let e = quadratic_algebra(2, vec!["x".into(), "y".into()], &[]).unwrap();
        assert_eq!(e.b2, 1);
        let ab = algebra_family(AlgebraFamily::Abelian(2)).unwrap();
        assert_eq!((ab.b1, ab.b2), (2, 1));
        assert_eq!(ab.product(0, 1), vec![int(1)]);
        assert_eq!(ab.product(1, 0), vec![int(-1)]);
        assert_eq!(algebra_family(AlgebraFamily::Free(3)).unwrap().b2, 0);
    }

    #[test]
    fn family_betti_numbers() {
        assert_eq!(algebra_family(AlgebraFamily::BeerVPPlus(3)).unwrap().b2, 1);
        assert_eq!(algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap().b2, 7);
        let v3 = algebra_family(AlgebraFamily::BeerVP(3)).unwrap();
        assert_eq!((v3.b1, v3.b2), (6, 6));
        let a4 = algebra_family(AlgebraFamily::Arnold(4)).unwrap();
        assert_eq!((a4.b1, a4.b2), (6, 11));
        for n in 3..=6usize {
            let s = special_number(SpecialKind::Stirling2, n as i64, n as i64 - 2).unwrap();
            let l = lah_closed(n as u64, n as u64 - 2).unwrap();
            assert_eq!(BigInt::from(algebra_family(AlgebraFamily::BeerVPPlus(n)).unwrap().b2), s);
            assert_eq!(BigInt::from(algebra_family(AlgebraFamily::BeerVP(n)).unwrap().b2), l);
        }
    }

    #[test]
    fn products_and_coproducts() {
        let f1 = algebra_family(AlgebraFamily::Free(1)).unwrap();
        let t = tensor_algebra(&f1, &f1);
        assert_eq!((t.b1, t.b2), (2, 1));
        let c = coproduct_algebra(&algebra_family(AlgebraFamily::Abelian(2)).unwrap(), &f1);
        assert_eq!((c.b1, c.b2), (3, 1));
        let pbar = presentation_algebra(&family(Family::PBar4).unwrap(), true).unwrap();
        assert_eq!((pbar.b1, pbar.b2, pbar.chi()), (5, 6, Some(2)));
        let v = coproduct_algebra(&pbar, &f1);
        assert_eq!((v.b1, v.b2), (6, 6));
    }

    #[test]
    fn presentation_algebra_of_torus() {
        let a = presentation_algebra(&family(Family::Abelian(2)).unwrap(), true).unwrap();
        assert_eq!((a.b1, a.b2, a.chi()), (2, 1, Some(0)));
        let f = presentation_algebra(&family(Family::Free(3)).unwrap(), true).unwrap();
        assert_eq!((f.b2, f.chi()), (0, Some(-2)));
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(poincare_closed(PoincareFamily::P, 4).unwrap(), UniPoly::from_ints(&[1, 6, 11, 6]));
        assert_eq!(poincare_closed(PoincareFamily::VP, 3).unwrap(), UniPoly::from_ints(&[1, 6, 6]));
        assert_eq!(poincare_closed(PoincareFamily::VPPlus, 4).unwrap(), UniPoly::from_ints(&[1, 6, 7, 1]));
        assert_eq!(poincare_closed(PoincareFamily::VP, 4).unwrap(), UniPoly::from_ints(&[1, 12, 36, 24]));
        for n in 1..=8 {
            assert_eq!(poincare_closed(PoincareFamily::P, n).unwrap(), poincare_product_p(n));
        }
    }

    #[test]
    fn egf_identities() {
        for fam in [PoincareFamily::P, PoincareFamily::VP, PoincareFamily::VPPlus] {
            assert!(egf_identity_check(fam, 7).unwrap().holds, "{:?}", fam);
        }
    }

    #[test]
    fn euler_characteristic_of_vp_nonzero() {
        for n in 2..=7 {
            let p = poincare_closed(PoincareFamily::VP, n).unwrap();
            assert!(!p.eval(&int(-1)).is_zero());
        }
    }
}
