//! Aomoto complexes of two-step algebras, resonance ideals and pointwise
//! checks of resonance membership.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{coproduct_algebra, tensor_algebra, TwoStepAlgebra};
use crate::error::{invalid, Result};
use crate::groebner::Ideal;
use crate::numeric::{int, minors, nullspace, rank_rational, rat, rref, MultiPoly, Scalar, SparseMatrix};

/// δ¹ : A¹ ⊗ S → A² ⊗ S as a b₂ × b₁ matrix of linear forms in x₁..x_{b₁}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AomotoMatrix {
    pub nvars: usize,
    pub matrix: SparseMatrix<MultiPoly>,
}

impl AomotoMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn to_dense(&self) -> Vec<Vec<MultiPoly>> {
        self.matrix.to_dense(self.nvars)
    }

    /// δ¹ at a point.
    pub fn eval(&self, a: &[Scalar]) -> SparseMatrix<Scalar> {
        self.matrix.eval(a)
    }
}

/// Entry (r, j) = Σ_i (e_i·e_j)_r x_i.
pub fn aomoto_matrix(a: &TwoStepAlgebra) -> AomotoMatrix {
    let n = a.b1;
    let mut m = SparseMatrix::new(a.b2, n);
    for j in 0..n {
        let mut col = vec![MultiPoly::zero(n); a.b2];
        for i in 0..n {
            let prod = a.product(i, j);
            for (r, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    col[r] = &col[r] + &MultiPoly::var(n, i).scale(c);
                }
            }
        }
        for (r, e) in col.into_iter().enumerate() {
            if !e.is_zero() {
                m.set(r, j, e);
            }
        }
    }
    AomotoMatrix { nvars: n, matrix: m }
}

/// b₁(A, a) = dim ker δ¹_a − rank δ⁰_a.
pub fn aomoto_b1(a: &TwoStepAlgebra, point: &[Scalar]) -> usize {
    if point.iter().all(|x| x.is_zero()) {
        return a.b1;
    }
    let m = aomoto_matrix(a).eval(point);
    a.b1 - rank_rational(&m) - 1
}

/// b₂(A, a) = b₂ − rank δ¹_a, valid when A³ = 0.
pub fn aomoto_b2(a: &TwoStepAlgebra, point: &[Scalar]) -> Result<usize> {
    if !a.top_degree_two {
        return invalid("b2(A,a) needs an algebra with top degree <= 2");
    }
    let m = aomoto_matrix(a).eval(point);
    Ok(a.b2 - rank_rational(&m))
}

/// Ideal of (b₁ − d)-minors of δ¹: for a ≠ 0, a ∈ V iff b₁(A,a) ≥ d.
pub fn resonance_ideal(a: &TwoStepAlgebra, d: usize) -> Result<Ideal> {
    if d < 1 || d > a.b1 {
        return invalid(format!("depth must be in 1..={}", a.b1));
    }
    let size = a.b1 - d;
    let m = aomoto_matrix(a);
    if size == 0 || size > m.rows().min(m.cols()) {
        return Ok(Ideal::new(a.b1, vec![]));
    }
    Ok(Ideal::new(a.b1, minors(&m.matrix, size, a.b1)?))
}

/// Linear subspace of A¹ spanned by independent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSubspaceParam {
    pub ambient: usize,
    #[serde(serialize_with = "ser_vectors")]
    pub vectors: Vec<Vec<Scalar>>,
}

fn ser_vectors<S: serde::Serializer>(v: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let r: Vec<String> = row.iter().map(crate::numeric::scalar_to_string).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl LinearSubspaceParam {
    pub fn new(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return invalid("vector length differs from the ambient dimension");
        }
        if rref(&vectors).1.len() != vectors.len() {
            return invalid("spanning vectors are linearly dependent");
        }
        Ok(LinearSubspaceParam { ambient, vectors })
    }

    pub fn line(v: &[i64]) -> Self {
        LinearSubspaceParam { ambient: v.len(), vectors: vec![v.iter().map(|&x| int(x)).collect()] }
    }

    /// Solution space of homogeneous linear equations (rows of coefficients).
    pub fn from_equations(ambient: usize, eqs: &[Vec<Scalar>]) -> Self {
        LinearSubspaceParam { ambient, vectors: nullspace(eqs, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Σ s_i v_i.
    pub fn point(&self, s: &[Scalar]) -> Vec<Scalar> {
        let mut p = vec![Scalar::zero(); self.ambient];
        for (si, v) in s.iter().zip(&self.vectors) {
            for (x, y) in p.iter_mut().zip(v) {
                *x += si * y;
            }
        }
        p
    }

    pub fn intersect(&self, o: &LinearSubspaceParam) -> LinearSubspaceParam {
        // equations of each: annihilators
        let mut eqs = nullspace(&self.vectors, self.ambient);
        eqs.extend(nullspace(&o.vectors, o.ambient));
        LinearSubspaceParam::from_equations(self.ambient, &eqs)
    }

    pub fn contains(&self, o: &LinearSubspaceParam) -> bool {
        let mut all = self.vectors.clone();
        all.extend(o.vectors.iter().cloned());
        rref(&all).1.len() == self.dim()
    }
}

/// True iff all (b₁ − d)-minors of δ¹ vanish identically on the subspace.
pub fn subspace_in_resonance(a: &TwoStepAlgebra, l: &LinearSubspaceParam, d: usize) -> Result<bool> {
    if l.ambient != a.b1 {
        return invalid("subspace lives in the wrong ambient space");
    }
    if d > a.b1 {
        return Ok(false);
    }
    let size = a.b1 - d;
    let m = aomoto_matrix(a);
    if size == 0 || size > m.rows().min(m.cols()) {
        return Ok(true);
    }
    let k = l.dim();
    // x_i ↦ Σ_t s_t v_t[i]
    let images: Vec<MultiPoly> =
        (0..a.b1).map(|i| MultiPoly::linear(&l.vectors.iter().map(|v| v[i].clone()).collect::<Vec<_>>())).collect();
    let images: Vec<MultiPoly> = if k == 0 { vec![MultiPoly::zero(1); a.b1] } else { images };
    let nv = k.max(1);
    let mut sub = SparseMatrix::new(m.rows(), m.cols());
    for (&(r, c), e) in m.matrix.entries() {
        let v = e.compose(&images);
        if !v.is_zero() {
            sub.set(r, c, v);
        }
    }
    Ok(minors(&sub, size, nv)?.is_empty())
}

/// Random rational with numerator in [−100, 100] and denominator in [1, 100].
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

fn random_nonzero_point(rng: &mut impl Rng, n: usize) -> Vec<Scalar> {
    loop {
        let p = random_point(rng, n);
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub trials: usize,
    /// (construction, point index, formula value, computed value)
    pub mismatches: Vec<(String, usize, usize, usize)>,
}

impl BettiReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares b₁ of A⊗B and A∗B at sampled points (a₁, a₂) with
/// b₁(A⊗B) = b₀(A,a₁)b₁(B,a₂) + b₁(A,a₁)b₀(B,a₂) and
/// b₁(A∗B) = b₁(A,a₁) + b₁(B,a₂) + [a₁ ≠ 0 and a₂ ≠ 0].
/// Trials cycle through the cases a₁ = 0, a₂ = 0, both nonzero, both zero.
pub fn betti_formula_check(a: &TwoStepAlgebra, b: &TwoStepAlgebra, trials: usize, seed: u64) -> Result<BettiReport> {
    if trials == 0 {
        return invalid("trials must be >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = tensor_algebra(a, b);
    let c = coproduct_algebra(a, b);
    let mut mismatches = Vec::new();
    for k in 0..trials {
        let a1 = if k % 4 == 0 || k % 4 == 3 { vec![Scalar::zero(); a.b1] } else { random_nonzero_point(&mut rng, a.b1) };
        let a2 = if k % 4 == 1 || k % 4 == 3 { vec![Scalar::zero(); b.b1] } else { random_nonzero_point(&mut rng, b.b1) };
        let z1 = a1.iter().all(|x| x.is_zero());
        let z2 = a2.iter().all(|x| x.is_zero());
        let (b1a, b1b) = (aomoto_b1(a, &a1), aomoto_b1(b, &a2));
        let (b0a, b0b) = (z1 as usize, z2 as usize);
        let pt: Vec<Scalar> = a1.iter().chain(a2.iter()).cloned().collect();
        let want_t = b0a * b1b + b1a * b0b;
        let got_t = aomoto_b1(&t, &pt);
        if want_t != got_t {
            mismatches.push(("tensor".into(), k, want_t, got_t));
        }
        let want_c = b1a + b1b + (!z1 && !z2) as usize;
        let got_c = aomoto_b1(&c, &pt);
        if want_c != got_c {
            mismatches.push(("coproduct".into(), k, want_c, got_c));
        }
    }
    Ok(BettiReport { trials, mismatches })
}

/// Checks b₂(A,a) = b₁(A,a) + χ at each nonzero point.
pub fn lemma_resonance2_check(a: &TwoStepAlgebra, points: &[Vec<Scalar>]) -> Result<Vec<usize>> {
    let chi = match a.chi() {
        Some(c) => c,
        None => return invalid("algebra is not flagged as having top degree <= 2"),
    };
    let mut bad = Vec::new();
    for (k, p) in points.iter().enumerate() {
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        let b2 = aomoto_b2(a, p)? as i64;
        let b1 = aomoto_b1(a, p) as i64;
        if b2 != b1 + chi {
            bad.push(k);
        }
    }
    Ok(bad)
}

pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_nonzero_point(&mut rng, n)).collect()
}

/// Printed resonance data for vP₄⁺ and vP₃.
pub mod golden {
    use super::*;

    /// Coordinates x12, x13, x23, x14, x24, x34.
    pub fn vp4_plus_delta1() -> Vec<Vec<Vec<(i64, usize)>>> {
        // each entry: list of (coefficient, variable)
        let (x12, x13, x23, x14, x24, x34) = (0, 1, 2, 3, 4, 5);
        let z = vec![];
        vec![
            vec![vec![(-1, x34)], z.clone(), z.clone(), z.clone(), z.clone(), vec![(1, x12)]],
            vec![vec![(-1, x13), (-1, x23)], vec![(1, x12), (-1, x23)], vec![(1, x12), (1, x13)], z.clone(), z.clone(), z.clone()],
            vec![z.clone(), vec![(-1, x24)], z.clone(), z.clone(), vec![(1, x13)], z.clone()],
            vec![z.clone(), z.clone(), vec![(-1, x14)], vec![(1, x23)], z.clone(), z.clone()],
            vec![vec![(-1, x14), (-1, x24)], z.clone(), z.clone(), vec![(1, x12), (-1, x24)], vec![(1, x12), (1, x14)], z.clone()],
            vec![z.clone(), vec![(-1, x14), (-1, x34)], z.clone(), vec![(1, x13), (-1, x34)], z.clone(), vec![(1, x13), (1, x14)]],
            vec![z.clone(), z.clone(), vec![(-1, x24), (-1, x34)], z.clone(), vec![(1, x23), (-1, x34)], vec![(1, x23), (1, x24)]],
        ]
    }

    pub fn vp4_plus_delta1_polys() -> Vec<Vec<MultiPoly>> {
        vp4_plus_delta1()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        e.into_iter().fold(MultiPoly::zero(6), |acc, (c, v)| &acc + &MultiPoly::var(6, v).scale(&int(c)))
                    })
                    .collect()
            })
            .collect()
    }

    /// The four cubics cutting out R¹₁(vP₄⁺).
    pub fn vp4_plus_equations() -> Vec<MultiPoly> {
        let x = |i: usize| MultiPoly::var(6, i);
        let (x12, x13, x23, x14, x24, x34) = (x(0), x(1), x(2), x(3), x(4), x(5));
        vec![
            &(&(&(&x12 * &x24) * &(&x13 + &x23)) + &(&(&x13 * &x34) * &(&x12 - &x23))) - &(&(&x24 * &x34) * &(&x12 + &x13)),
            &(&(&(&x12 * &x23) * &(&x14 + &x24)) + &(&(&x12 * &x34) * &(&x23 - &x14))) + &(&(&x14 * &x34) * &(&x23 + &x24)),
            &(&(&(&x13 * &x23) * &(&x14 + &x24)) + &(&(&x14 * &x24) * &(&x13 + &x23))) + &(&x34 * &(&(&x13 * &x23) - &(&x14 * &x24))),
            &(&x12 * &(&(&x13 * &x14) - &(&x23 * &x24))) + &(&x34 * &(&(&x13 * &x23) - &(&x14 * &x24))),
        ]
    }

    /// The 13 lines of R¹₂(vP₄⁺), basis e12, e13, e23, e14, e24, e34.
    pub fn vp4_plus_lines() -> Vec<LinearSubspaceParam> {
        [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
            [1, -1, 1, 0, 0, 0],
            [1, 0, 0, -1, 1, 0],
            [0, 1, 0, -1, 0, 1],
            [0, 0, 1, 0, -1, 1],
            [0, 1, -1, -1, 1, 0],
            [1, 0, 1, -1, 0, 1],
            [1, -1, 0, 0, 1, -1],
        ]
        .iter()
        .map(|v| LinearSubspaceParam::line(v))
        .collect()
    }

    /// Components of R¹₂(vP₃) from their equations; coordinates
    /// x12, x13, x23, x21, x31, x32.
    pub fn vp3_planes() -> Vec<LinearSubspaceParam> {
        let eq = |terms: &[(usize, i64)]| {
            let mut v = vec![int(0); 6];
            for &(i, c) in terms {
                v[i] += int(c);
            }
            v
        };
        let (x12, x13, x23, x21, x31, x32) = (0, 1, 2, 3, 4, 5);
        let systems = [
            vec![eq(&[(x12, 1), (x23, -1)]), eq(&[(x12, 1), (x32, 1)]), eq(&[(x12, 1), (x21, 1)])],
            vec![eq(&[(x13, 1), (x23, 1)]), eq(&[(x12, 1), (x32, 1)]), eq(&[(x21, 1), (x31, 1)])],
            vec![eq(&[(x13, 1), (x23, 1)]), eq(&[(x13, 1), (x32, -1)]), eq(&[(x13, 1), (x31, 1)])],
            vec![eq(&[(x12, 1), (x13, 1)]), eq(&[(x12, 1), (x21, 1)]), eq(&[(x12, 1), (x31, -1)])],
            vec![eq(&[(x12, 1), (x13, 1)]), eq(&[(x23, 1), (x21, 1)]), eq(&[(x31, 1), (x32, 1)])],
        ];
        systems.iter().map(|s| LinearSubspaceParam::from_equations(6, s)).collect()
    }

    /// x12 = −x21 = −x13 = x31 = x23 = −x32.
    pub fn vp3_line() -> LinearSubspaceParam {
        LinearSubspaceParam::line(&[1, -1, 1, -1, 1, -1])
    }
}

/// Points of V(I) for I the depth-1 ideal of vP₄⁺: x12, x13, x23, x24 are
/// random and x34, x14 are solved from the first two printed cubics, which
/// are linear in them. Returns only points whose δ¹ has rank ≤ 4.
pub fn sample_vp4_plus_depth1_points(a: &TwoStepAlgebra, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let (x12, x13, x23, x24) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        // x34 (x13(x12−x23) − x24(x12+x13)) = −x12 x24 (x13+x23)
        let den = &x13 * (&x12 - &x23) - &x24 * (&x12 + &x13);
        if den.is_zero() {
            continue;
        }
        let x34 = -(&x12 * &x24 * (&x13 + &x23)) / den;
        // x14 (x12 x23 − x12 x34 + x34(x23+x24)) = −x12 x23 x24 − x12 x34 x23
        let den2 = &x12 * &x23 - &x12 * &x34 + &x34 * (&x23 + &x24);
        if den2.is_zero() {
            continue;
        }
        let x14 = -(&x12 * &x23 * &x24 + &x12 * &x34 * &x23) / den2;
        let p = vec![x12, x13, x23, x14, x24, x34];
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        if aomoto_b1(a, &p) >= 1 {
            out.push(p);
        }
    }
    out
}

/// Compares two matrices of linear forms up to row permutation and row sign.
pub fn rows_match_up_to_sign(a: &[Vec<MultiPoly>], b: &[Vec<MultiPoly>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for ra in a {
        let neg: Vec<MultiPoly> = ra.iter().map(|e| -e).collect();
        for (k, rb) in b.iter().enumerate() {
            if !used[k] && (rb == ra || *rb == neg) {
                used[k] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Depth of a point: max d with b₁(A,a) ≥ d.
pub fn depth_at(a: &TwoStepAlgebra, p: &[Scalar]) -> usize {
    aomoto_b1(a, p)
}

/// Convenience: one in a field of scalars.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{algebra_family, AlgebraFamily};
    use crate::groebner::{krull_dimension, radical_membership};

    fn vp4p() -> TwoStepAlgebra {
        algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap()
    }

    #[test]
    fn small_aomoto_matrices() {
        let t = aomoto_matrix(&algebra_family(AlgebraFamily::Abelian(2)).unwrap());
        let d = t.to_dense();
        assert_eq!(d.len(), 1);
        let x = |i| MultiPoly::var(2, i);
        assert!(rows_match_up_to_sign(&d, &[vec![-x(1), x(0)]]));
        let f = aomoto_matrix(&algebra_family(AlgebraFamily::Free(2)).unwrap());
        assert_eq!((f.rows(), f.cols()), (0, 2));
    }

    #[test]
    fn vp4_plus_matrix_matches_printed() {
        let m = aomoto_matrix(&vp4p());
        assert!(rows_match_up_to_sign(&m.to_dense(), &golden::vp4_plus_delta1_polys()));
    }

    #[test]
    fn pointwise_betti() {
        let a = vp4p();
        assert_eq!(aomoto_b1(&a, &unit(6, 0)), 2);
        assert_eq!(aomoto_b1(&a, &vec![int(0); 6]), 6);
        let v3 = algebra_family(AlgebraFamily::BeerVP(3)).unwrap();
        for p in sample_points(6, 5, 3) {
            assert_eq!(aomoto_b1(&v3, &p), 1);
        }
        for p in sample_points(6, 5, 4) {
            assert_eq!(aomoto_b1(&a, &p), 0);
        }
    }

    #[test]
    fn golden_subspaces() {
        let a = vp4p();
        for l in golden::vp4_plus_lines() {
            assert!(subspace_in_resonance(&a, &l, 2).unwrap());
            assert!(!subspace_in_resonance(&a, &l, 3).unwrap());
        }
        let generic = LinearSubspaceParam::line(&[3, -7, 2, 5, 11, -1]);
        assert!(!subspace_in_resonance(&a, &generic, 2).unwrap());
        let v3 = algebra_family(AlgebraFamily::BeerVP(3)).unwrap();
        let line = golden::vp3_line();
        for p in golden::vp3_planes() {
            assert_eq!(p.dim(), 3);
            assert!(subspace_in_resonance(&v3, &p, 2).unwrap());
            assert!(p.contains(&line));
        }
        assert!(subspace_in_resonance(&v3, &line, 5).unwrap());
        assert!(resonance_ideal(&v3, 1).unwrap().is_zero());
    }

    #[test]
    fn betti_formulas() {
        let f1 = algebra_family(AlgebraFamily::Free(1)).unwrap();
        let r = betti_formula_check(&f1, &f1, 8, 1).unwrap();
        assert!(r.holds(), "{:?}", r);
        let r = betti_formula_check(&vp4p(), &algebra_family(AlgebraFamily::Abelian(2)).unwrap(), 12, 2).unwrap();
        assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn torus_lemma() {
        let mut t = algebra_family(AlgebraFamily::Abelian(2)).unwrap();
        assert!(lemma_resonance2_check(&t, &sample_points(2, 3, 0)).is_err());
        t.top_degree_two = true;
        assert!(lemma_resonance2_check(&t, &sample_points(2, 10, 0)).unwrap().is_empty());
    }

    #[test]
    fn vp4_plus_ideals() {
        let a = vp4p();
        let t = std::time::Instant::now();
        let i1 = resonance_ideal(&a, 1).unwrap();
        assert_eq!(krull_dimension(&i1).unwrap(), 4);
        eprintln!("depth1 {:?}", t.elapsed());
        for f in golden::vp4_plus_equations() {
            assert!(radical_membership(&f, &i1).unwrap());
        }
        eprintln!("radical {:?}", t.elapsed());
        let i2 = resonance_ideal(&a, 2).unwrap();
        assert_eq!(krull_dimension(&i2).unwrap(), 1);
        eprintln!("depth2 {:?}", t.elapsed());
    }
}
