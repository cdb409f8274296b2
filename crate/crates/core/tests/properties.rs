use grlie::alexander::{
    alexander_gr_dims, alexander_presentation, alexander_presentation_with, gr_hilbert, graded_hilbert,
    koszul_differential, koszul_lift_linear_algebra, linearized_gr_dims, linearized_presentation, ElimConfig,
};
use grlie::cohomology::{
    algebra_family, coproduct_algebra, poincare_closed, presentation_algebra, tensor_algebra, AlgebraFamily,
    PoincareFamily, TwoStepAlgebra,
};
use grlie::combinatorics::{
    bell, factorial, lcs_ranks_mobius, lcs_ranks_pbw, lcs_ranks_powersum, special_number, witt, SpecialKind,
};
use grlie::groebner::{buchberger, ideal_membership, krull_dimension, Ideal, MonomialOrder};
use grlie::groups::{direct_product, family, fox_identity_defect, fox_row, free_product, Family, GroupPresentation, Word};
use grlie::lie::{chen_dims, graded_dims, holonomy_presentation, HallBasis, DEFAULT_HALL_BUDGET};
use grlie::numeric::{
    bareiss_det, det_laplace, int, random_primes, rank_mod_p, rank_rational, rat, series_expand, LaurentPoly, Mono,
    MultiPoly, PrimeField, Scalar, SparseMatrix, UniPoly, UniRationalFunction,
};
use grlie::resonance::{aomoto_b1, golden, random_scalar, resonance_ideal, sample_points};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn primes() -> Vec<PrimeField> {
    ElimConfig::with_seed(3).primes
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -3i64..=3), 1..5).prop_map(|terms| {
        MultiPoly::from_terms(3, terms.into_iter().map(|((a, b, c), k)| (Mono::from_exps(&[a, b, c]), int(k))))
    })
}

fn uni(max_len: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 1..max_len).prop_map(|c| UniPoly::from_ints(&c))
}

// numeric

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
        }
        // normalized: gcd(numer, denom) = 1 and denom > 0
        let s = &a + &b;
        prop_assert!(*s.denom() > num_bigint::BigInt::zero());
        prop_assert!(num_integer::Integer::gcd(s.numer(), s.denom()).is_one());
    }

    #[test]
    fn series_of_product_is_convolution(n1 in uni(4), n2 in uni(4), d1 in uni(4), d2 in uni(4), c1 in 1i64..=3, c2 in 1i64..=3) {
        let fix = |d: &UniPoly, c: i64| {
            let mut v: Vec<Scalar> = d.coeffs().to_vec();
            if v.is_empty() { v.push(int(0)); }
            v[0] = int(c);
            UniPoly::new(v)
        };
        let (d1, d2) = (fix(&d1, c1), fix(&d2, c2));
        let f = UniRationalFunction::new(n1.clone(), d1.clone()).unwrap();
        let g = UniRationalFunction::new(n2.clone(), d2.clone()).unwrap();
        let fg = UniRationalFunction::new(&n1 * &n2, &d1 * &d2).unwrap();
        let (a, b, ab) = (series_expand(&f, 8).unwrap(), series_expand(&g, 8).unwrap(), series_expand(&fg, 8).unwrap());
        for k in 0..=8 {
            let conv = (0..=k).fold(Scalar::zero(), |s, i| s + &a[i] * &b[k - i]);
            prop_assert_eq!(&ab[k], &conv);
        }
    }

    #[test]
    fn modular_rank_matches_rational(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = SparseMatrix::new(rows, cols);
        // low-rank structure half of the time
        let r = rng.gen_range(1..=rows.min(cols));
        let u: Vec<Vec<i64>> = (0..rows).map(|_| (0..r).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let v: Vec<Vec<i64>> = (0..r).map(|_| (0..cols).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let low = seed % 2 == 0;
        for i in 0..rows {
            for j in 0..cols {
                let x = if low { (0..r).map(|k| u[i][k] * v[k][j]).sum() } else { rng.gen_range(-10..=10) };
                if x != 0 {
                    m.set(i, j, int(x));
                }
            }
        }
        let ps = random_primes(&mut rng, 2);
        prop_assert_ne!(ps[0].p(), ps[1].p());
        let q = rank_rational(&m);
        for p in &ps {
            prop_assert_eq!(rank_mod_p(&m, p), Some(q));
        }
    }

    #[test]
    fn laplace_equals_bareiss(entries in prop::collection::vec(poly3(), 16)) {
        let a: Vec<Vec<MultiPoly>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        prop_assert_eq!(det_laplace(&a, 3), bareiss_det(&a, 3));
    }
}

// combinatorics

#[test]
fn stirling_row_sums() {
    for n in 0..=10i64 {
        let c: num_bigint::BigInt = (0..=n).map(|k| special_number(SpecialKind::Stirling1, n, k).unwrap()).sum();
        assert_eq!(c, factorial(n as u64));
        let s: num_bigint::BigInt = (0..=n).map(|k| special_number(SpecialKind::Stirling2, n, k).unwrap()).sum();
        assert_eq!(s, bell(n as u64));
    }
}

#[test]
fn three_way_agreement_for_families() {
    for fam in [PoincareFamily::P, PoincareFamily::VP, PoincareFamily::VPPlus] {
        for n in 2..=6 {
            let b = poincare_closed(fam, n).unwrap().int_coeffs().unwrap()[1..].to_vec();
            let m = lcs_ranks_mobius(&b, 10).unwrap();
            assert_eq!(m.values(), lcs_ranks_pbw(&b, 10).unwrap().values(), "{:?} {}", fam, n);
            assert_eq!(m.values(), lcs_ranks_powersum(&b, 10).unwrap().values(), "{:?} {}", fam, n);
        }
    }
}

#[test]
fn witt_counts_hall_basis() {
    for n in 1..=8usize {
        let hb = HallBasis::new(n, 6, DEFAULT_HALL_BUDGET).unwrap();
        for k in 1..=6 {
            assert_eq!(hb.count(k) as i64, witt(n as u64, k as u64), "n={} k={}", n, k);
        }
    }
}

// groups

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..4, prop_oneof![Just(1i32), Just(-1i32)]), 1..12).prop_map(Word::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fox_identity_on_words(w in word()) {
        let exps: Vec<i32> = w.exponent_sums(4).iter().map(|&e| e as i32).collect();
        let want = LaurentPoly::monomial(4, exps, Scalar::one()).sub(&LaurentPoly::one(4));
        prop_assert_eq!(fox_identity_defect(&fox_row(&w, 4)), want);
    }
}

fn builtin() -> Vec<GroupPresentation> {
    let mut v = vec![family(Family::PBar4).unwrap(), family(Family::Integers).unwrap()];
    for n in 2..=4 {
        v.push(family(Family::Free(n)).unwrap());
        v.push(family(Family::Abelian(n)).unwrap());
        v.push(family(Family::VP(n)).unwrap());
    }
    for n in 2..=6 {
        v.push(family(Family::VPPlus(n)).unwrap());
    }
    v
}

#[test]
fn fox_identity_on_builtin_relators() {
    for g in builtin() {
        for r in g.relators() {
            assert!(fox_identity_defect(&fox_row(r, g.ngens())).is_zero());
        }
    }
}

#[test]
fn relator_counts_equal_b2() {
    for n in 3..=6 {
        let g = family(Family::VPPlus(n)).unwrap();
        let s = special_number(SpecialKind::Stirling2, n as i64, n as i64 - 2).unwrap();
        assert_eq!(num_bigint::BigInt::from(g.relators().len()), s);
        assert_eq!(algebra_family(AlgebraFamily::BeerVPPlus(n)).unwrap().b2, g.relators().len());
    }
    for n in 3..=4 {
        let g = family(Family::VP(n)).unwrap();
        assert_eq!(algebra_family(AlgebraFamily::BeerVP(n)).unwrap().b2, g.relators().len());
    }
    let g = family(Family::PBar4).unwrap();
    assert_eq!(presentation_algebra(&g, true).unwrap().b2, g.relators().len());
}

fn relator_strings(g: &GroupPresentation) -> Vec<String> {
    let mut v: Vec<String> = g.relators().iter().map(|r| format!("{:?}", r)).collect();
    v.sort();
    v
}

#[test]
fn products_are_associative() {
    let (a, b, c) = (family(Family::Free(2)).unwrap(), family(Family::Abelian(2)).unwrap(), family(Family::VPPlus(3)).unwrap());
    let l = free_product(&free_product(&a, &b), &c);
    let r = free_product(&a, &free_product(&b, &c));
    assert_eq!(l.ngens(), r.ngens());
    assert_eq!(l.relators(), r.relators());
    let l = direct_product(&direct_product(&a, &b), &c);
    let r = direct_product(&a, &direct_product(&b, &c));
    assert_eq!(l.ngens(), r.ngens());
    assert_eq!(relator_strings(&l), relator_strings(&r));
}

// cohomology

#[test]
fn euler_characteristic_of_vp_nonzero() {
    for n in 2..=7 {
        let p = poincare_closed(PoincareFamily::VP, n).unwrap();
        assert!(!p.eval(&int(-1)).is_zero(), "n = {}", n);
    }
}

fn algebras() -> Vec<TwoStepAlgebra> {
    vec![
        algebra_family(AlgebraFamily::Free(2)).unwrap(),
        algebra_family(AlgebraFamily::Abelian(3)).unwrap(),
        algebra_family(AlgebraFamily::BeerVPPlus(3)).unwrap(),
        algebra_family(AlgebraFamily::Arnold(3)).unwrap(),
        presentation_algebra(&family(Family::PBar4).unwrap(), true).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn product_betti_numbers(i in 0usize..5, j in 0usize..5) {
        let all = algebras();
        let (a, b) = (&all[i], &all[j]);
        let t = tensor_algebra(a, b);
        let c = coproduct_algebra(a, b);
        prop_assert_eq!(t.b1, a.b1 + b.b1);
        prop_assert_eq!(c.b1, a.b1 + b.b1);
        prop_assert_eq!(c.b2, a.b2 + b.b2);
        prop_assert_eq!(t.b2, a.b2 + a.b1 * b.b1 + b.b2);
    }
}

// groebner

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn buchberger_is_idempotent(gens in prop::collection::vec(poly3(), 1..4)) {
        let ord = MonomialOrder::grevlex(3);
        let gb = buchberger(&gens, 3, &ord).unwrap();
        prop_assert_eq!(&buchberger(&gb, 3, &ord).unwrap(), &gb);
        let ideal = Ideal::new(3, gens.clone());
        for g in &gens {
            prop_assert!(ideal_membership(g, &ideal).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_evaluation(
        gens in prop::collection::vec(poly3(), 1..3),
        mult in prop::collection::vec(poly3(), 2),
        pt in prop::collection::vec(-4i64..=4, 3),
    ) {
        // shift the generators so that pt is a common zero
        let p: Vec<Scalar> = pt.iter().map(|&x| int(x)).collect();
        let gens: Vec<MultiPoly> = gens.iter().map(|g| g - &MultiPoly::constant(3, g.eval(&p))).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(3, gens.clone());
        let f = gens.iter().zip(&mult).fold(MultiPoly::zero(3), |s, (g, h)| &s + &(g * h));
        prop_assert!(ideal_membership(&f, &ideal).unwrap());
        prop_assert!(f.eval(&p).is_zero());
        let unit = &f + &MultiPoly::one(3);
        prop_assert!(!ideal_membership(&unit, &ideal).unwrap());
    }
}

#[test]
fn krull_dimension_extremes() {
    for n in 1..=5 {
        assert_eq!(krull_dimension(&Ideal::new(n, vec![])).unwrap(), n as i64);
        assert_eq!(krull_dimension(&Ideal::new(n, vec![MultiPoly::one(n)])).unwrap(), -1);
    }
}

// lie

#[test]
fn holonomy_dims_match_koszul_duality() {
    let cases = [
        (AlgebraFamily::BeerVPPlus(3), PoincareFamily::VPPlus, 3, 6),
        (AlgebraFamily::BeerVPPlus(4), PoincareFamily::VPPlus, 4, 5),
        (AlgebraFamily::BeerVP(3), PoincareFamily::VP, 3, 6),
        (AlgebraFamily::BeerVP(4), PoincareFamily::VP, 4, 4),
        (AlgebraFamily::Arnold(4), PoincareFamily::P, 4, 6),
    ];
    for (af, pf, n, k) in cases {
        let a = algebra_family(af).unwrap();
        let dims = graded_dims(&holonomy_presentation(&a), k, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        let b = poincare_closed(pf, n).unwrap().int_coeffs().unwrap()[1..].to_vec();
        assert_eq!(dims, lcs_ranks_pbw(&b, k).unwrap().values(), "{:?}", af);
    }
}

#[test]
fn chen_bounded_by_lcs() {
    for af in [AlgebraFamily::BeerVPPlus(4), AlgebraFamily::BeerVP(3), AlgebraFamily::Arnold(4)] {
        let l = holonomy_presentation(&algebra_family(af).unwrap());
        let phi = graded_dims(&l, 5, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        let theta = chen_dims(&l, 5, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        for k in 0..5 {
            assert!(theta[k] <= phi[k], "{:?} k={}", af, k + 1);
            if k < 3 {
                assert_eq!(theta[k], phi[k], "{:?} k={}", af, k + 1);
            }
        }
    }
}

#[test]
fn holonomy_chen_matches_linearized_module() {
    let cfg = ElimConfig::with_seed(5);
    for (g, a) in [
        (family(Family::VPPlus(4)).unwrap(), algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap()),
        (family(Family::VP(3)).unwrap(), algebra_family(AlgebraFamily::BeerVP(3)).unwrap()),
        (family(Family::Free(3)).unwrap(), algebra_family(AlgebraFamily::Free(3)).unwrap()),
    ] {
        let lin = graded_hilbert(&linearized_presentation(&alexander_presentation(&g).unwrap()).unwrap(), 3, &cfg).unwrap();
        let th = chen_dims(&holonomy_presentation(&a), 5, DEFAULT_HALL_BUDGET, &primes()).unwrap().values();
        assert_eq!(lin, th[1..].to_vec());
    }
}

// alexander

#[test]
fn koszul_complex_squares_to_zero() {
    for n in 2..=8 {
        for p in 2..=n {
            let a = koszul_differential(n, p - 1).unwrap();
            let b = koszul_differential(n, p).unwrap();
            for c in 0..b.cols() {
                for r in 0..a.rows() {
                    let mut s = MultiPoly::zero(n);
                    for k in 0..a.cols() {
                        if let (Some(x), Some(y)) = (a.get(r, k), b.get(k, c)) {
                            s = &s + &(x * y);
                        }
                    }
                    assert!(s.is_zero());
                }
            }
        }
    }
}

fn one_formal() -> Vec<(&'static str, GroupPresentation)> {
    vec![
        ("vP3", family(Family::VP(3)).unwrap()),
        ("vP3+", family(Family::VPPlus(3)).unwrap()),
        ("F3", family(Family::Free(3)).unwrap()),
        ("Z^3", family(Family::Abelian(3)).unwrap()),
        ("Pbar4", family(Family::PBar4).unwrap()),
    ]
}

#[test]
fn linearized_bounds_gr() {
    let cfg = ElimConfig::with_seed(1);
    for (name, g) in one_formal() {
        let m = alexander_presentation(&g).unwrap();
        let gr = gr_hilbert(&m, 4, &cfg).unwrap();
        let lin = graded_hilbert(&linearized_presentation(&m).unwrap(), 4, &cfg).unwrap();
        assert_eq!(gr, lin, "{}", name);
    }
    let g = family(Family::VPPlus(4)).unwrap();
    let m = alexander_presentation(&g).unwrap();
    let gr = gr_hilbert(&m, 4, &cfg).unwrap();
    let lin = graded_hilbert(&linearized_presentation(&m).unwrap(), 4, &cfg).unwrap();
    assert!(gr.iter().zip(&lin).all(|(a, b)| a <= b));
}

#[test]
fn theta2_is_phi2() {
    let cfg = ElimConfig::with_seed(2);
    for (name, g) in one_formal().into_iter().chain([("vP4+", family(Family::VPPlus(4)).unwrap())]) {
        if g.relators().is_empty() && g.ngens() < 2 {
            continue;
        }
        let a = presentation_algebra(&g, false).unwrap();
        let gr = gr_hilbert(&alexander_presentation(&g).unwrap(), 0, &cfg).unwrap();
        assert_eq!(gr[0] as usize, a.b1 * (a.b1 - 1) / 2 - a.b2, "{}", name);
    }
}

#[test]
fn theta_additive_under_direct_products() {
    let cfg = ElimConfig::with_seed(4);
    let th = |g: &GroupPresentation| gr_hilbert(&alexander_presentation(g).unwrap(), 6, &cfg).unwrap();
    let z = family(Family::Integers).unwrap();
    let z2 = family(Family::Abelian(2)).unwrap();
    let f2 = family(Family::Free(2)).unwrap();
    let pbar = family(Family::PBar4).unwrap();
    let sum = |a: Vec<i64>, b: Vec<i64>| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>();
    assert_eq!(th(&direct_product(&z2, &f2)), sum(th(&z2), th(&f2)));
    // θ(ℤ) = 0
    assert_eq!(th(&direct_product(&pbar, &z)), th(&pbar));
}

#[test]
fn lift_choice_does_not_matter() {
    let cfg = ElimConfig::with_seed(6);
    for g in [family(Family::VPPlus(4)).unwrap(), family(Family::PBar4).unwrap(), family(Family::VP(3)).unwrap()] {
        let a = gr_hilbert(&alexander_presentation(&g).unwrap(), 4, &cfg).unwrap();
        let b = gr_hilbert(&alexander_presentation_with(&g, koszul_lift_linear_algebra).unwrap(), 4, &cfg).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn cycle_route_agrees_with_koszul_route() {
    let cfg = ElimConfig::with_seed(7);
    for g in [family(Family::VPPlus(4)).unwrap(), family(Family::PBar4).unwrap(), family(Family::VP(3)).unwrap()] {
        let m = alexander_presentation(&g).unwrap();
        assert_eq!(gr_hilbert(&m, 4, &cfg).unwrap(), alexander_gr_dims(&g, 4, &cfg).unwrap());
        let lin = graded_hilbert(&linearized_presentation(&m).unwrap(), 4, &cfg).unwrap();
        assert_eq!(lin, linearized_gr_dims(&g, 4, &cfg).unwrap());
    }
}

#[test]
fn vp3_and_its_pbar4_model_have_equal_chen_ranks() {
    let cfg = ElimConfig::with_seed(8);
    let model = free_product(&family(Family::PBar4).unwrap(), &family(Family::Integers).unwrap());
    let a = gr_hilbert(&alexander_presentation(&family(Family::VP(3)).unwrap()).unwrap(), 6, &cfg).unwrap();
    let b = gr_hilbert(&alexander_presentation(&model).unwrap(), 6, &cfg).unwrap();
    assert_eq!(a, b);
}

// resonance

fn in_variety(ideal: &Ideal, p: &[Scalar]) -> bool {
    ideal.generators().iter().all(|g| g.eval(p).is_zero())
}

#[test]
fn minors_detect_depth() {
    let mut cases: Vec<(TwoStepAlgebra, Vec<Vec<Scalar>>)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut on = |subs: &[grlie::resonance::LinearSubspaceParam], count: usize| -> Vec<Vec<Scalar>> {
        (0..count)
            .map(|k| {
                let l = &subs[k % subs.len()];
                let s: Vec<Scalar> = (0..l.dim()).map(|_| random_scalar(&mut rng)).collect();
                l.point(&s)
            })
            .collect()
    };
    let vp4 = algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap();
    let mut p4 = on(&golden::vp4_plus_lines(), 100);
    p4.extend(grlie::resonance::sample_vp4_plus_depth1_points(&vp4, 50, 10));
    p4.extend(sample_points(6, 50, 11));
    cases.push((vp4, p4));
    let vp3 = algebra_family(AlgebraFamily::BeerVP(3)).unwrap();
    let mut p3 = on(&golden::vp3_planes(), 100);
    p3.extend(on(&[golden::vp3_line()], 50));
    p3.extend(sample_points(6, 50, 12));
    cases.push((vp3, p3));
    let arn = algebra_family(AlgebraFamily::Arnold(4)).unwrap();
    let mut pa = sample_points(6, 100, 13);
    // local components of P4: {x_ij + x_ik + x_jk = 0} on a triangle
    for k in 0..100 {
        let (a, b) = (random_scalar(&mut rng), random_scalar(&mut rng));
        let mut p = vec![Scalar::zero(); 6];
        let tri = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]][k % 4];
        p[tri[0]] = a.clone();
        p[tri[1]] = b.clone();
        p[tri[2]] = -(a + b);
        pa.push(p);
    }
    cases.push((arn, pa));
    for (a, pts) in &cases {
        let ideals: Vec<Ideal> = (1..=3).map(|d| resonance_ideal(a, d).unwrap()).collect();
        for p in pts.iter().filter(|p| p.iter().any(|x| !x.is_zero())) {
            let b1 = aomoto_b1(a, p);
            for d in 1..=3 {
                let inside = in_variety(&ideals[d - 1], p);
                assert_eq!(inside, b1 >= d, "d={} b1={}", d, b1);
                if d < 3 && in_variety(&ideals[d], p) {
                    assert!(inside);
                }
            }
        }
    }
}
