//! Alexander invariants from Fox calculus, their truncated associated
//! graded modules, linearizations, and Chen-rank series.
//!
//! After the substitution t_i = 1 + x_i the Koszul resolution of ℂ over
//! S = ℂ[x_1..x_n] has linear differentials, and the Alexander invariant of
//! a commutator-relators group is presented by the columns of δ₃ together
//! with lifts ν_r of the Fox rows through δ₂.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{invalid, Error, Result};
use crate::groups::{fox_row, is_commutator_relators, GroupPresentation};
use crate::numeric::sparse::{normalize_row, Echelon, Row};
use crate::numeric::{int, Mono, MultiPoly, PrimeField, Scalar, SparseMatrix};

/// Where a presentation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Alexander,
    Linearized,
    Koszul,
}

/// Kind of a relation column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColumnKind {
    /// A column of δ₃.
    Koszul,
    /// A lift ν_r of a Fox row.
    Relator,
}

/// Cokernel presentation S^cols → S^q.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub nvars: usize,
    pub q: usize,
    pub columns: Vec<Vec<MultiPoly>>,
    pub kinds: Vec<ColumnKind>,
    pub provenance: Provenance,
}

/// θ_2, θ_3, …: Chen ranks indexed from 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaSeries {
    pub values: Vec<i64>,
}

impl ThetaSeries {
    pub fn from_gr(dims: &[i64]) -> Self {
        ThetaSeries { values: dims.to_vec() }
    }

    /// θ_k, k ≥ 2.
    pub fn theta(&self, k: usize) -> Option<i64> {
        k.checked_sub(2).and_then(|i| self.values.get(i).copied())
    }

    pub fn max_k(&self) -> usize {
        self.values.len() + 1
    }
}

/// Knobs for large eliminations.
#[derive(Clone, Debug)]
pub struct ElimConfig {
    pub primes: Vec<PrimeField>,
    /// Upper bound on rows × columns of a single truncated elimination
    /// (counted in units of 10^6 cells).
    pub cell_budget_millions: u64,
}

impl ElimConfig {
    pub fn with_seed(seed: u64) -> Self {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_a1e8);
        ElimConfig { primes: crate::numeric::random_primes(&mut rng, 2), cell_budget_millions: 5_000 }
    }
}

impl Default for ElimConfig {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

/// k-subsets of 0..n in lexicographic order, the basis of Λ^k.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::numeric::subsets(n, k)
}

fn wedge_index(n: usize, k: usize) -> HashMap<Vec<usize>, usize> {
    wedge_basis(n, k).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// δ_p: Λ^p ⊗ S → Λ^{p−1} ⊗ S, δ(e_S) = Σ_{i∈S} (−1)^{pos(i,S)} x_i e_{S∖i}.
pub fn koszul_differential(n: usize, p: usize) -> Result<SparseMatrix<MultiPoly>> {
    if p < 1 || p > n {
        return invalid(format!("Koszul degree {} out of range for n = {}", p, n));
    }
    let src = wedge_basis(n, p);
    let tgt = wedge_index(n, p - 1);
    let mut m = SparseMatrix::new(tgt.len(), src.len());
    for (c, s) in src.iter().enumerate() {
        for (pos, &i) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(pos);
            let x = MultiPoly::var(n, i);
            m.set(tgt[&rest], c, if pos % 2 == 0 { x } else { -x });
        }
    }
    Ok(m)
}

/// δ₂ applied to a vector over Λ² (lex pair order).
pub fn apply_delta2(n: usize, w: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut v = vec![MultiPoly::zero(n); n];
    for (idx, s) in wedge_basis(n, 2).iter().enumerate() {
        if w[idx].is_zero() {
            continue;
        }
        let (i, j) = (s[0], s[1]);
        v[j] = &v[j] + &(&MultiPoly::var(n, i) * &w[idx]);
        v[i] = &v[i] - &(&MultiPoly::var(n, j) * &w[idx]);
    }
    v
}

/// δ₁(v) = Σ v_i x_i.
pub fn apply_delta1(v: &[MultiPoly]) -> MultiPoly {
    let n = v.len();
    let mut s = MultiPoly::zero(n);
    for (i, vi) in v.iter().enumerate() {
        s = &s + &(vi * &MultiPoly::var(n, i));
    }
    s
}

fn check_cycle(v: &[MultiPoly]) -> Result<()> {
    if !apply_delta1(v).is_zero() {
        return Err(Error::NotCycle("Σ v_i x_i ≠ 0".into()));
    }
    if v.iter().any(|p| !p.constant_term().is_zero()) {
        return Err(Error::NotCycle("constant term present".into()));
    }
    Ok(())
}

/// Preimage under δ₂ through the Euler homotopy: for the homogeneous piece
/// v^{(d)} of polynomial degree d, contribute d(v^{(d)})/(d+1), where
/// d(f e_j) = Σ_i ∂f/∂x_i e_i∧e_j. Since ι_E d + d ι_E multiplies a form
/// of polynomial degree d and form degree 1 by d + 1, δ₂ of the result is v.
pub fn koszul_lift(v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let n = v.len();
    check_cycle(v)?;
    let idx = wedge_index(n, 2);
    let mut w = vec![MultiPoly::zero(n); idx.len()];
    for (j, vj) in v.iter().enumerate() {
        for (m, c) in vj.terms() {
            let d = m.degree();
            let scale = c / Scalar::from_integer((d + 1).into());
            for i in m.support() {
                if i == j {
                    continue;
                }
                let mut dm = *m;
                dm.set_exp(i, m.exp(i) - 1);
                let coef = &scale * Scalar::from_integer(m.exp(i).into());
                // e_i ∧ e_j
                let (key, sign) = if i < j { (vec![i, j], 1) } else { (vec![j, i], -1) };
                let term = MultiPoly::monomial(n, dm, if sign > 0 { coef } else { -coef });
                let k = idx[&key];
                w[k] = &w[k] + &term;
            }
        }
    }
    let check = apply_delta2(n, &w);
    if check.iter().zip(v).any(|(a, b)| a != b) {
        return Err(Error::NotCycle("lift postcondition failed".into()));
    }
    Ok(w)
}

/// A second preimage under δ₂, found degree by degree by exact linear
/// algebra (free unknowns set to zero). Differs from [`koszul_lift`] by
/// an element of ker δ₂.
pub fn koszul_lift_linear_algebra(v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let n = v.len();
    check_cycle(v)?;
    let pairs = wedge_basis(n, 2);
    let mut w = vec![MultiPoly::zero(n); pairs.len()];
    let maxd = v.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    for d in 1..=maxd {
        let src_monos = Mono::all_of_degree(n, d - 1);
        let tgt_monos = Mono::all_of_degree(n, d);
        let tgt_idx: HashMap<Mono, usize> = tgt_monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let nrow = n * tgt_monos.len();
        let ncol = pairs.len() * src_monos.len();
        // augmented system A u = b, dense rational
        let mut a = vec![vec![Scalar::zero(); ncol + 1]; nrow];
        for (pi, s) in pairs.iter().enumerate() {
            let (i, j) = (s[0], s[1]);
            for (mi, m) in src_monos.iter().enumerate() {
                let col = pi * src_monos.len() + mi;
                // δ₂(m e_ij) = x_i m e_j − x_j m e_i
                a[j * tgt_monos.len() + tgt_idx[&m.mul(&Mono::var(i))]][col] += int(1);
                a[i * tgt_monos.len() + tgt_idx[&m.mul(&Mono::var(j))]][col] -= int(1);
            }
        }
        let mut any = false;
        for (j, vj) in v.iter().enumerate() {
            for (m, c) in vj.terms() {
                if m.degree() == d {
                    a[j * tgt_monos.len() + tgt_idx[m]][ncol] = c.clone();
                    any = true;
                }
            }
        }
        if !any {
            continue;
        }
        let sol = solve_particular(a, ncol).ok_or_else(|| Error::NotCycle("no δ₂-preimage".into()))?;
        for (col, val) in sol.into_iter().enumerate() {
            if !val.is_zero() {
                let (pi, mi) = (col / src_monos.len(), col % src_monos.len());
                w[pi] = &w[pi] + &MultiPoly::monomial(n, src_monos[mi], val);
            }
        }
    }
    let check = apply_delta2(n, &w);
    if check.iter().zip(v).any(|(a, b)| a != b) {
        return Err(Error::NotCycle("lift postcondition failed".into()));
    }
    Ok(w)
}

/// Reduced row echelon solve of an augmented system; free variables zero.
fn solve_particular(mut a: Vec<Vec<Scalar>>, ncol: usize) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncol {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..=ncol {
                    let t = &a[r][k] * &f;
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[ncol].is_zero()) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); ncol];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = a[i][ncol].clone();
    }
    Some(sol)
}

/// Fox rows of G, cleared by t^{−min} and substituted t = 1 + x. Each row
/// lies in ker δ₁ with zero constant term.
pub fn fox_rows_polynomial(g: &GroupPresentation) -> Result<Vec<Vec<MultiPoly>>> {
    if !is_commutator_relators(g) {
        return invalid("Alexander invariant requires a commutator-relators presentation");
    }
    let n = g.ngens();
    if n > crate::numeric::MAX_VARS {
        return Err(Error::Budget(format!("{} generators exceed the polynomial variable limit", n)));
    }
    let mut out = Vec::new();
    for r in g.relators() {
        let row = fox_row(r, n);
        // componentwise minimum over the whole row
        let mut mins = vec![0i32; n];
        for e in &row {
            if e.is_zero() {
                continue;
            }
            for (k, v) in e.min_exponents().into_iter().enumerate() {
                mins[k] = mins[k].min(v);
            }
        }
        let shift: Vec<i32> = mins.iter().map(|&m| -m).collect();
        let poly: Vec<MultiPoly> = row
            .iter()
            .map(|e| e.shift(&shift).substitute_one_plus_x().expect("cleared row has non-negative exponents"))
            .collect();
        check_cycle(&poly).map_err(|e| Error::NotCycle(format!("Fox row: {}", e)))?;
        out.push(poly);
    }
    Ok(out)
}

/// Presentation [δ₃ | ν] of the Alexander invariant.
pub fn alexander_presentation(g: &GroupPresentation) -> Result<ModulePresentation> {
    alexander_presentation_with(g, koszul_lift)
}

pub fn alexander_presentation_with(
    g: &GroupPresentation,
    lift: fn(&[MultiPoly]) -> Result<Vec<MultiPoly>>,
) -> Result<ModulePresentation> {
    let n = g.ngens();
    if n < 2 {
        return invalid("Alexander invariant needs at least two generators");
    }
    let rows = fox_rows_polynomial(g)?;
    let q = n * (n - 1) / 2;
    let mut columns = Vec::new();
    let mut kinds = Vec::new();
    if n >= 3 {
        let d3 = koszul_differential(n, 3)?;
        for c in 0..d3.cols() {
            columns.push((0..q).map(|r| d3.get(r, c).cloned().unwrap_or_else(|| MultiPoly::zero(n))).collect());
            kinds.push(ColumnKind::Koszul);
        }
    }
    for row in &rows {
        let nu = lift(row)?;
        if nu.iter().all(|p| p.is_zero()) {
            continue;
        }
        columns.push(nu);
        kinds.push(ColumnKind::Relator);
    }
    Ok(ModulePresentation { nvars: n, q, columns, kinds, provenance: Provenance::Alexander })
}

/// The linear-part truncation: δ₃ columns pass unchanged; each ν column
/// keeps its constant part, which is the image of the quadratic part of the
/// relator in Λ². Relators whose ν has no constant part do not contribute.
pub fn linearized_presentation(m: &ModulePresentation) -> Result<ModulePresentation> {
    if m.provenance != Provenance::Alexander {
        return invalid("linearization needs an Alexander presentation");
    }
    let mut columns = Vec::new();
    let mut kinds = Vec::new();
    for (col, &kind) in m.columns.iter().zip(&m.kinds) {
        let new: Vec<MultiPoly> = match kind {
            ColumnKind::Koszul => col.clone(),
            ColumnKind::Relator => col.iter().map(|p| p.homogeneous_part(0)).collect(),
        };
        if new.iter().any(|p| !p.is_zero()) {
            columns.push(new);
            kinds.push(kind);
        }
    }
    Ok(ModulePresentation { nvars: m.nvars, q: m.q, columns, kinds, provenance: Provenance::Linearized })
}

fn column_degree(col: &[MultiPoly]) -> Option<u32> {
    col.iter().filter_map(|p| p.min_degree()).min()
}

fn binom_usize(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64).to_usize().expect("binomial fits usize")
}

/// dim S_k for S in n variables.
pub fn dim_sym(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    binom_usize(k + n - 1, n - 1)
}

/// Monomial ↦ index tables for degrees 0..=dmax.
struct MonoTable {
    index: Vec<HashMap<Mono, u32>>,
    monos: Vec<Vec<Mono>>,
}

impl MonoTable {
    fn new(n: usize, dmax: usize) -> Self {
        let monos: Vec<Vec<Mono>> = (0..=dmax).map(|d| Mono::all_of_degree(n, d as u32)).collect();
        let index = monos.iter().map(|ms| ms.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect()).collect();
        MonoTable { index, monos }
    }
}

fn to_fp(f: &PrimeField, c: &Scalar) -> Result<u32> {
    f.from_scalar(c).ok_or_else(|| Error::PrimeDisagreement("prime divides a denominator".into()))
}

/// Counts pivots per column degree of the rows, given a column→degree map.
fn pivots_per_degree(f: PrimeField, ncols: usize, col_deg: &[u8], mut rows: Vec<Row>, ndeg: usize) -> Vec<usize> {
    rows.sort_by_key(|r| (r.first().map_or(u32::MAX, |e| e.0), r.len()));
    let mut e = Echelon::new(f, ncols);
    for r in &rows {
        if !r.is_empty() {
            e.insert(r);
        }
    }
    let mut counts = vec![0usize; ndeg];
    for p in e.pivots() {
        counts[col_deg[p as usize] as usize] += 1;
    }
    counts
}

fn agree(results: Vec<Result<Vec<i64>>>) -> Result<Vec<i64>> {
    let mut it = results.into_iter();
    let first = it.next().expect("at least one prime")?;
    for r in it {
        let r = r?;
        if r != first {
            return Err(Error::PrimeDisagreement(format!("{:?} vs {:?}", first, r)));
        }
    }
    Ok(first)
}

fn run_primes<F>(cfg: &ElimConfig, job: F) -> Result<Vec<i64>>
where
    F: Fn(PrimeField) -> Result<Vec<i64>> + Sync,
{
    if cfg.primes.is_empty() {
        return invalid("no primes configured");
    }
    let results: Vec<Result<Vec<i64>>> = if cfg.primes.len() == 2 && rayon::current_num_threads() > 1 {
        let (a, b) = rayon::join(|| job(cfg.primes[0]), || job(cfg.primes[1]));
        vec![a, b]
    } else {
        cfg.primes.iter().map(|&f| job(f)).collect()
    };
    agree(results)
}

fn check_budget(cfg: &ElimConfig, rows: usize, cols: usize) -> Result<()> {
    let cells = rows as u128 * cols as u128;
    if cells > cfg.cell_budget_millions as u128 * 1_000_000 {
        return Err(Error::Budget(format!("{} x {} truncated elimination", rows, cols)));
    }
    Ok(())
}

/// dim gr_k(coker M) for k ≤ D by elimination in R_D^q, R_D = S/m^{D+1}:
/// W = span{x^α·c}, columns ordered by degree, and
/// dim gr_k = #(degree-k columns) − #(pivots in degree-k columns).
pub fn gr_hilbert(m: &ModulePresentation, d: usize, cfg: &ElimConfig) -> Result<Vec<i64>> {
    let n = m.nvars;
    let q = m.q;
    let table = MonoTable::new(n, d);
    let mut offset = vec![0usize; d + 2];
    for k in 0..=d {
        offset[k + 1] = offset[k] + q * table.monos[k].len();
    }
    let ncols = offset[d + 1];
    let nrows: usize = m
        .columns
        .iter()
        .filter_map(|c| column_degree(c))
        .filter(|&cd| cd as usize <= d)
        .map(|cd| binom_usize(d - cd as usize + n, n))
        .sum();
    check_budget(cfg, nrows, ncols)?;
    if ncols > u32::MAX as usize - 1 {
        return Err(Error::Budget("too many columns".into()));
    }
    let mut col_deg = vec![0u8; ncols];
    for k in 0..=d {
        for c in offset[k]..offset[k + 1] {
            col_deg[c] = k as u8;
        }
    }
    let job = |f: PrimeField| -> Result<Vec<i64>> {
        let mut rows: Vec<Row> = Vec::with_capacity(nrows);
        for col in &m.columns {
            let Some(cd) = column_degree(col) else { continue };
            let cd = cd as usize;
            if cd > d {
                continue;
            }
            let mut terms: Vec<(usize, Mono, u32)> = Vec::new();
            for (b, p) in col.iter().enumerate() {
                for (mono, c) in p.terms() {
                    if (mono.degree() as usize) <= d {
                        terms.push((b, *mono, to_fp(&f, c)?));
                    }
                }
            }
            for a in 0..=(d - cd) {
                for alpha in &table.monos[a] {
                    let mut row = Vec::with_capacity(terms.len());
                    for &(b, mono, v) in &terms {
                        let mm = mono.mul(alpha);
                        let k = mm.degree() as usize;
                        if k <= d {
                            let j = table.index[k][&mm] as usize;
                            row.push(((offset[k] + b * table.monos[k].len() + j) as u32, v));
                        }
                    }
                    rows.push(normalize_row(&f, row));
                }
            }
        }
        let piv = pivots_per_degree(f, ncols, &col_deg, rows, d + 1);
        Ok((0..=d).map(|k| (q * table.monos[k].len() - piv[k]) as i64).collect())
    };
    run_primes(cfg, job)
}

/// Degree-k dimensions, k ≤ D, of the cokernel of a presentation whose
/// columns are each homogeneous (of possibly different degrees):
/// dim_k = q·dim S_k − rank{x^α·c : |α| = k − deg c}.
pub fn graded_hilbert(m: &ModulePresentation, d: usize, cfg: &ElimConfig) -> Result<Vec<i64>> {
    let n = m.nvars;
    let q = m.q;
    let mut degs = Vec::new();
    for col in &m.columns {
        let cd = column_degree(col).expect("nonzero column");
        if !col.iter().all(|p| p.is_homogeneous_of(cd)) {
            return invalid("graded_hilbert needs homogeneous columns");
        }
        degs.push(cd as usize);
    }
    let table = MonoTable::new(n, d);
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let nk = table.monos[k].len();
        let ncols = q * nk;
        let nrows: usize = degs.iter().filter(|&&cd| cd <= k).map(|&cd| table.monos[k - cd].len()).sum();
        check_budget(cfg, nrows, ncols)?;
        let job = |f: PrimeField| -> Result<Vec<i64>> {
            let mut rows: Vec<Row> = Vec::with_capacity(nrows);
            for (col, &cd) in m.columns.iter().zip(&degs) {
                if cd > k {
                    continue;
                }
                let mut terms = Vec::new();
                for (b, p) in col.iter().enumerate() {
                    for (mono, c) in p.terms() {
                        terms.push((b, *mono, to_fp(&f, c)?));
                    }
                }
                for alpha in &table.monos[k - cd] {
                    let row = terms
                        .iter()
                        .map(|&(b, mono, v)| ((b * nk + table.index[k][&mono.mul(alpha)] as usize) as u32, v))
                        .collect();
                    rows.push(normalize_row(&f, row));
                }
            }
            let r = crate::numeric::sparse::rank(f, ncols, rows);
            Ok(vec![(ncols - r) as i64])
        };
        out.push(run_primes(cfg, job)?[0]);
    }
    Ok(out)
}

/// dim Z_j, Z = ker δ₁ ⊂ S^n in polynomial degree j ≥ 1.
pub fn dim_cycles(n: usize, j: usize) -> usize {
    n * dim_sym(n, j) - dim_sym(n, j + 1)
}

/// gr(B) for the Alexander invariant B of G, through the isomorphism
/// B ≅ Z/N given by δ₂, where Z = ker δ₁ = im δ₂ is generated in degree 1
/// and N is generated by the Fox rows. With m^k B ↔ (Z_{≥k+1} + N)/N,
/// dim gr_k(B) = dim Z_{k+1} − dim in_{k+1}(N), and the initial forms of N
/// are read off the pivots of span{x^α·D_r} in S^n/m^{D+2}.
pub fn alexander_gr_dims(g: &GroupPresentation, d: usize, cfg: &ElimConfig) -> Result<Vec<i64>> {
    let rows_q = fox_rows_polynomial(g)?;
    let n = g.ngens();
    let top = d + 1;
    let table = MonoTable::new(n, top);
    // column blocks for polynomial degrees 1..=top
    let mut offset = vec![0usize; top + 2];
    for k in 1..=top {
        offset[k + 1] = offset[k] + n * table.monos[k].len();
    }
    let ncols = offset[top + 1];
    let mut col_deg = vec![0u8; ncols];
    for k in 1..=top {
        for c in offset[k]..offset[k + 1] {
            col_deg[c] = k as u8;
        }
    }
    let nrows: usize = rows_q
        .iter()
        .filter_map(|r| column_degree(r))
        .filter(|&cd| cd as usize <= top)
        .map(|cd| binom_usize(top - cd as usize + n, n))
        .sum();
    check_budget(cfg, nrows, ncols)?;
    let job = |f: PrimeField| -> Result<Vec<i64>> {
        let mut rows: Vec<Row> = Vec::with_capacity(nrows);
        for r in &rows_q {
            let Some(cd) = column_degree(r) else { continue };
            let cd = cd as usize;
            if cd > top {
                continue;
            }
            let mut terms = Vec::new();
            for (b, p) in r.iter().enumerate() {
                for (mono, c) in p.terms() {
                    if (mono.degree() as usize) <= top {
                        terms.push((b, *mono, to_fp(&f, c)?));
                    }
                }
            }
            for a in 0..=(top - cd) {
                for alpha in &table.monos[a] {
                    let mut row = Vec::with_capacity(terms.len());
                    for &(b, mono, v) in &terms {
                        let mm = mono.mul(alpha);
                        let k = mm.degree() as usize;
                        if k <= top {
                            let j = table.index[k][&mm] as usize;
                            row.push(((offset[k] + b * table.monos[k].len() + j) as u32, v));
                        }
                    }
                    rows.push(normalize_row(&f, row));
                }
            }
        }
        let piv = pivots_per_degree(f, ncols, &col_deg, rows, top + 1);
        Ok((0..=d).map(|k| dim_cycles(n, k + 1) as i64 - piv[k + 1] as i64).collect())
    };
    run_primes(cfg, job)
}

/// Graded version of [`alexander_gr_dims`] for the linearized module: N is
/// generated by the linear parts of the Fox rows.
pub fn linearized_gr_dims(g: &GroupPresentation, d: usize, cfg: &ElimConfig) -> Result<Vec<i64>> {
    let rows_q = fox_rows_polynomial(g)?;
    let n = g.ngens();
    let lin: Vec<Vec<MultiPoly>> = rows_q
        .iter()
        .map(|r| r.iter().map(|p| p.homogeneous_part(1)).collect::<Vec<_>>())
        .filter(|r: &Vec<MultiPoly>| r.iter().any(|p| !p.is_zero()))
        .collect();
    let table = MonoTable::new(n, d + 1);
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let j = k + 1;
        let nj = table.monos[j].len();
        let ncols = n * nj;
        let job = |f: PrimeField| -> Result<Vec<i64>> {
            let mut rows: Vec<Row> = Vec::new();
            for r in &lin {
                let mut terms = Vec::new();
                for (b, p) in r.iter().enumerate() {
                    for (mono, c) in p.terms() {
                        terms.push((b, *mono, to_fp(&f, c)?));
                    }
                }
                for alpha in &table.monos[k] {
                    let row = terms
                        .iter()
                        .map(|&(b, mono, v)| ((b * nj + table.index[j][&mono.mul(alpha)] as usize) as u32, v))
                        .collect();
                    rows.push(normalize_row(&f, row));
                }
            }
            let r = crate::numeric::sparse::rank(f, ncols, rows);
            Ok(vec![dim_cycles(n, j) as i64 - r as i64])
        };
        out.push(run_primes(cfg, job)?[0]);
    }
    Ok(out)
}

/// Closed-form Chen ranks.
#[derive(Clone, Copy, Debug)]
pub enum ThetaKind {
    Free(u64),
    PureBraid(u64),
}

pub fn theta_closed(kind: ThetaKind, k: u64) -> i64 {
    assert!(k >= 1);
    let v = match kind {
        ThetaKind::Free(n) => {
            if k == 1 {
                return n as i64;
            }
            binomial(n + k - 2, k) * num_bigint::BigInt::from(k - 1)
        }
        ThetaKind::PureBraid(n) => match k {
            1 => binomial(n, 2),
            2 => binomial(n, 3),
            _ => binomial(n + 1, 4) * num_bigint::BigInt::from(k - 1),
        },
    };
    v.to_i64().expect("theta fits i64")
}

/// Verdict of a Chen-ranks-formula test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChenVerdict {
    Holds { through: usize },
    Fails { k: usize, theta: i64, formula: i64 },
}

/// Checks θ_k = Σ_m h_m·θ_k(F_m) for k_min ≤ k ≤ D.
pub fn chen_formula_test(theta: &ThetaSeries, components: &[(u64, i64)], k_min: usize, d: usize) -> Result<ChenVerdict> {
    if k_min < 3 || d < k_min {
        return invalid("chen formula test needs D >= k_min >= 3");
    }
    for k in k_min..=d {
        let lhs = theta.theta(k).ok_or_else(|| Error::Invalid(format!("θ_{} not available", k)))?;
        let rhs: i64 = components.iter().map(|&(m, h)| h * theta_closed(ThetaKind::Free(m), k as u64)).sum();
        if lhs != rhs {
            return Ok(ChenVerdict::Fails { k, theta: lhs, formula: rhs });
        }
    }
    Ok(ChenVerdict::Holds { through: d })
}

/// Σ θ_k t^{k−2} as a list; convenience for series comparisons.
pub fn series_coefficients(f: &crate::numeric::UniRationalFunction, d: usize) -> Vec<i64> {
    f.expand(d).iter().map(|c| c.to_integer().to_i64().expect("integral series")).collect()
}
