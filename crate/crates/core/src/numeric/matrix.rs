use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::fp::PrimeField;
use super::scalar::Scalar;
use super::sparse;
use super::MultiPoly;
use crate::error::{invalid, Error, Result};

/// Entry types that can live in a [`SparseMatrix`].
pub trait Entry: Clone {
    fn is_zero_entry(&self) -> bool;
}

impl Entry for Scalar {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for MultiPoly {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for u32 {
    fn is_zero_entry(&self) -> bool {
        *self == 0
    }
}

/// Sparse matrix keyed by (row, col); zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix<T: Entry> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Entry> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(dense: Vec<Vec<T>>, cols: usize) -> Self {
        let mut m = Self::new(dense.len(), cols);
        for (r, row) in dense.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero_entry() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        let mut m = SparseMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, f(v));
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    /// Row r as a sorted list of (col, value).
    pub fn row(&self, r: usize) -> Vec<(usize, T)> {
        self.entries.range((r, 0)..(r + 1, 0)).map(|(&(_, c), v)| (c, v.clone())).collect()
    }
}

impl SparseMatrix<Scalar> {
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }
}

impl SparseMatrix<MultiPoly> {
    pub fn eval(&self, point: &[Scalar]) -> SparseMatrix<Scalar> {
        self.map(|p| p.eval(point))
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<Vec<MultiPoly>> {
        let mut d = vec![vec![MultiPoly::zero(nvars); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }
}

/// Exact rank over ℚ (Gaussian elimination on dense rational rows).
pub fn rank_rational(m: &SparseMatrix<Scalar>) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for j in c..cols {
            a[rank][j] = &a[rank][j] * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..cols {
                    let v = &a[rank][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over F_p of the reduction of a rational matrix; `None` if p divides
/// some denominator.
pub fn rank_mod_p(m: &SparseMatrix<Scalar>, f: &PrimeField) -> Option<usize> {
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m.rows];
    for (&(r, c), v) in &m.entries {
        let x = f.from_scalar(v)?;
        if x != 0 {
            rows[r].push((c as u32, x));
        }
    }
    Some(sparse::rank(*f, m.cols, rows))
}

/// Exact rank of a rational matrix.
pub fn rank(m: &SparseMatrix<Scalar>) -> usize {
    rank_rational(m)
}

/// Rank by two independent prime fields that must agree; falls back to
/// exact rational elimination otherwise.
pub fn certified_rank(m: &SparseMatrix<Scalar>, primes: &[PrimeField]) -> usize {
    let ranks: Vec<Option<usize>> = primes.iter().map(|f| rank_mod_p(m, f)).collect();
    if ranks.len() >= 2 && ranks.iter().all(|r| r.is_some() && *r == ranks[0]) {
        return ranks[0].unwrap();
    }
    rank_rational(m)
}

/// All nonzero size×size minors, enumerated by (row subset, column subset)
/// in lexicographic order. Minors are built by Laplace expansion along the
/// first chosen row, reusing the (size−1)-minors of the remaining rows.
pub fn minors(m: &SparseMatrix<MultiPoly>, size: usize, nvars: usize) -> Result<Vec<MultiPoly>> {
    if size == 0 || size > m.rows.min(m.cols) {
        return invalid(format!("minor size {} out of range for {}x{}", size, m.rows, m.cols));
    }
    if m.rows > 64 || m.cols > 64 {
        return Err(Error::Budget("minors limited to 64 rows and columns".into()));
    }
    let count = binom(m.rows, size).saturating_mul(binom(m.cols, size));
    if count > 2_000_000 {
        return Err(Error::Budget(format!("{} minors of size {}", count, size)));
    }
    let dense = m.to_dense(nvars);
    // level s: minors on the last s rows of each row subset, keyed by (row mask, col mask)
    let row_sets = subsets(m.rows, size);
    let mut cache: HashMap<(u64, u64), MultiPoly> = HashMap::new();
    fn det(
        rows: &[usize],
        cmask: u64,
        dense: &[Vec<MultiPoly>],
        nvars: usize,
        cache: &mut HashMap<(u64, u64), MultiPoly>,
    ) -> MultiPoly {
        if rows.is_empty() {
            return MultiPoly::one(nvars);
        }
        let rmask: u64 = rows.iter().fold(0, |a, &r| a | (1u64 << r));
        if let Some(v) = cache.get(&(rmask, cmask)) {
            return v.clone();
        }
        let r0 = rows[0];
        let mut total = MultiPoly::zero(nvars);
        let mut sign_pos = 0usize;
        for c in 0..64 {
            if cmask & (1u64 << c) == 0 {
                continue;
            }
            let e = &dense[r0][c];
            if !e.is_zero() {
                let sub = det(&rows[1..], cmask & !(1u64 << c), dense, nvars, cache);
                if !sub.is_zero() {
                    let t = e * &sub;
                    total = if sign_pos % 2 == 0 { &total + &t } else { &total - &t };
                }
            }
            sign_pos += 1;
        }
        cache.insert((rmask, cmask), total.clone());
        total
    }
    let mut out = Vec::new();
    for rs in &row_sets {
        for cs in subsets(m.cols, size) {
            let cmask = cs.iter().fold(0u64, |a, &c| a | (1u64 << c));
            let d = det(rs, cmask, &dense, nvars, &mut cache);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace(a: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut total = MultiPoly::zero(nvars);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<MultiPoly>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = &a[0][j] * &det_laplace(&sub, nvars);
        total = if j % 2 == 0 { &total + &t } else { &total - &t };
    }
    total
}

/// Fraction-free Bareiss determinant with exact polynomial division.
pub fn bareiss_det(a: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut m: Vec<Vec<MultiPoly>> = a.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form over ℚ; returns the nonzero rows and their
/// pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of {v : M v = 0} for a dense matrix with `ncols` columns.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (r, piv) = rref(rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &pc) in r.iter().zip(&piv) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

/// k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn ranks() {
        let id = SparseMatrix::from_dense(vec![vec![int(1), int(0)], vec![int(0), int(1)]], 2);
        assert_eq!(rank(&id), 2);
        assert_eq!(rank(&SparseMatrix::<Scalar>::new(3, 5)), 0);
        let m = SparseMatrix::from_dense(vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(3)]], 2);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_mod_p(&m, &PrimeField::new(7)), Some(2));
        assert_eq!(rank_mod_p(&m, &PrimeField::new(3)), Some(1));
    }

    #[test]
    fn small_minors() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let m = SparseMatrix::from_dense(vec![vec![x.clone()]], 1);
        assert_eq!(minors(&m, 1, 2).unwrap(), vec![x.clone()]);
        let d = SparseMatrix::from_dense(vec![vec![x.clone(), MultiPoly::zero(2)], vec![MultiPoly::zero(2), y.clone()]], 2);
        assert_eq!(minors(&d, 2, 2).unwrap(), vec![&x * &y]);
        assert!(minors(&d, 3, 2).is_err());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(6, 3).len(), 20);
        assert_eq!(binom(15, 6), 5005);
    }
}
