//! Sparse Gaussian elimination over a prime field.
//!
//! Rows are lists of `(column, value)` pairs sorted by column. An
//! [`Echelon`] accepts rows one at a time and keeps a semi-echelon basis:
//! stored rows have distinct leading columns and leading coefficient 1.
//! The set of leading columns does not depend on insertion order (it is the
//! set of minimal columns of nonzero vectors of the row space), so callers
//! may order rows for sparsity.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::fp::PrimeField;

pub type Row = Vec<(u32, u32)>;

const NONE: u32 = u32::MAX;

pub struct Echelon {
    f: PrimeField,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<Row>,
    acc: Vec<u32>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl Echelon {
    pub fn new(f: PrimeField, ncols: usize) -> Self {
        Echelon {
            f,
            ncols,
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
            acc: vec![0; ncols],
            queued: vec![false; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, c: u32) -> bool {
        self.pivot_row[c as usize] != NONE
    }

    /// Leading columns of the stored basis, in insertion order.
    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// The stored basis rows.
    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    pub fn stored_entries(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Reduces `row` against the basis. If a nonzero remainder survives it
    /// is stored and its leading column returned.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> Option<u32> {
        let f = self.f;
        for &(c, v) in row {
            debug_assert!((c as usize) < self.ncols);
            let cu = c as usize;
            self.acc[cu] = f.add(self.acc[cu], v);
            if !self.queued[cu] {
                self.queued[cu] = true;
                self.heap.push(Reverse(c));
            }
        }
        while let Some(Reverse(c)) = self.heap.pop() {
            let cu = c as usize;
            self.queued[cu] = false;
            let a = self.acc[cu];
            if a == 0 {
                continue;
            }
            let pr = self.pivot_row[cu];
            if pr == NONE {
                // new pivot: gather the remainder
                let inv = f.inv(a);
                let mut out: Row = Vec::with_capacity(self.heap.len() + 1);
                out.push((c, 1));
                self.acc[cu] = 0;
                let mut rest: Vec<u32> = self.heap.drain().map(|Reverse(x)| x).collect();
                rest.sort_unstable();
                for x in rest {
                    let xu = x as usize;
                    self.queued[xu] = false;
                    let v = self.acc[xu];
                    if v != 0 {
                        out.push((x, f.mul(v, inv)));
                        self.acc[xu] = 0;
                    }
                }
                self.pivot_row[cu] = self.rows.len() as u32;
                self.rows.push(out);
                return Some(c);
            }
            let m = f.neg(a);
            self.acc[cu] = 0;
            let prow = &self.rows[pr as usize];
            for &(x, v) in &prow[1..] {
                let xu = x as usize;
                self.acc[xu] = f.reduce(self.acc[xu] as u64 + m as u64 * v as u64);
                if !self.queued[xu] {
                    self.queued[xu] = true;
                    self.heap.push(Reverse(x));
                }
            }
        }
        None
    }
}

fn order_rows(rows: &mut [Row]) {
    rows.sort_by_key(|r| (r.first().map_or(u32::MAX, |e| e.0), r.len()));
}

/// Rank over F_p of the given rows.
pub fn rank(f: PrimeField, ncols: usize, mut rows: Vec<Row>) -> usize {
    order_rows(&mut rows);
    let mut e = Echelon::new(f, ncols);
    for r in &rows {
        if !r.is_empty() {
            e.insert(r);
        }
    }
    e.rank()
}

/// Column rank profile: leading columns of an echelon basis of the row
/// space, sorted ascending.
pub fn pivot_columns(f: PrimeField, ncols: usize, mut rows: Vec<Row>) -> Vec<u32> {
    order_rows(&mut rows);
    let mut e = Echelon::new(f, ncols);
    for r in &rows {
        if !r.is_empty() {
            e.insert(r);
        }
    }
    let mut p: Vec<u32> = e.pivots().collect();
    p.sort_unstable();
    p
}

/// Normalizes an unsorted list of (col, value) pairs with values already
/// reduced mod p: merges duplicates and drops zeros.
pub fn normalize_row(f: &PrimeField, mut row: Vec<(u32, u32)>) -> Row {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: Row = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_and_profile() {
        let f = PrimeField::new(101);
        let rows = vec![
            vec![(1, 1), (2, 1)],
            vec![(0, 2), (1, 2), (2, 2)],
            vec![(0, 1), (1, 2), (2, 2)],
            vec![(0, 1)],
        ];
        assert_eq!(rank(f, 3, rows.clone()), 2);
        assert_eq!(pivot_columns(f, 3, rows), vec![0, 1]);
    }

    #[test]
    fn insertion_order_invariance() {
        let f = PrimeField::new(1_000_003);
        let rows: Vec<Row> = (0..30u32)
            .map(|i| normalize_row(&f, (0..5).map(|j| ((i * 7 + j * 13) % 40, (i * j + 1) % 97)).collect()))
            .collect();
        let mut rev = rows.clone();
        rev.reverse();
        let mut e1 = Echelon::new(f, 40);
        let mut e2 = Echelon::new(f, 40);
        for r in &rows {
            e1.insert(r);
        }
        for r in &rev {
            e2.insert(r);
        }
        let mut p1: Vec<u32> = e1.pivots().collect();
        let mut p2: Vec<u32> = e2.pivots().collect();
        p1.sort();
        p2.sort();
        assert_eq!(p1, p2);
    }
}
