//! Finitely presented groups: words, built-in families, products and the
//! abelianized Fox Jacobian.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::{int, Entry, LaurentPoly, SparseMatrix};

/// A letter x_g^{±1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

/// Freely reduced word in the free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Builds from (generator, ±1) pairs, reducing freely.
    pub fn new(letters: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut w = Word::default();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "exponents must be ±1");
            w.push(Letter { gen: g, inv: e < 0 });
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if let Some(last) = self.letters.last() {
            if last.gen == l.gen && last.inv != l.inv {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn gen(g: usize) -> Self {
        Word::new([(g, 1)])
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| Letter { gen: l.gen, inv: !l.inv }).collect() }
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &l in &o.letters {
            w.push(l);
        }
        w
    }

    /// [a, b] = a b a⁻¹ b⁻¹
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// u v⁻¹: the relator expressing u = v.
    pub fn equation(u: &Word, v: &Word) -> Word {
        u.concat(&v.inverse())
    }

    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n];
        for l in &self.letters {
            s[l.gen] += if l.inv { -1 } else { 1 };
        }
        s
    }

    pub fn shift(&self, by: usize) -> Word {
        Word { letters: self.letters.iter().map(|l| Letter { gen: l.gen + by, inv: l.inv }).collect() }
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

fn word(gens: &[usize]) -> Word {
    Word::new(gens.iter().map(|&g| (g, 1)))
}

/// Generators, labels and relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    labels: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<String>>,
}

impl GroupPresentation {
    pub fn new(labels: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains('^') || l.chars().any(char::is_whitespace) {
                return invalid(format!("bad generator label {:?}", l));
            }
            if seen.insert(l.clone(), i).is_some() {
                return invalid(format!("duplicate generator label {:?}", l));
            }
        }
        for r in &relators {
            if r.is_empty() {
                return invalid("relator reduces to the empty word");
            }
            if r.max_gen().is_some_and(|g| g >= n) {
                return invalid("relator uses an unknown generator");
            }
        }
        Ok(GroupPresentation { labels, relators })
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn word_to_strings(&self, w: &Word) -> Vec<String> {
        w.letters()
            .iter()
            .map(|l| if l.inv { format!("{}^-1", self.labels[l.gen]) } else { self.labels[l.gen].clone() })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let j = PresentationJson {
            generators: self.labels.clone(),
            relators: self.relators.iter().map(|r| self.word_to_strings(r)).collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PresentationJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let index: HashMap<&str, usize> = j.generators.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != j.generators.len() {
            return Err(Error::Parse("duplicate generator names".into()));
        }
        let mut relators = Vec::new();
        for (ri, r) in j.relators.iter().enumerate() {
            let mut letters = Vec::new();
            for tok in r {
                let (name, e) = match tok.strip_suffix("^-1") {
                    Some(base) => (base, -1),
                    None => (tok.strip_suffix("^1").unwrap_or(tok), 1),
                };
                let g = *index
                    .get(name)
                    .ok_or_else(|| Error::Parse(format!("relator {}: unknown generator {:?}", ri, tok)))?;
                letters.push((g, e));
            }
            relators.push(Word::new(letters));
        }
        Self::new(j.generators, relators).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Free(usize),
    Integers,
    Abelian(usize),
    VP(usize),
    VPPlus(usize),
    PBar4,
}

/// Pairs (i, j), i < j, 1-based, in colexicographic order: 12, 13, 23, 14, …
pub fn colex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            v.push((i, j));
        }
    }
    v
}

/// Generator order of vP_n: x_ij (i<j) in colex order, then x_ji in the same order.
pub fn vp_generators(n: usize) -> Vec<(usize, usize)> {
    let p = colex_pairs(n);
    p.iter().copied().chain(p.iter().map(|&(i, j)| (j, i))).collect()
}

fn pair_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("x{}{}", i, j)
    } else {
        format!("x{}_{}", i, j)
    }
}

pub fn family(f: Family) -> Result<GroupPresentation> {
    match f {
        Family::Free(n) => {
            if n == 0 {
                return invalid("free group needs n >= 1");
            }
            GroupPresentation::new((1..=n).map(|i| format!("x{}", i)).collect(), vec![])
        }
        Family::Integers => GroupPresentation::new(vec!["t".into()], vec![]),
        Family::Abelian(k) => {
            if k == 0 {
                return invalid("abelian group needs k >= 1");
            }
            let mut rels = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    rels.push(Word::commutator(&Word::gen(i), &Word::gen(j)));
                }
            }
            GroupPresentation::new((1..=k).map(|i| format!("a{}", i)).collect(), rels)
        }
        Family::VP(n) => {
            if n < 2 {
                return invalid("vP needs n >= 2");
            }
            let gens = vp_generators(n);
            let idx: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let x = |i: usize, j: usize| idx[&(i, j)];
            let mut rels = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let u = word(&[x(i, j), x(i, k), x(j, k)]);
                        let v = word(&[x(j, k), x(i, k), x(i, j)]);
                        rels.push(Word::equation(&u, &v));
                    }
                }
            }
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    let (i, j) = gens[a];
                    let (k, l) = gens[b];
                    if i != k && i != l && j != k && j != l {
                        rels.push(Word::commutator(&Word::gen(a), &Word::gen(b)));
                    }
                }
            }
            GroupPresentation::new(gens.iter().map(|&(i, j)| pair_label(i, j)).collect(), rels)
        }
        Family::VPPlus(n) => {
            if n < 2 {
                return invalid("vP+ needs n >= 2");
            }
            let gens = colex_pairs(n);
            let idx: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(k, &p)| (p, k)).collect();
            let x = |i: usize, j: usize| idx[&(i, j)];
            let mut rels = Vec::new();
            for k in 1..=n {
                for j in 1..k {
                    for i in 1..j {
                        let u = word(&[x(i, j), x(i, k), x(j, k)]);
                        let v = word(&[x(j, k), x(i, k), x(i, j)]);
                        rels.push(Word::equation(&u, &v));
                    }
                }
            }
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    let (i, j) = gens[a];
                    let (k, l) = gens[b];
                    if i != k && i != l && j != k && j != l {
                        rels.push(Word::commutator(&Word::gen(a), &Word::gen(b)));
                    }
                }
            }
            GroupPresentation::new(gens.iter().map(|&(i, j)| pair_label(i, j)).collect(), rels)
        }
        Family::PBar4 => {
            let z = |k: usize| Word::gen(k - 1);
            let conj4 = z(2).inverse().concat(&z(4)).concat(&z(2));
            let w = |ks: &[usize]| word(&ks.iter().map(|k| k - 1).collect::<Vec<_>>());
            let rels = vec![
                Word::commutator(&z(2), &z(3)),
                Word::equation(&conj4.concat(&z(1)), &z(1).concat(&conj4)),
                Word::equation(&w(&[5, 3, 1]), &w(&[3, 1, 5])),
                Word::equation(&w(&[3, 1, 5]), &w(&[1, 5, 3])),
                Word::equation(&w(&[5, 4, 2]), &w(&[4, 2, 5])),
                Word::equation(&w(&[4, 2, 5]), &w(&[2, 5, 4])),
            ];
            GroupPresentation::new((1..=5).map(|i| format!("z{}", i)).collect(), rels)
        }
    }
}

fn merged_labels(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.to_vec();
    for l in b {
        let mut name = l.clone();
        while out.contains(&name) {
            name.push('\'');
        }
        out.push(name);
    }
    out
}

pub fn free_product(g: &GroupPresentation, h: &GroupPresentation) -> GroupPresentation {
    let n = g.ngens();
    let labels = merged_labels(&g.labels, &h.labels);
    let rels = g.relators.iter().cloned().chain(h.relators.iter().map(|r| r.shift(n))).collect();
    GroupPresentation::new(labels, rels).expect("free product of valid presentations")
}

pub fn direct_product(g: &GroupPresentation, h: &GroupPresentation) -> GroupPresentation {
    let n = g.ngens();
    let mut p = free_product(g, h);
    for i in 0..n {
        for j in 0..h.ngens() {
            p.relators.push(Word::commutator(&Word::gen(i), &Word::gen(n + j)));
        }
    }
    p
}

/// True iff every relator has zero exponent sum in every generator.
pub fn is_commutator_relators(g: &GroupPresentation) -> bool {
    g.relators.iter().all(|r| r.exponent_sums(g.ngens()).iter().all(|&s| s == 0))
}

impl Entry for LaurentPoly {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

/// Abelianized Fox derivatives ∂r_i/∂x_j as Laurent polynomials in t_1..t_n.
pub fn fox_row(w: &Word, n: usize) -> Vec<LaurentPoly> {
    let mut row = vec![LaurentPoly::zero(n); n];
    let mut prefix = vec![0i32; n];
    for l in w.letters() {
        if l.inv {
            prefix[l.gen] -= 1;
            row[l.gen].add_term(prefix.clone(), -int(1));
        } else {
            row[l.gen].add_term(prefix.clone(), int(1));
            prefix[l.gen] += 1;
        }
    }
    row
}

pub fn fox_matrix(g: &GroupPresentation) -> Result<SparseMatrix<LaurentPoly>> {
    if !is_commutator_relators(g) {
        return invalid("Fox matrix requires a commutator-relators presentation");
    }
    let n = g.ngens();
    let mut m = SparseMatrix::new(g.relators.len(), n);
    for (i, r) in g.relators.iter().enumerate() {
        for (j, e) in fox_row(r, n).into_iter().enumerate() {
            m.set(i, j, e);
        }
    }
    Ok(m)
}

/// Σ_j (∂r/∂x_j)(t_j − 1), which equals (abelianized r) − 1.
pub fn fox_identity_defect(row: &[LaurentPoly]) -> LaurentPoly {
    let n = row.len();
    let mut total = LaurentPoly::zero(n);
    for (j, e) in row.iter().enumerate() {
        let mut tj = vec![0i32; n];
        tj[j] = 1;
        let factor = LaurentPoly::monomial(n, tj, num_traits::One::one()).sub(&LaurentPoly::one(n));
        total = total.add(&e.mul(&factor));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        let g = family(Family::VPPlus(3)).unwrap();
        assert_eq!((g.ngens(), g.relators().len()), (3, 1));
        let g = family(Family::VP(3)).unwrap();
        assert_eq!((g.ngens(), g.relators().len()), (6, 6));
        let g = family(Family::VPPlus(4)).unwrap();
        assert_eq!((g.ngens(), g.relators().len()), (6, 7));
        assert_eq!(family(Family::VP(4)).unwrap().relators().len(), 36);
        let p = family(Family::PBar4).unwrap();
        assert_eq!((p.ngens(), p.relators().len()), (5, 6));
        let v = free_product(&p, &family(Family::Integers).unwrap());
        assert_eq!((v.ngens(), v.relators().len()), (6, 6));
        let z = family(Family::Integers).unwrap();
        let zz = direct_product(&z, &z);
        assert_eq!((zz.ngens(), zz.relators().len()), (2, 1));
        assert!(family(Family::Free(0)).is_err());
    }

    #[test]
    fn vp_plus_relator_counts_match_stirling() {
        use crate::combinatorics::{special_number, SpecialKind};
        for n in 3..=6usize {
            let g = family(Family::VPPlus(n)).unwrap();
            let s = special_number(SpecialKind::Stirling2, n as i64, n as i64 - 2).unwrap();
            assert_eq!(num_bigint::BigInt::from(g.relators().len()), s);
        }
    }

    #[test]
    fn commutator_relators() {
        assert!(is_commutator_relators(&family(Family::VPPlus(4)).unwrap()));
        assert!(is_commutator_relators(&family(Family::Free(2)).unwrap()));
        let g = GroupPresentation::new(vec!["x".into()], vec![Word::new([(0, 1), (0, 1)])]).unwrap();
        assert!(!is_commutator_relators(&g));
        assert!(fox_matrix(&g).is_err());
    }

    #[test]
    fn fox_of_commutator() {
        let zz = family(Family::Abelian(2)).unwrap();
        let m = fox_matrix(&zz).unwrap();
        // xyx^-1y^-1 -> (1 - t2, t1 - 1)
        let e0 = m.get(0, 0).unwrap();
        let e1 = m.get(0, 1).unwrap();
        assert_eq!(*e0, LaurentPoly::one(2).sub(&LaurentPoly::monomial(2, vec![0, 1], int(1))));
        assert_eq!(*e1, LaurentPoly::monomial(2, vec![1, 0], int(1)).sub(&LaurentPoly::one(2)));
        assert_eq!(fox_matrix(&family(Family::Free(3)).unwrap()).unwrap().rows(), 0);
    }

    #[test]
    fn fox_augmentation_vanishes() {
        let g = family(Family::VPPlus(3)).unwrap();
        for e in fox_row(&g.relators()[0], 3) {
            assert_eq!(e.augmentation(), int(0));
        }
    }

    #[test]
    fn json_round_trip() {
        let g = family(Family::VP(3)).unwrap();
        let back = GroupPresentation::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        assert!(matches!(GroupPresentation::from_json("{\"generators\":[\"a\"]"), Err(Error::Parse(_))));
        assert!(matches!(
            GroupPresentation::from_json("{\"generators\":[\"a\"],\"relators\":[[\"b\"]]}"),
            Err(Error::Parse(_))
        ));
    }
}
