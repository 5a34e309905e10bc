//! Sparse exact linear algebra over Q.
//!
//! Vectors are sorted `(index, value)` lists without zeros. Matrices are
//! stored by column, which is how every map in the crate is built.

use std::collections::HashMap;

use crate::rational::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (j, a) in v {
            acc = axpy(&acc, &self.cols[*j], a);
        }
        acc
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(rhs.rows, self.ncols());
        SparseMatrix { rows: self.rows, cols: rhs.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c {
                cols[*i].push((j, a.clone()));
            }
        }
        SparseMatrix { rows: self.ncols(), cols }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|v| v.iter().map(|(i, a)| (*i, a * c)).filter(|(_, a)| !a.is_zero()).collect()).collect() }
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }
}

/// `x + c * y`
pub fn axpy(x: &SparseVec, y: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return x.clone();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, &y[j].1 * c));
            j += 1;
        } else {
            let s = &x[i].1 + &(&y[j].1 * c);
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, a)| (*i, a * c)).collect()
}

/// Builds a sparse vector from unsorted, possibly repeated entries.
pub fn collect(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut v: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, a)| !a.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, a) in v {
        match out.last_mut() {
            Some((k, b)) if *k == i => *b += &a,
            _ => out.push((i, a)),
        }
    }
    out.retain(|(_, a)| !a.is_zero());
    out
}

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    comb: SparseVec,
}

/// Incrementally built echelon basis of a subspace, pivot = smallest index.
/// Optionally records each row as a combination of the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces until the smallest index is not a pivot. Returns the reduced
    /// vector and the combination of inserted vectors subtracted.
    fn reduce_lead(&self, mut v: SparseVec, mut comb: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((i, a)) = v.first() {
            match self.rows.get(i) {
                Some(r) => {
                    let c = -a;
                    v = axpy(&v, &r.v, &c);
                    if self.track {
                        comb = axpy(&comb, &r.comb, &c);
                    }
                }
                None => break,
            }
        }
        (v, comb)
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce_full(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.len() {
            let i = v[pos].0;
            match self.rows.get(&i) {
                Some(r) => {
                    let c = -&v[pos].1;
                    let tail = axpy(&v[pos..].to_vec(), &r.v, &c);
                    v.truncate(pos);
                    v.extend(tail);
                }
                None => pos += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_lead(v.clone(), Vec::new()).0.is_empty()
    }

    /// Adds `v`; returns `false` if it was already in the span. With
    /// tracking, a dependent vector yields its relation through
    /// [`Echelon::insert_tracked`].
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tracked(v).is_none()
    }

    /// Adds `v`. If `v` is dependent, returns the kernel relation among the
    /// inserted vectors (indexed by insertion order) that it witnesses.
    pub fn insert_tracked(&mut self, v: SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let comb = if self.track { vec![(id, Rational::one())] } else { Vec::new() };
        let (v, comb) = self.reduce_lead(v, comb);
        match v.first() {
            None => Some(comb),
            Some((p, a)) => {
                let inv = a.recip();
                let p = *p;
                let row = Row { v: scale(&v, &inv), comb: scale(&comb, &inv) };
                self.rows.insert(p, row);
                None
            }
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// A basis of the kernel of the matrix whose columns are `cols`.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for c in cols {
        if let Some(rel) = e.insert_tracked(c.clone()) {
            out.push(rel);
        }
    }
    out
}

/// Dimension data of `V --f--> W --g--> X` at `W`: (dim ker g, rank f).
pub fn homology_dims(dim_w: usize, f: &SparseMatrix, g: &SparseMatrix) -> (usize, usize) {
    let rg = g.rank();
    (dim_w - rg, f.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn dense(rows: usize, v: &[Vec<i64>]) -> Vec<SparseVec> {
        v.iter().map(|c| collect(c.iter().take(rows).enumerate().map(|(i, &a)| (i, r(a))))).collect()
    }

    #[test]
    fn small_rank_and_kernel() {
        let cols = dense(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]]);
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        let m = SparseMatrix::new(3, cols);
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(v in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..7)) {
            let cols = dense(4, &v);
            let m = SparseMatrix::new(4, cols.clone());
            let k = kernel(&cols);
            prop_assert_eq!(rank(&cols) + k.len(), cols.len());
            prop_assert_eq!(rank(&k), k.len());
            for z in &k {
                prop_assert!(m.apply(z).is_empty());
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn reduce_full_is_canonical(v in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 1..4),
                                    a in prop::collection::vec(-2i64..3, 4)) {
            let cols = dense(4, &v);
            let mut e = Echelon::new();
            for c in &cols { e.insert(c.clone()); }
            let x = dense(4, &[a])[0].clone();
            let y = axpy(&x, &cols[0], &r(3));
            prop_assert_eq!(e.reduce_full(&x), e.reduce_full(&y));
            prop_assert_eq!(e.contains(&x), e.reduce_full(&x).is_empty());
        }
    }
}
