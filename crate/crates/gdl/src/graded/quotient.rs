use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::GradedPresentation;
use crate::grobner::{FreeElement, GroebnerBasis};
use crate::linalg::{self, SparseMatrix, SparseVec};
use crate::poly::{exponent_vectors, Monomial};
use crate::rational::Rational;

/// Standard monomials of one degree: a Q-basis of `G_d` when `m = 0`.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub keys: Vec<(usize, Monomial)>,
    pub index: HashMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.keys.len()
    }
}

/// Degree slices of a module over `Q[u1..un]` (no base variables), computed
/// from one Gröbner basis of the relations. Thread-safe, caches per degree.
pub struct QuotientSlices {
    pub module: GradedPresentation,
    gb: GroebnerBasis,
    cache: Mutex<HashMap<i64, Arc<SliceBasis>>>,
}

impl QuotientSlices {
    pub fn new(g: &GradedPresentation) -> Self {
        assert_eq!(g.ctx.m, 0, "quotient bases need m = 0");
        let order = g.target.order(g.ctx);
        let gb = GroebnerBasis::compute(g.ctx, &g.matrix, &order, false);
        QuotientSlices { module: g.clone(), gb, cache: Mutex::new(HashMap::new()) }
    }

    pub fn basis(&self, d: i64) -> Arc<SliceBasis> {
        if let Some(b) = self.cache.lock().unwrap().get(&d) {
            return b.clone();
        }
        let ctx = self.module.ctx;
        let mut keys = Vec::new();
        for (c, &t) in self.module.target.twists.iter().enumerate() {
            if d < t {
                continue;
            }
            for nu in exponent_vectors(ctx.n, (d - t) as u32) {
                let mon = Monomial::from_exps(&nu);
                if self.gb.is_standard(c, &mon) {
                    keys.push((c, mon));
                }
            }
        }
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let b = Arc::new(SliceBasis { keys, index });
        self.cache.lock().unwrap().insert(d, b.clone());
        b
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis(d).dim()
    }

    /// Coordinates of a homogeneous element of degree `d` in the standard basis.
    pub fn coords(&self, e: &FreeElement, d: i64) -> SparseVec {
        let b = self.basis(d);
        let nf = self.gb.normal_form(e);
        linalg::collect(nf.terms().iter().map(|(c, m, a)| (b.index[&(*c, m.clone())], a.clone())))
    }

    /// Multiplication by `c · u^nu` from `G_d` to `G_{d+|nu|}`.
    pub fn mul_matrix(&self, d: i64, nu: &[u32], c: &Rational) -> SparseMatrix {
        let src = self.basis(d);
        let k: u32 = nu.iter().sum();
        let tgt_deg = d + k as i64;
        let tgt = self.basis(tgt_deg);
        let mon = Monomial::from_exps(nu);
        let cols = src
            .keys
            .iter()
            .map(|(comp, m)| {
                let e = FreeElement::from_terms(self.module.ctx, [(*comp, m.mul(&mon), c.clone())]);
                self.coords(&e, tgt_deg)
            })
            .collect();
        SparseMatrix::new(tgt.dim(), cols)
    }
}
