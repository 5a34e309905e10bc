//! Finitely presented modules over the base ring `R = Q[x1..xm]`, as used
//! for degree slices: Hilbert functions, pruning, subquotients of complexes
//! and tests on induced maps.
//!
//! All elements live in `⊕ R e_k` with base-degree weights; the order is
//! weighted degrevlex, term over position.

use std::ops::RangeInclusive;

use crate::graded::SlicePresentation;
use crate::grobner::{minimal_generators, syzygies, FreeElement, GroebnerBasis};
use crate::linalg::{self, SparseVec};
use crate::poly::{exponent_vectors, Context, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

pub fn order(base: Context, weights: &[i64]) -> MonomialOrder {
    MonomialOrder::degrevlex(base, weights.to_vec())
}

/// A map between free modules given by the images of the source basis.
pub type AmbientMap = Vec<FreeElement>;

pub fn apply(map: &[FreeElement], e: &FreeElement) -> FreeElement {
    let ctx = e.ctx();
    let mut acc = FreeElement::zero(ctx);
    for (k, p) in e.components() {
        acc = acc.add(&map[k].mul_poly(&p));
    }
    acc
}

/// Constant entries as a sparse vector (meaningful when `m = 0`).
pub fn to_sparse(e: &FreeElement) -> SparseVec {
    linalg::collect(e.terms().iter().map(|(c, _, a)| (*c, a.clone())))
}

pub fn from_sparse(base: Context, v: &SparseVec) -> FreeElement {
    let one = Monomial::one(base.nvars());
    FreeElement::from_terms(base, v.iter().map(|(i, a)| (*i, one.clone(), a.clone())))
}

/// Generators of `{v ∈ ⊕_{k<n_src} R e_k : Σ v_k cols_k ∈ span(rel)}`.
pub fn preimage(base: Context, cols: &[FreeElement], rel: &[FreeElement], target_weights: &[i64], n_src: usize, src_weights: &[i64]) -> Vec<FreeElement> {
    let mut padded = cols.to_vec();
    padded.resize(n_src.max(cols.len()), FreeElement::zero(base));
    let gens: Vec<FreeElement> = padded.into_iter().chain(rel.iter().cloned()).collect();
    let mut out: Vec<FreeElement> = Vec::new();
    // zero columns contribute unit vectors directly
    let nz: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    for i in 0..n_src {
        if gens[i].is_zero() {
            out.push(FreeElement::unit(base, i));
        }
    }
    if !nz.is_empty() {
        let sub: Vec<FreeElement> = nz.iter().map(|&i| gens[i].clone()).collect();
        for s in syzygies(base, &sub, &order(base, target_weights)) {
            let v = s.map_components(|k| nz[k]).filter_components(|k| k < n_src);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    irredundant(&out, src_weights)
}

/// An irredundant generating subset, lowest degree first.
pub fn irredundant(elems: &[FreeElement], weights: &[i64]) -> Vec<FreeElement> {
    if elems.is_empty() {
        return Vec::new();
    }
    let base = elems[0].ctx();
    minimal_generators(elems, &order(base, weights)).into_iter().map(|i| elems[i].clone()).collect()
}

pub fn span_contains(gens: &[FreeElement], e: &FreeElement, weights: &[i64]) -> bool {
    if e.is_zero() {
        return true;
    }
    let nz: Vec<FreeElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nz.is_empty() {
        return false;
    }
    GroebnerBasis::compute(e.ctx(), &nz, &order(e.ctx(), weights), false).contains(e)
}

/// Whether every element of `es` lies in `span(gens)`, with one basis computation.
pub fn span_contains_all(gens: &[FreeElement], es: &[FreeElement], weights: &[i64]) -> bool {
    let es: Vec<&FreeElement> = es.iter().filter(|e| !e.is_zero()).collect();
    if es.is_empty() {
        return true;
    }
    let nz: Vec<FreeElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nz.is_empty() {
        return false;
    }
    let base = es[0].ctx();
    let gb = GroebnerBasis::compute(base, &nz, &order(base, weights), false);
    es.iter().all(|e| gb.contains(e))
}

/// Submodule equality `span(a) = span(b)`.
pub fn same_span(a: &[FreeElement], b: &[FreeElement], weights: &[i64]) -> bool {
    span_contains_all(a, b, weights) && span_contains_all(b, a, weights)
}

impl SlicePresentation {
    pub fn free(base: Context, weights: Vec<i64>) -> Self {
        let basis_labels = (1..=weights.len()).map(|i| format!("e{i}")).collect();
        SlicePresentation { base, ambient_rank: weights.len(), relations: Vec::new(), basis_labels, weights }
    }

    pub fn zero(base: Context) -> Self {
        Self::free(base, Vec::new())
    }

    pub fn order(&self) -> MonomialOrder {
        order(self.base, &self.weights)
    }

    fn gb(&self) -> GroebnerBasis {
        let nz: Vec<FreeElement> = self.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        GroebnerBasis::compute(self.base, &nz, &self.order(), false)
    }

    /// `ambient_rank − rank(relations)`; requires `m = 0`.
    pub fn field_dim(&self) -> usize {
        assert_eq!(self.base.m, 0, "field dimension needs m = 0");
        let v: Vec<SparseVec> = self.relations.iter().map(to_sparse).collect();
        self.ambient_rank - linalg::rank(&v)
    }

    pub fn is_zero(&self) -> bool {
        if self.base.m == 0 {
            return self.field_dim() == 0;
        }
        let gb = self.gb();
        let one = Monomial::one(self.base.nvars());
        (0..self.ambient_rank).all(|k| !gb.is_standard(k, &one))
    }

    /// Dimension of the x-degree-`d` part for each `d` in the window.
    pub fn hilbert_function(&self, window: RangeInclusive<i64>) -> Vec<(i64, usize)> {
        let gb = self.gb();
        window.map(|d| (d, self.hf_at(&gb, d))).collect()
    }

    fn hf_at(&self, gb: &GroebnerBasis, d: i64) -> usize {
        let mut count = 0;
        for k in 0..self.ambient_rank {
            let e = d - self.weights[k];
            if e < 0 {
                continue;
            }
            for a in exponent_vectors(self.base.m, e as u32) {
                if gb.is_standard(k, &Monomial::from_exps(&a)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Total dimension over Q when finite.
    pub fn total_dim(&self) -> Option<usize> {
        if self.base.m == 0 {
            return Some(self.field_dim());
        }
        let gb = self.gb();
        let leads = gb.leading_terms();
        let m = self.base.m;
        let mut top = i64::MIN;
        for k in 0..self.ambient_rank {
            let mine: Vec<&Monomial> = leads.iter().filter(|(c, _)| *c == k).map(|(_, mon)| mon).collect();
            if mine.iter().any(|mon| mon.is_one()) {
                continue;
            }
            let mut span = 0i64;
            for i in 0..m {
                let pure = mine.iter().filter(|mon| mon.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0)).map(|mon| mon.exps()[i] as i64).min()?;
                span += pure - 1;
            }
            top = top.max(self.weights[k] + span);
        }
        if top == i64::MIN {
            return Some(0);
        }
        let lo = self.weights.iter().copied().min().unwrap_or(0);
        Some((lo..=top).map(|d| self.hf_at(&gb, d)).sum())
    }

    /// Lowest x-degree with a nonzero Hilbert function value, searched up to
    /// `limit` degrees above the lowest generator weight.
    pub fn initial_degree(&self, limit: i64) -> Option<i64> {
        let gb = self.gb();
        let lo = self.weights.iter().copied().min()?;
        (lo..=lo + limit).find(|&d| self.hf_at(&gb, d) > 0)
    }

    /// Hilbert function over `len` degrees starting at the initial degree.
    pub fn normalized_hf(&self, len: usize) -> Vec<usize> {
        let gb = self.gb();
        let Some(lo) = self.weights.iter().copied().min() else { return vec![0; len] };
        let start = (lo..=lo + 64).find(|&d| self.hf_at(&gb, d) > 0);
        match start {
            None => vec![0; len],
            Some(s) => (s..s + len as i64).map(|d| self.hf_at(&gb, d)).collect(),
        }
    }

    /// Removes generators killed by relations with a unit entry and drops
    /// redundant relations. The module is unchanged up to isomorphism.
    pub fn pruned(&self) -> SlicePresentation {
        let mut rels: Vec<FreeElement> = self.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut alive: Vec<usize> = (0..self.ambient_rank).collect();
        loop {
            let mut hit = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                for (c, mon, a) in r.terms() {
                    if mon.is_one() {
                        hit = Some((ri, *c, a.clone()));
                        break 'search;
                    }
                }
            }
            let Some((ri, g, a)) = hit else { break };
            let r = rels.swap_remove(ri);
            let inv = a.recip();
            rels = rels
                .into_iter()
                .map(|s| {
                    let sg = s.component(g);
                    if sg.is_zero() {
                        s
                    } else {
                        s.sub(&r.mul_poly(&sg.scale(&inv)))
                    }
                })
                .filter(|s| !s.is_zero())
                .collect();
            alive.retain(|&k| k != g);
        }
        let pos = |k: usize| alive.binary_search(&k).unwrap();
        let rels: Vec<FreeElement> = rels.iter().map(|r| r.map_components(pos)).collect();
        let weights: Vec<i64> = alive.iter().map(|&k| self.weights[k]).collect();
        let rels = irredundant(&rels, &weights);
        SlicePresentation {
            base: self.base,
            ambient_rank: alive.len(),
            relations: rels,
            basis_labels: alive.iter().map(|&k| self.basis_labels[k].clone()).collect(),
            weights,
        }
    }

    pub fn direct_sum(base: Context, parts: &[SlicePresentation]) -> SlicePresentation {
        let mut out = SlicePresentation::zero(base);
        for p in parts {
            let off = out.ambient_rank;
            out.relations.extend(p.relations.iter().map(|r| r.map_components(|k| k + off)));
            out.basis_labels.extend(p.basis_labels.iter().cloned());
            out.weights.extend(p.weights.iter().copied());
            out.ambient_rank += p.ambient_rank;
        }
        out
    }

    /// `Hom_R(M, R)` for a free `M` (no relations): the dual basis with negated weights.
    pub fn dual_free(&self) -> SlicePresentation {
        assert!(self.relations.is_empty());
        SlicePresentation {
            base: self.base,
            ambient_rank: self.ambient_rank,
            relations: Vec::new(),
            basis_labels: self.basis_labels.iter().map(|l| format!("{l}^*")).collect(),
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }
}

/// `Z / B` inside a term `M = F / rel` of a complex of presented modules:
/// `cycles` generate the preimage of the kernel in `F`, `boundaries` generate
/// the image of the incoming map plus `rel`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub base: Context,
    pub weights: Vec<i64>,
    pub cycles: Vec<FreeElement>,
    pub boundaries: Vec<FreeElement>,
}

impl Subquotient {
    /// The whole module `M` (cycles = basis).
    pub fn whole(m: &SlicePresentation) -> Self {
        Subquotient {
            base: m.base,
            weights: m.weights.clone(),
            cycles: (0..m.ambient_rank).map(|k| FreeElement::unit(m.base, k)).collect(),
            boundaries: m.relations.clone(),
        }
    }

    /// Homology at `cur` of `prev --d_in--> cur --d_out--> next`.
    pub fn homology(cur: &SlicePresentation, d_in: &[FreeElement], d_out: &[FreeElement], next: &SlicePresentation) -> Self {
        let base = cur.base;
        let cycles = preimage(base, d_out, &next.relations, &next.weights, cur.ambient_rank, &cur.weights);
        let bd: Vec<FreeElement> = d_in.iter().chain(cur.relations.iter()).filter(|e| !e.is_zero()).cloned().collect();
        let boundaries = irredundant(&bd, &cur.weights);
        Subquotient { base, weights: cur.weights.clone(), cycles, boundaries }
    }

    pub fn is_zero(&self) -> bool {
        span_contains_all(&self.boundaries, &self.cycles, &self.weights)
    }

    /// An explicit presentation of `Z / (Z ∩ B)`, generators = `cycles`.
    pub fn presentation(&self) -> SlicePresentation {
        let s = self.cycles.len();
        let zw: Vec<i64> = self.cycles.iter().map(|z| z.x_weight(&self.weights).unwrap_or(0)).collect();
        let cols: Vec<FreeElement> = self.cycles.clone();
        let rel = if s == 0 { Vec::new() } else { preimage(self.base, &cols, &self.boundaries, &self.weights, s, &zw) };
        SlicePresentation { base: self.base, ambient_rank: s, relations: rel, basis_labels: (1..=s).map(|i| format!("z{i}")).collect(), weights: zw }.pruned()
    }

    /// Q-dimension when `m = 0` (cheap path through linear algebra).
    pub fn field_dim(&self) -> usize {
        let z: Vec<SparseVec> = self.cycles.iter().map(to_sparse).collect();
        let b: Vec<SparseVec> = self.boundaries.iter().map(to_sparse).collect();
        let rb = linalg::rank(&b);
        let all: Vec<SparseVec> = b.into_iter().chain(z).collect();
        linalg::rank(&all) - rb
    }
}

/// Images under `map` of the cycle generators of `h`.
pub fn images(map: &[FreeElement], h: &Subquotient) -> Vec<FreeElement> {
    h.cycles.iter().map(|z| apply(map, z)).collect()
}

/// Whether the map `H1 → H2` induced by an ambient map, given through the
/// images of `h1.cycles`, is injective.
pub fn induced_injective(h1: &Subquotient, imgs: &[FreeElement], h2: &Subquotient) -> bool {
    let s = h1.cycles.len();
    if s == 0 {
        return true;
    }
    let zw: Vec<i64> = h1.cycles.iter().map(|z| z.x_weight(&h1.weights).unwrap_or(0)).collect();
    let ker = preimage(h1.base, imgs, &h2.boundaries, &h2.weights, s, &zw);
    let lifted: Vec<FreeElement> = ker.iter().map(|a| apply(&h1.cycles, a)).collect();
    span_contains_all(&h1.boundaries, &lifted, &h1.weights)
}

pub fn induced_surjective(imgs: &[FreeElement], h2: &Subquotient) -> bool {
    let gens: Vec<FreeElement> = imgs.iter().chain(h2.boundaries.iter()).cloned().collect();
    span_contains_all(&gens, &h2.cycles, &h2.weights)
}

pub fn induced_iso(h1: &Subquotient, imgs: &[FreeElement], h2: &Subquotient) -> bool {
    induced_surjective(imgs, h2) && induced_injective(h1, imgs, h2)
}

/// Exactness of `H1 --f--> H2 --g--> H3` at `H2`, for maps given on ambients.
pub fn exact_at(h1: &Subquotient, f: &[FreeElement], h2: &Subquotient, g: &[FreeElement], h3: &Subquotient) -> bool {
    let fz = images(f, h1);
    let gfz: Vec<FreeElement> = fz.iter().map(|e| apply(g, e)).collect();
    if !span_contains_all(&h3.boundaries, &gfz, &h3.weights) {
        return false;
    }
    let s = h2.cycles.len();
    if s == 0 {
        return true;
    }
    let gz = images(g, h2);
    let zw: Vec<i64> = h2.cycles.iter().map(|z| z.x_weight(&h2.weights).unwrap_or(0)).collect();
    let ker = preimage(h2.base, &gz, &h3.boundaries, &h3.weights, s, &zw);
    let lifted: Vec<FreeElement> = ker.iter().map(|a| apply(&h2.cycles, a)).collect();
    let gens: Vec<FreeElement> = fz.into_iter().chain(h2.boundaries.iter().cloned()).collect();
    span_contains_all(&gens, &lifted, &h2.weights)
}

/// `c · e` for a scalar, convenience for building maps.
pub fn scaled(e: &FreeElement, c: i64) -> FreeElement {
    e.scale(&Rational::from_int(c))
}

/// The element `p · e_k`.
pub fn entry(base: Context, k: usize, p: Polynomial) -> FreeElement {
    FreeElement::from_components(base, [(k, p)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn base(m: usize) -> Context {
        Context::new(m, 0)
    }

    fn poly(m: usize, s: &str) -> Polynomial {
        parse_polynomial(base(m), s).unwrap()
    }

    #[test]
    fn cyclic_quotient_hilbert() {
        // R / (x^3) for R = Q[x]
        let mut p = SlicePresentation::free(base(1), vec![0]);
        p.relations.push(entry(base(1), 0, poly(1, "x1^3")));
        assert_eq!(p.hilbert_function(-1..=4), vec![(-1, 0), (0, 1), (1, 1), (2, 1), (3, 0), (4, 0)]);
        assert_eq!(p.total_dim(), Some(3));
        // R itself is infinite
        assert_eq!(SlicePresentation::free(base(1), vec![2]).total_dim(), None);
        assert_eq!(SlicePresentation::free(base(1), vec![2]).normalized_hf(3), vec![1, 1, 1]);
    }

    #[test]
    fn pruning_keeps_the_module() {
        let b = base(2);
        let mut p = SlicePresentation::free(b, vec![0, 0, -1]);
        // e1 = x1 e3 - ... : unit entry on e1
        p.relations.push(FreeElement::from_components(b, [(0, poly(2, "1")), (2, poly(2, "x2"))]));
        p.relations.push(FreeElement::from_components(b, [(0, poly(2, "x1")), (1, poly(2, "x2"))]));
        let q = p.pruned();
        assert_eq!(q.ambient_rank, 2);
        assert_eq!(p.hilbert_function(0..=4), q.hilbert_function(0..=4));
    }

    #[test]
    fn homology_of_koszul_on_two_variables() {
        // 0 → R → R^2 → R → 0 with (x1, x2): homology only at the end, R/(x1,x2)
        let b = base(2);
        let r0 = SlicePresentation::free(b, vec![2]);
        let r1 = SlicePresentation::free(b, vec![1, 1]);
        let r2 = SlicePresentation::free(b, vec![0]);
        let d0 = vec![FreeElement::from_components(b, [(0, poly(2, "x2")), (1, poly(2, "-x1"))])];
        let d1 = vec![entry(b, 0, poly(2, "x1")), entry(b, 0, poly(2, "x2"))];
        let zero = SlicePresentation::zero(b);
        let h0 = Subquotient::homology(&r0, &[], &d0, &r1);
        let h1 = Subquotient::homology(&r1, &d0, &d1, &r2);
        let h2 = Subquotient::homology(&r2, &d1, &[], &zero);
        assert!(h0.is_zero());
        assert!(h1.is_zero());
        assert!(!h2.is_zero());
        assert_eq!(h2.presentation().total_dim(), Some(1));
        assert!(exact_at(&h0, &d0, &h1, &d1, &h2));
    }

    #[test]
    fn induced_maps() {
        // multiplication by x on R/(x^2): neither injective nor surjective
        let b = base(1);
        let mut m = SlicePresentation::free(b, vec![0]);
        m.relations.push(entry(b, 0, poly(1, "x1^2")));
        let h = Subquotient::whole(&m);
        let x = vec![entry(b, 0, poly(1, "x1"))];
        let im = images(&x, &h);
        assert!(!induced_injective(&h, &im, &h));
        assert!(!induced_surjective(&im, &h));
        let id = vec![entry(b, 0, poly(1, "1"))];
        assert!(induced_iso(&h, &images(&id, &h), &h));
        assert!(same_span(&[entry(b, 0, poly(1, "x1"))], &[entry(b, 0, poly(1, "2*x1"))], &[0]));
    }
}
