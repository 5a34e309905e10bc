use super::basis::{Builder, GroebnerBasis, OVec};
use super::FreeElement;
use crate::poly::{Context, MonomialOrder, Polynomial};
use crate::rational::Rational;

/// Lead-term degree of each element in `order` (its graded degree when homogeneous).
pub fn lead_degrees(elems: &[FreeElement], order: &MonomialOrder) -> Vec<i64> {
    elems
        .iter()
        .map(|e| {
            let v = OVec::from_free(e, order);
            v.lead().map_or(0, |t| order.term_degree(t.0, &t.1))
        })
        .collect()
}

/// The order on the source module `⊕ A e_i` induced by sending `e_i ↦ gens[i]`.
pub fn induced_order(gens: &[FreeElement], order: &MonomialOrder) -> MonomialOrder {
    MonomialOrder { weights: lead_degrees(gens, order), ..order.clone() }
}

/// Generators of the kernel of `⊕ A e_i → F`, `e_i ↦ gens[i]` (Schreyer).
/// Not minimized; zero vectors are dropped.
pub fn syzygies(ctx: Context, gens: &[FreeElement], order: &MonomialOrder) -> Vec<FreeElement> {
    let gb = GroebnerBasis::compute(ctx, gens, order, true);
    let mut out = Vec::new();
    let leads = gb.leading_terms();
    let one = Rational::one();
    let combine = |base: FreeElement, quot: &[Polynomial]| {
        let mut acc = base;
        for (c, q) in quot.iter().enumerate() {
            if !q.is_zero() {
                acc = acc.sub(&gb.coordinates[c].mul_poly(q));
            }
        }
        acc
    };
    for a in 0..gb.len() {
        for b in a + 1..gb.len() {
            if leads[a].0 != leads[b].0 {
                continue;
            }
            let l = leads[a].1.lcm(&leads[b].1);
            let qa = leads[a].1.quotient_of(&l).unwrap();
            let qb = leads[b].1.quotient_of(&l).unwrap();
            let s = gb.generators[a].mul_term(&qa, &one).sub(&gb.generators[b].mul_term(&qb, &one));
            let (quot, r) = gb.divide(&s);
            debug_assert!(r.is_zero(), "S-vector of a Gröbner basis must reduce to zero");
            let base = gb.coordinates[a].mul_term(&qa, &one).sub(&gb.coordinates[b].mul_term(&qb, &one));
            let z = combine(base, &quot);
            if !z.is_zero() {
                out.push(z);
            }
        }
    }
    for (i, g) in gens.iter().enumerate() {
        let (quot, r) = gb.divide(g);
        debug_assert!(r.is_zero());
        let z = combine(FreeElement::unit(ctx, i), &quot);
        if !z.is_zero() {
            out.push(z);
        }
    }
    out
}

/// Indices of an irredundant generating subset of `elems`, chosen lowest
/// degree first (ties by position). For homogeneous input and a
/// degree-compatible order this is a minimal generating set.
pub fn minimal_generators(elems: &[FreeElement], order: &MonomialOrder) -> Vec<usize> {
    let degs = lead_degrees(elems, order);
    let mut idx: Vec<usize> = (0..elems.len()).filter(|&i| !elems[i].is_zero()).collect();
    idx.sort_by_key(|&i| (degs[i], i));
    let mut b = Builder::new(order.clone(), None);
    let mut keep = Vec::new();
    for i in idx {
        b.complete(Some(degs[i]));
        if b.add(OVec::from_free(&elems[i], order), None).is_some() {
            keep.push(i);
        }
    }
    keep.sort_unstable();
    keep
}

/// Syzygies of `gens`, reduced to an irredundant generating set when `minimize`.
pub fn syzygy_module(ctx: Context, gens: &[FreeElement], order: &MonomialOrder, minimize: bool) -> Vec<FreeElement> {
    let syz = syzygies(ctx, gens, order);
    if !minimize {
        return syz;
    }
    let src = induced_order(gens, order);
    let keep = minimal_generators(&syz, &src);
    let mut out: Vec<FreeElement> = keep.into_iter().map(|i| syz[i].clone()).collect();
    // deterministic presentation: by degree, then canonical term order
    let degs = lead_degrees(&out, &src);
    let mut paired: Vec<(i64, FreeElement)> = degs.into_iter().zip(out.drain(..)).collect();
    paired.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_elements(&a.1, &b.1)));
    paired.into_iter().map(|p| p.1).collect()
}

fn cmp_elements(a: &FreeElement, b: &FreeElement) -> std::cmp::Ordering {
    for (x, y) in a.terms().iter().zip(b.terms().iter()) {
        let c = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)).then_with(|| x.2.cmp(&y.2));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.terms().len().cmp(&b.terms().len())
}
