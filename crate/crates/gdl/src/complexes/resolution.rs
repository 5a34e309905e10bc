use std::ops::RangeInclusive;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::graded::{slice_with_keys, GradedFreeModule, GradedPresentation};
use crate::grobner::{syzygy_module, FreeElement};
use crate::rmod::{self, Subquotient};

/// A free resolution `L^{-len} → … → L^0` of a module together with the
/// augmentation `L^0 → G` (images of the basis of `L^0` in `G`'s generators).
#[derive(Clone, Debug)]
pub struct ResolutionCert {
    pub module: GradedPresentation,
    pub complex: FreeComplex,
    pub augmentation: Vec<FreeElement>,
}

impl ResolutionCert {
    pub fn length(&self) -> usize {
        self.complex.len().saturating_sub(1)
    }

    /// Twists of each term, from `L^0` down to `L^{-len}`.
    pub fn betti(&self) -> Vec<Vec<i64>> {
        self.complex.terms.iter().rev().map(|t| t.twists.clone()).collect()
    }

    /// Slice-wise exactness on `window`: `H^{-j} = 0` for `j > 0`, and
    /// `L^{-1}_p → L^0_p → G_p → 0` exact.
    pub fn verify(&self, window: RangeInclusive<i64>) -> Result<()> {
        let c = &self.complex;
        let g = &self.module;
        for p in window {
            for i in c.lo..0 {
                let bad = if c.ctx.m == 0 { c.cohomology_dim(i, p) != 0 } else { !c.cohomology_slice(i, p).1.is_zero() };
                if bad {
                    return Err(Error::Internal(format!("resolution not exact at index {i}, degree {p}")));
                }
            }
            let l1 = c.term_slice(-1, p);
            let l0 = c.term_slice(0, p);
            let gp = slice_with_keys(g, p);
            let d = c.differential_slice(-1, &l1, &l0);
            let aug = crate::graded::map_on_slice(g.ctx, &self.augmentation, &l0, &gp);
            let h1 = Subquotient::whole(&l1.pres);
            let h2 = Subquotient::whole(&l0.pres);
            let h3 = Subquotient::whole(&gp.pres);
            if !rmod::exact_at(&h1, &d, &h2, &aug, &h3) || !rmod::induced_surjective(&rmod::images(&aug, &h2), &h3) {
                return Err(Error::Internal(format!("augmentation is not a cokernel in degree {p}")));
            }
        }
        Ok(())
    }
}

/// Resolves `G` by iterated syzygies, each an irredundant generating set
/// chosen lowest degree first. With `minimize`, constant entries (which can
/// only come from the given presentation) are then cancelled. Without it
/// every syzygy step keeps the raw Schreyer generators, giving a
/// non-minimal resolution.
pub fn free_resolution(g: &GradedPresentation, minimize: bool) -> ResolutionCert {
    let ctx = g.ctx;
    let bound = ctx.m + ctx.n;
    let mut terms = vec![g.target.clone()];
    let mut maps: Vec<Vec<FreeElement>> = Vec::new();
    if !g.matrix.is_empty() {
        terms.push(g.source.clone());
        maps.push(g.matrix.clone());
    }
    while let Some(cols) = maps.last() {
        let tgt = &terms[terms.len() - 2];
        let order = tgt.order(ctx);
        let raw = !minimize && maps.len() <= bound;
        let syz = syzygy_module(ctx, cols, &order, !raw);
        if syz.is_empty() {
            break;
        }
        if maps.len() > 2 * bound + 2 {
            // cannot happen for a correct syzygy routine (Hilbert's bound)
            panic!("resolution longer than {}", 2 * bound + 2);
        }
        let src = terms.last().unwrap();
        let twists = syz.iter().map(|s| s.graded_degree(&src.twists).expect("syzygies of homogeneous maps are homogeneous")).collect();
        let xw = syz.iter().map(|s| s.x_weight(&src.x_weights).unwrap_or(0)).collect();
        terms.push(GradedFreeModule::with_weights(twists, xw));
        maps.push(syz);
    }
    // stored from the bottom: L^{-len} first
    terms.reverse();
    maps.reverse();
    let lo = -(terms.len() as i64 - 1);
    let mut complex = FreeComplex { ctx, lo, terms, maps };
    let mut augmentation: Vec<FreeElement> = (0..g.ngens()).map(|c| FreeElement::unit(ctx, c)).collect();
    if minimize {
        prune_constants(&mut complex, &mut augmentation);
    }
    ResolutionCert { module: g.clone(), complex, augmentation }
}

/// Cancels constant differential entries by Gaussian elimination on the
/// complex, lowest index first, until none are left. `augmentation` (images
/// of the basis of `C^0`) is restricted accordingly. Trailing zero terms
/// are dropped.
pub fn prune_constants(c: &mut FreeComplex, augmentation: &mut Vec<FreeElement>) {
    while let Some((k, col, row, a)) = find_constant(c) {
        let inv = a.recip();
        let pivot = c.maps[k][col].clone();
        let mut d: Vec<FreeElement> = Vec::new();
        for (b, e) in c.maps[k].iter().enumerate() {
            if b == col {
                continue;
            }
            let delta = e.component(row);
            let e = if delta.is_zero() { e.clone() } else { e.sub(&pivot.mul_poly(&delta.scale(&inv))) };
            debug_assert!(e.component(row).is_zero());
            d.push(drop_component(&e, row));
        }
        c.maps[k] = d;
        // the pair (col, pivot) spans a split subcomplex; the rest is the
        // quotient by it, so images in C^k just forget the col coordinate
        if k > 0 {
            c.maps[k - 1] = c.maps[k - 1].iter().map(|e| drop_component(e, col)).collect();
        }
        if k + 1 < c.maps.len() {
            c.maps[k + 1].remove(row);
        }
        remove_generator(&mut c.terms[k], col);
        remove_generator(&mut c.terms[k + 1], row);
        if c.lo + k as i64 + 1 == 0 {
            augmentation.remove(row);
        }
    }
    while c.terms.len() > 1 && c.terms[0].rank() == 0 {
        c.terms.remove(0);
        c.maps.remove(0);
        c.lo += 1;
    }
}

fn find_constant(c: &FreeComplex) -> Option<(usize, usize, usize, crate::rational::Rational)> {
    for (k, d) in c.maps.iter().enumerate() {
        for (j, col) in d.iter().enumerate() {
            for (r, m, a) in col.terms() {
                if m.is_one() {
                    return Some((k, j, *r, a.clone()));
                }
            }
        }
    }
    None
}

fn drop_component(e: &FreeElement, r: usize) -> FreeElement {
    e.filter_components(|c| c != r).map_components(|c| if c > r { c - 1 } else { c })
}

fn remove_generator(f: &mut GradedFreeModule, i: usize) {
    f.twists.remove(i);
    f.x_weights.remove(i);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::koszul_resolution;
    use crate::graded::parse_module;
    use crate::poly::Context;

    #[test]
    fn free_module_resolves_in_length_zero() {
        let ctx = Context::new(0, 2);
        let r = free_resolution(&GradedPresentation::free(ctx, vec![0]), true);
        assert_eq!(r.length(), 0);
        r.verify(-2..=4).unwrap();
    }

    #[test]
    fn a_mod_i_gives_the_koszul_complex() {
        for n in 1..=3 {
            let ctx = Context::new(0, n);
            let r = free_resolution(&GradedPresentation::a_mod_i(ctx), true);
            let k = koszul_resolution(ctx);
            assert_eq!(r.complex.ranks(), k.ranks());
            for i in k.lo..=0 {
                let mut a = r.complex.term(i).unwrap().twists.clone();
                a.sort();
                assert_eq!(a, k.term(i).unwrap().twists);
            }
            assert!(r.complex.is_minimal());
            r.verify(-2..=5).unwrap();
        }
    }

    #[test]
    fn nilpotent_orbit_module_has_length_one() {
        let g = parse_module("vars 1 1\ntwists F0: -2\ntwists F1: 1\nrel: x1^2*u1^3\n").unwrap();
        let r = free_resolution(&g, true);
        assert_eq!(r.betti(), vec![vec![-2], vec![1]]);
        r.verify(-4..=3).unwrap();
    }

    #[test]
    fn pruning_removes_redundant_generators() {
        // A^2 / (e2 - u1 e1): isomorphic to A, presented non-minimally
        let g = parse_module("vars 0 2\ntwists F0: 0 1\ntwists F1: 1 2\nrel: u1, -1\nrel: u2^2, 0\n").unwrap();
        let plain = free_resolution(&g, false);
        let min = free_resolution(&g, true);
        assert!(!plain.complex.is_minimal());
        assert!(min.complex.is_minimal());
        assert_eq!(min.complex.ranks(), vec![1, 1]);
        plain.verify(-1..=4).unwrap();
        min.verify(-1..=4).unwrap();
    }
}
