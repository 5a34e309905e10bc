use std::collections::HashMap;

use crate::complexes::FreeComplex;
use crate::graded::{GradedFreeModule, KeyedSlice, SlicePresentation};
use crate::grobner::FreeElement;
use crate::linalg;
use crate::poly::{exponent_vectors, Context, Monomial};
use crate::rmod::{self, Subquotient};

fn inverse_label(ctx: Context, c: usize, a: &[u32]) -> String {
    let mut parts: Vec<String> = a.iter().enumerate().map(|(i, e)| format!("{}^-{e}", ctx.var_name(ctx.m + i))).collect();
    parts.push(format!("e{}", c + 1));
    parts.join("*")
}

/// Degree-`p` slice of `H^n_I(F)`: basis `u^{-a} e_c` with every `a_i ≥ 1`
/// and `|a| = twist_c − p`.
pub fn inverse_slice(ctx: Context, f: &GradedFreeModule, p: i64) -> KeyedSlice {
    let n = ctx.n;
    let mut keys = Vec::new();
    let mut weights = Vec::new();
    for (c, &t) in f.twists.iter().enumerate() {
        let excess = t - p - n as i64;
        if n == 0 || excess < 0 {
            continue;
        }
        for b in exponent_vectors(n, excess as u32) {
            keys.push((c, b.iter().map(|x| x + 1).collect::<Vec<u32>>()));
            weights.push(f.x_weights[c]);
        }
    }
    let index: HashMap<(usize, Vec<u32>), usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let basis_labels = keys.iter().map(|(c, a)| inverse_label(ctx, *c, a)).collect();
    KeyedSlice { pres: SlicePresentation { base: ctx.base(), ambient_rank: keys.len(), relations: Vec::new(), basis_labels, weights }, keys, index }
}

/// `H^n_I` of a map of free modules on degree-`p` slices:
/// `u^μ · u^{-a} = u^{-(a−μ)}` when `a − μ ≥ 1`, else `0`.
pub fn map_on_inverse(ctx: Context, cols: &[FreeElement], src: &KeyedSlice, tgt: &KeyedSlice) -> Vec<FreeElement> {
    let base = ctx.base();
    src.keys
        .iter()
        .map(|(c, a)| {
            let terms = cols[*c].terms().iter().filter_map(|(r, m, coef)| {
                let (xa, mu) = ctx.split(m);
                if a.iter().zip(mu).any(|(x, y)| x <= y) {
                    return None;
                }
                let b: Vec<u32> = a.iter().zip(mu).map(|(x, y)| x - y).collect();
                Some((tgt.index[&(*r, b)], Monomial::from_exps(xa), coef.clone()))
            });
            FreeElement::from_terms(base, terms)
        })
        .collect()
}

/// Degree-`p` slice of `H^n_I(F)` as a free `R`-module with labeled basis.
pub fn top_lc_of_free(ctx: Context, f: &GradedFreeModule, p: i64) -> SlicePresentation {
    inverse_slice(ctx, f, p).pres
}

fn term_inverse(l: &FreeComplex, a: i64, p: i64) -> KeyedSlice {
    let empty = GradedFreeModule::new(vec![]);
    inverse_slice(l.ctx, l.term(a).unwrap_or(&empty), p)
}

fn diff_inverse(l: &FreeComplex, a: i64, src: &KeyedSlice, tgt: &KeyedSlice) -> Vec<FreeElement> {
    match l.differential(a) {
        Some(d) => map_on_inverse(l.ctx, d, src, tgt),
        None => vec![FreeElement::zero(l.ctx.base()); src.keys.len()],
    }
}

/// `H^i_I(L)_p = H^{i−n}(H^n_I(L^•))_p` for a complex of free modules, as a
/// subquotient of `H^n_I(L^{i−n})_p`.
pub fn lc_free_complex(l: &FreeComplex, i: i64, p: i64) -> (SlicePresentation, Subquotient) {
    let j = i - l.ctx.n as i64;
    let prev = term_inverse(l, j - 1, p);
    let cur = term_inverse(l, j, p);
    let next = term_inverse(l, j + 1, p);
    let d_in = diff_inverse(l, j - 1, &prev, &cur);
    let d_out = diff_inverse(l, j, &cur, &next);
    let h = Subquotient::homology(&cur.pres, &d_in, &d_out, &next.pres);
    (cur.pres, h)
}

/// Q-dimension of `H^i_I(L)_p`; requires `m = 0`.
pub fn lc_free_complex_dim(l: &FreeComplex, i: i64, p: i64) -> usize {
    assert_eq!(l.ctx.m, 0);
    let j = i - l.ctx.n as i64;
    let prev = term_inverse(l, j - 1, p);
    let cur = term_inverse(l, j, p);
    let next = term_inverse(l, j + 1, p);
    if cur.keys.is_empty() {
        return 0;
    }
    let d_in: Vec<_> = diff_inverse(l, j - 1, &prev, &cur).iter().map(rmod::to_sparse).collect();
    let d_out: Vec<_> = diff_inverse(l, j, &cur, &next).iter().map(rmod::to_sparse).collect();
    cur.keys.len() - linalg::rank(&d_out) - linalg::rank(&d_in)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial;
    use proptest::prelude::*;

    #[test]
    fn projective_line_top_cohomology() {
        let ctx = Context::new(0, 2);
        let a = GradedFreeModule::new(vec![0]);
        assert_eq!(top_lc_of_free(ctx, &a, -2).ambient_rank, 1);
        assert_eq!(top_lc_of_free(ctx, &a, -2).basis_labels, vec!["u1^-1*u2^-1*e1"]);
        assert_eq!(top_lc_of_free(ctx, &a, -4).ambient_rank, 3);
        assert_eq!(top_lc_of_free(ctx, &a, -1).ambient_rank, 0);
        assert_eq!(top_lc_of_free(ctx, &a, 3).ambient_rank, 0);
    }

    proptest! {
        #[test]
        fn inverse_slice_dims(q in -4i64..5, p in -10i64..6, n in 1usize..4) {
            let ctx = Context::new(0, n);
            let f = GradedFreeModule::new(vec![q]);
            let want = if q - p >= n as i64 { binomial(q - p - 1, n as i64 - 1) } else { 0 };
            prop_assert_eq!(top_lc_of_free(ctx, &f, p).ambient_rank as u64, want);
        }
    }
}
