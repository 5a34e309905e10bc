use super::{dual_complex, free_resolution, transpose};
use crate::graded::{GradedPresentation, SlicePresentation};
use crate::grobner::{syzygy_module, FreeElement};
use crate::rmod::{self, Subquotient};

/// Degree-`p` slice of `Ext^j_A(G, A[n]) = H^j(dual_complex(L, n))`.
pub fn ext_over_a(g: &GradedPresentation, j: i64, p: i64) -> SlicePresentation {
    let l = free_resolution(g, true);
    let d = dual_complex(&l.complex, g.ctx.n as i64);
    if g.ctx.m == 0 {
        return SlicePresentation::free(g.ctx.base(), vec![0; d.cohomology_dim(j, p)]);
    }
    d.cohomology_slice(j, p).1.presentation()
}

/// `dim_Q` of [`ext_over_a`]; requires `m = 0`.
pub fn ext_over_a_dim(g: &GradedPresentation, j: i64, p: i64) -> usize {
    let l = free_resolution(g, true);
    dual_complex(&l.complex, g.ctx.n as i64).cohomology_dim(j, p)
}

/// A free resolution of an `R`-module: `(ranks' weights, maps)` with
/// `maps[k]: F_{k+1} → F_k`.
fn resolve_over_r(m: &SlicePresentation) -> (Vec<Vec<i64>>, Vec<Vec<FreeElement>>) {
    let base = m.base;
    let mut weights = vec![m.weights.clone()];
    let mut maps: Vec<Vec<FreeElement>> = Vec::new();
    let rel: Vec<FreeElement> = m.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    if !rel.is_empty() {
        weights.push(rel.iter().map(|r| r.x_weight(&m.weights).unwrap_or(0)).collect());
        maps.push(rel);
    }
    while let Some(cols) = maps.last() {
        let tw = &weights[weights.len() - 2];
        let syz = syzygy_module(base, cols, &rmod::order(base, tw), true);
        if syz.is_empty() {
            break;
        }
        let sw = weights.last().unwrap();
        let w = syz.iter().map(|s| s.x_weight(sw).unwrap_or(0)).collect();
        weights.push(w);
        maps.push(syz);
    }
    (weights, maps)
}

/// `Ext^j_R(M, R)` with `R` trivialized as its own canonical module. For
/// `m = 0` this is the dual space at `j = 0` and zero otherwise. The dual
/// basis carries negated weights.
pub fn ext_over_r(m: &SlicePresentation, j: i64) -> SlicePresentation {
    let base = m.base;
    if base.m == 0 {
        let d = if j == 0 { m.field_dim() } else { 0 };
        return SlicePresentation::free(base, vec![0; d]);
    }
    if j < 0 {
        return SlicePresentation::zero(base);
    }
    let m = m.pruned();
    let (weights, maps) = resolve_over_r(&m);
    let j = j as usize;
    if j >= weights.len() {
        return SlicePresentation::zero(base);
    }
    let dual = |k: usize| SlicePresentation::free(base, weights.get(k).map_or(vec![], |w| w.iter().map(|x| -x).collect()));
    let cur = dual(j);
    let next = dual(j + 1);
    // F_{j-1}^* → F_j^* is the transpose of F_j → F_{j-1}
    let d_in = if j == 0 { Vec::new() } else { transpose(base, &maps[j - 1], weights[j - 1].len()) };
    let d_out = if j < maps.len() { transpose(base, &maps[j], weights[j].len()) } else { vec![FreeElement::zero(base); cur.ambient_rank] };
    Subquotient::homology(&cur, &d_in, &d_out, &next).presentation()
}

/// Total Q-dimension of `Ext^j_R(M, R)` when finite.
pub fn ext_over_r_dim(m: &SlicePresentation, j: i64) -> Option<usize> {
    ext_over_r(m, j).total_dim()
}
