use std::collections::HashMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::{GradedFreeModule, GradedPresentation};
use crate::grobner::FreeElement;
use crate::poly::{exponent_vectors, Context, Monomial};

/// A finitely presented module over `R = Q[x1..xm]`:
/// `coker(relations) ⊂ ⊕_{k < ambient_rank} R e_k`, with `e_k` of base
/// degree `weights[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePresentation {
    pub base: Context,
    pub ambient_rank: usize,
    /// columns of the relation matrix
    pub relations: Vec<FreeElement>,
    pub basis_labels: Vec<String>,
    pub weights: Vec<i64>,
}

/// A slice together with the `(component, fiber exponent)` key of each
/// ambient basis vector.
#[derive(Clone, Debug)]
pub struct KeyedSlice {
    pub pres: SlicePresentation,
    pub keys: Vec<(usize, Vec<u32>)>,
    pub index: HashMap<(usize, Vec<u32>), usize>,
}

pub(crate) fn label(ctx: Context, c: usize, nu: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in nu.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.var_name(ctx.m + i)),
            _ => parts.push(format!("{}^{e}", ctx.var_name(ctx.m + i))),
        }
    }
    parts.push(format!("e{}", c + 1));
    parts.join("*")
}

/// The degree-`d` slice `G_d` as an `R`-presentation.
pub fn slice(g: &GradedPresentation, d: i64) -> SlicePresentation {
    slice_with_keys(g, d).pres
}

pub fn slice_with_keys(g: &GradedPresentation, d: i64) -> KeyedSlice {
    let mut out = free_slice(g.ctx, &g.target, d);
    let src = free_slice(g.ctx, &g.source, d);
    out.pres.relations = map_on_slice(g.ctx, &g.matrix, &src, &out).into_iter().filter(|e| !e.is_zero()).collect();
    out
}

/// The degree-`d` slice of a free module: one `R`-basis vector per
/// `(component, fiber monomial)` of the right degree.
pub fn free_slice(ctx: Context, f: &GradedFreeModule, d: i64) -> KeyedSlice {
    let mut keys = Vec::new();
    let mut weights = Vec::new();
    for (c, &t) in f.twists.iter().enumerate() {
        if d >= t {
            for nu in exponent_vectors(ctx.n, (d - t) as u32) {
                keys.push((c, nu));
                weights.push(f.x_weights[c]);
            }
        }
    }
    let index: HashMap<(usize, Vec<u32>), usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let basis_labels = keys.iter().map(|(c, nu)| label(ctx, *c, nu)).collect();
    KeyedSlice { pres: SlicePresentation { base: ctx.base(), ambient_rank: keys.len(), relations: Vec::new(), basis_labels, weights }, keys, index }
}

/// The `R`-matrix of a homogeneous map of free modules (given by the images
/// `cols` of the source basis) between two degree slices. Column `k` is the
/// image of the source slice basis vector `k`.
pub fn map_on_slice(ctx: Context, cols: &[FreeElement], src: &KeyedSlice, tgt: &KeyedSlice) -> Vec<FreeElement> {
    let base = ctx.base();
    src.keys
        .iter()
        .map(|(c, nu)| {
            let terms = cols[*c].terms().iter().map(|(r, m, a)| {
                let (xa, ua) = ctx.split(m);
                let beta: Vec<u32> = ua.iter().zip(nu).map(|(x, y)| x + y).collect();
                (tgt.index[&(*r, beta)], Monomial::from_exps(xa), a.clone())
            });
            FreeElement::from_terms(base, terms)
        })
        .collect()
}

/// Per-degree invariants of one slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HilbertEntry {
    /// `m = 0`: dimension over Q
    Dim { dim: usize },
    /// `m > 0`: `(x-degree, dim)` pairs over the x-window, and the total
    /// dimension when finite
    Graded { hf: Vec<(i64, usize)>, total: Option<usize> },
}

impl HilbertEntry {
    /// Invariants of one `R`-module slice; `x_window` is ignored for `m = 0`.
    pub fn of(s: &SlicePresentation, x_window: RangeInclusive<i64>) -> Self {
        if s.base.m == 0 {
            HilbertEntry::Dim { dim: s.field_dim() }
        } else {
            HilbertEntry::Graded { hf: s.hilbert_function(x_window), total: s.total_dim() }
        }
    }

    /// Dimension, or the sum over the x-window when infinite.
    pub fn size(&self) -> usize {
        match self {
            HilbertEntry::Dim { dim } => *dim,
            HilbertEntry::Graded { total, hf } => total.unwrap_or_else(|| hf.iter().map(|x| x.1).sum()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub entries: Vec<(i64, HilbertEntry)>,
}

impl HilbertData {
    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.entries.iter().map(|(d, e)| (*d, e.size())).collect()
    }
}

/// Hilbert data over `window`; for `m > 0` the x-degree window is `x_window`.
pub fn hilbert_data(g: &GradedPresentation, window: RangeInclusive<i64>, x_window: RangeInclusive<i64>) -> HilbertData {
    let entries = window.map(|d| (d, HilbertEntry::of(&slice(g, d), x_window.clone()))).collect();
    HilbertData { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{binomial, parse_polynomial, Polynomial};
    use crate::rational::Rational;
    use proptest::prelude::*;

    #[test]
    fn free_slices_count_monomials() {
        let ctx = Context::new(0, 2);
        let a = GradedPresentation::free(ctx, vec![0]);
        let dims: Vec<usize> = (-2..=2).map(|d| slice(&a, d).field_dim()).collect();
        assert_eq!(dims, vec![0, 0, 1, 2, 3]);
        assert_eq!(slice(&a.shift_grading(-3), 3).ambient_rank, 1);
        assert_eq!(a.shift_grading(0), a);
    }

    #[test]
    fn quotients_by_fiber_variables() {
        let ctx = Context::new(0, 1);
        let g = GradedPresentation::koszul_quotient(ctx, &[0]);
        let dims: Vec<usize> = (-2..=3).map(|d| slice(&g, d).field_dim()).collect();
        assert_eq!(dims, vec![0, 0, 1, 0, 0, 0]);
        for n in 1..5 {
            let ctx = Context::new(0, n);
            let g = GradedPresentation::a_mod_i(ctx);
            let h = hilbert_data(&g, -2..=3, 0..=0);
            assert_eq!(h.dims(), vec![(-2, 0), (-1, 0), (0, 1), (1, 0), (2, 0), (3, 0)]);
        }
    }

    #[test]
    fn labels_name_components_and_monomials() {
        let ctx = Context::new(0, 2);
        let a = GradedPresentation::free(ctx, vec![0, 1]);
        let s = slice(&a, 1);
        assert_eq!(s.basis_labels, vec!["u1*e1", "u2*e1", "e2"]);
    }

    #[test]
    fn sign_twist_example() {
        let ctx = Context::new(1, 2);
        let f = parse_polynomial(ctx, "u1 + x1*u1*u2 + u2^3").unwrap();
        let g = GradedPresentation::from_columns(ctx, GradedFreeModule::new(vec![0]), vec![FreeElement::from_components(ctx, [(0, f)])]);
        // not homogeneous: mixed fiber degrees
        assert!(g.is_err());
        let f = parse_polynomial(ctx, "u1*u2 + x1*u1^2 - u2^2").unwrap();
        let col = FreeElement::from_components(ctx, [(0, f.clone()), (1, Polynomial::u(ctx, 0))]);
        let g = GradedPresentation::from_columns(ctx, GradedFreeModule::new(vec![0, 1]), vec![col]).unwrap();
        let t = g.sign_twist();
        assert_eq!(t.matrix[0].component(0), f);
        assert_eq!(t.matrix[0].component(1), -&Polynomial::u(ctx, 0));
        assert_eq!(t.sign_twist(), g);
    }

    fn random_presentation() -> impl Strategy<Value = GradedPresentation> {
        let ctx = Context::new(0, 2);
        (prop::collection::vec(-1i64..2, 1..3), prop::collection::vec((0usize..2, 0usize..2, 0u32..3, -2i64..3, 1u32..3), 0..4)).prop_map(
            move |(twists, rels)| {
                let r = twists.len();
                let top = *twists.iter().max().unwrap();
                let cols = rels
                    .into_iter()
                    .map(|(c1, c2, a, coef, extra)| {
                        let (c1, c2) = (c1 % r, c2 % r);
                        let d = top + extra as i64;
                        let e1 = (d - twists[c1]) as u32;
                        let e2 = (d - twists[c2]) as u32;
                        let a1 = a.min(e1);
                        let a2 = (e2 + 1) / 2;
                        FreeElement::from_terms(
                            ctx,
                            [(c1, ctx.xi_monomial(&[a1, e1 - a1]), Rational::one()), (c2, ctx.xi_monomial(&[a2, e2 - a2]), Rational::from_int(coef))],
                        )
                    })
                    .collect();
                GradedPresentation::from_columns(ctx, GradedFreeModule::new(twists), cols).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn shift_moves_slices(g in random_presentation(), p in -3i64..4, q in -3i64..4, d in -3i64..6) {
            let a = slice(&g.shift_grading(p), d);
            let b = slice(&g, d + p);
            prop_assert_eq!(a.ambient_rank, b.ambient_rank);
            prop_assert_eq!(a.field_dim(), b.field_dim());
            prop_assert_eq!(slice(&g.shift_grading(p).shift_grading(q), d).field_dim(), slice(&g.shift_grading(p + q), d).field_dim());
        }

        #[test]
        fn sign_twist_involution_preserves_dims(g in random_presentation()) {
            let t = g.sign_twist();
            prop_assert_eq!(t.sign_twist(), g.clone());
            prop_assert_eq!(hilbert_data(&t, -2..=5, 0..=0), hilbert_data(&g, -2..=5, 0..=0));
        }

        #[test]
        fn free_dims_are_binomial(twists in prop::collection::vec(-3i64..3, 0..4), n in 1usize..4, d in -4i64..6) {
            let ctx = Context::new(0, n);
            let g = GradedPresentation::free(ctx, twists.clone());
            let want: u64 = twists.iter().map(|t| binomial(d - t + n as i64 - 1, n as i64 - 1)).sum();
            prop_assert_eq!(slice(&g, d).field_dim() as u64, want);
        }
    }
}
