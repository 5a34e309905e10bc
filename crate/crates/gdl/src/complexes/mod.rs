//! Bounded complexes of graded free modules, free resolutions, the Koszul
//! resolution of `A/I`, dual complexes, and Ext over `A` and over `R`.
//!
//! Indexing is cohomological throughout. A resolution of `G` sits in
//! indices `≤ 0` with `L^0 = F0`. The dual of `L` with shift `s` has
//! `D^i = Hom(L^{−i−s}, A)` and `d_D^i = (−1)^i (d_L^{−i−s−1})^T`, so
//! `Ext^j_A(G, A[n]) = H^j(dual_complex(L, n))`.

mod ext;
mod resolution;

pub use ext::{ext_over_a, ext_over_a_dim, ext_over_r, ext_over_r_dim};
pub use resolution::{free_resolution, prune_constants, ResolutionCert};

use crate::error::{Error, Result};
use crate::graded::SlicePresentation;
use crate::graded::{free_slice, map_on_slice, GradedFreeModule, KeyedSlice};
use crate::grobner::FreeElement;
use crate::poly::{Context, Polynomial};
use crate::rmod::{self, Subquotient};

/// `C^lo → C^{lo+1} → … → C^hi`. `maps[k]` is `d^{lo+k}`, given by the
/// images of the basis of `C^{lo+k}` in `C^{lo+k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub ctx: Context,
    pub lo: i64,
    pub terms: Vec<GradedFreeModule>,
    pub maps: Vec<Vec<FreeElement>>,
}

impl FreeComplex {
    /// Validates shapes, homogeneity and `d∘d = 0`.
    pub fn new(ctx: Context, lo: i64, terms: Vec<GradedFreeModule>, maps: Vec<Vec<FreeElement>>) -> Result<Self> {
        if maps.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidInput(format!("{} terms need {} maps, got {}", terms.len(), terms.len().saturating_sub(1), maps.len())));
        }
        let c = FreeComplex { ctx, lo, terms, maps };
        for (k, d) in c.maps.iter().enumerate() {
            let (src, tgt) = (&c.terms[k], &c.terms[k + 1]);
            if d.len() != src.rank() {
                return Err(Error::InvalidInput(format!("d^{} has {} columns for a rank-{} term", lo + k as i64, d.len(), src.rank())));
            }
            for (j, col) in d.iter().enumerate() {
                if col.max_component().is_some_and(|r| r >= tgt.rank()) {
                    return Err(Error::InvalidInput(format!("d^{} column {} leaves the target", lo + k as i64, j + 1)));
                }
                if let Some(deg) = col.graded_degree(&tgt.twists) {
                    if deg != src.twists[j] {
                        return Err(Error::NotHomogeneous {
                            column: j + 1,
                            detail: format!("d^{} column has degree {deg}, source twist {}", lo + k as i64, src.twists[j]),
                        });
                    }
                } else if !col.is_zero() {
                    return Err(Error::NotHomogeneous { column: j + 1, detail: format!("d^{} column mixes degrees", lo + k as i64) });
                }
            }
        }
        if !c.is_complex() {
            return Err(Error::InvalidInput("d∘d ≠ 0".into()));
        }
        Ok(c)
    }

    /// A single free module placed at index `at`.
    pub fn concentrated(ctx: Context, f: GradedFreeModule, at: i64) -> Self {
        FreeComplex { ctx, lo: at, terms: vec![f], maps: vec![] }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    pub fn term(&self, i: i64) -> Option<&GradedFreeModule> {
        if i < self.lo {
            return None;
        }
        self.terms.get((i - self.lo) as usize)
    }

    /// `d^i: C^i → C^{i+1}`, if both terms exist.
    pub fn differential(&self, i: i64) -> Option<&[FreeElement]> {
        if i < self.lo {
            return None;
        }
        self.maps.get((i - self.lo) as usize).map(|v| v.as_slice())
    }

    /// `d^{i+1} ∘ d^i = 0` for all `i`, as an exact identity.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].iter().all(|col| rmod::apply(&w[1], col).is_zero()))
    }

    /// Degree-`p` slice of `C^i` (empty outside the support).
    pub fn term_slice(&self, i: i64, p: i64) -> KeyedSlice {
        let empty = GradedFreeModule::new(vec![]);
        free_slice(self.ctx, self.term(i).unwrap_or(&empty), p)
    }

    /// `R`-matrix of `d^i` on degree-`p` slices.
    pub fn differential_slice(&self, i: i64, src: &KeyedSlice, tgt: &KeyedSlice) -> Vec<FreeElement> {
        match self.differential(i) {
            Some(d) => map_on_slice(self.ctx, d, src, tgt),
            None => vec![FreeElement::zero(self.ctx.base()); src.keys.len()],
        }
    }

    /// `H^i` of the degree-`p` slice, as a subquotient of `C^i_p`.
    pub fn cohomology_slice(&self, i: i64, p: i64) -> (SlicePresentation, Subquotient) {
        let prev = self.term_slice(i - 1, p);
        let cur = self.term_slice(i, p);
        let next = self.term_slice(i + 1, p);
        let d_in = self.differential_slice(i - 1, &prev, &cur);
        let d_out = self.differential_slice(i, &cur, &next);
        let h = Subquotient::homology(&cur.pres, &d_in, &d_out, &next.pres);
        (cur.pres, h)
    }

    /// Dimension over Q of `H^i` in degree `p`; requires `m = 0`.
    pub fn cohomology_dim(&self, i: i64, p: i64) -> usize {
        assert_eq!(self.ctx.m, 0);
        let prev = self.term_slice(i - 1, p);
        let cur = self.term_slice(i, p);
        let next = self.term_slice(i + 1, p);
        let d_in: Vec<_> = self.differential_slice(i - 1, &prev, &cur).iter().map(rmod::to_sparse).collect();
        let d_out: Vec<_> = self.differential_slice(i, &cur, &next).iter().map(rmod::to_sparse).collect();
        cur.keys.len() - crate::linalg::rank(&d_out) - crate::linalg::rank(&d_in)
    }

    /// Whether every `d^i` entry is non-constant (or zero).
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().all(|col| col.terms().iter().all(|(_, m, _)| !m.is_one()))
    }

    /// Ranks of the terms, from `lo` to `hi`.
    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank()).collect()
    }

    /// Smallest and largest twist over all terms.
    pub fn twist_range(&self) -> Option<(i64, i64)> {
        let all = self.terms.iter().flat_map(|t| t.twists.iter().copied());
        Some((all.clone().min()?, all.max()?))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for t in start..n {
            cur.push(t);
            rec(t + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `(−1)^{#{s ∈ J : s < t}}`
pub fn koszul_sign(subset: &[usize], t: usize) -> i64 {
    if subset.iter().filter(|&&s| s < t).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Koszul complex on `u1..un`, resolving `A/I`: index `i ∈ [−n, 0]`
/// has one generator `e_J` of degree `|J| = −i` per subset, and
/// `d(e_J) = Σ_{t∈J} (−1)^{#{s∈J: s<t}} u_t e_{J∖t}`.
pub fn koszul_resolution(ctx: Context) -> FreeComplex {
    let n = ctx.n;
    let levels: Vec<Vec<Vec<usize>>> = (0..=n).rev().map(|k| subsets(n, k)).collect();
    let terms = levels.iter().map(|js| GradedFreeModule::new(js.iter().map(|j| j.len() as i64).collect())).collect();
    let mut maps = Vec::new();
    for w in levels.windows(2) {
        let (src, tgt) = (&w[0], &w[1]);
        let cols = src
            .iter()
            .map(|j| {
                let comps = j.iter().map(|&t| {
                    let rest: Vec<usize> = j.iter().copied().filter(|&s| s != t).collect();
                    let r = tgt.iter().position(|x| *x == rest).unwrap();
                    (r, Polynomial::u(ctx, t).scale(&crate::rational::Rational::from_int(koszul_sign(j, t))))
                });
                FreeElement::from_components(ctx, comps)
            })
            .collect();
        maps.push(cols);
    }
    FreeComplex { ctx, lo: -(n as i64), terms, maps }
}

/// Transpose of a map of free modules: `cols` are images of a rank-`src`
/// basis in a rank-`tgt` module; the result has `tgt` columns in rank `src`.
pub fn transpose(ctx: Context, cols: &[FreeElement], tgt: usize) -> Vec<FreeElement> {
    let mut out: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); tgt];
    for (k, col) in cols.iter().enumerate() {
        for (r, p) in col.components() {
            out[r].push((k, p));
        }
    }
    out.into_iter().map(|c| FreeElement::from_components(ctx, c)).collect()
}

/// `Hom_A(L, A)` with the shift convention of the module docs:
/// `D^i = Hom(L^{−i−s}, A)`, `d_D^i = (−1)^i (d_L^{−i−s−1})^T`.
pub fn dual_complex(l: &FreeComplex, s: i64) -> FreeComplex {
    let ctx = l.ctx;
    let lo = -l.hi() - s;
    let terms: Vec<GradedFreeModule> = l.terms.iter().rev().map(|t| t.dual()).collect();
    let mut maps = Vec::new();
    for k in 0..l.maps.len() {
        let i = lo + k as i64;
        // d_L^{−i−s−1}
        let a = -i - s - 1;
        let d = &l.maps[(a - l.lo) as usize];
        let tgt_rank = l.terms[(a - l.lo + 1) as usize].rank();
        let sign = crate::rational::Rational::from_int(if i.rem_euclid(2) == 0 { 1 } else { -1 });
        maps.push(transpose(ctx, d, tgt_rank).into_iter().map(|c| c.scale(&sign)).collect());
    }
    FreeComplex { ctx, lo, terms, maps }
}
