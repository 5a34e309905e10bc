//! Truncated Koszul and Čech complexes `Hom(K(u1^k..un^k), C)` evaluated on
//! one degree slice, with the transition maps `k → k+1` (multiplication by
//! `u_J` on the summand indexed by `J`).

use std::collections::HashMap;

use crate::complexes::{free_resolution, koszul_sign, subsets, FreeComplex};
use crate::error::{Error, Result};
use crate::graded::{map_on_slice, slice_with_keys, GradedFreeModule, GradedPresentation, KeyedSlice, QuotientSlices, SlicePresentation};
use crate::grobner::FreeElement;
use crate::linalg::{self, Echelon, SparseMatrix, SparseVec};
use crate::poly::{Context, Monomial};
use crate::rational::Rational;
use crate::rmod::{self, Subquotient};

/// A bounded complex of presented modules `C^lo → … → C^hi` whose
/// differentials are given on generators, plus a free complex quasi-isomorphic
/// to it (used only to place the stabilization floor).
pub struct LcSource {
    pub ctx: Context,
    pub lo: i64,
    pub terms: Vec<GradedPresentation>,
    pub maps: Vec<Vec<FreeElement>>,
    pub free_model: FreeComplex,
    quotients: Vec<QuotientSlices>,
}

/// Where a colimit was read off.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Stabilization {
    pub k: u32,
    pub floor: u32,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub a: i64,
    pub subset: Vec<usize>,
    pub deg: i64,
}

enum Piece {
    Mul(Vec<u32>),
    Diff,
}

struct Edge {
    src: usize,
    tgt: usize,
    sign: i64,
    piece: Piece,
}

impl LcSource {
    /// A module; its minimal resolution is computed for the floor.
    pub fn module(g: &GradedPresentation) -> Self {
        let free_model = free_resolution(g, true).complex;
        Self::build(g.ctx, 0, vec![g.clone()], vec![], free_model)
    }

    pub fn complex(c: &FreeComplex) -> Self {
        let terms =
            c.terms.iter().map(|t| GradedPresentation { ctx: c.ctx, target: t.clone(), source: GradedFreeModule::new(vec![]), matrix: vec![] }).collect();
        Self::build(c.ctx, c.lo, terms, c.maps.clone(), c.clone())
    }

    fn build(ctx: Context, lo: i64, terms: Vec<GradedPresentation>, maps: Vec<Vec<FreeElement>>, free_model: FreeComplex) -> Self {
        let quotients = if ctx.m == 0 { terms.iter().map(QuotientSlices::new).collect() } else { Vec::new() };
        LcSource { ctx, lo, terms, maps, free_model, quotients }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    fn term(&self, a: i64) -> Option<&GradedPresentation> {
        if a < self.lo {
            return None;
        }
        self.terms.get((a - self.lo) as usize)
    }

    fn has_term(&self, a: i64) -> bool {
        self.term(a).is_some()
    }

    /// Smallest `k` at which the truncated Koszul value of `H^i_I` in degree
    /// `p` is already the colimit: every inverse monomial `u^{-a}` of the free
    /// model terms involved has all `a_t ≤ k`.
    pub fn koszul_floor(&self, i: i64, p: i64) -> u32 {
        let n = self.ctx.n as i64;
        let mut f = 2i64;
        for a in (i - n - 1)..=(i - n + 1) {
            if let Some(t) = self.free_model.term(a) {
                for &q in &t.twists {
                    f = f.max(q - p - n + 1);
                }
            }
        }
        f as u32
    }

    pub fn cech_floor(&self, j: i64, p: i64) -> u32 {
        if j == 0 {
            self.koszul_floor(0, p).max(self.koszul_floor(1, p))
        } else {
            self.koszul_floor(j, p).max(self.koszul_floor(j + 1, p))
        }
    }

    /// Summands of the total complex at index `t`: `(a, J)` with
    /// `a + |J| = t` (Koszul) or `a + |J| − 1 = t`, `|J| ≥ 1` (Čech).
    pub fn blocks(&self, t: i64, p: i64, k: u32, cech: bool) -> Vec<Block> {
        let n = self.ctx.n as i64;
        let c = cech as i64;
        let mut out = Vec::new();
        for a in self.lo..=self.hi() {
            let b = t - a + c;
            if b < c || b > n {
                continue;
            }
            for s in subsets(n as usize, b as usize) {
                out.push(Block { a, subset: s, deg: p + k as i64 * b });
            }
        }
        out
    }

    fn edges(&self, src: &[Block], tgt: &[Block], k: u32) -> Vec<Edge> {
        let index: HashMap<(i64, &[usize]), usize> = tgt.iter().enumerate().map(|(i, b)| ((b.a, b.subset.as_slice()), i)).collect();
        let n = self.ctx.n;
        let mut out = Vec::new();
        for (si, b) in src.iter().enumerate() {
            for t in 0..n {
                if b.subset.contains(&t) {
                    continue;
                }
                let mut j2 = b.subset.clone();
                j2.push(t);
                j2.sort_unstable();
                if let Some(&ti) = index.get(&(b.a, j2.as_slice())) {
                    let mut nu = vec![0u32; n];
                    nu[t] = k;
                    out.push(Edge { src: si, tgt: ti, sign: koszul_sign(&b.subset, t), piece: Piece::Mul(nu) });
                }
            }
            if self.has_term(b.a + 1) {
                if let Some(&ti) = index.get(&(b.a + 1, b.subset.as_slice())) {
                    let sign = if b.subset.len() % 2 == 0 { 1 } else { -1 };
                    out.push(Edge { src: si, tgt: ti, sign, piece: Piece::Diff });
                }
            }
        }
        out
    }

    fn transition_edges(&self, src: &[Block], tgt: &[Block]) -> Vec<Edge> {
        let n = self.ctx.n;
        src.iter()
            .enumerate()
            .map(|(si, b)| {
                let ti = tgt.iter().position(|c| c.a == b.a && c.subset == b.subset).expect("same shape");
                let mut nu = vec![0u32; n];
                for &t in &b.subset {
                    nu[t] = 1;
                }
                Edge { src: si, tgt: ti, sign: 1, piece: Piece::Mul(nu) }
            })
            .collect()
    }

    // ---- Q engine (m = 0): standard-monomial bases ----

    fn q(&self, a: i64) -> &QuotientSlices {
        &self.quotients[(a - self.lo) as usize]
    }

    fn q_offsets(&self, blocks: &[Block]) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in blocks {
            off.push(total);
            total += self.q(b.a).dim(b.deg);
        }
        (off, total)
    }

    fn q_diff(&self, a: i64, deg: i64, sign: i64) -> SparseMatrix {
        let src = self.q(a);
        let tgt = self.q(a + 1);
        let map = &self.maps[(a - self.lo) as usize];
        let s = Rational::from_int(sign);
        let cols = src.basis(deg).keys.iter().map(|(c, mu)| tgt.coords(&map[*c].mul_term(mu, &s), deg)).collect();
        SparseMatrix::new(tgt.dim(deg), cols)
    }

    fn q_matrix(&self, src: &[Block], tgt: &[Block], edges: &[Edge]) -> SparseMatrix {
        let (so, sn) = self.q_offsets(src);
        let (to, tn) = self.q_offsets(tgt);
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); sn];
        for e in edges {
            let b = &src[e.src];
            let m = match &e.piece {
                Piece::Mul(nu) => self.q(b.a).mul_matrix(b.deg, nu, &Rational::from_int(e.sign)),
                Piece::Diff => self.q_diff(b.a, b.deg, e.sign),
            };
            for (j, col) in m.cols.iter().enumerate() {
                cols[so[e.src] + j].extend(col.iter().map(|(r, v)| (to[e.tgt] + r, v.clone())));
            }
        }
        SparseMatrix::new(tn, cols.into_iter().map(linalg::collect).collect())
    }

    fn q_state(&self, t: i64, p: i64, k: u32, cech: bool) -> QState {
        let prev = self.blocks(t - 1, p, k, cech);
        let cur = self.blocks(t, p, k, cech);
        let next = self.blocks(t + 1, p, k, cech);
        let d_in = self.q_matrix(&prev, &cur, &self.edges(&prev, &cur, k));
        let d_out = self.q_matrix(&cur, &next, &self.edges(&cur, &next, k));
        let z = linalg::kernel(&d_out.cols);
        let mut b = Echelon::new();
        for c in &d_in.cols {
            b.insert(c.clone());
        }
        QState { dim: z.len() - b.rank(), z, b, blocks: cur }
    }

    fn q_iso(&self, s: &QState, s1: &QState) -> bool {
        if s.dim != s1.dim {
            return false;
        }
        if s.dim == 0 {
            return true;
        }
        let t = self.q_matrix(&s.blocks, &s1.blocks, &self.transition_edges(&s.blocks, &s1.blocks));
        let mut e = s1.b.clone();
        let before = e.rank();
        for z in &s.z {
            e.insert(t.apply(z));
        }
        e.rank() - before == s.dim
    }

    // ---- R engine: slices as presentations ----

    fn r_slices(&self, blocks: &[Block]) -> (Vec<KeyedSlice>, Vec<usize>, SlicePresentation) {
        let ks: Vec<KeyedSlice> = blocks.iter().map(|b| slice_with_keys(self.term(b.a).unwrap(), b.deg)).collect();
        let mut off = Vec::new();
        let mut total = 0;
        for k in &ks {
            off.push(total);
            total += k.keys.len();
        }
        let parts: Vec<SlicePresentation> = ks.iter().map(|k| k.pres.clone()).collect();
        (ks, off, SlicePresentation::direct_sum(self.ctx.base(), &parts))
    }

    fn r_matrix(
        &self,
        src: &[Block],
        s: &(Vec<KeyedSlice>, Vec<usize>, SlicePresentation),
        tgt: &(Vec<KeyedSlice>, Vec<usize>, SlicePresentation),
        edges: &[Edge],
    ) -> Vec<FreeElement> {
        let base = self.ctx.base();
        let one = Monomial::one(base.nvars());
        let mut cols = vec![FreeElement::zero(base); s.2.ambient_rank];
        for e in edges {
            let sk = &s.0[e.src];
            let tk = &tgt.0[e.tgt];
            let (so, to) = (s.1[e.src], tgt.1[e.tgt]);
            let sign = Rational::from_int(e.sign);
            match &e.piece {
                Piece::Mul(nu) => {
                    for (j, (c, beta)) in sk.keys.iter().enumerate() {
                        let b2: Vec<u32> = beta.iter().zip(nu).map(|(x, y)| x + y).collect();
                        let r = tk.index[&(*c, b2)];
                        cols[so + j] = cols[so + j].add(&FreeElement::from_terms(base, [(to + r, one.clone(), sign.clone())]));
                    }
                }
                Piece::Diff => {
                    let a = src[e.src].a;
                    let map = &self.maps[(a - self.lo) as usize];
                    for (j, img) in map_on_slice(self.ctx, map, sk, tk).into_iter().enumerate() {
                        cols[so + j] = cols[so + j].add(&img.map_components(|r| r + to).scale(&sign));
                    }
                }
            }
        }
        cols
    }

    fn r_state(&self, t: i64, p: i64, k: u32, cech: bool) -> RState {
        let prev_b = self.blocks(t - 1, p, k, cech);
        let cur_b = self.blocks(t, p, k, cech);
        let next_b = self.blocks(t + 1, p, k, cech);
        let prev = self.r_slices(&prev_b);
        let cur = self.r_slices(&cur_b);
        let next = self.r_slices(&next_b);
        let d_in = self.r_matrix(&prev_b, &prev, &cur, &self.edges(&prev_b, &cur_b, k));
        let d_out = self.r_matrix(&cur_b, &cur, &next, &self.edges(&cur_b, &next_b, k));
        let h = Subquotient::homology(&cur.2, &d_in, &d_out, &next.2);
        RState { h, blocks: cur_b, slices: cur }
    }

    fn r_iso(&self, s: &RState, s1: &RState) -> bool {
        let t = self.r_matrix(&s.blocks, &s.slices, &s1.slices, &self.transition_edges(&s.blocks, &s1.blocks));
        rmod::induced_iso(&s.h, &rmod::images(&t, &s.h), &s1.h)
    }

    /// `(d^{t−1}, d^t)` of the truncated complex over Q; requires `m = 0`.
    pub fn field_differentials(&self, t: i64, p: i64, k: u32, cech: bool) -> (SparseMatrix, SparseMatrix) {
        assert_eq!(self.ctx.m, 0);
        let prev = self.blocks(t - 1, p, k, cech);
        let cur = self.blocks(t, p, k, cech);
        let next = self.blocks(t + 1, p, k, cech);
        (self.q_matrix(&prev, &cur, &self.edges(&prev, &cur, k)), self.q_matrix(&cur, &next, &self.edges(&cur, &next, k)))
    }

    /// The truncated complex at a fixed `k` with its explicit pieces, for
    /// building maps between nodes (`m` arbitrary).
    pub fn explicit(&self, t: i64, p: i64, k: u32, cech: bool) -> ExplicitTerm {
        let blocks = self.blocks(t, p, k, cech);
        let (slices, offsets, pres) = self.r_slices(&blocks);
        ExplicitTerm { blocks, slices, offsets, pres }
    }

    /// Differential between two explicit terms at the same `k`.
    pub fn explicit_map(&self, src: &ExplicitTerm, tgt: &ExplicitTerm, k: u32) -> Vec<FreeElement> {
        let s = (src.slices.clone(), src.offsets.clone(), src.pres.clone());
        let t = (tgt.slices.clone(), tgt.offsets.clone(), tgt.pres.clone());
        self.r_matrix(&src.blocks, &s, &t, &self.edges(&src.blocks, &tgt.blocks, k))
    }

    /// Cohomology of the truncated complex at a fixed `k`, without any
    /// stabilization search. Used to spot-check a stabilized value against a
    /// larger `k`.
    pub fn value_at(&self, t: i64, p: i64, k: u32, cech: bool) -> SlicePresentation {
        if self.ctx.m == 0 {
            SlicePresentation::free(self.ctx.base(), vec![0; self.q_state(t, p, k, cech).dim])
        } else {
            self.r_state(t, p, k, cech).h.presentation()
        }
    }

    // ---- stabilized routes ----

    fn stabilize(&self, route: &'static str, t: i64, p: i64, floor: u32, k_cap: u32, cech: bool) -> Result<(SlicePresentation, Stabilization)> {
        if self.ctx.m == 0 {
            let (s, k) = run_stabilization(route, t, p, floor, k_cap, |k| self.q_state(t, p, k, cech), |a, b| self.q_iso(a, b), |s| format!("dim {}", s.dim))?;
            Ok((SlicePresentation::free(self.ctx.base(), vec![0; s.dim]), Stabilization { k, floor }))
        } else {
            let (s, k) =
                run_stabilization(route, t, p, floor, k_cap, |k| self.r_state(t, p, k, cech), |a, b| self.r_iso(a, b), |s| summarize(&s.h.presentation()))?;
            Ok((s.h.presentation(), Stabilization { k, floor }))
        }
    }

    /// `H^i_I` in degree `p` as the colimit of truncated Koszul cohomology.
    pub fn koszul(&self, i: i64, p: i64, k_cap: u32) -> Result<(SlicePresentation, Stabilization)> {
        if i < 0 || i > self.hi() + self.ctx.n as i64 {
            return Ok((SlicePresentation::zero(self.ctx.base()), Stabilization { k: 0, floor: 0 }));
        }
        self.stabilize("koszul", i, p, self.koszul_floor(i, p), k_cap, false)
    }

    /// `H^j` of the Čech complex in degree `p` (sections on the punctured
    /// cone, i.e. twisted cohomology on projective space).
    pub fn cech(&self, j: i64, p: i64, k_cap: u32) -> Result<(SlicePresentation, Stabilization)> {
        if j < self.lo.min(0) - 1 || j > self.hi() + self.ctx.n as i64 {
            return Ok((SlicePresentation::zero(self.ctx.base()), Stabilization { k: 0, floor: 0 }));
        }
        self.stabilize("cech", j, p, self.cech_floor(j, p), k_cap, true)
    }
}

/// Pieces of one term of the truncated complex, in presentation form.
pub struct ExplicitTerm {
    pub blocks: Vec<Block>,
    pub slices: Vec<KeyedSlice>,
    pub offsets: Vec<usize>,
    pub pres: SlicePresentation,
}

struct QState {
    dim: usize,
    z: Vec<SparseVec>,
    b: Echelon,
    blocks: Vec<Block>,
}

struct RState {
    h: Subquotient,
    blocks: Vec<Block>,
    slices: (Vec<KeyedSlice>, Vec<usize>, SlicePresentation),
}

/// Short description of a slice value for diagnostics.
pub fn summarize(s: &SlicePresentation) -> String {
    if s.base.m == 0 {
        return format!("dim {}", s.field_dim());
    }
    match s.total_dim() {
        Some(d) => format!("dim {d}"),
        None => format!("infinite, hf {:?}", s.hilbert_function(0..=4).iter().map(|x| x.1).collect::<Vec<_>>()),
    }
}

/// Searches `k ≥ floor` for two consecutive transition isomorphisms
/// `k → k+1 → k+2` and returns the value at `k`.
fn run_stabilization<V>(
    route: &'static str,
    t: i64,
    p: i64,
    floor: u32,
    k_cap: u32,
    value: impl Fn(u32) -> V,
    iso: impl Fn(&V, &V) -> bool,
    show: impl Fn(&V) -> String,
) -> Result<(V, u32)> {
    let cap_err = |a: &V, b: &V| Error::StabilizationCapExceeded { route, i: t, p, k_cap, last: [show(a), show(b)] };
    let mut k = floor.max(2);
    if k + 2 > k_cap {
        let lo = k_cap.saturating_sub(1).max(1);
        return Err(cap_err(&value(lo), &value(lo + 1)));
    }
    let mut v0 = value(k);
    let mut v1 = value(k + 1);
    let mut iso01 = iso(&v0, &v1);
    loop {
        let v2 = value(k + 2);
        let iso12 = iso(&v1, &v2);
        if iso01 && iso12 {
            return Ok((v0, k));
        }
        if k + 3 > k_cap {
            return Err(cap_err(&v1, &v2));
        }
        v0 = v1;
        v1 = v2;
        iso01 = iso12;
        k += 1;
    }
}
