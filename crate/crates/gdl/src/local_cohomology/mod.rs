//! `H^i_I(G)_p` for the irrelevant ideal `I = (u1..un)`, by three routes:
//!
//! - `res`: resolve, apply `H^n_I` termwise (inverse polynomials), take cohomology
//! - `koszul`: colimit over `k` of `H^i(Hom(K(u^k), G))`
//! - `cech`: colimit of the Čech complex, giving cohomology on the punctured cone
//!
//! The first two agree; the third sits in the long exact sequence checked by
//! [`les_check`].

mod inverse;
mod koszul;
mod les;

use std::ops::RangeInclusive;

use serde::Serialize;

pub use inverse::{inverse_slice, lc_free_complex, lc_free_complex_dim, map_on_inverse, top_lc_of_free};
pub use koszul::{summarize, Block, ExplicitTerm, LcSource, Stabilization};
pub use les::{les_check, LesNode, LesReport, LesRow, Regime};

use crate::complexes::{free_resolution, FreeComplex};
use crate::error::Result;
use crate::graded::{GradedPresentation, HilbertEntry, SlicePresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Resolution,
    KoszulLimit,
    Cech,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Resolution => "res",
            Route::KoszulLimit => "koszul",
            Route::Cech => "cech",
        }
    }
}

/// Either a presented module or a bounded complex of free modules.
#[derive(Clone, Debug)]
pub enum LcInput {
    Module(GradedPresentation),
    Complex(FreeComplex),
}

impl LcInput {
    pub fn source(&self) -> LcSource {
        match self {
            LcInput::Module(g) => LcSource::module(g),
            LcInput::Complex(c) => LcSource::complex(c),
        }
    }

    fn free_model(&self) -> FreeComplex {
        match self {
            LcInput::Module(g) => free_resolution(g, true).complex,
            LcInput::Complex(c) => c.clone(),
        }
    }
}

/// Resolution route: `H^{i−n}` of `H^n_I` applied to a free model.
pub fn lc_resolution_route(input: &LcInput, i: i64, p: i64) -> SlicePresentation {
    lc_free_value(&input.free_model(), i, p)
}

/// `H^i_I(L)_p` for a free complex, as a dimension-only presentation when
/// `m = 0`.
pub fn lc_free_value(l: &FreeComplex, i: i64, p: i64) -> SlicePresentation {
    if l.ctx.m == 0 {
        SlicePresentation::free(l.ctx.base(), vec![0; lc_free_complex_dim(l, i, p)])
    } else {
        lc_free_complex(l, i, p).1.presentation()
    }
}

pub fn lc_koszul_limit_route(input: &LcInput, i: i64, p: i64, k_cap: u32) -> Result<(SlicePresentation, Stabilization)> {
    input.source().koszul(i, p, k_cap)
}

/// Čech route: `H^j` of the Čech complex in degree `p`, i.e.
/// `H^j(P^{n−1}_R, G~(p))` for modules.
pub fn cech_sheaf_route(input: &LcInput, j: i64, p: i64, k_cap: u32) -> Result<(SlicePresentation, Stabilization)> {
    input.source().cech(j, p, k_cap)
}

/// A default cap on `k`: the spread of degrees and twists involved plus
/// slack.
pub fn default_k_cap(l: &FreeComplex, window: &RangeInclusive<i64>) -> u32 {
    let (lo, hi) = l.twist_range().unwrap_or((0, 0));
    let span = (window.end() - window.start()).max(0);
    let reach = (hi - window.start()).max(0) + (hi - lo);
    (span + reach + l.ctx.n as i64 + 2).max(6) as u32
}

#[derive(Clone, Debug, Serialize)]
pub struct LcEntry {
    pub route: Route,
    pub i: i64,
    pub p: i64,
    pub value: HilbertEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<Stabilization>,
    #[serde(skip)]
    pub module: SlicePresentation,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomologyTable {
    pub entries: Vec<LcEntry>,
    /// Torsion values vanish in the top two degrees of the window; when
    /// false the window is too small to show eventual vanishing.
    pub vanishes_above_window: bool,
}

impl LocalCohomologyTable {
    pub fn get(&self, route: Route, i: i64, p: i64) -> Option<&LcEntry> {
        self.entries.iter().find(|e| e.route == route && e.i == i && e.p == p)
    }

    /// Pairs `(i, p)` where the routes among `routes` disagree. Čech values
    /// are compared at `j = i − 1` for `i ≥ 2`.
    pub fn disagreements(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for e in self.entries.iter().filter(|e| e.route == Route::Resolution) {
            let mut others = vec![self.get(Route::KoszulLimit, e.i, e.p)];
            if e.i >= 2 {
                others.push(self.get(Route::Cech, e.i - 1, e.p));
            }
            if others.into_iter().flatten().any(|o| o.value != e.value) {
                out.push((e.i, e.p));
            }
        }
        out
    }
}

/// Computes every requested route for `i ∈ indices`, `p ∈ window`.
/// `x_window` bounds the reported Hilbert function when `m > 0`.
pub fn local_cohomology_table(
    input: &LcInput,
    routes: &[Route],
    indices: RangeInclusive<i64>,
    window: RangeInclusive<i64>,
    x_window: RangeInclusive<i64>,
    k_cap: Option<u32>,
) -> Result<LocalCohomologyTable> {
    let src = input.source();
    let l = &src.free_model;
    let cap = k_cap.unwrap_or_else(|| default_k_cap(l, &window));
    let mut entries = Vec::new();
    for &route in routes {
        for i in indices.clone() {
            for p in window.clone() {
                let (module, stab) = match route {
                    Route::Resolution => (lc_free_value(l, i, p), None),
                    Route::KoszulLimit => src.koszul(i, p, cap).map(|(m, s)| (m, Some(s)))?,
                    Route::Cech => src.cech(i, p, cap).map(|(m, s)| (m, Some(s)))?,
                };
                let value = HilbertEntry::of(&module, x_window.clone());
                entries.push(LcEntry { route, i, p, value, stabilized_at: stab, module });
            }
        }
    }
    let top = *window.end() - 1;
    let vanishes_above_window = entries.iter().filter(|e| e.p >= top && e.route != Route::Cech).all(|e| e.value.size() == 0);
    Ok(LocalCohomologyTable { entries, vanishes_above_window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::parse_module;
    use crate::poly::Context;

    fn dims(input: &LcInput, route: Route, i: i64, ps: RangeInclusive<i64>) -> Vec<usize> {
        ps.map(|p| {
            let v = match route {
                Route::Resolution => lc_resolution_route(input, i, p),
                Route::KoszulLimit => lc_koszul_limit_route(input, i, p, 40).unwrap().0,
                Route::Cech => cech_sheaf_route(input, i, p, 40).unwrap().0,
            };
            v.field_dim()
        })
        .collect()
    }

    #[test]
    fn projective_line_all_routes() {
        let ctx = Context::new(0, 2);
        let a = LcInput::Module(GradedPresentation::free(ctx, vec![0]));
        let want2 = vec![3, 2, 1, 0, 0, 0, 0];
        assert_eq!(dims(&a, Route::Resolution, 2, -4..=2), want2);
        assert_eq!(dims(&a, Route::KoszulLimit, 2, -4..=2), want2);
        assert_eq!(dims(&a, Route::Cech, 1, -4..=2), want2);
        // sections of O(p)
        assert_eq!(dims(&a, Route::Cech, 0, -4..=2), vec![0, 0, 0, 0, 1, 2, 3]);
        for i in [0, 1, 3] {
            assert!(dims(&a, Route::Resolution, i, -4..=2).iter().all(|&d| d == 0));
            assert!(dims(&a, Route::KoszulLimit, i, -4..=2).iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn a_mod_i_is_torsion() {
        let ctx = Context::new(0, 2);
        let g = LcInput::Module(GradedPresentation::a_mod_i(ctx));
        assert_eq!(dims(&g, Route::Resolution, 0, -1..=1), vec![0, 1, 0]);
        assert_eq!(dims(&g, Route::KoszulLimit, 0, -1..=1), vec![0, 1, 0]);
        assert_eq!(dims(&g, Route::Cech, 0, -1..=1), vec![0, 0, 0]);
    }

    #[test]
    fn koszul_route_on_a_complex_matches_resolution_route() {
        let ctx = Context::new(0, 2);
        let g = parse_module("vars 0 2\ntwists F0: 0 1\ntwists F1: 2\nrel: u1*u2, u1\n").unwrap();
        let l = free_resolution(&g, true).complex;
        let c = LcInput::Complex(l);
        let m = LcInput::Module(g);
        let _ = ctx;
        for i in 0..=2 {
            assert_eq!(dims(&c, Route::KoszulLimit, i, -4..=2), dims(&m, Route::Resolution, i, -4..=2), "i={i}");
            assert_eq!(dims(&m, Route::KoszulLimit, i, -4..=2), dims(&m, Route::Resolution, i, -4..=2), "i={i}");
        }
    }

    #[test]
    fn cap_too_small_is_reported() {
        let ctx = Context::new(0, 2);
        let a = LcInput::Module(GradedPresentation::free(ctx, vec![0]));
        let err = lc_koszul_limit_route(&a, 2, -8, 4).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
