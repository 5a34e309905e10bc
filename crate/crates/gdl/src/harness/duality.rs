use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde_json::json;

use super::{hilbert_value, Report};
use crate::complexes::{dual_complex, ext_over_r, free_resolution, FreeComplex};
use crate::error::{Error, Result};
use crate::graded::{slice, GradedPresentation, HilbertEntry};
use crate::local_cohomology::lc_free_value;

fn window_str(w: &RangeInclusive<i64>) -> String {
    format!("{}..{}", w.start(), w.end())
}

fn grid(js: RangeInclusive<i64>, ps: RangeInclusive<i64>) -> Vec<(i64, i64)> {
    js.flat_map(|j| ps.clone().map(move |p| (j, p))).collect()
}

/// `H^j(RΓ_I(G'))_p` against `Ext^j_R(G_{−n−p}, R)` where
/// `G' = dual_complex(resolution of G, n)`. The left side goes through
/// inverse polynomials on the dual complex, the right side through a free
/// resolution of the slice over `R`. For `m > 0` the x-graded Hilbert
/// functions on `x_window` must agree too.
pub fn duality_check(g: &GradedPresentation, window: RangeInclusive<i64>, x_window: RangeInclusive<i64>) -> Report {
    let ctx = g.ctx;
    let n = ctx.n as i64;
    let l = free_resolution(g, true).complex;
    let d = dual_complex(&l, n);
    let js = (d.lo + n).min(0)..=(d.hi() + n).max(ctx.m as i64);
    let twisted = g.sign_twist();
    let cells: Vec<_> = grid(js.clone(), window.clone())
        .into_par_iter()
        .map(|(j, p)| {
            let lhs = HilbertEntry::of(&lc_free_value(&d, j, p), x_window.clone());
            let s = slice(g, -n - p);
            let rhs = HilbertEntry::of(&ext_over_r(&s, j), x_window.clone());
            let sign_ok = HilbertEntry::of(&slice(&twisted, -n - p), x_window.clone()) == HilbertEntry::of(&s, x_window.clone());
            (j, p, lhs, rhs, sign_ok)
        })
        .collect();
    let mut r = Report::new("duality", &["j", "p", "lhs", "rhs", "match"])
        .param("n", ctx.n)
        .param("m", ctx.m)
        .param("window", window_str(&window))
        .param("j_range", window_str(&js));
    if ctx.m > 0 {
        r = r.param("x_window", window_str(&x_window));
    }
    for (j, p, lhs, rhs, sign_ok) in cells {
        let ok = lhs == rhs;
        r.expect(ok, || format!("j={j} p={p}: lhs {lhs:?} rhs {rhs:?}"));
        r.expect(sign_ok, || format!("p={p}: sign twist changed the slice"));
        r.push(vec![("j", json!(j)), ("p", json!(p)), ("lhs", hilbert_value(&lhs)), ("rhs", hilbert_value(&rhs)), ("match", json!(ok))]);
    }
    r
}

/// The module whose Hilbert data the filtered check reads off `G'`.
#[derive(Clone, Debug)]
pub enum DualSide {
    /// `G' = G(−shift)`, for self-dual inputs.
    SelfDual {
        shift: i64,
    },
    Given(GradedPresentation),
}

/// `Γ_I(G')_p` against `Hom_R(G_{n−p}, R)` with `G` sign-twisted on the
/// Hom side; the twist is also checked to leave every dimension alone. For
/// `m > 0` the comparison is of total dimensions and of Hilbert functions
/// counted from the initial degree, since the isomorphism need not respect
/// the x-grading.
pub fn filtered_duality_check(grm: &GradedPresentation, side: &DualSide, window: RangeInclusive<i64>, x_window: RangeInclusive<i64>) -> Report {
    let ctx = grm.ctx;
    let n = ctx.n as i64;
    let mut r = Report::new("filtered-duality", &["p", "gamma", "hom", "sign_invariant", "match"])
        .param("n", ctx.n)
        .param("m", ctx.m)
        .param("window", window_str(&window));
    let dual = match side {
        DualSide::SelfDual { shift } => {
            r = r.param("shift", *shift);
            grm.shift_grading(-shift)
        }
        DualSide::Given(g) => g.clone(),
    };
    if grm.ngens() == 0 && dual.ngens() == 0 {
        return r;
    }
    let l = free_resolution(&dual, true).complex;
    let twisted = grm.sign_twist();
    let len = (x_window.end() - x_window.start() + 1).max(1) as usize;
    let cells: Vec<_> = window
        .clone()
        .into_par_iter()
        .map(|p| {
            let gamma = lc_free_value(&l, 0, p);
            let hom = ext_over_r(&slice(&twisted, n - p), 0);
            let plain = ext_over_r(&slice(grm, n - p), 0);
            let sign_ok = HilbertEntry::of(&hom, x_window.clone()) == HilbertEntry::of(&plain, x_window.clone());
            let ok = if ctx.m == 0 {
                gamma.field_dim() == hom.field_dim()
            } else {
                gamma.total_dim() == hom.total_dim() && gamma.normalized_hf(len) == hom.normalized_hf(len)
            };
            (p, HilbertEntry::of(&gamma, x_window.clone()), HilbertEntry::of(&hom, x_window.clone()), sign_ok, ok)
        })
        .collect();
    for (p, gamma, hom, sign_ok, ok) in cells {
        r.expect(ok, || format!("p={p}: {gamma:?} vs {hom:?}"));
        r.expect(sign_ok, || format!("p={p}: sign twist changed a dimension"));
        r.push(vec![("p", json!(p)), ("gamma", hilbert_value(&gamma)), ("hom", hilbert_value(&hom)), ("sign_invariant", json!(sign_ok)), ("match", json!(ok))]);
    }
    r
}

/// Degree of the Hilbert polynomial of `G` on projective space, read off the
/// last `n + 1` degrees of `window` (`−1` when they are all zero). Requires
/// `m = 0`; fails when those values are not yet polynomial of degree `< n`.
pub fn support_dimension(g: &GradedPresentation, window: &RangeInclusive<i64>) -> Result<i64> {
    if g.ctx.m != 0 {
        return Err(Error::InvalidInput("support dimension needs m = 0".into()));
    }
    let n = g.ctx.n;
    let len = (window.end() - window.start() + 1).max(0) as usize;
    if len < n + 1 {
        return Err(Error::WindowTooSmall(format!("need {} degrees to fit a Hilbert polynomial, window has {len}", n + 1)));
    }
    let mut vals: Vec<i64> = (window.end() - n as i64..=*window.end()).map(|d| slice(g, d).field_dim() as i64).collect();
    let mut k = 0i64;
    while vals.iter().any(|&v| v != 0) {
        if vals.len() == 1 {
            return Err(Error::WindowTooSmall(format!("dimensions near degree {} are not yet polynomial", window.end())));
        }
        vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
        k += 1;
    }
    Ok(k - 1)
}

/// With `d` the support dimension, checks that both `Ext^j_R(G_{−n−p}, R)`
/// and `H^j(RΓ_I(G'))_p` vanish for `j > d + 1` across the window.
pub fn ext_vanishing_report(g: &GradedPresentation, window: RangeInclusive<i64>) -> Result<Report> {
    let ctx = g.ctx;
    let n = ctx.n as i64;
    let d = support_dimension(g, &window)?;
    let l = free_resolution(g, true).complex;
    let dual = dual_complex(&l, n);
    let js = (dual.lo + n).min(0)..=(dual.hi() + n).max(ctx.m as i64);
    let mut r = Report::new("ext-vanishing", &["j", "p", "ext", "lhs", "allowed"])
        .param("n", ctx.n)
        .param("m", ctx.m)
        .param("window", window_str(&window))
        .param("support_dim", d);
    for (j, p) in grid(js, window) {
        let ext = ext_over_r(&slice(g, -n - p), j).field_dim();
        let lhs = lc_free_value(&dual, j, p).field_dim();
        if ext == 0 && lhs == 0 {
            continue;
        }
        let allowed = j <= d + 1;
        r.expect(allowed, || format!("j={j} p={p} is non-zero above d+1={}", d + 1));
        r.push(vec![("j", json!(j)), ("p", json!(p)), ("ext", json!(ext)), ("lhs", json!(lhs)), ("allowed", json!(allowed))]);
    }
    Ok(r)
}

/// For `G` whose dual complex has cohomology in one position `j0` only:
/// builds that module `E` and checks that dualizing `E` gives back `G`, in
/// position `j0`, slice by slice over the window.
pub fn involution_check(g: &GradedPresentation, window: RangeInclusive<i64>, x_window: RangeInclusive<i64>) -> Result<Report> {
    let ctx = g.ctx;
    let n = ctx.n as i64;
    let l = free_resolution(g, true).complex;
    let d = dual_complex(&l, n);
    let nonzero = |c: &FreeComplex, j: i64, p: i64| {
        if ctx.m == 0 {
            c.cohomology_dim(j, p) != 0
        } else {
            !c.cohomology_slice(j, p).1.is_zero()
        }
    };
    let positions: Vec<i64> = (d.lo..=d.hi()).filter(|&j| window.clone().any(|p| nonzero(&d, j, p))).collect();
    let j0 = match positions.as_slice() {
        [j] if *j == d.hi() => *j,
        _ => return Err(Error::InvalidInput(format!("dual complex has cohomology at {positions:?}, not only at its top"))),
    };
    let e = if d.lo < j0 {
        GradedPresentation::new(ctx, d.term(j0).unwrap().clone(), d.term(j0 - 1).unwrap().clone(), d.differential(j0 - 1).unwrap().to_vec())?
    } else {
        GradedPresentation { ctx, target: d.term(j0).unwrap().clone(), source: crate::graded::GradedFreeModule::new(vec![]), matrix: vec![] }
    };
    let dd = dual_complex(&free_resolution(&e, true).complex, n);
    let mut r = Report::new("involution", &["j", "p", "double_dual", "module", "match"])
        .param("n", ctx.n)
        .param("m", ctx.m)
        .param("window", window_str(&window))
        .param("position", j0);
    for (j, p) in grid(dd.lo..=dd.hi(), window) {
        let h = if ctx.m == 0 {
            HilbertEntry::Dim { dim: dd.cohomology_dim(j, p) }
        } else {
            HilbertEntry::of(&dd.cohomology_slice(j, p).1.presentation(), x_window.clone())
        };
        let want = if j == j0 {
            HilbertEntry::of(&slice(g, p), x_window.clone())
        } else {
            HilbertEntry::of(&crate::graded::SlicePresentation::zero(ctx.base()), x_window.clone())
        };
        let ok = h == want;
        r.expect(ok, || format!("j={j} p={p}: {h:?} vs {want:?}"));
        if h.size() != 0 || want.size() != 0 {
            r.push(vec![("j", json!(j)), ("p", json!(p)), ("double_dual", hilbert_value(&h)), ("module", hilbert_value(&want)), ("match", json!(ok))]);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Context;

    #[test]
    fn duality_on_structured_inputs() {
        for n in 1..=3 {
            let ctx = Context::new(0, n);
            for g in [GradedPresentation::free(ctx, vec![0, 2]), GradedPresentation::a_mod_i(ctx), GradedPresentation::koszul_quotient(ctx, &[0])] {
                let r = duality_check(&g, -6..=3, 0..=0);
                assert!(r.verdict.passed(), "{:?}", r.failures);
            }
        }
    }

    #[test]
    fn a_mod_i_duality_sits_at_minus_n() {
        let ctx = Context::new(0, 2);
        let r = duality_check(&GradedPresentation::a_mod_i(ctx), -4..=2, 0..=0);
        let nz: Vec<_> = r.entries.iter().filter(|e| e["lhs"] != 0).map(|e| (e["j"].as_i64().unwrap(), e["p"].as_i64().unwrap())).collect();
        assert_eq!(nz, vec![(0, -2)]);
    }

    #[test]
    fn support_dimensions() {
        let ctx = Context::new(0, 2);
        assert_eq!(support_dimension(&GradedPresentation::a_mod_i(ctx), &(-2..=5)).unwrap(), -1);
        assert_eq!(support_dimension(&GradedPresentation::free(ctx, vec![0]), &(-2..=5)).unwrap(), 1);
        assert_eq!(support_dimension(&GradedPresentation::koszul_quotient(ctx, &[0]), &(-2..=5)).unwrap(), 0);
        assert!(matches!(support_dimension(&GradedPresentation::free(ctx, vec![0]), &(0..=1)), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn vanishing_and_involution() {
        let ctx = Context::new(0, 3);
        for g in [GradedPresentation::free(ctx, vec![0]), GradedPresentation::a_mod_i(ctx), GradedPresentation::koszul_quotient(ctx, &[0, 2])] {
            assert!(ext_vanishing_report(&g, -6..=4).unwrap().verdict.passed());
            let r = involution_check(&g, -5..=4, 0..=0).unwrap();
            assert!(r.verdict.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn filtered_duality_for_a_mod_i() {
        let ctx = Context::new(0, 2);
        let g = GradedPresentation::a_mod_i(ctx);
        let r = filtered_duality_check(&g, &DualSide::SelfDual { shift: 2 }, -3..=5, 0..=0);
        assert!(r.verdict.passed(), "{:?}", r.failures);
        let empty = filtered_duality_check(&GradedPresentation::zero(ctx), &DualSide::SelfDual { shift: 0 }, -3..=5, 0..=0);
        assert!(empty.entries.is_empty() && empty.verdict.passed());
    }
}
