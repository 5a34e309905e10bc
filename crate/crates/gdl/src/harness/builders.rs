//! Worked example modules. Each builder checks its output against the
//! module identities it is meant to realize before returning.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use serde_json::json;

use super::duality::{duality_check, filtered_duality_check, DualSide};
use super::{hilbert_value, Report};
use crate::complexes::ext_over_r;
use crate::error::{Error, Result};
use crate::graded::{slice, GradedFreeModule, GradedPresentation, HilbertEntry, SlicePresentation};
use crate::grobner::{member_with_coefficients, FreeElement};
use crate::local_cohomology::{cech_sheaf_route, default_k_cap, lc_resolution_route, les_check, LcInput, LesNode};
use crate::poly::{exponent_vectors, monomial_count, parse_polynomial, Context, Monomial, Polynomial};
use crate::rational::Rational;
use crate::rmod;

/// x-degrees on which Hilbert functions are compared for `m > 0`.
const X_WINDOW: RangeInclusive<i64> = 0..=8;

/// How a slice of the nilpotent orbit module looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Zero,
    Free,
    Truncated,
}

impl Shape {
    fn label(self, w: u32) -> String {
        match self {
            Shape::Zero => "0".into(),
            Shape::Free => "R".into(),
            Shape::Truncated => format!("R/(x1^{w})"),
        }
    }
}

fn nilpotent_shape(w: u32, d: i64) -> Shape {
    match d {
        d if d < -(w as i64) => Shape::Zero,
        d if d <= 0 => Shape::Free,
        _ => Shape::Truncated,
    }
}

fn observed_shape(s: &SlicePresentation, w: u32) -> Option<Shape> {
    let p = s.pruned();
    let cyclic = p.ambient_rank == 1;
    if p.ambient_rank == 0 {
        Some(Shape::Zero)
    } else if cyclic && p.relations.iter().all(|r| r.is_zero()) {
        Some(Shape::Free)
    } else if cyclic && p.total_dim() == Some(w as usize) {
        // over Q[x1] a cyclic graded module of length w is R/(x1^w)
        Some(Shape::Truncated)
    } else {
        None
    }
}

/// Over `R = Q[x1]`, `n = 1`: one generator in degree `−w` and the single
/// relation `x1^w u1^{w+1}`. Slices are `0` below `−w`, `R` on `[−w, 0]`
/// and `R/(x1^w)` above.
pub fn nilpotent_orbit_module(w: u32) -> Result<GradedPresentation> {
    if w == 0 {
        return Err(Error::InvalidInput("w must be at least 1".into()));
    }
    let ctx = Context::new(1, 1);
    let rel = parse_polynomial(ctx, &format!("x1^{w}*u1^{}", w + 1))?;
    let g = GradedPresentation::from_columns(ctx, GradedFreeModule::new(vec![-(w as i64)]), vec![FreeElement::from_components(ctx, [(0, rel)])])?;
    for d in -(w as i64) - 3..=w as i64 + 3 {
        let want = nilpotent_shape(w, d);
        if observed_shape(&slice(&g, d), w) != Some(want) {
            return Err(Error::Internal(format!("nilpotent orbit module, w={w}: slice {d} is not {}", want.label(w))));
        }
    }
    Ok(g)
}

/// Slices, torsion, the four-term sequence with its regimes, filtered
/// duality with shift `w + 1`, and the duality check, for
/// [`nilpotent_orbit_module`].
pub fn check_nilpotent_orbit(w: u32) -> Result<Report> {
    let g = nilpotent_orbit_module(w)?;
    let wi = w as i64;
    let window = -wi - 2..=2;
    let mut r = Report::new("nilpotent-orbit", &["d", "slice", "torsion", "sections", "h1", "alpha_zero", "beta_injective", "beta_surjective", "gamma_zero"])
        .param("w", w)
        .param("window", format!("{}..{}", window.start(), window.end()));
    let les = les_check(&g, window.clone(), X_WINDOW, None)?;
    let ideal_hf: Vec<(i64, usize)> = X_WINDOW.map(|x| (x, (x >= wi) as usize)).collect();
    let input = LcInput::Module(g.clone());
    for row in &les.rows {
        let d = row.p;
        let shape = nilpotent_shape(w, d);
        let node = |n: LesNode| row.nodes.iter().find(|x| x.0 == n).unwrap().1.clone();
        let torsion = lc_resolution_route(&input, 0, d);
        // torsion: (x1^w) ⊂ R on [−w, 0], zero elsewhere
        let torsion_ok = match shape {
            Shape::Free => torsion.total_dim().is_none() && torsion.hilbert_function(X_WINDOW) == ideal_hf,
            _ => torsion.is_zero(),
        };
        r.expect(torsion_ok, || format!("d={d}: torsion is not as expected"));
        r.expect(row.ok(), || format!("d={d}: sequence check failed {row:?}"));
        let sec = node(LesNode::SectionsH0);
        let h1 = node(LesNode::TorsionH1);
        let g_regime = &row.regime;
        let regime_ok = match shape {
            Shape::Zero => g_regime.alpha_zero && !g_regime.beta_surjective && h1.size() == w as usize && !g_regime.gamma_zero,
            Shape::Free => !g_regime.alpha_zero && g_regime.beta_surjective && !g_regime.beta_injective && g_regime.gamma_zero,
            Shape::Truncated => g_regime.alpha_zero && g_regime.beta_injective && g_regime.beta_surjective && g_regime.gamma_zero,
        };
        r.expect(regime_ok, || format!("d={d}: regime {g_regime:?}"));
        r.expect(sec == HilbertEntry::Graded { hf: X_WINDOW.map(|x| (x, (x < wi) as usize)).collect(), total: Some(w as usize) }, || {
            format!("d={d}: sections {sec:?}")
        });
        r.push(vec![
            ("d", json!(d)),
            ("slice", json!(shape.label(w))),
            ("torsion", hilbert_value(&HilbertEntry::of(&torsion, X_WINDOW))),
            ("sections", hilbert_value(&sec)),
            ("h1", hilbert_value(&h1)),
            ("alpha_zero", json!(g_regime.alpha_zero)),
            ("beta_injective", json!(g_regime.beta_injective)),
            ("beta_surjective", json!(g_regime.beta_surjective)),
            ("gamma_zero", json!(g_regime.gamma_zero)),
        ]);
    }
    let bookkeeping = filtered_duality_check(&g, &DualSide::SelfDual { shift: wi + 1 }, -wi - 1..=wi + 3, X_WINDOW);
    let nonzero: Vec<i64> = bookkeeping
        .entries
        .iter()
        .filter(|e| e["gamma"]["hf"].as_array().is_some_and(|h| h.iter().any(|v| v != 0)))
        .map(|e| e["p"].as_i64().unwrap())
        .collect();
    r.expect(nonzero == (1..=wi + 1).collect::<Vec<_>>(), || format!("filtered duality: torsion of the dual sits at {nonzero:?}"));
    let duality = duality_check(&g, -wi - 2..=wi + 1, -12..=12);
    for part in [&bookkeeping, &duality] {
        for f in &part.failures {
            r.fail(format!("{}: {f}", part.check));
        }
    }
    Ok(r.param("filtered_duality", bookkeeping.verdict.as_str()).param("duality", duality.verdict.as_str()))
}

fn odd_half(n: usize) -> (bool, i64) {
    (n % 2 == 1, (n / 2) as i64)
}

/// `R^{≥q}_d` for `q ≤ 0` is all of `R_d`.
fn power_dim(n: usize, q: i64, d: i64) -> u64 {
    if d >= q.max(0) {
        monomial_count(n, d)
    } else {
        0
    }
}

/// The slice at `p` of the graded module attached to the quadric cone
/// `f = x1^2 + … + xn^2`, over `R = Q[x1..xn]`: the cokernel of
/// `f: R^{≥p−h} → R^{≥p−h+1}` (odd `n`) or `R^{≥p−h+2}` (even `n`), with
/// `h = ⌊n/2⌋` and `R^{≥q} = R` for `q ≤ 0`. Generators are the monomials
/// of the target degree; relations are the linear syzygies among them and
/// `f` times the source generators rewritten in the target generators.
pub fn quadric_cone_slice(n: usize, p: i64) -> Result<SlicePresentation> {
    if n < 4 || p < 0 {
        return Err(Error::InvalidInput(format!("quadric cone slice needs n >= 4 and p >= 0, got n={n}, p={p}")));
    }
    let base = Context::new(n, 0);
    let (odd, h) = odd_half(n);
    let qt = if odd { p - h + 1 } else { p - h + 2 };
    let qs = p - h;
    let gdeg = qt.max(0) as u32;
    let gens = exponent_vectors(n, gdeg);
    let index: HashMap<&[u32], usize> = gens.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let one = Rational::one();
    let mut relations = Vec::new();
    for (ia, a) in gens.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if i == j || a[j] == 0 {
                    continue;
                }
                let mut c = a.clone();
                c[i] += 1;
                c[j] -= 1;
                let ic = index[c.as_slice()];
                if ic > ia {
                    // x_i e_a − x_j e_c, since x_i a = x_j c
                    relations.push(FreeElement::from_terms(base, [(ia, Monomial::var(n, i), one.clone()), (ic, Monomial::var(n, j), -one.clone())]));
                }
            }
        }
    }
    let f = Polynomial::from_terms(base, (0..n).map(|i| (Monomial::var(n, i).pow(2), one.clone())));
    let order = rmod::order(base, &[0]);
    let gen_elems: Vec<FreeElement> = gens.iter().map(|a| FreeElement::from_terms(base, [(0, Monomial::from_exps(a), one.clone())])).collect();
    for c in exponent_vectors(n, qs.max(0) as u32) {
        let e = FreeElement::from_components(base, [(0, f.mul_term(&Monomial::from_exps(&c), &one))]);
        let coeffs =
            member_with_coefficients(base, &e, &gen_elems, &order).ok_or_else(|| Error::Internal("f times a source generator is not in the target".into()))?;
        relations.push(FreeElement::from_components(base, coeffs.into_iter().enumerate()));
    }
    let basis_labels = gens.iter().map(|a| Polynomial::monomial(base, Monomial::from_exps(a)).to_string()).collect();
    let pres = SlicePresentation { base, ambient_rank: gens.len(), relations, basis_labels, weights: vec![gdeg as i64; gens.len()] };
    // exactness of 0 → R^{≥qs}(−2) → R^{≥qt} → M → 0, degree by degree
    for (d, got) in pres.hilbert_function(X_WINDOW) {
        let want = power_dim(n, qt, d) - power_dim(n, qs, d - 2);
        if got as u64 != want {
            return Err(Error::Internal(format!("quadric cone slice n={n} p={p}: dim in x-degree {d} is {got}, expected {want}")));
        }
    }
    Ok(pres)
}

/// Closed forms the Ext table of [`quadric_cone_slice`] must match, by
/// monomial counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricConeExpectation {
    /// Hilbert function of `R/fR` on x-degrees `0..=8`.
    pub ext1_hf: Vec<usize>,
    /// Total dimension of `Ext^{n−1}`.
    pub ext_second_last: usize,
    /// Total dimension of `Ext^n`.
    pub ext_last: usize,
}

pub fn quadric_cone_expected(n: usize, p: i64) -> QuadricConeExpectation {
    let (odd, h) = odd_half(n);
    let rbar = |d: i64| (monomial_count(n, d) - monomial_count(n, d - 2)) as usize;
    let top = if odd { p - h } else { p - h + 1 };
    QuadricConeExpectation {
        ext1_hf: X_WINDOW.map(rbar).collect(),
        ext_second_last: (0..=top).map(rbar).sum(),
        ext_last: if odd { monomial_count(n, p - h - 1) as usize } else { 0 },
    }
}

/// `Ext^j_R(M, R)` for `j = 0..=n` against [`quadric_cone_expected`]: `Ext^1`
/// has the Hilbert function of `R/fR`, `Ext^{n−1}` and `Ext^n` the counted
/// total dimensions, everything else vanishes.
pub fn check_quadric_cone(n: usize, p: i64) -> Result<Report> {
    let m = quadric_cone_slice(n, p)?;
    let want = quadric_cone_expected(n, p);
    let mut r = Report::new("quadric-cone", &["j", "total", "hf", "expected"]).param("n", n).param("p", p);
    let mut nonzero = Vec::new();
    for j in 0..=n as i64 {
        let e = ext_over_r(&m, j);
        let total = e.total_dim();
        let hf = if e.is_zero() { vec![0; 9] } else { e.normalized_hf(9) };
        let (ok, expected) = if j == 1 {
            (total.is_none() && hf == want.ext1_hf, json!({ "hf": want.ext1_hf }))
        } else if j == n as i64 - 1 {
            (total == Some(want.ext_second_last), json!(want.ext_second_last))
        } else if j == n as i64 {
            (total == Some(want.ext_last), json!(want.ext_last))
        } else {
            (total == Some(0), json!(0))
        };
        if !e.is_zero() {
            nonzero.push(j);
        }
        r.expect(ok, || format!("Ext^{j}: total {total:?}, hf {hf:?}, expected {expected}"));
        r.push(vec![("j", json!(j)), ("total", json!(total)), ("hf", json!(hf)), ("expected", expected)]);
    }
    Ok(r.param("nonzero", nonzero))
}

/// Cohomology of `O(p)` on the projective line from the Čech route on
/// `A = Q[u1, u2]`: `p + 1` sections for `p ≥ 0` and `−p − 1` in degree one
/// for `p ≤ −2`.
pub fn check_projective_line(window: RangeInclusive<i64>, k_cap: Option<u32>) -> Result<Report> {
    let ctx = Context::new(0, 2);
    let a = GradedPresentation::free(ctx, vec![0]);
    let input = LcInput::Module(a);
    let cap = match k_cap {
        Some(c) => c,
        None => default_k_cap(&input.source().free_model, &window),
    };
    let mut r = Report::new("projective-line", &["p", "h0", "h1", "k", "expected_h0", "expected_h1"])
        .param("window", format!("{}..{}", window.start(), window.end()))
        .param("k_cap", cap);
    for p in window {
        let (h0, s0) = cech_sheaf_route(&input, 0, p, cap)?;
        let (h1, s1) = cech_sheaf_route(&input, 1, p, cap)?;
        let (h0, h1) = (h0.field_dim(), h1.field_dim());
        let e0 = if p >= 0 { p as usize + 1 } else { 0 };
        let e1 = if p <= -2 { (-p - 1) as usize } else { 0 };
        r.expect(h0 == e0 && h1 == e1, || format!("p={p}: got ({h0}, {h1}), expected ({e0}, {e1})"));
        r.push(vec![
            ("p", json!(p)),
            ("h0", json!(h0)),
            ("h1", json!(h1)),
            ("k", json!(s0.k.max(s1.k))),
            ("expected_h0", json!(e0)),
            ("expected_h1", json!(e1)),
        ]);
    }
    Ok(r)
}
