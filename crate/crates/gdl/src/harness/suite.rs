//! Seeded random monomial modules and the structured inputs, with the
//! route-equivalence and duality sweeps over them.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::duality::duality_check;
use super::Report;
use crate::error::Result;
use crate::graded::{write_module, GradedFreeModule, GradedPresentation};
use crate::grobner::FreeElement;
use crate::local_cohomology::{default_k_cap, lc_free_complex_dim, les_check, LcInput};
use crate::poly::{exponent_vectors, Context, Monomial};
use crate::rational::Rational;

fn random_exponents(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Vec<u32> {
    exponent_vectors(n, d).choose(rng).unwrap().clone()
}

/// A random module over `Q[u1..un]` (`m = 0`, `n ≤ 3`): up to five
/// generators with twists in `[−4, 4]` and up to five relations, each a
/// monomial `u^a e_c` or a binomial `c1 u^a e_c − c2 u^b e_c'` of matching
/// degree, with `|a| ≤ 2`.
pub fn random_module(rng: &mut ChaCha8Rng) -> GradedPresentation {
    let n = rng.gen_range(1..=3usize);
    let ctx = Context::new(0, n);
    let ngens = rng.gen_range(1..=5usize);
    let twists: Vec<i64> = (0..ngens).map(|_| rng.gen_range(-4..=4)).collect();
    let nrels = rng.gen_range(0..=5usize);
    let mut cols = Vec::new();
    for _ in 0..nrels {
        let c = rng.gen_range(0..ngens);
        let da = rng.gen_range(0..=2u32);
        let a = random_exponents(rng, n, da);
        let coef = Rational::from_int(*[1, -1, 2].choose(rng).unwrap());
        let mut terms = vec![(c, Monomial::from_exps(&a), coef)];
        if rng.gen_bool(0.5) {
            let c2 = rng.gen_range(0..ngens);
            let db = twists[c] + da as i64 - twists[c2];
            if (0..=3).contains(&db) {
                let b = random_exponents(rng, n, db as u32);
                if c2 != c || b != a {
                    terms.push((c2, Monomial::from_exps(&b), Rational::from_int(-1)));
                }
            }
        }
        cols.push(FreeElement::from_terms(ctx, terms));
    }
    GradedPresentation::from_columns(ctx, GradedFreeModule::new(twists), cols).expect("relations are built homogeneous")
}

/// `count` modules from a ChaCha stream seeded with `seed`.
pub fn random_suite(seed: u64, count: usize) -> Vec<GradedPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_module(&mut rng)).collect()
}

/// Free modules, `A/I` and the quotients by subsets of the variables, for
/// `n = 1..=3`.
pub fn structured_inputs() -> Vec<(String, GradedPresentation)> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let ctx = Context::new(0, n);
        out.push((format!("free n={n} [0]"), GradedPresentation::free(ctx, vec![0])));
        out.push((format!("free n={n} [-1,0,2]"), GradedPresentation::free(ctx, vec![-1, 0, 2])));
        out.push((format!("a-mod-i n={n}"), GradedPresentation::a_mod_i(ctx)));
        for k in 1..n {
            let vars: Vec<usize> = (0..k).collect();
            out.push((format!("koszul n={n} vars={vars:?}"), GradedPresentation::koszul_quotient(ctx, &vars)));
        }
    }
    out
}

/// Resolution and Koszul routes agree in dimension for every `i ∈ [0, n]`,
/// `p ∈ window`, and the four-term sequence with the Čech route is exact in
/// every degree of the window. Requires `m = 0`.
pub fn route_equivalence(g: &GradedPresentation, window: RangeInclusive<i64>, k_cap: Option<u32>) -> Result<Report> {
    let n = g.ctx.n as i64;
    let input = LcInput::Module(g.clone());
    let src = input.source();
    let cap = k_cap.unwrap_or_else(|| default_k_cap(&src.free_model, &window));
    let mut r = Report::new("route-equivalence", &["i", "p", "res", "koszul", "k"]).param("n", n).param("k_cap", cap);
    for i in 0..=n {
        for p in window.clone() {
            let res = lc_free_complex_dim(&src.free_model, i, p);
            let (kz, stab) = src.koszul(i, p, cap)?;
            let kz = kz.field_dim();
            r.expect(res == kz, || format!("i={i} p={p}: res {res}, koszul {kz}"));
            if res != 0 || kz != 0 {
                r.push(vec![("i", json!(i)), ("p", json!(p)), ("res", json!(res)), ("koszul", json!(kz)), ("k", json!(stab.k))]);
            }
        }
    }
    let les = les_check(g, window, 0..=0, Some(cap))?;
    for row in les.rows.iter().filter(|row| !row.ok()) {
        r.fail(format!("p={}: four-term sequence check failed ({:?})", row.p, row.route_mismatches));
    }
    Ok(r)
}

/// [`route_equivalence`] over [`random_suite`], one row per module.
pub fn route_equivalence_suite(seed: u64, count: usize, window: RangeInclusive<i64>) -> Report {
    let suite = random_suite(seed, count);
    let results: Vec<_> = suite.par_iter().map(|g| route_equivalence(g, window.clone(), None)).collect();
    let mut r = Report::new("route-equivalence-suite", &["index", "n", "gens", "relations", "nonzero", "verdict"])
        .param("count", count)
        .param("window", format!("{}..{}", window.start(), window.end()));
    r.seed = Some(seed);
    for (idx, (g, res)) in suite.iter().zip(results).enumerate() {
        let (nonzero, verdict) = match res {
            Ok(rep) => {
                for f in &rep.failures {
                    r.fail(format!("module {idx}: {f}"));
                }
                (rep.entries.len(), rep.verdict.as_str().to_string())
            }
            Err(e) => {
                r.fail(format!("module {idx}: {e}\n{}", write_module(g)));
                (0, "ERROR".into())
            }
        };
        r.push(vec![
            ("index", json!(idx)),
            ("n", json!(g.ctx.n)),
            ("gens", json!(g.ngens())),
            ("relations", json!(g.matrix.len())),
            ("nonzero", json!(nonzero)),
            ("verdict", json!(verdict)),
        ]);
    }
    r
}

/// Default degree window: `[−(n + twist spread + 4), n + 4]`.
pub fn default_window(g: &GradedPresentation) -> RangeInclusive<i64> {
    let n = g.ctx.n as i64;
    let spread = g.twist_range().map_or(0, |(lo, hi)| hi - lo);
    -(n + spread + 4)..=n + 4
}

/// [`duality_check`] over the random suite and the structured inputs, one
/// row per module.
pub fn duality_suite(seed: u64, count: usize) -> Report {
    let mut inputs: Vec<(String, GradedPresentation)> = random_suite(seed, count).into_iter().enumerate().map(|(i, g)| (format!("random {i}"), g)).collect();
    inputs.extend(structured_inputs());
    let results: Vec<Report> = inputs.par_iter().map(|(_, g)| duality_check(g, default_window(g), 0..=0)).collect();
    let mut r = Report::new("duality-suite", &["input", "cells", "nonzero", "verdict"]).param("count", count);
    r.seed = Some(seed);
    for ((name, _), rep) in inputs.iter().zip(results) {
        let nonzero = rep.entries.iter().filter(|e| e["lhs"] != 0 || e["rhs"] != 0).count();
        for f in &rep.failures {
            r.fail(format!("{name}: {f}"));
        }
        r.push(vec![("input", json!(name)), ("cells", json!(rep.entries.len())), ("nonzero", json!(nonzero)), ("verdict", json!(rep.verdict.as_str()))]);
    }
    r
}
