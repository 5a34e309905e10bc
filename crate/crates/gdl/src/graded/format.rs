//! Line-oriented module files.
//!
//! ```text
//! # comments start with '#'
//! vars 1 1
//! twists F0: -2
//! twists F1: 1
//! xweights F0: 0
//! rel: x1^2*u1^3
//! ```
//!
//! `vars m n` comes first. Each `rel:` line lists the F0 components of one
//! relation, separated by commas; there is one per F1 twist, in order.
//! `xweights F0:` is optional and defaults to zeros.

use std::fmt::Write as _;

use super::{GradedFreeModule, GradedPresentation};
use crate::error::{Error, Result};
use crate::grobner::FreeElement;
use crate::poly::{parse_polynomial, Context};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn ints(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| perr(line, format!("expected an integer, found `{t}`")))).collect()
}

pub fn parse_module(text: &str) -> Result<GradedPresentation> {
    let mut ctx: Option<Context> = None;
    let mut f0: Option<Vec<i64>> = None;
    let mut f1: Option<(usize, Vec<i64>)> = None;
    let mut xw: Option<Vec<i64>> = None;
    let mut rels: Vec<(usize, FreeElement)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("vars") {
            let v = ints(line, rest)?;
            if v.len() != 2 || v.iter().any(|&x| x < 0) {
                return Err(perr(line, "`vars` takes two nonnegative integers m n"));
            }
            ctx = Some(Context::new(v[0] as usize, v[1] as usize));
            continue;
        }
        let c = ctx.ok_or_else(|| perr(line, "`vars m n` must come first"))?;
        if let Some(rest) = s.strip_prefix("twists F0:") {
            f0 = Some(ints(line, rest)?);
        } else if let Some(rest) = s.strip_prefix("twists F1:") {
            f1 = Some((line, ints(line, rest)?));
        } else if let Some(rest) = s.strip_prefix("xweights F0:") {
            xw = Some(ints(line, rest)?);
        } else if let Some(rest) = s.strip_prefix("rel:") {
            let rank = f0.as_ref().ok_or_else(|| perr(line, "`twists F0:` must precede relations"))?.len();
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != rank {
                return Err(perr(line, format!("relation has {} components, F0 has rank {rank}", parts.len())));
            }
            let mut comps = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let poly = parse_polynomial(c, p).map_err(|e| match e {
                    Error::Parse { message, .. } => perr(line, message),
                    other => other,
                })?;
                comps.push((i, poly));
            }
            rels.push((line, FreeElement::from_components(c, comps)));
        } else {
            return Err(perr(line, format!("unrecognized line `{s}`")));
        }
    }
    let ctx = ctx.ok_or_else(|| perr(0, "missing `vars m n`"))?;
    let f0 = f0.ok_or_else(|| perr(0, "missing `twists F0:`"))?;
    let xw = xw.unwrap_or_else(|| vec![0; f0.len()]);
    if xw.len() != f0.len() {
        return Err(perr(0, format!("{} x-weights for {} generators", xw.len(), f0.len())));
    }
    let (f1_line, f1) = f1.unwrap_or((0, Vec::new()));
    if f1.len() != rels.len() {
        return Err(perr(f1_line, format!("{} F1 twists but {} relations", f1.len(), rels.len())));
    }
    let target = GradedFreeModule::with_weights(f0, xw);
    let mut src_w = Vec::new();
    for (j, (line, r)) in rels.iter().enumerate() {
        for (c, m, _) in r.terms() {
            let got = ctx.xi_degree(m) as i64 + target.twists[*c];
            if got != f1[j] {
                return Err(Error::NotHomogeneous {
                    column: j + 1,
                    detail: format!(
                        "line {line}, component {}: a term of fiber degree {} gives degree {got}, but the F1 twist is {}",
                        c + 1,
                        ctx.xi_degree(m),
                        f1[j]
                    ),
                });
            }
        }
        src_w.push(r.x_weight(&target.x_weights).unwrap_or(0));
    }
    GradedPresentation::new(ctx, target, GradedFreeModule::with_weights(f1, src_w), rels.into_iter().map(|r| r.1).collect())
}

pub fn write_module(g: &GradedPresentation) -> String {
    let mut out = String::new();
    let join = |v: &[i64]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "vars {} {}", g.ctx.m, g.ctx.n).unwrap();
    writeln!(out, "twists F0: {}", join(&g.target.twists)).unwrap();
    writeln!(out, "twists F1: {}", join(&g.source.twists)).unwrap();
    if g.target.x_weights.iter().any(|&w| w != 0) {
        writeln!(out, "xweights F0: {}", join(&g.target.x_weights)).unwrap();
    }
    for col in &g.matrix {
        let comps: Vec<String> = (0..g.ngens()).map(|c| col.component(c).to_string()).collect();
        writeln!(out, "rel: {}", comps.join(", ")).unwrap();
    }
    out
}
