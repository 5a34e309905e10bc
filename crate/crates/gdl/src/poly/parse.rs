use super::{Context, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parses text like `3/2*x1^2*u3 - u1 + 4`.
///
/// `x<i>` are base variables, `u<i>` fiber variables, both 1-based.
/// Whitespace is ignored. Factors within a term are joined by `*`.
pub fn parse_polynomial(ctx: Context, text: &str) -> Result<Polynomial> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err(text, "empty polynomial"));
    }
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    // split on +/- that are not at the start and not right after '^', '*' or '/'
    let mut pieces = Vec::new();
    for i in 0..bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && i > start {
            let prev = bytes[i - 1];
            if prev != b'^' && prev != b'*' && prev != b'/' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
    }
    pieces.push(&s[start..]);
    for piece in pieces {
        terms.push(parse_term(ctx, piece).map_err(|m| parse_err(text, &m))?);
    }
    Ok(Polynomial::from_terms(ctx, terms))
}

fn parse_err(text: &str, msg: &str) -> Error {
    Error::Parse { line: 0, message: format!("{msg} in `{}`", text.trim()) }
}

fn parse_term(ctx: Context, piece: &str) -> std::result::Result<(Monomial, Rational), String> {
    let (mut coeff, body) = match piece.as_bytes().first() {
        Some(b'-') => (Rational::from_int(-1), &piece[1..]),
        Some(b'+') => (Rational::one(), &piece[1..]),
        _ => (Rational::one(), piece),
    };
    if body.is_empty() {
        return Err("dangling sign".into());
    }
    let mut exps = vec![0u32; ctx.nvars()];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err("empty factor".into());
        }
        let first = factor.as_bytes()[0];
        if first.is_ascii_digit() {
            let c: Rational = factor.parse()?;
            coeff *= &c;
            continue;
        }
        let (name, pow) = match factor.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| format!("bad exponent `{e}`"))?),
            None => (factor, 1),
        };
        let (kind, idx) = name.split_at(1);
        let idx: usize = idx.parse().map_err(|_| format!("unknown variable `{name}`"))?;
        let slot = match kind {
            "x" if idx >= 1 && idx <= ctx.m => idx - 1,
            "u" if idx >= 1 && idx <= ctx.n => ctx.m + idx - 1,
            _ => return Err(format!("variable `{name}` outside signature (m={}, n={})", ctx.m, ctx.n)),
        };
        exps[slot] += pow;
    }
    Ok((Monomial::from_exps(&exps), coeff))
}
