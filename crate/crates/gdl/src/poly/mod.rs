//! Polynomials in base variables `x1..xm` and fiber variables `u1..un`
//! (the ξ's), graded by fiber degree.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use order::{ModuleExtension, MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use polynomial::{poly_arith, ArithOp, DegreeError, Polynomial};

use serde::Serialize;

/// Variable signature shared by every value in one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Context {
    /// number of base variables x1..xm (grading degree 0)
    pub m: usize,
    /// number of fiber variables u1..un (grading degree 1)
    pub n: usize,
}

impl Context {
    pub fn new(m: usize, n: usize) -> Self {
        Context { m, n }
    }

    /// The base ring R = Q[x1..xm] on its own.
    pub fn base(&self) -> Context {
        Context { m: self.m, n: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.m + self.n
    }

    pub fn xi_degree(&self, mon: &Monomial) -> u32 {
        mon.exps()[self.m..].iter().sum()
    }

    pub fn x_degree(&self, mon: &Monomial) -> u32 {
        mon.exps()[..self.m].iter().sum()
    }

    pub fn var_name(&self, i: usize) -> String {
        if i < self.m {
            format!("x{}", i + 1)
        } else {
            format!("u{}", i - self.m + 1)
        }
    }

    /// The monomial ξ^a for a fiber exponent vector `a`.
    pub fn xi_monomial(&self, a: &[u32]) -> Monomial {
        debug_assert_eq!(a.len(), self.n);
        let mut e = vec![0u32; self.nvars()];
        e[self.m..].copy_from_slice(a);
        Monomial::from_exps(&e)
    }

    pub fn x_monomial(&self, a: &[u32]) -> Monomial {
        debug_assert_eq!(a.len(), self.m);
        let mut e = vec![0u32; self.nvars()];
        e[..self.m].copy_from_slice(a);
        Monomial::from_exps(&e)
    }

    /// Splits a monomial into its (x-part, ξ-part) exponent vectors.
    pub fn split<'a>(&self, mon: &'a Monomial) -> (&'a [u32], &'a [u32]) {
        mon.exps().split_at(self.m)
    }
}

/// All exponent vectors of length `nv` with entries summing to `d`, in
/// lexicographically decreasing order.
pub fn exponent_vectors(nv: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nv];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nv == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Binomial coefficient with the convention C(a, b) = 0 for a < 0 or b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: u128 = 1;
    for i in 0..b {
        r = r * (a - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Number of monomials of degree `d` in `nv` variables.
pub fn monomial_count(nv: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if nv == 0 {
        return (d == 0) as u64;
    }
    binomial(d + nv as i64 - 1, nv as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_vectors_count() {
        for nv in 0..4 {
            for d in 0..6 {
                assert_eq!(exponent_vectors(nv, d).len() as u64, monomial_count(nv, d as i64));
            }
        }
        assert_eq!(exponent_vectors(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
