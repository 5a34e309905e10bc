use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Context, Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse polynomial with exact rational coefficients. Terms are kept
/// sorted by the canonical monomial storage order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: Context,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeError {
    Zero,
    NotHomogeneous,
}

#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// multiply the first operand by a scalar; the second operand is ignored
    Scalar(Rational),
}

/// Checked arithmetic: operands must share a variable signature.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if let ArithOp::Scalar(c) = &op {
        return Ok(a.scale(c));
    }
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch { left: a.ctx, right: b.ctx });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Scalar(_) => unreachable!(),
    })
}

impl Polynomial {
    pub fn zero(ctx: Context) -> Self {
        Polynomial { ctx, terms: Vec::new() }
    }

    pub fn constant(ctx: Context, c: Rational) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn term(ctx: Context, mon: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mon.len(), ctx.nvars());
        if c.is_zero() {
            Self::zero(ctx)
        } else {
            Polynomial { ctx, terms: vec![(mon, c)] }
        }
    }

    pub fn monomial(ctx: Context, mon: Monomial) -> Self {
        Self::term(ctx, mon, Rational::one())
    }

    /// The base variable x_{i+1}.
    pub fn x(ctx: Context, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), i))
    }

    /// The fiber variable u_{i+1} (that is, ξ_{i+1}).
    pub fn u(ctx: Context, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), ctx.m + i))
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ctx: Context, it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.len(), ctx.nvars());
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ctx, terms }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_coeff(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, mon: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(m, _)| m.cmp(mon)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        Polynomial { ctx: self.ctx, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `c * mon * self`
    pub fn mul_term(&self, mon: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        // multiplication by a monomial preserves lexicographic storage order
        Polynomial { ctx: self.ctx, terms: self.terms.iter().map(|(m, a)| (m.mul(mon), a * c)).collect() }
    }

    fn merge(&self, other: &Self, sign: &Rational) -> Self {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Greater
            } else if j == other.terms.len() {
                Ordering::Less
            } else {
                self.terms[i].0.cmp(&other.terms[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), c * sign));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &(&other.terms[j].1 * sign);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ctx: self.ctx, terms: out }
    }

    /// Degree in the fiber variables, if homogeneous.
    pub fn xi_degree(&self) -> std::result::Result<u32, DegreeError> {
        self.degree_by(|m| self.ctx.xi_degree(m))
    }

    /// Degree in the base variables, if homogeneous in them.
    pub fn x_degree(&self) -> std::result::Result<u32, DegreeError> {
        self.degree_by(|m| self.ctx.x_degree(m))
    }

    fn degree_by(&self, f: impl Fn(&Monomial) -> u32) -> std::result::Result<u32, DegreeError> {
        let mut it = self.terms.iter();
        let d = match it.next() {
            None => return Err(DegreeError::Zero),
            Some((m, _)) => f(m),
        };
        if it.all(|(m, _)| f(m) == d) {
            Ok(d)
        } else {
            Err(DegreeError::NotHomogeneous)
        }
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ctx.x_degree(m)).max()
    }

    /// Part of fiber degree exactly `d`.
    pub fn xi_part(&self, d: u32) -> Self {
        Polynomial { ctx: self.ctx, terms: self.terms.iter().filter(|(m, _)| self.ctx.xi_degree(m) == d).cloned().collect() }
    }

    /// The image under ξ_i ↦ −ξ_i: terms of odd fiber degree change sign.
    pub fn sign_twist(&self) -> Self {
        Polynomial {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| if self.ctx.xi_degree(m) % 2 == 1 { (m.clone(), -c) } else { (m.clone(), c.clone()) }).collect(),
        }
    }

    /// Leading term for a monomial order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp_monomials(&a.0, &b.0))
    }

    /// Rewrites this polynomial into another context by an exponent map.
    pub fn map_monomials(&self, ctx: Context, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Viewed as a polynomial in the base variables only. Panics if a fiber
    /// variable occurs.
    pub fn to_base(&self) -> Self {
        let base = self.ctx.base();
        self.map_monomials(base, |m| {
            let (x, u) = self.ctx.split(m);
            assert!(u.iter().all(|&e| e == 0), "fiber variable in base polynomial");
            Monomial::from_exps(x)
        })
    }

    /// Embeds a base-ring polynomial into `ctx` (which must extend it).
    pub fn from_base(ctx: Context, p: &Polynomial) -> Self {
        assert_eq!(p.ctx.m, ctx.m);
        p.map_monomials(ctx, |m| {
            let mut e = m.exps().to_vec();
            e.resize(ctx.nvars(), 0);
            Monomial::from_exps(&e)
        })
    }

    /// Terms sorted from largest to smallest in `order`; used for printing.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp_monomials(&b.0, &a.0));
        v
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, &Rational::one())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, &Rational::from_int(-1))
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, rhs.ctx, "context mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        Polynomial::from_terms(self.ctx, self.terms.iter().flat_map(|(a, c)| rhs.terms.iter().map(move |(b, d)| (a.mul(b), c * d))))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::block(self.ctx, vec![]);
        for (k, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.ctx.var_name(i) } else { format!("{}^{}", self.ctx.var_name(i), e) })
                .collect();
            match (a.is_one(), vars.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn p(ctx: Context, s: &str) -> Polynomial {
        parse_polynomial(ctx, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let ctx = Context::new(1, 1);
        let a = p(ctx, "x1 + u1");
        let b = p(ctx, "x1 - u1");
        assert_eq!(&a * &b, p(ctx, "x1^2 - u1^2"));
        assert!((&p(ctx, "u1") * &Polynomial::zero(ctx)).is_zero());
    }

    #[test]
    fn sum_of_squares_times_x1() {
        let ctx = Context::new(4, 0);
        let f = p(ctx, "x1^2 + x2^2 + x3^2 + x4^2");
        let g = &f * &Polynomial::x(ctx, 0);
        assert_eq!(g.len(), 4);
        assert_eq!(g.x_degree(), Ok(3));
        assert_eq!(g.xi_degree(), Ok(0));
    }

    #[test]
    fn xi_degrees() {
        let ctx = Context::new(1, 3);
        assert_eq!(p(ctx, "x1^3*u2^2").xi_degree(), Ok(2));
        assert_eq!(p(ctx, "x1 + u1").xi_degree(), Err(DegreeError::NotHomogeneous));
        assert_eq!(p(ctx, "u1*u2 - u3^2").xi_degree(), Ok(2));
        assert_eq!(Polynomial::zero(ctx).xi_degree(), Err(DegreeError::Zero));
    }

    #[test]
    fn mismatched_contexts_error() {
        let a = Polynomial::one(Context::new(1, 1));
        let b = Polynomial::one(Context::new(1, 2));
        assert!(poly_arith(&a, &b, ArithOp::Add).is_err());
        assert!(poly_arith(&a, &a, ArithOp::Mul).is_ok());
    }

    #[test]
    fn display_roundtrip() {
        let ctx = Context::new(2, 3);
        for s in ["3/2*x1^2*u3", "-u1 + 2*x2", "1", "0", "-7/3", "u1*u2 - u3^2 + x1*x2*u1"] {
            let a = p(ctx, s);
            assert_eq!(p(ctx, &a.to_string()), a, "{s}");
        }
    }

    #[test]
    fn sign_twist_is_involution() {
        let ctx = Context::new(1, 2);
        let a = p(ctx, "u1 + x1*u1*u2 + x1 - u2^3");
        assert_eq!(a.sign_twist(), p(ctx, "-u1 + x1*u1*u2 + x1 + u2^3"));
        assert_eq!(a.sign_twist().sign_twist(), a);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let ctx = Context::new(1, 2);
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6, 1i64..4), 0..5)
            .prop_map(move |v| Polynomial::from_terms(ctx, v.into_iter().map(|(e, n, d)| (Monomial::from_exps(&e), Rational::new(n, d)))))
    }

    fn arb_homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
        let ctx = Context::new(1, 2);
        prop::collection::vec((0u32..3, 0u32..=d, 1i64..5), 1..4)
            .prop_map(move |v| Polynomial::from_terms(ctx, v.into_iter().map(|(x, a, c)| (Monomial::from_exps(&[x, a, d - a]), Rational::from_int(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn xi_degree_additive(a in arb_homogeneous(2), b in arb_homogeneous(3)) {
            let ab = &a * &b;
            prop_assert_eq!(ab.xi_degree().unwrap(), a.xi_degree().unwrap() + b.xi_degree().unwrap());
        }
    }
}
