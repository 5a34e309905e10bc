use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{Context, Monomial, Polynomial};
use crate::rational::Rational;

/// Element of a free module `⊕ A e_c`. Terms are sorted by (component,
/// monomial) in canonical storage order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    ctx: Context,
    terms: Vec<(usize, Monomial, Rational)>,
}

impl FreeElement {
    pub fn zero(ctx: Context) -> Self {
        FreeElement { ctx, terms: Vec::new() }
    }

    /// The basis vector `e_c`.
    pub fn unit(ctx: Context, c: usize) -> Self {
        FreeElement { ctx, terms: vec![(c, Monomial::one(ctx.nvars()), Rational::one())] }
    }

    pub fn from_terms(ctx: Context, it: impl IntoIterator<Item = (usize, Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<(usize, Monomial), Rational> = BTreeMap::new();
        for (c, m, a) in it {
            if a.is_zero() {
                continue;
            }
            match map.get_mut(&(c, m.clone())) {
                Some(v) => *v += &a,
                None => {
                    map.insert((c, m), a);
                }
            }
        }
        FreeElement { ctx, terms: map.into_iter().filter(|(_, a)| !a.is_zero()).map(|((c, m), a)| (c, m, a)).collect() }
    }

    pub fn from_components(ctx: Context, comps: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        Self::from_terms(
            ctx,
            comps.into_iter().flat_map(|(c, p)| {
                assert_eq!(p.ctx(), ctx, "context mismatch");
                p.into_terms().into_iter().map(move |(m, a)| (c, m, a))
            }),
        )
    }

    /// Sum of `p_c e_c` over a dense list.
    pub fn from_dense(ctx: Context, comps: &[Polynomial]) -> Self {
        Self::from_components(ctx, comps.iter().cloned().enumerate())
    }

    pub(crate) fn from_sorted_unchecked(ctx: Context, terms: Vec<(usize, Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| (w[0].0, &w[0].1) < (w[1].0, &w[1].1)));
        FreeElement { ctx, terms }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> &[(usize, Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, c: usize) -> Polynomial {
        Polynomial::from_terms(self.ctx, self.terms.iter().filter(|(k, _, _)| *k == c).map(|(_, m, a)| (m.clone(), a.clone())))
    }

    /// Nonzero components in increasing index order.
    pub fn components(&self) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Vec<(Monomial, Rational)>)> = Vec::new();
        for (c, m, a) in &self.terms {
            match out.last_mut() {
                Some((k, v)) if k == c => v.push((m.clone(), a.clone())),
                _ => out.push((*c, vec![(m.clone(), a.clone())])),
            }
        }
        out.into_iter().map(|(c, v)| (c, Polynomial::from_terms(self.ctx, v))).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.iter().map(|t| t.0).collect();
        v.dedup();
        v
    }

    pub fn max_component(&self) -> Option<usize> {
        self.terms.last().map(|t| t.0)
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
                let (a, b) = (&self.terms[i], &other.terms[j]);
                a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (c, m, a) = &other.terms[j];
                    out.push((*c, m.clone(), a * sign));
                    j += 1;
                }
                Ordering::Equal => {
                    let a = &self.terms[i].2 + &(&other.terms[j].2 * sign);
                    if !a.is_zero() {
                        out.push((self.terms[i].0, self.terms[i].1.clone(), a));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FreeElement { ctx: self.ctx, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, &Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, &Rational::from_int(-1))
    }

    /// `self + c * o`
    pub fn add_scaled(&self, o: &Self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        self.merge(o, c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        FreeElement { ctx: self.ctx, terms: self.terms.iter().map(|(k, m, a)| (*k, m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, mon: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        FreeElement { ctx: self.ctx, terms: self.terms.iter().map(|(k, m, a)| (*k, m.mul(mon), a * c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut acc = Self::zero(self.ctx);
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    /// Relabels components through `f`; terms landing on the same component add up.
    pub fn map_components(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.ctx, self.terms.iter().map(|(c, m, a)| (f(*c), m.clone(), a.clone())))
    }

    /// Keeps only the components accepted by `keep`.
    pub fn filter_components(&self, keep: impl Fn(usize) -> bool) -> Self {
        FreeElement { ctx: self.ctx, terms: self.terms.iter().filter(|t| keep(t.0)).cloned().collect() }
    }

    pub fn sign_twist(&self) -> Self {
        FreeElement {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(c, m, a)| if self.ctx.xi_degree(m) % 2 == 1 { (*c, m.clone(), -a) } else { (*c, m.clone(), a.clone()) }).collect(),
        }
    }

    /// Fiber degree of a homogeneous element of `⊕ A(−twist_c)`:
    /// every term must satisfy ξ-deg + twist_c = d.
    pub fn graded_degree(&self, twists: &[i64]) -> Option<i64> {
        let mut d = None;
        for (c, m, _) in &self.terms {
            let e = self.ctx.xi_degree(m) as i64 + twists[*c];
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        d
    }

    /// Largest base degree + weight over all terms (the base-degree of a
    /// homogeneous element, an upper bound otherwise).
    pub fn x_weight(&self, weights: &[i64]) -> Option<i64> {
        self.terms.iter().map(|(c, m, _)| self.ctx.x_degree(m) as i64 + weights[*c]).max()
    }

    pub fn is_x_homogeneous(&self, weights: &[i64]) -> bool {
        let mut it = self.terms.iter().map(|(c, m, _)| self.ctx.x_degree(m) as i64 + weights[*c]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Re-expresses in a different context via a monomial map.
    pub fn map_monomials(&self, ctx: Context, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|(c, m, a)| (*c, f(m), a.clone())))
    }

    /// Whether every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components().into_iter().map(|(c, p)| format!("({p})*e{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
