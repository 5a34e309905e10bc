use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use super::FreeElement;
use crate::poly::{Context, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

type Term = (usize, Monomial, Rational);

/// Module element with terms ascending in a fixed monomial order, so the
/// leading term is the last one.
#[derive(Clone, Debug)]
pub(crate) struct OVec {
    pub terms: Vec<Term>,
}

impl OVec {
    pub fn from_free(e: &FreeElement, order: &MonomialOrder) -> Self {
        let mut terms = e.terms().to_vec();
        terms.sort_by(|a, b| order.cmp_terms(a.0, &a.1, b.0, &b.1));
        OVec { terms }
    }

    pub fn to_free(&self, ctx: Context) -> FreeElement {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        FreeElement::from_sorted_unchecked(ctx, t)
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    /// `self - c * mon * g`
    pub fn sub_mul(&self, g: &OVec, mon: &Monomial, c: &Rational, order: &MonomialOrder) -> OVec {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (a, b) = (&self.terms, &g.terms);
        let (mut i, mut j) = (0, 0);
        let mut gt: Option<Term> = b.first().map(|t| (t.0, t.1.mul(mon), -&(&t.2 * c)));
        while i < a.len() || gt.is_some() {
            let ord = match (&gt, i < a.len()) {
                (None, _) => Ordering::Less,
                (Some(_), false) => Ordering::Greater,
                (Some(t), true) => order.cmp_terms(a[i].0, &a[i].1, t.0, &t.1),
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(gt.take().unwrap());
                    j += 1;
                    gt = b.get(j).map(|t| (t.0, t.1.mul(mon), -&(&t.2 * c)));
                }
                Ordering::Equal => {
                    let t = gt.take().unwrap();
                    let s = &a[i].2 + &t.2;
                    if !s.is_zero() {
                        out.push((t.0, t.1, s));
                    }
                    i += 1;
                    j += 1;
                    gt = b.get(j).map(|t| (t.0, t.1.mul(mon), -&(&t.2 * c)));
                }
            }
        }
        OVec { terms: out }
    }

    pub fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.2 = &t.2 * c;
        }
    }

    fn single_component(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0 == w[1].0)
    }
}

/// A list of monic elements with fast lookup of a reducer by leading term.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    pub order: MonomialOrder,
    pub elems: Vec<OVec>,
    by_comp: HashMap<usize, Vec<usize>>,
    alive: Vec<bool>,
}

impl Reducer {
    pub fn new(order: MonomialOrder) -> Self {
        Reducer { order, elems: Vec::new(), by_comp: HashMap::new(), alive: Vec::new() }
    }

    pub fn push(&mut self, v: OVec) -> usize {
        let k = self.elems.len();
        let c = v.lead().expect("zero element").0;
        self.by_comp.entry(c).or_default().push(k);
        self.elems.push(v);
        self.alive.push(true);
        k
    }

    pub fn kill(&mut self, k: usize) {
        self.alive[k] = false;
    }

    pub fn is_alive(&self, k: usize) -> bool {
        self.alive[k]
    }

    pub fn find_divisor(&self, c: usize, mon: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.by_comp.get(&c)?.iter().copied().find(|&k| self.alive[k] && Some(k) != skip && self.elems[k].lead().unwrap().1.divides(mon))
    }

    /// Full reduction. `on_step(k, q, a)` is told about each subtraction of
    /// `a * q * elems[k]`.
    pub fn reduce(&self, f: OVec, skip: Option<usize>, mut on_step: impl FnMut(usize, &Monomial, &Rational)) -> OVec {
        let mut f = f;
        let mut rem: Vec<Term> = Vec::new();
        while let Some((c, m, a)) = f.terms.last() {
            match self.find_divisor(*c, m, skip) {
                Some(k) => {
                    let q = self.elems[k].lead().unwrap().1.quotient_of(m).unwrap();
                    let a = a.clone();
                    on_step(k, &q, &a);
                    f = f.sub_mul(&self.elems[k], &q, &a, &self.order);
                }
                None => rem.push(f.terms.pop().unwrap()),
            }
        }
        rem.reverse();
        OVec { terms: rem }
    }
}

/// Incremental Buchberger state.
pub(crate) struct Builder {
    pub red: Reducer,
    pub coords: Vec<FreeElement>,
    track: Option<Context>,
    pairs: BTreeSet<(i64, usize, usize)>,
}

impl Builder {
    /// `track` gives the context used for coordinate vectors, if tracking.
    pub fn new(order: MonomialOrder, track: Option<Context>) -> Self {
        Builder { red: Reducer::new(order), coords: Vec::new(), track, pairs: BTreeSet::new() }
    }

    /// Reduces `v` and, if nonzero, adds it with its new pairs. Returns the
    /// index of the new element.
    pub fn add(&mut self, v: OVec, coord: Option<FreeElement>) -> Option<usize> {
        let mut coord = coord;
        let track = self.track.is_some();
        let coords = &self.coords;
        let mut r = {
            let coord_ref = &mut coord;
            self.red.reduce(v, None, |k, q, a| {
                if track {
                    let c = coord_ref.as_ref().unwrap();
                    *coord_ref = Some(c.sub(&coords[k].mul_term(q, a)));
                }
            })
        };
        let lc = r.lead()?.2.clone();
        let inv = lc.recip();
        r.scale(&inv);
        if track {
            self.coords.push(coord.unwrap().scale(&inv));
        }
        let j = self.red.push(r);
        let (cj, mj) = {
            let t = self.red.elems[j].lead().unwrap();
            (t.0, t.1.clone())
        };
        for i in 0..j {
            if !self.red.is_alive(i) {
                continue;
            }
            let (ci, mi) = {
                let t = self.red.elems[i].lead().unwrap();
                (t.0, &t.1)
            };
            if ci != cj {
                continue;
            }
            let l = mi.lcm(&mj);
            self.pairs.insert((self.red.order.term_degree(cj, &l), j, i));
        }
        Some(j)
    }

    fn lead(&self, k: usize) -> &Term {
        self.red.elems[k].lead().unwrap()
    }

    fn skip_pair(&self, i: usize, j: usize) -> bool {
        let (c, mi) = (self.lead(i).0, &self.lead(i).1);
        let mj = &self.lead(j).1;
        if mi.coprime(mj) && self.red.elems[i].single_component() && self.red.elems[j].single_component() {
            return true;
        }
        let l = mi.lcm(mj);
        // strict chain criterion: some lead divides lcm(i,j) and both partial
        // lcms are proper divisors of it; sound by induction on the lcm
        self.red.by_comp.get(&c).map_or(false, |ks| {
            ks.iter().any(|&k| {
                if k == i || k == j || !self.red.is_alive(k) {
                    return false;
                }
                let mk = &self.lead(k).1;
                mk.divides(&l) && mi.lcm(mk) != l && mj.lcm(mk) != l
            })
        })
    }

    /// Processes pending pairs of degree at most `bound` (all if `None`).
    pub fn complete(&mut self, bound: Option<i64>) {
        while let Some(&(d, j, i)) = self.pairs.iter().next() {
            if bound.map_or(false, |b| d > b) {
                break;
            }
            self.pairs.remove(&(d, j, i));
            if !self.red.is_alive(i) || !self.red.is_alive(j) || self.skip_pair(i, j) {
                continue;
            }
            let (_, mi, _) = self.lead(i).clone();
            let (_, mj, _) = self.lead(j).clone();
            let l = mi.lcm(&mj);
            let qi = mi.quotient_of(&l).unwrap();
            let qj = mj.quotient_of(&l).unwrap();
            let zero = OVec { terms: Vec::new() };
            let one = Rational::one();
            let s = zero.sub_mul(&self.red.elems[i], &qi, &Rational::from_int(-1), &self.red.order).sub_mul(&self.red.elems[j], &qj, &one, &self.red.order);
            let coord = self.track.map(|_| self.coords[i].mul_term(&qi, &one).sub(&self.coords[j].mul_term(&qj, &one)));
            self.add(s, coord);
        }
    }

    /// Drops elements with divisible leads and tail-reduces the rest.
    pub fn interreduce(&mut self) {
        let n = self.red.elems.len();
        for i in 0..n {
            if !self.red.is_alive(i) {
                continue;
            }
            let (ci, mi) = (self.lead(i).0, self.lead(i).1.clone());
            let redundant =
                (0..n).any(|j| j != i && self.red.is_alive(j) && self.lead(j).0 == ci && self.lead(j).1.divides(&mi) && (self.lead(j).1 != mi || j < i));
            if redundant {
                self.red.kill(i);
            }
        }
        for i in 0..n {
            if !self.red.is_alive(i) {
                continue;
            }
            let mut v = self.red.elems[i].clone();
            let lead = v.terms.pop().unwrap();
            let track = self.track.is_some();
            let mut coord = if track { Some(self.coords[i].clone()) } else { None };
            let coords = &self.coords;
            let tail = {
                let cr = &mut coord;
                self.red.reduce(v, Some(i), |k, q, a| {
                    if track {
                        let c = cr.as_ref().unwrap();
                        *cr = Some(c.sub(&coords[k].mul_term(q, a)));
                    }
                })
            };
            let mut terms = tail.terms;
            terms.push(lead);
            self.red.elems[i] = OVec { terms };
            if let Some(c) = coord {
                self.coords[i] = c;
            }
        }
    }

    pub fn alive_indices(&self) -> Vec<usize> {
        (0..self.red.elems.len()).filter(|&k| self.red.is_alive(k)).collect()
    }
}

/// A Gröbner basis of a submodule of a free module, with each element
/// expressed in the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub ctx: Context,
    /// reduced basis, monic
    pub generators: Vec<FreeElement>,
    pub original_gens: Vec<FreeElement>,
    /// `generators[a] = Σ_i coordinates[a]_i · original_gens[i]` (component i
    /// of the coordinate vector); empty when not tracked
    pub coordinates: Vec<FreeElement>,
    pub(crate) reducer: Reducer,
}

impl GroebnerBasis {
    pub fn compute(ctx: Context, gens: &[FreeElement], order: &MonomialOrder, track: bool) -> Self {
        let mut b = Builder::new(order.clone(), if track { Some(ctx) } else { None });
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(g.ctx(), ctx, "context mismatch");
            let coord = if track { Some(FreeElement::unit(ctx, i)) } else { None };
            b.add(OVec::from_free(g, order), coord);
        }
        b.complete(None);
        b.interreduce();
        Self::from_builder(ctx, b, gens.to_vec(), track)
    }

    pub(crate) fn from_builder(ctx: Context, b: Builder, original_gens: Vec<FreeElement>, track: bool) -> Self {
        let alive = b.alive_indices();
        let mut reducer = Reducer::new(b.red.order.clone());
        let mut generators = Vec::new();
        let mut coordinates = Vec::new();
        for &k in &alive {
            generators.push(b.red.elems[k].to_free(ctx));
            reducer.push(b.red.elems[k].clone());
            if track {
                coordinates.push(b.coords[k].clone());
            }
        }
        GroebnerBasis { order: b.red.order, ctx, generators, original_gens, coordinates, reducer }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.reducer
            .elems
            .iter()
            .map(|v| {
                let t = v.lead().unwrap();
                (t.0, t.1.clone())
            })
            .collect()
    }

    pub fn normal_form(&self, e: &FreeElement) -> FreeElement {
        self.reducer.reduce(OVec::from_free(e, &self.order), None, |_, _, _| {}).to_free(self.ctx)
    }

    /// Division with quotients: `e = Σ_a q_a · generators[a] + remainder`.
    pub fn divide(&self, e: &FreeElement) -> (Vec<Polynomial>, FreeElement) {
        let mut q: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); self.len()];
        let r = self.reducer.reduce(OVec::from_free(e, &self.order), None, |k, m, a| q[k].push((m.clone(), a.clone())));
        (q.into_iter().map(|t| Polynomial::from_terms(self.ctx, t)).collect(), r.to_free(self.ctx))
    }

    pub fn contains(&self, e: &FreeElement) -> bool {
        self.normal_form(e).is_zero()
    }

    /// Whether a monomial term `mon · e_c` is standard (not divisible by any leading term).
    pub fn is_standard(&self, c: usize, mon: &Monomial) -> bool {
        self.reducer.find_divisor(c, mon, None).is_none()
    }

    /// Expresses `e` in the original generators, if it lies in their span.
    pub fn express(&self, e: &FreeElement) -> Option<Vec<Polynomial>> {
        assert!(!self.coordinates.is_empty() || self.generators.is_empty(), "basis computed without tracking");
        let (q, r) = self.divide(e);
        if !r.is_zero() {
            return None;
        }
        let mut acc = FreeElement::zero(self.ctx);
        for (a, qa) in q.iter().enumerate() {
            if !qa.is_zero() {
                acc = acc.add(&self.coordinates[a].mul_poly(qa));
            }
        }
        Some((0..self.original_gens.len()).map(|i| acc.component(i)).collect())
    }
}

/// Gröbner basis with coordinate tracking in the given order.
pub fn buchberger(ctx: Context, gens: &[FreeElement], order: &MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::compute(ctx, gens, order, true)
}

pub fn normal_form(e: &FreeElement, gb: &GroebnerBasis) -> FreeElement {
    gb.normal_form(e)
}

/// Certificate `c` with `Σ c_i gens_i = e`, or `None` when `e` is not in the span.
pub fn member_with_coefficients(ctx: Context, e: &FreeElement, gens: &[FreeElement], order: &MonomialOrder) -> Option<Vec<Polynomial>> {
    buchberger(ctx, gens, order).express(e)
}
