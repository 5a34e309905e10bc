//! Buchberger bases of submodules of free modules, normal forms,
//! membership certificates and Schreyer syzygies.

mod basis;
mod element;
mod syzygy;

pub use basis::{buchberger, member_with_coefficients, normal_form, GroebnerBasis};
pub use element::FreeElement;
pub use syzygy::{induced_order, lead_degrees, minimal_generators, syzygies, syzygy_module};

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::linalg::{self, Echelon, SparseVec};
    use crate::poly::{exponent_vectors, parse_polynomial, Context, Monomial, MonomialOrder, Polynomial};
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn p(ctx: Context, s: &str) -> Polynomial {
        parse_polynomial(ctx, s).unwrap()
    }

    fn ideal(ctx: Context, gens: &[&str]) -> Vec<FreeElement> {
        gens.iter().map(|s| FreeElement::from_components(ctx, [(0, p(ctx, s))])).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let ctx = Context::new(0, 2);
        let g = ideal(ctx, &["u1", "u2"]);
        let gb = buchberger(ctx, &g, &MonomialOrder::block(ctx, vec![0]));
        assert_eq!(gb.generators, g);
        let one = FreeElement::unit(ctx, 0);
        assert_eq!(normal_form(&one, &gb), one);
    }

    #[test]
    fn basis_picks_up_cubic() {
        let ctx = Context::new(0, 2);
        let g = ideal(ctx, &["u1^2", "u1*u2 + u2^2"]);
        let gb = buchberger(ctx, &g, &MonomialOrder::block(ctx, vec![0]));
        let cube = ideal(ctx, &["u2^3"]).pop().unwrap();
        assert!(gb.generators.contains(&cube));
        assert!(normal_form(&cube, &gb).is_zero());
        assert_eq!(gb.len(), 3);
    }

    fn koszul_relations(ctx: Context) -> Vec<FreeElement> {
        let n = ctx.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(FreeElement::from_components(ctx, [(i, Polynomial::u(ctx, j)), (j, -&Polynomial::u(ctx, i))]));
            }
        }
        out
    }

    #[test]
    fn koszul_relations_are_a_basis() {
        for n in 2..5 {
            let ctx = Context::new(0, n);
            let rel = koszul_relations(ctx);
            let order = MonomialOrder::block(ctx, vec![1; n]);
            let gb = buchberger(ctx, &rel, &order);
            assert_eq!(gb.len(), rel.len());
            for g in &rel {
                assert!(gb.generators.contains(g) || gb.generators.contains(&g.scale(&Rational::from_int(-1))));
            }
        }
    }

    #[test]
    fn syzygy_examples() {
        let ctx = Context::new(0, 2);
        let g = ideal(ctx, &["u1", "u2"]);
        let s = syzygy_module(ctx, &g, &MonomialOrder::block(ctx, vec![0]), true);
        assert_eq!(s.len(), 1);
        let expect = FreeElement::from_components(ctx, [(0, p(ctx, "u2")), (1, p(ctx, "-u1"))]);
        assert!(s[0] == expect || s[0] == expect.scale(&Rational::from_int(-1)));

        for n in 3..5 {
            let ctx = Context::new(0, n);
            let rel = koszul_relations(ctx);
            let order = MonomialOrder::block(ctx, vec![1; n]);
            let s = syzygy_module(ctx, &rel, &order, true);
            assert_eq!(s.len(), crate::poly::binomial(n as i64, 3) as usize);
        }

        let ctx = Context::new(1, 1);
        let g = ideal(ctx, &["x1^2*u1^3"]);
        assert!(syzygy_module(ctx, &g, &MonomialOrder::block(ctx, vec![0]), true).is_empty());
    }

    #[test]
    fn membership_certificates() {
        let ctx = Context::new(0, 2);
        let g = ideal(ctx, &["u1", "u2"]);
        let order = MonomialOrder::block(ctx, vec![0]);
        let e = ideal(ctx, &["u1*u2"]).pop().unwrap();
        let c = member_with_coefficients(ctx, &e, &g, &order).unwrap();
        assert_eq!(certificate_sum(ctx, &c, &g), e);
        assert!(member_with_coefficients(ctx, &FreeElement::unit(ctx, 0), &g, &order).is_none());

        let ctx = Context::new(4, 0);
        let quad: Vec<String> = exponent_vectors(4, 2).into_iter().map(|e| Polynomial::monomial(ctx, Monomial::from_exps(&e)).to_string()).collect();
        let gens = ideal(ctx, &quad.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let e = ideal(ctx, &["x1^3 + x1*x2^2 + x1*x3^2 + x1*x4^2"]).pop().unwrap();
        let order = MonomialOrder::degrevlex(ctx, vec![0]);
        let c = member_with_coefficients(ctx, &e, &gens, &order).unwrap();
        assert_eq!(certificate_sum(ctx, &c, &gens), e);
        assert!(c.iter().all(|q| q.is_zero() || q.terms().iter().all(|(m, _)| m.degree() == 1)));
    }

    fn certificate_sum(ctx: Context, c: &[Polynomial], g: &[FreeElement]) -> FreeElement {
        let mut acc = FreeElement::zero(ctx);
        for (ci, gi) in c.iter().zip(g) {
            acc = acc.add(&gi.mul_poly(ci));
        }
        acc
    }

    // ---- independent oracle: degree-by-degree linear algebra (m = 0) ----

    struct Slice {
        index: HashMap<(usize, Monomial), usize>,
    }

    impl Slice {
        fn new() -> Self {
            Slice { index: HashMap::new() }
        }
        fn vec(&mut self, e: &FreeElement) -> SparseVec {
            let mut out = Vec::new();
            for (c, m, a) in e.terms() {
                let k = self.index.len();
                let i = *self.index.entry((*c, m.clone())).or_insert(k);
                out.push((i, a.clone()));
            }
            linalg::collect(out)
        }
    }

    /// Q-basis of the degree-d part of span(gens) in ⊕ A(−twist_c).
    fn span_in_degree(ctx: Context, gens: &[FreeElement], twists: &[i64], d: i64, sl: &mut Slice) -> Echelon {
        let mut e = Echelon::new();
        for g in gens {
            let Some(dg) = g.graded_degree(twists) else { continue };
            if d < dg {
                continue;
            }
            for nu in exponent_vectors(ctx.n, (d - dg) as u32) {
                let v = sl.vec(&g.mul_term(&ctx.xi_monomial(&nu), &Rational::one()));
                e.insert(v);
            }
        }
        e
    }

    fn random_module() -> impl Strategy<Value = (Vec<i64>, Vec<FreeElement>)> {
        let ctx = Context::new(0, 2);
        (prop::collection::vec(0i64..2, 1..3), prop::collection::vec((0usize..3, 0usize..3, 0u32..3, -2i64..3, 0u32..2), 1..4)).prop_map(
            move |(twists, rels)| {
                let r = twists.len();
                let mut out = Vec::new();
                for (c1, c2, a, coef, extra) in rels {
                    let (c1, c2) = (c1 % r, c2 % r);
                    // a homogeneous relation of degree max(twists)+2+extra
                    let d = *twists.iter().max().unwrap() + 2 + extra as i64;
                    let e1 = (d - twists[c1]) as u32;
                    let e2 = (d - twists[c2]) as u32;
                    let a1 = a.min(e1);
                    let a2 = (2 - a.min(2)).min(e2);
                    let t1 = (c1, ctx.xi_monomial(&[a1, e1 - a1]), Rational::one());
                    let t2 = (c2, ctx.xi_monomial(&[a2, e2 - a2]), Rational::from_int(coef));
                    let e = FreeElement::from_terms(ctx, [t1, t2]);
                    if !e.is_zero() {
                        out.push(e);
                    }
                }
                if out.is_empty() {
                    out.push(FreeElement::from_terms(ctx, [(0, ctx.xi_monomial(&[1, 1]), Rational::one())]));
                }
                (twists, out)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_idempotent_and_sound((twists, gens) in random_module(), probe in prop::collection::vec(0u32..4, 2)) {
            let ctx = Context::new(0, 2);
            let order = MonomialOrder::block(ctx, twists.clone());
            let gb = buchberger(ctx, &gens, &order);
            for g in &gb.generators {
                prop_assert!(g.graded_degree(&twists).is_some());
            }
            let e = FreeElement::from_terms(ctx, [(0, ctx.xi_monomial(&probe), Rational::one())])
                .add(&gens[0].mul_term(&ctx.xi_monomial(&[1, 0]), &Rational::one()));
            let nf = normal_form(&e, &gb);
            prop_assert_eq!(normal_form(&nf, &gb), nf.clone());
            // membership agrees with the slice oracle, degree by degree
            for d in 0..6i64 {
                let mut sl = Slice::new();
                let span = span_in_degree(ctx, &gens, &twists, d, &mut sl);
                for c in 0..twists.len() {
                    if d < twists[c] { continue; }
                    for nu in exponent_vectors(2, (d - twists[c]) as u32) {
                        let v = FreeElement::from_terms(ctx, [(c, ctx.xi_monomial(&nu), Rational::one())]);
                        let w = v.add(&gens[0].scale(&Rational::from_int(2)));
                        for x in [v, w] {
                            if x.graded_degree(&twists) != Some(d) { continue; }
                            let member = span.contains(&sl.vec(&x));
                            prop_assert_eq!(member, normal_form(&x, &gb).is_zero());
                            if member {
                                let cert = member_with_coefficients(ctx, &x, &gens, &order).unwrap();
                                prop_assert_eq!(certificate_sum(ctx, &cert, &gens), x.clone());
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn syzygies_exact_and_complete((twists, gens) in random_module()) {
            let ctx = Context::new(0, 2);
            let order = MonomialOrder::block(ctx, twists.clone());
            let syz = syzygy_module(ctx, &gens, &order, true);
            let src: Vec<i64> = gens.iter().map(|g| g.graded_degree(&twists).unwrap()).collect();
            for s in &syz {
                prop_assert!(s.graded_degree(&src).is_some());
                let mut acc = FreeElement::zero(ctx);
                for (i, q) in s.components() {
                    acc = acc.add(&gens[i].mul_poly(&q));
                }
                prop_assert!(acc.is_zero());
            }
            // slice-wise: syzygies span the full kernel of the slice map
            for d in 0..7i64 {
                let mut sl_src = Slice::new();
                let mut sl_tgt = Slice::new();
                let mut cols = Vec::new();
                for (i, _) in gens.iter().enumerate() {
                    if d < src[i] { continue; }
                    for nu in exponent_vectors(2, (d - src[i]) as u32) {
                        let mon = ctx.xi_monomial(&nu);
                        sl_src.vec(&FreeElement::from_terms(ctx, [(i, mon.clone(), Rational::one())]));
                        cols.push(sl_tgt.vec(&gens[i].mul_term(&mon, &Rational::one())));
                    }
                }
                let ker_dim = linalg::kernel(&cols).len();
                let span = span_in_degree(ctx, &syz, &src, d, &mut sl_src);
                prop_assert_eq!(span.rank(), ker_dim, "degree {}", d);
            }
        }
    }
}
