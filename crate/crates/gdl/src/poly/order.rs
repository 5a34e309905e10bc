use std::cmp::Ordering;

use super::{Context, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// total degree over all variables, then reverse lexicographic
    DegRevLex,
    /// fiber variables first (degrevlex among them), ties broken by degrevlex on base variables
    Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleExtension {
    PositionOverTerm,
    TermOverPosition,
}

/// A monomial order on the ring, extended to free modules.
///
/// For term-over-position the per-component weights are added to the
/// grading degree before anything else is compared, so a homogeneous
/// element of a twisted free module has a well-defined leading degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub ctx: Context,
    pub kind: OrderKind,
    pub extension: ModuleExtension,
    pub weights: Vec<i64>,
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

impl MonomialOrder {
    /// The default: block order, term over position, with the given weights.
    pub fn block(ctx: Context, weights: Vec<i64>) -> Self {
        MonomialOrder { ctx, kind: OrderKind::Block, extension: ModuleExtension::TermOverPosition, weights }
    }

    pub fn degrevlex(ctx: Context, weights: Vec<i64>) -> Self {
        MonomialOrder { ctx, kind: OrderKind::DegRevLex, extension: ModuleExtension::TermOverPosition, weights }
    }

    pub fn with_extension(mut self, e: ModuleExtension) -> Self {
        self.extension = e;
        self
    }

    /// The degree driving this order: fiber degree for the block order,
    /// total degree for degrevlex.
    pub fn degree(&self, mon: &Monomial) -> i64 {
        match self.kind {
            OrderKind::DegRevLex => mon.degree() as i64,
            OrderKind::Block => self.ctx.xi_degree(mon) as i64,
        }
    }

    pub fn weight(&self, comp: usize) -> i64 {
        self.weights.get(comp).copied().unwrap_or(0)
    }

    pub fn term_degree(&self, comp: usize, mon: &Monomial) -> i64 {
        self.degree(mon) + self.weight(comp)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => degrevlex(a.exps(), b.exps()),
            OrderKind::Block => {
                let (ax, au) = self.ctx.split(a);
                let (bx, bu) = self.ctx.split(b);
                degrevlex(au, bu).then_with(|| degrevlex(ax, bx))
            }
        }
    }

    /// Compares module terms `(component, monomial)`. Lower component index
    /// wins ties.
    pub fn cmp_terms(&self, ca: usize, a: &Monomial, cb: usize, b: &Monomial) -> Ordering {
        match self.extension {
            ModuleExtension::TermOverPosition => {
                self.term_degree(ca, a).cmp(&self.term_degree(cb, b)).then_with(|| self.cmp_monomials(a, b)).then_with(|| cb.cmp(&ca))
            }
            ModuleExtension::PositionOverTerm => cb.cmp(&ca).then_with(|| self.cmp_monomials(a, b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mon(v: Vec<u32>) -> Monomial {
        Monomial::from_exps(&v)
    }

    fn orders() -> Vec<MonomialOrder> {
        let ctx = Context::new(2, 2);
        vec![MonomialOrder::block(ctx, vec![]), MonomialOrder::degrevlex(ctx, vec![])]
    }

    #[test]
    fn block_prefers_fiber_degree() {
        let o = &orders()[0];
        // u1 > x1^5
        assert_eq!(o.cmp_monomials(&mon(vec![0, 0, 1, 0]), &mon(vec![5, 0, 0, 0])), Ordering::Greater);
        let d = &orders()[1];
        assert_eq!(d.cmp_monomials(&mon(vec![0, 0, 1, 0]), &mon(vec![5, 0, 0, 0])), Ordering::Less);
    }

    proptest! {
        #[test]
        fn total_multiplicative_one_minimal(a in prop::collection::vec(0u32..4, 4),
                                            b in prop::collection::vec(0u32..4, 4),
                                            w in prop::collection::vec(0u32..4, 4)) {
            for o in orders() {
                let (a, b, w) = (mon(a.clone()), mon(b.clone()), mon(w.clone()));
                let c = o.cmp_monomials(&a, &b);
                prop_assert_eq!(c == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp_monomials(&b, &a), c.reverse());
                prop_assert_eq!(o.cmp_monomials(&a.mul(&w), &b.mul(&w)), c);
                let one = Monomial::one(4);
                prop_assert_ne!(o.cmp_monomials(&a, &one), Ordering::Less);
            }
        }

        #[test]
        fn module_order_multiplicative(a in prop::collection::vec(0u32..4, 4),
                                       b in prop::collection::vec(0u32..4, 4),
                                       w in prop::collection::vec(0u32..4, 4),
                                       ca in 0usize..3, cb in 0usize..3) {
            let ctx = Context::new(2, 2);
            for o in [MonomialOrder::block(ctx, vec![0, 2, -1]),
                      MonomialOrder::degrevlex(ctx, vec![1, 0, 3]).with_extension(ModuleExtension::PositionOverTerm)] {
                let (a, b, w) = (mon(a.clone()), mon(b.clone()), mon(w.clone()));
                let c = o.cmp_terms(ca, &a, cb, &b);
                prop_assert_eq!(c == Ordering::Equal, ca == cb && a == b);
                prop_assert_eq!(o.cmp_terms(ca, &a.mul(&w), cb, &b.mul(&w)), c);
            }
        }
    }
}
