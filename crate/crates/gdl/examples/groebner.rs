//! Gröbner bases, normal forms, membership certificates and syzygies.

use gdl::grobner::{member_with_coefficients, syzygy_module, FreeElement, GroebnerBasis};
use gdl::poly::parse_polynomial;
use gdl::{Context, MonomialOrder};

fn main() -> gdl::Result<()> {
    let ctx = Context::new(0, 3);
    let order = MonomialOrder::degrevlex(ctx, vec![0]);
    let ideal: Vec<FreeElement> = ["u1^2 - u2*u3", "u1*u2 - u3^2", "u2^2 - u1*u3"]
        .iter()
        .map(|s| Ok(FreeElement::from_components(ctx, [(0, parse_polynomial(ctx, s)?)])))
        .collect::<gdl::Result<_>>()?;

    let gb = GroebnerBasis::compute(ctx, &ideal, &order, true);
    println!("basis has {} elements, leading terms {:?}", gb.len(), gb.leading_terms());

    let f = FreeElement::from_components(ctx, [(0, parse_polynomial(ctx, "u1^3 - u3^3")?)]);
    println!("normal form of u1^3 - u3^3: {:?}", gb.normal_form(&f));
    if let Some(c) = member_with_coefficients(ctx, &f, &ideal, &order) {
        let shown: Vec<String> = c.iter().map(|p| p.to_string()).collect();
        println!("certificate: {shown:?}");
    }

    let syz = syzygy_module(ctx, &ideal, &order, true);
    println!("{} minimal syzygies among the generators", syz.len());
    Ok(())
}
