//! Parsing and arithmetic of polynomials in base variables `x1..xm` and
//! fiber variables `u1..un`.

use gdl::poly::{parse_polynomial, poly_arith, ArithOp};
use gdl::Context;

fn main() -> gdl::Result<()> {
    let ctx = Context::new(2, 2);
    let f = parse_polynomial(ctx, "x1^2*u1 - 3/2*x2*u2")?;
    let g = parse_polynomial(ctx, "u1 + u2")?;

    println!("f       = {f}");
    println!("g       = {g}");
    println!("f + g   = {}", poly_arith(&f, &g, ArithOp::Add)?);
    println!("f * g   = {}", poly_arith(&f, &g, ArithOp::Mul)?);
    println!("u-degree of f*g: {:?}", poly_arith(&f, &g, ArithOp::Mul)?.xi_degree());
    println!("sign twist of f: {}", f.sign_twist());

    // mixing u-degrees is allowed in arithmetic but not as a graded element
    let h = poly_arith(&f, &g, ArithOp::Add)?;
    println!("f + g homogeneous? {}", h.xi_degree().is_ok());
    Ok(())
}
