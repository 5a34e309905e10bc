//! Free resolutions with Betti tables, minimal and not, and Ext over `A`.

use gdl::complexes::{ext_over_a_dim, free_resolution, koszul_resolution};
use gdl::graded::{parse_module, GradedPresentation};
use gdl::Context;

fn main() -> gdl::Result<()> {
    let ctx = Context::new(0, 3);
    let r = free_resolution(&GradedPresentation::a_mod_i(ctx), true);
    println!("A/I, n=3: twists per step {:?}", r.betti());
    r.verify(-2..=6)?;
    println!("Koszul complex ranks: {:?}", koszul_resolution(ctx).ranks());

    let g = parse_module("vars 0 2\ntwists F0: 0 1\ntwists F1: 1 2\nrel: u1, -1\nrel: u2^2, 0\n")?;
    let plain = free_resolution(&g, false);
    let min = free_resolution(&g, true);
    println!("non-minimal ranks {:?}, minimal ranks {:?}", plain.complex.ranks(), min.complex.ranks());

    // Ext^j_A(A/I, A[n]) is one copy of Q in degree -n
    for j in -1..=1 {
        let dims: Vec<usize> = (-4..=0).map(|p| ext_over_a_dim(&GradedPresentation::a_mod_i(ctx), j, p)).collect();
        println!("Ext^{j:>2}(A/I) over p = -4..0: {dims:?}");
    }
    Ok(())
}
