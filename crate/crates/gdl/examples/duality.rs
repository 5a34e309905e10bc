//! Slice-by-slice graded duality: local cohomology of the dual complex
//! against Ext over the base ring of the opposite slice.

use gdl::graded::GradedPresentation;
use gdl::harness::{duality_check, ext_vanishing_report, filtered_duality_check, involution_check, random_suite, DualSide, Format};
use gdl::Context;

fn main() -> gdl::Result<()> {
    let ctx = Context::new(0, 2);
    let g = GradedPresentation::a_mod_i(ctx);
    print!("{}", duality_check(&g, -4..=1, 0..=0).render(Format::Text));
    print!("{}", filtered_duality_check(&g, &DualSide::SelfDual { shift: 2 }, -1..=4, 0..=0).render(Format::Text));
    print!("{}", ext_vanishing_report(&GradedPresentation::free(ctx, vec![0]), -5..=4)?.render(Format::Text));
    print!("{}", involution_check(&GradedPresentation::koszul_quotient(ctx, &[0]), -3..=3, 0..=0)?.render(Format::Text));

    for (i, g) in random_suite(11, 3).iter().enumerate() {
        let r = duality_check(g, -8..=4, 0..=0);
        println!("random module {i}: {} cells, {}", r.entries.len(), r.verdict.as_str());
    }
    Ok(())
}
