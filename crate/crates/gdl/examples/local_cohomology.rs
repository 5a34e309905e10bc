//! Local cohomology at the irrelevant ideal by the resolution, Koszul and
//! Čech routes, and the inverse-polynomial basis of the top one.

use gdl::graded::{parse_module, GradedFreeModule};
use gdl::local_cohomology::{local_cohomology_table, top_lc_of_free, LcInput, Route};
use gdl::Context;

fn main() -> gdl::Result<()> {
    let ctx = Context::new(0, 2);
    let top = top_lc_of_free(ctx, &GradedFreeModule::new(vec![0]), -3);
    println!("H^2_I(A)_-3 basis: {:?}", top.basis_labels);

    let g = parse_module("vars 0 2\ntwists F0: 0 1\ntwists F1: 2\nrel: u1*u2, u1\n")?;
    let input = LcInput::Module(g);
    let table = local_cohomology_table(&input, &[Route::Resolution, Route::KoszulLimit, Route::Cech], 0..=2, -4..=2, 0..=0, None)?;
    for e in table.entries.iter().filter(|e| e.value.size() != 0) {
        let k = e.stabilized_at.as_ref().map(|s| s.k);
        println!("{:>6} i={} p={:>2}: dim {} (k = {k:?})", e.route.name(), e.i, e.p, e.value.size());
    }
    println!("routes disagree at {:?}", table.disagreements());
    println!("torsion vanishes at the top of the window: {}", table.vanishes_above_window);
    Ok(())
}
