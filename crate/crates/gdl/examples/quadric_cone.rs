//! Ext tables over `Q[x1..xn]` for slices of the module attached to the
//! quadric cone `x1^2 + … + xn^2`.
//!
//! Run with `cargo run --example quadric_cone -- 5 3`.

use gdl::harness::{check_quadric_cone, quadric_cone_slice, Format};

fn main() -> gdl::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(5) as usize;
    let p = args.get(1).copied().unwrap_or(3);

    let m = quadric_cone_slice(n, p)?;
    println!("slice p={p}: {} generators, {} relations", m.ambient_rank, m.relations.len());

    let report = check_quadric_cone(n, p)?;
    print!("{}", report.render(Format::Text));
    Ok(())
}
