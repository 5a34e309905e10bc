//! The four-term sequence linking torsion, the module and sections on the
//! punctured cone, for the nilpotent orbit module with `w = 2`.

use gdl::harness::{check_nilpotent_orbit, nilpotent_orbit_module, Format};
use gdl::local_cohomology::les_check;

fn main() -> gdl::Result<()> {
    let g = nilpotent_orbit_module(2)?;
    let les = les_check(&g, -4..=2, 0..=6, None)?;
    for row in &les.rows {
        let sizes: Vec<usize> = row.nodes.iter().map(|n| n.1.size()).collect();
        println!("p={:>2} k={} nodes (sizes over x-degrees 0..6) {:?} exact={} {:?}", row.p, row.k, sizes, row.exact, row.regime);
    }
    print!("{}", check_nilpotent_orbit(2)?.render(Format::Text));
    Ok(())
}
