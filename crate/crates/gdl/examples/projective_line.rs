//! Cohomology of line bundles on the projective line from the Čech route.

use gdl::harness::{check_projective_line, Format};

fn main() -> gdl::Result<()> {
    print!("{}", check_projective_line(-6..=6, None)?.render(Format::Text));
    Ok(())
}
