//! A graded module given in the text format, its degree slices as
//! presentations over the base ring, and grading shifts.

use gdl::graded::{hilbert_data, parse_module, slice, write_module};

const MODULE: &str = "\
# Q[x1][u1]-module with one generator in degree -2
vars 1 1
twists F0: -2
twists F1: 1
rel: x1^2*u1^3
";

fn main() -> gdl::Result<()> {
    let g = parse_module(MODULE)?;
    print!("{}", write_module(&g));

    for d in -3..=2 {
        let s = slice(&g, d).pruned();
        println!("degree {d:>2}: {} generator(s), total dim {:?}", s.ambient_rank, s.total_dim());
    }

    let h = hilbert_data(&g, -3..=2, 0..=4);
    println!("{}", serde_json::to_string(&h).unwrap());

    // G(1)_d = G_{d+1}
    let shifted = g.shift_grading(1);
    assert_eq!(slice(&shifted, -3).ambient_rank, slice(&g, -2).ambient_rank);

    match parse_module("vars 0 2\ntwists F0: 0\ntwists F1: 1\nrel: u1*u2\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
