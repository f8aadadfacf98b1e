// Lacunarity statistics and the quasi-lacunary split.

use muntz::sequences::{
    classify, decompose_quasi_lacunary, generate_geometric, generate_recursive_power,
};
use muntz::ExponentSequence;

pub fn run_example() -> muntz::Result<()> {
    let dyadic = generate_geometric(1.0, 2.0, 16)?;
    let c = classify(&dyadic)?;
    println!(
        "2^n: r_inf = {}, r_sup = {}, quasi-geometric = {}",
        c.r_inf, c.r_sup, c.is_quasi_geometric
    );

    let arithmetic = ExponentSequence::new(vec![1.0, 2.0, 3.0, 4.0])?;
    let c = classify(&arithmetic)?;
    println!("1,2,3,4: r_inf = {:.4}, flags = {:?}", c.r_inf, c.flags);

    let fast = generate_recursive_power(1.0, 2, 2.0, 8)?;
    let c = classify(&fast.sequence)?;
    println!("n^2 recursion: last ratios {:?}", c.super_lacunary_trend);

    // two interleaved geometric sequences
    let mixed = ExponentSequence::new(vec![1.0, 1.5, 4.0, 6.0, 16.0, 24.0, 64.0, 96.0])?;
    let parts = decompose_quasi_lacunary(&mixed, 2.0)?;
    for (i, p) in parts.iter().enumerate() {
        println!("part {i}: {:?}", p.as_slice());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
