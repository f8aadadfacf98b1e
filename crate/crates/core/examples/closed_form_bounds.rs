// Closed-form constants: frame bounds, near-isometry ratio, the lacunary
// double sum, the `λ^α t^λ` envelope and point evaluation.

use muntz::bounds::{
    envelope_check, jlambda_upper, lemma31_bound, point_eval_norm, r_epsilon, DyadicGrid,
};
use muntz::sequences::generate_geometric;

pub fn run_example() -> muntz::Result<()> {
    for (p, r) in [(1.5, 3.0), (2.0, 4.0), (4.0, 16.0)] {
        let b = jlambda_upper(p, r)?;
        println!(
            "‖J‖_{p} ≤ {:.6} for r = {r} ({:?})",
            b.upper_bound, b.formula
        );
    }
    println!("r_eps(2, 0.5) = {}", r_epsilon(2.0, 0.5)?);

    let q: Vec<f64> = (0..30).map(|k| 4f64.powi(k)).collect();
    let (lhs, rhs) = lemma31_bound(2.0, 1.0, &q, 4.0)?;
    println!("double sum: {lhs:.6} ≤ {rhs:.6}");

    let seq = generate_geometric(1.0, 2.0, 60)?;
    for alpha in [0.5, 1.0, 2.0] {
        let e = envelope_check(&seq, alpha, &DyadicGrid::default(), 1e-15)?;
        println!(
            "alpha = {alpha}: bracket [{:.4}, {:.4}]",
            e.ratio_min, e.ratio_max
        );
    }
    println!(
        "point evaluation at 1/2: {:.6}",
        point_eval_norm(&seq, 2.0, 0.5, 20)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
