// The `D_n(p)` profile of an atomic measure and the bounds it gives.

use muntz::dnp::{compute_dn, operator_bounds, BoundOptions, WeightScheme};
use muntz::measures::dyadic_atoms;
use muntz::sequences::generate_geometric;

pub fn run_example() -> muntz::Result<()> {
    let seq = generate_geometric(1.0, 2.0, 24)?;
    let mu = dyadic_atoms(20, |k| 2f64.powi(-(k as i32)) / k as f64)?;
    for p in [1.0, 2.0, 3.0] {
        let profile = compute_dn(&seq, &mu, WeightScheme::inverse_lambda(p)?, 16, 1e-14)?;
        let b = operator_bounds(&profile, &mu, &BoundOptions::default())?;
        println!(
            "p = {p}: route {:?}, sup D_n = {:.6}, limsup estimate = {:.6}, safe = {}",
            profile.route,
            b.sup_dn,
            b.limsup_estimate,
            profile.all_safe()
        );
        if p == 2.0 {
            println!("  Schatten bounds {:?}", b.schatten_bounds);
            print!("{}", profile.to_csv()?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
