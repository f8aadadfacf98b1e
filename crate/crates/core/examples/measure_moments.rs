// Moments, sublinearity and the Poisson integral of a few measures,
// including atoms far closer to 1 than `f64` can resolve.

use muntz::measures::{dyadic_atoms, sublinear_norm, Density, EpsGrid};
use muntz::{Atom, Measure};

pub fn run_example() -> muntz::Result<()> {
    let lebesgue = Measure::lebesgue();
    println!("Lebesgue: ∫ t^9 = {}", lebesgue.moment(9.0)?.to_f64());

    let jacobi = Measure::density(Density::jacobi(0.5, 2.0)?);
    println!("t^0.5 (1-t)^2: mass = {:.12}", jacobi.total_mass());
    println!("  ∫ t^1e8 = exp({:.6})", jacobi.moment(1e8)?.ln());

    let atoms = dyadic_atoms(30, |k| 4f64.powi(-(k as i32)))?;
    let s = sublinear_norm(&atoms, &EpsGrid::default())?;
    println!(
        "4^-k atoms: ‖μ‖_S = {:.6} at ε = {:e}",
        s.norm_s, s.attaining_epsilon
    );
    println!(
        "  ∫ dμ/(1-t) = {:?}",
        atoms.poisson_integral().finite_value()
    );

    // δ = e^-800 and λ = e^700: t^λ = exp(-e^-100)
    let far = Measure::atoms(vec![Atom::from_logs(-800.0, 0.0)?])?;
    let m = far.moment(700f64.exp())?;
    println!("atom at 1 - e^-800: ln ∫ t^(e^700) = {:e}", m.ln());

    let near_one = lebesgue.restrict(0.5, 1.0)?;
    println!(
        "Lebesgue on [1/2, 1): μ([1-ε,1))/ε at ε = 0.1: {}",
        near_one.mass_near_one(0.1) / 0.1
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
