// Exact `p = 2` spectra: frame bounds of `J_Λ`, the embedding, the
// approximation-number chain of `T_μ`, essential-norm cuts and HS data.

use muntz::hilbert::{
    embedding_spectrum, essential_norm_estimate, frame_spectrum, hs_criteria, t_mu_spectrum,
};
use muntz::measures::dyadic_atoms;
use muntz::sequences::generate_geometric;
use muntz::Measure;

pub fn run_example() -> muntz::Result<()> {
    let seq = generate_geometric(1.0, 2.0, 16)?;
    let j = frame_spectrum(&seq, 16)?;
    println!("J_Λ: sigma in [{:.4}, {:.4}]", j.sigma_min(), j.sigma_max());

    let id = embedding_spectrum(&seq, &Measure::lebesgue(), 16)?;
    println!(
        "Lebesgue embedding: sigma_max - 1 = {:e}",
        id.sigma_max() - 1.0
    );

    let mu = dyadic_atoms(12, |k| 0.5f64.powi(k as i32))?;
    let t = t_mu_spectrum(&seq.prefix(12)?, &mu, 12, 1e-14)?;
    println!(
        "T_μ chain holds: {} (worst gap {:e})",
        t.chain.holds, t.chain.worst_gap
    );

    let decaying = dyadic_atoms(30, |k| 0.5f64.powi(k as i32) / (k * k) as f64)?;
    let cuts: Vec<f64> = (1..=10).map(|j| 1.0 - 0.5f64.powi(j)).collect();
    let est = essential_norm_estimate(&seq, &decaying, 16, &cuts)?;
    println!("essential-norm cuts decay by {:.2}x", est.decay_factor);

    let long = generate_geometric(1.0, 2.0, 40)?;
    let hs = hs_criteria(
        &long,
        &dyadic_atoms(30, |k| 4f64.powi(-(k as i32)))?,
        16,
        &[1.0, 2.0, 4.0],
        1e-14,
    )?;
    println!(
        "HS_16 = {:.6}, Poisson = {:?}, integral (q, value) = {:?}",
        hs.hs_norm_truncated, hs.poisson_value, hs.integral_values
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
