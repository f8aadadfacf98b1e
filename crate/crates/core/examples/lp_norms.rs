// Müntz polynomials and `L^p(μ)` norms, plus the lacunarity probes.

use muntz::lpnorm::{
    amgm_probe, eval_poly, gm_ratio_sample, l2_norm_gram, lp_norm, pairing_integral,
    MuntzPolynomial,
};
use muntz::sequences::generate_geometric;
use muntz::{ExponentSequence, Measure};

pub fn run_example() -> muntz::Result<()> {
    let seq = ExponentSequence::new(vec![1.0, 2.0])?;
    let f = MuntzPolynomial::new(&seq, vec![1.0, -1.0])?;
    println!(
        "f(1/2) = {}, ‖f‖_2 = {:.6}",
        eval_poly(&f, 0.5)?,
        lp_norm(&f, &Measure::lebesgue(), 2.0)?
    );

    let dyadic = generate_geometric(1.0, 2.0, 10)?;
    let g = MuntzPolynomial::new(
        &dyadic,
        vec![1.0, -0.5, 0.25, 0.0, 1.0, -1.0, 0.5, 0.0, 0.0, 2.0],
    )?;
    for p in [1.0, 1.5, 3.0] {
        println!("‖g‖_{p} = {:.8}", lp_norm(&g, &Measure::lebesgue(), p)?);
    }
    println!(
        "‖g‖_2 quadrature vs Gram: {:.12} / {:.12}",
        lp_norm(&g, &Measure::lebesgue(), 2.0)?,
        l2_norm_gram(&g, &Measure::lebesgue())?
    );

    let sparse = generate_geometric(1000.0, 300.0, 8)?;
    let r = gm_ratio_sample(&sparse, 2.0, &Measure::lebesgue(), 200, 42)?;
    println!(
        "1000·300^n: ratio bracket [{:.4}, {:.4}]",
        r.min_ratio, r.max_ratio
    );

    let arithmetic = ExponentSequence::new((0..200).map(f64::from).collect())?;
    for n in [4, 16, 64, 199] {
        println!(
            "AM-GM ratio on 1..{n}: {:.3}",
            amgm_probe(&arithmetic, 2.0, 1, n)?.ratio
        );
    }

    let squares = ExponentSequence::new((0..8).map(|n| 2f64.powi(n * n)).collect())?;
    for n in 0..7 {
        let x = pairing_integral(&squares, 2.0, n)?;
        println!("pairing n = {n}: {:.5} ≥ {:.5}", x.value, x.lower_bound);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
