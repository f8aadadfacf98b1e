// The two atomic counterexamples, tabulated.

use muntz::counterexamples::{build_example, check_example_claims, ExampleLabel, TrendOptions};

pub fn run_example() -> muntz::Result<()> {
    let a = build_example(ExampleLabel::A, 1.0, 20)?;
    let rep = check_example_claims(&a, &[1.0, 2.0], &TrendOptions::default())?;
    print!("{}", rep.to_csv()?);
    for c in &rep.checks {
        println!(
            "A {}: {} ({})",
            c.name,
            if c.passed { "ok" } else { "off" },
            c.detail
        );
    }

    let b = build_example(ExampleLabel::B, 2.0, 15)?;
    let rep = check_example_claims(&b, &[1.0], &TrendOptions::default())?;
    for c in &rep.checks {
        println!(
            "B {}: {} ({})",
            c.name,
            if c.passed { "ok" } else { "off" },
            c.detail
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
