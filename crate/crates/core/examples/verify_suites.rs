// Running verification suites from code.

use muntz::measures::dyadic_atoms;
use muntz::sequences::generate_geometric;
use muntz::verify::{run_suite, SuiteId, SuiteInputs};
use muntz::Measure;

pub fn run_example() -> muntz::Result<()> {
    let seq = generate_geometric(1.0, 2.0, 40)?;
    let mu = dyadic_atoms(30, |k| 4f64.powi(-(k as i32)))?;
    let mut inputs = SuiteInputs::new(seq, mu);
    inputs.n = 16;
    for id in [SuiteId::Prop26, SuiteId::Carleson, SuiteId::Hs] {
        let rep = run_suite(id, &inputs)?;
        println!("{}: {:?}", id.id(), rep.status);
        for c in &rep.checks {
            println!("  {:<32} {:?}", c.name, c.status);
        }
    }
    let frame = SuiteInputs::new(generate_geometric(1.0, 2.0, 16)?, Measure::lebesgue());
    println!("{}", run_suite(SuiteId::Gm, &frame)?.to_json()?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
