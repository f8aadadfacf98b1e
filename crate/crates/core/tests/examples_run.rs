//! Every crate example runs to completion.

mod classify_sequences {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/classify_sequences.rs"
    ));
}

#[test]
fn classify_sequences_runs() {
    classify_sequences::run_example().expect("classify_sequences example should run");
}

mod measure_moments {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/measure_moments.rs"
    ));
}

#[test]
fn measure_moments_runs() {
    measure_moments::run_example().expect("measure_moments example should run");
}

mod dn_profile {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/dn_profile.rs"
    ));
}

#[test]
fn dn_profile_runs() {
    dn_profile::run_example().expect("dn_profile example should run");
}

mod closed_form_bounds {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/closed_form_bounds.rs"
    ));
}

#[test]
fn closed_form_bounds_runs() {
    closed_form_bounds::run_example().expect("closed_form_bounds example should run");
}

mod hilbert_spectrum {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/hilbert_spectrum.rs"
    ));
}

#[test]
fn hilbert_spectrum_runs() {
    hilbert_spectrum::run_example().expect("hilbert_spectrum example should run");
}

mod lp_norms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lp_norms.rs"));
}

#[test]
fn lp_norms_runs() {
    lp_norms::run_example().expect("lp_norms example should run");
}

mod counterexamples {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/counterexamples.rs"
    ));
}

#[test]
fn counterexamples_runs() {
    counterexamples::run_example().expect("counterexamples example should run");
}

mod verify_suites {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/verify_suites.rs"
    ));
}

#[test]
fn verify_suites_runs() {
    verify_suites::run_example().expect("verify_suites example should run");
}

mod cli_report {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cli_report.rs"
    ));
}

#[test]
fn cli_report_runs() {
    cli_report::run_example().expect("cli_report example should run");
}
