// Driving the command-line front end in-process and writing a report
// directory.

pub fn run_example() -> muntz::Result<()> {
    let dir = std::env::temp_dir().join(format!("muntz-report-{}", std::process::id()));
    let args = [
        "muntz",
        "report",
        "--seq",
        "geometric:1,2,40",
        "--N",
        "16",
        "--measure",
        "dyadic:30,4",
        "--out",
    ];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = muntz::cli::run_with(
        args.iter()
            .map(|s| s.to_string())
            .chain([dir.display().to_string()]),
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
    for entry in std::fs::read_dir(&dir)? {
        println!("wrote {}", entry?.path().display());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
