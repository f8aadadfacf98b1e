use std::path::Path;
use std::process::{Command, Output};

fn muntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muntz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_atoms(dir: &Path) -> String {
    let path = dir.join("m.txt");
    let mut body = String::from("# delta mass\n");
    for k in 1..=30 {
        body.push_str(&format!("{:e} {:e}\n", 0.5f64.powi(k), 0.25f64.powi(k)));
    }
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn verify_hs_from_atoms_file() {
    let dir = tempfile::tempdir().unwrap();
    let atoms = write_atoms(dir.path());
    let o = muntz(&[
        "verify",
        "hs",
        "--measure",
        "atoms-file",
        &atoms,
        "--seq",
        "geometric:1,2,16",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"hs_three_way"), "{names:?}");
    assert!(names.contains(&"fubini_identity"));
}

#[test]
fn reports_are_byte_identical_on_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let args = [
        "verify",
        "prop26",
        "--seq",
        "geometric:1,2,12",
        "--measure",
        "dyadic:20,4",
        "--out",
        &out,
    ];
    assert_eq!(muntz(&args).status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    let first: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    assert!(files
        .iter()
        .any(|f| f.extension().is_some_and(|e| e == "json")));
    assert_eq!(muntz(&args).status.code(), Some(0));
    for (f, a) in files.iter().zip(&first) {
        assert_eq!(&std::fs::read(f).unwrap(), a, "{}", f.display());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        muntz(&["classify", "--seq", "geometric:1,2,10"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        muntz(&["verify", "ex-b", "--count", "15"]).status.code(),
        Some(1)
    );
    assert_eq!(muntz(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(
        muntz(&["dnp", "--seq", "explicit:2,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn subcommands_produce_json() {
    let runs: [&[&str]; 6] = [
        &[
            "moments",
            "--seq",
            "geometric:1,2,8",
            "--measure",
            "jacobi:0.5,1",
        ],
        &["bounds", "jlambda", "--p", "2", "--r", "4"],
        &[
            "bounds", "lemma31", "--p", "3", "--alpha", "0.5", "--r", "4",
        ],
        &[
            "norm",
            "--seq",
            "explicit:1,2",
            "--coeffs",
            "1,-1",
            "--p",
            "2",
        ],
        &["probe", "pairing", "--seq", "geometric:1,2,10"],
        &[
            "spectrum",
            "--seq",
            "geometric:1,2,10",
            "--operator",
            "frame",
        ],
    ];
    for args in runs {
        let o = muntz(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        serde_json::from_str::<serde_json::Value>(&stdout(&o))
            .unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    // a failing trend still writes the table
    let o = muntz(&["example", "--label", "a", "--p", "1", "--count", "12"]);
    assert_eq!(o.status.code(), Some(1));
    serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&muntz(&[
        "bounds", "jlambda", "--p", "2", "--r", "4",
    ])))
    .unwrap();
    let b = v["value"].as_f64().unwrap();
    assert!((b - 5f64.sqrt()).abs() < 1e-12);
}
