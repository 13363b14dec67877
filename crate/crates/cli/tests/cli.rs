use std::process::{Command, Output};

fn fano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = fano(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn lookup() {
    let v = json(&["lookup", "2.28", "--json"]);
    assert_eq!(v["generic_aut0"], "Ga^3 : Gm");
    assert_eq!(v["h12_note"], "h^{1,2}(X)=1");
    assert_eq!(v["infinity_class"], "always");
    let v = json(&["--json", "lookup", "2.24"]);
    assert_eq!(v["infinity_class"], "sometimes");
    assert_eq!(v["exceptional_members"].as_array().unwrap().len(), 2);
    assert_eq!(json(&["lookup", "3.2", "--json"])["generic_aut0"], "finite");
    let text = String::from_utf8(fano(&["lookup", "2.27"]).stdout).unwrap();
    assert!(text.contains("PGL(2)"));
}

#[test]
fn lists() {
    let ids = |args: &[&str]| -> Vec<String> {
        json(args)["ids"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
    };
    assert_eq!(ids(&["list", "--h12", "--json"]), ["2.28", "3.9", "3.14", "4.2"]);
    assert_eq!(ids(&["list", "--nonreductive", "--json"]).len(), 22);
    assert_eq!(ids(&["list", "--infinite", "sometimes", "--json"]).len(), 10);
    assert_eq!(ids(&["list", "--json"]).len(), 105);
}

#[test]
fn verify_single_cases() {
    let v = json(&["verify", "twisted_quartic_pencil", "--param", "λ=-1/3", "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"][0]["dim"], 3);
    let v = json(&["verify", "twisted_quartic_pencil", "--param", "lambda=1/2", "--json"]);
    assert_eq!(v["reports"][0]["jordan"], "semisimple");
    let v = json(&["verify", "bidegree_1n", "--param", "n=0", "--json"]);
    assert_eq!(v["reports"][0]["dim"], 5);
}

#[test]
fn verify_all() {
    let v = json(&["verify", "--all", "--jobs", "2", "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["failed"], 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(fano(&["verify", "no_such_case"]).status.code(), Some(2));
    assert_eq!(fano(&["verify", "twisted_quartic_pencil", "--param", "lambda=1"]).status.code(), Some(2));
    assert_eq!(fano(&["verify", "twisted_cubic", "--param", "mu=1"]).status.code(), Some(2));
    assert_eq!(fano(&["lookup", "2.99"]).status.code(), Some(2));
    assert_eq!(fano(&["decompose", "sym(2"]).status.code(), Some(2));
    assert_eq!(fano(&["bogus"]).status.code(), Some(2));
    assert_eq!(fano(&["discriminant", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn decompose_and_discriminant() {
    let v = json(&["decompose", "sym(2, sym(4, U1))", "--json"]);
    assert_eq!(v["highest_weights"], serde_json::json!([8, 4, 0]));
    assert_eq!(v["dim"], 15);
    let dir = std::env::temp_dir().join(format!("fano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("quadrics.txt");
    std::fs::write(&file, "# three forms\ny0^2 - y1*y2\ny1^2\ny2^2\n").unwrap();
    let v = json(&["discriminant", file.to_str().unwrap(), "--json"]);
    assert_eq!(v["cubic"], "-1/4*x0^3 + x0*x1*x2");
    assert_eq!(v["coordinate_line_factors"][0]["residual_rank"], 3);
    std::fs::write(&file, "y0^2\ny1^2\n").unwrap();
    assert_eq!(fano(&["discriminant", file.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_passes() {
    assert_eq!(json(&["check", "--json"])["pass"], true);
}
