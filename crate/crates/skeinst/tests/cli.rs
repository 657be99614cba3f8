use skeinst::cli::run;

fn go(args: &[&str]) -> skeinst::cli::Outcome {
    run(std::iter::once("skeinst").chain(args.iter().copied()))
}

#[test]
fn documented_examples() {
    assert_eq!(go(&["trace", "--n", "2", "t s1"]).stdout, "z*s1\n");
    assert_eq!(go(&["invariant", "--n", "2", "--specialize", "tl", "s1"]).stdout, "1\n");
    let o = go(&["basis-matrix", "--max", "1", "--normalize", "raw", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["basis"], "t^n");
    assert_eq!(v["rows"][0]["coeffs"]["1"], "1");
    assert_eq!(v["rows"][1]["coeffs"]["2"], "-u*z");
    assert_eq!(go(&["normal-form", "--n", "2", "s1 t s1^-1", "--format", "latex"]).stdout, "t\n");
}

#[test]
fn trace_formats() {
    assert_eq!(go(&["trace", "--n", "2", "s1 t s1 t"]).stdout, go(&["trace", "--n", "2", "t s1 t s1"]).stdout);
    let j = go(&["trace", "--n", "1", "t^2", "--format", "json"]).stdout;
    assert_eq!(j.trim(), r#"{"value":"s2"}"#);
    assert_eq!(go(&["trace", "--n", "1", "t^-1", "--format", "latex"]).stdout, "s_{-1}\n");
    assert_eq!(go(&["trace", "--n", "1", "t^3", "--specialize", "tl", "--smax", "2"]).code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(go(&["trace", "--frobnicate", "t"]).code, 2);
    assert_eq!(go(&["nonsense"]).code, 2);
    assert_eq!(go(&["trace", "--n", "2", "s3"]).code, 2);
    assert_eq!(go(&["trace", "--n", "2", "t s"]).code, 2);
    assert_eq!(go(&["--help"]).code, 0);
    let o = go(&["normal-form", "--n", "3", "t s1 t s1^-1 s2 s1 t s1^-1 s2^-1", "--budget", "2"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("budget"));
    assert_eq!(go(&["normal-form", "--n", "2", "t s1 t^-1 s1"]).code, 1);
}

#[test]
fn parse_and_compare() {
    assert_eq!(go(&["parse", "--n", "3", "t t s2 s2^-1 s1"]).stdout, "t^2 s1\n");
    let j: serde_json::Value = serde_json::from_str(&go(&["parse", "--n", "2", "t^2 s1^-1", "--format", "json"]).stdout).unwrap();
    assert_eq!(j["letters"][1][0], "s1");
    assert_eq!(j["letters"][1][1], -1);
    assert_eq!(go(&["compare", "t^2", "t t1"]).stdout, "t^2 < t t1\n");
    assert_eq!(go(&["compare", "t t1'", "t t1"]).code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["basis-matrix", "--max", "3", "--normalize", "bracket", "--format", "json"];
    let a = go(&args);
    assert_eq!(a.code, 0);
    for _ in 0..3 {
        assert_eq!(go(&args), a);
    }
}
