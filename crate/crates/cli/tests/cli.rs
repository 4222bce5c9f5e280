use std::process::Command;

use unigeom_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};

fn call(args: &[&str]) -> unigeom_cli::CommandResult {
    run(std::iter::once("unigeom").chain(args.iter().copied()))
}

#[test]
fn classify_minkowski_is_byte_exact() {
    let r = call(&["classify", "--quadric", "+,-,-,-", "--linear"]);
    assert_eq!(r.status, EXIT_OK);
    assert_eq!(r.stdout, "0,-1,1,1\n");
    assert!(r.stderr.is_empty());
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_unigeom"))
        .args(["classify", "--quadric", "+,-,-,-", "--linear"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"0,-1,1,1\n");

    let out = Command::new(env!("CARGO_BIN_EXE_unigeom")).args(["classify", "--preset", "klein"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(out.stdout.is_empty());
}

#[test]
fn presets() {
    assert_eq!(call(&["classify", "--preset", "hyperbolic"]).stdout, "-1,1\n");
    assert_eq!(call(&["classify", "--preset", "minkowski"]).stdout, "0,-1,1,1\n");
    assert_eq!(call(&["classify", "--preset", "euclidean", "--dim", "3"]).stdout, "0,1,1\n");
    assert_eq!(call(&["classify", "--quadric", "+,+,-,-,-"]).stdout, "1,-1,1,1\n");
}

#[test]
fn trig_values() {
    assert_eq!(call(&["trig", "--k", "-1", "--fn", "c", "--x", "1"]).stdout, "1.54308063482\n");
    assert_eq!(call(&["trig", "--k", "0", "--fn", "s", "--x", "-2.5"]).stdout, "-2.50000000000\n");
    assert_eq!(call(&["trig", "--k", "1", "--fn", "s", "--x", "2", "--r", "2"]).stdout, "0.841470984808\n");
    assert_eq!(call(&["trig", "--k", "1", "--fn", "t", "--x", "1.5707963267948966"]).stdout, "inf\n");
}

#[test]
fn euclidean_sas() {
    let r = call(&["triangle", "sas", "--spec", "0,1", "--b", "3", "--c", "4", "--alpha", "1.5707963267948966"]);
    assert_eq!(r.status, EXIT_OK);
    assert!(r.stdout.starts_with("a = 5.00000000000\n"), "{}", r.stdout);
    assert!(r.stdout.contains("beta = 0.643501108793\n"));
}

#[test]
fn right_triangle() {
    let r = call(&["triangle", "right", "--spec", "0,1", "--a", "3", "--b", "4"]);
    assert_eq!(r.status, EXIT_OK);
    assert!(r.stdout.contains("c = 5.00000000000\n"), "{}", r.stdout);
    let r = call(&["triangle", "right", "--spec", "0,1", "--a", "3"]);
    assert_eq!(r.status, EXIT_PARSE);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["classify", "--quadric", "+,x"]).status, EXIT_PARSE);
    assert_eq!(call(&["classify", "--quadric", "0,+"]).status, EXIT_DOMAIN);
    assert_eq!(call(&["trig", "--k", "2", "--fn", "c", "--x", "1"]).status, EXIT_PARSE);
    assert_eq!(call(&["bogus"]).status, EXIT_PARSE);
    assert_eq!(call(&["triangle", "sas", "--spec", "1,1", "--b", "3", "--c", "4", "--alpha", "1"]).status, EXIT_DOMAIN);
    assert_eq!(call(&["volume", "parallelepiped", "--spec", "1,1", "--matrix", "1,0;0,1"]).status, EXIT_PARSE);
    let help = call(&["--help"]);
    assert_eq!(help.status, EXIT_OK);
    assert!(help.stdout.contains("Exit status"));
}

#[test]
fn motion_decompose() {
    let c = 1f64.cos();
    let s = 1f64.sin();
    let m = format!("{c},{},0;{s},{c},0;0,0,1", -s);
    let r = call(&["motion", "decompose", "--spec", "1,1", "--matrix", &m]);
    assert_eq!(r.stdout, "reflection = 1,1,1\nsteps = R_0,1(1.00000000000) k=1\n");
}

#[test]
fn lineal_measure() {
    let r = call(&["lineal", "measure", "--spec", "1,1", "--x", "1,1;0,0;0,1", "--y", "1,0;0,1;0,0"]);
    assert_eq!(r.status, EXIT_OK);
    assert!(r.stdout.starts_with("phi = 1.57079632679 (k=1, measurable)\n"), "{}", r.stdout);
    // Two lines of the Euclidean plane meeting at the origin at angle 0.6; psi is the complement.
    let y = format!("1,0;0,{};0,{}", 0.6f64.cos(), 0.6f64.sin());
    let r = call(&["lineal", "measure", "--spec", "0,1", "--x", "1,0;0,1;0,0", "--y", &y]);
    assert_eq!(r.status, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.starts_with("phi = 0.600000000000 (k=1, measurable)\npsi = 0.970796326795 (k=1, measurable)\n"), "{}", r.stdout);
}

#[test]
fn volumes() {
    let r = call(&["volume", "parallelepiped", "--spec", "1,1", "--matrix", "1,1,1;0,2,0;0,0,3"]);
    assert_eq!(r.stdout, "volume = 6.00000000000\n");
    let args = ["volume", "cone", "--spec", "1,1", "--vertices", "1:0:0;0:1:0;0:0:1", "--samples", "20000", "--seed", "7"];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a.status, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.contains("samples = 20000\n"));
}

#[test]
fn json_output() {
    let r = call(&["--format", "json", "triangle", "sas", "--spec", "0,1", "--b", "3", "--c", "4", "--alpha", "1.5707963267948966"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["a"]["value"], 5.0);
    assert_eq!(v["a"]["class"], "measurable");
    let r = call(&["classify", "--preset", "minkowski", "--format", "json"]);
    assert_eq!(r.stdout, "{\"spec\":[0,-1,1,1]}\n");
    let r = call(&["trig", "--k", "1", "--fn", "t", "--x", "1.5707963267948966", "--format", "json"]);
    assert_eq!(r.stdout, "{\"t\":\"inf\"}\n");
}
