use tenscalc::catalog::list_entries;
use tenscalc::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = vec![];
    let mut err = vec![];
    let mut all = vec!["tenscalc"];
    all.extend(args);
    let code = run(all, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tenscalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_schwarzschild() {
    let (code, out, _) = call(&["classify", "--catalog", "exteriorschwarzschild"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("petrov_type: D\n"), "{out}");
    let (code, out, _) = call(&["--format", "structured", "classify", "--catalog", "exteriorschwarzschild"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["petrov_type"], "D");
}

#[test]
fn catalog_commands() {
    let (code, out, _) = call(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 26);
    let (code, out, _) = call(&["catalog", "show", "polar"]);
    assert_eq!(code, 0);
    assert!(out.contains("row = 1, 0\nrow = 0, r^2\n"), "{out}");
    let (code, _, err) = call(&["catalog", "show", "nowhere"]);
    assert_eq!(code, 1);
    assert!(err.contains("nowhere"));
}

#[test]
fn flat_polar_ricci() {
    let (_, text, _) = call(&["catalog", "show", "polar"]);
    let p = tmp("polar.tm", &text);
    let (code, out, _) = call(&["--format", "structured", "compute", "--metric", &p, "--tensors", "ricci"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ricci"], serde_json::json!({}));
    assert_eq!(v["summary"]["ricci"]["nonzero"], 0);
    assert_eq!(v["summary"]["ricci"]["zero"], 4);
}

#[test]
fn schwarzschild_keys_use_coordinate_names() {
    let (code, out, _) =
        call(&["--format", "structured", "compute", "--catalog", "exteriorschwarzschild", "--tensors", "christoffel2,ricci"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["christoffel2"].get("t,r,t").is_some(), "{out}");
    assert_eq!(v["summary"]["ricci"]["zero"], 16);
}

#[test]
fn show_round_trip_and_determinism() {
    for name in list_entries() {
        let (_, text, _) = call(&["catalog", "show", name]);
        let p = tmp(&format!("{name}.tm"), &text);
        let a = call(&["compute", "--catalog", name, "--tensors", "christoffel2,ricci"]);
        let b = call(&["compute", "--metric", &p, "--tensors", "christoffel2,ricci"]);
        assert_eq!(a.0, 0, "{name}: {}", a.2);
        assert_eq!(a, b, "{name}");
    }
    let a = call(&["compute", "--catalog", "kerr_newman", "--tensors", "christoffel1"]);
    assert_eq!(a, call(&["compute", "--catalog", "kerr_newman", "--tensors", "christoffel1"]));
}

#[test]
fn frame_mode_output() {
    let (code, out, _) = call(&["compute", "--catalog", "spherical", "--frame", "--tensors", "rotation_coeffs,ricci"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[rotation_coeffs]") && out.contains("[ricci]\n# 0 nonzero, 9 zero"), "{out}");
}

#[test]
fn input_errors_exit_one() {
    let p = tmp("bad.tm", "[chart]\ncoords = x, y\n[metric]\nrow = 1, 0\nrow = 0, (y\n");
    let (code, _, err) = call(&["compute", "--metric", &p]);
    assert_eq!(code, 1);
    assert!(err.contains("line 5"), "{err}");
    assert_eq!(call(&["compute", "--metric", "/nonexistent/file.tm"]).0, 1);
    assert_eq!(call(&["compute", "--catalog", "polar", "--tensors", "torsion"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn computation_errors_exit_two() {
    let p = tmp("singular.tm", "[chart]\ncoords = x, y\n[metric]\nrow = 1, 1\nrow = 1, 1\n");
    assert_eq!(call(&["compute", "--metric", &p]).0, 2);
    assert_eq!(call(&["classify", "--catalog", "cartesian4d"]).0, 2);
}

#[test]
fn algebra_commands() {
    let (code, out, _) = call(&["algebra", "--type", "clifford", "--dims", "0,0,2", "--expr", "v2.v1.v1"]);
    assert_eq!((code, out.as_str()), (0, "-v2\n"));
    let (code, out, _) = call(&["--format", "structured", "algebra", "--type", "clifford", "--dims", "0,0,2", "--table"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["table"][2][1], "-v1.v2");
    assert_eq!(call(&["algebra", "--type", "octonion", "--expr", "v1"]).0, 1);
    assert_eq!(call(&["algebra", "--type", "lie_envelop", "--dims", "3,1", "--expr", "v1"]).0, 1);
}

#[test]
fn indicial_commands() {
    let (code, out, _) = call(&["indicial", "contract", "--expr", "g([],[d,c])*g([b,c],[])*T([],[a,b])"]);
    assert_eq!((code, out.as_str()), (0, "T([],[d,a])\n"));
    let (code, out, _) = call(&["indicial", "canform", "--expr", "e([a,b],[]) + e([b,a],[])", "--decsym", "e:2:0:anti(all):"]);
    assert_eq!((code, out.as_str()), (0, "0\n"));
    let (code, out, _) = call(&["indicial", "covdiff", "--expr", "f", "--index", "k"]);
    assert_eq!((code, out.as_str()), (0, "f([],[],k)\n"));
    let (code, out, _) = call(&["indicial", "wedge", "--expr", "a([i],[])", "--other", "b([j],[])", "--geometric-wedge"]);
    assert_eq!((code, out.as_str()), (0, "a([i],[])*b([j],[]) - a([j],[])*b([i],[])\n"));
    assert_eq!(call(&["indicial", "covdiff", "--expr", "X([k],[])", "--index", "k"]).0, 2);
    assert_eq!(call(&["indicial", "canform", "--expr", "T([a,"]).0, 1);
}
