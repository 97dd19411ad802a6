use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_foliations"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("spawn foliations");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("foliations-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golden_outputs() {
    let cases: &[(&[&str], &str)] = &[
        (&["exceptional", "derive"], "exceptional_derive.txt"),
        (
            &["exceptional", "tangent-dim", "--source", "explicit"],
            "tangent_dim_explicit.txt",
        ),
        (&["exceptional", "paper-form"], "exceptional_paper_form.txt"),
        (&["exceptional", "double-tangency"], "double_tangency.txt"),
        (&["invariants", "0,1,0,-1,0"], "invariants_harmonic.txt"),
        (
            &["probe", "--target", "sing-omega4", "--prime", "7"],
            "probe_sing_omega4_7.txt",
        ),
        (
            &["probe", "--target", "sing-omega-bar", "--prime", "7"],
            "probe_sing_omega_bar_7.txt",
        ),
        (
            &["probe", "--target", "sing-d-omega-bar", "--prime", "7"],
            "probe_sing_d_omega_bar_7.txt",
        ),
        (
            &["probe", "--target", "base-locus", "--prime", "7"],
            "probe_base_locus_7.txt",
        ),
        (
            &["probe", "--target", "delta-sing", "--prime", "7"],
            "probe_delta_sing_7.txt",
        ),
    ];
    for (args, file) in cases {
        let (out, err, code) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert_eq!(out, golden(file), "{args:?}");
    }
}

#[test]
fn tangent_dim_sources_agree() {
    for source in ["explicit", "derived", "contraction"] {
        let (out, _, code) = run(&["exceptional", "tangent-dim", "--source", source]);
        assert_eq!(code, 0);
        assert!(out.contains("ambient_dim: 45"), "{source}");
        assert!(out.contains("raw_kernel_dim: 14"), "{source}");
        assert!(out.contains("projective_dim: 13"), "{source}");
    }
}

#[test]
fn derived_form_round_trips_through_check() {
    let path = scratch("derived.toml");
    let (_, err, code) = run(&["exceptional", "derive", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (out, _, code) = run(&["check", "--form", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("descends: pass") && out.contains("integrable: pass"));

    let (_, _, code) = run(&["tangent-dim"]);
    assert_eq!(code, 2);
    let (out, _, code) = run(&[
        "exceptional",
        "tangent-dim",
        "--form",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("projective_dim: 13"));
}

#[test]
fn built_components_round_trip() {
    let rational = scratch("rational.toml");
    let (_, err, code) = run(&[
        "build",
        "rational",
        "x0*x2 - x1^2",
        "x0",
        "--arity",
        "4",
        "--out",
        rational.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (out, _, code) = run(&["check", "--form", rational.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");

    let log = scratch("log.toml");
    let (_, err, code) = run(&[
        "build",
        "log",
        "x0;x1;x2+x3",
        "--weights",
        "1,1,-2",
        "--out",
        log.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, _, code) = run(&["check", "--form", log.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn non_integrable_form_fails_check() {
    let path = scratch("contact.toml");
    std::fs::write(
        &path,
        "vars = [\"x0\", \"x1\", \"x2\", \"x3\"]\ncoeffs = [\"-x1\", \"x0\", \"-x3\", \"x2\"]\n",
    )
    .unwrap();
    let (out, _, code) = run(&["check", "--form", path.to_str().unwrap()]);
    assert_eq!(code, 4, "{out}");
    assert!(out.contains("integrable: fail"));
    assert!(out.ends_with("status: fail\n"));
}

#[test]
fn errors_map_to_exit_codes() {
    let (_, err, code) = run(&["invariants", "t0^4 + )"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (_, _, code) = run(&["check", "--form", "/nonexistent/form.toml"]);
    assert_eq!(code, 3);
    let (_, _, code) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn json_report_is_valid() {
    let (out, _, code) = run(&["--json", "classify", "t0^2*t1*(t0 - t1)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fields"]["pattern"], "[2,1,1]");
    assert_eq!(v["fields"]["orbit"], "Delta");
}

#[test]
fn probe_at_five_reports_degenerate_coefficients() {
    let (out, _, code) = run(&["probe", "--target", "sing-d-omega-bar", "--prime", "5"]);
    assert_eq!(code, 4);
    assert!(out.contains("zeros: 6"));
    assert!(out.contains("vanishing_mod_p: 3"));
}
