use std::path::PathBuf;
use std::process::{Command, Output};

use czmax::experiments::ExperimentConfig;

fn repo(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn czmax(out: &tempfile::TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_czmax")).args(args).env("CZMAX_OUT_DIR", out.path()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn kernel(name: &str) -> String {
    repo(&format!("kernels/{name}")).display().to_string()
}

/// Small enough for a debug build; same schema as the shipped defaults.
const QUICK: &str = r#"
[mean-value]
resolution = 128

[pointwise-even]
resolutions = [128, 256]
seeds = 2
epsilons = [0.25, 0.5, 1.0]
radii = [0.25, 0.5, 1.0]

[pointwise-odd]
resolutions = [128, 256]
seeds = 2
epsilons = [0.25, 0.5, 1.0]
radii = [0.25, 0.5, 1.0]

[hilbert-counterexample]
points = [10.0, 100.0]
g-ratio-points = [10.0, 100.0]

[l2-failure]
side-length = 64.0
resolution = 128

[condition-survey.pointwise]
resolutions = [64, 128]
seeds = 1
epsilons = [0.5, 1.0]
radii = [0.5, 1.0]

[llogl]
seeds = 2
"#;

fn quick_config(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("quick.toml");
    std::fs::write(&path, QUICK).unwrap();
    path.display().to_string()
}

#[test]
fn check_division_lambda_half() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["check-division", &kernel("lambda-family-0.5.kernel")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("holds=true"), "{text}");
    assert!(text.contains("quotient[4]=-x^2 + y^2"), "{text}");
}

#[test]
fn check_division_failing_quartic() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["check-division", &kernel("failing-quartic.kernel")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("holds=false"));
}

#[test]
fn check_invertible_lambda_one() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["check-invertible", &kernel("lambda-family-1.0.kernel")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("invertible=false"), "{text}");
    let min: f64 =
        text.lines().find_map(|l| l.strip_prefix("min_abs_symbol=")).expect("min_abs_symbol line").parse().unwrap();
    assert!(min < 1e-9, "{min}");
    let o = czmax(&out, &["check-invertible", &kernel("lambda-family-0.5.kernel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("invertible=true"));
}

#[test]
fn element_files_use_the_identity_part() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["check-invertible", &kernel("identity-plus-lambda-family-0.5.kernel")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min_abs_symbol=5e-1"));
    let o = czmax(&out, &["check-invertible", &kernel("hilbert.kernel")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn factorize_prints_a_kernel_file_for_u() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["factorize", &kernel("lambda-family-0.5.kernel")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let u = text.split("# U").nth(1).expect("U section");
    let body: String = u.lines().skip(1).take_while(|l| !l.starts_with("# check")).collect::<Vec<_>>().join("\n");
    let parsed = czmax::kernels::parse_kernel_file(&body).unwrap();
    assert_eq!(parsed.identity.map(|w| w.value()), Some(1.0));
    let o = czmax(&out, &["factorize", &kernel("failing-quartic.kernel")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mean_value_experiment_writes_a_report() {
    let out = tempfile::tempdir().unwrap();
    let config = repo("configs/default.toml").display().to_string();
    let o = czmax(&out, &["experiment", "mean-value", "--config", &config]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let names: Vec<String> =
        std::fs::read_dir(out.path()).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    assert!(names.iter().any(|n| n.starts_with("mean-value.") && n.ends_with(".report")), "{names:?}");
    assert!(names.iter().any(|n| n.starts_with("mean-value.") && n.ends_with(".csv")));
    assert!(!names.iter().any(|n| n.contains(".tmp")));
}

#[test]
fn print_defaults_round_trips() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["--print-defaults"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(ExperimentConfig::from_toml(&stdout(&o)).unwrap(), ExperimentConfig::default());
    let shipped = std::fs::read_to_string(repo("configs/default.toml")).unwrap();
    assert_eq!(shipped, stdout(&o));
}

#[test]
fn usage_and_config_errors_exit_2() {
    let out = tempfile::tempdir().unwrap();
    assert_eq!(czmax(&out, &["--bogus"]).status.code(), Some(2));
    assert_eq!(czmax(&out, &["suite", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(czmax(&out, &[]).status.code(), Some(2));
    assert_eq!(czmax(&out, &["experiment", "nope"]).status.code(), Some(2));
    assert_eq!(czmax(&out, &["check-division", "/no/such.kernel"]).status.code(), Some(2));
    assert_eq!(czmax(&out, &["witness", "nope", "--grid", "64,4"]).status.code(), Some(2));
    assert_eq!(czmax(&out, &["witness", "psi", "--grid", "64"]).status.code(), Some(2));
    let bad = out.path().join("bad.toml");
    std::fs::write(&bad, "[mean-value]\nbogus = 1\n").unwrap();
    let o = czmax(&out, &["experiment", "mean-value", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&bad, "[pointwise-even]\nresolutions = [32]\n").unwrap();
    let o = czmax(&out, &["experiment", "pointwise-even", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    // validation happens before any report is written
    assert!(std::fs::read_dir(out.path()).unwrap().all(|e| !e.unwrap().path().ends_with(".report")));
}

#[test]
fn witness_dump_has_header_and_payload() {
    let out = tempfile::tempdir().unwrap();
    let o = czmax(&out, &["witness", "beta0", "--grid", "64,4"]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(out.path().join("beta0.64.4.witness")).unwrap();
    let nl = bytes.iter().position(|b| *b == b'\n').unwrap();
    let header: serde_json::Value = serde_json::from_slice(&bytes[..nl]).unwrap();
    assert_eq!(header["resolution"], 64);
    assert_eq!(header["flags"]["zero_mean"], true);
    assert!(bytes.len() > nl + 64 * 64 * 8);
}

#[test]
fn seed_override_changes_the_config_hash() {
    let out = tempfile::tempdir().unwrap();
    let config = quick_config(&out);
    let a = stdout(&czmax(&out, &["experiment", "llogl", "--config", &config]));
    let b = stdout(&czmax(&out, &["experiment", "llogl", "--config", &config, "--seed", "7"]));
    assert!(a.starts_with("llogl: pass"), "{a}");
    assert_ne!(a, b);
}

#[test]
fn suite_is_idempotent() {
    let out = tempfile::tempdir().unwrap();
    let config = quick_config(&out);
    let first = czmax(&out, &["suite", "--config", &config]);
    let second = czmax(&out, &["suite", "--config", &config]);
    assert_eq!(first.status.code(), second.status.code());
    assert!(matches!(first.status.code(), Some(0) | Some(1)), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&first).lines().count(), czmax::experiments::EXPERIMENT_IDS.len());
}
