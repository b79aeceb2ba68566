//! End-to-end tests of the `fcomp` binary: artifact layout, header
//! contracts, determinism, flag precedence and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fcomp_cli::ExperimentSpec;
use fcomp_core::Algorithm;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fcomp"))
}

fn base_spec(out: &Path) -> ExperimentSpec {
    let mut spec = ExperimentSpec::default();
    spec.radar.samples_per_chirp = 8;
    spec.radar.chirp_count = 8;
    spec.targets_per_trial = 2;
    spec.grid_sizes = vec![8];
    spec.trials = 2;
    spec.base_seed = 5;
    spec.output_dir = out.to_path_buf();
    spec
}

fn write_config(dir: &Path, spec: &ExperimentSpec) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, serde_json::to_string_pretty(spec).unwrap()).unwrap();
    path
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {:?}\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

/// Timing columns (indices 4..=7) zeroed, for comparing timed reruns.
fn strip_timing_columns(csv_text: &str) -> String {
    csv_text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            if i == 0 {
                return line.to_string();
            }
            let mut fields: Vec<&str> = line.split(',').collect();
            for f in &mut fields[4..8] {
                *f = "0";
            }
            fields.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn run_writes_the_documented_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let cfg = write_config(dir.path(), &base_spec(&out_dir));

    let output = run_ok(&["run", "--config", cfg.to_str().unwrap()]);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("wrote"), "stdout: {stdout}");

    let raw = fs::read_to_string(out_dir.join("raw.csv")).unwrap();
    assert!(raw.starts_with(
        "algo,n_star,trial,seed,time_total_ns,time_select_ns,time_refit_ns,time_correct_ns,misses,k\n"
    ));
    assert_eq!(raw.lines().count(), 1 + 2 * 4, "2 trials x 4 algorithms");

    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert!(
        summary.starts_with("algo,n_star,trials,miss_rate,miss_ci95,time_median_ns,time_mean_ns\n")
    );
    assert_eq!(summary.lines().count(), 1 + 4);

    assert!(!out_dir.join("miss_rate.svg").exists(), "svg needs --svg");
    let manifest: ExperimentSpec =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest, base_spec(&out_dir));
}

#[test]
fn timed_reruns_differ_only_in_timing_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let cfg = write_config(dir.path(), &base_spec(dir.path()));

    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_a.to_str().unwrap(),
    ]);
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_b.to_str().unwrap(),
    ]);

    let a = fs::read_to_string(out_a.join("raw.csv")).unwrap();
    let b = fs::read_to_string(out_b.join("raw.csv")).unwrap();
    assert_eq!(strip_timing_columns(&a), strip_timing_columns(&b));
}

#[test]
fn parallel_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let cfg = write_config(dir.path(), &base_spec(dir.path()));

    for out in [&out_a, &out_b] {
        run_ok(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--parallel",
        ]);
    }
    assert_eq!(
        fs::read(out_a.join("raw.csv")).unwrap(),
        fs::read(out_b.join("raw.csv")).unwrap()
    );
    assert_eq!(
        fs::read(out_a.join("summary.csv")).unwrap(),
        fs::read(out_b.join("summary.csv")).unwrap()
    );
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("flagged");
    let mut spec = base_spec(&dir.path().join("ignored"));
    spec.trials = 9;
    let cfg = write_config(dir.path(), &spec);

    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "3",
        "--algos",
        "fcomp,omp",
        "--grid-sizes",
        "8",
        "--seed",
        "42",
        "--out",
        out_dir.to_str().unwrap(),
    ]);

    let manifest: ExperimentSpec =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.trials, 3);
    assert_eq!(manifest.base_seed, 42);
    assert_eq!(manifest.algorithms, vec![Algorithm::Fcomp, Algorithm::Omp]);
    assert_eq!(manifest.output_dir, out_dir);

    let raw = fs::read_to_string(out_dir.join("raw.csv")).unwrap();
    assert_eq!(raw.lines().count(), 1 + 3 * 2);
    assert!(raw.contains("fcomp,8,"));
    assert!(!raw.contains("\nfomp,"));
}

#[test]
fn rerunning_from_the_manifest_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let mut spec = base_spec(&out_a);
    spec.parallel = true;
    let cfg = write_config(dir.path(), &spec);

    run_ok(&["run", "--config", cfg.to_str().unwrap()]);
    let manifest = out_a.join("manifest.json");
    run_ok(&[
        "run",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        out_b.to_str().unwrap(),
    ]);

    assert_eq!(
        fs::read(out_a.join("raw.csv")).unwrap(),
        fs::read(out_b.join("raw.csv")).unwrap()
    );
}

#[test]
fn svg_flag_emits_both_charts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("charts");
    let cfg = write_config(dir.path(), &base_spec(&out_dir));

    run_ok(&["run", "--config", cfg.to_str().unwrap(), "--svg"]);
    for name in ["miss_rate.svg", "solve_time.svg"] {
        let text = fs::read_to_string(out_dir.join(name)).unwrap();
        assert!(text.starts_with("<svg "), "{name} is not an svg");
    }
}

#[test]
fn summarize_reproduces_the_run_summary_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let cfg = write_config(dir.path(), &base_spec(&out_dir));
    run_ok(&["run", "--config", cfg.to_str().unwrap()]);

    let rebuilt = dir.path().join("rebuilt.csv");
    run_ok(&[
        "summarize",
        "--in",
        out_dir.join("raw.csv").to_str().unwrap(),
        "--out",
        rebuilt.to_str().unwrap(),
    ]);
    assert_eq!(
        fs::read(out_dir.join("summary.csv")).unwrap(),
        fs::read(&rebuilt).unwrap()
    );
}

#[test]
fn config_problems_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();

    let garbled = dir.path().join("garbled.json");
    fs::write(&garbled, "{ not json").unwrap();
    assert_eq!(
        exit_code(&["run", "--config", garbled.to_str().unwrap()]),
        2
    );

    let mut zero_trials = base_spec(&dir.path().join("out"));
    zero_trials.trials = 0;
    let cfg = write_config(dir.path(), &zero_trials);
    assert_eq!(exit_code(&["run", "--config", cfg.to_str().unwrap()]), 2);

    // Unknown algorithm names are rejected at flag-parse time.
    let ok_cfg = write_config(dir.path(), &base_spec(&dir.path().join("out2")));
    assert_eq!(
        exit_code(&[
            "run",
            "--config",
            ok_cfg.to_str().unwrap(),
            "--algos",
            "romp"
        ]),
        2
    );
}

#[test]
fn io_problems_exit_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        exit_code(&[
            "run",
            "--config",
            dir.path().join("absent.json").to_str().unwrap()
        ]),
        3
    );

    let cfg = write_config(dir.path(), &base_spec(Path::new("/proc/not/writable")));
    assert_eq!(exit_code(&["run", "--config", cfg.to_str().unwrap()]), 3);

    assert_eq!(
        exit_code(&[
            "summarize",
            "--in",
            dir.path().join("absent.csv").to_str().unwrap(),
            "--out",
            dir.path().join("s.csv").to_str().unwrap(),
        ]),
        3
    );
}
