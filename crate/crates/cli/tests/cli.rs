use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nemsqueeze_cli::{DeviceConfigFile, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nemsqueeze"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("device.json");
    std::fs::write(&path, text).unwrap();
    path
}

fn ref_g_text() -> String {
    std::fs::read_to_string(config("ref_g.json")).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn compute_report_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    assert!(run(&[
        "compute",
        "--config",
        p(&config("ref_g.json")),
        "--out",
        p(&first)
    ])
    .status
    .success());

    let text = std::fs::read_to_string(&first).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    let inputs = write_config(dir.path(), &report.inputs.to_json());
    let second = run(&["compute", "--config", p(&inputs)]);
    assert!(second.status.success());
    assert_eq!(String::from_utf8(second.stdout).unwrap(), text);
}

#[test]
fn shipped_configs_are_the_reference_devices() {
    let g = DeviceConfigFile::from_json(&ref_g_text()).unwrap();
    assert_eq!(
        g.to_device().unwrap(),
        nemsqueeze_core::Device::reference_graphene()
    );
    let s = std::fs::read_to_string(config("ref_s.json")).unwrap();
    let s = DeviceConfigFile::from_json(&s).unwrap();
    assert_eq!(
        s.to_device().unwrap(),
        nemsqueeze_core::Device::reference_silicon()
    );
}

#[test]
fn invalid_configs_exit_one_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (ref_g_text().replace("length_m", "lenght_m"), "lenght_m"),
        (
            ref_g_text().replace("\"voltage_v\": 0.5", "\"voltage_v\": -1"),
            "pump.voltage_v",
        ),
        (
            ref_g_text().replace("\"quality_factor\": 14000", "\"quality_factor\": 0.5"),
            "environment.quality_factor",
        ),
        (
            ref_g_text().replace("doubly_clamped", "glued"),
            "geometry.clamping",
        ),
        ("{ not json".to_string(), "malformed JSON"),
    ];
    for (text, needle) in cases {
        let path = write_config(dir.path(), &text);
        let out = run(&["compute", "--config", p(&path)]);
        assert_eq!(out.status.code(), Some(1), "{needle}");
        let stderr = String::from_utf8(out.stderr).unwrap();
        assert!(stderr.contains(needle), "{needle}: {stderr}");
    }
    let out = run(&["compute", "--config", "/nonexistent/device.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn computation_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cantilever = write_config(
        dir.path(),
        &ref_g_text().replace("doubly_clamped", "cantilever"),
    );
    let out = run(&[
        "sweep",
        "--config",
        p(&cantilever),
        "--vary",
        "temperature=1:5:linear:3",
        "--metric",
        "x_b",
        "--out",
        p(&dir.path().join("x.csv")),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // thousands of t_c overflow the closed form
    let out = run(&[
        "evolve",
        "--config",
        p(&config("ref_g.json")),
        "--t-max-tc",
        "5000",
        "--samples",
        "3",
        "--out",
        p(&dir.path().join("e.csv")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("time horizon too long"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec![
            "sweep",
            "--config",
            "x.json",
            "--vary",
            "voltage=1:0:log:3",
            "--metric",
            "db",
            "--out",
            "x.csv",
        ],
        vec!["figure", "fig9", "--out", "."],
        vec!["bogus"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn evolve_and_phase_tables() {
    let dir = tempfile::tempdir().unwrap();
    let evolve = dir.path().join("evolve.csv");
    let out = run(&[
        "evolve",
        "--config",
        p(&config("ref_g.json")),
        "--t-max-tc",
        "5",
        "--samples",
        "11",
        "--out",
        p(&evolve),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&evolve).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# nemsqueeze v1");
    assert_eq!(lines[1], "# metric=var_x1/var_x2/dx1_ratio/dx2_ratio");
    assert_eq!(lines[4], "# time_unit=t_c");
    assert_eq!(lines[5], "time_tc,var_x1,var_x2,dx1_ratio,dx2_ratio");
    assert_eq!(lines.len(), 6 + 11);

    let silicon = dir.path().join("si.csv");
    run(&[
        "evolve",
        "--config",
        p(&config("ref_s.json")),
        "--t-max-tc",
        "2",
        "--samples",
        "5",
        "--out",
        p(&silicon),
    ]);
    assert!(std::fs::read_to_string(&silicon)
        .unwrap()
        .contains("# time_unit=tau\n"));

    let phase = dir.path().join("phase.csv");
    let out = run(&[
        "phase",
        "--config",
        p(&config("ref_g.json")),
        "--time-tc",
        "2",
        "--samples",
        "9",
        "--out",
        p(&phase),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&phase).unwrap();
    assert!(text.contains("# time_unit=t_c\nphase_rad,dx1_ratio,dx2_ratio\n"));
    assert_eq!(text.lines().count(), 6 + 9);
}

#[test]
fn sweep_table_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tc.csv");
    let out = run(&[
        "sweep",
        "--config",
        p(&config("ref_s.json")),
        "--vary",
        "voltage=0.1:100:log:4",
        "--metric",
        "t_char",
        "--out",
        p(&path),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "# metric=t_char");
    assert_eq!(lines[2], "# units=s");
    assert_eq!(lines[3], "# convention=none");
    assert_eq!(lines[4], "voltage_v,value");
    // silicon at 0.1 V never outruns its damping
    assert_eq!(lines[5], "1e-1,");
    assert!(!lines[8].ends_with(','));

    let path = dir.path().join("db.csv");
    run(&[
        "sweep",
        "--config",
        p(&config("ref_g.json")),
        "--vary",
        "length=1e-7:1e-5:log:3",
        "--vary",
        "voltage=0.01:10:log:3",
        "--metric",
        "db",
        "--out",
        p(&path),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# convention=paper_numbers\nlength_m,voltage_v,value\n"));
    assert_eq!(text.lines().count(), 5 + 9);
}

#[test]
fn figure_all_writes_every_panel() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figure", "all", "--out", p(dir.path())]);
    assert!(out.status.success());
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "fig2a.csv",
            "fig2b_bilayer.csv",
            "fig2b_monolayer.csv",
            "fig2b_trilayer.csv",
            "fig3a.csv",
            "fig3b.csv",
            "fig3c.csv",
            "fig3d.csv",
            "fig4a.csv",
            "fig4b_bilayer.csv",
            "fig4b_monolayer.csv",
            "fig4b_trilayer.csv",
            "fig5a.csv",
            "fig5b.csv",
        ]
    );
}

#[test]
fn reproduce_json_and_conventions() {
    let out = run(&["reproduce", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["exit_code"], 0);
    let rows = v["rows"].as_array().unwrap();
    let row = rows
        .iter()
        .find(|r| r["id"] == "r_graphene[paper_numbers]")
        .unwrap();
    assert_eq!(row["status"], "PASS");
    assert_eq!(row["convention_used"], "paper_numbers");
    assert!(rows
        .iter()
        .any(|r| r["id"] == "r_graphene[as_printed]" && r["status"] == "FLAGGED"));

    let single = run(&["reproduce", "--convention", "as_printed"]);
    assert_eq!(single.status.code(), Some(0));
    let text = String::from_utf8(single.stdout).unwrap();
    assert!(!text.contains("[paper_numbers]"));
    assert!(text.contains("summary: 10 PASS, 0 FAIL"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for round in ["a", "b"] {
        run(&["figure", "fig4b", "--out", p(&dir.path().join(round))]);
    }
    for panel in [
        "fig4b_monolayer.csv",
        "fig4b_bilayer.csv",
        "fig4b_trilayer.csv",
    ] {
        let a = std::fs::read(dir.path().join("a").join(panel)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(panel)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{panel}");
    }
    assert_eq!(run(&["reproduce"]).stdout, run(&["reproduce"]).stdout);
}
