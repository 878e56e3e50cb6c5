use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn resdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resdyn")).args(args).env_remove("RESDYN_THREADS").output().unwrap()
}

fn write_conf(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn survival_recipe_columns_and_values() {
    let out = resdyn(&["survival", "--recipe", "fig9"]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    assert_eq!(
        rows[0].join(","),
        "t,ReA,ImA,absA2,Re_B1,Im_B1,Re_B2,Im_B2,Re_R,Im_R,Re_AR,Im_AR,Re_short_R,Im_short_R"
    );
    assert_eq!(rows.len(), 302);
    let mid = &rows[151];
    assert_eq!(mid[0], "0.00000000000e0");
    let p: f64 = mid[3].parse().unwrap();
    assert!((p - 1.0).abs() < 1e-10);
    // Components add up to the total.
    for row in &rows[1..] {
        let v: Vec<f64> = row.iter().map(|x| x.parse().unwrap()).collect();
        let re: f64 = (0..4).map(|k| v[4 + 2 * k]).sum();
        let im: f64 = (0..4).map(|k| v[5 + 2 * k]).sum();
        assert!((re - v[1]).abs() < 1e-8 && (im - v[2]).abs() < 1e-8);
    }
}

#[test]
fn ratio_writes_zeno_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("ratio.csv");
    let out = resdyn(&["ratio", "--recipe", "fig8a", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with("t,r,log10_r\n0.00000000000e0,1.00000000000e0,0.00000000000e0\n"));
    let zeno: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ratio.zeno.json")).unwrap()).unwrap();
    assert!((zeno["t0"].as_f64().unwrap() - 1.0014).abs() < 1e-3);
    assert_eq!(zeno["assumption_holds"], true);
}

#[test]
fn spectrum_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_conf(dir.path(), "s.conf", "schema_version = 1\n");
    let out = resdyn(&["spectrum", "--config", &conf]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let states = v["records"][0]["states"].as_array().unwrap();
    let classes: Vec<&str> = states.iter().map(|s| s["class"].as_str().unwrap()).collect();
    assert_eq!(classes.iter().filter(|c| **c == "bound").count(), 2);
    let r = states.iter().find(|s| s["class"] == "resonant").unwrap();
    assert!((r["re_energy"].as_f64().unwrap() - 0.199675).abs() < 1e-5);
    assert!((r["abs_lambda"].as_f64().unwrap() - 1.04118).abs() < 1e-5);
}

#[test]
fn sweep_adds_leading_column() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_conf(
        dir.path(),
        "sweep.conf",
        "schema_version = 1\n[time]\nt_min = 0\nt_max = 1\nn_points = 3\n[sweep]\nparameter = g\nlo = 0.3\nhi = 0.5\nn = 3\n",
    );
    let out = resdyn(&["survival", "--config", &conf]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&out);
    assert_eq!(rows[0][..2], ["g".to_string(), "t".to_string()]);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[1][0], "3.00000000000e-1");
    assert_eq!(rows[9][0], "5.00000000000e-1");
}

#[test]
fn friedrichs_report_and_components() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_conf(dir.path(), "f.conf", "schema_version = 1\nmodel = friedrichs\n");
    let out = resdyn(&["friedrichs", "--config", &conf]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["e_res_re"].as_f64().unwrap() - 0.9789).abs() < 1e-3);
    assert!((v["survival_at_zero_re"].as_f64().unwrap() - 1.0).abs() < 1e-8);

    let with_zero = write_conf(
        dir.path(),
        "fz.conf",
        "schema_version = 1\nmodel = friedrichs\n[time]\nt_min = -1\nt_max = 1\nn_points = 3\n[survival]\ncomponents = true\n",
    );
    let out = resdyn(&["survival", "--config", &with_zero]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "config");
}

#[test]
fn ep_locate_report() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_conf(dir.path(), "ep.conf", "schema_version = 1\n[tdot]\neps1 = 0\n[ep]\nlo = -3\nhi = 0\n");
    let out = resdyn(&["ep-locate", "--config", &conf]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["eps1_star"].as_f64().unwrap() + 2.347528).abs() < 1e-6);

    let missing = write_conf(dir.path(), "noep.conf", "schema_version = 1\n");
    assert_eq!(resdyn(&["ep-locate", "--config", &missing]).status.code(), Some(2));
}

#[test]
fn oracle_check_passes_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_conf(dir.path(), "ok.conf", "schema_version = 1\n[time]\nt_min = 0\nt_max = 10\nn_points = 11\n");
    let out = resdyn(&["oracle-check", "--config", &good]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("t,Re_contour,Im_contour,Re_oracle,Im_oracle,abs_diff\n"));

    let short = write_conf(
        dir.path(),
        "short.conf",
        "schema_version = 1\n[time]\nt_min = 0\nt_max = 200\nn_points = 3\n[oracle]\nsites = 60\n",
    );
    let out = resdyn(&["oracle-check", "--config", &short]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["exit_code"], 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(csv_rows(&out).len(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let none = write_conf(dir.path(), "nr.conf", "schema_version = 1\n[tdot]\neps1 = -3.5\n");
    let out = resdyn(&["ratio", "--config", &none]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "regime");
    assert!(err["message"].as_str().unwrap().contains("-2.34752806"));

    assert_eq!(resdyn(&["zeno", "--recipe", "fig9"]).status.code(), Some(2));
    assert_eq!(resdyn(&["survival", "--recipe", "fig99"]).status.code(), Some(2));
    assert_eq!(resdyn(&["survival"]).status.code(), Some(2));
    assert_eq!(resdyn(&["survival", "--recipe", "fig9", "--threads", "0"]).status.code(), Some(2));
    let wrong_model =
        write_conf(dir.path(), "wm.conf", "schema_version = 1\n[survival]\nrepresentation = friedrichs-erfc\n");
    assert_eq!(resdyn(&["survival", "--config", &wrong_model]).status.code(), Some(2));
    let unknown = write_conf(dir.path(), "ur.conf", "schema_version = 1\n[survival]\nrepresentation = magic\n");
    assert_eq!(resdyn(&["survival", "--config", &unknown]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_resdyn"))
        .args(["survival", "--recipe", "fig6c"])
        .env("RESDYN_THREADS", "3")
        .output()
        .unwrap();
    let b = resdyn(&["survival", "--recipe", "fig6c", "--threads", "1"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_resdyn"))
        .args(["survival", "--recipe", "fig6c"])
        .env("RESDYN_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn representations_agree_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for rep in ["direct-contour", "bessel-components", "lattice-oracle"] {
        let conf = write_conf(
            dir.path(),
            &format!("{rep}.conf"),
            &format!("schema_version = 1\n[time]\nt_min = -5\nt_max = 5\nn_points = 11\n[survival]\nrepresentation = {rep}\n"),
        );
        let out = resdyn(&["survival", "--config", &conf, "--format", "json"]);
        assert!(out.status.success(), "{rep}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["columns"][3], "absA2");
        let p: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r[3].as_f64().unwrap()).collect();
        outputs.push(p);
    }
    for other in &outputs[1..] {
        for (a, b) in outputs[0].iter().zip(other) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
