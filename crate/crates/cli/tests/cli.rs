use std::path::Path;
use std::process::{Command, Output};

use homodim::dimension::DecompositionEstimate;
use homodim::persistence::diagrams_from_json;

fn homodim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homodim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn csv_shape(path: &Path) -> (usize, Vec<usize>) {
    let text = std::fs::read_to_string(path).unwrap();
    let widths: Vec<usize> = text.lines().map(|l| l.split(',').count()).collect();
    (widths.len(), widths)
}

#[test]
fn sample_shapes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = homodim(&["sample", "--kind", "circle", "--n", "100", "--seed", "1", "-o", "pts.csv"], tmp.path());
    assert_eq!(code(&out), 0);
    let (rows, widths) = csv_shape(&tmp.path().join("pts.csv"));
    assert_eq!(rows, 100);
    assert!(widths.iter().all(|&w| w == 2));

    let out = homodim(
        &["sample", "--kind", "product", "--q", "2", "--p", "1", "--n", "200", "-o", "t.csv"],
        tmp.path(),
    );
    assert_eq!(code(&out), 0);
    let (rows, widths) = csv_shape(&tmp.path().join("t.csv"));
    assert_eq!(rows, 200);
    assert!(widths.iter().all(|&w| w == 5));

    let out = homodim(&["sample", "--kind", "sphere", "--n", "30", "-o", "s.json"], tmp.path());
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 30);
}

#[test]
fn sample_rejects_zero_points() {
    let tmp = tempfile::tempdir().unwrap();
    let out = homodim(&["sample", "--kind", "circle", "--n", "0", "-o", "x.csv"], tmp.path());
    assert_eq!(code(&out), 2);
    assert!(!tmp.path().join("x.csv").exists());
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&homodim(&["frobnicate"], tmp.path())), 2);
    assert_eq!(code(&homodim(&["sample", "--kind", "klein", "--n", "3", "-o", "x"], tmp.path())), 2);
    assert_eq!(code(&homodim(&["persist", "--input", "missing.csv", "-o", "d"], tmp.path())), 2);
}

#[test]
fn persist_hollow_triangle() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("tri.csv"), "0,0\n1,0\n0.5,0.5\n").unwrap();
    let out = homodim(&["persist", "--input", "tri.csv", "--max-dim", "1", "-o", "d"], tmp.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(tmp.path().join("d/diagram.json")).unwrap();
    let records: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(records
        .as_array()
        .unwrap()
        .contains(&serde_json::json!({"k": 1, "birth": 1.0, "death": null})));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("d/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["simplex_counts"], serde_json::json!([3, 3]));
    assert_eq!(manifest["max_dim"], 1);
    assert!(tmp.path().join("d/run.log").exists());
}

#[test]
fn persist_circle_has_one_component() {
    let tmp = tempfile::tempdir().unwrap();
    homodim(&["sample", "--kind", "circle", "--n", "100", "--seed", "1", "-o", "c.csv"], tmp.path());
    let out = homodim(&["persist", "--input", "c.csv", "--max-dim", "1", "-o", "d"], tmp.path());
    assert_eq!(code(&out), 0);
    let dgs = diagrams_from_json(&std::fs::read_to_string(tmp.path().join("d/diagram.json")).unwrap()).unwrap();
    assert_eq!(dgs[0].essential_count(), 1);
}

#[test]
fn persist_empty_input() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("empty.csv"), "").unwrap();
    let out = homodim(&["persist", "--input", "empty.csv", "-o", "d"], tmp.path());
    assert_eq!(code(&out), 2);
    std::fs::write(tmp.path().join("bad.csv"), "0,0\n1,x\n").unwrap();
    let out = homodim(&["persist", "--input", "bad.csv", "-o", "d"], tmp.path());
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));
}

#[test]
fn persist_over_budget_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    homodim(&["sample", "--kind", "circle", "--n", "60", "-o", "c.csv"], tmp.path());
    // Default expansion dimension with the full diameter: far beyond 10^7.
    let out = homodim(&["persist", "--input", "c.csv", "-o", "d"], tmp.path());
    assert_eq!(code(&out), 3);
}

/// A diagram whose landscapes have `counts[k]` separate tents in dimension k.
fn synthetic_diagram(counts: &[usize]) -> String {
    let mut records = Vec::new();
    for (k, &c) in counts.iter().enumerate() {
        for j in 0..c {
            records.push(serde_json::json!({"k": k, "birth": 4.0 * j as f64 + 1.0, "death": 4.0 * j as f64 + 3.0}));
        }
    }
    serde_json::to_string(&records).unwrap()
}

#[test]
fn estimate_table_row() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("dg.json"), synthetic_diagram(&[12, 16, 40, 59, 50])).unwrap();
    let out = homodim(&["estimate", "--input", "dg.json", "--cap", "241", "-o", "e"], tmp.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout(&out);
    assert!(report.contains("dim U = 92 ±44"), "{report}");
    assert!(report.contains("[184, 272]"), "{report}");
    let de = DecompositionEstimate::from_json(&std::fs::read_to_string(tmp.path().join("e/estimate.json")).unwrap())
        .unwrap();
    assert_eq!(de.width_interval, [184, 272]);
    for k in 0..5 {
        assert!(tmp.path().join(format!("e/landscape_h{k}.json")).exists());
    }
}

#[test]
fn estimate_single_component() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("dg.json"), r#"[{"k": 0, "birth": 0.0, "death": null}]"#).unwrap();
    let out = homodim(&["estimate", "--input", "dg.json", "-o", "e"], tmp.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let de = DecompositionEstimate::from_json(&std::fs::read_to_string(tmp.path().join("e/estimate.json")).unwrap())
        .unwrap();
    assert_eq!((de.p, de.dim_u, de.width_interval), (1, 1, [2, 2]));
    assert!(stdout(&out).contains("no H1 representatives"));
}

#[test]
fn estimate_bad_diagram() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("dg.json"), r#"[{"k": 0, "birth": 1.0}]"#).unwrap();
    assert_eq!(code(&homodim(&["estimate", "--input", "dg.json"], tmp.path())), 2);
}

#[test]
fn plot_diagram_and_landscape() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("dg.json"), synthetic_diagram(&[1, 2])).unwrap();
    homodim(&["estimate", "--input", "dg.json", "--cap", "10", "-o", "e"], tmp.path());
    assert_eq!(code(&homodim(&["plot", "--input", "dg.json", "-o", "dg.svg"], tmp.path())), 0);
    let out = homodim(&["plot", "--input", "e/landscape_h0.json", "-o", "l.svg"], tmp.path());
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(tmp.path().join("l.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 1);
    assert!(svg.contains(r#"width="1000" height="600""#));

    std::fs::write(tmp.path().join("empty.json"), "[]").unwrap();
    assert_eq!(code(&homodim(&["plot", "--input", "empty.json", "-o", "e.svg"], tmp.path())), 0);
    let svg = std::fs::read_to_string(tmp.path().join("e.svg")).unwrap();
    assert!(!svg.contains("<circle"));

    std::fs::write(tmp.path().join("other.json"), r#"{"a": 1}"#).unwrap();
    assert_eq!(code(&homodim(&["plot", "--input", "other.json", "-o", "o.svg"], tmp.path())), 2);
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn pipeline_circle() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("circle.toml"),
        "seed = 1\nmax_dim = 2\nmin_height = 0.25\nout = \"run\"\n\n[manifold]\nkind = \"circle\"\nn = 100\nnoise = 0.02\n",
    )
    .unwrap();
    let out = homodim(&["pipeline", "--config", "circle.toml"], tmp.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&tmp.path().join("run"));
    assert_eq!(s["estimate"]["p"], 1);
    assert_eq!(s["estimate"]["q"][0]["q"], 1);
    for file in ["points.csv", "diagram.json", "manifest.json", "estimate.json", "report.txt", "diagram.svg"] {
        assert!(tmp.path().join("run").join(file).exists(), "{file}");
    }
}

#[test]
fn pipeline_torus_product() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("t.toml"),
        "seed = 4\nmax_dim = 2\nmax_edge = 1.5\nout = \"run\"\n\n[manifold]\nkind = \"product\"\nq = 1\np = 0\nn = 80\n",
    )
    .unwrap();
    let out = homodim(&["pipeline", "--config", "t.toml"], tmp.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(summary(&tmp.path().join("run"))["counts"][1].as_u64().unwrap() >= 1);
}

#[test]
fn pipeline_rejects_unknown_key() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("c.toml"), "input = \"p.csv\"\nmax_edges = 1.0\n").unwrap();
    let out = homodim(&["pipeline", "--config", "c.toml"], tmp.path());
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("max_edges"));
}

#[test]
fn pipeline_flags_override_config() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.toml"),
        "seed = 1\nmax_dim = 1\nsigma = 1.0\nout = \"a\"\n\n[manifold]\nkind = \"circle\"\nn = 20\n",
    )
    .unwrap();
    let out = homodim(
        &["pipeline", "--config", "c.toml", "--seed", "9", "--sigma", "3", "--n", "25", "-o", "b"],
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(tmp.path().join("b/config.toml")).unwrap();
    let cfg = homodim_cli::config::PipelineConfig::from_toml(&written).unwrap();
    assert_eq!((cfg.seed, cfg.sigma, cfg.manifold.unwrap().n), (9, 3.0, 25));
    assert!(!tmp.path().join("a").exists());

    // Flags alone, no config file.
    let out = homodim(
        &["pipeline", "--kind", "circle", "--n", "20", "--max-dim", "1", "-o", "c"],
        tmp.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn pipeline_failure_keeps_partial_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.toml"),
        "budget = 50\nmax_dim = 2\nout = \"run\"\n\n[manifold]\nkind = \"circle\"\nn = 30\n",
    )
    .unwrap();
    let out = homodim(&["pipeline", "--config", "c.toml"], tmp.path());
    assert_eq!(code(&out), 3);
    let run = tmp.path().join("run");
    let marker = std::fs::read_to_string(run.join("FAILED")).unwrap();
    assert!(marker.contains("stage: persist"), "{marker}");
    assert!(run.join("points.csv").exists());
    assert!(!run.join("summary.json").exists());
}
