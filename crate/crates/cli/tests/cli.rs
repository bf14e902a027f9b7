use std::path::Path;
use std::process::{Command, Output};

fn bura(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bura")).args(args).output().expect("binary runs")
}

fn records(csv: &[u8]) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(csv).records().map(|r| r.unwrap()).collect()
}

fn column(header: &csv::StringRecord, name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn bura_table_against_published_errors() {
    let out = bura(&["bura-table", "--alphas", "0.25,0.5,0.75", "--k", "5..10"]);
    assert!(out.status.success());
    let rows = records(&out.stdout);
    let errors: Vec<_> = rows.iter().filter(|r| &r[6] == "error").collect();
    assert_eq!(errors.len(), 18);
    for r in errors {
        let (v, p): (f64, f64) = (r[7].parse().unwrap(), r[8].parse().unwrap());
        assert!((v - p).abs() <= 0.01 * p, "{r:?}");
    }
}

#[test]
fn single_solve_reports_paper_sibling() {
    let out = bura(&["solve", "--problem", "fd2d", "--h", "2^-8", "--alpha", "0.75", "--method", "pbura", "--k", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let header = rdr.headers().unwrap().clone();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    let l2 = rows.iter().find(|r| &r[column(&header, "metric")] == "l2_rel").unwrap();
    assert_eq!(&l2[column(&header, "paper_value")], "7.564000e-7");
    assert_eq!(&l2[column(&header, "systems_solved")], "9");
    assert_eq!(&l2[column(&header, "delta_source")], "exact");
    let v: f64 = l2[column(&header, "value")].parse().unwrap();
    let bound: f64 = rows.iter().find(|r| &r[column(&header, "metric")] == "bound").unwrap()[7].parse().unwrap();
    assert!(v > 0.0 && v <= bound);
}

#[test]
fn empty_method_set_is_a_config_error() {
    let out = bura(&["table3", "--method", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty method set"));
}

#[test]
fn bad_mesh_is_a_config_error() {
    let out = bura(&["table2", "--h", "1/10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bura(&["table2", "--h", "3"]);
    assert!(!out.status.success());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let args = ["mmatrix", "--h", "1/10,1/20", "--battery", "3", "--seed", "11", "--out", p.to_str().unwrap()];
        assert!(bura(&args).status.success());
    }
    assert_eq!(read(&a), read(&b));
    assert!(read(&a).contains("positivity,fem-consistent"));
    let c = dir.path().join("c.csv");
    let args = ["mmatrix", "--h", "1/10,1/20", "--battery", "3", "--seed", "12", "--out", c.to_str().unwrap()];
    assert!(bura(&args).status.success());
    assert_ne!(read(&a), read(&c));
}

#[test]
fn timings_are_opt_in() {
    let out = bura(&["bura-table", "--alpha", "0.5", "--k", "5"]);
    assert!(!String::from_utf8_lossy(&out.stdout).contains("wall_time_s"));
    let out = bura(&["bura-table", "--alpha", "0.5", "--k", "5", "--timings"]);
    assert!(String::from_utf8_lossy(&out.stdout).lines().next().unwrap().ends_with("wall_time_s"));
}

#[test]
fn refinement_plotdata() {
    let dir = tempfile::tempdir().unwrap();
    let plots = dir.path().join("plots");
    let out = bura(&["table4", "--alpha", "0.5", "--h0", "9", "--plot-dir", plots.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let series = read(&plots.join("table4_series.dat"));
    let lines: Vec<&str> = series.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("# alpha h0 level"));
    let mesh = read(&plots.join("table4_mesh_h0_9_steps_6.dat"));
    assert_eq!(mesh.lines().count(), 1 + 523);
    let rows = records(&out.stdout);
    let nodes: Vec<_> = rows.iter().filter(|r| &r[6] == "nodes").map(|r| (r[7].to_string(), r[8].to_string())).collect();
    assert_eq!(nodes, vec![("511".into(), "511".into()), ("523".into(), "523".into())]);
}

#[test]
fn point_source_node_counts() {
    let out = bura(&["table5", "--h0", "6"]);
    assert!(out.status.success());
    let rows = records(&out.stdout);
    let last: Vec<_> = rows.iter().filter(|r| &r[1] == "last" && &r[6] == "nodes").map(|r| r[7].to_string()).collect();
    assert_eq!(last, vec!["83", "77"]);
}

#[test]
fn figure2_writes_window_and_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let out = bura(&["figure2", "--h0", "5", "--refine-steps", "2", "--plot-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = records(&out.stdout);
    let grid = rows.iter().find(|r| &r[6] == "grid").unwrap();
    let len: usize = grid[7].parse().unwrap();
    assert_eq!(read(&dir.path().join("figure2_mesh.dat")).lines().count(), len + 1);
    assert!(read(&dir.path().join("figure2_window.dat")).starts_with("# x y w u error"));
}

#[test]
fn lshaped_solve_with_dense_reference() {
    let out = bura(&["solve", "--problem", "lshaped", "--h", "1/16", "--alpha", "0.5", "--method", "pbura,bura"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = records(&out.stdout);
    let errs: Vec<f64> = rows.iter().filter(|r| &r[6] == "l2_rel").map(|r| r[7].parse().unwrap()).collect();
    assert_eq!(errs.len(), 2);
    assert!(errs[0] < 1e-4 && errs[1] < 1e-2);
}
