use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn trajzip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trajzip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn synth_corpus(dir: &Path, kind: &str, dim: &str, count: &str) {
    let o = trajzip(&[
        "synth",
        "-o",
        s(dir),
        "--count",
        count,
        "--points",
        "3000",
        "--dim",
        dim,
        "--kind",
        kind,
        "--seed",
        "7",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
}

fn parse_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn write_linear(dir: &Path) -> PathBuf {
    let mut text = String::from("t,x,y\n");
    for i in 0..400 {
        text.push_str(&format!("{i},{},{}\n", 2.0 * i as f64, -0.5 * i as f64));
    }
    let path = dir.join("line.csv");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn compress_decompress_eval_contract() {
    let tmp = TempDir::new().unwrap();
    let raw = tmp.path().join("raw");
    let packed = tmp.path().join("packed");
    synth_corpus(&raw, "irregular", "2", "4");

    let o = trajzip(&[
        "compress",
        s(&raw),
        "-o",
        s(&packed),
        "--epsilon",
        "50",
        "--profile",
        "geolife",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let listing = String::from_utf8(o.stdout).unwrap();
    assert_eq!(listing.lines().count(), 4);
    assert!(listing.contains("bytes"));

    let o = trajzip(&["eval", s(&raw), s(&packed), "--at-original-timestamps"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = String::from_utf8(o.stdout).unwrap();
    let mut lines = table.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("name,points,compression_ratio,max_sed,mean_sed"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[4].starts_with("ALL,"));
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        let max_sed: f64 = f[3].parse().unwrap();
        let ratio: f64 = f[2].parse().unwrap();
        assert!(max_sed <= 50.0, "{row}");
        assert!(ratio > 0.0 && ratio < 1.0, "{row}");
    }

    // decompress --at with the original timestamps stays within the bound
    let original = raw.join("synth_0000.csv");
    let text = fs::read_to_string(&original).unwrap();
    let points = parse_rows(&text);
    let stamps: String = points.iter().map(|p| format!("{}\n", p[0])).collect();
    let stamp_file = tmp.path().join("stamps.txt");
    fs::write(&stamp_file, stamps).unwrap();
    let out_csv = tmp.path().join("back.csv");
    let o = trajzip(&[
        "decompress",
        s(&packed.join("synth_0000.plc")),
        "--at",
        s(&stamp_file),
        "-o",
        s(&out_csv),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let back = parse_rows(&fs::read_to_string(&out_csv).unwrap());
    assert_eq!(back.len(), points.len());
    for (a, b) in points.iter().zip(&back) {
        assert_eq!(a[0], b[0]);
        let d = ((a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        assert!(d <= 50.0);
    }
}

#[test]
fn jsonl_eval_and_3d() {
    let tmp = TempDir::new().unwrap();
    let raw = tmp.path().join("raw");
    synth_corpus(&raw, "smooth", "3", "2");
    let o = trajzip(&[
        "compress",
        s(&raw),
        "--epsilon",
        "10",
        "--profile",
        "geolife3d",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = trajzip(&["eval", s(&raw), s(&raw), "--format", "jsonl"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text
        .lines()
        .all(|l| l.starts_with('{') && l.contains("\"max_sed\"")));
}

#[test]
fn grid_of_linear_trajectory_is_linear() {
    let tmp = TempDir::new().unwrap();
    let input = write_linear(tmp.path());
    let plc = tmp.path().join("line.plc");
    let o = trajzip(&["compress", s(&input), "--epsilon", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(plc.exists());
    let o = trajzip(&["decompress", s(&plc), "--grid"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = parse_rows(&String::from_utf8(o.stdout).unwrap());
    assert!(rows.len() >= 100);
    for r in &rows {
        assert!((r[1] - 2.0 * r[0]).abs() <= 1.0, "{r:?}");
        assert!((r[2] + 0.5 * r[0]).abs() <= 1.0, "{r:?}");
    }
}

#[test]
fn sweep_reports_trend() {
    let tmp = TempDir::new().unwrap();
    let raw = tmp.path().join("raw");
    synth_corpus(&raw, "smooth", "2", "3");
    let o = trajzip(&[
        "eval",
        s(&raw),
        "--epsilon-list",
        "10,20,50,100",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("ratio_non_increasing") && header.contains("mean_sed_r_squared"));
    assert_eq!(text.lines().count(), 5);
    assert!(stderr(&o).contains("trend: ratio_non_increasing="));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let input = write_linear(tmp.path());

    // usage errors
    assert_eq!(trajzip(&[]).status.code(), Some(1));
    assert_eq!(trajzip(&["compress", s(&input)]).status.code(), Some(1));
    let o = trajzip(&["compress", s(&input), "--epsilon", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = trajzip(&["compress", s(&input), "--epsilon", "5", "--profile", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(trajzip(&["--help"]).status.code(), Some(0));

    // data errors
    let dup = tmp.path().join("dup.csv");
    fs::write(&dup, "t,x,y\n0,0,0\n1,1,1\n1,2,2\n2,3,3\n").unwrap();
    let o = trajzip(&["compress", s(&dup), "--epsilon", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = trajzip(&["compress", s(&dup), "--epsilon", "5", "--dedup"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let bad = tmp.path().join("bad.csv");
    fs::write(&bad, "t,x,y\n0,0,0\n1,oops,1\n").unwrap();
    let o = trajzip(&["compress", s(&bad), "--epsilon", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));
    let empty = tmp.path().join("empty");
    fs::create_dir(&empty).unwrap();
    assert_eq!(
        trajzip(&["eval", s(&empty), s(&empty)]).status.code(),
        Some(2)
    );

    // out-of-range query names the timestamp
    let o = trajzip(&["compress", s(&input), "--epsilon", "5"]);
    assert!(o.status.success());
    let plc = tmp.path().join("line.plc");
    let stamps = tmp.path().join("late.txt");
    fs::write(&stamps, "10\n123456\n").unwrap();
    let o = trajzip(&["decompress", s(&plc), "--at", s(&stamps)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("123456"));

    // format errors
    let bytes = fs::read(&plc).unwrap();
    let cut = tmp.path().join("cut.plc");
    fs::write(&cut, &bytes[..bytes.len() / 2]).unwrap();
    let o = trajzip(&["decompress", s(&cut), "--grid"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("unexpected end"), "{}", stderr(&o));
    let junk = tmp.path().join("junk.plc");
    fs::write(&junk, b"not a container").unwrap();
    assert_eq!(
        trajzip(&["decompress", s(&junk), "--grid"]).status.code(),
        Some(3)
    );
}

#[test]
fn mismatched_sets_rejected() {
    let tmp = TempDir::new().unwrap();
    let raw = tmp.path().join("raw");
    let packed = tmp.path().join("packed");
    synth_corpus(&raw, "smooth", "2", "2");
    let o = trajzip(&["compress", s(&raw), "-o", s(&packed), "--epsilon", "20"]);
    assert!(o.status.success());
    fs::remove_file(packed.join("synth_0001.plc")).unwrap();
    let o = trajzip(&["eval", s(&raw), s(&packed)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("differ"));
}

#[test]
fn profiles_and_overrides() {
    let o = trajzip(&["profiles"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    for name in ["nuplan", "geolife", "geolife3d", "mopsi"] {
        assert!(text.contains(name));
    }
    let tmp = TempDir::new().unwrap();
    let input = write_linear(tmp.path());
    let o = trajzip(&[
        "compress",
        s(&input),
        "--epsilon",
        "5",
        "--a",
        "0.8",
        "--b",
        "1",
        "--c",
        "30",
        "--d",
        "0.9",
        "--vmax",
        "100",
        "--eps-t",
        "0.5",
        "--chunk-bits",
        "3",
        "--eps-p-factor",
        "0.4",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = trajzip(&[
        "compress",
        s(&input),
        "--epsilon",
        "5",
        "--chunk-bits",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = trajzip(&[
        "compress",
        s(&input),
        "--epsilon",
        "5",
        "--eps-p-factor",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn synth_is_seeded() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    synth_corpus(&a, "jittery", "2", "1");
    synth_corpus(&b, "jittery", "2", "1");
    assert_eq!(
        fs::read(a.join("synth_0000.csv")).unwrap(),
        fs::read(b.join("synth_0000.csv")).unwrap()
    );
}
