use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ice(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ice")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn frozen_boundary_has_one_fill_in() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(dir.path(), &["enumerate", "--lattice", "tri", "--n", "2", "--boundary", "sig:+1,+1,0,-1,-1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "count 1");
}

#[test]
fn enumeration_export_lists_sorted_fill_ins() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(dir.path(), &["enumerate", "--lattice", "tri", "--n", "4", "--boundary", "sig:0,0,0,0,0,0", "--out", "e.txt"]);
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("e.txt")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "count 18");
    assert_eq!(lines.len(), 19);
    assert!(lines[1..].windows(2).all(|w| w[0] < w[1]));
    assert!(dir.path().join("e.txt.manifest").exists());
}

#[test]
fn validate_accepts_sampled_and_rejects_corrupted() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(
        dir.path(),
        &["sample", "--lattice", "kagome", "--n", "4", "--boundary", "cycle", "--window", "30", "--seed", "3", "--final", "c.icecfg"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = ice(dir.path(), &["validate", "--config", "c.icecfg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "OK");

    let text = fs::read_to_string(dir.path().join("c.icecfg")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let flipped = if lines[1].ends_with('0') { "1" } else { "0" };
    lines[1] = format!("{} {flipped}", lines[1].split(' ').next().unwrap());
    fs::write(dir.path().join("bad.icecfg"), lines.join("\n")).unwrap();
    assert_eq!(ice(dir.path(), &["validate", "--config", "bad.icecfg"]).status.code(), Some(5));
    assert_eq!(ice(dir.path(), &["height", "--config", "bad.icecfg"]).status.code(), Some(5));
    assert!(ice(dir.path(), &["height", "--config", "c.icecfg"]).status.success());
}

#[test]
fn sample_outputs_do_not_depend_on_thread_count() {
    let root = tempfile::tempdir().unwrap();
    let names = ["h.pgm", "s.txt", "c.icecfg"];
    let mut runs = Vec::new();
    for threads in ["1", "2", "8"] {
        let dir = root.path().join(format!("t{threads}"));
        fs::create_dir(&dir).unwrap();
        let o = ice(
            &dir,
            &[
                "sample", "--lattice", "tri", "--n", "24", "--boundary", "sig:+1,-1,+1,-1,+1,-1", "--burnin", "50", "--window", "50",
                "--seed", "7", "--threads", threads, "--heatmap", "h.pgm", "--stats", "s.txt", "--final", "c.icecfg",
            ],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let mut files = Vec::new();
        for n in names {
            files.push(fs::read(dir.join(n)).unwrap());
            files.push(fs::read(dir.join(format!("{n}.manifest"))).unwrap());
        }
        runs.push((stdout(&o), files));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn heatmap_subcommand_matches_sampler_image() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(
        dir.path(),
        &["sample", "--lattice", "3464", "--n", "4", "--boundary", "sig:0,0,0,0,0,0", "--window", "40", "--heatmap", "a.pgm", "--stats", "s.txt"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(ice(dir.path(), &["heatmap", "--stats", "s.txt", "--out", "b.pgm"]).status.success());
    assert_eq!(fs::read(dir.path().join("a.pgm")).unwrap(), fs::read(dir.path().join("b.pgm")).unwrap());
    assert!(fs::read(dir.path().join("b.pgm")).unwrap().starts_with(b"P5\n"));
    assert!(dir.path().join("b.pgm.manifest").exists());
}

#[test]
fn restricted_moves_disconnect_fig4a() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(dir.path(), &["flipgraph", "--lattice", "tri", "--n", "4", "--seed", "fig4a", "--families", "fe"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("components 2"), "{}", stdout(&o));
    let o = ice(dir.path(), &["flipgraph", "--lattice", "tri", "--n", "4", "--seed", "fig4a"]);
    assert!(stdout(&o).contains("components 1"));
}

#[test]
fn ratio_reads_kagome_stats() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(
        dir.path(),
        &["sample", "--lattice", "kagome", "--n", "12", "--boundary", "cycle", "--schedule", "fe,fh,fo,fh", "--window", "100", "--stats", "k.txt"],
    );
    assert!(o.status.success());
    let o = ice(dir.path(), &["ratio", "--stats", "k.txt"]);
    assert!(o.status.success());
    let r: f64 = stdout(&o).split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(r > 1.0 && r < 20.0, "{r}");
}

#[test]
fn bounds_on_periodic_seed() {
    let dir = tempfile::tempdir().unwrap();
    let o = ice(dir.path(), &["bounds", "--lattice", "3464", "--n", "8", "--seed", "fig4d"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(">= 1/7: true"));
}

#[test]
fn distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| ice(dir.path(), args).status.code();
    assert_eq!(code(&["enumerate", "--lattice", "tri", "--n", "2", "--bogus"]), Some(2));
    assert_eq!(code(&["bounds", "--lattice", "tri", "--n", "4", "--boundary", "split"]), Some(2));
    assert_eq!(code(&["enumerate", "--lattice", "3464", "--n", "4", "--boundary", "sig:1,0,0,-1,0,0"]), Some(3));
    assert_eq!(code(&["enumerate", "--lattice", "tri", "--n", "4", "--boundary", "sig:1,1,1,0,0,0"]), Some(3));
    assert_eq!(code(&["enumerate", "--lattice", "tri", "--n", "6", "--boundary", "sig:0,0,0,0,0,0", "--cap", "10", "--out", "e.txt"]), Some(4));
    fs::write(dir.path().join("junk.icecfg"), "ICECFG tri\n").unwrap();
    assert_eq!(code(&["validate", "--config", "junk.icecfg"]), Some(6));
    assert_eq!(code(&["validate", "--config", "missing.icecfg"]), Some(6));
}

#[test]
fn all_in_block_boundary_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    // every boundary arrow points into the domain
    let d = icelat::build_domain(icelat::LatticeKind::T3464, 8).unwrap();
    let mut b = String::from("ICEBND 3464 8\n");
    for e in d.boundary_edges() {
        let edge = &d.edges[e.edge];
        let bit = d.vertices[edge.head].interior;
        b.push_str(&format!("{} {}\n", edge.id, bit as u8));
    }
    fs::write(dir.path().join("in.icebnd"), b).unwrap();
    let o = ice(dir.path(), &["bounds", "--lattice", "3464", "--n", "8", "--boundary", "file:in.icebnd"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
