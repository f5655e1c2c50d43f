use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rtcascade_cli::artifacts::{read_manifest, verify_manifest};
use rtcascade_cli::pipeline::{run_pipeline, PipelineConfig};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

fn config(input: &Path, out: &Path, min: usize) -> PipelineConfig {
    PipelineConfig {
        min_retweeters: min,
        ..PipelineConfig::new(input, None, out)
    }
}

#[test]
fn toy_cascade_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let artifacts = run_pipeline(&config(&fixture("toy_cascade.jsonl"), dir.path(), 4)).unwrap();
    let virality = artifacts.iter().find(|a| a.path == "cascade/virality.tsv").unwrap();
    assert_eq!(virality.rows, 1);
    let influence = rows(&dir.path().join("cascade/influence.tsv"));
    let of = |u: &str| influence.iter().find(|r| r[0] == u).unwrap()[1].clone();
    assert_eq!(of("1"), "2");
    assert_eq!(of("2"), "2");
    assert_eq!(of("5"), "0");
    let trees = rows(&dir.path().join("cascade/trees.tsv"));
    let parent = |c: &str| trees.iter().find(|r| r[1] == c).unwrap()[2].clone();
    assert_eq!(parent("3"), "2");
    assert_eq!(parent("4"), "2");
    assert_eq!(parent("5"), "1");
    assert!(verify_manifest(dir.path()).unwrap().is_empty());
}

#[test]
fn empty_corpus_gives_empty_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.jsonl");
    fs::write(&input, "").unwrap();
    let out = dir.path().join("out");
    let artifacts = run_pipeline(&config(&input, &out, 100)).unwrap();
    assert!(!artifacts.is_empty());
    for a in artifacts.iter().filter(|a| !a.path.ends_with("averages.tsv")) {
        assert_eq!(a.rows, 0, "{}", a.path);
        if a.path.ends_with(".tsv") || a.path.ends_with(".edges") {
            assert!(!a.stale);
            let text = fs::read_to_string(out.join(&a.path)).unwrap();
            assert_eq!(text.lines().count(), 1, "{} has only a header", a.path);
        }
    }
}

#[test]
fn below_threshold_skips_downstream() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.jsonl");
    let mut lines = vec![
        r#"{"tweet_id":"1","user_id":"1","screen_name":"root","created_at":"2016-10-01T00:00:00Z","text":"hello https://x.co/r","mentions":[],"urls":["https://x.co/r"]}"#.to_string(),
    ];
    for u in 0..99u64 {
        lines.push(format!(
            r#"{{"tweet_id":"{}","user_id":"{}","screen_name":"u{}","created_at":"2016-10-01T00:{:02}:{:02}Z","text":"RT @root: hello https://x.co/r","mentions":[{{"user_id":"1","screen_name":"root"}}],"urls":["https://x.co/r"]}}"#,
            10 + u,
            100 + u,
            u,
            1 + u / 60,
            u % 60
        ));
    }
    fs::write(&input, lines.join("\n")).unwrap();
    let out = dir.path().join("out");
    run_pipeline(&config(&input, &out, 100)).unwrap();
    let m = read_manifest(&out).unwrap();
    let count = |p: &str| m.iter().find(|a| a.path == p).unwrap().rows;
    assert_eq!(count("ingest/cascades.tsv"), 0);
    assert_eq!(count("cascade/virality.tsv"), 0);
    assert_eq!(count("shapley/ranking.tsv"), 0);
    assert_eq!(count("graph/interaction.edges"), 99);

    let out = dir.path().join("out99");
    run_pipeline(&config(&input, &out, 99)).unwrap();
    let m = read_manifest(&out).unwrap();
    assert_eq!(m.iter().find(|a| a.path == "ingest/cascades.tsv").unwrap().rows, 1);
}

#[test]
fn worker_count_does_not_change_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut manifests = Vec::new();
    for threads in [1, 3] {
        let out = dir.path().join(format!("t{threads}"));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_pipeline(&config(&fixture("toy_cascade.jsonl"), &out, 1))).unwrap();
        manifests.push(fs::read(out.join("manifest.tsv")).unwrap());
    }
    assert_eq!(manifests[0], manifests[1]);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rtcascade"))
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let toy = fixture("toy_cascade.jsonl");
    let status = |args: &[&str]| bin().args(args).arg("--log-level").arg("off").stderr(std::process::Stdio::null()).status().unwrap().code();

    let out = dir.path().join("ok");
    let ok = ["pipeline", "run", "--input", toy.to_str().unwrap(), "--min-retweeters", "4", "--out", out.to_str().unwrap()];
    assert_eq!(status(&ok), Some(0));
    assert_eq!(status(&["pipeline", "run", "--input", toy.to_str().unwrap()]), Some(2));
    assert_eq!(status(&["pipeline", "run", "--out", "x"]), Some(2));
    let zero = ["pipeline", "run", "--input", toy.to_str().unwrap(), "--min-retweeters", "0", "--out", out.to_str().unwrap()];
    assert_eq!(status(&zero), Some(2));

    let garbage = dir.path().join("garbage.jsonl");
    fs::write(&garbage, "not json\n{]\n").unwrap();
    let out_g = dir.path().join("g");
    assert_eq!(
        status(&["ingest", "--input", garbage.to_str().unwrap(), "--out", out_g.to_str().unwrap()]),
        Some(3)
    );

    // a file where a stage subdirectory should go makes the write fail
    let blocked = dir.path().join("blocked");
    fs::create_dir_all(&blocked).unwrap();
    fs::write(blocked.join("graph"), "").unwrap();
    let run = ["pipeline", "run", "--input", toy.to_str().unwrap(), "--min-retweeters", "4", "--out", blocked.to_str().unwrap()];
    assert_eq!(status(&run), Some(4));
    let m = read_manifest(&blocked).unwrap();
    assert!(!m.is_empty());
    assert!(m.iter().all(|a| a.stale));
}

#[test]
fn stage_commands_match_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let synth = d.join("data");
    let st = bin()
        .args(["--log-level", "off", "--seed", "11", "synth", "gen", "--n-users", "3000", "--n-cascades", "4"])
        .args(["--min-size", "20", "--max-size", "40", "--hub-cascades", "1", "--out"])
        .arg(&synth)
        .status()
        .unwrap();
    assert!(st.success());
    let corpus = synth.join("corpus.jsonl");
    let trolls = synth.join("trolls.txt");
    let cfg = PipelineConfig {
        min_retweeters: 10,
        ..PipelineConfig::new(&corpus, Some(&trolls), &d.join("pipe"))
    };
    run_pipeline(&cfg).unwrap();

    let s = |p: &str| d.join("stages").join(p);
    let run = |args: Vec<&std::ffi::OsStr>| assert!(bin().arg("--log-level").arg("off").args(args).status().unwrap().success());
    run(vec!["ingest".as_ref(), "--input".as_ref(), corpus.as_os_str(), "--trolls".as_ref(), trolls.as_os_str(), "--min-retweeters".as_ref(), "10".as_ref(), "--out".as_ref(), s("ingest").as_os_str()]);
    run(vec!["graph".as_ref(), "build".as_ref(), "--input".as_ref(), corpus.as_os_str(), "--trolls".as_ref(), trolls.as_os_str(), "--out".as_ref(), s("graph").as_os_str()]);
    run(vec!["graph".as_ref(), "stats".as_ref(), "--graph".as_ref(), s("graph").as_os_str(), "--out".as_ref(), s("stats").as_os_str()]);
    run(vec!["cascade".as_ref(), "analyze".as_ref(), "--cascades".as_ref(), s("ingest").as_os_str(), "--graph".as_ref(), s("graph").as_os_str(), "--out".as_ref(), s("cascade").as_os_str()]);
    run(vec!["shapley".as_ref(), "rank".as_ref(), "--cascades".as_ref(), s("ingest").as_os_str(), "--graph".as_ref(), s("graph").as_os_str(), "--trolls".as_ref(), trolls.as_os_str(), "--out".as_ref(), s("shapley").as_os_str()]);

    for a in read_manifest(&d.join("pipe")).unwrap() {
        let staged = fs::read(d.join("stages").join(&a.path)).unwrap();
        let piped = fs::read(d.join("pipe").join(&a.path)).unwrap();
        assert!(staged == piped, "{} differs", a.path);
    }
}
