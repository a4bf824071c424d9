use std::fs;
use std::io::Write;

use biham_core::harness::{
    read_records, replay, run_sweep, GridConfig, LemmaKind, RandomConfig, SweepConfig, SweepRecord,
    DEFAULT_ORACLE_CEILING,
};
use biham_core::Error;

fn config() -> SweepConfig {
    SweepConfig {
        grid: Some(GridConfig {
            lemmas: vec![
                LemmaKind::MBalancedNegative,
                LemmaKind::MNearlyNegative,
                LemmaKind::MminusPositive,
            ],
            p: vec![0, 1],
            n_max: 6,
            max_order: 12,
        }),
        random: vec![RandomConfig {
            count: 10,
            n_x: 5,
            n_y: 5,
            edge_probability: (0.5, 1.0),
            seed: 7,
        }],
        kp: vec![(1, 0), (2, 1)],
        oracle_ceiling: DEFAULT_ORACLE_CEILING,
        output_path: None,
    }
}

fn normalized(records: &[SweepRecord]) -> Vec<SweepRecord> {
    records
        .iter()
        .map(SweepRecord::without_timestamps)
        .collect()
}

#[test]
fn identical_configs_give_identical_records() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let sa = run_sweep(&config(), &a).unwrap();
    let sb = run_sweep(&config(), &b).unwrap();
    assert_eq!(sa, sb);
    assert_eq!(sa.computed, sa.tasks);
    let ra = read_records(&a).unwrap();
    assert_eq!(ra.len(), sa.tasks);
    assert_eq!(normalized(&ra), normalized(&read_records(&b).unwrap()));
    let fps: Vec<_> = ra.iter().map(|r| r.fingerprint.clone()).collect();
    let mut sorted = fps.clone();
    sorted.sort();
    assert_eq!(fps, sorted);
}

#[test]
fn interrupted_sweep_resumes_to_the_same_records() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let part = dir.path().join("part.jsonl");
    run_sweep(&config(), &full).unwrap();

    // Keep the header, a third of the records and a torn final line.
    let text = fs::read_to_string(&full).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let keep = 1 + (lines.len() - 1) / 3;
    let mut f = fs::File::create(&part).unwrap();
    for l in &lines[..keep] {
        writeln!(f, "{l}").unwrap();
    }
    write!(f, "{}", &lines[keep][..lines[keep].len() / 2]).unwrap();
    drop(f);

    let s = run_sweep(&config(), &part).unwrap();
    assert_eq!(s.resumed, keep - 1);
    assert_eq!(s.resumed + s.computed, s.tasks);
    assert_eq!(
        normalized(&read_records(&full).unwrap()),
        normalized(&read_records(&part).unwrap())
    );

    // A second resume has nothing left to do.
    let s = run_sweep(&config(), &part).unwrap();
    assert_eq!(s.computed, 0);
}

#[test]
fn records_replay_and_tampering_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    run_sweep(&config(), &out).unwrap();
    let records = read_records(&out).unwrap();
    for r in &records {
        replay(r, DEFAULT_ORACLE_CEILING).unwrap();
    }

    let with_witness = records
        .iter()
        .find(|r| {
            r.outcome
                .oracle
                .as_ref()
                .is_some_and(|o| o.witness.is_some())
        })
        .expect("some record has a failure witness");
    let mut tampered = with_witness.clone();
    tampered.outcome.oracle.as_mut().unwrap().holds = true;
    tampered.outcome.oracle.as_mut().unwrap().witness = None;
    assert!(matches!(
        replay(&tampered, DEFAULT_ORACLE_CEILING),
        Err(Error::CorruptRecord(_))
    ));

    let mut tampered = records[0].clone();
    tampered.p += 1;
    assert!(matches!(
        replay(&tampered, DEFAULT_ORACLE_CEILING),
        Err(Error::CorruptRecord(_))
    ));

    let mut tampered = records[0].clone();
    tampered.outcome.spectral.rho += 1e-6;
    assert!(matches!(
        replay(&tampered, DEFAULT_ORACLE_CEILING),
        Err(Error::CorruptRecord(_))
    ));
}

#[test]
fn empty_config_writes_an_empty_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.jsonl");
    let s = run_sweep(&SweepConfig::from_json("{}").unwrap(), &out).unwrap();
    assert_eq!(s.tasks, 0);
    assert!(read_records(&out).unwrap().is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);
}

#[test]
fn foreign_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.jsonl");
    fs::write(&out, "{\"schema\":\"other\",\"version\":1}\n").unwrap();
    assert!(matches!(
        run_sweep(&config(), &out),
        Err(Error::CorruptRecord(_))
    ));
    fs::write(
        &out,
        "{\"schema\":\"biham-sweep\",\"version\":1}\nnot json\n",
    )
    .unwrap();
    assert!(matches!(read_records(&out), Err(Error::CorruptRecord(_))));
}

#[test]
fn family_claims_in_the_small_grid_match_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.jsonl");
    let mut c = config();
    c.random.clear();
    let s = run_sweep(&c, &out).unwrap();
    assert!(s.tasks > 10);
    for r in read_records(&out).unwrap() {
        let oracle = r.outcome.oracle.as_ref().unwrap();
        assert_eq!(Some(oracle.holds), r.claim, "{}", r.source);
    }
}
