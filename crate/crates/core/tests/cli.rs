use std::process::{Command, Output};

fn ac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exact_prints_witness() {
    let o = ac(&["exact", "11"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("q=11 t=8 witness=11;8;"), "{s}");
}

#[test]
fn exact_respects_ceiling() {
    let o = ac(&["exact", "37"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AC_MAX_Q_EXHAUSTIVE"));
}

#[test]
fn bad_orders_are_usage_errors() {
    assert_eq!(ac(&["exact", "12"]).status.code(), Some(2));
    assert_eq!(ac(&["search", "4"]).status.code(), Some(2));
    assert_eq!(ac(&["bounds", "--q", "10"]).status.code(), Some(2));
    assert_eq!(ac(&["bounds", "--q", "11", "--names", "nope"]).status.code(), Some(2));
    assert_eq!(ac(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn search_record_and_replay() {
    let dir = std::env::temp_dir().join(format!("ac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rec = dir.join("run.json");
    let rec_s = rec.to_str().unwrap();
    let o = ac(&["search", "13", "--restarts", "20", "--record", rec_s]);
    assert!(o.status.success());
    let line = stdout(&o).trim().to_string();
    let (q, w) = conic_ac::search::parse_witness(&line).unwrap();
    assert_eq!(q, 13);
    assert!(w.len() <= 9);

    let o = ac(&["replay", rec_s]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), line);

    // Tamper with the stored result: replay must notice.
    let mut r = conic_ac::report::RunRecord::load(&rec).unwrap();
    r.result = Some("13;3;0,1,inf".into());
    r.save(&rec).unwrap();
    assert_eq!(ac(&["replay", rec_s]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounds_csv() {
    let o = ac(&["bounds", "--q", "11,13", "--names", "A,C"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "q,bound,value,value_star");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "11,A,8.00000000000,1.55768105766");
}

#[test]
fn verify_default_and_file() {
    let o = ac(&["verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("55 of 55 rows passed"));

    let dir = std::env::temp_dir().join(format!("ac-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "q,tbar,tstar\n49,18,1.31\n53,999,\n").unwrap();
    let o = ac(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL q=53"));
    let broken = dir.join("broken.csv");
    std::fs::write(&broken, "q,tbar\n49,x\n").unwrap();
    assert_eq!(ac(&["verify", broken.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn nrc_subcommands() {
    let o = ac(&["nrc", "--complete", "4", "2"]);
    assert!(stdout(&o).contains("extendable by 1 point"));
    let o = ac(&["nrc", "--complete", "7", "3"]);
    assert!(stdout(&o).contains("complete"));
    let o = ac(&["nrc", "--p0", "1"]);
    assert!(stdout(&o).contains("p0=757"));
    let o = ac(&["nrc", "--p0", "1", "--c", "1.62"]);
    assert!(stdout(&o).contains("p0=877"));
    assert!(stdout(&ac(&["nrc", "--range", "9"])).contains("N in [3,3]"));
    assert_eq!(ac(&["nrc"]).status.code(), Some(2));
}
