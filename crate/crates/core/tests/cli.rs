use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use hyperell::jobspec::JobSpec;
use proptest::prelude::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperell"))
}

fn run_file(name: &str) -> Output {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs").join(name);
    bin().arg(path).output().unwrap()
}

fn run_stdin(text: &str) -> Output {
    let mut child = bin().arg("-").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn worked_example_encode() {
    let out = run_file("gf31.job");
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "1\t1\t1\t1\n30\t20\t15\t12\n---\n16\t14\t1\t0\n7\t23\t0\t1\n---\ncode m=4 k=2 d=3 mds=true goppa_bound=0\n"
    );
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning: singular curve accepted"));
}

#[test]
fn every_job_is_deterministic() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs");
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let first = run_file(&name);
        assert!(first.status.success(), "{name}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, run_file(&name).stdout, "{name}");
    }
}

#[test]
fn distance_report() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs/gf13.job")).unwrap();
    let out = run_stdin(&text.replace("cmd encode", "cmd distance"));
    assert_eq!(stdout(&out), "code m=10 k=3 d=8 mds=true goppa_bound=6\n");
}

#[test]
fn budget_fallback_reports_interval() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs/gf17.job")).unwrap();
    let path = std::env::temp_dir().join(format!("hyperell-budget-{}.job", std::process::id()));
    std::fs::write(&path, text.replace("cmd encode", "cmd distance")).unwrap();
    let out = bin().arg(&path).args(["--budget", "100"]).output().unwrap();
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "code m=12 k=3 d=[8,10] mds=unknown goppa_bound=8\n");
}

#[test]
fn basis_and_oracle() {
    let out = run_stdin("field p=5\ncurve f=1,4,0,0,0,1\ndivisor (0,1) (1,4) inf*2\ncmd basis\n");
    assert_eq!(
        stdout(&out),
        "dim=3 case=with-psi\n((1) + (0)*y)/(1)\n((1*x) + (0)*y)/(1)\n((1 + 3*x) + (1)*y)/(4*x + 1*x^2)\n"
    );
    let out = run_stdin("field p=5\ncurve f=1,4,0,0,0,1\ndivisor (0,1) (1,4) inf*2\ncmd dim --oracle\n");
    assert_eq!(stdout(&out), "dim=3 oracle=3\n");
}

#[test]
fn points_listing() {
    let out = run_stdin("field p=5\ncurve f=1,4,0,0,0,1\ncmd points\n");
    let text = stdout(&out);
    assert!(text.starts_with("(0,1)\n(0,4)\n"));
    assert!(text.ends_with("inf\ncount=11\n"));
}

#[test]
fn exit_codes() {
    let empty = run_stdin("");
    assert_eq!(empty.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&empty.stderr), "error[ParseError]: line 1: missing field\n");

    let off_curve = run_stdin("field p=5\ncurve f=1,4,0,0,0,1\ndivisor (0,2) inf*2\ncmd basis\n");
    assert_eq!(off_curve.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&off_curve.stderr).contains("line 3"));

    let singular = run_stdin("field p=5\ncurve f=0,0,0,1,0,1\ncmd points\n");
    assert_eq!(singular.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("SingularCurve"));

    let in_support = run_stdin("field p=5\ncurve f=1,4,0,0,0,1\ndivisor (0,1) inf*2\ng (0,1)\ncmd encode\n");
    assert_eq!(in_support.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&in_support.stderr).contains("PointInSupport"));

    let missing = bin().arg("/nonexistent/job").output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

/// Job text assembled from random but valid pieces over the GF(5) curve.
fn job_text() -> impl Strategy<Value = String> {
    let pts = ["(0,1)", "(0,4)", "(1,1)", "(1,4)", "(2,1)", "(2,4)", "(3,1)", "(3,4)", "(4,1)", "(4,4)"];
    (
        proptest::sample::subsequence(pts.to_vec(), 0..=2),
        proptest::collection::vec(1i64..3, 2),
        0i64..6,
        proptest::sample::subsequence(pts.to_vec(), 1..=6),
        proptest::option::of(proptest::collection::vec(-7i64..7, 1..4)),
        prop::sample::select(vec!["basis", "encode", "distance", "dim", "dim --oracle", "points"]),
        any::<bool>(),
    )
        .prop_map(|(support, mults, omega, g, kappa, cmd, comment)| {
            let mut s = String::from("field p=5 t=1\n");
            if comment {
                s.push_str("# generated\n");
            }
            s.push_str("curve f=1,4,0,0,0,1 h=0\ndivisor");
            for (p, m) in support.iter().zip(&mults) {
                s.push_str(&format!(" {p}*{m}"));
            }
            s.push_str(&format!(" inf*{omega}\n"));
            if let Some(k) = kappa {
                let k: Vec<String> = k.iter().map(i64::to_string).collect();
                s.push_str(&format!("kappa {}\n", k.join(",")));
            }
            s.push_str(&format!("g {}\ncmd {cmd}\n", g.join(" ")));
            s
        })
}

proptest! {
    #[test]
    fn render_round_trips(text in job_text()) {
        let job = JobSpec::parse(&text).unwrap();
        let rendered = job.render();
        prop_assert_eq!(JobSpec::parse(&rendered).unwrap(), job);
        prop_assert_eq!(JobSpec::parse(&rendered).unwrap().render(), rendered);
    }
}
