use std::io::Write;
use std::process::{Command, Output};

fn monoidlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoidlab")).args(args).env_remove("MONOIDLAB_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nf_of_a_word() {
    let o = monoidlab(&["nf", "--preset", "k-inf", "--word", "e b b e"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e\n");
}

#[test]
fn finite_t() {
    let o = monoidlab(&["finite", "--preset", "t"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("6 elements: 1, f, g, f g, g f, g f g\n"), "{out}");
    assert_eq!(out.lines().count(), 1 + 7);
}

#[test]
fn check_verdicts_and_exit_codes() {
    let o = monoidlab(&["check", "--preset", "d-inf", "--identity", "x x y y = y y x x", "--max-witness-len", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("NO-WITNESS-UP-TO 2"));

    let o = monoidlab(&["check", "--preset", "k-inf", "--identity", "x x y x = x y x x", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "FAIL\tcheck\tFAILS x=b, y=e\n");

    // the witness re-verifies through an explicit substitution
    let o = monoidlab(&["check", "--preset", "k-inf", "--identity", "x x y x = x y x x", "--substitution", "x=b, y=e"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "e b != b e\n");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        vec!["nf", "--word", "e"],
        vec!["nf", "--preset", "nope", "--word", "e"],
        vec!["nf", "--preset", "k-inf", "--word", "e z"],
        vec!["check", "--preset", "k-inf", "--identity", "x y"],
        vec!["frobnicate"],
        vec!["nf", "--preset", "k-inf", "--file", "x", "--word", "e"],
    ] {
        let o = monoidlab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn presentation_file() {
    let dir = std::env::temp_dir().join(format!("monoidlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# symmetric group\ngenerators: a b\nrelation: a a a = 1\nrelation: b b = 1\nrelation: a b a b = 1").unwrap();
    let p = path.to_str().unwrap();
    let o = monoidlab(&["confluence", "--file", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT CONFLUENT"));
    let o = monoidlab(&["complete", "--file", p, "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS\tcomplete\tCOMPLETE 6 rules"), "{}", stdout(&o));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn other_subcommands() {
    let cases: [(&[&str], i32, &str); 9] = [
        (&["enumerate", "--preset", "k-inf", "--max-len", "2"], 0, "1\ne\nb\ne b\nb e\n"),
        (&["idempotents", "--preset", "t"], 0, "5 idempotents: 1, f, f g, g f, g f g\n"),
        (&["hom", "--preset", "k-inf", "--target", "t", "--map", "e=f,b=g"], 0, "VALID e=f,b=g: all 2 relations respected\n"),
        (&["hom", "--preset", "k-inf", "--target", "t", "--map", "e=g,b=g"], 1, "INVALID relation e e = e violated: 1 != g\n"),
        (&["naturals", "--identity", "x y x = x x y"], 0, "HOLDS (balanced)\n"),
        (&["zimin", "--n", "3"], 0, "x1 x2 x1 x3 x1 x2 x1\n"),
        (
            &["zimin", "--preset", "d-inf", "--n", "2", "--format", "lines"],
            0,
            "PASS\tzimin\tISOTERM target=x1 x2 x1 balanced-candidates=2 refuted=2 unresolved=0 witness-bound=2\n",
        ),
        (&["freepair", "--preset", "k-inf", "--u", "e b", "--v", "b e", "--max-len", "3"], 1, "NOT FREE u and u v u both equal e b\n"),
        (
            &["isoterm", "--preset", "k-inf", "--word", "x y x", "--max-witness-len", "0", "--format", "lines"],
            1,
            "FAIL\tisoterm\tINCONCLUSIVE target=x y x balanced-candidates=2 refuted=0 unresolved=2 witness-bound=0\n",
        ),
    ];
    for (args, code, expected) in cases {
        let o = monoidlab(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert_eq!(stdout(&o), expected, "{args:?}");
    }
}

#[test]
fn malcev_with_descriptors() {
    let dir = std::env::temp_dir().join(format!("monoidlab-malcev-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, monoidlab::malcev::K_INF_ONTO_T_DESCRIPTORS).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, monoidlab::malcev::K_INF_ONTO_T_DESCRIPTORS.replace("(e b)^k e k>=0", "(b e)^k e k>=0")).unwrap();
    let base = ["malcev", "--preset", "k-inf", "--target", "t", "--map", "e=f,b=g", "--max-len", "12", "--descriptors"];
    let o = monoidlab(&[&base[..], &[good.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = monoidlab(&[&base[..], &[bad.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("descriptor mismatch in class f: missing [b e e"), "{}", stdout(&o));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reproduce_is_stable_across_job_counts() {
    let one = monoidlab(&["reproduce", "--format", "lines", "--jobs", "1"]);
    let four = monoidlab(&["reproduce", "--format", "lines", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let out = stdout(&one);
    assert!(out.lines().all(|l| l.split('\t').count() == 3));
    assert!(!out.contains("FAIL\t"));
    assert!(out.contains("INFO\tidentity.separation\t"));
    let jobs_env = Command::new(env!("CARGO_BIN_EXE_monoidlab"))
        .args(["reproduce", "--format", "lines"])
        .env("MONOIDLAB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(jobs_env.stdout, one.stdout);
    assert_eq!(monoidlab(&["reproduce", "--jobs", "0"]).status.code(), Some(2));
}
