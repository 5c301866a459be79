use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use skewring_core::catalog::hexacode_ctx;
use skewring_core::semilinear::xi_embed;
use skewring_core::Code;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewring")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewring")).args(args).env(key, val).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dist(ctx: &str, gen: &str, extra: &[&str]) -> Output {
    let (c, g) = (data(ctx), data(gen));
    let mut args = vec!["code", "dist", "--ctx", path(&c), "--gen", path(&g)];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn ctx_check_reports_each_catalog_context() {
    for name in ["hexacode.toml", "d6f9.toml", "c7c3f8.toml", "d20f9.toml"] {
        let o = run(&["ctx", "check", path(&data(name))]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(stdout(&o).contains("fingerprint "), "{name}");
    }
    let o = run(&["ctx", "check", path(&data("d20f9.toml"))]);
    assert!(stdout(&o).contains("cocycle valid, involutive=true, coboundary=false"), "{}", stdout(&o));
}

#[test]
fn ctx_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = dir.path().join("syntax.toml");
    std::fs::write(&syntax, "field = { p = 2, m = 1, poly = [1, 1] }\n[group]\nfamily = \n").unwrap();
    let o = run(&["ctx", "check", path(&syntax)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax.toml:3:"), "{}", stderr(&o));

    let broken = dir.path().join("broken.toml");
    let text = "field = { p = 3, m = 1, poly = [1, 1] }\n[group]\nfamily = \"cyclic\"\norder = 2\n\
                [cocycle]\nkind = \"table\"\nrows = [[\"1\", \"2\"], [\"1\", \"1\"]]\n";
    std::fs::write(&broken, text).unwrap();
    let o = run(&["ctx", "check", path(&broken)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).contains("cocycle:"));

    let o = run(&["ctx", "check", path(&dir.path().join("missing.toml"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn code_dist_on_catalog_rings() {
    let o = dist("hexacode.toml", "hexacode.gen", &[]);
    assert_eq!(stdout(&o).trim(), "[6,3,4]_4");
    let o = dist("d6f9.toml", "d6f9.gen", &["--method", "exhaustive"]);
    assert_eq!(stdout(&o).trim(), "[6,3,4]_9");
    let o = dist("c7c3f8.toml", "c7c3f8.gen", &["--method", "bz"]);
    assert_eq!(stdout(&o).trim(), "[21,14,6]_8");
}

/// The printed D20 generator spans the whole ring here; see the README.
#[test]
fn d20_ring_generator_spans_the_whole_ring() {
    let o = dist("d20f9.toml", "d20f9.gen", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[20,20,1]_9");
}

#[test]
fn code_dist_on_matrices() {
    for (file, expect) in [("a4f27.mat", "[12,4,9]_27"), ("d20f9_published.mat", "[20,16,4]_9"), ("c7c3f8_published.mat", "[21,14,6]_8")] {
        let o = run(&["code", "dist", "--matrix", path(&data(file))]);
        assert_eq!(stdout(&o).trim(), expect, "{file}: {}", stderr(&o));
    }
}

#[test]
fn code_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.gen");
    std::fs::write(&empty, "# nothing here\n\n").unwrap();
    let o = run(&["code", "dist", "--ctx", path(&data("hexacode.toml")), "--gen", path(&empty)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));

    let o = run(&["code", "dist", "--ctx", path(&data("hexacode.toml"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["code", "dist", "--matrix", path(&data("a4f27.mat")), "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--bogus"));
    let o = run(&["code", "dist", "--matrix", path(&data("a4f27.mat")), "--method", "fast"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn code_wenum_span_and_dual() {
    let (c, g) = (data("d6f9.toml"), data("d6f9.gen"));
    let o = run(&["code", "wenum", "--ctx", path(&c), "--gen", path(&g)]);
    assert_eq!(stdout(&o).trim(), "1 + 120x^4 + 240x^5 + 368x^6");

    let (c, g) = (data("hexacode.toml"), data("hexacode.gen"));
    let span = run(&["code", "span", "--ctx", path(&c), "--gen", path(&g)]);
    assert!(stdout(&span).starts_with("# field 2 2 poly=1,1,1 6 3\n"));
    let herm = run(&["code", "dual", "--ctx", path(&c), "--gen", path(&g), "--form", "hermitian"]);
    assert_eq!(stdout(&herm), stdout(&span));
    let eucl = run(&["code", "dual", "--ctx", path(&c), "--gen", path(&g)]);
    assert_ne!(stdout(&eucl), stdout(&span));
}

#[test]
fn idem_commands() {
    let (c, g) = (data("hexacode.toml"), data("hexacode.gen"));
    let o = run(&["idem", "check", "--ctx", path(&c), "--gen", path(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("flags: idempotent sd_hermitian"));
    assert!(stdout(&o).contains("divides dim: false"));

    let o = run(&["idem", "check", "--ctx", path(&data("d6f9.toml")), "--gen", path(&data("d6f9.gen"))]);
    assert!(stdout(&o).contains("flags: idempotent self_adjoint lcd_euclidean"));

    let o = run(&["idem", "check", "--ctx", path(&data("c7c3f8.toml")), "--gen", path(&data("c7c3f8.gen"))]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["idem", "extract", "--ctx", path(&data("c7c3f8.toml")), "--gen", path(&data("c7c3f8.gen"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains('*'));

    let o = run(&["idem", "extract", "--ctx", path(&c), "--gen", path(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("characteristic divides"));
}

#[test]
fn recognize_round_trip() {
    let ctx = hexacode_ctx().unwrap();
    let e = ctx.parse("w*1 + y + xy + w*x2y").unwrap();
    let code = Code::ideal_span(&[e]).unwrap().standalone();
    let gg = xi_embed(&ctx).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("hexa.mat");
    let grp = dir.path().join("hexa.grp");
    skewring::files::write_string(&mat, &skewring::files::render_genmat(&code)).unwrap();
    skewring::files::write_string(&grp, &skewring::files::render_gamma_group(gg.generators(), ctx.field())).unwrap();
    let o = run(&["recognize", "--code", path(&mat), "--group", path(&grp)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("group order 6"));
    assert!(text.contains(&format!("theta exponents {:?}", ctx.theta().exps())));

    // A transposition of two coordinates does not stabilize the hexacode.
    std::fs::write(&grp, "gamma=0 perm=(0 1) diag=1,1,1,1,1,1\n").unwrap();
    let o = run(&["recognize", "--code", path(&mat), "--group", path(&grp)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn verify_commands() {
    let o = run(&["verify", "example", "hexacode"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("hexacode: PASS"));

    let o = run(&["verify", "all", "--json"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() > 30);
    for l in &lines {
        for key in ["example", "name", "expected", "got", "pass"] {
            assert!(l.get(key).is_some(), "{l}");
        }
    }
    let failing: Vec<&str> = lines
        .iter()
        .filter(|l| l["pass"] == false && l["informational"] == false)
        .map(|l| l["example"].as_str().unwrap())
        .collect();
    // Only the D20 ring-level items fail.
    assert!(!failing.is_empty() && failing.iter().all(|&e| e == "d20f9"), "{failing:?}");
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["verify", "example", "golay"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_cli_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let c = data("hexacode.toml");
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let args = |out: &Path| -> Vec<String> {
        ["search", "--ctx", path(&c), "--budget", "60", "--seed", "5", "--out", path(out)].iter().map(|s| s.to_string()).collect()
    };
    let argv_a = args(&a);
    let argv_b = args(&b);
    let oa = run_env(&argv_a.iter().map(String::as_str).collect::<Vec<_>>(), "SKEWRING_THREADS", "1");
    let ob = run_env(&argv_b.iter().map(String::as_str).collect::<Vec<_>>(), "SKEWRING_THREADS", "4");
    assert_eq!(oa.status.code(), Some(0), "{}", stderr(&oa));
    assert_eq!(ob.status.code(), Some(0), "{}", stderr(&ob));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = run(&["search", "--ctx", path(&c), "--budget", "0", "--seed", "5", "--out", path(&a)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&argv_a.iter().map(String::as_str).collect::<Vec<_>>(), "SKEWRING_THREADS", "zero");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
    assert_eq!(run(&[]).status.code(), Some(2));
}
