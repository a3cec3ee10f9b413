use std::io::Write;
use std::process::{Command, Output, Stdio};

const HEISENBERG: &str = "dim 4
basis X Y Z T
bracket X Y -> 1 Z
J X -> 1 Y
J Z -> -1 T
metric diag 1 1 1 1
theta 0 0 0 1
";

fn nilcoh(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nilcoh"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn nilcoh");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with("convention "))
        .map(str::to_string)
        .collect()
}

#[test]
fn catalog_piped_into_classify() {
    let cat = nilcoh(&["catalog", "heisenberg", "--n", "1"], "");
    assert_eq!(cat.status.code(), Some(0));
    let out = nilcoh(&["classify"], &stdout(&cat));
    assert_eq!(out.status.code(), Some(0));
    let l = lines(&out);
    assert_eq!(
        l[l.len() - 2..],
        ["is_heisenberg_x_line true", "potential_constant 1"]
    );
    assert!(l.contains(&"omega0_inertia (1,1,0)".to_string()));
}

#[test]
fn heisenberg_twisted_dolbeault_vanishes() {
    let out = nilcoh(&["dolbeault", "--theta", "0 0 0 1"], HEISENBERG);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        lines(&out),
        ["theta 0 0 0 1", "H 0,0 0", "H 0,1 0", "H 0,2 0"]
    );
}

#[test]
fn abelian_betti() {
    let file = "dim 2\nbasis a b\n";
    let out = nilcoh(&["betti"], file);
    assert_eq!(lines(&out), ["b0 1", "b1 2", "b2 1"]);
}

#[test]
fn convention_header() {
    let out = nilcoh(&["betti"], HEISENBERG);
    let text = stdout(&out);
    assert!(text.starts_with(
        "convention wedge=determinant\nconvention omega=h(I.,.)\nconvention dc=i(delbar-del)\n"
    ));
    let table = nilcoh(&["betti", "--format", "text"], HEISENBERG);
    assert!(
        stdout(&table).contains("conventions: wedge=determinant, omega=h(I.,.), dc=i(delbar-del)")
    );
}

#[test]
fn exit_codes() {
    let jacobi = "dim 3\nbasis a b c\nbracket a b -> 1 a\nbracket b c -> 1 b\nbracket a c -> 1 c\n";
    assert_eq!(nilcoh(&["validate"], jacobi).status.code(), Some(1));
    assert_eq!(nilcoh(&["betti"], jacobi).status.code(), Some(1));
    assert_eq!(nilcoh(&["validate"], HEISENBERG).status.code(), Some(0));
    assert_eq!(nilcoh(&["betti"], "").status.code(), Some(2));
    let unknown = "dim 4\nbasis X Y Z T\nbracket X Y -> 1 Q\n";
    let out = nilcoh(&["validate"], unknown);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(nilcoh(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(
        nilcoh(&["twisted-betti", "--theta", "1 0"], HEISENBERG)
            .status
            .code(),
        Some(2)
    );
    // Z* is not closed
    assert_eq!(
        nilcoh(&["twisted-betti", "--theta", "0 0 1 0"], HEISENBERG)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(nilcoh(&["catalog", "nope"], "").status.code(), Some(2));
}

#[test]
fn twisted_and_spectral_reports() {
    let out = nilcoh(&["twisted-betti"], HEISENBERG);
    assert_eq!(
        lines(&out)[1..],
        ["H 0 0", "H 1 0", "H 2 0", "H 3 0", "H 4 0"]
    );
    let iwasawa = stdout(&nilcoh(&["catalog", "iwasawa", "--export"], ""));
    let sp = nilcoh(&["spectral", "--theta", "1 0 -2 0 0 0"], &iwasawa);
    assert_eq!(sp.status.code(), Some(0));
    let l = lines(&sp);
    assert!(l.contains(&"w_dims 3 1 0".to_string()));
    assert!(l.contains(&"e0_is_wedge true".to_string()));
    assert_eq!(l.last().unwrap(), "e1_total 0");
}

#[test]
fn chase_and_bott_chern() {
    let out = nilcoh(&["chase", "--omega", "+1 X^Y -1 Z^T"], HEISENBERG);
    assert_eq!(out.status.code(), Some(0));
    let l = lines(&out);
    assert!(l.contains(&"tau -1 Z".to_string()));
    assert!(l.contains(&"residual_omega_zero true".to_string()));
    let bc = nilcoh(&["bott-chern"], HEISENBERG);
    assert!(lines(&bc).contains(&"bott_chern_11 0".to_string()));
}

#[test]
fn export_round_trips_through_validate() {
    for (name, n) in [("heisenberg", "3"), ("abelian", "4"), ("iwasawa", "1")] {
        let exported = stdout(&nilcoh(&["catalog", name, "--n", n, "--export"], ""));
        let v = nilcoh(&["validate"], &exported);
        assert_eq!(v.status.code(), Some(0), "{name}");
        assert_eq!(lines(&v).last().unwrap(), "status ok");
    }
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&nilcoh(&["classify"], HEISENBERG));
    let b = stdout(&nilcoh(&["classify"], HEISENBERG));
    assert_eq!(a, b);
}
