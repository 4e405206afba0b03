use std::path::Path;
use std::process::{Command, Output};

use qtorsion::complex::{fold, torsion_bounded};
use qtorsion::pearl;
use qtorsion::verify::gen::random_acyclic_complex;
use qtorsion::{Representation, VarTable};
use qtorsion_cli::schema::{read_input, InputFile, Loaded};
use rand::SeedableRng;

fn qtorsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtorsion")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn circle_and_torus_examples() {
    let o = qtorsion(&["example", "circle", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "1/(z1 - z2)  (mod ±1)");
    let o = qtorsion(&["example", "torus", "--m", "2"]);
    assert_eq!(stdout(&o).trim_end(), "1  (mod ±1)");
}

#[test]
fn json_output() {
    let o = qtorsion(&["--format", "json", "example", "surface", "--g", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "c^2");
    assert_eq!(v["quotient"], "±1");
}

#[test]
fn reports_are_deterministic() {
    let a = qtorsion(&["example", "star", "--g", "2", "--k", "1"]);
    let b = qtorsion(&["example", "star", "--g", "2", "--k", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn circle_pearl_round_trips() {
    let v = VarTable::new(["z1", "z2"]).unwrap();
    let rep = Representation::parse(&v, &[("A", "z1"), ("B", "z2")]).unwrap();
    let c = pearl::circle_pearl(2).unwrap();
    let file = InputFile::from_group(&c, Some(&rep));
    let back = read_input(&file.to_json()).unwrap();
    assert_eq!(back, file);
    match back.load().unwrap() {
        Loaded::Group { complex, representation } => {
            assert_eq!(complex.d(), c.d());
            assert_eq!(complex.delta(), c.delta());
            assert_eq!(InputFile::from_group(&complex, representation.as_ref()), file);
        }
        _ => panic!("expected a group-ring complex"),
    }
}

#[test]
fn random_bounded_complexes_round_trip() {
    let vars = VarTable::new(["t"]).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let c = random_acyclic_complex(&mut rng, &vars, 8);
        let file = InputFile::from_bounded(&c);
        let Loaded::Bounded(back) = read_input(&file.to_json()).unwrap().load().unwrap() else {
            panic!("expected a bounded complex");
        };
        assert_eq!(InputFile::from_bounded(&back), file);
        assert!(torsion_bounded(&back).unwrap().value().structurally_eq(torsion_bounded(&c).unwrap().value()));
        let p = fold(&c);
        let Loaded::Periodic(pb) = read_input(&InputFile::from_periodic(&p).to_json()).unwrap().load().unwrap() else {
            panic!("expected a periodic complex");
        };
        assert_eq!(pb.d(), p.d());
        assert_eq!(pb.delta(), p.delta());
    }
}

#[test]
fn emitted_files_reproduce_in_process_values() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = stdout(&qtorsion(&["example", "surface", "--g", "2", "--emit"]));
    let path = write(dir.path(), "sigma2.json", &emitted);
    let o = qtorsion(&["d1-torsion", "--input", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let expected = pearl::torsion_from_d1(&pearl::sigma_g_d1(2).unwrap()).unwrap();
    assert_eq!(stdout(&o).trim_end(), expected.to_string());

    let emitted = stdout(&qtorsion(&["example", "circle", "--n", "4", "--emit"]));
    let path = write(dir.path(), "circle.json", &emitted);
    let o = qtorsion(&["quantum-torsion", "--input", &path]);
    assert_eq!(stdout(&o).trim_end(), "1/(z1 - z2)  (mod ±1)");
    let o = qtorsion(&["quantum-torsion", "--input", &path, "--rep", "A=z1^2,B=z2", "--mod", "units"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("(mod ±⟨z1^2, z2⟩)"), "{}", stdout(&o));
}

#[test]
fn hand_written_bounded_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "two.json",
        r#"{
          "field": { "vars": ["a", "b"] },
          "complex": {
            "kind": "bounded",
            "bases": [["y1", "y2"], ["x1", "x2"]],
            "differentials": [[["a", "0"], ["0", "b"]]]
          }
        }"#,
    );
    let o = qtorsion(&["torsion-bounded", "--input", &path]);
    assert_eq!(stdout(&o).trim_end(), "a*b  (mod ±1)");
}

#[test]
fn nonzero_square_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.json",
        r#"{
          "field": { "vars": [] },
          "complex": {
            "kind": "bounded",
            "bases": [["c"], ["b"], ["a"]],
            "differentials": [[["1"]], [["1"]]]
          }
        }"#,
    );
    let o = qtorsion(&["torsion-bounded", "--input", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(c, a)"), "{}", stderr(&o));
}

#[test]
fn non_acyclic_and_non_narrow_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "zero.json",
        r#"{
          "complex": { "kind": "bounded", "bases": [["y"], ["x"]], "differentials": [[["0"]]] }
        }"#,
    );
    let o = qtorsion(&["torsion-bounded", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not acyclic"), "{}", stderr(&o));

    let emitted = stdout(&qtorsion(&["example", "circle", "--n", "2", "--emit"]));
    let path = write(dir.path(), "circle.json", &emitted);
    let o = qtorsion(&["quantum-torsion", "--input", &path, "--rep", "A=z1,B=z1"]);
    assert_eq!(o.status.code(), Some(2));

    let path = write(
        dir.path(),
        "flat.json",
        r#"{
          "field": { "vars": ["r"] },
          "ring": { "n": 1, "basis": ["p", "L"], "degrees": [0, 1], "unit": "L" },
          "d1": { "NL": 2, "generators": { "p": {} } }
        }"#,
    );
    let o = qtorsion(&["e1-check", "--input", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("not E1-narrow"), "{}", stdout(&o));
    assert_eq!(qtorsion(&["d1-torsion", "--input", &path]).status.code(), Some(2));
}

#[test]
fn syntax_and_io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", "{ \"field\": ");
    let o = qtorsion(&["torsion-bounded", "--input", &path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let path = write(
        dir.path(),
        "expr.json",
        r#"{ "complex": { "kind": "bounded", "bases": [["y"], ["x"]], "differentials": [[["1 +"]]] } }"#,
    );
    let o = qtorsion(&["torsion-bounded", "--input", &path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("complex.differentials[0][0][0]"), "{}", stderr(&o));

    let o = qtorsion(&["torsion-bounded", "--input", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_command_passes() {
    let o = qtorsion(&["verify", "--cases", "10", "--max-dim", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("all suites passed\n"));
}
