use std::path::Path;
use std::process::{Command, Output};

use aaanep::experiments::disk_dirichlet_eigenvalues;
use aaanep::nep::{RecordStatus, ResultsDocument};

fn aaanep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aaanep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_doc(path: &Path) -> ResultsDocument {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn circle_search_matches_bessel_zeros_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = aaanep(&[
            "search",
            "--geometry",
            "circle",
            "--region",
            "1,10",
            "--n",
            "128",
            "--threads",
            "1",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let doc = read_doc(&a);
    assert_eq!(doc.problem, "helmholtz geometry=circle kind=interior n=128");
    let oracle = disk_dirichlet_eigenvalues(1.0, 10.0).unwrap();
    assert_eq!(doc.records.len(), oracle.len());
    for z in &oracle {
        let hit = doc
            .records
            .iter()
            .map(|r| (r.value_re - z.k).hypot(r.value_im))
            .fold(f64::INFINITY, f64::min);
        assert!(
            hit < 1e-10,
            "j_{{{},{}}} = {} missed by {hit:e}",
            z.order,
            z.index,
            z.k
        );
    }
}

#[test]
fn field_from_results() {
    let dir = tempfile::tempdir().unwrap();
    let res = dir.path().join("r.json");
    let o = aaanep(&[
        "search",
        "--geometry",
        "circle",
        "--region",
        "2,3",
        "--n",
        "64",
        "-o",
        res.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let res = res.to_str().unwrap();

    let o = aaanep(&[
        "field",
        "--results",
        res,
        "--index",
        "0",
        "--zero-density",
        "--grid",
        "-1,1,3,-1,1,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,re,im,abs,flag");
    assert_eq!(lines.len(), 10);
    for l in &lines[1..] {
        let v: Vec<&str> = l.split(',').collect();
        assert_eq!(&v[2..5], ["0.0", "0.0", "0.0"]);
    }

    // j_{0,1} mode: radially symmetric, so equal magnitudes at equal radii
    let o = aaanep(&[
        "field",
        "--results",
        res,
        "--index",
        "0",
        "--grid",
        "-0.5,0.5,3,-0.5,0.5,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect();
    let (left, right, centre) = (rows[3][4], rows[5][4], rows[4][4]);
    assert!(centre > 0.0);
    assert!((left - right).abs() < 1e-8 * centre);

    let o = aaanep(&["field", "--results", res, "--index", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_and_poly_info() {
    let o = aaanep(&["oracle", "--interval", "1,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "k,order,index,multiplicity\n2.404825557695773,0,1,1\n3.831705970207512,1,1,2\n5.135622301840682,2,1,2\n5.5200781102863115,0,2,1\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let exported = dir.path().join("bf.txt");
    let o = aaanep(&[
        "poly-info",
        "butterfly",
        "--export",
        exported.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("degree 4, size 64x64\n"));
    let o = aaanep(&["poly-info", exported.to_str().unwrap(), "--eigenvalues"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 256);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["search", "--geometry", "circle"],
        &["search", "--geometry", "teapot", "--region", "1,2"],
        &[
            "search",
            "--poly",
            "butterfly",
            "--kind",
            "exterior",
            "--rect",
            "-1,-1,1,1",
        ],
        &["search", "--geometry", "kite", "--region", "1,x"],
        &[
            "search",
            "--geometry",
            "kite",
            "--region",
            "1,2",
            "--threads",
            "0",
        ],
        &["oracle", "--kind", "square", "--interval", "1,2"],
        &["gap-study", "--mode", "sideways"],
        &["compare", "--methods", "algorithm1+newton"],
        &["compare", "--points", "4"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = aaanep(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = aaanep(&["poly-info", "/nonexistent/poly.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn polynomial_search_finds_companion_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("p.txt");
    std::fs::write(
        &poly,
        "2 2\n# A_0\n-1 0\n0 0\n0 0\n-4 0\n# A_1\n0 0\n0 0\n0 0\n0 0\n# A_2\n1 0\n0 0\n0 0\n1 0\n",
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = aaanep(&[
        "search",
        "--poly",
        poly.to_str().unwrap(),
        "--rect",
        "0.5,-0.5,2.5,0.5",
        "--per-side",
        "16",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mut found: Vec<f64> = read_doc(&out).records.iter().map(|r| r.value_re).collect();
    found.sort_by(f64::total_cmp);
    assert_eq!(found.len(), 2);
    assert!((found[0] - 1.0).abs() < 1e-12 && (found[1] - 2.0).abs() < 1e-12);
}

#[test]
fn unresolved_search_exits_3_and_still_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = aaanep(&[
        "search",
        "--poly",
        "butterfly",
        "--rect",
        "-2,-2,2,2",
        "--per-side",
        "8",
        "--max-depth",
        "0",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc = read_doc(&out);
    assert!(!doc.records.is_empty());
    assert!(doc
        .records
        .iter()
        .all(|r| r.status == RecordStatus::Unconverged));
}

#[test]
fn compare_writes_csv() {
    let o = aaanep(&[
        "compare",
        "--poly",
        "butterfly",
        "--center",
        "0.2,0.1",
        "--radius",
        "0.3",
        "--points",
        "32,64",
        "--methods",
        "algorithm1+secant4,block_ss",
        "--guess",
        "0.2,0.1",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,n_points,error,status");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("algorithm1+secant4,32,"));
}
