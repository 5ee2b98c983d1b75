use std::fs;
use std::process::{Command, Output};

use sharkdepth::format::{read_dataset, read_network, read_pwl, write_pwl};
use sharkdepth::maps::{period4_map, tent};
use sharkdepth::{compile_tent, int};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharkdepth")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// CSV data rows (after `#` comments and the header) as integer columns,
/// dropping the trailing bound column.
fn int_rows(csv: &str) -> Vec<Vec<u64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            cells[..cells.len() - 1].iter().map(|c| c.parse().unwrap()).collect()
        })
        .collect()
}

#[test]
fn analyze_tent_two() {
    let out = stdout(&["analyze", "tent:2"]);
    assert!(out.contains("prime period 3 (searched up to 8)"));
    assert!(out.contains("rho: 1.61803398875"));
    assert!(out.contains("regime: exponential crossings"));
    assert!(out.contains("# approximate=false"));
}

#[test]
fn analyze_period_four_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("period4.pwl");
    fs::write(&path, write_pwl(&period4_map())).unwrap();
    let out = stdout(&["analyze", &format!("file:{}", path.display())]);
    assert!(out.contains("prime period 4"));
    assert!(out.contains("regime: at most polynomial"));
}

#[test]
fn analyze_tent_one_reports_fixed_segment() {
    let out = stdout(&["analyze", "tent:1"]);
    assert!(out.contains("prime period 1"));
    assert!(out.contains("fixed segment present"));
}

#[test]
fn iterate_period_three_fixture() {
    let out = stdout(&["iterate", "canonical:3", "--t-max", "4"]);
    assert!(out.contains("t,pieces,delta_0,delta_1,lower_bound\n"));
    let deltas: Vec<Vec<u64>> = int_rows(&out).into_iter().map(|r| r[2..].to_vec()).collect();
    assert_eq!(deltas, vec![vec![2, 1], vec![3, 2], vec![5, 3], vec![8, 5]]);
}

#[test]
fn iterate_tent_one_is_constant() {
    let rows = int_rows(&stdout(&["iterate", "tent:1", "--t-max", "5"]));
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1..] == rows[0][1..]));
}

#[test]
fn iterate_logistic_grows_and_is_flagged() {
    let out = stdout(&["iterate", "logistic:3.9:256", "--t-max", "6", "--max-period", "3"]);
    assert!(out.contains("# approximate=true"));
    let d0: Vec<u64> = int_rows(&out).iter().map(|r| r[2]).collect();
    let steps: Vec<u64> = d0.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.windows(2).all(|w| w[1] >= w[0]) && steps.last() > steps.first(), "{d0:?}");
}

#[test]
fn approximate_flag_on_every_map_report() {
    let runs: [&[&str]; 4] = [
        &["analyze", "logistic:4:64", "--max-period", "3"],
        &["cycles", "logistic:4:64", "--periods", "1,3"],
        &["covering", "logistic:4:64", "--max-period", "3"],
        &["iterate", "logistic:4:64", "--t-max", "2"],
    ];
    for args in runs {
        let out = stdout(args);
        assert!(out.starts_with("# map=logistic:4:64"), "{args:?}");
        assert!(out.contains("# approximate=true\n"), "{args:?}");
    }
}

#[test]
fn compile_matches_the_tent_networks() {
    let dir = tempfile::tempdir().unwrap();
    for (mu, k, pieces) in [("2", "1", 2), ("1", "1", 2), ("2", "10", 1024)] {
        let path = dir.path().join(format!("net_{mu}_{k}.json"));
        let report = stdout(&["compile", mu, k, "--out", path.to_str().unwrap()]);
        assert!(report.contains(&format!("pieces={pieces}")), "{report}");
        let net = read_network(&fs::read_to_string(&path).unwrap()).unwrap();
        let k: usize = k.parse().unwrap();
        assert_eq!(net, compile_tent(sharkdepth::parse_rational(mu).unwrap()).unwrap().stack(k).unwrap());
    }
    let fig_1c = read_network(&stdout(&["compile", "1", "1"])).unwrap();
    assert_eq!(fig_1c.layers()[1].weights, vec![vec![int(1), int(-2)]]);
}

#[test]
fn extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    let pwl = dir.path().join("f.pwl");
    stdout(&["compile", "2", "3", "--out", net.to_str().unwrap()]);
    let report = stdout(&["extract", net.to_str().unwrap(), "--out", pwl.to_str().unwrap()]);
    assert!(report.contains("pieces=8"));
    let f = read_pwl(&fs::read_to_string(&pwl).unwrap()).unwrap();
    assert_eq!(f, tent(int(2)).unwrap().iterate(3).unwrap());
}

#[test]
fn dataset_and_bound_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    let report = stdout(&["dataset", "tent:2", "--k", "6", "--verify", "1,1", "--out", path.to_str().unwrap()]);
    assert!(report.contains("interval=[4/9,8/9] n=8 points=16"));
    assert!(report.contains("l=1 u=1"));
    let d = read_dataset(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d.len(), 16);
    let out = run(&["dataset", "tent:1", "--k", "6", "--interval", "1/9,2/9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tradeoff_table_rows() {
    let out = stdout(&["tradeoff", "3", "40", "--l-max", "4"]);
    assert!(out.starts_with("l,u_max,bound\n"));
    assert!(out.lines().nth(4).unwrap().starts_with("4,15,"));
    let out = stdout(&["tradeoff", "3", "6"]);
    assert!(out.lines().last().unwrap().starts_with("6,0,vacuous"));
}

#[test]
fn rho_table() {
    let out = stdout(&["rho", "--r-max", "2"]);
    assert_eq!(out, "r,rho\n1,1.61803398875\n2,1.46557123188\n");
}

#[test]
fn bias_experiment_examples() {
    let out = stdout(&["bias-experiment", "--epsilon", "1/100"]);
    assert!(out.contains("tent(phi_hat): period 3 present"));
    assert!(out.contains("tent(phi_hat - epsilon): period 3 absent"));
    let out = stdout(&["bias-experiment", "--epsilon", "0"]);
    assert!(out.contains("tent(phi_hat - epsilon): period 3 present"));
    let out = stdout(&["bias-experiment", "--epsilon", "0.000001"]);
    assert!(out.contains("tent(phi_hat - epsilon): period 3 absent"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "tent:5/2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let capped = run(&["iterate", "tent:2", "--t-max", "20", "--cap", "100"]);
    assert_eq!(capped.status.code(), Some(3));
    let partial = String::from_utf8(capped.stdout).unwrap();
    assert_eq!(int_rows(&partial).len(), 6);
    assert!(String::from_utf8(capped.stderr).unwrap().contains("largest completed t = 6"));
    assert_eq!(run(&["analyze", "file:/nonexistent/map.pwl"]).status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "canonical:5", "--max-period", "7"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn text_format_aligns_columns() {
    let out = stdout(&["rho", "--r-max", "1", "--format", "text"]);
    assert_eq!(out, "r            rho\n1  1.61803398875\n");
}

#[test]
fn out_flag_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.csv");
    let printed = stdout(&["rho", "--r-max", "3", "--out", path.to_str().unwrap()]);
    assert!(printed.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("r,rho\n"));
}
