use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_split-spline")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn convergence_csv_schema() {
    let text = stdout(&["convergence", "--kind", "differential", "--function", "f3", "--n", "16,32"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,error,nco");
    assert!(lines[1].starts_with("16,") && lines[1].ends_with(','), "{}", lines[1]);
    let fields: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(fields[0], "32");
    assert!((fields[1].parse::<f64>().unwrap() - 1.05981e-7).abs() < 1e-12);
    assert!((fields[2].parse::<f64>().unwrap() - 4.07153).abs() < 1e-4);
}

#[test]
fn convergence_markdown_labels_published_columns() {
    let text = stdout(&["convergence", "--kind", "polarization", "--function", "g3", "--n", "16,32", "--format", "markdown"]);
    assert!(text.contains("| n | E_n | NCO | published E_n | published NCO | comparison D E_n | comparison D NCO |"));
    assert!(text.contains("transcribed, not computed"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    let out = dir.path().join("out.csv");
    fs::write(&config, r#"{"interval":[0,1],"n":[16,32],"phi":"alternating:3,4","kind":"differential","function":"f1"}"#).unwrap();
    let text = stdout(&["convergence", "--config", config.to_str().unwrap(), "--n", "8"]);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("8,"));
    stdout(&["convergence", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 3);
}

#[test]
fn qi_and_interp_sample_the_domain() {
    let text = stdout(&["qi", "--n", "8", "--kind", "point-value", "--function", "g1", "--samples", "11"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,value,f,error");
    assert_eq!(lines.len(), 12);
    assert!(lines[11].starts_with("1e0,"));
    for line in &lines[1..] {
        let error: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(error < 1e-4);
    }
    let text = stdout(&["interp", "--n", "4", "--function", "f2", "--samples", "5"]);
    for line in text.lines().skip(1) {
        let error: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(error < 1e-14, "{line}");
    }
}

#[test]
fn interp_from_data_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    fs::write(&data, "vertex_index,deriv_order,value\n0,0,0\n0,1,1\n1,0,2\n1,1,1\n").unwrap();
    let text = stdout(&["interp", "--interval", "0", "2", "--n", "1", "--phi", "constant:2", "--data", data.to_str().unwrap(), "--samples", "3"]);
    assert_eq!(text, "x,value\n0e0,0e0\n1e0,1e0\n2e0,2e0\n");

    fs::write(&data, "vertex_index,deriv_order,value\n0,0,0\n").unwrap();
    let out = run(&["interp", "--n", "1", "--phi", "constant:2", "--data", data.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing entry"));
}

#[test]
fn basis_dump_sums_to_one() {
    let text = stdout(&["basis-dump", "--n", "3", "--samples", "7"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("vertex_index,alpha1,alpha2,x,value"));
    let mut sums = [0.0f64; 7];
    let mut count = 0;
    for (k, line) in lines.enumerate() {
        let value: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        sums[k % 7] += value;
        count += 1;
    }
    assert_eq!(count, 7 * (3 + 4 + 3 + 4));
    assert!(sums.iter().all(|s| (s - 1.0).abs() < 1e-12), "{sums:?}");

    let ordinates = stdout(&["basis-dump", "--n", "1", "--phi", "constant:2", "--ordinates"]);
    assert!(ordinates.starts_with("vertex_index,alpha1,alpha2,piece,k,ordinate\n"));
    assert_eq!(ordinates.lines().count(), 1 + 4 * 2 * 3);
}

#[test]
fn dim_reports_dimension_and_counts() {
    let text = stdout(&["dim", "--n", "4,16"]);
    assert_eq!(text, "n,dimension,differential,point-value,polarization\n4,17,17,9,39\n16,59,59,33,147\n");
}

#[test]
fn rejects_bad_input() {
    for args in [
        vec!["convergence", "--n", "32,16"],
        vec!["convergence", "--phi", "zigzag:3"],
        vec!["convergence", "--function", "h9"],
        vec!["qi", "--n", "8,16"],
        vec!["basis-dump", "--n", "4", "--phi", "constant:1"],
    ] {
        assert!(!run(&args).status.success(), "{args:?}");
    }
}
