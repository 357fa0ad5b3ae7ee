use std::path::Path;
use std::process::{Command, Output};

fn bqg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqg"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn irr_and_fuse_on_s3_twist() {
    let dir = tempfile::tempdir().unwrap();
    let o = bqg(&["irr", "--preset", "s3-twist"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Σ dim² = 36"));
    let irr: serde_json::Value = serde_json::from_str(&read(dir.path().join("irr.json"))).unwrap();
    assert_eq!(irr["sum_dim_squared"], 36);
    assert_eq!(irr["classes"].as_array().unwrap().len(), 12);
    assert_eq!(read(dir.path().join("irr.csv")).lines().count(), 13);

    let o = bqg(&["fuse", "--preset", "s3-twist"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let fusion: serde_json::Value = serde_json::from_str(&read(dir.path().join("fusion.json"))).unwrap();
    assert_eq!(fusion["oracle_diff"].as_array().unwrap().len(), 0);
    assert_eq!(fusion["oracle"], "Haar");
    assert!(read(dir.path().join("fusion.csv")).starts_with("x,y,z,multiplicity\n0,0,0,1\n"));
}

#[test]
fn semidirect_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d5.json");
    std::fs::write(
        &file,
        r#"{"name": "d5", "instance": {"kind": "semidirect", "g": {"kind": "cyclic", "n": 5},
            "lambda": {"kind": "cyclic", "n": 2}, "tau": {"1": [0, 4, 3, 2, 1]}},
            "lengths": {"dual_base": {"kind": "coordinate", "orders": [5]}}}"#,
    )
    .unwrap();
    let f = file.to_str().unwrap();
    for cmd in ["irr", "fuse", "growth"] {
        let o = bqg(&[cmd, "--instance", f], dir.path());
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let irr: serde_json::Value = serde_json::from_str(&read(dir.path().join("irr.json"))).unwrap();
    assert_eq!((irr["order"].as_u64(), irr["sum_dim_squared"].as_u64()), (Some(10), Some(10)));
    // D5: two characters at 0, the 2-dim classes at 1 and 2
    assert_eq!(
        read(dir.path().join("growth_dual.csv")),
        "k,shell_sum,cumulative\n0,2,2\n1,4,6\n2,4,10\n3,0,10\n4,0,10\n5,0,10\n6,0,10\n"
    );
}

#[test]
fn growth_and_rd_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = bqg(&["growth", "--preset", "direct-sum-z2", "--kmax", "8"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        read(dir.path().join("growth.csv")),
        "k,shell_sum,cumulative\n0,1,1\n1,0,1\n2,1,2\n3,0,2\n4,1,3\n5,0,3\n6,1,4\n7,0,4\n8,1,5\n"
    );

    let o = bqg(&["growth", "--preset", "psl2z-twist", "--kmax", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(read(dir.path().join("growth_dual.csv")).starts_with("k,shell_sum,cumulative\n0,2,2\n"));

    let o = bqg(&["rd", "--preset", "s3-twist", "--kmax", "2", "--seed", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rd: serde_json::Value = serde_json::from_str(&read(dir.path().join("rd.json"))).unwrap();
    let shells = rd["shells"].as_array().unwrap();
    assert_eq!(shells.len(), 3);
    for s in shells {
        assert!(s["lower"].as_f64().unwrap() <= s["upper"].as_f64().unwrap() + 1e-9);
    }
    assert!(rd["theta"]["balls"].as_array().unwrap().iter().all(|b| b["holds"] == true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // malformed invocation and instance
    assert_eq!(bqg(&["irr", "--preset", "nope"], d).status.code(), Some(2));
    assert_eq!(bqg(&["irr", "--kmax", "x", "--preset", "s3-twist"], d).status.code(), Some(2));
    assert_eq!(bqg(&["fuse", "--preset", "psl2z-twist"], d).status.code(), Some(2));
    assert_eq!(bqg(&["irr", "--preset", "s3-twist", "--tol", "-1"], d).status.code(), Some(2));
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"instance": {"kind": "cyclic"}}"#).unwrap();
    let o = bqg(&["irr", "--instance", bad.to_str().unwrap()], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    assert_eq!(bqg(&["irr", "--instance", "/nonexistent.json"], d).status.code(), Some(2));

    // an audit failure: a length on Irr(Z3) that Γ does not preserve
    let skew = d.join("skew.json");
    let mut cfg: serde_json::Value =
        serde_json::from_str(include_str!("../presets/s3-twist.json")).unwrap();
    cfg["lengths"]["dual_base"]["values"] = serde_json::json!([0, 1, 2]);
    std::fs::write(&skew, cfg.to_string()).unwrap();
    assert_eq!(bqg(&["growth", "--instance", skew.to_str().unwrap()], d).status.code(), Some(1));

    let help = Command::new(env!("CARGO_BIN_EXE_bqg")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let presets = Command::new(env!("CARGO_BIN_EXE_bqg")).arg("presets").output().unwrap();
    assert_eq!(
        String::from_utf8_lossy(&presets.stdout),
        "z3-semidirect\ns3-twist\npsl2z-twist\ndirect-sum-z2\n"
    );
}
