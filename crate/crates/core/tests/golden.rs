use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check(ring: &str, file: &PathBuf) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_idemlift"))
        .args(["list", ring, "--golden"])
        .arg(file)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn stored_families_match() {
    for (ring, file) in [("Z(200){C3}", "z200_c3.json"), ("Z(125){C7}", "z125_c7.json")] {
        let (code, err) = check(ring, &golden(file));
        assert_eq!(code, 0, "{ring}: {err}");
    }
}

#[test]
fn z125_c7_golden_holds_the_lifted_set() {
    let text = std::fs::read_to_string(golden("z125_c7.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let coeffs: Vec<Vec<u64>> = v["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| serde_json::from_value(m["coeffs"].clone()).unwrap())
        .collect();
    assert_eq!(
        coeffs,
        vec![vec![0; 7], vec![1, 0, 0, 0, 0, 0, 0], vec![18; 7], vec![108, 107, 107, 107, 107, 107, 107]]
    );
}

#[test]
fn tampered_golden_is_reported() {
    let text = std::fs::read_to_string(golden("z200_c3.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["members"][3]["coeffs"] = serde_json::json!([1, 2, 3]);
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("z200_c3_tampered.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, err) = check("Z(200){C3}", &path);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}
