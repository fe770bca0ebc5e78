//! File formats and the `nsfrft` binary.

use nsfrft::apps::KeyMaterial;
use nsfrft::grid::io::{
    read_cgrid, read_cgrid_from, read_png, write_cgrid, write_cgrid_to, write_png_with_sidecar,
    PngSidecar,
};
use nsfrft::grid::{signals, ComplexGrid, Geometry};
use nsfrft::Error;
use std::path::Path;
use std::process::{Command, Output};

fn nsfrft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsfrft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cgrid_file_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let g = Geometry::new(9, 14, 0.37, 0.21).unwrap();
    let f = signals::chirp(&signals::ChirpSpec::f2(), g)
        .zip_map(&signals::g2_signal(g), |a, b| a + b)
        .unwrap();
    let path = dir.path().join("f.cgrid");
    write_cgrid(&path, &f).unwrap();
    let back = read_cgrid(&path).unwrap();
    assert_eq!(back.geometry(), f.geometry());
    for (a, b) in back.values().iter().zip(f.values()) {
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..4], b"CGRD");
    assert_eq!(bytes.len(), 4 + 4 * 3 + 8 * 2 + 16 * 9 * 14);
}

#[test]
fn malformed_cgrid_is_rejected() {
    let f = signals::g1_signal(Geometry::square(4, 0.5));
    let mut buf = Vec::new();
    write_cgrid_to(&mut buf, &f).unwrap();
    let mut bad_magic = buf.clone();
    bad_magic[0] = b'X';
    assert!(matches!(read_cgrid_from(&mut bad_magic.as_slice()), Err(Error::Format(_))));
    let truncated = &buf[..buf.len() - 3];
    assert!(read_cgrid_from(&mut &truncated[..]).is_err());
}

#[test]
fn png_round_trip_through_sidecar_scale() {
    let dir = tempfile::tempdir().unwrap();
    let g = Geometry::square(40, 0.2);
    let gray = signals::g2_signal(g);
    let path = dir.path().join("gray.png");
    let side = write_png_with_sidecar(&path, std::slice::from_ref(&gray)).unwrap();
    let stored: PngSidecar =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gray.png.json")).unwrap())
            .unwrap();
    assert_eq!(stored, side);
    let back = read_png(&path, g.dx, g.dy).unwrap();
    assert_eq!(back.len(), 1);
    for (a, b) in back[0].values().iter().zip(gray.values()) {
        assert!((a.re * side.scale - b.norm()).abs() <= 0.5 / 255.0 * side.scale + 1e-12);
    }

    let rgb: Vec<ComplexGrid> = (0..3)
        .map(|k| signals::hermite_gaussian_2d(k, 1, g).magnitude())
        .collect();
    let path = dir.path().join("rgb.png");
    let side = write_png_with_sidecar(&path, &rgb).unwrap();
    let back = read_png(&path, g.dx, g.dy).unwrap();
    assert_eq!(back.len(), 3);
    for (ch, orig) in back.iter().zip(&rgb) {
        for (a, b) in ch.values().iter().zip(orig.values()) {
            assert!((a.re * side.scale - b.re).abs() <= 0.5 / 255.0 * side.scale + 1e-12);
        }
    }
}

#[test]
fn transform_matches_library_call() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("F.cgrid");
    let res = nsfrft(&[
        "transform", "--gt", "0.7", "--signal", "g2", "--size", "32", "--dx", "0.44",
        "--out", path_str(&out),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(report(&res)["algo"], "fast2");
    let g = Geometry::square(32, 0.44);
    let expect = nsfrft::fast::nsfrft_fast(
        &nsfrft::params::params_from_gt(0.7).unwrap(),
        &signals::g2_signal(g),
        nsfrft::Algorithm::II,
    )
    .unwrap();
    assert_eq!(read_cgrid(&out).unwrap(), expect);
}

#[test]
fn identity_transform_copies_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.cgrid");
    let out = dir.path().join("out.cgrid");
    let f = signals::g1_signal(Geometry::square(16, 0.5));
    write_cgrid(&input, &f).unwrap();
    let res = nsfrft(&[
        "transform", "--params", r#"{"a":1,"b":0,"c":0,"d":0,"theta":0}"#,
        "--in", path_str(&input), "--out", path_str(&out), "--reference", path_str(&input),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(report(&res)["nmse"], 0.0);
    assert_eq!(read_cgrid(&out).unwrap(), f);
}

#[test]
fn encrypt_then_decrypt_recovers_the_image() {
    let dir = tempfile::tempdir().unwrap();
    let g = Geometry::square(48, 0.3);
    let key = dir.path().join("key.json");
    let material = KeyMaterial::standard(g, 7);
    std::fs::write(&key, serde_json::to_string(&material.to_file()).unwrap()).unwrap();
    let plain = dir.path().join("plain.cgrid");
    write_cgrid(&plain, &signals::gaussian_target(g)).unwrap();
    let ct = dir.path().join("ct.cgrid");
    let back = dir.path().join("back.cgrid");
    let enc = nsfrft(&["encrypt", "--key", path_str(&key), "--in", path_str(&plain), "--out", path_str(&ct)]);
    assert!(enc.status.success(), "{}", String::from_utf8_lossy(&enc.stderr));
    let dec = nsfrft(&[
        "decrypt", "--key", path_str(&key), "--in", path_str(&ct), "--out", path_str(&back),
        "--reference", path_str(&plain),
    ]);
    assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
    assert!(report(&dec)["mse"].as_f64().unwrap() < 1e-20);
}

#[test]
fn sweep_emits_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("key.json");
    let material = KeyMaterial::standard(Geometry::square(32, 0.3), 1);
    std::fs::write(&key, serde_json::to_string(&material.to_file()).unwrap()).unwrap();
    let res = nsfrft(&["sweep", "--key", path_str(&key), "--signal", "gauss", "--size", "32", "--dx", "0.3"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = String::from_utf8(res.stdout).unwrap();
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn exit_codes_follow_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.cgrid");
    let code = |args: &[&str]| nsfrft(args).status.code();

    assert_eq!(code(&["transform", "--bogus"]), Some(2));
    assert_eq!(code(&["transform", "--sfrft", "1,2,3", "--signal", "g1", "--size", "8"]), Some(2));
    assert_eq!(code(&["transform", "--gt", "0.4"]), Some(2));
    assert_eq!(code(&["transform", "--params", "{not json", "--signal", "g1", "--size", "8"]), Some(2));
    assert_eq!(code(&["transform", "--gt", "0.4", "--in", path_str(&missing)]), Some(3));
    // a = c = 1/√2 at θ = π/4 makes T vanish.
    let zero_t = format!(
        r#"{{"a":{h},"b":0,"c":{h},"d":0,"theta":{q}}}"#,
        h = std::f64::consts::FRAC_1_SQRT_2,
        q = std::f64::consts::FRAC_PI_4
    );
    assert_eq!(code(&["transform", "--params", &zero_t, "--signal", "g1", "--size", "8"]), Some(4));
}

#[test]
fn separable_shorthand_accepts_negative_first_angle() {
    let res = nsfrft(&["transform", "--sfrft=-0.6,1.1", "--signal", "gauss", "--size", "16"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let expect = nsfrft::params::params_from_sfrft(-0.6, 1.1).unwrap().as_array();
    let got: Vec<f64> = report(&res)["params"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(got, expect);
}
