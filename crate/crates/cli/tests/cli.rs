use std::io::Write;
use std::process::{Command, Output, Stdio};

fn pcpl(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pcpl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pcpl");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Payload bits of a frame, header skipped.
fn payload_bits(frame: &[u8]) -> String {
    let bits = u64::from_be_bytes(frame[16..24].try_into().unwrap()) as usize;
    frame[24..]
        .iter()
        .flat_map(|b| {
            (0..8)
                .rev()
                .map(move |k| if b >> k & 1 == 1 { '1' } else { '0' })
        })
        .take(bits)
        .collect()
}

#[test]
fn codebook_code_zero() {
    let out = stdout(&pcpl(
        &[
            "codebook", "--code", "codek:0", "--count", "10", "--format", "csv",
        ],
        b"",
    ));
    let words: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(
        words,
        ["00", "010", "011", "1000", "1001", "10100", "10101", "10110", "10111", "110000"]
    );
}

#[test]
fn golomb_three_payload() {
    let o = pcpl(&["encode", "--code", "golomb:3"], b"1 2 3 4 5\n");
    assert!(o.status.success());
    assert_eq!(&o.stdout[..4], b"PCPL");
    assert_eq!(payload_bits(&o.stdout), "000100111001010");
}

#[test]
fn pipeline_identity() {
    let dir = tempfile::tempdir().unwrap();
    let (src, frame, back) = (
        dir.path().join("in.txt"),
        dir.path().join("f.pcpl"),
        dir.path().join("out.txt"),
    );
    let text = "7 1 1 3\n12 100000 2\n\n18446744073709551615\n";
    std::fs::write(&src, text).unwrap();
    for code in [
        "codek:-1",
        "gamma",
        "omega",
        "levenshtein",
        "yokoo",
        "expgolomb:3",
        "codek:4",
    ] {
        let p = |s: &std::path::Path| s.to_str().unwrap().to_string();
        stdout(&pcpl(
            &[
                "encode",
                "--code",
                code,
                "--in",
                &p(&src),
                "--out",
                &p(&frame),
            ],
            b"",
        ));
        stdout(&pcpl(
            &["decode", "--in", &p(&frame), "--out", &p(&back)],
            b"",
        ));
        let got = std::fs::read_to_string(&back).unwrap();
        let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(norm(&got), norm(text), "{code}");
    }
}

#[test]
fn decode_rejects_other_code() {
    let frame = pcpl(&["encode", "--code", "gamma"], b"1 2 3").stdout;
    let o = pcpl(&["decode", "--code", "delta"], &frame);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_gauss_kuzmin() {
    let out = stdout(&pcpl(
        &["analyze", "--dist", "gauss-kuzmin", "--format", "csv"],
        b"",
    ));
    let row = out
        .lines()
        .find(|l| l.starts_with("gauss-kuzmin,") && l.contains(",codek,"))
        .expect("codek row");
    let f: Vec<&str> = row.split(',').collect();
    assert_eq!(f[3], "-1");
    let (lo, hi): (f64, f64) = (f[4].parse().unwrap(), f[5].parse().unwrap());
    assert!(lo <= 3.472346 && 3.472346 <= hi && hi - lo <= 1e-4);
}

#[test]
fn rational_roundtrip() {
    let frame = pcpl(&["rational-encode", "355/113"], b"").stdout;
    assert_eq!(stdout(&pcpl(&["rational-decode"], &frame)), "355/113\n");
    let bits = stdout(&pcpl(&["rational-encode", "7/3", "--bits"], b""));
    // Code −1 of 3, 2, 3
    assert_eq!(bits.trim(), "10101001010");
}

#[test]
fn exit_codes() {
    assert_eq!(pcpl(&["encode"], b"").status.code(), Some(1));
    assert_eq!(
        pcpl(&["encode", "--code", "nope"], b"").status.code(),
        Some(1)
    );
    assert_eq!(
        pcpl(&["encode", "--code", "gamma"], b"1 x").status.code(),
        Some(2)
    );
    assert_eq!(
        pcpl(&["encode", "--code", "gamma"], b"0").status.code(),
        Some(2)
    );
    assert_eq!(pcpl(&["decode"], b"PCPL").status.code(), Some(2));
    assert_eq!(
        pcpl(&["analyze", "--precision=0"], b"").status.code(),
        Some(2)
    );
    assert_eq!(
        pcpl(
            &["analyze", "--dist", "zeta:3", "--precision", "1e-15"],
            b""
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(pcpl(&["--help"], b"").status.code(), Some(0));
}

#[test]
fn check_reports_smoothness() {
    let out = stdout(&pcpl(&["check", "--code", "codek:-2", "--n", "5000"], b""));
    assert!(out.contains("0-smooth true"), "{out}");
    assert!(out.contains("alphabetic true"));
}
