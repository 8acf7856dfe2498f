use iqm_cli::csv_out::{config_hash, format_g, render};
use iqm_cli::{dispatch, parse_config};

#[test]
fn format_g_matches_printf() {
    let cases = [
        (0.0, "0"),
        (1.0, "1"),
        (-2.5, "-2.5"),
        (0.1, "0.1"),
        (1.0 / 3.0, "0.333333333333"),
        (2.0f64.sqrt() * 2.0, "2.82842712475"),
        (123456789012.0, "123456789012"),
        (1234567890123.0, "1.23456789012e+12"),
        (0.0001, "0.0001"),
        (0.00001234, "1.234e-05"),
        (1e-300, "1e-300"),
        (f64::INFINITY, "inf"),
        (f64::NEG_INFINITY, "-inf"),
        (f64::NAN, "nan"),
    ];
    for (x, want) in cases {
        assert_eq!(format_g(x), want, "{x}");
    }
}

#[test]
fn hash_depends_on_effective_configuration() {
    let a = parse_config(br#"{"scenario":"bell","eps":0.01}"#).unwrap();
    let b = parse_config(br#"{ "eps" : 0.01, "scenario" : "bell" }"#).unwrap();
    let c = parse_config(br#"{"scenario":"bell","eps":0.02}"#).unwrap();
    assert_eq!(config_hash(&a), config_hash(&b));
    assert_ne!(config_hash(&a), config_hash(&c));
    assert_eq!(config_hash(&a).len(), 64);
    let d = parse_config(br#"{"scenario":"bell","eps":0.01,"out":"x.csv"}"#).unwrap();
    assert_eq!(config_hash(&a), config_hash(&d));
}

#[test]
fn rendered_csv_has_comment_header_and_table() {
    let cfg = parse_config(br#"{"scenario":"bell","eps":0.01,"double":false}"#).unwrap();
    let out = dispatch(&cfg).unwrap();
    assert_eq!(out.exit_code, 0);
    let text = render(&out.result, &cfg);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# iqm "));
    assert_eq!(lines[1], "# scenario bell");
    assert_eq!(lines[2], format!("# config-sha256 {}", config_hash(&cfg)));
    assert!(lines.contains(&"# verdict verdict entangled"));
    let table: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(table.len(), 2);
    let header: Vec<&str> = table[0].split(',').collect();
    let row: Vec<&str> = table[1].split(',').collect();
    assert_eq!(header.len(), row.len());
    assert_eq!(
        row[header.iter().position(|h| *h == "eps").unwrap()],
        "0.01"
    );
    assert_eq!(
        row[header.iter().position(|h| *h == "chsh_hi").unwrap()],
        "2.82842712475"
    );
    assert!(out.summary.contains("verdict=entangled"));
}
