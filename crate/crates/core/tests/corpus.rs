use std::io::Write;

use ortega::corpus::{
    load_corpus, load_corpus_from, parse_corpus, verify_all, verify_section2, Section, Status,
    EMBEDDED_CORPUS,
};
use ortega::rational::FractionText;
use ortega::Error;

/// Field positions holding fraction text, per record kind.
fn fraction_fields(kind: &str) -> &'static [usize] {
    match kind {
        "entry" => &[3, 4, 5, 6],
        "chuquet" => &[2, 3],
        "scaling" => &[2, 4],
        "row" => &[2, 3, 4],
        _ => &[],
    }
}

#[test]
fn every_fraction_round_trips_byte_identically() {
    let mut seen = 0;
    for line in EMBEDDED_CORPUS.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('|').collect();
        for &i in fraction_fields(fields[0]) {
            let parsed: FractionText = fields[i].parse().unwrap();
            assert_eq!(parsed.to_string(), fields[i], "line: {line}");
            seen += 1;
        }
    }
    // 16 entries, 12 Chuquet rows, one scaling record, 463 table rows.
    assert!(seen > 1000, "{seen}");
}

#[test]
fn pristine_corpus_verifies() {
    let corpus = load_corpus().unwrap();
    let report = verify_all(&corpus);
    assert_eq!(report.count(Status::Mismatch), 0, "{}", report.render_text());
    let errata: Vec<_> = report
        .findings
        .iter()
        .filter(|f| f.status == Status::KnownErratum)
        .map(|f| f.location.as_str())
        .collect();
    assert_eq!(errata, ["n=5 upper", "n=12 upper"]);
    assert!(report
        .render_text()
        .ends_with("2 known errata, 0 mismatches\n"));
}

#[test]
fn section2_covers_sixteen_entries() {
    let corpus = load_corpus().unwrap();
    let report = verify_section2(&corpus);
    let mut ids: Vec<_> = report.findings.iter().map(|f| f.location.clone()).collect();
    ids.dedup();
    assert_eq!(ids.len(), 16);
    assert!(report.findings.iter().all(|f| f.section == Section::Section2));
}

#[test]
fn perturbed_file_reports_a_mismatch() {
    let text = EMBEDDED_CORPUS.replace(
        "entry|2|80|8+16/17|16/289|8+17/18|-1/324|",
        "entry|2|80|8+16/17|16/289|8+17/18|-1/325|",
    );
    assert_ne!(text, EMBEDDED_CORPUS);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    let corpus = load_corpus_from(file.path()).unwrap();
    let report = verify_all(&corpus);
    let bad: Vec<_> = report
        .mismatches()
        .map(|f| (f.location.as_str(), f.check.as_str()))
        .collect();
    assert_eq!(bad, [("id 2", "col2 remainder")]);
}

#[test]
fn malformed_corpus_names_its_line() {
    let text = EMBEDDED_CORPUS.replacen("row|2|", "row|two|", 1);
    let line = text.lines().position(|l| l.starts_with("row|two|")).unwrap() + 1;
    match parse_corpus(&text) {
        Err(Error::Corpus { line: got, .. }) => assert_eq!(got, line),
        other => panic!("expected a corpus error, got {other:?}"),
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_corpus_from(std::path::Path::new("/nonexistent/corpus.txt")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}
