//! Minimal CSV emission. All values we write are plain numbers or bare
//! identifiers, so quoting never triggers; fields containing a comma,
//! quote, or newline are still escaped per RFC 4180 for safety.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

fn escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut out = String::new();
    writeln!(out, "{}", header.join(",")).unwrap();
    for row in rows {
        let line: Vec<String> = row.iter().map(|f| escape(f)).collect();
        writeln!(out, "{}", line.join(",")).unwrap();
    }
    fs::write(path, out)
}

/// Shortest float representation that round-trips f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    let mut buf = ryu_style(x);
    if buf == "-0" || buf == "-0.0" {
        buf = "0".into();
    }
    buf
}

fn ryu_style(x: f64) -> String {
    // serde_json's float formatting round-trips; reuse it for CSV too so
    // both file formats agree digit-for-digit.
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

/// State table rows in the published 1-based site convention.
pub fn state_rows(rows: &[hewalk::SiteRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.site.to_string(),
                fmt_f64(r.re0),
                fmt_f64(r.im0),
                fmt_f64(r.re1),
                fmt_f64(r.im1),
                fmt_f64(r.prob),
            ]
        })
        .collect()
}

pub const STATE_HEADER: [&str; 6] = ["site", "re0", "im0", "re1", "im1", "prob"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escaping() {
        assert_eq!(escape("plain"), "plain");
        assert_eq!(escape("a,b"), "\"a,b\"");
        assert_eq!(escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn float_formatting_round_trips() {
        for x in [0.1, -2.5e-17, 10.501699999999, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(-0.0), "0");
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(
            &path,
            &["a", "b"],
            &[vec!["1".into(), "2".into()], vec!["3".into(), "4".into()]],
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a,b\n1,2\n3,4\n");
    }
}
