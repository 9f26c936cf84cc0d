//! Ordered key/value reports with a text and a machine rendering.

use std::fmt::Write as _;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("report line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\n', "\\n")
}

fn unescape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(o) => out.push(o),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `section.key = value`, one entry per line.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {}", escape(v));
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<Report, ReportParseError> {
        let mut r = Report::default();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| ReportParseError { line: i + 1, message: "expected `key = value`".into() })?;
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(ReportParseError { line: i + 1, message: format!("invalid key `{k}`") });
            }
            r.push(k, unescape(v));
        }
        Ok(r)
    }

    /// Entries grouped under their first key segment.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut current = "";
        for (k, v) in &self.entries {
            let (section, rest) = k.split_once('.').unwrap_or(("", k.as_str()));
            if section != current {
                if !current.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "[{section}]");
                current = section;
            }
            let _ = writeln!(out, "  {rest}: {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_round_trip() {
        let mut r = Report::default();
        r.push("a.b", "x = y");
        r.push("a.c", "line\nbreak \\ slash");
        r.push("d.e", 3);
        let back = Report::parse_machine(&r.render_machine()).unwrap();
        assert_eq!(back, r);
        assert!(r.render_text().contains("[a]\n  b: x = y"));
    }
}
