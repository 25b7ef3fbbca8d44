//! Triple file parsing: tab/whitespace separated triples and a minimal
//! N-Triples subset (IRIs and plain/typed literals, no blank nodes).

use std::path::Path;

use super::{KnowledgeGraph, Object, PendingSplit, RelationKind, Split, Triple, Vocabulary};
use crate::error::KgError;

/// On-disk triple formats.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TripleFormat {
    /// One triple per line, tab- or whitespace-separated.
    Tsv,
    /// `<s> <p> <o> .` lines; object may be a quoted literal.
    NTriples,
}

impl std::str::FromStr for TripleFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" | "tsv-triples" => Ok(TripleFormat::Tsv),
            "ntriples" | "nt" => Ok(TripleFormat::NTriples),
            other => Err(format!("unknown triple format `{other}`")),
        }
    }
}

/// Statistics and warnings from loading one split file.
#[derive(Clone, Debug, Default)]
pub struct LoadReport {
    pub path: String,
    /// Lines that parsed into a triple, before deduplication.
    pub parsed_lines: usize,
    /// Triples kept after deduplication.
    pub triples: usize,
    /// Duplicate lines silently collapsed.
    pub duplicates: usize,
    /// Lines rejected in literal mode because the object is not a
    /// float/integer literal.
    pub rejected_non_numeric: usize,
    pub warnings: Vec<String>,
}

/// Load a single split file into its own graph and vocabulary.
///
/// Multi-split datasets should go through
/// [`CorpusBuilder`](super::CorpusBuilder) instead so ids line up across
/// splits.
pub fn load_split(
    path: &Path,
    format: TripleFormat,
    literal_mode: bool,
    split: Split,
) -> Result<(KnowledgeGraph, LoadReport), KgError> {
    let mut vocab = Vocabulary::new();
    let mut pending = PendingSplit::default();
    let report = load_into(&mut vocab, &mut pending, path, format, literal_mode)?;
    let graph = KnowledgeGraph::build(std::sync::Arc::new(vocab), split, pending.triples);
    Ok((graph, report))
}

pub(super) fn load_into(
    vocab: &mut Vocabulary,
    pending: &mut PendingSplit,
    path: &Path,
    format: TripleFormat,
    literal_mode: bool,
) -> Result<LoadReport, KgError> {
    let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut report = LoadReport {
        path: path.display().to_string(),
        ..LoadReport::default()
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| KgError::Parse {
            path: path.display().to_string(),
            line: lineno + 1,
            message,
        };
        let (s, r, o) = match format {
            TripleFormat::Tsv => parse_tsv_line(line).map_err(parse_err)?,
            TripleFormat::NTriples => parse_ntriples_line(line).map_err(parse_err)?,
        };
        report.parsed_lines += 1;

        let triple = if literal_mode {
            let token = match &o {
                RawObject::Plain(t) | RawObject::Literal(t) => t.as_str(),
                RawObject::Iri(_) => {
                    report.rejected_non_numeric += 1;
                    continue;
                }
            };
            match parse_numeric_literal(token) {
                Some(value) => {
                    let subject = vocab.intern_entity(&s);
                    let relation = vocab.intern_relation(&r, RelationKind::Data)?;
                    Triple {
                        subject,
                        relation,
                        object: Object::Literal(value),
                    }
                }
                None => {
                    report.rejected_non_numeric += 1;
                    continue;
                }
            }
        } else {
            let object_token = match &o {
                RawObject::Plain(t) | RawObject::Iri(t) => t.as_str(),
                RawObject::Literal(_) => {
                    return Err(parse_err(
                        "quoted literal object outside literal mode".to_owned(),
                    ))
                }
            };
            let subject = vocab.intern_entity(&s);
            let relation = vocab.intern_relation(&r, RelationKind::Object)?;
            Triple {
                subject,
                relation,
                object: Object::Entity(vocab.intern_entity(object_token)),
            }
        };
        if !pending.push(triple) {
            report.duplicates += 1;
        }
    }
    if report.rejected_non_numeric > 0 {
        report.warnings.push(format!(
            "{}: rejected {} non-numeric literal line(s)",
            report.path, report.rejected_non_numeric
        ));
    }
    report.triples = pending.triples.len();
    Ok(report)
}

enum RawObject {
    /// Bare token from a TSV field.
    Plain(String),
    /// `<iri>` object.
    Iri(String),
    /// Quoted literal's lexical form.
    Literal(String),
}

fn parse_tsv_line(line: &str) -> Result<(String, String, RawObject), String> {
    let fields: Vec<&str> = if line.contains('\t') {
        line.split('\t').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    };
    let fields: Vec<&str> = fields.into_iter().filter(|f| !f.is_empty()).collect();
    if fields.len() != 3 {
        return Err(format!("expected 3 fields, found {}", fields.len()));
    }
    Ok((
        fields[0].to_owned(),
        fields[1].to_owned(),
        RawObject::Plain(fields[2].to_owned()),
    ))
}

fn parse_ntriples_line(line: &str) -> Result<(String, String, RawObject), String> {
    let mut scanner = NtScanner::new(line);
    let s = scanner.iri()?;
    let r = scanner.iri()?;
    let o = scanner.object()?;
    scanner.terminator()?;
    Ok((s, r, o))
}

struct NtScanner<'a> {
    rest: &'a str,
}

impl<'a> NtScanner<'a> {
    fn new(line: &'a str) -> Self {
        Self { rest: line }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn iri(&mut self) -> Result<String, String> {
        self.skip_ws();
        if !self.rest.starts_with('<') {
            if self.rest.starts_with("_:") {
                return Err("blank nodes are not supported".to_owned());
            }
            return Err(format!("expected `<iri>`, found `{}`", excerpt(self.rest)));
        }
        let end = self
            .rest
            .find('>')
            .ok_or_else(|| "unterminated IRI".to_owned())?;
        let iri = self.rest[1..end].to_owned();
        self.rest = &self.rest[end + 1..];
        Ok(iri)
    }

    fn object(&mut self) -> Result<RawObject, String> {
        self.skip_ws();
        if self.rest.starts_with('<') {
            return self.iri().map(RawObject::Iri);
        }
        if self.rest.starts_with("_:") {
            return Err("blank nodes are not supported".to_owned());
        }
        if !self.rest.starts_with('"') {
            return Err(format!(
                "expected IRI or literal object, found `{}`",
                excerpt(self.rest)
            ));
        }
        let mut lexical = String::new();
        let mut chars = self.rest[1..].char_indices();
        let mut end = None;
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => {
                    let (_, escaped) = chars
                        .next()
                        .ok_or_else(|| "dangling escape in literal".to_owned())?;
                    lexical.push(match escaped {
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        other => other,
                    });
                }
                '"' => {
                    end = Some(i);
                    break;
                }
                other => lexical.push(other),
            }
        }
        let end = end.ok_or_else(|| "unterminated literal".to_owned())?;
        self.rest = &self.rest[1 + end + 1..];
        // Optional datatype or language tag; the lexical form is what we keep.
        if let Some(stripped) = self.rest.strip_prefix("^^") {
            self.rest = stripped;
            self.iri()?;
        } else if self.rest.starts_with('@') {
            let stop = self
                .rest
                .find(|c: char| c.is_whitespace())
                .unwrap_or(self.rest.len());
            self.rest = &self.rest[stop..];
        }
        Ok(RawObject::Literal(lexical))
    }

    fn terminator(&mut self) -> Result<(), String> {
        self.skip_ws();
        if let Some(stripped) = self.rest.strip_prefix('.') {
            if stripped.trim().is_empty() {
                return Ok(());
            }
        }
        Err(format!(
            "expected terminating `.`, found `{}`",
            excerpt(self.rest)
        ))
    }
}

fn excerpt(s: &str) -> String {
    s.chars().take(24).collect()
}

/// Accept integer and decimal forms, with an optional exponent. Anything
/// else (dates, strings, inf/nan spellings) is rejected.
pub fn parse_numeric_literal(token: &str) -> Option<f64> {
    let token = token.trim();
    if token.is_empty()
        || !token
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
    {
        return None;
    }
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}
