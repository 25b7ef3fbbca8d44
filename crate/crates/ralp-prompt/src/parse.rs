//! Parsing of structured LM output.
//!
//! Candidate lists arrive as a `candidates: [a, b, c]` line; score
//! tables as fenced blocks of `name<TAB>score<TAB>rationale` lines with
//! a `name: score` regex fallback for less disciplined outputs.

use regex::Regex;

use crate::PromptError;

/// Extract a candidate name list.
pub fn parse_candidate_list(text: &str) -> Result<Vec<String>, PromptError> {
    // primary: a "candidates: [...]" line (bracket may span lines)
    let lower = text.to_lowercase();
    if let Some(pos) = lower.rfind("candidates:") {
        let after = &text[pos + "candidates:".len()..];
        if let Some(open) = after.find('[') {
            if let Some(close) = after[open..].find(']') {
                let inner = &after[open + 1..open + close];
                return Ok(split_names(inner));
            }
        }
        // bare comma list on the same line
        let line = after.lines().next().unwrap_or("").trim();
        if !line.is_empty() {
            return Ok(split_names(line));
        }
        return Ok(Vec::new());
    }
    // fallback: fenced block with one name per line
    if let Some(block) = fenced_block(text) {
        let names: Vec<String> = block
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.trim_matches(|c| c == '-' || c == '*').trim().to_owned())
            .collect();
        return Ok(names);
    }
    Err(PromptError::OutputParse {
        what: "candidate list".into(),
        raw: text.to_owned(),
    })
}

fn split_names(inner: &str) -> Vec<String> {
    inner
        .split(',')
        .map(|s| s.trim().trim_matches(|c| c == '"' || c == '\'').to_owned())
        .filter(|s| !s.is_empty())
        .collect()
}

fn fenced_block(text: &str) -> Option<&str> {
    let start = text.find("```")?;
    let after = &text[start + 3..];
    // skip an optional language tag on the fence line
    let body_start = after.find('\n')? + 1;
    let body = &after[body_start..];
    let end = body.find("```")?;
    Some(&body[..end])
}

/// Parsed `(name, raw score, rationale)` rows from a scorer response.
pub fn parse_score_lines(text: &str) -> Result<Vec<(String, f64, String)>, PromptError> {
    let mut rows = Vec::new();
    if let Some(block) = fenced_block(text) {
        for line in block.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.splitn(3, '\t');
            let name = parts.next().unwrap_or("").trim();
            let score = parts.next().and_then(|s| parse_number(s.trim()));
            if let (false, Some(score)) = (name.is_empty(), score) {
                let rationale = parts.next().unwrap_or("").trim().to_owned();
                rows.push((name.to_owned(), score, rationale));
            }
        }
    }
    if rows.is_empty() {
        // fallback: "name: score" pairs anywhere in the text
        let re = Regex::new(r"(?m)^\s*[-*]?\s*([^:\n`]+?)\s*:\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*$")
            .expect("static regex");
        for cap in re.captures_iter(text) {
            let name = cap[1].trim().to_owned();
            if let Some(score) = parse_number(&cap[2]) {
                rows.push((name, score, String::new()));
            }
        }
    }
    if rows.is_empty() {
        return Err(PromptError::OutputParse {
            what: "score table".into(),
            raw: text.to_owned(),
        });
    }
    Ok(rows)
}

/// Parse a number, tolerating thousands separators.
pub fn parse_number(token: &str) -> Option<f64> {
    let cleaned: String = token.chars().filter(|&c| c != ',').collect();
    let cleaned = cleaned.trim();
    if cleaned.is_empty()
        || !cleaned
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
    {
        return None;
    }
    cleaned.parse::<f64>().ok().filter(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_bracket_list() {
        assert_eq!(parse_candidate_list("candidates: []").unwrap(), Vec::<String>::new());
    }

    #[test]
    fn bracketed_list_in_emission_order() {
        let got = parse_candidate_list("Reasoning first.\ncandidates: [europe, asia, africa]")
            .unwrap();
        assert_eq!(got, vec!["europe", "asia", "africa"]);
    }

    #[test]
    fn fenced_candidate_lines() {
        let got = parse_candidate_list("```\neurope\nasia\n```").unwrap();
        assert_eq!(got, vec!["europe", "asia"]);
    }

    #[test]
    fn unparseable_candidates_keep_raw_text() {
        let err = parse_candidate_list("no structure here").unwrap_err();
        match err {
            PromptError::OutputParse { raw, .. } => assert!(raw.contains("no structure")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tab_separated_score_block() {
        let text = "Reasoning.\n```\nasia\t0.9\tlandmass\neurope\t0.1\tunlikely\n```";
        let rows = parse_score_lines(text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].0, "asia");
        assert_eq!(rows[0].1, 0.9);
        assert_eq!(rows[1].2, "unlikely");
    }

    #[test]
    fn colon_fallback() {
        let text = "asia: 0.9\neurope: 0.1\n";
        let rows = parse_score_lines(text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], ("europe".to_owned(), 0.1, String::new()));
    }

    #[test]
    fn numbers_tolerate_thousands_separators() {
        assert_eq!(parse_number("14,622,880,885.6842"), Some(14_622_880_885.6842));
        assert_eq!(parse_number("7413"), Some(7413.0));
        assert_eq!(parse_number("x12"), None);
    }
}
