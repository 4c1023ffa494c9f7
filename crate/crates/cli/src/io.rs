//! Matrix file parsing. The format is sixteen whitespace-separated
//! integers with `#` comments; the first comment line doubles as a label.

use std::str::FromStr;

use num_bigint::BigInt;
use toralclass_core::IntMatrix;

use crate::CliError;

#[derive(Debug)]
pub struct MatrixDocument {
    pub matrix: IntMatrix,
    pub label: Option<String>,
    pub source: String,
}

pub fn parse_matrix(text: &str, source: &str) -> Result<MatrixDocument, CliError> {
    let mut tokens: Vec<BigInt> = Vec::new();
    let mut label: Option<String> = None;
    for (lineno, line) in text.lines().enumerate() {
        let (content, comment) = match line.split_once('#') {
            Some((c, rest)) => (c, Some(rest)),
            None => (line, None),
        };
        if let Some(c) = comment {
            let c = c.trim();
            if label.is_none() && !c.is_empty() {
                label = Some(c.to_string());
            }
        }
        // Manual scan so diagnostics carry the 1-based line and column.
        let mut rest = content;
        let mut base = 0usize;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let after = &rest[start..];
            let end = after
                .find(char::is_whitespace)
                .unwrap_or(after.len());
            let tok = &after[..end];
            match BigInt::from_str(tok) {
                Ok(v) => tokens.push(v),
                Err(_) => {
                    return Err(CliError::Usage(format!(
                        "{source}:{}:{}: not an integer: {tok:?}",
                        lineno + 1,
                        base + start + 1
                    )))
                }
            }
            base += start + end;
            rest = &rest[start + end..];
        }
    }
    if tokens.len() != 16 {
        return Err(CliError::Usage(format!(
            "{source}: expected 16 integers, found {}",
            tokens.len()
        )));
    }
    let matrix = IntMatrix::new(4, tokens)
        .map_err(|e| CliError::Usage(format!("{source}: {e}")))?;
    Ok(MatrixDocument {
        matrix,
        label,
        source: source.to_string(),
    })
}

pub fn read_matrix(path: &std::path::Path) -> Result<MatrixDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_matrix(&text, &path.display().to_string())
}
