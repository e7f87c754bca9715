//! Distribution and sequence readers for the subcommand inputs.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use fluctus::Distribution;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceFormat {
    /// ASCII '0'/'1' characters, whitespace ignored, K = 2
    Bits,
    /// Raw bytes, K = 256
    Bytes,
    /// Whitespace-separated tokens, resolved via --map or --k
    Tokens,
}

impl SequenceFormat {
    pub fn name(self) -> &'static str {
        match self {
            SequenceFormat::Bits => "bits",
            SequenceFormat::Bytes => "bytes",
            SequenceFormat::Tokens => "tokens",
        }
    }
}

/// A --dist value: tried first as comma-separated probabilities, then
/// as the path of a JSON array file.
pub fn parse_dist(spec: &str) -> Result<Distribution, CliError> {
    let inline: Result<Vec<f64>, _> = spec.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let probs = match inline {
        Ok(probs) => probs,
        Err(_) => {
            let text = fs::read_to_string(spec).map_err(|e| CliError::Io(format!("{spec}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("{spec}: expected a JSON array of probabilities: {e}"))
            })?
        }
    };
    Ok(Distribution::new(probs)?)
}

pub fn read_sequence(
    path: &Path,
    format: SequenceFormat,
    k: Option<usize>,
    map: Option<&Path>,
) -> Result<(Vec<usize>, usize), CliError> {
    if format != SequenceFormat::Tokens && (k.is_some() || map.is_some()) {
        return Err(CliError::Usage(
            "--k and --map only apply to --format tokens".into(),
        ));
    }
    match format {
        SequenceFormat::Bits => {
            let text = read_text(path)?;
            let mut symbols = Vec::with_capacity(text.len());
            for c in text.chars() {
                match c {
                    '0' => symbols.push(0),
                    '1' => symbols.push(1),
                    c if c.is_whitespace() => {}
                    other => {
                        return Err(CliError::Usage(format!(
                            "{}: invalid bit character {other:?}",
                            path.display()
                        )))
                    }
                }
            }
            Ok((symbols, 2))
        }
        SequenceFormat::Bytes => {
            let bytes =
                fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok((bytes.into_iter().map(usize::from).collect(), 256))
        }
        SequenceFormat::Tokens => read_tokens(path, k, map),
    }
}

fn read_tokens(
    path: &Path,
    k: Option<usize>,
    map: Option<&Path>,
) -> Result<(Vec<usize>, usize), CliError> {
    let text = read_text(path)?;
    match (map, k) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--map and --k are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "--format tokens needs either --map or --k".into(),
        )),
        (Some(map_path), None) => {
            let mapping = load_mapping(map_path)?;
            let mut symbols = Vec::new();
            for token in text.split_whitespace() {
                match mapping.get(token) {
                    Some(&index) => symbols.push(index),
                    None => {
                        return Err(CliError::Usage(format!(
                            "{}: token {token:?} not in the mapping",
                            path.display()
                        )))
                    }
                }
            }
            Ok((symbols, mapping.len()))
        }
        (None, Some(k)) => {
            if k == 0 {
                return Err(CliError::Usage("--k must be positive".into()));
            }
            let mut symbols = Vec::new();
            for token in text.split_whitespace() {
                let index: usize = token.parse().map_err(|e| {
                    CliError::Usage(format!("{}: bad symbol index {token:?}: {e}", path.display()))
                })?;
                if index >= k {
                    return Err(CliError::Usage(format!(
                        "{}: symbol index {index} outside alphabet of size {k}",
                        path.display()
                    )));
                }
                symbols.push(index);
            }
            Ok((symbols, k))
        }
    }
}

/// One token per line; the line order fixes the symbol indices.
fn load_mapping(path: &Path) -> Result<HashMap<String, usize>, CliError> {
    let text = read_text(path)?;
    let mut mapping = HashMap::new();
    for (index, line) in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
    {
        if mapping.insert(line.to_string(), index).is_some() {
            return Err(CliError::Usage(format!(
                "{}: duplicate token {line:?}",
                path.display()
            )));
        }
    }
    if mapping.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: empty mapping file",
            path.display()
        )));
    }
    Ok(mapping)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
