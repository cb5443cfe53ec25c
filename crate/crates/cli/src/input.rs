use std::fs;
use std::path::Path;

use drg_core::exactla::parse_rat;
use drg_core::params::ClassicalParameters;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// `D b alpha beta`, whitespace separated.
pub fn read_parameters(path: &Path) -> Result<ClassicalParameters, Failure> {
    let text = read(path)?;
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Failure::input(format!("expected 4 fields `D b alpha beta`, found {}", fields.len())));
    }
    let d: usize = fields[0].parse().map_err(|_| Failure::input(format!("D must be a positive integer, got `{}`", fields[0])))?;
    let b: i64 = fields[1].parse().map_err(|_| Failure::input(format!("b must be an integer, got `{}`", fields[1])))?;
    let alpha = parse_rat(fields[2]).map_err(Failure::from_input)?;
    let beta = parse_rat(fields[3]).map_err(Failure::from_input)?;
    ClassicalParameters::new(d, b, alpha, beta).map_err(Failure::from_input)
}

/// One edge per line; `#` starts a comment.
pub fn read_edges(path: &Path) -> Result<Vec<(String, String)>, Failure> {
    let text = read(path)?;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [u, v] => edges.push((u.to_string(), v.to_string())),
            _ => {
                return Err(Failure::input(format!(
                    "line {}: expected two vertex tokens, found {}",
                    lineno + 1,
                    tokens.len()
                )))
            }
        }
    }
    Ok(edges)
}

pub fn workers() -> Result<usize, Failure> {
    match std::env::var("DRG_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Failure::input(format!("DRG_WORKERS must be a positive integer, got `{v}`"))),
            Ok(n) => Ok(n),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}
