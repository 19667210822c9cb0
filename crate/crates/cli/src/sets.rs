//! Residue sets on the command line: `0,1,2` or the interval shorthand
//! `start+len` (`0+3` = {0,1,2}).

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetError {
    #[error("cannot parse {0:?} as a residue set")]
    Syntax(String),
    #[error("empty residue set")]
    Empty,
}

/// Residues mod `d`, sorted and deduplicated.
pub fn parse_set(text: &str, d: u32) -> Result<Vec<i64>, SetError> {
    let bad = || SetError::Syntax(text.to_string());
    let raw: Vec<i64> = if let Some((start, len)) = text.split_once('+') {
        let start: i64 = start.trim().parse().map_err(|_| bad())?;
        let len: i64 = len.trim().parse().map_err(|_| bad())?;
        (start..start + len).collect()
    } else {
        text.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    let mut set: Vec<i64> = raw.into_iter().map(|i| i.rem_euclid(i64::from(d))).collect();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(SetError::Empty);
    }
    Ok(set)
}
