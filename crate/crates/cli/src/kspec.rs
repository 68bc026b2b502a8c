//! `-k` argument: a single value, an inclusive range `a..b`, or a list `a,b,c`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KSpecError {
    Parse(String),
    Even(u32),
    EmptyRange(u32, u32),
}

impl fmt::Display for KSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpecError::Parse(s) => write!(f, "cannot parse k value {s:?}"),
            KSpecError::Even(k) => {
                write!(f, "k must be odd: U_k is trivial for even k (got k = {k})")
            }
            KSpecError::EmptyRange(a, b) => write!(f, "range {a}..{b} contains no odd k"),
        }
    }
}

impl std::error::Error for KSpecError {}

fn parse_one(s: &str) -> Result<u32, KSpecError> {
    s.trim()
        .parse()
        .map_err(|_| KSpecError::Parse(s.to_string()))
}

/// Ascending, deduplicated odd `k` values.
///
/// Ranges skip even values; explicit values must be odd.
pub fn parse_k(spec: &str) -> Result<Vec<u32>, KSpecError> {
    let mut out = Vec::new();
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (parse_one(a)?, parse_one(b.trim_start_matches('='))?);
        out.extend((a..=b).filter(|k| k % 2 == 1));
        if out.is_empty() {
            return Err(KSpecError::EmptyRange(a, b));
        }
    } else {
        for part in spec.split(',') {
            let k = parse_one(part)?;
            if k % 2 == 0 {
                return Err(KSpecError::Even(k));
            }
            out.push(k);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_skip_even() {
        assert_eq!(parse_k("1..7").unwrap(), vec![1, 3, 5, 7]);
        assert_eq!(parse_k("2..6").unwrap(), vec![3, 5]);
        assert_eq!(parse_k("0..=3").unwrap(), vec![1, 3]);
        assert_eq!(parse_k("4..4"), Err(KSpecError::EmptyRange(4, 4)));
    }

    #[test]
    fn lists_reject_even() {
        assert_eq!(parse_k("7,1,3,3").unwrap(), vec![1, 3, 7]);
        assert_eq!(parse_k("5").unwrap(), vec![5]);
        assert_eq!(parse_k("1,4"), Err(KSpecError::Even(4)));
        assert_eq!(parse_k("0"), Err(KSpecError::Even(0)));
        assert!(matches!(parse_k("x"), Err(KSpecError::Parse(_))));
        assert!(parse_k("-3").is_err());
    }

    #[test]
    fn even_message() {
        let msg = parse_k("4").unwrap_err().to_string();
        assert!(msg.starts_with("k must be odd: U_k is trivial for even k"));
    }
}
