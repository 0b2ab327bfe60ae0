//! Text format for truth tables.
//!
//! ```text
//! # optional comment lines
//! n=3
//! 10000000
//! ```
//!
//! The second data line holds `2^n` characters, entry `x = 0` first. Bit `i`
//! of the index `x` is coordinate `i`.

use std::path::Path;

use super::truth_table::{check_n, TruthTable};
use crate::error::{Error, Result};

pub fn parse_truth_table(text: &str) -> Result<TruthTable> {
    let mut n: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        match n {
            None => {
                let value = trimmed.strip_prefix("n=").ok_or_else(|| Error::Parse {
                    offset: start + lead,
                    message: "expected `n=<int>` header".into(),
                })?;
                let parsed = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    offset: start + lead + 2,
                    message: format!("invalid bit count `{value}`"),
                })?;
                check_n(parsed).map_err(|e| Error::Parse {
                    offset: start + lead + 2,
                    message: e.to_string(),
                })?;
                n = Some(parsed);
            }
            Some(n) => {
                let expected = 1usize << n;
                let mut t = TruthTable::zeros(n)?;
                let mut count = 0;
                for (i, ch) in trimmed.char_indices() {
                    let bit = match ch {
                        '0' => false,
                        '1' => true,
                        _ => {
                            return Err(Error::Parse {
                                offset: start + lead + i,
                                message: format!("unexpected character {ch:?}"),
                            })
                        }
                    };
                    if count == expected {
                        return Err(Error::Parse {
                            offset: start + lead + i,
                            message: format!("table longer than 2^{n} = {expected} entries"),
                        });
                    }
                    t.set(count as u64, bit);
                    count += 1;
                }
                if count != expected {
                    return Err(Error::Parse {
                        offset: start + lead + trimmed.len(),
                        message: format!("table has {count} entries, expected {expected}"),
                    });
                }
                trailing_garbage(text, offset)?;
                return Ok(t);
            }
        }
    }
    Err(Error::Parse {
        offset: text.len(),
        message: if n.is_none() {
            "missing `n=` header"
        } else {
            "missing table line"
        }
        .into(),
    })
}

fn trailing_garbage(text: &str, mut offset: usize) -> Result<()> {
    for line in text[offset..].split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            let lead = line.len() - line.trim_start().len();
            return Err(Error::Parse {
                offset: offset + lead,
                message: "unexpected content after table".into(),
            });
        }
        offset += line.len();
    }
    Ok(())
}

pub fn from_file(path: impl AsRef<Path>) -> Result<TruthTable> {
    let text = std::fs::read_to_string(path)?;
    parse_truth_table(&text)
}

pub fn format_truth_table(t: &TruthTable) -> String {
    format!("n={}\n{}\n", t.n(), t.to_bit_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::make_random;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let t = parse_truth_table("# delta\nn=3\n# table\n10000000\n").unwrap();
        assert_eq!(t.to_bit_string(), "10000000");
    }

    #[test]
    fn reports_byte_offsets() {
        let err = parse_truth_table("n=2\n01x1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 6,
                message: "unexpected character 'x'".into()
            }
        );

        let err = parse_truth_table("m=2\n0101\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 0, .. }));

        let err = parse_truth_table("n=2\n010\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 7, .. }));

        let err = parse_truth_table("n=2\n01010\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 8, .. }));

        let err = parse_truth_table("n=2\n0101\n0101\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 9, .. }));

        let err = parse_truth_table("n=40\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }));

        assert!(matches!(
            parse_truth_table("n=2\n"),
            Err(Error::Parse { offset: 4, .. })
        ));
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(n in 1usize..=9, seed in any::<u64>()) {
            let t = make_random(n, seed).unwrap();
            prop_assert_eq!(parse_truth_table(&format_truth_table(&t)).unwrap(), t);
        }
    }
}
