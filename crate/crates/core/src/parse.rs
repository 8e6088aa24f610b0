//! Reader for the structure file format:
//!
//! ```text
//! # comment
//! elements: a c top b
//! covers:
//! a < c
//! c < top
//! b < top
//! ```

use std::collections::HashMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semilattice::JoinSemilattice;

#[derive(PartialEq)]
enum Section {
    Start,
    Elements,
    Covers,
}

/// Parses and validates a join semilattice. The order is the
/// reflexive-transitive closure of the declared covers.
pub fn parse_structure(text: &str) -> Result<JoinSemilattice> {
    let mut section = Section::Start;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut covers = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if section != Section::Start {
                return Err(Error::Syntax {
                    line: line_no,
                    message: "repeated `elements:` directive".into(),
                });
            }
            for name in rest.split_whitespace() {
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(Error::DuplicateElement {
                        name: name.to_string(),
                        line: Some(line_no),
                    });
                }
                names.push(name.to_string());
            }
            section = Section::Elements;
        } else if let Some(rest) = line.strip_prefix("covers:") {
            match section {
                Section::Start => {
                    return Err(Error::Syntax {
                        line: line_no,
                        message: "`covers:` before `elements:`".into(),
                    })
                }
                Section::Covers => {
                    return Err(Error::Syntax {
                        line: line_no,
                        message: "repeated `covers:` directive".into(),
                    })
                }
                Section::Elements => {}
            }
            if !rest.trim().is_empty() {
                return Err(Error::Syntax {
                    line: line_no,
                    message: "cover pairs go on the lines after `covers:`".into(),
                });
            }
            section = Section::Covers;
        } else if section == Section::Covers && !line.contains(':') {
            let (lo, hi) = line.split_once('<').ok_or_else(|| Error::Syntax {
                line: line_no,
                message: format!("expected `<lower> < <upper>`, got `{line}`"),
            })?;
            let (lo, hi) = (lo.trim(), hi.trim());
            if lo.is_empty()
                || hi.is_empty()
                || lo.contains(char::is_whitespace)
                || hi.contains(char::is_whitespace)
                || hi.contains('<')
            {
                return Err(Error::Syntax {
                    line: line_no,
                    message: format!("expected `<lower> < <upper>`, got `{line}`"),
                });
            }
            let lookup = |name: &str| {
                index.get(name).copied().ok_or_else(|| Error::UnknownElement {
                    name: name.to_string(),
                    line: Some(line_no),
                })
            };
            covers.push((lookup(lo)?, lookup(hi)?));
        } else if let Some((directive, _)) = line.split_once(':') {
            return Err(Error::UnknownDirective {
                directive: directive.trim().to_string(),
                line: line_no,
            });
        } else {
            return Err(Error::Syntax {
                line: line_no,
                message: format!("unexpected line `{line}`"),
            });
        }
    }

    if names.is_empty() {
        return Err(Error::EmptyStructure);
    }
    JoinSemilattice::from_covers(names, &covers)
}

impl FromStr for JoinSemilattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_structure(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M2: &str = "elements: a c top b\ncovers:\na < c\nc < top\nb < top\n";

    #[test]
    fn parses_m2() {
        let s = parse_structure(M2).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.names(), &["a", "c", "top", "b"]);
        assert_eq!(s.name(s.top()), "top");
        assert!(s.leq(0, 2));
        assert!(s.incomparable(0, 3));
    }

    #[test]
    fn singleton_without_covers() {
        let s = parse_structure("# one point\nelements: x\ncovers:\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.top(), 0);
        let s = parse_structure("elements: x").unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn antichain_reports_pair() {
        let err = parse_structure("elements: a b\ncovers:\n").unwrap_err();
        assert_eq!(
            err,
            Error::NotAJoinSemilattice {
                a: "a".into(),
                b: "b".into()
            }
        );
    }

    #[test]
    fn error_paths() {
        assert_eq!(parse_structure(""), Err(Error::EmptyStructure));
        assert_eq!(parse_structure("elements:\ncovers:\n"), Err(Error::EmptyStructure));
        assert_eq!(
            parse_structure("elements: a a"),
            Err(Error::DuplicateElement {
                name: "a".into(),
                line: Some(1)
            })
        );
        assert_eq!(
            parse_structure("elements: a b\ncovers:\na < z\n"),
            Err(Error::UnknownElement {
                name: "z".into(),
                line: Some(3)
            })
        );
        assert!(matches!(
            parse_structure("elements: a b\ncovers:\na < b\nb < a\n"),
            Err(Error::CycleDetected { .. })
        ));
        assert_eq!(
            parse_structure("elements: a\nmeets:\n"),
            Err(Error::UnknownDirective {
                directive: "meets".into(),
                line: 2
            })
        );
        assert!(matches!(
            parse_structure("elements: a b\ncovers:\na b\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_structure("covers:\nelements: a\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn error_messages_carry_line_numbers() {
        let err = parse_structure("elements: a b\ncovers:\na < q\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: unknown element `q`");
    }
}
