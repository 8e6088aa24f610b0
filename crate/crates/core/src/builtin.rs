//! Named reference structures.

use crate::error::{Error, Result};
use crate::parse::parse_structure;
use crate::semilattice::JoinSemilattice;
use crate::set::MAX_ELEMENTS;

pub const M2_TEXT: &str = "\
elements: a c top b
covers:
a < c
c < top
b < top
";

pub const M4_TEXT: &str = "\
elements: v a c b top
covers:
v < a
a < c
c < top
v < b
b < top
";

pub const M3_TEXT: &str = "\
elements: bot a b c top
covers:
bot < a
bot < b
bot < c
a < top
b < top
c < top
";

/// Identifiers accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["m2", "m4", "m3", "chain:K", "antichain-top:K"];

fn parameter(name: &str, raw: &str) -> Result<usize> {
    let k: usize = raw
        .parse()
        .map_err(|_| Error::BadParameter(format!("`{raw}` in `{name}` is not a size")))?;
    if k < 1 {
        return Err(Error::BadParameter(format!("`{name}` needs a size of at least 1")));
    }
    Ok(k)
}

/// `m2`, `m4`, `m3` (diamond), `chain:k`, `antichain-top:k`.
pub fn builtin(name: &str) -> Result<JoinSemilattice> {
    match name {
        "m2" => parse_structure(M2_TEXT),
        "m4" => parse_structure(M4_TEXT),
        "m3" => parse_structure(M3_TEXT),
        _ => {
            if let Some(raw) = name.strip_prefix("chain:") {
                let k = parameter(name, raw)?;
                if k > MAX_ELEMENTS {
                    return Err(Error::SizeLimitExceeded { n: k, max: MAX_ELEMENTS });
                }
                let names = (0..k).map(|i| format!("c{i}")).collect();
                let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
                JoinSemilattice::from_covers(names, &covers)
            } else if let Some(raw) = name.strip_prefix("antichain-top:") {
                let k = parameter(name, raw)?;
                if k + 1 > MAX_ELEMENTS {
                    return Err(Error::SizeLimitExceeded {
                        n: k + 1,
                        max: MAX_ELEMENTS,
                    });
                }
                let mut names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
                names.push("top".into());
                let covers: Vec<_> = (0..k).map(|i| (i, k)).collect();
                JoinSemilattice::from_covers(names, &covers)
            } else {
                Err(Error::UnknownBuiltin(name.to_string()))
            }
        }
    }
}
