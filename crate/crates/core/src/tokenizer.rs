//! Identifier splitting.
//!
//! Boundaries are inserted at delimiter characters (consumed), lower→upper
//! transitions, letter↔digit transitions, and before the final capital of an
//! all-caps run followed by a lowercase letter, so `XMLReader` splits into
//! `xml` + `reader`. A digit run prefixed with `0x` is kept as a single
//! digit token (`mask0xFF` → `mask`, `0xff`).

use crate::error::{Error, Result};
use crate::Scalar;

/// An identifier decomposed into ordered, lowercased word tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    raw: String,
    words: Vec<String>,
}

impl TokenSequence {
    /// The original identifier string.
    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// The normalized word tokens, in identifier order.
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Number of tokens; at least 1 for any accepted identifier.
    pub fn count(&self) -> usize {
        self.words.len()
    }
}

/// Splits a raw identifier into lowercase word tokens.
///
/// Only ASCII input is accepted; every non-alphanumeric ASCII character acts
/// as a delimiter and is consumed. Rejects input without any alphanumeric
/// character.
pub fn split(identifier: &str) -> Result<TokenSequence> {
    if !identifier.is_ascii() {
        return Err(Error::NonAsciiIdentifier(identifier.to_string()));
    }
    let bytes = identifier.as_bytes();
    let mut words = Vec::new();
    let mut i = 0;
    let n = bytes.len();
    while i < n {
        let c = bytes[i];
        if c.is_ascii_digit() {
            let start = i;
            if c == b'0'
                && matches!(bytes.get(i + 1), Some(b'x') | Some(b'X'))
                && bytes.get(i + 2).is_some_and(u8::is_ascii_hexdigit)
            {
                i += 2;
                while i < n && bytes[i].is_ascii_hexdigit() {
                    i += 1;
                }
            } else {
                while i < n && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            words.push(identifier[start..i].to_ascii_lowercase());
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < n && bytes[i].is_ascii_lowercase() {
                i += 1;
            }
            words.push(identifier[start..i].to_string());
        } else if c.is_ascii_uppercase() {
            let start = i;
            let mut run_end = i;
            while run_end < n && bytes[run_end].is_ascii_uppercase() {
                run_end += 1;
            }
            if run_end < n && bytes[run_end].is_ascii_lowercase() {
                if run_end - start >= 2 {
                    // Acronym rule: keep the run except its last capital,
                    // which starts the following word.
                    i = run_end - 1;
                } else {
                    i = run_end;
                    while i < n && bytes[i].is_ascii_lowercase() {
                        i += 1;
                    }
                }
            } else {
                i = run_end;
            }
            words.push(identifier[start..i].to_ascii_lowercase());
        } else {
            // Delimiter: '_', '$', or any other non-alphanumeric ASCII.
            i += 1;
        }
    }
    if words.is_empty() {
        return Err(Error::MalformedIdentifier(identifier.to_string()));
    }
    Ok(TokenSequence {
        raw: identifier.to_string(),
        words,
    })
}

/// Ratio of a 1-based word position to the identifier's token count.
///
/// The final word of any identifier has ratio exactly 1.
pub fn position_ratio<F: Scalar>(index: usize, count: usize) -> Result<F> {
    if index == 0 || index > count {
        return Err(Error::PositionOutOfRange { index, count });
    }
    Ok(crate::count_to_scalar::<F>(index) / crate::count_to_scalar::<F>(count))
}
