//! Text syntax for box complexes.
//!
//! ```
//! use std::collections::HashMap;
//! use tame_measure::dsl;
//! use tame_measure::BoxComplex64;
//!
//! let e = dsl::parse("[0,1] x [0,1] \\ (0,1),(0,1)").unwrap();
//! let set: BoxComplex64 = dsl::evaluate(&e, &HashMap::new()).unwrap();
//! assert_eq!(set.ambient_dim(), 2);
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{IntervalLit, SetExpr};
pub use eval::{evaluate, Definitions};
pub use parser::{is_reserved, parse};

/// Position and expectation of a syntax error.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(src: &str, offset: usize, expected: Vec<String>, found: &str) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = src[line_start..offset].chars().count() + 1;
        ParseError {
            offset,
            line,
            column,
            expected,
            found: found.to_string(),
        }
    }

    /// Re-anchors an error from a substring at `base` inside `src`.
    pub(crate) fn shifted(self, src: &str, base: usize) -> Self {
        ParseError::new(src, base + self.offset, self.expected, &self.found)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected ",
            self.line, self.column
        )?;
        match self.expected.split_last() {
            None => f.write_str("nothing")?,
            Some((last, [])) => f.write_str(last)?,
            Some((last, rest)) => write!(f, "{} or {}", rest.join(", "), last)?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}
