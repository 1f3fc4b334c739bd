//! Expression frontend: lexer, recursive-descent parser and syntax tree.
//!
//! The accepted language, after left recursion has been removed:
//!
//! ```text
//! S   <- E1 Rs
//! Rs  <- ("+" | "-") E1 Rs | ε
//! E1  <- E2 Re1
//! Re1 <- ("*" | "/") E2 Re1 | ε
//! E2  <- E3 Re2
//! Re2 <- "^" E3 Re2 | ε
//! E3  <- ("sin" | "cos" | "tan" | "log" | "exp" | "-") T | T
//! T   <- number | identifier | "(" S ")"
//! ```
//!
//! `Rs` and `Re1` fold to the left, `Re2` to the right. Unary minus sits at
//! `E3`, below `^`, so `-x^2` is `(-x)^2`. A prefix operand may itself be a
//! prefix application (`-sin(x)`), which the strict `E3 <- op T` form would
//! reject without changing the meaning of any input it accepts.

mod ast;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{unparse, BinaryOp, Constant, Expr, UnaryOp};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_function};

/// Lexical or syntax error, positioned at a 0-based character offset into the
/// source. Unexpected end of input reports the source length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
    pub expected: Option<String>,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError {
            message: message.into(),
            position,
            expected: None,
        }
    }

    pub(crate) fn expecting(message: impl Into<String>, position: usize, expected: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
            position,
            expected: Some(expected.into()),
        }
    }

    /// Renders the source with a caret under the error position.
    pub fn annotate(&self, source: &str) -> String {
        format!("{}\n{}^", source, " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}
