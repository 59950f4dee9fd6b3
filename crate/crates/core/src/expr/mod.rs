//! Term expressions in the variable `n`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' factor)?
//! base   := number | 'n' | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `log` is the natural logarithm. Powers go through [`crate::series::power`]
//! so an expression and the equivalent catalog entry agree bit for bit.

mod ast;
mod lexer;
mod parser;

use thiserror::Error;

pub use ast::{BinaryOp, Expr, Function};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;

/// Inputs longer than this are rejected before lexing.
pub const MAX_INPUT_LEN: usize = 64 * 1024;
/// Maximum depth of a parsed expression tree.
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unrecognized input at byte {pos}")]
    Lex { pos: usize },

    #[error("parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },

    #[error("unknown function `{name}` at byte {pos}")]
    UnknownFunction { name: String, pos: usize },

    #[error("`{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("expression nests deeper than {MAX_DEPTH} levels")]
    TooDeep,

    #[error("expression is longer than {MAX_INPUT_LEN} bytes")]
    TooLong,
}
