use super::{ExprError, MAX_INPUT_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    pub pos: usize,
}

/// Splits `text` into tokens with maximal munch, skipping ASCII whitespace.
pub fn tokenize(text: &str) -> Result<Vec<Token<'_>>, ExprError> {
    if text.len() > MAX_INPUT_LEN {
        return Err(ExprError::TooLong);
    }
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let kind = match b {
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b',' => TokenKind::Comma,
            b'0'..=b'9' | b'.' => {
                pos = scan_number(bytes, pos).ok_or(ExprError::Lex { pos: start })?;
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text: &text[start..pos],
                    pos: start,
                });
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident,
                    text: &text[start..pos],
                    pos: start,
                });
                continue;
            }
            _ => return Err(ExprError::Lex { pos: start }),
        };
        pos += 1;
        tokens.push(Token {
            kind,
            text: &text[start..pos],
            pos: start,
        });
    }
    Ok(tokens)
}

/// Decimal literal: `digits [. digits] [e [+-] digits]`, where either the
/// integer or the fraction part may be empty but not both. Returns the end
/// offset, or `None` when the literal is malformed.
fn scan_number(bytes: &[u8], start: usize) -> Option<usize> {
    let digits = |mut p: usize| {
        while p < bytes.len() && bytes[p].is_ascii_digit() {
            p += 1;
        }
        p
    };
    let mut pos = digits(start);
    let mut mantissa_digits = pos - start;
    if pos < bytes.len() && bytes[pos] == b'.' {
        let frac_end = digits(pos + 1);
        mantissa_digits += frac_end - pos - 1;
        pos = frac_end;
    }
    if mantissa_digits == 0 {
        return None;
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut p = pos + 1;
        if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
            p += 1;
        }
        let end = digits(p);
        if end == p {
            return None;
        }
        pos = end;
    }
    Some(pos)
}
