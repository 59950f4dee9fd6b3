use super::ast::{BinaryOp, Expr, Function};
use super::lexer::{tokenize, Token, TokenKind};
use super::{ExprError, MAX_DEPTH};

/// Parses a term expression in `n`.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let node = parser.expr(0)?;
    match parser.peek() {
        None => Ok(node.expr),
        Some(tok) => Err(ExprError::Parse {
            pos: tok.pos,
            expected: "an operator or end of input".into(),
        }),
    }
}

struct Node {
    expr: Expr,
    depth: usize,
}

impl Node {
    fn leaf(expr: Expr) -> Node {
        Node { expr, depth: 1 }
    }

    fn checked(expr: Expr, depth: usize) -> Result<Node, ExprError> {
        if depth > MAX_DEPTH {
            Err(ExprError::TooDeep)
        } else {
            Ok(Node { expr, depth })
        }
    }

    fn binary(op: BinaryOp, lhs: Node, rhs: Node) -> Result<Node, ExprError> {
        if let (Expr::Const(a), Expr::Const(b)) = (&lhs.expr, &rhs.expr) {
            return Ok(Node::leaf(Expr::Const(op.apply(*a, *b))));
        }
        let depth = 1 + lhs.depth.max(rhs.depth);
        Node::checked(Expr::Binary(op, Box::new(lhs.expr), Box::new(rhs.expr)), depth)
    }

    fn negate(inner: Node) -> Result<Node, ExprError> {
        if let Expr::Const(c) = inner.expr {
            return Ok(Node::leaf(Expr::Const(-c)));
        }
        Node::checked(Expr::Neg(Box::new(inner.expr)), inner.depth + 1)
    }
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    cursor: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.cursor).copied()
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn bump(&mut self) -> Option<Token<'a>> {
        let tok = self.peek();
        self.cursor += 1;
        tok
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error(&self, expected: &str) -> ExprError {
        ExprError::Parse {
            pos: self.here(),
            expected: expected.into(),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<(), ExprError> {
        if self.peek_kind() == Some(kind) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    // `nesting` counts recursive descents so that pathological input such as
    // a long run of `(` or `-` fails before the call stack grows.
    fn enter(nesting: usize) -> Result<usize, ExprError> {
        if nesting >= MAX_DEPTH {
            Err(ExprError::TooDeep)
        } else {
            Ok(nesting + 1)
        }
    }

    fn expr(&mut self, nesting: usize) -> Result<Node, ExprError> {
        let nesting = Self::enter(nesting)?;
        let mut lhs = self.term(nesting)?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Plus) => BinaryOp::Add,
                Some(TokenKind::Minus) => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.cursor += 1;
            let rhs = self.term(nesting)?;
            lhs = Node::binary(op, lhs, rhs)?;
        }
    }

    fn term(&mut self, nesting: usize) -> Result<Node, ExprError> {
        let mut lhs = self.factor(nesting)?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Star) => BinaryOp::Mul,
                Some(TokenKind::Slash) => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.cursor += 1;
            let rhs = self.factor(nesting)?;
            lhs = Node::binary(op, lhs, rhs)?;
        }
    }

    fn factor(&mut self, nesting: usize) -> Result<Node, ExprError> {
        let nesting = Self::enter(nesting)?;
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.cursor += 1;
            let inner = self.factor(nesting)?;
            return Node::negate(inner);
        }
        let base = self.base(nesting)?;
        if self.peek_kind() == Some(TokenKind::Caret) {
            self.cursor += 1;
            let exponent = self.factor(nesting)?;
            return Node::binary(BinaryOp::Pow, base, exponent);
        }
        Ok(base)
    }

    fn base(&mut self, nesting: usize) -> Result<Node, ExprError> {
        let Some(tok) = self.peek() else {
            return Err(self.error("an expression"));
        };
        match tok.kind {
            TokenKind::Number => {
                self.cursor += 1;
                let value: f64 = tok.text.parse().map_err(|_| ExprError::Lex { pos: tok.pos })?;
                if !value.is_finite() {
                    return Err(ExprError::Lex { pos: tok.pos });
                }
                Ok(Node::leaf(Expr::Const(value)))
            }
            TokenKind::LParen => {
                self.cursor += 1;
                let inner = self.expr(nesting)?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident => {
                self.cursor += 1;
                if self.peek_kind() == Some(TokenKind::LParen) {
                    self.call(tok, nesting)
                } else if tok.text == "n" {
                    Ok(Node::leaf(Expr::Var))
                } else {
                    Err(ExprError::Parse {
                        pos: tok.pos,
                        expected: "the variable `n` or a function call".into(),
                    })
                }
            }
            _ => Err(self.error("an expression")),
        }
    }

    fn call(&mut self, name: Token<'a>, nesting: usize) -> Result<Node, ExprError> {
        let func = Function::from_name(name.text).ok_or_else(|| ExprError::UnknownFunction {
            name: name.text.to_string(),
            pos: name.pos,
        })?;
        self.bump(); // `(`
        let mut args = vec![self.expr(nesting)?];
        while self.peek_kind() == Some(TokenKind::Comma) {
            self.cursor += 1;
            args.push(self.expr(nesting)?);
        }
        self.expect(TokenKind::RParen, "`,` or `)`")?;
        if args.len() != func.arity() {
            return Err(ExprError::Arity {
                name: func.name().to_string(),
                expected: func.arity(),
                found: args.len(),
            });
        }
        let depth = 1 + args.iter().map(|a| a.depth).max().unwrap_or(0);
        Node::checked(Expr::Call(func, args.into_iter().map(|a| a.expr).collect()), depth)
    }
}
