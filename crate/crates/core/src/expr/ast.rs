use std::fmt;

use crate::series::power;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn apply(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            BinaryOp::Add => lhs + rhs,
            BinaryOp::Sub => lhs - rhs,
            BinaryOp::Mul => lhs * rhs,
            BinaryOp::Div => lhs / rhs,
            BinaryOp::Pow => power(lhs, rhs),
        }
    }

    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Log,
    Log2,
    Log10,
    Sqrt,
    Exp,
    Pow,
    LogLog,
}

impl Function {
    pub const ALL: [Function; 7] = [
        Function::Log,
        Function::Log2,
        Function::Log10,
        Function::Sqrt,
        Function::Exp,
        Function::Pow,
        Function::LogLog,
    ];

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Function::Log => "log",
            Function::Log2 => "log2",
            Function::Log10 => "log10",
            Function::Sqrt => "sqrt",
            Function::Exp => "exp",
            Function::Pow => "pow",
            Function::LogLog => "loglog",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Function::Pow => 2,
            _ => 1,
        }
    }

    fn apply(self, args: &[f64]) -> f64 {
        match self {
            Function::Log => args[0].ln(),
            Function::Log2 => args[0].log2(),
            Function::Log10 => args[0].log10(),
            Function::Sqrt => args[0].sqrt(),
            Function::Exp => args[0].exp(),
            Function::Pow => power(args[0], args[1]),
            Function::LogLog => args[0].ln().ln(),
        }
    }
}

/// Parsed term expression. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Vec<Expr>),
}

impl Expr {
    /// Evaluates at `n`. Non-finite results are returned as they are.
    pub fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => n,
            Expr::Neg(inner) => -inner.eval(n),
            Expr::Binary(op, lhs, rhs) => op.apply(lhs.eval(n), rhs.eval(n)),
            Expr::Call(f, args) => match args.as_slice() {
                [x] => f.apply(&[x.eval(n)]),
                [x, y] => f.apply(&[x.eval(n), y.eval(n)]),
                _ => unreachable!("arity is checked by the parser"),
            },
        }
    }

    pub fn eval_at(&self, n: u64) -> f64 {
        self.eval(n as f64)
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(inner) => 1 + inner.depth(),
            Expr::Binary(_, lhs, rhs) => 1 + lhs.depth().max(rhs.depth()),
            Expr::Call(_, args) => 1 + args.iter().map(Expr::depth).max().unwrap_or(0),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            _ => 5,
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree shape.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.is_sign_negative() => write!(f, "-{}", -c),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => f.write_str("n"),
            Expr::Neg(inner) => write!(f, "-{}", Wrapped(inner, inner.precedence() < 3)),
            Expr::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                let (wrap_l, wrap_r) = if *op == BinaryOp::Pow {
                    (lhs.precedence() <= p, rhs.precedence() < 3)
                } else {
                    (lhs.precedence() < p, rhs.precedence() <= p)
                };
                write!(
                    f,
                    "{}{}{}",
                    Wrapped(lhs, wrap_l),
                    op.symbol(),
                    Wrapped(rhs, wrap_r)
                )
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}
