use std::fmt;

/// Prefix operators. Negation and the built-in functions share one layer of
/// the grammar, so they share one node type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    /// Natural logarithm.
    Log,
    Exp,
}

impl UnaryOp {
    /// Looks up a function keyword. Lowercase only.
    pub fn from_function_name(name: &str) -> Option<Self> {
        match name {
            "sin" => Some(UnaryOp::Sin),
            "cos" => Some(UnaryOp::Cos),
            "tan" => Some(UnaryOp::Tan),
            "log" => Some(UnaryOp::Log),
            "exp" => Some(UnaryOp::Exp),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Log => "log",
            UnaryOp::Exp => "exp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

/// Named mathematical constants recognised by the lexer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    E,
    Pi,
}

impl Constant {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "e" => Some(Constant::E),
            "pi" => Some(Constant::Pi),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::E => "e",
            Constant::Pi => "pi",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Constant::E => std::f64::consts::E,
            Constant::Pi => std::f64::consts::PI,
        }
    }
}

/// Abstract syntax tree of an arithmetic expression.
///
/// Trees are immutable once built. `Num` never holds NaN or an infinity when
/// produced by the parser.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// A single lowercase variable such as `x`, `y` or `z`.
    Var(char),
    Const(Constant),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn num(value: f64) -> Self {
        Expr::Num(value)
    }

    pub fn var(name: char) -> Self {
        Expr::Var(name)
    }

    pub fn unary(op: UnaryOp, child: Expr) -> Self {
        Expr::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Expr, right: Expr) -> Self {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Const(_) => 1,
            Expr::Unary(_, child) => 1 + child.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var(_) | Expr::Const(_) => 1,
            Expr::Unary(_, child) => 1 + child.depth(),
            Expr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// Renders `expr` as fully parenthesized source text.
///
/// Every binary node is wrapped in parentheses and every prefix operand is
/// parenthesized, so the output reparses to the same tree regardless of
/// precedence or associativity. Negative `Num` literals have no source form
/// and come back as a negation node.
pub fn unparse(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr);
    out
}

fn write_expr(out: &mut String, expr: &Expr) {
    match expr {
        Expr::Num(v) => {
            // `Display` for f64 is the shortest string that reads back bit-exact.
            if v.is_sign_negative() && *v != 0.0 {
                out.push_str(&format!("(-{})", -v));
            } else {
                out.push_str(&format!("{}", v.abs()));
            }
        }
        Expr::Var(name) => out.push(*name),
        Expr::Const(c) => out.push_str(c.name()),
        Expr::Unary(op, child) => {
            out.push_str(op.symbol());
            if matches!(**child, Expr::Binary(..)) {
                write_expr(out, child);
            } else {
                out.push('(');
                write_expr(out, child);
                out.push(')');
            }
        }
        Expr::Binary(op, l, r) => {
            out.push('(');
            write_expr(out, l);
            out.push_str(op.symbol());
            write_expr(out, r);
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&unparse(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unparse_examples() {
        let e = Expr::binary(
            BinaryOp::Div,
            Expr::binary(BinaryOp::Sub, Expr::var('x'), Expr::var('y')),
            Expr::num(2.0),
        );
        assert_eq!(unparse(&e), "((x-y)/2)");
        assert_eq!(unparse(&Expr::num(5.0)), "5");
        assert_eq!(unparse(&Expr::unary(UnaryOp::Sin, Expr::var('x'))), "sin(x)");
    }

    #[test]
    fn unparse_prefix_operands() {
        let neg_sum = Expr::unary(
            UnaryOp::Neg,
            Expr::binary(BinaryOp::Add, Expr::var('x'), Expr::num(1.0)),
        );
        assert_eq!(unparse(&neg_sum), "-(x+1)");
        let nested = Expr::unary(UnaryOp::Neg, Expr::unary(UnaryOp::Exp, Expr::Const(Constant::Pi)));
        assert_eq!(unparse(&nested), "-(exp(pi))");
    }

    #[test]
    fn unparse_small_and_large_numbers() {
        assert_eq!(unparse(&Expr::num(0.125)), "0.125");
        assert_eq!(unparse(&Expr::num(1e-7)), "0.0000001");
    }

    #[test]
    fn size_and_depth() {
        let e = Expr::binary(BinaryOp::Add, Expr::var('x'), Expr::unary(UnaryOp::Neg, Expr::num(1.0)));
        assert_eq!(e.size(), 4);
        assert_eq!(e.depth(), 3);
    }
}
