use super::ast::{BinaryOp, Constant, Expr, UnaryOp};
use super::lexer::{tokenize, Token, TokenKind};
use super::ParseError;

/// Parses a token sequence produced by [`tokenize`].
///
/// A single `;` directly before `End` is accepted and ignored.
pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut parser = Parser::new(tokens);

    if matches!(parser.peek().kind, TokenKind::End | TokenKind::Semicolon) {
        return Err(ParseError::expecting(
            "empty expression",
            parser.peek().position,
            "an expression",
        ));
    }

    let expr = parser.sum()?;
    if parser.peek().kind == TokenKind::Semicolon {
        parser.advance();
    }
    let next = parser.peek();
    if next.kind != TokenKind::End {
        return Err(ParseError::expecting(
            format!("unexpected {} '{}' after complete expression", next.kind, next.lexeme),
            next.position,
            "end of input",
        ));
    }
    Ok(expr)
}

/// Tokenizes and parses `source`, with or without a terminating semicolon.
pub fn parse_function(source: &str) -> Result<Expr, ParseError> {
    parse(&tokenize(source)?)
}

struct Parser<'a> {
    tokens: &'a [Token],
    index: usize,
    end: Token,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        // Tolerate a sequence missing its End token.
        let end_pos = tokens.last().map_or(0, |t| t.position + t.lexeme.chars().count());
        Parser {
            tokens,
            index: 0,
            end: Token {
                kind: TokenKind::End,
                lexeme: String::new(),
                position: end_pos,
            },
        }
    }

    fn peek(&self) -> &Token {
        self.tokens.get(self.index).unwrap_or(&self.end)
    }

    fn advance(&mut self) -> &Token {
        let i = self.index;
        if i < self.tokens.len() {
            self.index += 1;
        }
        self.tokens.get(i).unwrap_or(&self.end)
    }

    // S <- E1 Rs
    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.product()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(left),
            };
            self.advance();
            let right = self.product()?;
            left = Expr::binary(op, left, right);
        }
    }

    // E1 <- E2 Re1
    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.power()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(left),
            };
            self.advance();
            let right = self.power()?;
            left = Expr::binary(op, left, right);
        }
    }

    // E2 <- E3 Re2, Re2 <- "^" E3 Re2: the tail nests to the right.
    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.prefix()?;
        if self.peek().kind == TokenKind::Caret {
            self.advance();
            let exponent = self.power()?;
            return Ok(Expr::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    // E3 <- op T | T
    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek();
        let op = match tok.kind {
            TokenKind::Minus => UnaryOp::Neg,
            TokenKind::Func => UnaryOp::from_function_name(&tok.lexeme).expect("lexer only emits known function names"),
            _ => return self.term(),
        };
        self.advance();
        let operand = match self.peek().kind {
            TokenKind::Minus | TokenKind::Func => self.prefix()?,
            _ => self.term()?,
        };
        Ok(Expr::unary(op, operand))
    }

    // T <- number | identifier | "(" S ")"
    fn term(&mut self) -> Result<Expr, ParseError> {
        let tok = self.advance().clone();
        match tok.kind {
            TokenKind::Number => {
                let value: f64 = tok
                    .lexeme
                    .parse()
                    .map_err(|_| ParseError::new(format!("malformed number '{}'", tok.lexeme), tok.position))?;
                if !value.is_finite() {
                    return Err(ParseError::new(
                        format!("number '{}' is out of range", tok.lexeme),
                        tok.position,
                    ));
                }
                Ok(Expr::Num(value))
            }
            TokenKind::Ident => Ok(match Constant::from_name(&tok.lexeme) {
                Some(c) => Expr::Const(c),
                None => {
                    let mut chars = tok.lexeme.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => Expr::Var(c),
                        _ => {
                            return Err(ParseError::new(
                                format!("invalid identifier '{}'", tok.lexeme),
                                tok.position,
                            ))
                        }
                    }
                }
            }),
            TokenKind::LParen => {
                let inner = self.sum()?;
                let close = self.peek();
                if close.kind != TokenKind::RParen {
                    let message = if close.kind == TokenKind::End {
                        "expected ')' at end of input".to_string()
                    } else {
                        format!("expected ')' but found {} '{}'", close.kind, close.lexeme)
                    };
                    return Err(ParseError::expecting(message, close.position, "')'"));
                }
                self.advance();
                Ok(inner)
            }
            TokenKind::End => Err(ParseError::expecting(
                "unexpected end of input",
                tok.position,
                "a number, variable or '('",
            )),
            _ => Err(ParseError::expecting(
                format!("unexpected {} '{}'", tok.kind, tok.lexeme),
                tok.position,
                "a number, variable or '('",
            )),
        }
    }
}
