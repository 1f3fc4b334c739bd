use std::fmt;

use super::ast::{Constant, UnaryOp};
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Number,
    Ident,
    Func,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semicolon,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Number => "number",
            TokenKind::Ident => "identifier",
            TokenKind::Func => "function",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Semicolon => "';'",
            TokenKind::End => "end of input",
        };
        f.pad(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 0-based character offset of the first character.
    pub position: usize,
}

impl Token {
    fn new(kind: TokenKind, lexeme: impl Into<String>, position: usize) -> Self {
        Token {
            kind,
            lexeme: lexeme.into(),
            position,
        }
    }
}

/// Splits `source` into tokens, skipping whitespace. The result always ends
/// with a single `End` token positioned at the source length.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;

    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ';' => Some(TokenKind::Semicolon),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token::new(kind, c, pos));
            pos += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let end = scan_number(&chars, pos)?;
            tokens.push(Token::new(
                TokenKind::Number,
                chars[pos..end].iter().collect::<String>(),
                pos,
            ));
            pos = end;
        } else if c.is_ascii_alphabetic() {
            let end = chars[pos..]
                .iter()
                .position(|ch| !ch.is_ascii_alphabetic())
                .map_or(chars.len(), |n| pos + n);
            let word: String = chars[pos..end].iter().collect();
            tokens.push(classify_word(word, pos)?);
            pos = end;
        } else {
            return Err(ParseError::new(format!("unexpected character '{c}'"), pos));
        }
    }

    tokens.push(Token::new(TokenKind::End, "", chars.len()));
    Ok(tokens)
}

/// Returns the end offset of the number literal starting at `start`.
fn scan_number(chars: &[char], start: usize) -> Result<usize, ParseError> {
    let digits_from = |mut i: usize| {
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        i
    };

    let int_end = digits_from(start);
    let mut end = int_end;
    let mut well_formed = int_end > start;

    if end < chars.len() && chars[end] == '.' {
        let frac_end = digits_from(end + 1);
        well_formed &= frac_end > end + 1;
        end = frac_end;
    }

    // An exponent needs at least one digit, otherwise the `e` belongs to the
    // next token (and `2e` is then rejected by the parser, not here).
    if well_formed && end < chars.len() && matches!(chars[end], 'e' | 'E') {
        let mut i = end + 1;
        if i < chars.len() && matches!(chars[i], '+' | '-') {
            i += 1;
        }
        let exp_end = digits_from(i);
        if exp_end > i {
            end = exp_end;
        }
    }

    let runs_on = end < chars.len() && (chars[end] == '.' || chars[end].is_ascii_digit());
    if !well_formed || runs_on {
        let mut bad_end = end;
        while bad_end < chars.len() && (chars[bad_end].is_ascii_digit() || chars[bad_end] == '.') {
            bad_end += 1;
        }
        let text: String = chars[start..bad_end].iter().collect();
        return Err(ParseError::new(format!("malformed number '{text}'"), start));
    }

    let text: String = chars[start..end].iter().collect();
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(end),
        _ => Err(ParseError::new(format!("number '{text}' is out of range"), start)),
    }
}

fn classify_word(word: String, pos: usize) -> Result<Token, ParseError> {
    if UnaryOp::from_function_name(&word).is_some() {
        return Ok(Token::new(TokenKind::Func, word, pos));
    }
    if Constant::from_name(&word).is_some() {
        return Ok(Token::new(TokenKind::Ident, word, pos));
    }
    let mut it = word.chars();
    match (it.next(), it.next()) {
        (Some(c), None) if c.is_ascii_lowercase() => Ok(Token::new(TokenKind::Ident, word, pos)),
        _ => Err(ParseError::expecting(
            format!("unknown name '{word}'"),
            pos,
            "a single lowercase variable, e, pi, or one of sin cos tan log exp",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn tokenizes_first_order_input() {
        let toks = tokenize("(x-y)/2;").unwrap();
        let got: Vec<_> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
        assert_eq!(
            got,
            vec![
                (LParen, "("),
                (Ident, "x"),
                (Minus, "-"),
                (Ident, "y"),
                (RParen, ")"),
                (Slash, "/"),
                (Number, "2"),
                (Semicolon, ";"),
                (End, ""),
            ]
        );
        let positions: Vec<_> = toks.iter().map(|t| t.position).collect();
        assert_eq!(positions, vec![0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn empty_input_is_just_end() {
        assert_eq!(kinds(""), vec![End]);
        assert_eq!(kinds("   "), vec![End]);
        assert_eq!(tokenize("  ").unwrap()[0].position, 2);
    }

    #[test]
    fn function_call() {
        let toks = tokenize("sin(x)").unwrap();
        assert_eq!(toks[0].kind, Func);
        assert_eq!(toks[0].lexeme, "sin");
        assert_eq!(kinds("sin(x)"), vec![Func, LParen, Ident, RParen, End]);
    }

    #[test]
    fn rejects_symbols_outside_alphabet() {
        let err = tokenize("2 @ 3").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(tokenize("x & y").unwrap_err().position, 2);
    }

    #[test]
    fn rejects_malformed_numbers() {
        let err = tokenize("1.2.3").unwrap_err();
        assert_eq!(err.position, 0);
        assert!(err.message.contains("1.2.3"), "{}", err.message);
        assert!(tokenize("x+1.").is_err());
        assert!(tokenize(".5").is_err());
        assert!(tokenize("1e999").is_err());
    }

    #[test]
    fn number_forms() {
        for src in ["0", "12", "3.25", "1e3", "1.5E-2", "2e+4"] {
            let toks = tokenize(src).unwrap();
            assert_eq!(toks.len(), 2, "{src}");
            assert_eq!(toks[0].kind, Number);
            assert_eq!(toks[0].lexeme, src);
        }
        // `e` without exponent digits is the constant.
        assert_eq!(kinds("2e"), vec![Number, Ident, End]);
        assert_eq!(kinds("2e-x"), vec![Number, Ident, Minus, Ident, End]);
    }

    #[test]
    fn names_are_case_sensitive() {
        assert!(tokenize("Sin(x)").is_err());
        assert!(tokenize("X").is_err());
        assert!(tokenize("xy").is_err());
        assert_eq!(kinds("pi*e"), vec![Ident, Star, Ident, End]);
        assert_eq!(kinds("exp(z)"), vec![Func, LParen, Ident, RParen, End]);
    }

    #[test]
    fn positions_are_character_offsets() {
        let toks = tokenize("  x +\t12 ").unwrap();
        let positions: Vec<_> = toks.iter().map(|t| t.position).collect();
        assert_eq!(positions, vec![2, 4, 6, 9]);
    }
}
