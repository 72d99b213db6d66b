//! Tokenizer for MiniTalk source text.

use std::fmt;

use super::diag::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keyword {
    Class,
    Extends,
    Trait,
    Vars,
    ClassVars,
    Uses,
    Method,
    ClassMethod,
    SelfKw,
    Super,
}

impl Keyword {
    fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "class" => Keyword::Class,
            "extends" => Keyword::Extends,
            "trait" => Keyword::Trait,
            "vars" => Keyword::Vars,
            "classvars" => Keyword::ClassVars,
            "uses" => Keyword::Uses,
            "method" => Keyword::Method,
            "classmethod" => Keyword::ClassMethod,
            "self" => Keyword::SelfKw,
            "super" => Keyword::Super,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Class => "class",
            Keyword::Extends => "extends",
            Keyword::Trait => "trait",
            Keyword::Vars => "vars",
            Keyword::ClassVars => "classvars",
            Keyword::Uses => "uses",
            Keyword::Method => "method",
            Keyword::ClassMethod => "classmethod",
            Keyword::SelfKw => "self",
            Keyword::Super => "super",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Name(String),
    Keyword(Keyword),
    Number(String),
    /// String literal contents exactly as written between the quotes.
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
    Eq,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Name(n) => f.write_str(n),
            TokenKind::Keyword(k) => f.write_str(k.as_str()),
            TokenKind::Number(n) => f.write_str(n),
            TokenKind::Str(s) => write!(f, "\"{s}\""),
            TokenKind::LBrace => f.write_str("{"),
            TokenKind::RBrace => f.write_str("}"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Semi => f.write_str(";"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Dot => f.write_str("."),
            TokenKind::Eq => f.write_str("="),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub message: String,
    pub pos: Pos,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut lexer = Lexer {
        src,
        chars: src.char_indices().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    loop {
        let tok = lexer.next_token()?;
        let done = tok.kind == TokenKind::Eof;
        tokens.push(tok);
        if done {
            return Ok(tokens);
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<(usize, char)> {
        let (i, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some((i, c))
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map(|&(i, _)| i).unwrap_or(self.src.len())
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, LexError> {
        self.skip_trivia();
        let pos = Pos::new(self.line, self.column);
        let start = self.offset();
        let Some((_, c)) = self.bump() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                pos,
                start,
                end: start,
            });
        };
        let kind = match c {
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ';' => TokenKind::Semi,
            ',' => TokenKind::Comma,
            '.' => TokenKind::Dot,
            '=' => TokenKind::Eq,
            '"' => self.string(pos)?,
            c if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                {
                    return Err(LexError {
                        message: "malformed number".into(),
                        pos,
                    });
                }
                TokenKind::Number(self.src[start..self.offset()].to_string())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.bump();
                }
                let word = &self.src[start..self.offset()];
                match Keyword::from_word(word) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Name(word.to_string()),
                }
            }
            other => {
                return Err(LexError {
                    message: format!("unexpected character {other:?}"),
                    pos,
                })
            }
        };
        Ok(Token {
            kind,
            pos,
            start,
            end: self.offset(),
        })
    }

    fn string(&mut self, pos: Pos) -> Result<TokenKind, LexError> {
        let body_start = self.offset();
        loop {
            match self.bump() {
                None => {
                    return Err(LexError {
                        message: "unterminated string literal".into(),
                        pos,
                    })
                }
                Some((i, '"')) => return Ok(TokenKind::Str(self.src[body_start..i].to_string())),
                Some((_, '\\')) => match self.bump() {
                    Some((_, '"' | '\\')) => {}
                    _ => {
                        return Err(LexError {
                            message: "invalid escape in string literal".into(),
                            pos,
                        })
                    }
                },
                Some(_) => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn comments_and_whitespace_vanish() {
        assert_eq!(
            kinds("self # trailing\n  .log(1)"),
            vec![
                TokenKind::Keyword(Keyword::SelfKw),
                TokenKind::Dot,
                TokenKind::Name("log".into()),
                TokenKind::LParen,
                TokenKind::Number("1".into()),
                TokenKind::RParen,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn string_escapes() {
        assert_eq!(kinds(r#""a\"b\\""#)[0], TokenKind::Str(r#"a\"b\\"#.into()));
        assert!(tokenize(r#""a\n""#).is_err());
        assert!(tokenize("\"open").is_err());
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("class\n  Log").unwrap();
        assert_eq!(toks[0].pos, Pos::new(1, 1));
        assert_eq!(toks[1].pos, Pos::new(2, 3));
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("class A { $ }").unwrap_err();
        assert_eq!(err.pos, Pos::new(1, 11));
        assert!(tokenize("12ab").is_err());
    }
}
