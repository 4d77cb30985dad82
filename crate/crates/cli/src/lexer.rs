//! Tokenizer for session scripts, with line/column positions.

use crate::ast::Pos;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Colon,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier \"{s}\""),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Equals => write!(f, "'='"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub struct LexError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.message, self.pos)
    }
}

/// Tokenize; `#` and `//` start line comments.
pub fn lex(text: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1usize;
    let mut col = 1usize;
    macro_rules! advance {
        () => {{
            if bytes[i] == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < bytes.len() {
        let c = bytes[i];
        let pos = Pos { line, col };
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => advance!(),
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    advance!();
                }
            }
            b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'/' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    advance!();
                }
            }
            b'(' => {
                out.push(Token {
                    tok: Tok::LParen,
                    pos,
                });
                advance!();
            }
            b')' => {
                out.push(Token {
                    tok: Tok::RParen,
                    pos,
                });
                advance!();
            }
            b'[' => {
                out.push(Token {
                    tok: Tok::LBracket,
                    pos,
                });
                advance!();
            }
            b']' => {
                out.push(Token {
                    tok: Tok::RBracket,
                    pos,
                });
                advance!();
            }
            b',' => {
                out.push(Token {
                    tok: Tok::Comma,
                    pos,
                });
                advance!();
            }
            b';' => {
                out.push(Token {
                    tok: Tok::Semi,
                    pos,
                });
                advance!();
            }
            b'+' => {
                out.push(Token {
                    tok: Tok::Plus,
                    pos,
                });
                advance!();
            }
            b'-' => {
                out.push(Token {
                    tok: Tok::Minus,
                    pos,
                });
                advance!();
            }
            b'*' => {
                out.push(Token {
                    tok: Tok::Star,
                    pos,
                });
                advance!();
            }
            b'/' => {
                out.push(Token {
                    tok: Tok::Slash,
                    pos,
                });
                advance!();
            }
            b'^' => {
                out.push(Token {
                    tok: Tok::Caret,
                    pos,
                });
                advance!();
            }
            b':' => {
                out.push(Token {
                    tok: Tok::Colon,
                    pos,
                });
                advance!();
            }
            b'=' => {
                out.push(Token {
                    tok: Tok::Equals,
                    pos,
                });
                advance!();
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    advance!();
                }
                let text = std::str::from_utf8(&bytes[start..i]).unwrap();
                let n = text.parse().map_err(|_| LexError {
                    message: format!("integer literal \"{text}\" out of range"),
                    pos,
                })?;
                out.push(Token {
                    tok: Tok::Int(n),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    advance!();
                }
                let text = std::str::from_utf8(&bytes[start..i]).unwrap().to_string();
                out.push(Token {
                    tok: Tok::Ident(text),
                    pos,
                });
            }
            other => {
                return Err(LexError {
                    message: format!("unexpected character '{}'", other as char),
                    pos,
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
