//! Recursive descent parser for session scripts.

use crate::ast::{Arg, Expr, FieldSpec, Pos, Script, Stmt};
use crate::lexer::{lex, Tok, Token};
use std::fmt;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.message)
    }
}

pub fn parse_session(text: &str) -> Result<Script, ParseError> {
    let tokens = lex(text).map_err(|e| ParseError {
        message: e.message,
        pos: e.pos,
    })?;
    let mut p = Parser { tokens, at: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Script { stmts })
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].tok.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == &want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn err(&self, message: String) -> ParseError {
        ParseError {
            message,
            pos: self.pos(),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.err(format!("expected identifier, found {other}"))),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            other => Err(self.err(format!("expected integer, found {other}"))),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        let keyword = self.ident()?;
        match keyword.as_str() {
            "ring" => self.ring_stmt(pos),
            "module" => self.module_stmt(pos),
            "compute" => self.compute_stmt(pos),
            "verify" => self.verify_stmt(pos),
            other => Err(ParseError {
                message: format!(
                    "expected \"ring\", \"module\", \"compute\" or \"verify\", found \"{other}\""
                ),
                pos,
            }),
        }
    }

    fn ring_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        let name = self.ident()?;
        self.expect(Tok::Equals)?;
        let field = match self.ident()?.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.expect(Tok::LParen)?;
                let p = self.integer()?;
                self.expect(Tok::RParen)?;
                if p < 2 {
                    return Err(self.err("prime field modulus must be at least 2".into()));
                }
                FieldSpec::Prime(p as u64)
            }
            other => {
                return Err(self.err(format!(
                    "expected field \"QQ\" or \"GF(p)\", found \"{other}\""
                )))
            }
        };
        self.expect(Tok::LBracket)?;
        let mut vars = Vec::new();
        loop {
            let v = self.ident()?;
            let w = if self.peek() == &Tok::Colon {
                self.bump();
                let w = self.integer()?;
                if w < 1 {
                    return Err(self.err("variable weights must be positive".into()));
                }
                w as u32
            } else {
                1
            };
            vars.push((v, w));
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        let quotient = if self.peek() == &Tok::Slash {
            self.bump();
            self.expect(Tok::LParen)?;
            let mut gens = vec![self.expr()?];
            while self.peek() == &Tok::Comma {
                self.bump();
                gens.push(self.expr()?);
            }
            self.expect(Tok::RParen)?;
            Some(gens)
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        Ok(Stmt::Ring {
            name,
            field,
            vars,
            quotient,
            pos,
        })
    }

    fn module_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        let name = self.ident()?;
        self.expect(Tok::Equals)?;
        let head = self.ident()?;
        if head == "coker" {
            let ring = self.ident()?;
            self.expect(Tok::LBracket)?;
            let mut rows = Vec::new();
            loop {
                self.expect(Tok::LBracket)?;
                let mut row = vec![self.expr()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    row.push(self.expr()?);
                }
                self.expect(Tok::RBracket)?;
                rows.push(row);
                if self.peek() == &Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RBracket)?;
            let degrees = if matches!(self.peek(), Tok::Ident(s) if s == "degrees") {
                self.bump();
                self.expect(Tok::LParen)?;
                let mut d = vec![self.integer()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    d.push(self.integer()?);
                }
                self.expect(Tok::RParen)?;
                Some(d)
            } else {
                None
            };
            self.expect(Tok::Semi)?;
            Ok(Stmt::ModuleCoker {
                name,
                ring,
                rows,
                degrees,
                pos,
            })
        } else {
            let ring = head;
            self.expect(Tok::Slash)?;
            self.expect(Tok::LParen)?;
            let mut entries = vec![self.expr()?];
            while self.peek() == &Tok::Comma {
                self.bump();
                entries.push(self.expr()?);
            }
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
            let ideal = if entries.len() == 1 {
                entries.into_iter().next().unwrap()
            } else {
                Expr::List(entries)
            };
            Ok(Stmt::ModuleQuotient {
                name,
                ring,
                ideal,
                pos,
            })
        }
    }

    fn compute_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        let op = self.ident()?;
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.peek() != &Tok::RParen {
            loop {
                match self.peek().clone() {
                    Tok::Int(_) | Tok::Minus => args.push(Arg::Int(self.integer()?)),
                    Tok::Ident(s) => {
                        self.bump();
                        args.push(Arg::Name(s));
                    }
                    other => return Err(self.err(format!("expected argument, found {other}"))),
                }
                if self.peek() == &Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Stmt::Compute { op, args, pos })
    }

    fn verify_stmt(&mut self, pos: Pos) -> Result<Stmt, ParseError> {
        let mut suite = self.ident()?;
        // suite names may contain '-': lexed as Ident Minus Ident
        while self.peek() == &Tok::Minus {
            self.bump();
            suite.push('-');
            suite.push_str(&self.ident()?);
        }
        let mut opts = Vec::new();
        while let Tok::Ident(key) = self.peek().clone() {
            self.bump();
            self.expect(Tok::Equals)?;
            opts.push((key, self.integer()?));
        }
        self.expect(Tok::Semi)?;
        Ok(Stmt::Verify { suite, opts, pos })
    }

    // ---- expressions ----

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.peek() == &Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == &Tok::Star {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Caret {
            self.bump();
            let n = self.integer()?;
            if n < 0 {
                return Err(self.err("negative exponent".into()));
            }
            return Ok(Expr::Pow(Box::new(base), n as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.peek() == &Tok::Slash {
                    // lookahead: rational literal only when followed by an integer
                    if let Tok::Int(_) = self.tokens[self.at + 1].tok {
                        self.bump();
                        let q = self.integer()?;
                        if q == 0 {
                            return Err(self.err("zero denominator".into()));
                        }
                        return Ok(Expr::Ratio(n, q));
                    }
                }
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(s, pos))
            }
            Tok::LParen => {
                self.bump();
                let mut entries = vec![self.expr()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    entries.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                if entries.len() == 1 {
                    Ok(Expr::Paren(Box::new(entries.into_iter().next().unwrap())))
                } else {
                    Ok(Expr::List(entries))
                }
            }
            other => Err(self.err(format!("expected expression, found {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_running_session() {
        let src = "ring R = QQ[x,y,z]; module M = R/(y^2,z^2); \
                   module N = R/((x)*(x,y,z)); compute xi(1,M,N);";
        let script = parse_session(src).unwrap();
        assert_eq!(script.stmts.len(), 4);
        match &script.stmts[2] {
            Stmt::ModuleQuotient { ideal, .. } => {
                assert!(matches!(ideal, Expr::Mul(_, _)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_semicolon_reports_end_of_input() {
        let err = parse_session("compute xi(1,M,N)").unwrap_err();
        assert!(err.message.contains("';'"), "{}", err.message);
        assert!(err.message.contains("end of input"), "{}", err.message);
    }

    #[test]
    fn positions_are_tracked() {
        let err = parse_session("ring R = QQ[x,y];\nmodule M = R/(x +);").unwrap_err();
        assert_eq!(err.pos.line, 2);
    }

    #[test]
    fn verify_suite_names_with_dashes() {
        let script = parse_session("verify theorem-a trials=5 seed=3;").unwrap();
        match &script.stmts[0] {
            Stmt::Verify { suite, opts, .. } => {
                assert_eq!(suite, "theorem-a");
                assert_eq!(opts.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pretty_print_roundtrip() {
        let src = "ring R = QQ[x,y,z]/(x^2 - y*z);\n\
                   module M = R/((x)*(x,y,z) + (y^3));\n\
                   module C = coker R [[x, y], [0, z]] degrees (0, 1);\n\
                   compute chan(M, M);\n\
                   verify chan trials=10 seed=7;\n";
        let script = parse_session(src).unwrap();
        let printed = script.to_string();
        let reparsed = parse_session(&printed).unwrap();
        assert_eq!(script.strip_pos(), reparsed.strip_pos());
    }
}
