//! Session script AST.

use std::fmt;

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<(String, u32)>,
        quotient: Option<Vec<Expr>>,
        pos: Pos,
    },
    ModuleQuotient {
        name: String,
        ring: String,
        ideal: Expr,
        pos: Pos,
    },
    ModuleCoker {
        name: String,
        ring: String,
        rows: Vec<Vec<Expr>>,
        degrees: Option<Vec<i64>>,
        pos: Pos,
    },
    Compute {
        op: String,
        args: Vec<Arg>,
        pos: Pos,
    },
    Verify {
        suite: String,
        opts: Vec<(String, i64)>,
        pos: Pos,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Int(i64),
    Name(String),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::Name(s) => write!(f, "{s}"),
        }
    }
}

/// Polynomial/ideal expression. Parenthesized comma lists are ideal-valued;
/// everything else is polynomial-valued until an operator mixes in an ideal,
/// at which point polynomials promote to principal ideals.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    /// Exact rational literal `p/q`.
    Ratio(i64, i64),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `( e₁, e₂, … )` with more than one entry, or any explicit ideal.
    List(Vec<Expr>),
    /// Parenthesized single expression (kept for faithful printing).
    Paren(Box<Expr>),
}

impl Expr {
    /// Zero out positions so pretty-print round trips compare structurally.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn strip_pos(&self) -> Expr {
        match self {
            Expr::Var(name, _) => Expr::Var(name.clone(), Pos::default()),
            Expr::Neg(e) => Expr::Neg(Box::new(e.strip_pos())),
            Expr::Add(a, b) => Expr::Add(Box::new(a.strip_pos()), Box::new(b.strip_pos())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.strip_pos()), Box::new(b.strip_pos())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.strip_pos()), Box::new(b.strip_pos())),
            Expr::Pow(e, n) => Expr::Pow(Box::new(e.strip_pos()), *n),
            Expr::List(es) => Expr::List(es.iter().map(|e| e.strip_pos()).collect()),
            Expr::Paren(e) => Expr::Paren(Box::new(e.strip_pos())),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ratio(p, q) => write!(f, "{p}/{q}"),
            Expr::Var(s, _) => write!(f, "{s}"),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(e, n) => write!(f, "{e}^{n}"),
            Expr::List(es) => {
                write!(f, "(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Paren(e) => write!(f, "({e})"),
        }
    }
}

impl Script {
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn strip_pos(&self) -> Script {
        Script {
            stmts: self.stmts.iter().map(strip_stmt).collect(),
        }
    }
}

#[cfg_attr(not(test), allow(dead_code))]
fn strip_stmt(s: &Stmt) -> Stmt {
    let zero = Pos::default();
    match s {
        Stmt::Ring {
            name,
            field,
            vars,
            quotient,
            ..
        } => Stmt::Ring {
            name: name.clone(),
            field: field.clone(),
            vars: vars.clone(),
            quotient: quotient
                .as_ref()
                .map(|q| q.iter().map(|e| e.strip_pos()).collect()),
            pos: zero,
        },
        Stmt::ModuleQuotient {
            name, ring, ideal, ..
        } => Stmt::ModuleQuotient {
            name: name.clone(),
            ring: ring.clone(),
            ideal: ideal.strip_pos(),
            pos: zero,
        },
        Stmt::ModuleCoker {
            name,
            ring,
            rows,
            degrees,
            ..
        } => Stmt::ModuleCoker {
            name: name.clone(),
            ring: ring.clone(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(|e| e.strip_pos()).collect())
                .collect(),
            degrees: degrees.clone(),
            pos: zero,
        },
        Stmt::Compute { op, args, .. } => Stmt::Compute {
            op: op.clone(),
            args: args.clone(),
            pos: zero,
        },
        Stmt::Verify { suite, opts, .. } => Stmt::Verify {
            suite: suite.clone(),
            opts: opts.clone(),
            pos: zero,
        },
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring {
                name,
                field,
                vars,
                quotient,
                ..
            } => {
                write!(f, "ring {name} = {field}[")?;
                for (i, (v, w)) in vars.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                    if *w != 1 {
                        write!(f, ":{w}")?;
                    }
                }
                write!(f, "]")?;
                if let Some(q) = quotient {
                    write!(f, "/(")?;
                    for (i, e) in q.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, ")")?;
                }
                write!(f, ";")
            }
            Stmt::ModuleQuotient {
                name, ring, ideal, ..
            } => {
                write!(f, "module {name} = {ring}/({ideal});")
            }
            Stmt::ModuleCoker {
                name,
                ring,
                rows,
                degrees,
                ..
            } => {
                write!(f, "module {name} = coker {ring} [")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for (j, e) in row.iter().enumerate() {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")?;
                if let Some(d) = degrees {
                    write!(f, " degrees (")?;
                    for (i, v) in d.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{v}")?;
                    }
                    write!(f, ")")?;
                }
                write!(f, ";")
            }
            Stmt::Compute { op, args, .. } => {
                write!(f, "compute {op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ");")
            }
            Stmt::Verify { suite, opts, .. } => {
                write!(f, "verify {suite}")?;
                for (k, v) in opts {
                    write!(f, " {k}={v}")?;
                }
                write!(f, ";")
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
