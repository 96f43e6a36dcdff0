//! Concrete syntax for programs, formulae and proof terms.
//!
//! ```text
//! % comment
//! k1 : eq(X), eq(Y) => eq(pair(X,Y)).
//! k2 : => eq(int).
//! ```
//!
//! Proof terms use juxtaposition for application, `\b1 b2 -> e` (or `λ`)
//! for abstraction and `nu a. e` (or `ν`) for the fixed-point binder.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::program::{LoadError, Program};
use crate::proof::ProofTerm;
use crate::term::{Atom, HornClause, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Implies,
    Arrow,
    Lambda,
    Nu,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Implies => f.write_str("`=>`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Lambda => f.write_str("lambda"),
            Tok::Nu => f.write_str("nu"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        let tok = match ch {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '%' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            ':' => {
                bump(&mut chars);
                Tok::Colon
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '\\' | 'λ' => {
                bump(&mut chars);
                Tok::Lambda
            }
            'ν' => {
                bump(&mut chars);
                Tok::Nu
            }
            '⇒' => {
                bump(&mut chars);
                Tok::Implies
            }
            '→' => {
                bump(&mut chars);
                Tok::Arrow
            }
            '=' | '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    if ch == '=' {
                        Tok::Implies
                    } else {
                        Tok::Arrow
                    }
                } else {
                    return Err(ParseError {
                        line: l,
                        col: c,
                        message: format!("expected `{ch}>`"),
                    });
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|&c| {
                    (c.is_alphanumeric() || c == '_' || c == '\'') && c != 'λ' && c != 'ν'
                }) {
                    s.push(bump(&mut chars));
                }
                if s == "nu" {
                    Tok::Nu
                } else {
                    Tok::Ident(s)
                }
            }
            other => {
                return Err(ParseError {
                    line: l,
                    col: c,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            col: c,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

fn is_var_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_uppercase() || c == '_')
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            col: s.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, found {}", self.peek())))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.error(format!("expected {what}, found {t}"))),
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(self.error(format!("unexpected {t} after end of input"))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let name = self.ident("a term")?;
        if *self.peek() == Tok::LParen {
            if is_var_name(&name) {
                return Err(self.error(format!("variable `{name}` cannot take arguments")));
            }
            Ok(Term::App(name, self.args()?))
        } else if is_var_name(&name) {
            Ok(Term::Var(name))
        } else {
            Ok(Term::constant(name))
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let pred = self.ident("an atom")?;
        let args = if *self.peek() == Tok::LParen {
            self.args()?
        } else {
            Vec::new()
        };
        Ok(Atom::new(pred, args))
    }

    /// `[atoms] => atom`, `=> atom` or a bare atom.
    fn formula(&mut self) -> Result<HornClause, ParseError> {
        if self.eat(&Tok::Implies) {
            return Ok(HornClause::fact(self.atom()?));
        }
        let mut atoms = vec![self.atom()?];
        while self.eat(&Tok::Comma) {
            atoms.push(self.atom()?);
        }
        if self.eat(&Tok::Implies) {
            Ok(HornClause::new(atoms, self.atom()?))
        } else if atoms.len() == 1 {
            Ok(HornClause::fact(atoms.pop().unwrap()))
        } else {
            Err(self.error("expected `=>` after clause body"))
        }
    }

    fn proof(&mut self, scope: &mut Vec<String>) -> Result<ProofTerm, ParseError> {
        match self.peek() {
            Tok::Lambda => {
                self.next();
                let mut binders = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::Ident(s) => {
                            self.next();
                            binders.push(s);
                            self.eat(&Tok::Comma);
                        }
                        Tok::Arrow | Tok::Dot => {
                            self.next();
                            break;
                        }
                        t => return Err(self.error(format!("expected binder or `->`, found {t}"))),
                    }
                }
                if binders.is_empty() {
                    return Err(self.error("abstraction needs at least one binder"));
                }
                let n = scope.len();
                scope.extend(binders.iter().cloned());
                let body = self.proof(scope);
                scope.truncate(n);
                Ok(ProofTerm::Lambda(binders, Box::new(body?)))
            }
            Tok::Nu => {
                self.next();
                let a = self.ident("a nu binder")?;
                self.expect(Tok::Dot)?;
                scope.push(a.clone());
                let body = self.proof(scope);
                scope.pop();
                Ok(ProofTerm::Nu(a, Box::new(body?)))
            }
            _ => {
                let mut t = self.primary(scope)?;
                loop {
                    match self.peek() {
                        Tok::Ident(_) | Tok::LParen => {
                            let arg = self.primary(scope)?;
                            t = ProofTerm::apply(t, arg);
                        }
                        Tok::Lambda | Tok::Nu => {
                            let arg = self.proof(scope)?;
                            return Ok(ProofTerm::apply(t, arg));
                        }
                        _ => return Ok(t),
                    }
                }
            }
        }
    }

    fn primary(&mut self, scope: &mut Vec<String>) -> Result<ProofTerm, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(if scope.contains(&s) {
                    ProofTerm::Var(s)
                } else {
                    ProofTerm::Const(s)
                })
            }
            Tok::LParen => {
                self.next();
                let t = self.proof(scope)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => Err(self.error(format!("expected a proof term, found {t}"))),
        }
    }
}

/// A parsed program together with the source line of each clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceProgram {
    pub program: Program,
    pub lines: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("load error: {0}")]
    Load(#[from] LoadError),
}

/// Parses a clause list without validating it.
pub fn parse_clauses(text: &str) -> Result<Vec<(String, HornClause, usize)>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        let line = p.toks[p.pos].line;
        let name = p.ident("a clause name")?;
        p.expect(Tok::Colon)?;
        let clause = p.formula()?;
        p.expect(Tok::Dot)?;
        out.push((name, clause, line));
    }
    Ok(out)
}

pub fn parse_program(text: &str) -> Result<SourceProgram, ProgramError> {
    let clauses = parse_clauses(text)?;
    let lines = clauses.iter().map(|(n, _, l)| (n.clone(), *l)).collect();
    let program = Program::new(clauses.into_iter().map(|(n, c, _)| (n, c)))?;
    Ok(SourceProgram { program, lines })
}

/// A formula `B1, .., Bn => A` or an atom, with an optional final `.`.
pub fn parse_formula(text: &str) -> Result<HornClause, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.eat(&Tok::Dot);
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_atom(text: &str) -> Result<Atom, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.atom()?;
    p.eat(&Tok::Dot);
    p.expect_eof()?;
    Ok(a)
}

/// Bound names become proof variables; every other identifier is a clause
/// symbol, resolved when the term is checked.
pub fn parse_proof(text: &str) -> Result<ProofTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.proof(&mut Vec::new())?;
    p.expect_eof()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_program_parses() {
        let sp = parse_program("k1 : eq(X), eq(Y) => eq(pair(X,Y)).\nk2 : => eq(int).").unwrap();
        let p = &sp.program;
        assert_eq!(p.len(), 2);
        assert_eq!(
            p.get("k1").unwrap().clause.to_string(),
            "eq(X), eq(Y) => eq(pair(X,Y))"
        );
        assert_eq!(sp.lines["k2"], 2);
        assert_eq!(parse_program(&p.to_string()).unwrap().program, *p);
    }

    #[test]
    fn completeness_example_loads() {
        assert!(parse_program("k1 : p(f(X)) => p(X).").is_ok());
    }

    #[test]
    fn existential_variable_is_a_load_error() {
        let err = parse_program("k1 : q(Y) => p(X).").unwrap_err();
        assert!(
            matches!(err, ProgramError::Load(LoadError::ExistentialVar { ref vars, .. }) if vars == &["Y"])
        );
    }

    #[test]
    fn comments_and_positions() {
        let sp = parse_program("% pair\nk2 : => eq(int). % trailing\n").unwrap();
        assert_eq!(sp.program.len(), 1);
        let err = parse_program("k1 : eq(X) =>\n  eq(X)").unwrap_err();
        let ProgramError::Parse(e) = err else {
            panic!()
        };
        assert_eq!((e.line, e.col), (2, 8));
    }

    #[test]
    fn proof_terms() {
        let t = parse_proof("k1 k2 k2").unwrap();
        assert_eq!(
            t,
            ProofTerm::apply(
                ProofTerm::apply(ProofTerm::konst("k1"), ProofTerm::konst("k2")),
                ProofTerm::konst("k2")
            )
        );
        let t = parse_proof("nu a. k2 k3 (k1 k3 a)").unwrap();
        assert_eq!(t.to_string(), "nu a. k2 k3 (k1 k3 a)");
        assert!(t.is_closed());
        let t = parse_proof("(nu a. \\b -> k2 b (a (a b))) k1").unwrap();
        assert_eq!(t.to_string(), "(nu a. \\b -> k2 b (a (a b))) k1");
        assert_eq!(parse_proof("(νa. λb. k2 b (a (a b))) k1").unwrap(), t);
        assert_eq!(
            parse_proof("\\b1, b2 -> k b1 b2").unwrap().to_string(),
            "\\b1 b2 -> k b1 b2"
        );
    }

    #[test]
    fn formulas() {
        assert_eq!(
            parse_formula("eq(X) => eq(bush(X))").unwrap().to_string(),
            "eq(X) => eq(bush(X))"
        );
        assert!(parse_formula("eq(evenList(int))").unwrap().is_atomic());
        assert!(parse_formula("=> A.").unwrap().is_atomic());
        assert!(parse_formula("A, B").is_err());
        assert!(parse_formula("F(X)(").is_err());
    }

    #[test]
    fn uppercase_predicates_lowercase_constants() {
        let f = parse_formula("B(X) => A(X)").unwrap();
        assert_eq!(f.head.pred, "A");
        assert!(f.head.args[0].is_var());
        assert!(parse_formula("D(z,z)").unwrap().head.is_ground());
    }
}
