//! Recursive-descent parser for the query grammar:
//!
//! ```text
//! formula := "exists" var { "," var } "." formula | conj
//! conj    := atom { "&" atom }
//! atom    := "true" | "false" | var "=" var | ident "(" var { "," var } ")" | "(" formula ")"
//! ```

use super::Formula;
use crate::error::{Error, Result};
use crate::var::Variable;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Equals => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 3] = ["exists", "true", "false"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '=' => Tok::Equals,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = pos;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(src[pos..end].to_owned()), pos));
                continue;
            }
            other => return Err(Error::parse(src, pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        toks.push((tok, pos));
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::End {
            self.at += 1;
        }
        tok
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::parse(self.src, self.pos(), format!("expected {expected}, found {}", self.peek().describe())))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn variable(&mut self) -> Result<Variable> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let x = Variable::named(s).map_err(|e| Error::parse(self.src, self.pos(), e.to_string()))?;
                self.bump();
                Ok(x)
            }
            _ => self.error("a variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if !self.keyword("exists") {
            return self.conj();
        }
        self.bump();
        let mut bound = vec![self.variable()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            bound.push(self.variable()?);
        }
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(bound.into_iter().rev().fold(body, |acc, x| Formula::exists(x, acc)))
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::and(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(s) if s == "exists" => self.error("an atom (parenthesize quantified subformulas)"),
            Tok::Ident(name) => {
                let start = self.pos();
                self.bump();
                match self.peek() {
                    Tok::LParen => {
                        self.bump();
                        let mut args = vec![self.variable()?];
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.variable()?);
                        }
                        self.expect(Tok::RParen)?;
                        Ok(Formula::RelAtom(name, args))
                    }
                    Tok::Equals => {
                        self.bump();
                        let x = Variable::named(&name).map_err(|e| Error::parse(self.src, start, e.to_string()))?;
                        Ok(Formula::Eq(x, self.variable()?))
                    }
                    _ => self.error("`(` or `=`"),
                }
            }
            _ => self.error("an atom"),
        }
    }
}

/// Parses a query. Variables are interned as they are met.
pub fn parse(src: &str) -> Result<Formula> {
    let mut p = Parser { src, toks: lex(src)?, at: 0 };
    let phi = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error("`&` or end of input");
    }
    Ok(phi)
}
