//! ASCII concrete syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := ("~" | "!") unary | "K_" agent unary | "L_" agent unary
//!          | "C" unary | "[" formula "]" unary
//!          | "true" | "false" | atom | "(" formula ")"
//! ```
//!
//! `->` and `<->` are desugared while parsing.

use std::fmt;

use thiserror::Error;

use crate::formula::{is_keyword, AgentId, Formula, PropId};

const MAX_NESTING: usize = 256;

/// Parse failure. `position` is a 0-based character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {position}: expected {expected}")]
pub struct SourceError {
    pub position: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Know(AgentId),
    Poss(AgentId),
    Common,
    True,
    False,
    Atom(PropId),
    End,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Not => "'~'".into(),
        Tok::And => "'&'".into(),
        Tok::Or => "'|'".into(),
        Tok::Implies => "'->'".into(),
        Tok::Iff => "'<->'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Know(a) => format!("'K_{a}'"),
        Tok::Poss(a) => format!("'L_{a}'"),
        Tok::Common => "'C'".into(),
        Tok::True => "'true'".into(),
        Tok::False => "'false'".into(),
        Tok::Atom(p) => format!("atom '{p}'"),
        Tok::End => "end of input".into(),
    }
}

fn err(position: usize, expected: impl Into<String>) -> SourceError {
    SourceError { position, expected: expected.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SourceError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '-' => {
                if chars.get(i + 1) != Some(&'>') {
                    return Err(err(i + 1, "'>' to complete '->'"));
                }
                i += 1;
                Tok::Implies
            }
            '<' => {
                if chars.get(i + 1) != Some(&'-') {
                    return Err(err(i + 1, "'-' to continue '<->'"));
                }
                if chars.get(i + 2) != Some(&'>') {
                    return Err(err(i + 2, "'>' to complete '<->'"));
                }
                i += 2;
                Tok::Iff
            }
            'C' => Tok::Common,
            'K' | 'L' => {
                if chars.get(i + 1) != Some(&'_') {
                    return Err(err(i + 1, format!("'_' after '{c}'")));
                }
                let name_start = i + 2;
                let mut j = name_start;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                if j == name_start {
                    return Err(err(name_start, "agent name"));
                }
                let name: String = chars[name_start..j].iter().collect();
                let agent = AgentId::new(name).map_err(|_| err(name_start, "agent name"))?;
                i = j - 1;
                if c == 'K' {
                    Tok::Know(agent)
                } else {
                    Tok::Poss(agent)
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut j = i + 1;
                while j < chars.len()
                    && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_')
                {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    w => {
                        debug_assert!(!is_keyword(w));
                        Tok::Atom(PropId::new(w).map_err(|_| err(start, "atom"))?)
                    }
                }
            }
            _ => return Err(err(i, "a formula token")),
        };
        toks.push((start, tok));
        i += 1;
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SourceError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.offset(), format!("{}, found {}", describe(&want), describe(self.peek()))))
        }
    }

    fn formula(&mut self) -> Result<Formula, SourceError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(err(self.offset(), format!("at most {MAX_NESTING} levels of nesting")));
        }
        let f = self.iff();
        self.depth -= 1;
        f
    }

    fn iff(&mut self) -> Result<Formula, SourceError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, SourceError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.nested(Self::imp)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SourceError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SourceError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn nested(
        &mut self,
        rule: fn(&mut Self) -> Result<Formula, SourceError>,
    ) -> Result<Formula, SourceError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(err(self.offset(), format!("at most {MAX_NESTING} levels of nesting")));
        }
        let f = rule(self);
        self.depth -= 1;
        f
    }

    fn unary(&mut self) -> Result<Formula, SourceError> {
        let at = self.offset();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.nested(Self::unary)?)),
            Tok::Know(a) => Ok(Formula::know(a, self.nested(Self::unary)?)),
            Tok::Poss(a) => Ok(Formula::poss(a, self.nested(Self::unary)?)),
            Tok::Common => Ok(Formula::common(self.nested(Self::unary)?)),
            Tok::LBracket => {
                let announced = self.formula()?;
                self.expect(Tok::RBracket)?;
                Ok(Formula::announce(announced, self.nested(Self::unary)?))
            }
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Atom(p) => Ok(Formula::Atom(p)),
            Tok::LParen => {
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(err(at, format!("a formula, found {}", describe(&other)))),
        }
    }
}

/// Parse formula text.
pub fn parse(text: &str) -> Result<Formula, SourceError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, depth: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(err(p.offset(), format!("end of input, found {}", describe(p.peek()))));
    }
    Ok(f)
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_formula(f: &Formula, min_prec: u8, out: &mut String) {
    let wrap = precedence(f) < min_prec;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Atom(p) => out.push_str(p.as_str()),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Not(g) => {
            out.push('~');
            write_formula(g, PREC_UNARY, out);
        }
        Formula::And(a, b) => {
            write_formula(a, PREC_AND, out);
            out.push_str(" & ");
            write_formula(b, PREC_UNARY, out);
        }
        Formula::Or(a, b) => {
            write_formula(a, PREC_OR, out);
            out.push_str(" | ");
            write_formula(b, PREC_AND, out);
        }
        Formula::Know(ag, g) | Formula::Poss(ag, g) => {
            out.push(if matches!(f, Formula::Know(..)) { 'K' } else { 'L' });
            out.push('_');
            out.push_str(ag.as_str());
            out.push(' ');
            write_formula(g, PREC_UNARY, out);
        }
        Formula::Common(g) => {
            out.push_str("C ");
            write_formula(g, PREC_UNARY, out);
        }
        Formula::Announce(a, b) => {
            out.push('[');
            write_formula(a, 0, out);
            out.push_str("] ");
            write_formula(b, PREC_UNARY, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Canonical text with the fewest parentheses that still parses back to `f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = SourceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
