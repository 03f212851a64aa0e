//! Recursive-descent parser for set expressions.
//!
//! ```text
//! expr   := term { "|" term }
//! term   := factor { ("&" | "\") factor }
//! factor := "!" factor | atom { "x" atom }
//! atom   := box | "(" expr ")" | func | IDENT
//! box    := iv { "," iv }
//! iv     := ("[" | "(") bound "," bound ("]" | ")") | "{" NUMBER "}"
//! bound  := NUMBER | "-inf" | "inf"
//! func   := ("translate" | "scale" | "permute" | "reflect") "(" expr { "," arg } ")"
//! ```
//!
//! `(` starts an interval when the next token is a bound and a grouped
//! expression otherwise. Inside a box a comma continues the box only when an
//! interval follows it, which leaves commas before numeric function
//! arguments alone.

use super::ast::{IntervalLit, SetExpr};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

const FUNCS: [&str; 4] = ["translate", "scale", "permute", "reflect"];

pub fn parse(src: &str) -> Result<SetExpr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error(&["\"|\"", "\"&\"", "\"\\\"", "\"x\"", "end of input"]));
    }
    Ok(e)
}

/// True for words that cannot be used as definition names.
pub fn is_reserved(word: &str) -> bool {
    word == "x" || word == "inf" || FUNCS.contains(&word)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        self.error_at(self.pos, expected)
    }

    fn error_at(&self, tok_index: usize, expected: &[&str]) -> ParseError {
        let t = &self.toks[tok_index];
        ParseError::new(
            self.src,
            t.offset,
            expected.iter().map(|s| s.to_string()).collect(),
            &t.tok.describe(),
        )
    }

    fn expect(&mut self, tok: Tok, desc: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error(&[desc]))
        }
    }

    fn is_product_op(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "x")
    }

    fn expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.term()?;
            lhs = SetExpr::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Amp => SetExpr::Intersect as fn(Box<SetExpr>, Box<SetExpr>) -> SetExpr,
                Tok::Backslash => SetExpr::Difference,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = op(Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<SetExpr, ParseError> {
        if *self.peek() == Tok::Bang {
            self.bump();
            let inner = self.factor()?;
            return Ok(SetExpr::Complement(Box::new(inner)));
        }
        let mut lhs = self.atom(true)?;
        while self.is_product_op() {
            self.bump();
            let rhs = self.atom(false)?;
            lhs = SetExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self, allow_bang: bool) -> Result<SetExpr, ParseError> {
        match self.peek().clone() {
            Tok::LBracket | Tok::LBrace => self.boxed(),
            Tok::LParen => {
                if matches!(self.peek_at(1), Tok::Number(_) | Tok::Inf | Tok::NegInf) {
                    self.boxed()
                } else {
                    self.bump();
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "\")\"")?;
                    Ok(e)
                }
            }
            Tok::Ident(name) if FUNCS.contains(&name.as_str()) => self.func(&name),
            Tok::Ident(name) if !is_reserved(&name) => {
                self.bump();
                Ok(SetExpr::Name(name))
            }
            _ => {
                let mut want = vec!["\"[\"", "\"(\"", "\"{\"", "function", "IDENT"];
                if allow_bang {
                    want.insert(0, "\"!\"");
                }
                Err(self.error(&want))
            }
        }
    }

    fn starts_interval(&self, ahead: usize) -> bool {
        match self.peek_at(ahead) {
            Tok::LBracket | Tok::LBrace => true,
            Tok::LParen => matches!(
                self.peek_at(ahead + 1),
                Tok::Number(_) | Tok::Inf | Tok::NegInf
            ),
            _ => false,
        }
    }

    fn boxed(&mut self) -> Result<SetExpr, ParseError> {
        let mut ivs = vec![self.interval()?];
        while *self.peek() == Tok::Comma && self.starts_interval(1) {
            self.bump();
            ivs.push(self.interval()?);
        }
        Ok(SetExpr::Box(ivs))
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match *self.peek() {
            Tok::Number(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["NUMBER"])),
        }
    }

    fn bound(&mut self) -> Result<(f64, usize), ParseError> {
        let idx = self.pos;
        let v = match *self.peek() {
            Tok::Number(v) => v,
            Tok::Inf => f64::INFINITY,
            Tok::NegInf => f64::NEG_INFINITY,
            _ => return Err(self.error(&["NUMBER", "\"-inf\"", "\"inf\""])),
        };
        self.bump();
        Ok((v, idx))
    }

    fn interval(&mut self) -> Result<IntervalLit, ParseError> {
        let open_idx = self.pos;
        let lo_closed = match self.peek() {
            Tok::LBrace => {
                self.bump();
                let v = self.number()?;
                self.expect(Tok::RBrace, "\"}\"")?;
                return Ok(IntervalLit::Point(v));
            }
            Tok::LBracket => true,
            Tok::LParen => false,
            _ => return Err(self.error(&["\"[\"", "\"(\"", "\"{\""])),
        };
        self.bump();
        let (lo, lo_idx) = self.bound()?;
        self.expect(Tok::Comma, "\",\"")?;
        let (hi, hi_idx) = self.bound()?;
        let close_idx = self.pos;
        let hi_closed = match self.peek() {
            Tok::RBracket => true,
            Tok::RParen => false,
            _ => return Err(self.error(&["\"]\"", "\")\""])),
        };
        self.bump();
        if lo == f64::INFINITY {
            return Err(self.error_at(lo_idx, &["NUMBER", "\"-inf\""]));
        }
        if hi == f64::NEG_INFINITY {
            return Err(self.error_at(hi_idx, &["NUMBER", "\"inf\""]));
        }
        if lo.is_infinite() && lo_closed {
            return Err(self.error_at(open_idx, &["\"(\" before an infinite bound"]));
        }
        if hi.is_infinite() && hi_closed {
            return Err(self.error_at(close_idx, &["\")\" after an infinite bound"]));
        }
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Err(self.error_at(open_idx, &["a nonempty interval"]));
        }
        Ok(IntervalLit::Range {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    fn index_arg(&mut self) -> Result<usize, ParseError> {
        match *self.peek() {
            Tok::Number(v) if v >= 0.0 && v.fract() == 0.0 && v < 1e9 => {
                self.bump();
                Ok(v as usize)
            }
            _ => Err(self.error(&["axis index"])),
        }
    }

    fn func(&mut self, name: &str) -> Result<SetExpr, ParseError> {
        self.bump();
        self.expect(Tok::LParen, "\"(\"")?;
        let arg = Box::new(self.expr()?);
        let e = match name {
            "translate" => {
                let mut v = Vec::new();
                self.expect(Tok::Comma, "\",\"")?;
                v.push(self.number()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    v.push(self.number()?);
                }
                SetExpr::Translate(arg, v)
            }
            "scale" => {
                self.expect(Tok::Comma, "\",\"")?;
                SetExpr::Scale(arg, self.number()?)
            }
            "permute" => {
                let mut p = Vec::new();
                self.expect(Tok::Comma, "\",\"")?;
                p.push(self.index_arg()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    p.push(self.index_arg()?);
                }
                SetExpr::Permute(arg, p)
            }
            "reflect" => {
                self.expect(Tok::Comma, "\",\"")?;
                SetExpr::Reflect(arg, self.index_arg()?)
            }
            _ => unreachable!("caller checks FUNCS"),
        };
        self.expect(Tok::RParen, "\")\"")?;
        Ok(e)
    }
}
