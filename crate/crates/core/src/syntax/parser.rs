use super::ast::*;
use super::lexer::{lex, Kw, Tok, Token};
use crate::error::{Error, Pos, Result};
use crate::kernel::print::infix_level;
use crate::kernel::Name;
use std::collections::BTreeSet;

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), expected: expected.into(), found: self.peek().describe() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(&t.describe())
        }
    }

    fn expect_kw(&mut self, k: Kw) -> Result<()> {
        self.expect(&Tok::Kw(k))
    }

    /// A new definition or declaration starts here (`name :=` or `name :`).
    fn at_boundary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Quoted(_) | Tok::Op(_))
            && matches!(self.peek_at(1), Tok::Define | Tok::Colon)
    }

    fn ident(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(n) | Tok::Quoted(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.err("identifier"),
        }
    }

    /// A symbol name in declaration or map position; operators allowed.
    fn symbol(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(n) | Tok::Quoted(n) | Tok::Op(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.err("symbol name"),
        }
    }

    // ---- modules ----

    fn module(&mut self) -> Result<Module> {
        let mut m = Module::default();
        let mut seen = BTreeSet::new();
        while self.peek() != &Tok::Eof {
            let pos = self.pos();
            let name = self.ident()?;
            self.expect(&Tok::Define)?;
            let body = if self.peek() == &Tok::LBrack {
                let map = self.raw_map()?;
                if matches!(self.peek(), Tok::Eof) || self.at_boundary() {
                    DefBody::Map(map)
                } else {
                    return self.err("end of definition after a named map");
                }
            } else {
                DefBody::Expr(self.expr()?)
            };
            if !matches!(self.peek(), Tok::Eof) && !self.at_boundary() {
                return self.err("next definition");
            }
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateDefinition { name, pos });
            }
            if let DefBody::Expr(e) = &body {
                let mut refs = Vec::new();
                e.references(&mut refs);
                if let Some(r) = refs.into_iter().find(|r| !seen.contains(r) || *r == name) {
                    return Err(Error::UnknownReference { name: r, pos });
                }
            }
            m.defs.push(Definition { name, pos, body });
        }
        Ok(m)
    }

    // ---- combinator expressions ----

    fn expr(&mut self) -> Result<TpcExpr> {
        let mut e = self.seq()?;
        while self.eat(&Tok::Bars) {
            let r = self.seq()?;
            e = TpcExpr::Combine(Box::new(e), MapArg::empty(), Box::new(r), MapArg::empty());
        }
        Ok(e)
    }

    fn seq(&mut self) -> Result<TpcExpr> {
        let mut e = self.postfix()?;
        while self.eat(&Tok::Semi) {
            let r = self.postfix()?;
            e = TpcExpr::Seq(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn at_map_arg(&self) -> bool {
        match self.peek() {
            Tok::LBrack => true,
            Tok::Ident(_) => !self.at_boundary(),
            _ => false,
        }
    }

    fn map_arg(&mut self) -> Result<MapArg> {
        if self.peek() == &Tok::LBrack {
            Ok(MapArg::Literal(self.raw_map()?))
        } else {
            Ok(MapArg::Ref(self.ident()?))
        }
    }

    fn opt_map_arg(&mut self) -> Result<MapArg> {
        if self.at_map_arg() {
            self.map_arg()
        } else {
            Ok(MapArg::empty())
        }
    }

    fn postfix(&mut self) -> Result<TpcExpr> {
        let mut e = self.prefix()?;
        loop {
            if self.eat(&Tok::Kw(Kw::ExtendedBy)) {
                let body = self.decl_block()?;
                e = TpcExpr::Extend(Box::new(e), body);
            } else if self.at_map_arg() {
                let m = self.map_arg()?;
                e = TpcExpr::Rename(Box::new(e), m);
            } else {
                return Ok(e);
            }
        }
    }

    fn prefix(&mut self) -> Result<TpcExpr> {
        match self.peek() {
            Tok::Kw(Kw::Extend) => {
                self.advance();
                let base = self.postfix()?;
                self.expect_kw(Kw::By)?;
                let body = self.decl_block()?;
                Ok(TpcExpr::Extend(Box::new(base), body))
            }
            Tok::Kw(Kw::View) => {
                self.advance();
                let a = self.postfix()?;
                self.expect_kw(Kw::As)?;
                let b = self.postfix()?;
                self.expect_kw(Kw::Via)?;
                let m = self.map_arg()?;
                Ok(TpcExpr::View(Box::new(a), Box::new(b), m))
            }
            Tok::Kw(k @ (Kw::Combine | Kw::Mixin)) => {
                let k = *k;
                self.advance();
                let a = self.atom()?;
                let r1 = self.opt_map_arg()?;
                self.expect(&Tok::Comma)?;
                let b = self.atom()?;
                let r2 = self.opt_map_arg()?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if k == Kw::Combine { TpcExpr::Combine(a, r1, b, r2) } else { TpcExpr::Mixin(a, r1, b, r2) })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<TpcExpr> {
        match self.peek().clone() {
            Tok::Kw(Kw::Empty) => {
                self.advance();
                Ok(TpcExpr::Empty)
            }
            Tok::Kw(Kw::Theory) => {
                self.advance();
                Ok(TpcExpr::Theory(self.decl_block()?))
            }
            Tok::Ident(n) => {
                self.advance();
                Ok(TpcExpr::Ref(n))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => self.err("theory expression"),
        }
    }

    fn decl_block(&mut self) -> Result<Vec<RawDecl>> {
        self.expect(&Tok::LBrace)?;
        let mut out = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let name = self.symbol()?;
            self.expect(&Tok::Colon)?;
            let classifier = self.raw()?;
            out.push(RawDecl { name, classifier });
            if !self.eat(&Tok::Semi) {
                self.eat(&Tok::Comma);
            }
        }
        Ok(out)
    }

    fn raw_map(&mut self) -> Result<RawMap> {
        self.expect(&Tok::LBrack)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            let lhs = self.symbol()?;
            self.expect(&Tok::MapsTo)?;
            let rhs = match (self.peek().clone(), self.peek_at(1)) {
                (Tok::Op(n), Tok::Comma | Tok::RBrack) => {
                    self.advance();
                    RawExpr::Var(n)
                }
                _ => self.raw()?,
            };
            out.push((lhs, rhs));
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    // ---- kernel-level raw syntax ----

    fn raw(&mut self) -> Result<RawExpr> {
        match self.peek() {
            Tok::Kw(Kw::Forall) => {
                self.advance();
                let bs = self.binders()?;
                let body = self.raw()?;
                Ok(RawExpr::Pi(bs, Box::new(body)))
            }
            Tok::Lambda | Tok::Kw(Kw::Fun) => {
                self.advance();
                let bs = self.binders()?;
                let body = self.raw()?;
                Ok(RawExpr::Lam(bs, Box::new(body)))
            }
            _ => self.arrow(),
        }
    }

    /// Binders up to and including the `.`.
    fn binders(&mut self) -> Result<Vec<RawBinder>> {
        let mut out = Vec::new();
        let mut pending: Vec<Name> = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::LParen => {
                    self.advance();
                    let mut names = vec![self.ident()?];
                    while let Tok::Ident(_) | Tok::Quoted(_) = self.peek() {
                        names.push(self.ident()?);
                    }
                    self.expect(&Tok::Colon)?;
                    let ann = self.raw()?;
                    self.expect(&Tok::RParen)?;
                    out.extend(pending.drain(..).map(|name| RawBinder { name, ann: None }));
                    out.extend(names.into_iter().map(|name| RawBinder { name, ann: Some(ann.clone()) }));
                }
                Tok::Ident(_) | Tok::Quoted(_) => pending.push(self.ident()?),
                Tok::Colon => {
                    self.advance();
                    if pending.is_empty() {
                        return self.err("binder name before `:`");
                    }
                    let ann = self.arrow()?;
                    out.extend(pending.drain(..).map(|name| RawBinder { name, ann: Some(ann.clone()) }));
                    self.expect(&Tok::Dot)?;
                    return Ok(out);
                }
                Tok::Dot => {
                    self.advance();
                    out.extend(pending.drain(..).map(|name| RawBinder { name, ann: None }));
                    if out.is_empty() {
                        return self.err("binder");
                    }
                    return Ok(out);
                }
                _ => return self.err("binder, `:` or `.`"),
            }
        }
    }

    fn arrow(&mut self) -> Result<RawExpr> {
        let lhs = self.equation()?;
        if self.eat(&Tok::Arrow) {
            let rhs = match self.peek() {
                Tok::Kw(Kw::Forall) | Tok::Lambda | Tok::Kw(Kw::Fun) => self.raw()?,
                _ => self.arrow()?,
            };
            Ok(RawExpr::Arrow(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn equation(&mut self) -> Result<RawExpr> {
        let lhs = self.infix(0)?;
        if !self.eat(&Tok::Equals) {
            return Ok(lhs);
        }
        let rhs = self.infix(0)?;
        let carrier = if self.peek() == &Tok::Colon && !self.at_boundary() {
            self.advance();
            Some(Box::new(self.arrow()?))
        } else {
            None
        };
        Ok(RawExpr::Eq(Box::new(lhs), Box::new(rhs), carrier))
    }

    fn infix(&mut self, min: u8) -> Result<RawExpr> {
        let mut lhs = self.application()?;
        loop {
            let op = match self.peek() {
                Tok::Op(n) if !self.at_boundary() => n.clone(),
                _ => return Ok(lhs),
            };
            let lvl = infix_level(op.as_str());
            if lvl < min {
                return Ok(lhs);
            }
            self.advance();
            let rhs = self.infix(lvl + 1)?;
            lhs = RawExpr::app(RawExpr::app(RawExpr::Var(op), lhs), rhs);
        }
    }

    fn starts_operand(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) | Tok::Quoted(_) => !self.at_boundary(),
            Tok::Kw(Kw::Type) | Tok::LParen => true,
            _ => false,
        }
    }

    fn application(&mut self) -> Result<RawExpr> {
        let mut f = match self.peek() {
            Tok::Lambda | Tok::Kw(Kw::Fun) | Tok::Kw(Kw::Forall) => return self.raw(),
            _ => self.operand()?,
        };
        loop {
            if self.starts_operand() {
                let a = self.operand()?;
                f = RawExpr::app(f, a);
            } else if matches!(self.peek(), Tok::Lambda | Tok::Kw(Kw::Fun)) {
                let a = self.raw()?;
                return Ok(RawExpr::app(f, a));
            } else {
                return Ok(f);
            }
        }
    }

    fn operand(&mut self) -> Result<RawExpr> {
        match self.peek().clone() {
            Tok::Ident(n) | Tok::Quoted(n) => {
                self.advance();
                Ok(RawExpr::Var(n))
            }
            Tok::Kw(Kw::Type) => {
                self.advance();
                Ok(RawExpr::Type)
            }
            Tok::LParen => {
                self.advance();
                if let (Tok::Op(n), Tok::RParen) = (self.peek().clone(), self.peek_at(1)) {
                    self.advance();
                    self.advance();
                    return Ok(RawExpr::Var(n));
                }
                let e = self.raw()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => self.err("term"),
        }
    }
}

pub fn parse_module(src: &str) -> Result<Module> {
    Parser::new(src)?.module()
}

pub fn parse_expr(src: &str) -> Result<TpcExpr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return p.err("end of input");
    }
    Ok(e)
}

pub fn parse_raw(src: &str) -> Result<RawExpr> {
    let mut p = Parser::new(src)?;
    let e = p.raw()?;
    if p.peek() != &Tok::Eof {
        return p.err("end of input");
    }
    Ok(e)
}
