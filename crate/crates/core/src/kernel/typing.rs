use super::print::Printer;
use super::syntax::{Hint, Kind, Name, Term, TypeExpr};
use crate::error::{Error, Result};
use crate::presentation::Classifier;

/// Anything that can classify free symbols.
pub trait Signature {
    fn classifier(&self, n: &Name) -> Option<&Classifier>;
}

/// A typing context: a signature of symbols plus a stack of local binders.
pub struct Ctx<'a> {
    sig: &'a dyn Signature,
    locals: Vec<(Hint, TypeExpr)>,
}

impl<'a> Ctx<'a> {
    pub fn new(sig: &'a dyn Signature) -> Self {
        Ctx { sig, locals: Vec::new() }
    }

    pub fn push(&mut self, h: Hint, ty: TypeExpr) {
        self.locals.push((h, ty));
    }

    pub fn pop(&mut self) {
        self.locals.pop();
    }

    pub fn depth(&self) -> usize {
        self.locals.len()
    }

    fn printer(&self) -> Printer {
        Printer::with_locals(self.locals.iter().map(|(h, _)| h.0.clone()).collect())
    }

    pub fn show_term(&self, t: &Term) -> String {
        self.printer().term(t)
    }

    pub fn show_type(&self, t: &TypeExpr) -> String {
        self.printer().type_expr(t)
    }

    pub fn show_kind(&self, k: &Kind) -> String {
        self.printer().kind(k)
    }

    fn bound_type(&self, i: usize) -> Result<TypeExpr> {
        let n = self.locals.len();
        if i >= n {
            return Err(Error::IllTyped(format!("dangling bound variable #{i}")));
        }
        Ok(self.locals[n - 1 - i].1.shift(i as isize + 1, 0))
    }

    fn sym_type(&self, n: &Name) -> Result<TypeExpr> {
        match self.sig.classifier(n) {
            Some(Classifier::Type(t)) => Ok(t.clone()),
            Some(Classifier::Kind(_)) => Err(Error::IllTyped(format!("type symbol `{n}` used as a term"))),
            None => Err(Error::UnboundName(n.clone())),
        }
    }

    fn sym_kind(&self, n: &Name) -> Result<Kind> {
        match self.sig.classifier(n) {
            Some(Classifier::Kind(k)) => Ok(k.clone()),
            Some(Classifier::Type(_)) => Err(Error::IllTyped(format!("term symbol `{n}` used as a type"))),
            None => Err(Error::UnboundName(n.clone())),
        }
    }

    pub fn infer(&mut self, t: &Term) -> Result<TypeExpr> {
        match t {
            Term::Sym(n) => self.sym_type(n),
            Term::Bound(i) => self.bound_type(*i),
            Term::Lam(h, a, body) => {
                self.check_type(a)?;
                self.push(h.clone(), (**a).clone());
                let b = self.infer(body);
                self.pop();
                Ok(TypeExpr::Pi(h.clone(), a.clone(), Box::new(b?)))
            }
            Term::App(f, x) => {
                let fty = self.infer(f)?;
                match fty {
                    TypeExpr::Pi(_, a, b) => {
                        self.check(x, &a)?;
                        Ok(b.instantiate(x))
                    }
                    other => Err(Error::NotAFunction(format!("{} : {}", self.show_term(f), self.show_type(&other)))),
                }
            }
        }
    }

    pub fn check(&mut self, t: &Term, expected: &TypeExpr) -> Result<()> {
        let found = self.infer(t)?;
        if self.conv_type(&found, expected) {
            Ok(())
        } else {
            Err(Error::type_mismatch(
                None,
                self.show_type(expected),
                format!("{} : {}", self.show_term(t), self.show_type(&found)),
            ))
        }
    }

    pub fn kind_of(&mut self, ty: &TypeExpr) -> Result<Kind> {
        match ty {
            TypeExpr::Atom(f, args) => {
                let mut k = self.sym_kind(f)?;
                for a in args {
                    match k {
                        Kind::Pi(_, dom, rest) => {
                            self.check(a, &dom)?;
                            k = rest.instantiate(a);
                        }
                        Kind::Type => {
                            return Err(Error::KindMismatch {
                                expected: "a type family".into(),
                                found: format!("`{f}` applied to too many arguments"),
                            })
                        }
                    }
                }
                Ok(k)
            }
            TypeExpr::Pi(h, a, b) => {
                self.check_type(a)?;
                self.push(h.clone(), (**a).clone());
                let r = self.check_type(b);
                self.pop();
                r.map(|_| Kind::Type)
            }
            TypeExpr::Eq(c, l, r) => {
                self.check_type(c)?;
                self.check(l, c)?;
                self.check(r, c)?;
                Ok(Kind::Type)
            }
        }
    }

    /// Checks `ty : type`.
    pub fn check_type(&mut self, ty: &TypeExpr) -> Result<()> {
        match self.kind_of(ty)? {
            Kind::Type => Ok(()),
            k => Err(Error::KindMismatch {
                expected: "type".into(),
                found: format!("{} : {}", self.show_type(ty), self.show_kind(&k)),
            }),
        }
    }

    pub fn check_kind(&mut self, k: &Kind) -> Result<()> {
        match k {
            Kind::Type => Ok(()),
            Kind::Pi(h, a, rest) => {
                self.check_type(a)?;
                self.push(h.clone(), (**a).clone());
                let r = self.check_kind(rest);
                self.pop();
                r
            }
        }
    }

    /// Weak head normal form (β only).
    pub fn whnf(t: &Term) -> Term {
        match t {
            Term::App(f, x) => match Self::whnf(f) {
                Term::Lam(_, _, body) => Self::whnf(&body.instantiate(x)),
                g => Term::App(Box::new(g), x.clone()),
            },
            _ => t.clone(),
        }
    }

    /// β-normal η-long form of a well-typed `t : ty`.
    pub fn nf(&mut self, t: &Term, ty: &TypeExpr) -> Term {
        if let TypeExpr::Pi(h, a, b) = ty {
            let hint = match t {
                Term::Lam(h2, _, _) => h2.clone(),
                _ => h.clone(),
            };
            let dom = self.nf_type(a);
            self.push(hint.clone(), (**a).clone());
            let body = Term::app(t.shift(1, 0), Term::Bound(0));
            let body = self.nf(&body, b);
            self.pop();
            return Term::Lam(hint, Box::new(dom), Box::new(body));
        }
        self.nf_neutral(&Self::whnf(t)).0
    }

    fn nf_neutral(&mut self, t: &Term) -> (Term, Option<TypeExpr>) {
        match t {
            Term::Sym(n) => (t.clone(), self.sym_type(n).ok()),
            Term::Bound(i) => (t.clone(), self.bound_type(*i).ok()),
            Term::App(f, x) => {
                let (f2, fty) = self.nf_neutral(f);
                match fty {
                    Some(TypeExpr::Pi(_, a, b)) => {
                        let x2 = self.nf(x, &a);
                        (Term::app(f2, x2), Some(b.instantiate(x)))
                    }
                    _ => (Term::App(Box::new(f2), x.clone()), None),
                }
            }
            Term::Lam(..) => (t.clone(), None),
        }
    }

    pub fn nf_type(&mut self, ty: &TypeExpr) -> TypeExpr {
        match ty {
            TypeExpr::Atom(f, args) => {
                let mut k = self.sym_kind(f).ok();
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    match k {
                        Some(Kind::Pi(_, dom, rest)) => {
                            out.push(self.nf(a, &dom));
                            k = Some(rest.instantiate(a));
                        }
                        _ => {
                            out.push(a.clone());
                            k = None;
                        }
                    }
                }
                TypeExpr::Atom(f.clone(), out)
            }
            TypeExpr::Pi(h, a, b) => {
                let a2 = self.nf_type(a);
                self.push(h.clone(), (**a).clone());
                let b2 = self.nf_type(b);
                self.pop();
                TypeExpr::Pi(h.clone(), Box::new(a2), Box::new(b2))
            }
            TypeExpr::Eq(c, l, r) => {
                let l2 = self.nf(l, c);
                let r2 = self.nf(r, c);
                TypeExpr::Eq(Box::new(self.nf_type(c)), Box::new(l2), Box::new(r2))
            }
        }
    }

    pub fn nf_kind(&mut self, k: &Kind) -> Kind {
        match k {
            Kind::Type => Kind::Type,
            Kind::Pi(h, a, rest) => {
                let a2 = self.nf_type(a);
                self.push(h.clone(), (**a).clone());
                let r = self.nf_kind(rest);
                self.pop();
                Kind::Pi(h.clone(), Box::new(a2), Box::new(r))
            }
        }
    }

    pub fn conv_type(&mut self, a: &TypeExpr, b: &TypeExpr) -> bool {
        a == b || self.nf_type(a) == self.nf_type(b)
    }

    pub fn conv_kind(&mut self, a: &Kind, b: &Kind) -> bool {
        a == b || self.nf_kind(a) == self.nf_kind(b)
    }

    /// Convertibility of two typed terms.
    pub fn conv(&mut self, s1: &Term, t1: &TypeExpr, s2: &Term, t2: &TypeExpr) -> Result<bool> {
        for (s, t) in [(s1, t1), (s2, t2)] {
            self.check(s, t).map_err(|e| Error::IllTyped(e.to_string()))?;
        }
        if !self.conv_type(t1, t2) {
            return Ok(false);
        }
        Ok(self.nf(s1, t1) == self.nf(s2, t1))
    }
}

pub fn infer_type(sig: &dyn Signature, t: &Term) -> Result<TypeExpr> {
    Ctx::new(sig).infer(t)
}

pub fn check_kind(sig: &dyn Signature, ty: &TypeExpr) -> Result<Kind> {
    Ctx::new(sig).kind_of(ty)
}

pub fn normalize(sig: &dyn Signature, t: &Term, ty: &TypeExpr) -> Term {
    Ctx::new(sig).nf(t, ty)
}

pub fn conv(sig: &dyn Signature, s1: &Term, t1: &TypeExpr, s2: &Term, t2: &TypeExpr) -> Result<bool> {
    Ctx::new(sig).conv(s1, t1, s2, t2)
}
