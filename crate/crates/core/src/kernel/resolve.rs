//! Scope resolution and bidirectional elaboration of raw syntax into kernel syntax.

use super::syntax::{Family, Hint, Kind, Name, Term, TypeExpr};
use super::typing::{Ctx, Signature};
use crate::error::{Error, Result};
use crate::presentation::Classifier;
use crate::syntax::ast::{RawBinder, RawExpr};

pub struct Resolver<'a> {
    ctx: Ctx<'a>,
    sig: &'a dyn Signature,
    /// Local binder names, innermost last; `None` for anonymous arrow binders.
    names: Vec<Option<Name>>,
}

impl<'a> Resolver<'a> {
    pub fn new(sig: &'a dyn Signature) -> Self {
        Resolver { ctx: Ctx::new(sig), sig, names: Vec::new() }
    }

    fn push(&mut self, name: Option<Name>, ty: TypeExpr) {
        let hint = name.clone().map(Hint).unwrap_or_else(Hint::anon);
        self.ctx.push(hint, ty);
        self.names.push(name);
    }

    fn pop(&mut self) {
        self.ctx.pop();
        self.names.pop();
    }

    fn with_binder<R>(
        &mut self,
        name: Option<Name>,
        ty: TypeExpr,
        f: impl FnOnce(&mut Self) -> Result<R>,
    ) -> Result<R> {
        self.push(name, ty);
        let r = f(self);
        self.pop();
        r
    }

    fn local(&self, n: &Name) -> Option<usize> {
        self.names.iter().rev().position(|x| x.as_ref() == Some(n))
    }

    pub fn classifier(&mut self, raw: &RawExpr) -> Result<Classifier> {
        if raw.is_kind() {
            Ok(Classifier::Kind(self.kind(raw)?))
        } else {
            let t = self.type_expr(raw)?;
            self.ctx.check_type(&t)?;
            Ok(Classifier::Type(t))
        }
    }

    pub fn kind(&mut self, raw: &RawExpr) -> Result<Kind> {
        match raw {
            RawExpr::Type => Ok(Kind::Type),
            RawExpr::Arrow(a, k) => {
                let a = self.type_expr(a)?;
                let k = self.with_binder(None, a.clone(), |r| r.kind(k))?;
                Ok(Kind::Pi(Hint::anon(), Box::new(a), Box::new(k)))
            }
            RawExpr::Pi(bs, body) => {
                self.pi_binders(bs, &mut |r| r.kind(body), &|h, a, k| Kind::Pi(h, Box::new(a), Box::new(k)))
            }
            _ => Err(Error::KindMismatch { expected: "a kind".into(), found: crate::syntax::pretty::raw(raw) }),
        }
    }

    fn pi_binders<T>(
        &mut self,
        bs: &[RawBinder],
        body: &mut dyn FnMut(&mut Self) -> Result<T>,
        mk: &dyn Fn(Hint, TypeExpr, T) -> T,
    ) -> Result<T> {
        let Some((b, rest)) = bs.split_first() else {
            return body(self);
        };
        let Some(ann) = &b.ann else {
            return Err(Error::IllTyped(format!("binder `{}` needs a type annotation", b.name)));
        };
        let a = self.type_expr(ann)?;
        self.ctx.check_type(&a)?;
        let inner = self.with_binder(Some(b.name.clone()), a.clone(), |r| r.pi_binders(rest, body, mk))?;
        Ok(mk(Hint(b.name.clone()), a, inner))
    }

    pub fn type_expr(&mut self, raw: &RawExpr) -> Result<TypeExpr> {
        match raw {
            RawExpr::Arrow(a, b) => {
                let a = self.type_expr(a)?;
                self.ctx.check_type(&a)?;
                let b = self.with_binder(None, a.clone(), |r| r.type_expr(b))?;
                Ok(TypeExpr::Pi(Hint::anon(), Box::new(a), Box::new(b)))
            }
            RawExpr::Pi(bs, body) => {
                self.pi_binders(bs, &mut |r| r.type_expr(body), &|h, a, b| TypeExpr::Pi(h, Box::new(a), Box::new(b)))
            }
            RawExpr::Eq(l, r, carrier) => {
                let (l, c) = match carrier {
                    Some(c) => {
                        let c = self.type_expr(c)?;
                        self.ctx.check_type(&c)?;
                        (self.check(l, &c)?, c)
                    }
                    None => {
                        let (l, c) = self.infer(l)?;
                        (l, c)
                    }
                };
                let r = self.check(r, &c)?;
                Ok(TypeExpr::Eq(Box::new(c), Box::new(l), Box::new(r)))
            }
            RawExpr::Type => Err(Error::KindMismatch { expected: "a type".into(), found: "the kind `type`".into() }),
            RawExpr::Var(_) | RawExpr::App(..) => {
                let (head, args) = raw_spine(raw);
                let f = match head {
                    RawExpr::Var(f) if self.local(f).is_none() => f.clone(),
                    _ => return Err(Error::IllTyped(format!("`{}` is not a type", crate::syntax::pretty::raw(raw)))),
                };
                let mut k = match self.sig.classifier(&f) {
                    Some(Classifier::Kind(k)) => k.clone(),
                    Some(Classifier::Type(_)) => {
                        return Err(Error::IllTyped(format!("term symbol `{f}` used as a type")))
                    }
                    None => return Err(Error::UnboundName(f)),
                };
                let mut out = Vec::new();
                for a in args {
                    match k {
                        Kind::Pi(_, dom, rest) => {
                            let a = self.check(a, &dom)?;
                            k = rest.instantiate(&a);
                            out.push(a);
                        }
                        Kind::Type => {
                            return Err(Error::KindMismatch {
                                expected: "a type family".into(),
                                found: format!("`{f}` of kind type"),
                            })
                        }
                    }
                }
                Ok(TypeExpr::Atom(f, out))
            }
            RawExpr::Lam(..) => Err(Error::IllTyped("a λ-abstraction is not a type".into())),
        }
    }

    pub fn infer(&mut self, raw: &RawExpr) -> Result<(Term, TypeExpr)> {
        match raw {
            RawExpr::Var(n) => {
                if let Some(i) = self.local(n) {
                    let t = Term::Bound(i);
                    let ty = self.ctx.infer(&t)?;
                    return Ok((t, ty));
                }
                let t = Term::Sym(n.clone());
                let ty = self.ctx.infer(&t)?;
                Ok((t, ty))
            }
            RawExpr::App(f, a) => {
                let (f, fty) = self.infer(f)?;
                match fty {
                    TypeExpr::Pi(_, dom, cod) => {
                        let a = self.check(a, &dom)?;
                        let ty = cod.instantiate(&a);
                        Ok((Term::app(f, a), ty))
                    }
                    other => {
                        Err(Error::NotAFunction(format!("{} : {}", self.ctx.show_term(&f), self.ctx.show_type(&other))))
                    }
                }
            }
            RawExpr::Lam(bs, body) => {
                let (b, rest) = bs.split_first().expect("parser yields binders");
                let Some(ann) = &b.ann else {
                    return Err(Error::IllTyped(format!(
                        "cannot infer the type of binder `{}`; add an annotation",
                        b.name
                    )));
                };
                let a = self.type_expr(ann)?;
                self.ctx.check_type(&a)?;
                let inner = if rest.is_empty() { (**body).clone() } else { RawExpr::Lam(rest.to_vec(), body.clone()) };
                let (t, ty) = self.with_binder(Some(b.name.clone()), a.clone(), |r| r.infer(&inner))?;
                let h = Hint(b.name.clone());
                Ok((Term::Lam(h.clone(), Box::new(a.clone()), Box::new(t)), TypeExpr::Pi(h, Box::new(a), Box::new(ty))))
            }
            _ => Err(Error::IllTyped(format!("expected a term, found `{}`", crate::syntax::pretty::raw(raw)))),
        }
    }

    pub fn check(&mut self, raw: &RawExpr, expected: &TypeExpr) -> Result<Term> {
        if let RawExpr::Lam(bs, body) = raw {
            let (b, rest) = bs.split_first().expect("parser yields binders");
            let TypeExpr::Pi(_, dom, cod) = expected else {
                return Err(Error::type_mismatch(None, self.ctx.show_type(expected), "a function".to_string()));
            };
            let a = match &b.ann {
                Some(ann) => {
                    let a = self.type_expr(ann)?;
                    if !self.ctx.conv_type(&a, dom) {
                        return Err(Error::type_mismatch(None, self.ctx.show_type(dom), self.ctx.show_type(&a)));
                    }
                    a
                }
                None => (**dom).clone(),
            };
            let inner = if rest.is_empty() { (**body).clone() } else { RawExpr::Lam(rest.to_vec(), body.clone()) };
            let t = self.with_binder(Some(b.name.clone()), a.clone(), |r| r.check(&inner, cod))?;
            return Ok(Term::Lam(Hint(b.name.clone()), Box::new(a), Box::new(t)));
        }
        let (t, ty) = self.infer(raw)?;
        if self.ctx.conv_type(&ty, expected) {
            Ok(t)
        } else {
            Err(Error::type_mismatch(
                None,
                self.ctx.show_type(expected),
                format!("{} : {}", self.ctx.show_term(&t), self.ctx.show_type(&ty)),
            ))
        }
    }

    /// Resolves a type-family image for a symbol of kind `k`.
    pub fn family(&mut self, raw: &RawExpr, k: &Kind) -> Result<Family> {
        let mut params = Vec::new();
        let mut raw = raw.clone();
        let mut k = k.clone();
        let mut pushed = 0;
        let result = loop {
            match k {
                Kind::Type => break self.type_expr(&raw),
                Kind::Pi(_, dom, rest) => {
                    let name = match &raw {
                        RawExpr::Lam(bs, body) => {
                            let (b, more) = bs.split_first().expect("binders");
                            if let Some(ann) = &b.ann {
                                match self.type_expr(ann) {
                                    Ok(a) if self.ctx.conv_type(&a, &dom) => {}
                                    Ok(a) => {
                                        break Err(Error::type_mismatch(
                                            None,
                                            self.ctx.show_type(&dom),
                                            self.ctx.show_type(&a),
                                        ))
                                    }
                                    Err(e) => break Err(e),
                                }
                            }
                            let n = b.name.clone();
                            raw = if more.is_empty() {
                                (**body).clone()
                            } else {
                                RawExpr::Lam(more.to_vec(), body.clone())
                            };
                            n
                        }
                        _ => {
                            // η-expand with a name the lexer cannot produce.
                            let n = Name::new(format!("#{}", pushed));
                            raw = RawExpr::app(raw, RawExpr::Var(n.clone()));
                            n
                        }
                    };
                    params.push(Hint(name.clone()));
                    self.push(Some(name), (*dom).clone());
                    pushed += 1;
                    k = *rest;
                }
            }
        };
        for _ in 0..pushed {
            self.pop();
        }
        let body = result?;
        Ok(Family { params, body })
    }
}

fn raw_spine(raw: &RawExpr) -> (&RawExpr, Vec<&RawExpr>) {
    let mut args = Vec::new();
    let mut t = raw;
    while let RawExpr::App(f, a) = t {
        args.push(&**a);
        t = f;
    }
    args.reverse();
    (t, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests::{magma, u};
    use crate::presentation::{Declaration, Presentation};
    use crate::syntax::parse_raw;

    fn resolve_type(p: &Presentation, s: &str) -> Result<TypeExpr> {
        Resolver::new(p).type_expr(&parse_raw(s).unwrap())
    }

    #[test]
    fn resolves_axioms() {
        let t = resolve_type(&magma(), "forall x y z : U. (x * y) * z = x * (y * z)").unwrap();
        assert_eq!(
            crate::kernel::print::type_to_string(&t),
            "forall x:U. forall y:U. forall z:U. x * y * z = x * (y * z)"
        );
    }

    #[test]
    fn unannotated_lambda_checks_against_expected() {
        let p = magma();
        let binop = crate::presentation::tests::binop();
        let t = Resolver::new(&p).check(&parse_raw("\\x y. y * x").unwrap(), &binop).unwrap();
        assert_eq!(crate::kernel::print::term_to_string(&t), "\\x:U. \\y:U. y * x");
        assert!(Resolver::new(&p).infer(&parse_raw("\\x y. y * x").unwrap()).is_err());
    }

    #[test]
    fn unbound_and_mismatch() {
        assert!(matches!(resolve_type(&Presentation::empty(), "U"), Err(Error::UnboundName(_))));
        let p = magma();
        assert!(matches!(resolve_type(&p, "forall x : U. x * x = `*`"), Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn classifier_detects_kinds() {
        let p = magma();
        let c = Resolver::new(&p).classifier(&parse_raw("U -> U -> type").unwrap()).unwrap();
        assert!(matches!(c, Classifier::Kind(Kind::Pi(..))));
        let c = Resolver::new(&p).classifier(&parse_raw("U -> U").unwrap()).unwrap();
        assert!(matches!(c, Classifier::Type(_)));
    }

    #[test]
    fn family_images() {
        let p = Presentation::wf_check(vec![
            Declaration::ty("U", Kind::Type),
            Declaration::ty("R", Kind::pi("a", u(), Kind::pi("b", u(), Kind::Type))),
        ])
        .unwrap();
        let k = Kind::pi("a", u(), Kind::pi("b", u(), Kind::Type));
        let f = Resolver::new(&p).family(&parse_raw("R").unwrap(), &k).unwrap();
        assert_eq!(f.as_symbol(), Some(&Name::new("R")));
        let g = Resolver::new(&p).family(&parse_raw("\\x y. R y x").unwrap(), &k).unwrap();
        assert_eq!(g.body, TypeExpr::Atom(Name::new("R"), vec![Term::Bound(0), Term::Bound(1)]));
    }
}
