//! Views (typed substitutions between presentations) and embeddings.

use crate::error::{Error, Result};
use crate::kernel::print::{kind_to_string, show_name, term_to_string};
use crate::kernel::{Assignment, Ctx, Family, Image, Kind, Name, Term};
use crate::presentation::{Classifier, Declaration, ExtensionBody, Presentation};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A finite-support map on names. Entries `x ↦ x` are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Renaming {
    map: BTreeMap<Name, Name>,
}

impl Renaming {
    pub fn identity() -> Self {
        Renaming::default()
    }

    /// Builds a renaming, rejecting repeated keys and non-injective maps.
    pub fn new(pairs: impl IntoIterator<Item = (Name, Name)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if let Some(prev) = map.insert(k.clone(), v.clone()) {
                if prev != v {
                    return Err(Error::NotInjective(k.clone(), k, v));
                }
            }
        }
        let r = Renaming { map: map.into_iter().filter(|(k, v)| k != v).collect() };
        r.check_injective_on(&r.map.keys().cloned().collect())?;
        Ok(r)
    }

    pub(crate) fn from_map_unchecked(map: BTreeMap<Name, Name>) -> Self {
        Renaming { map: map.into_iter().filter(|(k, v)| k != v).collect() }
    }

    pub fn pairs(p: &[(&str, &str)]) -> Result<Self> {
        Renaming::new(p.iter().map(|(a, b)| (Name::new(a), Name::new(b))))
    }

    pub fn apply(&self, n: &Name) -> Name {
        self.map.get(n).unwrap_or(n).clone()
    }

    pub fn get(&self, n: &Name) -> Option<&Name> {
        self.map.get(n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.map.iter()
    }

    pub fn support(&self) -> BTreeSet<Name> {
        self.map.keys().cloned().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Checks that `names` have pairwise distinct images.
    pub fn check_injective_on(&self, names: &BTreeSet<Name>) -> Result<()> {
        let mut seen: BTreeMap<Name, &Name> = BTreeMap::new();
        for x in names {
            let y = self.apply(x);
            if let Some(prev) = seen.insert(y.clone(), x) {
                return Err(Error::NotInjective(prev.clone(), x.clone(), y));
            }
        }
        Ok(())
    }

    pub fn restrict(&self, names: &BTreeSet<Name>) -> Renaming {
        Renaming {
            map: self.map.iter().filter(|(k, _)| names.contains(*k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// The assignment sending each symbol of `source` to its renamed symbol.
    pub fn to_assignment(&self, source: &Presentation) -> Assignment {
        source
            .decls()
            .iter()
            .map(|d| {
                let y = self.apply(&d.name);
                let img = match &d.classifier {
                    Classifier::Type(_) => Image::Term(Term::Sym(y)),
                    Classifier::Kind(k) => Image::Type(Family::of_name(y, k)),
                };
                (d.name.clone(), img)
            })
            .collect()
    }
}

impl fmt::Display for Renaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.map.iter().map(|(k, v)| format!("{k} |-> {v}")).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

/// A typed assignment `source → target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct View {
    source: Presentation,
    target: Presentation,
    assignment: Assignment,
}

fn image_kind_mismatch(x: &Name, expected: String, found: &str) -> Error {
    Error::type_mismatch(Some(x.clone()), expected, found.to_string())
}

/// Checks that `a` assigns a well-typed target expression to every source symbol.
pub fn check_view(source: &Presentation, target: &Presentation, a: Assignment) -> Result<View> {
    for d in source.decls() {
        if !a.contains(&d.name) {
            return Err(Error::MissingAssignment(d.name.clone()));
        }
    }
    if let Some(extra) = a.support().into_iter().find(|n| !source.contains(n)) {
        return Err(Error::ExtraAssignment(extra));
    }
    let mut ctx = Ctx::new(target);
    for d in source.decls() {
        let img = a.get(&d.name).expect("checked above");
        match (&d.classifier, img) {
            (Classifier::Type(sigma), Image::Term(t)) => {
                let expected = sigma.substitute(&a);
                let found = ctx.infer(t).map_err(|e| {
                    Error::type_mismatch(
                        Some(d.name.clone()),
                        ctx.show_type(&expected),
                        format!("{} ({e})", ctx.show_term(t)),
                    )
                })?;
                if !ctx.conv_type(&found, &expected) {
                    return Err(Error::type_mismatch(
                        Some(d.name.clone()),
                        ctx.show_type(&expected),
                        ctx.show_type(&found),
                    ));
                }
            }
            (Classifier::Kind(k), Image::Type(fam)) => {
                let k = k.substitute(&a);
                if fam.params.len() != k.arity() {
                    return Err(image_kind_mismatch(&d.name, kind_to_string(&k), "a family of different arity"));
                }
                let mut kk = &k;
                let mut pushed = 0;
                let mut res = Ok(());
                while let Kind::Pi(h, dom, rest) = kk {
                    if let Err(e) = ctx.check_type(dom) {
                        res = Err(e);
                        break;
                    }
                    ctx.push(h.clone(), (**dom).clone());
                    pushed += 1;
                    kk = rest;
                }
                if res.is_ok() {
                    res = ctx.check_type(&fam.body);
                }
                for _ in 0..pushed {
                    ctx.pop();
                }
                res.map_err(|e| image_kind_mismatch(&d.name, kind_to_string(&k), &e.to_string()))?;
            }
            (Classifier::Type(sigma), Image::Type(_)) => {
                return Err(image_kind_mismatch(&d.name, ctx.show_type(&sigma.substitute(&a)), "a type"));
            }
            (Classifier::Kind(k), Image::Term(t)) => {
                return Err(image_kind_mismatch(&d.name, kind_to_string(k), &term_to_string(t)));
            }
        }
    }
    Ok(View { source: source.clone(), target: target.clone(), assignment: a })
}

impl View {
    /// Builds a view whose typing is guaranteed by construction.
    pub(crate) fn trusted(source: Presentation, target: Presentation, assignment: Assignment) -> View {
        View { source, target, assignment }
    }

    pub fn identity(p: &Presentation) -> View {
        View::trusted(p.clone(), p.clone(), Renaming::identity().to_assignment(p))
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn image(&self, x: &Name) -> Option<&Image> {
        self.assignment.get(x)
    }

    /// `self ; w`: first `self`, then `w`.
    pub fn compose(&self, w: &View) -> Result<View> {
        if !self.target.same_theory(&w.source) {
            return Err(Error::SourceTargetMismatch("the first view's target is not the second view's source".into()));
        }
        let a = self.assignment.iter().map(|(k, img)| (k.clone(), img.substitute(&w.assignment))).collect();
        let v = View::trusted(self.source.clone(), w.target.clone(), a);
        #[cfg(debug_assertions)]
        check_view(&v.source, &v.target, v.assignment.clone())
            .map_err(|e| Error::Internal(format!("composite view failed its recheck: {e}")))?;
        Ok(v)
    }

    /// Pointwise convertibility of two views with the same endpoints.
    pub fn equiv(&self, other: &View) -> Result<bool> {
        if !self.source.same_theory(&other.source) || !self.target.same_theory(&other.target) {
            return Err(Error::SourceTargetMismatch("equivalence needs equal endpoints".into()));
        }
        Ok(self.first_difference(other).is_none())
    }

    /// The first source symbol (in declaration order) at which the views are not convertible.
    pub fn first_difference(&self, other: &View) -> Option<Name> {
        let mut ctx = Ctx::new(&self.target);
        for d in self.source.decls() {
            let (a, b) = (self.image(&d.name)?, other.image(&d.name)?);
            if a == b {
                continue;
            }
            let same = match (&d.classifier, a, b) {
                (Classifier::Type(sigma), Image::Term(s), Image::Term(t)) => {
                    let (ts, tt) = (sigma.substitute(&self.assignment), sigma.substitute(&other.assignment));
                    ctx.conv_type(&ts, &tt) && ctx.nf(s, &ts) == ctx.nf(t, &ts)
                }
                (Classifier::Kind(k), Image::Type(f), Image::Type(g)) if f.params.len() == g.params.len() => {
                    let (ka, kb) = (k.substitute(&self.assignment), k.substitute(&other.assignment));
                    if !ctx.conv_kind(&ka, &kb) {
                        false
                    } else {
                        let mut kk = &ka;
                        let mut n = 0;
                        while let Kind::Pi(h, dom, rest) = kk {
                            ctx.push(h.clone(), (**dom).clone());
                            n += 1;
                            kk = rest;
                        }
                        let r = ctx.nf_type(&f.body) == ctx.nf_type(&g.body);
                        for _ in 0..n {
                            ctx.pop();
                        }
                        r
                    }
                }
                _ => false,
            };
            if !same {
                return Some(d.name.clone());
            }
        }
        None
    }

    /// Assignment lines `x |-> image` in source declaration order.
    pub fn assignment_lines(&self) -> Vec<String> {
        self.source
            .decls()
            .iter()
            .map(|d| {
                let img = match self.image(&d.name) {
                    Some(Image::Term(t)) => match t {
                        Term::Sym(n) => decl_name(n),
                        t => term_to_string(t),
                    },
                    Some(Image::Type(f)) => match f.as_symbol() {
                        Some(n) => decl_name(n),
                        None => family_to_string(f),
                    },
                    None => "?".into(),
                };
                format!("{} |-> {img}", decl_name(&d.name))
            })
            .collect()
    }
}

fn decl_name(n: &Name) -> String {
    if n.is_operator() {
        n.to_string()
    } else {
        show_name(n)
    }
}

fn family_to_string(f: &Family) -> String {
    let names: Vec<Name> = f.params.iter().map(|h| h.0.clone()).collect();
    let body = crate::kernel::print::Printer::with_locals(names.clone()).type_expr(&f.body);
    if names.is_empty() {
        body
    } else {
        let ps: Vec<String> = names.iter().map(show_name).collect();
        format!("\\{}. {body}", ps.join(" "))
    }
}

/// A view induced by a bijective renaming of names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    view: View,
    pi: Renaming,
    renamed_base: Presentation,
    extension: ExtensionBody,
}

/// Recognizes views that send every symbol to a distinct bare symbol.
pub fn as_embedding(v: &View) -> Result<Embedding> {
    let mut map = BTreeMap::new();
    for d in v.source.decls() {
        let img = v.image(&d.name).expect("views are total");
        let Some(y) = img.as_symbol() else {
            return Err(Error::NotAnEmbedding(format!("the image of `{}` is not a bare symbol", d.name)));
        };
        map.insert(d.name.clone(), y.clone());
    }
    let pi = Renaming::from_map_unchecked(map);
    pi.check_injective_on(&v.source.symbols())
        .map_err(|e| Error::NotAnEmbedding(format!("the name map is not injective ({e})")))?;
    Ok(Embedding::from_parts(v.clone(), pi))
}

impl Embedding {
    fn from_parts(view: View, pi: Renaming) -> Embedding {
        let renamed_base = view.source.map_names(&|n| pi.apply(n));
        let image: BTreeSet<Name> = renamed_base.symbols();
        let extension = ExtensionBody::new(
            view.target.decls().iter().filter(|d| !image.contains(&d.name)).cloned().collect::<Vec<Declaration>>(),
        );
        Embedding { view, pi, renamed_base, extension }
    }

    /// Builds the embedding `source → target` induced by `pi`; typing is the caller's guarantee.
    pub(crate) fn trusted(source: &Presentation, target: &Presentation, pi: Renaming) -> Embedding {
        let pi = pi.restrict(&source.symbols());
        let view = View::trusted(source.clone(), target.clone(), pi.to_assignment(source));
        Embedding::from_parts(view, pi)
    }

    pub fn identity(p: &Presentation) -> Embedding {
        Embedding::trusted(p, p, Renaming::identity())
    }

    pub fn view(&self) -> &View {
        &self.view
    }

    pub fn into_view(self) -> View {
        self.view
    }

    pub fn pi(&self) -> &Renaming {
        &self.pi
    }

    pub fn source(&self) -> &Presentation {
        &self.view.source
    }

    pub fn target(&self) -> &Presentation {
        &self.view.target
    }

    pub fn renamed_base(&self) -> &Presentation {
        &self.renamed_base
    }

    pub fn extension(&self) -> &ExtensionBody {
        &self.extension
    }

    /// `π(x)` for a source symbol.
    pub fn map(&self, x: &Name) -> Name {
        self.pi.apply(x)
    }

    pub fn is_inclusion(&self) -> bool {
        self.pi.is_identity()
    }

    pub fn compose(&self, other: &Embedding) -> Result<Embedding> {
        let v = self.view.compose(&other.view)?;
        as_embedding(&v)
    }

    /// `renamed_base ⋊ extension`, rechecked.
    pub fn recompose(&self) -> Result<Presentation> {
        self.renamed_base.append_extension(&self.extension)
    }
}
