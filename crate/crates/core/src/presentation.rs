//! Theory presentations: well-formed contexts of the kernel calculus.

use crate::error::{Error, Result};
use crate::kernel::print::{kind_to_string, show_name, type_to_string};
use crate::kernel::{Assignment, Ctx, Kind, Name, Signature, TypeExpr};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Classifier {
    /// A type symbol of the given kind.
    Kind(Kind),
    /// A term symbol of the given type.
    Type(TypeExpr),
}

impl Classifier {
    pub fn free_symbols(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        match self {
            Classifier::Kind(k) => k.free_symbols(&mut out),
            Classifier::Type(t) => t.free_symbols(&mut out),
        }
        out
    }

    pub fn substitute(&self, a: &Assignment) -> Classifier {
        match self {
            Classifier::Kind(k) => Classifier::Kind(k.substitute(a)),
            Classifier::Type(t) => Classifier::Type(t.substitute(a)),
        }
    }

    pub fn substitute_reducing(&self, a: &Assignment) -> Classifier {
        match self {
            Classifier::Kind(k) => Classifier::Kind(k.substitute_reducing(a)),
            Classifier::Type(t) => Classifier::Type(t.substitute_reducing(a)),
        }
    }

    pub fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> Classifier {
        match self {
            Classifier::Kind(k) => Classifier::Kind(k.map_names(f)),
            Classifier::Type(t) => Classifier::Type(t.map_names(f)),
        }
    }

    pub fn is_type_decl(&self) -> bool {
        matches!(self, Classifier::Kind(_))
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classifier::Kind(k) => f.write_str(&kind_to_string(k)),
            Classifier::Type(t) => f.write_str(&type_to_string(t)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Declaration {
    pub name: Name,
    pub classifier: Classifier,
}

impl Declaration {
    pub fn new(name: impl Into<Name>, classifier: Classifier) -> Self {
        Declaration { name: name.into(), classifier }
    }

    pub fn term(name: &str, ty: TypeExpr) -> Self {
        Declaration::new(name, Classifier::Type(ty))
    }

    pub fn ty(name: &str, k: Kind) -> Self {
        Declaration::new(name, Classifier::Kind(k))
    }
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.name.is_operator() { self.name.to_string() } else { show_name(&self.name) };
        write!(f, "{name} : {}", self.classifier)
    }
}

/// A well-formed, duplicate-free list of declarations. Immutable and cheap to clone.
#[derive(Clone)]
pub struct Presentation {
    decls: Arc<Vec<Declaration>>,
    index: Arc<HashMap<Name, usize>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.decls, &other.decls) || self.decls == other.decls
    }
}
impl Eq for Presentation {}

impl std::hash::Hash for Presentation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.decls.hash(state)
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.decls.iter().map(|d| d.to_string())).finish()
    }
}

/// Signature view over a prefix being checked.
struct Prefix<'a> {
    decls: &'a [Declaration],
    index: &'a HashMap<Name, usize>,
}

impl Signature for Prefix<'_> {
    fn classifier(&self, n: &Name) -> Option<&crate::presentation::Classifier> {
        self.index.get(n).filter(|&&i| i < self.decls.len()).map(|&i| &self.decls[i].classifier)
    }
}

impl Signature for Presentation {
    fn classifier(&self, n: &Name) -> Option<&Classifier> {
        self.index.get(n).map(|&i| &self.decls[i].classifier)
    }
}

fn check_classifier(sig: &dyn Signature, d: &Declaration) -> Result<()> {
    let mut ctx = Ctx::new(sig);
    let r = match &d.classifier {
        Classifier::Kind(k) => ctx.check_kind(k),
        Classifier::Type(t) => ctx.check_type(t),
    };
    r.map_err(|e| Error::IllFormedClassifier(d.name.clone(), e.to_string()))
}

impl Presentation {
    pub fn empty() -> Self {
        Presentation { decls: Arc::new(Vec::new()), index: Arc::new(HashMap::new()) }
    }

    /// Checks `Γ wfctx`, declaration by declaration.
    pub fn wf_check(decls: Vec<Declaration>) -> Result<Self> {
        Presentation::empty().append(decls)
    }

    /// Builds without checking. Callers must guarantee well-formedness.
    pub(crate) fn trusted(decls: Vec<Declaration>) -> Self {
        let index = decls.iter().enumerate().map(|(i, d)| (d.name.clone(), i)).collect();
        Presentation { decls: Arc::new(decls), index: Arc::new(index) }
    }

    fn append(&self, more: Vec<Declaration>) -> Result<Self> {
        let mut decls: Vec<Declaration> = (*self.decls).clone();
        let mut index: HashMap<Name, usize> = (*self.index).clone();
        for d in more {
            if index.contains_key(&d.name) {
                return Err(Error::DuplicateName(d.name));
            }
            check_classifier(&Prefix { decls: &decls, index: &index }, &d)?;
            index.insert(d.name.clone(), decls.len());
            decls.push(d);
        }
        Ok(Presentation { decls: Arc::new(decls), index: Arc::new(index) })
    }

    pub fn append_extension(&self, ext: &ExtensionBody) -> Result<Self> {
        self.append(ext.decls.clone())
    }

    pub fn decls(&self) -> &[Declaration] {
        &self.decls
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn contains(&self, n: &Name) -> bool {
        self.index.contains_key(n)
    }

    pub fn lookup(&self, n: &Name) -> Option<&Declaration> {
        self.index.get(n).map(|&i| &self.decls[i])
    }

    pub fn symbols(&self) -> BTreeSet<Name> {
        self.decls.iter().map(|d| d.name.clone()).collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.decls.iter().map(|d| &d.name)
    }

    /// Dependency-respecting order with ties broken by code point.
    pub fn canonical_order(&self) -> Presentation {
        let names = self.symbols();
        let deps: BTreeMap<&Name, BTreeSet<Name>> = self
            .decls
            .iter()
            .map(|d| {
                let mut s = d.classifier.free_symbols();
                s.retain(|x| names.contains(x) && x != &d.name);
                (&d.name, s)
            })
            .collect();
        let mut remaining: BTreeMap<&Name, usize> = deps.iter().map(|(n, s)| (*n, s.len())).collect();
        let mut users: BTreeMap<&Name, Vec<&Name>> = BTreeMap::new();
        for (n, s) in &deps {
            for x in s {
                let key = names.get(x).expect("dependency is a symbol");
                users.entry(key).or_default().push(n);
            }
        }
        let mut ready: BTreeSet<&Name> = remaining.iter().filter(|(_, c)| **c == 0).map(|(n, _)| *n).collect();
        let mut out = Vec::with_capacity(self.len());
        while let Some(n) = ready.pop_first() {
            out.push(self.lookup(n).expect("symbol").clone());
            for u in users.get(n).into_iter().flatten() {
                let c = remaining.get_mut(u).expect("user");
                *c -= 1;
                if *c == 0 {
                    ready.insert(u);
                }
            }
        }
        debug_assert_eq!(out.len(), self.len(), "well-formed presentations are acyclic");
        Presentation::trusted(out)
    }

    /// Equality up to reordering into canonical form.
    pub fn same_theory(&self, other: &Presentation) -> bool {
        self == other || (self.len() == other.len() && self.canonical_order() == other.canonical_order())
    }

    /// One declaration per line in canonical order.
    pub fn flatten_text(&self) -> String {
        let mut s = String::new();
        for d in self.canonical_order().decls() {
            s.push_str(&d.to_string());
            s.push('\n');
        }
        s
    }

    /// Renames every symbol occurrence by `f` (assumed injective on the symbols).
    pub(crate) fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> Presentation {
        Presentation::trusted(
            self.decls
                .iter()
                .map(|d| Declaration { name: f(&d.name), classifier: d.classifier.map_names(f) })
                .collect(),
        )
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.decls.iter() {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Declarations meant to be appended to some base; not checkable on their own.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtensionBody {
    decls: Vec<Declaration>,
}

impl ExtensionBody {
    pub fn new(decls: Vec<Declaration>) -> Self {
        ExtensionBody { decls }
    }

    pub fn decls(&self) -> &[Declaration] {
        &self.decls
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.decls.iter().map(|d| &d.name)
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }
}
