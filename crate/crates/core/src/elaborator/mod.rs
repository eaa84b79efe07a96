//! Elaboration of combinator expressions into presentations, embeddings and views.
//!
//! Every expression is evaluated once into an [`ElabResult`] holding whichever of the three
//! denotations (theory, embedding, view) are defined. Type inference reads its answer off that
//! result, since the types themselves mention the constructed presentations.

mod graph;

pub use graph::{DiagramGraph, Edge, EdgeKind, Node};

use crate::combinators;
use crate::error::{Error, Pos, Result};
use crate::kernel::resolve::Resolver;
use crate::kernel::{Assignment, Family, Image, Name, Signature, Term};
use crate::morphism::{check_view, Embedding, Renaming, View};
use crate::presentation::{Classifier, Declaration, ExtensionBody, Presentation};
use crate::syntax::ast::{is_renaming, DefBody, MapArg, Module, RawDecl, RawMap, TpcExpr};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

/// The judgement forms for combinator expressions and their arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TpcType {
    Th(Presentation),
    Emb(Presentation, Presentation),
    ViewT(Presentation, Presentation),
    /// A renaming that must avoid the given names.
    Perm(BTreeSet<Name>),
    Assign(Presentation, Presentation),
}

impl TpcType {
    /// Whether a value of type `self` may be used where `other` is expected.
    pub fn coerces_to(&self, other: &TpcType) -> bool {
        use TpcType::*;
        match (self, other) {
            (Emb(a, b), Emb(c, d)) | (Emb(a, b), ViewT(c, d)) | (ViewT(a, b), ViewT(c, d)) => {
                a.same_theory(c) && b.same_theory(d)
            }
            (Emb(_, b), Th(d)) | (Th(b), Th(d)) => b.same_theory(d),
            (Perm(s), Perm(t)) => s.is_superset(t),
            (Assign(a, b), Assign(c, d)) => a.same_theory(c) && b.same_theory(d),
            _ => false,
        }
    }

    /// Renders the type, naming presentations with `label`.
    pub fn describe(&self, label: &dyn Fn(&Presentation) -> String) -> String {
        match self {
            TpcType::Th(p) => format!("Th({})", label(p)),
            TpcType::Emb(a, b) => format!("Emb({}, {})", label(a), label(b)),
            TpcType::ViewT(a, b) => format!("View({}, {})", label(a), label(b)),
            TpcType::Perm(s) if s.is_empty() => "Perm".into(),
            TpcType::Perm(s) => {
                format!("Perm({})", s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "))
            }
            TpcType::Assign(a, b) => format!("Assign({}, {})", label(a), label(b)),
        }
    }
}

impl fmt::Display for TpcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&brace_label))
    }
}

fn brace_label(p: &Presentation) -> String {
    let names: Vec<String> = p.canonical_order().names().map(|n| n.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

/// The defined denotations of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElabResult {
    pub as_theory: Option<Presentation>,
    pub as_embedding: Option<Embedding>,
    pub as_view: Option<View>,
}

impl ElabResult {
    fn embedding(e: Embedding) -> ElabResult {
        ElabResult { as_theory: Some(e.target().clone()), as_view: Some(e.view().clone()), as_embedding: Some(e) }
    }

    fn view(v: View) -> ElabResult {
        ElabResult { as_theory: None, as_embedding: None, as_view: Some(v) }
    }

    /// The most informative type: embedding, then view, then theory.
    pub fn tpc_type(&self) -> TpcType {
        if let Some(e) = &self.as_embedding {
            TpcType::Emb(e.source().clone(), e.target().clone())
        } else if let Some(v) = &self.as_view {
            TpcType::ViewT(v.source().clone(), v.target().clone())
        } else {
            TpcType::Th(self.as_theory.clone().unwrap_or_else(Presentation::empty))
        }
    }

    /// Whether the expression also checks at `ty`.
    pub fn checks_as(&self, ty: &TpcType) -> bool {
        match ty {
            TpcType::Th(b) => self.as_theory.as_ref().is_some_and(|p| p.same_theory(b)),
            TpcType::Emb(..) => self
                .as_embedding
                .as_ref()
                .is_some_and(|e| TpcType::Emb(e.source().clone(), e.target().clone()).coerces_to(ty)),
            TpcType::ViewT(a, b) => {
                self.as_view.as_ref().is_some_and(|v| v.source().same_theory(a) && v.target().same_theory(b))
            }
            TpcType::Perm(_) | TpcType::Assign(..) => false,
        }
    }

    pub fn theory(&self) -> Result<&Presentation> {
        self.as_theory.as_ref().ok_or_else(|| {
            Error::SpecificationError("a view denotes a morphism; its theory component is undefined".into())
        })
    }

    pub fn embedding_ref(&self) -> Result<&Embedding> {
        self.as_embedding
            .as_ref()
            .ok_or_else(|| Error::SpecificationError("the expression does not denote an embedding".into()))
    }

    pub fn view_ref(&self) -> Result<&View> {
        self.as_view.as_ref().ok_or_else(|| Error::SpecificationError("the expression does not denote a view".into()))
    }
}

/// A named definition after elaboration.
#[derive(Clone, Debug)]
pub enum Entry {
    Expr {
        expr: TpcExpr,
        result: Box<ElabResult>,
    },
    /// A named renaming or assignment, kept raw: assignments are typed where they are used.
    Map(RawMap),
}

/// Elaborated definitions in module order.
#[derive(Clone, Debug, Default)]
pub struct Env {
    order: Vec<Name>,
    entries: BTreeMap<Name, Entry>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn get(&self, n: &Name) -> Option<&Entry> {
        self.entries.get(n)
    }

    pub fn result(&self, n: &Name) -> Result<&ElabResult> {
        match self.entries.get(n) {
            Some(Entry::Expr { result, .. }) => Ok(result),
            Some(Entry::Map(_)) => Err(Error::TypeError {
                rule: "reference",
                msg: format!("`{n}` names a renaming or assignment, not a theory expression"),
            }),
            None => Err(Error::UnknownDefinition(n.clone())),
        }
    }

    /// Definitions in module order.
    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Entry)> {
        self.order.iter().map(move |n| (n, &self.entries[n]))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Adds a definition; definitions are immutable once added.
    pub fn define(&mut self, name: Name, entry: Entry) -> Result<()> {
        if self.entries.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        self.order.push(name.clone());
        self.entries.insert(name, entry);
        Ok(())
    }

    /// Type of a named definition; named assignments have no type until their endpoints are known.
    pub fn type_of(&self, n: &Name) -> Result<Option<TpcType>> {
        match self.entries.get(n) {
            Some(Entry::Expr { result, .. }) => Ok(Some(result.tpc_type())),
            Some(Entry::Map(m)) if is_renaming(m) => Ok(Some(TpcType::Perm(BTreeSet::new()))),
            Some(Entry::Map(_)) => Ok(None),
            None => Err(Error::UnknownDefinition(n.clone())),
        }
    }

    fn map(&self, n: &Name) -> Result<&RawMap> {
        match self.entries.get(n) {
            Some(Entry::Map(m)) => Ok(m),
            Some(Entry::Expr { .. }) => Err(Error::TypeError {
                rule: "map argument",
                msg: format!("`{n}` names a theory expression, not a renaming or assignment"),
            }),
            None => Err(Error::UnknownDefinition(n.clone())),
        }
    }
}

fn type_error(rule: &'static str, msg: impl Into<String>) -> Error {
    Error::TypeError { rule, msg: msg.into() }
}

/// A presentation seen through additional trailing declarations.
struct Layered<'a> {
    base: &'a Presentation,
    extra: &'a [Declaration],
}

impl Signature for Layered<'_> {
    fn classifier(&self, n: &Name) -> Option<&Classifier> {
        match self.extra.iter().rev().find(|d| &d.name == n) {
            Some(d) => Some(&d.classifier),
            None => self.base.classifier(n),
        }
    }
}

/// Resolves declarations in order, each against `base` plus the ones before it.
pub fn resolve_decls(base: &Presentation, raw: &[RawDecl]) -> Result<Vec<Declaration>> {
    let mut out: Vec<Declaration> = Vec::with_capacity(raw.len());
    for d in raw {
        let sig = Layered { base, extra: &out };
        let classifier = Resolver::new(&sig)
            .classifier(&d.classifier)
            .map_err(|e| Error::IllFormedClassifier(d.name.clone(), e.to_string()))?;
        out.push(Declaration::new(d.name.clone(), classifier));
    }
    Ok(out)
}

/// Turns a map argument into a renaming, rejecting assignments.
pub fn check_renaming_arg(m: &RawMap, rule: &'static str) -> Result<Renaming> {
    if !is_renaming(m) {
        let (x, _) = m.iter().find(|(_, e)| e.as_var().is_none()).expect("not a renaming");
        return Err(type_error(rule, format!("expected a renaming, but `{x}` is assigned a compound term")));
    }
    Renaming::new(m.iter().map(|(x, e)| (x.clone(), e.as_var().expect("renaming").clone())))
}

/// Resolves and checks an assignment `source → target`.
///
/// Source symbols without an entry are sent to the target symbol of the same name when there is one.
pub fn check_assignment_arg(m: &RawMap, source: &Presentation, target: &Presentation) -> Result<View> {
    let mut given = BTreeMap::new();
    for (x, e) in m {
        if !source.contains(x) {
            return Err(Error::ExtraAssignment(x.clone()));
        }
        if given.insert(x.clone(), e).is_some() {
            return Err(Error::DuplicateName(x.clone()));
        }
    }
    let mut a = Assignment::new();
    for d in source.decls() {
        let img = match (given.get(&d.name), &d.classifier) {
            (Some(raw), Classifier::Type(sigma)) => {
                let expected = sigma.substitute_reducing(&a);
                Image::Term(Resolver::new(target).check(raw, &expected)?)
            }
            (Some(raw), Classifier::Kind(k)) => {
                let k = k.substitute_reducing(&a);
                Image::Type(Resolver::new(target).family(raw, &k)?)
            }
            (None, _) => match target.lookup(&d.name).map(|t| &t.classifier) {
                Some(Classifier::Kind(k)) => Image::Type(Family::of_name(d.name.clone(), k)),
                Some(Classifier::Type(_)) => Image::Term(Term::Sym(d.name.clone())),
                None => return Err(Error::MissingAssignment(d.name.clone())),
            },
        };
        a.insert(d.name.clone(), img);
    }
    check_view(source, target, a)
}

struct Evaluator<'a> {
    env: &'a Env,
    /// Morphisms produced by constructions, for the theory graph.
    trace: Vec<View>,
}

impl Evaluator<'_> {
    fn map_arg<'m>(&'m self, m: &'m MapArg) -> Result<&'m RawMap> {
        match m {
            MapArg::Literal(m) => Ok(m),
            MapArg::Ref(n) => self.env.map(n),
        }
    }

    fn renaming(&self, m: &MapArg, rule: &'static str) -> Result<Renaming> {
        check_renaming_arg(self.map_arg(m)?, rule)
    }

    fn theory_of(&mut self, e: &TpcExpr, rule: &'static str) -> Result<Presentation> {
        self.eval(e)?
            .as_theory
            .ok_or_else(|| type_error(rule, "the operand denotes a view, which has no theory component"))
    }

    fn embedding_of(&mut self, e: &TpcExpr, rule: &'static str, side: &str) -> Result<Embedding> {
        self.eval(e)?
            .as_embedding
            .ok_or_else(|| type_error(rule, format!("the {side} operand must denote an embedding")))
    }

    fn eval(&mut self, e: &TpcExpr) -> Result<ElabResult> {
        match e {
            TpcExpr::Empty => Ok(ElabResult::embedding(Embedding::identity(&Presentation::empty()))),
            TpcExpr::Theory(ds) => {
                let empty = Presentation::empty();
                let p = Presentation::wf_check(resolve_decls(&empty, ds)?)?;
                Ok(ElabResult::embedding(Embedding::trusted(&empty, &p, Renaming::identity())))
            }
            TpcExpr::Extend(a, ds) => {
                let base = self.theory_of(a, "extend")?;
                let body = ExtensionBody::new(resolve_decls(&base, ds)?);
                let r = combinators::extend(&base, &body)?;
                self.trace.push(r.embed.view().clone());
                Ok(ElabResult::embedding(r.embed))
            }
            TpcExpr::Rename(a, m) => {
                let base = self.theory_of(a, "rename")?;
                let pi = self.renaming(m, "rename")?;
                let r = combinators::rename(&base, &pi)?;
                self.trace.push(r.embed.view().clone());
                Ok(ElabResult::embedding(r.embed))
            }
            TpcExpr::Combine(a, r1, b, r2) => {
                let ua = self.embedding_of(a, "combine", "left")?;
                let ub = self.embedding_of(b, "combine", "right")?;
                let (p1, p2) = (self.renaming(r1, "combine")?, self.renaming(r2, "combine")?);
                let c = combinators::combine(&ua, &ub, &p1, &p2)?;
                self.trace.push(c.embed_left.view().clone());
                self.trace.push(c.embed_right.view().clone());
                Ok(ElabResult::embedding(c.diag))
            }
            TpcExpr::Mixin(a, r1, b, r2) => {
                let v =
                    self.eval(a)?.as_view.ok_or_else(|| type_error("mixin", "the left operand must denote a view"))?;
                let u = self.embedding_of(b, "mixin", "right")?;
                let (p1, p2) = (self.renaming(r1, "mixin")?, self.renaming(r2, "mixin")?);
                let m = combinators::mixin(&v, &u, &p1, &p2)?;
                self.trace.push(m.embed_left.view().clone());
                self.trace.push(m.view_right.clone());
                Ok(ElabResult { as_theory: Some(m.pres), as_embedding: None, as_view: Some(m.diag) })
            }
            TpcExpr::View(a, b, m) => {
                let s = self.theory_of(a, "view")?;
                let t = self.theory_of(b, "view")?;
                let v = check_assignment_arg(self.map_arg(m)?, &s, &t)?;
                self.trace.push(v.clone());
                Ok(ElabResult::view(v))
            }
            TpcExpr::Seq(a, b) => {
                let ra = self.eval(a)?;
                let rb = self.eval(b)?;
                let (Some(va), Some(vb)) = (&ra.as_view, &rb.as_view) else {
                    return Err(type_error(";", "both operands must denote views"));
                };
                let v = va.compose(vb)?;
                let emb = match (&ra.as_embedding, &rb.as_embedding) {
                    (Some(x), Some(y)) => Some(x.compose(y)?),
                    _ => None,
                };
                Ok(ElabResult { as_theory: Some(v.target().clone()), as_embedding: emb, as_view: Some(v) })
            }
            TpcExpr::Ref(n) => self.env.result(n).cloned(),
        }
    }
}

/// Evaluates an expression against `env`.
pub fn evaluate(e: &TpcExpr, env: &Env) -> Result<ElabResult> {
    Evaluator { env, trace: Vec::new() }.eval(e)
}

pub fn infer_tpc_type(e: &TpcExpr, env: &Env) -> Result<TpcType> {
    Ok(evaluate(e, env)?.tpc_type())
}

/// Checks `e` against an expected type, allowing embeddings where views or theories are expected.
pub fn check_tpc_type(e: &TpcExpr, env: &Env, ty: &TpcType) -> Result<()> {
    let r = evaluate(e, env)?;
    if r.checks_as(ty) {
        Ok(())
    } else {
        Err(type_error("check", format!("expected {ty}, found {}", r.tpc_type())))
    }
}

pub fn sem_c(e: &TpcExpr, env: &Env) -> Result<Presentation> {
    evaluate(e, env)?.theory().cloned()
}

pub fn sem_e(e: &TpcExpr, env: &Env) -> Result<Embedding> {
    evaluate(e, env)?.embedding_ref().cloned()
}

pub fn sem_b(e: &TpcExpr, env: &Env) -> Result<View> {
    evaluate(e, env)?.view_ref().cloned()
}

/// An elaboration failure attributed to a definition.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("in definition `{name}`: {error}")]
pub struct ElabError {
    pub name: Name,
    pub pos: Pos,
    pub error: Error,
}

/// The outcome of elaborating a whole module.
#[derive(Clone, Debug)]
pub struct Elaboration {
    pub env: Env,
    pub graph: DiagramGraph,
}

pub fn elaborate(module: &Module) -> std::result::Result<Elaboration, ElabError> {
    let mut env = Env::new();
    let mut morphisms: Vec<(Name, View)> = Vec::new();
    let mut defs: Vec<(Name, Option<Presentation>)> = Vec::new();
    for d in &module.defs {
        let located = |error| ElabError { name: d.name.clone(), pos: d.pos, error };
        let entry = match &d.body {
            DefBody::Map(m) => {
                if is_renaming(m) {
                    check_renaming_arg(m, "renaming").map_err(located)?;
                }
                Entry::Map(m.clone())
            }
            DefBody::Expr(e) => {
                let mut ev = Evaluator { env: &env, trace: Vec::new() };
                let result = ev.eval(e).map_err(located)?;
                morphisms.extend(ev.trace.into_iter().map(|v| (d.name.clone(), v)));
                defs.push((d.name.clone(), result.as_theory.clone()));
                Entry::Expr { expr: e.clone(), result: Box::new(result) }
            }
        };
        env.define(d.name.clone(), entry).map_err(located)?;
    }
    let graph = DiagramGraph::build(&defs, &morphisms);
    Ok(Elaboration { env, graph })
}

impl Elaboration {
    pub fn result(&self, n: &Name) -> Result<&ElabResult> {
        self.env.result(n)
    }

    /// Canonical flattened text of a definition's theory.
    pub fn flatten(&self, n: &Name) -> Result<String> {
        Ok(self.result(n)?.theory()?.flatten_text())
    }

    /// Node name when the presentation is in the graph, otherwise its symbol set.
    pub fn label(&self, p: &Presentation) -> String {
        match self.graph.node_of(p) {
            Some(node) => node.name.to_string(),
            None => brace_label(p),
        }
    }

    /// Deterministic text serialization of every definition.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let label = |p: &Presentation| self.label(p);
        for (n, entry) in self.env.iter() {
            let _ = writeln!(s, "definition {n}");
            match entry {
                Entry::Map(m) => {
                    let kind = if is_renaming(m) { "Perm" } else { "Assign" };
                    let _ = writeln!(s, "  type {kind}");
                    let _ = writeln!(s, "  map {}", crate::syntax::pretty::raw_map(m));
                }
                Entry::Expr { result, .. } => {
                    let _ = writeln!(s, "  type {}", result.tpc_type().describe(&label));
                    if let Some(p) = &result.as_theory {
                        let _ = writeln!(s, "  theory");
                        for line in p.flatten_text().lines() {
                            let _ = writeln!(s, "    {line}");
                        }
                    }
                    let (kind, v) = match (&result.as_embedding, &result.as_view) {
                        (Some(e), _) => ("embedding", Some(e.view())),
                        (None, Some(v)) => ("view", Some(v)),
                        _ => ("", None),
                    };
                    if let Some(v) = v {
                        let _ = writeln!(s, "  {kind} {} -> {}", label(v.source()), label(v.target()));
                        for line in v.assignment_lines() {
                            let _ = writeln!(s, "    {line}");
                        }
                    }
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_module;

    const MONOID: &str = "
        Carrier := Theory { U : type }
        Magma := extend Carrier by { * : U -> U -> U }
        Pointed := extend Carrier by { e : U }
        PointedMagma := Magma || Pointed
        Semigroup := extend Magma by { associative : forall x y z : U. (x * y) * z = x * (y * z) }
        LeftUnital := extend PointedMagma by { left_identity : forall x : U. e * x = x }
        RightUnital := extend PointedMagma by { right_identity : forall x : U. x * e = x }
        Unital := RightUnital || LeftUnital
        MagmaPointed := extend Magma by { e : U }
        Monoid := combine (MagmaPointed ; Unital) [], Semigroup []
        Flip := view Magma as Magma via [ * |-> \\x y. y * x ]
        FlipRU := mixin Flip [], (MagmaPointed ; LeftUnital) [left_identity |-> right_identity]
    ";

    fn run(src: &str) -> std::result::Result<Elaboration, ElabError> {
        elaborate(&parse_module(src).expect("parses"))
    }

    fn n(s: &str) -> Name {
        Name::new(s)
    }

    #[test]
    fn monoid_flattens_to_six_declarations() {
        let el = run(MONOID).unwrap();
        assert_eq!(
            el.flatten(&n("Monoid")).unwrap(),
            "U : type\n\
             * : U -> U -> U\n\
             associative : forall x:U. forall y:U. forall z:U. x * y * z = x * (y * z)\n\
             e : U\n\
             left_identity : forall x:U. e * x = x\n\
             right_identity : forall x:U. x * e = x\n"
        );
    }

    #[test]
    fn empty_is_the_identity_on_the_empty_theory() {
        let el = run("X := Empty").unwrap();
        let r = el.result(&n("X")).unwrap();
        assert!(r.as_theory.as_ref().unwrap().is_empty());
        let e = r.as_embedding.as_ref().unwrap();
        assert!(e.source().is_empty() && e.target().is_empty());
        assert_eq!(el.flatten(&n("X")).unwrap(), "");
    }

    #[test]
    fn views_have_no_theory_and_mixins_no_embedding() {
        let el = run(MONOID).unwrap();
        let flip = el.result(&n("Flip")).unwrap();
        assert!(matches!(flip.theory(), Err(Error::SpecificationError(_))));
        assert!(matches!(flip.embedding_ref(), Err(Error::SpecificationError(_))));
        assert!(flip.view_ref().is_ok());
        let mix = el.result(&n("FlipRU")).unwrap();
        assert!(matches!(mix.embedding_ref(), Err(Error::SpecificationError(_))));
        assert!(mix.theory().is_ok());
    }

    #[test]
    fn inferred_types() {
        let el = run(MONOID).unwrap();
        let ty = |s: &str| infer_tpc_type(&crate::syntax::parse_expr(s).unwrap(), &el.env).unwrap();
        let magma = el.result(&n("Magma")).unwrap().theory().unwrap().clone();
        let ru = el.result(&n("RightUnital")).unwrap().theory().unwrap().clone();
        let pm = el.result(&n("PointedMagma")).unwrap().theory().unwrap().clone();
        assert!(matches!(ty("extend Magma by { e : U }"), TpcType::Emb(a, b) if a == magma && b.same_theory(&pm)));
        assert!(matches!(ty("mixin Flip [], (MagmaPointed ; LeftUnital) [left_identity |-> right_identity]"),
            TpcType::ViewT(a, b) if a.same_theory(&magma) && b.same_theory(&ru)));
        let lu = el.result(&n("LeftUnital")).unwrap().theory().unwrap().clone();
        assert!(matches!(ty("MagmaPointed ; LeftUnital"), TpcType::Emb(a, b) if a == magma && b == lu));
        assert!(matches!(ty("Magma ; Flip"), TpcType::ViewT(..)));
    }

    #[test]
    fn embeddings_check_as_views_and_theories() {
        let el = run(MONOID).unwrap();
        let e = crate::syntax::parse_expr("Magma").unwrap();
        let ty = infer_tpc_type(&e, &el.env).unwrap();
        let TpcType::Emb(a, b) = ty.clone() else { panic!("{ty}") };
        check_tpc_type(&e, &el.env, &TpcType::ViewT(a, b.clone())).unwrap();
        check_tpc_type(&e, &el.env, &TpcType::Th(b)).unwrap();
        let flip = crate::syntax::parse_expr("Flip").unwrap();
        let m = el.result(&n("Magma")).unwrap().theory().unwrap().clone();
        assert!(matches!(check_tpc_type(&flip, &el.env, &TpcType::Th(m)), Err(Error::TypeError { .. })));
    }

    #[test]
    fn operands_of_the_wrong_sort_are_type_errors() {
        let src = format!("{MONOID}\nBad := combine Flip [], Magma []");
        let err = run(&src).unwrap_err();
        assert_eq!(err.name, n("Bad"));
        assert!(matches!(err.error, Error::TypeError { rule: "combine", .. }));
        let err = run(&format!("{MONOID}\nBad := extend Flip by {{ c : U }}")).unwrap_err();
        assert!(matches!(err.error, Error::TypeError { rule: "extend", .. }));
    }

    #[test]
    fn renaming_condition_is_enforced() {
        let src = "
            Carrier := Theory { U : type }
            Magma := extend Carrier by { * : U -> U -> U }
            Semigroup := extend Magma by { associative : forall x y z : U. (x * y) * z = x * (y * z) }
            AddMagma := Magma [ * |-> + ]
            Bad := combine Semigroup [], AddMagma []
        ";
        let err = run(src).unwrap_err();
        assert_eq!(err.error.code(), "RenamingConditionViolated");
        let good = src.replace("Semigroup [],", "Semigroup [* |-> +, associative |-> associative_+],");
        let el = run(&good).unwrap();
        assert!(el.flatten(&n("Bad")).unwrap().contains("associative_+ : forall x:U."));
    }

    #[test]
    fn named_maps_are_reusable() {
        let src = "
            Carrier := Theory { U : type }
            Magma := extend Carrier by { * : U -> U -> U }
            plus := [ * |-> + ]
            swap := [ * |-> \\x y. y * x ]
            AddMagma := Magma plus
            Flip := view Magma as Magma via swap
        ";
        let el = run(src).unwrap();
        assert_eq!(el.flatten(&n("AddMagma")).unwrap(), "U : type\n+ : U -> U -> U\n");
        assert_eq!(el.env.type_of(&n("plus")).unwrap(), Some(TpcType::Perm(BTreeSet::new())));
        assert_eq!(el.env.type_of(&n("swap")).unwrap(), None);
        let err = run(&format!("{src}\nBad := Magma swap")).unwrap_err();
        assert!(matches!(err.error, Error::TypeError { rule: "rename", .. }));
    }

    #[test]
    fn views_complete_missing_entries_by_name() {
        let el = run(MONOID).unwrap();
        let flip = el.result(&n("Flip")).unwrap().view_ref().unwrap();
        assert_eq!(flip.assignment_lines(), vec!["U |-> U", "* |-> \\x:U. \\y:U. y * x"]);
        let err = run(&format!("{MONOID}\nBad := view Magma as Carrier via []")).unwrap_err();
        assert_eq!(err.error, Error::MissingAssignment(n("*")));
    }

    #[test]
    fn graph_records_construction_edges() {
        let el = run(MONOID).unwrap();
        let adj = el.graph.adjacency();
        let has = |a: &str, b: &str, k| adj.contains(&(a.to_string(), b.to_string(), k));
        assert!(has("Carrier", "Magma", EdgeKind::Include));
        assert!(has("Magma", "PointedMagma", EdgeKind::Include));
        assert!(has("Unital", "Monoid", EdgeKind::Include));
        assert!(has("Magma", "Magma", EdgeKind::View));
        assert!(has("LeftUnital", "RightUnital", EdgeKind::View));
        // MagmaPointed is the same theory as PointedMagma, and its edge is the same embedding.
        assert!(el.graph.nodes().iter().all(|x| x.name.as_str() != "MagmaPointed"));
        assert_eq!(adj.iter().filter(|(a, b, _)| a == "Magma" && b == "PointedMagma").count(), 1);
    }

    #[test]
    fn dump_is_deterministic_and_lists_assignments() {
        let a = run(MONOID).unwrap().dump();
        let b = run(MONOID).unwrap().dump();
        assert_eq!(a, b);
        assert!(a.contains("definition Monoid\n  type Emb(Magma, Monoid)\n"));
        assert!(a.contains("  embedding Magma -> Monoid\n    U |-> U\n    * |-> *\n"));
        assert!(a.contains("definition Flip\n  type View(Magma, Magma)\n  view Magma -> Magma\n"));
    }

    #[test]
    fn one_definition_dump_is_one_record() {
        let d = run("C := Theory { U : type }").unwrap().dump();
        assert_eq!(d, "definition C\n  type Emb({}, C)\n  theory\n    U : type\n  embedding {} -> C\n");
    }
}
