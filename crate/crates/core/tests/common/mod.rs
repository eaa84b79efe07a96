//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use tpc::combinators::{self, CombineResult, MixinResult};
use tpc::kernel::Assignment;
use tpc::kernel::{Family, Image, Kind, Name, Term, TypeExpr};
use tpc::morphism::{check_view, Embedding, Renaming, View};
use tpc::presentation::{Classifier, Declaration, ExtensionBody, Presentation};

pub struct Gen {
    pub rng: ChaCha8Rng,
    fresh: usize,
}

/// Names shared by independently generated extensions, so that clashes occur.
const POOL: &[&str] = &["a", "b", "c", "d", "f", "g", "h", "k", "p", "q"];
const TYPE_POOL: &[&str] = &["T", "S", "R"];

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), fresh: 0 }
    }

    /// A name that no generator pool can produce.
    pub fn fresh(&mut self, prefix: &str) -> Name {
        self.fresh += 1;
        Name::new(format!("{prefix}{}", self.fresh))
    }

    fn pick_name(&mut self, pool: &[&str], taken: &BTreeSet<Name>) -> Name {
        let free: Vec<&&str> = pool.iter().filter(|n| !taken.contains(&Name::new(**n))).collect();
        match free.choose(&mut self.rng) {
            Some(n) => Name::new(**n),
            None => self.fresh("n"),
        }
    }

    /// One well-formed declaration over `ctx`, named from the shared pools.
    pub fn decl(&mut self, ctx: &Presentation, taken: &BTreeSet<Name>) -> Declaration {
        let mut types = Vec::new();
        let mut families = Vec::new();
        let mut consts: Vec<(Name, Name)> = Vec::new();
        let mut unary: Vec<(Name, Name)> = Vec::new();
        let mut binary: Vec<(Name, Name)> = Vec::new();
        for d in ctx.decls() {
            match &d.classifier {
                Classifier::Kind(Kind::Type) => types.push(d.name.clone()),
                Classifier::Kind(Kind::Pi(_, a, rest)) if **rest == Kind::Type => {
                    if let TypeExpr::Atom(t, args) = &**a {
                        if args.is_empty() {
                            families.push((d.name.clone(), t.clone()));
                        }
                    }
                }
                Classifier::Type(TypeExpr::Atom(t, args)) if args.is_empty() => {
                    consts.push((d.name.clone(), t.clone()))
                }
                Classifier::Type(ty) => {
                    if let Some(t) = endo(ty, 1) {
                        unary.push((d.name.clone(), t));
                    } else if let Some(t) = endo(ty, 2) {
                        binary.push((d.name.clone(), t));
                    }
                }
                _ => {}
            }
        }
        loop {
            let choice = self.rng.gen_range(0..8);
            let atom = |n: &Name| TypeExpr::Atom(n.clone(), vec![]);
            match choice {
                0 => {
                    let n = self.pick_name(TYPE_POOL, taken);
                    return Declaration::new(n, Classifier::Kind(Kind::Type));
                }
                1 if !types.is_empty() => {
                    let t = types.choose(&mut self.rng).unwrap().clone();
                    let n = self.pick_name(&["F", "G"], taken);
                    return Declaration::new(n, Classifier::Kind(Kind::pi("x", atom(&t), Kind::Type)));
                }
                2 if !types.is_empty() => {
                    let t = types.choose(&mut self.rng).unwrap().clone();
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(atom(&t)));
                }
                3 if !types.is_empty() => {
                    let t = atom(types.choose(&mut self.rng).unwrap());
                    let ty = if self.rng.gen_bool(0.5) {
                        TypeExpr::arrow(t.clone(), t)
                    } else {
                        TypeExpr::arrow(t.clone(), TypeExpr::arrow(t.clone(), t))
                    };
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(ty));
                }
                4 if !unary.is_empty() => {
                    let (f, t) = unary.choose(&mut self.rng).unwrap().clone();
                    let fx = Term::app(Term::Sym(f.clone()), Term::Bound(0));
                    let body = if self.rng.gen_bool(0.5) { fx } else { Term::app(Term::Sym(f), fx) };
                    let ax = TypeExpr::pi("x", atom(&t), TypeExpr::eq(atom(&t), body, Term::Bound(0)));
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(ax));
                }
                5 if !binary.is_empty() => {
                    let (g, t) = binary.choose(&mut self.rng).unwrap().clone();
                    let l = Term::apps(Term::Sym(g.clone()), [Term::Bound(1), Term::Bound(0)]);
                    let r = Term::apps(Term::Sym(g), [Term::Bound(0), Term::Bound(1)]);
                    let ax = TypeExpr::pi("x", atom(&t), TypeExpr::pi("y", atom(&t), TypeExpr::eq(atom(&t), l, r)));
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(ax));
                }
                6 if !families.is_empty() => {
                    let (fam, t) = families.choose(&mut self.rng).unwrap().clone();
                    let ty = match consts.iter().find(|(_, ct)| *ct == t) {
                        Some((c, _)) if self.rng.gen_bool(0.5) => TypeExpr::Atom(fam, vec![Term::Sym(c.clone())]),
                        _ => TypeExpr::pi("x", atom(&t), TypeExpr::Atom(fam, vec![Term::Bound(0)])),
                    };
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(ty));
                }
                7 if !consts.is_empty() => {
                    let (c, t) = consts.choose(&mut self.rng).unwrap().clone();
                    let ax = TypeExpr::eq(atom(&t), Term::Sym(c.clone()), Term::Sym(c));
                    return Declaration::new(self.pick_name(POOL, taken), Classifier::Type(ax));
                }
                _ => {}
            }
        }
    }

    /// `n` declarations appended to `base`, avoiding `avoid`.
    pub fn extension(&mut self, base: &Presentation, n: usize, avoid: &BTreeSet<Name>) -> ExtensionBody {
        let mut cur = base.clone();
        let mut decls = Vec::new();
        let mut taken: BTreeSet<Name> = base.symbols().union(avoid).cloned().collect();
        for _ in 0..n {
            let d = self.decl(&cur, &taken);
            taken.insert(d.name.clone());
            cur = cur
                .append_extension(&ExtensionBody::new(vec![d.clone()]))
                .expect("generated declaration is well formed");
            decls.push(d);
        }
        ExtensionBody::new(decls)
    }

    pub fn presentation(&mut self, n: usize) -> Presentation {
        let ext = self.extension(&Presentation::empty(), n, &BTreeSet::new());
        Presentation::wf_check(ext.decls().to_vec()).expect("well formed")
    }

    /// A bijective renaming of all of `p`'s symbols onto fresh names, on a random subset.
    pub fn fresh_renaming(&mut self, p: &Presentation) -> Renaming {
        let mut pairs = Vec::new();
        for n in p.names() {
            if self.rng.gen_bool(0.5) {
                pairs.push((n.clone(), self.fresh("r")));
            }
        }
        Renaming::new(pairs).expect("fresh names are injective")
    }

    /// An embedding out of `base`: optionally renamed, then extended by up to `max_ext` declarations.
    pub fn embedding_from(&mut self, base: &Presentation, max_ext: usize) -> Embedding {
        let renamed = if self.rng.gen_bool(0.4) {
            let pi = self.fresh_renaming(base);
            combinators::rename(base, &pi).expect("fresh renaming").embed
        } else {
            Embedding::identity(base)
        };
        let n = self.rng.gen_range(0..=max_ext);
        let ext = self.extension(renamed.target(), n, &BTreeSet::new());
        let e = combinators::extend(renamed.target(), &ext).expect("well formed").embed;
        renamed.compose(&e).expect("composable")
    }
}

/// For `A -> ... -> A` with `arity` arrows over an atom `A`, returns `A`.
fn endo(ty: &TypeExpr, arity: usize) -> Option<Name> {
    let mut t = ty;
    let mut atoms = Vec::new();
    for _ in 0..arity {
        match t {
            TypeExpr::Pi(_, a, b) if !b.mentions_index(0) => {
                atoms.push((**a).clone());
                t = b;
            }
            _ => return None,
        }
    }
    atoms.push(t.clone());
    match &atoms[0] {
        TypeExpr::Atom(n, args) if args.is_empty() && atoms.iter().all(|a| a == &atoms[0]) => Some(n.clone()),
        _ => None,
    }
}

/// Two embeddings out of a shared base and renamings satisfying the combine condition.
#[derive(Clone, Debug)]
pub struct CombineInstance {
    pub base: Presentation,
    pub u_left: Embedding,
    pub u_right: Embedding,
    pub pi_left: Renaming,
    pub pi_right: Renaming,
}

impl CombineInstance {
    pub fn generate(g: &mut Gen, max_base: usize, max_ext: usize) -> CombineInstance {
        let n = g.rng.gen_range(0..=max_base);
        let base = g.presentation(n);
        let u_left = g.embedding_from(&base, max_ext);
        let u_right = g.embedding_from(&base, max_ext);
        let (pi_left, pi_right) = valid_renamings(g, &base, &u_left, &u_right);
        CombineInstance { base, u_left, u_right, pi_left, pi_right }
    }

    pub fn combine(&self) -> tpc::Result<CombineResult> {
        combinators::combine(&self.u_left, &self.u_right, &self.pi_left, &self.pi_right)
    }

    pub fn combine_swapped(&self) -> tpc::Result<CombineResult> {
        combinators::combine(&self.u_right, &self.u_left, &self.pi_right, &self.pi_left)
    }

    /// The right renaming restricted to the right extension, as mixin takes it.
    pub fn pi_right_ext(&self) -> Renaming {
        let ext: BTreeSet<Name> = self.u_right.extension().names().cloned().collect();
        self.pi_right.restrict(&ext)
    }

    pub fn mixin(&self) -> tpc::Result<MixinResult> {
        combinators::mixin(self.u_left.view(), &self.u_right, &self.pi_left, &self.pi_right_ext())
    }
}

/// Renamings that identify two symbols exactly when they come from the same base symbol.
pub fn valid_renamings(g: &mut Gen, base: &Presentation, ul: &Embedding, ur: &Embedding) -> (Renaming, Renaming) {
    let mut used = BTreeSet::new();
    let (mut pl, mut pr) = (Vec::new(), Vec::new());
    for z in base.names() {
        let (l, r) = (ul.map(z), ur.map(z));
        let mut options = vec![l.clone(), r.clone()];
        options.retain(|o| !used.contains(o));
        let t = if options.is_empty() || g.rng.gen_bool(0.2) {
            g.fresh("s")
        } else {
            options.choose(&mut g.rng).unwrap().clone()
        };
        used.insert(t.clone());
        pl.push((l, t.clone()));
        pr.push((r, t));
    }
    for (emb, out) in [(ul, &mut pl), (ur, &mut pr)] {
        for y in emb.extension().names() {
            let t = if used.contains(y) || g.rng.gen_bool(0.2) { g.fresh("s") } else { y.clone() };
            used.insert(t.clone());
            out.push((y.clone(), t));
        }
    }
    (Renaming::new(pl).expect("injective"), Renaming::new(pr).expect("injective"))
}

/// A commuting cospan out of a pushout: both legs followed by a random embedding `k`.
pub fn cospan(g: &mut Gen, left: &View, right: &View, pres: &Presentation, extras: usize) -> (View, View, View) {
    let k = g.embedding_from_fresh(pres, extras);
    let wl = left.compose(k.view()).expect("composable");
    let wr = right.compose(k.view()).expect("composable");
    (wl, wr, k.into_view())
}

impl Gen {
    /// Renames every symbol of `p` to a fresh name, then adds up to `extras` declarations.
    pub fn embedding_from_fresh(&mut self, p: &Presentation, extras: usize) -> Embedding {
        let pairs: Vec<(Name, Name)> = p.names().map(|n| (n.clone(), self.fresh("o"))).collect();
        let r = combinators::rename(p, &Renaming::new(pairs).expect("fresh")).expect("fresh");
        let n = self.rng.gen_range(0..=extras);
        let ext = self.extension(r.embed.target(), n, &BTreeSet::new());
        let e = combinators::extend(r.embed.target(), &ext).expect("well formed").embed;
        r.embed.compose(&e).expect("composable")
    }
}

/// Every symbol-to-symbol assignment `source → target` that type-checks.
pub fn all_symbol_views(source: &Presentation, target: &Presentation) -> Vec<View> {
    let mut out = Vec::new();
    let mut a = Assignment::new();
    enumerate(source, target, 0, &mut a, &mut out);
    out
}

fn enumerate(source: &Presentation, target: &Presentation, i: usize, a: &mut Assignment, out: &mut Vec<View>) {
    let Some(d) = source.decls().get(i) else {
        if let Ok(v) = check_view(source, target, a.clone()) {
            out.push(v);
        }
        return;
    };
    for t in target.decls() {
        let img = match (&d.classifier, &t.classifier) {
            (Classifier::Type(_), Classifier::Type(_)) => Image::Term(Term::Sym(t.name.clone())),
            (Classifier::Kind(k), Classifier::Kind(k2)) if k.arity() == k2.arity() => {
                Image::Type(Family::of_name(t.name.clone(), k))
            }
            _ => continue,
        };
        a.insert(d.name.clone(), img);
        enumerate(source, target, i + 1, a, out);
    }
}
