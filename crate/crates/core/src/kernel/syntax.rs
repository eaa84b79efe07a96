use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Characters that may form operator names.
pub const OPERATOR_CHARS: &str = "*+-/<>=~^&|!@#$%";

pub fn is_operator_char(c: char) -> bool {
    OPERATOR_CHARS.contains(c)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: impl AsRef<str>) -> Self {
        let s = s.as_ref();
        assert!(!s.is_empty(), "names are nonempty");
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for names made only of operator characters, which print infix.
    pub fn is_operator(&self) -> bool {
        self.0.chars().all(is_operator_char)
    }

    /// A name with a prime appended.
    pub fn primed(&self) -> Name {
        Name::new(format!("{}'", self.0))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Binder name kept for printing only. All hints compare equal, so derived
/// equality on terms is α-equivalence.
#[derive(Clone)]
pub struct Hint(pub Name);

impl Hint {
    pub fn new(s: &str) -> Self {
        Hint(Name::new(s))
    }

    /// Hint used for the binder of a non-dependent arrow.
    pub fn anon() -> Self {
        Hint::new("_")
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Hint {}
impl std::hash::Hash for Hint {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}
impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Hint {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}
impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Terms. Bound variables are de Bruijn indices; symbols are free names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Sym(Name),
    Bound(usize),
    Lam(Hint, Box<TypeExpr>, Box<Term>),
    App(Box<Term>, Box<Term>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TypeExpr {
    Atom(Name, Vec<Term>),
    Pi(Hint, Box<TypeExpr>, Box<TypeExpr>),
    Eq(Box<TypeExpr>, Box<Term>, Box<Term>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    Type,
    Pi(Hint, Box<TypeExpr>, Box<Kind>),
}

/// A type-level image: `λ params. body` where `body` has kind `type`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Family {
    pub params: Vec<Hint>,
    pub body: TypeExpr,
}

impl Family {
    /// The η-expanded family denoting the type symbol `name` of kind `kind`.
    pub fn of_name(name: Name, kind: &Kind) -> Family {
        let params = kind.param_hints();
        let n = params.len();
        let args = (0..n).map(|i| Term::Bound(n - 1 - i)).collect();
        Family { params, body: TypeExpr::Atom(name, args) }
    }

    /// The symbol this family names, if it is an η-expanded bare symbol.
    pub fn as_symbol(&self) -> Option<&Name> {
        let n = self.params.len();
        match &self.body {
            TypeExpr::Atom(f, args)
                if args.len() == n && args.iter().enumerate().all(|(i, a)| *a == Term::Bound(n - 1 - i)) =>
            {
                Some(f)
            }
            _ => None,
        }
    }

    pub fn apply(&self, args: &[Term]) -> Option<TypeExpr> {
        (args.len() == self.params.len()).then(|| self.body.open(0, args))
    }
}

/// The image of a single symbol under an assignment.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Image {
    Term(Term),
    Type(Family),
}

impl Image {
    pub fn as_symbol(&self) -> Option<&Name> {
        match self {
            Image::Term(Term::Sym(n)) => Some(n),
            Image::Term(_) => None,
            Image::Type(f) => f.as_symbol(),
        }
    }

    pub fn substitute(&self, a: &Assignment) -> Image {
        match self {
            Image::Term(t) => Image::Term(t.substitute(a)),
            Image::Type(f) => Image::Type(Family { params: f.params.clone(), body: f.body.substitute(a) }),
        }
    }

    pub fn free_symbols(&self, out: &mut BTreeSet<Name>) {
        match self {
            Image::Term(t) => t.free_symbols(out),
            Image::Type(f) => f.body.free_symbols(out),
        }
    }

    pub fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> Image {
        match self {
            Image::Term(t) => Image::Term(t.map_names(f)),
            Image::Type(fam) => Image::Type(Family { params: fam.params.clone(), body: fam.body.map_names(f) }),
        }
    }
}

/// A finite map from symbol names to locally closed images.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Assignment(pub BTreeMap<Name, Image>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn get(&self, n: &Name) -> Option<&Image> {
        self.0.get(n)
    }

    pub fn insert(&mut self, n: Name, img: Image) -> Option<Image> {
        self.0.insert(n, img)
    }

    pub fn insert_term(&mut self, n: impl Into<Name>, t: Term) {
        self.0.insert(n.into(), Image::Term(t));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Image)> {
        self.0.iter()
    }

    pub fn support(&self) -> BTreeSet<Name> {
        self.0.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, n: &Name) -> bool {
        self.0.contains_key(n)
    }
}

impl FromIterator<(Name, Image)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Name, Image)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

fn shift_index(i: usize, by: isize, cutoff: usize) -> usize {
    if i >= cutoff {
        let j = i as isize + by;
        assert!(j >= 0, "negative de Bruijn index after shift");
        j as usize
    } else {
        i
    }
}

fn open_index(i: usize, depth: usize, args: &[Term]) -> Term {
    let n = args.len();
    if i < depth {
        Term::Bound(i)
    } else if i - depth < n {
        args[n - 1 - (i - depth)].shift(depth as isize, 0)
    } else {
        Term::Bound(i - n)
    }
}

impl Term {
    pub fn sym(s: &str) -> Term {
        Term::Sym(Name::new(s))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(hint: &str, ty: TypeExpr, body: Term) -> Term {
        Term::Lam(Hint::new(hint), Box::new(ty), Box::new(body))
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn shift(&self, by: isize, cutoff: usize) -> Term {
        match self {
            Term::Sym(_) => self.clone(),
            Term::Bound(i) => Term::Bound(shift_index(*i, by, cutoff)),
            Term::Lam(h, ty, b) => {
                Term::Lam(h.clone(), Box::new(ty.shift(by, cutoff)), Box::new(b.shift(by, cutoff + 1)))
            }
            Term::App(f, a) => Term::App(Box::new(f.shift(by, cutoff)), Box::new(a.shift(by, cutoff))),
        }
    }

    /// Replaces the `args.len()` innermost free indices (seen from `depth`)
    /// by `args`, outermost argument first.
    pub fn open(&self, depth: usize, args: &[Term]) -> Term {
        match self {
            Term::Sym(_) => self.clone(),
            Term::Bound(i) => open_index(*i, depth, args),
            Term::Lam(h, ty, b) => {
                Term::Lam(h.clone(), Box::new(ty.open(depth, args)), Box::new(b.open(depth + 1, args)))
            }
            Term::App(f, a) => Term::App(Box::new(f.open(depth, args)), Box::new(a.open(depth, args))),
        }
    }

    pub fn instantiate(&self, arg: &Term) -> Term {
        self.open(0, std::slice::from_ref(arg))
    }

    pub fn mentions_index(&self, idx: usize) -> bool {
        match self {
            Term::Sym(_) => false,
            Term::Bound(i) => *i == idx,
            Term::Lam(_, ty, b) => ty.mentions_index(idx) || b.mentions_index(idx + 1),
            Term::App(f, a) => f.mentions_index(idx) || a.mentions_index(idx),
        }
    }

    pub fn free_symbols(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Sym(n) => {
                out.insert(n.clone());
            }
            Term::Bound(_) => {}
            Term::Lam(_, ty, b) => {
                ty.free_symbols(out);
                b.free_symbols(out);
            }
            Term::App(f, a) => {
                f.free_symbols(out);
                a.free_symbols(out);
            }
        }
    }

    pub fn symbols(&self) -> BTreeSet<Name> {
        let mut s = BTreeSet::new();
        self.free_symbols(&mut s);
        s
    }

    /// Simultaneous substitution of symbols. Images are locally closed, so
    /// no capture can occur.
    pub fn substitute(&self, a: &Assignment) -> Term {
        match self {
            Term::Sym(n) => match a.get(n) {
                Some(Image::Term(t)) => t.clone(),
                _ => self.clone(),
            },
            Term::Bound(_) => self.clone(),
            Term::Lam(h, ty, b) => Term::Lam(h.clone(), Box::new(ty.substitute(a)), Box::new(b.substitute(a))),
            Term::App(f, x) => Term::App(Box::new(f.substitute(a)), Box::new(x.substitute(a))),
        }
    }

    /// Substitution that contracts exactly the β-redexes it creates by
    /// placing a λ-image in head position (hereditary substitution).
    pub fn substitute_reducing(&self, a: &Assignment) -> Term {
        let (head, args) = self.spine();
        if let Term::Sym(n) = head {
            if let (Some(Image::Term(img)), false) = (a.get(n), args.is_empty()) {
                let args = args.into_iter().map(|x| x.substitute_reducing(a)).collect();
                return apply_reducing(img.clone(), args);
            }
        }
        match self {
            Term::Sym(_) | Term::Bound(_) => self.substitute(a),
            Term::Lam(h, ty, b) => {
                Term::Lam(h.clone(), Box::new(ty.substitute_reducing(a)), Box::new(b.substitute_reducing(a)))
            }
            Term::App(f, x) => Term::App(Box::new(f.substitute_reducing(a)), Box::new(x.substitute_reducing(a))),
        }
    }

    fn open_reducing(&self, depth: usize, arg: &Term) -> Term {
        let (head, args) = self.spine();
        if let (Term::Bound(i), false) = (head, args.is_empty()) {
            if *i == depth {
                let args = args.into_iter().map(|x| x.open_reducing(depth, arg)).collect();
                return apply_reducing(arg.shift(depth as isize, 0), args);
            }
        }
        match self {
            Term::Sym(_) | Term::Bound(_) => self.open(depth, std::slice::from_ref(arg)),
            Term::Lam(h, ty, b) => Term::Lam(
                h.clone(),
                Box::new(ty.open(depth, std::slice::from_ref(arg))),
                Box::new(b.open_reducing(depth + 1, arg)),
            ),
            Term::App(f, x) => Term::App(Box::new(f.open_reducing(depth, arg)), Box::new(x.open_reducing(depth, arg))),
        }
    }

    /// Renames symbols (term and type heads alike).
    pub fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> Term {
        match self {
            Term::Sym(n) => Term::Sym(f(n)),
            Term::Bound(_) => self.clone(),
            Term::Lam(h, ty, b) => Term::Lam(h.clone(), Box::new(ty.map_names(f)), Box::new(b.map_names(f))),
            Term::App(g, a) => Term::App(Box::new(g.map_names(f)), Box::new(a.map_names(f))),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Sym(_) | Term::Bound(_) => 1,
            Term::Lam(_, ty, b) => 1 + ty.size() + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

fn apply_reducing(mut f: Term, args: Vec<Term>) -> Term {
    for x in args {
        f = match f {
            Term::Lam(_, _, body) => body.open_reducing(0, &x),
            other => Term::app(other, x),
        };
    }
    f
}

impl TypeExpr {
    pub fn atom(s: &str) -> TypeExpr {
        TypeExpr::Atom(Name::new(s), Vec::new())
    }

    /// Non-dependent function type `a -> b`.
    pub fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Pi(Hint::anon(), Box::new(a), Box::new(b.shift(1, 0)))
    }

    pub fn pi(hint: &str, a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Pi(Hint::new(hint), Box::new(a), Box::new(b))
    }

    pub fn eq(carrier: TypeExpr, l: Term, r: Term) -> TypeExpr {
        TypeExpr::Eq(Box::new(carrier), Box::new(l), Box::new(r))
    }

    pub fn shift(&self, by: isize, cutoff: usize) -> TypeExpr {
        match self {
            TypeExpr::Atom(f, args) => TypeExpr::Atom(f.clone(), args.iter().map(|a| a.shift(by, cutoff)).collect()),
            TypeExpr::Pi(h, a, b) => {
                TypeExpr::Pi(h.clone(), Box::new(a.shift(by, cutoff)), Box::new(b.shift(by, cutoff + 1)))
            }
            TypeExpr::Eq(c, l, r) => TypeExpr::Eq(
                Box::new(c.shift(by, cutoff)),
                Box::new(l.shift(by, cutoff)),
                Box::new(r.shift(by, cutoff)),
            ),
        }
    }

    pub fn open(&self, depth: usize, args: &[Term]) -> TypeExpr {
        match self {
            TypeExpr::Atom(f, xs) => TypeExpr::Atom(f.clone(), xs.iter().map(|a| a.open(depth, args)).collect()),
            TypeExpr::Pi(h, a, b) => {
                TypeExpr::Pi(h.clone(), Box::new(a.open(depth, args)), Box::new(b.open(depth + 1, args)))
            }
            TypeExpr::Eq(c, l, r) => TypeExpr::Eq(
                Box::new(c.open(depth, args)),
                Box::new(l.open(depth, args)),
                Box::new(r.open(depth, args)),
            ),
        }
    }

    pub fn instantiate(&self, arg: &Term) -> TypeExpr {
        self.open(0, std::slice::from_ref(arg))
    }

    pub fn mentions_index(&self, idx: usize) -> bool {
        match self {
            TypeExpr::Atom(_, args) => args.iter().any(|a| a.mentions_index(idx)),
            TypeExpr::Pi(_, a, b) => a.mentions_index(idx) || b.mentions_index(idx + 1),
            TypeExpr::Eq(c, l, r) => c.mentions_index(idx) || l.mentions_index(idx) || r.mentions_index(idx),
        }
    }

    pub fn free_symbols(&self, out: &mut BTreeSet<Name>) {
        match self {
            TypeExpr::Atom(f, args) => {
                out.insert(f.clone());
                args.iter().for_each(|a| a.free_symbols(out));
            }
            TypeExpr::Pi(_, a, b) => {
                a.free_symbols(out);
                b.free_symbols(out);
            }
            TypeExpr::Eq(c, l, r) => {
                c.free_symbols(out);
                l.free_symbols(out);
                r.free_symbols(out);
            }
        }
    }

    pub fn symbols(&self) -> BTreeSet<Name> {
        let mut s = BTreeSet::new();
        self.free_symbols(&mut s);
        s
    }

    pub fn substitute(&self, a: &Assignment) -> TypeExpr {
        self.subst_with(a, &|t| t.substitute(a))
    }

    pub fn substitute_reducing(&self, a: &Assignment) -> TypeExpr {
        self.subst_with(a, &|t| t.substitute_reducing(a))
    }

    fn subst_with(&self, a: &Assignment, term: &dyn Fn(&Term) -> Term) -> TypeExpr {
        match self {
            TypeExpr::Atom(f, args) => {
                let args: Vec<Term> = args.iter().map(term).collect();
                match a.get(f).and_then(|img| match img {
                    Image::Type(fam) => fam.apply(&args),
                    Image::Term(_) => None,
                }) {
                    Some(t) => t,
                    None => TypeExpr::Atom(f.clone(), args),
                }
            }
            TypeExpr::Pi(h, x, y) => {
                TypeExpr::Pi(h.clone(), Box::new(x.subst_with(a, term)), Box::new(y.subst_with(a, term)))
            }
            TypeExpr::Eq(c, l, r) => {
                TypeExpr::Eq(Box::new(c.subst_with(a, term)), Box::new(term(l)), Box::new(term(r)))
            }
        }
    }

    pub fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> TypeExpr {
        match self {
            TypeExpr::Atom(g, args) => TypeExpr::Atom(f(g), args.iter().map(|a| a.map_names(f)).collect()),
            TypeExpr::Pi(h, a, b) => TypeExpr::Pi(h.clone(), Box::new(a.map_names(f)), Box::new(b.map_names(f))),
            TypeExpr::Eq(c, l, r) => {
                TypeExpr::Eq(Box::new(c.map_names(f)), Box::new(l.map_names(f)), Box::new(r.map_names(f)))
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            TypeExpr::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            TypeExpr::Pi(_, a, b) => 1 + a.size() + b.size(),
            TypeExpr::Eq(c, l, r) => 1 + c.size() + l.size() + r.size(),
        }
    }
}

impl Kind {
    pub fn pi(hint: &str, a: TypeExpr, k: Kind) -> Kind {
        Kind::Pi(Hint::new(hint), Box::new(a), Box::new(k))
    }

    pub fn arity(&self) -> usize {
        match self {
            Kind::Type => 0,
            Kind::Pi(_, _, k) => 1 + k.arity(),
        }
    }

    pub fn param_hints(&self) -> Vec<Hint> {
        let mut out = Vec::new();
        let mut k = self;
        while let Kind::Pi(h, _, rest) = k {
            out.push(h.clone());
            k = rest;
        }
        out
    }

    pub fn shift(&self, by: isize, cutoff: usize) -> Kind {
        match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, a, k) => Kind::Pi(h.clone(), Box::new(a.shift(by, cutoff)), Box::new(k.shift(by, cutoff + 1))),
        }
    }

    pub fn open(&self, depth: usize, args: &[Term]) -> Kind {
        match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, a, k) => Kind::Pi(h.clone(), Box::new(a.open(depth, args)), Box::new(k.open(depth + 1, args))),
        }
    }

    pub fn instantiate(&self, arg: &Term) -> Kind {
        self.open(0, std::slice::from_ref(arg))
    }

    pub fn mentions_index(&self, idx: usize) -> bool {
        match self {
            Kind::Type => false,
            Kind::Pi(_, a, k) => a.mentions_index(idx) || k.mentions_index(idx + 1),
        }
    }

    pub fn free_symbols(&self, out: &mut BTreeSet<Name>) {
        if let Kind::Pi(_, a, k) = self {
            a.free_symbols(out);
            k.free_symbols(out);
        }
    }

    pub fn substitute(&self, a: &Assignment) -> Kind {
        match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, x, k) => Kind::Pi(h.clone(), Box::new(x.substitute(a)), Box::new(k.substitute(a))),
        }
    }

    pub fn substitute_reducing(&self, a: &Assignment) -> Kind {
        match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, x, k) => {
                Kind::Pi(h.clone(), Box::new(x.substitute_reducing(a)), Box::new(k.substitute_reducing(a)))
            }
        }
    }

    pub fn map_names(&self, f: &dyn Fn(&Name) -> Name) -> Kind {
        match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, a, k) => Kind::Pi(h.clone(), Box::new(a.map_names(f)), Box::new(k.map_names(f))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> TypeExpr {
        TypeExpr::atom("U")
    }

    fn op(a: Term, b: Term) -> Term {
        Term::apps(Term::sym("*"), [a, b])
    }

    #[test]
    fn empty_assignment_is_identity() {
        let t = Term::sym("x");
        assert_eq!(t.substitute(&Assignment::new()), t);
    }

    #[test]
    fn simultaneous_substitution() {
        let t = op(Term::sym("x"), Term::sym("y"));
        let mut a = Assignment::new();
        a.insert_term("x", Term::sym("e"));
        a.insert_term("y", Term::sym("e"));
        assert_eq!(t.substitute(&a), op(Term::sym("e"), Term::sym("e")));
        // Swapping is simultaneous, not sequential.
        let mut s = Assignment::new();
        s.insert_term("x", Term::sym("y"));
        s.insert_term("y", Term::sym("x"));
        assert_eq!(t.substitute(&s), op(Term::sym("y"), Term::sym("x")));
    }

    #[test]
    fn substitution_under_binder_does_not_capture() {
        // λx. x * y  with y ↦ x: the bound x stays an index, the new x is a symbol.
        let t = Term::lam("x", u(), op(Term::Bound(0), Term::sym("y")));
        let mut a = Assignment::new();
        a.insert_term("y", Term::sym("x"));
        let r = t.substitute(&a);
        assert_eq!(r, Term::lam("z", u(), op(Term::Bound(0), Term::sym("x"))));
    }

    #[test]
    fn alpha_equivalence_is_structural() {
        let a = Term::lam("x", u(), Term::Bound(0));
        let b = Term::lam("y", u(), Term::Bound(0));
        assert_eq!(a, b);
    }

    #[test]
    fn family_instantiation_shifts_under_binders() {
        // F : U -> type, image λa. a = a ; substituted into Π(x:U). F x
        let fam = Family { params: vec![Hint::new("a")], body: TypeExpr::eq(u(), Term::Bound(0), Term::Bound(0)) };
        let mut asg = Assignment::new();
        asg.insert(Name::new("F"), Image::Type(fam));
        let ty = TypeExpr::pi("x", u(), TypeExpr::Atom(Name::new("F"), vec![Term::Bound(0)]));
        let r = ty.substitute(&asg);
        assert_eq!(r, TypeExpr::pi("x", u(), TypeExpr::eq(u(), Term::Bound(0), Term::Bound(0))));
    }

    #[test]
    fn family_of_name_roundtrips() {
        let k = Kind::pi("a", u(), Kind::pi("b", u(), Kind::Type));
        let f = Family::of_name(Name::new("R"), &k);
        assert_eq!(f.as_symbol(), Some(&Name::new("R")));
        assert_eq!(
            f.apply(&[Term::sym("p"), Term::sym("q")]),
            Some(TypeExpr::Atom(Name::new("R"), vec![Term::sym("p"), Term::sym("q")]))
        );
    }

    #[test]
    fn hereditary_substitution_contracts_created_redexes() {
        // (x * e)[* ↦ λa b. b * a] = e * x
        let flip = Term::lam("a", u(), Term::lam("b", u(), op(Term::Bound(0), Term::Bound(1))));
        let mut a = Assignment::new();
        a.insert_term("*", flip);
        let t = op(Term::sym("x"), Term::sym("e"));
        assert_eq!(t.substitute_reducing(&a), op(Term::sym("e"), Term::sym("x")));
        // plain substitution leaves the redex in place
        assert_ne!(t.substitute(&a), op(Term::sym("e"), Term::sym("x")));
    }

    #[test]
    fn arrow_shifts_codomain() {
        let t = TypeExpr::arrow(u(), u());
        assert!(matches!(&t, TypeExpr::Pi(_, _, b) if !b.mentions_index(0)));
    }
}
