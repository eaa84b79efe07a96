use crate::error::Pos;
use crate::kernel::Name;

/// Unresolved term/type/kind syntax as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawExpr {
    Var(Name),
    Type,
    App(Box<RawExpr>, Box<RawExpr>),
    Lam(Vec<RawBinder>, Box<RawExpr>),
    Pi(Vec<RawBinder>, Box<RawExpr>),
    Arrow(Box<RawExpr>, Box<RawExpr>),
    /// `lhs = rhs` with an optional `: carrier`.
    Eq(Box<RawExpr>, Box<RawExpr>, Option<Box<RawExpr>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBinder {
    pub name: Name,
    pub ann: Option<RawExpr>,
}

impl RawExpr {
    pub fn var(s: &str) -> RawExpr {
        RawExpr::Var(Name::new(s))
    }

    pub fn app(f: RawExpr, a: RawExpr) -> RawExpr {
        RawExpr::App(Box::new(f), Box::new(a))
    }

    pub fn as_var(&self) -> Option<&Name> {
        match self {
            RawExpr::Var(n) => Some(n),
            _ => None,
        }
    }

    /// Whether the expression denotes a kind (`type` or a Π ending in `type`).
    pub fn is_kind(&self) -> bool {
        match self {
            RawExpr::Type => true,
            RawExpr::Pi(_, b) | RawExpr::Arrow(_, b) => b.is_kind(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDecl {
    pub name: Name,
    pub classifier: RawExpr,
}

/// Bracketed `[x |-> e, ...]` list, either renaming or assignment.
pub type RawMap = Vec<(Name, RawExpr)>;

pub fn is_renaming(m: &RawMap) -> bool {
    m.iter().all(|(_, e)| e.as_var().is_some())
}

/// A renaming or assignment argument: literal or a named definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapArg {
    Literal(RawMap),
    Ref(Name),
}

impl MapArg {
    pub fn empty() -> MapArg {
        MapArg::Literal(Vec::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TpcExpr {
    Empty,
    Theory(Vec<RawDecl>),
    Extend(Box<TpcExpr>, Vec<RawDecl>),
    Combine(Box<TpcExpr>, MapArg, Box<TpcExpr>, MapArg),
    Mixin(Box<TpcExpr>, MapArg, Box<TpcExpr>, MapArg),
    View(Box<TpcExpr>, Box<TpcExpr>, MapArg),
    Seq(Box<TpcExpr>, Box<TpcExpr>),
    Rename(Box<TpcExpr>, MapArg),
    Ref(Name),
}

impl TpcExpr {
    pub fn reference(s: &str) -> TpcExpr {
        TpcExpr::Ref(Name::new(s))
    }

    /// Definition names referenced by this expression, in order of occurrence.
    pub fn references(&self, out: &mut Vec<Name>) {
        let map = |m: &MapArg, out: &mut Vec<Name>| {
            if let MapArg::Ref(n) = m {
                out.push(n.clone());
            }
        };
        match self {
            TpcExpr::Empty | TpcExpr::Theory(_) => {}
            TpcExpr::Extend(a, _) => a.references(out),
            TpcExpr::Combine(a, r1, b, r2) | TpcExpr::Mixin(a, r1, b, r2) => {
                a.references(out);
                map(r1, out);
                b.references(out);
                map(r2, out);
            }
            TpcExpr::View(a, b, m) => {
                a.references(out);
                b.references(out);
                map(m, out);
            }
            TpcExpr::Seq(a, b) => {
                a.references(out);
                b.references(out);
            }
            TpcExpr::Rename(a, m) => {
                a.references(out);
                map(m, out);
            }
            TpcExpr::Ref(n) => out.push(n.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefBody {
    Expr(TpcExpr),
    Map(RawMap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: Name,
    pub pos: Pos,
    pub body: DefBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Module {
    pub defs: Vec<Definition>,
}

impl Module {
    pub fn get(&self, n: &Name) -> Option<&Definition> {
        self.defs.iter().find(|d| &d.name == n)
    }
}
