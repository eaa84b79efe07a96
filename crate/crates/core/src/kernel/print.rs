//! Deterministic printing of kernel syntax with minimal parentheses.

use super::syntax::{is_operator_char, Kind, Name, Term, TypeExpr};
use std::collections::BTreeSet;

const TOP: u8 = 0;
const ARROW: u8 = 1;
const EQ_OPERAND: u8 = 4;
const APP: u8 = 9;
const ATOM: u8 = 10;

/// Binding level of an infix operator; all are left-associative.
pub fn infix_level(op: &str) -> u8 {
    match op {
        "*" | "/" | "%" => 7,
        "+" | "-" => 6,
        _ => 5,
    }
}

/// Whether `s` lexes back as a single plain identifier.
pub fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    if !(first.is_alphanumeric() || first == '_') {
        return false;
    }
    let mut prev = first;
    for c in chars {
        let ok = c.is_alphanumeric()
            || c == '_'
            || c == '\''
            || (is_operator_char(c) && (prev == '_' || is_operator_char(prev)));
        if !ok {
            return false;
        }
        prev = c;
    }
    !crate::syntax::lexer::is_keyword(s)
}

/// Surface form of a name in prefix position.
pub fn show_name(n: &Name) -> String {
    if is_plain_ident(n.as_str()) {
        n.to_string()
    } else {
        format!("`{n}`")
    }
}

#[derive(Default)]
pub struct Printer {
    names: Vec<Name>,
}

fn paren(cond: bool, s: String) -> String {
    if cond {
        format!("({s})")
    } else {
        s
    }
}

impl Printer {
    pub fn new() -> Self {
        Printer::default()
    }

    pub fn with_locals(names: Vec<Name>) -> Self {
        Printer { names }
    }

    fn fresh(&self, hint: &Name, avoid: &BTreeSet<Name>) -> Name {
        let taken = |n: &Name| avoid.contains(n) || self.names.contains(n);
        if hint.as_str() == "_" {
            if let Some(n) = ["x", "y", "z", "w", "v"].into_iter().map(Name::new).find(|n| !taken(n)) {
                return n;
            }
        }
        let mut n = if hint.as_str() == "_" { Name::new("x") } else { hint.clone() };
        while avoid.contains(&n) || self.names.contains(&n) {
            n = n.primed();
        }
        n
    }

    fn bound(&self, i: usize) -> String {
        let n = self.names.len();
        if i < n {
            self.names[n - 1 - i].to_string()
        } else {
            format!("#{i}")
        }
    }

    fn under<R>(&mut self, n: Name, f: impl FnOnce(&mut Self) -> R) -> R {
        self.names.push(n);
        let r = f(self);
        self.names.pop();
        r
    }

    pub fn term(&mut self, t: &Term) -> String {
        self.term_at(t, TOP)
    }

    pub fn type_expr(&mut self, t: &TypeExpr) -> String {
        self.type_at(t, TOP)
    }

    pub fn kind(&mut self, k: &Kind) -> String {
        match k {
            Kind::Type => "type".into(),
            Kind::Pi(h, a, rest) => {
                if rest.mentions_index(0) {
                    let mut avoid = BTreeSet::new();
                    rest.free_symbols(&mut avoid);
                    let x = self.fresh(&h.0, &avoid);
                    let a = self.type_at(a, ARROW);
                    let body = self.under(x.clone(), |p| p.kind(rest));
                    format!("forall {}:{a}. {body}", show_name(&x))
                } else {
                    let a = self.type_at(a, ARROW + 1);
                    let body = self.under(Name::new("_"), |p| p.kind(rest));
                    format!("{a} -> {body}")
                }
            }
        }
    }

    fn term_at(&mut self, t: &Term, prec: u8) -> String {
        match t {
            Term::Sym(n) => show_name(n),
            Term::Bound(i) => self.bound(*i),
            Term::Lam(h, ty, body) => {
                let x = self.fresh(&h.0, &body.symbols());
                let ann = self.type_at(ty, ARROW);
                let b = self.under(x.clone(), |p| p.term_at(body, TOP));
                paren(prec > TOP, format!("\\{}:{ann}. {b}", show_name(&x)))
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                if let (Term::Sym(op), 2) = (head, args.len()) {
                    if op.is_operator() {
                        let lvl = infix_level(op.as_str());
                        let l = self.term_at(args[0], lvl);
                        let r = self.term_at(args[1], lvl + 1);
                        return paren(prec > lvl, format!("{l} {op} {r}"));
                    }
                }
                let mut s = self.term_at(head, ATOM);
                for a in args {
                    s.push(' ');
                    s.push_str(&self.term_at(a, ATOM));
                }
                paren(prec > APP, s)
            }
        }
    }

    fn type_at(&mut self, t: &TypeExpr, prec: u8) -> String {
        match t {
            TypeExpr::Atom(f, args) => {
                if args.is_empty() {
                    return show_name(f);
                }
                let mut s = show_name(f);
                for a in args {
                    s.push(' ');
                    s.push_str(&self.term_at(a, ATOM));
                }
                paren(prec > APP, s)
            }
            TypeExpr::Pi(h, a, b) => {
                if b.mentions_index(0) {
                    let x = self.fresh(&h.0, &b.symbols());
                    let a = self.type_at(a, ARROW);
                    let body = self.under(x.clone(), |p| p.type_at(b, TOP));
                    paren(prec > TOP, format!("forall {}:{a}. {body}", show_name(&x)))
                } else {
                    let a = self.type_at(a, ARROW + 1);
                    let body = self.under(Name::new("_"), |p| p.type_at(b, ARROW));
                    paren(prec > ARROW, format!("{a} -> {body}"))
                }
            }
            TypeExpr::Eq(_, l, r) => {
                let l = self.term_at(l, EQ_OPERAND);
                let r = self.term_at(r, EQ_OPERAND);
                paren(prec > ARROW + 1, format!("{l} = {r}"))
            }
        }
    }
}

pub fn term_to_string(t: &Term) -> String {
    Printer::new().term(t)
}

pub fn type_to_string(t: &TypeExpr) -> String {
    Printer::new().type_expr(t)
}

pub fn kind_to_string(k: &Kind) -> String {
    Printer::new().kind(k)
}
