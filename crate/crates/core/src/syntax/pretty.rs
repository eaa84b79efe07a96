//! Surface printer; output reparses to an equal tree.

use super::ast::*;
use crate::kernel::print::{infix_level, show_name};
use crate::kernel::Name;

fn paren(cond: bool, s: String) -> String {
    if cond {
        format!("({s})")
    } else {
        s
    }
}

/// Names in declaration and map-key position may be bare operators.
fn symbol(n: &Name) -> String {
    if n.is_operator() && !matches!(n.as_str(), "=" | "->" | "|->" | "||") && !n.as_str().starts_with("--") {
        n.to_string()
    } else {
        show_name(n)
    }
}

pub fn raw(e: &RawExpr) -> String {
    raw_at(e, 0)
}

fn binders(bs: &[RawBinder]) -> String {
    let uniform = bs.iter().all(|b| b.ann == bs[0].ann);
    if uniform {
        let names: Vec<String> = bs.iter().map(|b| show_name(&b.name)).collect();
        return match &bs[0].ann {
            Some(t) => format!("{} : {}.", names.join(" "), raw_at(t, 1)),
            None => format!("{}.", names.join(" ")),
        };
    }
    let parts: Vec<String> = bs
        .iter()
        .map(|b| match &b.ann {
            Some(t) => format!("({} : {})", show_name(&b.name), raw(t)),
            None => show_name(&b.name),
        })
        .collect();
    format!("{}.", parts.join(" "))
}

fn raw_at(e: &RawExpr, prec: u8) -> String {
    match e {
        RawExpr::Var(n) => show_name(n),
        RawExpr::Type => "type".into(),
        RawExpr::Lam(bs, body) => paren(prec > 0, format!("\\{} {}", binders(bs), raw_at(body, 0))),
        RawExpr::Pi(bs, body) => paren(prec > 0, format!("forall {} {}", binders(bs), raw_at(body, 0))),
        RawExpr::Arrow(a, b) => paren(prec > 1, format!("{} -> {}", raw_at(a, 2), raw_at(b, 0))),
        RawExpr::Eq(l, r, c) => {
            let s = format!("{} = {}", raw_at(l, 4), raw_at(r, 4));
            match c {
                Some(c) => paren(prec > 1, format!("{s} : {}", raw_at(c, 1))),
                None => paren(prec > 2, s),
            }
        }
        RawExpr::App(f, a) => {
            if let RawExpr::App(g, l) = &**f {
                if let RawExpr::Var(op) = &**g {
                    if op.is_operator() {
                        let lvl = infix_level(op.as_str());
                        return paren(prec > lvl, format!("{} {op} {}", raw_at(l, lvl), raw_at(a, lvl + 1)));
                    }
                }
            }
            paren(prec > 9, format!("{} {}", raw_at(f, 9), raw_at(a, 10)))
        }
    }
}

pub fn decls(ds: &[RawDecl]) -> String {
    if ds.is_empty() {
        return "{ }".into();
    }
    let items: Vec<String> = ds.iter().map(|d| format!("{} : {}", symbol(&d.name), raw(&d.classifier))).collect();
    format!("{{ {} }}", items.join("; "))
}

pub fn raw_map(m: &RawMap) -> String {
    let items: Vec<String> = m
        .iter()
        .map(|(k, v)| {
            let rhs = match v {
                RawExpr::Var(n) => symbol(n),
                other => raw(other),
            };
            format!("{} |-> {rhs}", symbol(k))
        })
        .collect();
    format!("[{}]", items.join(", "))
}

fn map_arg(m: &MapArg) -> String {
    match m {
        MapArg::Literal(m) => raw_map(m),
        MapArg::Ref(n) => show_name(n),
    }
}

pub fn expr(e: &TpcExpr) -> String {
    expr_at(e, 0)
}

fn is_empty_map(m: &MapArg) -> bool {
    matches!(m, MapArg::Literal(v) if v.is_empty())
}

fn expr_at(e: &TpcExpr, prec: u8) -> String {
    match e {
        TpcExpr::Empty => "Empty".into(),
        TpcExpr::Ref(n) => show_name(n),
        TpcExpr::Theory(ds) => format!("Theory {}", decls(ds)),
        TpcExpr::Combine(a, r1, b, r2) if is_empty_map(r1) && is_empty_map(r2) => {
            paren(prec > 0, format!("{} || {}", expr_at(a, 0), expr_at(b, 1)))
        }
        TpcExpr::Combine(a, r1, b, r2) => {
            paren(prec > 2, format!("combine {} {}, {} {}", expr_at(a, 3), map_arg(r1), expr_at(b, 3), map_arg(r2)))
        }
        TpcExpr::Mixin(a, r1, b, r2) => {
            paren(prec > 2, format!("mixin {} {}, {} {}", expr_at(a, 3), map_arg(r1), expr_at(b, 3), map_arg(r2)))
        }
        TpcExpr::Seq(a, b) => paren(prec > 1, format!("{} ; {}", expr_at(a, 1), expr_at(b, 2))),
        TpcExpr::Rename(a, m) => paren(prec > 2, format!("{} {}", expr_at(a, 2), map_arg(m))),
        TpcExpr::Extend(a, ds) => paren(prec > 2, format!("extend {} by {}", expr_at(a, 2), decls(ds))),
        TpcExpr::View(a, b, m) => {
            paren(prec > 2, format!("view {} as {} via {}", expr_at(a, 2), expr_at(b, 2), map_arg(m)))
        }
    }
}

pub fn module(m: &Module) -> String {
    let mut out = String::new();
    for d in &m.defs {
        let body = match &d.body {
            DefBody::Expr(e) => expr(e),
            DefBody::Map(m) => raw_map(m),
        };
        out.push_str(&format!("{} := {body}\n", show_name(&d.name)));
    }
    out
}
