//! Property tests over seeded random presentations and pushouts.

mod common;

use common::{cospan, CombineInstance, Gen};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use std::collections::BTreeSet;
use tpc::elaborator::{elaborate, evaluate, TpcType};
use tpc::kernel::{Ctx, Name};
use tpc::presentation::{Classifier, Declaration, Presentation};
use tpc::syntax::{parse_expr, parse_module};

/// A random dependency-respecting reordering of `p`.
fn shuffle_topologically(g: &mut Gen, p: &Presentation) -> Presentation {
    let mut left: Vec<Declaration> = p.decls().to_vec();
    let mut placed: BTreeSet<Name> = BTreeSet::new();
    let mut out = Vec::new();
    while !left.is_empty() {
        let ready: Vec<usize> =
            (0..left.len()).filter(|&i| left[i].classifier.free_symbols().is_subset(&placed)).collect();
        let i = *ready.choose(&mut g.rng).expect("a well-formed presentation always has a ready declaration");
        let d = left.remove(i);
        placed.insert(d.name.clone());
        out.push(d);
    }
    Presentation::wf_check(out).expect("reordering keeps well-formedness")
}

fn as_module(name: &str, p: &Presentation) -> String {
    let body: Vec<String> = p.decls().iter().map(|d| d.to_string()).collect();
    format!("{name} := Theory {{ {} }}\n", body.join("; "))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_order_is_idempotent_and_order_independent(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let p = g.presentation(6);
        let c = p.canonical_order();
        prop_assert_eq!(c.canonical_order(), c.clone());
        prop_assert!(c.same_theory(&p));
        let q = shuffle_topologically(&mut g, &p);
        prop_assert_eq!(q.flatten_text(), p.flatten_text());
    }

    #[test]
    fn flattened_text_parses_back_to_the_same_theory(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let p = g.presentation(6);
        let src = as_module("P", &p);
        let el = elaborate(&parse_module(&src).unwrap()).unwrap();
        prop_assert_eq!(el.flatten(&Name::new("P")).unwrap(), p.flatten_text());
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let p = g.presentation(6);
        let mut ctx = Ctx::new(&p);
        for d in p.decls() {
            match &d.classifier {
                Classifier::Type(t) => {
                    let once = ctx.nf_type(t);
                    prop_assert_eq!(ctx.nf_type(&once), once);
                }
                Classifier::Kind(k) => {
                    let once = ctx.nf_kind(k);
                    prop_assert_eq!(ctx.nf_kind(&once), once);
                }
            }
        }
    }

    #[test]
    fn substitution_along_a_composite_is_sequential_substitution(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let inst = CombineInstance::generate(&mut g, 4, 3);
        let c = inst.combine().unwrap();
        let (_, _, k) = cospan(&mut g, c.embed_left.view(), c.embed_right.view(), &c.pres, 2);
        let first = inst.u_left.view();
        let second = c.embed_left.view().compose(&k).unwrap();
        let composite = first.compose(&second).unwrap();
        for d in first.source().decls() {
            let stepwise = d.classifier
                .substitute_reducing(first.assignment())
                .substitute_reducing(second.assignment());
            prop_assert_eq!(stepwise, d.classifier.substitute_reducing(composite.assignment()));
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let inst = CombineInstance::generate(&mut g, 4, 3);
        let c = inst.combine().unwrap();
        let (_, _, k) = cospan(&mut g, c.embed_left.view(), c.embed_right.view(), &c.pres, 2);
        let (a, b) = (inst.u_left.view(), c.embed_left.view());
        let left = a.compose(b).unwrap().compose(&k).unwrap();
        let right = a.compose(&b.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(left.assignment(), right.assignment());
    }

    #[test]
    fn mediate_recovers_the_cospan(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let inst = CombineInstance::generate(&mut g, 4, 3);
        let c = inst.combine().unwrap();
        let (wl, wr, k) = cospan(&mut g, c.embed_left.view(), c.embed_right.view(), &c.pres, 2);
        let m = c.mediate(&wl, &wr).unwrap();
        prop_assert_eq!(m.assignment(), k.assignment());
        prop_assert!(c.embed_left.view().compose(&m).unwrap().equiv(&wl).unwrap());
        prop_assert!(c.embed_right.view().compose(&m).unwrap().equiv(&wr).unwrap());
    }

    #[test]
    fn embeddings_are_subsumed_by_views(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let base = g.presentation(4);
        let e = g.embedding_from(&base, 3);
        let emb = TpcType::Emb(e.source().clone(), e.target().clone());
        prop_assert!(emb.coerces_to(&TpcType::ViewT(e.source().clone(), e.target().clone())));
        prop_assert!(emb.coerces_to(&TpcType::Th(e.target().clone())));
        let view = TpcType::ViewT(e.source().clone(), e.target().clone());
        prop_assert!(!view.coerces_to(&emb));
    }

    #[test]
    fn dump_is_byte_deterministic(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let p = g.presentation(4);
        let src = format!("{}Q := extend P by {{ left_symbol : type }}\nQ2 := extend P by {{ right_symbol : type }}\nR := Q || Q2\n", as_module("P", &p));
        let a = elaborate(&parse_module(&src).unwrap()).unwrap().dump();
        let b = elaborate(&parse_module(&src).unwrap()).unwrap().dump();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn inferred_type_of_a_composite_is_an_embedding() {
    let src = "C := Theory { U : type }\nM := extend C by { * : U -> U -> U }\nS := extend M by { c : U }\n";
    let el = elaborate(&parse_module(src).unwrap()).unwrap();
    let r = evaluate(&parse_expr("M ; S").unwrap(), &el.env).unwrap();
    assert!(matches!(r.tpc_type(), TpcType::Emb(..)));
}
