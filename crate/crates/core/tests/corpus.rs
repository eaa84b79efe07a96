//! Golden outputs for the bundled example scripts.

use tpc::elaborator::{elaborate, Elaboration, TpcType};
use tpc::kernel::Name;
use tpc::syntax::parse_module;

fn load(file: &str) -> Elaboration {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file);
    let src = std::fs::read_to_string(path).unwrap();
    elaborate(&parse_module(&src).unwrap()).unwrap()
}

fn flat(el: &Elaboration, n: &str) -> String {
    el.flatten(&Name::new(n)).unwrap()
}

#[test]
fn combine_sugar_duplicates_the_point() {
    assert_eq!(flat(&load("flip.tpc"), "TwoPointed"), "U : type\ne : U\ne' : U\n");
}

#[test]
fn mixin_along_flip_turns_left_identity_into_right_identity() {
    let el = load("flip.tpc");
    assert_eq!(flat(&el, "RightUnital"), "U : type\n* : U -> U -> U\ne : U\nright_identity : forall x:U. x * e = x\n");
    let r = el.result(&Name::new("RightUnital")).unwrap();
    assert!(matches!(r.tpc_type(), TpcType::ViewT(..)));
    assert!(r.as_embedding.is_none());
}

#[test]
fn flip_dump_record() {
    let dump = load("flip.tpc").dump();
    let expected = "definition Flip\n  type View(Magma, Magma)\n  view Magma -> Magma\n    U |-> U\n    * |-> \\x:U. \\y:U. y * x\n";
    assert!(dump.contains(expected), "{dump}");
}

#[test]
fn renamed_monoid_is_additive() {
    assert_eq!(
        flat(&load("hierarchy.tpc"), "MonoidRenamed"),
        "U : type\n\
         + : U -> U -> U\n\
         0 : U\n\
         associative_+ : forall x:U. forall y:U. forall z:U. x + y + z = x + (y + z)\n\
         left_identity : forall x:U. 0 + x = x\n\
         right_identity : forall x:U. x + 0 = x\n"
    );
}

#[test]
fn plus_variants_agree_however_they_were_built() {
    let el = load("hierarchy.tpc");
    assert_eq!(flat(&el, "PointedMagmaPlus"), flat(&el, "PointedMagmaRenamed"));
    assert_eq!(flat(&el, "UnitalPlus"), flat(&el, "UnitalRenamed"));
    assert_eq!(flat(&el, "MonoidPlus"), flat(&el, "MonoidRenamed"));
}

#[test]
fn library_groups_extend_monoids() {
    let el = load("library.tpc");
    let group = flat(&el, "Group");
    for line in ["inv : U -> U\n", "e : U\n", "associative : "] {
        assert!(group.contains(line), "{group}");
    }
    let abelian = flat(&el, "AbelianGroup");
    assert!(abelian.contains("commutative : forall x:U. forall y:U. x * y = y * x\n"), "{abelian}");
    assert_eq!(abelian.lines().count(), group.lines().count() + 1);
}

#[test]
fn ring_is_a_semiring_with_additive_inverses() {
    let el = load("library.tpc");
    let semiring: Vec<String> = flat(&el, "Semiring").lines().map(String::from).collect();
    let ring = flat(&el, "Ring");
    for line in &semiring {
        assert!(ring.lines().any(|l| l == line), "Ring lacks `{line}`");
    }
    assert!(ring.lines().count() > semiring.len());
}
