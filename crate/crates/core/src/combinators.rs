//! The constructions on presentations: rename, extend, combine, mixin.

use crate::error::{Error, Result};
use crate::kernel::{Assignment, Family, Image, Name, Term};
use crate::morphism::{check_view, Embedding, Renaming, View};
use crate::presentation::{Classifier, Declaration, ExtensionBody, Presentation};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct RenameResult {
    pub pres: Presentation,
    pub embed: Embedding,
}

#[derive(Clone, Debug)]
pub struct ExtendResult {
    pub pres: Presentation,
    pub embed: Embedding,
}

pub fn rename(gamma: &Presentation, pi: &Renaming) -> Result<RenameResult> {
    let syms = gamma.symbols();
    let pi = pi.restrict(&syms);
    if let Some((_, y)) = pi.iter().find(|(_, y)| syms.contains(*y) && pi.get(y).is_none()) {
        return Err(Error::NameCollision(y.clone()));
    }
    pi.check_injective_on(&syms)?;
    let pres = gamma.map_names(&|n| pi.apply(n));
    let embed = Embedding::trusted(gamma, &pres, pi);
    Ok(RenameResult { pres, embed })
}

pub fn extend(gamma: &Presentation, body: &ExtensionBody) -> Result<ExtendResult> {
    let pres = gamma.append_extension(body)?;
    let embed = Embedding::trusted(gamma, &pres, Renaming::identity());
    Ok(ExtendResult { pres, embed })
}

fn shared_base(a: &Presentation, b: &Presentation) -> Result<()> {
    if a.same_theory(b) {
        Ok(())
    } else {
        Err(Error::SharedBaseMismatch(format!(
            "the operands start from different theories ({{{}}} vs {{{}}})",
            names_of(a),
            names_of(b)
        )))
    }
}

fn names_of(p: &Presentation) -> String {
    p.names().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
}

fn rename_decls(ds: &[Declaration], pi: &Renaming) -> Vec<Declaration> {
    ds.iter()
        .map(|d| Declaration { name: pi.apply(&d.name), classifier: d.classifier.map_names(&|n| pi.apply(n)) })
        .collect()
}

fn check_commutes(left: &View, right: &View) -> Result<()> {
    match left.first_difference(right) {
        None => Ok(()),
        Some(z) => Err(Error::SquareDoesNotCommute(z)),
    }
}

fn same_target(a: &View, b: &View) -> Result<()> {
    if a.target().same_theory(b.target()) {
        Ok(())
    } else {
        Err(Error::SourceTargetMismatch("the two legs of a cospan must share their target".into()))
    }
}

fn expect_source(v: &View, p: &Presentation, which: &str) -> Result<()> {
    if v.source().same_theory(p) {
        Ok(())
    } else {
        Err(Error::SourceTargetMismatch(format!("the {which} leg starts from the wrong theory")))
    }
}

/// Pushout of two embeddings out of a shared base.
#[derive(Clone, Debug)]
pub struct CombineResult {
    pub pres: Presentation,
    pub embed_left: Embedding,
    pub embed_right: Embedding,
    pub diag: Embedding,
    u_left: Embedding,
    u_right: Embedding,
    pi_left: Renaming,
    pi_right: Renaming,
}

pub fn combine(
    u_left: &Embedding,
    u_right: &Embedding,
    pi_left: &Renaming,
    pi_right: &Renaming,
) -> Result<CombineResult> {
    shared_base(u_left.source(), u_right.source())?;
    let (delta, phi) = (u_left.target(), u_right.target());
    let (sd, sf) = (delta.symbols(), phi.symbols());
    let pl = pi_left.restrict(&sd);
    let pr = pi_right.restrict(&sf);
    pl.check_injective_on(&sd)?;
    pr.check_injective_on(&sf)?;

    let base_pairs: BTreeSet<(Name, Name)> = u_left.source().names().map(|z| (u_left.map(z), u_right.map(z))).collect();
    let dc = delta.canonical_order();
    let fc = phi.canonical_order();
    for x in dc.names() {
        let px = pl.apply(x);
        for y in fc.names() {
            let identified = px == pr.apply(y);
            let shared = base_pairs.contains(&(x.clone(), y.clone()));
            if identified != shared {
                return Err(Error::RenamingConditionViolated(x.clone(), y.clone()));
            }
        }
    }

    let gamma = u_left.source();
    let base_map = |z: &Name| pl.apply(&u_left.map(z));
    let lambda0 = gamma.map_names(&base_map);
    let mut decls: Vec<Declaration> = lambda0.decls().to_vec();
    decls.extend(rename_decls(u_left.extension().decls(), &pl));
    decls.extend(rename_decls(u_right.extension().decls(), &pr));
    let pres = Presentation::wf_check(decls)?;

    let embed_left = Embedding::trusted(delta, &pres, pl.clone());
    let embed_right = Embedding::trusted(phi, &pres, pr.clone());
    let diag = u_left.compose(&embed_left)?;
    let other = u_right.compose(&embed_right)?;
    if diag.view().assignment() != other.view().assignment() {
        return Err(Error::Internal("combine square does not commute on the nose".into()));
    }
    Ok(CombineResult {
        pres,
        embed_left,
        embed_right,
        diag,
        u_left: u_left.clone(),
        u_right: u_right.clone(),
        pi_left: pl,
        pi_right: pr,
    })
}

impl CombineResult {
    /// The unique view out of the pushout commuting with `w_left` and `w_right`.
    pub fn mediate(&self, w_left: &View, w_right: &View) -> Result<View> {
        expect_source(w_left, self.u_left.target(), "left")?;
        expect_source(w_right, self.u_right.target(), "right")?;
        same_target(w_left, w_right)?;
        check_commutes(&self.u_left.view().compose(w_left)?, &self.u_right.view().compose(w_right)?)?;
        let mut a = Assignment::new();
        for x in self.u_left.target().names() {
            a.insert(self.pi_left.apply(x), w_left.image(x).expect("total").clone());
        }
        for y in self.u_right.target().names() {
            let k = self.pi_right.apply(y);
            if !a.contains(&k) {
                a.insert(k, w_right.image(y).expect("total").clone());
            }
        }
        check_view(&self.pres, w_left.target(), a)
    }

    pub fn inputs(&self) -> (&Embedding, &Embedding) {
        (&self.u_left, &self.u_right)
    }

    pub fn renamings(&self) -> (&Renaming, &Renaming) {
        (&self.pi_left, &self.pi_right)
    }
}

/// Lifting of an embedding along a view.
#[derive(Clone, Debug)]
pub struct MixinResult {
    pub pres: Presentation,
    pub embed_left: Embedding,
    pub view_right: View,
    pub diag: View,
    v_left: View,
    u_right: Embedding,
    pi_left: Renaming,
    pi_right: Renaming,
}

pub fn mixin(v_left: &View, u_right: &Embedding, pi_left: &Renaming, pi_right: &Renaming) -> Result<MixinResult> {
    shared_base(v_left.source(), u_right.source())?;
    let (delta, phi) = (v_left.target(), u_right.target());
    let sd = delta.symbols();
    let pl = pi_left.restrict(&sd);
    pl.check_injective_on(&sd)?;

    let ext_names: BTreeSet<Name> = u_right.extension().names().cloned().collect();
    for (y, _) in pi_right.iter() {
        if phi.contains(y) && !ext_names.contains(y) {
            return Err(Error::RenamesBaseSymbol(y.clone()));
        }
    }
    let pr = pi_right.restrict(&ext_names);
    pr.check_injective_on(&ext_names)?;
    let left_images: BTreeSet<Name> = sd.iter().map(|x| pl.apply(x)).collect();
    for y in u_right.extension().names() {
        let py = pr.apply(y);
        if left_images.contains(&py) {
            return Err(Error::NotDisjoint(py));
        }
    }

    let lambda1 = delta.map_names(&|n| pl.apply(n));
    let rename_left = pl.to_assignment(delta);
    let mut pi_prime = Assignment::new();
    for z in u_right.source().names() {
        let img = v_left.image(z).expect("total").substitute(&rename_left);
        pi_prime.insert(u_right.map(z), img);
    }
    for d in u_right.extension().decls() {
        let y = pr.apply(&d.name);
        let img = match &d.classifier {
            Classifier::Type(_) => Image::Term(Term::Sym(y)),
            Classifier::Kind(k) => Image::Type(Family::of_name(y, k)),
        };
        pi_prime.insert(d.name.clone(), img);
    }
    let lambda2: Vec<Declaration> = u_right
        .extension()
        .decls()
        .iter()
        .map(|d| Declaration { name: pr.apply(&d.name), classifier: d.classifier.substitute_reducing(&pi_prime) })
        .collect();
    let mut decls = lambda1.decls().to_vec();
    decls.extend(lambda2);
    let pres = Presentation::wf_check(decls)?;

    let embed_left = Embedding::trusted(delta, &pres, pl.clone());
    let view_right = check_view(phi, &pres, pi_prime)?;
    let diag = v_left.compose(embed_left.view())?;
    let other = u_right.view().compose(&view_right)?;
    if diag.assignment() != other.assignment() {
        return Err(Error::Internal("mixin square does not commute on the nose".into()));
    }
    Ok(MixinResult {
        pres,
        embed_left,
        view_right,
        diag,
        v_left: v_left.clone(),
        u_right: u_right.clone(),
        pi_left: pl,
        pi_right: pr,
    })
}

impl MixinResult {
    pub fn mediate(&self, w_left: &View, w_right: &View) -> Result<View> {
        expect_source(w_left, self.v_left.target(), "left")?;
        expect_source(w_right, self.u_right.target(), "right")?;
        same_target(w_left, w_right)?;
        check_commutes(&self.v_left.compose(w_left)?, &self.u_right.view().compose(w_right)?)?;
        let mut a = Assignment::new();
        for x in self.v_left.target().names() {
            a.insert(self.pi_left.apply(x), w_left.image(x).expect("total").clone());
        }
        for y in self.u_right.extension().names() {
            a.insert(self.pi_right.apply(y), w_right.image(y).expect("total").clone());
        }
        check_view(&self.pres, w_left.target(), a)
    }

    pub fn inputs(&self) -> (&View, &Embedding) {
        (&self.v_left, &self.u_right)
    }

    pub fn renamings(&self) -> (&Renaming, &Renaming) {
        (&self.pi_left, &self.pi_right)
    }
}
