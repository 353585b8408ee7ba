//! Regular subgroups of Sym(G) normalized by the translations: the
//! realization N_φ of a fpf endomorphism, translation subgroups, the
//! equivalence of endomorphisms inducing the same regular subgroup, and a
//! brute-force census of regular subgroups for tiny groups.
//!
//! Permutations compose left-to-right, matching the near-ring convention.

use std::collections::HashSet;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::nearring::{enumerate_endomorphisms, Endo, EndoFilter, GMap};

/// Default cap on |G| for the regular-subgroup census.
pub const DEFAULT_CENSUS_CAP: usize = 8;
/// Default cap on the number of abelian fpf endomorphisms partitioned into
/// equivalence classes.
pub const DEFAULT_CLASSES_CAP: usize = 4096;

/// A permutation of `0..n`, stored by its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotASubgroup {
                    reason: "image array is not a bijection".into(),
                });
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&v| other.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &v) in self.0.iter().enumerate() {
            inv[v] = x;
        }
        Perm(inv)
    }
}

/// A subgroup of Sym(G) certified regular and/or normalized by the left
/// translations. Members are sorted by the image of the identity element,
/// so `perms[x]` is the unique member sending 0 to x whenever the subgroup
/// is regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubgroup {
    perms: Vec<Perm>,
    pub regular: bool,
    pub normalized: bool,
}

impl RegularSubgroup {
    /// Verifies closure and computes both certificates against `g`.
    pub fn from_perms(g: &Arc<FiniteGroup>, perms: Vec<Perm>) -> Result<Self> {
        let mut perms = perms;
        perms.sort_unstable();
        perms.dedup();
        verify_subgroup(g.order(), &perms)?;
        let regular = regularity(g.order(), &perms);
        let mut sub = RegularSubgroup {
            perms,
            regular,
            normalized: false,
        };
        if regular {
            sub.perms.sort_by_key(|p| p.apply(0));
        }
        sub.normalized = normalized_by_translations(g, &sub);
        Ok(sub)
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.perms.iter().any(|q| q == p)
    }

    /// Canonical key for set comparison.
    pub fn canonical_key(&self) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = self.perms.iter().map(|p| p.0.clone()).collect();
        key.sort_unstable();
        key
    }
}

impl Serialize for RegularSubgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RegularSubgroup", 3)?;
        let perms: Vec<&[usize]> = self.perms.iter().map(|p| p.images()).collect();
        s.serialize_field("perms", &perms)?;
        s.serialize_field("regular", &self.regular)?;
        s.serialize_field("normalized", &self.normalized)?;
        s.end()
    }
}

fn verify_subgroup(degree: usize, perms: &[Perm]) -> Result<()> {
    if perms.is_empty() {
        return Err(Error::NotASubgroup {
            reason: "empty set".into(),
        });
    }
    for p in perms {
        if p.degree() != degree {
            return Err(Error::NotASubgroup {
                reason: "mixed degrees".into(),
            });
        }
    }
    let set: HashSet<&Perm> = perms.iter().collect();
    if !set.contains(&Perm::identity(degree)) {
        return Err(Error::NotASubgroup {
            reason: "missing the identity permutation".into(),
        });
    }
    for a in perms {
        if !set.contains(&a.inverse()) {
            return Err(Error::NotASubgroup {
                reason: format!("inverse of {:?} missing", a.images()),
            });
        }
        for b in perms {
            if !set.contains(&a.then(b)) {
                return Err(Error::NotASubgroup {
                    reason: format!(
                        "product of {:?} and {:?} missing",
                        a.images(),
                        b.images()
                    ),
                });
            }
        }
    }
    Ok(())
}

fn regularity(degree: usize, perms: &[Perm]) -> bool {
    if perms.len() != degree {
        return false;
    }
    // sharply transitive on the identity point: all images distinct, and the
    // stabilizer of 0 is trivial
    let mut seen = vec![false; degree];
    for p in perms {
        let v = p.apply(0);
        if seen[v] {
            return false;
        }
        seen[v] = true;
        if v == 0 && p.images().iter().enumerate().any(|(x, &y)| x != y) {
            return false;
        }
    }
    seen.iter().all(|&b| b)
}

/// Verifies `N` is a subgroup of Sym(G) and decides regularity.
pub fn is_regular(g: &Arc<FiniteGroup>, perms: &[Perm]) -> Result<bool> {
    verify_subgroup(g.order(), perms)?;
    Ok(regularity(g.order(), perms))
}

/// Left and right translation subgroups of Sym(G): `L = {x ↦ g⁻¹x}` and
/// `R = {x ↦ xg}`. Under left-to-right composition, `g ↦ (x ↦ g⁻¹x)` is a
/// homomorphism onto L.
pub fn translation_subgroups(g: &Arc<FiniteGroup>) -> (RegularSubgroup, RegularSubgroup) {
    let n = g.order();
    let left: Vec<Perm> = (0..n)
        .map(|t| Perm((0..n).map(|x| g.mul(g.inv(t), x)).collect()))
        .collect();
    let right: Vec<Perm> = (0..n)
        .map(|t| Perm((0..n).map(|x| g.mul(x, t)).collect()))
        .collect();
    let l = RegularSubgroup::from_perms(g, left).expect("translations form a regular subgroup");
    let r = RegularSubgroup::from_perms(g, right).expect("translations form a regular subgroup");
    (l, r)
}

/// The regular subgroup realized by a fpf endomorphism:
/// `N_φ = {β(g) : g ∈ G}` with `β(g): x ↦ g⁻¹ · x · g^φ`. For the zero map
/// this is exactly L.
pub fn beta_subgroup(phi: &Endo) -> Result<RegularSubgroup> {
    if !phi.is_fpf() {
        let witness = (1..phi.group().order())
            .find(|&x| phi.apply(x) == x)
            .unwrap_or(0);
        return Err(Error::NotFpf { witness });
    }
    let g = phi.group();
    let n = g.order();
    let perms: Vec<Perm> = (0..n)
        .map(|t| {
            let ti = g.inv(t);
            let tp = phi.apply(t);
            Perm((0..n).map(|x| g.mul(g.mul(ti, x), tp)).collect())
        })
        .collect();
    RegularSubgroup::from_perms(g, perms)
}

/// Conjugation by every left translation maps N onto itself.
pub fn normalized_by_translations(g: &Arc<FiniteGroup>, n: &RegularSubgroup) -> bool {
    let set: HashSet<&Perm> = n.perms.iter().collect();
    let degree = g.order();
    for t in 0..degree {
        let l = Perm((0..degree).map(|x| g.mul(g.inv(t), x)).collect());
        let li = l.inverse();
        for p in &n.perms {
            let conj = li.then(p).then(&l);
            if !set.contains(&conj) {
                return false;
            }
        }
    }
    true
}

/// Decides whether two abelian fpf endomorphisms are related by a central
/// fpf ζ with `1 − φ = (1 − ζ)(1 − ψ)`, returning the witness.
///
/// The identity pins `1 − ζ` as the map `(1 − φ)(1 − ψ)⁻¹`, so ζ is unique
/// if it exists; it remains to certify that candidate as a fpf endomorphism
/// with central image.
pub fn childs_equivalent(phi: &Endo, psi: &Endo) -> Result<Option<Endo>> {
    for e in [phi, psi] {
        if !e.is_fpf() {
            let witness = (1..e.group().order())
                .find(|&x| e.apply(x) == x)
                .unwrap_or(0);
            return Err(Error::NotFpf { witness });
        }
        if !e.is_abelian() {
            let im = e.image().elems().to_vec();
            for &a in &im {
                for &b in &im {
                    if e.group().mul(a, b) != e.group().mul(b, a) {
                        return Err(Error::NotAbelian { x: a, y: b });
                    }
                }
            }
        }
    }
    if !phi.group().same_group(psi.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = phi.group();
    let n = g.order();
    let om_phi = phi.as_gmap().one_minus();
    let om_psi_inv = psi
        .as_gmap()
        .one_minus()
        .inverse_bijection()
        .expect("1 − ψ is a bijection for fpf ψ");
    // 1 − ζ = (1 − φ) then (1 − ψ)⁻¹
    let om_zeta: Vec<usize> = (0..n).map(|x| om_psi_inv.apply(om_phi.apply(x))).collect();
    let zeta_images: Vec<usize> = (0..n).map(|x| g.mul(g.inv(om_zeta[x]), x)).collect();
    if g.verify_hom(&zeta_images).is_err() {
        return Ok(None);
    }
    if zeta_images.iter().enumerate().skip(1).any(|(x, &v)| v == x) {
        return Ok(None);
    }
    let center = g.center_elems();
    if zeta_images
        .iter()
        .any(|&v| center.binary_search(&v).is_err())
    {
        return Ok(None);
    }
    let zeta = crate::nearring::as_endo(&GMap::new(g, zeta_images)?)?;
    debug_assert!({
        let om_zeta_map = zeta.as_gmap().one_minus();
        let om_psi = psi.as_gmap().one_minus();
        (0..n).all(|x| om_psi.apply(om_zeta_map.apply(x)) == om_phi.apply(x))
    });
    Ok(Some(zeta))
}

/// Partition of the abelian fpf endomorphisms under the central-witness
/// equivalence. Class representatives are the lexicographically least image
/// arrays; the relation is verified empirically to be an equivalence.
pub fn equivalence_classes(g: &Arc<FiniteGroup>) -> Result<Vec<Vec<Endo>>> {
    equivalence_classes_capped(g, DEFAULT_CLASSES_CAP)
}

pub fn equivalence_classes_capped(g: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Vec<Endo>>> {
    let mut endos: Vec<Endo> = Vec::new();
    for e in enumerate_endomorphisms(g, EndoFilter::fpf_abelian())? {
        endos.push(e);
        if endos.len() > cap {
            return Err(Error::EnumerationCapExceeded {
                size: endos.len(),
                cap,
            });
        }
    }
    let mut classes: Vec<Vec<Endo>> = Vec::new();
    for e in endos {
        let mut placed = false;
        for class in classes.iter_mut() {
            if childs_equivalent(&class[0], &e)?.is_some() {
                class.push(e.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![e]);
        }
    }
    // empirical equivalence-relation check: reflexive and symmetric on
    // members against representatives, no cross-class equivalences
    for class in &classes {
        for member in class {
            debug_assert!(childs_equivalent(member, member)?.is_some());
            if childs_equivalent(member, &class[0])?.is_none() {
                return Err(Error::GlueConditions(
                    "equivalence relation failed symmetry".into(),
                ));
            }
        }
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if childs_equivalent(&classes[i][0], &classes[j][0])?.is_some() {
                return Err(Error::GlueConditions(
                    "equivalence relation failed transitivity".into(),
                ));
            }
        }
    }
    Ok(classes)
}

/// Exhaustive census of regular subgroups of Sym(G) by backtracking over
/// sharply transitive families `{n_x : n_x(0) = x}` with closure
/// propagation; `normalized_only` additionally forces closure under
/// conjugation by left translations.
pub fn enumerate_regular_subgroups(
    g: &Arc<FiniteGroup>,
    normalized_only: bool,
) -> Result<Vec<RegularSubgroup>> {
    enumerate_regular_subgroups_capped(g, normalized_only, DEFAULT_CENSUS_CAP)
}

pub fn enumerate_regular_subgroups_capped(
    g: &Arc<FiniteGroup>,
    normalized_only: bool,
    cap: usize,
) -> Result<Vec<RegularSubgroup>> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let mut slots: Vec<Option<Perm>> = vec![None; n];
    slots[0] = Some(Perm::identity(n));
    let mut found: Vec<Vec<Perm>> = Vec::new();
    let left: Vec<Perm> = (0..n)
        .map(|t| Perm((0..n).map(|x| g.mul(g.inv(t), x)).collect()))
        .collect();
    census_search(g, &mut slots, &mut found, normalized_only, &left);
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut out = Vec::new();
    for family in found {
        let sub = RegularSubgroup::from_perms(g, family)?;
        if seen.insert(sub.canonical_key()) {
            if !normalized_only || sub.normalized {
                out.push(sub);
            }
        }
    }
    out.sort_by_key(|s| s.canonical_key());
    Ok(out)
}

fn census_search(
    g: &Arc<FiniteGroup>,
    slots: &mut Vec<Option<Perm>>,
    found: &mut Vec<Vec<Perm>>,
    normalized_only: bool,
    left: &[Perm],
) {
    let n = slots.len();
    let next = match slots.iter().position(|s| s.is_none()) {
        None => {
            found.push(slots.iter().map(|s| s.clone().unwrap()).collect());
            return;
        }
        Some(x) => x,
    };
    // candidates: permutations sending 0 to `next`, in lexicographic order
    let mut rest: Vec<usize> = (0..n).filter(|&v| v != next).collect();
    loop {
        let mut candidate = Vec::with_capacity(n);
        candidate.push(next);
        candidate.extend(&rest);
        let perm = Perm(candidate);
        let mut trial = slots.clone();
        if assign_and_propagate(&mut trial, perm, normalized_only, left) {
            let mut trial_owned = trial;
            census_search(g, &mut trial_owned, found, normalized_only, left);
        }
        // next arrangement of the remaining points
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 2;
    loop {
        if v[i] < v[i + 1] {
            break;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
    }
    if v[i] >= v[i + 1] {
        return false;
    }
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Inserts a forced member and closes under products, inverses and (when
/// requested) conjugation by the translations. Returns false on conflict.
fn assign_and_propagate(
    slots: &mut Vec<Option<Perm>>,
    perm: Perm,
    normalized_only: bool,
    left: &[Perm],
) -> bool {
    let mut queue = vec![perm];
    while let Some(p) = queue.pop() {
        let x = p.apply(0);
        match &slots[x] {
            Some(existing) => {
                if *existing != p {
                    return false;
                }
                continue;
            }
            None => {
                slots[x] = Some(p.clone());
            }
        }
        let members: Vec<Perm> = slots.iter().flatten().cloned().collect();
        for q in &members {
            queue.push(p.then(q));
            queue.push(q.then(&p));
        }
        queue.push(p.inverse());
        if normalized_only {
            for l in left {
                queue.push(l.inverse().then(&p).then(l));
            }
        }
    }
    true
}
