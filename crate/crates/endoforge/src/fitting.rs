//! Fitting decomposition of a finite group along an endomorphism: the
//! stabilization index n of the kernel/image chains, the semidirect
//! splitting G = ker(φⁿ) ⋊ im(φⁿ), and restrictions of endomorphisms to
//! invariant subgroups.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{factorize_semidirect, FiniteGroup, SemidirectData, Subgroup};
use crate::nearring::{as_endo, Endo, GMap};

/// The stabilized splitting: `K = ker(φⁿ)` is normal, `H = im(φⁿ)` is a
/// complement, φ is nilpotent on K and bijective on H.
#[derive(Clone, Debug)]
pub struct FittingDecomposition {
    pub n: usize,
    pub kernel_part: Subgroup,
    pub image_part: Subgroup,
    pub data: SemidirectData,
}

impl Serialize for FittingDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FittingDecomposition", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("K", &self.kernel_part.elems())?;
        s.serialize_field("H", &self.image_part.elems())?;
        s.end()
    }
}

/// Least `n ≥ 1` with `ker(φⁿ) = ker(φ^{n+1})` and `im(φⁿ) = im(φ^{n+1})`.
/// Both chains are monotone, so size comparisons decide equality, and they
/// stabilize together since `|im| = |G| / |ker|`.
pub fn fitting_index(phi: &Endo) -> usize {
    let mut cur: Vec<usize> = phi.images().to_vec();
    let mut n = 1usize;
    loop {
        let ker: usize = cur.iter().filter(|&&v| v == 0).count();
        let next: Vec<usize> = cur.iter().map(|&v| phi.apply(v)).collect();
        let ker_next: usize = next.iter().filter(|&&v| v == 0).count();
        if ker == ker_next {
            return n;
        }
        cur = next;
        n += 1;
    }
}

/// Image array of `φⁿ`.
fn power_images(phi: &Endo, n: usize) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..phi.group().order()).collect();
    for _ in 0..n {
        cur = cur.iter().map(|&v| phi.apply(v)).collect();
    }
    cur
}

/// The certified decomposition. Internal assertion failures here indicate a
/// broken group or endomorphism and abort.
pub fn fitting_decomposition(phi: &Endo) -> FittingDecomposition {
    let g = phi.group();
    let n = fitting_index(phi);
    let pow = power_images(phi, n);
    let kernel_elems: Vec<usize> = (0..g.order()).filter(|&x| pow[x] == 0).collect();
    let mut image_mask = vec![false; g.order()];
    for &v in &pow {
        image_mask[v] = true;
    }
    let image_elems: Vec<usize> = (0..g.order()).filter(|&x| image_mask[x]).collect();
    let kernel_part = Subgroup::from_sorted_unchecked(g, kernel_elems);
    let image_part = Subgroup::from_sorted_unchecked(g, image_elems);
    let data = factorize_semidirect(g, &kernel_part, &image_part)
        .expect("Fitting's lemma: ker(φⁿ) ⋊ im(φⁿ) always factorizes");
    // φ is nilpotent on K and bijective on H
    debug_assert!(kernel_part
        .elems()
        .iter()
        .all(|&x| kernel_part.contains(phi.apply(x))));
    debug_assert!({
        let im: Vec<usize> = image_part.elems().iter().map(|&x| phi.apply(x)).collect();
        let mut sorted = im.clone();
        sorted.sort_unstable();
        sorted == image_part.elems()
    });
    FittingDecomposition {
        n,
        kernel_part,
        image_part,
        data,
    }
}

/// Restricts φ to a φ-invariant subgroup, re-indexed as a standalone group.
/// Returns the restricted endomorphism together with the index map from the
/// standalone group back to parent elements.
pub fn restrict_endo(phi: &Endo, s: &Subgroup) -> Result<(Endo, Vec<usize>)> {
    if !s.parent().same_group(phi.group()) {
        return Err(Error::GroupMismatch);
    }
    for &e in s.elems() {
        let im = phi.apply(e);
        if !s.contains(im) {
            return Err(Error::NotInvariant {
                element: e,
                image: im,
            });
        }
    }
    let (standalone, to_parent) = s.as_group();
    restrict_endo_to(phi, s, &standalone, &to_parent)
}

/// Restriction against a precomputed standalone copy of the subgroup, for
/// callers that reuse the re-indexed group across many endomorphisms.
pub fn restrict_endo_to(
    phi: &Endo,
    s: &Subgroup,
    standalone: &Arc<FiniteGroup>,
    to_parent: &[usize],
) -> Result<(Endo, Vec<usize>)> {
    let mut local_of = vec![usize::MAX; phi.group().order()];
    for (i, &e) in to_parent.iter().enumerate() {
        local_of[e] = i;
    }
    let mut images = Vec::with_capacity(to_parent.len());
    for &e in to_parent {
        let im = phi.apply(e);
        if !s.contains(im) {
            return Err(Error::NotInvariant {
                element: e,
                image: im,
            });
        }
        images.push(local_of[im]);
    }
    let map = GMap::new(standalone, images)?;
    let endo = as_endo(&map)?;
    Ok((endo, to_parent.to_vec()))
}
