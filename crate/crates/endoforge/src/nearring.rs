//! The near-ring N(G) of self-maps of a finite group: pointwise sum,
//! left-to-right composition, the circle operation, fixed-point-freeness,
//! quasi-inverses, nilpotent endomorphisms, and exhaustive endomorphism
//! enumeration by generator-image backtracking.
//!
//! Conventions, fixed once for the whole crate: maps act on the right
//! (`x^φ`), composition is left-to-right (`x^{φψ} = (x^φ)^ψ`), the sum is
//! `x^{φ+ψ} = x^φ·x^ψ`, and `x^{−φ} = (x^φ)⁻¹`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ENUM_CAP};

/// An arbitrary self-map of a group, given by its image array.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    group: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap{:?}", self.images)
    }
}

impl GMap {
    pub fn new(group: &Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::InvalidDescriptor(
                "image array length does not match the group order".into(),
            ));
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= group.order()) {
            return Err(Error::BadElement(bad));
        }
        Ok(GMap {
            group: Arc::clone(group),
            images,
        })
    }

    /// The zero map `x ↦ 1`.
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GMap {
            group: Arc::clone(group),
            images: vec![0; group.order()],
        }
    }

    /// The identity map.
    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GMap {
            group: Arc::clone(group),
            images: (0..group.order()).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    fn check_same_group(&self, other: &GMap) -> Result<()> {
        if self.group.same_group(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Pointwise sum: `x^{φ+ψ} = x^φ·x^ψ`.
    pub fn add(&self, other: &GMap) -> Result<GMap> {
        self.check_same_group(other)?;
        let g = &self.group;
        let images = (0..g.order())
            .map(|x| g.mul(self.images[x], other.images[x]))
            .collect();
        Ok(GMap {
            group: Arc::clone(g),
            images,
        })
    }

    /// Pointwise negation: `x^{−φ} = (x^φ)⁻¹`.
    pub fn negate(&self) -> GMap {
        let g = &self.group;
        let images = self.images.iter().map(|&v| g.inv(v)).collect();
        GMap {
            group: Arc::clone(g),
            images,
        }
    }

    /// Left-to-right composition: `x^{φψ} = (x^φ)^ψ` where `self` is φ.
    pub fn compose(&self, other: &GMap) -> Result<GMap> {
        self.check_same_group(other)?;
        let images = self.images.iter().map(|&v| other.images[v]).collect();
        Ok(GMap {
            group: Arc::clone(&self.group),
            images,
        })
    }

    /// `x^{1−φ} = x·(x^φ)⁻¹`.
    pub fn one_minus(&self) -> GMap {
        let g = &self.group;
        let images = (0..g.order())
            .map(|x| g.mul(x, g.inv(self.images[x])))
            .collect();
        GMap {
            group: Arc::clone(g),
            images,
        }
    }

    /// Circle operation `φ ∘ ψ = ψ − φψ + φ`.
    pub fn circle(&self, other: &GMap) -> Result<GMap> {
        self.check_same_group(other)?;
        let g = &self.group;
        let images = (0..g.order())
            .map(|x| {
                let psi = other.images[x];
                let phipsi = other.images[self.images[x]];
                g.mul(g.mul(psi, g.inv(phipsi)), self.images[x])
            })
            .collect();
        Ok(GMap {
            group: Arc::clone(g),
            images,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|&v| v == 0)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.group.order()];
        for &v in &self.images {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Inverts a bijective map; `None` if not bijective.
    pub fn inverse_bijection(&self) -> Option<GMap> {
        let n = self.group.order();
        let mut inv = vec![usize::MAX; n];
        for (x, &v) in self.images.iter().enumerate() {
            if inv[v] != usize::MAX {
                return None;
            }
            inv[v] = x;
        }
        Some(GMap {
            group: Arc::clone(&self.group),
            images: inv,
        })
    }
}

// ---------------------------------------------------------------------------
// Certified endomorphisms

/// A self-map certified to satisfy the homomorphism law, with lazily cached
/// kernel, image and flags.
pub struct Endo {
    map: GMap,
    kernel: OnceLock<Subgroup>,
    image: OnceLock<Subgroup>,
    fpf: OnceLock<bool>,
    abelian: OnceLock<bool>,
    nilpotency: OnceLock<Option<usize>>,
}

impl Clone for Endo {
    fn clone(&self) -> Self {
        Endo::from_certified(self.map.clone())
    }
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}
impl Eq for Endo {}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo{:?}", self.map.images)
    }
}

/// Certifies a map as an endomorphism; on failure the error carries a pair
/// witnessing `f(xy) ≠ f(x)f(y)`.
pub fn as_endo(map: &GMap) -> Result<Endo> {
    match map.group.verify_hom(&map.images) {
        Ok(()) => Ok(Endo::from_certified(map.clone())),
        Err((x, y)) => Err(Error::NotHomomorphism { x, y }),
    }
}

impl Endo {
    pub(crate) fn from_certified(map: GMap) -> Self {
        debug_assert_eq!(map.images[0], 0);
        Endo {
            map,
            kernel: OnceLock::new(),
            image: OnceLock::new(),
            fpf: OnceLock::new(),
            abelian: OnceLock::new(),
            nilpotency: OnceLock::new(),
        }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Endo::from_certified(GMap::zero(group))
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        Endo::from_certified(GMap::identity(group))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.map.group
    }

    pub fn as_gmap(&self) -> &GMap {
        &self.map
    }

    pub fn images(&self) -> &[usize] {
        &self.map.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map.images[x]
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn kernel(&self) -> &Subgroup {
        self.kernel.get_or_init(|| {
            let elems = (0..self.group().order())
                .filter(|&x| self.map.images[x] == 0)
                .collect();
            Subgroup::from_sorted_unchecked(self.group(), elems)
        })
    }

    pub fn image(&self) -> &Subgroup {
        self.image.get_or_init(|| {
            let mut mask = vec![false; self.group().order()];
            for &v in &self.map.images {
                mask[v] = true;
            }
            let elems = (0..self.group().order()).filter(|&x| mask[x]).collect();
            Subgroup::from_sorted_unchecked(self.group(), elems)
        })
    }

    /// True iff the only fixed point is the identity.
    pub fn is_fpf(&self) -> bool {
        *self
            .fpf
            .get_or_init(|| self.map.images.iter().enumerate().skip(1).all(|(x, &v)| v != x))
    }

    /// True iff the image is an abelian subgroup.
    pub fn is_abelian(&self) -> bool {
        *self.abelian.get_or_init(|| {
            if self.group().is_abelian() {
                return true;
            }
            self.image().is_abelian()
        })
    }

    /// Least `n ≥ 1` with `φⁿ = 0`, if any. Detection stops once the kernel
    /// chain stabilizes without reaching the whole group.
    pub fn nilpotency_index(&self) -> Option<usize> {
        *self.nilpotency.get_or_init(|| {
            let g = self.group();
            let n = g.order();
            let mut cur = self.map.images.clone();
            let mut k = 1usize;
            let mut prev_kernel = usize::MAX;
            loop {
                let kernel_size = cur.iter().filter(|&&v| v == 0).count();
                if kernel_size == n {
                    return Some(k);
                }
                if kernel_size == prev_kernel {
                    return None;
                }
                prev_kernel = kernel_size;
                let next: Vec<usize> = cur.iter().map(|&v| self.map.images[v]).collect();
                cur = next;
                k += 1;
            }
        })
    }

    /// The quasi-inverse ψ with `(1−φ)(1−ψ) = 1`, when it exists. The
    /// candidate is pinned by inverting the bijection `1−φ`; it is returned
    /// iff it certifies as an endomorphism.
    pub fn quasi_inverse(&self) -> Result<Option<Endo>> {
        if !self.is_fpf() {
            let witness = (1..self.group().order())
                .find(|&x| self.map.images[x] == x)
                .unwrap_or(0);
            return Err(Error::NotFpf { witness });
        }
        let g = self.group();
        let om = self.map.one_minus();
        let beta = om
            .inverse_bijection()
            .expect("1 − φ is a bijection for fpf φ");
        let images: Vec<usize> = (0..g.order())
            .map(|x| g.mul(g.inv(beta.images[x]), x))
            .collect();
        match g.verify_hom(&images) {
            Ok(()) => Ok(Some(Endo::from_certified(GMap {
                group: Arc::clone(g),
                images,
            }))),
            Err(_) => Ok(None),
        }
    }

    pub fn is_quasi_invertible(&self) -> Result<bool> {
        Ok(self.quasi_inverse()?.is_some())
    }

    /// For nilpotent abelian φ, the quasi-inverse via the geometric series:
    /// `ψ = −(φ + φ² + ⋯ + φ^{n−1})`, built by pointwise sums.
    pub fn geometric_quasi_inverse(&self) -> Result<Endo> {
        let n = match self.nilpotency_index() {
            Some(n) => n,
            None => return Err(Error::NotNilpotent),
        };
        if !self.is_abelian() {
            let im = self.image().elems().to_vec();
            for &a in &im {
                for &b in &im {
                    if self.group().mul(a, b) != self.group().mul(b, a) {
                        return Err(Error::NotAbelian { x: a, y: b });
                    }
                }
            }
            unreachable!("non-abelian image must produce a witness");
        }
        let g = self.group();
        let mut sum = GMap::zero(g);
        let mut power = self.map.clone();
        for _ in 1..n {
            sum = sum.add(&power)?;
            power = power.compose(&self.map)?;
        }
        let psi = sum.negate();
        as_endo(&psi)
    }
}

impl Serialize for Endo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Endo", 2)?;
        s.serialize_field("group", &format!("{:016x}", self.group().content_hash()))?;
        s.serialize_field("images", &self.map.images)?;
        s.end()
    }
}

/// True iff the images of φ and ψ commute elementwise, which is exactly when
/// φ + ψ is again an endomorphism.
pub fn sum_endo_criterion(phi: &Endo, psi: &Endo) -> Result<bool> {
    phi.map.check_same_group(&psi.map)?;
    let g = phi.group();
    let a = phi.image().elems().to_vec();
    let b = psi.image().elems().to_vec();
    for &x in &a {
        for &y in &b {
            if g.mul(x, y) != g.mul(y, x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-clause report for a quasi-inverse pair; each failed clause carries a
/// witness element (or pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiInverseReport {
    /// `φ + ψ = ψ + φ`; witness x with `x^{φ+ψ} ≠ x^{ψ+φ}`.
    pub sum_commutes: std::result::Result<(), usize>,
    /// `φψ = ψφ`; witness x.
    pub composition_commutes: std::result::Result<(), usize>,
    /// `G^φ = G^ψ`; witness element in the symmetric difference.
    pub images_equal: std::result::Result<(), usize>,
    /// the common image is abelian; witness pair.
    pub image_abelian: std::result::Result<(), (usize, usize)>,
    /// `ker φ = ker ψ`; witness element.
    pub kernels_equal: std::result::Result<(), usize>,
}

impl QuasiInverseReport {
    pub fn all_pass(&self) -> bool {
        self.sum_commutes.is_ok()
            && self.composition_commutes.is_ok()
            && self.images_equal.is_ok()
            && self.image_abelian.is_ok()
            && self.kernels_equal.is_ok()
    }
}

/// Verifies the structural consequences of ψ being the quasi-inverse of φ.
pub fn quasi_inverse_properties(phi: &Endo, psi: &Endo) -> Result<QuasiInverseReport> {
    phi.map.check_same_group(&psi.map)?;
    let g = phi.group();
    let n = g.order();

    let mut sum_commutes = Ok(());
    for x in 0..n {
        if g.mul(phi.apply(x), psi.apply(x)) != g.mul(psi.apply(x), phi.apply(x)) {
            sum_commutes = Err(x);
            break;
        }
    }
    let mut composition_commutes = Ok(());
    for x in 0..n {
        if psi.apply(phi.apply(x)) != phi.apply(psi.apply(x)) {
            composition_commutes = Err(x);
            break;
        }
    }
    let mut phi_mask = vec![false; n];
    let mut psi_mask = vec![false; n];
    for x in 0..n {
        phi_mask[phi.apply(x)] = true;
        psi_mask[psi.apply(x)] = true;
    }
    let images_equal = match (0..n).find(|&x| phi_mask[x] != psi_mask[x]) {
        Some(x) => Err(x),
        None => Ok(()),
    };
    let image: Vec<usize> = (0..n).filter(|&x| phi_mask[x]).collect();
    let mut image_abelian = Ok(());
    'outer: for &a in &image {
        for &b in &image {
            if g.mul(a, b) != g.mul(b, a) {
                image_abelian = Err((a, b));
                break 'outer;
            }
        }
    }
    let kernels_equal =
        match (0..n).find(|&x| (phi.apply(x) == 0) != (psi.apply(x) == 0)) {
            Some(x) => Err(x),
            None => Ok(()),
        };
    Ok(QuasiInverseReport {
        sum_commutes,
        composition_commutes,
        images_equal,
        image_abelian,
        kernels_equal,
    })
}

/// Checks, over every fpf endomorphism of `g`, that quasi-invertibility is
/// exactly abelianity of the image.
pub fn recab_check(g: &Arc<FiniteGroup>) -> Result<bool> {
    for endo in enumerate_endomorphisms(g, EndoFilter::fpf_only())? {
        if endo.quasi_inverse()?.is_some() != endo.is_abelian() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Enumeration

/// Post-certification filters for endomorphism enumeration. The zero map
/// counts as fpf and quasi-invertible; `nontrivial` excludes exactly the
/// zero map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EndoFilter {
    pub fpf: bool,
    pub abelian: bool,
    pub quasi_invertible: bool,
    pub nontrivial: bool,
}

impl EndoFilter {
    pub fn all() -> Self {
        EndoFilter::default()
    }

    pub fn fpf_only() -> Self {
        EndoFilter {
            fpf: true,
            ..Default::default()
        }
    }

    pub fn fpf_abelian() -> Self {
        EndoFilter {
            fpf: true,
            abelian: true,
            ..Default::default()
        }
    }
}

impl FromStr for EndoFilter {
    type Err = Error;

    /// Parses a space- or comma-separated list of
    /// `all | fpf | abelian | quasi-invertible | nontrivial`.
    fn from_str(s: &str) -> Result<Self> {
        let mut f = EndoFilter::default();
        for token in s.split(|c: char| c.is_whitespace() || c == ',') {
            match token {
                "" | "all" => {}
                "fpf" => f.fpf = true,
                "abelian" => f.abelian = true,
                "quasi-invertible" => f.quasi_invertible = true,
                "nontrivial" => f.nontrivial = true,
                other => {
                    return Err(Error::InvalidDescriptor(format!(
                        "unknown filter token {other:?}"
                    )))
                }
            }
        }
        Ok(f)
    }
}

/// Streams every endomorphism of `g` exactly once, in lexicographic order of
/// whole image arrays, with filters applied after certification.
pub fn enumerate_endomorphisms(g: &Arc<FiniteGroup>, filter: EndoFilter) -> Result<EndoStream> {
    enumerate_endomorphisms_capped(g, filter, DEFAULT_ENUM_CAP)
}

pub fn enumerate_endomorphisms_capped(
    g: &Arc<FiniteGroup>,
    filter: EndoFilter,
    cap: usize,
) -> Result<EndoStream> {
    EndoStream::new(g, None, filter, cap)
}

/// Same, restricted to endomorphisms whose image lies inside the given
/// subgroup (candidate generator images are drawn from it).
pub fn enumerate_endomorphisms_into(
    g: &Arc<FiniteGroup>,
    allowed: &Subgroup,
    filter: EndoFilter,
) -> Result<EndoStream> {
    EndoStream::new(g, Some(allowed), filter, DEFAULT_ENUM_CAP)
}

pub struct EndoStream {
    group: Arc<FiniteGroup>,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    /// odometer over candidate indices; `None` before the first step
    state: Option<Vec<usize>>,
    done: bool,
    filter: EndoFilter,
    buf: Vec<usize>,
}

impl EndoStream {
    fn new(
        g: &Arc<FiniteGroup>,
        allowed: Option<&Subgroup>,
        filter: EndoFilter,
        cap: usize,
    ) -> Result<Self> {
        if g.order() > cap {
            return Err(Error::CapExceeded {
                order: g.order(),
                cap,
            });
        }
        let gens = g.greedy_gens().to_vec();
        let orders = g.elem_orders();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&gen| {
                (0..g.order())
                    .filter(|&t| orders[gen] % orders[t] == 0)
                    .filter(|&t| allowed.map_or(true, |s| s.contains(t)))
                    .collect()
            })
            .collect();
        Ok(EndoStream {
            group: Arc::clone(g),
            gens,
            candidates,
            state: None,
            done: false,
            filter,
            buf: Vec::new(),
        })
    }

    fn advance(&mut self) -> bool {
        match &mut self.state {
            None => {
                if self.candidates.iter().any(|c| c.is_empty()) {
                    return false;
                }
                self.state = Some(vec![0; self.gens.len()]);
                true
            }
            Some(state) => {
                for i in (0..state.len()).rev() {
                    if state[i] + 1 < self.candidates[i].len() {
                        state[i] += 1;
                        for s in state[i + 1..].iter_mut() {
                            *s = 0;
                        }
                        return true;
                    }
                }
                false
            }
        }
    }

    fn passes_filter(&self, images: &[usize]) -> bool {
        let f = &self.filter;
        if f.nontrivial && images.iter().all(|&v| v == 0) {
            return false;
        }
        if f.fpf || f.quasi_invertible {
            if images.iter().enumerate().skip(1).any(|(x, &v)| v == x) {
                return false;
            }
        }
        if f.abelian && !self.group.is_abelian() {
            let mut mask = vec![false; self.group.order()];
            for &v in images {
                mask[v] = true;
            }
            let im: Vec<usize> = (0..self.group.order()).filter(|&x| mask[x]).collect();
            for &a in &im {
                for &b in &im {
                    if self.group.mul(a, b) != self.group.mul(b, a) {
                        return false;
                    }
                }
            }
        }
        if f.quasi_invertible {
            let endo = Endo::from_certified(GMap {
                group: Arc::clone(&self.group),
                images: images.to_vec(),
            });
            match endo.quasi_inverse() {
                Ok(Some(_)) => {}
                _ => return false,
            }
        }
        true
    }
}

impl Iterator for EndoStream {
    type Item = Endo;

    fn next(&mut self) -> Option<Endo> {
        if self.done {
            return None;
        }
        // a group with no generators is trivial: emit its unique endomorphism
        if self.gens.is_empty() {
            self.done = true;
            let zero = Endo::zero(&self.group);
            return if self.passes_filter(zero.images()) {
                Some(zero)
            } else {
                None
            };
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            let state = self.state.as_ref().unwrap();
            let gen_images: Vec<usize> = state
                .iter()
                .enumerate()
                .map(|(i, &s)| self.candidates[i][s])
                .collect();
            let mut buf = std::mem::take(&mut self.buf);
            self.group.extend_gen_images(&gen_images, &mut buf);
            let ok = self.group.verify_hom(&buf).is_ok() && self.passes_filter(&buf);
            if ok {
                let images = buf.clone();
                self.buf = buf;
                return Some(Endo::from_certified(GMap {
                    group: Arc::clone(&self.group),
                    images,
                }));
            }
            self.buf = buf;
        }
    }
}

/// Extends prescribed images of a generating set to a full map, verifying
/// the homomorphism law. `None` if the pairs do not extend; an error if the
/// given elements do not generate the group.
pub fn hom_from_gen_images(
    g: &Arc<FiniteGroup>,
    pairs: &[(usize, usize)],
) -> std::result::Result<Vec<usize>, Option<(usize, usize)>> {
    let n = g.order();
    let mut images = vec![usize::MAX; n];
    images[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &(gen, gim) in pairs {
            let y = g.mul(x, gen);
            let fy = g.mul(images[x], gim);
            if images[y] == usize::MAX {
                images[y] = fy;
                queue.push_back(y);
            }
        }
    }
    if images.iter().any(|&v| v == usize::MAX) {
        return Err(None); // not a generating set
    }
    match g.verify_hom(&images) {
        Ok(()) => Ok(images),
        Err(w) => Err(Some(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{frobenius_group, make_group, GroupDescriptor};

    fn group(d: GroupDescriptor) -> Arc<FiniteGroup> {
        make_group(&d).unwrap()
    }

    fn power_map(g: &Arc<FiniteGroup>, k: usize) -> GMap {
        GMap::new(g, (0..g.order()).map(|x| g.pow(x, k)).collect()).unwrap()
    }

    #[test]
    fn add_identity_to_itself_is_squaring() {
        let c3 = group(GroupDescriptor::Cyclic(3));
        let id = GMap::identity(&c3);
        let sq = id.add(&id).unwrap();
        assert_eq!(sq.images(), &[0, 2, 1]);
    }

    #[test]
    fn negate_zero_is_zero() {
        let c3 = group(GroupDescriptor::Cyclic(3));
        assert!(GMap::zero(&c3).negate().is_zero());
    }

    #[test]
    fn one_minus_cube_on_c4_is_not_injective() {
        let c4 = group(GroupDescriptor::Cyclic(4));
        let cube = power_map(&c4, 3);
        let om = cube.one_minus();
        // x ↦ x⁻² sends both 0 and g² to the identity
        assert_eq!(om.apply(0), 0);
        assert_eq!(om.apply(2), 0);
        assert!(!om.is_bijective());
    }

    #[test]
    fn circle_with_zero_on_either_side_is_identity_of_the_operation() {
        let s3 = group(GroupDescriptor::Symmetric(3));
        let zero = GMap::zero(&s3);
        let inv_map = GMap::new(&s3, (0..6).map(|x| s3.inv(x)).collect()).unwrap();
        assert_eq!(zero.circle(&inv_map).unwrap(), inv_map);
        assert_eq!(inv_map.circle(&zero).unwrap(), inv_map);
    }

    #[test]
    fn circle_of_quasi_inverse_pair_on_c7_is_zero() {
        let c7 = group(GroupDescriptor::Cyclic(7));
        let phi = power_map(&c7, 3);
        let psi = power_map(&c7, 5);
        assert!(phi.circle(&psi).unwrap().is_zero());
    }

    #[test]
    fn as_endo_accepts_identity_and_reports_kernel_image() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        let id = as_endo(&GMap::identity(&s4)).unwrap();
        assert!(id.kernel().is_trivial());
        assert!(id.image().is_whole());
    }

    #[test]
    fn as_endo_rejects_inversion_on_s3_with_witness() {
        let s3 = group(GroupDescriptor::Symmetric(3));
        let inv_map = GMap::new(&s3, (0..6).map(|x| s3.inv(x)).collect()).unwrap();
        match as_endo(&inv_map) {
            Err(Error::NotHomomorphism { x, y }) => {
                let f = |v: usize| s3.inv(v);
                assert_ne!(f(s3.mul(x, y)), s3.mul(f(x), f(y)));
            }
            other => panic!("expected a witnessed failure, got {other:?}"),
        }
    }

    #[test]
    fn squaring_on_abelian_groups_is_an_endomorphism() {
        let g = group(GroupDescriptor::Abelian(vec![4, 2]));
        assert!(as_endo(&power_map(&g, 2)).is_ok());
    }

    #[test]
    fn sum_endo_criterion_matches_certification() {
        for d in [
            GroupDescriptor::Symmetric(3),
            GroupDescriptor::Dihedral(4),
            GroupDescriptor::Abelian(vec![2, 4]),
        ] {
            let g = group(d);
            let endos: Vec<Endo> =
                enumerate_endomorphisms(&g, EndoFilter::all()).unwrap().collect();
            for a in &endos {
                for b in &endos {
                    let crit = sum_endo_criterion(a, b).unwrap();
                    let sum_ok = as_endo(&a.as_gmap().add(b.as_gmap()).unwrap()).is_ok();
                    assert_eq!(crit, sum_ok);
                    if crit {
                        // sums then commute
                        assert_eq!(
                            a.as_gmap().add(b.as_gmap()).unwrap(),
                            b.as_gmap().add(a.as_gmap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_not_fpf_but_zero_is() {
        let g = group(GroupDescriptor::Cyclic(6));
        assert!(!Endo::identity(&g).is_fpf());
        assert!(Endo::zero(&g).is_fpf());
    }

    #[test]
    fn cube_on_c4_has_a_fixed_point() {
        let c4 = group(GroupDescriptor::Cyclic(4));
        let e = as_endo(&power_map(&c4, 3)).unwrap();
        assert!(!e.is_fpf()); // g² is fixed
        assert_eq!(e.apply(2), 2);
    }

    #[test]
    fn fpf_iff_one_minus_bijective_exhaustively() {
        for d in [
            GroupDescriptor::Symmetric(3),
            GroupDescriptor::Dihedral(6),
            GroupDescriptor::Abelian(vec![2, 4]),
            GroupDescriptor::Heisenberg(3),
        ] {
            let g = group(d);
            for e in enumerate_endomorphisms(&g, EndoFilter::all()).unwrap() {
                assert_eq!(e.is_fpf(), e.as_gmap().one_minus().is_bijective());
            }
        }
    }

    #[test]
    fn quasi_inverse_of_zero_is_zero() {
        let g = group(GroupDescriptor::Dihedral(5));
        let psi = Endo::zero(&g).quasi_inverse().unwrap().unwrap();
        assert!(psi.is_zero());
    }

    #[test]
    fn quasi_inverse_on_c7_of_cube_is_fifth_power() {
        let c7 = group(GroupDescriptor::Cyclic(7));
        let phi = as_endo(&power_map(&c7, 3)).unwrap();
        let psi = phi.quasi_inverse().unwrap().unwrap();
        assert_eq!(psi.images(), power_map(&c7, 5).images());
        // (1−φ)(1−ψ) is the identity on all seven elements
        let comp = phi
            .as_gmap()
            .one_minus()
            .compose(&psi.as_gmap().one_minus())
            .unwrap();
        assert_eq!(comp, GMap::identity(&c7));
        // φ + ψ = φψ
        assert_eq!(
            phi.as_gmap().add(psi.as_gmap()).unwrap(),
            phi.as_gmap().compose(psi.as_gmap()).unwrap()
        );
    }

    #[test]
    fn squaring_on_c5_is_its_own_quasi_inverse() {
        let c5 = group(GroupDescriptor::Cyclic(5));
        let phi = as_endo(&power_map(&c5, 2)).unwrap();
        let psi = phi.quasi_inverse().unwrap().unwrap();
        assert_eq!(psi, phi);
        let comp = phi
            .as_gmap()
            .one_minus()
            .compose(&psi.as_gmap().one_minus())
            .unwrap();
        assert_eq!(comp, GMap::identity(&c5));
    }

    #[test]
    fn quasi_inverse_requires_fpf() {
        let g = group(GroupDescriptor::Cyclic(4));
        assert!(matches!(
            Endo::identity(&g).quasi_inverse(),
            Err(Error::NotFpf { .. })
        ));
    }

    #[test]
    fn quasi_inverse_properties_pass_on_c7_pair() {
        let c7 = group(GroupDescriptor::Cyclic(7));
        let phi = as_endo(&power_map(&c7, 3)).unwrap();
        let psi = phi.quasi_inverse().unwrap().unwrap();
        assert!(quasi_inverse_properties(&phi, &psi).unwrap().all_pass());
        let zero = Endo::zero(&c7);
        assert!(quasi_inverse_properties(&zero, &zero).unwrap().all_pass());
    }

    #[test]
    fn frobenius_kill_kernel_endo_has_sylow3_image() {
        let (g, data) = frobenius_group(7, 3).unwrap();
        // φ kills C₇ and squares the complement generator: the glued map
        // h·k ↦ h², realized directly on indices
        let b = data.complement().elems()[1];
        let b2 = g.mul(b, b);
        let images: Vec<usize> = (0..21)
            .map(|x| {
                let (h, _k) = data.factor(x);
                if h == 0 {
                    0
                } else if h == b {
                    b2
                } else {
                    g.mul(b2, b2)
                }
            })
            .collect();
        let phi = as_endo(&GMap::new(&g, images).unwrap()).unwrap();
        assert!(phi.is_fpf());
        let psi = phi.quasi_inverse().unwrap().unwrap();
        let report = quasi_inverse_properties(&phi, &psi).unwrap();
        assert!(report.all_pass());
        assert_eq!(phi.image().elems(), data.complement().elems());
    }

    #[test]
    fn klein_shift_is_nilpotent_of_index_two_and_equals_minus_itself() {
        let v4 = group(GroupDescriptor::Abelian(vec![2, 2]));
        // (a, b) ↦ (b, 1): in coordinates, index 2 ↦ 0... the generator
        // e₁ = (1,0) is index 2 and e₂ = (0,1) is index 1
        let images = vec![0, 0, 1, 1];
        let phi = as_endo(&GMap::new(&v4, images).unwrap()).unwrap();
        assert_eq!(phi.nilpotency_index(), Some(2));
        let psi = phi.geometric_quasi_inverse().unwrap();
        assert_eq!(psi.images(), phi.as_gmap().negate().images());
        assert_eq!(psi.images(), phi.images()); // characteristic 2
        assert_eq!(phi.quasi_inverse().unwrap().unwrap(), psi);
    }

    #[test]
    fn zero_map_has_nilpotency_index_one() {
        let g = group(GroupDescriptor::Dihedral(4));
        let zero = Endo::zero(&g);
        assert_eq!(zero.nilpotency_index(), Some(1));
        assert!(zero.geometric_quasi_inverse().unwrap().is_zero());
    }

    #[test]
    fn heisenberg_shift_has_index_two_and_minus_eta_inverse() {
        let heis = group(GroupDescriptor::Heisenberg(3));
        let gens = heis.recorded_gens().unwrap().to_vec();
        let (a, b) = (gens[0], gens[1]);
        let eta_images = hom_from_gen_images(&heis, &[(a, b), (b, 0)]).unwrap();
        let eta = as_endo(&GMap::new(&heis, eta_images).unwrap()).unwrap();
        assert_eq!(eta.nilpotency_index(), Some(2));
        let psi = eta.geometric_quasi_inverse().unwrap();
        assert_eq!(psi.images(), eta.as_gmap().negate().images());
        assert_eq!(eta.quasi_inverse().unwrap().unwrap(), psi);
    }

    #[test]
    fn enumeration_on_c5_finds_exactly_the_four_fpf_powers() {
        let c5 = group(GroupDescriptor::Cyclic(5));
        let fpf: Vec<Vec<usize>> = enumerate_endomorphisms(&c5, EndoFilter::fpf_only())
            .unwrap()
            .map(|e| e.images().to_vec())
            .collect();
        let expected: Vec<Vec<usize>> = [0usize, 2, 3, 4]
            .iter()
            .map(|&s| (0..5).map(|x| (x * s) % 5).collect())
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(fpf, expected);
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        for d in [
            GroupDescriptor::Symmetric(3),
            GroupDescriptor::Dihedral(4),
            GroupDescriptor::Abelian(vec![2, 4]),
        ] {
            let g = group(d);
            let all: Vec<Vec<usize>> = enumerate_endomorphisms(&g, EndoFilter::all())
                .unwrap()
                .map(|e| e.images().to_vec())
                .collect();
            for w in all.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn enumeration_matches_whole_table_search_on_small_groups() {
        for d in [GroupDescriptor::Symmetric(3), GroupDescriptor::Cyclic(6)] {
            let g = group(d);
            let n = g.order();
            // independent oracle: all n^n maps, filtered by the full
            // homomorphism law over every pair
            let mut oracle: Vec<Vec<usize>> = Vec::new();
            let mut cur = vec![0usize; n];
            loop {
                let hom = (0..n)
                    .all(|x| (0..n).all(|y| cur[g.mul(x, y)] == g.mul(cur[x], cur[y])));
                if hom {
                    oracle.push(cur.clone());
                }
                let mut i = n;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    cur[i] += 1;
                    if cur[i] < n {
                        break;
                    }
                    cur[i] = 0;
                }
                if cur.iter().all(|&v| v == 0) {
                    break;
                }
            }
            let ours: Vec<Vec<usize>> = enumerate_endomorphisms(&g, EndoFilter::all())
                .unwrap()
                .map(|e| e.images().to_vec())
                .collect();
            assert_eq!(ours, oracle);
        }
    }

    #[test]
    fn s3_has_no_nontrivial_abelian_fpf_endomorphisms() {
        let s3 = group(GroupDescriptor::Symmetric(3));
        let mut filter = EndoFilter::fpf_abelian();
        filter.nontrivial = true;
        assert_eq!(enumerate_endomorphisms(&s3, filter).unwrap().count(), 0);
    }

    #[test]
    fn s4_has_exactly_three_double_transposition_endomorphisms() {
        let s4 = group(GroupDescriptor::Symmetric(4));
        let mut filter = EndoFilter::fpf_abelian();
        filter.nontrivial = true;
        let endos: Vec<Endo> = enumerate_endomorphisms(&s4, filter).unwrap().collect();
        assert_eq!(endos.len(), 3);
        for e in &endos {
            let im = e.image();
            assert_eq!(im.order(), 2);
            let t = im.elems()[1];
            // the image generator is an even involution: a double transposition
            assert_eq!(s4.element_order(t), 2);
            let label = s4.label_of(t);
            let moved = label
                .bytes()
                .enumerate()
                .filter(|&(i, b)| (b - b'1') as usize != i)
                .count();
            assert_eq!(moved, 4, "image generator {label} is not a double transposition");
        }
    }

    #[test]
    fn recab_check_holds_on_assorted_groups() {
        for d in [
            GroupDescriptor::Symmetric(4),
            GroupDescriptor::Dihedral(6),
            GroupDescriptor::Abelian(vec![3, 9]),
        ] {
            let g = group(d);
            assert!(recab_check(&g).unwrap());
        }
    }

    #[test]
    fn filter_parsing() {
        let f: EndoFilter = "fpf abelian nontrivial".parse().unwrap();
        assert!(f.fpf && f.abelian && f.nontrivial && !f.quasi_invertible);
        let f: EndoFilter = "all".parse().unwrap();
        assert_eq!(f, EndoFilter::all());
        assert!("bogus".parse::<EndoFilter>().is_err());
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let g = group(GroupDescriptor::Dihedral(5));
        assert!(matches!(
            enumerate_endomorphisms_capped(&g, EndoFilter::all(), 8),
            Err(Error::CapExceeded { order: 10, cap: 8 })
        ));
    }
}
