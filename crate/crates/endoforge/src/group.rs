//! Concrete finite groups given by their Cayley tables, plus the subgroup
//! machinery (derived subgroup, center, generated subgroups, semidirect
//! factorizations) the rest of the crate is built on.
//!
//! Elements are dense indices `0..order` with `0` the identity; every
//! operation works on indices, never labels. The commutator convention is
//! `[a, b] = a⁻¹b⁻¹ab` and conjugation is `a^b = b⁻¹ab`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the order of constructed groups.
pub const DEFAULT_ORDER_CAP: usize = 512;
/// Default cap on the order of groups whose endomorphisms are enumerated.
pub const DEFAULT_ENUM_CAP: usize = 128;

/// A finite group on `0..order` with the identity at index 0, stored as a
/// full multiplication table. Immutable after construction; all caches are
/// filled lazily and the type is safe to share across threads.
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
    gens: Option<Vec<usize>>,
    greedy_gens: OnceLock<Vec<usize>>,
    tree: OnceLock<ExtensionTree>,
    elem_orders: OnceLock<Vec<usize>>,
    center: OnceLock<Vec<usize>>,
    derived: OnceLock<Vec<usize>>,
    abelian: OnceLock<bool>,
    hash: OnceLock<u64>,
}

/// Spanning data for extending a map off generator images: element `e ≠ 0`
/// satisfies `e = prev · gens[gen]` with `prev` visited earlier.
pub(crate) struct ExtensionTree {
    pub visit: Vec<usize>,
    pub step: Vec<(usize, usize)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a nested multiplication table, validating the
    /// identity position, inverses and (exhaustively) associativity.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        gens: Option<Vec<usize>>,
    ) -> Result<Arc<Self>> {
        Self::from_table_capped(table, labels, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_capped(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        gens: Option<Vec<usize>>,
        cap: usize,
    ) -> Result<Arc<Self>> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidDescriptor("empty table".into()));
        }
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(Error::InvalidDescriptor("table is not square".into()));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::BadElement(v));
                }
                flat.push(v);
            }
        }
        Self::from_flat(flat, order, labels, gens)
    }

    pub(crate) fn from_flat(
        flat: Vec<usize>,
        order: usize,
        labels: Option<Vec<String>>,
        gens: Option<Vec<usize>>,
    ) -> Result<Arc<Self>> {
        debug_assert_eq!(flat.len(), order * order);
        // identity at 0
        for x in 0..order {
            if flat[x] != x || flat[x * order] != x {
                return Err(Error::InvalidDescriptor(format!(
                    "index 0 is not the identity (fails at {x})"
                )));
            }
        }
        // inverses
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| flat[x * order + y] == 0) {
                Some(y) => inv[x] = y,
                None => {
                    return Err(Error::InvalidDescriptor(format!("{x} has no inverse")));
                }
            }
        }
        // associativity, exhaustively
        for a in 0..order {
            for b in 0..order {
                let ab = flat[a * order + b];
                for c in 0..order {
                    if flat[ab * order + c] != flat[a * order + flat[b * order + c]] {
                        return Err(Error::InvalidDescriptor(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if let Some(ref ls) = labels {
            if ls.len() != order {
                return Err(Error::InvalidDescriptor("label count mismatch".into()));
            }
        }
        if let Some(ref gs) = gens {
            if gs.iter().any(|&g| g >= order) {
                return Err(Error::InvalidDescriptor("generator out of range".into()));
            }
        }
        Ok(Arc::new(FiniteGroup {
            order,
            table: flat,
            inv,
            labels,
            gens,
            greedy_gens: OnceLock::new(),
            tree: OnceLock::new(),
            elem_orders: OnceLock::new(),
            center: OnceLock::new(),
            derived: OnceLock::new(),
            abelian: OnceLock::new(),
            hash: OnceLock::new(),
        }))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a^b = b⁻¹ a b`.
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[b], a), b)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elem_orders()[a]
    }

    pub fn elem_orders(&self) -> &[usize] {
        self.elem_orders.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    let mut acc = x;
                    let mut n = 1;
                    while acc != 0 {
                        acc = self.mul(acc, x);
                        n += 1;
                    }
                    n
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        *self.abelian.get_or_init(|| {
            (0..self.order)
                .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
        })
    }

    pub fn exponent(&self) -> usize {
        self.elem_orders().iter().fold(1, |acc, &o| lcm(acc, o))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => format!("g{x}"),
        }
    }

    /// Generators recorded at construction, if any.
    pub fn recorded_gens(&self) -> Option<&[usize]> {
        self.gens.as_deref()
    }

    /// Canonical generating sequence: repeatedly the smallest element not in
    /// the subgroup generated so far. Every element below `gens[j]` lies in
    /// the span of the earlier generators, which makes enumeration by
    /// generator images lexicographic in whole image arrays.
    pub fn greedy_gens(&self) -> &[usize] {
        self.greedy_gens.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = vec![false; self.order];
            span[0] = true;
            let mut span_size = 1;
            while span_size < self.order {
                let g = (0..self.order).find(|&x| !span[x]).unwrap();
                gens.push(g);
                // close the span under the new generator set
                let mut stack: Vec<usize> = (0..self.order).filter(|&x| span[x]).collect();
                while let Some(x) = stack.pop() {
                    for &h in &gens {
                        let y = self.mul(x, h);
                        if !span[y] {
                            span[y] = true;
                            span_size += 1;
                            stack.push(y);
                        }
                    }
                }
            }
            gens
        })
    }

    pub(crate) fn extension_tree(&self) -> &ExtensionTree {
        self.tree.get_or_init(|| {
            let gens = self.greedy_gens();
            let mut step = vec![(usize::MAX, usize::MAX); self.order];
            let mut visit = Vec::with_capacity(self.order);
            let mut seen = vec![false; self.order];
            seen[0] = true;
            visit.push(0);
            let mut head = 0;
            while head < visit.len() {
                let x = visit[head];
                head += 1;
                for (j, &g) in gens.iter().enumerate() {
                    let y = self.mul(x, g);
                    if !seen[y] {
                        seen[y] = true;
                        step[y] = (x, j);
                        visit.push(y);
                    }
                }
            }
            debug_assert_eq!(visit.len(), self.order);
            ExtensionTree { visit, step }
        })
    }

    /// Extends generator images (aligned with `greedy_gens`) to a full image
    /// array along the spanning tree. The result is a homomorphism iff
    /// `verify_hom` accepts it.
    pub(crate) fn extend_gen_images(&self, gen_images: &[usize], out: &mut Vec<usize>) {
        let tree = self.extension_tree();
        out.clear();
        out.resize(self.order, 0);
        for &e in &tree.visit[1..] {
            let (prev, j) = tree.step[e];
            out[e] = self.mul(out[prev], gen_images[j]);
        }
    }

    /// Checks `f(x·g) = f(x)·f(g)` for every `x` and every greedy generator
    /// `g`, which is equivalent to the homomorphism law on all pairs.
    pub(crate) fn verify_hom(&self, images: &[usize]) -> std::result::Result<(), (usize, usize)> {
        for &g in self.greedy_gens() {
            let fg = images[g];
            for x in 0..self.order {
                if images[self.mul(x, g)] != self.mul(images[x], fg) {
                    return Err((x, g));
                }
            }
        }
        Ok(())
    }

    /// FNV-1a over the order and table; used to tie serialized endomorphisms
    /// to their group.
    pub fn content_hash(&self) -> u64 {
        *self.hash.get_or_init(|| {
            let mut h: u64 = 0xcbf29ce484222325;
            let mut eat = |v: u64| {
                for byte in v.to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x100000001b3);
                }
            };
            eat(self.order as u64);
            for &t in &self.table {
                eat(t as u64);
            }
            h
        })
    }

    pub(crate) fn center_elems(&self) -> &[usize] {
        self.center.get_or_init(|| {
            (0..self.order)
                .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
                .collect()
        })
    }

    pub(crate) fn derived_elems(&self) -> &[usize] {
        self.derived.get_or_init(|| {
            let mut seeds = Vec::new();
            for a in 0..self.order {
                for b in 0..self.order {
                    seeds.push(self.commutator(a, b));
                }
            }
            close_under_product(self, &seeds)
        })
    }

    /// Structural equality of the underlying tables (same-instance fast path).
    pub fn same_group(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Sorted closure of a seed set under products (inverses come for free in a
/// finite group).
fn close_under_product(g: &FiniteGroup, seeds: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut stack = vec![0];
    for &s in seeds {
        if !mask[s] {
            mask[s] = true;
            stack.push(s);
        }
    }
    let mut members: Vec<usize> = stack.clone();
    while let Some(x) = stack.pop() {
        // multiply against every current member and every seed
        let snapshot: Vec<usize> = members.clone();
        for &y in &snapshot {
            for z in [g.mul(x, y), g.mul(y, x)] {
                if !mask[z] {
                    mask[z] = true;
                    members.push(z);
                    stack.push(z);
                }
            }
        }
    }
    let mut out: Vec<usize> = (0..g.order()).filter(|&x| mask[x]).collect();
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// Subgroups

/// A subgroup of a fixed parent group, stored as a sorted element set.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elems: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elems)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.elems == other.elems
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            elems: vec![0],
        }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent: Arc::clone(parent),
            elems: (0..parent.order()).collect(),
        }
    }

    /// Subgroup generated by a seed set.
    pub fn generated(parent: &Arc<FiniteGroup>, seeds: &[usize]) -> Result<Self> {
        for &s in seeds {
            if s >= parent.order() {
                return Err(Error::BadElement(s));
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            elems: close_under_product(parent, seeds),
        })
    }

    /// Wraps an element set after verifying closure.
    pub fn from_elems(parent: &Arc<FiniteGroup>, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(Error::NotClosed { witness: 0 });
        }
        for &e in &elems {
            if e >= parent.order() {
                return Err(Error::BadElement(e));
            }
        }
        let mask: Vec<bool> = {
            let mut m = vec![false; parent.order()];
            for &e in &elems {
                m[e] = true;
            }
            m
        };
        for &a in &elems {
            for &b in &elems {
                let p = parent.mul(a, b);
                if !mask[p] {
                    return Err(Error::NotClosed { witness: p });
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            elems,
        })
    }

    pub(crate) fn from_sorted_unchecked(parent: &Arc<FiniteGroup>, elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            parent: Arc::clone(parent),
            elems,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        for c in 0..g.order() {
            for &e in &self.elems {
                if !self.contains(g.conjugate(e, c)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        if self.parent.is_abelian() {
            return true;
        }
        let g = &self.parent;
        self.elems
            .iter()
            .all(|&a| self.elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems = self
            .elems
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Subgroup {
            parent: Arc::clone(&self.parent),
            elems,
        }
    }

    /// Re-indexes the subgroup as a standalone group. Returns the group and
    /// the index map from new indices back to parent elements.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        let n = self.elems.len();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &e) in self.elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut flat = Vec::with_capacity(n * n);
        for &a in &self.elems {
            for &b in &self.elems {
                flat.push(pos[self.parent.mul(a, b)]);
            }
        }
        let labels = self
            .parent
            .labels()
            .map(|ls| self.elems.iter().map(|&e| ls[e].clone()).collect());
        let g = FiniteGroup::from_flat(flat, n, labels, None)
            .expect("a closed subgroup re-indexes to a valid group");
        (g, self.elems.clone())
    }
}

/// Closure of all commutators.
pub fn derived_subgroup(g: &Arc<FiniteGroup>) -> Subgroup {
    Subgroup::from_sorted_unchecked(g, g.derived_elems().to_vec())
}

pub fn center_of(g: &Arc<FiniteGroup>) -> Subgroup {
    Subgroup::from_sorted_unchecked(g, g.center_elems().to_vec())
}

pub fn generated_subgroup(g: &Arc<FiniteGroup>, seeds: &[usize]) -> Result<Subgroup> {
    Subgroup::generated(g, seeds)
}

pub fn is_normal(_g: &Arc<FiniteGroup>, s: &Subgroup) -> bool {
    s.is_normal()
}

/// The prime p with `|K| = p^t`, or an error.
pub fn p_group_prime(g: &FiniteGroup) -> Result<usize> {
    let mut n = g.order();
    if n == 1 {
        return Err(Error::NotPGroup { order: 1 });
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return if n == 1 {
                Ok(p)
            } else {
                Err(Error::NotPGroup { order: g.order() })
            };
        }
        p += 1;
    }
    Ok(n)
}

/// Frattini subgroup `K'·K^p` of a p-group.
pub fn frattini_pgroup(k: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let p = p_group_prime(k)?;
    let mut seeds: Vec<usize> = k.derived_elems().to_vec();
    for x in 0..k.order() {
        seeds.push(k.pow(x, p));
    }
    Subgroup::generated(k, &seeds)
}

// ---------------------------------------------------------------------------
// Semidirect factorizations

/// Witness that `G = H ⋉ K`: the normal subgroup, the complement, and the
/// unique factorization `g = h·k` of every element.
#[derive(Clone, Debug)]
pub struct SemidirectData {
    kernel: Subgroup,
    complement: Subgroup,
    factor: Vec<(usize, usize)>,
}

impl SemidirectData {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn complement(&self) -> &Subgroup {
        &self.complement
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        self.kernel.parent()
    }

    /// The unique `(h, k)` with `g = h·k`.
    pub fn factor(&self, g: usize) -> (usize, usize) {
        self.factor[g]
    }
}

/// Verifies that `K` is normal, `H ∩ K = 1` and `HK = G`, and computes the
/// per-element factorization.
pub fn factorize_semidirect(
    g: &Arc<FiniteGroup>,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<SemidirectData> {
    if !k.parent().same_group(g) || !h.parent().same_group(g) {
        return Err(Error::GroupMismatch);
    }
    for c in 0..g.order() {
        for &e in k.elems() {
            let conj = g.conjugate(e, c);
            if !k.contains(conj) {
                return Err(Error::NotNormal {
                    element: e,
                    conjugator: c,
                });
            }
        }
    }
    if let Some(&w) = h.elems().iter().find(|&&e| e != 0 && k.contains(e)) {
        return Err(Error::NontrivialIntersection { witness: w });
    }
    let mut factor = vec![(usize::MAX, usize::MAX); g.order()];
    for x in 0..g.order() {
        let mut found = None;
        for &hh in h.elems() {
            let kk = g.mul(g.inv(hh), x);
            if k.contains(kk) {
                found = Some((hh, kk));
                break;
            }
        }
        match found {
            Some(pair) => factor[x] = pair,
            None => return Err(Error::ProductNotWhole { witness: x }),
        }
    }
    Ok(SemidirectData {
        kernel: k.clone(),
        complement: h.clone(),
        factor,
    })
}

// ---------------------------------------------------------------------------
// Canonical JSON form

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FiniteGroup", 3)?;
        s.serialize_field("order", &self.order)?;
        let rows: Vec<&[usize]> = self.table.chunks(self.order).collect();
        s.serialize_field("table", &rows)?;
        let labels: Vec<String> = (0..self.order).map(|x| self.label_of(x)).collect();
        s.serialize_field("labels", &labels)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
            #[serde(default)]
            labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.table.len() != raw.order {
            return Err(D::Error::custom("table size does not match order"));
        }
        let g = FiniteGroup::from_table(raw.table, raw.labels, None)
            .map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(Arc::try_unwrap(g).unwrap_or_else(|arc| FiniteGroup {
            order: arc.order,
            table: arc.table.clone(),
            inv: arc.inv.clone(),
            labels: arc.labels.clone(),
            gens: arc.gens.clone(),
            greedy_gens: OnceLock::new(),
            tree: OnceLock::new(),
            elem_orders: OnceLock::new(),
            center: OnceLock::new(),
            derived: OnceLock::new(),
            abelian: OnceLock::new(),
            hash: OnceLock::new(),
        }))
    }
}
