//! Constructors for the stock families of groups and for semidirect
//! products, including the central-automorphism extension of a special
//! p-group.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    center_of, derived_subgroup, factorize_semidirect, frattini_pgroup, FiniteGroup,
    SemidirectData, Subgroup, DEFAULT_ORDER_CAP,
};
use crate::nearring::{enumerate_endomorphisms_into, EndoFilter};

/// Structured description of a stock group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Cyclic(usize),
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<usize>),
    /// Dihedral group of order `2m`, presentation ⟨x, y | xᵐ = y² = 1, x^y = x⁻¹⟩.
    Dihedral(usize),
    /// Symmetric group on `n ≤ 5` letters, elements in lexicographic
    /// one-line order.
    Symmetric(usize),
    /// Alternating group on `n ≤ 5` letters.
    Alternating(usize),
    /// Nonabelian group of order p³ and exponent p, p an odd prime.
    Heisenberg(usize),
}

pub fn make_group(descriptor: &GroupDescriptor) -> Result<Arc<FiniteGroup>> {
    make_group_capped(descriptor, DEFAULT_ORDER_CAP)
}

pub fn make_group_capped(descriptor: &GroupDescriptor, cap: usize) -> Result<Arc<FiniteGroup>> {
    match descriptor {
        GroupDescriptor::Cyclic(n) => cyclic(*n, cap),
        GroupDescriptor::Abelian(ns) => abelian(ns, cap),
        GroupDescriptor::Dihedral(m) => dihedral(*m, cap),
        GroupDescriptor::Symmetric(n) => permutations(*n, false, cap),
        GroupDescriptor::Alternating(n) => permutations(*n, true, cap),
        GroupDescriptor::Heisenberg(p) => heisenberg(*p, cap),
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::CapExceeded { order, cap })
    } else {
        Ok(())
    }
}

fn cyclic(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::InvalidDescriptor("cyclic(0)".into()));
    }
    check_cap(n, cap)?;
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push((a + b) % n);
        }
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let gens = if n > 1 { Some(vec![1]) } else { Some(vec![]) };
    FiniteGroup::from_flat(flat, n, Some(labels), gens)
}

fn abelian(ns: &[usize], cap: usize) -> Result<Arc<FiniteGroup>> {
    if ns.iter().any(|&n| n == 0) {
        return Err(Error::InvalidDescriptor("abelian factor of order 0".into()));
    }
    let order: usize = ns.iter().product();
    if order == 0 || ns.is_empty() {
        return cyclic(1, cap);
    }
    check_cap(order, cap)?;
    // mixed-radix tuples, first factor most significant
    let coords = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; ns.len()];
        for (i, &n) in ns.iter().enumerate().rev() {
            c[i] = x % n;
            x /= n;
        }
        c
    };
    let index = |c: &[usize]| -> usize {
        c.iter()
            .zip(ns.iter())
            .fold(0, |acc, (&ci, &n)| acc * n + ci)
    };
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        let ca = coords(a);
        for b in 0..order {
            let cb = coords(b);
            let sum: Vec<usize> = ca
                .iter()
                .zip(cb.iter())
                .zip(ns.iter())
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect();
            flat.push(index(&sum));
        }
    }
    let labels = (0..order)
        .map(|x| {
            let c = coords(x);
            format!(
                "({})",
                c.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    let mut gens = Vec::new();
    for i in 0..ns.len() {
        if ns[i] > 1 {
            let mut c = vec![0; ns.len()];
            c[i] = 1;
            gens.push(index(&c));
        }
    }
    FiniteGroup::from_flat(flat, order, Some(labels), Some(gens))
}

fn dihedral(m: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if m == 0 {
        return Err(Error::InvalidDescriptor("dihedral(0)".into()));
    }
    let order = 2 * m;
    check_cap(order, cap)?;
    // indices: i < m is x^i, m + i is x^i·y
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (ar, af) = (a % m, a >= m);
            let (br, bf) = (b % m, b >= m);
            let prod = match (af, bf) {
                (false, false) => (ar + br) % m,
                (false, true) => m + (ar + br) % m,
                (true, false) => m + (ar + m - br % m) % m,
                (true, true) => (ar + m - br % m) % m,
            };
            flat.push(prod);
        }
    }
    let labels = (0..order)
        .map(|i| {
            let (r, f) = (i % m, i >= m);
            match (r, f) {
                (0, false) => "1".to_string(),
                (0, true) => "y".to_string(),
                (1, false) => "x".to_string(),
                (1, true) => "x*y".to_string(),
                (_, false) => format!("x^{r}"),
                (_, true) => format!("x^{r}*y"),
            }
        })
        .collect();
    let gens = if m == 1 { vec![m] } else { vec![1, m] };
    FiniteGroup::from_flat(flat, order, Some(labels), Some(gens))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn permutations(n: usize, even_only: bool, cap: usize) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidDescriptor(format!(
            "permutation groups are supported for 1 ≤ n ≤ 5, got {n}"
        )));
    }
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(factorial(n));
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        // next permutation in lexicographic order
        let mut i = n.wrapping_sub(2);
        while i != usize::MAX && cur[i] >= cur[i + 1] {
            i = i.wrapping_sub(1);
        }
        if i == usize::MAX {
            break;
        }
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    if even_only {
        perms.retain(|p| parity(p) == 0);
    }
    let order = perms.len();
    check_cap(order, cap)?;
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    // product "a then b": (ab)(i) = b(a(i))
    let mut flat = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let prod: Vec<usize> = a.iter().map(|&i| b[i]).collect();
            flat.push(index[&prod]);
        }
    }
    let labels = perms
        .iter()
        .map(|p| {
            p.iter()
                .map(|&i| (b'1' + i as u8) as char)
                .collect::<String>()
        })
        .collect();
    FiniteGroup::from_flat(flat, order, Some(labels), None)
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn heisenberg(p: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidDescriptor(format!(
            "heisenberg requires an odd prime, got {p}"
        )));
    }
    let order = p * p * p;
    check_cap(order, cap)?;
    // (i, j, k) ↔ a^i b^j z^k with (i,j,k)(i',j',k') = (i+i', j+j', k+k'+i·j')
    let idx = |i: usize, j: usize, k: usize| (i * p + j) * p + k;
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ai, aj, ak) = (a / (p * p), (a / p) % p, a % p);
        for b in 0..order {
            let (bi, bj, bk) = (b / (p * p), (b / p) % p, b % p);
            flat.push(idx(
                (ai + bi) % p,
                (aj + bj) % p,
                (ak + bk + ai * bj) % p,
            ));
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (i, j, k) = (x / (p * p), (x / p) % p, x % p);
            if (i, j, k) == (0, 0, 0) {
                "1".to_string()
            } else {
                let mut s = String::new();
                for (sym, e) in [("a", i), ("b", j), ("z", k)] {
                    match e {
                        0 => {}
                        1 => s.push_str(sym),
                        _ => s.push_str(&format!("{sym}^{e}")),
                    }
                }
                s
            }
        })
        .collect();
    let gens = vec![idx(1, 0, 0), idx(0, 1, 0)];
    FiniteGroup::from_flat(flat, order, Some(labels), Some(gens))
}

// ---------------------------------------------------------------------------
// Semidirect products

/// Builds `G = H ⋉ K` on pairs `(h, k)` with index `h·|K| + k` and product
/// `(h₁,k₁)(h₂,k₂) = (h₁h₂, k₁^{action(h₂)}·k₂)`. The action maps each
/// element of `H` to an automorphism of `K`, homomorphically under
/// left-to-right composition.
pub fn make_semidirect(
    k: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    action: &[Vec<usize>],
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    make_semidirect_capped(k, h, action, DEFAULT_ORDER_CAP)
}

pub fn make_semidirect_capped(
    k: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    action: &[Vec<usize>],
    cap: usize,
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    let (nk, nh) = (k.order(), h.order());
    if action.len() != nh {
        return Err(Error::BadAction);
    }
    for a in action {
        if a.len() != nk {
            return Err(Error::BadAction);
        }
        // bijective homomorphism of K
        let mut seen = vec![false; nk];
        for &v in a {
            if v >= nk || seen[v] {
                return Err(Error::BadAction);
            }
            seen[v] = true;
        }
        if k.verify_hom(a).is_err() {
            return Err(Error::BadAction);
        }
    }
    // homomorphism into Aut(K): action(h₁h₂) = action(h₁) then action(h₂)
    for a in 0..nh {
        for b in 0..nh {
            let ab = h.mul(a, b);
            for x in 0..nk {
                if action[ab][x] != action[b][action[a][x]] {
                    return Err(Error::BadAction);
                }
            }
        }
    }
    let order = nk * nh;
    check_cap(order, cap)?;
    let idx = |hh: usize, kk: usize| hh * nk + kk;
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        let (h1, k1) = (a / nk, a % nk);
        for b in 0..order {
            let (h2, k2) = (b / nk, b % nk);
            flat.push(idx(h.mul(h1, h2), k.mul(action[h2][k1], k2)));
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (hh, kk) = (x / nk, x % nk);
            format!("({}|{})", h.label_of(hh), k.label_of(kk))
        })
        .collect();
    let mut gens = Vec::new();
    if let Some(hg) = h.recorded_gens() {
        gens.extend(hg.iter().map(|&x| idx(x, 0)));
    }
    if let Some(kg) = k.recorded_gens() {
        gens.extend(kg.iter().map(|&x| idx(0, x)));
    }
    let gens = if gens.is_empty() { None } else { Some(gens) };
    let g = FiniteGroup::from_flat(flat, order, Some(labels), gens)?;
    let k_sub = Subgroup::from_sorted_unchecked(&g, (0..nk).collect());
    let h_sub = Subgroup::from_sorted_unchecked(&g, (0..nh).map(|x| idx(x, 0)).collect());
    let data = factorize_semidirect(&g, &k_sub, &h_sub)?;
    Ok((g, data))
}

/// Direct product, i.e. the semidirect product along the trivial action.
pub fn make_direct_product(
    h: &Arc<FiniteGroup>,
    k: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    let id: Vec<usize> = (0..k.order()).collect();
    let action = vec![id; h.order()];
    make_semidirect_capped(k, h, &action, cap)
}

/// For a special p-group `K` (K′ = Z(K) = Frat(K) elementary abelian),
/// builds the natural extension of `K` by the elementary abelian group
/// `H = {1 + f : f ∈ Hom(K, Z(K))}` of central automorphisms.
pub fn make_central_aut_extension(
    k: &Arc<FiniteGroup>,
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    make_central_aut_extension_capped(k, DEFAULT_ORDER_CAP)
}

pub fn make_central_aut_extension_capped(
    k: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    let p = p_group_prime_checked(k)?;
    let der = derived_subgroup(k);
    let cen = center_of(k);
    let frat = frattini_pgroup(k)?;
    if der.is_trivial() {
        return Err(Error::NotSpecial("K is abelian, so K′ = 1 ≠ Z(K)".into()));
    }
    if der != cen || der != frat {
        return Err(Error::NotSpecial(
            "K′, Z(K) and Frat(K) do not coincide".into(),
        ));
    }
    if cen.elems().iter().any(|&x| x != 0 && k.pow(x, p) != 0) {
        return Err(Error::NotSpecial("Z(K) is not elementary abelian".into()));
    }

    // Hom(K, Z(K)) = endomorphisms of K with image inside the center.
    let homs: Vec<Vec<usize>> = enumerate_endomorphisms_into(k, &cen, EndoFilter::all())?
        .map(|e| e.images().to_vec())
        .collect();

    // 1 + f sends x to x·x^f; composition corresponds to f + g, so this is
    // an elementary abelian group of automorphisms with the identity first.
    let nk = k.order();
    let mut auto_maps: Vec<Vec<usize>> = Vec::with_capacity(homs.len());
    for f in &homs {
        let a: Vec<usize> = (0..nk).map(|x| k.mul(x, f[x])).collect();
        let mut seen = vec![false; nk];
        for &v in &a {
            debug_assert!(!seen[v]);
            seen[v] = true;
        }
        debug_assert!(k.verify_hom(&a).is_ok());
        auto_maps.push(a);
    }
    auto_maps.sort();
    debug_assert_eq!(auto_maps[0], (0..nk).collect::<Vec<_>>());
    check_cap(nk * auto_maps.len(), cap)?;

    let index: HashMap<&[usize], usize> = auto_maps
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let nh = auto_maps.len();
    let mut h_flat = Vec::with_capacity(nh * nh);
    for a in &auto_maps {
        for b in &auto_maps {
            let comp: Vec<usize> = (0..nk).map(|x| b[a[x]]).collect();
            h_flat.push(index[comp.as_slice()]);
        }
    }
    let h_labels = (0..nh).map(|i| format!("t{i}")).collect();
    let h_group = FiniteGroup::from_flat(h_flat, nh, Some(h_labels), None)?;
    make_semidirect_capped(k, &h_group, &auto_maps, cap)
}

fn p_group_prime_checked(k: &Arc<FiniteGroup>) -> Result<usize> {
    crate::group::p_group_prime(k)
}

/// `C_p ⋊ C_q` with the canonical faithful action: the generator of the
/// complement acts as x ↦ x^s where s is the least generator of the unique
/// order-q subgroup of (Z/p)^×. Requires p prime and q | p − 1.
pub fn frobenius_group(p: usize, q: usize) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    frobenius_group_capped(p, q, DEFAULT_ORDER_CAP)
}

pub fn frobenius_group_capped(
    p: usize,
    q: usize,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, SemidirectData)> {
    if !is_prime(p) {
        return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
    }
    if q == 0 || (p - 1) % q != 0 {
        return Err(Error::InvalidDescriptor(format!(
            "{q} does not divide {p} - 1"
        )));
    }
    let s = (1..p)
        .find(|&s| multiplicative_order(s, p) == q)
        .expect("the unique order-q subgroup of a cyclic group has a generator");
    let k = cyclic(p, cap)?;
    let h = cyclic(q, cap)?;
    let mut action = Vec::with_capacity(q);
    let mut mult = 1;
    for _ in 0..q {
        action.push((0..p).map(|x| (x * mult) % p).collect());
        mult = (mult * s) % p;
    }
    make_semidirect_capped(&k, &h, &action, cap)
}

fn multiplicative_order(s: usize, p: usize) -> usize {
    let mut acc = s % p;
    let mut n = 1;
    while acc != 1 {
        acc = (acc * s) % p;
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center_of, derived_subgroup};

    #[test]
    fn cyclic_one_is_the_trivial_group() {
        let g = make_group(&GroupDescriptor::Cyclic(1)).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn heisenberg_3_has_order_27_and_center_of_order_3() {
        let g = make_group(&GroupDescriptor::Heisenberg(3)).unwrap();
        assert_eq!(g.order(), 27);
        // center scanned directly off the constructed table
        let central: Vec<usize> = (0..27)
            .filter(|&x| (0..27).all(|y| g.mul(x, y) == g.mul(y, x)))
            .collect();
        assert_eq!(central.len(), 3);
        assert_eq!(center_of(&g).elems(), central.as_slice());
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn heisenberg_rejects_two_and_composites() {
        assert!(make_group(&GroupDescriptor::Heisenberg(2)).is_err());
        assert!(make_group(&GroupDescriptor::Heisenberg(9)).is_err());
    }

    #[test]
    fn symmetric_rejects_large_n() {
        assert!(make_group(&GroupDescriptor::Symmetric(6)).is_err());
    }

    #[test]
    fn dihedral_3_is_isomorphic_to_symmetric_3() {
        let d3 = make_group(&GroupDescriptor::Dihedral(3)).unwrap();
        let s3 = make_group(&GroupDescriptor::Symmetric(3)).unwrap();
        assert!(!d3.is_abelian());
        assert_eq!(d3.order(), 6);
        // brute-force isomorphism search over all bijections fixing 0
        let mut perm: Vec<usize> = (0..6).collect();
        let mut found = false;
        'outer: loop {
            if perm[0] == 0 {
                let iso = (0..6).all(|a| {
                    (0..6).all(|b| perm[d3.mul(a, b)] == s3.mul(perm[a], perm[b]))
                });
                if iso {
                    found = true;
                    break 'outer;
                }
            }
            // next permutation
            let n = 6;
            let mut i = n - 2;
            loop {
                if perm[i] < perm[i + 1] {
                    break;
                }
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
            }
            if perm[i] >= perm[i + 1] {
                break;
            }
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        assert!(found, "no isomorphism D3 ≅ S3 found");
    }

    #[test]
    fn dihedral_presentation_relations_hold() {
        for m in [2usize, 3, 4, 5, 10] {
            let g = make_group(&GroupDescriptor::Dihedral(m)).unwrap();
            let (x, y) = (1 % m.max(2), m);
            let x = if m == 1 { 0 } else { x };
            assert_eq!(g.pow(x, m), 0);
            assert_eq!(g.mul(y, y), 0);
            assert_eq!(g.conjugate(x, y), g.inv(x));
        }
    }

    #[test]
    fn frobenius_21_is_nonabelian_with_derived_subgroup_of_order_7() {
        let (g, data) = frobenius_group(7, 3).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(derived_subgroup(&g).order(), 7);
        assert_eq!(data.kernel().order(), 7);
        assert_eq!(data.complement().order(), 3);
        // the canonical action sends the generator to x ↦ x²
        assert_eq!(g.conjugate(1, data.complement().elems()[1]), 2);
    }

    #[test]
    fn frobenius_rejects_bad_parameters() {
        assert!(frobenius_group(8, 3).is_err());
        assert!(frobenius_group(7, 4).is_err());
    }

    #[test]
    fn trivial_action_gives_a_direct_product() {
        let c2 = make_group(&GroupDescriptor::Cyclic(2)).unwrap();
        let c3 = make_group(&GroupDescriptor::Cyclic(3)).unwrap();
        let (g, _) = make_direct_product(&c2, &c3, DEFAULT_ORDER_CAP).unwrap();
        assert!(g.is_abelian());
        let s3 = make_group(&GroupDescriptor::Symmetric(3)).unwrap();
        let (h, _) = make_direct_product(&c2, &s3, DEFAULT_ORDER_CAP).unwrap();
        assert!(!h.is_abelian());
        assert_eq!(h.order(), 12);
    }

    #[test]
    fn semidirect_factorization_round_trips() {
        let (g, data) = frobenius_group(5, 4).unwrap();
        for x in 0..g.order() {
            let (h, k) = data.factor(x);
            assert_eq!(g.mul(h, k), x);
            assert!(data.complement().contains(h));
            assert!(data.kernel().contains(k));
        }
    }

    #[test]
    fn semidirect_rejects_non_homomorphic_actions() {
        let c4 = make_group(&GroupDescriptor::Cyclic(4)).unwrap();
        let c2 = make_group(&GroupDescriptor::Cyclic(2)).unwrap();
        // inversion is an automorphism of C4, but assigning it to the
        // identity of C2 breaks the homomorphism condition
        let inv_map: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
        let id: Vec<usize> = (0..4).collect();
        assert!(matches!(
            make_semidirect(&c4, &c2, &[inv_map, id]),
            Err(Error::BadAction)
        ));
    }

    #[test]
    fn heisenberg_c3_twist_has_order_81() {
        let heis = make_group(&GroupDescriptor::Heisenberg(3)).unwrap();
        let c3 = make_group(&GroupDescriptor::Cyclic(3)).unwrap();
        let gens = heis.recorded_gens().unwrap().to_vec();
        let (a, b) = (gens[0], gens[1]);
        let alpha = crate::nearring::hom_from_gen_images(&heis, &[(a, heis.mul(a, b)), (b, b)])
            .expect("a ↦ ab, b ↦ b extends to an automorphism");
        let alpha2: Vec<usize> = (0..27).map(|x| alpha[alpha[x]]).collect();
        let id: Vec<usize> = (0..27).collect();
        let (g, data) = make_semidirect(&heis, &c3, &[id, alpha.clone(), alpha2]).unwrap();
        assert_eq!(g.order(), 81);
        assert_eq!(data.kernel().order(), 27);
        assert!(!g.is_abelian());
    }

    #[test]
    fn central_extension_of_d4_has_complement_of_order_4() {
        let d4 = make_group(&GroupDescriptor::Dihedral(4)).unwrap();
        // D4 is special: K′ = Z = Frat of order 2
        assert_eq!(derived_subgroup(&d4).order(), 2);
        assert_eq!(center_of(&d4).order(), 2);
        let (g, data) = make_central_aut_extension(&d4).unwrap();
        assert_eq!(data.complement().order(), 4);
        assert_eq!(g.order(), 32);

        // independent oracle: every function K → Z(K) that is a
        // homomorphism, counted exhaustively (|Z|^|K| candidates)
        let z: Vec<usize> = center_of(&d4).elems().to_vec();
        let mut count = 0;
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if partial.len() == 8 {
                let ok = (0..8).all(|x| {
                    (0..8).all(|y| partial[d4.mul(x, y)] == d4.mul(partial[x], partial[y]))
                });
                if ok {
                    count += 1;
                }
                continue;
            }
            for &t in &z {
                let mut next = partial.clone();
                next.push(t);
                stack.push(next);
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn central_extension_rejects_abelian_groups() {
        let c4 = make_group(&GroupDescriptor::Cyclic(4)).unwrap();
        assert!(matches!(
            make_central_aut_extension(&c4),
            Err(Error::NotSpecial(_))
        ));
    }

    #[test]
    fn central_extension_of_heisenberg_3_has_order_243() {
        // Hom(K/K′, Z(K)) = Hom(C3², C3) has 9 elements, so H ≅ C3² and
        // |G| = 27·9 = 243, inside the default construction cap.
        let heis = make_group(&GroupDescriptor::Heisenberg(3)).unwrap();
        let (g, data) = make_central_aut_extension(&heis).unwrap();
        assert_eq!(data.complement().order(), 9);
        assert_eq!(g.order(), 243);
        // and a tight cap rejects it
        assert!(matches!(
            make_central_aut_extension_capped(&heis, 128),
            Err(Error::CapExceeded { order: 243, cap: 128 })
        ));
    }

    #[test]
    fn alternating_4_has_order_12() {
        let a4 = make_group(&GroupDescriptor::Alternating(4)).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        assert_eq!(derived_subgroup(&a4).order(), 4);
    }
}
