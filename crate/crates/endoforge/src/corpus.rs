//! Named example groups and the standard sweep corpus used by the test
//! suites and the CLI reports.

use std::sync::Arc;

use crate::construct::{
    frobenius_group, make_central_aut_extension, make_group, make_semidirect, GroupDescriptor,
};
use crate::group::{FiniteGroup, SemidirectData};
use crate::nearring::hom_from_gen_images;

/// The quaternion group of order 8, from an explicit table on
/// {1, −1, i, −i, j, −j, k, −k}.
pub fn quaternion8() -> Arc<FiniteGroup> {
    // encode q = (s, u) with sign s ∈ {0,1} and unit u ∈ {1, i, j, k}
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let unit = |x: usize| x / 2; // 0:1, 1:i, 2:j, 3:k
    let sign = |x: usize| x % 2;
    let pack = |u: usize, s: usize| 2 * u + s;
    // unit products with sign: i*j = k, j*i = -k, etc.
    let table_units = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, b) => (b, 0),
            (a, 0) => (a, 0),
            (1, 1) => (0, 1),
            (2, 2) => (0, 1),
            (3, 3) => (0, 1),
            (1, 2) => (3, 0),
            (2, 1) => (3, 1),
            (2, 3) => (1, 0),
            (3, 2) => (1, 1),
            (3, 1) => (2, 0),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (u, s) = table_units(unit(a), unit(b));
            table[a][b] = pack(u, (s + sign(a) + sign(b)) % 2);
        }
    }
    FiniteGroup::from_table(
        table,
        Some(labels.iter().map(|s| s.to_string()).collect()),
        Some(vec![2, 4]),
    )
    .expect("the quaternion table is a valid group")
}

/// The order-81 group: C3 acting on the extraspecial group of order 27 and
/// exponent 3 by a ↦ ab, b ↦ b.
pub fn heisenberg_twist_81() -> (Arc<FiniteGroup>, SemidirectData) {
    let heis = make_group(&GroupDescriptor::Heisenberg(3)).unwrap();
    let c3 = make_group(&GroupDescriptor::Cyclic(3)).unwrap();
    let gens = heis.recorded_gens().unwrap().to_vec();
    let (a, b) = (gens[0], gens[1]);
    let alpha = hom_from_gen_images(&heis, &[(a, heis.mul(a, b)), (b, b)])
        .expect("a ↦ ab, b ↦ b is an automorphism");
    let alpha2: Vec<usize> = (0..27).map(|x| alpha[alpha[x]]).collect();
    let id: Vec<usize> = (0..27).collect();
    make_semidirect(&heis, &c3, &[id, alpha, alpha2]).expect("twist of the 27-group by C3")
}

/// The order-32 central-automorphism extension of D4.
pub fn central_extension_32() -> (Arc<FiniteGroup>, SemidirectData) {
    let d4 = make_group(&GroupDescriptor::Dihedral(4)).unwrap();
    make_central_aut_extension(&d4).expect("D4 is a special 2-group")
}

/// Multiset partitions of `k`, each sorted descending.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(k: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = max.min(k);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(k - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Cyclic-factor lists of every abelian group of order `n`, ascending.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut rest = n;
    let mut primes: Vec<(usize, u32)> = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            primes.push((p, k));
        }
        p += 1;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, k) in primes {
        let parts = partitions(k);
        let mut next = Vec::new();
        for combo in &combos {
            for part in &parts {
                let mut c = combo.clone();
                c.extend(part.iter().map(|&e| p.pow(e)));
                next.push(c);
            }
        }
        combos = next;
    }
    for c in combos.iter_mut() {
        c.sort_unstable();
    }
    combos.sort();
    combos
}

/// Shapes of every abelian p-group of order up to `max_order`.
pub fn abelian_pgroup_types(p: usize, max_order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut order = p;
    let mut k = 1u32;
    while order <= max_order {
        for part in partitions(k) {
            let mut factors: Vec<usize> = part.iter().map(|&e| p.pow(e)).collect();
            factors.sort_unstable();
            out.push(factors);
        }
        order *= p;
        k += 1;
    }
    out
}

/// The main-theorem sweep corpus: cyclic groups to order 16, every abelian
/// group to order 32, dihedral groups to order 40, the small symmetric and
/// alternating groups, Q8, the two Frobenius groups, the 27-group, the
/// order-81 twist and the order-32 central extension.
pub fn theorem_corpus() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in 1..=16 {
        out.push((
            format!("C{n}"),
            make_group(&GroupDescriptor::Cyclic(n)).unwrap(),
        ));
    }
    for n in 2..=32 {
        for factors in abelian_types(n) {
            if factors.len() > 1 {
                let name = factors
                    .iter()
                    .map(|f| format!("C{f}"))
                    .collect::<Vec<_>>()
                    .join(" x ");
                out.push((
                    name,
                    make_group(&GroupDescriptor::Abelian(factors)).unwrap(),
                ));
            } else if n > 16 {
                out.push((
                    format!("C{n}"),
                    make_group(&GroupDescriptor::Cyclic(n)).unwrap(),
                ));
            }
        }
    }
    for m in 1..=20 {
        out.push((
            format!("D({m})"),
            make_group(&GroupDescriptor::Dihedral(m)).unwrap(),
        ));
    }
    out.push((
        "S3".into(),
        make_group(&GroupDescriptor::Symmetric(3)).unwrap(),
    ));
    out.push((
        "S4".into(),
        make_group(&GroupDescriptor::Symmetric(4)).unwrap(),
    ));
    out.push((
        "A4".into(),
        make_group(&GroupDescriptor::Alternating(4)).unwrap(),
    ));
    out.push(("Q8".into(), quaternion8()));
    out.push(("F(7,3)".into(), frobenius_group(7, 3).unwrap().0));
    out.push(("F(5,4)".into(), frobenius_group(5, 4).unwrap().0));
    out.push((
        "Heis(3)".into(),
        make_group(&GroupDescriptor::Heisenberg(3)).unwrap(),
    ));
    out.push(("Heis(3):C3".into(), heisenberg_twist_81().0));
    out.push(("CExt(D(4))".into(), central_extension_32().0));
    out
}
