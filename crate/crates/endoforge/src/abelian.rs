//! Structure theory for finite abelian p-groups: primary decomposition,
//! homocyclic bases, endomorphisms as block integer matrices with
//! divisibility constraints, the mod-p fixed-point criterion, and the
//! triangular construction of fixed-point witnesses.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::nearring::{as_endo, Endo, GMap};

/// Invariant data of an abelian p-group: homocyclic components of exponent
/// `p^{e_i}` and rank `r_i`, with `e_1 < e_2 < … < e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianPGroupShape {
    pub p: u64,
    pub exps: Vec<u32>,
    pub ranks: Vec<usize>,
}

impl AbelianPGroupShape {
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.ranks)
            .map(|(&e, &r)| self.p.pow(e * r as u32))
            .product()
    }

    /// Component index of the `u`-th basis vector.
    pub fn component_of(&self, u: usize) -> usize {
        let mut acc = 0;
        for (i, &r) in self.ranks.iter().enumerate() {
            acc += r;
            if u < acc {
                return i;
            }
        }
        panic!("basis index {u} out of range");
    }

    /// Order `p^{e_i}` of the `u`-th basis vector.
    pub fn basis_order(&self, u: usize) -> u64 {
        self.p.pow(self.exps[self.component_of(u)])
    }
}

/// An explicit basis realizing the homocyclic decomposition, with both
/// directions of the element ↔ coordinate-vector isomorphism.
#[derive(Debug, Clone)]
pub struct HomocyclicIso {
    group: Arc<FiniteGroup>,
    shape: AbelianPGroupShape,
    basis: Vec<usize>,
    coords: Vec<Vec<u64>>,
    elem_of: HashMap<Vec<u64>, usize>,
}

impl HomocyclicIso {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn shape(&self) -> &AbelianPGroupShape {
        &self.shape
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    pub fn element_of(&self, coords: &[u64]) -> usize {
        let reduced: Vec<u64> = coords
            .iter()
            .enumerate()
            .map(|(u, &c)| c % self.shape.basis_order(u))
            .collect();
        self.elem_of[&reduced]
    }
}

/// Sylow subgroups of an abelian group, one per prime divisor of the order.
pub fn primary_decomposition(g: &Arc<FiniteGroup>) -> Result<Vec<(u64, Subgroup)>> {
    if !g.is_abelian() {
        let (x, y) = first_non_commuting(g);
        return Err(Error::NotAbelian { x, y });
    }
    let mut n = g.order();
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    let mut out = Vec::new();
    for p in primes {
        let elems: Vec<usize> = (0..g.order())
            .filter(|&x| {
                let mut o = g.element_order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect();
        out.push((p as u64, Subgroup::from_sorted_unchecked(g, elems)));
    }
    Ok(out)
}

fn first_non_commuting(g: &FiniteGroup) -> (usize, usize) {
    for a in 0..g.order() {
        for b in 0..g.order() {
            if g.mul(a, b) != g.mul(b, a) {
                return (a, b);
            }
        }
    }
    unreachable!("called on an abelian group")
}

/// Homocyclic shape and one explicit basis for an abelian p-group. The basis
/// is the lexicographically least one found by greedy splitting: repeatedly
/// take the smallest element of maximal order whose cyclic span meets the
/// running product trivially (with backtracking, so a valid basis is always
/// found).
pub fn homocyclic_shape(g: &Arc<FiniteGroup>) -> Result<(AbelianPGroupShape, HomocyclicIso)> {
    if !g.is_abelian() {
        let (x, y) = first_non_commuting(g);
        return Err(Error::NotAbelian { x, y });
    }
    let p = crate::group::p_group_prime(g).map_err(|_| Error::NotPGroup { order: g.order() })? as u64;
    let basis = find_basis(g).expect("every abelian p-group has a basis");

    // sort ascending by element order, then by index, and read off the shape
    let mut basis = basis;
    basis.sort_by_key(|&b| (g.element_order(b), b));
    let mut exps: Vec<u32> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    for &b in &basis {
        let mut o = g.element_order(b);
        let mut e = 0u32;
        while o > 1 {
            o /= p as usize;
            e += 1;
        }
        if exps.last() == Some(&e) {
            *ranks.last_mut().unwrap() += 1;
        } else {
            exps.push(e);
            ranks.push(1);
        }
    }
    let shape = AbelianPGroupShape { p, exps, ranks };

    // tabulate both directions of the isomorphism
    let orders: Vec<u64> = (0..basis.len()).map(|u| shape.basis_order(u)).collect();
    let mut coords = vec![Vec::new(); g.order()];
    let mut elem_of = HashMap::new();
    let mut c = vec![0u64; basis.len()];
    loop {
        let mut x = 0usize;
        for (u, &b) in basis.iter().enumerate() {
            x = g.mul(x, g.pow(b, c[u] as usize));
        }
        debug_assert!(coords[x].is_empty() || c.iter().all(|&v| v == 0));
        coords[x] = c.clone();
        elem_of.insert(c.clone(), x);
        // odometer
        let mut u = basis.len();
        loop {
            if u == 0 {
                break;
            }
            u -= 1;
            c[u] += 1;
            if c[u] < orders[u] {
                break;
            }
            c[u] = 0;
        }
        if c.iter().all(|&v| v == 0) {
            break;
        }
    }
    debug_assert_eq!(elem_of.len(), g.order());
    let iso = HomocyclicIso {
        group: Arc::clone(g),
        shape: shape.clone(),
        basis,
        coords,
        elem_of,
    };
    Ok((shape, iso))
}

/// Backtracking basis search: candidates in descending element order, ties
/// by ascending index; the first complete internal direct product wins.
fn find_basis(g: &Arc<FiniteGroup>) -> Option<Vec<usize>> {
    if g.order() == 1 {
        return Some(Vec::new());
    }
    let mut candidates: Vec<usize> = (1..g.order()).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut span = vec![false; g.order()];
    span[0] = true;
    let mut chosen = Vec::new();
    if search_basis(g, &candidates, &mut span, 1, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn search_basis(
    g: &Arc<FiniteGroup>,
    candidates: &[usize],
    span: &mut Vec<bool>,
    span_size: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if span_size == g.order() {
        return true;
    }
    for &c in candidates {
        if span[c] {
            continue;
        }
        // cyclic span of c must meet the current product trivially
        let ord = g.element_order(c);
        let mut meets = false;
        let mut acc = c;
        while acc != 0 {
            if span[acc] {
                meets = true;
                break;
            }
            acc = g.mul(acc, c);
        }
        if meets {
            continue;
        }
        // extend the span by ⟨current, c⟩ = {s·c^j}
        let saved = span.clone();
        let members: Vec<usize> = (0..g.order()).filter(|&x| span[x]).collect();
        let mut new_size = span_size;
        for &s in &members {
            let mut acc = s;
            for _ in 1..ord {
                acc = g.mul(acc, c);
                if !span[acc] {
                    span[acc] = true;
                    new_size += 1;
                }
            }
        }
        chosen.push(c);
        if search_basis(g, candidates, span, new_size, chosen) {
            return true;
        }
        chosen.pop();
        *span = saved;
    }
    false
}

// ---------------------------------------------------------------------------
// Endomorphisms as matrices

/// Block integer matrix of an endomorphism: block `(i, j)` is `r_i × r_j`
/// with entries mod `p^{e_j}`, acting on row coordinate vectors. When
/// `e_i < e_j`, every entry of block `(i, j)` must be divisible by
/// `p^{e_j − e_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoMatrix {
    pub shape: AbelianPGroupShape,
    /// blocks[i][j][row][col]
    pub blocks: Vec<Vec<Vec<Vec<u64>>>>,
}

impl EndoMatrix {
    pub fn zero(shape: &AbelianPGroupShape) -> Self {
        let blocks = shape
            .ranks
            .iter()
            .map(|&ri| {
                shape
                    .ranks
                    .iter()
                    .map(|&rj| vec![vec![0u64; rj]; ri])
                    .collect()
            })
            .collect();
        EndoMatrix {
            shape: shape.clone(),
            blocks,
        }
    }

    pub fn identity(shape: &AbelianPGroupShape) -> Self {
        let mut m = Self::zero(shape);
        for i in 0..shape.ranks.len() {
            for d in 0..shape.ranks[i] {
                m.blocks[i][i][d][d] = 1;
            }
        }
        m
    }

    fn col_mod(&self, j: usize) -> u64 {
        self.shape.p.pow(self.shape.exps[j])
    }

    /// Checks the divisibility invariant.
    pub fn check_divisibility(&self) -> Result<()> {
        let s = &self.shape;
        for i in 0..s.ranks.len() {
            for j in 0..s.ranks.len() {
                if s.exps[i] < s.exps[j] {
                    let need = s.p.pow(s.exps[j] - s.exps[i]);
                    for (row, r) in self.blocks[i][j].iter().enumerate() {
                        for (col, &v) in r.iter().enumerate() {
                            if v % need != 0 {
                                return Err(Error::MatrixInvariant { i, j, row, col });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies the matrix to a row coordinate vector.
    pub fn apply(&self, coords: &[u64]) -> Vec<u64> {
        let s = &self.shape;
        let total = s.total_rank();
        let mut out = vec![0u64; total];
        let mut col_base = 0usize;
        for j in 0..s.ranks.len() {
            let m = self.col_mod(j);
            for col in 0..s.ranks[j] {
                let mut acc: u64 = 0;
                let mut row_base = 0usize;
                for i in 0..s.ranks.len() {
                    for row in 0..s.ranks[i] {
                        acc = (acc + coords[row_base + row] % m * (self.blocks[i][j][row][col] % m)) % m;
                    }
                    row_base += s.ranks[i];
                }
                out[col_base + col] = acc;
            }
            col_base += s.ranks[j];
        }
        out
    }

    pub fn add(&self, other: &EndoMatrix) -> EndoMatrix {
        self.zip_entries(other, |a, b, m| (a + b) % m)
    }

    pub fn sub(&self, other: &EndoMatrix) -> EndoMatrix {
        self.zip_entries(other, |a, b, m| (a + m - b % m) % m)
    }

    pub fn neg(&self) -> EndoMatrix {
        let z = EndoMatrix::zero(&self.shape);
        z.sub(self)
    }

    fn zip_entries(
        &self,
        other: &EndoMatrix,
        f: impl Fn(u64, u64, u64) -> u64,
    ) -> EndoMatrix {
        assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for i in 0..self.shape.ranks.len() {
            for j in 0..self.shape.ranks.len() {
                let m = self.col_mod(j);
                for row in 0..self.shape.ranks[i] {
                    for col in 0..self.shape.ranks[j] {
                        out.blocks[i][j][row][col] =
                            f(self.blocks[i][j][row][col], other.blocks[i][j][row][col], m);
                    }
                }
            }
        }
        out
    }

    /// Left-to-right composition: the endomorphism `self` followed by
    /// `other`, i.e. the matrix product `self · other` on row vectors.
    pub fn compose(&self, other: &EndoMatrix) -> EndoMatrix {
        assert_eq!(self.shape, other.shape);
        let s = &self.shape;
        let mut out = EndoMatrix::zero(s);
        for i in 0..s.ranks.len() {
            for j in 0..s.ranks.len() {
                let m = self.col_mod(j);
                for row in 0..s.ranks[i] {
                    for col in 0..s.ranks[j] {
                        let mut acc = 0u64;
                        for k in 0..s.ranks.len() {
                            for mid in 0..s.ranks[k] {
                                acc = (acc
                                    + self.blocks[i][k][row][mid] % m
                                        * (other.blocks[k][j][mid][col] % m))
                                    % m;
                            }
                        }
                        out.blocks[i][j][row][col] = acc;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .all(|&v| v == 0)
    }

    /// Inverse in the endomorphism-matrix ring, when it exists: the diagonal
    /// blocks are inverted mod p and the lift is completed by Newton
    /// iteration `X ← X(2I − AX)`, whose residual squares each step.
    pub fn invert(&self) -> Option<EndoMatrix> {
        let s = &self.shape;
        let p = s.p;
        // seed: blockwise mod-p inverses of the diagonal
        let mut seed = EndoMatrix::zero(s);
        for i in 0..s.ranks.len() {
            let block: Vec<Vec<u64>> = self.blocks[i][i]
                .iter()
                .map(|r| r.iter().map(|&v| v % p).collect())
                .collect();
            let inv = invert_mod_p(&block, p)?;
            seed.blocks[i][i] = inv;
        }
        let identity = EndoMatrix::identity(s);
        let mut x = seed;
        for _ in 0..64 {
            let residual = identity.sub(&self.compose(&x));
            if residual.is_zero() {
                return Some(x);
            }
            // X ← X + X·R = X(2I − AX)
            x = x.add(&x.compose(&residual));
        }
        None
    }
}

/// Gaussian inverse over F_p; `None` when singular.
fn invert_mod_p(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] % p != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = mod_inverse(a[col][col], p);
        for j in 0..n {
            a[col][j] = a[col][j] * pinv % p;
            inv[col][j] = inv[col][j] * pinv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                    inv[r][j] = (inv[r][j] + (p - f) * inv[col][j]) % p;
                }
            }
        }
    }
    Some(inv)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Determinant over F_p.
fn det_mod_p(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| a[r][col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != col {
            a.swap(col, pivot);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let pinv = mod_inverse(a[col][col], p);
        for r in col + 1..n {
            if a[r][col] != 0 {
                let f = a[r][col] * pinv % p;
                for j in col..n {
                    a[r][j] = (a[r][j] + (p - f) * a[col][j]) % p;
                }
            }
        }
    }
    det
}

/// Reads the matrix of an endomorphism off the basis.
pub fn to_matrix(alpha: &Endo, iso: &HomocyclicIso) -> Result<EndoMatrix> {
    if !alpha.group().same_group(iso.group()) {
        return Err(Error::GroupMismatch);
    }
    let s = iso.shape();
    let mut m = EndoMatrix::zero(s);
    let comp_of: Vec<usize> = (0..s.total_rank()).map(|u| s.component_of(u)).collect();
    let first_index: Vec<usize> = {
        let mut firsts = Vec::new();
        let mut acc = 0;
        for &r in &s.ranks {
            firsts.push(acc);
            acc += r;
        }
        firsts
    };
    for (u, &b) in iso.basis().iter().enumerate() {
        let coords = iso.coords(alpha.apply(b));
        let i = comp_of[u];
        let row = u - first_index[i];
        for (v, &c) in coords.iter().enumerate() {
            let j = comp_of[v];
            let col = v - first_index[j];
            m.blocks[i][j][row][col] = c;
        }
    }
    debug_assert!(m.check_divisibility().is_ok());
    Ok(m)
}

/// Assembles the endomorphism of a matrix after validating the divisibility
/// invariant; the result always certifies.
pub fn from_matrix(m: &EndoMatrix, iso: &HomocyclicIso) -> Result<Endo> {
    if m.shape != *iso.shape() {
        return Err(Error::GroupMismatch);
    }
    m.check_divisibility()?;
    let map = assemble_unchecked(m, iso);
    as_endo(&map)
}

/// Assembles the map of a matrix without checking the invariant; the result
/// need not be a homomorphism.
pub fn assemble_unchecked(m: &EndoMatrix, iso: &HomocyclicIso) -> GMap {
    let g = iso.group();
    let images: Vec<usize> = (0..g.order())
        .map(|x| iso.element_of(&m.apply(iso.coords(x))))
        .collect();
    GMap::new(g, images).expect("assembled images are valid elements")
}

/// The diagonal block mod p: the action of `α_{ii}` on `Ω₁(H_i)`, read off
/// on `H_i/H_i^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaComponent {
    pub index: usize,
    pub matrix: Vec<Vec<u64>>,
}

pub fn beta_components(m: &EndoMatrix) -> Vec<BetaComponent> {
    let p = m.shape.p;
    (0..m.shape.ranks.len())
        .map(|i| BetaComponent {
            index: i,
            matrix: m.blocks[i][i]
                .iter()
                .map(|r| r.iter().map(|&v| v % p).collect())
            .collect(),
        })
        .collect()
}

/// Fixed-point-freeness criterion: every `β_i − I` invertible mod p.
pub fn is_fpf_abelian(m: &EndoMatrix) -> bool {
    let p = m.shape.p;
    beta_components(m).iter().all(|beta| {
        let n = beta.matrix.len();
        let shifted: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (beta.matrix[r][c] + p - u64::from(r == c)) % p)
                    .collect()
            })
            .collect();
        det_mod_p(&shifted, p) != 0
    })
}

/// A nontrivial order-p fixed vector of the matrix, in full coordinates, or
/// `None` exactly when the matrix is fpf. Built by the triangular solve:
/// seed the largest component whose β has a nontrivial fixed vector, then
/// push forward through `u_j^{1−β_j} = rhs` using invertibility of `I − β_j`.
pub fn fixed_point_witness(m: &EndoMatrix) -> Option<Vec<u64>> {
    let s = &m.shape;
    let p = s.p;
    let betas = beta_components(m);
    // left fixed vectors: w(β − I) = 0  ⇔  (βᵀ − I)wᵀ = 0
    let k = (0..betas.len()).rev().find(|&i| {
        let n = betas[i].matrix.len();
        let shifted: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (betas[i].matrix[r][c] + p - u64::from(r == c)) % p)
                    .collect()
            })
            .collect();
        det_mod_p(&shifted, p) == 0
    })?;

    let ncomp = betas.len();
    let mut w: Vec<Vec<u64>> = vec![Vec::new(); ncomp];
    w[k] = left_kernel_vector(&betas[k].matrix, p).expect("singular β_k − I has a kernel vector");
    for j in k + 1..ncomp {
        // rhs = Σ_{i<j} w_i · A_{ij} with A_{ij} the Ω₁-level action of
        // block (i, j), i.e. block/p^{e_j − e_i} mod p
        let rj = s.ranks[j];
        let mut rhs = vec![0u64; rj];
        for i in k..j {
            if w[i].is_empty() {
                continue;
            }
            let div = p.pow(s.exps[j] - s.exps[i]);
            for col in 0..rj {
                let mut acc = rhs[col];
                for (row, &wi) in w[i].iter().enumerate() {
                    let a = m.blocks[i][j][row][col] / div % p;
                    acc = (acc + wi * a) % p;
                }
                rhs[col] = acc;
            }
        }
        // w_j (I − β_j) = rhs
        let one_minus: Vec<Vec<u64>> = (0..rj)
            .map(|r| {
                (0..rj)
                    .map(|c| (u64::from(r == c) + p - betas[j].matrix[r][c] % p) % p)
                    .collect()
            })
            .collect();
        let inv = invert_mod_p(&one_minus, p).expect("I − β_j is invertible for j > k");
        let mut wj = vec![0u64; rj];
        for col in 0..rj {
            let mut acc = 0u64;
            for mid in 0..rj {
                acc = (acc + rhs[mid] * inv[mid][col]) % p;
            }
            wj[col] = acc;
        }
        w[j] = wj;
    }

    // assemble full coordinates: component j contributes w_j · p^{e_j − 1}
    let mut out = vec![0u64; s.total_rank()];
    let mut base = 0usize;
    for j in 0..ncomp {
        if j >= k {
            let scale = p.pow(s.exps[j] - 1);
            for (t, &v) in w[j].iter().enumerate() {
                out[base + t] = v % p * scale;
            }
        }
        base += s.ranks[j];
    }
    debug_assert_ne!(out.iter().all(|&v| v == 0), true);
    debug_assert_eq!(m.apply(&out), out);
    Some(out)
}

/// Deterministic nonzero left-kernel vector of `β − I` over F_p.
fn left_kernel_vector(beta: &[Vec<u64>], p: u64) -> Option<Vec<u64>> {
    let n = beta.len();
    // right kernel of the transpose of (β − I)
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (beta[c][r] + p - u64::from(r == c)) % p)
                .collect()
        })
        .collect();
    // row reduce
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        if let Some(pr) = (row..n).find(|&r| a[r][col] != 0) {
            a.swap(row, pr);
            let pinv = mod_inverse(a[row][col], p);
            for j in 0..n {
                a[row][j] = a[row][j] * pinv % p;
            }
            for r in 0..n {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in 0..n {
                        a[r][j] = (a[r][j] + (p - f) * a[row][j]) % p;
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row;
    let free_col = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![0u64; n];
    v[free_col] = 1;
    for (r, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = (p - a[r][free_col]) % p;
    }
    Some(v)
}

/// Matrix-level quasi-inverse `ψ = −(I − M)⁻¹ + I`, when `I − M` is
/// invertible (exactly the fpf case).
pub fn matrix_quasi_inverse(m: &EndoMatrix) -> Option<EndoMatrix> {
    let identity = EndoMatrix::identity(&m.shape);
    let inv = identity.sub(m).invert()?;
    Some(identity.sub(&inv))
}
