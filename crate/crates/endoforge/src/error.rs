use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("enumeration size {size} exceeds the cap {cap}")]
    EnumerationCapExceeded { size: usize, cap: usize },

    #[error("operands live on different groups")]
    GroupMismatch,

    #[error("element index {0} out of range")]
    BadElement(usize),

    #[error("not a homomorphism: f({x}·{y}) ≠ f({x})·f({y})")]
    NotHomomorphism { x: usize, y: usize },

    #[error("map is not fixed point free: {witness} is a nontrivial fixed point")]
    NotFpf { witness: usize },

    #[error("endomorphism is not nilpotent")]
    NotNilpotent,

    #[error("not abelian: elements {x} and {y} do not commute")]
    NotAbelian { x: usize, y: usize },

    #[error("set is not a subgroup: element {witness} missing from closure")]
    NotClosed { witness: usize },

    #[error("subgroup is not normal: {element} conjugated by {conjugator} escapes")]
    NotNormal { element: usize, conjugator: usize },

    #[error("subgroups intersect nontrivially: {witness}")]
    NontrivialIntersection { witness: usize },

    #[error("subgroup product does not cover the group: {witness} has no factorization")]
    ProductNotWhole { witness: usize },

    #[error("subgroup is not invariant: {element} maps to {image} outside it")]
    NotInvariant { element: usize, image: usize },

    #[error("order {order} is not a prime power")]
    NotPGroup { order: usize },

    #[error("not a special p-group: {0}")]
    NotSpecial(String),

    #[error("invalid action: not a homomorphism into Aut(K)")]
    BadAction,

    #[error("matrix violates the divisibility invariant at block ({i},{j}), entry ({row},{col})")]
    MatrixInvariant { i: usize, j: usize, row: usize, col: usize },

    #[error("not a subgroup of Sym(G): {reason}")]
    NotASubgroup { reason: String },

    #[error("gluing conditions fail: {0}")]
    GlueConditions(String),
}

pub type Result<T> = std::result::Result<T, Error>;
