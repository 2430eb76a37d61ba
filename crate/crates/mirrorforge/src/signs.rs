//! The one place where sign conventions are resolved.
//!
//! Degrees are ℤ/2 values stored as `u8` in `{0, 1}`. Category elements
//! enter every sign through their shifted degree `|x|' = |x| + 1`. Moving a
//! symbol of degree `p` past one of degree `q` costs `(-1)^{pq}`, where
//! operations carry their own degree: `m`, `μ` and `b*` have degree 1, a
//! premorphism or cochain has the degree of the multilinear map it is.
//!
//! Conventions fixed here and used by every module:
//!
//! * Module elements carry a *module degree*. For a diagonal bimodule, and
//!   for anything base-changed from one, the module degree of `x` is its
//!   shifted degree `|x|'`; with this choice the bimodule relation of a
//!   diagonal bimodule is literally the A∞-relation.
//! * `δF = μ'∘F̂ − (-1)^{|F|} F∘μ̂` (graded commutator).
//! * A Hochschild cochain `φ` is a map `C[1]^{⊗k} → M` of degree `h`;
//!   `b*φ = μ∘φ̂ − (-1)^h φ∘m̂`. Its cohomological degree is `h + 1`, so
//!   length-zero cochains `r·id` (with `h = 1`) sit in `HH⁰`.
//! * `R¹(φ)` counts a module element with its degree in the underlying
//!   category (module degree + 1) when `φ` moves past it.
//! * Curved Clifford products: `m₂(x, y) = (-1)^{|x|·|y|'} x·y`.
//! * Matrix factorization products: `m₂(Φ, Ψ) = (-1)^{|Φ|} Φ∘Ψ`.

/// Shifted degree `|x|' = |x| + 1`.
pub fn shift(deg: u8) -> u8 {
    (deg + 1) & 1
}

/// Koszul sign of moving degree `p` past degree `q`: true means negate.
pub fn koszul(p: u8, q: u8) -> bool {
    p & q & 1 == 1
}

/// Parity of a sum of degrees.
pub fn parity<I: IntoIterator<Item = u8>>(degs: I) -> u8 {
    degs.into_iter().fold(0, |a, d| a ^ (d & 1))
}

pub fn is_odd(p: u8) -> bool {
    p & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(shift(0), 1);
        assert_eq!(shift(1), 0);
        assert!(koszul(1, 1));
        assert!(!koszul(1, 0));
        assert_eq!(parity([1, 1, 1]), 1);
    }
}
