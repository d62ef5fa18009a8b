//! Closed-form proximity and counting bounds.

use num_bigint::BigInt;
use num_traits::{One, Pow};

/// m·(2m+1)^m·Δ: l1 distance from an LP vertex optimum to some integer optimum.
pub fn proximity_bound(m: usize, delta: &BigInt) -> BigInt {
    BigInt::from(m) * BigInt::from(2 * m + 1).pow(m as u32) * delta
}

/// m·(2m·Δ₁+1)^m, the same bound in terms of the largest entry.
pub fn proximity_bound_inf(m: usize, delta1: &BigInt) -> BigInt {
    let base = BigInt::from(2 * m) * delta1 + BigInt::one();
    BigInt::from(m) * base.pow(m as u32)
}

/// 2^m·⌈1+γ⌉^m·Δ: how many integer points `{Ax : ‖x‖₁ <= γ}` can contain.
///
/// `gamma_ceil` is ⌈γ⌉, so ⌈1+γ⌉ = 1 + gamma_ceil.
pub fn counting_bound(m: usize, gamma_ceil: u64, delta: &BigInt) -> BigInt {
    BigInt::from(2u32).pow(m as u32) * BigInt::from(gamma_ceil + 1).pow(m as u32) * delta
}
