use num_bigint::{BigInt, BigUint};
use num_traits::One;

pub(crate) fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub(crate) fn factorial_int(n: usize) -> BigInt {
    BigInt::from(factorial(n))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `(k-1)!!` for even `k`, zero for odd `k`: the k-th moment of N(0,1).
pub(crate) fn standard_normal_moment(k: usize) -> BigUint {
    if k % 2 == 1 {
        return BigUint::default();
    }
    (1..k).step_by(2).fold(BigUint::one(), |acc, f| acc * BigUint::from(f))
}

/// `ln n!` by direct summation; exact enough for n in the low thousands.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
