//! Multivariate Chebyshev-Hermite tensors `He^(n)_{α₁…αₙ}(x)` for `x ∈ ℝ^d`.
//!
//! Entries are stored flat in row-major order: the multi-index
//! `(α₁, …, αₙ)` with `αᵢ ∈ 0..d` maps to `Σ αᵢ d^{n−i}`. Built from
//! `He^(n+1)_{a,β} = x_a He^(n)_β − Σ_k δ_{a,β_k} He^(n−1)_{β∖k}`.

use crate::error::{Error, Result};
use crate::hermite::{hermite_value, PolyFamily};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTensor<T> {
    dim: usize,
    rank: usize,
    values: Vec<T>,
}

/// Number of entries `d^n`, or an error when it does not fit in memory terms.
fn entry_count(dim: usize, rank: usize) -> Result<usize> {
    dim.checked_pow(rank as u32)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| Error::InvalidArgument(format!("rank-{rank} tensor in {dim} dimensions is too large")))
}

impl<T: Real> HermiteTensor<T> {
    /// All tensors `He^(0) … He^(max_rank)` evaluated at `x`.
    pub fn family(x: &[T], max_rank: usize) -> Result<Vec<HermiteTensor<T>>> {
        let dim = x.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("tensor dimension must be positive".into()));
        }
        entry_count(dim, max_rank)?;
        let mut out: Vec<HermiteTensor<T>> = Vec::with_capacity(max_rank + 1);
        out.push(HermiteTensor { dim, rank: 0, values: vec![T::one()] });
        for n in 0..max_rank {
            let cur = &out[n];
            let prev = if n > 0 { Some(&out[n - 1]) } else { None };
            let block = cur.values.len();
            let mut values = Vec::with_capacity(block * dim);
            let mut digits = vec![0usize; n];
            for a in 0..dim {
                for (rest, &v) in cur.values.iter().enumerate() {
                    cur.decode_into(rest, &mut digits);
                    let mut entry = x[a] * v;
                    if let Some(prev) = prev {
                        for k in 0..n {
                            if digits[k] == a {
                                entry = entry - prev.values[prev.encode_skipping(&digits, k)];
                            }
                        }
                    }
                    values.push(entry);
                }
            }
            out.push(HermiteTensor { dim, rank: n + 1, values });
        }
        Ok(out)
    }

    /// `He^(rank)` at `x`.
    pub fn at(x: &[T], rank: usize) -> Result<HermiteTensor<T>> {
        Ok(Self::family(x, rank)?.pop().expect("family is never empty"))
    }

    /// `∏ᵢ He_{nᵢ}(xᵢ)` with `nᵢ` the multiplicity of `i` in `index`.
    pub fn factorized_entry(x: &[T], index: &[usize]) -> T {
        index_counts(x.len(), index)
            .iter()
            .zip(x)
            .map(|(&c, &xi)| hermite_value(c, xi, PolyFamily::ProbabilistHe))
            .fold(T::one(), |acc, v| acc * v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, index: &[usize]) -> T {
        assert_eq!(index.len(), self.rank, "index length must equal the rank");
        self.values[self.encode(index)]
    }

    pub fn encode(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn decode(&self, flat: usize) -> Vec<usize> {
        let mut digits = vec![0; self.rank];
        self.decode_into(flat, &mut digits);
        digits
    }

    fn decode_into(&self, mut flat: usize, digits: &mut [usize]) {
        for slot in digits.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    fn encode_skipping(&self, digits: &[usize], skip: usize) -> usize {
        digits
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .fold(0, |acc, (_, &i)| acc * self.dim + i)
    }

    /// Full contraction `Σ_α a_α b_α` with a tensor of the same shape.
    pub fn contract(&self, coeffs: &[T]) -> T {
        assert_eq!(coeffs.len(), self.values.len(), "shape mismatch in contraction");
        self.values.iter().zip(coeffs).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    /// Maximum deviation between entries whose indices are permutations
    /// of one another.
    pub fn symmetry_defect(&self) -> T {
        symmetry_defect(self.dim, self.rank, &self.values)
    }
}

pub(crate) fn symmetry_defect<T: Real>(dim: usize, rank: usize, values: &[T]) -> T {
    let mut worst = T::zero();
    let mut digits = vec![0usize; rank];
    for (flat, &v) in values.iter().enumerate() {
        let mut f = flat;
        for slot in digits.iter_mut().rev() {
            *slot = f % dim;
            f /= dim;
        }
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        let canonical = sorted.iter().fold(0, |acc, &i| acc * dim + i);
        worst = worst.max((v - values[canonical]).abs());
    }
    worst
}

/// Multiplicity of each coordinate `0..dim` in a multi-index.
pub fn index_counts(dim: usize, index: &[usize]) -> Vec<usize> {
    let mut counts = vec![0; dim];
    for &i in index {
        counts[i] += 1;
    }
    counts
}

/// `∫ e^{−‖x‖²/2} He_α He_β dx / (2π)^{d/2}`: `∏ nᵢ!` when `β` is a
/// permutation of `α`, zero otherwise.
pub fn orthogonality_constant(dim: usize, alpha: &[usize], beta: &[usize]) -> u128 {
    let ca = index_counts(dim, alpha);
    if ca != index_counts(dim, beta) {
        return 0;
    }
    ca.iter().map(|&n| (1..=n as u128).product::<u128>()).product()
}
