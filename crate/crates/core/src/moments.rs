//! Gaussian moments and the connection problem between the moment
//! polynomials `E[Yⁿ](x)` (with `Y ~ N(x, 1)`) and the Hermite polynomials.
//!
//! The coefficients that express `He_n` in moment polynomials are the same
//! integers that express `H_n` in powers of `2x`; both directions are
//! available as exact upper-triangular matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::factorial_int;
use crate::error::{Error, Result};
use crate::hermite::{hermite_explicit, PolyFamily};
use crate::quadrature::{integrate_weighted, QuadratureRule};
use crate::scalar::{powu, Real, Scalar};
use crate::{ExactPolynomial, Rational};

/// `n! / (2^j (n−2j)! j!)`: the number of ways to pick `j` disjoint pairs
/// from `n` items.
fn pairing_count(n: usize, j: usize) -> BigInt {
    factorial_int(n) / (factorial_int(n - 2 * j) * factorial_int(j) * (BigInt::one() << j))
}

fn check_sigma<T: Scalar>(sigma: &T) -> Result<()> {
    if *sigma > T::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveSigma(format!("{sigma:?}")))
    }
}

/// `E[Ŷⁿ]` for `Ŷ ~ N(μ, σ²)`, as `Σ_j n!/(2^j (n−2j)! j!) μ^{n−2j} σ^{2j}`.
///
/// Works over any [`Scalar`]; with rationals the result is exact.
pub fn gaussian_raw_moment<T: Scalar>(n: usize, mu: &T, sigma: &T) -> Result<T> {
    check_sigma(sigma)?;
    let sigma2 = sigma.clone() * sigma.clone();
    let mut acc = T::zero();
    for j in 0..=n / 2 {
        let term = T::from_bigint(&pairing_count(n, j)) * powu(mu, n - 2 * j) * powu(&sigma2, j);
        acc = acc + term;
    }
    Ok(acc)
}

/// The same moment read as `(−iσ)ⁿ He_n(iμ/σ)`.
///
/// `He_n` has the parity of `n`, so for every surviving coefficient `c_k`
/// the power `(−i)ⁿ iᵏ = (−1)ⁿ (−1)^{(n+k)/2}` is real. The products are
/// formed on the coefficients directly and no complex number is built.
pub fn gaussian_raw_moment_complex_form<T: Scalar>(n: usize, mu: &T, sigma: &T) -> Result<T> {
    check_sigma(sigma)?;
    let he = hermite_explicit(n, PolyFamily::ProbabilistHe);
    let mut acc = T::zero();
    for (k, c) in he.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        debug_assert_eq!((n + k) % 2, 0);
        let negative = (n + (n + k) / 2) % 2 == 1;
        let signed = if negative { -c.clone() } else { c.clone() };
        // He coefficients are integers
        let term = T::from_bigint(&signed.to_integer()) * powu(mu, k) * powu(sigma, n - k);
        acc = acc + term;
    }
    Ok(acc)
}

/// `x ↦ E[Yⁿ]` for `Y ~ N(x, 1)`; integer coefficients.
pub fn gauss_moment_polynomial(n: usize) -> ExactPolynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in 0..=n / 2 {
        coeffs[n - 2 * j] = Rational::from_integer(pairing_count(n, j));
    }
    ExactPolynomial::from_coeffs(coeffs)
}

/// `c_j` in `He_n = Σ_j c_j E[Y^{n−2j}]`: `c_j = n!(−1)ʲ / ((n−2j)! j!)`.
pub fn hermite_in_moments(n: usize) -> Vec<BigInt> {
    (0..=n / 2)
        .map(|j| {
            let c = factorial_int(n) / (factorial_int(n - 2 * j) * factorial_int(j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// `d_j` in `E[Yⁿ] = Σ_j d_j He_{n−2j}`: `d_j = n! / ((n−2j)! j!)`.
pub fn moments_in_hermite(n: usize) -> Vec<BigInt> {
    hermite_in_moments(n).into_iter().map(|c| c.abs()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    /// `xᵏ`
    Monomial,
    /// `(2x)ᵏ`
    TwoXMonomial,
    He,
    H,
    /// `E[Yᵏ](x)` for `Y ~ N(x, 1)`
    GaussMoment,
}

impl BasisTag {
    pub const ALL: [BasisTag; 5] =
        [BasisTag::Monomial, BasisTag::TwoXMonomial, BasisTag::He, BasisTag::H, BasisTag::GaussMoment];

    pub fn name(self) -> &'static str {
        match self {
            BasisTag::Monomial => "monomial",
            BasisTag::TwoXMonomial => "two_x_monomial",
            BasisTag::He => "he",
            BasisTag::H => "h",
            BasisTag::GaussMoment => "gauss_moment",
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BasisTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        BasisTag::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown basis '{s}'")))
    }
}

/// Basis element `k` as an exact polynomial in `x`.
pub fn basis_polynomial(tag: BasisTag, k: usize) -> ExactPolynomial {
    match tag {
        BasisTag::Monomial => ExactPolynomial::monomial(Rational::one(), k),
        BasisTag::TwoXMonomial => {
            ExactPolynomial::monomial(Rational::from_integer(BigInt::one() << k), k)
        }
        BasisTag::He => hermite_explicit(k, PolyFamily::ProbabilistHe),
        BasisTag::H => hermite_explicit(k, PolyFamily::PhysicistH),
        BasisTag::GaussMoment => gauss_moment_polynomial(k),
    }
}

/// An exact `(n+1)×(n+1)` matrix whose column `k` lists the coordinates of
/// basis element `k` of `from` in the basis `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeOfBasisMatrix {
    from: BasisTag,
    to: BasisTag,
    entries: Vec<Vec<Rational>>,
}

impl ChangeOfBasisMatrix {
    pub fn from_basis(&self) -> BasisTag {
        self.from
    }

    pub fn to_basis(&self) -> BasisTag {
        self.to
    }

    /// Largest degree covered (`n` for an `(n+1)×(n+1)` matrix).
    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        self.entries.iter().map(|row| row[k].clone()).collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row[..i].iter().all(Zero::is_zero))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    /// `self · inner`, mapping `inner.from` straight to `self.to`.
    pub fn compose(&self, inner: &ChangeOfBasisMatrix) -> Result<ChangeOfBasisMatrix> {
        if inner.to != self.from {
            return Err(Error::BasisMismatch {
                inner_to: inner.to.to_string(),
                outer_from: self.from.to_string(),
            });
        }
        if inner.degree() != self.degree() {
            return Err(Error::InvalidArgument(format!(
                "cannot compose matrices of degree {} and {}",
                self.degree(),
                inner.degree()
            )));
        }
        let size = self.entries.len();
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        (i..=j).fold(Rational::zero(), |acc, k| {
                            acc + &self.entries[i][k] * &inner.entries[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(ChangeOfBasisMatrix { from: inner.from, to: self.to, entries })
    }

    /// Converts coordinates in `from` to coordinates in `to`. Shorter inputs
    /// are padded with zeros.
    pub fn apply(&self, coords: &[Rational]) -> Result<Vec<Rational>> {
        let size = self.entries.len();
        if coords.len() > size {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates given to a degree-{} matrix",
                coords.len(),
                self.degree()
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter().zip(coords).fold(Rational::zero(), |acc, (m, c)| acc + m * c)
            })
            .collect())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    from: BasisTag,
    to: BasisTag,
    entries: Vec<Vec<String>>,
}

impl Serialize for ChangeOfBasisMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            from: self.from,
            to: self.to,
            entries: self.entries.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChangeOfBasisMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let size = repr.entries.len();
        if size == 0 || repr.entries.iter().any(|r| r.len() != size) {
            return Err(D::Error::custom("matrix must be square and non-empty"));
        }
        let entries = repr
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigRational>().map_err(|e| D::Error::custom(format!("'{s}': {e}"))))
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(ChangeOfBasisMatrix { from: repr.from, to: repr.to, entries })
    }
}

/// Exact connection matrix for the pairs `H ↔ (2x)ᵏ`, `He ↔ E[Yᵏ]` and
/// `He ↔ xᵏ`. Other pairs are rejected; chain matrices with
/// [`ChangeOfBasisMatrix::compose`] instead.
pub fn change_of_basis(n: usize, from: BasisTag, to: BasisTag) -> Result<ChangeOfBasisMatrix> {
    use BasisTag::*;
    // (alternating sign, extra 2^j in the denominator)
    let (alternating, halve) = match (from, to) {
        (H, TwoXMonomial) | (He, GaussMoment) => (true, false),
        (TwoXMonomial, H) | (GaussMoment, He) => (false, false),
        (He, Monomial) => (true, true),
        (Monomial, He) => (false, true),
        _ => {
            return Err(Error::UnsupportedBasisPair { from: from.to_string(), to: to.to_string() });
        }
    };
    let mut entries = vec![vec![Rational::zero(); n + 1]; n + 1];
    for k in 0..=n {
        for j in 0..=k / 2 {
            let i = k - 2 * j;
            let mut denom = factorial_int(i) * factorial_int(j);
            if halve {
                denom <<= j;
            }
            let mut v = Rational::new(factorial_int(k), denom);
            if alternating && j % 2 == 1 {
                v = -v;
            }
            entries[i][k] = v;
        }
    }
    Ok(ChangeOfBasisMatrix { from, to, entries })
}

/// `E[He_n(Y)]` for `Y ~ N(x, 1)`, which is `xⁿ`.
pub fn expected_hermite_of_gaussian<T: Real>(n: usize, x: T) -> T {
    x.powi(n as i32)
}

/// `σⁿ He_n(x/σ)`: the polynomial whose Gaussian smoothing at scale `σ`
/// is `xⁿ`. Evaluated by `q_{k+1} = x q_k − kσ² q_{k−1}`, which avoids the
/// division by `σ`.
pub fn weierstrass_deconvolution_identity<T: Real>(n: usize, sigma: T, x: T) -> Result<T> {
    if !(sigma > T::zero() && sigma.is_finite()) {
        return Err(Error::NonPositiveSigma(sigma.to_string()));
    }
    let s2 = sigma * sigma;
    let (mut prev, mut cur) = (T::zero(), T::one());
    for k in 0..n {
        let next = x * cur - T::lit(k as f64) * s2 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `(φ_σ ∗ f)(x) = ∫ φ_σ(y − x) f(y) dy`, by the substitution `y = x + σt`
/// and the given Gauss-Hermite rule.
pub fn gaussian_convolution<T: Real, F: Fn(T) -> T>(
    f: F,
    x: T,
    sigma: T,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    if !(sigma > T::zero() && sigma.is_finite()) {
        return Err(Error::NonPositiveSigma(sigma.to_string()));
    }
    Ok(integrate_weighted(|t| f(x + sigma * t), rule)? / T::sqrt_two_pi())
}
