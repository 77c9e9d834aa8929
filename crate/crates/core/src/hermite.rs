//! Chebyshev-Hermite polynomials `He_n`, Hermite polynomials `H_n` and the
//! associated Hermite functions.
//!
//! Exact constructions return [`ExactPolynomial`]s and are cross-checked
//! against one another: the three-term recurrence, the explicit sum, the
//! Gram-Schmidt process on monomials and the Rodrigues formula. Floating
//! evaluation always runs the recurrence on values, never on coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{factorial_int, standard_normal_moment};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::{ExactPolynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyFamily {
    /// `He_n`, monic, orthogonal under `e^{-x²/2}`.
    ProbabilistHe,
    /// `H_n = 2^{n/2} He_n(√2 x)`, orthogonal under `e^{-x²}`.
    PhysicistH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermiteFunctionKind {
    /// `he_n(x) = e^{-x²/4} He_n(x)`.
    ChebyshevHermite,
    /// `h_n(x) = e^{-x²/2} H_n(x)`.
    Hermite,
}

/// Builds `He_n` by `He_{n+1} = x·He_n − n·He_{n−1}`; `H_n` is then obtained
/// through the coefficient map of `H_n(x) = 2^{n/2} He_n(√2 x)`.
pub fn hermite_recurrence(n: usize, family: PolyFamily) -> ExactPolynomial {
    let he = probabilist_recurrence(n);
    match family {
        PolyFamily::ProbabilistHe => he,
        PolyFamily::PhysicistH => physicist_from_probabilist(&he, n),
    }
}

fn probabilist_recurrence(n: usize) -> ExactPolynomial {
    let x = ExactPolynomial::x();
    let mut prev = ExactPolynomial::zero();
    let mut cur = ExactPolynomial::one();
    for k in 0..n {
        let next = &(&x * &cur) - &prev.scale(&Rational::from_int(k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Coefficient `c_k` of `He_n` becomes `2^{(n+k)/2} c_k`; `n + k` is even
/// wherever `c_k ≠ 0`.
pub fn physicist_from_probabilist(he: &ExactPolynomial, n: usize) -> ExactPolynomial {
    let coeffs = he
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.is_zero() {
                Rational::zero()
            } else {
                debug_assert_eq!((n + k) % 2, 0);
                c * Rational::from_integer(BigInt::one() << ((n + k) / 2))
            }
        })
        .collect();
    ExactPolynomial::from_coeffs(coeffs)
}

/// Term-by-term closed sum: `He_n = n! Σ_j (−1)^j x^{n−2j} / (2^j (n−2j)! j!)`
/// and `H_n = n! Σ_j (−1)^j (2x)^{n−2j} / ((n−2j)! j!)`.
pub fn hermite_explicit(n: usize, family: PolyFamily) -> ExactPolynomial {
    let n_fact = factorial_int(n);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in 0..=n / 2 {
        let k = n - 2 * j;
        let denom = factorial_int(k) * factorial_int(j);
        let numer = match family {
            PolyFamily::ProbabilistHe => &n_fact / (denom * (BigInt::one() << j)),
            PolyFamily::PhysicistH => (&n_fact << k) / denom,
        };
        let signed = if j % 2 == 0 { numer } else { -numer };
        coeffs[k] = Rational::from_integer(signed);
    }
    ExactPolynomial::from_coeffs(coeffs)
}

/// Builds `H_n` from `H_{n+1} = 2x·H_n − 2n·H_{n−1}`. Only used as a
/// consistency check of the explicit sum.
pub fn physicist_recurrence(n: usize) -> ExactPolynomial {
    let two_x = ExactPolynomial::monomial(Rational::from_int(2), 1);
    let mut prev = ExactPolynomial::zero();
    let mut cur = ExactPolynomial::one();
    for k in 0..n {
        let next = &(&two_x * &cur) - &prev.scale(&Rational::from_int(2 * k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Rodrigues formula `He_n = (−1)^n e^{x²/2} Dⁿ e^{−x²/2}`, using
/// `D[q·e^{−x²/2}] = (q′ − x·q)·e^{−x²/2}`.
pub fn hermite_rodrigues(n: usize) -> ExactPolynomial {
    let x = ExactPolynomial::x();
    let mut q = ExactPolynomial::one();
    for _ in 0..n {
        q = &q.derivative() - &(&x * &q);
    }
    if n % 2 == 1 {
        -&q
    } else {
        q
    }
}

/// `∫ a(x) b(x) e^{−x²/2} dx / √(2π)`, exactly, from the Gaussian moments.
pub fn gaussian_inner_product(a: &ExactPolynomial, b: &ExactPolynomial) -> Rational {
    let mut acc = Rational::zero();
    for (i, ai) in a.coeffs().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            if bj.is_zero() || (i + j) % 2 == 1 {
                continue;
            }
            let moment = Rational::from_integer(BigInt::from(standard_normal_moment(i + j)));
            acc += ai * bj * moment;
        }
    }
    acc
}

/// Orthogonalizes `1, x, …, xⁿ` against the Gaussian weight in exact
/// arithmetic. Returns the monic sequence `[p_0, …, p_n]`.
pub fn gram_schmidt_construct(n: usize) -> Vec<ExactPolynomial> {
    let mut basis: Vec<ExactPolynomial> = Vec::with_capacity(n + 1);
    let mut norms: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mono = ExactPolynomial::monomial(Rational::one(), k);
        let mut p = mono.clone();
        for (q, norm) in basis.iter().zip(&norms) {
            let proj = gaussian_inner_product(&mono, q) / norm;
            if !proj.is_zero() {
                p = &p - &q.scale(&proj);
            }
        }
        let lead = p.leading_coeff().clone();
        let p = p.scale(&lead.recip());
        norms.push(gaussian_inner_product(&p, &p));
        basis.push(p);
    }
    basis
}

/// `He′_n = n·He_{n−1}`; the zero polynomial for `n = 0`.
pub fn hermite_derivative(n: usize) -> ExactPolynomial {
    if n == 0 {
        return ExactPolynomial::zero();
    }
    hermite_recurrence(n - 1, PolyFamily::ProbabilistHe).scale(&Rational::from_int(n as i64))
}

/// Forward recurrence on values. Overflows to ±∞ silently; see [`eval_hermite`].
pub fn hermite_value<T: Real>(n: usize, x: T, family: PolyFamily) -> T {
    let scale = match family {
        PolyFamily::ProbabilistHe => T::one(),
        PolyFamily::PhysicistH => T::lit(2.0),
    };
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 0..n {
        let next = scale * (x * cur - T::lit(k as f64) * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `He_0(x), …, He_n(x)` by forward recurrence.
pub fn hermite_values<T: Real>(n: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n >= 1 {
        out.push(x);
    }
    for k in 1..n {
        out.push(x * out[k] - T::lit(k as f64) * out[k - 1]);
    }
    out
}

/// Evaluates `He_n(x)` or `H_n(x)`; reports overflow instead of returning ±∞.
pub fn eval_hermite<T: Real>(n: usize, x: T, family: PolyFamily) -> Result<T> {
    let v = hermite_value(n, x, family);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { degree: n })
    }
}

/// Three-term recurrence whose pair `(prev, cur)` carries a common factor
/// `e^{log_scale}`, rescaled by powers of two to stay in range.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledPair<T> {
    pub prev: T,
    pub cur: T,
    pub log_scale: T,
}

const RESCALE_EXP: i32 = 60;

impl<T: Real> ScaledPair<T> {
    pub fn new(log_scale: T) -> Self {
        ScaledPair { prev: T::zero(), cur: T::one(), log_scale }
    }

    /// Pushes `next`; returns the factor applied to the stored pair (1 if none).
    pub fn push(&mut self, next: T) -> T {
        self.prev = self.cur;
        self.cur = next;
        let big = T::lit(2.0).powi(RESCALE_EXP);
        if self.cur.abs() > big {
            let f = big.recip();
            self.prev = self.prev * f;
            self.cur = self.cur * f;
            self.log_scale = self.log_scale + T::lit(RESCALE_EXP as f64) * T::LN_2();
            f
        } else {
            T::one()
        }
    }

    pub fn resolve(mantissa: T, log_scale: T) -> T {
        if mantissa.is_zero() {
            return T::zero();
        }
        let magnitude = (mantissa.abs().ln() + log_scale).exp();
        if mantissa < T::zero() {
            -magnitude
        } else {
            magnitude
        }
    }

    pub fn value(&self) -> T {
        Self::resolve(self.cur, self.log_scale)
    }
}

/// Hermite functions by the recurrence on weighted values:
/// `he_0 = e^{−x²/4}`, `he_{k+1} = x·he_k − k·he_{k−1}` (and the `H`
/// analogue with `h_0 = e^{−x²/2}`). The Gaussian factor is carried in
/// log form, so large `n` and `|x|` neither overflow nor flush to zero early.
pub fn eval_hermite_function<T: Real>(n: usize, x: T, kind: HermiteFunctionKind) -> T {
    let (log_weight, scale) = match kind {
        HermiteFunctionKind::ChebyshevHermite => (-x * x / T::lit(4.0), T::one()),
        HermiteFunctionKind::Hermite => (-x * x / T::lit(2.0), T::lit(2.0)),
    };
    let mut pair = ScaledPair::new(log_weight);
    for k in 0..n {
        let next = scale * (x * pair.cur - T::lit(k as f64) * pair.prev);
        pair.push(next);
    }
    pair.value()
}

/// Returns `(Σ_{n≤N} He_n(x) tⁿ/n!, e^{xt − t²/2})`.
pub fn generating_function_check<T: Real>(x: T, t: T, order: usize) -> (T, T) {
    // term_k = He_k(x) t^k / k!
    let mut prev = T::zero();
    let mut cur = T::one();
    let mut sum = T::one();
    for k in 0..order {
        let next = (t * x * cur - t * t * prev) / T::lit((k + 1) as f64);
        prev = cur;
        cur = next;
        sum = sum + cur;
    }
    (sum, (x * t - t * t / T::lit(2.0)).exp())
}

/// `He″_n − x·He′_n + n·He_n` formed exactly, then evaluated at `x`.
pub fn hermite_ode_residual<T: Real>(n: usize, x: T) -> T {
    let he = hermite_recurrence(n, PolyFamily::ProbabilistHe);
    let d1 = he.derivative();
    let d2 = d1.derivative();
    let residual = &(&d2 - &(&ExactPolynomial::x() * &d1)) + &he.scale(&Rational::from_int(n as i64));
    T::lit(residual.eval_f64(x.to_f64_lossy()))
}
