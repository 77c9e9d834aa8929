//! Hermite expansions: densities against the Gaussian weight, Gram-Charlier
//! corrections from standardized moments, Wiener chaos coefficients of
//! functions of Gaussian variables, deconvolution of Gaussian mixtures and a
//! numerical check that Hermite functions diagonalize the Fourier transform.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::ln_factorial;
use crate::error::{Error, Result};
use crate::hermite::{hermite_explicit, hermite_value, hermite_values, PolyFamily, ScaledPair};
use crate::quadrature::{gauss_hermite_rule, integrate_weighted, tensor_cubature, QuadratureRule};
use crate::scalar::{Real, Scalar};
use crate::tensor::{symmetry_defect, HermiteTensor};
use crate::{ExactPolynomial, Rational};

/// Quadrature order used when a caller does not choose one: exact for
/// polynomial integrands up to degree `4N + 23`.
pub fn default_quad_order(truncation: usize) -> usize {
    2 * truncation + 12
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesConvention {
    /// `f(x) = e^{−x²/2} Σ aₙ Heₙ(x)`
    DensityWeighted,
    /// `f(y) = Σ bₙ Heₙ(y)` for a standard normal `Y`
    PlainRv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteSeries<T> {
    pub convention: SeriesConvention,
    pub coeffs: Vec<T>,
}

impl<T: Real> HermiteSeries<T> {
    pub fn new(convention: SeriesConvention, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!("coefficient {i} is not finite")));
        }
        Ok(HermiteSeries { convention, coeffs })
    }

    /// Truncation order `N` (the series has `N + 1` terms).
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, x: T) -> T {
        evaluate_series(self, x)
    }

    /// `|a_N|·√(N!)`, the size of the last term in the orthonormal basis.
    /// A value that refuses to shrink as `N` grows signals divergence.
    pub fn tail_diagnostic(&self) -> T {
        let n = self.truncation();
        let last = self.coeffs[n].abs();
        if last.is_zero() {
            return T::zero();
        }
        (last.ln() + T::lit(0.5 * ln_factorial(n))).exp()
    }
}

/// `e^{−x²/2} Σ aₙHeₙ(x)` or `Σ bₙHeₙ(x)` by convention. The weighted form
/// carries the Gaussian factor in log scale alongside the recurrence, so
/// neither factor overflows on its own.
pub fn evaluate_series<T: Real>(series: &HermiteSeries<T>, x: T) -> T {
    let log_weight = match series.convention {
        SeriesConvention::DensityWeighted => -x * x / T::lit(2.0),
        SeriesConvention::PlainRv => T::zero(),
    };
    let mut pair = ScaledPair::new(log_weight);
    let mut acc = series.coeffs[0];
    for (k, &a) in series.coeffs.iter().enumerate().skip(1) {
        let factor = pair.push(x * pair.cur - T::lit((k - 1) as f64) * pair.prev);
        acc = acc * factor + a * pair.cur;
    }
    ScaledPair::resolve(acc, pair.log_scale)
}

fn check_order(quad_order: usize, min: usize) -> Result<()> {
    if quad_order < min {
        return Err(Error::InvalidArgument(format!("quadrature order {quad_order} is below the minimum {min}")));
    }
    Ok(())
}

/// `aₙ = ∫ Heₙ(x) f(x) dx / (√(2π) n!)` for `n ≤ N`, by whole-line quadrature.
pub fn fourier_hermite_coeffs<T: Real, F: Fn(T) -> T>(
    f: F,
    truncation: usize,
    quad_order: usize,
) -> Result<HermiteSeries<T>> {
    check_order(quad_order, truncation + 2)?;
    let rule = gauss_hermite_rule::<T>(quad_order)?;
    let mut sums = vec![T::zero(); truncation + 1];
    for (i, (&x, &w)) in rule.nodes().iter().zip(rule.whole_line_weights()).enumerate() {
        if !w.is_finite() {
            return Err(Error::RangeOverflow { index: i });
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFiniteIntegrand { index: i });
        }
        for (s, he) in sums.iter_mut().zip(hermite_values(truncation, x)) {
            *s = *s + w * fx * he;
        }
    }
    Ok(HermiteSeries { convention: SeriesConvention::DensityWeighted, coeffs: normalize(sums) })
}

/// Divides entry `n` by `√(2π)·n!`.
fn normalize<T: Real>(sums: Vec<T>) -> Vec<T> {
    let mut fact = T::one();
    sums.into_iter()
        .enumerate()
        .map(|(n, s)| {
            if n > 0 {
                fact = fact * T::lit(n as f64);
            }
            s / (T::sqrt_two_pi() * fact)
        })
        .collect()
}

/// `μ`, `σ` and the standardized central moments `ν₃, ν₄, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardizedMoments<T> {
    mu: T,
    sigma: T,
    nu: Vec<T>,
}

impl<T: Real> StandardizedMoments<T> {
    pub fn new(mu: T, sigma: T, nu_from_3: Vec<T>) -> Result<Self> {
        if !(sigma > T::zero() && sigma.is_finite()) {
            return Err(Error::NonPositiveSigma(sigma.to_string()));
        }
        Ok(StandardizedMoments { mu, sigma, nu: nu_from_3 })
    }

    /// From `[μ, σ, ν₃, ν₄, …]`.
    pub fn from_values(values: &[T]) -> Result<Self> {
        match values {
            [mu, sigma, rest @ ..] => Self::new(*mu, *sigma, rest.to_vec()),
            _ => Err(Error::InvalidArgument("need at least mu and sigma".into())),
        }
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// `ν_k`; `ν₀ = 1`, `ν₁ = 0` and `ν₂ = 1` by standardization.
    pub fn nu(&self, k: usize) -> Option<T> {
        match k {
            0 | 2 => Some(T::one()),
            1 => Some(T::zero()),
            _ => self.nu.get(k - 3).copied(),
        }
    }

    /// Highest moment order available.
    pub fn max_order(&self) -> usize {
        self.nu.len() + 2
    }
}

impl StandardizedMoments<f64> {
    /// One value per line: `μ`, `σ`, `ν₃`, `ν₄`, …; blank lines and `#`
    /// comments are skipped, and a trailing comma on a line is tolerated.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim().trim_end_matches(',').trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 = line.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a number, found '{line}'"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse { line: i + 1, message: "value is not finite".into() });
            }
            values.push(v);
        }
        Self::from_values(&values)
    }
}

/// Density value from a truncated expansion. Truncations can dip below zero;
/// the value is kept as computed and flagged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityValue<T> {
    pub value: T,
    pub negative: bool,
}

impl<T: Real> DensityValue<T> {
    fn new(value: T) -> Self {
        DensityValue { value, negative: value < T::zero() }
    }
}

/// Gram-Charlier coefficients in the standardized variable
/// `z = (x − μ)/σ`, as a density-weighted series:
/// `aₙ = E[Heₙ(Z)] / (√(2π) n!)`, with `E[Zᵏ] = ν_k`.
pub fn gram_charlier_series<T: Real>(m: &StandardizedMoments<T>, order: usize) -> Result<HermiteSeries<T>> {
    if order > m.max_order() {
        return Err(Error::InvalidArgument(format!(
            "order {order} needs moments up to nu_{order}; only nu_{} given",
            m.max_order()
        )));
    }
    let mut sums = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let he = hermite_explicit(n, PolyFamily::ProbabilistHe);
        let mut e = T::zero();
        for (k, c) in he.coeffs().iter().enumerate() {
            if !c.is_zero() {
                e = e + T::lit(c.to_f64_lossy()) * m.nu(k).expect("order checked above");
            }
        }
        sums.push(e);
    }
    Ok(HermiteSeries { convention: SeriesConvention::DensityWeighted, coeffs: normalize(sums) })
}

/// Gram-Charlier density of order `K` at `x`.
///
/// For `K ≤ 4` this is `φ(z)/σ·(1 + ν₃He₃(z)/6 + (ν₄ − 3)He₄(z)/24)`, with
/// the terms above `K` dropped. Larger `K` uses [`gram_charlier_series`].
pub fn gram_charlier_density<T: Real>(m: &StandardizedMoments<T>, order: usize, x: T) -> Result<DensityValue<T>> {
    let z = (x - m.mu) / m.sigma;
    if order > 4 {
        let series = gram_charlier_series(m, order)?;
        return Ok(DensityValue::new(evaluate_series(&series, z) / m.sigma));
    }
    let need = |k: usize| {
        m.nu(k)
            .ok_or_else(|| Error::InvalidArgument(format!("order {order} needs nu_{k}")))
    };
    let mut correction = T::one();
    if order >= 3 {
        correction = correction + need(3)? * hermite_value(3, z, PolyFamily::ProbabilistHe) / T::lit(6.0);
    }
    if order >= 4 {
        correction =
            correction + (need(4)? - T::lit(3.0)) * hermite_value(4, z, PolyFamily::ProbabilistHe) / T::lit(24.0);
    }
    let phi = (-z * z / T::lit(2.0)).exp() / T::sqrt_two_pi();
    Ok(DensityValue::new(phi / m.sigma * correction))
}

/// Coefficients `bₙ = E[Heₙ(Y) f(Y)] / n!` of `f(Y) = Σ bₙHeₙ(Y)`, `Y ~ N(0,1)`.
pub fn wce_coeffs_1d<T: Real, F: Fn(T) -> T>(f: F, truncation: usize, quad_order: usize) -> Result<HermiteSeries<T>> {
    check_order(quad_order, truncation + 1)?;
    let rule = gauss_hermite_rule::<T>(quad_order)?;
    let values = rule
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let v = f(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteIntegrand { index: i })
            }
        })
        .collect::<Result<Vec<T>>>()?;
    let second = values.iter().zip(rule.weights()).fold(T::zero(), |acc, (&v, &w)| acc + w * v * v);
    if !second.is_finite() {
        return Err(Error::InvalidArgument("E[f(Y)^2] is not finite".into()));
    }
    let mut sums = vec![T::zero(); truncation + 1];
    for ((&x, &w), &v) in rule.nodes().iter().zip(rule.weights()).zip(&values) {
        for (s, he) in sums.iter_mut().zip(hermite_values(truncation, x)) {
            *s = *s + w * v * he;
        }
    }
    Ok(HermiteSeries { convention: SeriesConvention::PlainRv, coeffs: normalize(sums) })
}

pub const MAX_WCE_DIM: usize = 3;
pub const MAX_WCE_RANK: usize = 4;

/// Tensor coefficients `b^(0) … b^(N)` of `f(Y) = Σₙ b^(n)·He^(n)(Y)` for a
/// standard normal vector `Y ∈ ℝ^d`. Each `b^(n)` is stored flat like
/// [`HermiteTensor`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WceTensorCoeffs<T> {
    dim: usize,
    tensors: Vec<Vec<T>>,
}

impl<T: Real> WceTensorCoeffs<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.tensors.len() - 1
    }

    pub fn rank(&self, n: usize) -> &[T] {
        &self.tensors[n]
    }

    pub fn get(&self, index: &[usize]) -> T {
        let flat = index.iter().fold(0, |acc, &i| acc * self.dim + i);
        self.tensors[index.len()][flat]
    }

    /// `Σₙ b^(n)_α He^(n)_α(x)` with full index contraction.
    pub fn reconstruct(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument(format!("point has {} coordinates, expected {}", x.len(), self.dim)));
        }
        let family = HermiteTensor::family(x, self.truncation())?;
        Ok(family.iter().zip(&self.tensors).fold(T::zero(), |acc, (he, b)| acc + he.contract(b)))
    }

    pub fn symmetry_defect(&self) -> T {
        self.tensors
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (n, b)| acc.max(symmetry_defect(self.dim, n, b)))
    }
}

/// `b^(n) = E[He^(n)(Y) f(Y)] / n!` by tensor cubature, for `d ≤ 3`, `N ≤ 4`.
pub fn wce_coeffs_multi<T: Real, F: Fn(&[T]) -> T>(
    f: F,
    dim: usize,
    truncation: usize,
    quad_order: usize,
) -> Result<WceTensorCoeffs<T>> {
    if dim == 0 || dim > MAX_WCE_DIM {
        return Err(Error::InvalidArgument(format!("dimension must be in 1..={MAX_WCE_DIM}, got {dim}")));
    }
    if truncation > MAX_WCE_RANK {
        return Err(Error::InvalidArgument(format!("rank must be at most {MAX_WCE_RANK}, got {truncation}")));
    }
    check_order(quad_order, truncation + 1)?;
    let rule = tensor_cubature::<T>(dim, quad_order)?;
    let mut tensors: Vec<Vec<T>> = (0..=truncation).map(|n| vec![T::zero(); dim.pow(n as u32)]).collect();
    for (i, (p, w)) in rule.iter().enumerate() {
        let v = f(p);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { index: i });
        }
        for (acc, he) in tensors.iter_mut().zip(HermiteTensor::family(p, truncation)?) {
            for (a, &h) in acc.iter_mut().zip(he.values()) {
                *a = *a + w * v * h;
            }
        }
    }
    let mass = T::sqrt_two_pi().powi(dim as i32);
    let mut fact = T::one();
    for (n, b) in tensors.iter_mut().enumerate() {
        if n > 0 {
            fact = fact * T::lit(n as f64);
        }
        for v in b.iter_mut() {
            *v = *v / (mass * fact);
        }
    }
    Ok(WceTensorCoeffs { dim, tensors })
}

fn exact_sigma(sigma: f64) -> Result<Rational> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::NonPositiveSigma(sigma.to_string()));
    }
    Ok(Rational::try_from_f64(sigma).expect("finite"))
}

/// The `f` with `(φ_σ ∗ f) = g`, as `Σ_j (−σ²/2)ʲ g^{(2j)} / j!`.
///
/// `sigma` is converted to a rational exactly (every double is dyadic), so
/// the result is exact. `terms` caps `j`; `None` keeps every nonzero term.
pub fn gaussian_mixture_deconvolve(g: &ExactPolynomial, sigma: f64, terms: Option<usize>) -> Result<ExactPolynomial> {
    deconvolve_exact(g, &exact_sigma(sigma)?, terms)
}

pub fn deconvolve_exact(g: &ExactPolynomial, sigma: &Rational, terms: Option<usize>) -> Result<ExactPolynomial> {
    if *sigma <= Rational::zero() {
        return Err(Error::NonPositiveSigma(sigma.to_string()));
    }
    let step = -(sigma * sigma) / Rational::from_int(2);
    let last = terms.unwrap_or(usize::MAX).min(g.degree() / 2);
    let mut factor = Rational::one();
    let mut derivative = g.clone();
    let mut out = g.clone();
    for j in 1..=last {
        derivative = derivative.nth_derivative(2);
        factor = factor * &step / Rational::from_int(j as i64);
        out = out + derivative.scale(&factor);
    }
    Ok(out)
}

/// The same deconvolution through `yᵏ ↦ σᵏHe_k(x/σ)`, term by term.
pub fn deconvolve_via_hermite(g: &ExactPolynomial, sigma: &Rational) -> Result<ExactPolynomial> {
    if *sigma <= Rational::zero() {
        return Err(Error::NonPositiveSigma(sigma.to_string()));
    }
    let mut out = ExactPolynomial::zero();
    for (k, c) in g.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = out + scaled_hermite(k, sigma).scale(c);
    }
    Ok(out)
}

/// `σᵏ He_k(x/σ)` as a polynomial in `x`.
pub fn scaled_hermite(k: usize, sigma: &Rational) -> ExactPolynomial {
    let he = hermite_explicit(k, PolyFamily::ProbabilistHe);
    let coeffs = he
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * crate::scalar::powu(sigma, k - i))
        .collect();
    ExactPolynomial::from_coeffs(coeffs)
}

/// `(1/√(2π)) ∫ hₙ(x) e^{−ikx} dx` with `hₙ = e^{−x²/2}Hₙ`, by Gauss-Hermite
/// quadrature of `Hₙ(x)cos(kx)` and `−Hₙ(x)sin(kx)`.
pub fn hermite_function_transform(n: usize, k: f64, rule: &QuadratureRule<f64>) -> Result<Complex64> {
    let h = |x: f64| hermite_value(n, x, PolyFamily::PhysicistH);
    let re = integrate_weighted(|x| h(x) * (k * x).cos(), rule)?;
    let im = integrate_weighted(|x| -h(x) * (k * x).sin(), rule)?;
    Ok(Complex64::new(re, im) / std::f64::consts::TAU.sqrt())
}

/// Largest `|F[hₙ](k) − (−i)ⁿhₙ(k)|` over the grid.
pub fn fourier_eigen_check(n: usize, k_grid: &[f64], quad_order: usize) -> Result<f64> {
    check_order(quad_order, 2 * n + 10)?;
    let rule = gauss_hermite_rule::<f64>(quad_order)?;
    let phase = [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0)][n % 4];
    let mut worst = 0.0f64;
    for &k in k_grid {
        let transform = hermite_function_transform(n, k, &rule)?;
        let expected = phase * ((-k * k / 2.0).exp() * hermite_value(n, k, PolyFamily::PhysicistH));
        worst = worst.max((transform - expected).norm());
    }
    Ok(worst)
}
