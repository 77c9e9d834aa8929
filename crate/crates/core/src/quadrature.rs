//! Gauss-Hermite quadrature for the weight `e^{-x²/2}` and tensor-product
//! cubature in `d` dimensions.
//!
//! Nodes are the zeros of `He_N`. They start as eigenvalues of the Jacobi
//! matrix of the monic recurrence (zero diagonal, off-diagonal `√k`), are
//! polished by Newton steps on the normalized Hermite function
//! `ψ_N = e^{-x²/4} He_N / √(N!)`, and are then symmetrized. Weights use
//! `w_i = √(2π) N! / [N He_{N−1}(x_i)]²`, rewritten as
//! `√(2π) / (N p_{N−1}(x_i)²)` with `p_k = He_k/√(k!)` and evaluated in log form.
//!
//! Rules are always constructed in `f64` and then converted, so `f32` rules
//! carry the `f64` nodes rounded once.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hermite::ScaledPair;
use crate::scalar::Real;

pub const MAX_RULE_ORDER: usize = 200;
pub const MAX_CUBATURE_POINTS: u128 = 10_000_000;
const NEWTON_MAX_ITER: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    // w_i · e^{x_i²/2}, for integrands that are not written against the weight
    whole_line_weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn new(order: usize) -> Result<Self> {
        gauss_hermite_rule(order)
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Zeros of `He_N`, strictly increasing.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `w_i·e^{x_i²/2}`; non-finite entries mean the rule cannot integrate
    /// unweighted integrands in this precision.
    pub fn whole_line_weights(&self) -> &[T] {
        &self.whole_line_weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate_weighted<F: Fn(T) -> T>(&self, f: F) -> Result<T> {
        integrate_weighted(f, self)
    }

    pub fn integrate_whole_line<F: Fn(T) -> T>(&self, f: F) -> Result<T> {
        integrate_whole_line(f, self)
    }

    fn convert<U: Real>(&self) -> QuadratureRule<U> {
        let cast = |v: &[T]| v.iter().map(|x| U::lit(x.to_f64_lossy())).collect();
        QuadratureRule {
            nodes: cast(&self.nodes),
            weights: cast(&self.weights),
            whole_line_weights: cast(&self.whole_line_weights),
        }
    }
}

/// `ψ_N` and `ψ_{N−1}` at `x` as a scaled pair (mantissas share `e^{log_scale}`).
pub(crate) fn normalized_pair(order: usize, x: f64) -> ScaledPair<f64> {
    let mut pair = ScaledPair::new(-x * x / 4.0);
    for k in 0..order {
        let next = (x * pair.cur - (k as f64).sqrt() * pair.prev) / ((k + 1) as f64).sqrt();
        pair.push(next);
    }
    pair
}

/// `ψ_N(x) = e^{−x²/4} He_N(x) / √(N!)`.
pub fn normalized_hermite_function(order: usize, x: f64) -> f64 {
    normalized_pair(order, x).value()
}

fn newton_polish(order: usize, guess: f64, index: usize) -> Result<f64> {
    let root_n = (order as f64).sqrt();
    let mut x = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let pair = normalized_pair(order, x);
        if pair.cur == 0.0 {
            return Ok(x);
        }
        // ψ_N' = √N ψ_{N−1} − (x/2) ψ_N, divided through by ψ_{N−1}
        let ratio = pair.cur / pair.prev;
        let step = ratio / (root_n - 0.5 * x * ratio);
        x -= step;
        if !x.is_finite() {
            break;
        }
        if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Ok(x);
        }
    }
    Err(Error::RootNotConverged { index, iterations: NEWTON_MAX_ITER })
}

fn build_rule(order: usize) -> Result<QuadratureRule<f64>> {
    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let b = (k as f64).sqrt();
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let mut guesses: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    guesses.sort_by(|a, b| a.total_cmp(b));

    let polished = guesses
        .iter()
        .enumerate()
        .map(|(i, &g)| newton_polish(order, g, i))
        .collect::<Result<Vec<f64>>>()?;

    let nodes: Vec<f64> = (0..order)
        .map(|i| 0.5 * (polished[i] - polished[order - 1 - i]))
        .collect();

    let half_ln_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let ln_order = (order as f64).ln();
    let mut weights = Vec::with_capacity(order);
    let mut whole_line_weights = Vec::with_capacity(order);
    for &x in &nodes {
        let pair = normalized_pair(order, x);
        // ln|ψ_{N−1}(x)| without the e^{−x²/4} factor
        let ln_p = pair.prev.abs().ln() + pair.log_scale + x * x / 4.0;
        let ln_w = half_ln_two_pi - ln_order - 2.0 * ln_p;
        weights.push(ln_w.exp());
        whole_line_weights.push((ln_w + x * x / 2.0).exp());
    }
    Ok(QuadratureRule { nodes, weights, whole_line_weights })
}

/// The `N`-point Gauss-Hermite rule, exact for polynomials of degree `2N−1`.
pub fn gauss_hermite_rule<T: Real>(order: usize) -> Result<QuadratureRule<T>> {
    if order == 0 || order > MAX_RULE_ORDER {
        return Err(Error::InvalidOrder { order, max: MAX_RULE_ORDER });
    }
    Ok(build_rule(order)?.convert())
}

/// `Σ w_i f(x_i) ≈ ∫ e^{−x²/2} f(x) dx`.
pub fn integrate_weighted<T: Real, F: Fn(T) -> T>(f: F, rule: &QuadratureRule<T>) -> Result<T> {
    let mut acc = T::zero();
    for (i, (x, w)) in rule.iter().enumerate() {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { index: i });
        }
        acc = acc + w * v;
    }
    Ok(acc)
}

/// `Σ w_i e^{x_i²/2} f(x_i) ≈ ∫ f(x) dx` for integrands that decay like the weight.
pub fn integrate_whole_line<T: Real, F: Fn(T) -> T>(f: F, rule: &QuadratureRule<T>) -> Result<T> {
    let mut acc = T::zero();
    for (i, (&x, &w)) in rule.nodes.iter().zip(&rule.whole_line_weights).enumerate() {
        if !w.is_finite() {
            return Err(Error::RangeOverflow { index: i });
        }
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { index: i });
        }
        acc = acc + w * v;
    }
    Ok(acc)
}

/// Full tensor product of a 1-d rule. Points are stored flat, `dim` values each.
#[derive(Debug, Clone, PartialEq)]
pub struct CubatureRule<T> {
    dim: usize,
    order: usize,
    points: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> CubatureRule<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[T], T)> + '_ {
        self.points.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(p_i) ≈ ∫ e^{−‖x‖²/2} f(x) dx` over `ℝ^d`.
    pub fn integrate<F: Fn(&[T]) -> T>(&self, f: F) -> Result<T> {
        let mut acc = T::zero();
        for (i, (p, w)) in self.iter().enumerate() {
            let v = f(p);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { index: i });
            }
            acc = acc + w * v;
        }
        Ok(acc)
    }
}

pub fn tensor_cubature<T: Real>(dim: usize, order: usize) -> Result<CubatureRule<T>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("cubature dimension must be positive".into()));
    }
    let required = (order as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if required > MAX_CUBATURE_POINTS {
        return Err(Error::CubatureBudget { required, budget: MAX_CUBATURE_POINTS });
    }
    let rule = gauss_hermite_rule::<T>(order)?;
    let total = required as usize;
    let mut points = Vec::with_capacity(total * dim);
    let mut weights = Vec::with_capacity(total);
    let mut digits = vec![0usize; dim];
    for _ in 0..total {
        let mut w = T::one();
        for &d in &digits {
            points.push(rule.nodes[d]);
            w = w * rule.weights[d];
        }
        weights.push(w);
        // odometer, last axis fastest
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < order {
                break;
            }
            *slot = 0;
        }
    }
    Ok(CubatureRule { dim, order, points, weights })
}
