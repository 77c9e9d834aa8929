//! Chebyshev-Hermite polynomials and the machinery built on them.
//!
//! The crate covers exact construction of the probabilists' (`He_n`) and
//! physicists' (`H_n`) Hermite polynomials, Gauss-Hermite quadrature and
//! tensor cubature for the weight `e^{-x²/2}`, Gaussian moments and the
//! connection problem, Hermite expansions of densities and functions of
//! Gaussian variables, and the matching-polynomial combinatorics that
//! evaluate integrals of products of `He_n`.
//!
//! Exact paths run over [`Rational`] coefficients. Floating-point paths are
//! generic over [`Real`] (`f32`, `f64`); most callers want the `f64`
//! aliases exported below.

pub mod error;
pub mod expansions;
pub mod graphs;
pub mod hermite;
pub mod moments;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod tensor;

mod combinatorics;

pub use error::{Error, Result};

pub use expansions::{
    evaluate_series, fourier_eigen_check, fourier_hermite_coeffs, gaussian_mixture_deconvolve,
    gram_charlier_density, wce_coeffs_1d, wce_coeffs_multi, DensityValue, HermiteSeries,
    SeriesConvention, StandardizedMoments, WceTensorCoeffs,
};
pub use graphs::{
    complete_graph, complete_kpartite, count_complete_matches, count_j_matches,
    hermite_product_integral, linearization_coeffs, matching_polynomial, partite_closed_form,
    verify_hermite_matching, MatchCountTable, MultipartiteSpec, SimpleGraph,
};
pub use hermite::{
    eval_hermite, eval_hermite_function, generating_function_check, gram_schmidt_construct,
    hermite_derivative, hermite_explicit, hermite_ode_residual, hermite_recurrence,
    HermiteFunctionKind, PolyFamily,
};
pub use moments::{
    change_of_basis, expected_hermite_of_gaussian, gaussian_raw_moment, hermite_in_moments,
    moments_in_hermite, weierstrass_deconvolution_identity, BasisTag, ChangeOfBasisMatrix,
};
pub use poly::Polynomial;
pub use quadrature::{
    gauss_hermite_rule, integrate_weighted, integrate_whole_line, tensor_cubature, CubatureRule,
    QuadratureRule,
};
pub use scalar::{Real, Scalar};
pub use tensor::HermiteTensor;

/// Arbitrary-precision rational scalar used by every exact path.
pub type Rational = num_rational::BigRational;
/// Dense polynomial with exact rational coefficients.
pub type ExactPolynomial = Polynomial<Rational>;


pub type Rule = QuadratureRule<f64>;
pub type Cubature = CubatureRule<f64>;
pub type Series = HermiteSeries<f64>;
pub type Tensor = HermiteTensor<f64>;
pub type WceCoeffs = WceTensorCoeffs<f64>;
pub type Moments = StandardizedMoments<f64>;
