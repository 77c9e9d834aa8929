//! Acceptance checks. Run with `cargo test -p hermite-kit --test acceptance`;
//! every criterion prints one PASS/FAIL line and the process exits non-zero
//! if any fails.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hermite_kit::expansions::{deconvolve_exact, default_quad_order, scaled_hermite};
use hermite_kit::graphs::linearization_polynomial;
use hermite_kit::hermite::hermite_value;
use hermite_kit::moments::gaussian_convolution;
use hermite_kit::tensor::orthogonality_constant;
use hermite_kit::*;

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn big_factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

fn he(n: usize) -> ExactPolynomial {
    hermite_explicit(n, PolyFamily::ProbabilistHe)
}

fn exact_constructions() -> Outcome {
    for n in 0..=50 {
        ensure(hermite_recurrence(n, PolyFamily::ProbabilistHe) == he(n), || {
            format!("recurrence and explicit sum differ at n={n}")
        })?;
    }
    let gs = gram_schmidt_construct(12);
    for (n, p) in gs.iter().enumerate() {
        ensure(*p == he(n), || format!("Gram-Schmidt differs at n={n}"))?;
        ensure(hermite_recurrence(n, PolyFamily::ProbabilistHe) == *p, || format!("recurrence vs Gram-Schmidt at n={n}"))?;
    }
    Ok("recurrence = explicit for n ≤ 50; = Gram-Schmidt for n ≤ 12".into())
}

fn special_values() -> Outcome {
    for n in 0..=50 {
        let p = he(n);
        ensure(p.degree() == n && p.leading_coeff().is_one(), || format!("He_{n} not monic of degree {n}"))?;
        for (k, c) in p.coeffs().iter().enumerate() {
            ensure((k + n) % 2 == 0 || c.is_zero(), || format!("He_{n} has a coefficient of the wrong parity at x^{k}"))?;
        }
    }
    for n in 0..=15usize {
        let mut expected = BigRational::from_integer((big_factorial(2 * n) / (big_factorial(n) << n)).into());
        if n % 2 == 1 {
            expected = -expected;
        }
        ensure(he(2 * n).eval(&Rational::zero()) == expected, || format!("He_{}(0) wrong", 2 * n))?;
        ensure(he(2 * n + 1).eval(&Rational::zero()).is_zero(), || format!("He_{}(0) ≠ 0", 2 * n + 1))?;
    }
    Ok("monic and parity for n ≤ 50; He_2n(0) exact for n ≤ 15".into())
}

fn quadrature_exactness() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_sum = 0.0f64;
    for n in 1..=20 {
        let rule = gauss_hermite_rule::<f64>(n).map_err(|e| e.to_string())?;
        for k in 0..2 * n {
            let got = integrate_weighted(|x| x.powi(k as i32), &rule).map_err(|e| e.to_string())?;
            let want = if k % 2 == 1 { 0.0 } else { TAU.sqrt() * (1..k).step_by(2).map(|f| f as f64).product::<f64>() };
            // odd moments vanish; measure them against the matching even moment
            let err = if k % 2 == 1 {
                got.abs() / (TAU.sqrt() * (1..=k).step_by(2).map(|f| f as f64).product::<f64>())
            } else {
                rel_err(got, want)
            };
            worst = worst.max(err);
            ensure(err <= 1e-10, || format!("N={n} x^{k}: {got} vs {want}"))?;
        }
        let total: f64 = rule.weights().iter().sum();
        worst_sum = worst_sum.max(rel_err(total, TAU.sqrt()));
        ensure(rel_err(total, TAU.sqrt()) <= 1e-12, || format!("N={n}: Σw = {total}"))?;
    }
    Ok(format!("max moment rel err {worst:.1e}, max Σw rel err {worst_sum:.1e}"))
}

fn orthogonality() -> Outcome {
    let mut worst = 0.0f64;
    for m in 0..=12usize {
        for n in 0..=12usize {
            let rule = gauss_hermite_rule::<f64>(m + n + 2).map_err(|e| e.to_string())?;
            let got = integrate_weighted(
                |x| hermite_value(m, x, PolyFamily::ProbabilistHe) * hermite_value(n, x, PolyFamily::ProbabilistHe),
                &rule,
            )
            .map_err(|e| e.to_string())?;
            let scale = TAU.sqrt() * factorial(m.max(n));
            let want = if m == n { scale } else { 0.0 };
            let err = (got - want).abs() / scale;
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("m={m} n={n}: {got}"))?;

            let p = count_complete_matches(&MultipartiteSpec::new(vec![m, n]).unwrap());
            let expected = if m == n { big_factorial(m) } else { BigUint::zero() };
            ensure(p == expected, || format!("P({m},{n}) = {p}"))?;
            ensure(partite_closed_form(&[m, n]).unwrap() == expected, || format!("closed P({m},{n})"))?;
            ensure(hermite_product_integral(&[m, n]) == TAU.sqrt() * if m == n { factorial(m) } else { 0.0 }, || {
                format!("J({m},{n})")
            })?;
        }
    }
    Ok(format!("quadrature rel err {worst:.1e}; P(m,n) = m!δ exact for m,n ≤ 12"))
}

fn weierstrass() -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..=10 {
        let rule = gauss_hermite_rule::<f64>(n + 4).map_err(|e| e.to_string())?;
        for x in [0.0f64, 1.0, 2.5] {
            let got = gaussian_convolution(|y| hermite_value(n, y, PolyFamily::ProbabilistHe), x, 1.0, &rule)
                .map_err(|e| e.to_string())?;
            let want = x.powi(n as i32);
            let err = if want == 0.0 { got.abs() } else { rel_err(got, want) };
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("n={n} x={x}: {got} vs {want}"))?;
        }
    }
    Ok(format!("max rel err {worst:.1e}"))
}

fn connection_problem() -> Outcome {
    for n in 0..=12 {
        let to_moment = change_of_basis(n, BasisTag::He, BasisTag::GaussMoment).map_err(|e| e.to_string())?;
        let to_he = change_of_basis(n, BasisTag::GaussMoment, BasisTag::He).map_err(|e| e.to_string())?;
        ensure(to_moment.compose(&to_he).unwrap().is_identity(), || format!("n={n}: M·M⁻¹ ≠ I"))?;
        ensure(to_he.compose(&to_moment).unwrap().is_identity(), || format!("n={n}: M⁻¹·M ≠ I"))?;
        let h_to_2x = change_of_basis(n, BasisTag::H, BasisTag::TwoXMonomial).unwrap();
        let from_2x = change_of_basis(n, BasisTag::TwoXMonomial, BasisTag::H).unwrap();
        ensure(to_moment.rows() == h_to_2x.rows(), || format!("n={n}: He→E[Y] ≠ H→(2x)"))?;
        ensure(to_he.rows() == from_2x.rows(), || format!("n={n}: E[Y]→He ≠ (2x)→H"))?;
    }
    Ok("exact inverses and shared entries for n ≤ 12".into())
}

fn matching_theorem() -> Outcome {
    for m in 0..=14 {
        let alpha = matching_polynomial(&complete_graph(m)).map_err(|e| e.to_string())?;
        ensure(alpha == he(m), || format!("α(K_{m}) ≠ He_{m}"))?;
    }
    Ok("α(K_m) = He_m for m ≤ 14 by j-match counting".into())
}

fn part_vectors(max_total: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn grow(cur: &mut Vec<usize>, left: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for n in 0..=left {
            cur.push(n);
            grow(cur, left - n, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), max_total, max_len, &mut out);
    out
}

fn combinatorial_bridge() -> Outcome {
    let vectors = part_vectors(12, 4);
    let mut worst = 0.0f64;
    for parts in &vectors {
        let total: usize = parts.iter().sum();
        let spec = MultipartiteSpec::new(parts.clone()).unwrap();
        let p = count_complete_matches(&spec);
        let rule = gauss_hermite_rule::<f64>(total / 2 + 1).map_err(|e| e.to_string())?;
        let direct = integrate_weighted(
            |x| parts.iter().map(|&n| hermite_value(n, x, PolyFamily::ProbabilistHe)).product(),
            &rule,
        )
        .map_err(|e| e.to_string())?;
        let j = hermite_product_integral(parts);
        let err = if p.is_zero() {
            direct.abs() / parts.iter().map(|&n| factorial(n).sqrt()).product::<f64>()
        } else {
            rel_err(direct, j)
        };
        worst = worst.max(err);
        ensure(err <= 1e-8, || format!("{parts:?}: quadrature {direct} vs √(2π)P {j}"))?;

        if total % 2 == 0 {
            let brute = count_j_matches(&complete_kpartite(&spec), total / 2).map_err(|e| e.to_string())?;
            ensure(brute == p, || format!("{parts:?}: brute force {brute} vs recurrence {p}"))?;
        }
        if matches!(parts.len(), 2 | 3) {
            let closed = partite_closed_form(parts).unwrap();
            ensure(closed == p, || format!("{parts:?}: closed form {closed} vs recurrence {p}"))?;
        }
    }
    Ok(format!("{} part vectors, max rel err {worst:.1e}", vectors.len()))
}

fn linearization() -> Outcome {
    for m in 0..=10 {
        for n in 0..=10 {
            let coeffs: BTreeMap<usize, BigUint> = linearization_coeffs(m, n);
            ensure(linearization_polynomial(&coeffs) == he(m) * he(n), || format!("He_{m}·He_{n}"))?;
        }
    }
    Ok("Σ a_l He_l = He_m He_n for m, n ≤ 10".into())
}

fn density_round_trip() -> Outcome {
    let phi = |x: f64| (-x * x / 2.0).exp() / TAU.sqrt();
    let mut worst = 0.0f64;
    for mu in [0.0, 0.5, 1.0] {
        let series = fourier_hermite_coeffs(|x| phi(x - mu), 30, default_quad_order(30)).map_err(|e| e.to_string())?;
        for i in 0..=80 {
            let x = -4.0 + 0.1 * i as f64;
            let err = (evaluate_series(&series, x) - phi(x - mu)).abs();
            worst = worst.max(err);
            ensure(err <= 1e-8, || format!("mu={mu} x={x}: err {err:.1e}"))?;
        }
    }
    let normal = StandardizedMoments::new(0.7, 1.8, vec![0.0, 3.0]).unwrap();
    for i in 0..=40 {
        let x = -5.0 + 0.25 * i as f64;
        let z = (x - 0.7) / 1.8;
        let got = gram_charlier_density(&normal, 4, x).map_err(|e| e.to_string())?.value;
        let want = phi(z) / 1.8;
        ensure(rel_err(got, want) <= 1e-15, || format!("Gram-Charlier at x={x}: {got} vs {want}"))?;
    }
    Ok(format!("max abs err {worst:.1e}; Gram-Charlier(ν₃=0, ν₄=3) Gaussian"))
}

fn deconvolution() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..=8usize {
        for (sigma, exact_sigma) in [(0.5, rational(1, 2)), (1.0, rational(1, 1)), (2.0, rational(2, 1))] {
            let g = ExactPolynomial::monomial(Rational::one(), k);
            let f = gaussian_mixture_deconvolve(&g, sigma, None).map_err(|e| e.to_string())?;
            ensure(f == scaled_hermite(k, &exact_sigma), || format!("k={k} σ={sigma}: f ≠ σ^k He_k(x/σ)"))?;
            ensure(f == deconvolve_exact(&g, &exact_sigma, None).unwrap(), || format!("k={k} σ={sigma}"))?;
            let rule = gauss_hermite_rule::<f64>(k / 2 + 2).map_err(|e| e.to_string())?;
            for y in [-2.0f64, 0.0, 1.0, 3.0] {
                let smoothed = gaussian_convolution(|t| f.eval_f64(t), y, sigma, &rule).map_err(|e| e.to_string())?;
                let want = y.powi(k as i32);
                let err = if want == 0.0 { smoothed.abs() } else { rel_err(smoothed, want) };
                worst = worst.max(err);
                ensure(err <= 1e-8, || format!("k={k} σ={sigma} y={y}: {smoothed} vs {want}"))?;
            }
        }
    }
    Ok(format!("exact σ^k He_k(x/σ); smoothing rel err {worst:.1e}"))
}

fn fourier_eigenfunctions() -> Outcome {
    let grid: Vec<f64> = (0..=60).map(|i| -3.0 + 0.1 * i as f64).collect();
    let mut worst = 0.0f64;
    for n in 0..=8 {
        let err = fourier_eigen_check(n, &grid, 60).map_err(|e| e.to_string())?;
        worst = worst.max(err);
        ensure(err <= 1e-6, || format!("n={n}: max error {err:.1e}"))?;
    }
    Ok(format!("max error {worst:.1e} for n ≤ 8, |k| ≤ 3"))
}

fn tensor_orthogonality() -> Outcome {
    let d = 2;
    let rule = tensor_cubature::<f64>(d, 6).map_err(|e| e.to_string())?;
    let ranks = [2usize, 3];
    let indices: Vec<Vec<usize>> = ranks
        .iter()
        .flat_map(|&r| {
            (0..d.pow(r as u32)).map(move |flat| {
                let mut idx = vec![0; r];
                let mut f = flat;
                for slot in idx.iter_mut().rev() {
                    *slot = f % d;
                    f /= d;
                }
                idx
            })
        })
        .collect();
    let mut gram = vec![0.0; indices.len() * indices.len()];
    for (p, w) in rule.iter() {
        let family = HermiteTensor::family(p, 3).map_err(|e| e.to_string())?;
        let vals: Vec<f64> = indices.iter().map(|idx| family[idx.len()].get(idx)).collect();
        for (a, va) in vals.iter().enumerate() {
            for (b, vb) in vals.iter().enumerate() {
                gram[a * indices.len() + b] += w * va * vb;
            }
        }
    }
    let mut worst = 0.0f64;
    for (a, alpha) in indices.iter().enumerate() {
        for (b, beta) in indices.iter().enumerate() {
            let got = gram[a * indices.len() + b];
            let want = (2.0 * PI) * orthogonality_constant(d, alpha, beta) as f64;
            let err = if want == 0.0 { got.abs() / (2.0 * PI) } else { rel_err(got, want) };
            worst = worst.max(err);
            ensure(err <= 1e-7, || format!("{alpha:?}·{beta:?}: {got} vs {want}"))?;
        }
    }
    Ok(format!("{} component pairs, max rel err {worst:.1e}", indices.len() * indices.len()))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "exact-construction agreement", limit: Some(Duration::from_secs(5)), check: exact_constructions },
        Criterion { id: 2, name: "special values", limit: None, check: special_values },
        Criterion { id: 3, name: "quadrature exactness", limit: Some(Duration::from_secs(10)), check: quadrature_exactness },
        Criterion { id: 4, name: "orthogonality", limit: None, check: orthogonality },
        Criterion { id: 5, name: "Weierstrass identity", limit: None, check: weierstrass },
        Criterion { id: 6, name: "connection problem", limit: None, check: connection_problem },
        Criterion { id: 7, name: "matching theorem", limit: Some(Duration::from_secs(60)), check: matching_theorem },
        Criterion { id: 8, name: "combinatorial/analytic bridge", limit: None, check: combinatorial_bridge },
        Criterion { id: 9, name: "linearization", limit: None, check: linearization },
        Criterion { id: 10, name: "density round trip", limit: None, check: density_round_trip },
        Criterion { id: 11, name: "deconvolution", limit: None, check: deconvolution },
        Criterion { id: 12, name: "Fourier eigenfunctions", limit: None, check: fourier_eigenfunctions },
        Criterion { id: 13, name: "d-dimensional orthogonality", limit: None, check: tensor_orthogonality },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {} ({detail}; {elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {} ({why}; {elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
