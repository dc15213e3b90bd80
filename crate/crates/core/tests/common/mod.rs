//! Shared corpus and independent oracles for the integration tests.
#![allow(dead_code)]

use bochner::operator::deltas_from_operator;
use bochner::presets;
use bochner::spectral::check_spectrum;
use bochner::{BochnerOperator, ExactScalar, Poly, Rational};
use dashu_int::IBig;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x5eed_b0c4;

pub fn s(text: &str) -> ExactScalar {
    text.parse().unwrap()
}

fn random_rational(rng: &mut StdRng, bound: i64) -> Rational {
    Rational::from_parts_signed(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into())
}

/// Gaussian rational with numerators and denominators bounded by `bound`.
pub fn random_scalar(rng: &mut StdRng, bound: i64) -> ExactScalar {
    ExactScalar::new(random_rational(rng, bound), random_rational(rng, bound))
}

pub fn random_real(rng: &mut StdRng, bound: i64) -> ExactScalar {
    ExactScalar::real(random_rational(rng, bound))
}

/// Dense random Bochner operator of the given order, `a_N != 0`.
pub fn random_operator(rng: &mut StdRng, order: usize, bound: i64) -> BochnerOperator {
    loop {
        let coeffs: Vec<Poly> = (0..=order)
            .map(|i| Poly::new((0..=i).map(|_| random_scalar(rng, bound)).collect()))
            .collect();
        if let Ok(op) = BochnerOperator::new(coeffs) {
            return op;
        }
    }
}

/// True when `λ_0..λ_{n_max}` of the normalized operator are distinct
/// and nonzero past `n = 0`.
pub fn spectrum_ok(op: &BochnerOperator, n_max: usize) -> bool {
    let table = deltas_from_operator(&op.normalize().0, n_max);
    check_spectrum(&table.diagonal_zero()).is_ok()
}

/// Classical presets plus 25 seeded random operators of orders 1..=5 with
/// a nondegenerate spectrum up to degree 40.
pub fn corpus() -> Vec<(String, BochnerOperator)> {
    let mut out = vec![
        ("hermite".to_string(), presets::hermite()),
        ("laguerre(0)".to_string(), presets::laguerre(&s("0"))),
        ("laguerre(1/2)".to_string(), presets::laguerre(&s("1/2"))),
        ("jacobi(1/2,1/3)".to_string(), presets::jacobi(&s("1/2"), &s("1/3"))),
        (
            "shapiro(1,0,1/2)".to_string(),
            presets::shapiro("1,0,1/2").unwrap().to_bochner(),
        ),
    ];
    let mut rng = StdRng::seed_from_u64(SEED);
    for j in 0..25 {
        let order = j % 5 + 1;
        let op = loop {
            let op = random_operator(&mut rng, order, 1000);
            if spectrum_ok(&op, 40) {
                break op;
            }
        };
        out.push((format!("random #{j} (N={order})"), op));
    }
    out
}

/// `k`-th derivative of a coefficient vector, written out term by term.
fn derive(c: &[ExactScalar], k: usize) -> Vec<ExactScalar> {
    (k..c.len())
        .map(|j| {
            let falling: IBig = ((j - k + 1)..=j).map(IBig::from).product();
            &c[j] * &ExactScalar::from(falling)
        })
        .collect()
}

fn mul(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `L p` by direct differentiation and multiplication, sharing no code with
/// the library's polynomial arithmetic.
pub fn apply_naive(op: &BochnerOperator, p: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); p.len()];
    for (i, a) in op.coeffs().iter().enumerate() {
        for (j, c) in mul(a.coeffs(), &derive(p, i)).into_iter().enumerate() {
            if j >= out.len() {
                out.resize(j + 1, ExactScalar::zero());
            }
            out[j] += &c;
        }
    }
    out
}

/// `L p = λ p`, checked coefficient by coefficient with [`apply_naive`].
pub fn eigen_equation_holds(op: &BochnerOperator, p: &Poly, lambda: &ExactScalar) -> bool {
    let lp = apply_naive(op, p.coeffs());
    (0..lp.len().max(p.coeffs().len())).all(|j| {
        let lhs = lp.get(j).cloned().unwrap_or_else(ExactScalar::zero);
        lhs == lambda * &p.coeff(j)
    })
}

/// Monic Hermite polynomial from its explicit sum,
/// `Σ_m (-1)^m n! / (m! (n-2m)! 4^m) x^(n-2m)`.
pub fn monic_hermite(n: usize) -> Poly {
    let fact = |k: usize| -> IBig { (1..=k).map(IBig::from).product::<IBig>().max(IBig::one()) };
    let mut c = vec![ExactScalar::zero(); n + 1];
    for m in 0..=n / 2 {
        let num = fact(n) * if m % 2 == 0 { 1 } else { -1 };
        let den = fact(m) * fact(n - 2 * m) * IBig::from(4).pow(m);
        c[n - 2 * m] = ExactScalar::real(Rational::from_parts_signed(num, den));
    }
    Poly::new(c)
}
