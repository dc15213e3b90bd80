//! The operator `L = Σ_{i=1}^{N} c_i x^(i-1) ∂^i + x ∂`.
//!
//! Its δ-table collapses to two columns: `δ_n^(0) = n` and
//! `δ_n^(1) = Σ_{s=1}^{n} C(n,s) s! c_s` (with `c_s = 0` past `N`), so the
//! eigenpolynomials have product-form coefficients and satisfy an
//! `(N+1)`-term recurrence with closed-form coefficients.

use dashu_int::IBig;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom_int, factorial, sign, ExactScalar, Rational};
use crate::operator::BochnerOperator;
use crate::poly::Poly;
use crate::recurrence::{check_recurrence, RecurrenceCheck};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapiroOperator {
    /// `c[s - 1] = c_s`
    c: Vec<ExactScalar>,
}

impl ShapiroOperator {
    /// `c = [c_1, ..., c_N]` with `c_N != 0`.
    pub fn new(c: Vec<ExactScalar>) -> Result<Self> {
        match c.last() {
            None => Err(Error::InvalidOperator("the c-list is empty".into())),
            Some(last) if last.is_zero() => Err(Error::InvalidOperator(format!(
                "c_{} = 0 would lower the order of the operator",
                c.len()
            ))),
            Some(_) => Ok(ShapiroOperator { c }),
        }
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// `c_s`, zero outside `1..=N`.
    pub fn c(&self, s: usize) -> ExactScalar {
        s.checked_sub(1)
            .and_then(|i| self.c.get(i))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn c_list(&self) -> &[ExactScalar] {
        &self.c
    }

    /// `a_1 = x + c_1`, `a_i = c_i x^(i-1)` for `i >= 2`, `a_0 = 0`.
    pub fn to_bochner(&self) -> BochnerOperator {
        let mut coeffs = vec![Poly::zero(), Poly::new(vec![self.c(1), ExactScalar::one()])];
        for i in 2..=self.order() {
            coeffs.push(Poly::monomial(self.c(i), i - 1));
        }
        BochnerOperator::new(coeffs).expect("c_N != 0 gives a valid Bochner operator")
    }

    /// `λ_n = n`.
    pub fn eigenvalue(&self, n: usize) -> ExactScalar {
        ExactScalar::from(n as i64)
    }
}

/// `δ_n^(1) = Σ_{s=1}^{n} C(n,s) s! c_s`.
pub fn shapiro_delta1(op: &ShapiroOperator, n: usize) -> ExactScalar {
    (1..=n.min(op.order()))
        .map(|s| {
            let w: IBig = binom_int(n, s as i64) * factorial(s);
            &op.c(s) * &ExactScalar::from(w)
        })
        .sum()
}

fn delta1_signed(op: &ShapiroOperator, n: i64) -> ExactScalar {
    if n < 0 {
        ExactScalar::zero()
    } else {
        shapiro_delta1(op, n as usize)
    }
}

/// `δ_n^(1) δ_{n-1}^(1) ... δ_{n-i+1}^(1)`; one for `i = 0`.
fn delta1_product(op: &ShapiroOperator, n: usize, i: usize) -> ExactScalar {
    (0..i).map(|j| delta1_signed(op, n as i64 - j as i64)).product()
}

/// `b_{n,n-i} = δ_n^(1) ... δ_{n-i+1}^(1) / i!`.
pub fn shapiro_coeff(op: &ShapiroOperator, n: usize, i: usize) -> Result<ExactScalar> {
    if i > n {
        return Err(Error::Domain(format!("coefficient depth {i} exceeds degree {n}")));
    }
    let inv_fact = Rational::from_parts_signed(IBig::one(), factorial(i));
    Ok(delta1_product(op, n, i).scale(&inv_fact))
}

/// The monic eigenpolynomial `P_n` from the product formula.
pub fn shapiro_eigenpoly(op: &ShapiroOperator, n: usize) -> Poly {
    let mut coeffs = vec![ExactScalar::zero(); n + 1];
    // Running product: b_{n,n-i} = b_{n,n-i+1} δ_{n-i+1}^(1) / i.
    let mut current = ExactScalar::one();
    coeffs[n] = current.clone();
    for i in 1..=n {
        let d = shapiro_delta1(op, n + 1 - i);
        current = (&current * &d).scale(&Rational::from_parts_signed(IBig::one(), IBig::from(i)));
        coeffs[n - i] = current.clone();
    }
    Poly::new(coeffs)
}

/// `α_{n,n-s} = (δ_n^(1) ... δ_{n-s+1}^(1) / (s+1)!) Σ_{j=0}^{s+1} C(s+1,j) (-1)^j δ_{n-s+j}^(1)`
/// for `0 <= s <= N-1`. Entries with `n - s < 0` come out as zero.
pub fn shapiro_alpha(op: &ShapiroOperator, n: usize, s: usize) -> Result<ExactScalar> {
    if s >= op.order() {
        return Err(Error::Domain(format!(
            "recurrence depth s = {s} outside 0..={}",
            op.order() - 1
        )));
    }
    let prefix = delta1_product(op, n, s);
    if prefix.is_zero() {
        return Ok(prefix);
    }
    let difference: ExactScalar = (0..=s + 1)
        .map(|j| {
            let w = sign(j as i64) * binom_int(s + 1, j as i64);
            &delta1_signed(op, n as i64 - s as i64 + j as i64) * &ExactScalar::from(w)
        })
        .sum();
    let inv_fact = Rational::from_parts_signed(IBig::one(), factorial(s + 1));
    Ok((&prefix * &difference).scale(&inv_fact))
}

/// `table[n][s] = α_{n,n-s}` for `n <= n_max`, `s < N`.
pub fn shapiro_alpha_table(op: &ShapiroOperator, n_max: usize) -> Vec<Vec<ExactScalar>> {
    (0..=n_max)
        .map(|n| {
            (0..op.order())
                .map(|s| shapiro_alpha(op, n, s).expect("s < N"))
                .collect()
        })
        .collect()
}

/// Checks `Σ_{s=1}^{N-1} α_{n,n-s} P_{n-s} + (α_{n,n} - x) P_n + P_{n+1} = 0`
/// for `n <= n_max` against a supplied band table (`band[n][s] = α_{n,n-s}`).
pub fn check_shapiro_band(op: &ShapiroOperator, band: &[Vec<ExactScalar>], n_max: usize) -> Result<RecurrenceCheck> {
    if band.len() <= n_max {
        return Err(Error::InsufficientData(format!(
            "band table has {} rows, need {}",
            band.len(),
            n_max + 1
        )));
    }
    let polys: Vec<Poly> = (0..=n_max + 1).map(|n| shapiro_eigenpoly(op, n)).collect();
    check_recurrence(&polys, n_max, op.order() - 1, |n, s| {
        band[n].get(s).cloned().unwrap_or_else(ExactScalar::zero)
    })
}

/// The `(N+1)`-term recurrence with the closed-form coefficients, checked
/// as an exact polynomial identity for every `n <= n_max`.
pub fn verify_shapiro_recurrence(op: &ShapiroOperator, n_max: usize) -> RecurrenceCheck {
    let band = shapiro_alpha_table(op, n_max);
    check_shapiro_band(op, &band, n_max).expect("band table covers n_max")
}
