//! The direct problem: eigenvalues and monic eigenpolynomials from a δ-table.
//!
//! Writing `P_n = Σ b_{n,i} x^i` with `b_{n,n} = 1`, the eigen-equation
//! `L P_n = λ_n P_n` is equivalent to
//!
//! ```text
//! Σ_k δ_{m+k}^(k) b_{n,m+k} = λ_n b_{n,m},   m = 0..n,
//! ```
//!
//! so `λ_n = δ_n^(0)` and the lower coefficients follow by back substitution.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom_int, binom_or_zero, sign, ExactScalar, Rational};
use crate::hessenberg;
use crate::operator::DeltaTable;
use crate::poly::Poly;

/// Eigenvalues `λ_0 = 0, λ_1, ...` paired with monic eigenpolynomials,
/// `deg P_n = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EigenSystemDoc", into = "EigenSystemDoc")]
pub struct EigenSystem {
    lambdas: Vec<ExactScalar>,
    polys: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct EigenSystemDoc {
    lambda: Vec<ExactScalar>,
    #[serde(rename = "P")]
    polys: Vec<Poly>,
}

impl TryFrom<EigenSystemDoc> for EigenSystem {
    type Error = Error;
    fn try_from(doc: EigenSystemDoc) -> Result<Self> {
        EigenSystem::new(doc.lambda, doc.polys)
    }
}

impl From<EigenSystem> for EigenSystemDoc {
    fn from(sys: EigenSystem) -> Self {
        EigenSystemDoc {
            lambda: sys.lambdas,
            polys: sys.polys,
        }
    }
}

impl EigenSystem {
    /// Checks shape only: matching lengths, `λ_0 = 0`, `P_n` monic of degree
    /// `n`. Spectrum distinctness is checked separately by
    /// [`check_spectrum`], since prescribed data may legitimately fail it.
    pub fn new(lambdas: Vec<ExactScalar>, polys: Vec<Poly>) -> Result<Self> {
        if lambdas.len() != polys.len() {
            return Err(Error::InvalidEigenSystem(format!(
                "{} eigenvalues but {} polynomials",
                lambdas.len(),
                polys.len()
            )));
        }
        if lambdas.is_empty() {
            return Err(Error::InvalidEigenSystem("empty eigen-system".into()));
        }
        if !lambdas[0].is_zero() {
            return Err(Error::InvalidEigenSystem(format!(
                "lambda_0 must be 0, got {}",
                lambdas[0]
            )));
        }
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::InvalidEigenSystem(format!(
                    "P_{n} has degree {:?}, expected {n}",
                    p.degree()
                )));
            }
            if !p.is_monic() {
                return Err(Error::InvalidEigenSystem(format!("P_{n} is not monic")));
            }
        }
        Ok(EigenSystem { lambdas, polys })
    }

    pub fn lambdas(&self) -> &[ExactScalar] {
        &self.lambdas
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn n_max(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// `b_{n,i}`; zero for `i > n`.
    pub fn b(&self, n: usize, i: usize) -> ExactScalar {
        self.polys[n].coeff(i)
    }

    pub fn truncated(&self, n_max: usize) -> EigenSystem {
        EigenSystem {
            lambdas: self.lambdas[..=n_max].to_vec(),
            polys: self.polys[..=n_max].to_vec(),
        }
    }

    pub fn into_parts(self) -> (Vec<ExactScalar>, Vec<Poly>) {
        (self.lambdas, self.polys)
    }
}

/// Fails on `λ_n = λ_m` (`n != m`) or `λ_n = 0` for `n >= 1`.
pub fn check_spectrum(lambdas: &[ExactScalar]) -> Result<()> {
    let mut seen: HashMap<&ExactScalar, usize> = HashMap::with_capacity(lambdas.len());
    for (n, lambda) in lambdas.iter().enumerate() {
        if n >= 1 && lambda.is_zero() {
            return Err(Error::DegenerateSpectrum { first: 0, second: n });
        }
        if let Some(&m) = seen.get(lambda) {
            return Err(Error::DegenerateSpectrum { first: m, second: n });
        }
        seen.insert(lambda, n);
    }
    Ok(())
}

/// `λ_n = δ_n^(0)` for every row of the table, validated.
pub fn eigenvalues(table: &DeltaTable) -> Result<Vec<ExactScalar>> {
    let lambdas = table.diagonal_zero();
    check_spectrum(&lambdas)?;
    Ok(lambdas)
}

fn require_rows(table: &DeltaTable, n: usize) -> Result<()> {
    if table.len() <= n {
        return Err(Error::InsufficientData(format!(
            "δ-table has rows 0..{}, row {n} requested",
            table.len()
        )));
    }
    Ok(())
}

/// `λ_n - λ_{n-i}` for `i = 1..=depth`, failing on a zero gap.
fn gaps(table: &DeltaTable, n: usize, depth: usize) -> Result<Vec<ExactScalar>> {
    let lambda_n = table.get(n, 0);
    let mut out = Vec::with_capacity(depth + 1);
    out.push(ExactScalar::zero());
    for i in 1..=depth {
        let gap = lambda_n - table.get(n - i, 0);
        if gap.is_zero() {
            return Err(Error::DegenerateSpectrum {
                first: n - i,
                second: n,
            });
        }
        out.push(gap);
    }
    Ok(out)
}

/// Widest `k` that can carry a nonzero `δ^(k)`.
fn band(table: &DeltaTable, i: usize) -> usize {
    table.order().map_or(i, |order| order.min(i))
}

/// The monic eigenpolynomial `P_n` by back substitution:
///
/// ```text
/// b_{n,n-i} = Σ_{k=1}^{N} δ_{n-i+k}^(k) b_{n,n-i+k} / (λ_n - λ_{n-i})
/// ```
pub fn eigenpoly_recursive(table: &DeltaTable, n: usize) -> Result<Poly> {
    require_rows(table, n)?;
    let gaps = gaps(table, n, n)?;
    let mut b = vec![ExactScalar::zero(); n + 1];
    b[n] = ExactScalar::one();
    for (i, gap) in gaps.iter().enumerate().skip(1) {
        let low = n - i;
        let mut acc = ExactScalar::zero();
        for k in 1..=band(table, i) {
            let d = table.get(low + k, k);
            if !d.is_zero() && !b[low + k].is_zero() {
                acc += &(d * &b[low + k]);
            }
        }
        b[low] = acc / gap;
    }
    Ok(Poly::new(b))
}

/// Builds `λ_0..λ_{n_max}` and `P_0..P_{n_max}` by the recursion.
pub fn eigen_system(table: &DeltaTable, n_max: usize) -> Result<EigenSystem> {
    require_rows(table, n_max)?;
    let lambdas = eigenvalues(&table.truncated(n_max))?;
    let polys = (0..=n_max)
        .map(|n| eigenpoly_recursive(table, n))
        .collect::<Result<Vec<_>>>()?;
    EigenSystem::new(lambdas, polys)
}

/// Entry `(row, col)` (1-based, `col >= row - 1`) of the Hessenberg matrix
/// whose leading `i × i` block has determinant `b_{n,n-i}`:
/// `δ_{n+1-row}^(col+1-row) / (λ_n - λ_{n-col})` on and above the diagonal,
/// `-1` on the subdiagonal.
fn coefficient_matrix_entry(table: &DeltaTable, gaps: &[ExactScalar], n: usize, row: usize, col: usize) -> ExactScalar {
    if row == col + 1 {
        return -ExactScalar::one();
    }
    let k = col + 1 - row;
    if table.order().is_some_and(|order| k > order) {
        return ExactScalar::zero();
    }
    let d = table.get(n + 1 - row, k);
    if d.is_zero() {
        return ExactScalar::zero();
    }
    d / &gaps[col]
}

/// `b_{n,n-i}` as the determinant of an `i × i` upper Hessenberg matrix,
/// for `1 <= i <= n`. `lambdas` must agree with column zero of the table.
pub fn eigenpoly_coeff_det(table: &DeltaTable, lambdas: &[ExactScalar], n: usize, i: usize) -> Result<ExactScalar> {
    if i == 0 || i > n {
        return Err(Error::Domain(format!("coefficient depth i = {i} outside 1..={n}")));
    }
    require_rows(table, n)?;
    if lambdas.len() <= n {
        return Err(Error::InsufficientData(format!("need eigenvalues up to lambda_{n}")));
    }
    if let Some(m) = (0..=n).find(|&m| &lambdas[m] != table.get(m, 0)) {
        return Err(Error::Domain(format!("lambda_{m} disagrees with δ_{m}^(0)")));
    }
    let gaps = gaps(table, n, i)?;
    let minors = hessenberg::leading_minors(i, |r, c| coefficient_matrix_entry(table, &gaps, n, r, c));
    Ok(minors[i].clone())
}

/// All coefficients of `P_n` from the leading minors of one `n × n`
/// Hessenberg matrix. Same output as [`eigenpoly_recursive`].
pub fn eigenpoly_det(table: &DeltaTable, n: usize) -> Result<Poly> {
    require_rows(table, n)?;
    let gaps = gaps(table, n, n)?;
    let minors = hessenberg::leading_minors(n, |r, c| coefficient_matrix_entry(table, &gaps, n, r, c));
    // minors[i] = b_{n,n-i}
    Ok(Poly::new(minors.into_iter().rev().collect()))
}

/// Extends the seed rows `δ_k^(k), ..., δ_N^(k)` of an order-`N` operator:
///
/// ```text
/// δ_n^(k) = Σ_{i=k}^{N} (-1)^(N-i) C(n,i) C(n-i-1, N-i) δ_i^(k),   n >= N+1,
/// δ_n^(k) = 0,                                                     k > N.
/// ```
pub fn delta_extend(seed: &DeltaTable, order: usize, n: usize, k: usize) -> Result<ExactScalar> {
    if k > order {
        return Ok(ExactScalar::zero());
    }
    if n <= order {
        return Err(Error::Domain(format!(
            "extension is defined for n >= {}, got n = {n}",
            order + 1
        )));
    }
    if seed.len() <= order {
        return Err(Error::InsufficientData(format!(
            "seed needs rows 0..={order}, has {}",
            seed.len()
        )));
    }
    let n_i = n as i64;
    let total = (k..=order)
        .map(|i| {
            let d = seed.get(i, k);
            if d.is_zero() {
                return ExactScalar::zero();
            }
            let i_i = i as i64;
            let w = sign((order - i) as i64) * binom_int(n, i_i) * binom_or_zero(n_i - i_i - 1, (order - i) as i64);
            d * &ExactScalar::from(w)
        })
        .sum();
    Ok(total)
}

/// Table rows `0..=n_max`: the seed rows up to `N`, extended beyond.
pub fn extend_table(seed: &DeltaTable, order: usize, n_max: usize) -> Result<DeltaTable> {
    if seed.len() <= order {
        return Err(Error::InsufficientData(format!(
            "seed needs rows 0..={order}, has {}",
            seed.len()
        )));
    }
    let mut table = DeltaTable::new(Some(order));
    for n in 0..=n_max {
        let row = if n <= order {
            (0..=n).map(|k| seed.get(n, k).clone()).collect()
        } else {
            (0..=order)
                .map(|k| delta_extend(seed, order, n, k))
                .collect::<Result<Vec<_>>>()?
        };
        table.push_row(row)?;
    }
    Ok(table)
}

/// For order-2 operators: `λ_n = -n(n-2) λ_1 + n(n-1)/2 λ_2`.
pub fn lambda_via_n2_identity(lambda1: &ExactScalar, lambda2: &ExactScalar, n: usize) -> ExactScalar {
    let n = n as i64;
    let c1 = ExactScalar::from(-n * (n - 2));
    let c2 = ExactScalar::real(Rational::from_parts_signed((n * (n - 1)).into(), 2.into()));
    &(&c1 * lambda1) + &(&c2 * lambda2)
}
