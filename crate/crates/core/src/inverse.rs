//! The inverse problem: given eigenvalues `λ_n` and monic polynomials `P_n`,
//! decide whether a Bochner operator of order `N` has them as eigen-data,
//! and build it when it does.
//!
//! The δ-table is recovered from the data, either as a Hessenberg
//! determinant or by the row recursion
//!
//! ```text
//! δ_n^(K) = (λ_n - λ_{n-K}) b_{n,n-K} - Σ_{k=1}^{K-1} δ_{n-K+k}^(k) b_{n,n-K+k},
//! ```
//!
//! and an order-`N` operator exists exactly when the table obeys the
//! order-`N` extension rule (see [`crate::spectral::delta_extend`]).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{sign, ExactScalar};
use crate::hessenberg;
use crate::operator::{operator_from_deltas, BochnerOperator, DeltaTable};
use crate::poly::is_eigenpair;
use crate::spectral::{check_spectrum, delta_extend, EigenSystem};

pub use crate::operator::operator_coeffs_from_deltas;

/// Prescribed eigen-data. Same shape rules as a computed [`EigenSystem`].
pub type EigenData = EigenSystem;

fn require_degree(data: &EigenData, n: usize) -> Result<()> {
    if n > data.n_max() {
        return Err(Error::InsufficientData(format!(
            "eigen-data stops at degree {}, degree {n} requested",
            data.n_max()
        )));
    }
    Ok(())
}

/// `δ_n^(k)` as `(-1)^k` times a `k × k` upper Hessenberg determinant.
///
/// With `m = n - k`, the first row is `(λ_m - λ_{m+c}) b_{m+c,m}` and row
/// `r >= 2` is `b_{m+c,m+r-1}` (column `c`), which puts the unit
/// leading coefficients on the subdiagonal.
pub fn deltas_from_eigendata_det(data: &EigenData, n: usize, k: usize) -> Result<ExactScalar> {
    require_degree(data, n)?;
    if k == 0 {
        return Ok(data.lambdas()[n].clone());
    }
    if k > n {
        return Ok(ExactScalar::zero());
    }
    let m = n - k;
    let lambdas = data.lambdas();
    let minors = hessenberg::leading_minors(k, |r, c| {
        if r == 1 {
            let b = data.b(m + c, m);
            if b.is_zero() {
                b
            } else {
                &(&lambdas[m] - &lambdas[m + c]) * &b
            }
        } else {
            data.b(m + c, m + r - 1)
        }
    });
    let det = &minors[k];
    Ok(if sign(k as i64) < 0 { -det } else { det.clone() })
}

/// The full untagged δ-table for `n <= n_max`, row by row.
pub fn deltas_from_eigendata_rec(data: &EigenData, n_max: usize) -> Result<DeltaTable> {
    require_degree(data, n_max)?;
    let lambdas = data.lambdas();
    let mut table = DeltaTable::new(None);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        row.push(lambdas[n].clone());
        for big_k in 1..=n {
            let low = n - big_k;
            let b = data.b(n, low);
            let mut value = if b.is_zero() {
                b
            } else {
                &(&lambdas[n] - &lambdas[low]) * &b
            };
            for k in 1..big_k {
                let d = table.get(low + k, k);
                if d.is_zero() {
                    continue;
                }
                let b = data.b(n, low + k);
                if !b.is_zero() {
                    value -= &(d * &b);
                }
            }
            row.push(value);
        }
        table.push_row(row)?;
    }
    Ok(table)
}

/// First `(n, k)` in `N+1..=n_max` where the table breaks the order-`N`
/// extension rule, or `None` when it holds throughout.
pub fn finite_order_violation(table: &DeltaTable, order: usize, n_max: usize) -> Result<Option<(usize, usize)>> {
    if order == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    if n_max <= order {
        return Err(Error::InsufficientData(format!(
            "testing order {order} needs data beyond degree {order}, window ends at {n_max}"
        )));
    }
    if table.len() <= n_max {
        return Err(Error::InsufficientData(format!(
            "δ-table has rows 0..{}, window ends at {n_max}",
            table.len()
        )));
    }
    for n in order + 1..=n_max {
        for k in 0..=n {
            let expected = if k <= order {
                delta_extend(table, order, n, k)?
            } else {
                ExactScalar::zero()
            };
            if table.get(n, k) != &expected {
                return Ok(Some((n, k)));
            }
        }
    }
    Ok(None)
}

/// True iff the table is consistent with an operator of order at most `N`
/// for every degree up to `n_max`.
pub fn finite_order_test(table: &DeltaTable, order: usize, n_max: usize) -> Result<bool> {
    Ok(finite_order_violation(table, order, n_max)?.is_none())
}

/// Rebuilds the order-`N` operator from eigen-data covering degrees
/// `0..=m_max`, `m_max >= N + 1`. The result may have lower order when the
/// data allow it. Every prescribed eigenpair is re-checked against the
/// result with the symbolic oracle.
pub fn reconstruct(data: &EigenData, order: usize) -> Result<BochnerOperator> {
    let m_max = data.n_max();
    if m_max <= order {
        return Err(Error::InsufficientData(format!(
            "order {order} needs eigen-data up to degree {}, have {m_max}",
            order + 1
        )));
    }
    check_spectrum(data.lambdas())?;
    let table = deltas_from_eigendata_rec(data, m_max)?;
    if let Some((n, k)) = finite_order_violation(&table, order, m_max)? {
        return Err(Error::NoFiniteOrderOperator { order, n, k });
    }
    let op = operator_from_deltas(&table, order)?;
    if let Some(n) = (0..=m_max).find(|&n| !is_eigenpair(&op, &data.polys()[n], &data.lambdas()[n])) {
        return Err(Error::EigenpairMismatch(n));
    }
    Ok(op)
}

/// Smallest order `N` in `1..m_max` whose criterion passes, with the
/// operator it yields.
pub fn search_order(data: &EigenData) -> Result<Option<(usize, BochnerOperator)>> {
    let m_max = data.n_max();
    check_spectrum(data.lambdas())?;
    let table = deltas_from_eigendata_rec(data, m_max)?;
    for order in 1..m_max {
        if finite_order_violation(&table, order, m_max)?.is_none() {
            return reconstruct(data, order).map(|op| Some((order, op)));
        }
    }
    Ok(None)
}
