//! Recurrence relations `x P_n = P_{n+1} + Σ_{k<=n} α_{n,k} P_k` of a monic
//! family, and detection of a finite band (a `(p+2)`-term relation).
//!
//! Comparing coefficients of `x^i` turns the relation for fixed `n` into the
//! triangular system
//!
//! ```text
//! Σ_{s=0}^{n} α_{n,n-s} b_{n-s,i} = b_{n,i-1} - b_{n+1,i},   i = 0..n+1,
//! ```
//!
//! solved top-down from `i = n`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::poly::Poly;
use crate::spectral::EigenSystem;

/// Triangular table `α_{n,k}`, `0 <= k <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<ExactScalar>>", into = "Vec<Vec<ExactScalar>>")]
pub struct RecurrenceCoeffs {
    rows: Vec<Vec<ExactScalar>>,
}

impl TryFrom<Vec<Vec<ExactScalar>>> for RecurrenceCoeffs {
    type Error = Error;
    fn try_from(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        RecurrenceCoeffs::from_rows(rows)
    }
}

impl From<RecurrenceCoeffs> for Vec<Vec<ExactScalar>> {
    fn from(r: RecurrenceCoeffs) -> Self {
        r.rows
    }
}

impl RecurrenceCoeffs {
    /// `rows[n][k] = α_{n,k}`; row `n` must have `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InsufficientData("empty recurrence table".into()));
        }
        if let Some((n, row)) = rows.iter().enumerate().find(|(n, r)| r.len() != n + 1) {
            return Err(Error::InsufficientData(format!(
                "recurrence row {n} needs {} entries, got {}",
                n + 1,
                row.len()
            )));
        }
        Ok(RecurrenceCoeffs { rows })
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `α_{n,k}`; zero for `k > n`.
    pub fn get(&self, n: usize, k: usize) -> ExactScalar {
        self.rows[n].get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// `α_{n,n-s}`; zero when `s > n`.
    pub fn below_diagonal(&self, n: usize, s: usize) -> ExactScalar {
        match n.checked_sub(s) {
            Some(k) => self.rows[n][k].clone(),
            None => ExactScalar::zero(),
        }
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        &self.rows
    }

    /// Overwrites one entry; used to build perturbed tables.
    pub fn set(&mut self, n: usize, k: usize, value: ExactScalar) {
        self.rows[n][k] = value;
    }

    /// Rows of the band `[α_{n,n}, α_{n,n-1}, ..., α_{n,n-p}]`, truncated
    /// where `n - s < 0`.
    pub fn band(&self, p: usize) -> Vec<Vec<ExactScalar>> {
        (0..self.rows.len())
            .map(|n| (0..=p.min(n)).map(|s| self.below_diagonal(n, s)).collect())
            .collect()
    }

    /// Largest `s` with `α_{n,n-s} != 0`, or `None` for an all-zero row.
    pub fn row_width(&self, n: usize) -> Option<usize> {
        self.rows[n].iter().position(|a| !a.is_zero()).map(|k| n - k)
    }
}

/// Outcome of checking a recurrence as a polynomial identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceCheck {
    Holds,
    /// The identity for `n` leaves a nonzero coefficient of `x^power`.
    Fails {
        n: usize,
        power: usize,
    },
}

impl RecurrenceCheck {
    pub fn holds(self) -> bool {
        self == RecurrenceCheck::Holds
    }
}

/// Checks `Σ_{s=1}^{depth} α_{n,n-s} P_{n-s} + (α_{n,n} - x) P_n + P_{n+1} = 0`
/// coefficient by coefficient for `n = 0..=n_max`, with `P_m = 0` for `m < 0`.
/// `alpha(n, s)` returns `α_{n,n-s}`; it is only called with `s <= n`.
pub fn check_recurrence<F>(polys: &[Poly], n_max: usize, depth: usize, mut alpha: F) -> Result<RecurrenceCheck>
where
    F: FnMut(usize, usize) -> ExactScalar,
{
    if polys.len() < n_max + 2 {
        return Err(Error::InsufficientData(format!(
            "checking rows up to n = {n_max} needs P_0..P_{}, have {} polynomials",
            n_max + 1,
            polys.len()
        )));
    }
    for n in 0..=n_max {
        let mut residual = &polys[n + 1] - &polys[n].shift_up(1);
        for s in 0..=depth.min(n) {
            let a = alpha(n, s);
            if !a.is_zero() {
                residual = &residual + &polys[n - s].scale(&a);
            }
        }
        if let Some(power) = residual.degree() {
            // report the lowest offending power
            let power = (0..=power).find(|&i| !residual.coeff(i).is_zero()).unwrap_or(power);
            return Ok(RecurrenceCheck::Fails { n, power });
        }
    }
    Ok(RecurrenceCheck::Holds)
}

fn validate_family(polys: &[Poly]) -> Result<()> {
    if polys.len() < 2 {
        return Err(Error::InsufficientData(
            "fitting a recurrence needs at least P_0 and P_1".into(),
        ));
    }
    for (n, p) in polys.iter().enumerate() {
        if p.degree() != Some(n) || !p.is_monic() {
            return Err(Error::InvalidEigenSystem(format!("P_{n} must be monic of degree {n}")));
        }
    }
    Ok(())
}

/// Fits `α_{n,k}` for `n = 0..=len-2` from a monic family `P_0, P_1, ...`.
pub fn fit_recurrence_polys(polys: &[Poly]) -> Result<RecurrenceCoeffs> {
    validate_family(polys)?;
    let b = |m: usize, i: usize| polys[m].coeff_ref(i);
    let n_max = polys.len() - 2;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![ExactScalar::zero(); n + 1];
        for j in 0..=n {
            let target = n - j;
            let mut value = match target.checked_sub(1) {
                Some(i) => b(n, i).cloned().unwrap_or_else(ExactScalar::zero),
                None => ExactScalar::zero(),
            };
            if let Some(c) = b(n + 1, target) {
                value -= c;
            }
            for s in 0..j {
                let a = &row[n - s];
                if a.is_zero() {
                    continue;
                }
                if let Some(c) = b(n - s, target) {
                    if !c.is_zero() {
                        value -= &(a * c);
                    }
                }
            }
            // b_{n-j,n-j} = 1
            debug_assert!(b(target, target).is_some_and(One::is_one));
            row[target] = value;
        }
        rows.push(row);
    }
    Ok(RecurrenceCoeffs { rows })
}

/// Fits the recurrence of an eigen-family; row `n_max` of the result uses
/// the last polynomial as `P_{n+1}`.
pub fn fit_recurrence(system: &EigenSystem) -> Result<RecurrenceCoeffs> {
    fit_recurrence_polys(system.polys())
}

/// Smallest `p` with `α_{n,n-s} = 0` for all `s > p` and all rows
/// `n_start..=n_max`. A band only counts as detected when some row of the
/// window is longer than it (`n > p`), i.e. the zero tail was actually
/// observed; otherwise `None`.
pub fn bandwidth(coeffs: &RecurrenceCoeffs, n_start: usize) -> Option<usize> {
    if n_start > coeffs.n_max() {
        return None;
    }
    let window = n_start..=coeffs.n_max();
    let p = window.clone().filter_map(|n| coeffs.row_width(n)).max().unwrap_or(0);
    window.into_iter().any(|n| n > p).then_some(p)
}
