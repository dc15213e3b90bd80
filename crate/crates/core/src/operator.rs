//! Bochner operators `L = Σ_{i=0}^{N} a_i(x) ∂^i` with `deg a_i <= i`, and the
//! δ-table that encodes them.
//!
//! The table is defined by `L x^n = Σ_k δ_n^(k) x^(n-k)`, which gives
//!
//! ```text
//! δ_n^(k) = Σ_{i=k}^{n} C(n,i) i! a_{i,i-k}
//! ```
//!
//! and, inverting the binomial transform,
//!
//! ```text
//! n! a_{n,n-k} = Σ_{i=k}^{n} C(n,i) (-1)^(n-i) δ_i^(k).
//! ```

use dashu_int::IBig;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom_int, factorial, sign, ExactScalar, Rational};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BochnerOperator {
    coeffs: Vec<Poly>,
}

impl BochnerOperator {
    /// `coeffs[i]` multiplies `∂^i`. Requires `deg a_i <= i`, order at least
    /// one, and a nonzero top coefficient.
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidOperator(
                "an operator needs at least the coefficients a_0 and a_1".into(),
            ));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if let Some(d) = a.degree() {
                if d > i {
                    return Err(Error::InvalidOperator(format!(
                        "Bochner condition violated: deg a_{i} = {d} > {i}"
                    )));
                }
            }
        }
        if coeffs.last().is_some_and(Poly::is_zero) {
            return Err(Error::InvalidOperator(format!(
                "leading coefficient a_{} is identically zero",
                coeffs.len() - 1
            )));
        }
        Ok(BochnerOperator { coeffs })
    }

    /// Drops identically-zero top coefficients before validating.
    pub fn new_trimmed(mut coeffs: Vec<Poly>) -> Result<Self> {
        while coeffs.len() > 2 && coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `a_{i,j}`, the coefficient of `x^j` in `a_i`; zero for `i > N`.
    pub fn coeff(&self, i: usize, j: usize) -> ExactScalar {
        self.coeffs.get(i).map(|a| a.coeff(j)).unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Moves the constant `a_0` out of the operator. Returns the normalized
    /// operator and the removed constant `c`; every eigenvalue of `self` is
    /// the matching eigenvalue of the result plus `c`.
    pub fn normalize(&self) -> (BochnerOperator, ExactScalar) {
        let c = self.coeffs[0].coeff(0);
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = Poly::zero();
        (BochnerOperator { coeffs }, c)
    }
}

/// Raw operator-spec document: `{ "N": 2, "a": [[...], [...], [...]] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    #[serde(rename = "N")]
    pub order: usize,
    pub a: Vec<Poly>,
}

impl From<&BochnerOperator> for OperatorSpec {
    fn from(op: &BochnerOperator) -> Self {
        OperatorSpec {
            order: op.order(),
            a: op.coeffs.clone(),
        }
    }
}

impl TryFrom<OperatorSpec> for BochnerOperator {
    type Error = Error;

    fn try_from(spec: OperatorSpec) -> Result<Self> {
        if spec.a.len() != spec.order + 1 {
            return Err(Error::InvalidOperator(format!(
                "N = {} requires {} coefficient polynomials, found {}",
                spec.order,
                spec.order + 1,
                spec.a.len()
            )));
        }
        BochnerOperator::new(spec.a)
    }
}

impl Serialize for BochnerOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorSpec::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BochnerOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = OperatorSpec::deserialize(deserializer)?;
        BochnerOperator::try_from(spec).map_err(serde::de::Error::custom)
    }
}

/// Triangular table `δ_n^(k)`, `0 <= k <= n <= n_max`.
///
/// When tagged with an order `N`, row `n` stores only `k <= min(n, N)`; the
/// remaining entries are zero.
#[derive(Clone, Debug)]
pub struct DeltaTable {
    rows: Vec<Vec<ExactScalar>>,
    order: Option<usize>,
    zero: ExactScalar,
}

impl DeltaTable {
    pub fn new(order: Option<usize>) -> Self {
        DeltaTable {
            rows: Vec::new(),
            order,
            zero: ExactScalar::zero(),
        }
    }

    /// Builds an untagged table from full rows (`rows[n]` has `n + 1`
    /// entries).
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let mut table = DeltaTable::new(None);
        for row in rows {
            table.push_row(row)?;
        }
        Ok(table)
    }

    /// Appends row `n = self.len()`. Tagged tables accept full rows as long
    /// as the entries past the order are zero.
    pub fn push_row(&mut self, mut row: Vec<ExactScalar>) -> Result<()> {
        let n = self.rows.len();
        let stored = self.stored_width(n);
        if row.len() != stored && row.len() != n + 1 {
            return Err(Error::InsufficientData(format!(
                "row {n} of a δ-table needs {} entries, got {}",
                stored,
                row.len()
            )));
        }
        if row.len() > stored {
            if let Some(k) = (stored..row.len()).find(|&k| !row[k].is_zero()) {
                return Err(Error::InvalidOperator(format!(
                    "δ_{n}^({k}) must vanish for a table of order {}",
                    self.order.unwrap_or_default()
                )));
            }
            row.truncate(stored);
        }
        self.rows.push(row);
        Ok(())
    }

    fn stored_width(&self, n: usize) -> usize {
        match self.order {
            Some(order) => n.min(order) + 1,
            None => n + 1,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Number of rows, i.e. `n_max + 1`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_max(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// `δ_n^(k)`, or `None` past the last row.
    pub fn try_get(&self, n: usize, k: usize) -> Option<&ExactScalar> {
        let row = self.rows.get(n)?;
        Some(row.get(k).unwrap_or(&self.zero))
    }

    /// `δ_n^(k)`. Panics when row `n` is missing.
    pub fn get(&self, n: usize, k: usize) -> &ExactScalar {
        self.try_get(n, k)
            .unwrap_or_else(|| panic!("δ-table has no row {n} (n_max = {:?})", self.n_max()))
    }

    /// Column `k = 0`, which holds the eigenvalues.
    pub fn diagonal_zero(&self) -> Vec<ExactScalar> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }

    /// Full triangular rows, zeros included.
    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.len())
            .map(|n| (0..=n).map(|k| self.get(n, k).clone()).collect())
            .collect()
    }

    pub fn truncated(&self, n_max: usize) -> DeltaTable {
        DeltaTable {
            rows: self.rows.iter().take(n_max + 1).cloned().collect(),
            order: self.order,
            zero: ExactScalar::zero(),
        }
    }
}

impl PartialEq for DeltaTable {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && (0..self.len()).all(|n| (0..=n).all(|k| self.get(n, k) == other.get(n, k)))
    }
}

impl Eq for DeltaTable {}

impl Serialize for DeltaTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DeltaTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<ExactScalar>>::deserialize(deserializer)?;
        DeltaTable::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// `n! / (n - i)!`, i.e. `C(n, i) i!`.
fn falling(n: usize, i: usize) -> IBig {
    ((n - i + 1)..=n).map(IBig::from).product()
}

/// The δ-table of `op` for `n <= n_max`, tagged with the operator's order.
/// The constant `a_0` enters `δ_n^(0)` unchanged, so callers wanting
/// `λ_0 = 0` pass a normalized operator.
pub fn deltas_from_operator(op: &BochnerOperator, n_max: usize) -> DeltaTable {
    let order = op.order();
    let mut table = DeltaTable::new(Some(order));
    for n in 0..=n_max {
        let row = (0..=n.min(order))
            .map(|k| {
                (k..=n.min(order))
                    .map(|i| {
                        let a = op.coeff(i, i - k);
                        if a.is_zero() {
                            a
                        } else {
                            a * ExactScalar::from(falling(n, i))
                        }
                    })
                    .sum()
            })
            .collect();
        table.push_row(row).expect("row width matches the tag");
    }
    table
}

/// `a_{n,n-k} = (1/n!) Σ_{i=k}^{n} C(n,i) (-1)^(n-i) δ_i^(k)`.
///
/// Requires rows `0..=n` of the table.
pub fn operator_coeffs_from_deltas(table: &DeltaTable, n: usize, k: usize) -> Result<ExactScalar> {
    if table.len() <= n {
        return Err(Error::InsufficientData(format!(
            "need δ-table rows up to n = {n}, have {}",
            table.len()
        )));
    }
    if k > n {
        return Ok(ExactScalar::zero());
    }
    let sum: ExactScalar = (k..=n)
        .map(|i| {
            let d = table.get(i, k);
            if d.is_zero() {
                return ExactScalar::zero();
            }
            let w = binom_int(n, i as i64) * sign((n - i) as i64);
            d * &ExactScalar::from(w)
        })
        .sum();
    Ok(sum.scale(&Rational::from_parts_signed(IBig::one(), factorial(n))))
}

/// Recovers `a_0, ..., a_N` from the first `N + 1` rows of the table.
/// Identically-zero top coefficients are dropped, so the result may have
/// order below `order` when the table admits it.
pub fn operator_from_deltas(table: &DeltaTable, order: usize) -> Result<BochnerOperator> {
    if order == 0 {
        return Err(Error::InvalidOperator("order must be positive".into()));
    }
    if table.len() <= order {
        return Err(Error::InsufficientData(format!(
            "an order-{order} operator needs δ-table rows 0..={order}, have {}",
            table.len()
        )));
    }
    let coeffs = (0..=order)
        .map(|n| {
            let mut a = vec![ExactScalar::zero(); n + 1];
            for k in 0..=n {
                a[n - k] = operator_coeffs_from_deltas(table, n, k)?;
            }
            Ok(Poly::new(a))
        })
        .collect::<Result<Vec<_>>>()?;
    BochnerOperator::new_trimmed(coeffs)
}
