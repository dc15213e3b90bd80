//! Exact residual checkers for the binomial identities the δ-calculus rests on.
//!
//! Each checker evaluates the left- and right-hand sides separately, by
//! direct summation, and returns their difference. Nothing is simplified
//! symbolically, so an error on one side cannot cancel against the other.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use dashu_int::IBig;
use num_traits::{One, Zero};

use super::combinatorics::{binom_int, binom_or_zero, factorial, sign};
use super::{ExactScalar, Rational};
use crate::error::{Error, Result};

/// Named integer parameters of an identity instance.
pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `Σ_{r=k}^{m+1} (-1)^{r-k} C(r,k) C(m+1,r) = 0` for `0 <= k <= m`.
    BinomialOrthogonality,
    /// `Σ_{r=0}^{m} (-1)^r C(m+k+1,r) = (-1)^m C(m+k,k)`.
    AlternatingPartialSum,
    /// `Σ_{j=0}^{k-1} C(k-1,j) (-1)^j / (j+m+1) = 1 / (k C(m+k,k))`.
    ReciprocalBetaSum,
    /// `Σ_{s=0}^{q} (-1)^s C(q,s) C(n-q+s,r)` is `0` for `r < q` and
    /// `(-1)^q C(n-q,r-q)` otherwise.
    ShiftedDifference,
    /// `Σ_{s=1}^{m+1} s/(s+k) (-1)^s C(m+1,s) C(n-m+s,r) = -C(n-m-k,r) / C(m+k+1,k)`.
    WeightedDifference,
    /// Partial fractions of `1 / ((1-s)(2-s)...(d+1-s))` with `d = n - order`.
    PartialFractions,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::BinomialOrthogonality,
        Identity::AlternatingPartialSum,
        Identity::ReciprocalBetaSum,
        Identity::ShiftedDifference,
        Identity::WeightedDifference,
        Identity::PartialFractions,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::BinomialOrthogonality => "binomial-orthogonality",
            Identity::AlternatingPartialSum => "alternating-partial-sum",
            Identity::ReciprocalBetaSum => "reciprocal-beta-sum",
            Identity::ShiftedDifference => "shifted-difference",
            Identity::WeightedDifference => "weighted-difference",
            Identity::PartialFractions => "partial-fractions",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Identity::BinomialOrthogonality | Identity::AlternatingPartialSum => &["m", "k"],
            Identity::ReciprocalBetaSum => &["k", "m"],
            Identity::ShiftedDifference => &["n", "q", "r"],
            Identity::WeightedDifference => &["n", "m", "r", "k"],
            Identity::PartialFractions => &["n", "order", "s_num", "s_den"],
        }
    }

    /// The grid swept by default. Tuples outside the identity's domain are
    /// skipped by the sweep, not evaluated.
    pub fn default_ranges(self) -> Vec<(&'static str, RangeInclusive<i64>)> {
        match self {
            Identity::BinomialOrthogonality => vec![("m", 0..=12), ("k", 0..=12)],
            Identity::AlternatingPartialSum => vec![("m", 0..=12), ("k", 0..=8)],
            Identity::ReciprocalBetaSum => vec![("k", 1..=10), ("m", 1..=10)],
            Identity::ShiftedDifference => vec![("n", 0..=10), ("q", 0..=10), ("r", 0..=12)],
            Identity::WeightedDifference => {
                vec![("n", 0..=10), ("m", 0..=10), ("r", 0..=10), ("k", 0..=10)]
            }
            Identity::PartialFractions => vec![("n", 0..=16), ("order", 0..=4), ("s_num", -12..=12), ("s_den", 1..=4)],
        }
    }

    /// Ok when `params` lies in the range where the identity is claimed.
    pub fn check_domain(self, params: &Params) -> Result<()> {
        let p = |name: &str| get(params, name);
        let ok = match self {
            Identity::BinomialOrthogonality => {
                let (m, k) = (p("m")?, p("k")?);
                m >= 0 && (0..=m).contains(&k)
            }
            Identity::AlternatingPartialSum => p("m")? >= 0 && p("k")? >= 0,
            Identity::ReciprocalBetaSum => p("k")? >= 1 && p("m")? >= 1,
            Identity::ShiftedDifference => {
                let (n, q, r) = (p("n")?, p("q")?, p("r")?);
                n >= 0 && (0..=n).contains(&q) && r >= 0
            }
            Identity::WeightedDifference => {
                let (n, m, r, k) = (p("n")?, p("m")?, p("r")?, p("k")?);
                0 <= r && r <= m && m <= n && (0..=n - m).contains(&k)
            }
            Identity::PartialFractions => {
                let (n, order, s_num, s_den) = (p("n")?, p("order")?, p("s_num")?, p("s_den")?);
                if order < 0 || n < order || s_den < 1 {
                    false
                } else {
                    let s = Rational::from_parts_signed(s_num.into(), s_den.into());
                    !(s.is_int() && (1..=n - order + 1).contains(&to_i64(&s)))
                }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} is not claimed for {}",
                self.id(),
                format_params(params)
            )))
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity {s:?}")))
    }
}

pub fn format_params(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn get(params: &Params, name: &str) -> Result<i64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Error::Domain(format!("missing parameter {name:?}")))
}

fn to_i64(r: &Rational) -> i64 {
    i64::try_from(r.numerator()).expect("integer parameter out of range")
}

fn int(v: IBig) -> Rational {
    Rational::from(v)
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::from_parts_signed(n.into(), d.into())
}

/// `LHS - RHS` of the identity at `params`; zero throughout the domain.
pub fn lemma_residual(id: Identity, params: &Params) -> Result<ExactScalar> {
    id.check_domain(params)?;
    let p = |name: &str| get(params, name).map(|v| v as usize);
    let (lhs, rhs) = match id {
        Identity::BinomialOrthogonality => {
            let (m, k) = (p("m")?, p("k")?);
            let lhs: IBig = (k..=m + 1)
                .map(|r| sign((r - k) as i64) * binom_int(r, k as i64) * binom_int(m + 1, r as i64))
                .sum();
            (int(lhs), Rational::zero())
        }
        Identity::AlternatingPartialSum => {
            let (m, k) = (p("m")?, p("k")?);
            let lhs: IBig = (0..=m).map(|r| sign(r as i64) * binom_int(m + k + 1, r as i64)).sum();
            (int(lhs), int(sign(m as i64) * binom_int(m + k, k as i64)))
        }
        Identity::ReciprocalBetaSum => {
            let (k, m) = (p("k")?, p("m")?);
            let lhs: Rational = (0..k)
                .map(|j| int(sign(j as i64) * binom_int(k - 1, j as i64)) / ratio((j + m + 1) as i64, 1))
                .fold(Rational::ZERO, |acc, t| acc + t);
            let rhs = int(IBig::one()) / int(IBig::from(k) * binom_int(m + k, k as i64));
            (lhs, rhs)
        }
        Identity::ShiftedDifference => {
            let (n, q, r) = (p("n")?, p("q")?, p("r")?);
            let lhs: IBig = (0..=q)
                .map(|s| sign(s as i64) * binom_int(q, s as i64) * binom_int(n - q + s, r as i64))
                .sum();
            let rhs = if r < q {
                IBig::zero()
            } else {
                sign(q as i64) * binom_int(n - q, (r - q) as i64)
            };
            (int(lhs), int(rhs))
        }
        Identity::WeightedDifference => {
            let (n, m, r, k) = (p("n")?, p("m")?, p("r")?, p("k")?);
            let lhs: Rational = (1..=m + 1)
                .map(|s| {
                    ratio(s as i64, (s + k) as i64)
                        * int(sign(s as i64) * binom_int(m + 1, s as i64) * binom_int(n - m + s, r as i64))
                })
                .fold(Rational::ZERO, |acc, t| acc + t);
            let rhs = -int(binom_or_zero((n - m - k) as i64, r as i64)) / int(binom_int(m + k + 1, k as i64));
            (lhs, rhs)
        }
        Identity::PartialFractions => {
            let d = (get(params, "n")? - get(params, "order")?) as usize;
            let s = ratio(get(params, "s_num")?, get(params, "s_den")?);
            let denominator: Rational = (1..=d + 1)
                .map(|j| ratio(j as i64, 1) - &s)
                .fold(Rational::ONE, |acc, t| acc * t);
            let lhs = Rational::ONE / denominator;
            let rhs: Rational = (1..=d + 1)
                .map(|i| {
                    let weight = int(factorial(d + 1 - i) * factorial(i - 1)) * (ratio(i as i64, 1) - &s);
                    ratio(sign(i as i64 - 1), 1) / weight
                })
                .fold(Rational::ZERO, |acc, t| acc + t);
            (lhs, rhs)
        }
    };
    Ok(ExactScalar::real(lhs - rhs))
}

/// Result of sweeping one identity over a rectangular grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub id: Identity,
    pub checked: usize,
    pub skipped: usize,
    /// First tuple with a nonzero residual, and the residual.
    pub counterexample: Option<(Params, ExactScalar)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Evaluates the residual at every tuple of the grid; out-of-domain tuples
/// are counted as skipped. Names missing from `ranges` fall back to the
/// default grid, unknown names are rejected.
pub fn sweep(id: Identity, ranges: &[(String, RangeInclusive<i64>)]) -> Result<SweepReport> {
    if let Some((name, _)) = ranges.iter().find(|(n, _)| !id.param_names().contains(&n.as_str())) {
        return Err(Error::Domain(format!("{} has no parameter {name:?}", id.id())));
    }
    let grid: Vec<(&str, RangeInclusive<i64>)> = id
        .default_ranges()
        .into_iter()
        .map(|(name, default)| {
            let range = ranges
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, r)| r.clone())
                .unwrap_or(default);
            (name, range)
        })
        .collect();
    let mut report = SweepReport {
        id,
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    let mut params = Params::new();
    visit(id, &grid, &mut params, &mut report)?;
    Ok(report)
}

fn visit(
    id: Identity,
    grid: &[(&str, RangeInclusive<i64>)],
    params: &mut Params,
    report: &mut SweepReport,
) -> Result<()> {
    let Some(((name, range), rest)) = grid.split_first() else {
        if id.check_domain(params).is_err() {
            report.skipped += 1;
            return Ok(());
        }
        let residual = lemma_residual(id, params)?;
        report.checked += 1;
        if !residual.is_zero() && report.counterexample.is_none() {
            report.counterexample = Some((params.clone(), residual));
        }
        return Ok(());
    };
    for v in range.clone() {
        params.insert(name.to_string(), v);
        visit(id, rest, params, report)?;
    }
    params.remove(*name);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn hand_checked_instances() {
        let r = lemma_residual(Identity::AlternatingPartialSum, &params(&[("m", 2), ("k", 1)]));
        assert!(r.unwrap().is_zero());
        let r = lemma_residual(Identity::ReciprocalBetaSum, &params(&[("k", 2), ("m", 1)]));
        assert!(r.unwrap().is_zero());
        let r = lemma_residual(Identity::ShiftedDifference, &params(&[("n", 5), ("q", 3), ("r", 2)]));
        assert!(r.unwrap().is_zero());
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let cases = [
            (Identity::BinomialOrthogonality, params(&[("m", 2), ("k", 3)])),
            (Identity::ReciprocalBetaSum, params(&[("k", 0), ("m", 1)])),
            (Identity::ShiftedDifference, params(&[("n", 2), ("q", 3), ("r", 0)])),
            (
                Identity::WeightedDifference,
                params(&[("n", 4), ("m", 2), ("r", 3), ("k", 0)]),
            ),
            (
                Identity::WeightedDifference,
                params(&[("n", 4), ("m", 2), ("r", 1), ("k", 3)]),
            ),
            (
                Identity::PartialFractions,
                params(&[("n", 5), ("order", 2), ("s_num", 4), ("s_den", 1)]),
            ),
            (
                Identity::PartialFractions,
                params(&[("n", 5), ("order", 2), ("s_num", 6), ("s_den", 2)]),
            ),
            (Identity::AlternatingPartialSum, params(&[("m", 2)])),
        ];
        for (id, p) in cases {
            assert!(matches!(lemma_residual(id, &p), Err(Error::Domain(_))), "{id} {p:?}");
        }
    }

    #[test]
    fn unknown_identity_name() {
        assert!(matches!("no-such-identity".parse::<Identity>(), Err(Error::Domain(_))));
        for id in Identity::ALL {
            assert_eq!(id.id().parse::<Identity>().unwrap(), id);
        }
    }

    #[test]
    fn partial_fractions_hold_at_noninteger_and_outside_points() {
        for (s_num, s_den) in [(1, 2), (-7, 3), (9, 1), (0, 1), (11, 4)] {
            let p = params(&[("n", 6), ("order", 2), ("s_num", s_num), ("s_den", s_den)]);
            assert!(lemma_residual(Identity::PartialFractions, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn a_wrong_right_hand_side_is_detected() {
        // Sanity check of the checker itself: C(n-q, r-q) without the sign
        // must leave a residual for odd q.
        let (n, q, r) = (6usize, 3usize, 4usize);
        let lhs: IBig = (0..=q)
            .map(|s| sign(s as i64) * binom_int(q, s as i64) * binom_int(n - q + s, r as i64))
            .sum();
        assert_ne!(lhs, binom_int(n - q, (r - q) as i64));
    }

    #[test]
    fn sweeps_count_and_skip() {
        let report = sweep(
            Identity::BinomialOrthogonality,
            &[("m".into(), 0..=2), ("k".into(), 0..=3)],
        )
        .unwrap();
        assert_eq!((report.checked, report.skipped), (6, 6));
        assert!(report.passed());
        assert!(sweep(Identity::BinomialOrthogonality, &[("z".into(), 0..=1)]).is_err());
        let total: usize = Identity::ALL.iter().map(|&id| sweep(id, &[]).unwrap().checked).sum();
        assert!(total >= 5000, "{total}");
    }
}
