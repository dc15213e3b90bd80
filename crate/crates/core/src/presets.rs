//! Classical second-order operators, normalized so that
//! Hermite has `λ_n = -2n`, Laguerre `λ_n = -n` and Jacobi
//! `λ_n = -n(n + 1 + α + β)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::operator::BochnerOperator;
use crate::poly::Poly;
use crate::shapiro::ShapiroOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    Hermite,
    Laguerre,
    Jacobi,
    Shapiro,
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hermite" => Ok(PresetName::Hermite),
            "laguerre" => Ok(PresetName::Laguerre),
            "jacobi" => Ok(PresetName::Jacobi),
            "shapiro" => Ok(PresetName::Shapiro),
            other => Err(Error::Parse(format!("unknown preset {other:?}"))),
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetName::Hermite => "hermite",
            PresetName::Laguerre => "laguerre",
            PresetName::Jacobi => "jacobi",
            PresetName::Shapiro => "shapiro",
        })
    }
}

/// `∂² - 2x ∂`
pub fn hermite() -> BochnerOperator {
    BochnerOperator::new(vec![Poly::zero(), Poly::from_ints(&[0, -2]), Poly::from_ints(&[1])]).expect("valid operator")
}

/// `x ∂² + (α + 1 - x) ∂`. The classical range is `α > -1`; it is not
/// enforced since the algebra does not need it.
pub fn laguerre(alpha: &ExactScalar) -> BochnerOperator {
    let a1 = Poly::new(vec![alpha + &ExactScalar::one(), -ExactScalar::one()]);
    BochnerOperator::new(vec![Poly::zero(), a1, Poly::x()]).expect("valid operator")
}

/// `(1 - x²) ∂² + (β - α - (α + β + 2) x) ∂`
pub fn jacobi(alpha: &ExactScalar, beta: &ExactScalar) -> BochnerOperator {
    let two = ExactScalar::from(2);
    let a1 = Poly::new(vec![beta - alpha, -&(&(alpha + beta) + &two)]);
    let a2 = Poly::from_ints(&[1, 0, -1]);
    BochnerOperator::new(vec![Poly::zero(), a1, a2]).expect("valid operator")
}

/// Parses `"c1,c2,...,cN"`.
pub fn parse_c_list(text: &str) -> Result<Vec<ExactScalar>> {
    text.split(',').map(|c| c.trim().parse::<ExactScalar>()).collect()
}

pub fn shapiro(c: &str) -> Result<ShapiroOperator> {
    ShapiroOperator::new(parse_c_list(c)?)
}

/// Builds a preset; `alpha`/`beta` default to zero, `c` is required for
/// the Shapiro operator.
pub fn build(
    name: PresetName,
    alpha: Option<&ExactScalar>,
    beta: Option<&ExactScalar>,
    c: Option<&str>,
) -> Result<BochnerOperator> {
    let zero = ExactScalar::zero();
    let alpha = alpha.unwrap_or(&zero);
    let beta = beta.unwrap_or(&zero);
    match name {
        PresetName::Hermite => Ok(hermite()),
        PresetName::Laguerre => Ok(laguerre(alpha)),
        PresetName::Jacobi => Ok(jacobi(alpha, beta)),
        PresetName::Shapiro => {
            let c = c.ok_or_else(|| Error::Parse("the shapiro preset needs --c c1,...,cN".into()))?;
            Ok(shapiro(c)?.to_bochner())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::deltas_from_operator;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn laguerre_shape() {
        let text = serde_json::to_string(&laguerre(&s("0"))).unwrap();
        assert_eq!(text, r#"{"N":2,"a":[["0"],["1","-1"],["0","1"]]}"#);
    }

    #[test]
    fn jacobi_eigenvalues() {
        let (a, b) = (s("1/2"), s("1/3"));
        let table = deltas_from_operator(&jacobi(&a, &b), 10);
        for n in 0..=10i64 {
            let n_s = ExactScalar::from(n);
            let expected = -&(&n_s * &(&(&n_s + &s("1")) + &(&a + &b)));
            assert_eq!(table.get(n as usize, 0), &expected);
        }
    }

    #[test]
    fn c_lists() {
        assert_eq!(parse_c_list("1, 0 ,1/2").unwrap(), vec![s("1"), s("0"), s("1/2")]);
        assert!(parse_c_list("1,,2").is_err());
        assert!(shapiro("1,0").is_err());
        assert_eq!(shapiro("1,0,1/2").unwrap().order(), 3);
        assert!(build(PresetName::Shapiro, None, None, None).is_err());
        assert!("legendre".parse::<PresetName>().is_err());
    }
}
