//! Dense univariate polynomials over [`ExactScalar`].
//!
//! [`apply_operator`] expands `Σ a_i(x) p^(i)(x)` by plain polynomial
//! arithmetic. It shares no code with the δ-table machinery and serves as
//! the independent oracle for everything built on top of it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::IBig;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::ExactScalar;
use crate::operator::BochnerOperator;

/// `coeffs[i]` is the coefficient of `x^i`. Never stores trailing zeros, so
/// the zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Poly::new(vec![c])
    }

    /// `c x^power`.
    pub fn monomial(c: ExactScalar, power: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); power + 1];
        coeffs[power] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(ExactScalar::one(), 1)
    }

    /// Shorthand for small integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| ExactScalar::from(c)).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&ExactScalar> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &ExactScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x^shift * self`.
    pub fn shift_up(&self, shift: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Exact derivative of the given order.
    pub fn derivative(&self, order: usize) -> Poly {
        if order == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(i, c)| {
                // i (i-1) ... (i-order+1)
                let falling: IBig = ((i - order + 1)..=i).map(IBig::from).product();
                c * &ExactScalar::from(falling)
            })
            .collect();
        Poly::new(coeffs)
    }

    fn zip_with(&self, rhs: &Poly, f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = ExactScalar::zero();
        let coeffs = (0..len)
            .map(|i| f(self.coeffs.get(i).unwrap_or(&zero), rhs.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Poly::new(coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($imp:ident, $method:ident);*) => {$(
        impl $imp for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add, add; Sub, sub; Mul, mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

// JSON: array of scalar strings indexed by power; the zero polynomial is ["0"].
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_zero() {
            vec![ExactScalar::zero()].serialize(serializer)
        } else {
            self.coeffs.serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<ExactScalar>::deserialize(deserializer).map(Poly::new)
    }
}

/// `Σ_i a_i(x) · p^(i)(x)`, computed symbolically.
pub fn apply_operator(op: &BochnerOperator, p: &Poly) -> Poly {
    op.coeffs()
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (i, a)| &acc + &(a * &p.derivative(i)))
}

/// True iff `L p = λ p` exactly.
pub fn is_eigenpair(op: &BochnerOperator, p: &Poly, lambda: &ExactScalar) -> bool {
    apply_operator(op, p) == p.scale(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    fn hermite_op() -> BochnerOperator {
        BochnerOperator::new(vec![Poly::zero(), Poly::from_ints(&[0, -2]), Poly::from_ints(&[1])]).unwrap()
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0]), Poly::zero());
    }

    #[test]
    fn derivatives() {
        let cube = Poly::monomial(ExactScalar::one(), 3);
        assert_eq!(cube.derivative(1), Poly::from_ints(&[0, 0, 3]));
        assert_eq!(cube.derivative(0), cube);
        assert_eq!(cube.derivative(4), Poly::zero());
        let p = Poly::new(vec![s("-1/2"), s("0"), s("1")]);
        assert_eq!(p.derivative(2), Poly::from_ints(&[2]));
    }

    #[test]
    fn products_and_evaluation() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!((&a * &b).eval(&s("3")), s("8"));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(a.shift_up(2), Poly::from_ints(&[0, 0, 1, 1]));
    }

    #[test]
    fn hermite_operator_on_second_eigenpolynomial() {
        let p = Poly::new(vec![s("-1/2"), s("0"), s("1")]);
        assert_eq!(apply_operator(&hermite_op(), &p), Poly::from_ints(&[2, 0, -4]));
        assert!(is_eigenpair(&hermite_op(), &p, &s("-4")));
        assert!(!is_eigenpair(&hermite_op(), &p, &s("-2")));
        assert!(is_eigenpair(&hermite_op(), &Poly::zero(), &s("17/3")));
    }

    #[test]
    fn constants_are_annihilated_without_a0() {
        assert_eq!(apply_operator(&hermite_op(), &Poly::from_ints(&[1])), Poly::zero());
    }

    #[test]
    fn laguerre_first_degree() {
        let op = BochnerOperator::new(vec![Poly::zero(), Poly::from_ints(&[1, -1]), Poly::from_ints(&[0, 1])]).unwrap();
        let p = Poly::from_ints(&[-1, 1]);
        assert_eq!(apply_operator(&op, &p), Poly::from_ints(&[1, -1]));
        assert!(is_eigenpair(&op, &p, &s("-1")));
    }

    #[test]
    fn json_shape() {
        let p = Poly::new(vec![s("1/2"), s("0"), s("-3+i")]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"["1/2","0","-3+1*i"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&text).unwrap(), p);
        assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), r#"["0"]"#);
        assert_eq!(serde_json::from_str::<Poly>(r#"["0", 0]"#).unwrap(), Poly::zero());
    }
}
