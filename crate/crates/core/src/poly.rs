use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Polynomial with arbitrary-precision integer coefficients; index `k` holds
/// the coefficient of `x^k`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntegerPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntegerPolynomial { coefficients }
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// `(1 + x)^n`, built from binomial coefficients.
    pub fn one_plus_x_pow(n: usize) -> Self {
        let mut coefficients = Vec::with_capacity(n + 1);
        let mut c = BigInt::one();
        coefficients.push(c.clone());
        for k in 1..=n {
            c = c * BigInt::from(n - k + 1) / BigInt::from(k);
            coefficients.push(c.clone());
        }
        Self::new(coefficients)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `x = -1`: alternating sum of coefficients.
    pub fn at_minus_one(&self) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .fold(
                BigInt::zero(),
                |acc, (k, c)| if k % 2 == 0 { acc + c } else { acc - c },
            )
    }

    /// `x * self`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = Vec::with_capacity(self.coefficients.len() + 1);
        coefficients.push(BigInt::zero());
        coefficients.extend(self.coefficients.iter().cloned());
        IntegerPolynomial { coefficients }
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let (long, short) = if self.coefficients.len() >= rhs.coefficients.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coefficients = long.coefficients.clone();
        for (c, d) in coefficients.iter_mut().zip(&short.coefficients) {
            *c += d;
        }
        IntegerPolynomial::new(coefficients)
    }
}

impl Add for IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
        &self + &rhs
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut coefficients =
            vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in rhs.coefficients.iter().enumerate() {
                coefficients[i + j] += c * d;
            }
        }
        IntegerPolynomial::new(coefficients)
    }
}

impl Mul for IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: IntegerPolynomial) -> IntegerPolynomial {
        &self * &rhs
    }
}

/// Renders as `1 + 6x + 9x^2 + 2x^3`.
impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let magnitude = c.abs();
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}")?;
                    }
                    write!(f, "x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
