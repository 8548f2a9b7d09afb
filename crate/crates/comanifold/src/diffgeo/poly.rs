//! Multivariate polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use super::{check_len, DiffGeoError};

/// Shorthand for an exact rational.
pub fn ratio(numerator: i64, denominator: i64) -> BigRational {
    BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// A polynomial in `arity` variables over the rationals.
///
/// Terms map exponent vectors (length `arity`) to nonzero coefficients, so
/// equality of the maps is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, value: BigRational) -> Self {
        let mut p = Poly::zero(arity);
        p.insert(alloc::vec![0; arity], value);
        p
    }

    pub fn from_int(arity: usize, value: i64) -> Self {
        Poly::constant(arity, BigRational::from(BigInt::from(value)))
    }

    /// The coordinate polynomial `x_i`.
    pub fn coordinate(arity: usize, i: usize) -> Self {
        assert!(i < arity, "coordinate index out of range");
        let mut exponents = alloc::vec![0; arity];
        exponents[i] = 1;
        let mut p = Poly::zero(arity);
        p.insert(exponents, BigRational::from(BigInt::from(1)));
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self, DiffGeoError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Poly::zero(arity);
        for (exponents, coefficient) in terms {
            check_len(arity, exponents.len())?;
            p.insert(exponents, coefficient);
        }
        Ok(p)
    }

    fn insert(&mut self, exponents: Vec<u32>, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let mut out = self.clone();
        for (exponents, coefficient) in &other.terms {
            out.insert(exponents.clone(), coefficient.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (exponents, coefficient) in &self.terms {
            out.insert(exponents.clone(), -coefficient.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        let mut out = Poly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exponents: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exponents, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        let mut out = Poly::zero(self.arity);
        for (exponents, coefficient) in &self.terms {
            out.insert(exponents.clone(), coefficient * k);
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.arity, "coordinate index out of range");
        let mut out = Poly::zero(self.arity);
        for (exponents, coefficient) in &self.terms {
            if exponents[i] == 0 {
                continue;
            }
            let mut lowered = exponents.clone();
            lowered[i] -= 1;
            out.insert(
                lowered,
                coefficient * BigRational::from(BigInt::from(exponents[i])),
            );
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, DiffGeoError> {
        check_len(self.arity, point.len())?;
        let mut total = 0.0;
        for (exponents, coefficient) in &self.terms {
            let mut monomial = coefficient
                .to_f64()
                .expect("rational magnitude exceeds f64 range");
            for (x, &e) in point.iter().zip(exponents.iter()) {
                monomial *= Float::powi(*x, e as i32);
            }
            total += monomial;
        }
        Ok(total)
    }

    pub fn eval_q(&self, point: &[BigRational]) -> Result<BigRational, DiffGeoError> {
        check_len(self.arity, point.len())?;
        let mut total = BigRational::zero();
        for (exponents, coefficient) in &self.terms {
            let mut monomial = coefficient.clone();
            for (x, &e) in point.iter().zip(exponents.iter()) {
                for _ in 0..e {
                    monomial *= x;
                }
            }
            total += monomial;
        }
        Ok(total)
    }
}

impl core::fmt::Display for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
        for (i, (exponents, coefficient)) in ordered.into_iter().enumerate() {
            let mut monomial = alloc::string::String::new();
            for (v, &e) in exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !monomial.is_empty() {
                    monomial.push('*');
                }
                monomial.push_str(&alloc::format!("x{v}"));
                if e > 1 {
                    monomial.push_str(&alloc::format!("^{e}"));
                }
            }
            let magnitude = coefficient.abs();
            if i == 0 {
                if coefficient.is_negative() {
                    f.write_str("-")?;
                }
            } else if coefficient.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == BigRational::from(BigInt::from(1)) {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::coordinate(2, 0);
        let y = Poly::coordinate(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expected);
        assert!(p.sub(&expected).is_zero());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn partial_derivatives() {
        // p = x^2*y + 3y
        let x = Poly::coordinate(2, 0);
        let y = Poly::coordinate(2, 1);
        let p = x.mul(&x).mul(&y).add(&y.scale(&ratio(3, 1)));
        let px = p.partial(0);
        let py = p.partial(1);
        assert_eq!(px, x.mul(&y).scale(&ratio(2, 1)));
        assert_eq!(py, x.mul(&x).add(&Poly::from_int(2, 3)));
        assert!(Poly::from_int(2, 5).partial(0).is_zero());
    }

    #[test]
    fn evaluation_agrees_between_exact_and_float() {
        let x = Poly::coordinate(3, 0);
        let z = Poly::coordinate(3, 2);
        let p = x.mul(&x).mul(&z).scale(&ratio(1, 2)).sub(&z);
        let at = [3.0, -1.0, 2.0];
        let exact = p.eval_q(&[ratio(3, 1), ratio(-1, 1), ratio(2, 1)]).unwrap();
        assert_eq!(exact, ratio(7, 1));
        assert_eq!(p.eval_f64(&at).unwrap(), 7.0);
        assert!(p.eval_f64(&[0.0]).is_err());
    }

    #[test]
    fn display_is_readable() {
        let x = Poly::coordinate(2, 0);
        let y = Poly::coordinate(2, 1);
        let p = x
            .mul(&x)
            .sub(&y.scale(&ratio(1, 2)))
            .add(&Poly::from_int(2, 1));
        assert_eq!(p.to_string(), "1 - 1/2*x1 + x0^2");
    }
}
