//! Truncated power series over Q with exact coefficients.
//!
//! A series carries exactly `prec` coefficients; every arithmetic operation
//! used here (add, sub, mul, division by a unit) maps exact prefixes to exact
//! prefixes, so any coefficient read from a result is the true coefficient of
//! the corresponding formal expansion. That makes valuations read off a
//! series below its precision exact statements about the modelled function.

use crate::rational::Rational;
use crate::ratfunc::RationalFunction;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); prec],
        }
    }

    pub fn constant(c: Rational, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    pub fn var(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Expansion of a rational function with v0 >= 0 (panics otherwise;
    /// callers check).
    pub fn from_ratfunc(r: &RationalFunction, prec: usize) -> Self {
        PowerSeries {
            coeffs: r
                .series_at_zero(prec)
                .expect("series expansion requires nonnegative order at 0"),
        }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; None when the series is zero
    /// to its full precision (valuation >= prec).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.prec(), rhs.prec());
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.prec(), rhs.prec());
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.prec(), rhs.prec());
        let n = self.prec();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Division by a unit (rhs(0) != 0); panics otherwise.
    pub fn div(&self, rhs: &Self) -> Self {
        assert_eq!(self.prec(), rhs.prec());
        assert!(rhs.is_unit(), "power series division by a non-unit");
        let n = self.prec();
        let d0 = rhs.coeffs[0].clone();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for (j, q) in out.iter().enumerate() {
                acc -= &rhs.coeffs[k - j] * q;
            }
            out.push(acc / &d0);
        }
        PowerSeries { coeffs: out }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }
}
