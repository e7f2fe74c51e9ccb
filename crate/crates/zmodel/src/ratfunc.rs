//! Reduced rational functions in one variable over Q.
//!
//! Invariants: the denominator is nonzero and monic, and gcd(num, den) = 1,
//! so equality is structural. The valuations v0 (order at t = 0) and v_inf
//! (order at t = infinity) and the local ring O = Q[t]_(t) with maximal
//! ideal m = tO are the interface every other module consumes.

use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::textfmt::{self, ParseError};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("element is not in the local ring at 0 (negative order at 0)")]
    NotInLocalRing,
    #[error("division by zero")]
    DivisionByZero,
}

/// Order of vanishing: a finite integer or +infinity (for the zero element).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => std::cmp::Ordering::Equal,
            (Valuation::Infinite, _) => std::cmp::Ordering::Greater,
            (_, Valuation::Infinite) => std::cmp::Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RationalFunction({})", self.to_text("t"))
    }
}

impl RationalFunction {
    /// Reduce num/den to canonical form. Panics if den = 0.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        let (num, den) = if num.is_coprime(&den) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lead = den.lc();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.scale(&(Rational::one() / &lead)),
                den: den.monic(),
            }
        }
    }

    /// Construct from parts already known to be coprime with monic den.
    pub(crate) fn from_reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero() && den.lc().is_one());
        debug_assert!(num.is_coprime(&den) || num.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    /// The variable t itself.
    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Polynomial::one() && self.den == Polynomial::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        // num and den stay coprime under powers; no re-reduction needed.
        if e == 0 {
            return Self::one();
        }
        let num = self.num.pow(e);
        let den = self.den.pow(e);
        let lead = den.lc();
        RationalFunction {
            num: num.scale(&(Rational::one() / &lead)),
            den: den.monic(),
        }
    }

    /// Order of vanishing at t = 0; +infinity for the zero element.
    pub fn ord_at_zero(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let vn = self.num.order_at_zero().unwrap() as i64;
        let vd = self.den.order_at_zero().unwrap() as i64;
        Valuation::Finite(vn - vd)
    }

    /// Order of vanishing at t = infinity: deg(den) - deg(num).
    pub fn ord_at_infinity(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        Valuation::Finite(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
    }

    /// Membership in the local ring O = Q[t]_(t).
    pub fn in_local_ring(&self) -> bool {
        self.ord_at_zero().at_least(0)
    }

    /// Membership in the maximal ideal m = tO.
    pub fn in_maximal_ideal(&self) -> bool {
        self.ord_at_zero().at_least(1)
    }

    /// Reduction mod m, i.e. the value at t = 0.
    pub fn reduce_mod_m(&self) -> Result<Rational, ArithError> {
        if !self.in_local_ring() {
            return Err(ArithError::NotInLocalRing);
        }
        // Reduced with v0 >= 0 means den(0) != 0.
        Ok(self.num.coeff(0) / self.den.coeff(0))
    }

    /// Value at a point, None at poles.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Order of vanishing at t = beta (finite point).
    pub fn ord_at_point(&self, beta: &Rational) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let lin = Polynomial::new(vec![-beta.clone(), Rational::one()]);
        let mult = |p: &Polynomial| -> i64 {
            let mut m = 0;
            let mut q = p.clone();
            loop {
                let (qt, r) = q.div_rem(&lin);
                if r.is_zero() {
                    m += 1;
                    q = qt;
                } else {
                    return m;
                }
            }
        };
        Valuation::Finite(mult(&self.num) - mult(&self.den))
    }

    /// Unit part at beta: (self / (t-beta)^v)(beta), nonzero by construction.
    pub fn unit_part_at(&self, beta: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let lin = Polynomial::new(vec![-beta.clone(), Rational::one()]);
        let strip = |p: &Polynomial| -> Polynomial {
            let mut q = p.clone();
            loop {
                let (qt, r) = q.div_rem(&lin);
                if r.is_zero() {
                    q = qt;
                } else {
                    return q;
                }
            }
        };
        let n = strip(&self.num).eval(beta);
        let d = strip(&self.den).eval(beta);
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }

    /// Composition self(g); errors when den(g) is identically zero.
    pub fn substitute(&self, g: &RationalFunction) -> Result<RationalFunction, ArithError> {
        if g == &RationalFunction::var() {
            return Ok(self.clone());
        }
        if g.is_polynomial() && g.num().degree() == Some(1) && g.num().coeff(0).is_zero() {
            // g = s*t: scale the coefficient of t^i by s^i on both sides.
            let s = g.num().coeff(1);
            let scale_poly = |p: &Polynomial| -> Polynomial {
                let mut acc = Rational::one();
                let coeffs = p
                    .coeffs()
                    .into_iter()
                    .map(|c| {
                        let out = c * &acc;
                        acc = &acc * &s;
                        out
                    })
                    .collect();
                Polynomial::new(coeffs)
            };
            return Ok(RationalFunction::new(
                scale_poly(&self.num),
                scale_poly(&self.den),
            ));
        }
        let compose_poly = |p: &Polynomial| -> RationalFunction {
            let mut acc = RationalFunction::zero();
            for c in p.coeffs().into_iter().rev() {
                acc = &(&acc * g) + &RationalFunction::constant(c);
            }
            acc
        };
        let den = compose_poly(&self.den);
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(&compose_poly(&self.num) / &den)
    }

    /// The function r(1/s) as a rational function of s; v0 of the result is
    /// the order of r at infinity.
    pub fn at_infinity(&self) -> RationalFunction {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let rn = self.num.reverse(dn);
        let rd = self.den.reverse(dd);
        // r(1/s) = s^(dd-dn) * rev(num)/rev(den)
        if dd >= dn {
            RationalFunction::new(rn.mul_monomial(&Rational::one(), dd - dn), rd)
        } else {
            RationalFunction::new(rn, rd.mul_monomial(&Rational::one(), dn - dd))
        }
    }

    /// Power-series coefficients at t = 0 up to (excluding) `prec`.
    /// Requires v0(self) >= 0.
    pub fn series_at_zero(&self, prec: usize) -> Result<Vec<Rational>, ArithError> {
        if !self.in_local_ring() {
            return Err(ArithError::NotInLocalRing);
        }
        let d0 = self.den.coeff(0);
        let mut out = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = self.num.coeff(k);
            for (j, prev) in out.iter().enumerate().take(k) {
                let c: &Rational = prev;
                acc -= self.den.coeff(k - j) * c;
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    pub fn to_text(&self, var: &str) -> String {
        textfmt::ratfunc_to_text(self, var)
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        textfmt::parse_ratfunc(s)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num - &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // Cross-cancel so the final product is reduced by construction.
        let g1 = if self.num.is_coprime(&rhs.den) {
            Polynomial::one()
        } else {
            self.num.gcd(&rhs.den)
        };
        let g2 = if rhs.num.is_coprime(&self.den) {
            Polynomial::one()
        } else {
            rhs.num.gcd(&self.den)
        };
        let a = if g1.is_constant() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d = if g1.is_constant() { rhs.den.clone() } else { rhs.den.exact_div(&g1) };
        let c = if g2.is_constant() { rhs.num.clone() } else { rhs.num.exact_div(&g2) };
        let b = if g2.is_constant() { self.den.clone() } else { self.den.exact_div(&g2) };
        let num = &a * &c;
        let den = &b * &d;
        let lead = den.lc();
        RationalFunction::from_reduced(num.scale(&(Rational::one() / &lead)), den.monic())
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * &rhs.inv()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_binop_rf {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}
forward_binop_rf!(Add, add);
forward_binop_rf!(Sub, sub);
forward_binop_rf!(Mul, mul);
forward_binop_rf!(Div, div);

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
