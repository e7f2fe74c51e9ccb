//! Dense univariate polynomials over Q.
//!
//! A polynomial is stored as integer coefficients with a single positive
//! denominator, canonicalized so gcd(content, den) = 1; equality is
//! structural and integer kernels (Kronecker multiplication, modular gcd)
//! run directly on the coefficient vector. Coefficients are exposed as exact
//! rationals. Multiplication switches to Kronecker-substitution integer
//! multiplication above a degree threshold, and gcds go through the modular
//! algorithm in [`crate::zp`].

use crate::rational::Rational;
use crate::zp;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Degree threshold above which multiplication packs into big integers.
const KRONECKER_THRESHOLD: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    /// Ascending coefficients, no trailing zero.
    ints: Vec<BigInt>,
    /// Common positive denominator, coprime to the content of `ints`.
    den: BigInt,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({})", self.to_text("t"))
    }
}

/// Remainder of |x| by a word-size modulus, without allocation.
fn mod_u64(x: &BigInt, m: u64) -> u64 {
    let mut r: u64 = 0;
    for d in x.magnitude().to_u32_digits().iter().rev() {
        r = (((r as u128) << 32) | *d as u128).rem_euclid(m as u128) as u64;
    }
    r
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn content_of(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    let mut idx = 0;
    // big-integer fold until the accumulator fits in a word
    while idx < v.len() {
        let x = &v[idx];
        idx += 1;
        if x.is_zero() {
            continue;
        }
        g = g.gcd(x);
        if g.is_one() {
            return g;
        }
        if g.to_u64().is_some() {
            break;
        }
    }
    let mut small = match g.to_u64() {
        Some(s) if s != 0 => s,
        _ => return g,
    };
    for x in &v[idx..] {
        if x.is_zero() {
            continue;
        }
        small = gcd_u64(small, mod_u64(x, small));
        if small == 1 {
            break;
        }
    }
    BigInt::from(small)
}

impl Polynomial {
    fn normalize(mut ints: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "polynomial with zero denominator");
        while ints.last().map(|x| x.is_zero()) == Some(true) {
            ints.pop();
        }
        if ints.is_empty() {
            return Polynomial {
                ints,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            for c in ints.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let g = content_of(&ints).gcd(&den);
            if !g.is_one() {
                den /= &g;
                for c in ints.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        Polynomial { ints, den }
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut den = BigInt::one();
        for c in &coeffs {
            if !(&den % c.denom()).is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalize(ints, den)
    }

    /// From integer coefficients and a common denominator.
    pub fn from_int_parts(ints: Vec<BigInt>, den: BigInt) -> Self {
        Self::normalize(ints, den)
    }

    pub fn zero() -> Self {
        Polynomial {
            ints: vec![],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Polynomial {
            ints: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::normalize(v.iter().map(|&x| BigInt::from(x)).collect(), BigInt::one())
    }

    /// The monomial c * t^n.
    pub fn monomial(c: Rational, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); n + 1];
        v[n] = c.numer().clone();
        Self::normalize(v, c.denom().clone())
    }

    /// t itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        match self.ints.get(i) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.ints.len()).map(|i| self.coeff(i)).collect()
    }


    pub fn is_zero(&self) -> bool {
        self.ints.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.ints.is_empty() {
            None
        } else {
            Some(self.ints.len() - 1)
        }
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rational {
        if self.ints.is_empty() {
            Rational::zero()
        } else {
            self.coeff(self.ints.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.ints.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.ints.len() == 1 && self.ints[0].is_one() && self.den.is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.ints.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc / Rational::from_integer(self.den.clone())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.ints.len() <= 1 {
            return Polynomial::zero();
        }
        Self::normalize(
            self.ints[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
            self.den.clone(),
        )
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let lead = self.ints.last().unwrap().clone();
        Self::normalize(self.ints.clone(), lead)
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() || self.is_zero() {
            return Polynomial::zero();
        }
        let ints = self.ints.iter().map(|c| c * s.numer()).collect();
        Self::normalize(ints, &self.den * s.denom())
    }

    /// Number of times t divides self; None for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.ints.iter().position(|c| !c.is_zero())
    }

    /// Divide by t^k, which must be exact.
    pub fn shift_down(&self, k: usize) -> Polynomial {
        assert!(self.order_at_zero().is_none_or(|o| o >= k));
        if self.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            ints: self.ints[k..].to_vec(),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, n: usize) -> Polynomial {
        if self.is_zero() || c.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![BigInt::zero(); n];
        v.extend(self.ints.iter().map(|x| x * c.numer()));
        Self::normalize(v, &self.den * c.denom())
    }

    /// Coefficient reversal: t^n * p(1/t) for n >= deg p.
    pub fn reverse(&self, n: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        assert!(n + 1 >= self.ints.len());
        let mut v = vec![BigInt::zero(); n + 1];
        for (i, c) in self.ints.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::normalize(v, self.den.clone())
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder over Q; divisor must be nonzero.
    pub fn div_rem(&self, div: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        if self.ints.len() < div.ints.len() {
            return (Polynomial::zero(), self.clone());
        }
        let dlen = div.ints.len();
        let dcoeffs = div.coeffs();
        let inv_lead = Rational::one() / div.lc();
        let mut rem = self.coeffs();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        while rem.len() >= dlen {
            let q = rem.last().unwrap() * &inv_lead;
            let off = rem.len() - dlen;
            if !q.is_zero() {
                for (i, c) in dcoeffs.iter().enumerate().take(dlen - 1) {
                    let v = &rem[off + i] - &(&q * c);
                    rem[off + i] = v;
                }
            }
            quot[off] = q;
            rem.pop();
            while rem.len() >= dlen && rem.last().map(|c| c.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact division; panics if the division leaves a remainder. Runs on the
    /// primitive integer parts (the quotient of primitive polynomials is
    /// integral by the Gauss lemma), so no coefficient inflation occurs.
    pub fn exact_div(&self, div: &Polynomial) -> Polynomial {
        assert!(!div.is_zero(), "exact_div by zero");
        if self.is_zero() {
            return Polynomial::zero();
        }
        let ca = content_of(&self.ints);
        let cb = content_of(&div.ints);
        let a: Vec<BigInt> = self.ints.iter().map(|c| c / &ca).collect();
        let b: Vec<BigInt> = div.ints.iter().map(|c| c / &cb).collect();
        assert!(a.len() >= b.len(), "exact_div with nonzero remainder");
        let lead = b.last().unwrap().clone();
        let mut rem = a;
        let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let top = rem.last().unwrap();
            let (q, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "exact_div with nonzero remainder");
            let off = rem.len() - b.len();
            for (i, c) in b.iter().enumerate().take(b.len() - 1) {
                let v = &rem[off + i] - &q * c;
                rem[off + i] = v;
            }
            quot[off] = q;
            rem.pop();
            while rem.len() >= b.len() && rem.last().map(|x| x.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        assert!(
            rem.iter().all(|x| x.is_zero()),
            "exact_div with nonzero remainder"
        );
        // scalar factor (ca/da)/(cb/db) = (ca*db)/(cb*da)
        Polynomial::normalize(quot, BigInt::one())
            .scale(&Rational::new(ca * &div.den, cb * &self.den))
    }

    /// Clear denominators: returns (ints, den) with self = (1/den) * ints.
    pub fn to_integers(&self) -> (Vec<BigInt>, BigInt) {
        (self.ints.clone(), self.den.clone())
    }

    /// Monic gcd over Q; gcd(p, 0) = monic(p), gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Polynomial::one();
        }
        if self == other {
            return self.monic();
        }
        let a = primitive_int(&self.ints);
        let b = primitive_int(&other.ints);
        let g = zp::gcd_primitive(&a, &b);
        Polynomial::normalize(g, BigInt::one()).monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if self == other || other.is_constant() {
            return self.monic();
        }
        if self.is_constant() {
            return other.monic();
        }
        let g = self.gcd(other);
        (&self.exact_div(&g) * other).monic()
    }

    /// True when gcd = 1, with a cheap one-prime certificate when possible.
    pub fn is_coprime(&self, other: &Polynomial) -> bool {
        if self.is_constant() || other.is_constant() {
            return !self.is_zero() && !other.is_zero();
        }
        match zp::coprime_mod_one_prime(&self.ints, &other.ints) {
            Some(true) => true,
            Some(false) | None => {
                let g = self.gcd(other);
                g.is_constant() && !g.is_zero()
            }
        }
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_zero() || self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.monic();
        }
        self.exact_div(&g).monic()
    }

    /// Yun squarefree decomposition: monic, squarefree, pairwise coprime
    /// factors f_i with self = lc * prod f_i^i.
    pub fn squarefree_decomposition(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if self.is_zero() || self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.is_constant() {
            return vec![f];
        }
        let mut c = f.exact_div(&g);
        let mut d = &fp.exact_div(&g) - &c.derivative();
        loop {
            let a = c.gcd(&d);
            out.push(a.monic());
            let c_next = c.exact_div(&a);
            if c_next.is_constant() {
                break;
            }
            d = &d.exact_div(&a) - &c_next.derivative();
            c = c_next;
        }
        out
    }

    /// Product of the factors of odd multiplicity.
    pub fn odd_multiplicity_part(&self) -> Polynomial {
        let mut out = Polynomial::one();
        for (i, f) in self.squarefree_decomposition().iter().enumerate() {
            if (i + 1) % 2 == 1 {
                out = &out * f;
            }
        }
        out
    }

    /// Cauchy bound: every real root lies in (-B, B).
    pub fn cauchy_bound(&self) -> Rational {
        if self.ints.len() <= 1 {
            return Rational::one();
        }
        let lead = self.ints.last().unwrap();
        let mut m = BigInt::zero();
        for c in &self.ints[..self.ints.len() - 1] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        Rational::new(m, lead.abs()) + Rational::one()
    }

    /// Sturm chain of the (assumed squarefree) polynomial.
    pub fn sturm_chain(&self) -> Vec<Polynomial> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().monic_abs());
        }
        chain
    }

    /// Normalize the leading coefficient to +-1 in absolute value,
    /// keeping its sign.
    fn monic_abs(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        Self::normalize(self.ints.clone(), self.ints.last().unwrap().abs())
    }

    /// Sign of the value at x, for Sturm evaluations.
    fn sign_at(&self, x: &Rational) -> i8 {
        let e = self.eval(x);
        if e.is_zero() {
            0
        } else if e.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Number of distinct real roots of the squarefree polynomial in (lo, hi].
    pub fn count_real_roots_between(&self, lo: &Rational, hi: &Rational) -> usize {
        let chain = self.sturm_chain();
        let variations = |x: &Rational| -> usize {
            let signs: Vec<i8> = chain.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(lo).saturating_sub(variations(hi))
    }

    /// Number of distinct real roots of the squarefree polynomial.
    pub fn count_real_roots(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let b = self.cauchy_bound();
        self.count_real_roots_between(&-b.clone(), &b)
    }

    /// Isolating intervals (lo, hi], one per real root of the squarefree
    /// polynomial, each of width at most `width`.
    pub fn isolate_real_roots(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        if self.is_constant() {
            return vec![];
        }
        let b = self.cauchy_bound();
        let mut stack = vec![(-b.clone(), b)];
        let mut out = Vec::new();
        let two = Rational::from_integer(2.into());
        while let Some((lo, hi)) = stack.pop() {
            let n = self.count_real_roots_between(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && &(&hi - &lo) <= width {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / &two;
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// All rational roots, found by isolating the real roots of the
    /// squarefree part and searching each interval for the unique
    /// smallest-denominator rational (root denominators divide the integer
    /// leading coefficient).
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() || self.is_constant() {
            return vec![];
        }
        let sf = self.squarefree_part();
        let ints = primitive_int(&sf.ints);
        let den_bound = ints.last().unwrap().abs();
        // Interval width below the Farey spacing 1/den_bound^2 guarantees at
        // most one rational with denominator <= den_bound per interval.
        let width = Rational::new(BigInt::one(), &den_bound * &den_bound * BigInt::from(4));
        let mut roots = Vec::new();
        for (lo, hi) in sf.isolate_real_roots(&width) {
            if sf.eval(&hi).is_zero() {
                if *hi.denom() <= den_bound {
                    roots.push(hi);
                }
                continue;
            }
            if let Some(c) = simplest_rational_between(&lo, &hi) {
                if *c.denom() <= den_bound && sf.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
        roots.sort();
        roots
    }

    /// Composition self(g) for a polynomial g.
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for i in (0..self.ints.len()).rev() {
            acc = &(&acc * g) + &Polynomial::constant(self.coeff(i));
        }
        acc
    }

    pub fn to_text(&self, var: &str) -> String {
        crate::textfmt::poly_to_text(self, var)
    }
}

/// Simplest rational (smallest denominator) strictly inside (lo, hi), by
/// Stern-Brocot / continued-fraction descent. None when the interval is empty.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Option<Rational> {
    if lo >= hi {
        return None;
    }
    let shift = lo.floor();
    Some(simplest_nonneg(&(lo - &shift), &(hi - &shift)) + shift)
}

fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    // Invariant: 0 <= lo < hi.
    let fl = lo.floor();
    if &(&fl + Rational::one()) < hi {
        return fl + Rational::one();
    }
    // The interval sits inside [fl, fl+1].
    let lo_f = lo - &fl;
    let hi_f = hi - &fl;
    if lo_f.is_zero() {
        // Simplest in (0, h) with h <= 1 is 1/m for the least m with 1/m < h.
        let m = (Rational::one() / &hi_f).floor() + Rational::one();
        return fl + Rational::one() / m;
    }
    let inv = simplest_nonneg(&(Rational::one() / hi_f), &(Rational::one() / lo_f));
    fl + Rational::one() / inv
}

pub(crate) fn primitive_int(c: &[BigInt]) -> Vec<BigInt> {
    let g = content_of(c);
    if g.is_zero() || g.is_one() {
        c.to_vec()
    } else {
        c.iter().map(|x| x / &g).collect()
    }
}

// ---- integer kernel ----

pub(crate) fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().map(|x| x.is_zero()) == Some(true) {
        v.pop();
    }
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if a.len().min(b.len()) <= KRONECKER_THRESHOLD {
        return int_mul_schoolbook(a, b);
    }
    int_mul_kronecker(a, b)
}

fn int_mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    trim_int(&mut out);
    out
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.bits()).max().unwrap_or(0)
}

/// Kronecker substitution with bias packing: shift every coefficient by a
/// power-of-two bias so both factors pack as nonnegative slots, do a single
/// big-integer multiplication, and undo the bias with windowed prefix sums:
///
///   (a_i + B)(b_j + B) summed over i+j = k gives
///   c_k + B*(S_a(k) + S_b(k)) + B^2 * N_k
///
/// where S_a, S_b are windowed coefficient sums and N_k counts the pairs.
fn int_mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let nmin = a.len().min(b.len()) as u64;
    let log_len = 64 - nmin.leading_zeros() as u64;
    let beta = max_bits(a).max(max_bits(b)) + 1;
    let slot_bits = 2 * beta + log_len + 3;
    let slot_u32 = slot_bits.div_ceil(32) as usize;
    let bias = BigInt::one() << beta;

    let pack = |v: &[BigInt]| -> BigUint {
        let mut digits = vec![0u32; v.len() * slot_u32 + 1];
        for (i, x) in v.iter().enumerate() {
            let shifted = (x + &bias).to_biguint().expect("bias makes entries positive");
            let mag = shifted.to_u32_digits();
            digits[i * slot_u32..i * slot_u32 + mag.len()].copy_from_slice(&mag);
        }
        BigUint::new(digits)
    };
    let prod = pack(a) * pack(b);

    // windowed sums: S_a(k) = sum of a_i for max(0,k+1-len_b) <= i <= min(k, len_a-1)
    let prefix = |v: &[BigInt]| -> Vec<BigInt> {
        let mut acc = BigInt::zero();
        let mut out = Vec::with_capacity(v.len() + 1);
        out.push(BigInt::zero());
        for x in v {
            acc += x;
            out.push(acc.clone());
        }
        out
    };
    let pa = prefix(a);
    let pb = prefix(b);
    let window = |p: &[BigInt], k: usize, self_len: usize, other_len: usize| -> BigInt {
        let lo = (k + 1).saturating_sub(other_len);
        let hi = k.min(self_len - 1);
        &p[hi + 1] - &p[lo]
    };

    let digits = prod.to_u32_digits();
    let out_len = a.len() + b.len() - 1;
    let bias2 = &bias * &bias;
    let mut out: Vec<BigInt> = (0..out_len)
        .map(|k| {
            let lo = k * slot_u32;
            let raw = if lo >= digits.len() {
                BigInt::zero()
            } else {
                let hi = (lo + slot_u32).min(digits.len());
                BigInt::from(BigUint::new(digits[lo..hi].to_vec()))
            };
            let lo_i = (k + 1).saturating_sub(b.len());
            let hi_i = k.min(a.len() - 1);
            let count = BigInt::from((hi_i - lo_i + 1) as u64);
            raw - &bias * (window(&pa, k, a.len(), b.len()) + window(&pb, k, b.len(), a.len()))
                - &bias2 * count
        })
        .collect();
    trim_int(&mut out);
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (sa, sb) = if self.den == rhs.den {
            (BigInt::one(), BigInt::one())
        } else {
            let g = self.den.gcd(&rhs.den);
            (&rhs.den / &g, &self.den / &g)
        };
        let den = &self.den * &sa;
        let mut out = vec![BigInt::zero(); self.ints.len().max(rhs.ints.len())];
        for (i, c) in self.ints.iter().enumerate() {
            out[i] += c * &sa;
        }
        for (i, c) in rhs.ints.iter().enumerate() {
            out[i] += c * &sb;
        }
        Polynomial::normalize(out, den)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        if rhs.is_zero() {
            return self.clone();
        }
        let (sa, sb) = if self.den == rhs.den {
            (BigInt::one(), BigInt::one())
        } else {
            let g = self.den.gcd(&rhs.den);
            (&rhs.den / &g, &self.den / &g)
        };
        let den = &self.den * &sa;
        let mut out = vec![BigInt::zero(); self.ints.len().max(rhs.ints.len())];
        for (i, c) in self.ints.iter().enumerate() {
            out[i] += c * &sa;
        }
        for (i, c) in rhs.ints.iter().enumerate() {
            out[i] -= c * &sb;
        }
        Polynomial::normalize(out, den)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ints: self.ints.iter().map(|c| -c.clone()).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let prod = int_mul(&self.ints, &rhs.ints);
        Polynomial::normalize(prod, &self.den * &rhs.den)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}
