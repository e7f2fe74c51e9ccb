//! Word-sized prime fields and modular polynomial gcd over Z[t].
//!
//! The public entry point is [`gcd_primitive`], a Brown-style modular gcd:
//! gcd images are computed mod 62-bit primes, combined by CRT and certified
//! by trial division. [`coprime_mod_one_prime`] is the cheap one-prime
//! coprimality proof used as a fast path when reducing fractions.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// 62-bit primes used for modular images.
pub const PRIMES: [u64; 48] = [
    4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387761,
    4611686018427387751, 4611686018427387737, 4611686018427387733, 4611686018427387709,
    4611686018427387701, 4611686018427387631, 4611686018427387617, 4611686018427387587,
    4611686018427387461, 4611686018427387421, 4611686018427387409, 4611686018427387329,
    4611686018427387323, 4611686018427387301, 4611686018427387271, 4611686018427387241,
    4611686018427387139, 4611686018427387131, 4611686018427387127, 4611686018427387113,
    4611686018427387091, 4611686018427387073, 4611686018427386981, 4611686018427386923,
    4611686018427386911, 4611686018427386903, 4611686018427386897, 4611686018427386887,
    4611686018427386707, 4611686018427386663, 4611686018427386611, 4611686018427386551,
    4611686018427386471, 4611686018427386389, 4611686018427386351, 4611686018427386329,
    4611686018427386323, 4611686018427386309, 4611686018427386287, 4611686018427386231,
    4611686018427386207, 4611686018427386203, 4611686018427386201, 4611686018427386081,
];

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Image of a signed big integer in Z/p.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = (x % BigInt::from(p)).to_i64().unwrap();
    if m < 0 {
        (m + p as i64) as u64
    } else {
        m as u64
    }
}

/// Dense polynomial over Z/p, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyZp {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

impl PolyZp {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyZp { coeffs, p }
    }

    pub fn from_bigints(c: &[BigInt], p: u64) -> Self {
        Self::new(c.iter().map(|x| bigint_mod(x, p)).collect(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn scale(&self, s: u64) -> Self {
        PolyZp::new(
            self.coeffs.iter().map(|&c| mulmod(c, s, self.p)).collect(),
            self.p,
        )
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lc(), self.p))
    }

    /// In-place remainder of `num` by `den` (den nonzero).
    fn rem_in_place(num: &mut Vec<u64>, den: &[u64], p: u64) {
        let dd = den.len() - 1;
        let inv_lead = invmod(den[dd], p);
        while num.len() > dd {
            let k = num.len() - 1;
            let q = mulmod(*num.last().unwrap(), inv_lead, p);
            if q != 0 {
                let off = k - dd;
                for (i, &dc) in den.iter().enumerate() {
                    num[off + i] = submod(num[off + i], mulmod(q, dc, p), p);
                }
            }
            num.pop();
            while num.last() == Some(&0) {
                num.pop();
            }
            if num.is_empty() {
                break;
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let p = self.p;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            Self::rem_in_place(&mut a, &b, p);
            std::mem::swap(&mut a, &mut b);
        }
        PolyZp::new(a, p).make_monic()
    }
}

/// Proof-grade coprimality fast path: if the images of two primitive integer
/// polynomials mod a prime not dividing either leading coefficient have gcd 1,
/// the polynomials are coprime over Q.
pub fn coprime_mod_one_prime(a: &[BigInt], b: &[BigInt]) -> Option<bool> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    for &p in PRIMES.iter().take(4) {
        let la = bigint_mod(a.last().unwrap(), p);
        let lb = bigint_mod(b.last().unwrap(), p);
        if la == 0 || lb == 0 {
            continue;
        }
        let g = PolyZp::from_bigints(a, p).gcd(&PolyZp::from_bigints(b, p));
        return Some(g.degree() == 0);
    }
    None
}

fn crt_pair(r1: &BigInt, m1: &BigInt, r2: u64, p2: u64) -> BigInt {
    // x ≡ r1 (mod m1), x ≡ r2 (mod p2); r1 in [0, m1) gives x in [0, m1*p2).
    let m1_mod = bigint_mod(m1, p2);
    let inv = invmod(m1_mod, p2);
    let r1_mod = bigint_mod(r1, p2);
    let diff = submod(r2, r1_mod, p2);
    let k = mulmod(diff, inv, p2);
    r1 + m1 * BigInt::from(k)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let mut r = x % m;
    if r.is_negative() {
        r += m;
    }
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Exact division test over Z after clearing content; `a` and `b` primitive.
fn divides_exactly(candidate: &[BigInt], target: &[BigInt]) -> bool {
    if target.is_empty() {
        return true;
    }
    if candidate.is_empty() || candidate.len() > target.len() {
        return false;
    }
    // Long division by the candidate, requiring every quotient step to be exact.
    let mut rem: Vec<BigInt> = target.to_vec();
    let lead = candidate.last().unwrap().clone();
    while rem.len() >= candidate.len() {
        let top = rem.last().unwrap();
        if (top % &lead) != BigInt::zero() {
            return false;
        }
        let q = top / &lead;
        let off = rem.len() - candidate.len();
        for (i, c) in candidate.iter().enumerate() {
            let v = &rem[off + i] - &q * c;
            rem[off + i] = v;
        }
        rem.pop();
        while rem.last().map(|x| x.is_zero()) == Some(true) {
            rem.pop();
        }
    }
    rem.is_empty()
}

fn content(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in c {
        g = num_integer::Integer::gcd(&g, x);
        if g == BigInt::from(1) {
            break;
        }
    }
    g
}

fn primitive_part(c: &[BigInt]) -> Vec<BigInt> {
    let g = content(c);
    if g.is_zero() || g == BigInt::from(1) {
        return c.to_vec();
    }
    c.iter().map(|x| x / &g).collect()
}

/// Primitive gcd over Z of two primitive integer polynomials (Brown's
/// modular algorithm). Returns ascending coefficients with positive leading
/// coefficient; the zero cases are handled by the caller.
pub fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!a.is_empty() && !b.is_empty());
    let lc_gcd = num_integer::Integer::gcd(a.last().unwrap(), b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::from(1);
    let mut last_candidate: Option<Vec<BigInt>> = None;
    for &p in PRIMES.iter() {
        if bigint_mod(a.last().unwrap(), p) == 0 || bigint_mod(b.last().unwrap(), p) == 0 {
            continue;
        }
        let gp = PolyZp::from_bigints(a, p).gcd(&PolyZp::from_bigints(b, p));
        if gp.degree() == 0 {
            return vec![BigInt::from(1)];
        }
        let gp = gp.scale(bigint_mod(&lc_gcd, p));
        match gp.degree().cmp(&best_deg) {
            std::cmp::Ordering::Greater => continue, // unlucky prime
            std::cmp::Ordering::Less => {
                best_deg = gp.degree();
                acc = gp.coeffs.iter().map(|&c| BigInt::from(c)).collect();
                modulus = BigInt::from(p);
                last_candidate = None;
            }
            std::cmp::Ordering::Equal => {
                let new_mod = &modulus * BigInt::from(p);
                for (i, &c) in gp.coeffs.iter().enumerate() {
                    acc[i] = crt_pair(&acc[i], &modulus, c, p);
                }
                modulus = new_mod;
            }
        }
        let candidate: Vec<BigInt> = acc.iter().map(|x| symmetric(x, &modulus)).collect();
        if last_candidate.as_deref() == Some(candidate.as_slice()) {
            let cand = primitive_part(&candidate);
            if divides_exactly(&cand, a) && divides_exactly(&cand, b) {
                let mut cand = cand;
                if cand.last().unwrap().is_negative() {
                    for c in cand.iter_mut() {
                        *c = -std::mem::take(c);
                    }
                }
                return cand;
            }
        }
        last_candidate = Some(candidate);
    }
    // All primes exhausted without stabilising: fall back to the certain
    // (slow) route so correctness never depends on the prime budget.
    fallback_gcd(a, b)
}

/// Plain primitive-PRS gcd, only reachable when 48 CRT primes were not
/// enough to stabilise a candidate.
fn fallback_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    while !g.is_empty() {
        // pseudo-remainder of f by g
        let df = f.len() as i64 - 1;
        let dg = g.len() as i64 - 1;
        if df < dg {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        let lead = g.last().unwrap().clone();
        let mut rem = f.clone();
        for c in rem.iter_mut() {
            *c = &*c * lead.clone().pow((df - dg + 1) as u32);
        }
        while rem.len() >= g.len() && !rem.is_empty() {
            let q = rem.last().unwrap() / &lead;
            let off = rem.len() - g.len();
            for (i, c) in g.iter().enumerate() {
                let v = &rem[off + i] - &q * c;
                rem[off + i] = v;
            }
            rem.pop();
            while rem.last().map(|x| x.is_zero()) == Some(true) {
                rem.pop();
            }
        }
        f = g;
        g = primitive_part(&rem);
    }
    let mut out = primitive_part(&f);
    if out.last().map(|x| x.is_negative()) == Some(true) {
        for c in out.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zp_gcd_basic() {
        let p = PRIMES[0];
        // (t-1)(t+1) and (t-1)
        let a = PolyZp::from_bigints(&bi(&[-1, 0, 1]), p);
        let b = PolyZp::from_bigints(&bi(&[-1, 1]), p);
        let g = a.gcd(&b);
        assert_eq!(g, PolyZp::from_bigints(&bi(&[-1, 1]), p).make_monic());
    }

    #[test]
    fn modular_gcd_recovers_common_factor() {
        // (2t+3)(t^2+5)  and  (2t+3)(t-7)
        let f = bi(&[15, 10, 3, 2]);
        let g = bi(&[-21, -11, 2]);
        let got = gcd_primitive(&f, &g);
        assert_eq!(got, bi(&[3, 2]));
    }

    #[test]
    fn modular_gcd_coprime() {
        let f = bi(&[1, 0, 1]);
        let g = bi(&[-2, 1]);
        assert_eq!(gcd_primitive(&f, &g), bi(&[1]));
        assert_eq!(coprime_mod_one_prime(&f, &g), Some(true));
    }
}
