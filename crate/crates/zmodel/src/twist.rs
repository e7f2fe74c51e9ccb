//! The self-twist of a cubic over Q(t) and its canonical section.
//!
//! For a base curve y^2 = P(x) = x^3 + ax^2 + bx + c over Q, the twisted
//! model lives in P^2 over Q(t):
//!
//! ```text
//!     V^2 W = rho * P(U, W),     rho = t / P(1,t) = t / (1 + at + bt^2 + ct^3)
//! ```
//!
//! with origin (0:1:0) and canonical section gamma = (1:1:t). Group
//! operations happen on the Weierstrass chart y^2 = x^3 + a*rho x^2 +
//! b*rho^2 x + c*rho^3 through the isomorphism (U:V:W) -> (rho U : rho V : W)
//! and are transported back. Large multiples of gamma use the division
//! polynomials of the base curve evaluated at x = 1/t, which yields the same
//! points without intermediate fraction blowup; the two routes are
//! cross-checked in tests. Local expansions of u(n gamma) at t = 0 and at
//! t = infinity come from exact truncated-series ladders.

use crate::elliptic::{add_points, is_torsion, CubicCurve, CurveError, ProjectivePoint};
use crate::poly::Polynomial;
use crate::rational::{rational_to_text, Rational};
use crate::ratfunc::{RationalFunction, Valuation};
use crate::series::PowerSeries;
use crate::textfmt::ParseError;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use thiserror::Error;

/// Largest |n| for which gamma multiples go through the chord-tangent ladder
/// on Q(t); beyond this the division-polynomial route takes over.
const CHORD_LADDER_MAX: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("point is not in the affine part over the local ring at 0")]
    NotInAffinePart,
    #[error("chart at infinity undefined: V = 0")]
    ChartUndefined,
    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),
    #[error("the map is constant")]
    ConstantMap,
}

/// Projective point (U:V:W) on the twisted cubic, canonically scaled:
/// coprime polynomial coordinates with the last nonzero of (W, V, U) monic.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistPoint {
    u: Polynomial,
    v: Polynomial,
    w: Polynomial,
}

impl std::fmt::Debug for TwistPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TwistPoint({})", self)
    }
}

impl std::fmt::Display for TwistPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}; {}; {}]",
            self.u.to_text("t"),
            self.v.to_text("t"),
            self.w.to_text("t")
        )
    }
}

impl TwistPoint {
    /// Canonical scaling of projective rational-function coordinates.
    pub fn new(u: &RationalFunction, v: &RationalFunction, w: &RationalFunction) -> Self {
        assert!(
            !(u.is_zero() && v.is_zero() && w.is_zero()),
            "twist point with all coordinates zero"
        );
        let d = u.den().lcm(v.den()).lcm(w.den());
        let to_poly = |r: &RationalFunction| -> Polynomial { r.num() * &d.exact_div(r.den()) };
        Self::from_polys(to_poly(u), to_poly(v), to_poly(w))
    }

    /// Canonical scaling of polynomial coordinates.
    pub fn from_polys(u: Polynomial, v: Polynomial, w: Polynomial) -> Self {
        assert!(
            !(u.is_zero() && v.is_zero() && w.is_zero()),
            "twist point with all coordinates zero"
        );
        let g = u.gcd(&v).gcd(&w);
        let (mut u, mut v, mut w) = if g.is_constant() {
            (u, v, w)
        } else {
            (u.exact_div(&g), v.exact_div(&g), w.exact_div(&g))
        };
        let lead = if !w.is_zero() {
            w.lc()
        } else if !v.is_zero() {
            v.lc()
        } else {
            u.lc()
        };
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            u = u.scale(&inv);
            v = v.scale(&inv);
            w = w.scale(&inv);
        }
        TwistPoint { u, v, w }
    }

    pub fn origin() -> Self {
        TwistPoint {
            u: Polynomial::zero(),
            v: Polynomial::one(),
            w: Polynomial::zero(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.u.is_zero() && self.w.is_zero()
    }

    pub fn coord_u(&self) -> &Polynomial {
        &self.u
    }

    pub fn coord_v(&self) -> &Polynomial {
        &self.v
    }

    pub fn coord_w(&self) -> &Polynomial {
        &self.w
    }

    /// Affine u = U/V; None when V = 0.
    pub fn u_affine(&self) -> Option<RationalFunction> {
        if self.v.is_zero() {
            None
        } else {
            Some(RationalFunction::new(self.u.clone(), self.v.clone()))
        }
    }

    /// Affine w = W/V; None when V = 0.
    pub fn w_affine(&self) -> Option<RationalFunction> {
        if self.v.is_zero() {
            None
        } else {
            Some(RationalFunction::new(self.w.clone(), self.v.clone()))
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| ParseError::Other("expected [U; V; W]".into()))?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 3 {
            return Err(ParseError::Other("expected three coordinates".into()));
        }
        let u = RationalFunction::parse(parts[0])?;
        let v = RationalFunction::parse(parts[1])?;
        let w = RationalFunction::parse(parts[2])?;
        if u.is_zero() && v.is_zero() && w.is_zero() {
            return Err(ParseError::Other("all coordinates zero".into()));
        }
        Ok(TwistPoint::new(&u, &v, &w))
    }
}

/// Division-polynomial table of the base curve in the variable x, with
/// psi_n = p[n] * y^(n mod 2 == 0). Squares are memoized: they are reused
/// across the recurrence and the per-point assembly.
struct PsiTable {
    psi: Vec<Polynomial>,
    sq: Vec<Polynomial>,
    pe: Polynomial,
    pe2: Polynomial,
}

impl PsiTable {
    fn new(base: &CubicCurve<Rational>) -> Self {
        let a = &base.a;
        let b = &base.b;
        let c = &base.c;
        let q = |n: i64| Rational::from_integer(n.into());
        let pe = Polynomial::new(vec![c.clone(), b.clone(), a.clone(), Rational::one()]);
        let pe2 = &pe * &pe;
        let b8 = q(4) * a * c - b * b;
        let psi3 = Polynomial::new(vec![b8.clone(), q(12) * c, q(6) * b, q(4) * a, q(3)]);
        let psi4 = Polynomial::new(vec![
            q(2) * b * &b8 - q(16) * c * c,
            q(4) * a * &b8 - q(8) * b * c,
            q(10) * &b8,
            q(40) * c,
            q(10) * b,
            q(4) * a,
            q(2),
        ])
        .scale(&q(2));
        let psi = vec![
            Polynomial::zero(),
            Polynomial::one(),
            Polynomial::constant(q(2)),
            psi3,
            psi4,
        ];
        let sq = psi.iter().map(|p| p * p).collect();
        PsiTable { psi, sq, pe, pe2 }
    }

    fn extend_to(&mut self, n: usize) {
        while self.psi.len() <= n {
            let k = self.psi.len();
            let p = &self.psi;
            let s = &self.sq;
            let next = if k % 2 == 1 {
                let m = k / 2;
                let t1 = &p[m + 2] * &(&s[m] * &p[m]);
                let t2 = &p[m - 1] * &(&s[m + 1] * &p[m + 1]);
                if m.is_multiple_of(2) {
                    &(&self.pe2 * &t1) - &t2
                } else {
                    &t1 - &(&self.pe2 * &t2)
                }
            } else {
                let m = k / 2;
                let d = &(&p[m + 2] * &s[m - 1]) - &(&p[m - 2] * &s[m + 1]);
                (&p[m] * &d).scale(&Rational::new(1.into(), 2.into()))
            };
            self.sq.push(&next * &next);
            self.psi.push(next);
        }
    }
}

/// The self-twist model: base curve over Q, the uniformizer rho, and the
/// twisted Weierstrass chart over Q(t).
#[derive(Clone)]
pub struct SelfTwistModel {
    base: CubicCurve<Rational>,
    rho: RationalFunction,
    p_one_t: Polynomial,
    weierstrass: CubicCurve<RationalFunction>,
    infinity_is_elliptic: bool,
    gamma_cache: Arc<RwLock<HashMap<i64, TwistPoint>>>,
    uw_cache: Arc<RwLock<HashMap<i64, (RationalFunction, RationalFunction)>>>,
    psi: Arc<RwLock<PsiTable>>,
    ev0_ladder: Arc<Mutex<Ev0Ladder>>,
}

/// Incrementally extended prec-2 series ladder caching ev0(k gamma) = u_k(0).
struct Ev0Ladder {
    consts: Vec<Rational>,
    cur: Option<(PowerSeries, PowerSeries)>,
}

impl Ev0Ladder {
    fn new() -> Self {
        Ev0Ladder {
            consts: vec![Rational::zero()],
            cur: None,
        }
    }
}

impl std::fmt::Debug for SelfTwistModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SelfTwistModel")
            .field("base", &self.base)
            .field("rho", &self.rho)
            .finish()
    }
}

impl SelfTwistModel {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, TwistError> {
        Ok(Self::build(CubicCurve::new(a, b, c)?))
    }

    /// Build the twist of a validated base curve.
    pub fn build(base: CubicCurve<Rational>) -> Self {
        let p_one_t = Polynomial::new(vec![
            Rational::one(),
            base.a.clone(),
            base.b.clone(),
            base.c.clone(),
        ]);
        let rho = RationalFunction::new(Polynomial::var(), p_one_t.clone());
        let rho2 = &rho * &rho;
        let rho3 = &rho2 * &rho;
        let weierstrass = CubicCurve {
            a: &RationalFunction::constant(base.a.clone()) * &rho,
            b: &RationalFunction::constant(base.b.clone()) * &rho2,
            c: &RationalFunction::constant(base.c.clone()) * &rho3,
        };
        let infinity_is_elliptic = !base.c.is_zero();
        let psi = PsiTable::new(&base);
        SelfTwistModel {
            base,
            rho,
            p_one_t,
            weierstrass,
            infinity_is_elliptic,
            gamma_cache: Arc::new(RwLock::new(HashMap::new())),
            uw_cache: Arc::new(RwLock::new(HashMap::new())),
            psi: Arc::new(RwLock::new(psi)),
            ev0_ladder: Arc::new(Mutex::new(Ev0Ladder::new())),
        }
    }

    pub fn base(&self) -> &CubicCurve<Rational> {
        &self.base
    }

    /// rho = t / P(1,t), a uniformizer of the local ring at 0.
    pub fn rho(&self) -> &RationalFunction {
        &self.rho
    }

    /// P(1,t) = 1 + a t + b t^2 + c t^3.
    pub fn p_one_t(&self) -> &Polynomial {
        &self.p_one_t
    }

    /// rho' = 1/P(1/t, 1) = t^3/P(1,t), the twisting parameter of the chart
    /// at infinity.
    pub fn rho_prime(&self) -> RationalFunction {
        RationalFunction::new(
            Polynomial::monomial(Rational::one(), 3),
            self.p_one_t.clone(),
        )
    }

    /// The Weierstrass chart y^2 = x^3 + a rho x^2 + b rho^2 x + c rho^3.
    pub fn weierstrass(&self) -> &CubicCurve<RationalFunction> {
        &self.weierstrass
    }

    /// Whether the fibre at infinity is an elliptic curve (c != 0).
    pub fn infinity_is_elliptic(&self) -> bool {
        self.infinity_is_elliptic
    }

    /// Exact on-curve test: V^2 W P(1,t) = t P(U,W) as polynomials.
    pub fn on_curve(&self, p: &TwistPoint) -> bool {
        let lhs = &(&(&p.v * &p.v) * &p.w) * &self.p_one_t;
        let u2 = &p.u * &p.u;
        let w2 = &p.w * &p.w;
        let phom = &(&(&u2 * &p.u) + &(&u2 * &p.w).scale(&self.base.a))
            + &(&(&p.u * &w2).scale(&self.base.b) + &(&w2 * &p.w).scale(&self.base.c));
        lhs == phom.mul_monomial(&Rational::one(), 1)
    }

    /// (U:V:W) -> (rho U : rho V : W) on the Weierstrass chart.
    pub fn to_weierstrass(
        &self,
        p: &TwistPoint,
    ) -> Result<ProjectivePoint<RationalFunction>, TwistError> {
        if !self.on_curve(p) {
            return Err(CurveError::OffCurve.into());
        }
        let x = &self.rho * &RationalFunction::from_poly(p.u.clone());
        let y = &self.rho * &RationalFunction::from_poly(p.v.clone());
        let z = RationalFunction::from_poly(p.w.clone());
        Ok(ProjectivePoint::new(x, y, z))
    }

    /// (X:Y:Z) -> (X : Y : rho Z) back on the twisted cubic.
    pub fn from_weierstrass(
        &self,
        q: &ProjectivePoint<RationalFunction>,
    ) -> Result<TwistPoint, TwistError> {
        if !q.on_curve(&self.weierstrass) {
            return Err(CurveError::OffCurve.into());
        }
        let w = &self.rho * &q.z;
        Ok(TwistPoint::new(&q.x, &q.y, &w))
    }

    /// The canonical section gamma = (1:1:t).
    pub fn canonical_gamma(&self) -> TwistPoint {
        TwistPoint {
            u: Polynomial::one(),
            v: Polynomial::one(),
            w: Polynomial::var(),
        }
    }

    /// Group sum computed on the Weierstrass chart and transported back.
    pub fn add(&self, p: &TwistPoint, q: &TwistPoint) -> Result<TwistPoint, TwistError> {
        let pw = self.to_weierstrass(p)?;
        let qw = self.to_weierstrass(q)?;
        let sum = add_points(&self.weierstrass, &pw, &qw);
        self.from_weierstrass(&sum)
    }

    pub fn neg(&self, p: &TwistPoint) -> TwistPoint {
        if p.is_origin() {
            return p.clone();
        }
        TwistPoint::from_polys(p.u.clone(), -&p.v, p.w.clone())
    }

    /// n * gamma. Small |n| goes through the chord-tangent ladder; larger
    /// |n| through the division-polynomial closed form. Every returned point
    /// satisfies the twisted cubic.
    pub fn gamma_multiple(&self, n: i64) -> TwistPoint {
        if n == 0 {
            return TwistPoint::origin();
        }
        if n < 0 {
            return self.neg(&self.gamma_multiple(-n));
        }
        if let Some(p) = self.gamma_cache.read().unwrap().get(&n) {
            return p.clone();
        }
        let result = if n == 1 {
            self.canonical_gamma()
        } else if n <= CHORD_LADDER_MAX {
            let prev = self.gamma_multiple(n - 1);
            self.add(&prev, &self.canonical_gamma())
                .expect("gamma ladder points stay on the curve")
        } else {
            self.gamma_multiple_psi(n)
        };
        self.gamma_cache.write().unwrap().insert(n, result.clone());
        result
    }

    /// n gamma (n >= 2) via division polynomials of the base curve at
    /// x = 1/t:
    ///   u(n gamma) = 2 rev(phi_n psi~_n PE^e) / rev(Q_n)
    ///   w(n gamma) = 2 t rev(psi~_n^3 PE^(2e)) / rev(Q_n)
    /// with Q_n = psi~_{2n}/psi~_n = (psi~_{n+2} psi~_{n-1}^2 -
    /// psi~_{n-2} psi~_{n+1}^2)/2 (so the table only reaches n+2),
    /// e = [n even], rev the coefficient reversal realizing x = 1/t.
    fn gamma_multiple_psi(&self, n: i64) -> TwistPoint {
        let nn = n as usize;
        self.psi.write().unwrap().extend_to(nn + 2);
        let table = self.psi.read().unwrap();
        let p = &table.psi;
        let s = &table.sq;
        let pe = &table.pe;
        let even = nn.is_multiple_of(2);
        let psi_n = &p[nn];
        let psi_n2 = &s[nn];
        let one = Rational::one();
        let phi = if even {
            &(psi_n2 * pe).mul_monomial(&one, 1) - &(&p[nn + 1] * &p[nn - 1])
        } else {
            &psi_n2.mul_monomial(&one, 1) - &(&(&p[nn + 1] * &p[nn - 1]) * pe)
        };
        let q_n = (&(&p[nn + 2] * &s[nn - 1]) - &(&p[nn - 2] * &s[nn + 1]))
            .scale(&Rational::new(1.into(), 2.into()));
        let num_u = if even { &(&phi * psi_n) * pe } else { &phi * psi_n };
        let num_w = if even {
            &(psi_n2 * psi_n) * &table.pe2
        } else {
            psi_n2 * psi_n
        };
        let du = num_u.degree().expect("phi_n psi_n is nonzero");
        debug_assert_eq!(q_n.degree(), Some(du - 1));
        debug_assert_eq!(num_w.degree(), Some(du - 1));
        let two = Rational::from_integer(2.into());
        let den_rev = q_n.reverse(du - 1);
        let u = RationalFunction::new(num_u.reverse(du).scale(&two), den_rev.clone());
        let w = RationalFunction::new(
            num_w
                .reverse(du - 1)
                .scale(&two)
                .mul_monomial(&Rational::one(), 1),
            den_rev,
        );
        TwistPoint::new(&u, &RationalFunction::one(), &w)
    }

    /// Evaluation at 0: u = U/V reduced mod m. Defined on the affine part
    /// over the local ring (V != 0 and u, w in O).
    ///
    /// Orders and the value at 0 are read off the projective coordinates
    /// directly: for any representative, v0(U/V) = ord(U) - ord(V), so no
    /// fraction reduction is needed.
    pub fn ev0(&self, p: &TwistPoint) -> Result<Rational, TwistError> {
        if !self.in_affine_part(p) {
            return Err(TwistError::NotInAffinePart);
        }
        if p.u.is_zero() {
            return Ok(Rational::zero());
        }
        let ou = p.u.order_at_zero().unwrap();
        let ov = p.v.order_at_zero().unwrap();
        if ou > ov {
            return Ok(Rational::zero());
        }
        // ou == ov here (ou < ov would contradict in_affine_part)
        Ok(p.u.coeff(ou) / p.v.coeff(ov))
    }

    /// Chart at infinity: (u', w') = (u/t, w/t).
    pub fn chart_at_infinity(
        &self,
        p: &TwistPoint,
    ) -> Result<(RationalFunction, RationalFunction), TwistError> {
        let u = p.u_affine().ok_or(TwistError::ChartUndefined)?;
        let w = p.w_affine().ok_or(TwistError::ChartUndefined)?;
        let t = RationalFunction::var();
        Ok((&u / &t, &w / &t))
    }

    /// Membership in the affine part over O: V != 0 and u, w in O.
    pub fn in_affine_part(&self, p: &TwistPoint) -> bool {
        if p.v.is_zero() {
            return false;
        }
        let ov = p.v.order_at_zero().unwrap();
        let ord_ok = |c: &Polynomial| c.is_zero() || c.order_at_zero().unwrap() >= ov;
        ord_ok(&p.u) && ord_ok(&p.w)
    }

    /// Membership in the connected component: the reduction at t = 0 of the
    /// canonically scaled coordinates avoids the removed locus V = 0.
    pub fn in_connected_component(&self, p: &TwistPoint) -> bool {
        !p.v.coeff(0).is_zero()
    }

    /// Constant 2-torsion points (xi : 0 : 1) for the rational roots xi of P,
    /// plus the origin: the full torsion of the twisted curve.
    pub fn twist_two_torsion(&self) -> Vec<TwistPoint> {
        let mut out = vec![TwistPoint::origin()];
        for pt in self.base.two_torsion().iter().skip(1) {
            out.push(TwistPoint::from_polys(
                Polynomial::constant(pt.x.clone()),
                Polynomial::zero(),
                Polynomial::one(),
            ));
        }
        out
    }

    /// The fibre at infinity as a curve over Q together with gamma(inf) in
    /// its Weierstrass chart. Requires c != 0.
    pub fn fibre_at_infinity(
        &self,
    ) -> Result<(CubicCurve<Rational>, ProjectivePoint<Rational>), TwistError> {
        if !self.infinity_is_elliptic {
            return Err(TwistError::HypothesisNotVerified(
                "fibre at infinity is not elliptic (c = 0)".into(),
            ));
        }
        let c = &self.base.c;
        let rho0 = Rational::one() / c;
        let curve = CubicCurve::new(
            &self.base.a * &rho0,
            &self.base.b * &(&rho0 * &rho0),
            c * &(&rho0 * &rho0 * &rho0),
        )?;
        let point = ProjectivePoint::affine(Rational::zero(), rho0);
        Ok((curve, point))
    }

    /// Whether gamma(inf) has infinite order on the fibre at infinity.
    pub fn gamma_infinity_nontorsion(&self) -> Result<bool, TwistError> {
        let (curve, point) = self.fibre_at_infinity()?;
        Ok(!is_torsion(&curve, &point))
    }

    /// v_inf(u(n gamma)), guaranteed >= -1 when c != 0 and gamma(inf) has
    /// infinite order.
    pub fn ord_infinity_of_u(&self, n: i64) -> Result<Valuation, TwistError> {
        if !self.gamma_infinity_nontorsion()? {
            return Err(TwistError::HypothesisNotVerified(
                "gamma at infinity is torsion".into(),
            ));
        }
        if n == 0 {
            return Ok(Valuation::Infinite);
        }
        // v_inf(U/V) = deg V - deg U for any projective representative.
        let p = self.gamma_multiple(n);
        assert!(!p.v.is_zero(), "gamma multiples have V != 0");
        Ok(Valuation::Finite(
            p.v.degree().unwrap() as i64 - p.u.degree().expect("u(n gamma) != 0 for n != 0") as i64,
        ))
    }

    /// Exact truncated expansions of u(k gamma) at t = 0 for k = 0..=max_n.
    /// Every division in the ladder is by a series unit (the Weierstrass
    /// x-coordinates specialize to pairwise distinct values 1/k^2 at t = 0),
    /// so each returned coefficient is the true expansion coefficient.
    pub fn u_series_ladder_at_zero(&self, max_n: usize, prec: usize) -> Vec<PowerSeries> {
        let rho = PowerSeries::from_ratfunc(&self.rho, prec);
        let a = rho.scale(&self.base.a);
        let b = rho.square().scale(&self.base.b);
        let inv_p1t = PowerSeries::from_ratfunc(
            &RationalFunction::new(Polynomial::one(), self.p_one_t.clone()),
            prec,
        );
        // gamma on the chart: (x, y) = (rho/t, rho/t) = (1/P(1,t), 1/P(1,t)).
        self.series_ladder(max_n, prec, &a, &b, (inv_p1t.clone(), inv_p1t))
    }

    /// Exact truncated expansions of u'(k gamma) = u(k gamma)/t in the local
    /// parameter s = 1/t at infinity, for k = 0..=max_n. Requires c != 0 and
    /// gamma(inf) of infinite order, which make the ladder divisors units.
    pub fn u_series_ladder_at_infinity(
        &self,
        max_n: usize,
        prec: usize,
    ) -> Result<Vec<PowerSeries>, TwistError> {
        if !self.gamma_infinity_nontorsion()? {
            return Err(TwistError::HypothesisNotVerified(
                "gamma at infinity is torsion".into(),
            ));
        }
        // rho_s = 1/P(s,1) = 1/(s^3 + a s^2 + b s + c), a unit since c != 0.
        let p_s = Polynomial::new(vec![
            self.base.c.clone(),
            self.base.b.clone(),
            self.base.a.clone(),
            Rational::one(),
        ]);
        let rho_s = PowerSeries::from_ratfunc(&RationalFunction::new(Polynomial::one(), p_s), prec);
        let a = rho_s.scale(&self.base.a);
        let b = rho_s.square().scale(&self.base.b);
        // gamma in the s-chart: (x, y) = (rho_s * s, rho_s).
        let xg = rho_s.mul(&PowerSeries::var(prec));
        Ok(self.series_ladder(max_n, prec, &a, &b, (xg, rho_s)))
    }

    /// Chord ladder on a Weierstrass chart with series coefficients:
    /// returns u_k = x_k/y_k for k gamma, k = 0..=max_n (u_0 = 0).
    fn series_ladder(
        &self,
        max_n: usize,
        prec: usize,
        a: &PowerSeries,
        b: &PowerSeries,
        gamma: (PowerSeries, PowerSeries),
    ) -> Vec<PowerSeries> {
        let (xg, yg) = gamma;
        let mut out = vec![PowerSeries::zero(prec)];
        if max_n == 0 {
            return out;
        }
        out.push(xg.div(&yg));
        let two = PowerSeries::constant(Rational::from_integer(2.into()), prec);
        let three = PowerSeries::constant(Rational::from_integer(3.into()), prec);
        let mut cur = (xg.clone(), yg.clone());
        for k in 2..=max_n {
            let (xn, yn) = &cur;
            let lambda = if k == 2 {
                let num = three.mul(&xg.square()).add(&two.mul(a).mul(&xg)).add(b);
                num.div(&two.mul(&yg))
            } else {
                let den = xn.sub(&xg);
                assert!(
                    den.is_unit(),
                    "series ladder precondition failed: coincident reductions"
                );
                yn.sub(&yg).div(&den)
            };
            let x_next = lambda.square().sub(a).sub(xn).sub(&xg);
            let y_next = lambda.mul(&xn.sub(&x_next)).sub(yn);
            assert!(y_next.is_unit(), "series ladder: y must stay a unit");
            out.push(x_next.div(&y_next));
            cur = (x_next, y_next);
        }
        out
    }

    /// Reduced affine coordinates (u, w) of n gamma, memoized per model.
    pub fn gamma_uw(&self, n: i64) -> (RationalFunction, RationalFunction) {
        if n == 0 {
            return (RationalFunction::zero(), RationalFunction::zero());
        }
        if let Some(pair) = self.uw_cache.read().unwrap().get(&n) {
            return pair.clone();
        }
        let p = self.gamma_multiple(n);
        let pair = (
            p.u_affine().expect("gamma multiples have V != 0"),
            p.w_affine().expect("gamma multiples have V != 0"),
        );
        self.uw_cache.write().unwrap().insert(n, pair.clone());
        pair
    }

    /// ev0 of n gamma through the exact series ladder, without materializing
    /// the full rational-function point. Incrementally cached per model.
    pub fn ev0_gamma_series(&self, n: i64) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        let k = n.unsigned_abs() as usize;
        let mut lad = self.ev0_ladder.lock().unwrap();
        if lad.consts.len() <= k {
            let prec = 2;
            let rho = PowerSeries::from_ratfunc(&self.rho, prec);
            let a = rho.scale(&self.base.a);
            let b = rho.square().scale(&self.base.b);
            let inv_p1t = PowerSeries::from_ratfunc(
                &RationalFunction::new(Polynomial::one(), self.p_one_t.clone()),
                prec,
            );
            let (xg, yg) = (inv_p1t.clone(), inv_p1t);
            let two = PowerSeries::constant(Rational::from_integer(2.into()), prec);
            let three = PowerSeries::constant(Rational::from_integer(3.into()), prec);
            while lad.consts.len() <= k {
                let m = lad.consts.len();
                let next = if m == 1 {
                    (xg.clone(), yg.clone())
                } else {
                    let (xn, yn) = lad.cur.as_ref().unwrap();
                    let lambda = if m == 2 {
                        three
                            .mul(&xg.square())
                            .add(&two.mul(&a).mul(&xg))
                            .add(&b)
                            .div(&two.mul(&yg))
                    } else {
                        yn.sub(&yg).div(&xn.sub(&xg))
                    };
                    let x_next = lambda.square().sub(&a).sub(xn).sub(&xg);
                    let y_next = lambda.mul(&xn.sub(&x_next)).sub(yn);
                    (x_next, y_next)
                };
                let u0 = next.0.coeff(0) / next.1.coeff(0);
                lad.consts.push(u0);
                lad.cur = Some(next);
            }
        }
        let v = lad.consts[k].clone();
        if n < 0 {
            -v
        } else {
            v
        }
    }
}

/// Admissibility report for a cover g = lambda * f of the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// (i) every branch point of g is simple (no ramification index >= 3).
    pub simple_branching: bool,
    /// (ii) g is etale above infinity and above every branch point of the
    /// double cover (0 and the roots of P(1,t)).
    pub etale_over_branch_locus: bool,
    /// (iii) every designated zero is a simple zero of g.
    pub q_simple_zeros: bool,
    /// The designated zero set used for (iii).
    pub q: Vec<Rational>,
    /// Deterministic failure descriptions; empty iff admissible.
    pub failures: Vec<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.simple_branching && self.etale_over_branch_locus && self.q_simple_zeros
    }
}

impl std::fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "admissible: {}", self.admissible())?;
        writeln!(f, "  simple branching:        {}", self.simple_branching)?;
        writeln!(f, "  etale over branch locus: {}", self.etale_over_branch_locus)?;
        writeln!(f, "  designated zeros simple: {}", self.q_simple_zeros)?;
        write!(
            f,
            "  designated zeros: [{}]",
            self.q.iter().map(rational_to_text).collect::<Vec<_>>().join(", ")
        )?;
        for msg in &self.failures {
            write!(f, "\n  failure: {}", msg)?;
        }
        Ok(())
    }
}

/// Ramification index of g at x = infinity.
fn ramification_at_infinity(g: &RationalFunction) -> i64 {
    let h = g.at_infinity();
    match h.ord_at_zero() {
        Valuation::Infinite => 1,
        Valuation::Finite(v) if v < 0 => -v,
        _ => {
            let c = h.reduce_mod_m().unwrap();
            let shifted = &h - &RationalFunction::constant(c);
            match shifted.ord_at_zero() {
                Valuation::Finite(v) => v,
                Valuation::Infinite => 1,
            }
        }
    }
}

/// Value of g at infinity; None for a pole.
fn value_at_infinity(g: &RationalFunction) -> Option<Rational> {
    g.at_infinity().reduce_mod_m().ok()
}

/// Admissibility of the cover lambda*f : P^1 -> P^1 with respect to the
/// self-twist double cover of `model` (branch locus {0} plus the roots of
/// P(1,t), with infinity always included), and the designated zero set `q`
/// (defaults to all rational zeros of f).
pub fn is_admissible(
    f: &RationalFunction,
    lambda: &Rational,
    model: &SelfTwistModel,
    q: Option<Vec<Rational>>,
) -> Result<AdmissibilityReport, TwistError> {
    if f.is_constant() || lambda.is_zero() {
        return Err(TwistError::ConstantMap);
    }
    let g = f * &RationalFunction::constant(lambda.clone());
    let n = g.num().clone();
    let d = g.den().clone();
    let wronskian = &(&n.derivative() * &d) - &(&n * &d.derivative());
    let mut failures = Vec::new();

    // (i) simple branching: squarefree Wronskian, and index <= 2 at x = inf.
    let mut simple_branching = true;
    if !wronskian.is_constant() && !wronskian.is_coprime(&wronskian.derivative()) {
        simple_branching = false;
        failures.push("branch point of multiplicity >= 3 (Wronskian not squarefree)".into());
    }
    let e_inf = ramification_at_infinity(&g);
    if e_inf >= 3 {
        simple_branching = false;
        failures.push("ramification index >= 3 at x=inf".into());
    }

    // (ii) etale above infinity and above the branch points of the double
    // cover: beta = inf, beta = 0, and the roots of P(1,t).
    let mut etale = true;
    let g_inf = value_at_infinity(&g);
    {
        // beta = inf: all poles simple.
        let mut ok = d.is_constant() || d.is_coprime(&d.derivative());
        if g_inf.is_none() && e_inf != 1 {
            ok = false;
        }
        if !ok {
            etale = false;
            failures.push("non-étale above branch point inf".into());
        }
    }
    {
        // beta = 0: every zero simple, including a zero at x = inf.
        let mut ok = n.is_coprime(&wronskian);
        if g_inf.as_ref().map(Zero::is_zero) == Some(true) && e_inf != 1 {
            ok = false;
        }
        if !ok {
            etale = false;
            failures.push("non-étale above branch point 0".into());
        }
    }
    {
        // The fibre over all conjugate roots of P(1,t) at once: D^3 P(1, N/D).
        let d2 = &d * &d;
        let n2 = &n * &n;
        let fibre = &(&(&d2 * &d) + &(&n * &d2).scale(&model.base().a))
            + &(&(&n2 * &d).scale(&model.base().b) + &(&n2 * &n).scale(&model.base().c));
        let mut ok = fibre.is_constant() || fibre.is_coprime(&wronskian);
        if let Some(v) = &g_inf {
            if model.p_one_t().eval(v).is_zero() && e_inf != 1 {
                ok = false;
            }
        }
        if !ok {
            etale = false;
            failures.push("non-étale above a branch point 1/xi of the double cover".into());
        }
    }

    // (iii) designated zeros are simple zeros of g.
    let q = q.unwrap_or_else(|| f.num().rational_roots());
    let mut q_simple = true;
    let nd = n.derivative();
    for point in &q {
        let simple = n.eval(point).is_zero() && !nd.eval(point).is_zero();
        if !simple {
            q_simple = false;
            failures.push(format!(
                "designated zero {} is not a simple zero",
                rational_to_text(point)
            ));
        }
    }

    Ok(AdmissibilityReport {
        simple_branching,
        etale_over_branch_locus: etale,
        q_simple_zeros: q_simple,
        q,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn model() -> SelfTwistModel {
        SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(1)).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(model().rho(), &rf("t/(1 - t^2 + t^3)"));
        let m2 = SelfTwistModel::new(rat_i64(0), rat_i64(0), rat_i64(1)).unwrap();
        assert_eq!(m2.rho(), &rf("t/(1 + t^3)"));
        assert!(SelfTwistModel::new(rat_i64(0), rat_i64(0), rat_i64(0)).is_err());
        assert!(m2.infinity_is_elliptic());
        let m3 = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(0)).unwrap();
        assert!(!m3.infinity_is_elliptic());
    }

    #[test]
    fn gamma_is_canonical() {
        let m = model();
        let g = m.canonical_gamma();
        assert!(m.on_curve(&g));
        assert_eq!(g.to_string(), "[1; 1; t]");
        // affine chart (u, w) = (1, t)
        assert_eq!(g.u_affine().unwrap(), rf("1"));
        assert_eq!(g.w_affine().unwrap(), rf("t"));
        // value at 0 is (1:1:0)
        assert_eq!(g.coord_u().coeff(0), rat_i64(1));
        assert_eq!(g.coord_v().coeff(0), rat_i64(1));
        assert_eq!(g.coord_w().coeff(0), rat_i64(0));
    }

    #[test]
    fn weierstrass_charts_are_inverse() {
        let m = model();
        // origin fixed
        let o = TwistPoint::origin();
        let ow = m.to_weierstrass(&o).unwrap();
        assert!(ow.is_origin());
        assert_eq!(m.from_weierstrass(&ow).unwrap(), o);
        // gamma maps to (rho/t, rho/t)
        let g = m.canonical_gamma();
        let gw = m.to_weierstrass(&g).unwrap();
        let (x, y) = gw.to_affine().unwrap();
        let expected = m.rho() / &RationalFunction::var();
        assert_eq!(x, expected);
        assert_eq!(y, expected);
        assert!(gw.on_curve(m.weierstrass()));
        // roundtrip on multiples
        for n in [2i64, 3, 5, -4] {
            let p = m.gamma_multiple(n);
            let q = m.to_weierstrass(&p).unwrap();
            assert_eq!(m.from_weierstrass(&q).unwrap(), p);
        }
    }

    #[test]
    fn gamma_multiples_small() {
        let m = model();
        assert!(m.gamma_multiple(0).is_origin());
        assert_eq!(m.gamma_multiple(1), m.canonical_gamma());
        let g2 = m.gamma_multiple(2);
        assert!(m.on_curve(&g2));
        assert_eq!(m.ev0(&g2).unwrap(), rat_i64(2));
    }

    #[test]
    fn psi_route_matches_chord_route() {
        let m = model();
        let mut chord = m.canonical_gamma();
        for n in 2..=9i64 {
            chord = m.add(&chord, &m.canonical_gamma()).unwrap();
            let psi = m.gamma_multiple_psi(n);
            assert_eq!(psi, chord, "routes disagree at n = {}", n);
        }
    }

    #[test]
    fn ev0_homomorphism_window() {
        let m = model();
        for n in -10..=10i64 {
            assert_eq!(m.ev0(&m.gamma_multiple(n)).unwrap(), rat_i64(n), "ev0({}g)", n);
        }
        assert_eq!(m.ev0(&TwistPoint::origin()).unwrap(), rat_i64(0));
    }

    #[test]
    fn ev0_rejects_nonaffine() {
        let m = SelfTwistModel::new(rat_i64(-6), rat_i64(11), rat_i64(-6)).unwrap();
        let tors = m.twist_two_torsion();
        assert_eq!(tors.len(), 4);
        for p in &tors[1..] {
            assert!(m.on_curve(p));
            assert_eq!(m.ev0(p), Err(TwistError::NotInAffinePart));
        }
    }

    #[test]
    fn chart_at_infinity_consistency() {
        let m = model();
        let g = m.canonical_gamma();
        let (u1, w1) = m.chart_at_infinity(&g).unwrap();
        assert_eq!(u1, rf("1/t"));
        assert_eq!(w1, rf("1"));
        assert_eq!(
            m.chart_at_infinity(&TwistPoint::origin()).unwrap(),
            (RationalFunction::zero(), RationalFunction::zero())
        );
        // w' = rho' P(u', w') on multiples
        let rp = m.rho_prime();
        for n in [1i64, 2, 3, 7] {
            let p = m.gamma_multiple(n);
            let (u, w) = m.chart_at_infinity(&p).unwrap();
            let u2 = &u * &u;
            let w2 = &w * &w;
            let phom = &(&u2 * &u)
                + &(&(&u2 * &w) * &RationalFunction::constant(m.base().a.clone()))
                + &(&(&u * &w2) * &RationalFunction::constant(m.base().b.clone()))
                + &(&(&w2 * &w) * &RationalFunction::constant(m.base().c.clone()));
            assert_eq!(w, &rp * &phom, "chart equation at n = {}", n);
        }
    }

    #[test]
    fn order_at_infinity_bound() {
        let m = model();
        assert!(m.gamma_infinity_nontorsion().unwrap());
        assert_eq!(m.ord_infinity_of_u(0).unwrap(), Valuation::Infinite);
        assert_eq!(m.ord_infinity_of_u(1).unwrap(), Valuation::Finite(0));
        for n in 2..=10i64 {
            let v = m.ord_infinity_of_u(n).unwrap();
            assert!(v.at_least(-1), "v_inf(u({}g)) = {} < -1", n, v);
        }
        let degenerate = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(0)).unwrap();
        assert!(matches!(
            degenerate.ord_infinity_of_u(2),
            Err(TwistError::HypothesisNotVerified(_))
        ));
    }

    #[test]
    fn membership_predicates() {
        let m = model();
        let g = m.canonical_gamma();
        assert!(m.in_connected_component(&g) && m.in_affine_part(&g));
        for n in [2i64, 3, 8, -5] {
            let p = m.gamma_multiple(n);
            assert!(m.in_connected_component(&p) && m.in_affine_part(&p), "n = {}", n);
            // w(n gamma) lands in the maximal ideal
            assert!(p.w_affine().unwrap().in_maximal_ideal());
        }
        let split = SelfTwistModel::new(rat_i64(-6), rat_i64(11), rat_i64(-6)).unwrap();
        for p in &split.twist_two_torsion()[1..] {
            assert!(!split.in_connected_component(p));
            assert!(!split.in_affine_part(p));
        }
    }

    #[test]
    fn series_ladders_match_exact_points() {
        let m = model();
        let prec = 8;
        let ladder0 = m.u_series_ladder_at_zero(12, prec);
        let ladder_inf = m.u_series_ladder_at_infinity(12, prec).unwrap();
        for n in 1..=12i64 {
            let p = m.gamma_multiple(n);
            let u = p.u_affine().unwrap();
            let expected0 = PowerSeries::from_coeffs(u.series_at_zero(prec).unwrap());
            assert_eq!(ladder0[n as usize], expected0, "t=0 series at n = {}", n);
            // u' = u/t expanded at s = 1/t
            let uprime_s = (&u / &RationalFunction::var()).at_infinity();
            let expected_inf = PowerSeries::from_coeffs(uprime_s.series_at_zero(prec).unwrap());
            assert_eq!(ladder_inf[n as usize], expected_inf, "s=0 series at n = {}", n);
        }
    }

    #[test]
    fn ev0_series_route() {
        let m = model();
        for n in [-7i64, -1, 0, 1, 5, 20, 60] {
            assert_eq!(m.ev0_gamma_series(n), rat_i64(n), "series ev0 at {}", n);
        }
    }

    #[test]
    fn numerator_degree_growth() {
        let m = model();
        let mut last = 0usize;
        for n in 1..=10i64 {
            let p = m.gamma_multiple(n);
            let d = p.coord_u().degree().unwrap_or(0);
            assert!(d >= last, "degree growth must be nondecreasing");
            last = d;
        }
        // superlinear by n = 10: degree comfortably exceeds 2n
        assert!(last > 20);
    }

    #[test]
    fn admissibility_examples() {
        let m = model();
        // f = x is admissible with Q = {0}
        let rep = is_admissible(&rf("t"), &rat_i64(1), &m, None).unwrap();
        assert!(rep.admissible(), "failures: {:?}", rep.failures);
        assert_eq!(rep.q, vec![rat_i64(0)]);
        // f = x^2 has a double zero above 0 (a branch point of the cover)
        let rep2 = is_admissible(&rf("t^2"), &rat_i64(1), &m, None).unwrap();
        assert!(!rep2.admissible());
        assert!(rep2
            .failures
            .iter()
            .any(|s| s == "non-étale above branch point 0"));
        // deterministic
        let rep2b = is_admissible(&rf("t^2"), &rat_i64(1), &m, None).unwrap();
        assert_eq!(rep2, rep2b);
        // constant map refused
        assert_eq!(
            is_admissible(&rf("5"), &rat_i64(1), &m, None),
            Err(TwistError::ConstantMap)
        );
        assert_eq!(
            is_admissible(&rf("t"), &rat_i64(0), &m, None),
            Err(TwistError::ConstantMap)
        );
    }

    #[test]
    fn admissibility_cubic_cover() {
        // f = x^3 - 3x has critical values +-2; admissibility against the
        // default model is decided by the gcd tests.
        let m = model();
        let f = rf("t^3 - 3*t");
        let rep = is_admissible(&f, &rat_i64(1), &m, None).unwrap();
        // Wronskian 3x^2 - 3 is squarefree, but the pole at infinity is
        // triple, so both (i) and (ii) fail deterministically.
        assert!(!rep.simple_branching);
        assert!(rep.failures.iter().any(|s| s == "ramification index >= 3 at x=inf"));
        assert!(rep.failures.iter().any(|s| s == "non-étale above branch point inf"));
        // zeros of f: 0 and +-sqrt(3); rational designated zeros = {0}, all simple
        assert!(rep.q_simple_zeros);
        assert_eq!(rep.q, vec![rat_i64(0)]);
    }

    #[test]
    fn point_serialization_roundtrip() {
        let m = model();
        for n in [0i64, 1, 2, 5, -3] {
            let p = m.gamma_multiple(n);
            let s = p.to_string();
            assert_eq!(TwistPoint::parse(&s).unwrap(), p, "roundtrip at n = {}", n);
        }
        assert!(TwistPoint::parse("[0; 0; 0]").is_err());
        assert!(TwistPoint::parse("nonsense").is_err());
    }

    #[test]
    fn neg_and_add_are_group_ops() {
        let m = model();
        let g2 = m.gamma_multiple(2);
        let g3 = m.gamma_multiple(3);
        let s = m.add(&g2, &g3).unwrap();
        assert_eq!(s, m.gamma_multiple(5));
        let z = m.add(&g2, &m.neg(&g2)).unwrap();
        assert!(z.is_origin());
        assert_eq!(m.add(&g2, &TwistPoint::origin()).unwrap(), g2);
    }

    #[test]
    fn ev0_additivity_window() {
        let m = model();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let lhs = m.ev0(&m.gamma_multiple(a + b)).unwrap();
                let rhs = m.ev0(&m.gamma_multiple(a)).unwrap() + m.ev0(&m.gamma_multiple(b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn caches_support_concurrent_readers() {
        let m = model();
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let m = m.clone();
                std::thread::spawn(move || {
                    for n in 1..=10i64 {
                        let p = m.gamma_multiple(n + i % 2);
                        assert_eq!(m.ev0(&p).unwrap(), rat_i64(n + i % 2));
                        let _ = m.gamma_uw(n);
                        let _ = m.ev0_gamma_series(20 * n);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn weierstrass_group_law_over_qt() {
        // associativity/commutativity directly on the chart over Q(t)
        let m = model();
        let curve = m.weierstrass();
        let pts: Vec<_> = (-2..=2i64)
            .map(|n| m.to_weierstrass(&m.gamma_multiple(n)).unwrap())
            .collect();
        for p in &pts {
            assert!(p.on_curve(curve));
            for q in &pts {
                let pq = crate::elliptic::add_points(curve, p, q);
                assert!(pq.on_curve(curve));
                assert_eq!(pq, crate::elliptic::add_points(curve, q, p));
                for r in &pts {
                    let lhs = crate::elliptic::add_points(curve, &pq, r);
                    let rhs =
                        crate::elliptic::add_points(curve, p, &crate::elliptic::add_points(curve, q, r));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn base_with_rational_coefficients() {
        // non-integer coefficients exercise the psi table over Q
        let m = SelfTwistModel::new(rat(1, 2), rat(-3, 4), rat(2, 1)).unwrap();
        for n in [2i64, 13, 14] {
            let p = m.gamma_multiple(n);
            assert!(m.on_curve(&p));
            assert_eq!(m.ev0(&p).unwrap(), rat_i64(n));
        }
    }
}
