//! Divisibility gadgets for the three backends: the auxiliary positive-rank
//! curve and its quotient set (dense in prescribed completions), the real
//! five-squares clause, and the p-adic isotropy clause built from the forms
//! phi_e = <t, at, -1, -u_e> x <1, varpi> with
//! u_e = a^e((1+t)^3 r + c3 t^3 + c5 t^5), together with the valuation map
//! r -> t + t^2 + (r/(1+t^2))^2 separating the Y-sets.

use crate::elliptic::{add_points, is_torsion, CubicCurve, CurveError, ProjectivePoint};
use crate::formula::{Formula, Term};
use crate::local::{is_prime_u64, is_psd_on_r, vp, DiagonalForm, LocalError};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ratfunc::{RationalFunction, Valuation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Auxiliary curve with a certified infinite-order generator; its quotient
/// set {u(P1)/u(P2)} is the density gadget.
#[derive(Debug, Clone)]
pub struct ConSetConfig {
    e1: CubicCurve<Rational>,
    generator: ProjectivePoint<Rational>,
}

impl ConSetConfig {
    pub fn new(
        e1: CubicCurve<Rational>,
        generator: ProjectivePoint<Rational>,
    ) -> Result<Self, GadgetError> {
        if !generator.on_curve(&e1) {
            return Err(CurveError::OffCurve.into());
        }
        if is_torsion(&e1, &generator) {
            return Err(GadgetError::PreconditionViolated(
                "generator must have infinite order".into(),
            ));
        }
        Ok(ConSetConfig { e1, generator })
    }

    /// y^2 = x^3 + 24 with generator (1, 5); the generator's infinite order
    /// is established by the multiples oracle in `new`.
    pub fn default_curve() -> Self {
        let e1 = CubicCurve::new(Rational::zero(), Rational::zero(), Rational::from_integer(24.into()))
            .expect("nonsingular");
        let g = ProjectivePoint::affine(Rational::one(), Rational::from_integer(5.into()));
        Self::new(e1, g).expect("the default generator has infinite order")
    }

    pub fn curve(&self) -> &CubicCurve<Rational> {
        &self.e1
    }

    pub fn generator(&self) -> &ProjectivePoint<Rational> {
        &self.generator
    }

    /// u-coordinates u(nG) = x/y of the affine model for n = 1..=bound
    /// (None where the multiple hits y = 0 or the origin).
    pub fn u_multiples(&self, bound: usize) -> Vec<Option<Rational>> {
        let mut out = Vec::with_capacity(bound);
        let mut p = self.generator.clone();
        for _ in 1..=bound {
            let u = p
                .to_affine()
                .filter(|(_, y)| !y.is_zero())
                .map(|(x, y)| x / y);
            out.push(u);
            p = add_points(&self.e1, &p, &self.generator);
        }
        out
    }

    /// The quotient set {u(nG)/u(mG) : 0 < |n|, |m| <= bound, u(mG) != 0},
    /// deduplicated and sorted.
    pub fn con_quotients(&self, bound: usize) -> Vec<Rational> {
        let us = self.u_multiples(bound);
        let mut vals: Vec<Rational> = Vec::new();
        for un in us.iter().flatten() {
            for um in us.iter().flatten() {
                if um.is_zero() {
                    continue;
                }
                // signs: u(-nG) = -u(nG)
                let q = un / um;
                vals.push(q.clone());
                vals.push(-q);
            }
        }
        vals.sort();
        vals.dedup();
        vals
    }
}

/// Constants of the p-adic gadget: odd prime p, a root-of-unity surrogate
/// a = +-1, varpi with odd p-adic valuation, and the search parameters
/// c3, c5.
#[derive(Debug, Clone)]
pub struct PadicGadgetConfig {
    pub p: u64,
    pub a: Rational,
    pub varpi: Rational,
    pub c3: Rational,
    pub c5: Rational,
}

impl PadicGadgetConfig {
    pub fn new(
        p: u64,
        a: Rational,
        varpi: Rational,
        c3: Rational,
        c5: Rational,
    ) -> Result<Self, GadgetError> {
        if p == 2 || !is_prime_u64(p) {
            return Err(GadgetError::PreconditionViolated(
                "p must be an odd prime".into(),
            ));
        }
        if a.clone().abs() != Rational::one() {
            return Err(GadgetError::PreconditionViolated(
                "the root-of-unity surrogate must be +1 or -1 over Q".into(),
            ));
        }
        match vp(&varpi, p) {
            Valuation::Finite(v) if v.rem_euclid(2) == 1 => {}
            _ => {
                return Err(GadgetError::PreconditionViolated(
                    "varpi must have odd p-adic valuation".into(),
                ))
            }
        }
        Ok(PadicGadgetConfig { p, a, varpi, c3, c5 })
    }
}

/// u_e = a^e ((1+t)^3 r + c3 t^3 + c5 t^5), reduced.
pub fn build_ue(r: &RationalFunction, cfg: &PadicGadgetConfig, e: u8) -> RationalFunction {
    assert!(e <= 1);
    let one_plus_t_cubed = RationalFunction::from_poly(Polynomial::from_i64s(&[1, 1]).pow(3));
    let t3 = RationalFunction::from_poly(Polynomial::monomial(cfg.c3.clone(), 3));
    let t5 = RationalFunction::from_poly(Polynomial::monomial(cfg.c5.clone(), 5));
    let core = &(&one_plus_t_cubed * r) + &(&t3 + &t5);
    if e == 1 {
        &core * &RationalFunction::constant(cfg.a.clone())
    } else {
        core
    }
}

/// phi_e = <t, at, -1, -u_e> x <1, varpi> as an 8-dimensional diagonal form
/// over Q(t), in the fixed coefficient order
/// <t, at, -1, -u_e, varpi t, a varpi t, -varpi, -varpi u_e>.
pub fn build_phie(
    cfg: &PadicGadgetConfig,
    u_e: &RationalFunction,
) -> Result<DiagonalForm<RationalFunction>, GadgetError> {
    if u_e.is_zero() {
        return Err(LocalError::ZeroCoefficient.into());
    }
    let t = RationalFunction::var();
    let a = RationalFunction::constant(cfg.a.clone());
    let w = RationalFunction::constant(cfg.varpi.clone());
    let neg_ue = -u_e;
    let coeffs = vec![
        t.clone(),
        &a * &t,
        -RationalFunction::one(),
        neg_ue.clone(),
        &w * &t,
        &(&a * &w) * &t,
        -&w,
        &w * &neg_ue,
    ];
    Ok(DiagonalForm::new_over_qt(coeffs)?)
}

/// Newton polygon of the numerator of u_e at the gadget prime: the slope
/// data feeding the choice of c3 and c5. A diagnostic, not a search
/// procedure; the constants are inputs.
pub fn ue_newton_polygon(
    r: &RationalFunction,
    cfg: &PadicGadgetConfig,
    e: u8,
) -> Result<crate::local::NewtonPolygon, GadgetError> {
    let ue = build_ue(r, cfg, e);
    Ok(crate::local::newton_polygon(ue.num(), cfg.p)?)
}

/// Classification by (v_inf(r) = -2, v_0(r) in {0, 1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YMembership {
    Y0,
    Y1,
    Neither,
}

pub fn y_membership(r: &RationalFunction) -> YMembership {
    if r.ord_at_infinity() != Valuation::Finite(-2) {
        return YMembership::Neither;
    }
    match r.ord_at_zero() {
        Valuation::Finite(0) => YMembership::Y0,
        Valuation::Finite(1) => YMembership::Y1,
        _ => YMembership::Neither,
    }
}

/// The valuation-normalizing map s = t + t^2 + (r/(1+t^2))^2. For r with
/// v_inf(r) >= -2 and v_0(r) >= 0 the result satisfies v_inf(s) = -2 and
/// v_0(s) = 0 or 1 according to whether v_0(r) = 0 or > 0.
pub fn varkr_reduce(r: &RationalFunction) -> Result<RationalFunction, GadgetError> {
    if !r.ord_at_infinity().at_least(-2) || !r.ord_at_zero().at_least(0) {
        return Err(GadgetError::PreconditionViolated(
            "need v_inf(r) >= -2 and v_0(r) >= 0".into(),
        ));
    }
    let t_plus_t2 = RationalFunction::from_poly(Polynomial::from_i64s(&[0, 1, 1]));
    let denom = RationalFunction::from_poly(Polynomial::from_i64s(&[1, 0, 1]));
    let scaled = r / &denom;
    Ok(&t_plus_t2 + &(&scaled * &scaled))
}

/// Membership of v in the quotient set: exists points P1, P2 on the affine
/// model of the auxiliary curve with v u(P2) = u(P1) and u(P2) invertible.
/// The affine model is w = P(u, w) (coordinates u = X/Y, w = Z/Y), so the
/// curve equation appears once per point.
pub fn con_clause(cfg: &ConSetConfig, v: &Term, prefix: &str) -> Formula {
    let u1 = format!("{prefix}_u1");
    let w1 = format!("{prefix}_w1");
    let u2 = format!("{prefix}_u2");
    let w2 = format!("{prefix}_w2");
    let inv = format!("{prefix}_inv");
    let curve_eq = |u: &str, w: &str| -> Formula {
        // w = u^3 + a u^2 w + b u w^2 + c w^3
        let a = Term::constant(RationalFunction::constant(cfg.e1.a.clone()));
        let b = Term::constant(RationalFunction::constant(cfg.e1.b.clone()));
        let c = Term::constant(RationalFunction::constant(cfg.e1.c.clone()));
        let (u, w) = (Term::var(u), Term::var(w));
        Formula::eq(
            w.clone(),
            Term::add(vec![
                u.clone().pow(3),
                Term::mul(vec![a, u.clone().square(), w.clone()]),
                Term::mul(vec![b, u, w.clone().square()]),
                Term::mul(vec![c, w.pow(3)]),
            ]),
        )
    };
    Formula::exists(
        vec![u1.clone(), w1.clone(), u2.clone(), w2.clone(), inv.clone()],
        Formula::And(vec![
            curve_eq(&u1, &w1),
            curve_eq(&u2, &w2),
            Formula::eq(
                Term::mul(vec![v.clone(), Term::var(&u2)]),
                Term::var(&u1),
            ),
            Formula::eq(
                Term::mul(vec![Term::var(&u2), Term::var(&inv)]),
                Term::int(1),
            ),
        ]),
    )
}

/// The real clause phi(x): exists alpha, beta in Con and x1..x5 with
/// (alpha - t^-1) x^2 + beta = x1^2 + ... + x5^2, emitted with denominators
/// cleared: (alpha t - 1) x^2 + beta t = t (x1^2 + ... + x5^2).
pub fn real_phi_clause(cfg: &ConSetConfig, x: &Term, prefix: &str) -> Formula {
    let alpha = format!("{prefix}_alpha");
    let beta = format!("{prefix}_beta");
    let squares: Vec<String> = (1..=5).map(|i| format!("{prefix}_x{i}")).collect();
    let t = Term::constant(RationalFunction::var());
    let lhs = Term::add(vec![
        Term::mul(vec![
            Term::add(vec![
                Term::mul(vec![Term::var(&alpha), t.clone()]),
                Term::int(-1),
            ]),
            x.clone().square(),
        ]),
        Term::mul(vec![Term::var(&beta), t.clone()]),
    ]);
    let rhs = Term::mul(vec![
        t,
        Term::add(squares.iter().map(|s| Term::var(s).square()).collect()),
    ]);
    let mut vars = vec![alpha.clone(), beta.clone()];
    vars.extend(squares);
    Formula::exists(
        vars,
        Formula::And(vec![
            con_clause(cfg, &Term::var(&alpha), &format!("{prefix}_ca")),
            con_clause(cfg, &Term::var(&beta), &format!("{prefix}_cb")),
            Formula::eq(lhs, rhs),
        ]),
    )
}

/// Isotropy of an 8-variable diagonal form, expressed positively: the form
/// vanishes on (x1..x8) and some coordinate is invertible (the nonzero
/// pivot disjunction).
fn isotropy_clause(coeffs: Vec<Term>, prefix: &str) -> Formula {
    let xs: Vec<String> = (1..=coeffs.len()).map(|i| format!("{prefix}_x{i}")).collect();
    let sum = Term::add(
        coeffs
            .into_iter()
            .zip(&xs)
            .map(|(c, x)| Term::mul(vec![c, Term::var(x).square()]))
            .collect(),
    );
    let pivots = Formula::Or(
        xs.iter()
            .enumerate()
            .map(|(i, x)| {
                let q = format!("{prefix}_q{}", i + 1);
                Formula::exists(
                    vec![q.clone()],
                    Formula::eq(
                        Term::mul(vec![Term::var(x), Term::var(&q)]),
                        Term::int(1),
                    ),
                )
            })
            .collect(),
    );
    Formula::exists(
        xs.clone(),
        Formula::And(vec![Formula::eq(sum, Term::int(0)), pivots]),
    )
}

/// The p-adic clause D(r): exists c3, c5 in Con such that phi_0 and phi_1
/// are isotropic, with u_e = a^e((1+t)^3 r + c3 t^3 + c5 t^5) carried
/// symbolically in the coefficient terms.
pub fn padic_d_clause(
    con: &ConSetConfig,
    cfg: &PadicGadgetConfig,
    r: &Term,
    prefix: &str,
) -> Formula {
    let c3 = format!("{prefix}_c3");
    let c5 = format!("{prefix}_c5");
    let t = RationalFunction::var();
    let one_plus_t3 = RationalFunction::from_poly(Polynomial::from_i64s(&[1, 1]).pow(3));
    let ue = |e: u8| -> Term {
        let core = Term::add(vec![
            Term::mul(vec![Term::constant(one_plus_t3.clone()), r.clone()]),
            Term::mul(vec![
                Term::constant(RationalFunction::from_poly(Polynomial::monomial(
                    Rational::one(),
                    3,
                ))),
                Term::var(&c3),
            ]),
            Term::mul(vec![
                Term::constant(RationalFunction::from_poly(Polynomial::monomial(
                    Rational::one(),
                    5,
                ))),
                Term::var(&c5),
            ]),
        ]);
        if e == 1 {
            Term::mul(vec![
                Term::constant(RationalFunction::constant(cfg.a.clone())),
                core,
            ])
        } else {
            core
        }
    };
    let phi_coeffs = |e: u8| -> Vec<Term> {
        let a = RationalFunction::constant(cfg.a.clone());
        let w = RationalFunction::constant(cfg.varpi.clone());
        let tt = RationalFunction::from_poly(Polynomial::var());
        let u = ue(e);
        vec![
            Term::constant(tt.clone()),
            Term::constant(&a * &tt),
            Term::int(-1),
            u.clone().neg(),
            Term::constant(&w * &tt),
            Term::constant(&(&a * &w) * &tt),
            Term::constant(-&w),
            Term::mul(vec![Term::constant(w), u]).neg(),
        ]
    };
    let _ = t;
    Formula::exists(
        vec![c3.clone(), c5.clone()],
        Formula::And(vec![
            con_clause(con, &Term::var(&c3), &format!("{prefix}_c3m")),
            con_clause(con, &Term::var(&c5), &format!("{prefix}_c5m")),
            isotropy_clause(phi_coeffs(0), &format!("{prefix}_i0")),
            isotropy_clause(phi_coeffs(1), &format!("{prefix}_i1")),
        ]),
    )
}

/// Membership in the maximal ideal: exists beta with x = t * beta (t is
/// emitted as lambda f after substitution).
pub fn semilocal_divisibility_clause(x: &Term, prefix: &str) -> Formula {
    let beta = format!("{prefix}_beta");
    Formula::exists(
        vec![beta.clone()],
        Formula::eq(
            x.clone(),
            Term::mul(vec![Term::constant(RationalFunction::var()), Term::var(&beta)]),
        ),
    )
}

/// Search the (alpha, beta) grid for a pair making (alpha - 1/t) x^2 + beta
/// positive semidefinite on the real line; the grid is drawn from the
/// density demo quotients.
pub fn real_gadget_witness(
    x: &RationalFunction,
    grid: &[Rational],
) -> Option<(Rational, Rational)> {
    let t = RationalFunction::var();
    let x2 = x * x;
    for alpha in grid {
        if !alpha.is_positive() {
            continue;
        }
        let factor = &RationalFunction::constant(alpha.clone()) - &(&RationalFunction::one() / &t);
        let base = &factor * &x2;
        for beta in grid {
            if !beta.is_positive() {
                continue;
            }
            let candidate = &base + &RationalFunction::constant(beta.clone());
            if is_psd_on_r(&candidate) {
                return Some((alpha.clone(), beta.clone()));
            }
        }
    }
    None
}

/// Quotients from the density demo restricted to small height, for use as
/// the search grid of the real gadget.
pub fn small_height_grid(cfg: &ConSetConfig, bound: usize, max_height: u64) -> Vec<Rational> {
    let h = BigInt::from(max_height);
    cfg.con_quotients(bound)
        .into_iter()
        .filter(|q| q.numer().abs() <= h && q.denom().abs() <= h)
        .collect()
}
