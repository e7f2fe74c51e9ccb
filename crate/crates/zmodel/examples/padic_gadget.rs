//! The p-adic divisibility gadget: the valuation-normalizing map
//! s = t + t^2 + (r/(1+t^2))^2, its Y-set classification, the 8-dimensional
//! forms phi_e = <t, at, -1, -u_e> x <1, varpi>, and their residue-form
//! diagnostics at p.
//!
//!     cargo run --release --example padic_gadget

use zmodel::gadgets::{
    build_phie, build_ue, ue_newton_polygon, varkr_reduce, y_membership, PadicGadgetConfig,
};
use zmodel::local::{DiagonalForm, Place, TPoint};
use zmodel::rational::{rat_i64, rational_to_text, Rational};
use zmodel::ratfunc::RationalFunction;
use num_traits::Zero;

fn main() {
    let rf = |s: &str| RationalFunction::parse(s).unwrap();

    println!("valuation normalization r -> t + t^2 + (r/(1+t^2))^2:");
    for r in ["0", "1", "t", "(1+t)/(1-t)", "t^2/(1+t^4)"] {
        let s = varkr_reduce(&rf(r)).unwrap();
        println!(
            "  r = {:<14} v0(s) = {}  v_inf(s) = {}  class {:?}",
            r,
            s.ord_at_zero(),
            s.ord_at_infinity(),
            y_membership(&s)
        );
    }

    let cfg = PadicGadgetConfig::new(3, rat_i64(1), rat_i64(3), rat_i64(1), rat_i64(1)).unwrap();
    println!("\nu_e = a^e((1+t)^3 r + c3 t^3 + c5 t^5) with p = 3, varpi = 3:");
    for (r, e) in [("1", 0u8), ("t", 0), ("t", 1)] {
        let u = build_ue(&rf(r), &cfg, e);
        println!("  r = {:<4} e = {}: v0(u_e) = {}", r, e, u.ord_at_zero());
    }

    let u0 = build_ue(&rf("1"), &cfg, 0);
    let phi = build_phie(&cfg, &u0).unwrap();
    println!("\nphi_0 has dimension {}", phi.dim());

    let (first, second) = phi
        .residue_forms_at(&TPoint::Finite(Rational::zero()))
        .unwrap();
    let fmt = |v: &[Rational]| v.iter().map(rational_to_text).collect::<Vec<_>>().join(", ");
    println!("residue forms of phi_0 at t = 0:");
    println!("  first  <{}>", fmt(&first));
    println!("  second <{}>", fmt(&second));

    // the first residue form over Q feeds the local isotropy analysis at p
    let probe = DiagonalForm::new(first).unwrap();
    println!(
        "first residue form at p = 3: {}",
        if probe.is_isotropic_local(&Place::Prime(3)) {
            "isotropic"
        } else {
            "anisotropic"
        }
    );

    // the Newton polygon of u_e records how c3 and c5 shape the valuations
    let np = ue_newton_polygon(&rf("0"), &cfg, 0).unwrap();
    println!(
        "\nNewton polygon of u_0 (r = 0) at p = 3: vertices {:?}, slopes {}",
        np.vertices(),
        np.slopes()
            .iter()
            .map(rational_to_text)
            .collect::<Vec<_>>()
            .join(", ")
    );
}
