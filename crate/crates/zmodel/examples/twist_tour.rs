//! Tour of the twisted model: build the curve V^2 W = rho P(U, W) over
//! Q(t), walk multiples of the canonical section gamma = (1:1:t), evaluate
//! them at t = 0, and inspect both charts.
//!
//!     cargo run --release --example twist_tour

use zmodel::rational::{rat_i64, rational_to_text};
use zmodel::twist::SelfTwistModel;

fn main() {
    // base curve y^2 = x^3 - x + 1
    let model = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(1)).unwrap();
    println!("rho = {}", model.rho().to_text("t"));
    println!(
        "twisted Weierstrass chart: y^2 = x^3 + ({})x^2 + ({})x + ({})",
        model.weierstrass().a.to_text("t"),
        model.weierstrass().b.to_text("t"),
        model.weierstrass().c.to_text("t"),
    );

    let gamma = model.canonical_gamma();
    println!("\ngamma = {}", gamma);
    println!("on curve: {}", model.on_curve(&gamma));

    println!("\nmultiples of gamma and their evaluations at 0:");
    for n in [-3i64, -1, 0, 1, 2, 3, 5] {
        let p = model.gamma_multiple(n);
        let ev = model.ev0(&p).unwrap();
        let (u, w) = model.gamma_uw(n);
        println!(
            "  n = {:>2}: ev0 = {:>2}   deg u = {:?}   v0(w) = {}",
            n,
            rational_to_text(&ev),
            u.num().degree(),
            w.ord_at_zero(),
        );
    }

    // the chart at infinity and the order bound
    println!("\norders at infinity (all at least -1):");
    for n in 1..=8i64 {
        println!("  v_inf(u({}*gamma)) = {}", n, model.ord_infinity_of_u(n).unwrap());
    }

    let (u1, w1) = model.chart_at_infinity(&gamma).unwrap();
    println!(
        "\nchart at infinity of gamma: (u', w') = ({}, {})",
        u1.to_text("t"),
        w1.to_text("t")
    );

    // group structure: 2*gamma + 3*gamma = 5*gamma
    let sum = model
        .add(&model.gamma_multiple(2), &model.gamma_multiple(3))
        .unwrap();
    assert_eq!(sum, model.gamma_multiple(5));
    println!("\n2*gamma + 3*gamma = 5*gamma checked on the curve");

    // torsion of the twisted curve: only constant 2-torsion survives
    let split = SelfTwistModel::new(rat_i64(-6), rat_i64(11), rat_i64(-6)).unwrap();
    println!(
        "\ntorsion points of the twist of y^2 = (x-1)(x-2)(x-3): {}",
        split
            .twist_two_torsion()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
}
