//! The ring of integers realized on the twisted curve: encode/decode,
//! addition and multiplication with their witness quotients, and the parity
//! decomposition.
//!
//!     cargo run --release --example integer_model

use zmodel::lambda::{LambdaConfig, Parity};
use zmodel::rational::{rat_i64, rational_to_text};
use zmodel::ratfunc::RationalFunction;
use zmodel::twist::SelfTwistModel;

fn main() {
    let model = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(1)).unwrap();
    let cfg = LambdaConfig::new(model, rat_i64(1), RationalFunction::var()).unwrap();

    println!("encodings (affine coordinates in t):");
    for n in [0i64, 1, 2, -3] {
        let e = cfg.encode(n);
        let (u, w) = e.uw(&cfg);
        println!("  {}: u = {}", n, u.to_text("t"));
        println!("      w = {}", w.to_text("t"));
    }

    // decoding goes through evaluation at 0 plus recomputation
    let five = cfg.encode(5);
    assert_eq!(cfg.decode(&five.to_point()).unwrap(), 5);
    println!("\ndecode(encode(5)) = 5");

    // addition: the group law transported through the Weierstrass chart
    let sum = cfg.add_points_decoded(&cfg.encode(2), &cfg.encode(3)).unwrap();
    println!("point addition: 2 + 3 = {}", sum.n());

    // the addition and multiplication witnesses land in the local ring
    let alpha = cfg.addition_witness(&cfg.encode(2), &cfg.encode(3));
    println!(
        "addition witness alpha = (u(5g) - u(2g) - u(3g))/t has v0 = {}",
        alpha.ord_at_zero()
    );
    let alpha = cfg.multiplication_witness(&cfg.encode(-2), &cfg.encode(3));
    println!(
        "multiplication witness for (-2)*3 has v0 = {}",
        alpha.ord_at_zero()
    );

    // the congruence that pins down multiplication
    let z2 = cfg.encode(2).to_point();
    let z3 = cfg.encode(3).to_point();
    println!(
        "\nu(6g) = u(2g) u(3g) mod m: {}",
        cfg.check_mult_relation(&z2, &z3, &cfg.encode(6).to_point()).unwrap()
    );
    println!(
        "u(5g) = u(2g) u(3g) mod m: {}",
        cfg.check_mult_relation(&z2, &z3, &cfg.encode(5).to_point()).unwrap()
    );

    // evaluation at 0 through the exact series ladder scales far beyond
    // what full coordinates would allow
    println!(
        "\nseries-route ev0(1000*gamma) = {}",
        rational_to_text(&cfg.model().ev0_gamma_series(1000))
    );

    match cfg.two_lambda_decompose(&cfg.encode(9)) {
        Parity::Odd(h) => println!("9 = 1 + 2*{}", h.n()),
        Parity::Even(h) => println!("9 = 2*{}", h.n()),
    }
}
