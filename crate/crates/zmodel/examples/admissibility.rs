//! Admissibility of covers of the projective line: simple branching,
//! etaleness above infinity and the branch points of the double cover, and
//! simplicity of the designated zeros.
//!
//!     cargo run --release --example admissibility

use zmodel::rational::rat_i64;
use zmodel::ratfunc::RationalFunction;
use zmodel::twist::{is_admissible, SelfTwistModel};

fn main() {
    let model = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(1)).unwrap();
    let rf = |s: &str| RationalFunction::parse(s).unwrap();

    for f in ["x", "x^2", "x^3 - 3*x", "x/(1 + x^2)", "x + x^2"] {
        let report = is_admissible(&rf(f), &rat_i64(1), &model, None).unwrap();
        println!("f = {}", f);
        println!("{}", report);
        println!();
    }

    // scaling the cover moves its fibres over the branch locus, so
    // admissibility genuinely depends on lambda
    let f = rf("x + x^2");
    for lambda in [1i64, 2, -4] {
        let report = is_admissible(&f, &rat_i64(lambda), &model, None).unwrap();
        println!("lambda = {:>2}, f = x + x^2: admissible = {}", lambda, report.admissible());
    }
}
