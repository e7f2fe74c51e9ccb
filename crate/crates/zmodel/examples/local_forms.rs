//! Local analysis of quadratic forms: Hilbert symbols, isotropy at single
//! places and over Q, Newton polygons, and second-residue forms over Q(t).
//!
//!     cargo run --release --example local_forms

use zmodel::local::{hilbert_symbol, newton_polygon, DiagonalForm, Place, TPoint};
use zmodel::poly::Polynomial;
use zmodel::rational::{rat_i64, rational_to_text, Rational};
use zmodel::ratfunc::RationalFunction;
use num_traits::Zero;

fn main() {
    println!("Hilbert symbols (-1, -1):");
    for place in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5)] {
        println!(
            "  {}: {}",
            place,
            hilbert_symbol(&rat_i64(-1), &rat_i64(-1), &place)
        );
    }

    // the product over all places is +1
    let (a, b) = (rat_i64(6), rat_i64(-10));
    let mut prod = hilbert_symbol(&a, &b, &Place::Real);
    for p in [2u64, 3, 5] {
        prod *= hilbert_symbol(&a, &b, &Place::Prime(p));
    }
    println!("product formula for (6, -10): {}", prod);

    println!("\nisotropy of <1, -2, -3, 6>:");
    let form = DiagonalForm::new(vec![rat_i64(1), rat_i64(-2), rat_i64(-3), rat_i64(6)]).unwrap();
    for p in form.relevant_primes() {
        println!(
            "  p = {}: {}",
            p,
            form.is_isotropic_local(&Place::Prime(p))
        );
    }
    println!("  over Q: {}", form.is_isotropic_over_q());

    println!("\nsums of squares stay anisotropic:");
    let sums = DiagonalForm::new(vec![rat_i64(1); 4]).unwrap();
    println!("  <1,1,1,1> over Q: {}", sums.is_isotropic_over_q());

    println!("\nNewton polygon of 9 + 3t + t^2 + 27t^3 at p = 3:");
    let np = newton_polygon(&Polynomial::from_i64s(&[9, 3, 1, 27]), 3).unwrap();
    for (i, v) in np.vertices() {
        println!("  vertex ({}, {})", i, v);
    }
    println!(
        "  slopes: {}",
        np.slopes()
            .iter()
            .map(rational_to_text)
            .collect::<Vec<_>>()
            .join(", ")
    );

    println!("\nsecond-residue forms of <t, 3t, -1, -(1+t)> at t = 0:");
    let rf = |s: &str| RationalFunction::parse(s).unwrap();
    let form_t =
        DiagonalForm::new_over_qt(vec![rf("t"), rf("3*t"), rf("-1"), rf("-(1+t)")]).unwrap();
    let (first, second) = form_t
        .residue_forms_at(&TPoint::Finite(Rational::zero()))
        .unwrap();
    let fmt = |v: &[zmodel::rational::Rational]| {
        v.iter().map(rational_to_text).collect::<Vec<_>>().join(", ")
    };
    println!("  first  <{}>", fmt(&first));
    println!("  second <{}>", fmt(&second));
}
