//! The real divisibility gadget: Sturm-based positivity of rational
//! functions on the real line, and the grid search for (alpha, beta) making
//! (alpha - 1/t) x^2 + beta positive semidefinite exactly when x vanishes
//! at 0.
//!
//!     cargo run --release --example real_positivity

use zmodel::gadgets::{real_gadget_witness, small_height_grid, ConSetConfig};
use zmodel::local::is_psd_on_r;
use zmodel::rational::rational_to_text;
use zmodel::ratfunc::RationalFunction;

fn main() {
    let rf = |s: &str| RationalFunction::parse(s).unwrap();

    println!("positivity on the real line:");
    for s in ["t^2", "t", "(t^2+1)/(t^2+2)", "(1-t)^2", "-1/(1+t^2)"] {
        println!("  {:<18} psd: {}", s, is_psd_on_r(&rf(s)));
    }

    let con = ConSetConfig::default_curve();
    let grid = small_height_grid(&con, 8, 50);
    println!(
        "\nsearch grid from the density demo: {} small-height quotients",
        grid.len()
    );

    println!("\nelements vanishing at 0 admit a psd combination:");
    for x in ["t", "t^2", "t/(1+t)"] {
        match real_gadget_witness(&rf(x), &grid) {
            Some((alpha, beta)) => println!(
                "  x = {:<10} (alpha, beta) = ({}, {})",
                x,
                rational_to_text(&alpha),
                rational_to_text(&beta)
            ),
            None => println!("  x = {:<10} no grid witness", x),
        }
    }

    println!("\nunits at 0 never do (the pole of -1/t dominates near 0):");
    for x in ["1", "1 + t", "1/(1+t^2)"] {
        println!(
            "  x = {:<10} witness found: {}",
            x,
            real_gadget_witness(&rf(x), &grid).is_some()
        );
    }
}
