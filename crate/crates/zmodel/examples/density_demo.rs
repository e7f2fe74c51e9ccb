//! The quotient set of u-coordinates on a rank-positive auxiliary curve
//! approximates rational targets both 3-adically and on the real line.
//!
//!     cargo run --release --example density_demo

use num_bigint::BigInt;
use num_traits::Signed;
use zmodel::gadgets::ConSetConfig;
use zmodel::rational::{padic_valuation, rat, rat_i64, rational_to_text, Rational};

fn main() {
    let cfg = ConSetConfig::default_curve();
    println!(
        "auxiliary curve y^2 = x^3 + 24 with generator (1, 5); u = x/y"
    );

    let us = cfg.u_multiples(8);
    println!("\nfirst u-coordinates:");
    for (i, u) in us.iter().enumerate().take(5) {
        match u {
            Some(u) => println!("  u({}G) = {}", i + 1, rational_to_text(u)),
            None => println!("  u({}G) undefined", i + 1),
        }
    }

    let quotients = cfg.con_quotients(25);
    println!("\nquotient set size for |n|, |m| <= 25: {}", quotients.len());

    let three = BigInt::from(3);
    for target in [rat_i64(0), rat_i64(1), rat(1, 3)] {
        let best_3adic = quotients
            .iter()
            .filter_map(|q| padic_valuation(&(q - &target), &three).map(|v| (v, q)))
            .max_by_key(|(v, _)| *v);
        let best_real = quotients
            .iter()
            .map(|q| ((q - &target).abs(), q))
            .min_by(|a, b| a.0.cmp(&b.0));
        println!("\ntarget {}:", rational_to_text(&target));
        if let Some((v, q)) = best_3adic {
            println!(
                "  3-adically closest: {} (v_3 of the difference = {})",
                rational_to_text(q),
                v
            );
        } else {
            println!("  the target itself appears in the set");
        }
        if let Some((d, q)) = best_real {
            let approx = q.numer().to_string().len() as i64 - q.denom().to_string().len() as i64;
            let _ = approx;
            println!(
                "  closest on the real line: {} (|difference| = {})",
                rational_to_text(q),
                rational_to_text(&d)
            );
        }
    }

    let grid: Vec<Rational> = quotients
        .into_iter()
        .filter(|q| q.numer().abs() <= BigInt::from(20) && *q.denom() <= BigInt::from(20))
        .collect();
    println!("\nsmall-height quotients usable as a search grid: {}", grid.len());
}
