//! Lower an integer polynomial system to a positive-existential formula,
//! lift an integer solution to an exact function-field witness, verify it
//! clause by clause, and watch a perturbed witness get rejected.
//!
//!     cargo run --release --example compile_pipeline

use zmodel::compiler::{
    compile, normalize_system, serialize_artifact, verify_witness, verify_witness_with,
    witness_lift, Backend, CompilerConfig, IntPolySystem,
};
use zmodel::lambda::LambdaConfig;
use zmodel::rational::rat_i64;
use zmodel::ratfunc::RationalFunction;
use zmodel::twist::SelfTwistModel;

fn main() {
    let model = SelfTwistModel::new(rat_i64(0), rat_i64(-1), rat_i64(1)).unwrap();
    let lambda_cfg = LambdaConfig::new(model, rat_i64(1), RationalFunction::var()).unwrap();
    let cfg = CompilerConfig::semilocal_default(lambda_cfg);

    let sys = IntPolySystem::parse("x*y = z").unwrap();
    let lowered = normalize_system(&sys);
    println!("three-address form: {} gadget(s)", lowered.gadgets.len());

    let artifact = compile(&sys, Backend::Semilocal, &cfg).unwrap();
    println!(
        "artifact: {} existentials, {} equations",
        artifact.formula.existential_count() + 6, // the six u/w symbols at the root
        artifact.formula.equation_count()
    );
    let json = serialize_artifact(&artifact);
    println!("serialized artifact: {} bytes", json.len());

    let witness = witness_lift(&sys, &[3, 4, 12], &artifact, &cfg).unwrap();
    println!("\nwitness bindings:");
    for (k, v) in &witness.assignment {
        let shown = if v.len() > 60 { format!("{}...", &v[..57]) } else { v.clone() };
        println!("  {} = {}", k, shown);
    }

    let report = verify_witness(&artifact, &witness, &cfg);
    println!("\n{}", report);
    assert!(report.pass);

    // a perturbed coordinate is caught by exact evaluation
    let mut bad = witness.clone();
    let old = RationalFunction::parse(&bad.assignment["u_z"]).unwrap();
    bad.assignment
        .insert("u_z".into(), (&old + &RationalFunction::var()).to_text("x"));
    let rejection = verify_witness_with(&artifact, &bad, &cfg, true);
    println!("\nperturbed u_z: verdict pass = {}", rejection.pass);
    assert!(!rejection.pass);

    // the real backend swaps the divisibility encoding for the five-squares
    // clause; its subclauses are surrogate-checked
    let artifact_real = compile(&sys, Backend::Real, &cfg).unwrap();
    let witness_real = witness_lift(&sys, &[3, 4, 12], &artifact_real, &cfg).unwrap();
    let report_real = verify_witness(&artifact_real, &witness_real, &cfg);
    println!(
        "\nreal backend: pass = {}, surrogate-verified clauses = {}",
        report_real.pass,
        report_real.surrogate_count()
    );
}
