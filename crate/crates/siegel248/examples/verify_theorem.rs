//! The full verification sweep: measure T(p)-eigenvalues of g4 and g1
//! at p = 3, 5, 7, calibrate the operator normalization once on the g4
//! values at p = 3 and 5, and check the conjectured L-function
//! identities prime by prime, with p = 7 as the genuine test.
//!
//!     cargo run --release --example verify_theorem

use siegel248::characters::{
    calibrate_shift, lambda_infinity_search, predict_eigenvalue, FormId,
};
use siegel248::hecke::{extract_eigenvalue, hecke_T};
use siegel248::theta::{build_g1, build_g4};

fn main() {
    let prec = 420;
    eprintln!("expanding g4 and g1 at prec {prec} ...");
    let g4 = build_g4(prec).unwrap();
    let g1 = build_g1(prec).unwrap();

    let mut measured = Vec::new();
    for p in [3i64, 5, 7] {
        eprintln!("running T({p}) on g4 ...");
        let t = hecke_T(&g4, p, 3).unwrap();
        let rep = extract_eigenvalue(&g4, &t).unwrap();
        assert!(rep.consistent, "T({p}) g4 not proportional to g4");
        measured.push((p, rep.eigenvalue.to_integer()));
    }
    let cal = calibrate_shift(&measured[..2]).unwrap();
    println!(
        "calibration fitted on p = 3, 5: nu = {}, shifts = ({}, {})",
        cal.nu, cal.s1, cal.s2
    );

    let spec = lambda_infinity_search().unwrap()[0];
    let mut all = true;
    for (p, m) in &measured {
        let pred = predict_eigenvalue(FormId::G4, *p, &spec, &cal)
            .unwrap()
            .as_integer()
            .unwrap();
        let ok = *m == pred;
        all &= ok;
        println!("g4 p={p}: measured {m}, predicted {pred} -> {}", verdict(ok));
    }
    for p in [3i64, 5, 7] {
        eprintln!("running T({p}) on g1 ...");
        let t = hecke_T(&g1, p, 3).unwrap();
        let rep = extract_eigenvalue(&g1, &t).unwrap();
        assert!(rep.consistent);
        let pred = predict_eigenvalue(FormId::G1, p, &spec, &cal)
            .unwrap()
            .as_integer()
            .unwrap();
        let ok = rep.eigenvalue.to_integer() == pred;
        all &= ok;
        println!(
            "g1 p={p}: measured {}, predicted {pred} -> {}",
            rep.eigenvalue,
            verdict(ok)
        );
    }
    println!("{}", if all { "all identities verified" } else { "MISMATCH" });
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}
