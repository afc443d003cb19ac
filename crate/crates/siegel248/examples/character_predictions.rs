//! Compute the conjectured spinor Euler coefficients independently of
//! the operator: the lambda-sum for g1, the Saito-Kurokawa-type shape
//! for g4, and the CM predictions for F5 and F6.
//!
//!     cargo run --release --example character_predictions

use siegel248::characters::{
    gauss_prime_data, is_prime, lambda_infinity_search, predict_unshifted, FormId,
};

fn main() {
    let specs = lambda_infinity_search().unwrap();
    println!("lambda infinity-type survivors:");
    for s in &specs {
        println!("  sigma_{}^3 sigma_{}^2 sigma_{}", s.a, s.b, 8 - s.b);
    }
    let spec = specs[0];

    println!("\nunshifted Euler coefficients (shifts (1,2)):");
    println!("{:>4} {:>8} {:>8} {:>8} {:>8}", "p", "g1", "g4", "F5", "F6");
    for p in (3..30).filter(|&n| is_prime(n)) {
        let row: Vec<String> = [FormId::G1, FormId::G4, FormId::F5, FormId::F6]
            .iter()
            .map(|&form| {
                let v = predict_unshifted(form, p, &spec, (1, 2)).unwrap();
                match v.as_integer() {
                    Some(n) => n.to_string(),
                    None => format!("{:?}", v.coeffs()),
                }
            })
            .collect();
        println!("{:>4} {:>8} {:>8} {:>8} {:>8}", p, row[0], row[1], row[2], row[3]);
    }

    println!("\nprimary Gaussian prime data at split p < 50:");
    for p in (3..50).filter(|&n| is_prime(n) && n % 4 == 1) {
        let d = gauss_prime_data(p).unwrap();
        let pi = d.generators[0];
        let ap = pi.a + d.generators[1].a;
        println!("  p={p}: primary pi = {} + {}i, a_p = tr(pi) = {}", pi.a, pi.b, ap);
    }
}
