//! Check the Satake absolute-value pattern of the conjectured g4 Euler
//! polynomial: {p, p^{3/2}, p^{3/2}, p^2} at every good odd prime, the
//! signature of a Saito-Kurokawa-type (CAP) form.
//!
//!     cargo run --release --example satake_pattern

use siegel248::characters::{is_prime, satake_abs, Calibration};

fn main() {
    let cal = Calibration { nu: 3, s1: 1, s2: 2 };
    println!("{:>4} {:>22} {:>10}", "p", "sorted |alpha_i|", "pattern ok");
    for p in (3..20).filter(|&n| is_prime(n)) {
        let sat = satake_abs(p, &cal).unwrap();
        let want = {
            let mut w = vec![
                p as f64,
                (p as f64).powf(1.5),
                (p as f64).powf(1.5),
                (p as f64).powi(2),
            ];
            w.sort_by(|a, b| a.partial_cmp(b).unwrap());
            w
        };
        let ok = sat
            .iter()
            .zip(&want)
            .all(|(a, b)| (a - b).abs() <= 1e-9 * b.max(1.0));
        let shown: Vec<String> = sat.iter().map(|v| format!("{v:.4}")).collect();
        println!("{:>4} {:>40} {:>6}", p, shown.join(" "), ok);
    }
}
