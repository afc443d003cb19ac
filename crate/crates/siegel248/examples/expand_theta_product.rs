//! Expand the two cuspforms g1 and g4 as exact Fourier series over
//! Z[zeta_8] and print their leading terms.
//!
//!     cargo run --release --example expand_theta_product

use siegel248::theta::{build_g1, build_g4};

fn main() {
    let prec = 40;
    for (name, f) in [("g1", build_g1(prec).unwrap()), ("g4", build_g4(prec).unwrap())] {
        println!(
            "{name}: scale {}, prec {}, {} terms, min trace {:?}",
            f.scale(),
            f.prec(),
            f.num_terms(),
            f.min_trace()
        );
        for (idx, coeff) in f.terms().take(12) {
            println!(
                "  (N,R,M) = ({:>2},{:>3},{:>2})  coeff {:?}",
                idx.n,
                idx.r,
                idx.m,
                coeff.coeffs()
            );
        }
        println!();
    }
}
