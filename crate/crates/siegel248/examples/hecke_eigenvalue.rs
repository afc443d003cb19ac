//! Apply the Hecke operator T(p) to g4 and g1 at p = 3, 5, 7 and
//! extract the exact eigenvalues, reporting the witness counts that pin
//! the proportionality.
//!
//!     cargo run --release --example hecke_eigenvalue

use siegel248::hecke::{extract_eigenvalue, hecke_T, REP_NORMALIZATION};
use siegel248::theta::{build_g1, build_g4};

fn main() {
    let prec = 420;
    println!("representative normalization: {REP_NORMALIZATION}");
    let g4 = build_g4(prec).unwrap();
    let g1 = build_g1(prec).unwrap();
    for p in [3i64, 5, 7] {
        for (name, f) in [("g4", &g4), ("g1", &g1)] {
            let t = hecke_T(f, p, 3).unwrap();
            let rep = extract_eigenvalue(f, &t).unwrap();
            println!(
                "T({p}) {name}: eigenvalue {} ({} witnesses, consistent: {})",
                rep.eigenvalue, rep.count, rep.consistent
            );
        }
    }
}
