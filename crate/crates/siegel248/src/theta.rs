//! Igusa theta-constants and six-tuple theta products.
//!
//! theta_m(Z) = sum_{x in Z^2} exp(2 pi i ((x+s) Z t(x+s) + (x+s).(c,d)/2))
//! for the characteristic m = (a,b,c,d) with s = (a/2, b/2). With
//! y = 2x + (a,b) the lattice point contributes the scaled exponent
//! triple (d y1^2, 2 d y1 y2, d y2^2) at scale 4 (d = dilation, for
//! theta_m(Z) vs theta_m(2Z)) and the phase i^(y1 c + y2 d'), d' the
//! last characteristic entry. All coefficients live in Z[i], stored in
//! Z[zeta_8] so the Hecke module can mix in further 8th roots.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycElt;
use crate::error::Error;
use crate::qseries::{FourierSeries, QIndex};

pub const ROOT_ORDER: u64 = 8;
pub const SCALE: u32 = 4;

/// Theta characteristic m = (a, b, c, d), entries restricted to {0,1}.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Characteristic {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

impl Characteristic {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        for v in [a, b, c, d] {
            if v != 0 && v != 1 {
                return Err(Error::BadCharacteristic { value: v });
            }
        }
        Ok(Characteristic {
            a: a as u8,
            b: b as u8,
            c: c as u8,
            d: d as u8,
        })
    }
}

/// One factor of a theta product: a characteristic together with the
/// dilation (1 for theta_m(Z), 2 for theta_m(2Z)).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThetaFactorSpec {
    pub characteristic: Characteristic,
    pub dilation: i64,
}

impl ThetaFactorSpec {
    pub fn new(characteristic: Characteristic, dilation: i64) -> Result<Self, Error> {
        if dilation != 1 && dilation != 2 {
            return Err(Error::BadDilation { value: dilation });
        }
        Ok(ThetaFactorSpec {
            characteristic,
            dilation,
        })
    }
}

/// Classical parity criterion: m is odd iff a*c + b*d is odd. Odd
/// theta-constants vanish identically, so this is a vanishing tripwire.
pub fn is_odd_characteristic(m: &Characteristic) -> bool {
    (m.a * m.c + m.b * m.d) % 2 == 1
}

/// Expand a single theta-constant to the given trace bound.
pub fn theta_constant(spec: &ThetaFactorSpec, prec: i64) -> Result<FourierSeries, Error> {
    let m = spec.characteristic;
    let dil = spec.dilation;
    let mut out = FourierSeries::new(SCALE, prec, ROOT_ORDER);
    // Largest v >= 0 with v*v <= bound.
    fn isqrt(bound: i64) -> i64 {
        if bound < 0 {
            return -1;
        }
        let mut v = (bound as f64).sqrt() as i64 + 1;
        while v * v > bound {
            v -= 1;
        }
        v
    }
    // y = 2x + (a,b) ranges over integers of parity (a,b) with
    // dil*(y1^2 + y2^2) <= prec.
    let b1 = isqrt(prec / dil);
    for y1 in -b1..=b1 {
        if (y1 - m.a as i64) % 2 != 0 {
            continue;
        }
        let b2 = isqrt((prec - dil * y1 * y1) / dil);
        for y2 in -b2..=b2 {
            if (y2 - m.b as i64) % 2 != 0 {
                continue;
            }
            let idx = QIndex::new(dil * y1 * y1, 2 * dil * y1 * y2, dil * y2 * y2);
            let k = y1 * m.c as i64 + y2 * m.d as i64;
            out.accumulate(idx, CycElt::root(ROOT_ORDER, 2 * k))?;
        }
    }
    Ok(out)
}

/// Truncated product of theta-constants in list order.
pub fn product_form(factors: &[ThetaFactorSpec], prec: i64) -> Result<FourierSeries, Error> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let mut acc = theta_constant(&factors[0], prec)?;
    for f in &factors[1..] {
        if acc.is_zero() {
            break;
        }
        acc = acc.mul(&theta_constant(f, prec)?)?;
    }
    Ok(acc)
}

fn spec_of(d: i64, a: i64, b: i64, c: i64, dd: i64) -> ThetaFactorSpec {
    ThetaFactorSpec::new(Characteristic::new(a, b, c, dd).unwrap(), d).unwrap()
}

/// Factor list of g1, including the repeated (0,0,1,0) factor.
pub fn g1_factors() -> Vec<ThetaFactorSpec> {
    vec![
        spec_of(2, 0, 0, 0, 0),
        spec_of(1, 1, 0, 0, 0),
        spec_of(1, 0, 1, 0, 0),
        spec_of(1, 0, 0, 1, 0),
        spec_of(1, 0, 0, 1, 0),
        spec_of(1, 0, 0, 0, 1),
    ]
}

/// Factor list of g4.
pub fn g4_factors() -> Vec<ThetaFactorSpec> {
    vec![
        spec_of(2, 0, 0, 0, 0),
        spec_of(2, 1, 0, 0, 0),
        spec_of(2, 0, 1, 0, 0),
        spec_of(1, 0, 0, 1, 0),
        spec_of(1, 0, 0, 0, 1),
        spec_of(1, 0, 0, 1, 1),
    ]
}

pub fn build_g1(prec: i64) -> Result<FourierSeries, Error> {
    product_form(&g1_factors(), prec)
}

pub fn build_g4(prec: i64) -> Result<FourierSeries, Error> {
    product_form(&g4_factors(), prec)
}

/// Parse a factor-list file: one factor per line, "d:a,b,c,d", with '#'
/// comments and blank lines allowed.
pub fn parse_factor_file(text: &str) -> Result<Vec<ThetaFactorSpec>, Error> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::BadFactorLine {
            line: lineno + 1,
            text: raw.to_string(),
        };
        let (d_str, rest) = line.split_once(':').ok_or_else(bad)?;
        let dilation: i64 = d_str.trim().parse().map_err(|_| bad())?;
        let entries: Vec<i64> = rest
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if entries.len() != 4 {
            return Err(bad());
        }
        let ch = Characteristic::new(entries[0], entries[1], entries[2], entries[3])
            .map_err(|_| bad())?;
        out.push(ThetaFactorSpec::new(ch, dilation).map_err(|_| bad())?);
    }
    if out.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    Ok(out)
}
