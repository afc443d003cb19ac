//! Sparse truncated Fourier expansions of degree-2 Siegel modular objects.
//!
//! A term is indexed by the scaled exponent triple (N, R, M) of the
//! half-integral matrix T = [[n, r/2], [r/2, m]] with (N, R, M) =
//! scale*(n, r, m). The global scale is 4 for all final objects; a
//! transient scale 4p appears inside Hecke sums. Truncation is by the
//! trace bound N + M <= prec, which is additive under multiplication, so
//! truncated products are exact on the retained range.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CycElt;
use crate::error::Error;

/// Scaled Fourier exponent triple. Ordering is lexicographic in (N, M, R),
/// which fixes the iteration and serialization order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
pub struct QIndex {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "R")]
    pub r: i64,
    #[serde(rename = "M")]
    pub m: i64,
}

impl PartialOrd for QIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.m, self.r).cmp(&(other.n, other.m, other.r))
    }
}

impl QIndex {
    pub fn new(n: i64, r: i64, m: i64) -> Self {
        QIndex { n, r, m }
    }

    pub fn trace(&self) -> i64 {
        self.n + self.m
    }

    /// Positive semi-definiteness of the underlying half-integral matrix.
    pub fn is_psd(&self) -> bool {
        self.n >= 0 && self.m >= 0 && 4 * self.n * self.m >= self.r * self.r
    }

    pub fn add(&self, other: &QIndex) -> QIndex {
        QIndex {
            n: self.n + other.n,
            r: self.r + other.r,
            m: self.m + other.m,
        }
    }
}

/// Sparse truncated Fourier expansion with exact cyclotomic coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierSeries {
    scale: u32,
    prec: i64,
    root_order: u64,
    terms: BTreeMap<QIndex, CycElt>,
}

#[derive(Serialize)]
struct SerTerm {
    #[serde(rename = "N")]
    n: i64,
    #[serde(rename = "R")]
    r: i64,
    #[serde(rename = "M")]
    m: i64,
    coeff: Vec<String>,
}

#[derive(Serialize)]
struct SerSeries {
    scale: u32,
    prec: i64,
    root_order: u64,
    terms: Vec<SerTerm>,
}

impl FourierSeries {
    pub fn new(scale: u32, prec: i64, root_order: u64) -> Self {
        assert!(scale > 0);
        assert!(prec >= 0);
        FourierSeries {
            scale,
            prec,
            root_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QIndex, &CycElt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Truncate to a smaller trace bound.
    pub fn truncate(&self, prec: i64) -> FourierSeries {
        let mut out = FourierSeries::new(self.scale, prec.min(self.prec), self.root_order);
        for (idx, c) in &self.terms {
            if idx.trace() <= out.prec {
                out.terms.insert(*idx, c.clone());
            }
        }
        out
    }

    /// Accumulate a term; purges the entry if the sum becomes zero.
    pub fn accumulate(&mut self, idx: QIndex, coeff: CycElt) -> Result<(), Error> {
        if !idx.is_psd() {
            return Err(Error::IndexNotPsd { idx });
        }
        if coeff.order() != self.root_order {
            return Err(Error::RootOrderMismatch {
                left: self.root_order,
                right: coeff.order(),
            });
        }
        if idx.trace() > self.prec {
            return Ok(());
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn check_compat(&self, other: &FourierSeries) -> Result<(), Error> {
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch {
                left: self.scale,
                right: other.scale,
            });
        }
        if self.root_order != other.root_order {
            return Err(Error::RootOrderMismatch {
                left: self.root_order,
                right: other.root_order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FourierSeries) -> Result<FourierSeries, Error> {
        self.check_compat(other)?;
        let prec = self.prec.min(other.prec);
        let mut out = FourierSeries::new(self.scale, prec, self.root_order);
        for (idx, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(*idx, c.clone())?;
        }
        Ok(out)
    }

    pub fn negate(&self) -> FourierSeries {
        let mut out = FourierSeries::new(self.scale, self.prec, self.root_order);
        for (idx, c) in &self.terms {
            out.terms.insert(*idx, c.neg());
        }
        out
    }

    /// Truncated convolution; exponent triples add componentwise and the
    /// trace bound drops terms past min(a.prec, b.prec).
    pub fn mul(&self, other: &FourierSeries) -> Result<FourierSeries, Error> {
        self.check_compat(other)?;
        let prec = self.prec.min(other.prec);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = FourierSeries::new(self.scale, prec, self.root_order);
        for (ia, ca) in &small.terms {
            if ia.trace() > prec {
                continue;
            }
            let budget = prec - ia.trace();
            for (ib, cb) in &large.terms {
                if ib.trace() > budget {
                    continue;
                }
                let idx = ia.add(ib);
                debug_assert!(idx.is_psd());
                out.accumulate(idx, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// Stored coefficient, or zero for an absent in-range index. Indices
    /// beyond the truncation bound are an error: past the bound the value
    /// is unknown, not zero.
    pub fn coefficient(&self, idx: &QIndex) -> Result<CycElt, Error> {
        if idx.trace() > self.prec {
            return Err(Error::IndexOutOfRange {
                idx: *idx,
                prec: self.prec,
            });
        }
        Ok(self
            .terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| CycElt::zero(self.root_order)))
    }

    /// Move the series to a finer exponent lattice: scale and all indices
    /// are multiplied by `factor`, as is the trace bound.
    pub fn refine(&self, factor: u32) -> FourierSeries {
        assert!(factor > 0);
        let mut out = FourierSeries::new(
            self.scale * factor,
            self.prec * factor as i64,
            self.root_order,
        );
        let f = factor as i64;
        for (idx, c) in &self.terms {
            out.terms
                .insert(QIndex::new(idx.n * f, idx.r * f, idx.m * f), c.clone());
        }
        out
    }

    /// Inverse of `refine`: every index must be divisible by `factor`.
    /// An off-lattice term is reported with its index; after a complete
    /// Hecke coset sum all off-lattice terms must have cancelled exactly.
    pub fn coarsen(&self, factor: u32) -> Result<FourierSeries, Error> {
        assert!(factor > 0 && self.scale % factor == 0);
        let f = factor as i64;
        let mut out = FourierSeries::new(self.scale / factor, self.prec / f, self.root_order);
        for (idx, c) in &self.terms {
            if idx.n % f != 0 || idx.r % f != 0 || idx.m % f != 0 {
                return Err(Error::OffLattice {
                    idx: *idx,
                    factor: f,
                });
            }
            out.terms
                .insert(QIndex::new(idx.n / f, idx.r / f, idx.m / f), c.clone());
        }
        Ok(out)
    }

    /// Map every coefficient through `f`, purging zeros.
    pub fn map_coeffs<F>(&self, root_order: u64, mut f: F) -> Result<FourierSeries, Error>
    where
        F: FnMut(&QIndex, &CycElt) -> Result<CycElt, Error>,
    {
        let mut out = FourierSeries::new(self.scale, self.prec, root_order);
        for (idx, c) in &self.terms {
            let v = f(idx, c)?;
            if !v.is_zero() {
                out.terms.insert(*idx, v);
            }
        }
        Ok(out)
    }

    /// Validate all structural invariants; used by tests.
    pub fn validate(&self) -> Result<(), Error> {
        for (idx, c) in &self.terms {
            if !idx.is_psd() {
                return Err(Error::IndexNotPsd { idx: *idx });
            }
            if idx.trace() > self.prec {
                return Err(Error::IndexOutOfRange {
                    idx: *idx,
                    prec: self.prec,
                });
            }
            if c.is_zero() {
                return Err(Error::Config(format!("stored zero coefficient at {idx:?}")));
            }
            if c.order() != self.root_order {
                return Err(Error::RootOrderMismatch {
                    left: self.root_order,
                    right: c.order(),
                });
            }
        }
        Ok(())
    }

    /// Deterministic JSON dump; terms in lexicographic (N, M, R) order.
    pub fn to_json(&self) -> String {
        let ser = SerSeries {
            scale: self.scale,
            prec: self.prec,
            root_order: self.root_order,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| SerTerm {
                    n: idx.n,
                    r: idx.r,
                    m: idx.m,
                    coeff: c.coeffs().iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&ser).expect("series serialization")
    }

    /// Smallest trace carrying a nonzero term, if any.
    pub fn min_trace(&self) -> Option<i64> {
        self.terms.keys().map(|i| i.trace()).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c8(v: i64) -> CycElt {
        CycElt::from_integer(8, v)
    }

    fn term(n: i64, r: i64, m: i64, v: i64) -> (QIndex, CycElt) {
        (QIndex::new(n, r, m), c8(v))
    }

    fn series(prec: i64, terms: &[(i64, i64, i64, i64)]) -> FourierSeries {
        let mut s = FourierSeries::new(4, prec, 8);
        for &(n, r, m, v) in terms {
            s.accumulate(QIndex::new(n, r, m), c8(v)).unwrap();
        }
        s
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = series(10, &[(1, 0, 1, 3), (2, 2, 2, -1)]);
        let zero = FourierSeries::new(4, 10, 8);
        assert_eq!(f.add(&zero).unwrap(), f);
        assert!(f.add(&f.negate()).unwrap().is_zero());
    }

    #[test]
    fn add_matches_naive_merge() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut s = FourierSeries::new(4, 30, 8);
                for _ in 0..50 {
                    let n = rng.gen_range(0..15i64);
                    let m = rng.gen_range(0..15i64);
                    let rb = (4 * n * m) as f64;
                    let rmax = rb.sqrt() as i64;
                    let r = rng.gen_range(-rmax..=rmax);
                    s.accumulate(QIndex::new(n, r, m), c8(rng.gen_range(-5..=5)))
                        .unwrap();
                }
                s
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let sum = a.add(&b).unwrap();
            // naive merge oracle
            let mut expect: std::collections::BTreeMap<QIndex, BigInt> = Default::default();
            for (idx, c) in a.terms().chain(b.terms()) {
                *expect.entry(*idx).or_default() += c.as_integer().unwrap();
            }
            expect.retain(|_, v| !num_traits::Zero::is_zero(v));
            let got: std::collections::BTreeMap<QIndex, BigInt> = sum
                .terms()
                .map(|(i, c)| (*i, c.as_integer().unwrap()))
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn mul_single_terms_and_empty() {
        let a = series(10, &[(1, 0, 0, 1)]);
        let b = series(10, &[(0, 0, 1, 1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient(&QIndex::new(1, 0, 1)).unwrap(), c8(1));
        assert_eq!(p.num_terms(), 1);
        let empty = FourierSeries::new(4, 10, 8);
        assert!(a.mul(&empty).unwrap().is_zero());
    }

    #[test]
    fn mul_matches_double_loop_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let mut mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut s = FourierSeries::new(4, 20, 8);
                for _ in 0..30 {
                    let n = rng.gen_range(0..10i64);
                    let m = rng.gen_range(0..10i64);
                    let rmax = ((4 * n * m) as f64).sqrt() as i64;
                    let r = rng.gen_range(-rmax..=rmax);
                    s.accumulate(QIndex::new(n, r, m), c8(rng.gen_range(-4..=4)))
                        .unwrap();
                }
                s
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let got = a.mul(&b).unwrap();
            // brute-force convolution with post-truncation
            let mut expect = FourierSeries::new(4, 20, 8);
            for (ia, ca) in a.terms() {
                for (ib, cb) in b.terms() {
                    expect.accumulate(ia.add(ib), ca.mul(cb).unwrap()).unwrap();
                }
            }
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn coefficient_lookup_semantics() {
        let f = series(10, &[(1, 0, 1, 7)]);
        assert_eq!(f.coefficient(&QIndex::new(2, 0, 2)).unwrap(), c8(0));
        assert!(f.coefficient(&QIndex::new(20, 0, 20)).is_err());
        assert_eq!(f.coefficient(&QIndex::new(1, 0, 1)).unwrap(), c8(7));
    }

    #[test]
    fn rescale_roundtrip_and_errors() {
        let f = series(10, &[(1, 0, 1, 2), (3, 2, 4, -1)]);
        let refined = f.refine(3);
        assert_eq!(refined.scale(), 12);
        assert_eq!(
            refined.coefficient(&QIndex::new(3, 0, 3)).unwrap(),
            c8(2)
        );
        assert_eq!(refined.coarsen(3).unwrap(), f);
        let odd = series(10, &[(3, 0, 0, 1)]);
        assert!(matches!(
            odd.coarsen(2),
            Err(Error::OffLattice { .. })
        ));
    }

    #[test]
    fn scale_mismatch_is_error() {
        let a = series(10, &[(1, 0, 1, 1)]);
        let b = a.refine(3);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn truncation_coherence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let mut mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut s = FourierSeries::new(4, 16, 8);
                for _ in 0..25 {
                    let n = rng.gen_range(0..8i64);
                    let m = rng.gen_range(0..8i64);
                    let rmax = ((4 * n * m) as f64).sqrt() as i64;
                    let r = rng.gen_range(-rmax..=rmax);
                    s.accumulate(QIndex::new(n, r, m), c8(rng.gen_range(-4..=4)))
                        .unwrap();
                }
                s
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let full = a.mul(&b).unwrap();
            for p in [4i64, 9, 12] {
                assert_eq!(full.truncate(p), a.truncate(p).mul(&b.truncate(p)).unwrap());
            }
        }
    }

    #[test]
    fn mul_commutative_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        let mut mk = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut s = FourierSeries::new(4, 16, 8);
            for _ in 0..15 {
                let n = rng.gen_range(0..6i64);
                let m = rng.gen_range(0..6i64);
                let rmax = ((4 * n * m) as f64).sqrt() as i64;
                let r = rng.gen_range(-rmax..=rmax);
                s.accumulate(QIndex::new(n, r, m), c8(rng.gen_range(-3..=3)))
                    .unwrap();
            }
            s
        };
        for _ in 0..10 {
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let c = mk(&mut rng);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn validator_accepts_outputs() {
        let f = series(10, &[(1, 0, 1, 2), (2, -2, 3, 5)]);
        f.validate().unwrap();
        f.mul(&f).unwrap().validate().unwrap();
        f.add(&f).unwrap().validate().unwrap();
        f.refine(5).validate().unwrap();
    }

    #[test]
    fn json_dump_is_sorted_and_stable() {
        let f = series(10, &[(2, 0, 2, 1), (1, 0, 1, 1), (1, -2, 2, 3)]);
        let a = f.to_json();
        let b = f.to_json();
        assert_eq!(a, b);
        let n1 = a.find("\"N\": 1").unwrap();
        let n2 = a.rfind("\"N\": 2").unwrap();
        assert!(n1 < n2);
    }
}
