//! Exact arithmetic in rings of integers of cyclotomic fields.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` of
//! `Q(z_N)` with arbitrary-precision integer coefficients, reduced
//! canonically modulo the N-th cyclotomic polynomial. Equality is
//! coefficient-vector equality. Orders used in this crate are 8 (the
//! coefficient field of all theta series) and 8p for odd primes p
//! (transient root orders inside Hecke sums).

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;

/// Euler totient by trial division; orders here are tiny.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of polynomials over Z; panics if the division is not exact
/// (it always is for cyclotomic factors). Coefficient order: ascending.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(!den.is_empty() && !den.last().unwrap().is_zero());
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let lead = den.last().unwrap().clone();
    if rem.len() <= dn {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        let (q, r) = (c.clone() / &lead, c % &lead);
        assert!(r.is_zero(), "non-exact polynomial division");
        quot[i - dn] = q.clone();
        for (j, d) in den.iter().enumerate() {
            let v = &rem[i - dn + j] - &q * d;
            rem[i - dn + j] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, ascending, degree phi(N).
///
/// Computed as (x^N - 1) divided by the product of the cyclotomic
/// polynomials of the proper divisors of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        den = poly_mul(&den, &phi_d);
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let v = &out[i + j] + x * y;
            out[i + j] = v;
        }
    }
    out
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u64, std::sync::Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclo(n: u64) -> std::sync::Arc<Vec<BigInt>> {
    let mut cache = CYCLO_CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| std::sync::Arc::new(cyclotomic_polynomial(n)))
        .clone()
}

/// Reduce a polynomial (ascending coefficients) modulo the monic Phi_N.
fn reduce_mod_cyclo(mut poly: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = euler_phi(n) as usize;
    let modulus = cyclo(n);
    while poly.len() > phi {
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let deg = poly.len();
        // subtract c * x^(deg - phi) * Phi_N, leading term cancels
        for (j, m) in modulus.iter().enumerate().take(phi) {
            let idx = deg - phi + j;
            let v = &poly[idx] - &c * m;
            poly[idx] = v;
        }
    }
    poly.resize(phi, BigInt::zero());
    poly
}

/// An exact element of Z[zeta_N] in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElt {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElt(N={}, {:?})", self.order, self.coeffs)
    }
}

impl CycElt {
    pub fn zero(order: u64) -> Self {
        let phi = euler_phi(order) as usize;
        CycElt {
            order,
            coeffs: vec![BigInt::zero(); phi],
        }
    }

    pub fn one(order: u64) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = BigInt::one();
        e
    }

    pub fn from_integer(order: u64, v: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = v.into();
        e
    }

    /// zeta_N^k in canonical form; k is taken modulo N.
    pub fn root(order: u64, k: i64) -> Self {
        let n = order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        CycElt {
            order,
            coeffs: reduce_mod_cyclo(poly, order),
        }
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<BigInt>) -> Result<Self, Error> {
        if coeffs.len() != euler_phi(order) as usize {
            return Err(Error::BadCoeffLength {
                order,
                expected: euler_phi(order) as usize,
                got: coeffs.len(),
            });
        }
        Ok(CycElt { order, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element represents, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_order(&self, other: &CycElt) -> Result<(), Error> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CycElt) -> Result<CycElt, Error> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycElt {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycElt) -> Result<CycElt, Error> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycElt {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> CycElt {
        CycElt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycElt) -> Result<CycElt, Error> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycElt::zero(self.order));
        }
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Ok(CycElt {
            order: self.order,
            coeffs: reduce_mod_cyclo(prod, self.order),
        })
    }

    pub fn scale(&self, k: &BigInt) -> CycElt {
        CycElt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiply by zeta_N^k.
    pub fn mul_root(&self, k: i64) -> CycElt {
        let n = self.order as i64;
        let k = k.rem_euclid(n) as usize;
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut poly = vec![BigInt::zero(); k + self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i + k] = c.clone();
        }
        CycElt {
            order: self.order,
            coeffs: reduce_mod_cyclo(poly, self.order),
        }
    }

    /// Apply the Galois automorphism zeta |-> zeta^k; k must be coprime to N.
    pub fn galois(&self, k: i64) -> Result<CycElt, Error> {
        let n = self.order as i64;
        if num_integer::gcd(k.rem_euclid(n), n) != 1 {
            return Err(Error::NonCoprimeIndex { k, order: self.order });
        }
        let mut acc = CycElt::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = CycElt::root(self.order, (i as i64 * k) % n).scale(c);
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Evaluate the representing polynomial at exp(2*pi*i*k/N).
    pub fn embed(&self, k: i64) -> Result<Complex64, Error> {
        let n = self.order as i64;
        if num_integer::gcd(k.rem_euclid(n), n) != 1 {
            return Err(Error::NonCoprimeIndex { k, order: self.order });
        }
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (self.order as f64);
        let z = Complex64::new(theta.cos(), theta.sin());
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        Ok(acc)
    }

    /// Re-express this element in a larger order M with N | M.
    pub fn lift_order(&self, target: u64) -> Result<CycElt, Error> {
        if target % self.order != 0 {
            return Err(Error::OrderNotDivisible {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(CycElt {
            order: target,
            coeffs: reduce_mod_cyclo(poly, target),
        })
    }

    /// Partial inverse of `lift_order`: fails if the element is not in the
    /// subfield Q(zeta_target). Used as a tripwire after Hecke summation.
    pub fn project_order(&self, target: u64) -> Result<CycElt, Error> {
        if self.order % target != 0 {
            return Err(Error::OrderNotDivisible {
                from: target,
                to: self.order,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let basis = subfield_basis(self.order, target);
        let phi_t = euler_phi(target) as usize;
        // Solve sum_j c_j * basis_j = self over Q with integer verification.
        let solved = basis.solve(&self.coeffs).ok_or(Error::NotInSubfield {
            from: self.order,
            to: target,
        })?;
        let mut coeffs = Vec::with_capacity(phi_t);
        for q in solved {
            if !q.is_integer() {
                return Err(Error::NotInSubfield {
                    from: self.order,
                    to: target,
                });
            }
            coeffs.push(q.to_integer());
        }
        let candidate = CycElt {
            order: target,
            coeffs,
        };
        // Verify: lifting back must reproduce the element exactly.
        if candidate.lift_order(self.order)? != *self {
            return Err(Error::NotInSubfield {
                from: self.order,
                to: target,
            });
        }
        Ok(candidate)
    }

    /// Field norm down to Q, as a rational integer (the element is an
    /// algebraic integer, so the norm is integral).
    pub fn norm(&self) -> Result<BigInt, Error> {
        let n = self.order as i64;
        let mut acc = CycElt::one(self.order);
        for k in 1..n {
            if num_integer::gcd(k, n) == 1 {
                acc = acc.mul(&self.galois(k)?)?;
            }
        }
        acc.as_integer().ok_or(Error::NormNotRational)
    }

    /// Exact division in Z[zeta_N]: returns self/div if the quotient is an
    /// algebraic integer of the ring, None otherwise.
    pub fn divide_exact(&self, div: &CycElt) -> Result<Option<CycElt>, Error> {
        self.check_order(div)?;
        if div.is_zero() {
            return Ok(None);
        }
        // self/div = self * prod(conjugates of div) / Norm(div)
        let n = self.order as i64;
        let mut conj_prod = CycElt::one(self.order);
        for k in 2..n {
            if num_integer::gcd(k, n) == 1 {
                conj_prod = conj_prod.mul(&div.galois(k)?)?;
            }
        }
        let norm = div.mul(&conj_prod)?.as_integer().ok_or(Error::NormNotRational)?;
        let numer = self.mul(&conj_prod)?;
        let mut coeffs = Vec::with_capacity(numer.coeffs.len());
        for c in &numer.coeffs {
            if (c % &norm).is_zero() {
                coeffs.push(c / &norm);
            } else {
                return Ok(None);
            }
        }
        Ok(Some(CycElt {
            order: self.order,
            coeffs,
        }))
    }

    /// Largest absolute value among the power-basis coefficients.
    pub fn coeff_height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Serialize for CycElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycElt", 2)?;
        s.serialize_field("order", &self.order)?;
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &strings)?;
        s.end()
    }
}

/// Cached linear-algebra data for projecting from Q(zeta_M) to Q(zeta_N).
struct SubfieldBasis {
    /// lift of zeta_N^j into the order-M power basis, one column per j
    columns: Vec<Vec<BigInt>>,
    /// row indices of an invertible phi(N) x phi(N) minor
    pivot_rows: Vec<usize>,
    /// exact inverse of that minor
    minor_inv: Vec<Vec<BigRational>>,
}

impl SubfieldBasis {
    fn solve(&self, target: &[BigInt]) -> Option<Vec<BigRational>> {
        let k = self.pivot_rows.len();
        let mut rhs: Vec<BigRational> = Vec::with_capacity(k);
        for &r in &self.pivot_rows {
            rhs.push(BigRational::from(target[r].clone()));
        }
        let mut sol = vec![BigRational::zero(); k];
        for i in 0..k {
            let mut acc = BigRational::zero();
            for j in 0..k {
                acc += &self.minor_inv[i][j] * &rhs[j];
            }
            sol[i] = acc;
        }
        // Verify every row, not just the pivots.
        for (r, t) in target.iter().enumerate() {
            let mut acc = BigRational::zero();
            for (j, col) in self.columns.iter().enumerate() {
                acc += BigRational::from(col[r].clone()) * &sol[j];
            }
            if acc != BigRational::from(t.clone()) {
                return None;
            }
        }
        Some(sol)
    }
}

static SUBFIELD_CACHE: Lazy<Mutex<HashMap<(u64, u64), std::sync::Arc<SubfieldBasis>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn subfield_basis(from: u64, to: u64) -> std::sync::Arc<SubfieldBasis> {
    let mut cache = SUBFIELD_CACHE.lock().unwrap();
    cache
        .entry((from, to))
        .or_insert_with(|| std::sync::Arc::new(build_subfield_basis(from, to)))
        .clone()
}

fn build_subfield_basis(from: u64, to: u64) -> SubfieldBasis {
    let phi_to = euler_phi(to) as usize;
    let columns: Vec<Vec<BigInt>> = (0..phi_to)
        .map(|j| {
            CycElt::root(to, j as i64)
                .lift_order(from)
                .expect("divisible orders")
                .coeffs
        })
        .collect();
    // Find phi(to) rows forming an invertible minor by rational elimination.
    let phi_from = euler_phi(from) as usize;
    let mut pivot_rows = Vec::with_capacity(phi_to);
    let mut work: Vec<Vec<BigRational>> = Vec::new(); // echelon rows over columns
    let mut row_of_pivot: Vec<usize> = Vec::new();
    for r in 0..phi_from {
        if pivot_rows.len() == phi_to {
            break;
        }
        let mut row: Vec<BigRational> = columns
            .iter()
            .map(|c| BigRational::from(c[r].clone()))
            .collect();
        // eliminate against existing echelon rows
        for (w, &pr) in work.iter().zip(&row_of_pivot) {
            if !row[pr].is_zero() {
                let f = row[pr].clone() / w[pr].clone();
                for j in 0..phi_to {
                    let v = &row[j] - &f * &w[j];
                    row[j] = v;
                }
            }
        }
        if let Some(p) = row.iter().position(|v| !v.is_zero()) {
            pivot_rows.push(r);
            row_of_pivot.push(p);
            work.push(row);
        }
    }
    assert_eq!(pivot_rows.len(), phi_to, "lift basis not full rank");
    // Invert the minor.
    let k = phi_to;
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from(c[pivot_rows[i]].clone()))
                .collect();
            for j in 0..k {
                row.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k)
            .find(|&r| !aug[r][col].is_zero())
            .expect("minor invertible");
        aug.swap(col, piv);
        let d = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= d.clone();
        }
        for r in 0..k {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in 0..2 * k {
                    let v = &aug[r][j] - &f * &aug[col][j];
                    aug[r][j] = v;
                }
            }
        }
    }
    let minor_inv: Vec<Vec<BigRational>> = aug.into_iter().map(|row| row[k..].to_vec()).collect();
    SubfieldBasis {
        columns,
        pivot_rows,
        minor_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn int(v: i64) -> BigInt {
        BigInt::from_i64(v).unwrap()
    }

    #[test]
    fn cyclotomic_poly_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), vec![int(-1), int(1)]);
        // Oracle for N=8: divide x^8-1 by Phi_1*Phi_2*Phi_4 = (x-1)(x+1)(x^2+1)
        assert_eq!(
            cyclotomic_polynomial(8),
            vec![int(1), int(0), int(0), int(0), int(1)]
        );
        let c24 = cyclotomic_polynomial(24);
        assert_eq!(c24.len() - 1, euler_phi(24) as usize);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn cyclotomic_poly_division_oracle() {
        // independent check: product over all divisors equals x^N - 1
        for n in [8u64, 24, 40] {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = -BigInt::one();
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect);
        }
    }

    #[test]
    fn roots_of_unity_canonical() {
        assert_eq!(CycElt::root(8, 0), CycElt::one(8));
        assert_eq!(CycElt::root(8, 4), CycElt::from_integer(8, -1));
        // zeta_8^5 = -zeta_8
        assert_eq!(CycElt::root(8, 5), CycElt::root(8, 1).neg());
        for n in [8u64, 24, 40, 56] {
            assert_eq!(CycElt::root(n, n as i64), CycElt::one(n));
            assert_eq!(CycElt::root(n, n as i64 / 2), CycElt::from_integer(n, -1));
        }
    }

    #[test]
    fn arith_examples() {
        let z = CycElt::root(8, 1);
        let z3 = CycElt::root(8, 3);
        assert_eq!(z.mul(&z3).unwrap(), CycElt::from_integer(8, -1));
        let one = CycElt::one(8);
        let a = one.add(&z).unwrap();
        let b = one.sub(&z).unwrap();
        assert_eq!(a.add(&b).unwrap(), CycElt::from_integer(8, 2));
        // (1+z)(1-z) = 1 - z^2, against the raw polynomial-multiplication oracle
        let prod = a.mul(&b).unwrap();
        let expect = one.sub(&CycElt::root(8, 2)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn order_mismatch_is_error() {
        let a = CycElt::one(8);
        let b = CycElt::one(24);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn embed_examples() {
        let one = CycElt::one(8);
        assert!((one.embed(3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let z = CycElt::root(8, 1);
        assert!((z.embed(1).unwrap().norm() - 1.0).abs() < 1e-12);
        // 1 + sqrt2 = 1 + zeta8 + zeta8^-1
        let sqrt2p1 = one
            .add(&CycElt::root(8, 1))
            .unwrap()
            .add(&CycElt::root(8, -1))
            .unwrap();
        let v = sqrt2p1.embed(1).unwrap();
        assert!((v.re - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        assert!(v.im.abs() < 1e-9);
        assert!(one.embed(2).is_err());
    }

    #[test]
    fn lift_and_project() {
        let one = CycElt::one(8);
        assert_eq!(one.lift_order(24).unwrap(), CycElt::one(24));
        assert_eq!(CycElt::root(8, 1).lift_order(24).unwrap(), CycElt::root(24, 3));
        let z24_3 = CycElt::root(24, 3);
        assert_eq!(z24_3.project_order(8).unwrap(), CycElt::root(8, 1));
        assert!(CycElt::root(24, 1).project_order(8).is_err());
        assert!(CycElt::root(8, 1).lift_order(12).is_err());
    }

    #[test]
    fn ring_axioms_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for order in [8u64, 24] {
            let phi = euler_phi(order) as usize;
            let mut sample = |rng: &mut rand_chacha::ChaCha8Rng| {
                let coeffs = (0..phi).map(|_| int(rng.gen_range(-50..=50))).collect();
                CycElt::from_coeffs(order, coeffs).unwrap()
            };
            for _ in 0..1000 {
                let a = sample(&mut rng);
                let b = sample(&mut rng);
                let c = sample(&mut rng);
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            }
        }
    }

    #[test]
    fn embed_is_ring_hom_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let coeffs = |rng: &mut rand_chacha::ChaCha8Rng| {
                (0..4)
                    .map(|_| int(rng.gen_range(-1_000_000..=1_000_000)))
                    .collect::<Vec<_>>()
            };
            let a = CycElt::from_coeffs(8, coeffs(&mut rng)).unwrap();
            let b = CycElt::from_coeffs(8, coeffs(&mut rng)).unwrap();
            let lhs = a.mul(&b).unwrap().embed(1).unwrap();
            let rhs = a.embed(1).unwrap() * b.embed(1).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn lift_project_roundtrip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let coeffs = (0..4).map(|_| int(rng.gen_range(-1000..=1000))).collect();
            let a = CycElt::from_coeffs(8, coeffs).unwrap();
            let lifted = a.lift_order(24).unwrap();
            assert_eq!(lifted.project_order(8).unwrap(), a);
        }
    }

    #[test]
    fn norm_and_exact_division() {
        // 1+i has norm 4 in Q(zeta_8) (degree 4 over Q, (1+i) generates P^2 over 2)
        let i = CycElt::root(8, 2);
        let one_plus_i = CycElt::one(8).add(&i).unwrap();
        assert_eq!(one_plus_i.norm().unwrap(), int(4));
        let sq = one_plus_i.mul(&one_plus_i).unwrap();
        let q = sq.divide_exact(&one_plus_i).unwrap().unwrap();
        assert_eq!(q, one_plus_i);
        assert!(CycElt::one(8).divide_exact(&CycElt::from_integer(8, 2)).unwrap().is_none());
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms(xs in proptest::collection::vec(-50i64..=50, 4),
                       ys in proptest::collection::vec(-50i64..=50, 4),
                       zs in proptest::collection::vec(-50i64..=50, 4)) {
            let elt = |v: &Vec<i64>| {
                CycElt::from_coeffs(8, v.iter().map(|&c| int(c)).collect()).unwrap()
            };
            let (a, b, c) = (elt(&xs), elt(&ys), elt(&zs));
            proptest::prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            proptest::prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            proptest::prop_assert_eq!(
                a.add(&b).unwrap().mul(&c).unwrap(),
                a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
            );
            // norms are multiplicative and the Galois action is a ring map
            proptest::prop_assert_eq!(
                a.mul(&b).unwrap().norm().unwrap(),
                a.norm().unwrap() * b.norm().unwrap()
            );
            proptest::prop_assert_eq!(
                a.mul(&b).unwrap().galois(3).unwrap(),
                a.galois(3).unwrap().mul(&b.galois(3).unwrap()).unwrap()
            );
        }
    }
}
