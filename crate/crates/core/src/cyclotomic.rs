//! Exact arithmetic in the cyclotomic field `Q(z)`, `z` a primitive `e`-th
//! root of unity.
//!
//! Values are stored in the power basis `1, z, .., z^(phi(e)-1)` after
//! reduction modulo the cyclotomic polynomial, so equality is coefficient
//! equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer value of a rational, if it has one.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    /// coefficients of the e-th cyclotomic polynomial, constant term first
    polynomial: Vec<i64>,
    /// `z^k mod Phi_e` for `k` in `0..e`
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn new(e: u32) -> Self {
        let polynomial = cyclotomic_polynomial(e);
        let phi = polynomial.len() - 1;
        let mut powers = Vec::with_capacity(e as usize);
        let mut current = vec![0i64; phi];
        current[0] = 1;
        for _ in 0..e {
            powers.push(current.clone());
            // multiply by z and reduce the overflow coefficient
            let top = current[phi - 1];
            for j in (1..phi).rev() {
                current[j] = current[j - 1];
            }
            current[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    current[j] -= top * polynomial[j];
                }
            }
        }
        Self {
            conductor: e,
            polynomial,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler phi of the conductor, the field degree.
    pub fn degree(&self) -> usize {
        self.polynomial.len() - 1
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.polynomial
    }
}

fn field(e: u32) -> Result<Arc<CyclotomicField>> {
    if e == 0 {
        return Err(Error::ZeroConductor);
    }
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let mut cache = FIELDS
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("field cache poisoned");
    Ok(cache
        .entry(e)
        .or_insert_with(|| Arc::new(CyclotomicField::new(e)))
        .clone())
}

/// Integer coefficients of the `e`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    // x^e - 1 divided by Phi_d for all proper divisors d
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(z_e)` in canonical power-basis form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Cyclotomic {
    /// Reduces `sum raw[k] z^k` to canonical form. Exponents are taken modulo `e`.
    pub fn normalize(raw: &BTreeMap<i64, Rational>, e: u32) -> Result<Self> {
        let field = field(e)?;
        let mut coeffs = vec![Rational::zero(); field.degree()];
        for (&k, q) in raw {
            if q.is_zero() {
                continue;
            }
            let k = k.rem_euclid(e as i64) as usize;
            add_power(&field, &mut coeffs, k, q);
        }
        Ok(Self { field, coeffs })
    }

    pub fn zero(e: u32) -> Result<Self> {
        Self::from_rational(Rational::zero(), e)
    }

    pub fn one(e: u32) -> Result<Self> {
        Self::from_rational(Rational::one(), e)
    }

    pub fn from_rational(q: Rational, e: u32) -> Result<Self> {
        let field = field(e)?;
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = q;
        Ok(Self { field, coeffs })
    }

    pub fn from_integer(n: i64, e: u32) -> Result<Self> {
        Self::from_rational(rational_int(n), e)
    }

    /// `z^k`
    pub fn root_of_unity(k: i64, e: u32) -> Result<Self> {
        let mut raw = BTreeMap::new();
        raw.insert(k, Rational::one());
        Self::normalize(&raw, e)
    }

    /// `sum_k multiplicities[k] z^k`
    pub fn from_multiplicities(multiplicities: &[i64], e: u32) -> Result<Self> {
        let field = field(e)?;
        let mut coeffs = vec![Rational::zero(); field.degree()];
        for (k, &m) in multiplicities.iter().enumerate() {
            if m != 0 {
                add_power(&field, &mut coeffs, k % e as usize, &rational_int(m));
            }
        }
        Ok(Self { field, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            Err(Error::ConductorMismatch(self.conductor(), other.conductor()))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let e = self.field.conductor as usize;
        let mut raw = vec![Rational::zero(); e];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % e] += a * b;
                }
            }
        }
        let mut coeffs = vec![Rational::zero(); self.field.degree()];
        for (k, q) in raw.iter().enumerate() {
            if !q.is_zero() {
                add_power(&self.field, &mut coeffs, k, q);
            }
        }
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The Galois automorphism `z -> z^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let e = self.field.conductor as i64;
        if k.gcd(&e) != 1 {
            return Err(Error::NotCoprime {
                k,
                conductor: self.field.conductor,
            });
        }
        let mut coeffs = vec![Rational::zero(); self.field.degree()];
        for (i, q) in self.coeffs.iter().enumerate() {
            if !q.is_zero() {
                let target = (i as i64 * k).rem_euclid(e) as usize;
                add_power(&self.field, &mut coeffs, target, q);
            }
        }
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial. `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Rational> = self.field.polynomial.iter().map(|&c| rational_int(c)).collect();
        let a = trim(self.coeffs.clone());
        // invariant: s * a = r (mod modulus)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() || (r1.len() == 1 && r1[0].is_zero()) {
                // gcd is not constant, impossible for an irreducible modulus
                return None;
            }
        }
        let c = r1[0].clone();
        let mut raw = BTreeMap::new();
        for (k, q) in s1.iter().enumerate() {
            raw.insert(k as i64, q / &c);
        }
        Self::normalize(&raw, self.field.conductor).ok()
    }

    /// Orders values lexicographically by coefficient vector.
    pub fn cmp_coeffs(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

fn add_power(field: &CyclotomicField, coeffs: &mut [Rational], k: usize, q: &Rational) {
    for (c, &p) in coeffs.iter_mut().zip(&field.powers[k]) {
        match p {
            0 => {}
            1 => *c += q,
            -1 => *c -= q,
            p => *c += q * rational_int(p),
        }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (vec![Rational::zero()], rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + den.len() - 1] / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(den.len() - 1);
    if rem.is_empty() {
        rem.push(Rational::zero());
    }
    (trim(quot), trim(rem))
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on mismatched conductors.
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("conductor mismatch")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("conductor mismatch")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a0 + a1*z + ..`; irrational values carry the conductor as
/// `[z=E(e)]`.
impl Cyclotomic {
    /// Power-basis rendering in `z` without the conductor suffix, e.g.
    /// `-1 - z^2`; rationals render bare.
    pub fn to_poly_string(&self) -> String {
        if let Some(q) = self.to_rational() {
            return fmt_rational(&q);
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match (k, mag.is_one()) {
                (0, _) => fmt_rational(&mag),
                (1, true) => "z".to_string(),
                (1, false) => format!("{}*z", fmt_rational(&mag)),
                (_, true) => format!("z^{k}"),
                (_, false) => format!("{}*z^{k}", fmt_rational(&mag)),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.to_poly_string())
        } else {
            write!(f, "{} [z=E({})]", self.to_poly_string(), self.conductor())
        }
    }
}
