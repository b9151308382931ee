//! Arithmetic in the cyclotomic field Q(ζ_m), represented as residues of
//! rational polynomials modulo the m-th cyclotomic polynomial Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::Rational;

/// Dense polynomial with rational coefficients, constant term first.
pub type Poly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&c * bi);
        }
        quot[shift] = c;
        // the leading coefficient is now exactly zero
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

/// Coefficients of Φ_m, constant term first. Panics if `m == 0`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    cyclotomic_modulus(m)
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect()
}

fn cyclotomic_modulus(m: u32) -> Arc<Poly> {
    assert!(m >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d of m
    let mut p: Poly = vec![Rational::zero(); m as usize + 1];
    p[0] = Rational::from(-1i64);
    p[m as usize] = Rational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = poly_divmod(&p, &cyclotomic_modulus(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Element of Q(ζ_m): a canonical residue modulo Φ_m.
///
/// `coeffs` always has exactly deg(Φ_m) entries, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Reduce `p` modulo Φ_m.
pub fn cyc_normalize(p: &[Rational], m: u32) -> CyclotomicNumber {
    let modulus = cyclotomic_modulus(m);
    let (_, mut rem) = poly_divmod(p, &modulus);
    rem.resize(modulus.len() - 1, Rational::zero());
    CyclotomicNumber { order: m, coeffs: rem }
}

impl CyclotomicNumber {
    /// Builds the residue of `coeffs` (any length) in Q(ζ_order).
    pub fn new(order: u32, coeffs: &[Rational]) -> Self {
        cyc_normalize(coeffs, order)
    }

    pub fn zero(order: u32) -> Self {
        cyc_normalize(&[], order)
    }

    pub fn one(order: u32) -> Self {
        cyc_normalize(&[Rational::one()], order)
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        cyc_normalize(&[value], order)
    }

    /// ζ_order raised to `exp`.
    pub fn root_power(order: u32, exp: u32) -> Self {
        let exp = (exp % order) as usize;
        let mut p = vec![Rational::zero(); exp + 1];
        p[exp] = Rational::one();
        cyc_normalize(&p, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// deg(Φ_order)
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "mixing cyclotomic numbers of different orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        CyclotomicNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        cyc_normalize(&poly_mul(&self.coeffs, &other.coeffs), self.order)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = cyclotomic_modulus(self.order);
        // invariant: s_i * self ≡ r_i (mod Φ_m)
        let mut r0: Poly = modulus.to_vec();
        let mut r1: Poly = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_m is irreducible, so the gcd r0 is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip()?;
        let scaled: Poly = s0.iter().map(|x| x * &c).collect();
        Some(cyc_normalize(&scaled, self.order))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse().expect("division by zero cyclotomic number"))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
