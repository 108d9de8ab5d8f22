//! Exact arithmetic in prime fields F_p and extension fields F_{p^e},
//! element enumeration, and multiplicative-subgroup extraction.
//!
//! Elements are coefficient vectors over F_p in the basis 1, t, t^2, ...,
//! t^(e-1), where t is a root of the field's monic irreducible modulus.
//! The canonical integer code of an element is `sum(coeffs[i] * p^i)`,
//! which fixes a total order used for enumeration and witness reporting.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard ceiling on the field order. Everything here is desk scale; the
/// expensive scan layers apply much smaller caps of their own.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A concrete finite field GF(q) with q = p^e.
///
/// Cheap to clone (shared internals). Two fields compare equal iff they
/// have the same characteristic, degree and modulus.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    e: u32,
    q: u64,
    /// Ascending coefficients including the leading 1; length e + 1.
    /// For e = 1 this is x (never used in arithmetic).
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Builds GF(p^e) picking the modulus automatically: the monic irreducible
    /// of degree e over F_p whose non-leading coefficient tuple
    /// (c0, c1, ..., c_{e-1}) is smallest as a base-p integer. The choice is
    /// deterministic, so element codes are reproducible across runs.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        check_p_e(p, e)?;
        let q = checked_order(p, e)?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e)
        };
        Ok(FieldSpec {
            inner: Arc::new(FieldInner { p, e, q, modulus }),
        })
    }

    /// Builds GF(p^e) with a caller-supplied modulus given as ascending
    /// coefficients including the leading 1 (so x^2+1 over F_3 is [1, 0, 1]).
    pub fn with_modulus(p: u64, e: u32, modulus: &[u64]) -> Result<Self> {
        check_p_e(p, e)?;
        let q = checked_order(p, e)?;
        if modulus.len() != e as usize + 1 {
            return Err(Error::BadModulus { expected: e });
        }
        let reduced: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if reduced[e as usize] != 1 {
            return Err(Error::BadModulus { expected: e });
        }
        if e >= 2 && !irreducible_over_fp(p, &reduced) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(FieldSpec {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus: reduced,
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus as ascending coefficients including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Modulus in the text format "c0,c1,...,1".
    pub fn modulus_string(&self) -> String {
        self.inner
            .modulus
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.inner.e as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// Embeds an integer into the prime subfield.
    pub fn constant(&self, value: i64) -> FieldElement {
        let p = self.inner.p;
        let mut coeffs = vec![0; self.inner.e as usize];
        coeffs[0] = value.rem_euclid(p as i64) as u64;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Decodes a canonical integer code in [0, q-1].
    pub fn element_from_code(&self, code: u64) -> Result<FieldElement> {
        if code >= self.inner.q {
            return Err(Error::CodeOutOfRange {
                code,
                q: self.inner.q,
            });
        }
        let p = self.inner.p;
        let mut coeffs = vec![0; self.inner.e as usize];
        let mut rest = code;
        for c in coeffs.iter_mut() {
            *c = rest % p;
            rest /= p;
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// All q elements in ascending canonical code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |code| self.element_from_code(code).expect("code < q"))
    }

    /// The group mu_d of d-th roots of unity, sorted by canonical code.
    /// Requires d | q - 1; the result always has exactly d elements.
    pub fn mu_subgroup(&self, d: u64) -> Result<Vec<FieldElement>> {
        let qm1 = self.inner.q - 1;
        if d == 0 || qm1 % d != 0 {
            return Err(Error::NotADivisor { d, qm1 });
        }
        let one = self.one();
        Ok(self
            .elements()
            .filter(|x| !x.is_zero() && x.pow(d) == one)
            .collect())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec(p={}, e={}, modulus={})",
            self.inner.p,
            self.inner.e,
            self.modulus_string()
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

/// An element of a [`FieldSpec`]. Immutable; all operations are pure.
///
/// Binary operators panic if the operands live in different fields;
/// construction and inversion report errors through `Result`.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Coefficients of 1, t, ..., t^(e-1), each in [0, p-1].
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Canonical integer code `sum(coeffs[i] * p^i)` in [0, q-1].
    pub fn code(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Square-and-multiply power; pow(0, 0) = 1 by convention so that
    /// evaluating sum(c_i x^i) is uniform in the constant term.
    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via Fermat: a^(q-2). Errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.field.q() - 2))
    }
}

fn assert_same_field(a: &FieldElement, b: &FieldElement) {
    assert!(
        a.field == b.field,
        "field mismatch: {} vs {}",
        a.field,
        b.field
    );
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.field.e().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Canonical code order; only meaningful within one field.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.code(), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl<'a> Add for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        assert_same_field(self, rhs);
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl<'a> Sub for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl<'a> Mul for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        assert_same_field(self, rhs);
        let p = self.field.p();
        let e = self.field.e() as usize;
        if e == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![(self.coeffs[0] * rhs.coeffs[0]) % p],
            };
        }
        // Schoolbook product, then fold degrees >= e down through the monic
        // modulus: t^e = -(m_0 + m_1 t + ... + m_{e-1} t^{e-1}).
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let modulus = self.field.modulus();
        for deg in (e..2 * e - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for j in 0..e {
                let m = modulus[j];
                if m != 0 {
                    prod[deg - e + j] = (prod[deg - e + j] + c * (p - m)) % p;
                }
            }
        }
        prod.truncate(e);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

fn check_p_e(p: u64, e: u32) -> Result<()> {
    if e == 0 {
        // q = p^0 = 1 is not a field; degree zero is rejected outright.
        return Err(Error::ZeroDegree);
    }
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

fn checked_order(p: u64, e: u32) -> Result<u64> {
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if q > MAX_FIELD_ORDER as u128 {
        return Err(Error::CapExceeded {
            q: q.min(u64::MAX as u128) as u64,
            cap: MAX_FIELD_ORDER,
        });
    }
    Ok(q as u64)
}

/// Deterministic trial-division primality test; fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Irreducibility of a monic polynomial over F_p by trial division against
/// every monic polynomial of degree up to deg/2. Deterministic and exact;
/// the degrees in play here never exceed single digits.
///
/// `coeffs` are ascending and include the leading 1.
pub fn is_irreducible(p: u64, coeffs: &[u64]) -> Result<bool> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if coeffs.len() < 2 {
        return Err(Error::NonMonic);
    }
    let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    if *reduced.last().unwrap() != 1 {
        return Err(Error::NonMonic);
    }
    Ok(irreducible_over_fp(p, &reduced))
}

fn irreducible_over_fp(p: u64, coeffs: &[u64]) -> bool {
    let deg = coeffs.len() - 1;
    if deg == 1 {
        return true;
    }
    for dd in 1..=deg / 2 {
        // All monic divisor candidates of degree dd, enumerated by the
        // base-p code of their non-leading coefficients.
        let count = p.pow(dd as u32);
        for code in 0..count {
            let mut div = decode_base_p(p, code, dd);
            div.push(1);
            if poly_rem_fp(p, coeffs, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

fn decode_base_p(p: u64, mut code: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = code % p;
        code /= p;
    }
    out
}

/// Remainder of `a` divided by monic `b` over F_p, trailing zeros stripped.
fn poly_rem_fp(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - db;
        if lead != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - bc % p)) % p;
            }
        }
        rem.pop();
    }
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem
}

fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let count = p.pow(e);
    for code in 0..count {
        let mut cand = decode_base_p(p, code, e as usize);
        cand.push(1);
        if irreducible_over_fp(p, &cand) {
            return cand;
        }
    }
    // A monic irreducible of every degree exists over every F_p.
    unreachable!("no irreducible polynomial of degree {e} over F_{p}")
}

/// Parses "c0,c1,...,cn" into a coefficient list.
pub fn parse_coeff_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|_| Error::Parse {
                what: "coefficient list",
                input: s.to_string(),
            })
        })
        .collect()
}
