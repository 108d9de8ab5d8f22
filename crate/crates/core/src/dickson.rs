//! Reversed Dickson polynomials of the (k+1)-th kind D_{n,k}(a, x).
//!
//! For n >= 1,
//!
//!   D_{n,k}(a, x) = sum_{i=0}^{floor(n/2)} c_i * (-1)^i * a^(n-2i) * x^i,
//!
//! and D_{0,k}(a, x) = 2 - k. The textbook coefficient (n-ki)/(n-i) *
//! C(n-i, i) is a fraction whose denominator can vanish mod p, so the
//! integer identity
//!
//!   c_i = C(n-i, i) - (k-1) * C(n-i-1, i-1)        (with C(m, -1) = 0)
//!
//! is used instead: it is exact over the integers and only then reduced
//! mod p. Binomials are computed in arbitrary precision by exact ratio
//! stepping, never through a mod-p shortcut, so every coefficient is
//! auditable.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{fold_exponent, Poly};

/// Construction cap on the index n: the coefficient sum has floor(n/2) + 1
/// terms, so unbounded n would hang the CLI rather than fail fast.
pub const MAX_DICKSON_INDEX: u64 = 2_000_000;

/// Parameters (n, k, a) of D_{n,k}(a, x); `a` defaults to 1, the only value
/// the classification families need.
#[derive(Debug, Clone)]
pub struct DicksonParams {
    pub n: u64,
    pub k: u64,
    pub a: Option<FieldElement>,
}

impl DicksonParams {
    pub fn new(n: u64, k: u64) -> Self {
        DicksonParams { n, k, a: None }
    }

    pub fn with_a(mut self, a: FieldElement) -> Self {
        self.a = Some(a);
        self
    }
}

/// D_{n,k}(a, x) as an unreduced polynomial of degree <= floor(n/2).
pub fn dickson_poly(params: &DicksonParams, field: &FieldSpec) -> Result<Poly> {
    build(params, field, false)
}

/// D_{n,k}(a, x) reduced mod x^q - x, built by folding each term's exponent
/// as it is produced. Agrees with `dickson_poly(..).reduce_mod_qx()` without
/// materializing the degree floor(n/2) intermediate.
pub fn dickson_poly_mod_qx(params: &DicksonParams, field: &FieldSpec) -> Result<Poly> {
    build(params, field, true)
}

/// Evaluates D_{n,k}(a, x0); same value as evaluating [`dickson_poly`]
/// since the reduction preserves the induced map.
pub fn dickson_eval(
    params: &DicksonParams,
    field: &FieldSpec,
    x0: &FieldElement,
) -> Result<FieldElement> {
    Ok(dickson_poly_mod_qx(params, field)?.eval(x0))
}

/// The closed form (1/2)(1 - 4x)^((q+1)/2) - x + 1/2, reduced mod x^q - x.
/// Pointwise equal to D_{q+2,0}(1, x), and a permutation of GF(q) exactly
/// when q = 1 mod 3.
pub fn result1_closed_form(field: &FieldSpec) -> Poly {
    let inv2 = field.constant(2).inv().expect("2 is invertible, p is odd");
    let base = Poly::from_elements(field.clone(), vec![field.one(), field.constant(-4)]);
    let powed = base.pow_mod((field.q() + 1) / 2);
    &(&powed.scale(&inv2) - &Poly::x(field)) + &Poly::constant(inv2)
}

fn validate(params: &DicksonParams, field: &FieldSpec) -> Result<()> {
    let max = field.p() - 1;
    if params.k > max {
        return Err(Error::KindOutOfRange { k: params.k, max });
    }
    if params.n > MAX_DICKSON_INDEX {
        return Err(Error::IndexTooLarge {
            n: params.n,
            cap: MAX_DICKSON_INDEX,
        });
    }
    if let Some(a) = &params.a {
        if a.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(())
}

fn build(params: &DicksonParams, field: &FieldSpec, reduced: bool) -> Result<Poly> {
    validate(params, field)?;
    let (n, k, p) = (params.n, params.k, field.p());
    if n == 0 {
        return Ok(Poly::constant(field.constant(2 - k as i64)));
    }
    let a = params.a.clone().unwrap_or_else(|| field.one());
    let residues = binomial_residues(n, p);
    let half = (n / 2) as usize;
    let km1 = (k + p - 1) % p; // k - 1 mod p
    let q = field.q();

    let len = if reduced {
        (q as usize).min(half + 1)
    } else {
        half + 1
    };
    let mut slots = vec![field.zero(); len];

    // Walk i downward so the a^(n-2i) power can be maintained by repeated
    // multiplication with a^2 (exponents grow by 2 per step); this also
    // covers a = 0, where a^0 = 1 is the only surviving power.
    let a_is_one = a.is_one();
    let a2 = if a_is_one { None } else { Some(&a * &a) };
    let mut apow = if a_is_one { field.one() } else { a.pow(n % 2) };
    for i in (0..=half).rev() {
        let b = residues.b[i] as i128;
        let av = residues.a[i] as i128;
        let mut c = (b - km1 as i128 * av).rem_euclid(p as i128) as u64;
        if c != 0 {
            if i % 2 == 1 {
                c = p - c; // (-x)^i
            }
            let mut term = field.constant(c as i64);
            if !a_is_one {
                term = &term * &apow;
            }
            let idx = if reduced {
                fold_exponent(i as u128, q) as usize
            } else {
                i
            };
            slots[idx] = &slots[idx] + &term;
        }
        if i > 0 {
            if let Some(a2) = &a2 {
                apow = &apow * a2;
            }
        }
    }
    Ok(Poly::from_elements(field.clone(), slots))
}

struct ResiduePair {
    /// b[i] = C(n-i, i) mod p
    b: Vec<u32>,
    /// a[i] = C(n-i-1, i-1) mod p, with a[0] = C(n-1, -1) = 0
    a: Vec<u32>,
}

/// Streams both binomial sequences for i = 0..=floor(n/2) by exact ratio
/// stepping in BigUint:
///
///   C(n-i-1, i+1) / C(n-i, i)     = (n-2i)(n-2i-1) / ((i+1)(n-i))
///   C(n-i-2, i)   / C(n-i-1, i-1) = (n-2i)(n-2i-1) / (i(n-i-1))
///
/// Results for large n are memoized per (n, p) because one classification
/// cell grid reuses them across every k; distinct keys fill concurrently
/// (the map lock is only held to hand out per-key slots).
fn binomial_residues(n: u64, p: u64) -> Arc<ResiduePair> {
    const CACHE_MIN_N: u64 = 10_000;
    type Slot = Arc<OnceLock<Arc<ResiduePair>>>;
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Slot>>> = OnceLock::new();
    if n < CACHE_MIN_N {
        return Arc::new(compute_residues(n, p));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let slot = {
        let mut guard = cache.lock().expect("binomial cache poisoned");
        guard.entry((n, p)).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(compute_residues(n, p)))
        .clone()
}

fn compute_residues(n: u64, p: u64) -> ResiduePair {
    // The two streams are independent; at the grid's largest indices each
    // is a few seconds of big-integer work, so run them side by side.
    let (b, a) = rayon::join(|| b_stream(n, p), || a_stream(n, p));
    ResiduePair { b, a }
}

fn b_stream(n: u64, p: u64) -> Vec<u32> {
    let half = n / 2;
    let mut out = Vec::with_capacity(half as usize + 1);
    let mut value = BigUint::from(1u32); // C(n, 0)
    for i in 0..=half {
        out.push(mod_p(&value, p));
        if i == half {
            break;
        }
        let num = (n - 2 * i) * (n - 2 * i - 1);
        exact_step(&mut value, num, (i + 1) * (n - i));
    }
    // The stream ends in a closed form, which pins any silent division
    // truncation: C(ceil(n/2), floor(n/2)).
    let expect = if n % 2 == 0 { 1 } else { (n + 1) / 2 };
    assert_eq!(value, BigUint::from(expect), "B stream corrupted at n={n}");
    out
}

fn a_stream(n: u64, p: u64) -> Vec<u32> {
    let half = n / 2;
    let mut out = Vec::with_capacity(half as usize + 1);
    out.push(0); // C(n-1, -1)
    if half == 0 {
        return out;
    }
    let mut value = BigUint::from(1u32); // C(n-2, 0)
    for i in 1..=half {
        out.push(mod_p(&value, p));
        if i == half {
            break;
        }
        let num = (n - 2 * i) * (n - 2 * i - 1);
        exact_step(&mut value, num, i * (n - i - 1));
    }
    let expect = if n % 2 == 0 { 1 } else { (n - 1) / 2 };
    assert_eq!(value, BigUint::from(expect), "A stream corrupted at n={n}");
    out
}

/// value = value * num / den. The division is exact because both ratios
/// above map binomials to binomials; an inexact step would corrupt the
/// running value and trip the closed-form asserts at the end of the stream.
/// Scalar in-place operations keep this on num-bigint's single-limb path.
fn exact_step(value: &mut BigUint, num: u64, den: u64) {
    *value *= num;
    *value /= den;
}

fn mod_p(v: &BigUint, p: u64) -> u32 {
    u64::try_from(v % p).expect("residue fits u64") as u32
}
