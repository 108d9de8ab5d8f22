//! Dense univariate polynomials over GF(q): evaluation, ring operations,
//! and reduction modulo x^q - x by exponent folding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Folds an exponent through x^q = x: for m >= 1 the monomial x^m induces
/// the same map on F_q as x^((m-1) mod (q-1) + 1); the constant exponent 0
/// is left alone. The result is always <= q - 1.
pub fn fold_exponent(m: u128, q: u64) -> u64 {
    if m == 0 {
        0
    } else {
        (((m - 1) % (q as u128 - 1)) + 1) as u64
    }
}

/// A univariate polynomial over a fixed [`FieldSpec`], stored as ascending
/// coefficients with trailing zeros stripped (the zero polynomial is the
/// empty list). The zero polynomial has no degree rather than degree -1, so
/// "degree <= bound" predicates never trip on it by accident.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: &FieldSpec) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_elements(c.field().clone(), vec![c])
    }

    /// The monomial c * x^exp with the exponent taken literally.
    pub fn monomial(field: &FieldSpec, c: FieldElement, exp: usize) -> Poly {
        assert!(c.field() == field, "field mismatch");
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = c;
        Poly::from_elements(field.clone(), coeffs)
    }

    /// The monomial c * x^exp already reduced mod x^q - x; this is how the
    /// polynomial families with astronomically large exponents are built.
    pub fn monomial_mod_qx(field: &FieldSpec, c: FieldElement, exp: u128) -> Poly {
        Poly::monomial(field, c, fold_exponent(exp, field.q()) as usize)
    }

    pub fn x(field: &FieldSpec) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn from_elements(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == &field, "field mismatch");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Builds from ascending canonical element codes.
    pub fn from_codes(field: &FieldSpec, codes: &[u64]) -> Result<Poly> {
        let coeffs = codes
            .iter()
            .map(|&c| field.element_from_code(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_elements(field.clone(), coeffs))
    }

    /// Parses the text form "c0,c1,...,cn" of canonical codes.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly> {
        let codes = crate::gf::parse_coeff_list(s).map_err(|_| Error::Parse {
            what: "polynomial",
            input: s.to_string(),
        })?;
        Poly::from_codes(field, &codes)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Canonical degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field, "field mismatch");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field, "field mismatch");
        Poly::from_elements(
            self.field.clone(),
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// The unique polynomial of degree <= q-1 inducing the same map on F_q,
    /// obtained by folding every monomial exponent (see [`fold_exponent`]).
    pub fn reduce_mod_qx(&self) -> Poly {
        let q = self.field.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); q];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = fold_exponent(m as u128, self.field.q()) as usize;
            out[idx] = &out[idx] + c;
        }
        Poly::from_elements(self.field.clone(), out)
    }

    /// f^s reduced mod x^q - x after every multiplication, so intermediate
    /// degrees never exceed q - 1.
    pub fn pow_mod(&self, mut exp: u64) -> Poly {
        let mut base = self.reduce_mod_qx();
        let mut acc = Poly::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).reduce_mod_qx();
            }
            exp >>= 1;
            if exp > 0 {
                base = (&base * &base).reduce_mod_qx();
            }
        }
        acc
    }

    /// Text form: comma-separated ascending canonical codes.
    pub fn to_code_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.code().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self.to_code_string())
    }
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert!(self.field == rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_elements(self.field.clone(), coeffs)
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_elements(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert!(self.field == rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_elements(self.field.clone(), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: u32) -> FieldSpec {
        FieldSpec::new(p, e).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f3 = f(3, 1);
        let p = Poly::from_codes(&f3, &[1, 1]).unwrap(); // x + 1
        assert_eq!(p.eval(&f3.constant(2)).code(), 0);

        let f5 = f(5, 1);
        let p = Poly::from_codes(&f5, &[0, 1, 1, 3]).unwrap(); // 3x^3 + x^2 + x
        assert_eq!(p.eval(&f5.one()).code(), 0);

        let f7 = f(7, 1);
        let p = Poly::from_codes(&f7, &[0, 6, 0, 3, 1]).unwrap(); // x^4 + 3x^3 - x
        assert_eq!(p.eval(&f7.constant(4)).code(), 3);
    }

    #[test]
    fn ring_operation_examples() {
        let f5 = f(5, 1);
        let xp1 = Poly::from_codes(&f5, &[1, 1]).unwrap();
        let xm1 = Poly::from_codes(&f5, &[4, 1]).unwrap();
        assert_eq!(&xp1 * &xm1, Poly::from_codes(&f5, &[4, 0, 1]).unwrap());

        let any = Poly::from_codes(&f5, &[2, 3, 1]).unwrap();
        assert!((&any * &Poly::zero(&f5)).is_zero());

        let f3 = f(3, 1);
        let p = Poly::from_codes(&f3, &[0, 1, 1]).unwrap(); // x^2 + x
        assert_eq!(
            p.scale(&f3.constant(2)),
            Poly::from_codes(&f3, &[0, 2, 2]).unwrap()
        );
    }

    #[test]
    fn reduce_examples() {
        let f9 = f(3, 2);
        let x9 = Poly::monomial(&f9, f9.one(), 9);
        assert_eq!(x9.reduce_mod_qx(), Poly::x(&f9));

        let f3 = f(3, 1);
        let x4 = Poly::monomial(&f3, f3.one(), 4);
        assert_eq!(x4.reduce_mod_qx(), Poly::monomial(&f3, f3.one(), 2));

        // (3^(me+1) - 1)/2 = 1 mod (3^e - 1) when m is even: e = 2, m = 2
        // gives exponent (3^5 - 1)/2 = 121 which folds to x over F_9.
        let big = Poly::monomial_mod_qx(&f9, f9.one(), 121);
        assert_eq!(big, Poly::x(&f9));
    }

    #[test]
    fn reduce_is_idempotent_and_bounded() {
        let f9 = f(3, 2);
        let p = Poly::from_codes(&f9, &[1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 3, 4, 5]).unwrap();
        let r = p.reduce_mod_qx();
        assert!(r.degree().unwrap() <= 8);
        assert_eq!(r.reduce_mod_qx(), r);
    }

    #[test]
    fn pow_mod_examples() {
        let f5 = f(5, 1);
        let x2 = Poly::monomial(&f5, f5.one(), 2);
        assert_eq!(x2.pow_mod(0), Poly::one(&f5));
        assert_eq!(x2.pow_mod(2), Poly::monomial(&f5, f5.one(), 4));
        // x^6 folds to x^2.
        assert_eq!(x2.pow_mod(3), x2);
    }

    #[test]
    fn degree_examples() {
        let f5 = f(5, 1);
        assert_eq!(
            Poly::from_codes(&f5, &[1, 0, 0, 1]).unwrap().degree(),
            Some(3)
        );
        // The integer constant 5 reduces to the zero polynomial over F_5.
        assert_eq!(Poly::constant(f5.constant(5)).degree(), None);
        assert_eq!(Poly::from_codes(&f5, &[0, 2]).unwrap().degree(), Some(1));
    }

    #[test]
    fn mapping_preserved_by_reduce() {
        let f9 = f(3, 2);
        // Degree just under 3q, mixed coefficients.
        let codes: Vec<u64> = (0..26).map(|i| (i * 5 + 3) % 9).collect();
        let p = Poly::from_codes(&f9, &codes).unwrap();
        let r = p.reduce_mod_qx();
        for x in f9.elements() {
            assert_eq!(p.eval(&x), r.eval(&x));
        }
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let f25 = f(5, 2);
        let p = Poly::from_codes(&f25, &[7, 1, 0, 24, 3]).unwrap();
        let mut acc = Poly::one(&f25);
        for s in 0..=6u64 {
            assert_eq!(p.pow_mod(s), acc.reduce_mod_qx());
            acc = &acc * &p;
        }
    }

    #[test]
    fn parse_round_trip() {
        let f5 = f(5, 1);
        let p = Poly::parse(&f5, "0,1,1,3").unwrap();
        assert_eq!(p.to_code_string(), "0,1,1,3");
        assert!(Poly::parse(&f5, "0,x").is_err());
        assert!(Poly::parse(&f5, "0,9").is_err()); // code out of range
    }
}
