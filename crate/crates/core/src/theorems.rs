//! The classified polynomial families, their closed-form permutation
//! predictors, and grid verifiers that compare each prediction against
//! brute-force ground truth.
//!
//! Families over GF(p^e), all built from an index l >= 0 and a kind
//! parameter k in [0, p-1]:
//!
//! * `trinomial` (p > 3, k not in {0, 2, 4}):
//!   (4-k) x^((p^l+1)/2) + k x^((p^l-1)/2) + (2-k) x,
//!   a permutation iff l = 0 and k != 3.
//! * `binomial_p3` (p = 3, forcing k = 1): x^((3^l-1)/2) + x,
//!   a permutation iff l = 0 or l = me+1 with m even.
//! * `binomial_k4` (p > 3, k = 4): x^((p^l-1)/2) - x/2, whose verdict
//!   matches D_{p^l+2,4}(1, x) cell by cell.
//! * `dickson_n_pl2`: D_{p^l+2,k}(1, x) itself; for k = 2 a permutation
//!   iff l = 0, otherwise paired with the trinomial / k = 4 binomial.
//! * `result1` (k = 0, l = e): D_{q+2,0}(1, x), pointwise equal to
//!   (1/2)(1-4x)^((q+1)/2) - x + 1/2 and a permutation iff q = 1 mod 3.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dickson::{dickson_poly_mod_qx, result1_closed_form, DicksonParams};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poly::Poly;
use crate::ppcheck::{brute_force_check, Verdict, Witness};

/// Default ceiling on q for brute-force grid cells.
pub const DEFAULT_Q_CAP: u64 = 343;

/// One grid coordinate: a field GF(p^e) plus the family index l and kind k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub p: u64,
    pub e: u32,
    pub l: u32,
    pub k: u64,
}

impl FamilyParams {
    pub fn new(p: u64, e: u32, l: u32, k: u64) -> Self {
        FamilyParams { p, e, l, k }
    }

    fn p_to_l(&self) -> Result<u128> {
        (self.p as u128).checked_pow(self.l).ok_or_else(|| {
            Error::InvalidParams(format!("p^l overflows for p={} l={}", self.p, self.l))
        })
    }

    fn check_field(&self, field: &FieldSpec) -> Result<()> {
        if field.p() != self.p || field.e() != self.e {
            return Err(Error::InvalidParams(format!(
                "field {} does not match params p={} e={}",
                field, self.p, self.e
            )));
        }
        Ok(())
    }

    fn check_kind(&self) -> Result<()> {
        if self.k > self.p - 1 {
            return Err(Error::KindOutOfRange {
                k: self.k,
                max: self.p - 1,
            });
        }
        Ok(())
    }
}

/// (4-k) x^((p^l+1)/2) + k x^((p^l-1)/2) + (2-k) x, reduced mod x^q - x.
/// For l = 0 this collapses to 2(3-k) x + k.
pub fn trinomial(params: &FamilyParams, field: &FieldSpec) -> Result<Poly> {
    params.check_field(field)?;
    params.check_kind()?;
    if params.p <= 3 {
        return Err(Error::InvalidParams(
            "trinomial family requires p > 3".into(),
        ));
    }
    if matches!(params.k, 0 | 2 | 4) {
        return Err(Error::InvalidParams(format!(
            "trinomial family requires k not in {{0, 2, 4}}, got k={}",
            params.k
        )));
    }
    let pl = params.p_to_l()?;
    let k = params.k as i64;
    let f = &(&Poly::monomial_mod_qx(field, field.constant(4 - k), (pl + 1) / 2)
        + &Poly::monomial_mod_qx(field, field.constant(k), (pl - 1) / 2))
        + &Poly::monomial_mod_qx(field, field.constant(2 - k), 1);
    Ok(f)
}

/// x^((3^l-1)/2) + x over GF(3^e), reduced mod x^q - x. For l = 0 the first
/// exponent is 0, so the polynomial is x + 1.
pub fn binomial_p3(l: u32, field: &FieldSpec) -> Result<Poly> {
    if field.p() != 3 {
        return Err(Error::InvalidParams(format!(
            "binomial family requires p = 3, got p={}",
            field.p()
        )));
    }
    let pl = (3u128)
        .checked_pow(l)
        .ok_or_else(|| Error::InvalidParams(format!("3^l overflows for l={l}")))?;
    Ok(&Poly::monomial_mod_qx(field, field.one(), (pl - 1) / 2) + &Poly::x(field))
}

/// x^((p^l-1)/2) - x/2, reduced mod x^q - x (p > 3, the k = 4 companion).
pub fn binomial_k4(params: &FamilyParams, field: &FieldSpec) -> Result<Poly> {
    params.check_field(field)?;
    if params.p <= 3 {
        return Err(Error::InvalidParams(
            "k = 4 binomial family requires p > 3".into(),
        ));
    }
    if params.k != 4 {
        return Err(Error::InvalidParams(format!(
            "k = 4 binomial family requires k = 4, got k={}",
            params.k
        )));
    }
    let pl = params.p_to_l()?;
    let neg_half = -&field.constant(2).inv().expect("p odd");
    Ok(&Poly::monomial_mod_qx(field, field.one(), (pl - 1) / 2)
        + &Poly::monomial(field, neg_half, 1))
}

/// Closed-form classification of the trinomial family: permutation iff
/// l = 0 and k != 3.
pub fn predict_trinomial_pp(params: &FamilyParams) -> Result<bool> {
    params.check_kind()?;
    if params.p <= 3 {
        return Err(Error::InvalidParams(
            "trinomial family requires p > 3".into(),
        ));
    }
    if matches!(params.k, 0 | 2 | 4) {
        return Err(Error::InvalidParams(format!(
            "trinomial family requires k not in {{0, 2, 4}}, got k={}",
            params.k
        )));
    }
    Ok(params.l == 0 && params.k != 3)
}

/// Closed-form classification of the p = 3 binomial: permutation iff l = 0
/// or l = me + 1 with m a non-negative even integer, encoded arithmetically
/// as e | (l - 1) with an even quotient.
pub fn predict_binomial_pp_p3(e: u32, l: u32) -> bool {
    debug_assert!(e >= 1);
    l == 0 || ((l - 1) % e == 0 && ((l - 1) / e) % 2 == 0)
}

/// D_{q+2,0}(1, x) permutes GF(q) iff q = 1 mod 3.
pub fn predict_result1_pp(field: &FieldSpec) -> bool {
    field.q() % 3 == 1
}

/// The named polynomial families a grid cell can verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "trinomial")]
    Trinomial,
    #[serde(rename = "binomial_p3")]
    BinomialP3,
    #[serde(rename = "binomial_k4")]
    BinomialK4,
    #[serde(rename = "dickson_n_pl2")]
    DicksonNPl2,
    #[serde(rename = "result1")]
    Result1,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Trinomial => "trinomial",
            Family::BinomialP3 => "binomial_p3",
            Family::BinomialK4 => "binomial_k4",
            Family::DicksonNPl2 => "dickson_n_pl2",
            Family::Result1 => "result1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trinomial" => Ok(Family::Trinomial),
            "binomial_p3" => Ok(Family::BinomialP3),
            "binomial_k4" => Ok(Family::BinomialK4),
            "dickson_n_pl2" => Ok(Family::DicksonNPl2),
            "result1" => Ok(Family::Result1),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

/// One verified cell: the prediction, the brute-force observation, and the
/// agreement flag, plus the observed side's witness when negative.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub p: u64,
    pub e: u32,
    pub l: u32,
    pub k: u64,
    pub family: Family,
    pub predicted: bool,
    pub observed: bool,
    pub agree: bool,
    pub witness: Option<Witness>,
}

/// Fixed header for the CSV report format.
pub const REPORT_CSV_HEADER: &str = "p,e,l,k,family,predicted,observed,agree,witness";

impl TheoremReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.p,
            self.e,
            self.l,
            self.k,
            self.family,
            self.predicted,
            self.observed,
            self.agree,
            self.witness
                .as_ref()
                .map(|w| w.to_compact_string())
                .unwrap_or_default()
        )
    }

    fn from_parts(
        params: &FamilyParams,
        family: Family,
        predicted: bool,
        observed: Verdict,
    ) -> Self {
        TheoremReport {
            p: params.p,
            e: params.e,
            l: params.l,
            k: params.k,
            family,
            predicted,
            observed: observed.is_permutation,
            agree: predicted == observed.is_permutation,
            witness: observed.witness,
        }
    }
}

fn dickson_index(params: &FamilyParams) -> Result<u64> {
    let n = params.p_to_l()? + 2;
    u64::try_from(n).map_err(|_| {
        Error::InvalidParams(format!(
            "p^l + 2 overflows u64 (p={}, l={})",
            params.p, params.l
        ))
    })
}

fn dickson_verdict(params: &FamilyParams, field: &FieldSpec) -> Result<Verdict> {
    let n = dickson_index(params)?;
    let d = dickson_poly_mod_qx(&DicksonParams::new(n, params.k), field)?;
    Ok(brute_force_check(&d))
}

/// Verifies one cell: constructs the family polynomial(s) over GF(p^e),
/// takes the brute-force verdict as ground truth, and compares it with the
/// prediction. For `binomial_k4` and `dickson_n_pl2` at k not in {0, 2},
/// the "prediction" is the equivalence claim: the paired companion
/// polynomial must have the identical verdict. For `result1` the agreement
/// additionally requires the reduced D_{q+2,0} to coincide with its closed
/// form.
pub fn verify_cell(params: &FamilyParams, family: Family) -> Result<TheoremReport> {
    let field = FieldSpec::new(params.p, params.e)?;
    params.check_kind()?;
    match family {
        Family::Trinomial => {
            let f = trinomial(params, &field)?;
            let predicted = predict_trinomial_pp(params)?;
            Ok(TheoremReport::from_parts(
                params,
                family,
                predicted,
                brute_force_check(&f),
            ))
        }
        Family::BinomialP3 => {
            if params.k != 1 {
                return Err(Error::InvalidParams(format!(
                    "p = 3 forces k = 1, got k={}",
                    params.k
                )));
            }
            let f = binomial_p3(params.l, &field)?;
            let predicted = predict_binomial_pp_p3(params.e, params.l);
            Ok(TheoremReport::from_parts(
                params,
                family,
                predicted,
                brute_force_check(&f),
            ))
        }
        Family::BinomialK4 => {
            let companion = binomial_k4(params, &field)?;
            let predicted = brute_force_check(&companion).is_permutation;
            let observed = dickson_verdict(params, &field)?;
            Ok(TheoremReport::from_parts(
                params, family, predicted, observed,
            ))
        }
        Family::DicksonNPl2 => match params.k {
            0 => Err(Error::InvalidParams(
                "k = 0 cells are covered by the result1 family".into(),
            )),
            2 => {
                let predicted = params.l == 0;
                let observed = dickson_verdict(params, &field)?;
                Ok(TheoremReport::from_parts(
                    params, family, predicted, observed,
                ))
            }
            4 => {
                let companion = binomial_k4(params, &field)?;
                let predicted = brute_force_check(&companion).is_permutation;
                let observed = dickson_verdict(params, &field)?;
                Ok(TheoremReport::from_parts(
                    params, family, predicted, observed,
                ))
            }
            _ => {
                let companion = trinomial(params, &field)?;
                let predicted = brute_force_check(&companion).is_permutation;
                let observed = dickson_verdict(params, &field)?;
                Ok(TheoremReport::from_parts(
                    params, family, predicted, observed,
                ))
            }
        },
        Family::Result1 => {
            if params.k != 0 || params.l != params.e {
                return Err(Error::InvalidParams(
                    "result1 cells require k = 0 and l = e".into(),
                ));
            }
            let n = field.q() + 2;
            let d = dickson_poly_mod_qx(&DicksonParams::new(n, 0), &field)?;
            let closed = result1_closed_form(&field);
            let predicted = predict_result1_pp(&field);
            let verdict = brute_force_check(&d);
            let mut report = TheoremReport::from_parts(params, family, predicted, verdict);
            // Both sides are reduced, so polynomial equality is exactly
            // pointwise equality of the induced maps.
            report.agree = report.agree && d == closed;
            Ok(report)
        }
    }
}

/// The six named classification claims the CLI can verify independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Thm31,
    Thm41,
    Result1,
    Result2,
    Result3,
    Result4,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Thm31,
        Theorem::Thm41,
        Theorem::Result1,
        Theorem::Result2,
        Theorem::Result3,
        Theorem::Result4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Thm31 => "thm3.1",
            Theorem::Thm41 => "thm4.1",
            Theorem::Result1 => "result1",
            Theorem::Result2 => "result2",
            Theorem::Result3 => "result3",
            Theorem::Result4 => "result4",
        }
    }

    /// The canonical verification grid for this claim.
    pub fn grid(&self) -> Grid {
        let base = Grid {
            family: Family::Trinomial,
            p_list: vec![5, 7, 11, 13],
            e_min: 1,
            e_max: 2,
            l_max: None,
            l_pin: None,
            k_pin: None,
            q_cap: DEFAULT_Q_CAP,
        };
        match self {
            Theorem::Thm31 => base,
            Theorem::Thm41 => Grid {
                family: Family::BinomialP3,
                p_list: vec![3],
                e_max: 4,
                ..base
            },
            Theorem::Result1 => Grid {
                family: Family::Result1,
                ..base
            },
            Theorem::Result2 => Grid {
                family: Family::DicksonNPl2,
                k_pin: Some(2),
                ..base
            },
            Theorem::Result3 => Grid {
                family: Family::BinomialK4,
                ..base
            },
            Theorem::Result4 => Grid {
                family: Family::DicksonNPl2,
                ..base
            },
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "theorem",
                input: s.to_string(),
            })
    }
}

/// A rectangular scan grid. The default l range is [0, 2e+1] (one full
/// exponent-folding period past the base cases) and [0, 4e+1] for the p = 3
/// binomial; k defaults to every kind the family admits.
#[derive(Debug, Clone)]
pub struct Grid {
    pub family: Family,
    pub p_list: Vec<u64>,
    pub e_min: u32,
    pub e_max: u32,
    pub l_max: Option<u32>,
    pub l_pin: Option<u32>,
    pub k_pin: Option<u64>,
    pub q_cap: u64,
}

impl Grid {
    fn default_l_max(&self, e: u32) -> u32 {
        match self.family {
            Family::BinomialP3 => 4 * e + 1,
            _ => 2 * e + 1,
        }
    }

    fn kinds(&self, p: u64) -> Vec<u64> {
        if let Some(k) = self.k_pin {
            return vec![k];
        }
        match self.family {
            Family::Trinomial | Family::DicksonNPl2 => {
                (0..p).filter(|k| !matches!(k, 0 | 2 | 4)).collect()
            }
            Family::BinomialP3 => vec![1],
            Family::BinomialK4 => vec![4],
            Family::Result1 => vec![0],
        }
    }

    /// Enumerates cells in lexicographic (p, e, l, k) order, rejecting the
    /// whole grid if any field would exceed the q cap.
    pub fn cells(&self) -> Result<Vec<FamilyParams>> {
        let mut p_list = self.p_list.clone();
        p_list.sort_unstable();
        p_list.dedup();
        let mut out = Vec::new();
        for &p in &p_list {
            for e in self.e_min..=self.e_max {
                let q = (p as u128).pow(e);
                if q > self.q_cap as u128 {
                    return Err(Error::CapExceeded {
                        q: q.min(u64::MAX as u128) as u64,
                        cap: self.q_cap,
                    });
                }
                let ls: Vec<u32> = if self.family == Family::Result1 {
                    vec![e]
                } else if let Some(l) = self.l_pin {
                    vec![l]
                } else {
                    (0..=self.l_max.unwrap_or_else(|| self.default_l_max(e))).collect()
                };
                for l in ls {
                    for k in self.kinds(p) {
                        out.push(FamilyParams::new(p, e, l, k));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs [`verify_cell`] over every cell of the grid; cells are independent
/// and verified in parallel, with reports assembled back in grid order.
pub fn scan(grid: &Grid) -> Result<Vec<TheoremReport>> {
    let cells = grid.cells()?;
    cells
        .into_par_iter()
        .map(|params| verify_cell(&params, grid.family))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppcheck::revalidate_witness;

    fn field(p: u64, e: u32) -> FieldSpec {
        FieldSpec::new(p, e).unwrap()
    }

    #[test]
    fn trinomial_examples() {
        let f7 = field(7, 1);
        let f = trinomial(&FamilyParams::new(7, 1, 1, 3), &f7).unwrap();
        assert_eq!(f, Poly::from_codes(&f7, &[0, 6, 0, 3, 1]).unwrap()); // x^4+3x^3-x

        let f5 = field(5, 1);
        let f = trinomial(&FamilyParams::new(5, 1, 0, 1), &f5).unwrap();
        assert_eq!(f, Poly::from_codes(&f5, &[1, 4]).unwrap()); // 4x + 1

        let f = trinomial(&FamilyParams::new(5, 1, 0, 3), &f5).unwrap();
        assert_eq!(f, Poly::from_codes(&f5, &[3]).unwrap()); // constant 3
    }

    #[test]
    fn trinomial_parameter_validation() {
        let f5 = field(5, 1);
        assert!(trinomial(&FamilyParams::new(5, 1, 1, 2), &f5).is_err());
        assert!(trinomial(&FamilyParams::new(5, 1, 1, 4), &f5).is_err());
        assert!(matches!(
            trinomial(&FamilyParams::new(5, 1, 1, 9), &f5),
            Err(Error::KindOutOfRange { .. })
        ));
        let f3 = field(3, 1);
        assert!(trinomial(&FamilyParams::new(3, 1, 1, 1), &f3).is_err());
        // Field/params mismatch.
        assert!(trinomial(&FamilyParams::new(7, 1, 1, 1), &f5).is_err());
    }

    #[test]
    fn binomial_p3_examples() {
        let f3 = field(3, 1);
        assert_eq!(
            binomial_p3(0, &f3).unwrap(),
            Poly::from_codes(&f3, &[1, 1]).unwrap()
        );
        assert_eq!(
            binomial_p3(1, &f3).unwrap(),
            Poly::from_codes(&f3, &[0, 2]).unwrap()
        );
        assert_eq!(
            binomial_p3(2, &f3).unwrap(),
            Poly::from_codes(&f3, &[0, 1, 1]).unwrap()
        );
        assert!(binomial_p3(0, &field(5, 1)).is_err());
    }

    #[test]
    fn binomial_k4_examples() {
        let f5 = field(5, 1);
        assert_eq!(
            binomial_k4(&FamilyParams::new(5, 1, 1, 4), &f5).unwrap(),
            Poly::from_codes(&f5, &[0, 2, 1]).unwrap() // x^2 + 2x
        );
        let f7 = field(7, 1);
        assert_eq!(
            binomial_k4(&FamilyParams::new(7, 1, 0, 4), &f7).unwrap(),
            Poly::from_codes(&f7, &[1, 3]).unwrap() // 1 - 4x
        );
        assert_eq!(
            binomial_k4(&FamilyParams::new(5, 1, 2, 4), &f5).unwrap(),
            Poly::from_codes(&f5, &[0, 2, 0, 0, 1]).unwrap() // x^12 folds to x^4
        );
    }

    #[test]
    fn predictor_examples() {
        assert!(predict_trinomial_pp(&FamilyParams::new(5, 1, 0, 1)).unwrap());
        assert!(!predict_trinomial_pp(&FamilyParams::new(7, 2, 1, 3)).unwrap());
        assert!(!predict_trinomial_pp(&FamilyParams::new(11, 1, 0, 3)).unwrap());

        assert!(predict_binomial_pp_p3(2, 1));
        assert!(!predict_binomial_pp_p3(2, 3));
        assert!(!predict_binomial_pp_p3(1, 2));

        assert!(predict_result1_pp(&field(7, 1)));
        assert!(!predict_result1_pp(&field(5, 1)));
        assert!(predict_result1_pp(&field(5, 2))); // 25 = 1 mod 3
    }

    #[test]
    fn binomial_p3_cross_check() {
        // (e=1, l=2): x^4 + x over F_3 has f(0) = f(2) = 0.
        let f3 = field(3, 1);
        let f = binomial_p3(2, &f3).unwrap();
        assert!(f.eval(&f3.zero()).is_zero());
        assert!(f.eval(&f3.constant(2)).is_zero());
        let v = brute_force_check(&f);
        assert_eq!(v.witness, Some(Witness::Collision { x1: 0, x2: 2 }));
    }

    #[test]
    fn verify_cell_examples() {
        let r = verify_cell(&FamilyParams::new(5, 1, 1, 1), Family::Trinomial).unwrap();
        assert!(!r.predicted && !r.observed && r.agree);
        assert_eq!(r.witness, Some(Witness::Collision { x1: 0, x2: 1 }));

        let r = verify_cell(&FamilyParams::new(7, 1, 1, 1), Family::DicksonNPl2).unwrap();
        assert!(r.agree);

        // D_{3,2}(1, x) = 1 - x is a permutation (l = 0).
        let r = verify_cell(&FamilyParams::new(5, 1, 0, 2), Family::DicksonNPl2).unwrap();
        assert!(r.predicted && r.observed && r.agree);

        assert!(verify_cell(&FamilyParams::new(5, 1, 1, 0), Family::DicksonNPl2).is_err());
        // result1 cells are pinned to l = e and k = 0.
        assert!(verify_cell(&FamilyParams::new(5, 1, 2, 0), Family::Result1).is_err());
        assert!(verify_cell(&FamilyParams::new(5, 1, 1, 1), Family::Result1).is_err());
    }

    #[test]
    fn result1_cells() {
        let r = verify_cell(&FamilyParams::new(7, 1, 1, 0), Family::Result1).unwrap();
        assert!(r.predicted && r.observed && r.agree);
        let r = verify_cell(&FamilyParams::new(5, 1, 1, 0), Family::Result1).unwrap();
        assert!(!r.predicted && !r.observed && r.agree);
    }

    #[test]
    fn small_grid_scans_agree() {
        let mut grid = Theorem::Thm31.grid();
        grid.p_list = vec![5, 7];
        let reports = scan(&grid).unwrap();
        assert_eq!(reports.len(), 60); // (4 + 6) l-cells x (2 + 4) kinds
        assert!(reports.iter().all(|r| r.agree));

        let mut grid = Theorem::Thm41.grid();
        grid.e_max = 3;
        let reports = scan(&grid).unwrap();
        assert_eq!(reports.len(), 6 + 10 + 14);
        assert!(reports.iter().all(|r| r.agree));
    }

    #[test]
    fn scan_is_deterministic_and_ordered() {
        let mut grid = Theorem::Thm31.grid();
        grid.p_list = vec![7, 5]; // unsorted on purpose
        let a = scan(&grid).unwrap();
        let b = scan(&grid).unwrap();
        let rows: Vec<String> = a.iter().map(|r| r.to_csv_row()).collect();
        assert_eq!(rows, b.iter().map(|r| r.to_csv_row()).collect::<Vec<_>>());
        let keys: Vec<(u64, u32, u32, u64)> = a.iter().map(|r| (r.p, r.e, r.l, r.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn scan_cap_is_enforced() {
        let mut grid = Theorem::Thm31.grid();
        grid.q_cap = 100; // q = 121, 169 exceed it
        assert!(matches!(scan(&grid), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn case2_witness_values() {
        // l = 1, k = 3: f(1) = 3 and f(4) = 3 mod p.
        for p in [7u64, 11, 13] {
            let f = field(p, 1);
            let tri = trinomial(&FamilyParams::new(p, 1, 1, 3), &f).unwrap();
            assert_eq!(tri.eval(&f.one()), f.constant(3), "p={p}");
            assert_eq!(tri.eval(&f.constant(4)), f.constant(3), "p={p}");
        }
    }

    #[test]
    fn folding_periodicity_for_positive_l() {
        // For l >= 1 the exponents (p^l +- 1)/2 stay >= 1, so shifting l by
        // 2e folds to the identical reduced polynomial, hence the identical
        // verdict. This is the strongest form of the periodicity property.
        for p in [5u64, 7] {
            for e in [1u32, 2] {
                let f = field(p, e);
                for l in 1..=2 * e + 1 {
                    for k in (0..p).filter(|k| !matches!(k, 0 | 2 | 4)) {
                        let a = trinomial(&FamilyParams::new(p, e, l, k), &f).unwrap();
                        let b = trinomial(&FamilyParams::new(p, e, l + 2 * e, k), &f).unwrap();
                        assert_eq!(a, b, "trinomial p={p} e={e} l={l} k={k}");
                    }
                    let a = binomial_k4(&FamilyParams::new(p, e, l, 4), &f).unwrap();
                    let b = binomial_k4(&FamilyParams::new(p, e, l + 2 * e, 4), &f).unwrap();
                    assert_eq!(a, b, "binomial_k4 p={p} e={e} l={l}");
                }
            }
        }
        for e in [1u32, 2] {
            let f = field(3, e);
            for l in 1..=4 * e + 1 {
                let a = binomial_p3(l, &f).unwrap();
                let b = binomial_p3(l + 2 * e, &f).unwrap();
                assert_eq!(a, b, "binomial_p3 e={e} l={l}");
            }
        }
        // Dickson verdicts inherit the periodicity through the pairing;
        // spot-check cells whose indices p^(l+2e) + 2 stay constructible.
        for (p, l, k) in [(5u64, 1u32, 1u64), (5, 1, 3), (7, 1, 1), (5, 3, 1)] {
            let at = |l| {
                verify_cell(&FamilyParams::new(p, 1, l, k), Family::DicksonNPl2)
                    .unwrap()
                    .observed
            };
            assert_eq!(at(l), at(l + 2), "dickson p={p} l={l} k={k}");
        }
    }

    #[test]
    fn periodicity_breaks_at_l_zero() {
        // At l = 0 the middle exponent (p^0 - 1)/2 = 0 is a constant term,
        // which does not fold like the positive exponent it becomes at
        // l = 2e: x^0 is 1 everywhere while x^(q-1) vanishes at 0. So the
        // l = 0 column is genuinely non-periodic whenever k != 3.
        let f5 = field(5, 1);
        let at0 = trinomial(&FamilyParams::new(5, 1, 0, 1), &f5).unwrap();
        let at2 = trinomial(&FamilyParams::new(5, 1, 2, 1), &f5).unwrap();
        assert!(brute_force_check(&at0).is_permutation);
        assert!(!brute_force_check(&at2).is_permutation);
        // k = 3 is the exception: not a permutation on either side.
        let at0 = trinomial(&FamilyParams::new(5, 1, 0, 3), &f5).unwrap();
        let at2 = trinomial(&FamilyParams::new(5, 1, 2, 3), &f5).unwrap();
        assert!(!brute_force_check(&at0).is_permutation);
        assert!(!brute_force_check(&at2).is_permutation);
    }

    #[test]
    fn negative_witnesses_revalidate() {
        let mut grid = Theorem::Thm31.grid();
        grid.p_list = vec![5, 7];
        for r in scan(&grid).unwrap() {
            if let Some(w) = &r.witness {
                let f = field(r.p, r.e);
                let params = FamilyParams::new(r.p, r.e, r.l, r.k);
                let tri = trinomial(&params, &f).unwrap();
                assert!(revalidate_witness(&tri, w), "cell {:?}", params);
            }
        }
    }

    #[test]
    fn report_formats() {
        let r = verify_cell(&FamilyParams::new(5, 1, 1, 1), Family::Trinomial).unwrap();
        assert_eq!(
            r.to_csv_row(),
            "5,1,1,1,trinomial,false,false,true,collision:0:1"
        );
        assert_eq!(
            r.to_json_line(),
            r#"{"p":5,"e":1,"l":1,"k":1,"family":"trinomial","predicted":false,"observed":false,"agree":true,"witness":{"kind":"collision","data":[0,1]}}"#
        );
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("thm9.9".parse::<Theorem>().is_err());
    }
}
