//! Euler-number partition functions.
//!
//! For a variety fibered in genus-g curves over a base with Euler number
//! chi(S), the generating function of the Euler numbers of the moduli of a
//! fiber plus n points factors as
//!
//!   hilbert(q) * chi(S) * (punctual(q) / plain(q))^(2-2g)
//!
//! where hilbert(q) is the Hilbert-scheme Euler series (a plethystic
//! exponential of chi(X) times a universal single-point series) and
//! punctual/plain are the partition-count series. This module assembles
//! those series and runs the two experiment checkers: the rationality and
//! q -> 1/q symmetry of the reduced partition function, and the product
//! identity punctual = plain / (1-q)^(r-2).

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::partitions::partition_series;
use crate::ratfun::{check_q_inversion_symmetry, rational_reconstruct, RationalFunction, SymmetryReport};
use crate::rational::{render_coeff, Coeff};
use crate::series::{one_minus_q_pow, TruncatedSeries};

/// The Euler-level data of a fibration: ambient dimension r, fiber genus,
/// Euler numbers of the total space and the base, and whether the canonical
/// class vanishes (which forces genus 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibrationData {
    pub r: u32,
    pub genus: u32,
    pub chi_x: i64,
    pub chi_s: i64,
    pub ky_zero: bool,
}

impl FibrationData {
    pub fn new(r: u32, genus: u32, chi_x: i64, chi_s: i64, ky_zero: bool) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
        }
        if ky_zero && genus != 1 {
            return Err(Error::InvalidArgument(format!(
                "a trivial canonical class forces genus 1, got genus {genus}"
            )));
        }
        Ok(Self {
            r,
            genus,
            chi_x,
            chi_s,
            ky_zero,
        })
    }
}

/// The single-point exponent series for Hilbert schemes: the plethystic log
/// of the plain partition series.
pub fn h_series(r: u32, order: usize) -> Result<TruncatedSeries> {
    h_series_from(&partition_series(r, order, false)?)
}

pub fn h_series_from(plain: &TruncatedSeries) -> Result<TruncatedSeries> {
    plain.plog()
}

/// The single-point exponent series for the punctual curve-plus-points
/// moduli: the plethystic log of the punctual partition series.
pub fn c_series(r: u32, order: usize) -> Result<TruncatedSeries> {
    c_series_from(&partition_series(r, order, true)?)
}

pub fn c_series_from(punctual: &TruncatedSeries) -> Result<TruncatedSeries> {
    punctual.plog()
}

/// Euler series of the Hilbert schemes of points of an r-fold with Euler
/// number chi_x: pexp(chi_x * h_r).
pub fn hilbert_euler_series(r: u32, chi_x: i64, order: usize) -> Result<TruncatedSeries> {
    hilbert_euler_series_from(&h_series(r, order)?, chi_x)
}

pub fn hilbert_euler_series_from(h: &TruncatedSeries, chi_x: i64) -> Result<TruncatedSeries> {
    h.scaled(&Coeff::from_integer(chi_x.into())).pexp()
}

/// Euler series of the moduli spaces of a fiber plus points.
pub fn moduli_euler_series(fd: &FibrationData, order: usize) -> Result<TruncatedSeries> {
    let plain = partition_series(fd.r, order, false)?;
    let punctual = partition_series(fd.r, order, true)?;
    moduli_euler_series_from(fd, &plain, &punctual)
}

pub fn moduli_euler_series_from(
    fd: &FibrationData,
    plain: &TruncatedSeries,
    punctual: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let hilbert = hilbert_euler_series_from(&h_series_from(plain)?, fd.chi_x)?;
    let reduced = reduced_from_ratio(fd, plain, punctual)?;
    Ok(&hilbert * &reduced)
}

/// chi(S) * (punctual/plain)^(2-2g); the partition series has constant term
/// 1, so the ratio is always invertible.
fn reduced_from_ratio(
    fd: &FibrationData,
    plain: &TruncatedSeries,
    punctual: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let ratio = punctual * &plain.inv()?;
    let power = ratio.pow(2 - 2 * fd.genus as i64)?;
    Ok(power.scaled(&Coeff::from_integer(fd.chi_s.into())))
}

/// The reduced partition function: moduli series over Hilbert series. It is
/// independent of chi_x; both routes are computed and compared.
pub fn reduced_partition_function(fd: &FibrationData, order: usize) -> Result<TruncatedSeries> {
    let plain = partition_series(fd.r, order, false)?;
    let punctual = partition_series(fd.r, order, true)?;
    reduced_partition_function_from(fd, &plain, &punctual)
}

pub fn reduced_partition_function_from(
    fd: &FibrationData,
    plain: &TruncatedSeries,
    punctual: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let direct = reduced_from_ratio(fd, plain, punctual)?;
    let moduli = moduli_euler_series_from(fd, plain, punctual)?;
    let hilbert = hilbert_euler_series_from(&h_series_from(plain)?, fd.chi_x)?;
    let quotient = &moduli * &hilbert.inv()?;
    assert_eq!(
        direct, quotient,
        "reduced partition function depends on chi_x: quotient route disagrees"
    );
    Ok(direct)
}

/// Verdict of a conjecture run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    HoldsThroughOrder,
    FirstMismatch { n: usize, lhs: Coeff, rhs: Coeff },
    ReconstructionFailed { reason: String },
}

impl Verdict {
    fn label(&self) -> &'static str {
        match self {
            Verdict::HoldsThroughOrder => "holds-through-order",
            Verdict::FirstMismatch { .. } => "first-mismatch-at-n",
            Verdict::ReconstructionFailed { .. } => "reconstruction-failed",
        }
    }
}

/// Machine-readable result of a conjecture checker. The checker reports; it
/// never asserts an open statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub conjecture: &'static str,
    pub parameters: Vec<(&'static str, i64)>,
    pub order: usize,
    pub verdict: Verdict,
    /// Per-coefficient (n, lhs, rhs) pairs for the product-identity check.
    pub pairs: Option<Vec<(usize, Coeff, Coeff)>>,
    pub rational_function: Option<RationalFunction>,
    pub symmetry: Option<SymmetryReport>,
}

impl ConjectureReport {
    /// True when the run found nothing off: the verdict holds and, if a
    /// symmetry test ran, it came out symmetric.
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::HoldsThroughOrder)
            && self.symmetry.as_ref().is_none_or(|s| s.symmetric)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("conjecture".into(), json!(self.conjecture));
        let params: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        obj.insert("parameters".into(), Value::Object(params));
        obj.insert("order".into(), json!(self.order));
        obj.insert("verdict".into(), json!(self.verdict.label()));
        if let Verdict::FirstMismatch { n, lhs, rhs } = &self.verdict {
            obj.insert(
                "first_mismatch".into(),
                json!({"n": n, "lhs": render_coeff(lhs), "rhs": render_coeff(rhs)}),
            );
        }
        if let Verdict::ReconstructionFailed { reason } = &self.verdict {
            obj.insert("reason".into(), json!(reason));
        }
        if let Some(pairs) = &self.pairs {
            let rows: Vec<Value> = pairs
                .iter()
                .map(|(n, l, r)| json!([n, render_coeff(l), render_coeff(r)]))
                .collect();
            obj.insert("pairs".into(), Value::Array(rows));
        }
        if let Some(f) = &self.rational_function {
            obj.insert("rational_function".into(), f.to_json());
        }
        if let Some(s) = &self.symmetry {
            obj.insert(
                "symmetry".into(),
                json!({"symmetric": s.symmetric, "defect_power": s.defect_power}),
            );
        }
        Value::Object(obj)
    }
}

/// Compares the punctual series against plain/(1-q)^(r-2) coefficientwise
/// and reports every pair plus the first mismatch, if any.
pub fn check_pwp(r: u32, order: usize) -> Result<ConjectureReport> {
    let plain = partition_series(r, order, false)?;
    let punctual = partition_series(r, order, true)?;
    Ok(check_pwp_from(r, &plain, &punctual))
}

pub fn check_pwp_from(
    r: u32,
    plain: &TruncatedSeries,
    punctual: &TruncatedSeries,
) -> ConjectureReport {
    let order = plain.order().min(punctual.order());
    let rhs = &plain.truncated(order)
        * &one_minus_q_pow(1, order)
            .pow(-(r as i64 - 2))
            .expect("1 - q is invertible");
    let pairs: Vec<(usize, Coeff, Coeff)> = (0..=order)
        .map(|n| (n, punctual.coeff(n).clone(), rhs.coeff(n).clone()))
        .collect();
    let verdict = match pairs.iter().find(|(_, l, r)| l != r) {
        None => Verdict::HoldsThroughOrder,
        Some((n, l, r)) => Verdict::FirstMismatch {
            n: *n,
            lhs: l.clone(),
            rhs: r.clone(),
        },
    };
    ConjectureReport {
        conjecture: "pwp",
        parameters: vec![("r", r as i64)],
        order,
        verdict,
        pairs: Some(pairs),
        rational_function: None,
        symmetry: None,
    }
}

/// Reconstructs the reduced partition function as a rational function and
/// runs the q -> 1/q test. A failed reconstruction is recorded in the
/// report, not raised; the symmetry verdict is data either way.
pub fn check_conj_euler(
    fd: &FibrationData,
    order: usize,
    num_deg: usize,
    den_deg: usize,
) -> Result<ConjectureReport> {
    let plain = partition_series(fd.r, order, false)?;
    let punctual = partition_series(fd.r, order, true)?;
    Ok(check_conj_euler_from(fd, &plain, &punctual, num_deg, den_deg)?)
}

pub fn check_conj_euler_from(
    fd: &FibrationData,
    plain: &TruncatedSeries,
    punctual: &TruncatedSeries,
    num_deg: usize,
    den_deg: usize,
) -> Result<ConjectureReport> {
    let order = plain.order().min(punctual.order());
    if num_deg + den_deg > order {
        return Err(Error::InsufficientOrder {
            needed: num_deg + den_deg + 1,
            available: order + 1,
        });
    }
    let reduced = reduced_partition_function_from(fd, plain, punctual)?;
    let parameters = vec![
        ("r", fd.r as i64),
        ("genus", fd.genus as i64),
        ("chi_x", fd.chi_x),
        ("chi_s", fd.chi_s),
        ("ky_zero", fd.ky_zero as i64),
        ("num_deg", num_deg as i64),
        ("den_deg", den_deg as i64),
    ];
    match rational_reconstruct(&reduced, num_deg, den_deg) {
        Ok(f) => {
            let symmetry = check_q_inversion_symmetry(&f);
            Ok(ConjectureReport {
                conjecture: "euler",
                parameters,
                order,
                verdict: Verdict::HoldsThroughOrder,
                pairs: None,
                rational_function: Some(f),
                symmetry: Some(symmetry),
            })
        }
        Err(e @ Error::NoMatch { .. }) => Ok(ConjectureReport {
            conjecture: "euler",
            parameters,
            order,
            verdict: Verdict::ReconstructionFailed {
                reason: e.to_string(),
            },
            pairs: None,
            rational_function: None,
            symmetry: None,
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::coeff_int;
    use crate::series::TruncatedSeries as TS;

    #[test]
    fn h_series_r2_is_all_ones_from_q() {
        let h = h_series(2, 8).unwrap();
        let mut expected = vec![1i64; 9];
        expected[0] = 0;
        assert_eq!(h, TS::from_integers(&expected));
    }

    #[test]
    fn h_series_r3_is_l_q_to_the_l() {
        let h = h_series(3, 8).unwrap();
        let expected: Vec<i64> = (0..=8).collect();
        assert_eq!(h, TS::from_integers(&expected));
    }

    #[test]
    fn h_series_constant_term_vanishes() {
        for r in 2..=4 {
            assert!(h_series(r, 5).unwrap().coeff(0) == &Coeff::from_integer(0.into()));
        }
    }

    #[test]
    fn c_series_r2_equals_h_series() {
        assert_eq!(c_series(2, 10).unwrap(), h_series(2, 10).unwrap());
    }

    #[test]
    fn c_series_r3_is_h_plus_q() {
        let c = c_series(3, 10).unwrap();
        let h = h_series(3, 10).unwrap();
        let q = TS::monomial(Coeff::from_integer(1.into()), 1, 10);
        assert_eq!(c, &h + &q);
    }

    #[test]
    fn pexp_of_c_rebuilds_punctual_series() {
        for r in 2..=3 {
            let punctual = partition_series(r, 10, true).unwrap();
            assert_eq!(c_series(r, 10).unwrap().pexp().unwrap(), punctual);
        }
    }

    #[test]
    fn hilbert_series_chi_zero_is_one() {
        assert_eq!(hilbert_euler_series(3, 0, 6).unwrap(), TS::one(6));
    }

    #[test]
    fn hilbert_series_k3_surface() {
        let s = hilbert_euler_series(2, 24, 2).unwrap();
        assert_eq!(s, TS::from_integers(&[1, 24, 324]));
    }

    #[test]
    fn hilbert_series_r3_chi_two() {
        let s = hilbert_euler_series(3, 2, 2).unwrap();
        assert_eq!(s, TS::from_integers(&[1, 2, 7]));
    }

    #[test]
    fn fibration_data_validates() {
        assert!(FibrationData::new(1, 1, 0, 0, false).is_err());
        assert!(FibrationData::new(3, 0, 0, 0, true).is_err());
        assert!(FibrationData::new(3, 1, 4, 2, true).is_ok());
    }

    #[test]
    fn elliptic_fibration_collapses_to_hilbert_times_chi_s() {
        let fd = FibrationData::new(3, 1, 4, 7, false).unwrap();
        let m = moduli_euler_series(&fd, 8).unwrap();
        let h = hilbert_euler_series(3, 4, 8).unwrap();
        assert_eq!(m, h.scaled(&coeff_int(7)));
    }

    #[test]
    fn chi_s_zero_kills_the_series() {
        let fd = FibrationData::new(3, 0, 5, 0, false).unwrap();
        assert!(moduli_euler_series(&fd, 6).unwrap().is_zero());
    }

    #[test]
    fn r3_genus_zero_divides_by_square() {
        let fd = FibrationData::new(3, 0, 2, 3, false).unwrap();
        let m = moduli_euler_series(&fd, 8).unwrap();
        let h = hilbert_euler_series(3, 2, 8).unwrap();
        let expected = &h.scaled(&coeff_int(3))
            * &one_minus_q_pow(1, 8).pow(-2).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn reduced_is_constant_for_genus_one() {
        let fd = FibrationData::new(3, 1, -4, 5, false).unwrap();
        let s = reduced_partition_function(&fd, 8).unwrap();
        assert_eq!(s, TS::monomial(coeff_int(5), 0, 8));
    }

    #[test]
    fn reduced_is_constant_for_r2_any_genus() {
        let fd = FibrationData::new(2, 5, 9, 3, false).unwrap();
        let s = reduced_partition_function(&fd, 8).unwrap();
        assert_eq!(s, TS::monomial(coeff_int(3), 0, 8));
    }

    #[test]
    fn reduced_does_not_depend_on_chi_x() {
        let base: Vec<TS> = [-7, 0, 24]
            .iter()
            .map(|&chi_x| {
                let fd = FibrationData::new(3, 0, chi_x, 2, false).unwrap();
                reduced_partition_function(&fd, 10).unwrap()
            })
            .collect();
        assert_eq!(base[0], base[1]);
        assert_eq!(base[1], base[2]);
    }

    #[test]
    fn pwp_r2_holds() {
        let report = check_pwp(2, 12).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsThroughOrder);
        assert!(report.passed());
    }

    #[test]
    fn pwp_r3_holds() {
        let report = check_pwp(3, 12).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsThroughOrder);
    }

    #[test]
    fn pwp_r4_reports_data() {
        let report = check_pwp(4, 5).unwrap();
        let pairs = report.pairs.as_ref().unwrap();
        for (n, lhs, rhs) in &pairs[..3] {
            let expected = [1, 3, 9][*n];
            assert_eq!(lhs, &coeff_int(expected));
            assert_eq!(rhs, &coeff_int(expected));
        }
        // the report carries whatever enumeration yields beyond n = 2; it
        // must be internally consistent with its verdict
        match &report.verdict {
            Verdict::HoldsThroughOrder => {
                assert!(pairs.iter().all(|(_, l, r)| l == r));
            }
            Verdict::FirstMismatch { n, lhs, rhs } => {
                assert!(*n > 2);
                assert_eq!(&pairs[*n].1, lhs);
                assert_eq!(&pairs[*n].2, rhs);
            }
            Verdict::ReconstructionFailed { .. } => unreachable!(),
        }
    }

    #[test]
    fn euler_checker_elliptic_is_symmetric_constant() {
        let fd = FibrationData::new(3, 1, 0, 5, true).unwrap();
        let report = check_conj_euler(&fd, 10, 4, 4).unwrap();
        assert!(report.passed());
        let f = report.rational_function.as_ref().unwrap();
        assert_eq!(f, &RationalFunction::constant(coeff_int(5)));
    }

    #[test]
    fn euler_checker_r2_constant() {
        let fd = FibrationData::new(2, 3, 11, -4, false).unwrap();
        let report = check_conj_euler(&fd, 10, 4, 4).unwrap();
        assert!(report.passed());
        let f = report.rational_function.as_ref().unwrap();
        assert_eq!(f, &RationalFunction::constant(coeff_int(-4)));
    }

    #[test]
    fn euler_checker_r3_genus_zero_defect_two() {
        let fd = FibrationData::new(3, 0, 1, 1, false).unwrap();
        let report = check_conj_euler(&fd, 12, 5, 5).unwrap();
        assert_eq!(report.verdict, Verdict::HoldsThroughOrder);
        let sym = report.symmetry.as_ref().unwrap();
        assert!(!sym.symmetric);
        assert_eq!(sym.defect_power, Some(2));
        assert!(!report.passed());
    }

    #[test]
    fn euler_checker_degree_bounds_must_fit() {
        let fd = FibrationData::new(3, 1, 0, 1, false).unwrap();
        assert!(matches!(
            check_conj_euler(&fd, 4, 3, 3),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn report_json_schema() {
        let report = check_pwp(3, 4).unwrap();
        let v = report.to_json();
        assert_eq!(v["conjecture"], "pwp");
        assert_eq!(v["parameters"]["r"], 3);
        assert_eq!(v["order"], 4);
        assert_eq!(v["verdict"], "holds-through-order");
        assert!(v["pairs"].is_array());
        assert!(v.get("first_mismatch").is_none());

        let fd = FibrationData::new(3, 0, 1, 2, false).unwrap();
        let report = check_conj_euler(&fd, 10, 4, 4).unwrap();
        let v = report.to_json();
        assert_eq!(v["conjecture"], "euler");
        assert_eq!(v["symmetry"]["symmetric"], false);
        assert_eq!(v["symmetry"]["defect_power"], 2);
        assert!(v["rational_function"]["denominator"].is_array());
    }
}
