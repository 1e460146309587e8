//! Rational functions of q with exact coefficients: Pade reconstruction
//! from a truncated series and the q -> 1/q inversion test.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{render_coeff, Coeff};
use crate::series::TruncatedSeries;

/// Dense polynomial in q; no trailing zero coefficients, the zero polynomial
/// stores nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Coeff>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Coeff::from_integer(BigInt::from(v))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Coeff {
        self.coeffs.get(n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Least exponent with a nonzero coefficient; None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops q^s (requires valuation >= s).
    fn shifted_down(&self, s: usize) -> Self {
        debug_assert!(self.valuation().map_or(true, |v| v >= s));
        Self::new(self.coeffs.iter().skip(s).cloned().collect())
    }

    /// Coefficient list reversed with respect to the exact degree:
    /// rev(p)(q) = q^deg(p) · p(1/q). Zero maps to zero.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Taylor expansion as a truncated series (polynomials are their own
    /// expansion; coefficients beyond the degree are zero).
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Coeff::zero(); order + 1];
        for (n, c) in self.coeffs.iter().enumerate().take(order + 1) {
            coeffs[n] = c.clone();
        }
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Euclidean division: (quotient, remainder).
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let ddeg = divisor.degree().unwrap();
        let lead = divisor.coeffs[ddeg].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Coeff::zero(); rem.len() - ddeg];
        for n in (ddeg..rem.len()).rev() {
            if rem[n].is_zero() {
                continue;
            }
            let f = &rem[n] / &lead;
            quot[n - ddeg] = f.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let v = &rem[n - ddeg + j] - &(d * &f);
                rem[n - ddeg + j] = v;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs.last().unwrap().clone();
        a.scaled(&(Coeff::one() / lead))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Coeff::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// A reduced rational function p/d. After construction gcd(p, d) = 1 and the
/// denominator is normalized to constant term 1 when possible, else to
/// leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument(
                "rational function with zero denominator".into(),
            ));
        }
        if num.is_zero() {
            return Ok(Self {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, r1) = num.div_rem(&g);
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r1.is_zero() && r2.is_zero());
        let c0 = den.coeff(0);
        let norm = if !c0.is_zero() {
            c0
        } else {
            den.coeffs().last().unwrap().clone()
        };
        let inv = Coeff::one() / norm;
        Ok(Self {
            num: num.scaled(&inv),
            den: den.scaled(&inv),
        })
    }

    pub fn constant(c: Coeff) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Taylor expansion through `order`; the denominator must not vanish at
    /// q = 0.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let den = self.den.to_series(order).inv()?;
        Ok(&self.num.to_series(order) * &den)
    }

    /// Two coefficient arrays, numerator then denominator.
    pub fn to_json(&self) -> Value {
        json!({
            "numerator": self.num.coeffs().iter().map(render_coeff).collect::<Vec<_>>(),
            "denominator": self.den.coeffs().iter().map(render_coeff).collect::<Vec<_>>(),
        })
    }
}

/// Finds p/d with deg p <= max_num_deg, deg d <= max_den_deg whose expansion
/// matches every stored coefficient of `a`, by exact linear algebra on the
/// Pade system. All solutions of the system describe the same reduced
/// fraction, so the reduced output is the minimal-degree match.
pub fn rational_reconstruct(
    a: &TruncatedSeries,
    max_num_deg: usize,
    max_den_deg: usize,
) -> Result<RationalFunction> {
    let order = a.order();
    if max_num_deg + max_den_deg > order {
        return Err(Error::InsufficientOrder {
            needed: max_num_deg + max_den_deg + 1,
            available: order + 1,
        });
    }
    // Unknown denominator d_0..d_K; rows demand (d·a)_n = 0 for n > M.
    let rows: Vec<Vec<Coeff>> = (max_num_deg + 1..=order)
        .map(|n| {
            (0..=max_den_deg)
                .map(|j| {
                    if j <= n {
                        a.coeff(n - j).clone()
                    } else {
                        Coeff::zero()
                    }
                })
                .collect()
        })
        .collect();
    let den_coeffs = match null_vector(rows, max_den_deg + 1) {
        Some(v) => v,
        None => {
            return Err(Error::NoMatch {
                num_deg: max_num_deg,
                den_deg: max_den_deg,
            })
        }
    };
    let den = Polynomial::new(den_coeffs);
    // p := d·a truncated to the numerator bound; the system zeroed the rest.
    let num_series = &den.to_series(order) * a;
    let num = Polynomial::new(
        num_series.coeffs()[..=max_num_deg.min(order)].to_vec(),
    );
    let f = RationalFunction::new(num, den)?;
    if f.den.coeff(0).is_zero() {
        // reduced denominator vanishing at 0 cannot match a power series
        return Err(Error::NoMatch {
            num_deg: max_num_deg,
            den_deg: max_den_deg,
        });
    }
    let check = f.expand(order)?;
    if check != *a {
        return Err(Error::NoMatch {
            num_deg: max_num_deg,
            den_deg: max_den_deg,
        });
    }
    Ok(f)
}

/// A nonzero kernel vector of the row system, or None when the columns are
/// independent. Fraction-free elimination over the integers (rows are
/// cleared of denominators first), deterministic pivot choice, unit value
/// for the first free column.
fn null_vector(rows: Vec<Vec<Coeff>>, cols: usize) -> Option<Vec<Coeff>> {
    // Clear each row to integers.
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|c| c.denom().clone())
                .fold(BigInt::one(), |acc, d| num_integer::lcm(acc, d));
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect();
    // Bareiss fraction-free forward elimination.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        // deterministic pivot: first row with a nonzero entry in this column
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in row + 1..m.len() {
            for c in 0..cols {
                if c == col {
                    continue;
                }
                let v = (&m[row][col] * &m[i][c] - &m[i][col] * &m[row][c]) / &prev_pivot;
                m[i][c] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev_pivot = m[row][col].clone();
        pivot_cols.push(col);
        pivot_rows.push(row);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c))?;
    // Back-substitute in rationals: free column gets 1, later columns 0.
    let mut sol = vec![Coeff::zero(); cols];
    sol[free_col] = Coeff::one();
    for (k, &col) in pivot_cols.iter().enumerate().rev() {
        if col > free_col {
            continue;
        }
        let r = pivot_rows[k];
        let mut acc = Coeff::zero();
        for c in col + 1..cols {
            if !sol[c].is_zero() && !m[r][c].is_zero() {
                acc += Coeff::from_integer(m[r][c].clone()) * &sol[c];
            }
        }
        sol[col] = -acc / Coeff::from_integer(m[r][col].clone());
    }
    Some(sol)
}

/// Outcome of the q -> 1/q test: `defect_power` is the integer k with
/// f(1/q) = q^k·f(q) when such a monomial relation exists; the function is
/// symmetric exactly when k = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub defect_power: Option<i64>,
}

/// Decides exactly, by cross-multiplication of coefficient-reversed
/// polynomials, whether f(1/q) = f(q), and finds the monomial defect q^k
/// when f(1/q) = q^k·f(q).
pub fn check_q_inversion_symmetry(f: &RationalFunction) -> SymmetryReport {
    if f.is_zero() {
        return SymmetryReport {
            symmetric: true,
            defect_power: Some(0),
        };
    }
    let p = f.numerator();
    let d = f.denominator();
    // f(1/q) = q^(deg d - deg p) · rev(p)/rev(d); compare with q^k·p/d by
    // cross-multiplication.
    let delta = d.degree().unwrap() as i64 - p.degree().unwrap() as i64;
    let u = &p.reversed() * d;
    let v = p * &d.reversed();
    let (vu, vv) = (u.valuation().unwrap(), v.valuation().unwrap());
    if u.shifted_down(vu) == v.shifted_down(vv) {
        let k = delta + vu as i64 - vv as i64;
        SymmetryReport {
            symmetric: k == 0,
            defect_power: Some(k),
        }
    } else {
        SymmetryReport {
            symmetric: false,
            defect_power: None,
        }
    }
}
