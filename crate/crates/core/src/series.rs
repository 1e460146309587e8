//! Truncated formal power series in q over exact rationals.
//!
//! A series owns its coefficients densely through an explicit truncation
//! order N (coefficients of q^0..q^N). The order is carried by the value and
//! never silently promoted: binary operations truncate to the minimum order
//! of their operands. All arithmetic is exact.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{coeff_int, parse_coeff, render_coeff, Coeff};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Coeff>, // length = order + 1
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Coeff::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Coeff::one(), 0, order)
    }

    /// c·q^k; the monomial vanishes if k exceeds the truncation order.
    pub fn monomial(c: Coeff, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Takes ownership of a dense coefficient vector; the order is len - 1.
    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least q^0");
        Self { coeffs }
    }

    /// Dense integer constructor, order = values.len() - 1. Test/CLI helper.
    pub fn from_integers(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| coeff_int(v)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^n. Panics if n exceeds the truncation order, which is
    /// always an indexing bug on the caller's side.
    pub fn coeff(&self, n: usize) -> &Coeff {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    /// Copy truncated to min(order, self.order()).
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Coefficientwise equality through the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse through the truncation order.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let inv0 = Coeff::one() / &self.coeffs[0];
        let mut out = vec![Coeff::zero(); order + 1];
        out[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = Coeff::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -(acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Integer power; e = 0 gives 1, negative e inverts first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let order = self.order();
        if e == 0 {
            return Ok(Self::one(order));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut result = Self::one(order);
        let mut power = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &power;
            }
            exp >>= 1;
            if exp > 0 {
                power = &power * &power;
            }
        }
        Ok(result)
    }

    /// q -> q^k substitution; the truncation order is preserved.
    pub fn substitute_power(&self, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument(
                "substitution exponent must be >= 1".into(),
            ));
        }
        let order = self.order();
        let mut out = Self::zero(order);
        let mut m = 0usize;
        while m * k <= order {
            out.coeffs[m * k] = self.coeffs[m].clone();
            m += 1;
        }
        Ok(out)
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidConstantTerm {
                expected: "0",
                found: render_coeff(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut out = vec![Coeff::zero(); order + 1];
        out[0] = Coeff::one();
        // n·g_n = sum_{k=1..n} k·f_k·g_{n-k}
        for n in 1..=order {
            let mut acc = Coeff::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k] * coeff_int(k as i64);
                }
            }
            out[n] = acc / coeff_int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidConstantTerm {
                expected: "1",
                found: render_coeff(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut out = vec![Coeff::zero(); order + 1];
        // h_n = f_n - (1/n)·sum_{k=1..n-1} k·h_k·f_{n-k}
        for n in 1..=order {
            let mut acc = Coeff::zero();
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() {
                    acc += &out[k] * &self.coeffs[n - k] * coeff_int(k as i64);
                }
            }
            out[n] = &self.coeffs[n] - acc / coeff_int(n as i64);
        }
        Ok(Self { coeffs: out })
    }

    /// Plethystic exponential exp(sum_{n>=1} f(q^n)/n); requires constant term 0.
    pub fn pexp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidConstantTerm {
                expected: "0",
                found: render_coeff(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let mut total = Self::zero(order);
        // f(q^n) only contributes from degree n on, so n stops at the order.
        for n in 1..=order {
            let term = self.substitute_power(n)?;
            total = &total + &term.scaled(&(Coeff::one() / coeff_int(n as i64)));
        }
        total.exp()
    }

    /// Plethystic logarithm, the inverse of [`pexp`](Self::pexp); requires
    /// constant term 1. Computed as sum_n mu(n)/n · (log g)(q^n).
    pub fn plog(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidConstantTerm {
                expected: "1",
                found: render_coeff(&self.coeffs[0]),
            });
        }
        let order = self.order();
        let l = self.log()?;
        let mut total = Self::zero(order);
        for n in 1..=order {
            let mu = mobius(n as u64);
            if mu == 0 {
                continue;
            }
            let term = l.substitute_power(n)?;
            total = &total + &term.scaled(&(coeff_int(mu) / coeff_int(n as i64)));
        }
        Ok(total)
    }

    /// {"order": N, "coefficients": ["p", "p/q", ...]}
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coefficients": self.coeffs.iter().map(render_coeff).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v["order"]
            .as_u64()
            .ok_or_else(|| Error::InvalidArgument("series JSON: missing order".into()))?
            as usize;
        let arr = v["coefficients"]
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("series JSON: missing coefficients".into()))?;
        if arr.len() != order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series JSON: expected {} coefficients, found {}",
                order + 1,
                arr.len()
            )));
        }
        let coeffs = arr
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| {
                        Error::InvalidArgument("series JSON: coefficients must be strings".into())
                    })
                    .and_then(parse_coeff)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

impl std::ops::Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl std::ops::Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl std::ops::Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Coeff::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

/// Moebius function by trial division; n is tiny (bounded by series orders).
fn mobius(mut n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// 1 - q^k at the given order.
pub fn one_minus_q_pow(k: usize, order: usize) -> TruncatedSeries {
    &TruncatedSeries::one(order) - &TruncatedSeries::monomial(Coeff::one(), k, order)
}
