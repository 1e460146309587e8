//! The coefficient domain: arbitrary-precision rationals, always in lowest
//! terms with a positive denominator, rendered as `p` or `p/q` and never as a
//! decimal.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coeff = num_rational::BigRational;

pub fn coeff_int(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

pub fn coeff_uint(v: &BigUint) -> Coeff {
    Coeff::from_integer(BigInt::from(v.clone()))
}

/// Renders `p` when the denominator is one, `p/q` otherwise.
pub fn render_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses the `p` / `p/q` format produced by [`render_coeff`].
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    s.parse::<Coeff>()
        .map_err(|e| Error::InvalidArgument(format!("bad rational '{s}': {e}")))
}
