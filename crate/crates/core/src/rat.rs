//! Exact rational scalars.
//!
//! All coefficients in the library are arbitrary-precision rationals kept in
//! lowest terms with a positive denominator; `num_rational::BigRational`
//! maintains exactly that normal form. Zero testing is exact everywhere:
//! there are no tolerances anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// 1/k! as an exact rational.
pub fn inv_factorial(k: usize) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Rat::new(BigInt::one(), f)
}

/// Canonical `p/q` form, denominator always spelled out (`3` prints as `3/1`).
pub fn rat_pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short human form: integer when the denominator is 1, `p/q` otherwise.
pub fn rat_short(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or plain `p`. Returns `None` for malformed input or `q == 0`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn is_negative(r: &Rat) -> bool {
    r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(inv_factorial(0), rat_i(1));
        assert_eq!(inv_factorial(3), ratio(1, 6));
        assert_eq!(inv_factorial(5), ratio(1, 120));
    }

    #[test]
    fn pq_round_trip() {
        let r = ratio(-7, 3);
        assert_eq!(rat_pq(&r), "-7/3");
        assert_eq!(parse_rat("-7/3"), Some(r));
        assert_eq!(parse_rat("4"), Some(rat_i(4)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
