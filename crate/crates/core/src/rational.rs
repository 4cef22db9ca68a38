//! Small helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    s.parse::<Rat>()
        .map_err(|_| Error::Parse(format!("invalid rational '{s}'")))
}

/// Renders a rational as "p/q", or "p" when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Either component may individually overflow f64; fall back on the
        // sign of the exact value.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else if r.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    })
}

/// Rising factorial (z)_m with integer m >= 0, exact.
pub fn pochhammer(z: &Rat, m: i64) -> Rat {
    let mut acc = Rat::one();
    let mut f = z.clone();
    for _ in 0..m {
        acc *= &f;
        f += Rat::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "1/3", "-7/2", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert!(parse_rat("x/y").is_err());
        assert_eq!(parse_rat(" 2/4 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn pochhammer_small_values() {
        assert_eq!(pochhammer(&rat(2), 3), rat(24)); // 2*3*4
        assert_eq!(pochhammer(&rat(5), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4)); // 1/2 * 3/2
    }
}
