//! Exact rational helpers for fractional parts and floors.
//!
//! Everything that feeds a `(-p)`-exponent or a `Gamma_p` argument goes
//! through here, so no floating point ever reaches the p-adic path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Greatest integer `<= x`.
pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn floor_i64(x: &BigRational) -> i64 {
    floor(x).to_i64().expect("floor does not fit in i64")
}

/// Fractional part in `[0, 1)`.
pub fn fract(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(floor(x))
}

/// Parse `"3/4"`, `"-1/2"` or `"2"`.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let err = || Error::Parse {
        what: "fraction",
        input: s.to_string(),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Parse a comma separated list such as `"1/4,3/4"`.
pub fn parse_fraction_list(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_fraction).collect()
}

/// `x mod p^prec` for `x` with denominator prime to `p`.
pub fn residue_mod(x: &BigRational, p: u64, modulus: u64) -> Result<u64> {
    let den = x.denom();
    if (den % BigInt::from(p)).is_zero() {
        return Err(Error::DenominatorDivisibleByP {
            value: x.to_string(),
            p,
        });
    }
    let m = BigInt::from(modulus);
    let num = x.numer().mod_floor(&m);
    let den = den.mod_floor(&m);
    let egcd = den.extended_gcd(&m);
    debug_assert!(egcd.gcd.is_one());
    let inv = egcd.x.mod_floor(&m);
    let r = (num * inv).mod_floor(&m);
    Ok(r.to_u64().expect("residue fits in u64"))
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fract_and_floor_of_negatives() {
        let x = ratio(-1, 4);
        assert_eq!(floor_i64(&x), -1);
        assert_eq!(fract(&x), ratio(3, 4));
        assert_eq!(fract(&ratio(9, 4)), ratio(1, 4));
        assert_eq!(fract(&int(3)), int(0));
    }

    #[test]
    fn parses_lists() {
        let v = parse_fraction_list("1/4, 3/4,0").unwrap();
        assert_eq!(v, vec![ratio(1, 4), ratio(3, 4), int(0)]);
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("a/2").is_err());
    }

    #[test]
    fn residues() {
        // 1/2 mod 25 = 13
        assert_eq!(residue_mod(&ratio(1, 2), 5, 25).unwrap(), 13);
        assert_eq!(residue_mod(&ratio(-1, 1), 5, 25).unwrap(), 24);
        assert!(residue_mod(&ratio(1, 10), 5, 25).is_err());
    }
}
