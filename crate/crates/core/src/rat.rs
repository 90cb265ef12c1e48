//! Exact rational scalars. Everything in this crate that looks like a real
//! number is a `Rat`; there is no floating point on any value-carrying path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

/// `rat(p, q)` = p/q in lowest terms. Panics if `q == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rzero() -> Rat {
    BigRational::zero()
}

pub fn rone() -> Rat {
    BigRational::one()
}

pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= rone()
}

use num_traits::Signed;

/// Canonical `p/q` rendering, always with an explicit denominator so the
/// text formats round-trip byte for byte.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator `{s}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational denominator `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/2", "0/1", "7/3", "-2/5", "12/8"] {
            let r = parse_rat(s).unwrap();
            let t = fmt_rat(&r);
            assert_eq!(parse_rat(&t).unwrap(), r);
            // canonical output is already in lowest terms
            assert_eq!(fmt_rat(&parse_rat(&t).unwrap()), t);
        }
        assert_eq!(parse_rat("3").unwrap(), rat(3, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn unit_interval() {
        assert!(in_unit_interval(&rat(1, 2)));
        assert!(in_unit_interval(&rzero()));
        assert!(in_unit_interval(&rone()));
        assert!(!in_unit_interval(&rat(3, 2)));
        assert!(!in_unit_interval(&rat(-1, 2)));
    }
}
