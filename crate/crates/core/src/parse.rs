//! String forms accepted on the command line and in config: exact bounds
//! (`7000`, `1e25`, `2.7e10`, `7000/27`) and j-invariants (`-3375`,
//! `6908/27`, `cm:-163`, `cm:-3:2`).

use num_bigint::BigInt;
use num_traits::{pow, Zero};

use crate::arith::Rational;
use crate::cm::CmOrder;
use crate::error::{Error, Result};

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Parses an exact rational from `p/q`, a plain or decimal integer, or
/// scientific notation. `2.7e10` becomes exactly `27000000000`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let d = parse_int(d.trim())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(parse_int(n.trim())?, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(parse_int(&all_digits)?);
    let shift = exponent - frac.len() as i64;
    let ten = BigInt::from(10u8);
    if shift >= 0 {
        value *= Rational::from_integer(pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(pow(ten, (-shift) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Parses a j-invariant, including the `cm:<d_K>[:f]` alias for the
/// thirteen CM values.
pub fn parse_j(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("cm:") {
        let mut parts = rest.split(':');
        let d_k: i64 = parts
            .next()
            .and_then(|p| p.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad CM alias {s:?}")))?;
        let f: u32 = match parts.next() {
            Some(p) => p.trim().parse().map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?,
            None => 1,
        };
        if parts.next().is_some() {
            return Err(Error::Parse(format!("bad CM alias {s:?}")));
        }
        return Ok(Rational::from_integer(CmOrder::lookup(d_k, f)?.j.clone()));
    }
    parse_rational(s)
}

/// `num/den` form used in JSON and CSV output.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn bounds() {
        assert_eq!(parse_rational("7000").unwrap(), int(7000));
        assert_eq!(parse_rational("1e3").unwrap(), int(1000));
        assert_eq!(parse_rational("2.7e10").unwrap(), int(27_000_000_000i64));
        assert_eq!(parse_rational("7000/27").unwrap(), rat(7000, 27));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), rat(-1, 8));
        let big = parse_rational("1e30").unwrap();
        assert_eq!(big.to_integer().to_string(), format!("1{}", "0".repeat(30)));
        for bad in ["", "abc", "1/0", "1e", "1.2.3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn j_aliases() {
        assert_eq!(parse_j("cm:-163").unwrap(), int(-262537412640768000i64));
        assert_eq!(parse_j("cm:-3:2").unwrap(), int(54000));
        assert_eq!(parse_j("-3375").unwrap(), int(-3375));
        assert!(parse_j("cm:-5").is_err());
        assert!(parse_j("cm:-3:4").is_err());
    }
}
