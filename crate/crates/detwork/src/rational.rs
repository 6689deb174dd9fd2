//! Exact rational energies.
//!
//! Every energy in the crate is a `BigRational` in lowest terms with a
//! positive denominator (guaranteed by `num-rational`). Decimal strings
//! parse exactly ("0.1" becomes 1/10), so no value is ever rounded on the
//! way in.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact energy value (arbitrary precision rational, lowest terms).
pub type EnergyRational = BigRational;

/// Parse an exact rational from `"p/q"`, an integer, or a decimal string.
pub fn parse_rational(text: &str) -> Result<EnergyRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    // decimal or integer literal, optional exponent (JSON numbers)
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        },
        frac_part
    );
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::new(n, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(n * ten.pow((-scale) as u32))
    })
}

/// gcd of two non-negative rationals: the largest rational dividing both
/// to an integer. gcd(x, 0) = x.
pub fn rational_gcd(a: &EnergyRational, b: &EnergyRational) -> EnergyRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom())
}

/// `"p/q"` for non-integers, bare `"p"` otherwise.
pub fn rational_string(q: &EnergyRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal expansion of an exact rational to `sig` significant digits
/// (round half away from zero). Deterministic; used for CSV emission.
pub fn decimal_string(q: &EnergyRational, sig: usize) -> String {
    assert!(sig > 0);
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let num = q.numer().abs().to_biguint().expect("abs");
    let den = q.denom().to_biguint().expect("positive denominator");

    // decimal exponent e such that 10^(e-1) <= |q| < 10^e
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64 + 1;
    let ten = BigUint::from(10u32);
    let pow = |k: i64| -> (BigUint, BigUint) {
        // returns multipliers (for num, for den) representing 10^k
        if k >= 0 {
            (ten.pow(k as u32), BigUint::one())
        } else {
            (BigUint::one(), ten.pow((-k) as u32))
        }
    };
    let lt = |k: i64| {
        let (pn, pd) = pow(k);
        num.clone() * pd < den.clone() * pn
    };
    while lt(e - 1) {
        e -= 1;
    }
    while !lt(e) {
        e += 1;
    }

    // digits = round(|q| * 10^(sig - e))
    let k = sig as i64 - e;
    let (pn, pd) = pow(k);
    let scaled_num = num * pn * 2u32 + den.clone() * pd.clone();
    let scaled_den = den * pd * 2u32;
    let mut digits = (scaled_num / scaled_den).to_string();
    if digits.len() > sig {
        // rounding bumped 999.. to 1000..: shift the exponent
        e += 1;
        digits.truncate(sig);
    }

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e <= 0 {
        out.push_str("0.");
        for _ in e..0 {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
        if out.ends_with('.') {
            out.push('0');
        }
    } else if (e as usize) >= digits.len() {
        out.push_str(&digits);
        for _ in digits.len()..e as usize {
            out.push('0');
        }
    } else {
        out.push_str(&digits[..e as usize]);
        let frac = digits[e as usize..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

/// Nearest f64 (for bound evaluation and plotting columns).
pub fn to_f64(q: &EnergyRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division for huge terms
        let scale = BigInt::from(1u64 << 53);
        let scaled = (q * BigRational::from_integer(scale.clone()))
            .to_integer()
            .to_f64()
            .unwrap_or(f64::NAN);
        scaled / (1u64 << 53) as f64
    })
}
