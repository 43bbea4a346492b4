use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest accepted `m`. Together with [`MAX_DELTA_PART`] this keeps scaled
/// attachment weights inside `u64` for graphs beyond `2^30` vertices.
pub const MAX_M: usize = 1 << 10;
/// Largest accepted numerator or denominator of `delta`.
pub const MAX_DELTA_PART: u64 = 1 << 20;

/// Parameters of the preferential attachment model: `m` edges per new vertex,
/// attachment offset `delta = p/q > 0`, and the stream seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    m: usize,
    delta: Ratio<u64>,
    seed: u64,
}

impl ModelParams {
    pub fn new(m: usize, delta: Ratio<u64>, seed: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!(
                "m must be at least 2, got {m}"
            )));
        }
        if m > MAX_M {
            return Err(Error::InvalidParams(format!(
                "m must be at most {MAX_M}, got {m}"
            )));
        }
        if *delta.numer() == 0 {
            return Err(Error::InvalidParams("delta must be positive".into()));
        }
        if *delta.numer() > MAX_DELTA_PART || *delta.denom() > MAX_DELTA_PART {
            return Err(Error::InvalidParams(format!(
                "delta numerator and denominator must be at most {MAX_DELTA_PART}"
            )));
        }
        Ok(Self { m, delta, seed })
    }

    /// Shorthand for integer-valued or simple fractional `delta`.
    pub fn with_delta(m: usize, numer: u64, denom: u64, seed: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParams("delta denominator is zero".into()));
        }
        Self::new(m, Ratio::new(numer, denom), seed)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> Ratio<u64> {
        self.delta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    /// Degree tail exponent `tau = 3 + delta/m`.
    pub fn tau(&self) -> BigRational {
        BigRational::from_integer(3.into()) + self.delta_big() / BigInt::from(self.m)
    }

    /// Max-degree growth exponent `chi = 1/(tau - 1) = m q / (2 m q + p)`.
    pub fn chi(&self) -> BigRational {
        let m = BigInt::from(self.m);
        let p = BigInt::from(*self.delta.numer());
        let q = BigInt::from(*self.delta.denom());
        BigRational::new(&m * &q, BigInt::from(2) * &m * &q + p)
    }

    pub fn tau_f64(&self) -> f64 {
        self.tau().to_f64().unwrap_or(f64::NAN)
    }

    pub fn chi_f64(&self) -> f64 {
        self.chi().to_f64().unwrap_or(f64::NAN)
    }

    fn delta_big(&self) -> BigRational {
        BigRational::new((*self.delta.numer()).into(), (*self.delta.denom()).into())
    }
}

/// Parses `p/q` or a bare integer `p` into a reduced ratio.
pub fn parse_delta(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::InvalidParams(format!("cannot parse delta `{s}`"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p = u64::from_str(p).map_err(|_| bad())?;
    let q = u64::from_str(q).map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

/// Formats a ratio as `p/q`, always with an explicit denominator.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serializes an exact rational as the string `p/q`.
pub(crate) fn serialize_big_ratio<S: Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&RatioDisplay(r))
}

pub(crate) fn serialize_big_ratios<S: Serializer>(
    rs: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| RatioDisplay(r).to_string()))
}

pub(crate) struct RatioDisplay<'a>(pub &'a BigRational);

impl fmt::Display for RatioDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ModelParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModelParams", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("delta", &format_ratio(&self.delta))?;
        st.serialize_field("seed", &self.seed)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents_are_exact() {
        let p = ModelParams::with_delta(2, 1, 1, 0).unwrap();
        assert_eq!(p.tau(), BigRational::new(7.into(), 2.into()));
        assert_eq!(p.chi(), BigRational::new(2.into(), 5.into()));
        let p = ModelParams::with_delta(3, 3, 2, 0).unwrap();
        assert_eq!(p.tau(), BigRational::new(7.into(), 2.into()));
        assert_eq!(
            p.chi(),
            BigRational::from_integer(1.into()) / (p.tau() - BigRational::from_integer(1.into()))
        );
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ModelParams::with_delta(1, 1, 1, 0).is_err());
        assert!(ModelParams::with_delta(2, 0, 1, 0).is_err());
        assert!(ModelParams::with_delta(2, 1, 0, 0).is_err());
        assert!(ModelParams::with_delta(2, MAX_DELTA_PART + 1, 1, 0).is_err());
    }

    #[test]
    fn delta_parsing() {
        assert_eq!(parse_delta("3/6").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_delta("4").unwrap(), Ratio::from_integer(4));
        assert!(parse_delta("1/0").is_err());
        assert!(parse_delta("x").is_err());
        assert_eq!(format_ratio(&Ratio::from_integer(4)), "4/1");
    }
}
