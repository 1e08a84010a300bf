//! Serde helpers keeping every rational exact on the wire: rationals are
//! decimal strings `"a/b"`, integers are decimal strings, never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|e| Error::Argument(format!("bad rational '{s}': {e}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|e| Error::Argument(format!("bad rational '{s}': {e}")))?;
    if den == BigInt::from(0) {
        return Err(Error::Argument(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

/// `#[serde(with = "crate::ser::rational_string")]`
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &BigRational,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(deserializer)?;
        rational_from_str(&s).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// `#[serde(with = "crate::ser::bigint_string")]`
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        x: &BigInt,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("bad integer '{s}': {e}")))
    }
}

/// `#[serde(with = "crate::ser::bigint_vec_string")]`
pub mod bigint_vec_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        xs: &[BigInt],
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        serde::Serialize::serialize(&strings, serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        strings
            .iter()
            .map(|s| s.parse().map_err(|e| D::Error::custom(format!("bad integer '{s}': {e}"))))
            .collect()
    }
}
