//! JSON files for instances and solutions.
//!
//! Rationals are written as decimal strings when the denominator has only
//! the prime factors 2 and 5, and as `p/q` otherwise; both forms are read.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{to_f64, GraphClass, Instance, InstanceError, Point, RadiusAssignment, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot parse `{0}` as a rational")]
    BadRational(String),
    #[error("cannot parse `{0}` as a radius")]
    BadRadius(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("unknown class: {0}")]
    Class(String),
    #[error("solution has {got} radii, instance has {expected} points")]
    Length { got: usize, expected: usize },
    #[error("`scaled` lists {listed:?} but the radii differ from 1 at {actual:?}")]
    ScaledMismatch { listed: Vec<usize>, actual: Vec<usize> },
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

/// Canonical text of an exact rational.
pub fn format_rational(r: &Rational) -> String {
    let den = r.denom();
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den.clone());
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if rest != BigInt::from(1) {
        return format!("{}/{}", r.numer(), den);
    }
    let digits = twos.max(fives);
    let scaled = r.numer() * BigInt::from(10).pow(digits) / den;
    if digits == 0 {
        return scaled.to_string();
    }
    let sign = if scaled.is_negative() { "-" } else { "" };
    let body = format!("{:0>width$}", scaled.abs().to_string(), width = digits as usize + 1);
    let (int_part, frac) = body.split_at(body.len() - digits as usize);
    format!("{sign}{int_part}.{frac}")
}

/// Parses `-12`, `3.25`, `.5` or `7/3`.
pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || IoError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac.is_empty() || !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mantissa: BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
    let value = Rational::new(mantissa, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

/// Serde adapter writing a [`Rational`] in canonical text form.
pub mod rational_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational};
    use crate::geom::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub points: Vec<[String; 2]>,
    pub r_min: String,
    pub r_max: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance, class: Option<GraphClass>, provenance: Option<serde_json::Value>) -> Self {
        Self {
            points: inst.points().iter().map(|p| [format_rational(&p.x), format_rational(&p.y)]).collect(),
            r_min: format_rational(inst.r_min()),
            r_max: format_rational(inst.r_max()),
            k: inst.k(),
            class: class.map(|c| c.name().to_string()),
            provenance,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, IoError> {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, [x, y])| Ok(Point::new(i, parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Instance::new(points, parse_rational(&self.r_min)?, parse_rational(&self.r_max)?, self.k)?)
    }

    pub fn class(&self) -> Result<Option<GraphClass>, IoError> {
        self.class.as_deref().map(|c| c.parse().map_err(IoError::Class)).transpose()
    }

    /// Rewrites every number in canonical form.
    pub fn canonical(&self) -> Result<Self, IoError> {
        let class = self.class()?;
        Ok(Self::from_instance(&self.to_instance()?, class, self.provenance.clone()))
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance file serializes") + "\n"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub radii: Vec<String>,
    pub scaled: Vec<usize>,
}

impl SolutionFile {
    pub fn from_assignment(r: &RadiusAssignment) -> Self {
        Self { radii: r.radii().iter().map(|x| x.to_string()).collect(), scaled: r.scaled() }
    }

    /// Parses the radii and checks `scaled` and, if given, the length.
    pub fn to_assignment(&self, expected_len: Option<usize>) -> Result<RadiusAssignment, IoError> {
        if let Some(expected) = expected_len.filter(|&e| e != self.radii.len()) {
            return Err(IoError::Length { got: self.radii.len(), expected });
        }
        let radii = self
            .radii
            .iter()
            .map(|s| {
                let v = to_f64(&parse_rational(s).map_err(|_| IoError::BadRadius(s.clone()))?);
                if v.is_finite() && v > 0.0 {
                    Ok(v)
                } else {
                    Err(IoError::BadRadius(s.clone()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let r = RadiusAssignment::new(radii).map_err(|e| IoError::BadRadius(e.to_string()))?;
        let mut listed = self.scaled.clone();
        listed.sort_unstable();
        if listed != r.scaled() {
            return Err(IoError::ScaledMismatch { listed: self.scaled.clone(), actual: r.scaled() });
        }
        Ok(r)
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution file serializes") + "\n"
    }
}

pub fn read_to_string(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write_string(path: &std::path::Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    #[test]
    fn rational_text() {
        for (r, s) in [
            (rat(5, 2), "2.5"),
            (rat(-1, 8), "-0.125"),
            (int(12), "12"),
            (rat(1, 3), "1/3"),
            (rat(-7, 6), "-7/6"),
            (rat(3, 100), "0.03"),
            (int(0), "0"),
        ] {
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(s).unwrap(), r);
        }
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.50").unwrap(), rat(5, 2));
        for bad in ["", "-", ".", "1/0", "1e3", "abc", "1.2.3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn instance_round_trip() {
        let inst = Instance::from_coords([(int(0), int(0)), (rat(3, 2), rat(1, 3))], rat(1, 2), int(1), 1).unwrap();
        let file = InstanceFile::from_instance(&inst, Some(GraphClass::Cluster), None);
        let back = InstanceFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_instance().unwrap(), inst);
        assert_eq!(back.class().unwrap(), Some(GraphClass::Cluster));
    }

    #[test]
    fn solution_checks() {
        let r = RadiusAssignment::new(vec![1.0, 0.5, 2.25]).unwrap();
        let file = SolutionFile::from_assignment(&r);
        assert_eq!(file.radii, ["1", "0.5", "2.25"]);
        assert_eq!(file.to_assignment(Some(3)).unwrap(), r);
        assert!(file.to_assignment(Some(4)).is_err());
        let lying = SolutionFile { scaled: vec![1], ..file };
        assert!(matches!(lying.to_assignment(None), Err(IoError::ScaledMismatch { .. })));
    }
}
