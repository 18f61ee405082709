//! Orbit arithmetic x ~ |x + m| and the equivariant Picard groups.

use std::fmt;

use crate::error::{Error, Result};

/// A finite sphere parameter x, or the standard sphere (x = ∞).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SphereParam {
    Finite(f64),
    Standard,
}

impl SphereParam {
    /// Accepts a number or one of "standard", "inf", "infinity".
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "inf" | "infinity" => Ok(Self::Standard),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Self::Finite)
                .ok_or_else(|| Error::InvalidParameter(format!("sphere parameter must be a finite number or 'standard', got {s:?}"))),
        }
    }
}

impl fmt::Display for SphereParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::Standard => f.write_str("standard"),
        }
    }
}

const ORBIT_TOL: f64 = 1e-12;
const INTEGER_TOL: f64 = 1e-9;

/// Whether |x + m| = |y| for some integer m, with the witness of smallest |m| (negative first).
pub fn orbit_equivalent(a: SphereParam, b: SphereParam) -> (bool, Option<i64>) {
    match (a, b) {
        (SphereParam::Standard, SphereParam::Standard) => (true, None),
        (SphereParam::Finite(x), SphereParam::Finite(y)) => {
            let bound = (x.abs() + y.abs()).ceil() as i64 + 1;
            for mag in 0..=bound {
                for m in [-mag, mag] {
                    if ((x + m as f64).abs() - y.abs()).abs() <= ORBIT_TOL {
                        return (true, Some(m));
                    }
                    if mag == 0 {
                        break;
                    }
                }
            }
            (false, None)
        }
        _ => (false, None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PicardGroup {
    Z,
    Z2,
    Trivial,
}

impl fmt::Display for PicardGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Z => "Z",
            Self::Z2 => "Z2",
            Self::Trivial => "trivial",
        })
    }
}

/// Classification of the input parameter: standard → Z, integer x → Z2, otherwise trivial.
pub fn picard_group(a: SphereParam) -> PicardGroup {
    match a {
        SphereParam::Standard => PicardGroup::Z,
        SphereParam::Finite(x) if (x - x.round()).abs() <= INTEGER_TOL => PicardGroup::Z2,
        SphereParam::Finite(_) => PicardGroup::Trivial,
    }
}
