//! Thresholds `Δ` for code-size functions and graphs.
//!
//! A threshold is either an exact lattice point `a + b·γ` or a raw real. The text form
//! is `REAL` or `INT + INT*g` (whitespace is ignored), e.g. `2+1*g` for `γ + 2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::channel::ChannelParams;
use crate::discrepancy::{compare_lattice, DiscrepancyValue, LatticeValue, TIE_EPSILON};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    Lattice(LatticeValue),
    Real(f64),
}

impl Threshold {
    pub fn value(&self, gamma: f64) -> f64 {
        match self {
            Threshold::Lattice(v) => v.value(gamma),
            Threshold::Real(t) => *t,
        }
    }

    /// Compares a lattice value against the threshold. Numeric comparisons against a
    /// real threshold treat differences below [`TIE_EPSILON`] as equal.
    pub fn compare(&self, ch: &ChannelParams, v: LatticeValue) -> Ordering {
        match self {
            Threshold::Lattice(t) => compare_lattice(ch, v, *t),
            Threshold::Real(t) => {
                let diff = v.value(ch.gamma()) - t;
                if diff.abs() < TIE_EPSILON {
                    Ordering::Equal
                } else if diff < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// `v >= Δ`, with values on the boundary counted as meeting it.
    pub fn is_met_by(&self, ch: &ChannelParams, v: LatticeValue) -> bool {
        self.compare(ch, v) != Ordering::Less
    }
}

impl From<LatticeValue> for Threshold {
    fn from(v: LatticeValue) -> Self {
        Threshold::Lattice(v)
    }
}

impl From<DiscrepancyValue> for Threshold {
    fn from(v: DiscrepancyValue) -> Self {
        Threshold::Lattice(v.lattice())
    }
}

impl From<f64> for Threshold {
    fn from(t: f64) -> Self {
        Threshold::Real(t)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Lattice(v) => write!(f, "{v}"),
            Threshold::Real(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidThreshold(format!("cannot parse {s:?}; expected REAL or INT+INT*g"));
        if compact.is_empty() {
            return Err(bad());
        }
        if let Some(body) = compact.strip_suffix("*g") {
            // The operator is the first sign after position 0.
            let split = body
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            let unit: i64 = body[..split].parse().map_err(|_| bad())?;
            let (sign, rest) = body[split..].split_at(1);
            let gamma: i64 = rest.parse().map_err(|_| bad())?;
            let gamma = if sign == "-" { -gamma } else { gamma };
            return Ok(Threshold::Lattice(LatticeValue::new(unit, gamma)));
        }
        if let Ok(unit) = compact.parse::<i64>() {
            return Ok(Threshold::Lattice(LatticeValue::new(unit, 0)));
        }
        let t: f64 = compact.parse().map_err(|_| bad())?;
        if !t.is_finite() {
            return Err(bad());
        }
        Ok(Threshold::Real(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lattice_and_real_forms() {
        assert_eq!(
            "2+1*g".parse::<Threshold>().unwrap(),
            Threshold::Lattice(LatticeValue::new(2, 1))
        );
        assert_eq!(
            " 2 + 1 * g ".parse::<Threshold>().unwrap(),
            Threshold::Lattice(LatticeValue::new(2, 1))
        );
        assert_eq!(
            "-3-2*g".parse::<Threshold>().unwrap(),
            Threshold::Lattice(LatticeValue::new(-3, -2))
        );
        assert_eq!(
            "3".parse::<Threshold>().unwrap(),
            Threshold::Lattice(LatticeValue::new(3, 0))
        );
        assert_eq!("1.5".parse::<Threshold>().unwrap(), Threshold::Real(1.5));
        for bad in ["", "g", "2+*g", "1+1*h", "nan", "inf", "2+1.5*g"] {
            assert!(bad.parse::<Threshold>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for v in [LatticeValue::new(2, 1), LatticeValue::new(-1, -4), LatticeValue::new(0, 3)] {
            let t = Threshold::Lattice(v);
            assert_eq!(t.to_string().parse::<Threshold>().unwrap(), t);
        }
    }

    #[test]
    fn boundary_counts_as_met() {
        let ch = ChannelParams::strict(0.1, 0.4).unwrap();
        let v = LatticeValue::new(1, 1);
        assert!(Threshold::Lattice(v).is_met_by(&ch, v));
        assert!(Threshold::Real(v.value(ch.gamma())).is_met_by(&ch, v));
        assert!(!Threshold::Real(v.value(ch.gamma()) + 1e-6).is_met_by(&ch, v));
    }
}
