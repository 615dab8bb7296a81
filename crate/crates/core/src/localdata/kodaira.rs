use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Kodaira type of the special fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fibre.
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I0 | Kodaira::II => 1,
            Kodaira::In(n) => n,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::I0Star => 5,
            Kodaira::InStar(n) => n + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    pub fn is_good(self) -> bool {
        self == Kodaira::I0
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::In(_))
    }

    pub fn is_additive(self) -> bool {
        !self.is_good() && !self.is_multiplicative()
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => f.write_str("I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::I0Star => f.write_str("I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let k = match s {
            "I0" => Kodaira::I0,
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "I0*" => Kodaira::I0Star,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let body = s
                    .strip_prefix('I')
                    .ok_or_else(|| format!("unknown Kodaira symbol {s:?}"))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let n: u32 = digits.parse().map_err(|_| format!("unknown Kodaira symbol {s:?}"))?;
                if n == 0 {
                    return Err(format!("unknown Kodaira symbol {s:?}"));
                }
                if star {
                    Kodaira::InStar(n)
                } else {
                    Kodaira::In(n)
                }
            }
        };
        Ok(k)
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
