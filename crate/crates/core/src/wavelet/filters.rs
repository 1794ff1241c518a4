use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tables;
use crate::error::{Result, WarpadError};

/// Decomposition/reconstruction filter quadruple, stored in the same
/// orientation PyWavelets uses (`dec_*` already time-reversed).
#[derive(Debug, Clone, Copy)]
pub struct FilterBank {
    pub dec_lo: &'static [f64],
    pub dec_hi: &'static [f64],
    pub rec_lo: &'static [f64],
    pub rec_hi: &'static [f64],
}

impl FilterBank {
    pub fn len(&self) -> usize {
        self.dec_lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dec_lo.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WaveletFamily {
    #[serde(rename = "haar")]
    Haar,
    #[serde(rename = "db2")]
    Db2,
    #[serde(rename = "db3")]
    Db3,
    #[serde(rename = "db4")]
    Db4,
    #[serde(rename = "bior1.3")]
    Bior13,
    #[serde(rename = "bior1.5")]
    Bior15,
    #[serde(rename = "bior2.2")]
    Bior22,
    #[serde(rename = "bior2.4")]
    Bior24,
    #[serde(rename = "bior3.1")]
    Bior31,
    #[serde(rename = "coif1")]
    Coif1,
    #[serde(rename = "coif2")]
    Coif2,
    #[serde(rename = "coif3")]
    Coif3,
}

impl WaveletFamily {
    pub const ALL: [WaveletFamily; 12] = [
        WaveletFamily::Haar,
        WaveletFamily::Bior13,
        WaveletFamily::Bior15,
        WaveletFamily::Db2,
        WaveletFamily::Db3,
        WaveletFamily::Db4,
        WaveletFamily::Bior22,
        WaveletFamily::Bior24,
        WaveletFamily::Bior31,
        WaveletFamily::Coif1,
        WaveletFamily::Coif2,
        WaveletFamily::Coif3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WaveletFamily::Haar => "haar",
            WaveletFamily::Db2 => "db2",
            WaveletFamily::Db3 => "db3",
            WaveletFamily::Db4 => "db4",
            WaveletFamily::Bior13 => "bior1.3",
            WaveletFamily::Bior15 => "bior1.5",
            WaveletFamily::Bior22 => "bior2.2",
            WaveletFamily::Bior24 => "bior2.4",
            WaveletFamily::Bior31 => "bior3.1",
            WaveletFamily::Coif1 => "coif1",
            WaveletFamily::Coif2 => "coif2",
            WaveletFamily::Coif3 => "coif3",
        }
    }

    pub fn filter_bank(self) -> FilterBank {
        match self {
            WaveletFamily::Haar => tables::HAAR,
            WaveletFamily::Db2 => tables::DB2,
            WaveletFamily::Db3 => tables::DB3,
            WaveletFamily::Db4 => tables::DB4,
            WaveletFamily::Bior13 => tables::BIOR13,
            WaveletFamily::Bior15 => tables::BIOR15,
            WaveletFamily::Bior22 => tables::BIOR22,
            WaveletFamily::Bior24 => tables::BIOR24,
            WaveletFamily::Bior31 => tables::BIOR31,
            WaveletFamily::Coif1 => tables::COIF1,
            WaveletFamily::Coif2 => tables::COIF2,
            WaveletFamily::Coif3 => tables::COIF3,
        }
    }

    /// Orthogonal families use the same filters for analysis and synthesis.
    pub fn is_orthogonal(self) -> bool {
        !matches!(
            self,
            WaveletFamily::Bior13
                | WaveletFamily::Bior15
                | WaveletFamily::Bior22
                | WaveletFamily::Bior24
                | WaveletFamily::Bior31
        )
    }

    /// Vanishing moments of the synthesis wavelet.
    pub fn vanishing_moments(self) -> usize {
        match self {
            WaveletFamily::Haar | WaveletFamily::Bior13 | WaveletFamily::Bior15 => 1,
            WaveletFamily::Db2 | WaveletFamily::Coif1 => 2,
            WaveletFamily::Bior22 | WaveletFamily::Bior24 => 2,
            WaveletFamily::Db3 | WaveletFamily::Bior31 => 3,
            WaveletFamily::Db4 | WaveletFamily::Coif2 => 4,
            WaveletFamily::Coif3 => 6,
        }
    }
}

impl fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaveletFamily {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase();
        WaveletFamily::ALL
            .into_iter()
            .find(|f| f.name() == wanted || f.name().replace('.', "") == wanted)
            .ok_or_else(|| {
                let names: Vec<_> = WaveletFamily::ALL.iter().map(|f| f.name()).collect();
                WarpadError::config(format!(
                    "unknown wavelet family '{s}' (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// Signal extension used past the borders of each row/column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Half-sample symmetric: `x[-1] = x[0]`, `x[n] = x[n-1]`.
    #[default]
    Symmetric,
    Zero,
    /// Periodized transform (`n/2` coefficients per band, orthogonal for orthogonal filters).
    Periodic,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::Symmetric, Boundary::Zero, Boundary::Periodic];

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Symmetric => "symmetric",
            Boundary::Zero => "zero",
            Boundary::Periodic => "periodic",
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Boundary {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symmetric" => Ok(Boundary::Symmetric),
            "zero" => Ok(Boundary::Zero),
            "periodic" | "periodization" => Ok(Boundary::Periodic),
            other => Err(WarpadError::config(format!(
                "unknown boundary mode '{other}' (expected symmetric, zero or periodic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletSpec {
    pub family: WaveletFamily,
    pub levels: usize,
    #[serde(default)]
    pub boundary: Boundary,
}

impl Default for WaveletSpec {
    fn default() -> Self {
        WaveletSpec {
            family: WaveletFamily::Haar,
            levels: 2,
            boundary: Boundary::Symmetric,
        }
    }
}

impl WaveletSpec {
    pub fn new(family: WaveletFamily, levels: usize, boundary: Boundary) -> Self {
        WaveletSpec {
            family,
            levels,
            boundary,
        }
    }

    /// Deepest admissible level for an image: `floor(log2(min(h, w)))`.
    pub fn max_level(height: usize, width: usize) -> usize {
        let m = height.min(width);
        if m == 0 {
            0
        } else {
            (usize::BITS - 1 - m.leading_zeros()) as usize
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels == 0 {
            return Err(WarpadError::config("wavelet levels must be at least 1"));
        }
        Ok(())
    }

    pub fn validate_for(&self, height: usize, width: usize) -> Result<()> {
        self.validate()?;
        let max = Self::max_level(height, width);
        if self.levels > max {
            return Err(WarpadError::config(format!(
                "{} decomposition levels requested but a {height}x{width} image admits at most {max}",
                self.levels
            )));
        }
        Ok(())
    }
}

impl fmt::Display for WaveletSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family, self.levels, self.boundary)
    }
}

/// `FAMILY[:LEVELS[:BOUNDARY]]`; omitted parts take the defaults.
impl FromStr for WaveletSpec {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let mut spec = WaveletSpec {
            family: parts.next().unwrap_or_default().parse()?,
            ..Default::default()
        };
        if let Some(l) = parts.next() {
            spec.levels = l
                .trim()
                .parse()
                .map_err(|_| WarpadError::config(format!("bad wavelet level '{l}'")))?;
        }
        if let Some(b) = parts.next() {
            spec.boundary = b.parse()?;
        }
        if parts.next().is_some() {
            return Err(WarpadError::config(format!(
                "expected FAMILY[:LEVELS[:BOUNDARY]], got '{s}'"
            )));
        }
        spec.validate()?;
        Ok(spec)
    }
}
