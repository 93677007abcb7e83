//! Explicit Runge-Kutta tableaus.

use std::fmt;
use std::str::FromStr;

use crate::error::{EldgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableauTag {
    ForwardEuler,
    Ssprk2,
    Rk2Midpoint,
    Rk4,
}

impl TableauTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ForwardEuler => "fe",
            Self::Ssprk2 => "ssprk2",
            Self::Rk2Midpoint => "rk2",
            Self::Rk4 => "rk4",
        }
    }
}

impl fmt::Display for TableauTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableauTag {
    type Err = EldgError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fe" | "forward-euler" | "euler" => Ok(Self::ForwardEuler),
            "ssprk2" => Ok(Self::Ssprk2),
            "rk2" | "rk2-midpoint" | "midpoint" => Ok(Self::Rk2Midpoint),
            "rk4" => Ok(Self::Rk4),
            other => Err(EldgError::InvalidArgument(format!("unknown tableau '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    pub tag: TableauTag,
    /// Strictly lower-triangular stage matrix, `a[l][m]` for `m < l`.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl ButcherTableau {
    pub fn forward_euler() -> Self {
        Self {
            tag: TableauTag::ForwardEuler,
            a: vec![vec![0.0]],
            b: vec![1.0],
            c: vec![0.0],
        }
    }

    pub fn ssprk2() -> Self {
        Self {
            tag: TableauTag::Ssprk2,
            a: vec![vec![0.0, 0.0], vec![1.0, 0.0]],
            b: vec![0.5, 0.5],
            c: vec![0.0, 1.0],
        }
    }

    pub fn rk2_midpoint() -> Self {
        Self {
            tag: TableauTag::Rk2Midpoint,
            a: vec![vec![0.0, 0.0], vec![0.5, 0.0]],
            b: vec![0.0, 1.0],
            c: vec![0.0, 0.5],
        }
    }

    pub fn rk4() -> Self {
        Self {
            tag: TableauTag::Rk4,
            a: vec![
                vec![0.0, 0.0, 0.0, 0.0],
                vec![0.5, 0.0, 0.0, 0.0],
                vec![0.0, 0.5, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
            b: vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
            c: vec![0.0, 0.5, 0.5, 1.0],
        }
    }

    pub fn from_tag(tag: TableauTag) -> Self {
        match tag {
            TableauTag::ForwardEuler => Self::forward_euler(),
            TableauTag::Ssprk2 => Self::ssprk2(),
            TableauTag::Rk2Midpoint => Self::rk2_midpoint(),
            TableauTag::Rk4 => Self::rk4(),
        }
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// Explicitness, `Σ b = 1`, row sums equal to `c`, and `c_1 = 0`.
    pub fn validate(&self) -> Result<()> {
        let s = self.stages();
        let bad = |msg: &str| Err(EldgError::InvalidArgument(format!("tableau {}: {msg}", self.tag)));
        if s == 0 || self.a.len() != s || self.c.len() != s || self.a.iter().any(|r| r.len() != s) {
            return bad("inconsistent dimensions");
        }
        if (self.b.iter().sum::<f64>() - 1.0).abs() > 1e-14 {
            return bad("weights do not sum to one");
        }
        for l in 0..s {
            if self.a[l][l..].iter().any(|&v| v != 0.0) {
                return bad("not explicit");
            }
            if (self.a[l].iter().sum::<f64>() - self.c[l]).abs() > 1e-14 {
                return bad("row sum differs from abscissa");
            }
        }
        if self.c[0] != 0.0 {
            return bad("first abscissa must be zero");
        }
        Ok(())
    }
}
