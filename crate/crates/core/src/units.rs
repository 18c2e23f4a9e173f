use crate::error::{Error, Result};

/// Physical constants entering the velocity-field relations.
///
/// Defaults are natural units with an electron-like charge: ħ = c = m = 1, q = −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub m: f64,
    pub q: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            m: 1.0,
            q: -1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, c: f64, m: f64, q: f64) -> Result<Self> {
        let consts = Self { hbar, c, m, q };
        consts.validate()?;
        Ok(consts)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.hbar, self.c, self.m, self.q]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParameter(
                "physical constants must be finite".into(),
            ));
        }
        if self.hbar <= 0.0 || self.c <= 0.0 || self.m <= 0.0 {
            return Err(Error::InvalidParameter(
                "hbar, c and m must be strictly positive".into(),
            ));
        }
        Ok(())
    }

    /// Rest energy mc².
    pub fn rest_energy(&self) -> f64 {
        self.m * self.c * self.c
    }

    /// Relativistic energy of a free particle with momentum `p`.
    pub fn free_energy(&self, p: [f64; 3]) -> f64 {
        let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        (p2 * self.c * self.c + self.rest_energy().powi(2)).sqrt()
    }
}
