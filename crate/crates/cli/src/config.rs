//! Scenario configuration: the JSON input document and its resolved form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use velfield::wavefunctions::Spin;
use velfield::{DerivativeMethod, PhysicalConstants};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    ActionPath,
    Clifford,
    #[serde(rename = "dirac-coulomb-1s")]
    DiracCoulomb1s,
    DiracPlaneWave,
    GaugeOrbit,
    #[serde(rename = "kg-coulomb-1s")]
    KgCoulomb1s,
    PlaneWave,
    WorldlinePierce,
}

impl Scenario {
    /// Every scenario, sorted by name.
    pub const ALL: [Scenario; 8] = [
        Scenario::ActionPath,
        Scenario::Clifford,
        Scenario::DiracCoulomb1s,
        Scenario::DiracPlaneWave,
        Scenario::GaugeOrbit,
        Scenario::KgCoulomb1s,
        Scenario::PlaneWave,
        Scenario::WorldlinePierce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::ActionPath => "action-path",
            Scenario::Clifford => "clifford",
            Scenario::DiracCoulomb1s => "dirac-coulomb-1s",
            Scenario::DiracPlaneWave => "dirac-plane-wave",
            Scenario::GaugeOrbit => "gauge-orbit",
            Scenario::KgCoulomb1s => "kg-coulomb-1s",
            Scenario::PlaneWave => "plane-wave",
            Scenario::WorldlinePierce => "worldline-pierce",
        }
    }

    /// Scenarios whose checks run over a sample cloud.
    pub fn samples_cloud(self) -> bool {
        matches!(
            self,
            Scenario::PlaneWave
                | Scenario::KgCoulomb1s
                | Scenario::DiracPlaneWave
                | Scenario::DiracCoulomb1s
                | Scenario::GaugeOrbit
        )
    }

    fn coulomb(self) -> bool {
        matches!(
            self,
            Scenario::KgCoulomb1s | Scenario::DiracCoulomb1s | Scenario::GaugeOrbit | Scenario::ActionPath
        )
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown scenario `{s}`; see `velfield list`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinName {
    Up,
    Down,
}

impl From<SpinName> for Spin {
    fn from(s: SpinName) -> Spin {
        match s {
            SpinName::Up => Spin::Up,
            SpinName::Down => Spin::Down,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Cloud {
    Ray {
        r_min: f64,
        r_max: f64,
        count: usize,
        #[serde(default)]
        t: f64,
    },
    RandomBall {
        center: [f64; 4],
        radius: f64,
        count: usize,
        seed: u64,
    },
    Events {
        events: Vec<[f64; 4]>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    pub hbar: f64,
    pub c: f64,
    pub m: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsInput {
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub m: Option<f64>,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureInput {
    pub momentum: Option<[f64; 3]>,
    pub z_alpha: Option<f64>,
    pub spin: Option<SpinName>,
    pub energy_scale: Option<f64>,
    pub gamma1_scale: Option<f64>,
}

/// Fixture parameters; `momentum` is in units of `mc`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub momentum: [f64; 3],
    pub z_alpha: f64,
    pub spin: SpinName,
    /// Multiplies the fixture energy (negative controls).
    pub energy_scale: f64,
    /// Multiplies γ_1 (negative controls).
    pub gamma1_scale: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivativeInput {
    pub method: Option<Method>,
    pub h: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derivative {
    pub method: Method,
    /// Present for the numeric method only.
    pub h: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub path: Option<String>,
    pub format: Option<Format>,
}

/// The configuration document as written by the user.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default)]
    pub constants: ConstantsInput,
    #[serde(default)]
    pub fixture: FixtureInput,
    #[serde(default)]
    pub derivative: DerivativeInput,
    pub cloud: Option<Cloud>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: Output,
    pub seed: Option<u64>,
}

impl ScenarioConfig {
    pub fn for_scenario(s: Scenario) -> Self {
        Self {
            scenario: s.name().to_string(),
            constants: ConstantsInput::default(),
            fixture: FixtureInput::default(),
            derivative: DerivativeInput::default(),
            cloud: None,
            tolerances: BTreeMap::new(),
            output: Output::default(),
            seed: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }
}

/// Command-line overrides applied on top of a config document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<String>,
    pub format: Option<Format>,
    pub h: Option<f64>,
    pub method: Option<Method>,
    pub seed: Option<u64>,
}

pub const DEFAULT_SEED: u64 = 20240611;

/// A fully resolved configuration; this is what a report echoes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub scenario: Scenario,
    pub constants: Constants,
    pub fixture: Fixture,
    pub derivative: Derivative,
    /// Absent for scenarios that do not sample a cloud.
    pub cloud: Option<Cloud>,
    pub seed: u64,
    /// Overrides only; defaults live with each check.
    pub tolerances: BTreeMap<String, f64>,
    pub output: Output,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Settings {
    pub fn resolve(cfg: &ScenarioConfig, ov: &Overrides) -> Result<Self, CliError> {
        let scenario: Scenario = cfg.scenario.parse()?;
        let defaults = PhysicalConstants::default();
        let constants = Constants {
            hbar: cfg.constants.hbar.unwrap_or(defaults.hbar),
            c: cfg.constants.c.unwrap_or(defaults.c),
            m: cfg.constants.m.unwrap_or(defaults.m),
            q: cfg.constants.q.unwrap_or(defaults.q),
        };
        PhysicalConstants::new(constants.hbar, constants.c, constants.m, constants.q)
            .map_err(|e| bad(e.to_string()))?;

        let default_momentum = match scenario {
            Scenario::PlaneWave | Scenario::DiracPlaneWave | Scenario::ActionPath => [1.0, 0.0, 0.0],
            _ => [0.0; 3],
        };
        let fixture = Fixture {
            momentum: cfg.fixture.momentum.unwrap_or(default_momentum),
            z_alpha: cfg.fixture.z_alpha.unwrap_or(0.4),
            spin: cfg.fixture.spin.unwrap_or(SpinName::Up),
            energy_scale: cfg.fixture.energy_scale.unwrap_or(1.0),
            gamma1_scale: cfg.fixture.gamma1_scale.unwrap_or(1.0),
        };
        if !fixture.momentum.iter().all(|p| p.is_finite()) {
            return Err(bad("fixture.momentum must be finite"));
        }
        for (name, v) in [("energy_scale", fixture.energy_scale), ("gamma1_scale", fixture.gamma1_scale)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("fixture.{name} must be positive")));
            }
        }

        let default_method = match scenario {
            Scenario::DiracCoulomb1s => Method::Numeric,
            _ => Method::Analytic,
        };
        let h_given = ov.h.or(cfg.derivative.h);
        let method = ov
            .method
            .or(if ov.h.is_some() { Some(Method::Numeric) } else { None })
            .or(cfg.derivative.method)
            .unwrap_or(if cfg.derivative.h.is_some() { Method::Numeric } else { default_method });
        let derivative = match method {
            Method::Analytic => Derivative { method, h: None },
            Method::Numeric => {
                let h = h_given.unwrap_or(DerivativeMethod::DEFAULT_STEP);
                DerivativeMethod::central(h).map_err(|e| bad(e.to_string()))?;
                Derivative { method, h: Some(h) }
            }
        };

        let seed = ov.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
        let cloud = if scenario.samples_cloud() {
            let mut cloud = cfg.cloud.clone().unwrap_or_else(|| default_cloud(scenario, seed));
            if let (Some(s), Cloud::RandomBall { seed: cloud_seed, .. }) = (ov.seed, &mut cloud) {
                *cloud_seed = s;
            }
            validate_cloud(&cloud, scenario)?;
            Some(cloud)
        } else {
            if cfg.cloud.is_some() {
                return Err(bad(format!("scenario `{scenario}` does not sample a cloud")));
            }
            None
        };

        for (name, tol) in &cfg.tolerances {
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(bad(format!("tolerance for `{name}` must be a non-negative number")));
            }
        }

        let output = Output {
            path: ov.out.clone().or_else(|| cfg.output.path.clone()),
            format: Some(ov.format.or(cfg.output.format).unwrap_or(Format::Json)),
        };
        Ok(Settings {
            scenario,
            constants,
            fixture,
            derivative,
            cloud,
            seed,
            tolerances: cfg.tolerances.clone(),
            output,
        })
    }

    pub fn physical(&self) -> PhysicalConstants {
        let k = self.constants;
        PhysicalConstants {
            hbar: k.hbar,
            c: k.c,
            m: k.m,
            q: k.q,
        }
    }

    pub fn method(&self) -> DerivativeMethod {
        match self.derivative.h {
            Some(h) if self.derivative.method == Method::Numeric => DerivativeMethod::Central { h },
            _ => DerivativeMethod::Analytic,
        }
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or(Format::Json)
    }
}

fn default_cloud(s: Scenario, seed: u64) -> Cloud {
    match s {
        Scenario::KgCoulomb1s | Scenario::DiracCoulomb1s => Cloud::Ray {
            r_min: 0.5,
            r_max: 5.0,
            count: 50,
            t: 0.0,
        },
        Scenario::GaugeOrbit => Cloud::RandomBall {
            center: [2.0, 0.0, 0.0, 0.0],
            radius: 1.2,
            count: 100,
            seed,
        },
        _ => Cloud::RandomBall {
            center: [0.0; 4],
            radius: 3.0,
            count: 100,
            seed,
        },
    }
}

fn validate_cloud(cloud: &Cloud, s: Scenario) -> Result<(), CliError> {
    let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
    match cloud {
        Cloud::Ray { r_min, r_max, count, t } => {
            if *count < 1 {
                return Err(bad("cloud.count must be at least 1"));
            }
            if !finite(&[*r_min, *r_max, *t]) || r_max < r_min || (*count > 1 && r_max <= r_min) {
                return Err(bad("ray needs finite r_min ≤ r_max"));
            }
            if s.coulomb() && *r_min <= 0.0 {
                return Err(bad("Coulomb scenarios need r_min > 0"));
            }
        }
        Cloud::RandomBall { center, radius, count, .. } => {
            if *count < 1 {
                return Err(bad("cloud.count must be at least 1"));
            }
            if !finite(center) || !(radius.is_finite() && *radius > 0.0) {
                return Err(bad("random-ball needs a finite center and radius > 0"));
            }
        }
        Cloud::Events { events } => {
            if events.is_empty() {
                return Err(bad("cloud.events must list at least one event"));
            }
            if !events.iter().all(|e| finite(e)) {
                return Err(bad("cloud.events must be finite"));
            }
        }
    }
    Ok(())
}
