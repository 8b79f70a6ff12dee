use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::spec::{KValues, SweepSpec};

/// K values of the quick Fig. 1 replication: both sides of the phase
/// transition plus the linear regime.
pub const FIG1_LITE_KS: [f64; 14] = [
    6.0, 7.0, 10.0, 15.0, 20.0, 30.0, 45.0, 60.0, 90.0, 150.0, 300.0, 600.0, 1000.0, 2000.0,
];

/// K values of the quick boundary-bit replication, dense around K = n.
pub const FIG3_LITE_KS: [f64; 13] = [
    5.0, 10.0, 20.0, 30.0, 50.0, 100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig1,
    Fig1Right,
    Fig3,
    Fig1Lite,
    Fig3Lite,
    DriftThm,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Fig1,
        Preset::Fig1Right,
        Preset::Fig3,
        Preset::Fig1Lite,
        Preset::Fig3Lite,
        Preset::DriftThm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig1Right => "fig1_right",
            Preset::Fig3 => "fig3",
            Preset::Fig1Lite => "fig1_lite",
            Preset::Fig3Lite => "fig3_lite",
            Preset::DriftThm => "drift_thm",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                Error::Usage(format!("unknown preset {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

/// Sweep specification of a preset. All presets use n = 300, margin 1/n,
/// the DynBV fast comparator and a 200000-iteration cap.
pub fn replicate(preset: Preset) -> SweepSpec {
    let n = 300;
    match preset {
        Preset::Fig1 => SweepSpec::new(n, KValues::PaperGrid { min: 6, max: 10_000 }, 50),
        Preset::Fig1Right => SweepSpec::new(n, KValues::PaperGrid { min: 18, max: 90 }, 50),
        Preset::Fig3 => SweepSpec::new(n, KValues::PaperGrid { min: 5, max: 800 }, 20),
        Preset::Fig1Lite => SweepSpec::new(n, KValues::Explicit(FIG1_LITE_KS.to_vec()), 20),
        Preset::Fig3Lite => SweepSpec::new(n, KValues::Explicit(FIG3_LITE_KS.to_vec()), 20),
        Preset::DriftThm => {
            SweepSpec::new(n, KValues::Explicit(vec![50.0, 100.0, 200.0, 300.0]), 50)
        }
    }
}
