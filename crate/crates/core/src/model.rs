//! Quench parameters, Bogoliubov dispersion and the momentum grid.
//!
//! Units: ħ = 1 and energies in units of the exchange coupling, so time is
//! measured in 1/J. The critical field is h_c = J.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which set of momenta the closed-form sums run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentumGrid {
    /// φ_p = 2πp/N for p = 1..N/2. The standard c-cyclic grid used for all
    /// production runs; exact only as N → ∞.
    #[default]
    Cyclic,
    /// φ_p = (2p−1)π/N for p = 1..N/2: the even-parity (antiperiodic fermion)
    /// sector that contains the ground state of a finite periodic chain.
    /// Reproduces exact diagonalisation to round-off.
    Antiperiodic,
}

impl MomentumGrid {
    pub fn name(self) -> &'static str {
        match self {
            MomentumGrid::Cyclic => "cyclic",
            MomentumGrid::Antiperiodic => "antiperiodic",
        }
    }

    /// Momentum angle of mode `p` (1-based) on an `n`-site chain.
    pub fn angle(self, p: usize, n: usize) -> f64 {
        match self {
            MomentumGrid::Cyclic => 2.0 * PI * p as f64 / n as f64,
            MomentumGrid::Antiperiodic => (2 * p - 1) as f64 * PI / n as f64,
        }
    }
}

impl std::str::FromStr for MomentumGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cyclic" => Ok(MomentumGrid::Cyclic),
            "antiperiodic" => Ok(MomentumGrid::Antiperiodic),
            other => Err(Error::InvalidParams(format!(
                "unknown momentum grid '{other}' (expected cyclic or antiperiodic)"
            ))),
        }
    }
}

/// A single sudden-quench experiment: ground state at `h0`, evolution at `h1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Exchange coupling J (> 0).
    pub j: f64,
    /// Anisotropy γ; γ = 1 is the transverse-field Ising chain.
    pub gamma: f64,
    /// Number of sites N (even, ≥ 4).
    pub n: usize,
    /// Pre-quench field.
    pub h0: f64,
    /// Post-quench field.
    pub h1: f64,
    #[serde(default)]
    pub grid: MomentumGrid,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            gamma: 1.0,
            n: 100,
            h0: 0.7,
            h1: 1.0,
            grid: MomentumGrid::Cyclic,
        }
    }
}

impl ModelParams {
    /// Validated constructor with J = 1 and the cyclic grid.
    pub fn new(gamma: f64, n: usize, h0: f64, h1: f64) -> Result<Self> {
        let p = Self {
            gamma,
            n,
            h0,
            h1,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_j(mut self, j: f64) -> Self {
        self.j = j;
        self
    }

    pub fn with_grid(mut self, grid: MomentumGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_h1(mut self, h1: f64) -> Self {
        self.h1 = h1;
        self
    }

    pub fn with_h0(mut self, h0: f64) -> Self {
        self.h0 = h0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "N must be even and at least 4, got {}",
                self.n
            )));
        }
        if !(self.j.is_finite() && self.j > 0.0) {
            return Err(Error::InvalidParams(format!(
                "J must be finite and positive, got {}",
                self.j
            )));
        }
        for (name, v) in [("gamma", self.gamma), ("h0", self.h0), ("h1", self.h1)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// δ_h = h0 − h1.
    pub fn field_jump(&self) -> f64 {
        self.h0 - self.h1
    }
}

/// Bogoliubov quasiparticle energy √((J cos φ + h)² + γ²J² sin²φ).
pub fn dispersion(j: f64, gamma: f64, h: f64, phi: f64) -> f64 {
    let a = j * phi.cos() + h;
    let b = gamma * j * phi.sin();
    a.hypot(b)
}

/// One (φ, −φ) pair of the momentum grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumMode {
    pub p: usize,
    pub phi: f64,
    /// δ_p = 2γ sin φ_p.
    pub delta: f64,
    /// Γ at the pre-quench field.
    pub gamma0: f64,
    /// Γ at the post-quench field.
    pub gamma1: f64,
}

/// The N/2 modes entering every momentum sum, in increasing φ.
pub fn build_momentum_grid(params: &ModelParams) -> Result<Vec<MomentumMode>> {
    params.validate()?;
    let modes = (1..=params.n / 2)
        .map(|p| {
            let phi = params.grid.angle(p, params.n);
            MomentumMode {
                p,
                phi,
                delta: 2.0 * params.gamma * phi.sin(),
                gamma0: dispersion(params.j, params.gamma, params.h0, phi),
                gamma1: dispersion(params.j, params.gamma, params.h1, phi),
            }
        })
        .collect();
    Ok(modes)
}
