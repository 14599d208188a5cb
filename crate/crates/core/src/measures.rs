//! Two-spin X-states and the three resource measures.
//!
//! A translation-invariant nearest-neighbour state is fixed by four Bloch
//! components: the magnetisation `mz` (= t_z0 = t_0z) and the diagonal
//! correlations `txx`, `tyy`, `tzz`.
//!
//! The steered coherences average, over A's three Pauli measurements and both
//! outcomes, the coherence of B's conditional state in the two complementary
//! eigenbases. For an X-state the conditional Bloch vectors are
//! (±txx, 0, mz), (0, ±tyy, mz) and (0, 0, (mz ± tzz)/(1 ± mz)), which gives
//! the closed forms below. Logarithms are base 2.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlators::CorrelatorSet;
use crate::error::{Error, Result};

/// Smallest eigenvalue accepted as physical.
pub const POSITIVITY_TOL: f64 = 1e-8;

const ENTROPY_CLAMP: f64 = 1e-12;

/// Real X-form two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    mz: f64,
    txx: f64,
    tyy: f64,
    tzz: f64,
}

impl XState {
    /// Builds the state from its Bloch components, rejecting non-positive ones.
    pub fn from_bloch(mz: f64, txx: f64, tyy: f64, tzz: f64) -> Result<Self> {
        if ![mz, txx, tyy, tzz].iter().all(|v| v.is_finite()) {
            return Err(Error::NotDensityMatrix(format!(
                "non-finite Bloch components ({mz}, {txx}, {tyy}, {tzz})"
            )));
        }
        let x = Self::from_bloch_unchecked(mz, txx, tyy, tzz);
        let min = x.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if !min.is_finite() || min < -POSITIVITY_TOL {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(x)
    }

    pub(crate) fn from_bloch_unchecked(mz: f64, txx: f64, tyy: f64, tzz: f64) -> Self {
        Self { mz, txx, tyy, tzz }
    }

    /// X-state of the nearest-neighbour pair described by `c`.
    pub fn from_correlators(c: &CorrelatorSet) -> Result<Self> {
        Self::from_bloch(c.mz, c.sxx, c.syy, c.szz)
    }

    pub fn mz(&self) -> f64 {
        self.mz
    }
    pub fn txx(&self) -> f64 {
        self.txx
    }
    pub fn tyy(&self) -> f64 {
        self.tyy
    }
    pub fn tzz(&self) -> f64 {
        self.tzz
    }

    // Matrix elements of 4ρ in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
    pub fn r11(&self) -> f64 {
        1.0 + 2.0 * self.mz + self.tzz
    }
    pub fn r22(&self) -> f64 {
        1.0 - self.tzz
    }
    pub fn r33(&self) -> f64 {
        1.0 - self.tzz
    }
    pub fn r44(&self) -> f64 {
        1.0 - 2.0 * self.mz + self.tzz
    }
    pub fn r14(&self) -> f64 {
        self.txx - self.tyy
    }
    pub fn r23(&self) -> f64 {
        self.txx + self.tyy
    }

    /// Eigenvalues of ρ (with the 1/4 prefactor), in no particular order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let outer = (4.0 * self.mz * self.mz + self.r14() * self.r14()).sqrt();
        let inner = self.r23().abs();
        [
            (1.0 + self.tzz + outer) / 4.0,
            (1.0 + self.tzz - outer) / 4.0,
            (1.0 - self.tzz + inner) / 4.0,
            (1.0 - self.tzz - inner) / 4.0,
        ]
    }

    pub fn trace(&self) -> f64 {
        (self.r11() + self.r22() + self.r33() + self.r44()) / 4.0
    }

    /// Dense 4×4 density matrix, qubit A as the high index bit.
    pub fn density_matrix(&self) -> Matrix4<Complex64> {
        let mut m = Matrix4::<Complex64>::zeros();
        m[(0, 0)] = self.r11().into();
        m[(1, 1)] = self.r22().into();
        m[(2, 2)] = self.r33().into();
        m[(3, 3)] = self.r44().into();
        m[(0, 3)] = self.r14().into();
        m[(3, 0)] = self.r14().into();
        m[(1, 2)] = self.r23().into();
        m[(2, 1)] = self.r23().into();
        m / Complex64::from(4.0)
    }

    /// Smallest eigenvalue via a general Hermitian eigensolver; used to
    /// cross-check the block formula.
    pub fn min_eigenvalue_dense(&self) -> f64 {
        SymmetricEigen::new(self.density_matrix())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Binary Shannon entropy in bits. Arguments within 1e-12 of [0, 1] are
/// clamped; anything further out is an error.
pub fn h2(x: f64) -> Result<f64> {
    if !(-ENTROPY_CLAMP..=1.0 + ENTROPY_CLAMP).contains(&x) {
        return Err(Error::EntropyDomain(x));
    }
    Ok(h2_clamped(x))
}

pub(crate) fn h2_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// ℓ1-norm steered quantum coherence.
pub fn c_l1(x: &XState) -> f64 {
    let XState { mz, txx, tyy, tzz } = *x;
    0.5 * (txx.abs()
        + tyy.abs()
        + txx.hypot(mz)
        + tyy.hypot(mz)
        + (mz + tzz).abs()
        + (mz - tzz).abs())
}

/// Relative-entropy steered quantum coherence.
pub fn c_re(x: &XState) -> f64 {
    let XState { mz, txx, tyy, tzz } = *x;
    let t1 = 0.5 * (1.0 + mz.hypot(txx));
    let t2 = 0.5 * (1.0 + mz.hypot(tyy));
    let up = 1.0 + mz;
    let down = 1.0 - mz;
    // a vanishing outcome probability removes its term entirely
    let weighted_up = if up < 1e-12 {
        0.0
    } else {
        0.5 * up * h2_clamped(0.5 * (1.0 + (mz + tzz).abs() / up))
    };
    let weighted_down = if down < 1e-12 {
        0.0
    } else {
        0.5 * down * h2_clamped(0.5 * (1.0 + (mz - tzz).abs() / down))
    };
    2.0 - h2_clamped(t1) - h2_clamped(t2) + h2_clamped(0.5 * up) - weighted_up - weighted_down
}

/// Pauli characteristic function c(s, t) = tr(ρ σ^s ⊗ σ^t), s, t ∈ {0, x, y, z}.
pub fn characteristic_matrix(x: &XState) -> Matrix4<f64> {
    Matrix4::new(
        1.0, 0.0, 0.0, x.mz, //
        0.0, x.txx, 0.0, 0.0, //
        0.0, 0.0, x.tyy, 0.0, //
        x.mz, 0.0, 0.0, x.tzz,
    )
}

/// Magic resource quantifier: ℓ1-norm of the characteristic function.
pub fn mrq(x: &XState) -> f64 {
    // terms in the row-major order of `characteristic_matrix`
    1.0 + x.mz.abs() + x.txx.abs() + x.tyy.abs() + x.mz.abs() + x.tzz.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    CL1,
    CRe,
    Mrq,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::CL1, Measure::CRe, Measure::Mrq];

    pub fn name(self) -> &'static str {
        match self {
            Measure::CL1 => "c_l1",
            Measure::CRe => "c_re",
            Measure::Mrq => "mrq",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "c_l1" | "l1" => Ok(Measure::CL1),
            "c_re" | "re" => Ok(Measure::CRe),
            "mrq" => Ok(Measure::Mrq),
            other => Err(Error::InvalidParams(format!("unknown measure '{other}'"))),
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated point of a sweep or time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub t: f64,
    pub h1: f64,
    pub c_l1: f64,
    pub c_re: f64,
    pub mrq: f64,
}

impl MeasureRecord {
    pub fn from_xstate(t: f64, h1: f64, x: &XState) -> Self {
        Self {
            t,
            h1,
            c_l1: c_l1(x),
            c_re: c_re(x),
            mrq: mrq(x),
        }
    }

    /// Evaluates the closed forms on the correlators as they stand. On the
    /// cyclic grid a finite chain can yield a slightly non-positive X-state
    /// (eigenvalues down to about −5e−3 at N = 100); those points are kept
    /// rather than rejected. Non-finite input is still an error.
    pub fn from_correlators(c: &CorrelatorSet, h1: f64) -> Result<Self> {
        let x = XState::from_bloch_unchecked(c.mz, c.sxx, c.syy, c.szz);
        if ![c.mz, c.sxx, c.syy, c.szz].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite correlators at t = {}",
                c.t
            )));
        }
        Ok(Self::from_xstate(c.t, h1, &x))
    }

    pub fn get(&self, m: Measure) -> f64 {
        match m {
            Measure::CL1 => self.c_l1,
            Measure::CRe => self.c_re,
            Measure::Mrq => self.mrq,
        }
    }
}
