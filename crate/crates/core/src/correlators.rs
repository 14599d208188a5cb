//! Closed-form post-quench contractions and nearest-neighbour correlators.
//!
//! After Jordan–Wigner and Bogoliubov transformations every (φ, −φ) pair is
//! an independent pseudospin that starts along the pre-quench field direction
//! and precesses about the post-quench one at angular frequency 4Γ(h1). The
//! contractions are momentum sums over those pseudospins:
//!
//! ```text
//! F_r = (1/N) Σ_p [ cos(rφ)(2(J cosφ + h0) − J² δh δp² sin²(2tΓ1)/Γ1²)
//!                 + δp J sin(rφ)(1 + 2 δh (J cosφ + h1) sin²(2tΓ1)/Γ1²) ] / Γ0
//! Q_r = (1/N) Σ_p [ 2 cos(rφ) + i J δh δp sin(rφ) sin(4tΓ1) / (Γ1 Γ0) ],  G = −Q*
//! ```
//!
//! with δh = h0 − h1 and δp = 2γ sin φ. The minus sign on the δp² term is the
//! precession result; it keeps every pseudospin on the unit sphere.
//!
//! Spin correlators (Pauli normalisation) follow from Wick's theorem:
//! ⟨σz⟩ = F_0, ⟨σxσx⟩ = F_{+1}, ⟨σyσy⟩ = F_{−1},
//! ⟨σzσz⟩ = F_0² − Q G − F_{−1} F_{+1}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{build_momentum_grid, ModelParams, MomentumMode};
use crate::sum::Neumaier;

/// Below this Γ a mode is treated as gapless and limit formulas apply.
pub const GAPLESS_EPS: f64 = 1e-12;

const RANGE_EPS: f64 = 1e-9;

/// Magnetisation and nearest-neighbour correlators at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorSet {
    pub t: f64,
    /// ⟨σ^z_l⟩.
    pub mz: f64,
    /// ⟨σ^x_l σ^x_{l+1}⟩.
    pub sxx: f64,
    /// ⟨σ^y_l σ^y_{l+1}⟩.
    pub syy: f64,
    /// ⟨σ^z_l σ^z_{l+1}⟩.
    pub szz: f64,
    /// F_{l,l}.
    pub f0: f64,
    /// F_{l,l+1}.
    pub f_plus: f64,
    /// F_{l+1,l}.
    pub f_minus: f64,
    /// Q_{l,l+1}.
    pub q: Complex64,
    /// G_{l,l+1} = −Q*.
    pub g: Complex64,
}

impl CorrelatorSet {
    /// Checks the range, the Q/G relation and the Wick identity for ⟨σzσz⟩.
    pub fn check_invariants(&self) -> Result<()> {
        for (name, v) in [
            ("mz", self.mz),
            ("sxx", self.sxx),
            ("syy", self.syy),
            ("szz", self.szz),
        ] {
            if !v.is_finite() || v.abs() > 1.0 + RANGE_EPS {
                return Err(Error::InvalidParams(format!(
                    "correlator {name} = {v} outside [-1, 1] at t = {}",
                    self.t
                )));
            }
        }
        if (self.q + self.g.conj()).norm() > 1e-15 {
            return Err(Error::InvalidParams("Q != -conj(G)".into()));
        }
        let wick = self.f0 * self.f0 - (self.q * self.g).re - self.f_minus * self.f_plus;
        if (wick - self.szz).abs() > 1e-12 {
            return Err(Error::InvalidParams(
                "szz violates the Wick identity".into(),
            ));
        }
        Ok(())
    }
}

/// sin²(2tΓ)/Γ², → 4t² as Γ → 0.
#[inline]
fn sin2_over_gamma2(t: f64, gamma: f64) -> f64 {
    if gamma < GAPLESS_EPS {
        4.0 * t * t
    } else {
        let s = (2.0 * t * gamma).sin() / gamma;
        s * s
    }
}

/// sin(4tΓ)/Γ, → 4t as Γ → 0.
#[inline]
fn sin4_over_gamma(t: f64, gamma: f64) -> f64 {
    if gamma < GAPLESS_EPS {
        4.0 * t
    } else {
        (4.0 * t * gamma).sin() / gamma
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

/// Momentum grid plus quench parameters, evaluated at arbitrary times.
#[derive(Debug, Clone)]
pub struct QuenchCorrelators {
    params: ModelParams,
    modes: Vec<MomentumMode>,
}

impl QuenchCorrelators {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let modes = build_momentum_grid(params)?;
        Ok(Self {
            params: *params,
            modes,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn modes(&self) -> &[MomentumMode] {
        &self.modes
    }

    /// F_{l,l+offset} at time `t`; `offset` ∈ {−1, 0, 1}.
    pub fn f(&self, t: f64, offset: i32) -> Result<f64> {
        check_time(t)?;
        if !(-1..=1).contains(&offset) {
            return Err(Error::InvalidOffset(offset));
        }
        Ok(self.f_unchecked(t, offset))
    }

    fn f_unchecked(&self, t: f64, offset: i32) -> f64 {
        let ModelParams { j, h0, h1, n, .. } = self.params;
        let dh = self.params.field_jump();
        let r = offset as f64;
        let mut acc = Neumaier::new();
        for m in &self.modes {
            // a mode with Γ(h0) = 0 has no preferred initial direction; its
            // φ → π limit contributes nothing for γ ≠ 0
            if m.gamma0 < GAPLESS_EPS {
                continue;
            }
            let c = m.phi.cos();
            let osc = sin2_over_gamma2(t, m.gamma1);
            let along_z =
                (r * m.phi).cos() * (2.0 * (j * c + h0) - j * j * dh * m.delta * m.delta * osc);
            let along_y = if offset == 0 {
                0.0
            } else {
                m.delta * j * (r * m.phi).sin() * (1.0 + 2.0 * dh * (j * c + h1) * osc)
            };
            acc.add((along_z + along_y) / m.gamma0);
        }
        acc.total() / n as f64
    }

    /// (Q_{l,l+offset}, G_{l,l+offset}) at time `t`; `offset` ∈ {−1, 1}.
    pub fn qg(&self, t: f64, offset: i32) -> Result<(Complex64, Complex64)> {
        check_time(t)?;
        if offset != 1 && offset != -1 {
            return Err(Error::InvalidOffset(offset));
        }
        Ok(self.qg_unchecked(t, offset))
    }

    fn qg_unchecked(&self, t: f64, offset: i32) -> (Complex64, Complex64) {
        let ModelParams { j, n, .. } = self.params;
        let dh = self.params.field_jump();
        let r = offset as f64;
        let mut re = Neumaier::new();
        let mut im = Neumaier::new();
        for m in &self.modes {
            re.add(2.0 * (r * m.phi).cos());
            if m.gamma0 >= GAPLESS_EPS {
                im.add(
                    j * dh * m.delta * (r * m.phi).sin() * sin4_over_gamma(t, m.gamma1) / m.gamma0,
                );
            }
        }
        let q = Complex64::new(re.total(), im.total()) / n as f64;
        (q, -q.conj())
    }

    /// All nearest-neighbour correlators at time `t`.
    pub fn at(&self, t: f64) -> Result<CorrelatorSet> {
        check_time(t)?;
        let f0 = self.f_unchecked(t, 0);
        let f_plus = self.f_unchecked(t, 1);
        let f_minus = self.f_unchecked(t, -1);
        let (q, g) = self.qg_unchecked(t, 1);
        Ok(CorrelatorSet {
            t,
            mz: f0,
            sxx: f_plus,
            syy: f_minus,
            szz: f0 * f0 - (q * g).re - f_minus * f_plus,
            f0,
            f_plus,
            f_minus,
            q,
            g,
        })
    }
}

/// F_{l,l+offset}(t) for one quench.
pub fn compute_f(params: &ModelParams, t: f64, offset: i32) -> Result<f64> {
    QuenchCorrelators::new(params)?.f(t, offset)
}

/// (Q, G) at separation `offset` for one quench.
pub fn compute_qg(params: &ModelParams, t: f64, offset: i32) -> Result<(Complex64, Complex64)> {
    QuenchCorrelators::new(params)?.qg(t, offset)
}

/// Magnetisation and nearest-neighbour correlators at time `t`.
pub fn correlators_nn(params: &ModelParams, t: f64) -> Result<CorrelatorSet> {
    QuenchCorrelators::new(params)?.at(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MomentumGrid;
    use proptest::prelude::*;

    fn params(gamma: f64, n: usize, h0: f64, h1: f64) -> ModelParams {
        ModelParams::new(gamma, n, h0, h1).unwrap()
    }

    #[test]
    fn no_quench_is_stationary() {
        let p = params(0.6, 40, 0.8, 0.8);
        let e = QuenchCorrelators::new(&p).unwrap();
        let c0 = e.at(0.0).unwrap();
        for t in [0.3, 2.0, 17.5, 50.0] {
            let c = e.at(t).unwrap();
            assert_eq!(c.mz, c0.mz);
            assert_eq!(c.sxx, c0.sxx);
            assert_eq!(c.syy, c0.syy);
            assert_eq!(c.szz, c0.szz);
            assert_eq!(c.q, c0.q);
        }
    }

    #[test]
    fn polarized_paramagnet() {
        // static (2/N) Σ (cos φ + h)/Γ summed directly
        let n = 100;
        let h = 20.0;
        let direct: f64 = (1..=n / 2)
            .map(|p| {
                let phi = 2.0 * std::f64::consts::PI * p as f64 / n as f64;
                2.0 * (phi.cos() + h) / (phi.cos() + h).hypot(phi.sin())
            })
            .sum::<f64>()
            / n as f64;
        let p = params(1.0, n, h, h);
        let f0 = compute_f(&p, 0.0, 0).unwrap();
        assert!((f0 - direct).abs() < 1e-14);
        assert!((f0 - 1.0).abs() < 1e-3);
        let c = correlators_nn(&p, 3.0).unwrap();
        assert!((c.mz - 1.0).abs() < 1e-3);
        assert!((c.szz - 1.0).abs() < 1e-3);
        // first-order transverse correlations ±J/2h, shifted by the
        // cyclic-grid offset (2/N) Σ cos φ = −2/N
        let shift = -2.0 / n as f64;
        assert!((c.sxx - (0.5 / h + shift)).abs() < 2e-3);
        assert!((c.syy - (-0.5 / h + shift)).abs() < 2e-3);
    }

    #[test]
    fn ising_ferromagnet_limit() {
        let n = 200;
        let c = correlators_nn(&params(1.0, n, 0.0, 0.0), 0.0).unwrap();
        assert!((c.sxx - 1.0).abs() < 1e-12);
        assert!((c.mz + 2.0 / n as f64).abs() < 1e-12);
        assert!(c.syy.abs() < 1e-12);
        // F0 = −2/N, F+ = 1, F− = 0, Q = −G = −2/N
        let nn = (n * n) as f64;
        assert!((c.szz - 8.0 / nn).abs() < 1e-12);
    }

    #[test]
    fn q_at_time_zero_is_real() {
        for n in [4, 10, 64] {
            let (q, g) = compute_qg(&params(0.7, n, 0.3, 1.4), 0.0, 1).unwrap();
            assert_eq!(q.im, 0.0);
            assert!((q.re + 2.0 / n as f64).abs() < 1e-14);
            assert_eq!(g, -q.conj());
        }
    }

    #[test]
    fn q_develops_imaginary_part() {
        let (q, _) = compute_qg(&params(1.0, 100, 1.3, 1.0), 3.0, 1).unwrap();
        assert!(q.im.abs() > 1e-3);
        let (q0, _) = compute_qg(&params(1.0, 100, 1.0, 1.0), 3.0, 1).unwrap();
        assert_eq!(q0.im, 0.0);
    }

    #[test]
    fn offsets_and_times_are_checked() {
        let p = params(1.0, 8, 0.7, 1.0);
        assert!(matches!(
            compute_f(&p, 1.0, 2),
            Err(Error::InvalidOffset(2))
        ));
        assert!(matches!(
            compute_qg(&p, 1.0, 0),
            Err(Error::InvalidOffset(0))
        ));
        assert!(matches!(
            correlators_nn(&p, -0.1),
            Err(Error::NegativeTime(_))
        ));
        assert!(compute_f(&p, f64::NAN, 0).is_err());
    }

    #[test]
    fn gapless_mode_stays_finite() {
        // h1 = J: the φ = π mode is exactly gapless on the cyclic grid
        let p = params(1.0, 100, 0.7, 1.0);
        let e = QuenchCorrelators::new(&p).unwrap();
        let mut prev = e.at(0.0).unwrap();
        for k in 1..=400 {
            let c = e.at(k as f64 * 0.05).unwrap();
            for v in [c.mz, c.sxx, c.syy, c.szz, c.q.im] {
                assert!(v.is_finite());
            }
            assert!((c.mz - prev.mz).abs() < 0.2);
            prev = c;
        }
        // quench out of the critical point
        let c = correlators_nn(&params(1.0, 100, 1.0, 0.4), 7.0).unwrap();
        c.check_invariants().unwrap();
    }

    #[test]
    fn limit_formulas_are_continuous() {
        let t = 2.5;
        let tiny = 1e-9;
        assert!((sin2_over_gamma2(t, tiny) - sin2_over_gamma2(t, 0.0)).abs() < 1e-9);
        assert!((sin4_over_gamma(t, tiny) - sin4_over_gamma(t, 0.0)).abs() < 1e-9);
    }

    #[test]
    fn antiperiodic_grid_is_supported() {
        let p = params(0.5, 12, 0.7, 1.0).with_grid(MomentumGrid::Antiperiodic);
        correlators_nn(&p, 1.5).unwrap().check_invariants().unwrap();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn invariants_hold(
            gamma in -1.5f64..1.5, half in 2usize..60, h0 in -2.0f64..2.5,
            h1 in -2.0f64..2.5, t in 0.0f64..40.0
        ) {
            let p = params(gamma, 2 * half, h0, h1);
            let c = correlators_nn(&p, t).unwrap();
            prop_assert!(c.check_invariants().is_ok(), "{:?}", c);
            prop_assert!((c.q * c.g + c.q.norm_sqr()).norm() < 1e-12);
        }

        #[test]
        fn quench_off_stationarity(
            gamma in -1.5f64..1.5, half in 2usize..60, h in -2.0f64..2.5, t in 0.0f64..50.0
        ) {
            let p = params(gamma, 2 * half, h, h);
            let a = correlators_nn(&p, 0.0).unwrap();
            let b = correlators_nn(&p, t).unwrap();
            prop_assert!((a.mz - b.mz).abs() <= 1e-12);
            prop_assert!((a.sxx - b.sxx).abs() <= 1e-12);
            prop_assert!((a.syy - b.syy).abs() <= 1e-12);
            prop_assert!((a.szz - b.szz).abs() <= 1e-12);
        }
    }
}
