//! Exact diagonalisation of the periodic XY chain.
//!
//! Basis states are bit strings with bit i = 1 meaning site i points down.
//! Both the initial ground state and the quench dynamics live in the sector
//! with zero lattice momentum and even spin-flip parity, so the Hamiltonians
//! are built on translation orbits inside that sector (about 2^(n−1)/n states)
//! and only expanded to the full 2^n space when observables are taken.

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::ensemble::{kron, pauli};
use crate::error::{Error, Result};
use crate::measures::XState;
use crate::model::ModelParams;

/// Largest chain handled by the oracle.
pub const MAX_SITES: usize = 14;

const X_LEAK_TOL: f64 = 1e-10;

fn rotate(s: u32, n: usize) -> u32 {
    let mask = (1u32 << n) - 1;
    ((s << 1) | (s >> (n - 1))) & mask
}

struct Sector {
    n: usize,
    reps: Vec<u32>,
    orbit_len: Vec<usize>,
    // rep index for every even-parity state, u32::MAX elsewhere
    lookup: Vec<u32>,
}

impl Sector {
    fn new(n: usize) -> Self {
        let size = 1usize << n;
        let mut lookup = vec![u32::MAX; size];
        let mut reps = Vec::new();
        let mut orbit_len = Vec::new();
        for s in 0..size as u32 {
            if s.count_ones() % 2 != 0 || lookup[s as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            let mut members = vec![s];
            let mut r = rotate(s, n);
            while r != s {
                members.push(r);
                r = rotate(r, n);
            }
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                lookup[m as usize] = idx;
            }
            reps.push(s);
            orbit_len.push(members.len());
        }
        Self {
            n,
            reps,
            orbit_len,
            lookup,
        }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// ⟨r'|H|r⟩ = Σ amp · √(L_r / L_r') over the images of the representative.
    fn hamiltonian(&self, j: f64, gamma: f64, h: f64) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (col, &r) in self.reps.iter().enumerate() {
            m[(col, col)] += diagonal_energy(r, self.n, h);
            for (target, amp) in bond_flips(r, self.n, j, gamma) {
                let row = self.lookup[target as usize] as usize;
                let ratio = self.orbit_len[col] as f64 / self.orbit_len[row] as f64;
                m[(row, col)] += amp * ratio.sqrt();
            }
        }
        m
    }

    fn expand(&self, v: &DVector<Complex64>) -> Vec<Complex64> {
        self.lookup
            .iter()
            .map(|&idx| {
                if idx == u32::MAX {
                    Complex64::new(0.0, 0.0)
                } else {
                    let i = idx as usize;
                    v[i] / (self.orbit_len[i] as f64).sqrt()
                }
            })
            .collect()
    }
}

fn diagonal_energy(s: u32, n: usize, h: f64) -> f64 {
    let down = (s.count_ones()) as f64;
    -h * (n as f64 - 2.0 * down)
}

// Off-diagonal action of the exchange on one basis state: each bond flips
// both spins with amplitude −Jγ (aligned) or −J (anti-aligned).
fn bond_flips(s: u32, n: usize, j: f64, gamma: f64) -> impl Iterator<Item = (u32, f64)> {
    (0..n).map(move |i| {
        let k = (i + 1) % n;
        let aligned = ((s >> i) & 1) == ((s >> k) & 1);
        let yy = if aligned { -1.0 } else { 1.0 };
        let amp = -0.5 * j * ((1.0 + gamma) + (1.0 - gamma) * yy);
        (s ^ (1 << i) ^ (1 << k), amp)
    })
}

/// H|ψ⟩ on the full 2^n space, term by term from the spin Hamiltonian.
pub fn apply_hamiltonian(
    n: usize,
    j: f64,
    gamma: f64,
    h: f64,
    psi: &[Complex64],
) -> Vec<Complex64> {
    assert_eq!(psi.len(), 1 << n, "state length must be 2^n");
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (s, &amp) in psi.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let s = s as u32;
        out[s as usize] += amp * diagonal_energy(s, n, h);
        for (t, a) in bond_flips(s, n, j, gamma) {
            out[t as usize] += amp * a;
        }
    }
    out
}

/// Nearest-neighbour observables read off the sites-(0, 1) reduced state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCorrelators {
    pub mz: f64,
    pub sxx: f64,
    pub syy: f64,
    pub szz: f64,
}

/// Ground state at h0 and its spectral decomposition under h1.
pub struct EdState {
    n: usize,
    j: f64,
    gamma: f64,
    h0: f64,
    h1: f64,
    sector: Sector,
    ground_energy: f64,
    ground: DVector<f64>,
    energies: DVector<f64>,
    modes: DMatrix<f64>,
    weights: DVector<f64>,
}

impl EdState {
    pub fn build(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        Self::from_couplings(params.n, params.j, params.gamma, params.h0, params.h1)
    }

    /// Like [`EdState::build`] but allows the two-site chain.
    pub fn from_couplings(n: usize, j: f64, gamma: f64, h0: f64, h1: f64) -> Result<Self> {
        if n > MAX_SITES {
            return Err(Error::EdSize(n));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "exact diagonalisation needs an even chain of at least 2 sites, got {n}"
            )));
        }
        if !(j.is_finite() && j > 0.0 && gamma.is_finite() && h0.is_finite() && h1.is_finite()) {
            return Err(Error::InvalidParams(
                "couplings must be finite with J > 0".into(),
            ));
        }
        let sector = Sector::new(n);

        let pre = SymmetricEigen::new(sector.hamiltonian(j, gamma, h0));
        let lowest = pre
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("sector is never empty");
        let ground_energy = pre.eigenvalues[lowest];
        let ground = pre.eigenvectors.column(lowest).into_owned();

        let post = SymmetricEigen::new(sector.hamiltonian(j, gamma, h1));
        let weights = post.eigenvectors.transpose() * &ground;

        Ok(Self {
            n,
            j,
            gamma,
            h0,
            h1,
            sector,
            ground_energy,
            ground,
            energies: post.eigenvalues,
            modes: post.eigenvectors,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector_dim(&self) -> usize {
        self.sector.dim()
    }

    /// Lowest energy at h0 within the even, zero-momentum sector.
    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Full-space amplitudes of the pre-quench ground state.
    pub fn ground_state(&self) -> Vec<Complex64> {
        self.sector.expand(&self.ground.map(Complex64::from))
    }

    /// Full-space amplitudes of e^{−iH(h1)t}|ψ0⟩.
    pub fn evolved(&self, t: f64) -> Result<Vec<Complex64>> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::NegativeTime(t));
        }
        let phased = DVector::from_iterator(
            self.weights.len(),
            self.weights
                .iter()
                .zip(self.energies.iter())
                .map(|(&w, &e)| Complex64::from_polar(w, -e * t)),
        );
        let v = self.modes.map(Complex64::from) * phased;
        Ok(self.sector.expand(&v))
    }

    /// ⟨ψ(t)|ψ(t)⟩.
    pub fn norm(&self, t: f64) -> Result<f64> {
        Ok(self.evolved(t)?.iter().map(|a| a.norm_sqr()).sum())
    }

    /// ⟨ψ(t)|H(h1)|ψ(t)⟩ with H applied literally in the full space.
    pub fn energy(&self, t: f64) -> Result<f64> {
        let psi = self.evolved(t)?;
        let hpsi = apply_hamiltonian(self.n, self.j, self.gamma, self.h1, &psi);
        Ok(psi.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum())
    }

    /// ‖H(h0)ψ0 − E0ψ0‖ in the full space.
    pub fn ground_residual(&self) -> f64 {
        let psi = self.ground_state();
        let hpsi = apply_hamiltonian(self.n, self.j, self.gamma, self.h0, &psi);
        hpsi.iter()
            .zip(&psi)
            .map(|(a, b)| (a - b * self.ground_energy).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Reduced density matrix of sites 0 and 1, index 2a + b with site 0 as
    /// `a`, basis order ↑↑, ↑↓, ↓↑, ↓↓.
    pub fn two_site_density(&self, t: f64) -> Result<Matrix4<Complex64>> {
        let psi = self.evolved(t)?;
        let mut rho = Matrix4::<Complex64>::zeros();
        for (s, amp) in psi.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let rest = s & !3;
            let row = 2 * (s & 1) + ((s >> 1) & 1);
            for col in 0..4 {
                let partner = rest | (col >> 1) | ((col & 1) << 1);
                rho[(row, col)] += amp * psi[partner].conj();
            }
        }
        Ok(rho)
    }

    pub fn correlators(&self, t: f64) -> Result<SpinCorrelators> {
        let rho = self.two_site_density(t)?;
        let expect = |a: usize, b: usize| (rho * kron(&pauli(a), &pauli(b))).trace().re;
        Ok(SpinCorrelators {
            mz: 0.5 * (expect(3, 0) + expect(0, 3)),
            sxx: expect(1, 1),
            syy: expect(2, 2),
            szz: expect(3, 3),
        })
    }

    /// The two-site state as an X-state. Entries outside the X pattern must
    /// vanish; the imaginary part of ρ14 (the σxσy correlation) is dropped.
    pub fn two_site_rdm(&self, t: f64) -> Result<XState> {
        let rho = self.two_site_density(t)?;
        let leak = (0..4)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, c)| r != c && r + c != 3)
            .map(|(r, c)| rho[(r, c)].norm())
            .fold(0.0, f64::max);
        if leak > X_LEAK_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "reduced state is not of X form (off-pattern entry {leak:.3e})"
            )));
        }
        let c = self.correlators(t)?;
        XState::from_bloch(c.mz, c.sxx, c.syy, c.szz)
    }
}

pub fn ed_build(params: &ModelParams) -> Result<EdState> {
    EdState::build(params)
}

pub fn ed_two_site_rdm(state: &EdState, t: f64) -> Result<XState> {
    state.two_site_rdm(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_even_ground(n: usize, j: f64, gamma: f64, h: f64) -> f64 {
        let even: Vec<usize> = (0..1usize << n)
            .filter(|s| s.count_ones() % 2 == 0)
            .collect();
        let mut pos = vec![usize::MAX; 1 << n];
        for (i, &s) in even.iter().enumerate() {
            pos[s] = i;
        }
        let d = even.len();
        let mut m = DMatrix::<f64>::zeros(d, d);
        for (col, &s) in even.iter().enumerate() {
            let mut e = vec![Complex64::new(0.0, 0.0); 1 << n];
            e[s] = Complex64::new(1.0, 0.0);
            for (t, a) in apply_hamiltonian(n, j, gamma, h, &e).iter().enumerate() {
                if a.norm() > 0.0 {
                    m[(pos[t], col)] = a.re;
                }
            }
        }
        SymmetricEigen::new(m).eigenvalues.min()
    }

    #[test]
    fn sector_sizes() {
        assert_eq!(Sector::new(2).dim(), 2);
        assert_eq!(Sector::new(4).dim(), 4);
        let s = Sector::new(12);
        let covered: usize = s.orbit_len.iter().sum();
        assert_eq!(covered, 1 << 11);
    }

    #[test]
    fn reduced_matrix_is_symmetric() {
        let s = Sector::new(10);
        let m = s.hamiltonian(1.0, 0.4, 0.8);
        assert!((&m - m.transpose()).amax() < 1e-14);
    }

    #[test]
    fn reduced_ground_matches_dense_even_sector() {
        for &(n, g, h) in &[(4, 1.0, 0.7), (6, 0.5, 1.3), (8, 0.3, 0.2), (8, 1.0, 1.0)] {
            let ed = EdState::from_couplings(n, 1.0, g, h, h).unwrap();
            let dense = dense_even_ground(n, 1.0, g, h);
            assert!((ed.ground_energy() - dense).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn ground_state_solves_full_hamiltonian() {
        let ed = EdState::from_couplings(4, 1.0, 1.0, 2.0, 2.0).unwrap();
        assert!(ed.ground_residual() < 1e-10);
        assert!(ed.ground_energy() < -8.0);
        let ed = EdState::from_couplings(10, 1.0, 0.5, 0.7, 1.3).unwrap();
        assert!(ed.ground_residual() < 1e-10);
    }

    #[test]
    fn two_site_bell_pair() {
        let ed = EdState::from_couplings(2, 1.0, 1.0, 0.0, 0.0).unwrap();
        let c = ed.correlators(0.0).unwrap();
        assert!((c.sxx - 1.0).abs() < 1e-12);
        assert!(c.mz.abs() < 1e-12);
    }

    #[test]
    fn strong_field_is_polarised() {
        let ed = EdState::from_couplings(8, 1.0, 1.0, 50.0, 50.0).unwrap();
        let rho = ed.two_site_density(0.0).unwrap();
        assert!((rho[(0, 0)].re - 1.0).abs() < 1e-3);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conserves_norm_and_energy() {
        let ed = EdState::from_couplings(8, 1.0, 0.7, 0.7, 1.3).unwrap();
        let e0 = ed.energy(0.0).unwrap();
        for k in 0..=20 {
            let t = k as f64;
            assert!((ed.norm(t).unwrap() - 1.0).abs() < 1e-12);
            assert!((ed.energy(t).unwrap() - e0).abs() < 1e-10);
        }
    }

    #[test]
    fn reduced_state_has_x_form() {
        let ed = EdState::from_couplings(8, 1.0, 1.0, 0.7, 1.0).unwrap();
        for t in [0.0, 0.5, 3.0, 11.0] {
            let x = ed.two_site_rdm(t).unwrap();
            assert!(x.eigenvalues().iter().all(|&l| l > -1e-10));
        }
    }

    #[test]
    fn size_guards() {
        assert!(matches!(
            EdState::from_couplings(16, 1.0, 1.0, 0.7, 1.0),
            Err(Error::EdSize(16))
        ));
        assert!(EdState::from_couplings(7, 1.0, 1.0, 0.7, 1.0).is_err());
        assert!(EdState::from_couplings(4, 1.0, 1.0, 0.7, 1.0)
            .unwrap()
            .evolved(-1.0)
            .is_err());
    }
}
