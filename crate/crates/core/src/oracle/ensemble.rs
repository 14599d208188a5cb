use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::measures::{XState, POSITIVITY_TOL};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// σ^0, σ^x, σ^y, σ^z for k = 0..4.
pub fn pauli(k: usize) -> Matrix2<Complex64> {
    match k {
        0 => Matrix2::new(C1, C0, C0, C1),
        1 => Matrix2::new(C0, C1, C1, C0),
        2 => Matrix2::new(C0, -CI, CI, C0),
        3 => Matrix2::new(C1, C0, C0, -C1),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Kronecker product, `a` acting on the high index bit.
pub fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Columns are the eigenvectors of σ^k (k = 1, 2, 3).
fn eigenbasis(k: usize) -> Matrix2<Complex64> {
    let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    match k {
        1 => Matrix2::new(s, s, s, -s),
        2 => Matrix2::new(s, s, s * CI, -s * CI),
        3 => Matrix2::identity(),
        _ => panic!("no eigenbasis for index {k}"),
    }
}

fn von_neumann(rho: &Matrix2<Complex64>) -> f64 {
    SymmetricEigen::new(*rho)
        .eigenvalues
        .iter()
        .map(|&l| if l > 0.0 { -l * l.log2() } else { 0.0 })
        .sum()
}

fn check_density(rho: &Matrix4<Complex64>) -> Result<()> {
    let herm = (rho - rho.adjoint()).norm();
    if herm > 1e-10 {
        return Err(Error::NotDensityMatrix(format!(
            "not Hermitian (|ρ − ρ†| = {herm:.3e})"
        )));
    }
    let tr = rho.trace();
    if (tr - C1).norm() > 1e-10 {
        return Err(Error::NotDensityMatrix(format!("trace {tr} ≠ 1")));
    }
    let min = SymmetricEigen::new(*rho)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -POSITIVITY_TOL {
        return Err(Error::NotPositive { eigenvalue: min });
    }
    Ok(())
}

/// Steered coherence (ℓ1, relative entropy) computed from its operational
/// definition: A measures σ^μ, B's conditional state is rotated into each
/// complementary eigenbasis σ^ν (ν ≠ μ), and the coherences are averaged
/// with weight ½ p_{μ,a}.
pub fn sqc_ensemble(rho: &Matrix4<Complex64>) -> Result<(f64, f64)> {
    check_density(rho)?;
    let id = pauli(0);
    let mut l1 = 0.0;
    let mut re = 0.0;
    for mu in 1..=3 {
        for sign in [1.0, -1.0] {
            let projector = (id + pauli(mu) * Complex64::from(sign)) * Complex64::from(0.5);
            let measured = kron(&projector, &id) * rho;
            let mut cond = Matrix2::<Complex64>::zeros();
            for a in 0..2 {
                for b in 0..2 {
                    for bp in 0..2 {
                        cond[(b, bp)] += measured[(2 * a + b, 2 * a + bp)];
                    }
                }
            }
            let p = cond.trace().re;
            if p <= 1e-15 {
                continue;
            }
            let cond = cond / Complex64::from(p);
            let entropy = von_neumann(&cond);
            for nu in (1..=3).filter(|&nu| nu != mu) {
                let u = eigenbasis(nu);
                let rotated = u.adjoint() * cond * u;
                let coh_l1 = rotated[(0, 1)].norm() + rotated[(1, 0)].norm();
                let diag = Matrix2::from_diagonal(&nalgebra::Vector2::new(
                    Complex64::from(rotated[(0, 0)].re),
                    Complex64::from(rotated[(1, 1)].re),
                ));
                let coh_re = von_neumann(&diag) - entropy;
                l1 += 0.5 * p * coh_l1;
                re += 0.5 * p * coh_re;
            }
        }
    }
    Ok((l1, re))
}

/// Σ over all sixteen Pauli pairs of |tr(ρ σ^s ⊗ σ^t)|.
pub fn mrq_pauli(rho: &Matrix4<Complex64>) -> f64 {
    let mut total = 0.0;
    for s in 0..4 {
        for t in 0..4 {
            total += (rho * kron(&pauli(s), &pauli(t))).trace().norm();
        }
    }
    total
}

/// Uniformly distributed physical X-state (rejection sampling on the Bloch cube).
pub fn random_xstate<R: Rng + ?Sized>(rng: &mut R) -> XState {
    loop {
        let mut draw = || rng.gen_range(-1.0..=1.0);
        let (mz, txx, tyy, tzz) = (draw(), draw(), draw(), draw());
        let x = XState::from_bloch_unchecked(mz, txx, tyy, tzz);
        if x.eigenvalues().iter().all(|&l| l >= 0.0) {
            return x;
        }
    }
}
