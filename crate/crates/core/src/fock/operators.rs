#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::basis::FockBasis;
use crate::closed_form::MetricSolution;
use crate::error::Result;
use crate::linalg::{re, CMatrix, C64, I};
use crate::params::ModelParams;

/// Dense matrix of an operator on a truncated Fock basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    pub basis: FockBasis,
    pub matrix: CMatrix,
}

impl FockOperator {
    pub fn new(basis: &FockBasis, matrix: CMatrix) -> Self {
        assert_eq!(basis.dim(), matrix.dim(), "operator does not match basis");
        Self {
            basis: basis.clone(),
            matrix,
        }
    }

    /// Compression to the `[|1_a 0_q>, symmetric bath]` sector.
    pub fn sector_block(&self) -> CMatrix {
        self.matrix.compress(&self.basis.sector())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.matrix.hermiticity_residual() <= tol
    }
}

/// `a_i^dagger a_j`. Total excitation is conserved, so the truncated space
/// is invariant and the matrix is exact.
pub fn hop(basis: &FockBasis, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(basis.dim());
    for (col, occ) in basis.states().iter().enumerate() {
        if occ[j] == 0 {
            continue;
        }
        let mut target = occ.clone();
        let mut amp = (occ[j] as f64).sqrt();
        target[j] -= 1;
        amp *= ((target[i] + 1) as f64).sqrt();
        target[i] += 1;
        let row = basis.index_of(&target).expect("number-conserving move stays in basis");
        m[(row, col)] += re(amp);
    }
    m
}

/// The five algebra generators.
#[derive(Clone, Debug)]
pub struct Generators {
    pub n_a: CMatrix,
    pub n_q: CMatrix,
    pub n_aq: CMatrix,
    pub a_x: CMatrix,
    pub a_y: CMatrix,
}

impl Generators {
    pub fn names() -> [&'static str; 5] {
        ["N_A", "N_Q", "N_AQ", "A_x", "A_y"]
    }

    pub fn as_array(&self) -> [&CMatrix; 5] {
        [&self.n_a, &self.n_q, &self.n_aq, &self.a_x, &self.a_y]
    }
}

/// `N_A = a^dag a`, `N_Q = sum q^dag q`,
/// `N_AQ = N_A - N_Q/N - (1/N) sum_{n != m} q_n^dag q_m`,
/// `A_x = N^{-1/2} sum (a^dag q_n + a q_n^dag)`,
/// `A_y = i N^{-1/2} sum (a^dag q_n - a q_n^dag)`.
pub fn build_generators(basis: &FockBasis) -> Generators {
    let n = basis.n_bath();
    let nf = n as f64;
    let n_a = hop(basis, 0, 0);
    let mut n_q = CMatrix::zeros(basis.dim());
    let mut cross = CMatrix::zeros(basis.dim());
    let mut up = CMatrix::zeros(basis.dim());
    for p in 1..=n {
        n_q = &n_q + &hop(basis, p, p);
        up = &up + &hop(basis, 0, p);
        for q in 1..=n {
            if p != q {
                cross = &cross + &hop(basis, p, q);
            }
        }
    }
    let down = up.adjoint();
    let n_aq = &(&n_a - &n_q.scale_re(1.0 / nf)) - &cross.scale_re(1.0 / nf);
    let s = 1.0 / nf.sqrt();
    let a_x = (&up + &down).scale_re(s);
    let a_y = (&up - &down).scale(I * s);
    Generators {
        n_a,
        n_q,
        n_aq,
        a_x,
        a_y,
    }
}

/// `H = nu (N_A + N_Q) + (g + kappa) sum a^dag q_n + (g - kappa) sum a q_n^dag`,
/// assembled from ladder terms.
pub fn build_h_nonhermitian(basis: &FockBasis, params: &ModelParams) -> FockOperator {
    let mut m = CMatrix::zeros(basis.dim());
    m = &m + &hop(basis, 0, 0).scale_re(params.nu);
    for p in 1..=basis.n_bath() {
        m = &m + &hop(basis, p, p).scale_re(params.nu);
        m = &m + &hop(basis, 0, p).scale_re(params.g + params.kappa);
        m = &m + &hop(basis, p, 0).scale_re(params.g - params.kappa);
    }
    FockOperator::new(basis, m)
}

/// Which `A_x` coefficient goes into the Hermitian Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coupling {
    /// Coefficient produced by the Dyson construction.
    True,
    /// The standalone closed-form expression, half of [`Coupling::True`].
    Printed,
    /// `True` rescaled by a factor.
    Scaled(f64),
}

impl Coupling {
    pub fn evaluate(self, solution: &MetricSolution, t: f64) -> f64 {
        match self {
            Coupling::True => solution.mu(t),
            Coupling::Printed => solution.mu_printed(t),
            Coupling::Scaled(f) => f * solution.mu(t),
        }
    }
}

/// `h(t) = nu N_A + nu N_Q + mu(t) A_x`.
pub fn build_h(t: f64, basis: &FockBasis, params: &ModelParams) -> Result<FockOperator> {
    build_h_with(t, basis, params, Coupling::True)
}

pub fn build_h_with(t: f64, basis: &FockBasis, params: &ModelParams, coupling: Coupling) -> Result<FockOperator> {
    let solution = MetricSolution::new(*params)?;
    let gens = build_generators(basis);
    Ok(FockOperator::new(basis, hermitian_from(&gens, params.nu, coupling.evaluate(&solution, t))))
}

pub(crate) fn hermitian_from(gens: &Generators, nu: f64, mu: f64) -> CMatrix {
    &(&gens.n_a + &gens.n_q).scale_re(nu) + &gens.a_x.scale_re(mu)
}

/// `H` written through the generators,
/// `nu N_A + nu N_Q + sqrt(N) g A_x - i sqrt(N) kappa A_y`.
pub fn h_from_generators(gens: &Generators, params: &ModelParams) -> CMatrix {
    let sn = params.sqrt_n();
    let mut m = (&gens.n_a + &gens.n_q).scale_re(params.nu);
    m = &m + &gens.a_x.scale_re(sn * params.g);
    &m + &gens.a_y.scale(C64::new(0.0, -sn * params.kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, ZERO};

    #[test]
    fn generators_in_sector() {
        for n in 1..=4 {
            let b = FockBasis::new(n, 2).unwrap();
            let g = build_generators(&b);
            for m in g.as_array() {
                assert!(m.hermiticity_residual() < 1e-12);
            }
            let naq = g.n_aq.compress(&b.sector());
            assert!((naq[(0, 0)].re - 1.0).abs() < 1e-12);
            assert!((naq[(1, 1)].re + 1.0).abs() < 1e-12);
            assert!(naq[(0, 1)].norm() < 1e-12);
            let ax = g.a_x.compress(&b.sector());
            assert!((ax[(0, 1)].re - 1.0).abs() < 1e-12 && (ax[(1, 0)].re - 1.0).abs() < 1e-12);
            let image = g.n_a.mul_vec(&{
                let mut v = alloc::vec![ZERO; b.dim()];
                v[0] = re(1.0);
                v
            });
            assert!(image.iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn ladder_and_generator_forms_agree() {
        let b = FockBasis::new(3, 2).unwrap();
        let p = ModelParams::broken_example(3);
        let direct = build_h_nonhermitian(&b, &p).matrix;
        let via = h_from_generators(&build_generators(&b), &p);
        assert!((&direct - &via).max_abs() < 1e-13);
    }

    #[test]
    fn sector_block_of_h() {
        let b = FockBasis::new(1, 1).unwrap();
        let p = ModelParams::unbroken_example(1);
        let blk = build_h_nonhermitian(&b, &p).sector_block();
        assert!((blk[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((blk[(0, 1)].re - 1.0).abs() < 1e-15);
        assert!((blk[(1, 0)].re - 0.4).abs() < 1e-15);
        let mut ev = eigenvalues(&blk);
        ev.sort_by(|a, c| a.re.total_cmp(&c.re));
        assert!((ev[1].re - (1.0 + 0.4f64.sqrt())).abs() < 1e-12);
        let hermitian = ModelParams { kappa: 0.0, ..p };
        assert_eq!(build_h_nonhermitian(&b, &hermitian).matrix.hermiticity_residual(), 0.0);
    }
}
