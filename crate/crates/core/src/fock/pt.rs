use alloc::format;
use alloc::vec::Vec;


use super::basis::FockBasis;
use super::operators::build_h_nonhermitian;
use super::report::CheckReport;
use crate::closed_form::energy_spectrum;
use crate::linalg::{dot, eigenvector_near, norm, CMatrix, C64};
use crate::params::{ModelParams, RegimeKind};

/// Tolerance for the PT eigenstate relation in the unbroken regime.
pub const PT_EIGEN_TOLERANCE: f64 = 1e-10;
/// Largest antilinear overlap that still counts as "not proportional".
pub const PT_OVERLAP_CEILING: f64 = 0.99;

/// `PT psi = P conj(psi)` with `P = diag((-1)^{sum n})`.
pub fn apply_pt(parity: &[f64], psi: &[C64]) -> Vec<C64> {
    psi.iter().zip(parity).map(|(z, p)| z.conj() * *p).collect()
}

/// `|<psi|PT psi>| / <psi|psi>`; equals 1 exactly when `PT psi` is a phase
/// multiple of `psi`.
pub fn pt_overlap(parity: &[f64], psi: &[C64]) -> f64 {
    let image = apply_pt(parity, psi);
    dot(psi, &image).norm() / dot(psi, psi).re
}

/// Rotates `psi` so that its largest-magnitude entry is real and positive,
/// and normalizes it.
pub fn fix_gauge(psi: &[C64]) -> Vec<C64> {
    let lead = psi
        .iter()
        .copied()
        .fold(C64::new(0.0, 0.0), |best, z| if z.norm() > best.norm() { z } else { best });
    let n = norm(psi);
    let phase = if lead.norm() > 0.0 { lead.conj() / lead.norm() } else { C64::new(1.0, 0.0) };
    psi.iter().map(|z| z * phase / n).collect()
}

/// First excited eigenvectors `(psi+, psi-)` of `H` on the basis, for the
/// eigenvalues `nu +- sqrt(N) sqrt(g^2 - kappa^2)`.
pub fn first_excited_states(h: &CMatrix, params: &ModelParams) -> [Vec<C64>; 2] {
    let (ep, em) = energy_spectrum(params, 1);
    [fix_gauge(&eigenvector_near(h, ep)), fix_gauge(&eigenvector_near(h, em))]
}

pub fn pt_check(basis: &FockBasis, params: &ModelParams) -> Vec<CheckReport> {
    let h = build_h_nonhermitian(basis, params).matrix;
    let parity = basis.parity();
    let p = CMatrix::real_diag(&parity);
    let commuted = p.matmul(&h.conj()).matmul(&p);
    let tag = format!("N={},cap={},g={},kappa={}", basis.n_bath(), basis.max_total(), params.g, params.kappa);
    let mut out = Vec::new();
    out.push(CheckReport::new(
        format!("pt_commutation[{tag}]"),
        (&commuted - &h).max_abs(),
        0.0,
        "P conj(H) P - H, exact",
    ));

    let regime = params.regime();
    let states = first_excited_states(&h, params);
    for (label, psi) in ["+", "-"].iter().zip(&states) {
        let eig_residual = {
            let (ep, em) = energy_spectrum(params, 1);
            let e = if *label == "+" { ep } else { em };
            let hv = h.mul_vec(psi);
            hv.iter().zip(psi).map(|(a, b)| (a - b * e).norm()).fold(0.0, f64::max)
        };
        let overlap = pt_overlap(&parity, psi);
        match regime.kind {
            RegimeKind::Unbroken => {
                let image = apply_pt(&parity, psi);
                let defect = image.iter().zip(psi).map(|(a, b)| (a + b).norm()).fold(0.0, f64::max);
                out.push(CheckReport::new(
                    format!("pt_eigenstate{label}[{tag}]"),
                    defect.max(eig_residual),
                    PT_EIGEN_TOLERANCE,
                    format!("PT psi = -psi; eigen residual {eig_residual:.3e}; overlap {overlap:.12}"),
                ));
            }
            RegimeKind::Broken => {
                out.push(CheckReport::new(
                    format!("pt_not_eigenstate{label}[{tag}]"),
                    overlap,
                    PT_OVERLAP_CEILING,
                    format!(
                        "|<psi|PT psi>|/<psi|psi> = {overlap:.6}, defect {:.6}; eigen residual {eig_residual:.3e}",
                        1.0 - overlap
                    ),
                ));
            }
            RegimeKind::Exceptional => {
                out.push(
                    CheckReport::new(
                        format!("pt_exceptional{label}[{tag}]"),
                        1.0 - overlap,
                        1.0,
                        format!("eigenvectors coalesce; overlap {overlap:.6}"),
                    )
                    .informational(),
                );
            }
        }
    }
    out
}
