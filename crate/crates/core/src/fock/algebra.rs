use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::basis::FockBasis;
use super::operators::{build_generators, Generators};
use super::report::CheckReport;
use crate::linalg::{CMatrix, Lu, C64, ZERO};

/// Generator indices in [`Generators::names`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    NA = 0,
    NQ = 1,
    NAQ = 2,
    AX = 3,
    AY = 4,
}

/// `[lhs, rhs] = coefficient * result` as printed (`result = None` for 0).
#[derive(Clone, Copy, Debug)]
pub struct PrintedRelation {
    pub lhs: Gen,
    pub rhs: Gen,
    pub coefficient: C64,
    pub result: Option<Gen>,
}

const fn rel(lhs: Gen, rhs: Gen, re: f64, im: f64, result: Option<Gen>) -> PrintedRelation {
    PrintedRelation {
        lhs,
        rhs,
        coefficient: C64::new(re, im),
        result,
    }
}

/// The commutation table in its printed form.
pub const PRINTED_TABLE: [PrintedRelation; 8] = [
    rel(Gen::NA, Gen::NQ, 0.0, 0.0, None),
    rel(Gen::NA, Gen::NAQ, 0.0, 0.0, None),
    rel(Gen::NA, Gen::AX, 0.0, -1.0, Some(Gen::AY)),
    rel(Gen::NA, Gen::AY, 0.0, 1.0, Some(Gen::AY)),
    rel(Gen::NQ, Gen::AX, 0.0, 1.0, Some(Gen::AY)),
    rel(Gen::NQ, Gen::AY, 0.0, -1.0, Some(Gen::AX)),
    rel(Gen::NAQ, Gen::AX, 0.0, -2.0, Some(Gen::AY)),
    rel(Gen::NAQ, Gen::AY, 0.0, 2.0, Some(Gen::AX)),
];

/// Tolerance for commutator identities.
pub const COMMUTATOR_TOLERANCE: f64 = 1e-12;

/// Least-squares expansion of a commutator in the generators.
#[derive(Clone, Debug)]
pub struct Expansion {
    /// Coefficients in [`Generators::names`] order; generators that are
    /// linearly dependent on earlier ones get 0.
    pub coefficients: [C64; 5],
    /// `max |commutator - sum c_k G_k|`.
    pub residual: f64,
}

impl Expansion {
    /// Human-readable linear combination, e.g. `1i*A_x`.
    pub fn describe(&self) -> String {
        let names = Generators::names();
        let mut terms = Vec::new();
        for (c, name) in self.coefficients.iter().zip(names) {
            if c.norm() > 1e-9 {
                terms.push(format!("{}*{}", format_coefficient(*c), name));
            }
        }
        if terms.is_empty() {
            String::from("0")
        } else {
            terms.join(" + ")
        }
    }
}

fn format_coefficient(c: C64) -> String {
    let r = |x: f64| if (x - x.round()).abs() < 1e-9 { format!("{}", x.round()) } else { format!("{x:.9}") };
    if c.im.abs() < 1e-9 {
        r(c.re)
    } else if c.re.abs() < 1e-9 {
        format!("{}i", r(c.im))
    } else {
        format!("({}{:+}i)", r(c.re), c.im)
    }
}

/// Fits `m` by the generators, with greedy removal of dependent ones
/// (`N_AQ = N_A - N_Q` when `N = 1`). Order of preference: `A_x, A_y,
/// N_AQ, N_A, N_Q`.
pub fn expand(m: &CMatrix, gens: &Generators) -> Expansion {
    let all = gens.as_array();
    let order = [3usize, 4, 2, 0, 1];
    let mut chosen: Vec<usize> = Vec::new();
    for &k in &order {
        let mut trial = chosen.clone();
        trial.push(k);
        let gram = gram(&trial, &all);
        let independent = Lu::new(&gram).is_some_and(|lu| {
            let det = lu.determinant().norm();
            let scale: f64 = trial.iter().map(|&i| all[i].inner(all[i]).re).product();
            det > 1e-10 * scale
        });
        if independent {
            chosen = trial;
        }
    }
    let g = gram(&chosen, &all);
    let rhs: Vec<C64> = chosen.iter().map(|&i| all[i].inner(m)).collect();
    let sol = Lu::new(&g).expect("independent set").solve_vec(&rhs);
    let mut coefficients = [ZERO; 5];
    let mut fit = CMatrix::zeros(m.dim());
    for (&i, c) in chosen.iter().zip(&sol) {
        coefficients[i] = *c;
        fit = &fit + &all[i].scale(*c);
    }
    Expansion {
        coefficients,
        residual: (m - &fit).max_abs(),
    }
}

fn gram(idx: &[usize], all: &[&CMatrix; 5]) -> CMatrix {
    CMatrix::from_fn(idx.len(), |i, j| all[idx[i]].inner(all[idx[j]]))
}

/// One row of the commutator table: the printed right-hand side and the
/// measured one.
#[derive(Clone, Debug)]
pub struct CommutatorEntry {
    pub relation: PrintedRelation,
    pub label: String,
    pub printed: String,
    pub measured: Expansion,
    /// `max |[X, Y] - printed|`.
    pub printed_residual: f64,
}

pub fn commutator_table(basis: &FockBasis) -> Vec<CommutatorEntry> {
    let gens = build_generators(basis);
    let all = gens.as_array();
    let names = Generators::names();
    PRINTED_TABLE
        .iter()
        .map(|rel| {
            let c = all[rel.lhs as usize].commutator(all[rel.rhs as usize]);
            let printed_matrix = match rel.result {
                Some(r) => all[r as usize].scale(rel.coefficient),
                None => CMatrix::zeros(basis.dim()),
            };
            let printed = match rel.result {
                Some(r) => format!("{}*{}", format_coefficient(rel.coefficient), names[r as usize]),
                None => String::from("0"),
            };
            CommutatorEntry {
                relation: *rel,
                label: format!("[{},{}]", names[rel.lhs as usize], names[rel.rhs as usize]),
                printed,
                measured: expand(&c, &gens),
                printed_residual: (&c - &printed_matrix).max_abs(),
            }
        })
        .collect()
}

/// Per relation: an informational comparison with the printed right-hand
/// side, and an asserted check that the measured bracket closes on the
/// generators.
pub fn commutator_table_check(basis: &FockBasis) -> Vec<CheckReport> {
    let tag = format!("N={},cap={}", basis.n_bath(), basis.max_total());
    let mut out = Vec::new();
    for e in commutator_table(basis) {
        let agrees = e.printed_residual <= COMMUTATOR_TOLERANCE;
        out.push(
            CheckReport::new(
                format!("commutator_printed{}[{tag}]", e.label),
                e.printed_residual,
                COMMUTATOR_TOLERANCE,
                format!(
                    "printed {} = {}; measured {}{}",
                    e.label,
                    e.printed,
                    e.measured.describe(),
                    if agrees { "" } else { "; MISMATCH with printed table" }
                ),
            )
            .informational(),
        );
        out.push(CheckReport::new(
            format!("commutator_closure{}[{tag}]", e.label),
            e.measured.residual,
            COMMUTATOR_TOLERANCE,
            format!("{} = {}", e.label, e.measured.describe()),
        ));
    }
    let gens = build_generators(basis);
    let herm = gens.as_array().iter().map(|m| m.hermiticity_residual()).fold(0.0, f64::max);
    out.push(CheckReport::new(
        format!("generators_hermitian[{tag}]"),
        herm,
        COMMUTATOR_TOLERANCE,
        "N_A, N_Q, N_AQ, A_x, A_y",
    ));
    out
}
