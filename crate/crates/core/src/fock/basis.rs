use alloc::vec::Vec;

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use crate::entropy::{BipartiteLabel, ModeLayout};
use crate::error::{Error, Result};
use crate::linalg::{re, C64, ZERO};

/// Occupation-number basis of modes `(a, q_1, ..., q_N)` with total
/// excitation at most `max_total`, in ascending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    n_bath: usize,
    max_total: usize,
    states: Vec<Vec<u8>>,
}

impl FockBasis {
    pub fn new(n_bath: usize, max_total: usize) -> Result<Self> {
        if n_bath == 0 {
            return Err(Error::InvalidParameter {
                name: "n_bath",
                reason: "bath size must be at least 1",
            });
        }
        if !(1..=2).contains(&max_total) {
            return Err(Error::UnsupportedTruncation { max_total });
        }
        let mut states = Vec::new();
        let mut current = alloc::vec![0u8; n_bath + 1];
        fill(&mut states, &mut current, 0, max_total);
        Ok(Self {
            n_bath,
            max_total,
            states,
        })
    }

    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    /// Number of modes, `N + 1`.
    pub fn modes(&self) -> usize {
        self.n_bath + 1
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<u8>] {
        &self.states
    }

    pub fn index_of(&self, occupation: &[u8]) -> Option<usize> {
        self.states
            .binary_search_by(|s| s.as_slice().cmp(occupation))
            .ok()
    }

    /// Basis state with a single excitation in `mode`.
    pub fn single(&self, mode: usize) -> usize {
        let mut occ = alloc::vec![0u8; self.modes()];
        occ[mode] = 1;
        self.index_of(&occ).expect("single excitations are always present")
    }

    /// `|1_a 0_q>` as a vector.
    pub fn system_excited(&self) -> Vec<C64> {
        let mut v = alloc::vec![ZERO; self.dim()];
        v[self.single(0)] = re(1.0);
        v
    }

    /// `N^{-1/2} sum_i |0_a 1_i>` as a vector.
    pub fn symmetric_bath(&self) -> Vec<C64> {
        let mut v = alloc::vec![ZERO; self.dim()];
        let amp = re(1.0 / (self.n_bath as f64).sqrt());
        for mode in 1..=self.n_bath {
            v[self.single(mode)] = amp;
        }
        v
    }

    /// Orthonormal frame `[|1_a 0_q>, symmetric bath state]` of the sector
    /// that carries the first-excited dynamics.
    pub fn sector(&self) -> [Vec<C64>; 2] {
        [self.system_excited(), self.symmetric_bath()]
    }

    /// Embeds sector coefficients into the full basis.
    pub fn embed(&self, coefficients: [C64; 2]) -> Vec<C64> {
        let [e1, s] = self.sector();
        e1.iter()
            .zip(&s)
            .map(|(x, y)| coefficients[0] * x + coefficients[1] * y)
            .collect()
    }

    pub fn layout(&self) -> ModeLayout {
        ModeLayout::new(self.states.clone()).expect("basis labels are distinct")
    }

    pub fn system_vs_bath(&self) -> BipartiteLabel {
        BipartiteLabel::system_vs_bath(self.n_bath)
    }

    /// `(-1)^{sum n}` per basis state.
    pub fn parity(&self) -> Vec<f64> {
        self.states
            .iter()
            .map(|s| {
                let total: u32 = s.iter().map(|&n| n as u32).sum();
                if total.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect()
    }
}

fn fill(out: &mut Vec<Vec<u8>>, current: &mut Vec<u8>, mode: usize, budget: usize) {
    if mode == current.len() {
        out.push(current.clone());
        return;
    }
    for n in 0..=budget {
        current[mode] = n as u8;
        fill(out, current, mode + 1, budget - n);
    }
    current[mode] = 0;
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
