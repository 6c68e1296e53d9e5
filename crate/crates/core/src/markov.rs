//! Metropolis chains, Boltzmann distributions and the spectral data of the
//! symmetrized transition matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

const STOCHASTIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarkovError {
    #[error("number of state bits must be at least 1")]
    NoStateBits,
    #[error("energy E({state}) = {value} must be finite and non-negative")]
    BadEnergy { state: usize, value: f64 },
    #[error("neighborhood function is not symmetric at ({0}, {1})")]
    AsymmetricNeighbors(usize, usize),
    #[error(
        "Upper Bound on Number of Neighbors {given} is below the largest neighbor count {required}"
    )]
    UpBdNeigTooSmall { given: f64, required: usize },
    #[error("matrix of dimension {ns} has {len} entries")]
    Shape { ns: usize, len: usize },
    #[error("column {column} is not a probability distribution (sum {sum})")]
    NotStochastic { column: usize, sum: f64 },
    #[error("inverse temperature {0} must be finite and non-negative")]
    BadBeta(f64),
    #[error("eigenvalue gap is zero (|m_1| = {0})")]
    ZeroGap(f64),
    #[error("distribution is not a detailed balance (deviation {0:e})")]
    BrokenDetailedBalance(f64),
    #[error("Delta Beta Per Unit Time must be > 0 (got {0})")]
    BadDeltaBeta(f64),
    #[error("Number of Betas must be ≥ 2")]
    TooFewBetas,
}

/// A minimization problem over `2^nb` states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    nb: usize,
    energy: Vec<f64>,
    neig: Vec<bool>,
    up_bd_neig: f64,
}

impl ProblemSpec {
    pub fn new(
        nb: usize,
        energy: impl Fn(usize) -> f64,
        neig: impl Fn(usize, usize) -> bool,
        up_bd_neig: f64,
    ) -> Result<Self, MarkovError> {
        if nb == 0 {
            return Err(MarkovError::NoStateBits);
        }
        let ns = 1usize << nb;
        let energy: Vec<f64> = (0..ns).map(&energy).collect();
        if let Some((state, &value)) = energy
            .iter()
            .enumerate()
            .find(|(_, e)| !(e.is_finite() && **e >= 0.0))
        {
            return Err(MarkovError::BadEnergy { state, value });
        }
        let mut table = vec![false; ns * ns];
        for x in 0..ns {
            for y in 0..ns {
                table[x * ns + y] = neig(x, y);
            }
        }
        for x in 0..ns {
            for y in 0..x {
                if table[x * ns + y] != table[y * ns + x] {
                    return Err(MarkovError::AsymmetricNeighbors(x, y));
                }
            }
        }
        // Column counts include the diagonal, as the bound is written.
        let required = (0..ns)
            .map(|y| (0..ns).filter(|&x| table[x * ns + y]).count())
            .max()
            .unwrap_or(0);
        if !(up_bd_neig.is_finite() && up_bd_neig >= required as f64 && up_bd_neig > 0.0) {
            return Err(MarkovError::UpBdNeigTooSmall {
                given: up_bd_neig,
                required,
            });
        }
        Ok(ProblemSpec {
            nb,
            energy,
            neig: table,
            up_bd_neig,
        })
    }

    /// `E(x) = (x − NS/2)²` with neighbors `|x − y| ≤ 1`.
    pub fn qusann_default(nb: usize, up_bd_neig: f64) -> Result<Self, MarkovError> {
        let half = (1usize << nb.min(63)) as f64 / 2.0;
        Self::new(
            nb,
            |x| (x as f64 - half).powi(2),
            |x, y| x.abs_diff(y) <= 1,
            up_bd_neig,
        )
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn num_states(&self) -> usize {
        1 << self.nb
    }

    pub fn energy(&self, x: usize) -> f64 {
        self.energy[x]
    }

    pub fn neighbors(&self, x: usize, y: usize) -> bool {
        self.neig[x * self.num_states() + y]
    }

    pub fn up_bd_neig(&self) -> f64 {
        self.up_bd_neig
    }
}

/// Column-stochastic matrix with entries `M(y|x)` (row `y`, column `x`).
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    ns: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    /// `entries` is row-major: `entries[y * ns + x] = M(y|x)`.
    pub fn new(ns: usize, entries: Vec<f64>) -> Result<Self, MarkovError> {
        if entries.len() != ns * ns || ns == 0 {
            return Err(MarkovError::Shape {
                ns,
                len: entries.len(),
            });
        }
        for x in 0..ns {
            let col = (0..ns).map(|y| entries[y * ns + x]);
            let sum: f64 = col.clone().sum();
            if col.clone().any(|p| p.is_nan() || p < 0.0) || (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(MarkovError::NotStochastic { column: x, sum });
            }
        }
        Ok(TransitionMatrix { ns, entries })
    }

    pub fn identity(ns: usize) -> Self {
        let mut entries = vec![0.0; ns * ns];
        for i in 0..ns {
            entries[i * ns + i] = 1.0;
        }
        TransitionMatrix { ns, entries }
    }

    pub fn dim(&self) -> usize {
        self.ns
    }

    /// Number of bits, `log2(dim)`. Panics if the dimension is not a power of two.
    pub fn nb(&self) -> usize {
        assert!(
            self.ns.is_power_of_two(),
            "dimension {} is not 2^nb",
            self.ns
        );
        self.ns.trailing_zeros() as usize
    }

    /// `M(y|x)`.
    pub fn get(&self, y: usize, x: usize) -> f64 {
        self.entries[y * self.ns + x]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.ns, self.ns, &self.entries)
    }
}

/// Metropolis matrix: `M(y|x) = neig(x,y)/upBdNeig · min{1, e^{−β[E(y)−E(x)]}}`
/// off the diagonal, the diagonal completing each column to one.
pub fn metropolis(spec: &ProblemSpec, beta: f64) -> Result<TransitionMatrix, MarkovError> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(MarkovError::BadBeta(beta));
    }
    let ns = spec.num_states();
    let mut m = vec![0.0; ns * ns];
    for x in 0..ns {
        let mut off = 0.0;
        for y in (0..ns).filter(|&y| y != x) {
            if spec.neighbors(x, y) {
                let accept = (-beta * (spec.energy(y) - spec.energy(x))).exp().min(1.0);
                let p = accept / spec.up_bd_neig();
                m[y * ns + x] = p;
                off += p;
            }
        }
        m[x * ns + x] = 1.0 - off;
    }
    TransitionMatrix::new(ns, m)
}

/// Normalized Boltzmann factor `e^{−βE(x)}/Z_β`.
pub fn boltzmann(spec: &ProblemSpec, beta: f64) -> Vec<f64> {
    // Shifting by the minimum energy leaves π unchanged and avoids underflow.
    let emin = spec.energy.iter().cloned().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = spec
        .energy
        .iter()
        .map(|e| (-beta * (e - emin)).exp())
        .collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|v| v / z).collect()
}

/// Inverse-temperature ladder `β_j = j·Δβ`, `j = 0..=t_f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealingSchedule {
    delta_beta: f64,
    t_f: usize,
}

impl AnnealingSchedule {
    pub fn new(delta_beta: f64, num_betas: usize) -> Result<Self, MarkovError> {
        if !(delta_beta.is_finite() && delta_beta > 0.0) {
            return Err(MarkovError::BadDeltaBeta(delta_beta));
        }
        if num_betas < 2 {
            return Err(MarkovError::TooFewBetas);
        }
        Ok(AnnealingSchedule {
            delta_beta,
            t_f: num_betas - 1,
        })
    }

    pub fn delta_beta(&self) -> f64 {
        self.delta_beta
    }

    pub fn t_f(&self) -> usize {
        self.t_f
    }

    pub fn num_betas(&self) -> usize {
        self.t_f + 1
    }

    pub fn beta(&self, j: usize) -> f64 {
        j as f64 * self.delta_beta
    }

    pub fn betas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.t_f).map(|j| self.beta(j))
    }
}

/// Spectrum of `M_sym`, sorted `m_0 = 1 > |m_1| ≥ |m_2| ≥ …`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    /// `φ_j ∈ [0, π/2]` with `cos φ_j = |m_j|`.
    pub phis: Vec<f64>,
    /// `η_j ∈ {0, π}` with `m_j = e^{iη_j} cos φ_j`.
    pub etas: Vec<f64>,
    /// `δ = 1 − |m_1|`.
    pub gap: f64,
    /// Orthonormal eigenvectors of `M_sym`; `eigenvectors[0]` is `√π` (positive).
    pub eigenvectors: Vec<Vec<f64>>,
}

/// `M_sym(y|x) = √(M(y|x)·M(x|y))`.
pub fn symmetrized(m: &TransitionMatrix) -> DMatrix<f64> {
    let ns = m.dim();
    DMatrix::from_fn(ns, ns, |y, x| (m.get(y, x) * m.get(x, y)).sqrt())
}

/// Diagonalizes `M_sym`. `pi` must be a detailed balance of `m`; this is
/// checked through `M_sym = D^{−1/2} M D^{1/2}`.
pub fn spectral(m: &TransitionMatrix, pi: &[f64]) -> Result<SpectralData, MarkovError> {
    let ns = m.dim();
    let sym = symmetrized(m);
    let similar = DMatrix::from_fn(ns, ns, |y, x| m.get(y, x) * pi[x].sqrt() / pi[y].sqrt());
    let deviation = (&sym - &similar).amax();
    if deviation.is_nan() || deviation > 1e-9 {
        return Err(MarkovError::BrokenDetailedBalance(deviation));
    }

    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..ns).collect();
    order.sort_by(|&a, &b| {
        let (va, vb) = (eig.eigenvalues[a], eig.eigenvalues[b]);
        vb.abs()
            .total_cmp(&va.abs())
            .then_with(|| vb.total_cmp(&va))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().cloned().collect())
        .collect();
    if eigenvectors[0].iter().sum::<f64>() < 0.0 {
        eigenvectors[0].iter_mut().for_each(|v| *v = -*v);
    }

    let m1 = eigenvalues.get(1).map_or(0.0, |v| v.abs());
    let gap = 1.0 - m1;
    if gap <= 1e-12 {
        return Err(MarkovError::ZeroGap(m1));
    }
    let phis = eigenvalues
        .iter()
        .map(|v| v.abs().min(1.0).acos())
        .collect();
    let etas = eigenvalues
        .iter()
        .map(|&v| if v < 0.0 { std::f64::consts::PI } else { 0.0 })
        .collect();
    Ok(SpectralData {
        eigenvalues,
        phis,
        etas,
        gap,
        eigenvectors,
    })
}
