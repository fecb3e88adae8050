//! Gaussian atomic cloud: geometry, position sampling and structure factors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudGeometry {
    pub n_atoms: usize,
    /// rms inter-atom scale; the cloud itself has per-axis width `sigma * N^{1/3}`.
    pub sigma: f64,
    /// slope of the linear dispersion `w = c |k|`.
    pub c: f64,
}

impl CloudGeometry {
    pub fn new(n_atoms: usize, sigma: f64, c: f64) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::domain("CloudGeometry", 0.0, "n_atoms >= 1"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain("CloudGeometry", sigma, "sigma > 0"));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::domain("CloudGeometry", c, "c > 0"));
        }
        Ok(Self { n_atoms, sigma, c })
    }

    /// Unit geometry with `w_bar = 1`.
    pub fn natural(n_atoms: usize) -> Result<Self> {
        Self::new(n_atoms, 1.0, 1.0)
    }

    pub fn w_bar(&self) -> f64 {
        self.c / self.sigma
    }

    /// Per-axis standard deviation of the atom positions.
    pub fn cloud_width(&self) -> f64 {
        self.sigma * (self.n_atoms as f64).cbrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomPositions {
    pub positions: Vec<[f64; 3]>,
}

impl AtomPositions {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// All `|r_i - r_j|` with `i < j`.
    pub fn pair_distances(&self) -> Vec<f64> {
        let p = &self.positions;
        let mut d = Vec::with_capacity(p.len() * p.len().saturating_sub(1) / 2);
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let dx = p[i][0] - p[j][0];
                let dy = p[i][1] - p[j][1];
                let dz = p[i][2] - p[j][2];
                d.push((dx * dx + dy * dy + dz * dz).sqrt());
            }
        }
        d
    }
}

/// Independent isotropic Gaussian draws, deterministic in `seed`.
pub fn sample_positions(g: &CloudGeometry, seed: u64) -> AtomPositions {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, g.cloud_width()).expect("width is positive and finite");
    let positions = (0..g.n_atoms)
        .map(|_| [normal.sample(&mut rng), normal.sample(&mut rng), normal.sample(&mut rng)])
        .collect();
    AtomPositions { positions }
}

/// `G_N(k) = N exp(-k^2 sigma^2 N^{2/3} / 2)`.
pub fn structure_factor_continuum(g: &CloudGeometry, k: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::domain("structure_factor_continuum", k, "k >= 0"));
    }
    let w = g.cloud_width() * k;
    Ok(g.n_atoms as f64 * (-0.5 * w * w).exp())
}

/// Angular average of `|Σ_j exp(-i k·r_j)|^2`.
pub fn structure_factor_discrete_angular(p: &AtomPositions, k: f64) -> Result<f64> {
    structure_factor_from_distances(p.len(), &p.pair_distances(), k)
}

/// Same as [`structure_factor_discrete_angular`] from precomputed pair distances.
pub fn structure_factor_from_distances(n: usize, pair_distances: &[f64], k: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::domain("structure_factor_discrete_angular", k, "k >= 0"));
    }
    let off: f64 = pair_distances.iter().map(|&d| sinc(k * d)).sum();
    Ok(n as f64 + 2.0 * off)
}

/// `N + N(N-1) exp(-k^2 sigma^2 N^{2/3})`, the mean of the discrete structure factor over clouds.
pub fn ensemble_mean_structure_factor(g: &CloudGeometry, k: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::domain("ensemble_mean_structure_factor", k, "k >= 0"));
    }
    let n = g.n_atoms as f64;
    let w = g.cloud_width() * k;
    Ok(n + n * (n - 1.0) * (-w * w).exp())
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}
