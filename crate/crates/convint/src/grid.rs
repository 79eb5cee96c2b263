use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform periodic grid on the d-dimensional torus [0, 2π)^d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusGrid {
    dim: usize,
    n_per_axis: usize,
}

impl TorusGrid {
    pub fn new(dim: usize, n_per_axis: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidGrid(format!("dim must be 2 or 3, got {dim}")));
        }
        if n_per_axis < 4 || n_per_axis % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "n_per_axis must be an even integer >= 4, got {n_per_axis}"
            )));
        }
        Ok(Self { dim, n_per_axis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n_per_axis
    }

    /// Total number of grid points, n_per_axis^dim.
    pub fn len(&self) -> usize {
        self.n_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing 2π/n.
    pub fn h(&self) -> f64 {
        std::f64::consts::TAU / self.n_per_axis as f64
    }

    /// Volume of the torus, (2π)^d.
    pub fn volume(&self) -> f64 {
        std::f64::consts::TAU.powi(self.dim as i32)
    }

    /// Physical coordinates of the flat index `idx` (row-major, last axis fastest).
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let n = self.n_per_axis;
        let h = self.h();
        let mut out = [0.0; 3];
        let mut rem = idx;
        for a in (0..self.dim).rev() {
            out[a] = (rem % n) as f64 * h;
            rem /= n;
        }
        out
    }

    /// Signed wavenumber for DFT bin `i` along one axis.
    pub fn wavenumber(&self, i: usize) -> i64 {
        let n = self.n_per_axis as i64;
        let i = i as i64;
        if i <= n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Largest mode magnitude representable without aliasing (exclusive bound n/2).
    pub fn nyquist(&self) -> i64 {
        (self.n_per_axis / 2) as i64
    }

    /// Flat index of the DFT bin holding the signed mode `k` (componentwise wrap).
    pub fn mode_index(&self, k: &[i64]) -> Result<usize> {
        let n = self.n_per_axis as i64;
        let mut idx = 0usize;
        for a in 0..self.dim {
            let ka = k[a];
            if ka.abs() >= self.nyquist() {
                return Err(Error::Aliasing { mode: ka, nyquist: self.nyquist() });
            }
            let bin = ka.rem_euclid(n) as usize;
            idx = idx * self.n_per_axis + bin;
        }
        Ok(idx)
    }
}

/// Uniform time samples t_i = i T/(n_samples-1) covering [0, T].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t_final: f64,
    n_samples: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, n_samples: usize) -> Result<Self> {
        if !(t_final > 0.0) || !t_final.is_finite() {
            return Err(Error::InvalidParameter(format!("t_final must be positive, got {t_final}")));
        }
        if n_samples < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_samples must be >= 2, got {n_samples}"
            )));
        }
        Ok(Self { t_final, n_samples })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn dt(&self) -> f64 {
        self.t_final / (self.n_samples - 1) as f64
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t_final * i as f64 / (self.n_samples - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.time(i)).collect()
    }

    /// Sample indices away from the one-sided closures at both ends.
    pub fn interior(&self) -> std::ops::Range<usize> {
        if self.n_samples <= 4 {
            0..self.n_samples
        } else {
            2..self.n_samples - 2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(TorusGrid::new(1, 16).is_err());
        assert!(TorusGrid::new(2, 3).is_err());
        assert!(TorusGrid::new(2, 7).is_err());
        assert!(TorusGrid::new(4, 16).is_err());
        assert!(TorusGrid::new(3, 8).is_ok());
    }

    #[test]
    fn coords_and_mode_index_roundtrip() {
        let g = TorusGrid::new(2, 8).unwrap();
        assert_eq!(g.len(), 64);
        let c = g.coords(8 + 3);
        assert!((c[0] - g.h()).abs() < 1e-15);
        assert!((c[1] - 3.0 * g.h()).abs() < 1e-15);

        assert_eq!(g.mode_index(&[1, 0]).unwrap(), 8);
        assert_eq!(g.mode_index(&[-1, 0]).unwrap(), 7 * 8);
        assert_eq!(g.wavenumber(7), -1);
        assert!(g.mode_index(&[4, 0]).is_err());
    }

    #[test]
    fn time_grid_samples() {
        let tg = TimeGrid::new(2.0, 5).unwrap();
        assert!((tg.dt() - 0.5).abs() < 1e-15);
        assert_eq!(tg.times().len(), 5);
        assert!((tg.time(4) - 2.0).abs() < 1e-15);
        assert_eq!(tg.interior(), 2..3);
    }
}
