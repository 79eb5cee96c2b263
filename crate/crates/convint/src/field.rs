use crate::error::{Error, Result};
use crate::grid::{TimeGrid, TorusGrid};
use serde::{Deserialize, Serialize};

/// Tensorial rank of a field on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank {
    Scalar,
    Vector,
    SymmetricTensor,
}

impl Rank {
    pub fn ncomp(&self, dim: usize) -> usize {
        match self {
            Rank::Scalar => 1,
            Rank::Vector => dim,
            Rank::SymmetricTensor => dim * (dim + 1) / 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rank::Scalar => "scalar",
            Rank::Vector => "vector",
            Rank::SymmetricTensor => "symmetric-tensor",
        }
    }
}

/// Component index of the (i, j) entry of a symmetric tensor, row-major upper triangle.
/// 2D: [xx, xy, yy]; 3D: [xx, xy, xz, yy, yz, zz].
pub fn sym_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    match dim {
        2 => [[0, 1], [usize::MAX, 2]][i][j],
        3 => [[0, 1, 2], [usize::MAX, 3, 4], [usize::MAX, usize::MAX, 5]][i][j],
        _ => unreachable!("dim is 2 or 3"),
    }
}

/// Assertion flags carried by a field; checked on demand, never updated automatically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFlags {
    pub trace_free: bool,
    pub divergence_free: bool,
}

/// Real samples of a scalar/vector/symmetric-tensor field on a periodic grid,
/// one contiguous buffer per component.
#[derive(Clone, Debug)]
pub struct PeriodicField {
    grid: TorusGrid,
    rank: Rank,
    comps: Vec<Vec<f64>>,
    pub flags: FieldFlags,
}

impl PeriodicField {
    pub fn zeros(grid: TorusGrid, rank: Rank) -> Self {
        let nc = rank.ncomp(grid.dim());
        Self { grid, rank, comps: vec![vec![0.0; grid.len()]; nc], flags: FieldFlags::default() }
    }

    pub fn from_components(grid: TorusGrid, rank: Rank, comps: Vec<Vec<f64>>) -> Result<Self> {
        if comps.len() != rank.ncomp(grid.dim()) {
            return Err(Error::Format(format!(
                "expected {} components, got {}",
                rank.ncomp(grid.dim()),
                comps.len()
            )));
        }
        for c in &comps {
            if c.len() != grid.len() {
                return Err(Error::Format(format!(
                    "component length {} does not match grid ({} points)",
                    c.len(),
                    grid.len()
                )));
            }
        }
        Ok(Self { grid, rank, comps, flags: FieldFlags::default() })
    }

    /// Sample a scalar field from a closure over physical coordinates.
    pub fn scalar_from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> f64 + Sync) -> Self {
        let mut out = Self::zeros(grid, Rank::Scalar);
        let vals: Vec<f64> =
            (0..grid.len()).map(|i| f(&grid.coords(i)[..grid.dim()])).collect();
        out.comps[0] = vals;
        out
    }

    /// Sample a vector field from a closure over physical coordinates.
    pub fn vector_from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> Vec<f64> + Sync) -> Self {
        let mut out = Self::zeros(grid, Rank::Vector);
        for i in 0..grid.len() {
            let v = f(&grid.coords(i)[..grid.dim()]);
            for (c, val) in v.iter().enumerate() {
                out.comps[c][i] = *val;
            }
        }
        out
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, c: usize) -> &[f64] {
        &self.comps[c]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.comps[c]
    }

    pub fn components(&self) -> &[Vec<f64>] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Vec<f64>> {
        self.comps
    }

    pub fn check_finite(&self, context: &'static str) -> Result<()> {
        for c in &self.comps {
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite { context });
            }
        }
        Ok(())
    }

    /// Pointwise sup norm over all components: sup_x |f(x)| with |.| the Euclidean
    /// norm over components.
    pub fn sup_norm(&self) -> f64 {
        let mut sup: f64 = 0.0;
        for i in 0..self.grid.len() {
            let mut s = 0.0;
            for c in &self.comps {
                s += c[i] * c[i];
            }
            sup = sup.max(s);
        }
        sup.sqrt()
    }

    /// Grid mean of each component.
    pub fn mean(&self) -> Vec<f64> {
        let n = self.grid.len() as f64;
        self.comps.iter().map(|c| c.iter().sum::<f64>() / n).collect()
    }

    /// ∫ f dx per component, i.e. (2π)^d times the grid mean.
    pub fn integral(&self) -> Vec<f64> {
        let vol = self.grid.volume();
        self.mean().into_iter().map(|m| m * vol).collect()
    }

    /// Max over grid points of |trace| for a symmetric tensor field.
    pub fn trace_sup(&self) -> Result<f64> {
        if self.rank != Rank::SymmetricTensor {
            return Err(Error::RankMismatch { expected: "symmetric-tensor", got: self.rank.name() });
        }
        let d = self.grid.dim();
        let mut sup: f64 = 0.0;
        for i in 0..self.grid.len() {
            let mut tr = 0.0;
            for a in 0..d {
                tr += self.comps[sym_index(d, a, a)][i];
            }
            sup = sup.max(tr.abs());
        }
        Ok(sup)
    }

    pub fn scale(&mut self, s: f64) {
        for c in &mut self.comps {
            for x in c.iter_mut() {
                *x *= s;
            }
        }
    }

    /// self += s * other (matching grid and rank).
    pub fn axpy(&mut self, s: f64, other: &PeriodicField) -> Result<()> {
        if other.grid != self.grid || other.rank != self.rank {
            return Err(Error::Format("axpy: field layout mismatch".into()));
        }
        for (c, oc) in self.comps.iter_mut().zip(other.comps.iter()) {
            for (x, y) in c.iter_mut().zip(oc.iter()) {
                *x += s * y;
            }
        }
        Ok(())
    }

    /// Pointwise v ⊗ v as a symmetric tensor field.
    pub fn outer_self(&self) -> Result<PeriodicField> {
        if self.rank != Rank::Vector {
            return Err(Error::RankMismatch { expected: "vector", got: self.rank.name() });
        }
        let d = self.grid.dim();
        let mut out = PeriodicField::zeros(self.grid, Rank::SymmetricTensor);
        for a in 0..d {
            for b in a..d {
                let idx = sym_index(d, a, b);
                let (va, vb) = (&self.comps[a], &self.comps[b]);
                let dst = &mut out.comps[idx];
                for i in 0..dst.len() {
                    dst[i] = va[i] * vb[i];
                }
            }
        }
        Ok(out)
    }

    /// Pointwise squared Euclidean magnitude |v|^2 as a scalar field.
    pub fn magnitude_squared(&self) -> PeriodicField {
        let mut out = PeriodicField::zeros(self.grid, Rank::Scalar);
        for c in &self.comps {
            let dst = &mut out.comps[0];
            for i in 0..dst.len() {
                dst[i] += c[i] * c[i];
            }
        }
        out
    }
}

/// A time-sampled field with optional exact time derivatives per frame.
#[derive(Clone, Debug)]
pub struct EvolvingField {
    pub time_grid: TimeGrid,
    pub frames: Vec<PeriodicField>,
    pub dt_frames: Option<Vec<PeriodicField>>,
}

impl EvolvingField {
    pub fn new(time_grid: TimeGrid, frames: Vec<PeriodicField>) -> Result<Self> {
        if frames.len() != time_grid.n_samples() {
            return Err(Error::Format(format!(
                "expected {} frames, got {}",
                time_grid.n_samples(),
                frames.len()
            )));
        }
        let g = frames[0].grid();
        let r = frames[0].rank();
        if frames.iter().any(|f| f.grid() != g || f.rank() != r) {
            return Err(Error::Format("frames disagree on grid or rank".into()));
        }
        Ok(Self { time_grid, frames, dt_frames: None })
    }

    pub fn zeros(grid: TorusGrid, rank: Rank, time_grid: TimeGrid) -> Self {
        let frames = (0..time_grid.n_samples()).map(|_| PeriodicField::zeros(grid, rank)).collect();
        Self { time_grid, frames, dt_frames: None }
    }

    pub fn with_dt(mut self, dt_frames: Vec<PeriodicField>) -> Result<Self> {
        if dt_frames.len() != self.frames.len() {
            return Err(Error::Format("dt_frames length mismatch".into()));
        }
        let g = self.frames[0].grid();
        let r = self.frames[0].rank();
        if dt_frames.iter().any(|f| f.grid() != g || f.rank() != r) {
            return Err(Error::Format("dt_frames disagree on grid or rank".into()));
        }
        self.dt_frames = Some(dt_frames);
        Ok(self)
    }

    pub fn grid(&self) -> TorusGrid {
        self.frames[0].grid()
    }

    pub fn rank(&self) -> Rank {
        self.frames[0].rank()
    }

    pub fn sup_norm(&self) -> f64 {
        self.frames.iter().map(|f| f.sup_norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_index_layout() {
        assert_eq!(sym_index(2, 0, 0), 0);
        assert_eq!(sym_index(2, 1, 0), 1);
        assert_eq!(sym_index(2, 1, 1), 2);
        assert_eq!(sym_index(3, 2, 0), 2);
        assert_eq!(sym_index(3, 1, 2), 4);
        assert_eq!(sym_index(3, 2, 2), 5);
    }

    #[test]
    fn means_and_outer() {
        let g = TorusGrid::new(2, 8).unwrap();
        let v = PeriodicField::vector_from_fn(g, |x| vec![x[0].sin(), 2.0]);
        let m = v.mean();
        assert!(m[0].abs() < 1e-14);
        assert!((m[1] - 2.0).abs() < 1e-14);
        let ww = v.outer_self().unwrap();
        assert_eq!(ww.ncomp(), 3);
        let tr = ww.trace_sup().unwrap();
        assert!(tr > 4.0 - 1e-12);
    }
}
