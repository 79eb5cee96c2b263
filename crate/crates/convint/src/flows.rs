//! Stationary building-block flows on the torus: 2D flows assembled from
//! stream functions ψ_k = e^{ik·ξ}/|k| with velocity profiles
//! b_k = i (k⊥/|k|) e^{ik·ξ}, and 3D curl eigenfields b_k = B_k e^{ik·ξ}.
//! For any coefficient set with the reality pairing ā_k = a_{-k}, the
//! combination W = Σ a_k b_k is a real stationary Euler flow with pressure
//! -|W|²/2 + ν Ψ²/2 (2D) or -|W|²/2 (3D).

use crate::error::{Error, Result};
use crate::field::{PeriodicField, Rank};
use crate::grid::TorusGrid;
use crate::linalg::SymMat;
use crate::spectral;
use num_complex::Complex64;
use rayon::prelude::*;

/// One lattice direction with its constant velocity profile vector b̂ so that
/// b_k(ξ) = b̂ e^{ik·ξ}.
#[derive(Clone, Debug)]
pub struct WaveDirection {
    pub k: [i64; 3],
    pub dim: usize,
    pub b: [Complex64; 3],
}

impl WaveDirection {
    /// 2D profile b̂ = i k⊥/|k| with k⊥ = (-k₂, k₁).
    pub fn new_2d(k: [i64; 2]) -> Result<Self> {
        if k == [0, 0] {
            return Err(Error::InvalidParameter("k must be nonzero".into()));
        }
        let norm = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt();
        let b = [
            Complex64::new(0.0, -k[1] as f64 / norm),
            Complex64::new(0.0, k[0] as f64 / norm),
            Complex64::default(),
        ];
        Ok(Self { k: [k[0], k[1], 0], dim: 2, b })
    }

    /// 3D profile B_k = (a + i k̂ × a)/√2 for a real unit vector a ⊥ k; then
    /// i k × B_k = |k| B_k and B_{-k} = conj(B_k) when a_{-k} = a_k.
    pub fn new_3d(k: [i64; 3]) -> Result<Self> {
        if k == [0, 0, 0] {
            return Err(Error::InvalidParameter("k must be nonzero".into()));
        }
        let kf = [k[0] as f64, k[1] as f64, k[2] as f64];
        let norm = (kf[0] * kf[0] + kf[1] * kf[1] + kf[2] * kf[2]).sqrt();
        let khat = [kf[0] / norm, kf[1] / norm, kf[2] / norm];
        let a = deterministic_orthogonal(k);
        let c = cross(&khat, &a);
        let s = 0.5f64.sqrt();
        let b = [
            Complex64::new(a[0] * s, c[0] * s),
            Complex64::new(a[1] * s, c[1] * s),
            Complex64::new(a[2] * s, c[2] * s),
        ];
        Ok(Self { k, dim: 3, b })
    }

    pub fn k_norm(&self) -> f64 {
        ((self.k[0] * self.k[0] + self.k[1] * self.k[1] + self.k[2] * self.k[2]) as f64).sqrt()
    }
}

/// Unit vector orthogonal to k, identical for k and -k: normalize(k × e) with
/// e the first standard basis vector not parallel to k, sign fixed so the
/// first nonzero component is positive.
pub fn deterministic_orthogonal(k: [i64; 3]) -> [f64; 3] {
    let kf = [k[0] as f64, k[1] as f64, k[2] as f64];
    let mut e = [0.0; 3];
    for axis in 0..3 {
        let parallel = (0..3).all(|i| if i == axis { true } else { k[i] == 0 });
        if !parallel {
            e[axis] = 1.0;
            break;
        }
    }
    let mut a = cross(&kf, &e);
    let norm = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    for x in a.iter_mut() {
        *x /= norm;
    }
    for x in a {
        if x > 0.0 {
            break;
        }
        if x < 0.0 {
            for y in a.iter_mut() {
                *y = -*y;
            }
            break;
        }
    }
    a
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Profiles B_k for every direction of a 3D set with |k|² = ν.
pub fn beltrami_basis(nu: u64, directions: &[[i64; 3]]) -> Result<Vec<WaveDirection>> {
    directions
        .iter()
        .map(|&k| {
            let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as u64;
            if k2 != nu {
                return Err(Error::InvalidParameter(format!(
                    "direction {k:?} has |k|^2 = {k2}, expected {nu}"
                )));
            }
            WaveDirection::new_3d(k)
        })
        .collect()
}

/// Complex amplitudes a_k on the set {|k|² = ν} with ā_k = a_{-k}.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    dim: usize,
    nu: u64,
    entries: Vec<([i64; 3], Complex64)>,
}

impl CoefficientSet {
    pub fn new(dim: usize, nu: u64, entries: Vec<([i64; 3], Complex64)>) -> Result<Self> {
        for (k, _) in &entries {
            let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as u64;
            if k2 != nu {
                return Err(Error::InvalidParameter(format!(
                    "entry {k:?} has |k|^2 = {k2}, expected {nu}"
                )));
            }
            if dim == 2 && k[2] != 0 {
                return Err(Error::InvalidParameter("2D entry with third component".into()));
            }
        }
        let set = Self { dim, nu, entries };
        set.check_reality()?;
        Ok(set)
    }

    /// Build from amplitudes on representatives; -k entries are filled with
    /// the conjugates.
    pub fn from_half(dim: usize, nu: u64, half: &[([i64; 3], Complex64)]) -> Result<Self> {
        let mut entries = Vec::with_capacity(2 * half.len());
        for &(k, a) in half {
            entries.push((k, a));
            entries.push(([-k[0], -k[1], -k[2]], a.conj()));
        }
        Self::new(dim, nu, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn entries(&self) -> &[([i64; 3], Complex64)] {
        &self.entries
    }

    pub fn max_mode(&self) -> i64 {
        self.entries
            .iter()
            .map(|(k, _)| k.iter().map(|x| x.abs()).max().unwrap())
            .max()
            .unwrap_or(0)
    }

    fn check_reality(&self) -> Result<()> {
        for (k, a) in &self.entries {
            let mk = [-k[0], -k[1], -k[2]];
            match self.entries.iter().find(|(kk, _)| *kk == mk) {
                Some((_, am)) if (am.conj() - a).norm() <= 1e-14 * (1.0 + a.norm()) => {}
                _ => return Err(Error::RealityPairing(*k)),
            }
        }
        Ok(())
    }
}

/// Evaluate W(λx) (and in 2D the stream function Ψ(λx)) on the grid.
///
/// Returns an error when λ·max|k| reaches the grid Nyquist limit or when the
/// reality pairing fails; the assembled W is real with divergence bounded by
/// spectral round-off.
pub fn assemble_flow(
    c: &CoefficientSet,
    lambda: u32,
    grid: TorusGrid,
) -> Result<(PeriodicField, Option<PeriodicField>)> {
    if grid.dim() != c.dim() {
        return Err(Error::DimMismatch { expected: c.dim(), got: grid.dim() });
    }
    if lambda < 1 {
        return Err(Error::InvalidParameter("lambda must be >= 1".into()));
    }
    let max_scaled = lambda as i64 * c.max_mode();
    if max_scaled >= grid.nyquist() {
        return Err(Error::Aliasing { mode: max_scaled, nyquist: grid.nyquist() });
    }
    let d = grid.dim();
    let dirs: Vec<WaveDirection> = c
        .entries()
        .iter()
        .map(|&(k, _)| {
            if d == 2 {
                WaveDirection::new_2d([k[0], k[1]])
            } else {
                WaveDirection::new_3d(k)
            }
        })
        .collect::<Result<_>>()?;

    let n = grid.len();
    let sqrt_nu = (c.nu() as f64).sqrt();
    let tables: Vec<PhaseTable> =
        c.entries().iter().map(|&(k, _)| PhaseTable::new(grid, &k, lambda)).collect();

    let mut w_comps = vec![vec![Complex64::default(); n]; d];
    let mut psi = vec![Complex64::default(); n];
    for ((&(_, a), dir), table) in c.entries().iter().zip(&dirs).zip(&tables) {
        for comp in 0..d {
            let coeff = a * dir.b[comp];
            let dst = &mut w_comps[comp];
            table.accumulate(grid, coeff, dst);
        }
        if d == 2 {
            table.accumulate(grid, a / sqrt_nu, &mut psi);
        }
    }

    let imag_sup = w_comps
        .iter()
        .flat_map(|c| c.iter())
        .map(|z| z.im.abs())
        .fold(0.0f64, f64::max);
    if imag_sup > 1e-12 {
        return Err(Error::Format(format!(
            "assembled flow is not real: imaginary residue {imag_sup:.3e}"
        )));
    }
    let mut w = PeriodicField::from_components(
        grid,
        Rank::Vector,
        w_comps.into_iter().map(|c| c.into_iter().map(|z| z.re).collect()).collect(),
    )?;
    w.flags.divergence_free = true;
    let psi_field = if d == 2 {
        Some(PeriodicField::from_components(
            grid,
            Rank::Scalar,
            vec![psi.into_iter().map(|z| z.re).collect()],
        )?)
    } else {
        None
    };
    Ok((w, psi_field))
}

/// Per-axis tables of e^{iλ k_a x_a}; the full phase is their product.
pub struct PhaseTable {
    axes: Vec<Vec<Complex64>>,
}

impl PhaseTable {
    pub fn new(grid: TorusGrid, k: &[i64; 3], lambda: u32) -> Self {
        let n = grid.n();
        let h = grid.h();
        let axes = (0..grid.dim())
            .map(|a| {
                (0..n)
                    .map(|j| {
                        let phase = lambda as f64 * k[a] as f64 * (j as f64 * h);
                        Complex64::from_polar(1.0, phase)
                    })
                    .collect()
            })
            .collect();
        Self { axes }
    }

    /// dst[x] += coeff * e^{iλk·x} over the grid.
    pub fn accumulate(&self, grid: TorusGrid, coeff: Complex64, dst: &mut [Complex64]) {
        let n = grid.n();
        match grid.dim() {
            2 => {
                dst.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                    let ci = coeff * self.axes[0][i];
                    for (j, slot) in row.iter_mut().enumerate() {
                        *slot += ci * self.axes[1][j];
                    }
                });
            }
            _ => {
                let n2 = n * n;
                dst.par_chunks_mut(n2).enumerate().for_each(|(i, plane)| {
                    let ci = coeff * self.axes[0][i];
                    for j in 0..n {
                        let cij = ci * self.axes[1][j];
                        let row = &mut plane[j * n..(j + 1) * n];
                        for (l, slot) in row.iter_mut().enumerate() {
                            *slot += cij * self.axes[2][l];
                        }
                    }
                });
            }
        }
    }
}

/// Sup-norm of div(W⊗W) - ∇P with P = |W|²/2 - ν Ψ²/2 (2D) or |W|²/2 (3D).
/// W and Ψ must come from `assemble_flow` on a grid sized for dealiased
/// quadratic products.
pub fn stationarity_residual(
    w: &PeriodicField,
    psi: Option<&PeriodicField>,
    nu: u64,
) -> Result<f64> {
    let grid = w.grid();
    let ww = w.outer_self()?;
    let div_ww = spectral::divergence_tensor(&ww)?;
    let mut pressure = w.magnitude_squared();
    pressure.scale(0.5);
    if grid.dim() == 2 {
        let psi = psi.ok_or(Error::InvalidParameter("2D residual needs the stream function".into()))?;
        let mut psi2 = psi.magnitude_squared();
        psi2.scale(-0.5 * nu as f64);
        pressure.axpy(1.0, &psi2)?;
    }
    let grad_p = spectral::gradient(&pressure)?;
    let mut resid = div_ww;
    resid.axpy(-1.0, &grad_p)?;
    Ok(spectral::sup_norm(&resid))
}

/// Closed-form average ⟨W⊗W⟩ = Σ |a_k|² (Id - k̂⊗k̂).
pub fn average_ww(c: &CoefficientSet) -> SymMat {
    let d = c.dim();
    let mut m = SymMat::zero(d);
    for (k, a) in c.entries() {
        let norm = ((k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64).sqrt();
        let khat: Vec<f64> = (0..d).map(|i| k[i] as f64 / norm).collect();
        let proj = SymMat::projector_complement(d, &khat);
        m = m.add(&proj.scale(a.norm_sqr()));
    }
    m
}

/// Grid average of W⊗W as a symmetric matrix (quadrature cross-check for
/// `average_ww`).
pub fn grid_average_ww(w: &PeriodicField) -> Result<SymMat> {
    let ww = w.outer_self()?;
    let mean = ww.mean();
    let d = w.grid().dim();
    let mut m = SymMat::zero(d);
    m.a[..mean.len()].copy_from_slice(&mean);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TorusGrid;

    #[test]
    fn single_pair_2d_flow() {
        let g = TorusGrid::new(2, 64).unwrap();
        let c = CoefficientSet::from_half(2, 1, &[([1, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
        let (w, psi) = assemble_flow(&c, 1, g).unwrap();
        let psi = psi.unwrap();
        let mut err = 0.0f64;
        for i in 0..g.len() {
            let x = g.coords(i);
            err = err.max(w.comp(0)[i].abs());
            err = err.max((w.comp(1)[i] + 2.0 * x[0].sin()).abs());
            err = err.max((psi.comp(0)[i] - 2.0 * x[0].cos()).abs());
        }
        assert!(err < 1e-12, "single pair mismatch {err}");
        let resid = stationarity_residual(&w, Some(&psi), 1).unwrap();
        assert!(resid < 1e-10, "residual {resid}");
    }

    #[test]
    fn empty_set_is_zero_flow() {
        let g = TorusGrid::new(2, 16).unwrap();
        let c = CoefficientSet::new(2, 5, vec![]).unwrap();
        let (w, _) = assemble_flow(&c, 1, g).unwrap();
        assert_eq!(spectral::sup_norm(&w), 0.0);
        assert_eq!(stationarity_residual(&w, Some(&PeriodicField::zeros(g, Rank::Scalar)), 5).unwrap(), 0.0);
    }

    #[test]
    fn average_ww_two_terms() {
        let c = CoefficientSet::from_half(2, 1, &[([1, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
        let m = average_ww(&c);
        assert!((m.get(0, 0)).abs() < 1e-15);
        assert!((m.get(1, 1) - 2.0).abs() < 1e-15);
        assert!((m.get(0, 1)).abs() < 1e-15);
    }

    #[test]
    fn reality_pairing_enforced() {
        let bad = CoefficientSet::new(2, 1, vec![([1, 0, 0], Complex64::new(1.0, 0.5))]);
        assert!(bad.is_err());
    }

    #[test]
    fn beltrami_direction_invariants() {
        let k = [1, 0, 0];
        let dir = WaveDirection::new_3d(k).unwrap();
        // k · B = 0
        let dot: Complex64 = (0..3).map(|i| dir.b[i] * k[i] as f64).sum();
        assert!(dot.norm() < 1e-14);
        // |B| = 1
        let norm: f64 = dir.b.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        // i k × B = |k| B
        let kf = [1.0, 0.0, 0.0];
        let bx = dir.b;
        let crossed = [
            kf[1] * bx[2] - kf[2] * bx[1],
            kf[2] * bx[0] - kf[0] * bx[2],
            kf[0] * bx[1] - kf[1] * bx[0],
        ];
        for i in 0..3 {
            let lhs = Complex64::new(0.0, 1.0) * crossed[i];
            assert!((lhs - bx[i]).norm() < 1e-14);
        }
        // conjugate symmetry against -k
        let dm = WaveDirection::new_3d([-1, 0, 0]).unwrap();
        for i in 0..3 {
            assert!((dm.b[i] - dir.b[i].conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn aliasing_rejected() {
        let g = TorusGrid::new(2, 8).unwrap();
        let c = CoefficientSet::from_half(2, 25, &[([3, 4, 0], Complex64::new(1.0, 0.0))]).unwrap();
        assert!(matches!(assemble_flow(&c, 1, g), Err(Error::Aliasing { .. })));
    }
}
