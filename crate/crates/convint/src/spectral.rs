//! Spectral operators on periodic grids: Fourier transforms, derivatives,
//! Poisson solves, the Leray projectors P/Q, the anti-divergence operator,
//! and the norms used by the iteration diagnostics.
//!
//! Conventions: `forward_transform` returns Fourier coefficients f̂_k with
//! f(x) = Σ_k f̂_k e^{ik·x}, i.e. f̂_k = (2π)^{-d} ∫ f e^{-ik·x} dx up to
//! quadrature. Real fields come back from `inverse_transform` with Hermitian
//! symmetry enforced in mode space after every operator.

use crate::error::{Error, Result};
use crate::field::{sym_index, PeriodicField, Rank};
use crate::grid::TorusGrid;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanKey = (usize, bool);

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// Complex mode coefficients of one field, same component layout as
/// `PeriodicField`, DFT bin ordering along each axis.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: TorusGrid,
    rank: Rank,
    comps: Vec<Vec<Complex64>>,
}

impl SpectralField {
    pub fn zeros(grid: TorusGrid, rank: Rank) -> Self {
        let nc = rank.ncomp(grid.dim());
        Self { grid, rank, comps: vec![vec![Complex64::default(); grid.len()]; nc] }
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn comp(&self, c: usize) -> &[Complex64] {
        &self.comps[c]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.comps[c]
    }

    /// Coefficient at the signed mode k of component c.
    pub fn mode(&self, c: usize, k: &[i64]) -> Result<Complex64> {
        Ok(self.comps[c][self.grid.mode_index(k)?])
    }
}

fn fft_axis(data: &mut [Complex64], n: usize, dim: usize, axis: usize, inverse: bool) {
    let fft = plan(n, inverse);
    let inner: usize = n.pow((dim - 1 - axis) as u32);
    let block = n * inner;
    if axis == dim - 1 {
        data.par_chunks_mut(n).for_each_init(
            || vec![Complex64::default(); fft.get_inplace_scratch_len()],
            |scratch, line| {
                fft.process_with_scratch(line, scratch);
            },
        );
    } else {
        data.par_chunks_mut(block).for_each_init(
            || {
                (
                    vec![Complex64::default(); n],
                    vec![Complex64::default(); fft.get_inplace_scratch_len()],
                )
            },
            |(line, scratch), chunk| {
                for j in 0..inner {
                    for i in 0..n {
                        line[i] = chunk[i * inner + j];
                    }
                    fft.process_with_scratch(line, scratch);
                    for i in 0..n {
                        chunk[i * inner + j] = line[i];
                    }
                }
            },
        );
    }
}

fn transform_comp(vals: &[f64], grid: TorusGrid) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = vals.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let n = grid.n();
    for axis in 0..grid.dim() {
        fft_axis(&mut data, n, grid.dim(), axis, false);
    }
    let scale = 1.0 / grid.len() as f64;
    data.par_iter_mut().for_each(|z| *z *= scale);
    data
}

fn inverse_comp(modes: &[Complex64], grid: TorusGrid) -> Vec<f64> {
    let mut data = modes.to_vec();
    let n = grid.n();
    for axis in 0..grid.dim() {
        fft_axis(&mut data, n, grid.dim(), axis, true);
    }
    data.par_iter().map(|z| z.re).collect()
}

/// Forward discrete Fourier transform of every component.
pub fn forward_transform(f: &PeriodicField) -> Result<SpectralField> {
    f.check_finite("forward_transform input")?;
    let comps = f.components().par_iter().map(|c| transform_comp(c, f.grid())).collect();
    Ok(SpectralField { grid: f.grid(), rank: f.rank(), comps })
}

/// Inverse transform back to real samples (imaginary parts are dropped;
/// callers keep Hermitian symmetry via `enforce_hermitian`).
pub fn inverse_transform(s: &SpectralField) -> PeriodicField {
    let comps: Vec<Vec<f64>> =
        s.comps.par_iter().map(|c| inverse_comp(c, s.grid)).collect();
    PeriodicField::from_components(s.grid, s.rank, comps).expect("layout preserved")
}

/// Average conjugate mode pairs so the spectrum stays exactly Hermitian.
pub fn enforce_hermitian(s: &mut SpectralField) {
    let grid = s.grid;
    let n = grid.n();
    let d = grid.dim();
    let len = grid.len();
    // Index of the mode with every axis index negated.
    let axis_conj = |idx: usize| -> usize {
        let mut rem = idx;
        let mut digits = [0usize; 3];
        for a in (0..d).rev() {
            digits[a] = rem % n;
            rem /= n;
        }
        let mut out = 0usize;
        for dig in digits.iter().take(d) {
            out = out * n + (n - dig) % n;
        }
        out
    };
    for c in &mut s.comps {
        for idx in 0..len {
            let j = axis_conj(idx);
            if j < idx {
                continue;
            }
            let avg = 0.5 * (c[idx] + c[j].conj());
            c[idx] = avg;
            c[j] = avg.conj();
        }
    }
}

/// Apply a mode multiplier to a single spectral component, producing a new one.
fn apply_multiplier(
    src: &[Complex64],
    grid: TorusGrid,
    mult: impl Fn(&[i64; 3]) -> Complex64 + Sync,
) -> Vec<Complex64> {
    let n = grid.n();
    let d = grid.dim();
    let mut out = vec![Complex64::default(); src.len()];
    let inner = n.pow((d - 1) as u32);
    out.par_chunks_mut(inner).enumerate().for_each(|(outer, chunk)| {
        let mut k = [0i64; 3];
        k[0] = grid.wavenumber(outer);
        let base = outer * inner;
        for (j, slot) in chunk.iter_mut().enumerate() {
            k[d - 1] = grid.wavenumber(j % n);
            if d == 3 {
                k[1] = grid.wavenumber(j / n);
            }
            *slot = mult(&k) * src[base + j];
        }
    });
    out
}

fn expect_rank(f: &PeriodicField, rank: Rank) -> Result<()> {
    if f.rank() != rank {
        return Err(Error::RankMismatch { expected: rank.name(), got: f.rank().name() });
    }
    Ok(())
}

fn ik(kj: i64, n: usize) -> Complex64 {
    // Nyquist mode has no matching conjugate partner; its odd-order derivative
    // is set to zero.
    if kj.unsigned_abs() as usize * 2 == n {
        Complex64::default()
    } else {
        Complex64::new(0.0, kj as f64)
    }
}

/// Spectral gradient of a scalar field.
pub fn gradient(f: &PeriodicField) -> Result<PeriodicField> {
    expect_rank(f, Rank::Scalar)?;
    let spec = forward_transform(f)?;
    gradient_spec(&spec)
}

fn gradient_spec(spec: &SpectralField) -> Result<PeriodicField> {
    let grid = spec.grid;
    let n = grid.n();
    let mut out = SpectralField::zeros(grid, Rank::Vector);
    for a in 0..grid.dim() {
        out.comps[a] = apply_multiplier(&spec.comps[0], grid, |k| ik(k[a], n));
    }
    enforce_hermitian(&mut out);
    Ok(inverse_transform(&out))
}

/// 2D perpendicular gradient (-∂₂ f, ∂₁ f).
pub fn perp_gradient(f: &PeriodicField) -> Result<PeriodicField> {
    expect_rank(f, Rank::Scalar)?;
    if f.grid().dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: f.grid().dim() });
    }
    let grid = f.grid();
    let n = grid.n();
    let spec = forward_transform(f)?;
    let mut out = SpectralField::zeros(grid, Rank::Vector);
    out.comps[0] = apply_multiplier(&spec.comps[0], grid, |k| -ik(k[1], n));
    out.comps[1] = apply_multiplier(&spec.comps[0], grid, |k| ik(k[0], n));
    enforce_hermitian(&mut out);
    let mut g = inverse_transform(&out);
    g.flags.divergence_free = true;
    Ok(g)
}

/// Spectral divergence of a vector field.
pub fn divergence(v: &PeriodicField) -> Result<PeriodicField> {
    expect_rank(v, Rank::Vector)?;
    let grid = v.grid();
    let n = grid.n();
    let spec = forward_transform(v)?;
    let mut out = SpectralField::zeros(grid, Rank::Scalar);
    for a in 0..grid.dim() {
        let part = apply_multiplier(&spec.comps[a], grid, |k| ik(k[a], n));
        for (dst, src) in out.comps[0].iter_mut().zip(part) {
            *dst += src;
        }
    }
    enforce_hermitian(&mut out);
    Ok(inverse_transform(&out))
}

/// Row-wise divergence (div A)_i = ∂_j A_ij of a symmetric tensor field.
pub fn divergence_tensor(a: &PeriodicField) -> Result<PeriodicField> {
    expect_rank(a, Rank::SymmetricTensor)?;
    let grid = a.grid();
    let d = grid.dim();
    let n = grid.n();
    let spec = forward_transform(a)?;
    let mut out = SpectralField::zeros(grid, Rank::Vector);
    for i in 0..d {
        for j in 0..d {
            let comp = sym_index(d, i, j);
            let part = apply_multiplier(&spec.comps[comp], grid, |k| ik(k[j], n));
            for (dst, src) in out.comps[i].iter_mut().zip(part) {
                *dst += src;
            }
        }
    }
    enforce_hermitian(&mut out);
    Ok(inverse_transform(&out))
}

/// Zero-mean solution u of Δu = f - mean(f), componentwise.
pub fn poisson_solve(f: &PeriodicField) -> Result<PeriodicField> {
    let spec = forward_transform(f)?;
    let grid = f.grid();
    let mut out = SpectralField::zeros(grid, f.rank());
    for (c, src) in spec.comps.iter().enumerate() {
        out.comps[c] = apply_multiplier(src, grid, |k| {
            let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
            if k2 == 0.0 {
                Complex64::default()
            } else {
                Complex64::new(-1.0 / k2, 0.0)
            }
        });
    }
    enforce_hermitian(&mut out);
    Ok(inverse_transform(&out))
}

fn leray_split(v: &PeriodicField) -> Result<(SpectralField, SpectralField)> {
    expect_rank(v, Rank::Vector)?;
    let grid = v.grid();
    let d = grid.dim();
    let spec = forward_transform(v)?;
    let mut q = SpectralField::zeros(grid, Rank::Vector);
    let mut p = SpectralField::zeros(grid, Rank::Vector);
    let n = grid.n();
    let len = grid.len();
    // Q v = ∇φ + mean(v) with Δφ = div v; in modes (k≠0): (Qv)_k = k (k·v̂_k)/|k|².
    for idx in 0..len {
        let mut k = [0i64; 3];
        let mut rem = idx;
        for a in (0..d).rev() {
            k[a] = grid.wavenumber(rem % n);
            rem /= n;
        }
        let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
        if k2 == 0.0 {
            for a in 0..d {
                q.comps[a][idx] = spec.comps[a][idx];
                p.comps[a][idx] = Complex64::default();
            }
            continue;
        }
        let mut kv = Complex64::default();
        for a in 0..d {
            kv += Complex64::new(k[a] as f64, 0.0) * spec.comps[a][idx];
        }
        for a in 0..d {
            let qa = kv * (k[a] as f64 / k2);
            q.comps[a][idx] = qa;
            p.comps[a][idx] = spec.comps[a][idx] - qa;
        }
    }
    enforce_hermitian(&mut q);
    enforce_hermitian(&mut p);
    Ok((q, p))
}

/// The gradient-plus-mean part Q v = ∇φ + ∯v of the Helmholtz split.
pub fn leray_q(v: &PeriodicField) -> Result<PeriodicField> {
    let (q, _) = leray_split(v)?;
    Ok(inverse_transform(&q))
}

/// Leray projection P v = v - Q v onto divergence-free zero-mean fields.
pub fn leray_p(v: &PeriodicField) -> Result<PeriodicField> {
    let (_, p) = leray_split(v)?;
    let mut f = inverse_transform(&p);
    f.flags.divergence_free = true;
    Ok(f)
}

/// Anti-divergence operator: a symmetric trace-free tensor field with
/// div(Rv) = v - mean(v). 2D: ∇u + (∇u)ᵀ - (div u) Id with Δu = v - mean(v);
/// 3D: ¼(∇Pu + (∇Pu)ᵀ) + ¾(∇u + (∇u)ᵀ) - ½(div u) Id.
pub fn div_inverse(v: &PeriodicField) -> Result<PeriodicField> {
    expect_rank(v, Rank::Vector)?;
    let grid = v.grid();
    let d = grid.dim();
    let n = grid.n();
    let len = grid.len();
    let spec = forward_transform(v)?;
    let mut out = SpectralField::zeros(grid, Rank::SymmetricTensor);
    for idx in 0..len {
        let mut k = [0i64; 3];
        let mut rem = idx;
        for a in (0..d).rev() {
            k[a] = grid.wavenumber(rem % n);
            rem /= n;
        }
        let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
        if k2 == 0.0 {
            continue; // u has zero mean; all derivative terms vanish at k=0
        }
        let mut kf = [Complex64::default(); 3];
        let nyq = |kj: i64| kj.unsigned_abs() as usize * 2 == n;
        for a in 0..d {
            kf[a] = if nyq(k[a]) { Complex64::default() } else { Complex64::new(0.0, k[a] as f64) };
        }
        // û_k = -v̂_k / |k|²
        let mut u = [Complex64::default(); 3];
        for a in 0..d {
            u[a] = -spec.comps[a][idx] / k2;
        }
        // div u in modes, and P u = u - k (k·u)/|k|²
        let mut ku = Complex64::default();
        for a in 0..d {
            ku += kf[a] * u[a];
        }
        let divu = ku;
        let mut pu = [Complex64::default(); 3];
        if d == 3 {
            let mut kdotu = Complex64::default();
            for a in 0..d {
                kdotu += Complex64::new(k[a] as f64, 0.0) * u[a];
            }
            for a in 0..d {
                pu[a] = u[a] - kdotu * (k[a] as f64 / k2);
            }
        }
        for i in 0..d {
            for j in i..d {
                let comp = sym_index(d, i, j);
                let grad_sym = kf[j] * u[i] + kf[i] * u[j]; // (∇u + ∇uᵀ)_ij
                let val = if d == 2 {
                    let diag = if i == j { divu } else { Complex64::default() };
                    grad_sym - diag
                } else {
                    let pgrad_sym = kf[j] * pu[i] + kf[i] * pu[j];
                    let diag = if i == j { divu * 0.5 } else { Complex64::default() };
                    0.25 * pgrad_sym + 0.75 * grad_sym - diag
                };
                out.comps[comp][idx] = val;
            }
        }
    }
    enforce_hermitian(&mut out);
    let mut t = inverse_transform(&out);
    t.flags.trace_free = true;
    Ok(t)
}

/// Sup norm over grid samples (Euclidean magnitude across components).
pub fn sup_norm(f: &PeriodicField) -> f64 {
    f.sup_norm()
}

/// Grid Hölder seminorm: max over grid-point pairs within `radius` cells of
/// |f(x)-f(y)| / |x-y|^α. A lower bound for the continuum seminorm.
pub fn holder_seminorm(f: &PeriodicField, alpha: f64, radius: usize) -> Result<f64> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must be in (0,1), got {alpha}")));
    }
    let grid = f.grid();
    let n = grid.n() as i64;
    let d = grid.dim();
    let h = grid.h();
    let r = radius as i64;
    // Unique nonzero offsets: first nonzero coordinate positive.
    let mut offsets: Vec<[i64; 3]> = Vec::new();
    let range: Vec<i64> = (-r..=r).collect();
    for &dx in &range {
        for &dy in &range {
            if d == 2 {
                let off = [dx, dy, 0];
                if off.iter().any(|&x| x != 0) && is_canonical(&off) {
                    offsets.push(off);
                }
            } else {
                for &dz in &range {
                    let off = [dx, dy, dz];
                    if off.iter().any(|&x| x != 0) && is_canonical(&off) {
                        offsets.push(off);
                    }
                }
            }
        }
    }
    let best = offsets
        .par_iter()
        .map(|off| {
            let dist =
                (off.iter().map(|&x| (x * x) as f64).sum::<f64>()).sqrt() * h;
            let w = dist.powf(alpha).recip();
            let mut local: f64 = 0.0;
            for c in f.components() {
                match d {
                    2 => {
                        let nn = n as usize;
                        for x0 in 0..nn {
                            let x1 = ((x0 as i64 + off[0]).rem_euclid(n)) as usize;
                            for y0 in 0..nn {
                                let y1 = ((y0 as i64 + off[1]).rem_euclid(n)) as usize;
                                let diff = (c[x0 * nn + y0] - c[x1 * nn + y1]).abs();
                                if diff > local {
                                    local = diff;
                                }
                            }
                        }
                    }
                    _ => {
                        let nn = n as usize;
                        for x0 in 0..nn {
                            let x1 = ((x0 as i64 + off[0]).rem_euclid(n)) as usize;
                            for y0 in 0..nn {
                                let y1 = ((y0 as i64 + off[1]).rem_euclid(n)) as usize;
                                for z0 in 0..nn {
                                    let z1 = ((z0 as i64 + off[2]).rem_euclid(n)) as usize;
                                    let a = c[(x0 * nn + y0) * nn + z0];
                                    let b = c[(x1 * nn + y1) * nn + z1];
                                    let diff = (a - b).abs();
                                    if diff > local {
                                        local = diff;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            local * w
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

fn is_canonical(off: &[i64; 3]) -> bool {
    for &x in off {
        if x > 0 {
            return true;
        }
        if x < 0 {
            return false;
        }
    }
    false
}

/// Mode-space H^{-1}-type norm: sqrt(Σ_{k≠0} |v̂_k|²/|k|² + |v̂_0|²).
/// The k=0 term enters with weight one.
pub fn h_minus1_norm(v: &PeriodicField) -> Result<f64> {
    expect_rank(v, Rank::Vector)?;
    let grid = v.grid();
    let d = grid.dim();
    let n = grid.n();
    let spec = forward_transform(v)?;
    let mut total = 0.0;
    for idx in 0..grid.len() {
        let mut k = [0i64; 3];
        let mut rem = idx;
        for a in (0..d).rev() {
            k[a] = grid.wavenumber(rem % n);
            rem /= n;
        }
        let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
        let w = if k2 == 0.0 { 1.0 } else { 1.0 / k2 };
        for c in 0..d {
            total += spec.comps[c][idx].norm_sqr() * w;
        }
    }
    Ok(total.sqrt())
}

/// |∫ a(x) e^{iλ k·x} dx| via mode extraction at -λk.
pub fn oscillatory_integral_probe(a: &PeriodicField, k: &[i64], lambda: u32) -> Result<f64> {
    expect_rank(a, Rank::Scalar)?;
    if lambda < 1 {
        return Err(Error::InvalidParameter("lambda must be >= 1".into()));
    }
    if k.iter().all(|&x| x == 0) {
        return Err(Error::InvalidParameter("k must be nonzero".into()));
    }
    let grid = a.grid();
    let mut mk = [0i64; 3];
    for (a_, &kc) in mk.iter_mut().zip(k.iter()) {
        *a_ = -(lambda as i64) * kc;
    }
    let spec = forward_transform(a)?;
    let coeff = spec.mode(0, &mk[..grid.dim()])?;
    Ok(coeff.norm() * grid.volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TorusGrid;

    fn grid2(n: usize) -> TorusGrid {
        TorusGrid::new(2, n).unwrap()
    }

    #[test]
    fn single_mode_coefficients() {
        let g = grid2(64);
        let f = PeriodicField::scalar_from_fn(g, |x| x[0].sin());
        let s = forward_transform(&f).unwrap();
        let plus = s.mode(0, &[1, 0]).unwrap();
        let minus = s.mode(0, &[-1, 0]).unwrap();
        assert!((plus - Complex64::new(0.0, -0.5)).norm() < 1e-13);
        assert!((minus - Complex64::new(0.0, 0.5)).norm() < 1e-13);
        // every other mode is zero
        let mut residue = 0.0f64;
        for idx in 0..g.len() {
            if idx == g.mode_index(&[1, 0]).unwrap() || idx == g.mode_index(&[-1, 0]).unwrap() {
                continue;
            }
            residue = residue.max(s.comps[0][idx].norm());
        }
        assert!(residue < 1e-13);
    }

    #[test]
    fn constant_field_transforms_to_mode_zero() {
        let g = grid2(16);
        let f = PeriodicField::scalar_from_fn(g, |_| 3.0);
        let s = forward_transform(&f).unwrap();
        assert!((s.mode(0, &[0, 0]).unwrap() - Complex64::new(3.0, 0.0)).norm() < 1e-13);
        let back = inverse_transform(&s);
        assert!(back.comp(0).iter().all(|&x| (x - 3.0).abs() < 1e-13));
    }

    #[test]
    fn rejects_non_finite() {
        let g = grid2(8);
        let mut f = PeriodicField::zeros(g, Rank::Scalar);
        f.comp_mut(0)[3] = f64::NAN;
        assert!(forward_transform(&f).is_err());
    }

    #[test]
    fn poisson_eigenfunctions() {
        let g = grid2(32);
        let f = PeriodicField::scalar_from_fn(g, |x| x[0].sin() + (2.0 * x[1]).cos());
        let u = poisson_solve(&f).unwrap();
        let expect = PeriodicField::scalar_from_fn(g, |x| -x[0].sin() - (2.0 * x[1]).cos() / 4.0);
        let mut err = 0.0f64;
        for i in 0..g.len() {
            err = err.max((u.comp(0)[i] - expect.comp(0)[i]).abs());
        }
        assert!(err < 1e-12, "poisson error {err}");
        assert!(u.mean()[0].abs() < 1e-14);
    }

    #[test]
    fn perp_gradient_divergence_free() {
        let g = grid2(32);
        let f = PeriodicField::scalar_from_fn(g, |x| (x[0] + x[1]).sin());
        let pg = perp_gradient(&f).unwrap();
        let expect0 = PeriodicField::scalar_from_fn(g, |x| -(x[0] + x[1]).cos());
        let mut err = 0.0f64;
        for i in 0..g.len() {
            err = err.max((pg.comp(0)[i] - expect0.comp(0)[i]).abs());
            err = err.max((pg.comp(1)[i] + expect0.comp(0)[i]).abs());
        }
        assert!(err < 1e-12);
        let div = divergence(&pg).unwrap();
        assert!(sup_norm(&div) < 1e-12);
    }

    #[test]
    fn leray_hand_split() {
        let g = grid2(32);
        let v = PeriodicField::vector_from_fn(g, |x| vec![x[0].cos() + 1.0, x[0].sin()]);
        let q = leray_q(&v).unwrap();
        let p = leray_p(&v).unwrap();
        let mut err = 0.0f64;
        for i in 0..g.len() {
            let x = g.coords(i);
            err = err.max((q.comp(0)[i] - (x[0].cos() + 1.0)).abs());
            err = err.max(q.comp(1)[i].abs());
            err = err.max(p.comp(0)[i].abs());
            err = err.max((p.comp(1)[i] - x[0].sin()).abs());
        }
        assert!(err < 1e-12, "leray split error {err}");
    }

    #[test]
    fn div_inverse_2d_closed_form() {
        let g = grid2(32);
        let v = PeriodicField::vector_from_fn(g, |x| vec![x[0].sin(), 0.0]);
        let t = div_inverse(&v).unwrap();
        let mut err = 0.0f64;
        for i in 0..g.len() {
            let x = g.coords(i);
            err = err.max((t.comp(0)[i] + x[0].cos()).abs()); // xx = -cos x1
            err = err.max(t.comp(1)[i].abs()); // xy = 0
            err = err.max((t.comp(2)[i] - x[0].cos()).abs()); // yy = cos x1
        }
        assert!(err < 1e-12, "div_inverse closed form error {err}");
        assert!(t.trace_sup().unwrap() < 1e-12);
        let back = divergence_tensor(&t).unwrap();
        let mut err2 = 0.0f64;
        for i in 0..g.len() {
            let x = g.coords(i);
            err2 = err2.max((back.comp(0)[i] - x[0].sin()).abs());
            err2 = err2.max(back.comp(1)[i].abs());
        }
        assert!(err2 < 1e-11);
    }

    #[test]
    fn oscillatory_probe_orthogonality_and_resonance() {
        let g = grid2(64);
        let one = PeriodicField::scalar_from_fn(g, |_| 1.0);
        for lam in [1, 2, 5] {
            let v = oscillatory_integral_probe(&one, &[1, 0], lam).unwrap();
            assert!(v < 1e-14);
        }
        // a = cos(8 x1): resonant with λk = (8,0) → |∫| = (2π)²/2 per component
        let a = PeriodicField::scalar_from_fn(g, |x| (8.0 * x[0]).cos());
        let v = oscillatory_integral_probe(&a, &[1, 0], 8).unwrap();
        assert!((v - 0.5 * g.volume()).abs() < 1e-10);
        // aliasing guard
        assert!(oscillatory_integral_probe(&a, &[1, 0], 32).is_err());
    }

    #[test]
    fn h_minus1_single_mode() {
        let g = grid2(32);
        let v = PeriodicField::vector_from_fn(g, |x| vec![x[0].sin(), 0.0]);
        let h = h_minus1_norm(&v).unwrap();
        assert!((h - (0.5f64).sqrt()).abs() < 1e-12, "got {h}");
    }

    #[test]
    fn holder_seminorm_homogeneous() {
        let g = grid2(32);
        let f = PeriodicField::scalar_from_fn(g, |x| (3.0 * x[0]).sin() * x[1].cos());
        let a = holder_seminorm(&f, 0.5, 4).unwrap();
        let mut f2 = f.clone();
        f2.scale(-2.0);
        let b = holder_seminorm(&f2, 0.5, 4).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12 * a.max(1.0));
        assert!(holder_seminorm(&f, 1.5, 4).is_err());
        let zero = PeriodicField::zeros(g, Rank::Scalar);
        assert_eq!(holder_seminorm(&zero, 0.3, 4).unwrap(), 0.0);
    }
}
