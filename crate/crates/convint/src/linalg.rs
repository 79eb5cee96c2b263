//! Small dense linear algebra for the geometric constructions: symmetric
//! d×d matrices in coordinate form, Gaussian elimination, and regular
//! simplex vertices. Everything here is tiny (dimensions <= 8).

use crate::error::Error;
use crate::field::sym_index;
use serde::{Deserialize, Serialize};

/// Symmetric d×d matrix stored as its upper triangle, same layout as
/// symmetric-tensor field components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMat {
    pub dim: usize,
    pub a: [f64; 6],
}

impl SymMat {
    pub fn zero(dim: usize) -> Self {
        Self { dim, a: [0.0; 6] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.a[sym_index(dim, i, i)] = 1.0;
        }
        m
    }

    pub fn ncomp(&self) -> usize {
        self.dim * (self.dim + 1) / 2
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[sym_index(self.dim, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[sym_index(self.dim, i, j)] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for x in out.a.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn add(&self, other: &SymMat) -> Self {
        let mut out = *self;
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &SymMat) -> Self {
        let mut out = *self;
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x -= y;
        }
        out
    }

    /// Id - u⊗u for a unit vector u.
    pub fn projector_complement(dim: usize, u: &[f64]) -> Self {
        let mut m = Self::identity(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = m.get(i, j) - u[i] * u[j];
                m.set(i, j, v);
            }
        }
        m
    }

    /// Coordinates in which the Euclidean inner product equals the Frobenius
    /// inner product: diagonal entries as-is, off-diagonal scaled by √2.
    pub fn frob_coords(&self) -> Vec<f64> {
        let d = self.dim;
        let s2 = std::f64::consts::SQRT_2;
        let mut out = Vec::with_capacity(self.ncomp());
        for i in 0..d {
            out.push(self.get(i, i));
        }
        for i in 0..d {
            for j in (i + 1)..d {
                out.push(s2 * self.get(i, j));
            }
        }
        out
    }

    pub fn from_frob_coords(dim: usize, c: &[f64]) -> Self {
        let s2 = std::f64::consts::SQRT_2;
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, c[i]);
        }
        let mut idx = dim;
        for i in 0..dim {
            for j in (i + 1)..dim {
                m.set(i, j, c[idx] / s2);
                idx += 1;
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frob_coords().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Eigenvalues in ascending order (closed form for 2×2, trigonometric
    /// formula for 3×3).
    pub fn eigenvalues(&self) -> [f64; 3] {
        match self.dim {
            2 => {
                let (a, b, c) = (self.get(0, 0), self.get(0, 1), self.get(1, 1));
                let t = 0.5 * (a + c);
                let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
                [t - r, t + r, 0.0]
            }
            3 => {
                let p1 = self.get(0, 1).powi(2) + self.get(0, 2).powi(2) + self.get(1, 2).powi(2);
                let q = self.trace() / 3.0;
                if p1 == 0.0 {
                    let mut d = [self.get(0, 0), self.get(1, 1), self.get(2, 2)];
                    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    return d;
                }
                let p2 = (self.get(0, 0) - q).powi(2)
                    + (self.get(1, 1) - q).powi(2)
                    + (self.get(2, 2) - q).powi(2)
                    + 2.0 * p1;
                let p = (p2 / 6.0).sqrt();
                // B = (A - q Id)/p, r = det(B)/2 clamped into [-1, 1]
                let b = |i: usize, j: usize| {
                    (self.get(i, j) - if i == j { q } else { 0.0 }) / p
                };
                let detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(1, 2))
                    - b(0, 1) * (b(0, 1) * b(2, 2) - b(1, 2) * b(0, 2))
                    + b(0, 2) * (b(0, 1) * b(1, 2) - b(1, 1) * b(0, 2));
                let r = (detb / 2.0).clamp(-1.0, 1.0);
                let phi = r.acos() / 3.0;
                let e1 = q + 2.0 * p * phi.cos();
                let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
                let e2 = 3.0 * q - e1 - e3;
                let mut d = [e1, e2, e3];
                d.sort_by(|a, b| a.partial_cmp(b).unwrap());
                d
            }
            _ => unreachable!(),
        }
    }

    /// Spectral (operator) norm: max |eigenvalue|.
    pub fn spectral_norm(&self) -> f64 {
        let e = self.eigenvalues();
        let m = if self.dim == 2 { 2 } else { 3 };
        e[..m].iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// A is row-major n×n; returns None when the pivot falls below `tol`.
pub fn solve_dense(a: &[f64], b: &[f64], n: usize, tol: f64) -> Option<Vec<f64>> {
    let mut m = vec![0.0; n * (n + 1)];
    for i in 0..n {
        m[i * (n + 1)..i * (n + 1) + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * (n + 1) + n] = b[i];
    }
    let w = n + 1;
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * w + col].abs();
        for r in (col + 1)..n {
            let v = m[r * w + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < tol {
            return None;
        }
        if piv != col {
            for c in 0..w {
                m.swap(col * w + c, piv * w + c);
            }
        }
        let p = m[col * w + col];
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * w + col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..w {
                m[r * w + c] -= f * m[col * w + c];
            }
        }
    }
    Some((0..n).map(|i| m[i * w + n] / m[i * w + i]).collect())
}

/// Vertices of a regular n-simplex in R^n, centered at the origin with
/// circumradius 1: the centered standard basis of R^{n+1} expressed in an
/// orthonormal basis of the sum-zero subspace.
pub fn regular_simplex(n: usize) -> Vec<Vec<f64>> {
    let m = n + 1;
    // Orthonormal basis of the sum-zero subspace of R^m (Helmert basis).
    let mut basis = Vec::with_capacity(n);
    for k in 1..m {
        let mut v = vec![0.0; m];
        for item in v.iter_mut().take(k) {
            *item = 1.0;
        }
        v[k] = -(k as f64);
        let norm = (k as f64 * (k as f64 + 1.0)).sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        basis.push(v);
    }
    // Circumradius of the centered e_i is sqrt(n/(n+1)); rescale to 1.
    let circ = (n as f64 / m as f64).sqrt();
    (0..m)
        .map(|i| {
            let mut centered = vec![-1.0 / m as f64; m];
            centered[i] += 1.0;
            basis
                .iter()
                .map(|b| centered.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / circ)
                .collect()
        })
        .collect()
}

/// Error raised when a linear solve inside a construction fails.
pub fn singular(context: &str) -> Error {
    Error::DegenerateFamily(format!("singular linear system in {context}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_solve_small() {
        let a = [2.0, 1.0, 1.0, 3.0];
        let b = [5.0, 10.0];
        let x = solve_dense(&a, &b, 2, 1e-12).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!(solve_dense(&[1.0, 2.0, 2.0, 4.0], &[1.0, 2.0], 2, 1e-12).is_none());
    }

    #[test]
    fn simplex_is_regular_and_centered() {
        for n in 1..=6 {
            let v = regular_simplex(n);
            assert_eq!(v.len(), n + 1);
            // centered
            for c in 0..n {
                let s: f64 = v.iter().map(|p| p[c]).sum();
                assert!(s.abs() < 1e-12, "n={n} not centered");
            }
            // circumradius 1
            for p in &v {
                let r: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((r - 1.0).abs() < 1e-12, "n={n} radius {r}");
            }
            // equal pairwise distances
            let d01: f64 = v[0].iter().zip(&v[1]).map(|(a, b)| (a - b) * (a - b)).sum();
            for i in 0..v.len() {
                for j in (i + 1)..v.len() {
                    let d: f64 = v[i].iter().zip(&v[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                    assert!((d - d01).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn spectral_norms() {
        let mut m = SymMat::zero(2);
        m.set(0, 0, 3.0);
        m.set(1, 1, -4.0);
        assert!((m.spectral_norm() - 4.0).abs() < 1e-14);

        let mut m3 = SymMat::identity(3);
        m3.set(0, 1, 0.5);
        let e = m3.eigenvalues();
        assert!((e[0] - 0.5).abs() < 1e-12);
        assert!((e[2] - 1.5).abs() < 1e-12);
    }
}
