//! Uniform simplicial triangulation of the flat torus `[0, 2pi)^d`, d = 2, 3.
//!
//! The torus is split into `n^d` axis-aligned boxes of side `h = 2pi/n`; each
//! box is split into simplices by the Kuhn construction (two triangles per
//! square, six tetrahedra per cube). Vertices are identified periodically, so
//! the mesh has exactly `n^d` vertices and no boundary: every facet is shared
//! by exactly two cells.
//!
//! Cells store their corners as *unwrapped* lattice coordinates (entries in
//! `0..=n`); the wrapped vertex index plus a per-corner shift in `{0, 2pi}`
//! recovers the periodic identification. All orderings are lexicographic in
//! the lattice index, so meshes are reproducible from `(dim, n)` alone.

use crate::error::{Error, Result};
use crate::TORUS_LENGTH;

/// Simplicial cell: `dim + 1` corners given both as wrapped vertex indices
/// and as unwrapped lattice coordinates.
#[derive(Debug, Clone)]
pub struct Cell {
    /// Wrapped (identified) vertex indices, length `dim + 1`.
    pub vertex_ids: [usize; 4],
    /// Unwrapped lattice coordinates of the corners, entries in `0..=n`.
    pub lattice: [[i64; 3]; 4],
    /// Which of the Kuhn sub-simplices of the box this is (0..2 or 0..6).
    pub type_id: u8,
}

/// Affine map from the reference simplex onto one cell.
#[derive(Debug, Clone)]
pub struct CellGeometry {
    /// Image of the reference origin (first corner, unwrapped coordinates).
    pub translation: [f64; 3],
    /// Columns `j` hold `p_{j+1} - p_0`.
    pub jacobian: [[f64; 3]; 3],
    /// `|det J| / d!`.
    pub volume: f64,
    /// Inverse transpose of the Jacobian; pushes reference gradients forward.
    pub inv_jac_t: [[f64; 3]; 3],
}

#[derive(Debug, Clone)]
pub struct PeriodicMesh {
    dim: usize,
    n: usize,
    h: f64,
    vertices: Vec<[f64; 3]>,
    cells: Vec<Cell>,
}

/// Build the uniform Kuhn triangulation of the `dim`-torus with `n` boxes per
/// axis. Rejects `dim` outside `{2, 3}` and `n < 1`.
pub fn build_periodic_mesh(dim: usize, n: usize) -> Result<PeriodicMesh> {
    if dim != 2 && dim != 3 {
        return Err(Error::Config(format!(
            "mesh dimension must be 2 or 3, got {dim}"
        )));
    }
    if n < 1 {
        return Err(Error::Config("cells per axis must be at least 1".into()));
    }
    let h = TORUS_LENGTH / n as f64;

    let n_vertices = n.pow(dim as u32);
    let mut vertices = Vec::with_capacity(n_vertices);
    if dim == 2 {
        // lexicographic: id = i + n*j
        for j in 0..n {
            for i in 0..n {
                vertices.push([i as f64 * h, j as f64 * h, 0.0]);
            }
        }
    } else {
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    vertices.push([i as f64 * h, j as f64 * h, k as f64 * h]);
                }
            }
        }
    }

    let mut cells = Vec::new();
    if dim == 2 {
        for j in 0..n as i64 {
            for i in 0..n as i64 {
                let c00 = [i, j, 0];
                let c10 = [i + 1, j, 0];
                let c11 = [i + 1, j + 1, 0];
                let c01 = [i, j + 1, 0];
                cells.push(make_cell(&[c00, c10, c11], 0, n));
                cells.push(make_cell(&[c00, c11, c01], 1, n));
            }
        }
    } else {
        // Kuhn split: one tetrahedron per permutation of the axes, walking
        // from the low corner to the high corner one axis at a time.
        const PERMS: [([usize; 3], bool); 6] = [
            ([0, 1, 2], true),
            ([0, 2, 1], false),
            ([1, 0, 2], false),
            ([1, 2, 0], true),
            ([2, 0, 1], true),
            ([2, 1, 0], false),
        ];
        for k in 0..n as i64 {
            for j in 0..n as i64 {
                for i in 0..n as i64 {
                    let base = [i, j, k];
                    for (t, (perm, even)) in PERMS.iter().enumerate() {
                        let mut corners = [base; 4];
                        for step in 0..3 {
                            corners[step + 1] = corners[step];
                            corners[step + 1][perm[step]] += 1;
                        }
                        // odd permutations walk the cube with negative
                        // orientation; swap the last two corners to fix it
                        if !even {
                            corners.swap(2, 3);
                        }
                        cells.push(make_cell(&corners, t as u8, n));
                    }
                }
            }
        }
    }

    let mesh = PeriodicMesh {
        dim,
        n,
        h,
        vertices,
        cells,
    };
    debug_assert!(mesh.cells.iter().enumerate().all(|(ci, _)| {
        mesh.cell_geometry_unchecked(ci).volume > 0.0
    }));
    Ok(mesh)
}

fn make_cell(corners: &[[i64; 3]], type_id: u8, n: usize) -> Cell {
    let mut vertex_ids = [0usize; 4];
    let mut lattice = [[0i64; 3]; 4];
    for (k, c) in corners.iter().enumerate() {
        lattice[k] = *c;
        let wrapped: Vec<usize> = c.iter().map(|&x| (x.rem_euclid(n as i64)) as usize).collect();
        vertex_ids[k] = wrapped[0] + n * wrapped[1] + n * n * wrapped[2];
    }
    Cell {
        vertex_ids,
        lattice,
        type_id,
    }
}

impl PeriodicMesh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Boxes per axis.
    pub fn cells_per_axis(&self) -> usize {
        self.n
    }

    /// Mesh size `h = 2pi / n`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn vertex(&self, v: usize) -> &[f64; 3] {
        &self.vertices[v]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, ci: usize) -> Result<&Cell> {
        self.cells.get(ci).ok_or(Error::IndexOutOfRange {
            what: "cell",
            index: ci,
            len: self.cells.len(),
        })
    }

    /// Unwrapped position of corner `k` of cell `ci` (vertex plus periodic
    /// shift), valid as a point of the affine cell embedding.
    pub fn corner_position(&self, cell: &Cell, k: usize) -> [f64; 3] {
        let l = cell.lattice[k];
        [
            l[0] as f64 * self.h,
            l[1] as f64 * self.h,
            l[2] as f64 * self.h,
        ]
    }

    /// Periodic shift of corner `k`: componentwise `0` or `2pi` (times the
    /// wrap count, which is at most one for this lattice).
    pub fn corner_shift(&self, cell: &Cell, k: usize) -> [f64; 3] {
        let l = cell.lattice[k];
        let n = self.n as i64;
        [
            l[0].div_euclid(n) as f64 * TORUS_LENGTH,
            l[1].div_euclid(n) as f64 * TORUS_LENGTH,
            l[2].div_euclid(n) as f64 * TORUS_LENGTH,
        ]
    }

    fn cell_geometry_unchecked(&self, ci: usize) -> CellGeometry {
        let cell = &self.cells[ci];
        let p0 = self.corner_position(cell, 0);
        let mut jac = [[0.0; 3]; 3];
        for j in 0..self.dim {
            let pj = self.corner_position(cell, j + 1);
            for r in 0..self.dim {
                jac[r][j] = pj[r] - p0[r];
            }
        }
        if self.dim == 2 {
            jac[2][2] = 1.0; // pad so 3x3 determinant formulas stay valid
        }
        let det = det3(&jac);
        let d_factorial = if self.dim == 2 { 2.0 } else { 6.0 };
        let inv = inv3(&jac, det);
        let mut inv_t = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                inv_t[r][c] = inv[c][r];
            }
        }
        CellGeometry {
            translation: p0,
            jacobian: jac,
            volume: det / d_factorial,
            inv_jac_t: inv_t,
        }
    }

    /// Affine geometry of cell `ci`.
    pub fn cell_geometry(&self, ci: usize) -> Result<CellGeometry> {
        self.cell(ci)?;
        let geo = self.cell_geometry_unchecked(ci);
        debug_assert!(geo.volume > 0.0, "cell {ci} has nonpositive volume");
        Ok(geo)
    }

    /// Canonical facet keys of one cell: each facet (the `dim` corners
    /// obtained by dropping one) is translated so its lattice minimum sits at
    /// the origin, and that anchor is reduced modulo `n`. Two cells share a
    /// geometric facet of the torus iff the keys match.
    pub fn facet_keys(&self, cell: &Cell) -> Vec<(Vec<[i64; 3]>, [i64; 3])> {
        let n = self.n as i64;
        let nc = self.dim + 1;
        let mut keys = Vec::with_capacity(nc);
        for drop in 0..nc {
            let mut corners: Vec<[i64; 3]> = (0..nc)
                .filter(|&k| k != drop)
                .map(|k| cell.lattice[k])
                .collect();
            let mut anchor = [i64::MAX; 3];
            for c in &corners {
                for a in 0..3 {
                    anchor[a] = anchor[a].min(c[a]);
                }
            }
            for c in &mut corners {
                for a in 0..3 {
                    c[a] -= anchor[a];
                }
            }
            corners.sort_unstable();
            let anchor_mod = [
                anchor[0].rem_euclid(n),
                anchor[1].rem_euclid(n),
                anchor[2].rem_euclid(n),
            ];
            keys.push((corners, anchor_mod));
        }
        keys
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn inv3(m: &[[f64; 3]; 3], det: f64) -> [[f64; 3]; 3] {
    let inv_det = 1.0 / det;
    let mut out = [[0.0; 3]; 3];
    out[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv_det;
    out[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv_det;
    out[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv_det;
    out[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv_det;
    out[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv_det;
    out[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv_det;
    out[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv_det;
    out[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv_det;
    out[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv_det;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn counts_2d() {
        let m = build_periodic_mesh(2, 2).unwrap();
        assert_eq!(m.num_vertices(), 4);
        assert_eq!(m.num_cells(), 8);
        let m1 = build_periodic_mesh(2, 1).unwrap();
        assert_eq!(m1.num_vertices(), 1);
        assert_eq!(m1.num_cells(), 2);
    }

    #[test]
    fn counts_3d() {
        let m = build_periodic_mesh(3, 2).unwrap();
        assert_eq!(m.num_vertices(), 8);
        assert_eq!(m.num_cells(), 48);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(build_periodic_mesh(1, 4).is_err());
        assert!(build_periodic_mesh(4, 4).is_err());
        assert!(build_periodic_mesh(2, 0).is_err());
    }

    #[test]
    fn volumes_partition_the_torus() {
        for (dim, n) in [(2usize, 1usize), (2, 2), (2, 5), (3, 1), (3, 2), (3, 3)] {
            let m = build_periodic_mesh(dim, n).unwrap();
            let mut total = 0.0;
            let uniform = if dim == 2 {
                0.5 * m.h() * m.h()
            } else {
                m.h().powi(3) / 6.0
            };
            for ci in 0..m.num_cells() {
                let geo = m.cell_geometry(ci).unwrap();
                assert!(geo.volume > 0.0);
                assert!((geo.volume - uniform).abs() <= 1e-13 * uniform);
                total += geo.volume;
            }
            let expected = TORUS_LENGTH.powi(dim as i32);
            assert!(
                (total - expected).abs() <= 1e-11 * expected,
                "dim {dim} n {n}: total {total} vs {expected}"
            );
        }
    }

    #[test]
    fn every_facet_shared_by_exactly_two_cells() {
        for (dim, n) in [(2usize, 1usize), (2, 2), (2, 4), (3, 1), (3, 2)] {
            let m = build_periodic_mesh(dim, n).unwrap();
            let mut histogram: HashMap<(Vec<[i64; 3]>, [i64; 3]), usize> = HashMap::new();
            for cell in m.cells() {
                for key in m.facet_keys(cell) {
                    *histogram.entry(key).or_insert(0) += 1;
                }
            }
            for (key, count) in &histogram {
                assert_eq!(*count, 2, "dim {dim} n {n}: facet {key:?} seen {count} times");
            }
        }
    }

    #[test]
    fn gradient_pushforward_matches_affine_functions() {
        // An affine function a + g.x restricted to a cell has reference
        // gradient J^T g; pushing it forward must return g.
        let m = build_periodic_mesh(2, 3).unwrap();
        let g = [0.7, -1.3, 0.0];
        for ci in [0usize, 5, m.num_cells() - 1] {
            let geo = m.cell_geometry(ci).unwrap();
            let mut ref_grad = [0.0; 3];
            for r in 0..2 {
                for c in 0..2 {
                    ref_grad[r] += geo.jacobian[c][r] * g[c];
                }
            }
            let mut back = [0.0; 3];
            for r in 0..2 {
                for c in 0..2 {
                    back[r] += geo.inv_jac_t[r][c] * ref_grad[c];
                }
            }
            for r in 0..2 {
                assert!((back[r] - g[r]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn translation_symmetry_permutes_cells() {
        for (dim, n) in [(2usize, 3usize), (3, 2)] {
            let m = build_periodic_mesh(dim, n).unwrap();
            let shift_vertex = |v: usize| -> usize {
                let i = v % n;
                let j = (v / n) % n;
                let k = v / (n * n);
                ((i + 1) % n) + n * j + n * n * k
            };
            let canon = |ids: &[usize; 4]| {
                let mut s: Vec<usize> = ids[..dim + 1].to_vec();
                s.sort_unstable();
                s
            };
            let mut original: Vec<Vec<usize>> = m.cells().iter().map(|c| canon(&c.vertex_ids)).collect();
            let mut shifted: Vec<Vec<usize>> = m
                .cells()
                .iter()
                .map(|c| {
                    let mut ids = c.vertex_ids;
                    for k in 0..=dim {
                        ids[k] = shift_vertex(ids[k]);
                    }
                    canon(&ids)
                })
                .collect();
            original.sort();
            shifted.sort();
            assert_eq!(original, shifted);
        }
    }

    #[test]
    fn mesh_size_halves_exactly() {
        let m4 = build_periodic_mesh(2, 4).unwrap();
        let m8 = build_periodic_mesh(2, 8).unwrap();
        assert_eq!(m4.h(), TORUS_LENGTH / 4.0);
        assert_eq!(m8.h(), 0.5 * m4.h());
    }

    #[test]
    fn cell_index_out_of_range() {
        let m = build_periodic_mesh(2, 2).unwrap();
        assert!(m.cell_geometry(m.num_cells()).is_err());
    }
}
