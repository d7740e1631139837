//! Indexed triangle mesh.

use std::collections::HashMap;

use nalgebra::{Point3, Vector3};

use super::GeometryError;

/// Indexed triangle mesh with optional per-vertex unit normals.
///
/// Vertices use normalized units; garment-space geometry lives in `[-1,1]^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    vertices: Vec<Point3<f64>>,
    faces: Vec<[usize; 3]>,
    normals: Option<Vec<Vector3<f64>>>,
}

impl TriMesh {
    /// Builds a mesh, validating face indices and rejecting degenerate faces.
    pub fn new(vertices: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Result<Self, GeometryError> {
        for (fi, f) in faces.iter().enumerate() {
            for &i in f {
                if i >= vertices.len() {
                    return Err(GeometryError::FaceIndexOutOfRange {
                        face: fi,
                        index: i,
                        count: vertices.len(),
                    });
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                let dup = if f[0] == f[1] { f[0] } else { f[2] };
                return Err(GeometryError::DegenerateFace { face: fi, index: dup });
            }
        }
        Ok(Self { vertices, faces, normals: None })
    }

    /// Attaches per-vertex normals, which must be unit length within 1e-6.
    pub fn with_normals(mut self, normals: Vec<Vector3<f64>>) -> Result<Self, GeometryError> {
        if normals.len() != self.vertices.len() {
            return Err(GeometryError::NormalCountMismatch {
                normals: normals.len(),
                vertices: self.vertices.len(),
            });
        }
        for (i, n) in normals.iter().enumerate() {
            let len = n.norm();
            if (len - 1.0).abs() > 1e-6 {
                return Err(GeometryError::NonUnitNormal { index: i, len });
            }
        }
        self.normals = Some(normals);
        Ok(self)
    }

    /// An empty mesh (no vertices, no faces).
    pub fn empty() -> Self {
        Self { vertices: Vec::new(), faces: Vec::new(), normals: None }
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn normals(&self) -> Option<&[Vector3<f64>]> {
        self.normals.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }

    /// Replaces vertex positions, keeping connectivity. Counts must match.
    pub fn with_vertices(&self, vertices: Vec<Point3<f64>>) -> Result<Self, GeometryError> {
        if vertices.len() != self.vertices.len() {
            return Err(GeometryError::VertexCountMismatch(vertices.len(), self.vertices.len()));
        }
        Ok(Self { vertices, faces: self.faces.clone(), normals: None })
    }

    /// Mutable access for vertex edits that preserve connectivity.
    pub fn vertices_mut(&mut self) -> &mut [Point3<f64>] {
        self.normals = None;
        &mut self.vertices
    }

    pub fn face_positions(&self, face: usize) -> [Point3<f64>; 3] {
        let [a, b, c] = self.faces[face];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn face_normal(&self, face: usize) -> Vector3<f64> {
        let [a, b, c] = self.face_positions(face);
        let n = (b - a).cross(&(c - a));
        let len = n.norm();
        if len > 0.0 {
            n / len
        } else {
            Vector3::zeros()
        }
    }

    pub fn face_area(&self, face: usize) -> f64 {
        let [a, b, c] = self.face_positions(face);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    pub fn face_centroid(&self, face: usize) -> Point3<f64> {
        let [a, b, c] = self.face_positions(face);
        Point3::from((a.coords + b.coords + c.coords) / 3.0)
    }

    /// Axis-aligned bounding box, or `None` for an empty mesh.
    pub fn bounds(&self) -> Option<(Point3<f64>, Point3<f64>)> {
        let first = *self.vertices.first()?;
        let mut lo = first;
        let mut hi = first;
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        Some((lo, hi))
    }

    /// Undirected edge list with the number of faces sharing each edge.
    pub fn edge_face_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                let key = (a.min(b), a.max(b));
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        counts
    }

    /// True when every edge is shared by exactly two faces.
    pub fn is_watertight(&self) -> bool {
        !self.is_empty() && self.edge_face_counts().values().all(|&c| c == 2)
    }

    /// True when the mesh has at least one boundary edge (open surface).
    pub fn has_boundary(&self) -> bool {
        self.edge_face_counts().values().any(|&c| c == 1)
    }

    /// Vertices − edges + faces.
    pub fn euler_characteristic(&self) -> i64 {
        let e = self.edge_face_counts().len() as i64;
        self.vertices.len() as i64 - e + self.faces.len() as i64
    }

    /// One-ring vertex adjacency.
    pub fn vertex_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Area-weighted per-vertex normals (angle weighting via cross products).
    pub fn compute_vertex_normals(&self) -> Vec<Vector3<f64>> {
        let mut acc = vec![Vector3::zeros(); self.vertices.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            let [a, b, c] = self.face_positions(fi);
            let n = (b - a).cross(&(c - a));
            for &v in f {
                acc[v] += n;
            }
        }
        for n in &mut acc {
            let len = n.norm();
            if len > 0.0 {
                *n /= len;
            }
        }
        acc
    }

    /// Signed volume via the divergence theorem; positive for outward-facing
    /// closed meshes.
    pub fn signed_volume(&self) -> f64 {
        let mut vol = 0.0;
        for f in 0..self.faces.len() {
            let [a, b, c] = self.face_positions(f);
            vol += a.coords.dot(&b.coords.cross(&c.coords)) / 6.0;
        }
        vol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn tetra() -> TriMesh {
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
        ];
        let f = vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
        TriMesh::new(v, f).unwrap()
    }

    #[test]
    fn rejects_out_of_range_index() {
        let v = vec![Point3::origin(), Point3::new(1.0, 0.0, 0.0)];
        let err = TriMesh::new(v, vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, GeometryError::FaceIndexOutOfRange { .. }));
    }

    #[test]
    fn rejects_degenerate_face() {
        let v = vec![Point3::origin(), Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0)];
        let err = TriMesh::new(v, vec![[0, 0, 1]]).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateFace { .. }));
    }

    #[test]
    fn rejects_non_unit_normals() {
        let v = vec![Point3::origin(), Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0)];
        let m = TriMesh::new(v, vec![[0, 1, 2]]).unwrap();
        let err = m.with_normals(vec![Vector3::new(0.0, 0.0, 2.0); 3]).unwrap_err();
        assert!(matches!(err, GeometryError::NonUnitNormal { .. }));
    }

    #[test]
    fn tetra_is_watertight_with_euler_two() {
        let m = tetra();
        assert!(m.is_watertight());
        assert!(!m.has_boundary());
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn single_triangle_has_boundary() {
        let v = vec![Point3::origin(), Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0)];
        let m = TriMesh::new(v, vec![[0, 1, 2]]).unwrap();
        assert!(!m.is_watertight());
        assert!(m.has_boundary());
    }

    #[test]
    fn tetra_volume_positive_when_outward() {
        assert!(tetra().signed_volume() > 0.0);
    }
}
