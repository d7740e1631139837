//! Uniform Laplacian smoothing.

use nalgebra::Point3;

use super::{GeometryError, TriMesh};

/// Moves each vertex toward the mean of its one-ring neighbors:
/// `v <- v + lambda * (mean(neighbors) - v)`, repeated `iters` times.
/// Isolated vertices are left unchanged; connectivity is preserved.
pub fn laplacian_smooth(mesh: &TriMesh, lambda: f64, iters: usize) -> Result<TriMesh, GeometryError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeometryError::BadLambda(lambda));
    }
    let adjacency = mesh.vertex_adjacency();
    let mut positions: Vec<Point3<f64>> = mesh.vertices().to_vec();
    for _ in 0..iters {
        let prev = positions.clone();
        for (v, neighbors) in adjacency.iter().enumerate() {
            if neighbors.is_empty() {
                continue;
            }
            let mut mean = nalgebra::Vector3::zeros();
            for &n in neighbors {
                mean += prev[n].coords;
            }
            mean /= neighbors.len() as f64;
            positions[v] = Point3::from(prev[v].coords + lambda * (mean - prev[v].coords));
        }
    }
    mesh.with_vertices(positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sampling::icosphere;

    fn star() -> TriMesh {
        // Center vertex surrounded by 4 symmetric neighbors.
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(-1.0, 0.0, 0.0),
            Point3::new(0.0, -1.0, 0.0),
        ];
        let f = vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]];
        TriMesh::new(v, f).unwrap()
    }

    #[test]
    fn symmetric_neighborhood_leaves_center_fixed() {
        let m = star();
        let s = laplacian_smooth(&m, 0.2, 1).unwrap();
        assert!(s.vertices()[0].coords.norm() < 1e-15);
    }

    #[test]
    fn update_formula_is_exact() {
        // Vertex at (1,0,0), all neighbors at the origin.
        let v = vec![
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(0.0, 0.0, 0.0),
        ];
        let m = TriMesh::new(v, vec![[0, 1, 2]]).unwrap();
        let s = laplacian_smooth(&m, 0.2, 1).unwrap();
        assert!((s.vertices()[0] - Point3::new(0.8, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lambda_zero_is_identity() {
        let m = icosphere(1);
        let s = laplacian_smooth(&m, 0.0, 3).unwrap();
        assert_eq!(m.vertices(), s.vertices());
    }

    #[test]
    fn rejects_bad_lambda() {
        let m = icosphere(0);
        assert!(matches!(laplacian_smooth(&m, 1.5, 1), Err(GeometryError::BadLambda(_))));
    }

    #[test]
    fn never_grows_bounding_diagonal() {
        let m = icosphere(2);
        let (lo0, hi0) = m.bounds().unwrap();
        for lambda in [0.1, 0.5, 1.0] {
            let s = laplacian_smooth(&m, lambda, 4).unwrap();
            let (lo, hi) = s.bounds().unwrap();
            assert!((hi - lo).norm() <= (hi0 - lo0).norm() + 1e-12);
        }
    }
}
