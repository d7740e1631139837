//! Surface sampling and simple mesh generators.

use nalgebra::{Point3, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::TriMesh;

/// A point sampled on a mesh surface.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    pub point: Point3<f64>,
    /// Geometric normal of the face the sample lies on.
    pub normal: Vector3<f64>,
    pub face: usize,
    pub bary: [f64; 3],
}

/// Draws `n` area-weighted uniform samples from the mesh surface.
pub fn sample_surface(mesh: &TriMesh, n: usize, rng: &mut ChaCha8Rng) -> Vec<SurfaceSample> {
    assert!(!mesh.is_empty(), "cannot sample an empty mesh");
    let mut cumulative = Vec::with_capacity(mesh.face_count());
    let mut acc = 0.0;
    for f in 0..mesh.face_count() {
        acc += mesh.face_area(f);
        cumulative.push(acc);
    }
    let total = acc;

    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let t = rng.gen_range(0.0..total);
        let face = cumulative.partition_point(|&c| c < t).min(mesh.face_count() - 1);
        let [a, b, c] = mesh.face_positions(face);
        // sqrt trick for uniform barycentric sampling
        let r1: f64 = rng.gen();
        let r2: f64 = rng.gen();
        let s = r1.sqrt();
        let bary = [1.0 - s, s * (1.0 - r2), s * r2];
        let point = Point3::from(a.coords * bary[0] + b.coords * bary[1] + c.coords * bary[2]);
        out.push(SurfaceSample { point, normal: mesh.face_normal(face), face, bary });
    }
    out
}

/// Unit icosphere centered at the origin with the given subdivision level.
pub fn icosphere(subdivisions: usize) -> TriMesh {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point3<f64>> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Point3::from(Vector3::new(x, y, z).normalize()))
    .collect();

    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoint = std::collections::HashMap::new();
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut mids = [0usize; 3];
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                let key = (a.min(b), a.max(b));
                mids[k] = *midpoint.entry(key).or_insert_with(|| {
                    let m = (vertices[a].coords + vertices[b].coords) / 2.0;
                    vertices.push(Point3::from(m.normalize()));
                    vertices.len() - 1
                });
            }
            new_faces.push([f[0], mids[0], mids[2]]);
            new_faces.push([f[1], mids[1], mids[0]]);
            new_faces.push([f[2], mids[2], mids[1]]);
            new_faces.push([mids[0], mids[1], mids[2]]);
        }
        faces = new_faces;
    }

    TriMesh::new(vertices, faces).expect("icosphere construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_is_watertight_unit_sphere() {
        let m = icosphere(2);
        assert!(m.is_watertight());
        assert_eq!(m.euler_characteristic(), 2);
        for v in m.vertices() {
            assert!((v.coords.norm() - 1.0).abs() < 1e-12);
        }
        assert!(m.signed_volume() > 0.0, "faces should wind outward");
    }

    #[test]
    fn surface_samples_lie_on_faces() {
        let m = icosphere(1);
        let mut rng = crate::rng::stream1(3, 0);
        for s in sample_surface(&m, 200, &mut rng) {
            let [a, b, c] = m.face_positions(s.face);
            let rebuilt = a.coords * s.bary[0] + b.coords * s.bary[1] + c.coords * s.bary[2];
            assert!((rebuilt - s.point.coords).norm() < 1e-12);
            let sum: f64 = s.bary.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_is_area_weighted() {
        // Two triangles, one with 9x the area of the other.
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(10.0, 0.0, 0.0),
            Point3::new(13.0, 0.0, 0.0),
            Point3::new(10.0, 3.0, 0.0),
        ];
        let m = TriMesh::new(v, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        let mut rng = crate::rng::stream1(11, 0);
        let samples = sample_surface(&m, 4000, &mut rng);
        let big = samples.iter().filter(|s| s.face == 1).count();
        let frac = big as f64 / samples.len() as f64;
        assert!((frac - 0.9).abs() < 0.03, "expected ~90% on the big face, got {frac}");
    }
}
