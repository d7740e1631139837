//! Closest-point and signed-distance queries on triangle meshes.
//!
//! A bounding-volume hierarchy over faces accelerates queries; results are
//! identical to a brute-force scan over all faces (ties broken toward the
//! smaller face index in both paths). Inside/outside classification uses the
//! angle-weighted pseudonormal test, which is exact for watertight meshes.

use std::collections::HashMap;

use nalgebra::{Point3, Vector3};

use super::{GeometryError, TriMesh};

/// Result of a closest-point query.
#[derive(Debug, Clone, Copy)]
pub struct ClosestPoint {
    pub point: Point3<f64>,
    pub face: usize,
    /// Barycentric coordinates of `point` within `face`.
    pub bary: [f64; 3],
    pub dist: f64,
}

#[derive(Debug, Clone, Copy)]
struct Aabb {
    lo: Point3<f64>,
    hi: Point3<f64>,
}

impl Aabb {
    fn empty() -> Self {
        Self {
            lo: Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            hi: Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow_point(&mut self, p: &Point3<f64>) {
        for k in 0..3 {
            self.lo[k] = self.lo[k].min(p[k]);
            self.hi[k] = self.hi[k].max(p[k]);
        }
    }

    fn dist_sq(&self, p: &Point3<f64>) -> f64 {
        let mut d = 0.0;
        for k in 0..3 {
            let v = if p[k] < self.lo[k] {
                self.lo[k] - p[k]
            } else if p[k] > self.hi[k] {
                p[k] - self.hi[k]
            } else {
                0.0
            };
            d += v * v;
        }
        d
    }
}

#[derive(Debug, Clone)]
enum Node {
    Leaf { start: usize, len: usize },
    Inner { bbox_left: Aabb, bbox_right: Aabb, left: usize, right: usize },
}

/// Acceleration structure for proximity queries on a fixed mesh.
///
/// Immutable after construction; queries take `&self`.
#[derive(Debug, Clone)]
pub struct ProximityIndex {
    mesh: TriMesh,
    nodes: Vec<Node>,
    root_bbox: Aabb,
    /// Face ids ordered so each leaf owns a contiguous slice.
    face_order: Vec<usize>,
    face_normals: Vec<Vector3<f64>>,
    edge_pseudonormals: HashMap<(usize, usize), Vector3<f64>>,
    vertex_pseudonormals: Vec<Vector3<f64>>,
    watertight: bool,
}

const LEAF_SIZE: usize = 8;

impl ProximityIndex {
    pub fn build(mesh: &TriMesh) -> Result<Self, GeometryError> {
        if mesh.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }
        let face_normals: Vec<Vector3<f64>> =
            (0..mesh.face_count()).map(|f| mesh.face_normal(f)).collect();

        // Angle-weighted vertex pseudonormals; edge pseudonormals are the sum
        // of the two incident face normals.
        let mut vertex_pseudonormals = vec![Vector3::zeros(); mesh.vertex_count()];
        let mut edge_pseudonormals: HashMap<(usize, usize), Vector3<f64>> = HashMap::new();
        for (fi, f) in mesh.faces().iter().enumerate() {
            let p = mesh.face_positions(fi);
            for corner in 0..3 {
                let a = p[corner];
                let b = p[(corner + 1) % 3];
                let c = p[(corner + 2) % 3];
                let u = b - a;
                let v = c - a;
                let cos = (u.dot(&v) / (u.norm() * v.norm())).clamp(-1.0, 1.0);
                let angle = cos.acos();
                vertex_pseudonormals[f[corner]] += angle * face_normals[fi];
            }
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                let key = (a.min(b), a.max(b));
                *edge_pseudonormals.entry(key).or_insert_with(Vector3::zeros) += face_normals[fi];
            }
        }

        let watertight = mesh.is_watertight();

        let mut face_order: Vec<usize> = (0..mesh.face_count()).collect();
        let centroids: Vec<Point3<f64>> =
            (0..mesh.face_count()).map(|f| mesh.face_centroid(f)).collect();
        let mut nodes = Vec::new();
        let root_bbox = bbox_of(mesh, &face_order);
        build_node(mesh, &centroids, &mut face_order, 0, mesh.face_count(), &mut nodes);

        Ok(Self {
            mesh: mesh.clone(),
            nodes,
            root_bbox,
            face_order,
            face_normals,
            edge_pseudonormals,
            vertex_pseudonormals,
            watertight,
        })
    }

    pub fn mesh(&self) -> &TriMesh {
        &self.mesh
    }

    pub fn is_watertight(&self) -> bool {
        self.watertight
    }

    /// Closest point on the mesh surface to `x`; the global minimum over all
    /// faces, ties broken toward the smaller face index.
    pub fn closest_point(&self, x: &Point3<f64>) -> ClosestPoint {
        let mut best = ClosestPoint {
            point: Point3::origin(),
            face: usize::MAX,
            bary: [0.0; 3],
            dist: f64::INFINITY,
        };
        let mut best_sq = f64::INFINITY;
        self.visit(0, &self.root_bbox.clone(), x, &mut best, &mut best_sq);
        best
    }

    fn visit(&self, node: usize, bbox: &Aabb, x: &Point3<f64>, best: &mut ClosestPoint, best_sq: &mut f64) {
        if bbox.dist_sq(x) > *best_sq {
            return;
        }
        match &self.nodes[node] {
            Node::Leaf { start, len } => {
                for &face in &self.face_order[*start..*start + *len] {
                    let [a, b, c] = self.mesh.face_positions(face);
                    let (p, bary) = closest_point_on_triangle(x, &a, &b, &c);
                    let d_sq = (x - p).norm_squared();
                    if d_sq < *best_sq || (d_sq == *best_sq && face < best.face) {
                        *best_sq = d_sq;
                        *best = ClosestPoint { point: p, face, bary, dist: d_sq.sqrt() };
                    }
                }
            }
            Node::Inner { bbox_left, bbox_right, left, right } => {
                let dl = bbox_left.dist_sq(x);
                let dr = bbox_right.dist_sq(x);
                if dl <= dr {
                    self.visit(*left, bbox_left, x, best, best_sq);
                    self.visit(*right, bbox_right, x, best, best_sq);
                } else {
                    self.visit(*right, bbox_right, x, best, best_sq);
                    self.visit(*left, bbox_left, x, best, best_sq);
                }
            }
        }
    }

    /// Distance from `x` to the surface (always non-negative).
    pub fn unsigned_distance(&self, x: &Point3<f64>) -> f64 {
        self.closest_point(x).dist
    }

    /// Signed distance: negative inside, positive outside.
    ///
    /// Errors unless the mesh is watertight; use [`Self::unsigned_distance`]
    /// for open surfaces.
    pub fn signed_distance(&self, x: &Point3<f64>) -> Result<f64, GeometryError> {
        if !self.watertight {
            return Err(GeometryError::NotWatertight);
        }
        let cp = self.closest_point(x);
        let n = self.pseudonormal_at(&cp);
        let sign = if (x - cp.point).dot(&n) < 0.0 { -1.0 } else { 1.0 };
        Ok(sign * cp.dist)
    }

    /// Signed distances for a batch of points.
    pub fn signed_distances(&self, xs: &[Point3<f64>]) -> Result<Vec<f64>, GeometryError> {
        xs.iter().map(|x| self.signed_distance(x)).collect()
    }

    /// Pseudonormal of the feature (face interior, edge, or vertex) that the
    /// closest point lies on. Not normalized; only the sign of a dot product
    /// against it is meaningful.
    pub fn pseudonormal_at(&self, cp: &ClosestPoint) -> Vector3<f64> {
        const EPS: f64 = 1e-9;
        let f = self.mesh.faces()[cp.face];
        let zero: Vec<usize> = (0..3).filter(|&k| cp.bary[k] <= EPS).collect();
        match zero.len() {
            0 => self.face_normals[cp.face],
            1 => {
                // On the edge opposite to the zero-weight corner.
                let a = f[(zero[0] + 1) % 3];
                let b = f[(zero[0] + 2) % 3];
                let key = (a.min(b), a.max(b));
                self.edge_pseudonormals
                    .get(&key)
                    .copied()
                    .unwrap_or(self.face_normals[cp.face])
            }
            _ => {
                // At the corner with the dominant weight.
                let k = (0..3).max_by(|&i, &j| cp.bary[i].total_cmp(&cp.bary[j])).unwrap();
                self.vertex_pseudonormals[f[k]]
            }
        }
    }

    /// Brute-force reference scan used by tests and the index invariant.
    pub fn closest_point_brute_force(&self, x: &Point3<f64>) -> ClosestPoint {
        let mut best = ClosestPoint {
            point: Point3::origin(),
            face: usize::MAX,
            bary: [0.0; 3],
            dist: f64::INFINITY,
        };
        let mut best_sq = f64::INFINITY;
        for face in 0..self.mesh.face_count() {
            let [a, b, c] = self.mesh.face_positions(face);
            let (p, bary) = closest_point_on_triangle(x, &a, &b, &c);
            let d_sq = (x - p).norm_squared();
            if d_sq < best_sq {
                best_sq = d_sq;
                best = ClosestPoint { point: p, face, bary, dist: d_sq.sqrt() };
            }
        }
        best
    }
}

fn bbox_of(mesh: &TriMesh, faces: &[usize]) -> Aabb {
    let mut bbox = Aabb::empty();
    for &f in faces {
        for p in mesh.face_positions(f) {
            bbox.grow_point(&p);
        }
    }
    bbox
}

/// Recursive median split along the widest centroid axis. Returns node index.
fn build_node(
    mesh: &TriMesh,
    centroids: &[Point3<f64>],
    order: &mut [usize],
    start: usize,
    len: usize,
    nodes: &mut Vec<Node>,
) -> usize {
    let id = nodes.len();
    if len <= LEAF_SIZE {
        nodes.push(Node::Leaf { start, len });
        return id;
    }
    // Placeholder; replaced once children are known.
    nodes.push(Node::Leaf { start, len });

    // Widest axis of the centroid bounds.
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    {
        let seg = &order[start..start + len];
        for &f in seg {
            let c = centroids[f];
            for k in 0..3 {
                lo[k] = lo[k].min(c[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
    }
    let mut axis = 0;
    let mut widest = hi[0] - lo[0];
    for k in 1..3 {
        if hi[k] - lo[k] > widest {
            widest = hi[k] - lo[k];
            axis = k;
        }
    }

    let mid = len / 2;
    order[start..start + len]
        .select_nth_unstable_by(mid, |&a, &b| centroids[a][axis].total_cmp(&centroids[b][axis]).then(a.cmp(&b)));

    let bbox_left = bbox_of(mesh, &order[start..start + mid]);
    let bbox_right = bbox_of(mesh, &order[start + mid..start + len]);
    let left = build_node(mesh, centroids, order, start, mid, nodes);
    let right = build_node(mesh, centroids, order, start + mid, len - mid, nodes);
    nodes[id] = Node::Inner { bbox_left, bbox_right, left, right };
    id
}

/// Closest point on triangle `(a, b, c)` to `p`, with barycentric
/// coordinates. Ericson's region-based method.
pub fn closest_point_on_triangle(
    p: &Point3<f64>,
    a: &Point3<f64>,
    b: &Point3<f64>,
    c: &Point3<f64>,
) -> (Point3<f64>, [f64; 3]) {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;

    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return (*a, [1.0, 0.0, 0.0]);
    }

    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return (*b, [0.0, 1.0, 0.0]);
    }

    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (a + ab * v, [1.0 - v, v, 0.0]);
    }

    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return (*c, [0.0, 0.0, 1.0]);
    }

    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (a + ac * w, [1.0 - w, 0.0, w]);
    }

    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (b + (c - b) * w, [0.0, 1.0 - w, w]);
    }

    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (a + ab * v + ac * w, [1.0 - v - w, v, w])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sampling::icosphere;
    use rand::Rng;

    #[test]
    fn empty_mesh_is_a_construction_error() {
        let err = ProximityIndex::build(&TriMesh::empty()).unwrap_err();
        assert!(matches!(err, GeometryError::EmptyMesh));
    }

    #[test]
    fn closest_point_outside_unit_icosphere() {
        let sphere = icosphere(3);
        let idx = ProximityIndex::build(&sphere).unwrap();
        let cp = idx.closest_point(&Point3::new(2.0, 0.0, 0.0));
        assert!((cp.dist - 1.0).abs() < 0.01);
        let s: f64 = cp.bary.iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(cp.bary.iter().all(|&b| b >= 0.0));
    }

    #[test]
    fn closest_point_at_existing_vertex() {
        let sphere = icosphere(1);
        let idx = ProximityIndex::build(&sphere).unwrap();
        let v = sphere.vertices()[7];
        let cp = idx.closest_point(&v);
        assert!(cp.dist < 1e-12);
        let ones = cp.bary.iter().filter(|&&b| (b - 1.0).abs() < 1e-9).count();
        let zeros = cp.bary.iter().filter(|&&b| b.abs() < 1e-9).count();
        assert_eq!((ones, zeros), (1, 2), "bary should be a basis vector, got {:?}", cp.bary);
    }

    #[test]
    fn closest_point_above_single_triangle() {
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ];
        let m = TriMesh::new(v, vec![[0, 1, 2]]).unwrap();
        let idx = ProximityIndex::build(&m).unwrap();
        let cp = idx.closest_point(&Point3::new(0.25, 0.25, 1.0));
        assert!((cp.point - Point3::new(0.25, 0.25, 0.0)).norm() < 1e-12);
        assert!((cp.dist - 1.0).abs() < 1e-12);
        assert!((cp.bary[0] - 0.5).abs() < 1e-12);
        assert!((cp.bary[1] - 0.25).abs() < 1e-12);
        assert!((cp.bary[2] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn signed_distance_matches_analytic_sphere() {
        let sphere = icosphere(3);
        let idx = ProximityIndex::build(&sphere).unwrap();
        assert!((idx.signed_distance(&Point3::origin()).unwrap() + 1.0).abs() < 0.01);
        assert!((idx.signed_distance(&Point3::new(0.0, 0.0, 1.5)).unwrap() - 0.5).abs() < 0.01);
        let on_surface = sphere.vertices()[3];
        assert!(idx.signed_distance(&on_surface).unwrap().abs() < 1e-6);
    }

    #[test]
    fn signed_distance_rejects_open_mesh() {
        let v = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ];
        let m = TriMesh::new(v, vec![[0, 1, 2]]).unwrap();
        let idx = ProximityIndex::build(&m).unwrap();
        let err = idx.signed_distance(&Point3::new(0.0, 0.0, 1.0)).unwrap_err();
        assert!(matches!(err, GeometryError::NotWatertight));
    }

    #[test]
    fn index_matches_brute_force_on_1000_random_queries() {
        let sphere = icosphere(2);
        let idx = ProximityIndex::build(&sphere).unwrap();
        let mut rng = crate::rng::stream1(42, 0);
        for _ in 0..1000 {
            let x = Point3::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            let fast = idx.closest_point(&x);
            let slow = idx.closest_point_brute_force(&x);
            assert_eq!(fast.dist.to_bits(), slow.dist.to_bits());
            assert_eq!(fast.face, slow.face);
        }
    }

    #[test]
    fn signed_distance_magnitude_continuous_across_surface() {
        let sphere = icosphere(3);
        let idx = ProximityIndex::build(&sphere).unwrap();
        let eps = 1e-4;
        let mut rng = crate::rng::stream1(7, 1);
        for _ in 0..50 {
            let dir = Vector3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalize();
            let cp = idx.closest_point(&Point3::from(dir * 2.0));
            let n = idx.pseudonormal_at(&cp).normalize();
            let out = idx.signed_distance(&(cp.point + n * eps)).unwrap();
            let inn = idx.signed_distance(&(cp.point - n * eps)).unwrap();
            assert!(
                (out.abs() + inn.abs() - 2.0 * eps).abs() < 1e-6,
                "|sd+| + |sd-| = {} should be ~{}",
                out.abs() + inn.abs(),
                2.0 * eps
            );
        }
    }
}
