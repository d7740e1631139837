//! Mesh data structures, spatial queries, marching cubes, smoothing, and
//! evaluation metrics.

mod grid;
mod marching_cubes;
mod mc_tables;
mod mesh;
mod metrics;
mod obj;
mod proximity;
mod sampling;
mod smooth;

pub use grid::ScalarGrid;
pub use marching_cubes::marching_cubes;
pub use mesh::TriMesh;
pub use metrics::{interpenetration_ratio, metrics, MeshMetrics};
pub use obj::{read_obj, write_obj};
pub use proximity::{ClosestPoint, ProximityIndex};
pub use sampling::{sample_surface, SurfaceSample};
pub use smooth::laplacian_smooth;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("face {face} references vertex {index} but mesh has {count} vertices")]
    FaceIndexOutOfRange { face: usize, index: usize, count: usize },
    #[error("face {face} is degenerate (repeated vertex index {index})")]
    DegenerateFace { face: usize, index: usize },
    #[error("normal {index} has length {len}, expected unit length")]
    NonUnitNormal { index: usize, len: f64 },
    #[error("normal count {normals} does not match vertex count {vertices}")]
    NormalCountMismatch { normals: usize, vertices: usize },
    #[error("cannot build a proximity index over an empty mesh")]
    EmptyMesh,
    #[error("signed distance requires a watertight mesh")]
    NotWatertight,
    #[error("grid resolution must be at least 2 per axis, got {0}x{1}x{2}")]
    GridTooSmall(usize, usize, usize),
    #[error("grid bounding box has non-positive extent on axis {0}")]
    DegenerateBounds(usize),
    #[error("grid value count {values} does not match resolution {expected}")]
    GridValueCount { values: usize, expected: usize },
    #[error("smoothing factor must be in [0, 1], got {0}")]
    BadLambda(f64),
    #[error("vertex counts differ ({0} vs {1}); ED/MVE require correspondence")]
    VertexCountMismatch(usize, usize),
    #[error("grid file corrupt: {0}")]
    BadGridFile(String),
    #[error("OBJ parse error at line {line}: {message}")]
    ObjParse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
