//! Regular scalar field sampled on an axis-aligned grid.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::Point3;

use super::GeometryError;

const GRID_FORMAT_VERSION: u32 = 1;

/// Scalar field values on a regular grid, x-fastest order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    res: [usize; 3],
    lo: Point3<f64>,
    hi: Point3<f64>,
    values: Vec<f64>,
}

impl ScalarGrid {
    /// Samples `field` at every grid node over `[lo, hi]`.
    pub fn sample<F: Fn(&Point3<f64>) -> f64>(
        res: [usize; 3],
        lo: Point3<f64>,
        hi: Point3<f64>,
        field: F,
    ) -> Result<Self, GeometryError> {
        Self::check_dims(res, &lo, &hi)?;
        let mut values = Vec::with_capacity(res[0] * res[1] * res[2]);
        for k in 0..res[2] {
            for j in 0..res[1] {
                for i in 0..res[0] {
                    let p = Self::node_position(res, &lo, &hi, [i, j, k]);
                    values.push(field(&p));
                }
            }
        }
        Ok(Self { res, lo, hi, values })
    }

    /// Samples the default `[-1,1]^3` domain at cubic resolution `n`.
    pub fn sample_unit_cube<F: Fn(&Point3<f64>) -> f64>(n: usize, field: F) -> Result<Self, GeometryError> {
        Self::sample([n, n, n], Point3::new(-1.0, -1.0, -1.0), Point3::new(1.0, 1.0, 1.0), field)
    }

    pub fn from_values(
        res: [usize; 3],
        lo: Point3<f64>,
        hi: Point3<f64>,
        values: Vec<f64>,
    ) -> Result<Self, GeometryError> {
        Self::check_dims(res, &lo, &hi)?;
        let expected = res[0] * res[1] * res[2];
        if values.len() != expected {
            return Err(GeometryError::GridValueCount { values: values.len(), expected });
        }
        Ok(Self { res, lo, hi, values })
    }

    fn check_dims(res: [usize; 3], lo: &Point3<f64>, hi: &Point3<f64>) -> Result<(), GeometryError> {
        if res.iter().any(|&r| r < 2) {
            return Err(GeometryError::GridTooSmall(res[0], res[1], res[2]));
        }
        for k in 0..3 {
            if hi[k] <= lo[k] {
                return Err(GeometryError::DegenerateBounds(k));
            }
        }
        Ok(())
    }

    fn node_position(res: [usize; 3], lo: &Point3<f64>, hi: &Point3<f64>, idx: [usize; 3]) -> Point3<f64> {
        let mut p = Point3::origin();
        for k in 0..3 {
            let t = idx[k] as f64 / (res[k] - 1) as f64;
            p[k] = lo[k] + t * (hi[k] - lo[k]);
        }
        p
    }

    pub fn resolution(&self) -> [usize; 3] {
        self.res
    }

    pub fn bounds(&self) -> (Point3<f64>, Point3<f64>) {
        (self.lo, self.hi)
    }

    /// Spacing between adjacent nodes per axis.
    pub fn cell_size(&self) -> [f64; 3] {
        [
            (self.hi[0] - self.lo[0]) / (self.res[0] - 1) as f64,
            (self.hi[1] - self.lo[1]) / (self.res[1] - 1) as f64,
            (self.hi[2] - self.lo[2]) / (self.res[2] - 1) as f64,
        ]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[i + self.res[0] * (j + self.res[1] * k)]
    }

    pub fn position(&self, i: usize, j: usize, k: usize) -> Point3<f64> {
        Self::node_position(self.res, &self.lo, &self.hi, [i, j, k])
    }

    /// Binary dump: 16-byte header (3 x u32 resolution, u32 version) followed
    /// by little-endian f32 values in x-fastest order.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<(), GeometryError> {
        for r in self.res {
            w.write_all(&(r as u32).to_le_bytes())?;
        }
        w.write_all(&GRID_FORMAT_VERSION.to_le_bytes())?;
        for &v in &self.values {
            w.write_all(&(v as f32).to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R, lo: Point3<f64>, hi: Point3<f64>) -> Result<Self, GeometryError> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header)?;
        let word = |i: usize| u32::from_le_bytes(header[4 * i..4 * i + 4].try_into().unwrap());
        let res = [word(0) as usize, word(1) as usize, word(2) as usize];
        let version = word(3);
        if version != GRID_FORMAT_VERSION {
            return Err(GeometryError::BadGridFile(format!(
                "unsupported version {version}, expected {GRID_FORMAT_VERSION}"
            )));
        }
        let count = res[0] * res[1] * res[2];
        let mut buf = vec![0u8; count * 4];
        r.read_exact(&mut buf)?;
        let values = buf
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
            .collect();
        Self::from_values(res, lo, hi, values)
    }

    pub fn save(&self, path: &Path) -> Result<(), GeometryError> {
        let mut f = std::fs::File::create(path)?;
        self.write_binary(&mut f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_resolution() {
        let r = ScalarGrid::sample_unit_cube(1, |_| 0.0);
        assert!(matches!(r, Err(GeometryError::GridTooSmall(..))));
    }

    #[test]
    fn node_positions_span_bounds() {
        let g = ScalarGrid::sample_unit_cube(5, |p| p.x).unwrap();
        assert_eq!(g.position(0, 0, 0), Point3::new(-1.0, -1.0, -1.0));
        assert_eq!(g.position(4, 4, 4), Point3::new(1.0, 1.0, 1.0));
        assert_eq!(g.value(0, 2, 2), -1.0);
        assert_eq!(g.value(4, 2, 2), 1.0);
    }

    #[test]
    fn binary_round_trip() {
        let g = ScalarGrid::sample_unit_cube(4, |p| p.x * 2.0 + p.y - p.z).unwrap();
        let mut buf = Vec::new();
        g.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 16 + 64 * 4);
        let (lo, hi) = g.bounds();
        let back = ScalarGrid::read_binary(&mut buf.as_slice(), lo, hi).unwrap();
        assert_eq!(back.resolution(), [4, 4, 4]);
        for (a, b) in g.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-6, "f32 round trip should be close");
        }
    }
}
