//! Minimal OBJ reader/writer: `v`, `vn`, and `f` records only, 1-based
//! indices, ASCII.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use nalgebra::{Point3, Vector3};

use super::{GeometryError, TriMesh};

pub fn write_obj<W: Write>(mesh: &TriMesh, w: &mut W) -> Result<(), GeometryError> {
    let mut out = String::new();
    for v in mesh.vertices() {
        writeln!(out, "v {} {} {}", v.x, v.y, v.z).unwrap();
    }
    if let Some(normals) = mesh.normals() {
        for n in normals {
            writeln!(out, "vn {} {} {}", n.x, n.y, n.z).unwrap();
        }
        for f in mesh.faces() {
            writeln!(out, "f {}//{} {}//{} {}//{}", f[0] + 1, f[0] + 1, f[1] + 1, f[1] + 1, f[2] + 1, f[2] + 1)
                .unwrap();
        }
    } else {
        for f in mesh.faces() {
            writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
        }
    }
    w.write_all(out.as_bytes())?;
    Ok(())
}

pub fn write_obj_file(mesh: &TriMesh, path: &Path) -> Result<(), GeometryError> {
    let mut f = std::fs::File::create(path)?;
    write_obj(mesh, &mut f)
}

pub fn read_obj<R: Read>(r: R) -> Result<TriMesh, GeometryError> {
    let reader = BufReader::new(r);
    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut normals: Vec<Vector3<f64>> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (ln, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = ln + 1;
        let mut parts = line.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let parse_err = |message: String| GeometryError::ObjParse { line: line_no, message };
        match tag {
            "v" | "vn" => {
                let mut coords = [0.0; 3];
                for c in &mut coords {
                    let tok = parts
                        .next()
                        .ok_or_else(|| parse_err(format!("{tag} record needs 3 coordinates")))?;
                    *c = tok
                        .parse::<f64>()
                        .map_err(|e| parse_err(format!("bad coordinate {tok:?}: {e}")))?;
                }
                if tag == "v" {
                    vertices.push(Point3::new(coords[0], coords[1], coords[2]));
                } else {
                    normals.push(Vector3::new(coords[0], coords[1], coords[2]));
                }
            }
            "f" => {
                let mut idx = [0usize; 3];
                for i in &mut idx {
                    let tok =
                        parts.next().ok_or_else(|| parse_err("f record needs 3 vertices".into()))?;
                    // accept "v", "v//vn", "v/vt/vn"
                    let vtok = tok.split('/').next().unwrap();
                    let one_based: usize = vtok
                        .parse()
                        .map_err(|e| parse_err(format!("bad face index {tok:?}: {e}")))?;
                    if one_based == 0 {
                        return Err(parse_err("OBJ face indices are 1-based".into()));
                    }
                    *i = one_based - 1;
                }
                if parts.next().is_some() {
                    return Err(parse_err("only triangle faces are supported".into()));
                }
                faces.push(idx);
            }
            _ => {} // comments and unsupported records are skipped
        }
    }

    let mesh = TriMesh::new(vertices, faces)?;
    if normals.is_empty() {
        Ok(mesh)
    } else {
        mesh.with_normals(normals)
    }
}

pub fn read_obj_file(path: &Path) -> Result<TriMesh, GeometryError> {
    read_obj(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sampling::icosphere;

    #[test]
    fn round_trip_preserves_geometry() {
        let m = icosphere(1);
        let normals = m.compute_vertex_normals();
        let m = m.with_normals(normals).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        let back = read_obj(buf.as_slice()).unwrap();
        assert_eq!(m.vertices().len(), back.vertices().len());
        assert_eq!(m.faces(), back.faces());
        for (a, b) in m.vertices().iter().zip(back.vertices()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(back.normals().is_some());
    }

    #[test]
    fn rejects_quads() {
        let text = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        let err = read_obj(text.as_bytes()).unwrap_err();
        assert!(matches!(err, GeometryError::ObjParse { .. }));
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# header\n\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
        let m = read_obj(text.as_bytes()).unwrap();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.face_count(), 1);
    }
}
