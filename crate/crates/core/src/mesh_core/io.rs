//! The MESH3/1 text format and its subcomplex sidecar.
//!
//! ```text
//! MESH3 1
//! v 4 s 15
//! 0 0/1 0/1 0/1
//! ...
//! 0 0
//! ...
//! 3 0 1 2 3
//! ```
//!
//! Vertex lines carry a label and three reduced fractions. Simplex lines
//! carry a dimension and ascending labels. Readers take the face closure of
//! the listed simplices; writers list every simplex, sorted by dimension and
//! then by labels, with vertices in lexicographic coordinate order.
//!
//! A sidecar selects a subcomplex by 0-based positions among the simplex
//! lines of its mesh file:
//!
//! ```text
//! SUBCOMPLEX 1
//! n 2
//! 14
//! 3
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::complex::{MeshComplex, Simplex, Subcomplex, VertexId};
use super::geometry::{format_rational, parse_rational, RationalPoint3};
use super::MeshError;

fn parse_err(line: usize, msg: impl Into<String>) -> MeshError {
    MeshError::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// The simplex records a writer emits for `mesh`, in file order. `mesh` must
/// be canonical for the records to match [`write_mesh`].
pub fn simplex_records(mesh: &MeshComplex) -> Vec<Simplex> {
    mesh.complex().all_simplices().copied().collect()
}

/// Canonical MESH3/1 text of `mesh` (relabelled canonically first).
pub fn write_mesh(mesh: &MeshComplex) -> String {
    let mesh = if mesh.is_canonical() { mesh.clone() } else { mesh.canonical() };
    let records = simplex_records(&mesh);
    let mut out = String::new();
    writeln!(out, "MESH3 1").unwrap();
    writeln!(out, "v {} s {}", mesh.num_vertices(), records.len()).unwrap();
    for (i, p) in mesh.points().iter().enumerate() {
        writeln!(out, "{i} {} {} {}", format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)).unwrap();
    }
    for s in &records {
        write!(out, "{}", s.dim()).unwrap();
        for v in s.vertices() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses MESH3/1 text, returning the mesh and its simplex records in file order.
pub fn read_mesh_records(text: &str) -> Result<(MeshComplex, Vec<Simplex>), MeshError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["MESH3", "1"] {
        return Err(parse_err(ln, "expected header `MESH3 1`"));
    }
    let (ln, counts) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing counts line"))?;
    let f: Vec<&str> = counts.split_whitespace().collect();
    if f.len() != 4 || f[0] != "v" || f[2] != "s" {
        return Err(parse_err(ln, "expected `v <nv> s <ns>`"));
    }
    let nv: usize = f[1].parse().map_err(|_| parse_err(ln, "bad vertex count"))?;
    let ns: usize = f[3].parse().map_err(|_| parse_err(ln, "bad simplex count"))?;

    let mut points: Vec<Option<RationalPoint3>> = vec![None; nv];
    for _ in 0..nv {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(0, "missing vertex lines"))?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 {
            return Err(parse_err(ln, "vertex line needs a label and three coordinates"));
        }
        let label: usize = f[0].parse().map_err(|_| parse_err(ln, "bad vertex label"))?;
        if label >= nv || points[label].is_some() {
            return Err(parse_err(ln, format!("vertex label {label} out of range or repeated")));
        }
        let c = |s: &str| parse_rational(s).map_err(|_| parse_err(ln, format!("bad coordinate `{s}`")));
        points[label] = Some(RationalPoint3::new(c(f[1])?, c(f[2])?, c(f[3])?));
    }
    let points: Vec<RationalPoint3> = points.into_iter().map(|p| p.expect("all labels seen")).collect();

    let mut records = Vec::with_capacity(ns);
    for _ in 0..ns {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(0, "missing simplex lines"))?;
        let f: Vec<&str> = l.split_whitespace().collect();
        let dim: usize = f.first().and_then(|d| d.parse().ok()).ok_or_else(|| parse_err(ln, "bad dimension"))?;
        if dim > 3 || f.len() != dim + 2 {
            return Err(parse_err(ln, "simplex line needs `<dim>` followed by dim+1 labels"));
        }
        let vs: Vec<VertexId> =
            f[1..].iter().map(|s| s.parse().map_err(|_| parse_err(ln, "bad label"))).collect::<Result<_, _>>()?;
        if let Some(&v) = vs.iter().find(|&&v| v as usize >= nv) {
            return Err(MeshError::DanglingVertex(v));
        }
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(ln, "labels must be strictly ascending"));
        }
        records.push(Simplex::new(&vs));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content"));
    }
    let mesh = MeshComplex::new(points, records.iter().copied())?;
    Ok((mesh, records))
}

pub fn read_mesh(text: &str) -> Result<MeshComplex, MeshError> {
    Ok(read_mesh_records(text)?.0)
}

pub fn read_mesh_file(path: impl AsRef<Path>) -> Result<MeshComplex, MeshError> {
    read_mesh(&std::fs::read_to_string(path)?)
}

pub fn write_mesh_file(path: impl AsRef<Path>, mesh: &MeshComplex) -> Result<(), MeshError> {
    std::fs::write(path, write_mesh(mesh))?;
    Ok(())
}

/// Sidecar text selecting `sub` (a subcomplex of the canonical mesh `parent`).
pub fn write_subcomplex(parent: &MeshComplex, sub: &Subcomplex) -> String {
    let records = simplex_records(parent);
    let selected: Vec<usize> = records
        .iter()
        .enumerate()
        .filter(|(_, s)| sub.contains_simplex(parent.complex(), s))
        .map(|(i, _)| i)
        .collect();
    let mut out = format!("SUBCOMPLEX 1\nn {}\n", selected.len());
    for i in selected {
        writeln!(out, "{i}").unwrap();
    }
    out
}

/// Parses a sidecar against the simplex records of the parent file.
pub fn read_subcomplex(text: &str, parent: &MeshComplex, records: &[Simplex]) -> Result<Subcomplex, MeshError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty sidecar"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["SUBCOMPLEX", "1"] {
        return Err(parse_err(ln, "expected header `SUBCOMPLEX 1`"));
    }
    let (ln, count) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing count line"))?;
    let n: usize = count
        .strip_prefix("n ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, "expected `n <count>`"))?;
    let mut chosen = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(0, "missing record indices"))?;
        let i: usize = l.parse().map_err(|_| parse_err(ln, "bad record index"))?;
        let s = records.get(i).ok_or_else(|| parse_err(ln, format!("record {i} out of range")))?;
        chosen.push(*s);
    }
    Subcomplex::from_simplices(parent.complex(), chosen.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh_core::geometry::rat;

    fn sample() -> MeshComplex {
        let pts = vec![
            RationalPoint3::new(rat(1, 2), rat(0, 1), rat(0, 1)),
            RationalPoint3::from_ints(0, 0, 0),
            RationalPoint3::from_ints(0, 1, 0),
            RationalPoint3::new(rat(0, 1), rat(0, 1), rat(-3, 7)),
        ];
        MeshComplex::new(pts, [Simplex::new(&[0, 1, 2, 3])]).unwrap()
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = write_mesh(&sample());
        let back = read_mesh(&text).unwrap();
        assert_eq!(back, sample().canonical());
        assert_eq!(write_mesh(&back), text);
        assert!(text.contains("-3/7"));
    }

    #[test]
    fn sidecar_round_trip() {
        let mesh = sample().canonical();
        let tri = mesh.complex().simplices(2)[0];
        let sub = Subcomplex::from_simplices(mesh.complex(), [tri].iter()).unwrap();
        let text = write_subcomplex(&mesh, &sub);
        let (parsed, records) = read_mesh_records(&write_mesh(&mesh)).unwrap();
        assert_eq!(read_subcomplex(&text, &parsed, &records).unwrap(), sub);
    }

    #[test]
    fn dangling_label_is_structural() {
        let text = "MESH3 1\nv 1 s 1\n0 0/1 0/1 0/1\n1 0 3\n";
        assert!(matches!(read_mesh(text), Err(MeshError::DanglingVertex(3))));
        assert!(matches!(read_mesh("MESH 2\n"), Err(MeshError::Parse { .. })));
    }
}
