//! The TOWER/1 manifest.
//!
//! ```text
//! TOWER 1
//! stage 0 mesh outer.mesh3 complement outer_c.mesh3
//! stage 1 rank 1
//! link 0 subcomplex
//! link 0 subcomplex inner.sub
//! link 0 map inner.map
//! link 0 gf2 link0.gf2
//! note 0 free text
//! ```
//!
//! Paths are relative to the manifest. A `subcomplex` sidecar selects records
//! of stage `k`'s mesh file. A map file lists, for each vertex label of stage
//! `k + 1`, its image among the labels of stage `k`:
//!
//! ```text
//! MAP 1
//! n 3
//! 0
//! 4
//! 2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{Link, Stage, Tower};
use crate::mesh_core::io::{read_mesh_records, read_subcomplex, write_mesh, write_subcomplex};
use crate::mesh_core::{MeshComplex, Simplex, VertexId};
use crate::{Error, Result};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn read_map(text: &str) -> Result<Vec<VertexId>> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| bad(1, "empty map file"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["MAP", "1"] {
        return Err(bad(ln, "expected header `MAP 1`"));
    }
    let (ln, count) = lines.next().ok_or_else(|| bad(ln + 1, "missing count line"))?;
    let n: usize = count
        .strip_prefix("n ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| bad(ln, "expected `n <count>`"))?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| bad(ln, "missing map entries"))?;
        out.push(l.parse().map_err(|_| bad(ln, "bad vertex label"))?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "trailing content"));
    }
    Ok(out)
}

fn write_map(map: &[VertexId]) -> String {
    let mut out = format!("MAP 1\nn {}\n", map.len());
    for v in map {
        writeln!(out, "{v}").unwrap();
    }
    out
}

struct StageFile {
    stage: Stage,
    records: Option<Vec<Simplex>>,
}

fn load_mesh(base: &Path, rel: &str) -> Result<(MeshComplex, Vec<Simplex>)> {
    Ok(read_mesh_records(&std::fs::read_to_string(base.join(rel))?)?)
}

fn index(ln: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(ln, format!("bad index `{s}`")))
}

/// Parses a manifest whose paths are relative to `base`, then validates the tower.
pub fn read_tower(text: &str, base: &Path) -> Result<Tower> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| bad(1, "empty manifest"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["TOWER", "1"] {
        return Err(bad(ln, "expected header `TOWER 1`"));
    }
    let mut stages: BTreeMap<usize, StageFile> = BTreeMap::new();
    let mut links: BTreeMap<usize, (usize, Vec<String>)> = BTreeMap::new();
    let mut notes = Vec::new();
    for (ln, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        match f.as_slice() {
            ["stage", k, "rank", r] => {
                let prev = stages.insert(
                    index(ln, k)?,
                    StageFile {
                        stage: Stage::Rank(index(ln, r)?),
                        records: None,
                    },
                );
                if prev.is_some() {
                    return Err(bad(ln, "repeated stage"));
                }
            }
            ["stage", k, "mesh", path, rest @ ..] => {
                let (mesh, records) = load_mesh(base, path)?;
                let complement = match rest {
                    [] => None,
                    ["complement", c] => Some(load_mesh(base, c)?.0),
                    _ => return Err(bad(ln, "expected `complement <path>` after the mesh path")),
                };
                let prev = stages.insert(
                    index(ln, k)?,
                    StageFile {
                        stage: Stage::Mesh { mesh, complement },
                        records: Some(records),
                    },
                );
                if prev.is_some() {
                    return Err(bad(ln, "repeated stage"));
                }
            }
            ["link", k, kind @ ("subcomplex" | "map" | "gf2"), rest @ ..] => {
                let mut args = vec![kind.to_string()];
                args.extend(rest.iter().map(|s| s.to_string()));
                if links.insert(index(ln, k)?, (ln, args)).is_some() {
                    return Err(bad(ln, "repeated link"));
                }
            }
            ["note", k, ..] => {
                let text = l.splitn(3, char::is_whitespace).nth(2).unwrap_or("").trim();
                notes.push((index(ln, k)?, text.to_string()));
            }
            _ => return Err(bad(ln, format!("unrecognised line `{l}`"))),
        }
    }
    if stages.keys().copied().ne(0..stages.len()) {
        return Err(bad(0, "stages must be numbered 0, 1, ... without gaps"));
    }
    if links.keys().copied().ne(0..stages.len().saturating_sub(1)) {
        return Err(bad(0, "links must be numbered 0 .. stages - 2 without gaps"));
    }
    let files: Vec<StageFile> = stages.into_values().collect();
    let mut out_links = Vec::with_capacity(links.len());
    for (k, (ln, args)) in links {
        let records = files[k].records.as_deref();
        let link = match args.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
            ["subcomplex"] => Link::Subcomplex(None),
            ["subcomplex", path] => {
                let (Some(outer), Some(records)) = (files[k].stage.as_mesh(), records) else {
                    return Err(bad(ln, "subcomplex links need a mesh stage"));
                };
                let text = std::fs::read_to_string(base.join(path))?;
                Link::Subcomplex(Some(read_subcomplex(&text, outer, records)?))
            }
            ["map", path] => Link::Simplicial(read_map(&std::fs::read_to_string(base.join(path))?)?),
            ["gf2", path] => Link::Algebraic(crate::z2_homology::Gf2Matrix::from_text(&std::fs::read_to_string(
                base.join(path),
            )?)?),
            _ => return Err(bad(ln, "bad link arguments")),
        };
        out_links.push(link);
    }
    let tower = Tower {
        stages: files.into_iter().map(|f| f.stage).collect(),
        links: out_links,
        notes,
    };
    tower.validate()?;
    Ok(tower)
}

pub fn read_tower_file(path: impl AsRef<Path>) -> Result<Tower> {
    let path = path.as_ref();
    let base = path.parent().unwrap_or(Path::new("."));
    read_tower(&std::fs::read_to_string(path)?, base)
}

/// Vertex map between canonical relabellings of both ends.
fn canonical_map(inner: &MeshComplex, outer: &MeshComplex, map: &[VertexId]) -> Vec<VertexId> {
    let (ci, co) = (inner.canonical(), outer.canonical());
    let inner_idx = inner.point_index();
    let outer_idx = co.point_index();
    ci.points()
        .iter()
        .map(|p| {
            let v = map[inner_idx[p] as usize];
            outer_idx[outer.point(v)]
        })
        .collect()
}

/// Writes `t` into `dir` as `tower.tower` plus its data files, returning
/// the manifest path.
pub fn write_tower_dir(t: &Tower, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let path = dir.as_ref().join("tower.tower");
    write_tower(t, &path)?;
    Ok(path)
}

/// Writes the manifest to `path` and every mesh, sidecar, map and matrix
/// next to it, named after the manifest's stem.
pub fn write_tower(t: &Tower, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let dir = path.parent().unwrap_or(Path::new("."));
    if !dir.as_os_str().is_empty() {
        std::fs::create_dir_all(dir)?;
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("tower");
    let mut m = String::from("TOWER 1\n");
    for (k, s) in t.stages.iter().enumerate() {
        match s {
            Stage::Rank(r) => writeln!(m, "stage {k} rank {r}").unwrap(),
            Stage::Mesh { mesh, complement } => {
                let name = format!("{stem}_stage{k}.mesh3");
                std::fs::write(dir.join(&name), write_mesh(mesh))?;
                write!(m, "stage {k} mesh {name}").unwrap();
                if let Some(c) = complement {
                    let cname = format!("{stem}_stage{k}_complement.mesh3");
                    std::fs::write(dir.join(&cname), write_mesh(c))?;
                    write!(m, " complement {cname}").unwrap();
                }
                m.push('\n');
            }
        }
    }
    for (k, l) in t.links.iter().enumerate() {
        match l {
            Link::Subcomplex(None) => writeln!(m, "link {k} subcomplex").unwrap(),
            Link::Subcomplex(Some(_)) => {
                let (outer, inner) = (t.stage_mesh(k)?.canonical(), t.stage_mesh(k + 1)?);
                let sub = inner.as_subcomplex_of(&outer)?;
                let name = format!("{stem}_link{k}.sub");
                std::fs::write(dir.join(&name), write_subcomplex(&outer, &sub))?;
                writeln!(m, "link {k} subcomplex {name}").unwrap();
            }
            Link::Simplicial(map) => {
                let name = format!("{stem}_link{k}.map");
                let map = canonical_map(t.stage_mesh(k + 1)?, t.stage_mesh(k)?, map);
                std::fs::write(dir.join(&name), write_map(&map))?;
                writeln!(m, "link {k} map {name}").unwrap();
            }
            Link::Algebraic(a) => {
                let name = format!("{stem}_link{k}.gf2");
                std::fs::write(dir.join(&name), a.to_text())?;
                writeln!(m, "link {k} gf2 {name}").unwrap();
            }
        }
    }
    for (k, n) in &t.notes {
        writeln!(m, "note {k} {n}").unwrap();
    }
    std::fs::write(path, m)?;
    Ok(())
}
