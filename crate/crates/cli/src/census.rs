//! Output records and their JSON, CSV and text encodings.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use twonormal::stacking::TetStack;
use twonormal::tetra::EDGE_VERTICES;
use twonormal::{
    compute_skeleton, reconstruct, report, CoordinateLayout, LayoutMeta, Triangulation,
    TubeDecoration,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeRecord {
    pub tet: usize,
    pub edge: [usize; 2],
    pub slots: [u32; 2],
    #[serde(rename = "self")]
    pub self_tube: bool,
    pub inside_out: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub chi: i64,
    pub orientable: bool,
    pub sphere: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub vector: Vec<u64>,
    pub tubes: Vec<TubeRecord>,
    pub class: String,
    pub chi: i64,
    pub components: Vec<ComponentRecord>,
    pub edge_weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationSummary {
    pub tets: Vec<String>,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "T")]
    pub t: usize,
}

impl TriangulationSummary {
    pub fn new(tri: &Triangulation) -> Self {
        let sk = compute_skeleton(tri);
        TriangulationSummary {
            tets: tri.to_string().lines().map(str::to_string).collect(),
            v: sk.vertex_count(),
            e: sk.edge_count(),
            f: sk.face_count,
            t: sk.tet_count,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub version: String,
    pub mode: String,
    pub triangulation: TriangulationSummary,
    pub layout: Vec<String>,
    pub layout_meta: LayoutMeta,
    pub surfaces: Vec<SurfaceRecord>,
}

/// Reconstructs `v` with `tubes` and turns the report into a record.
pub fn surface_record(
    tri: &Triangulation,
    layout: &CoordinateLayout,
    v: &[u64],
    tubes: &[TubeDecoration],
) -> Result<SurfaceRecord> {
    let complex = reconstruct(tri, v, tubes).with_context(|| format!("reconstructing {v:?}"))?;
    let r = report(&complex).with_context(|| format!("reporting on {v:?}"))?;
    let mut tube_records = Vec::with_capacity(tubes.len());
    for t in tubes {
        let stack = TetStack::build(layout.catalog(), t.tet, layout.tet_block(v, t.tet))
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let [a, b] = EDGE_VERTICES[t.edge];
        tube_records.push(TubeRecord {
            tet: t.tet,
            edge: [a, b],
            slots: [t.slots.0, t.slots.1],
            self_tube: stack.loop_at(t.edge, t.slots.0) == stack.loop_at(t.edge, t.slots.1),
            inside_out: t.inside_out,
        });
    }
    Ok(SurfaceRecord {
        vector: v.to_vec(),
        tubes: tube_records,
        class: r.class.label().to_string(),
        chi: r.euler_characteristic,
        components: r
            .components
            .iter()
            .map(|c| ComponentRecord {
                chi: c.chi,
                orientable: c.orientable,
                sphere: c.sphere,
            })
            .collect(),
        edge_weights: r.edge_weights,
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn flag(b: bool) -> u8 {
    u8::from(b)
}

/// `tet:a-b:k-l:self:inside_out`, flags as 0/1.
pub fn encode_tube(t: &TubeRecord) -> String {
    format!(
        "{}:{}-{}:{}-{}:{}:{}",
        t.tet,
        t.edge[0],
        t.edge[1],
        t.slots[0],
        t.slots[1],
        flag(t.self_tube),
        flag(t.inside_out)
    )
}

/// `chi:orientable:sphere`, flags as 0/1.
pub fn encode_component(c: &ComponentRecord) -> String {
    format!("{}:{}:{}", c.chi, flag(c.orientable), flag(c.sphere))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CsvRow {
    pub index: usize,
    pub class: String,
    pub chi: i64,
    pub vector: String,
    pub tubes: String,
    pub components: String,
    pub edge_weights: String,
}

impl CsvRow {
    pub fn new(index: usize, r: &SurfaceRecord) -> Self {
        CsvRow {
            index,
            class: r.class.clone(),
            chi: r.chi,
            vector: join(&r.vector, " "),
            tubes: r
                .tubes
                .iter()
                .map(encode_tube)
                .collect::<Vec<_>>()
                .join(";"),
            components: r
                .components
                .iter()
                .map(encode_component)
                .collect::<Vec<_>>()
                .join(";"),
            edge_weights: join(&r.edge_weights, " "),
        }
    }
}

pub fn write_json(census: &Census, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, census)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv(census: &Census, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if census.surfaces.is_empty() {
        w.write_record([
            "index",
            "class",
            "chi",
            "vector",
            "tubes",
            "components",
            "edge_weights",
        ])?;
    }
    for (i, r) in census.surfaces.iter().enumerate() {
        w.serialize(CsvRow::new(i, r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text(census: &Census, out: &mut dyn Write) -> Result<()> {
    let t = &census.triangulation;
    writeln!(
        out,
        "triangulation: V={} E={} F={} T={}; mode {}; {} surfaces",
        t.v,
        t.e,
        t.f,
        t.t,
        census.mode,
        census.surfaces.len()
    )?;
    for (i, r) in census.surfaces.iter().enumerate() {
        writeln!(out, "{}", describe(i, r))?;
    }
    Ok(())
}

pub fn describe(index: usize, r: &SurfaceRecord) -> String {
    let mut s = format!("#{index} {} chi={}", r.class, r.chi);
    let comps: Vec<String> = r
        .components
        .iter()
        .map(|c| {
            let kind = if c.sphere {
                "sphere"
            } else if c.orientable {
                "orientable"
            } else {
                "non-orientable"
            };
            format!("{kind}(chi={})", c.chi)
        })
        .collect();
    let _ = write!(s, " components=[{}]", comps.join(", "));
    let _ = write!(s, " vector=[{}]", join(&r.vector, " "));
    if !r.tubes.is_empty() {
        let _ = write!(
            s,
            " tubes=[{}]",
            r.tubes
                .iter()
                .map(encode_tube)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    s
}

/// Parses `tet:a-b:k-l`, optionally followed by `:inside-out`.
pub fn parse_tube(s: &str) -> Result<TubeDecoration> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        bail!("tube `{s}` is not of the form tet:a-b:k-l[:inside-out]");
    }
    let pair = |p: &str| -> Result<(u32, u32)> {
        let (x, y) = p
            .split_once('-')
            .with_context(|| format!("expected `x-y` in `{s}`"))?;
        Ok((x.trim().parse()?, y.trim().parse()?))
    };
    let tet: usize = parts[0]
        .trim()
        .parse()
        .with_context(|| format!("bad tetrahedron in `{s}`"))?;
    let (a, b) = pair(parts[1])?;
    if a > 3 || b > 3 || a == b {
        bail!("bad edge in `{s}`");
    }
    let (k, l) = pair(parts[2])?;
    let edge = twonormal::tetra::edge_index(a as usize, b as usize);
    let mut tube = TubeDecoration::new(tet, edge, k, l);
    match parts.get(3).map(|p| p.trim()) {
        None => {}
        Some("inside-out") => tube.inside_out = true,
        Some(other) => bail!("unknown tube flag `{other}`"),
    }
    Ok(tube)
}
