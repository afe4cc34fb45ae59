//! Directed polytopes as abstract face lattices with an oriented 1-skeleton.
//!
//! A face is identified with its vertex set. Every face carries a unique
//! source and sink once the polytope validates, and the face order used
//! throughout the crate is "the sink of `F1` reaches the source of `F2`".

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;

/// Index of a vertex inside one polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a face inside one polytope. Faces are stored by increasing
/// dimension, so the top face has the largest index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub(crate) u32);

impl FaceId {
    pub fn from_index(i: usize) -> Self {
        FaceId(u32::try_from(i).expect("face index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Source and sink of a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceEnds {
    pub face: FaceId,
    pub min: VertexId,
    pub max: VertexId,
}

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("polytope has no vertices")]
    Empty,
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("{context}: unknown vertex {label:?}")]
    UnknownVertex { context: String, label: String },
    #[error("edge {0}->{1} is a loop")]
    Loop(String, String),
    #[error("more than one edge between {0} and {1}")]
    DuplicateEdge(String, String),
    #[error("duplicate face id {0:?}")]
    DuplicateFace(String),
    #[error("face {0:?} has no vertices")]
    EmptyFace(String),
    #[error("faces {0:?} and {1:?} have the same vertex set")]
    SameVertexSet(String, String),
    #[error("no face contains every vertex")]
    NoTop,
    #[error("unknown face {0:?}")]
    UnknownFace(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("malformed polytope file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read polytope file: {0}")]
    Io(#[from] std::io::Error),
}

/// On-disk form of a polytope. Field order matches the sorted key order of
/// the canonical JSON text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub faces: Vec<FaceRecord>,
    pub name: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: String,
    pub vertices: Vec<String>,
}

/// One failed invariant, naming the face it was found on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Cycle { face: String },
    MultipleSources { face: String, sources: Vec<String> },
    MultipleSinks { face: String, sinks: Vec<String> },
    MissingSubFace { face: String, missing: String },
    NonGraded { face: String, detail: String },
}

fn count_word(k: usize) -> String {
    match k {
        2 => "two".into(),
        3 => "three".into(),
        4 => "four".into(),
        k => k.to_string(),
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle { face } => write!(f, "face {face}: cycle"),
            Violation::MultipleSources { face, sources } => write!(
                f,
                "face {face}: {} sources ({})",
                count_word(sources.len()),
                sources.join(", ")
            ),
            Violation::MultipleSinks { face, sinks } => write!(
                f,
                "face {face}: {} sinks ({})",
                count_word(sinks.len()),
                sinks.join(", ")
            ),
            Violation::MissingSubFace { face, missing } => {
                write!(f, "face {face}: missing sub-face {missing}")
            }
            Violation::NonGraded { face, detail } => write!(f, "face {face}: non-graded dim ({detail})"),
        }
    }
}

/// Result of [`DirectedPolytope::validate`]; empty iff the polytope is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct FaceTable {
    records: Vec<(String, Bits)>,
    ids: HashMap<String, usize>,
    masks: HashMap<Bits, usize>,
}

impl FaceTable {
    fn push(&mut self, id: String, mask: Bits) -> Result<(), PolytopeError> {
        if self.ids.contains_key(&id) {
            return Err(PolytopeError::DuplicateFace(id));
        }
        if let Some(&other) = self.masks.get(&mask) {
            return Err(PolytopeError::SameVertexSet(self.records[other].0.clone(), id));
        }
        self.ids.insert(id.clone(), self.records.len());
        self.masks.insert(mask.clone(), self.records.len());
        self.records.push((id, mask));
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct FaceData {
    label: String,
    vertices: Vec<VertexId>,
    mask: Bits,
    dim: usize,
    ends: Option<(VertexId, VertexId)>,
    subfaces: Vec<FaceId>,
}

/// A structurally well-formed polytope. It may still violate the directed
/// polytope axioms; call [`validate`](Self::validate) to find out.
#[derive(Clone, Debug)]
pub struct DirectedPolytope {
    name: String,
    vertex_labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    faces: Vec<FaceData>,
    top: FaceId,
    vertex_faces: Vec<FaceId>,
    by_label: HashMap<String, FaceId>,
    reach: Vec<Bits>,
}

/// Which builtin polytope to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Point,
    Interval,
    Simplex(usize),
    Cube(usize),
    Polygon(usize, usize),
}

impl DirectedPolytope {
    /// Resolves a polytope file, synthesizing missing vertex and edge faces
    /// and recomputing every dimension as a rank in the containment order.
    pub fn from_file(file: &PolytopeFile) -> Result<Self, PolytopeError> {
        if file.vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let mut vindex: HashMap<&str, usize> = HashMap::new();
        for (i, v) in file.vertices.iter().enumerate() {
            if vindex.insert(v.as_str(), i).is_some() {
                return Err(PolytopeError::DuplicateVertex(v.clone()));
            }
        }
        let nv = file.vertices.len();
        let resolve = |context: &str, label: &str| {
            vindex.get(label).copied().ok_or_else(|| PolytopeError::UnknownVertex {
                context: context.to_string(),
                label: label.to_string(),
            })
        };

        let mut edges = Vec::with_capacity(file.edges.len());
        let mut seen_pairs = HashMap::new();
        for e in &file.edges {
            let ctx = format!("edge {}->{}", e.from, e.to);
            let (u, v) = (resolve(&ctx, &e.from)?, resolve(&ctx, &e.to)?);
            if u == v {
                return Err(PolytopeError::Loop(e.from.clone(), e.to.clone()));
            }
            if seen_pairs.insert((u.min(v), u.max(v)), ()).is_some() {
                return Err(PolytopeError::DuplicateEdge(e.from.clone(), e.to.clone()));
            }
            edges.push((VertexId(u as u32), VertexId(v as u32)));
        }

        let mut table = FaceTable::default();
        for face in &file.faces {
            if face.vertices.is_empty() {
                return Err(PolytopeError::EmptyFace(face.id.clone()));
            }
            let mut mask = Bits::new(nv);
            for v in &face.vertices {
                mask.insert(resolve(&format!("face {}", face.id), v)?);
            }
            table.push(face.id.clone(), mask)?;
        }
        for (i, v) in file.vertices.iter().enumerate() {
            let mut mask = Bits::new(nv);
            mask.insert(i);
            if !table.masks.contains_key(&mask) {
                table.push(v.clone(), mask)?;
            }
        }
        for (e, &(u, v)) in file.edges.iter().zip(&edges) {
            let mut mask = Bits::new(nv);
            mask.insert(u.index());
            mask.insert(v.index());
            if !table.masks.contains_key(&mask) {
                table.push(format!("{}->{}", e.from, e.to), mask)?;
            }
        }
        let FaceTable { records, masks, .. } = table;

        let full = {
            let mut m = Bits::new(nv);
            (0..nv).for_each(|i| m.insert(i));
            m
        };
        if !masks.contains_key(&full) {
            return Err(PolytopeError::NoTop);
        }

        // Rank: longest chain of proper containments below a face.
        let mut order: Vec<usize> = (0..records.len()).collect();
        order.sort_by_key(|&i| records[i].1.count());
        let mut rank = vec![0usize; records.len()];
        for (pos, &i) in order.iter().enumerate() {
            let mut r = 0;
            for &j in &order[..pos] {
                if records[j].1 != records[i].1 && records[j].1.is_subset(&records[i].1) {
                    r = r.max(rank[j] + 1);
                }
            }
            rank[i] = r;
        }
        let mut sorted: Vec<usize> = (0..records.len()).collect();
        sorted.sort_by_key(|&i| (rank[i], i));

        let mut faces: Vec<FaceData> = sorted
            .iter()
            .map(|&i| FaceData {
                label: records[i].0.clone(),
                vertices: records[i].1.iter().map(|v| VertexId(v as u32)).collect(),
                mask: records[i].1.clone(),
                dim: rank[i],
                ends: None,
                subfaces: Vec::new(),
            })
            .collect();
        for i in 0..faces.len() {
            let subs = (0..faces.len())
                .filter(|&j| faces[j].mask.is_subset(&faces[i].mask))
                .map(FaceId::from_index)
                .collect();
            faces[i].subfaces = subs;
        }
        let by_label: HashMap<String, FaceId> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.label.clone(), FaceId::from_index(i)))
            .collect();
        let mut vertex_faces = vec![FaceId(0); nv];
        for (i, f) in faces.iter().enumerate() {
            if f.vertices.len() == 1 {
                vertex_faces[f.vertices[0].index()] = FaceId::from_index(i);
            }
        }
        let top = FaceId::from_index(faces.iter().position(|f| f.mask == full).expect("top checked"));

        let mut p = DirectedPolytope {
            name: file.name.clone(),
            vertex_labels: file.vertices.clone(),
            edges,
            faces,
            top,
            vertex_faces,
            by_label,
            reach: Vec::new(),
        };
        p.reach = p.closure();
        for i in 0..p.faces.len() {
            p.faces[i].ends = p.skeleton_ends(FaceId::from_index(i));
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        let file: PolytopeFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PolytopeError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Every face listed explicitly, in storage order.
    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| EdgeRecord {
                    from: self.vertex_label(u).to_string(),
                    to: self.vertex_label(v).to_string(),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceRecord {
                    id: f.label.clone(),
                    vertices: f.vertices.iter().map(|&v| self.vertex_label(v).to_string()).collect(),
                })
                .collect(),
            name: self.name.clone(),
            vertices: self.vertex_labels.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("polytope file serializes")
    }

    /// Vertex-to-vertex reachability along directed edges, reflexive.
    fn closure(&self) -> Vec<Bits> {
        let nv = self.vertex_labels.len();
        let mut out = vec![Vec::new(); nv];
        for &(u, v) in &self.edges {
            out[u.index()].push(v.index());
        }
        (0..nv)
            .map(|s| {
                let mut seen = Bits::new(nv);
                let mut stack = vec![s];
                seen.insert(s);
                while let Some(u) = stack.pop() {
                    for &v in &out[u] {
                        if !seen.contains(v) {
                            seen.insert(v);
                            stack.push(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    fn skeleton(&self, f: FaceId) -> Vec<(usize, usize)> {
        let mask = &self.faces[f.index()].mask;
        self.edges
            .iter()
            .filter(|(u, v)| mask.contains(u.index()) && mask.contains(v.index()))
            .map(|&(u, v)| (u.index(), v.index()))
            .collect()
    }

    fn has_cycle(&self, f: FaceId) -> bool {
        let verts: Vec<usize> = self.faces[f.index()].vertices.iter().map(|v| v.index()).collect();
        let arcs = self.skeleton(f);
        let mut indeg: HashMap<usize, usize> = verts.iter().map(|&v| (v, 0)).collect();
        for &(_, v) in &arcs {
            *indeg.get_mut(&v).expect("arc inside face") += 1;
        }
        let mut ready: Vec<usize> = verts.iter().copied().filter(|v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = ready.pop() {
            removed += 1;
            for &(a, b) in &arcs {
                if a == u {
                    let d = indeg.get_mut(&b).expect("arc inside face");
                    *d -= 1;
                    if *d == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        removed < verts.len()
    }

    fn sources_and_sinks(&self, f: FaceId) -> (Vec<VertexId>, Vec<VertexId>) {
        let arcs = self.skeleton(f);
        let verts = &self.faces[f.index()].vertices;
        let sources = verts.iter().copied().filter(|v| arcs.iter().all(|&(_, b)| b != v.index())).collect();
        let sinks = verts.iter().copied().filter(|v| arcs.iter().all(|&(a, _)| a != v.index())).collect();
        (sources, sinks)
    }

    fn skeleton_ends(&self, f: FaceId) -> Option<(VertexId, VertexId)> {
        if self.has_cycle(f) {
            return None;
        }
        match self.sources_and_sinks(f) {
            (s, t) if s.len() == 1 && t.len() == 1 => Some((s[0], t[0])),
            _ => None,
        }
    }

    /// Checks every directed-polytope invariant and lists the failures.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let labels = |vs: &[VertexId]| vs.iter().map(|&v| self.vertex_label(v).to_string()).collect();
        for (i, face) in self.faces.iter().enumerate() {
            let id = FaceId::from_index(i);
            let name = face.label.clone();
            if face.vertices.len() == 2 {
                let (a, b) = (face.vertices[0], face.vertices[1]);
                if !self.edges.iter().any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a)) {
                    violations.push(Violation::MissingSubFace {
                        face: name.clone(),
                        missing: format!("edge {}-{}", self.vertex_label(a), self.vertex_label(b)),
                    });
                }
            }
            if face.dim == 1 && face.vertices.len() != 2 {
                violations.push(Violation::NonGraded {
                    face: name.clone(),
                    detail: format!("rank 1 with {} vertices", face.vertices.len()),
                });
            }
            if face.dim >= 1 {
                let maximal_below = face.subfaces.iter().filter(|&&g| g != id).filter(|&&g| {
                    !face.subfaces.iter().any(|&h| {
                        h != id && h != g && self.faces[g.index()].mask.is_subset(&self.faces[h.index()].mask)
                    })
                });
                for g in maximal_below {
                    let dg = self.faces[g.index()].dim;
                    if dg + 1 != face.dim {
                        violations.push(Violation::NonGraded {
                            face: name.clone(),
                            detail: format!("maximal sub-face {} has dim {dg}", self.label(*g)),
                        });
                    }
                }
            }
            if face.vertices.len() < 2 {
                continue;
            }
            if self.has_cycle(id) {
                violations.push(Violation::Cycle { face: name });
                continue;
            }
            let (sources, sinks) = self.sources_and_sinks(id);
            if sources.len() > 1 {
                violations.push(Violation::MultipleSources { face: name.clone(), sources: labels(&sources) });
            }
            if sinks.len() > 1 {
                violations.push(Violation::MultipleSinks { face: name, sinks: labels(&sinks) });
            }
        }
        ValidationReport { violations }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn faces(&self) -> impl ExactSizeIterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId::from_index)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_labels.len()).map(|v| VertexId(v as u32))
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn top(&self) -> FaceId {
        self.top
    }

    pub fn label(&self, f: FaceId) -> &str {
        &self.faces[f.index()].label
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v.index()]
    }

    pub fn face(&self, label: &str) -> Option<FaceId> {
        self.by_label.get(label).copied()
    }

    pub fn face_or_err(&self, label: &str) -> Result<FaceId, PolytopeError> {
        self.face(label).ok_or_else(|| PolytopeError::UnknownFace(label.to_string()))
    }

    pub fn dim(&self, f: FaceId) -> usize {
        self.faces[f.index()].dim
    }

    pub fn face_vertices(&self, f: FaceId) -> &[VertexId] {
        &self.faces[f.index()].vertices
    }

    /// All faces contained in `f`, including `f`, in storage order.
    pub fn subfaces(&self, f: FaceId) -> &[FaceId] {
        &self.faces[f.index()].subfaces
    }

    pub fn contains(&self, outer: FaceId, inner: FaceId) -> bool {
        self.faces[inner.index()].mask.is_subset(&self.faces[outer.index()].mask)
    }

    pub fn vertex_face(&self, v: VertexId) -> FaceId {
        self.vertex_faces[v.index()]
    }

    /// Source and sink of `f`, or `None` if its skeleton has none unique.
    pub fn face_ends(&self, f: FaceId) -> Option<FaceEnds> {
        self.faces[f.index()].ends.map(|(min, max)| FaceEnds { face: f, min, max })
    }

    /// Whether a directed path (possibly empty) leads from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.reach[u.index()].contains(v.index())
    }

    /// The face order: the sink of `a` reaches the source of `b`.
    pub fn face_leq(&self, a: FaceId, b: FaceId) -> bool {
        match (self.faces[a.index()].ends, self.faces[b.index()].ends) {
            (Some((_, max_a)), Some((min_b, _))) => self.reaches(max_a, min_b),
            _ => false,
        }
    }

    /// Constructs one of the builtin families.
    pub fn builtin(kind: Builtin) -> Result<Self, PolytopeError> {
        match kind {
            Builtin::Point => Ok(point()),
            Builtin::Interval => Ok(interval()),
            Builtin::Simplex(n) => simplex(n),
            Builtin::Cube(n) => Ok(cube(n)),
            Builtin::Polygon(n, m) => polygon(n, m),
        }
    }

    /// Cartesian product; face labels are `A|B`.
    pub fn product(&self, other: &DirectedPolytope) -> DirectedPolytope {
        product_with(self, other, "|", format!("{}×{}", self.name, other.name))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Point => write!(f, "point"),
            Builtin::Interval => write!(f, "interval"),
            Builtin::Simplex(n) => write!(f, "simplex:{n}"),
            Builtin::Cube(n) => write!(f, "cube:{n}"),
            Builtin::Polygon(n, m) => write!(f, "polygon:{n},{m}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = PolytopeError;

    /// `point`, `interval`, `simplex:N`, `cube:N` or `polygon:N,M`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let bad = || PolytopeError::Parameter(format!("unknown builtin {spec:?}"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
        match (kind, args) {
            ("point", "") => Ok(Builtin::Point),
            ("interval", "") => Ok(Builtin::Interval),
            ("simplex", a) => Ok(Builtin::Simplex(num(a)?)),
            ("cube", a) => Ok(Builtin::Cube(num(a)?)),
            ("polygon", a) => {
                let (n, m) = a.split_once(',').ok_or_else(bad)?;
                Ok(Builtin::Polygon(num(n)?, num(m)?))
            }
            _ => Err(bad()),
        }
    }
}

impl DirectedPolytope {
    /// A builtin, or `product:A,B` of two specs.
    pub fn from_spec(spec: &str) -> Result<Self, PolytopeError> {
        let Some(rest) = spec.strip_prefix("product:") else {
            return DirectedPolytope::builtin(spec.parse()?);
        };
        for (i, _) in rest.match_indices(',') {
            if let (Ok(a), Ok(b)) = (Self::from_spec(&rest[..i]), Self::from_spec(&rest[i + 1..])) {
                return Ok(a.product(&b));
            }
        }
        Err(PolytopeError::Parameter(format!("cannot split product {spec:?} into two specs")))
    }
}

fn build(name: String, vertices: Vec<String>, edges: Vec<(String, String)>, faces: Vec<(String, Vec<String>)>) -> DirectedPolytope {
    let file = PolytopeFile {
        edges: edges.into_iter().map(|(from, to)| EdgeRecord { from, to }).collect(),
        faces: faces.into_iter().map(|(id, vertices)| FaceRecord { id, vertices }).collect(),
        name,
        vertices,
    };
    DirectedPolytope::from_file(&file).expect("builtin polytopes are well formed")
}

fn point() -> DirectedPolytope {
    build("point".into(), vec!["x".into()], vec![], vec![])
}

fn interval() -> DirectedPolytope {
    build(
        "interval".into(),
        vec!["x".into(), "y".into()],
        vec![("x".into(), "y".into())],
        vec![("x".into(), vec!["x".into()]), ("y".into(), vec!["y".into()]), ("s".into(), vec!["x".into(), "y".into()])],
    )
}

fn simplex(n: usize) -> Result<DirectedPolytope, PolytopeError> {
    if n > 9 {
        return Err(PolytopeError::Parameter(format!("simplex dimension {n} exceeds 9")));
    }
    let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            edges.push((i.to_string(), j.to_string()));
        }
    }
    let mut subsets: Vec<u32> = (1..1u32 << (n + 1)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), std::cmp::Reverse(s.reverse_bits())));
    let faces = subsets
        .into_iter()
        .map(|s| {
            let members: Vec<String> = (0..=n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
            (members.concat(), members)
        })
        .collect();
    Ok(build(format!("simplex({n})"), vertices, edges, faces))
}

fn unit_interval() -> DirectedPolytope {
    build(
        "I".into(),
        vec!["0".into(), "1".into()],
        vec![("0".into(), "1".into())],
        vec![("*".into(), vec!["0".into(), "1".into()])],
    )
}

fn cube(n: usize) -> DirectedPolytope {
    if n == 0 {
        return build("cube(0)".into(), vec!["pt".into()], vec![], vec![]);
    }
    let mut p = unit_interval();
    for _ in 1..n {
        p = product_with(&p, &unit_interval(), "", String::new());
    }
    p.name = format!("cube({n})");
    p
}

fn polygon(n: usize, m: usize) -> Result<DirectedPolytope, PolytopeError> {
    if n + m < 1 {
        return Err(PolytopeError::Parameter("a polygon needs at least three vertices".into()));
    }
    let path = |v: char, e: char, len: usize| {
        let vert = |i: usize| match i {
            0 => "0".to_string(),
            i if i == len + 1 => "1".to_string(),
            i => format!("{v}({i})"),
        };
        let edges: Vec<(String, String, String)> = (0..=len).map(|i| (format!("{e}({i})"), vert(i), vert(i + 1))).collect();
        ((1..=len).map(vert).collect::<Vec<_>>(), edges)
    };
    let (xs, es) = path('x', 'e', n);
    let (ys, fs) = path('y', 'f', m);
    let mut vertices = vec!["0".to_string()];
    vertices.extend(xs);
    vertices.extend(ys);
    vertices.push("1".into());
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for (label, a, b) in es.into_iter().chain(fs) {
        edges.push((a.clone(), b.clone()));
        faces.push((label, vec![a, b]));
    }
    faces.push(("P".into(), vertices.clone()));
    Ok(build(format!("polygon({n},{m})"), vertices, edges, faces))
}

pub(crate) fn product_with(p: &DirectedPolytope, q: &DirectedPolytope, sep: &str, name: String) -> DirectedPolytope {
    let vl = |a: VertexId, b: VertexId| format!("{}{sep}{}", p.vertex_label(a), q.vertex_label(b));
    let mut vertices = Vec::new();
    for a in p.vertices() {
        for b in q.vertices() {
            vertices.push(vl(a, b));
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in p.edges() {
        for b in q.vertices() {
            edges.push((vl(u, b), vl(v, b)));
        }
    }
    for a in p.vertices() {
        for &(u, v) in q.edges() {
            edges.push((vl(a, u), vl(a, v)));
        }
    }
    let mut faces = Vec::new();
    for f in p.faces() {
        for g in q.faces() {
            let mut vs = Vec::new();
            for &a in p.face_vertices(f) {
                for &b in q.face_vertices(g) {
                    vs.push(vl(a, b));
                }
            }
            faces.push((format!("{}{sep}{}", p.label(f), q.label(g)), vs));
        }
    }
    build(name, vertices, edges, faces)
}
