//! Face chains, their excess, and the operation spaces they index.

use serde::Serialize;

use crate::polytope::{DirectedPolytope, FaceId};

/// A weakly increasing tuple of faces inside an ambient face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceChain {
    pub ambient: FaceId,
    pub members: Vec<FaceId>,
    pub excess: i32,
}

impl FaceChain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1 && self.members[0] == self.ambient
    }

    /// `ambient <TAB> m1,m2,… <TAB> excess`
    pub fn render(&self, p: &DirectedPolytope) -> String {
        format!("{}\t{}\t{}", p.label(self.ambient), join_labels(p, &self.members, ","), self.excess)
    }
}

pub fn join_labels(p: &DirectedPolytope, faces: &[FaceId], sep: &str) -> String {
    faces.iter().map(|&f| p.label(f)).collect::<Vec<_>>().join(sep)
}

/// `(dim F − 1) − Σ (dim Fᵢ − 1)`
pub fn excess(p: &DirectedPolytope, ambient: FaceId, members: &[FaceId]) -> i32 {
    let d = |f: FaceId| p.dim(f) as i32 - 1;
    d(ambient) - members.iter().map(|&f| d(f)).sum::<i32>()
}

pub fn is_chain(p: &DirectedPolytope, ambient: FaceId, members: &[FaceId]) -> bool {
    !members.is_empty()
        && members.iter().all(|&f| p.contains(ambient, f))
        && members.windows(2).all(|w| p.face_leq(w[0], w[1]))
}

pub(crate) fn subfaces_by_label(p: &DirectedPolytope, f: FaceId) -> Vec<FaceId> {
    let mut subs = p.subfaces(f).to_vec();
    subs.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    subs
}

/// Visits every chain in `ambient` of length `1..=max_len` with its excess,
/// in lexicographic order of member labels.
pub fn for_each_chain(p: &DirectedPolytope, ambient: FaceId, max_len: usize, visit: &mut impl FnMut(&[FaceId], i32)) {
    let subs = subfaces_by_label(p, ambient);
    let base = p.dim(ambient) as i32 - 1;
    let mut stack = Vec::with_capacity(max_len);
    fn go(
        p: &DirectedPolytope,
        subs: &[FaceId],
        stack: &mut Vec<FaceId>,
        excess: i32,
        max_len: usize,
        visit: &mut impl FnMut(&[FaceId], i32),
    ) {
        for &g in subs {
            if stack.last().is_some_and(|&last| !p.face_leq(last, g)) {
                continue;
            }
            let e = excess - (p.dim(g) as i32 - 1);
            stack.push(g);
            visit(stack, e);
            if stack.len() < max_len {
                go(p, subs, stack, e, max_len, visit);
            }
            stack.pop();
        }
    }
    if max_len > 0 {
        go(p, &subs, &mut stack, base, max_len, visit);
    }
}

/// All chains of exactly length `n` in `ambient`.
pub fn enumerate_chains(p: &DirectedPolytope, ambient: FaceId, n: usize) -> Vec<FaceChain> {
    let mut out = Vec::new();
    for_each_chain(p, ambient, n, &mut |members, excess| {
        if members.len() == n {
            out.push(FaceChain { ambient, members: members.to_vec(), excess });
        }
    });
    out
}

/// Dimension data of one colored operation space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpSpaceDim {
    pub inputs: Vec<FaceId>,
    pub output: FaceId,
    pub present: bool,
    pub excess: i32,
    pub inner_degree: i32,
}

impl OpSpaceDim {
    /// 1 if the space is nonzero, else 0.
    pub fn dim(&self) -> usize {
        usize::from(self.present)
    }
}

pub fn op_dim(p: &DirectedPolytope, inputs: &[FaceId], output: FaceId) -> OpSpaceDim {
    let present = is_chain(p, output, inputs);
    let e = excess(p, output, inputs);
    OpSpaceDim {
        inputs: inputs.to_vec(),
        output,
        present,
        excess: e,
        inner_degree: e - inputs.len() as i32 + 1,
    }
}

/// A failed elementary composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCounterexample {
    pub outer: FaceChain,
    pub slot: usize,
    pub inner: FaceChain,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub cases: usize,
    pub counterexamples: Vec<ClosureCounterexample>,
}

/// Checks every composition `outer ∘_i inner` with `|inner| ≤ bound_n` and
/// `|outer| ≤ bound_m`: the composite must be a chain and excesses must add.
pub fn composition_closure_check(p: &DirectedPolytope, bound_n: usize, bound_m: usize) -> ClosureReport {
    let mut inner_chains: Vec<Vec<FaceChain>> = vec![Vec::new(); p.face_count()];
    for f in p.faces() {
        for_each_chain(p, f, bound_n, &mut |m, e| {
            inner_chains[f.index()].push(FaceChain { ambient: f, members: m.to_vec(), excess: e })
        });
    }
    let mut report = ClosureReport::default();
    for g in p.faces() {
        for_each_chain(p, g, bound_m, &mut |outer, l_out| {
            for (slot, &gi) in outer.iter().enumerate() {
                for inner in &inner_chains[gi.index()] {
                    report.cases += 1;
                    let mut composite = outer[..slot].to_vec();
                    composite.extend_from_slice(&inner.members);
                    composite.extend_from_slice(&outer[slot + 1..]);
                    let reason = if !is_chain(p, g, &composite) {
                        Some("composite is not a chain".to_string())
                    } else {
                        let l = excess(p, g, &composite);
                        (l != l_out + inner.excess).then(|| format!("excess {l} != {l_out} + {}", inner.excess))
                    };
                    if let Some(reason) = reason {
                        report.counterexamples.push(ClosureCounterexample {
                            outer: FaceChain { ambient: g, members: outer.to_vec(), excess: l_out },
                            slot,
                            inner: inner.clone(),
                            reason,
                        });
                    }
                }
            }
        });
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortnessReport {
    pub short: bool,
    /// A nontrivial chain of minimal excess; present exactly when not short.
    pub witness: Option<FaceChain>,
}

fn better(candidate: &FaceChain, best: &Option<FaceChain>) -> bool {
    match best {
        None => true,
        Some(b) => (candidate.excess, candidate.len()) < (b.excess, b.len()),
    }
}

/// Decides shortness exactly.
///
/// Only chains whose members all have positive dimension need to be
/// examined: those are strictly increasing, so the search is finite, and
/// every vertex member adds exactly one to the excess.
pub fn is_short(p: &DirectedPolytope) -> ShortnessReport {
    let mut witness: Option<FaceChain> = None;
    for f in p.faces() {
        let subs: Vec<FaceId> = subfaces_by_label(p, f).into_iter().filter(|&g| p.dim(g) >= 1).collect();
        let limit = subs.len();
        for_each_core_chain(p, &subs, p.dim(f) as i32 - 1, limit, &mut |members, e| {
            if e <= 0 && !(members.len() == 1 && members[0] == f) {
                let c = FaceChain { ambient: f, members: members.to_vec(), excess: e };
                if better(&c, &witness) {
                    witness = Some(c);
                }
            }
        });
    }
    ShortnessReport { short: witness.is_none(), witness }
}

fn for_each_core_chain(
    p: &DirectedPolytope,
    subs: &[FaceId],
    base: i32,
    limit: usize,
    visit: &mut impl FnMut(&[FaceId], i32),
) {
    let mut stack = Vec::new();
    fn go(
        p: &DirectedPolytope,
        subs: &[FaceId],
        stack: &mut Vec<FaceId>,
        excess: i32,
        limit: usize,
        visit: &mut impl FnMut(&[FaceId], i32),
    ) {
        for &g in subs {
            if stack.last().is_some_and(|&last| !p.face_leq(last, g)) {
                continue;
            }
            // face_leq is irreflexive on positive dimensions, so a chain of
            // such faces never repeats and its length is bounded.
            assert!(stack.len() < limit, "increasing chain longer than the face count");
            let e = excess - (p.dim(g) as i32 - 1);
            stack.push(g);
            visit(stack, e);
            go(p, subs, stack, e, limit, visit);
            stack.pop();
        }
    }
    go(p, subs, &mut stack, base, limit, visit);
}

/// Bounded exhaustive variant: every chain up to `max_len`, vertices included.
pub fn is_short_bounded(p: &DirectedPolytope, max_len: usize) -> ShortnessReport {
    let mut witness: Option<FaceChain> = None;
    for f in p.faces() {
        for_each_chain(p, f, max_len, &mut |members, e| {
            if e <= 0 && !(members.len() == 1 && members[0] == f) {
                let c = FaceChain { ambient: f, members: members.to_vec(), excess: e };
                if better(&c, &witness) {
                    witness = Some(c);
                }
            }
        });
    }
    ShortnessReport { short: witness.is_none(), witness }
}
