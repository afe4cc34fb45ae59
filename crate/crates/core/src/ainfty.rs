//! Diagonals `Δₙᵏ` read off from face chains, and the A∞-coalgebra
//! relations they satisfy. Everything here is over F₂.

use std::collections::HashSet;

use serde::Serialize;

use crate::chains::{for_each_chain, join_labels, subfaces_by_label};
use crate::laurent::{Mode, Window};
use crate::ncseries::{hilbert_endomorphism, substitute, NCEndomorphism, Word};
use crate::polytope::{DirectedPolytope, FaceId};

/// One summand `source ↦ t₁⊗…⊗tₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagonalTerm {
    pub source: FaceId,
    pub targets: Vec<FaceId>,
    pub k: i32,
}

impl DiagonalTerm {
    pub fn render(&self, p: &DirectedPolytope) -> String {
        format!("{}\t{}\t{}", p.label(self.source), join_labels(p, &self.targets, "⊗"), self.k)
    }
}

/// `Δₙᵏ` as a set of terms, grouped by source in face order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaMap {
    pub n: usize,
    pub k: i32,
    pub terms: Vec<DiagonalTerm>,
}

impl DeltaMap {
    /// Target tuples of the image of `source`.
    pub fn on(&self, source: FaceId) -> Vec<Vec<FaceId>> {
        self.terms.iter().filter(|t| t.source == source).map(|t| t.targets.clone()).collect()
    }

    pub fn render(&self, p: &DirectedPolytope) -> Vec<String> {
        self.terms.iter().map(|t| t.render(p)).collect()
    }
}

/// `F ↦ Σ F₁⊗…⊗Fₙ` over chains in `F` of length `n` and excess `k`.
pub fn delta(p: &DirectedPolytope, n: usize, k: i32) -> DeltaMap {
    let mut terms = Vec::new();
    for f in p.faces() {
        for_each_chain(p, f, n, &mut |members, e| {
            if members.len() == n && e == k {
                terms.push(DiagonalTerm { source: f, targets: members.to_vec(), k });
            }
        });
    }
    DeltaMap { n, k, terms }
}

/// `F ↦ Σ F₁⊗F₂` over `F₁ ≤ F₂` in `F` with `dim F₁ + dim F₂ = dim F`.
pub fn magic_diagonal(p: &DirectedPolytope) -> DeltaMap {
    let mut terms = Vec::new();
    for f in p.faces() {
        let subs = subfaces_by_label(p, f);
        for &a in &subs {
            for &b in &subs {
                if p.dim(a) + p.dim(b) == p.dim(f) && p.face_leq(a, b) {
                    terms.push(DiagonalTerm { source: f, targets: vec![a, b], k: 1 });
                }
            }
        }
    }
    DeltaMap { n: 2, k: 1, terms }
}

/// A nonzero term of some F₂ identity that should vanish.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Defect {
    pub face: FaceId,
    pub word: Vec<FaceId>,
}

impl Defect {
    pub fn render(&self, p: &DirectedPolytope) -> String {
        format!("{}\t{}", p.label(self.face), join_labels(p, &self.word, "⊗"))
    }
}

fn toggle(set: &mut HashSet<Word>, w: Word) {
    if !set.remove(&w) {
        set.insert(w);
    }
}

fn sorted_defects(face: FaceId, set: HashSet<Word>) -> Vec<Defect> {
    let mut v: Vec<Defect> = set.into_iter().map(|w| Defect { face, word: w.to_vec() }).collect();
    v.sort();
    v
}

/// Excess-one chains of every face, up to `max_len`.
fn coderivation(p: &DirectedPolytope, max_len: usize) -> Vec<Vec<Word>> {
    p.faces()
        .map(|f| {
            let mut out = Vec::new();
            for_each_chain(p, f, max_len, &mut |m, e| {
                if e == 1 {
                    out.push(Word::from_slice(m));
                }
            });
            out
        })
        .collect()
}

/// `(∂⊗id + id⊗∂)Δ₂¹ + Δ₂¹∂`, face by face.
pub fn leibniz_check(p: &DirectedPolytope) -> Vec<Defect> {
    let boundary = delta(p, 1, 1);
    let diag = delta(p, 2, 1);
    let mut out = Vec::new();
    for f in p.faces() {
        let mut acc = HashSet::new();
        for pair in diag.on(f) {
            for b in boundary.on(pair[0]) {
                toggle(&mut acc, Word::from_slice(&[b[0], pair[1]]));
            }
            for b in boundary.on(pair[1]) {
                toggle(&mut acc, Word::from_slice(&[pair[0], b[0]]));
            }
        }
        for b in boundary.on(f) {
            for pair in diag.on(b[0]) {
                toggle(&mut acc, Word::from_slice(&pair));
            }
        }
        out.extend(sorted_defects(f, acc));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AInftyReport {
    pub max_len: usize,
    /// Nonzero terms of the relation, per face and output word.
    pub defects: Vec<Defect>,
}

impl AInftyReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

/// For every face and output length `m ≤ max_len`, sums
/// `(id^{⊗p} ⊗ Δᵢ¹ ⊗ id^{⊗(j−1−p)}) ∘ Δⱼ¹` over `i + j = m + 1`.
pub fn ainfty_check(p: &DirectedPolytope, max_len: usize) -> AInftyReport {
    let d = coderivation(p, max_len);
    let mut defects = Vec::new();
    for f in p.faces() {
        let mut acc = HashSet::new();
        for outer in &d[f.index()] {
            for (slot, g) in outer.iter().enumerate() {
                for inner in &d[g.index()] {
                    if outer.len() - 1 + inner.len() > max_len {
                        continue;
                    }
                    let mut w = Word::from_slice(&outer[..slot]);
                    w.extend_from_slice(inner);
                    w.extend_from_slice(&outer[slot + 1..]);
                    toggle(&mut acc, w);
                }
            }
        }
        defects.extend(sorted_defects(f, acc));
    }
    AInftyReport { max_len, defects }
}

/// The `t²` part of `f∘f − id` for the mode-F₂ Hilbert endomorphism, which
/// equals the square of the coderivation whenever every nontrivial chain has
/// positive excess.
pub fn involution_t2_stratum(p: &DirectedPolytope, max_len: usize) -> Vec<Defect> {
    let window = Window::new(0, 2);
    let f = hilbert_endomorphism(p, max_len, window, Mode::F2);
    let ff = substitute(&f, &f).expect("same colors");
    let id = NCEndomorphism::identity(f.labels().to_vec(), Mode::F2, max_len, window);
    let mut out = Vec::new();
    for (c, img) in ff.images().iter().enumerate() {
        let face = FaceId::from_index(c);
        let mut set = HashSet::new();
        for (w, poly) in img.terms() {
            let mut coeff = poly.coeff(2);
            coeff += id.image(face).coeff(w).coeff(2);
            if coeff % 2 != 0 {
                set.insert(w.clone());
            }
        }
        out.extend(sorted_defects(face, set));
    }
    out
}
