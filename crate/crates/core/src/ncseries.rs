//! Truncated noncommutative power series with Laurent coefficients, and the
//! algebra endomorphisms they define.
//!
//! Colors are [`FaceId`]s; for series not tied to a polytope any index set
//! with a list of labels will do.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;
use thiserror::Error;

use crate::chains::for_each_chain;
use crate::laurent::{LaurentPoly, Mode, Window};
use crate::polytope::{DirectedPolytope, FaceId};

pub type Word = SmallVec<[FaceId; 6]>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot compose endomorphisms over different {0}")]
    Mismatch(&'static str),
}

/// Series `Σ p_w(t)·w` with every word of length at most `max_len` and every
/// exponent inside `window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCSeries {
    terms: HashMap<Word, LaurentPoly>,
    max_len: usize,
    window: Window,
}

impl NCSeries {
    pub fn zero(max_len: usize, window: Window) -> Self {
        NCSeries { terms: HashMap::new(), max_len, window }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[FaceId]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Adds `p·w`, dropping long words and out-of-window exponents.
    pub fn add(&mut self, word: &[FaceId], p: &LaurentPoly, mode: Mode) {
        if word.len() > self.max_len {
            return;
        }
        let p = p.truncate(self.window);
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(Word::from_slice(word)).or_default();
        entry.add_assign(&p, mode);
        if entry.is_zero() {
            self.terms.remove(word);
        }
    }

    pub fn add_series(&mut self, other: &NCSeries, mode: Mode) {
        for (w, p) in &other.terms {
            self.add(w, p, mode);
        }
    }

    pub fn sub_series(&mut self, other: &NCSeries, mode: Mode) {
        for (w, p) in &other.terms {
            self.add(w, &p.neg(mode), mode);
        }
    }

    pub fn retain_len(&self, n: usize) -> NCSeries {
        let mut out = NCSeries::zero(self.max_len, self.window);
        out.terms = self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, p)| (w.clone(), p.clone())).collect();
        out
    }

    /// Terms ordered by word length, then labels, for reports.
    pub fn sorted_terms(&self, labels: &[String]) -> Vec<(Word, LaurentPoly)> {
        let mut v: Vec<(Word, LaurentPoly)> = self.terms.iter().map(|(w, p)| (w.clone(), p.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            a.len().cmp(&b.len()).then_with(|| {
                let la = a.iter().map(|f| &labels[f.index()]);
                let lb = b.iter().map(|f| &labels[f.index()]);
                la.cmp(lb)
            })
        });
        v
    }

    /// Restriction to shorter words and a narrower window.
    pub fn restrict(&self, max_len: usize, window: Window) -> NCSeries {
        let mut out = NCSeries::zero(max_len, window);
        for (w, p) in &self.terms {
            out.add(w, p, Mode::Integers);
        }
        out
    }
}

/// Sign twist `c ↦ ±c`, `t ↦ ±t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignTwist {
    pub flip_colors: bool,
    pub flip_t: bool,
}

impl SignTwist {
    pub const NONE: SignTwist = SignTwist { flip_colors: false, flip_t: false };
    pub const T: SignTwist = SignTwist { flip_colors: false, flip_t: true };
    pub const COLORS: SignTwist = SignTwist { flip_colors: true, flip_t: false };
    pub const BOTH: SignTwist = SignTwist { flip_colors: true, flip_t: true };
}

/// Recorded when some coefficient fell outside the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationWarning {
    pub min_excess: i32,
    pub max_excess: i32,
    pub window: Window,
}

/// An endomorphism of the free algebra on the colors, given by the images
/// of the colors and the image `t_sign·t` of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCEndomorphism {
    labels: Arc<Vec<String>>,
    images: Vec<NCSeries>,
    t_sign: i32,
    mode: Mode,
    max_len: usize,
    window: Window,
    truncation: Option<TruncationWarning>,
}

/// One nonzero coefficient of a difference of endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualTerm {
    pub color: String,
    pub word: Vec<String>,
    pub coeff: LaurentPoly,
}

impl ResidualTerm {
    pub fn render(&self) -> String {
        format!("{}\t{}\t{}", self.color, self.word.join(","), self.coeff)
    }
}

impl NCEndomorphism {
    /// Builds an endomorphism from explicit images; images are re-truncated.
    pub fn from_images(
        labels: Vec<String>,
        images: Vec<NCSeries>,
        t_sign: i32,
        mode: Mode,
        max_len: usize,
        window: Window,
    ) -> Self {
        assert_eq!(labels.len(), images.len(), "one image per color");
        assert!(t_sign == 1 || t_sign == -1, "t_sign is ±1");
        let images = images
            .into_iter()
            .map(|s| {
                let mut out = NCSeries::zero(max_len, window);
                for (w, p) in s.terms() {
                    out.add(w, p, mode);
                }
                out
            })
            .collect();
        let t_sign = if mode == Mode::F2 { 1 } else { t_sign };
        NCEndomorphism { labels: Arc::new(labels), images, t_sign, mode, max_len, window, truncation: None }
    }

    pub fn identity(labels: Vec<String>, mode: Mode, max_len: usize, window: Window) -> Self {
        twist(SignTwist::NONE, labels, max_len, window, mode)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn color_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, c: FaceId) -> &NCSeries {
        &self.images[c.index()]
    }

    pub fn images(&self) -> &[NCSeries] {
        &self.images
    }

    pub fn t_sign(&self) -> i32 {
        self.t_sign
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn truncation(&self) -> Option<&TruncationWarning> {
        self.truncation.as_ref()
    }

    fn check_compatible(&self, other: &NCEndomorphism) -> Result<(), SeriesError> {
        if self.labels.as_slice() != other.labels.as_slice() {
            return Err(SeriesError::Mismatch("color sets"));
        }
        if self.max_len != other.max_len {
            return Err(SeriesError::Mismatch("word-length bounds"));
        }
        if self.window != other.window {
            return Err(SeriesError::Mismatch("t-windows"));
        }
        if self.mode != other.mode {
            return Err(SeriesError::Mismatch("coefficient modes"));
        }
        Ok(())
    }

    fn images_by_len(&self) -> Vec<Vec<Vec<(Word, LaurentPoly)>>> {
        self.images
            .iter()
            .map(|s| {
                let mut by_len = vec![Vec::new(); self.max_len + 1];
                for (w, p) in s.terms() {
                    by_len[w.len()].push((w.clone(), p.clone()));
                }
                by_len
            })
            .collect()
    }

    /// Applies this endomorphism to a series.
    pub fn apply(&self, series: &NCSeries) -> NCSeries {
        apply_with(self, &self.images_by_len(), series)
    }

    /// `c ↦ self(other(c))`.
    pub fn compose_after(&self, other: &NCEndomorphism) -> Result<NCEndomorphism, SeriesError> {
        substitute(self, other)
    }

    /// Nonzero coefficients of `self − other`, in report order.
    pub fn difference(&self, other: &NCEndomorphism) -> Vec<ResidualTerm> {
        let mut out = Vec::new();
        let mode = self.mode;
        for c in 0..self.images.len() {
            let mut d = self.images[c].clone();
            d.sub_series(&other.images[c], mode);
            for (w, p) in d.sorted_terms(&self.labels) {
                out.push(ResidualTerm {
                    color: self.labels[c].clone(),
                    word: w.iter().map(|f| self.labels[f.index()].clone()).collect(),
                    coeff: p,
                });
            }
        }
        if self.t_sign != other.t_sign {
            out.push(ResidualTerm { color: "t".into(), word: vec![], coeff: LaurentPoly::monomial(1, i64::from(self.t_sign - other.t_sign)) });
        }
        out
    }

    /// `color <TAB> word <TAB> laurent` lines in canonical order.
    pub fn render(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (c, s) in self.images.iter().enumerate() {
            for (w, p) in s.sorted_terms(&self.labels) {
                let word: Vec<&str> = w.iter().map(|f| self.labels[f.index()].as_str()).collect();
                lines.push(format!("{}\t{}\t{}", self.labels[c], word.join(","), p));
            }
        }
        lines
    }

    /// JSON form: color label → list of `{word, coeffs}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (c, s) in self.images.iter().enumerate() {
            let terms: Vec<serde_json::Value> = s
                .sorted_terms(&self.labels)
                .into_iter()
                .map(|(w, p)| {
                    serde_json::json!({
                        "word": w.iter().map(|f| self.labels[f.index()].clone()).collect::<Vec<_>>(),
                        "coeffs": p,
                    })
                })
                .collect();
            map.insert(self.labels[c].clone(), serde_json::Value::Array(terms));
        }
        serde_json::json!({ "t_sign": self.t_sign, "images": map })
    }

    /// Restriction to shorter words and a narrower window.
    pub fn restrict(&self, max_len: usize, window: Window) -> NCEndomorphism {
        NCEndomorphism::from_images(
            self.labels.to_vec(),
            self.images.iter().map(|s| s.restrict(max_len, window)).collect(),
            self.t_sign,
            self.mode,
            max_len,
            window,
        )
    }
}

fn apply_with(outer: &NCEndomorphism, by_len: &[Vec<Vec<(Word, LaurentPoly)>>], series: &NCSeries) -> NCSeries {
    let (n, mode) = (outer.max_len, outer.mode);
    let mut out = NCSeries::zero(n, outer.window);
    for (w, p) in series.terms() {
        let mut acc: HashMap<Word, LaurentPoly> = HashMap::new();
        acc.insert(Word::new(), p.scale_t(outer.t_sign, mode));
        for (i, letter) in w.iter().enumerate() {
            let remaining = w.len() - i - 1;
            let mut next: HashMap<Word, LaurentPoly> = HashMap::new();
            for (pw, pc) in &acc {
                let budget = n.saturating_sub(pw.len() + remaining);
                for bucket in by_len[letter.index()].iter().take(budget + 1) {
                    for (iw, ic) in bucket {
                        let mut word = pw.clone();
                        word.extend_from_slice(iw);
                        let e = next.entry(word).or_default();
                        e.add_assign(&pc.mul(ic, mode), mode);
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        for (word, c) in acc {
            out.add(&word, &c, mode);
        }
    }
    out
}

/// `result(c) = outer(inner(c))`.
pub fn substitute(outer: &NCEndomorphism, inner: &NCEndomorphism) -> Result<NCEndomorphism, SeriesError> {
    outer.check_compatible(inner)?;
    let by_len = outer.images_by_len();
    let images: Vec<NCSeries> = inner.images.par_iter().map(|s| apply_with(outer, &by_len, s)).collect();
    Ok(NCEndomorphism {
        labels: outer.labels.clone(),
        images,
        t_sign: outer.t_sign * inner.t_sign,
        mode: outer.mode,
        max_len: outer.max_len,
        window: outer.window,
        truncation: None,
    })
}

/// The linear endomorphism `c ↦ ±c`, `t ↦ ±t`; trivial over F₂.
pub fn twist(s: SignTwist, labels: Vec<String>, max_len: usize, window: Window, mode: Mode) -> NCEndomorphism {
    let sign = |flip: bool| if flip && mode == Mode::Integers { -1 } else { 1 };
    let images = (0..labels.len())
        .map(|c| {
            let mut series = NCSeries::zero(max_len, window);
            series.add(&[FaceId::from_index(c)], &LaurentPoly::monomial(0, sign(s.flip_colors)), mode);
            series
        })
        .collect();
    NCEndomorphism {
        labels: Arc::new(labels),
        images,
        t_sign: sign(s.flip_t) as i32,
        mode,
        max_len,
        window,
        truncation: None,
    }
}

pub fn face_labels(p: &DirectedPolytope) -> Vec<String> {
    p.faces().map(|f| p.label(f).to_string()).collect()
}

/// `c ↦ Σ t^{excess(u)} u` over chains `u` in `c` of length at most `max_len`.
pub fn hilbert_endomorphism(p: &DirectedPolytope, max_len: usize, window: Window, mode: Mode) -> NCEndomorphism {
    let results: Vec<(NCSeries, Option<(i32, i32)>)> = p
        .faces()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|f| {
            let mut s = NCSeries::zero(max_len, window);
            let mut range: Option<(i32, i32)> = None;
            for_each_chain(p, f, max_len, &mut |u, e| {
                let r = range.get_or_insert((e, e));
                r.0 = r.0.min(e);
                r.1 = r.1.max(e);
                s.add(u, &LaurentPoly::monomial(e, 1), mode);
            });
            (s, range)
        })
        .collect();
    let (lo, hi) = results
        .iter()
        .filter_map(|(_, r)| *r)
        .fold((i32::MAX, i32::MIN), |(a, b), (x, y)| (a.min(x), b.max(y)));
    let truncation = (!window.contains(lo) || !window.contains(hi))
        .then_some(TruncationWarning { min_excess: lo, max_excess: hi, window });
    NCEndomorphism {
        labels: Arc::new(face_labels(p)),
        images: results.into_iter().map(|(s, _)| s).collect(),
        t_sign: 1,
        mode,
        max_len,
        window,
        truncation,
    }
}

/// Outcome of [`involution_check`]: every nonzero coefficient of
/// `(f∘I)∘(f∘I) − id`, exact for words up to `horizon`.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub residual: Vec<ResidualTerm>,
    pub horizon: usize,
    pub truncation: Option<TruncationWarning>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.residual.is_empty()
    }
}

pub fn involution_check(p: &DirectedPolytope, max_len: usize, window: Window, mode: Mode, s: SignTwist) -> InvolutionReport {
    let f = hilbert_endomorphism(p, max_len, window, mode);
    let twisted = twist(s, face_labels(p), max_len, window, mode);
    let h = substitute(&f, &twisted).expect("same colors");
    let hh = substitute(&h, &h).expect("same colors");
    let id = NCEndomorphism::identity(face_labels(p), mode, max_len, window);
    InvolutionReport { residual: hh.difference(&id), horizon: max_len, truncation: f.truncation.clone() }
}
