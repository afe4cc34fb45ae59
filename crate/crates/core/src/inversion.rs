//! Compositional inversion by summing over trees, with an independent
//! degree-by-degree solver as oracle.
//!
//! A tree contributes the product of its vertex coefficients times a sign.
//! The sign that makes the tree sum an inverse is `(−1)^{#inner vertices}`:
//! a unary stem of length `k` then contributes `(−F̃)^k`, matching the
//! geometric series `E − F̃ + F̃² − …`. The rule written in terms of
//! `|T| = n − #inner edges − 2` agrees with it only up to `(−1)^n`;
//! [`TreeSign::Degree`] keeps that rule available as a diagnostic.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::{LaurentPoly, Mode, Window};
use crate::ncseries::{NCEndomorphism, NCSeries, Word};
use crate::polytope::FaceId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InversionError {
    #[error("linear coefficient is {0}, expected 1")]
    LinearCoefficient(LaurentPoly),
    #[error("linear part entry ({row}, {col}) = {entry} is not identity plus positive powers of t")]
    Split { row: String, col: String, entry: LaurentPoly },
    #[error("tree inversion needs t to map to t")]
    TSign,
    #[error("linear inverse does not verify against the linear part")]
    Verification,
}

/// Rooted planar tree; inner vertices have at least one child.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(ch) => ch.iter().map(PlanarTree::leaves).sum(),
        }
    }

    pub fn inner_vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => 1 + ch.iter().map(PlanarTree::inner_vertices).sum::<usize>(),
        }
    }

    /// Edges joining two inner vertices.
    pub fn inner_edges(&self) -> usize {
        self.inner_vertices().saturating_sub(1)
    }

    /// `|T| = n − #inner edges − 2`.
    pub fn degree(&self) -> i64 {
        self.leaves() as i64 - self.inner_edges() as i64 - 2
    }

    pub fn sign(&self, rule: TreeSign) -> i64 {
        let e = match rule {
            TreeSign::InnerVertices => self.inner_vertices() as i64,
            TreeSign::Degree => self.degree() + 1,
        };
        if e.rem_euclid(2) == 0 { 1 } else { -1 }
    }

    /// Arities of inner vertices, preorder.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn go(t: &PlanarTree, out: &mut Vec<usize>) {
            if let PlanarTree::Node(ch) = t {
                out.push(ch.len());
                ch.iter().for_each(|c| go(c, out));
            }
        }
        go(self, &mut out);
        out
    }

    /// All trees with `n` leaves whose inner vertices have arity at least 2.
    pub fn enumerate(n: usize) -> Vec<PlanarTree> {
        let mut memo: Vec<Vec<PlanarTree>> = vec![Vec::new(), vec![PlanarTree::Leaf]];
        for m in 2..=n {
            let mut trees = Vec::new();
            for parts in compositions(m) {
                if parts.len() < 2 {
                    continue;
                }
                let mut partial: Vec<Vec<PlanarTree>> = vec![Vec::new()];
                for &k in &parts {
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            memo[k].iter().map(move |t| {
                                let mut p = prefix.clone();
                                p.push(t.clone());
                                p
                            })
                        })
                        .collect();
                }
                trees.extend(partial.into_iter().map(PlanarTree::Node));
            }
            memo.push(trees);
        }
        if n == 0 { Vec::new() } else { memo.swap_remove(n) }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "|"),
            PlanarTree::Node(ch) => {
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Little Schröder numbers from their three-term recurrence.
pub fn tree_count(n: usize) -> u64 {
    let mut s: Vec<u64> = vec![0, 1, 1];
    for k in 2..n.max(2) {
        let k = k as u64;
        let next = (3 * (2 * k - 1) * s[k as usize] - (k - 2) * s[k as usize - 1]) / (k + 1);
        s.push(next);
    }
    s[n]
}

/// Sign rule for tree sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum TreeSign {
    /// `(−1)^{#inner vertices}`
    #[default]
    InnerVertices,
    /// `(−1)^{|T|+1}` with `|T| = n − #inner edges − 2`
    Degree,
}

/// Inverse of `x ↦ Σ fₙ xⁿ` (`f[0]` is `f₁`) as a tree sum.
pub fn invert_single(f: &[LaurentPoly], n_max: usize, mode: Mode) -> Result<Vec<LaurentPoly>, InversionError> {
    invert_single_with(f, n_max, mode, TreeSign::InnerVertices)
}

pub fn invert_single_with(
    f: &[LaurentPoly],
    n_max: usize,
    mode: Mode,
    rule: TreeSign,
) -> Result<Vec<LaurentPoly>, InversionError> {
    let f1 = f.first().cloned().unwrap_or_default();
    if f1 != LaurentPoly::one() {
        return Err(InversionError::LinearCoefficient(f1));
    }
    let coeff = |k: usize| f.get(k - 1).cloned().unwrap_or_default();
    Ok((1..=n_max)
        .map(|n| {
            let mut g = LaurentPoly::zero();
            for t in PlanarTree::enumerate(n) {
                let mut term = LaurentPoly::monomial(0, t.sign(rule));
                for a in t.arities() {
                    term = term.mul(&coeff(a), mode);
                }
                g.add_assign(&term, mode);
            }
            g
        })
        .collect())
}

/// Inverse of a single-variable series by solving `f(g(x)) = x` one degree
/// at a time.
pub fn solve_single_oracle(f: &[LaurentPoly], n_max: usize, mode: Mode) -> Result<Vec<LaurentPoly>, InversionError> {
    let f1 = f.first().cloned().unwrap_or_default();
    if f1 != LaurentPoly::one() {
        return Err(InversionError::LinearCoefficient(f1));
    }
    let mut g: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n_max + 1];
    g[1] = LaurentPoly::one();
    for n in 2..=n_max {
        // powers[k][m] = [x^m] g^k using g_1..g_{n−1}
        let mut acc = LaurentPoly::zero();
        let mut power = g.clone();
        power[n] = LaurentPoly::zero();
        for k in 2..=n {
            let mut next = vec![LaurentPoly::zero(); n + 1];
            for a in 1..=n {
                for b in 1..=n - a {
                    if !power[a].is_zero() && !g[b].is_zero() && b < n {
                        next[a + b].add_assign(&power[a].mul(&g[b], mode), mode);
                    }
                }
            }
            power = next;
            if let Some(fk) = f.get(k - 1) {
                acc.add_assign(&fk.mul(&power[n], mode), mode);
            }
        }
        g[n] = acc.neg(mode);
    }
    Ok(g.into_iter().skip(1).collect())
}

/// Square matrix over Laurent polynomials, indexed by colors.
pub type Matrix = Vec<Vec<LaurentPoly>>;

/// The linear part `F` of an endomorphism: `F[c][d]` is the coefficient of
/// the one-letter word `d` in the image of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPart {
    pub labels: Vec<String>,
    pub matrix: Matrix,
    pub mode: Mode,
}

impl LinearPart {
    pub fn of(f: &NCEndomorphism) -> Self {
        let n = f.color_count();
        let matrix = (0..n)
            .map(|c| (0..n).map(|d| f.image(FaceId::from_index(c)).coeff(&[FaceId::from_index(d)])).collect())
            .collect();
        LinearPart { labels: f.labels().to_vec(), matrix, mode: f.mode() }
    }

    /// `F̃ = F − E`, after checking it has only positive powers of `t`.
    pub fn tilde(&self) -> Result<Matrix, InversionError> {
        let n = self.matrix.len();
        let mut out = self.matrix.clone();
        for c in 0..n {
            out[c][c].add_term(0, -1, self.mode);
            for d in 0..n {
                if out[c][d].min_degree().is_some_and(|k| k <= 0) {
                    return Err(InversionError::Split {
                        row: self.labels[c].clone(),
                        col: self.labels[d].clone(),
                        entry: self.matrix[c][d].clone(),
                    });
                }
            }
        }
        Ok(out)
    }
}

fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|c| (0..n).map(|d| if c == d { LaurentPoly::one() } else { LaurentPoly::zero() }).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix, mode: Mode, window: Window) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = LaurentPoly::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s.add_assign(&a[i][k].mul(&b[k][j], mode), mode);
                        }
                    }
                    s.truncate(window)
                })
                .collect()
        })
        .collect()
}

/// `G = Σ (−F̃)ⁿ`, checked against `G·F = F·G = E` inside the window.
pub fn invert_linear(l: &LinearPart, window: Window) -> Result<Matrix, InversionError> {
    let mode = l.mode;
    let ft = l.tilde()?;
    let n = ft.len();
    let neg: Matrix = ft.iter().map(|row| row.iter().map(|p| p.neg(mode)).collect()).collect();
    let mut g = identity_matrix(n).into_iter().map(|r| r.into_iter().map(|p| p.truncate(window)).collect()).collect::<Matrix>();
    let mut power = g.clone();
    // Each factor raises the lowest degree by at least one.
    for _ in 0..=(window.hi.max(0) as usize) {
        power = mat_mul(&power, &neg, mode, window);
        if power.iter().all(|r| r.iter().all(LaurentPoly::is_zero)) {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                g[i][j].add_assign(&power[i][j], mode);
            }
        }
    }
    let e: Matrix = identity_matrix(n).into_iter().map(|r| r.into_iter().map(|p| p.truncate(window)).collect()).collect();
    let f: Matrix = l.matrix.iter().map(|r| r.iter().map(|p| p.truncate(window)).collect()).collect();
    if mat_mul(&g, &f, mode, window) != e || mat_mul(&f, &g, mode, window) != e {
        return Err(InversionError::Verification);
    }
    Ok(g)
}

/// Window wide enough that nothing dropped during the computation can come
/// back into `window`: only nonlinear coefficients can lower degrees, and a
/// result of word length `N` uses at most `N − 1` of them.
fn working_window(f: &NCEndomorphism) -> Window {
    let window = f.window();
    let low = f
        .images()
        .iter()
        .flat_map(|s| s.terms().filter(|(w, _)| w.len() >= 2).filter_map(|(_, p)| p.min_degree()))
        .min()
        .unwrap_or(0)
        .min(0);
    let slack = (f.max_len() as i32 - 1).max(0) * low;
    Window::new(window.lo.min(slack), window.hi - slack)
}

type Buckets = Vec<HashMap<Word, LaurentPoly>>;

fn add_into(map: &mut HashMap<Word, LaurentPoly>, w: Word, p: &LaurentPoly, mode: Mode, window: Window) {
    let p = p.truncate(window);
    if p.is_zero() {
        return;
    }
    let e = map.entry(w.clone()).or_default();
    e.add_assign(&p, mode);
    if e.is_zero() {
        map.remove(&w);
    }
}

/// Length-`n` part of the product of the series `factors`, each factor
/// contributing a word of length at least one.
fn product_exact(factors: &[&Buckets], n: usize, mode: Mode, window: Window) -> HashMap<Word, LaurentPoly> {
    let mut acc: HashMap<Word, LaurentPoly> = HashMap::new();
    acc.insert(Word::new(), LaurentPoly::one());
    for (i, fac) in factors.iter().enumerate() {
        let rest = factors.len() - i - 1;
        let mut next = HashMap::new();
        for (pw, pc) in &acc {
            let lo = if rest == 0 { n - pw.len() } else { 1 };
            let hi = n - pw.len() - rest;
            for bucket in fac.iter().take(hi + 1).skip(lo) {
                for (w, c) in bucket {
                    let mut word = pw.clone();
                    word.extend_from_slice(w);
                    add_into(&mut next, word, &pc.mul(c, mode), mode, window);
                }
            }
        }
        acc = next;
    }
    acc
}

fn nonlinear_terms(f: &NCEndomorphism) -> Vec<Vec<(Word, LaurentPoly)>> {
    f.images()
        .iter()
        .map(|s| {
            let mut v: Vec<(Word, LaurentPoly)> = s.terms().filter(|(w, _)| w.len() >= 2).map(|(w, p)| (w.clone(), p.clone())).collect();
            v.sort_by_key(|(w, _)| w.clone());
            v
        })
        .collect()
}

fn assemble(f: &NCEndomorphism, g: Vec<Buckets>) -> NCEndomorphism {
    let images = g
        .into_iter()
        .map(|buckets| {
            let mut s = NCSeries::zero(f.max_len(), f.window());
            for bucket in buckets {
                for (w, p) in bucket {
                    s.add(&w, &p, f.mode());
                }
            }
            s
        })
        .collect();
    NCEndomorphism::from_images(f.labels().to_vec(), images, 1, f.mode(), f.max_len(), f.window())
}

fn check_invertible(f: &NCEndomorphism) -> Result<Matrix, InversionError> {
    if f.t_sign() != 1 {
        return Err(InversionError::TSign);
    }
    LinearPart::of(f).tilde()
}

/// Composition inverse as a sum over marked trees, built up by word length.
///
/// A tree is either a leaf, a unary stem vertex weighted by `F̃` over a
/// smaller tree, or a vertex of arity `k ≥ 2` weighted by a nonlinear
/// coefficient of `f` over `k` trees. Each vertex contributes a factor −1.
pub fn invert_endo(f: &NCEndomorphism) -> Result<NCEndomorphism, InversionError> {
    let ft = check_invertible(f)?;
    let (n_max, mode) = (f.max_len(), f.mode());
    let window = working_window(f);
    let colors = f.color_count();
    let nonlinear = nonlinear_terms(f);
    let mut g: Vec<Buckets> = vec![vec![HashMap::new(); n_max + 1]; colors];
    for n in 1..=n_max {
        let mut level: Vec<HashMap<Word, LaurentPoly>> = vec![HashMap::new(); colors];
        for c in 0..colors {
            if n == 1 {
                level[c].insert(Word::from_slice(&[FaceId::from_index(c)]), LaurentPoly::one());
            }
            for (u, p) in &nonlinear[c] {
                if u.len() > n {
                    continue;
                }
                let factors: Vec<&Buckets> = u.iter().map(|d| &g[d.index()]).collect();
                for (w, q) in product_exact(&factors, n, mode, window) {
                    add_into(&mut level[c], w, &p.mul(&q, mode).neg(mode), mode, window);
                }
            }
        }
        let cap = (window.hi - window.lo + 1).max(1) as usize;
        for stem in 0..=cap {
            for c in 0..colors {
                for (w, p) in &level[c] {
                    add_into(&mut g[c][n], w.clone(), p, mode, window);
                }
            }
            let next: Vec<HashMap<Word, LaurentPoly>> = (0..colors)
                .map(|c| {
                    let mut out = HashMap::new();
                    for d in 0..colors {
                        if ft[c][d].is_zero() {
                            continue;
                        }
                        for (w, p) in &level[d] {
                            add_into(&mut out, w.clone(), &ft[c][d].mul(p, mode).neg(mode), mode, window);
                        }
                    }
                    out
                })
                .collect();
            if next.iter().all(HashMap::is_empty) {
                break;
            }
            assert!(stem < cap, "stem sum did not terminate inside the window");
            level = next;
        }
    }
    Ok(assemble(f, g))
}

/// Composition inverse by solving `f(g(c)) = c` one word length at a time:
/// the length-`n` part of `g(c)` is the letterwise inverse of the linear part
/// applied to what the shorter parts leave over.
pub fn solve_inverse_oracle(f: &NCEndomorphism) -> Result<NCEndomorphism, InversionError> {
    check_invertible(f)?;
    let (n_max, mode) = (f.max_len(), f.mode());
    let window = working_window(f);
    let colors = f.color_count();
    let ginv = invert_linear(&LinearPart::of(f), window)?;
    let f_buckets: Vec<Buckets> = f
        .images()
        .iter()
        .map(|s| {
            let mut b: Buckets = vec![HashMap::new(); n_max + 1];
            for (w, p) in s.terms() {
                b[w.len()].insert(w.clone(), p.clone());
            }
            b
        })
        .collect();
    let mut g: Vec<Buckets> = vec![vec![HashMap::new(); n_max + 1]; colors];
    for n in 1..=n_max {
        for c in 0..colors {
            let mut rhs: HashMap<Word, LaurentPoly> = HashMap::new();
            if n == 1 {
                rhs.insert(Word::from_slice(&[FaceId::from_index(c)]), LaurentPoly::one());
            }
            for m in 1..n {
                for (u, p) in g[c][m].clone() {
                    let factors: Vec<&Buckets> = u.iter().map(|d| &f_buckets[d.index()]).collect();
                    for (w, q) in product_exact(&factors, n, mode, window) {
                        add_into(&mut rhs, w, &p.mul(&q, mode).neg(mode), mode, window);
                    }
                }
            }
            let mut solved = HashMap::new();
            for (w, p) in rhs {
                let mut acc: HashMap<Word, LaurentPoly> = HashMap::new();
                acc.insert(Word::new(), p);
                for letter in &w {
                    let mut next = HashMap::new();
                    for (pw, pc) in &acc {
                        for (d, entry) in ginv[letter.index()].iter().enumerate() {
                            if entry.is_zero() {
                                continue;
                            }
                            let mut word = pw.clone();
                            word.push(FaceId::from_index(d));
                            add_into(&mut next, word, &pc.mul(entry, mode), mode, window);
                        }
                    }
                    acc = next;
                }
                for (w2, p2) in acc {
                    add_into(&mut solved, w2, &p2, mode, window);
                }
            }
            g[c][n] = solved;
        }
    }
    Ok(assemble(f, g))
}

/// A planar tree whose edges carry colors: the root color, and for inner
/// vertices the colors of the subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkedTree {
    Leaf(FaceId),
    Vertex { color: FaceId, children: Vec<MarkedTree> },
}

impl MarkedTree {
    pub fn color(&self) -> FaceId {
        match self {
            MarkedTree::Leaf(c) | MarkedTree::Vertex { color: c, .. } => *c,
        }
    }

    pub fn leaf_word(&self) -> Word {
        match self {
            MarkedTree::Leaf(c) => Word::from_slice(&[*c]),
            MarkedTree::Vertex { children, .. } => children.iter().flat_map(MarkedTree::leaf_word).collect(),
        }
    }

    pub fn shape(&self) -> PlanarTree {
        match self {
            MarkedTree::Leaf(_) => PlanarTree::Leaf,
            MarkedTree::Vertex { children, .. } => PlanarTree::Node(children.iter().map(MarkedTree::shape).collect()),
        }
    }

    /// `f_T`: product over inner vertices of the coefficient of the
    /// children's colors in the image of the vertex color, with `F̃` used
    /// for unary vertices.
    pub fn weight(&self, f: &NCEndomorphism, ft: &Matrix) -> LaurentPoly {
        match self {
            MarkedTree::Leaf(_) => LaurentPoly::one(),
            MarkedTree::Vertex { color, children } => {
                let word: Word = children.iter().map(MarkedTree::color).collect();
                let mut w = if word.len() == 1 {
                    ft[color.index()][word[0].index()].clone()
                } else {
                    f.image(*color).coeff(&word)
                };
                for ch in children {
                    w = w.mul(&ch.weight(f, ft), f.mode());
                }
                w
            }
        }
    }
}

/// All marked trees with leaf word `word` and root color `root`, at most
/// `stems` unary vertices, and only nonzero vertex coefficients.
pub fn marked_trees(f: &NCEndomorphism, word: &[FaceId], root: FaceId, stems: usize) -> Result<Vec<MarkedTree>, InversionError> {
    let ft = check_invertible(f)?;
    Ok(marked_trees_rec(f, &ft, word, root, stems))
}

fn marked_trees_rec(f: &NCEndomorphism, ft: &Matrix, word: &[FaceId], root: FaceId, stems: usize) -> Vec<MarkedTree> {
    let mut out = Vec::new();
    if word == [root] {
        out.push(MarkedTree::Leaf(root));
    }
    if stems > 0 {
        for (d, entry) in ft[root.index()].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            for t in marked_trees_rec(f, ft, word, FaceId::from_index(d), stems - 1) {
                out.push(MarkedTree::Vertex { color: root, children: vec![t] });
            }
        }
    }
    let image = f.image(root);
    let mut targets: Vec<&Word> = image.terms().filter(|(u, _)| u.len() >= 2 && u.len() <= word.len()).map(|(u, _)| u).collect();
    targets.sort();
    for u in targets {
        for split in compositions(word.len()).into_iter().filter(|s| s.len() == u.len()) {
            let mut partial: Vec<Vec<MarkedTree>> = vec![Vec::new()];
            let mut start = 0;
            for (k, &len) in split.iter().enumerate() {
                let sub = marked_trees_rec(f, ft, &word[start..start + len], u[k], stems);
                start += len;
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        sub.iter().map(move |t| {
                            let mut p = prefix.clone();
                            p.push(t.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|children| MarkedTree::Vertex { color: root, children }));
        }
    }
    out
}

/// Explicit tree sum for one coefficient of the inverse.
pub fn marked_tree_coefficient(
    f: &NCEndomorphism,
    word: &[FaceId],
    root: FaceId,
    stems: usize,
    rule: TreeSign,
) -> Result<LaurentPoly, InversionError> {
    let ft = check_invertible(f)?;
    let mut sum = LaurentPoly::zero();
    for t in marked_trees_rec(f, &ft, word, root, stems) {
        let w = t.weight(f, &ft).mul(&LaurentPoly::monomial(0, t.shape().sign(rule)), f.mode());
        sum.add_assign(&w, f.mode());
    }
    Ok(sum.truncate(f.window()))
}
