//! Tree monomials in the free colored operad on a family's generators,
//! the path-lexicographic order, and normal forms with respect to the
//! quadratic relations.
//!
//! Two families are supported: simplices ([`FamilyKind::Simplex`]) and
//! polygons ([`FamilyKind::Polygon`]).

mod polygon;
mod simplex;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{op_dim, subfaces_by_label};
use crate::polytope::{DirectedPolytope, FaceId};

pub use polygon::PolygonLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    Simplex(usize),
    Polygon(usize, usize),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Simplex(n) => write!(f, "simplex({n})"),
            FamilyKind::Polygon(n, m) => write!(f, "polygon({n},{m})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("cannot compare monomials of {0} and {1}")]
    CrossFamily(FamilyKind, FamilyKind),
    #[error("generator order does not separate {0} and {1}")]
    Tie(String, String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    Parameter(String),
    #[error("unknown color {0:?}")]
    UnknownColor(String),
}

/// Which relation list to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum RelationList {
    /// The relation types exactly as listed for each family.
    Printed,
    /// The printed list with the conditions and arities it misses.
    #[default]
    Completed,
}

/// Tie-break between `U_i(I)` and `U_j(I)` in the simplex generator order.
/// Polygon orders ignore it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum OrderVariant {
    /// `U_i(I) < U_j(I)` when `i > j`: stems append indices in descending order.
    #[default]
    DescendingStems,
    /// `U_i(I) < U_j(I)` when `i < j`: stems append indices in ascending order.
    AscendingStems,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenId(u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GenKind {
    /// Simplex `U_i(I)`: append index `i`.
    Insert(usize),
    /// Simplex `B(I,J)` with `max I = min J`.
    Merge,
    /// Polygon `U_left(v)`: a vertex into the edge leaving it.
    LeftInclusion,
    /// Polygon `U_right(v)`: a vertex into the edge entering it.
    RightInclusion,
    VertexProduct,
    VertexEdge,
    EdgeVertex,
    SourceAction,
    SinkAction,
    /// Polygon `M(σ)`: increasing edges of one path into the polygon.
    EdgeSequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub kind: GenKind,
    pub inputs: Vec<FaceId>,
    pub output: FaceId,
}

impl Generator {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn head(&self) -> String {
        match self.kind {
            GenKind::Insert(i) => format!("U_{i}"),
            GenKind::LeftInclusion => "U_left".into(),
            GenKind::RightInclusion => "U_right".into(),
            GenKind::EdgeSequence => "M".into(),
            _ => "B".into(),
        }
    }
}

/// Planar tree with generator-labelled vertices; leaves carry colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(FaceId),
    Node(GenId, Vec<Tree>),
}

impl Tree {
    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, ch) => 1 + ch.iter().map(Tree::vertex_count).sum::<usize>(),
        }
    }

    pub fn inputs(&self) -> Vec<FaceId> {
        let mut out = Vec::new();
        self.collect_inputs(&mut out);
        out
    }

    fn collect_inputs(&self, out: &mut Vec<FaceId>) {
        match self {
            Tree::Leaf(c) => out.push(*c),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.collect_inputs(out)),
        }
    }

    /// For each leaf, the generators met on the way from it to the root.
    pub fn paths(&self) -> Vec<Vec<GenId>> {
        match self {
            Tree::Leaf(_) => vec![Vec::new()],
            Tree::Node(g, ch) => ch
                .iter()
                .flat_map(|c| c.paths())
                .map(|mut p| {
                    p.push(*g);
                    p
                })
                .collect(),
        }
    }

    fn quadratic_patterns(&self, out: &mut Vec<Quadratic>) {
        if let Tree::Node(g, ch) = self {
            for (slot, c) in ch.iter().enumerate() {
                if let Tree::Node(h, _) = c {
                    out.push(Quadratic { root: *g, slot, child: *h });
                }
                c.quadratic_patterns(out);
            }
        }
    }
}

/// A tree monomial of one family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeMonomial {
    pub family: FamilyKind,
    pub tree: Tree,
}

/// Two-vertex monomial: `child` grafted into input `slot` of `root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadratic {
    pub root: GenId,
    pub slot: usize,
    pub child: GenId,
}

/// A binomial relation, oriented so that `leading` is the larger side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub kind: String,
    pub leading: Quadratic,
    pub other: Quadratic,
}

/// Count of normal forms against the dimension in one colored arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArityCount {
    pub inputs: Vec<FaceId>,
    pub output: FaceId,
    pub monomials: usize,
    pub normal_forms: usize,
    pub dim: usize,
}

impl ArityCount {
    pub fn matches(&self) -> bool {
        self.normal_forms == self.dim
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CountReport {
    /// Arities with at least one monomial or a nonzero operation space.
    pub rows: Vec<ArityCount>,
    /// All arities examined, including empty ones.
    pub arities_checked: usize,
}

impl CountReport {
    pub fn mismatches(&self) -> Vec<&ArityCount> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }
}

/// Differences between the relation list and the leading terms forced by
/// the order on all quadratic monomials.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PresentationReport {
    /// Non-minimal quadratic monomials that no relation has as leading term.
    pub missing: Vec<String>,
    /// Leading terms of relations that are the minimum of their arity.
    pub spurious: Vec<String>,
}

impl PresentationReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.spurious.is_empty()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AdmissibilityReport {
    pub monomials: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug)]
enum Layout {
    Simplex { sets: Vec<Vec<usize>> },
    Polygon(PolygonLayout),
}

/// A family's generators, order and relations over its polytope.
#[derive(Clone, Debug)]
pub struct Family {
    kind: FamilyKind,
    list: RelationList,
    variant: OrderVariant,
    polytope: DirectedPolytope,
    generators: Vec<Generator>,
    by_arity: HashMap<(Vec<FaceId>, FaceId), GenId>,
    by_output: Vec<Vec<GenId>>,
    relations: Vec<Relation>,
    rewrite: HashMap<Quadratic, Vec<Quadratic>>,
    leading: HashSet<Quadratic>,
    layout: Layout,
}

type Memo = HashMap<(Vec<FaceId>, FaceId), Vec<Tree>>;

impl Family {
    pub fn new(kind: FamilyKind, list: RelationList) -> Result<Self, FamilyError> {
        Self::with_order(kind, list, OrderVariant::DescendingStems)
    }

    pub fn with_order(kind: FamilyKind, list: RelationList, variant: OrderVariant) -> Result<Self, FamilyError> {
        match kind {
            FamilyKind::Simplex(n) => simplex::build(n, list, variant),
            FamilyKind::Polygon(n, m) => polygon::build(n, m, list, variant),
        }
    }

    pub fn simplex(n: usize) -> Result<Self, FamilyError> {
        Self::new(FamilyKind::Simplex(n), RelationList::Completed)
    }

    pub fn polygon(n: usize, m: usize) -> Result<Self, FamilyError> {
        Self::new(FamilyKind::Polygon(n, m), RelationList::Completed)
    }

    fn assemble(
        (kind, list, variant): (FamilyKind, RelationList, OrderVariant),
        polytope: DirectedPolytope,
        generators: Vec<Generator>,
        layout: Layout,
    ) -> Self {
        let mut by_arity = HashMap::new();
        let mut by_output = vec![Vec::new(); polytope.face_count()];
        for (i, g) in generators.iter().enumerate() {
            let id = GenId(i as u32);
            let previous = by_arity.insert((g.inputs.clone(), g.output), id);
            assert!(previous.is_none(), "one generator per arity");
            by_output[g.output.index()].push(id);
        }
        Family {
            kind,
            list,
            variant,
            polytope,
            generators,
            by_arity,
            by_output,
            relations: Vec::new(),
            rewrite: HashMap::new(),
            leading: HashSet::new(),
            layout,
        }
    }

    /// Orients each pair by comparison and installs the relations.
    fn install(&mut self, pairs: Vec<(String, Quadratic, Quadratic)>) {
        let mut seen = HashSet::new();
        for (kind, a, b) in pairs {
            assert_eq!(self.quadratic_arity(a), self.quadratic_arity(b), "{kind}: sides differ in arity");
            let ord = self.compare_trees(&self.quadratic_tree(a), &self.quadratic_tree(b)).expect("generator order is total");
            let (leading, other) = match ord {
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
                Ordering::Equal => panic!("{kind}: both sides are the same monomial"),
            };
            if !seen.insert((leading, other)) {
                continue;
            }
            self.rewrite.entry(leading).or_default().push(other);
            self.rewrite.entry(other).or_default().push(leading);
            self.leading.insert(leading);
            self.relations.push(Relation { kind, leading, other });
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn relation_list(&self) -> RelationList {
        self.list
    }

    pub fn order_variant(&self) -> OrderVariant {
        self.variant
    }

    pub fn polytope(&self) -> &DirectedPolytope {
        &self.polytope
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.generators[g.index()]
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.generators.len()).map(|i| GenId(i as u32))
    }

    /// The generator with these inputs and output, if any.
    pub fn generator_for(&self, inputs: &[FaceId], output: FaceId) -> Option<GenId> {
        self.by_arity.get(&(inputs.to_vec(), output)).copied()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn color(&self, label: &str) -> Result<FaceId, FamilyError> {
        self.polytope.face(label).ok_or_else(|| FamilyError::UnknownColor(label.to_string()))
    }

    pub fn gen_name(&self, g: GenId) -> String {
        let gen = self.generator(g);
        let inputs: Vec<&str> = gen.inputs.iter().map(|&c| self.polytope.label(c)).collect();
        format!("{}({})", gen.head(), inputs.join(","))
    }

    pub fn render_tree(&self, t: &Tree) -> String {
        match t {
            Tree::Leaf(c) => self.polytope.label(*c).to_string(),
            Tree::Node(g, ch) => {
                let inner: Vec<String> = ch.iter().map(|c| self.render_tree(c)).collect();
                format!("{}({})", self.generator(*g).head(), inner.join(","))
            }
        }
    }

    pub fn render(&self, t: &TreeMonomial) -> String {
        self.render_tree(&t.tree)
    }

    pub fn render_quadratic(&self, q: Quadratic) -> String {
        self.render_tree(&self.quadratic_tree(q))
    }

    pub fn monomial(&self, tree: Tree) -> TreeMonomial {
        TreeMonomial { family: self.kind, tree }
    }

    pub fn tree_output(&self, t: &Tree) -> FaceId {
        match t {
            Tree::Leaf(c) => *c,
            Tree::Node(g, _) => self.generator(*g).output,
        }
    }

    /// Whether every vertex's inputs match the outputs below it.
    pub fn is_consistent(&self, t: &Tree) -> bool {
        match t {
            Tree::Leaf(_) => true,
            Tree::Node(g, ch) => {
                let gen = self.generator(*g);
                gen.inputs.len() == ch.len()
                    && ch.iter().zip(&gen.inputs).all(|(c, &want)| self.tree_output(c) == want && self.is_consistent(c))
            }
        }
    }

    pub fn quadratic_tree(&self, q: Quadratic) -> Tree {
        let root = self.generator(q.root);
        let child = self.generator(q.child);
        assert_eq!(child.output, root.inputs[q.slot], "child output feeds the slot");
        let children = root
            .inputs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i == q.slot {
                    Tree::Node(q.child, child.inputs.iter().map(|&d| Tree::Leaf(d)).collect())
                } else {
                    Tree::Leaf(c)
                }
            })
            .collect();
        Tree::Node(q.root, children)
    }

    fn quadratic_arity(&self, q: Quadratic) -> (Vec<FaceId>, FaceId) {
        (self.quadratic_tree(q).inputs(), self.generator(q.root).output)
    }

    /// Quadratic monomial with the given generators, if they compose.
    pub fn quadratic(&self, root: GenId, slot: usize, child: GenId) -> Option<Quadratic> {
        let r = self.generator(root);
        (slot < r.arity() && r.inputs[slot] == self.generator(child).output).then_some(Quadratic { root, slot, child })
    }

    // ----- order -----

    pub fn compare_generators(&self, a: GenId, b: GenId) -> Result<Ordering, OrderError> {
        if a == b {
            return Ok(Ordering::Equal);
        }
        let ord = match &self.layout {
            Layout::Simplex { sets } => simplex::compare(self, sets, a, b, self.variant),
            Layout::Polygon(l) => polygon::compare(self, l, a, b),
        };
        match ord {
            Ordering::Equal => Err(OrderError::Tie(self.gen_name(a), self.gen_name(b))),
            o => Ok(o),
        }
    }

    /// Path-lexicographic comparison: leaf counts, then the vector of path
    /// lengths, then the paths themselves one after another.
    pub fn compare_trees(&self, a: &Tree, b: &Tree) -> Result<Ordering, OrderError> {
        let (pa, pb) = (a.paths(), b.paths());
        let lens = |p: &[Vec<GenId>]| p.iter().map(Vec::len).collect::<Vec<_>>();
        let ord = pa.len().cmp(&pb.len()).then_with(|| lens(&pa).cmp(&lens(&pb)));
        if ord != Ordering::Equal {
            return Ok(ord);
        }
        for (wa, wb) in pa.iter().zip(&pb) {
            for (&x, &y) in wa.iter().zip(wb) {
                let o = self.compare_generators(x, y)?;
                if o != Ordering::Equal {
                    return Ok(o);
                }
            }
        }
        if a != b {
            return Err(OrderError::Tie(self.render_tree(a), self.render_tree(b)));
        }
        Ok(Ordering::Equal)
    }

    pub fn compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Result<Ordering, OrderError> {
        for m in [a, b] {
            if m.family != self.kind {
                return Err(OrderError::CrossFamily(self.kind, m.family));
            }
        }
        self.compare_trees(&a.tree, &b.tree)
    }

    // ----- divisibility and rewriting -----

    /// The first two-vertex sub-monomial that is a leading term.
    pub fn divisor(&self, t: &Tree) -> Option<Quadratic> {
        let mut pats = Vec::new();
        t.quadratic_patterns(&mut pats);
        pats.into_iter().find(|q| self.leading.contains(q))
    }

    pub fn is_normal(&self, t: &Tree) -> bool {
        self.divisor(t).is_none()
    }

    /// Replaces the pattern `from` rooted at this node by `to`.
    fn replace_here(&self, node: &Tree, from: Quadratic, to: Quadratic) -> Tree {
        let Tree::Node(_, ch) = node else { unreachable!("pattern root is a vertex") };
        let Tree::Node(_, grand) = &ch[from.slot] else { unreachable!("pattern child is a vertex") };
        let mut flat: Vec<Tree> = ch[..from.slot].to_vec();
        flat.extend(grand.iter().cloned());
        flat.extend(ch[from.slot + 1..].iter().cloned());
        let k = self.generator(to.child).arity();
        let child = Tree::Node(to.child, flat[to.slot..to.slot + k].to_vec());
        let mut children: Vec<Tree> = flat[..to.slot].to_vec();
        children.push(child);
        children.extend(flat[to.slot + k..].iter().cloned());
        Tree::Node(to.root, children)
    }

    /// All trees obtained by applying one relation, in either direction,
    /// at one position.
    pub fn neighbours(&self, t: &Tree) -> Vec<Tree> {
        let mut out = Vec::new();
        if let Tree::Node(g, ch) = t {
            for (slot, c) in ch.iter().enumerate() {
                if let Tree::Node(h, _) = c {
                    let here = Quadratic { root: *g, slot, child: *h };
                    for &to in self.rewrite.get(&here).into_iter().flatten() {
                        out.push(self.replace_here(t, here, to));
                    }
                }
                for sub in self.neighbours(c) {
                    let mut children = ch.clone();
                    children[slot] = sub;
                    out.push(Tree::Node(*g, children));
                }
            }
        }
        out
    }

    /// Reduces by leading terms until no divisor remains.
    pub fn reduce(&self, t: &Tree) -> Tree {
        let mut cur = t.clone();
        while let Some(next) = self.reduce_once(&cur) {
            cur = next;
        }
        cur
    }

    fn reduce_once(&self, t: &Tree) -> Option<Tree> {
        let Tree::Node(g, ch) = t else { return None };
        for (slot, c) in ch.iter().enumerate() {
            if let Tree::Node(h, _) = c {
                let here = Quadratic { root: *g, slot, child: *h };
                if self.leading.contains(&here) {
                    let to = self.relations.iter().find(|r| r.leading == here).map(|r| r.other).expect("leading term has a relation");
                    return Some(self.replace_here(t, here, to));
                }
            }
            if let Some(sub) = self.reduce_once(c) {
                let mut children = ch.clone();
                children[slot] = sub;
                return Some(Tree::Node(*g, children));
            }
        }
        None
    }

    /// Everything reachable from `t` by relations in either direction.
    pub fn equivalence_class(&self, t: &Tree) -> Vec<Tree> {
        let mut seen: HashSet<Tree> = HashSet::new();
        let mut queue = VecDeque::from([t.clone()]);
        seen.insert(t.clone());
        let mut out = vec![t.clone()];
        while let Some(cur) = queue.pop_front() {
            for n in self.neighbours(&cur) {
                if seen.insert(n.clone()) {
                    out.push(n.clone());
                    queue.push_back(n);
                }
            }
        }
        out
    }

    // ----- enumeration and counting -----

    fn monomials_memo(&self, word: &[FaceId], out: FaceId, memo: &mut Memo) -> Vec<Tree> {
        let key = (word.to_vec(), out);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut res = Vec::new();
        if word == [out] {
            res.push(Tree::Leaf(out));
        }
        if word.iter().all(|&c| self.polytope.contains(out, c)) {
            for &g in &self.by_output[out.index()] {
                let gen = self.generator(g);
                let k = gen.arity();
                if k > word.len() {
                    continue;
                }
                for split in splits(word.len(), k) {
                    let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
                    let mut start = 0;
                    for (i, &len) in split.iter().enumerate() {
                        let subs = self.monomials_memo(&word[start..start + len], gen.inputs[i], memo);
                        start += len;
                        if subs.is_empty() {
                            partial.clear();
                            break;
                        }
                        partial = partial
                            .into_iter()
                            .flat_map(|prefix| {
                                subs.iter().map(move |t| {
                                    let mut p = prefix.clone();
                                    p.push(t.clone());
                                    p
                                })
                            })
                            .collect();
                    }
                    res.extend(partial.into_iter().map(|ch| Tree::Node(g, ch)));
                }
            }
        }
        memo.insert(key, res.clone());
        res
    }

    /// Every tree monomial with leaf word `inputs` and root color `output`.
    pub fn monomials(&self, inputs: &[FaceId], output: FaceId) -> Vec<TreeMonomial> {
        let mut memo = Memo::new();
        self.monomials_memo(inputs, output, &mut memo).into_iter().map(|t| self.monomial(t)).collect()
    }

    /// Monomials of the arity that no leading term divides.
    pub fn normal_forms(&self, inputs: &[FaceId], output: FaceId) -> Vec<TreeMonomial> {
        self.monomials(inputs, output).into_iter().filter(|m| self.is_normal(&m.tree)).collect()
    }

    /// The order-minimal monomial of the arity. Since the order is
    /// admissible, the minimum over a fixed root generator and input split
    /// is obtained from the minima of the parts.
    pub fn minimal_monomial(&self, inputs: &[FaceId], output: FaceId) -> Result<Option<TreeMonomial>, OrderError> {
        let mut memo = HashMap::new();
        Ok(self.minimal_memo(inputs, output, &mut memo)?.map(|t| self.monomial(t)))
    }

    fn minimal_memo(
        &self,
        word: &[FaceId],
        out: FaceId,
        memo: &mut HashMap<(Vec<FaceId>, FaceId), Option<Tree>>,
    ) -> Result<Option<Tree>, OrderError> {
        let key = (word.to_vec(), out);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let mut best: Option<Tree> = (word == [out]).then_some(Tree::Leaf(out));
        if word.iter().all(|&c| self.polytope.contains(out, c)) {
            for &g in &self.by_output[out.index()] {
                let gen = self.generator(g);
                if gen.arity() > word.len() {
                    continue;
                }
                'split: for split in splits(word.len(), gen.arity()) {
                    let mut children = Vec::with_capacity(split.len());
                    let mut start = 0;
                    for (i, &len) in split.iter().enumerate() {
                        match self.minimal_memo(&word[start..start + len], gen.inputs[i], memo)? {
                            Some(t) => children.push(t),
                            None => continue 'split,
                        }
                        start += len;
                    }
                    let cand = Tree::Node(g, children);
                    best = match best {
                        Some(b) if self.compare_trees(&b, &cand)? != Ordering::Greater => Some(b),
                        _ => Some(cand),
                    };
                }
            }
        }
        memo.insert(key, best.clone());
        Ok(best)
    }

    /// Counts normal forms against operation-space dimensions on every
    /// colored arity with at most `max_inputs` inputs.
    pub fn count_normal_forms(&self, max_inputs: usize) -> CountReport {
        let outputs: Vec<FaceId> = self.polytope.faces().collect();
        let parts: Vec<(Vec<ArityCount>, usize)> = outputs
            .par_iter()
            .map(|&out| {
                let subs = subfaces_by_label(&self.polytope, out);
                let mut memo = Memo::new();
                let mut rows = Vec::new();
                let mut checked = 0;
                for word in words(&subs, max_inputs) {
                    checked += 1;
                    let trees = self.monomials_memo(&word, out, &mut memo);
                    let dim = op_dim(&self.polytope, &word, out).dim();
                    if trees.is_empty() && dim == 0 {
                        continue;
                    }
                    let normal_forms = trees.iter().filter(|t| self.is_normal(t)).count();
                    rows.push(ArityCount { inputs: word, output: out, monomials: trees.len(), normal_forms, dim });
                }
                (rows, checked)
            })
            .collect();
        let mut report = CountReport::default();
        for (rows, checked) in parts {
            report.rows.extend(rows);
            report.arities_checked += checked;
        }
        report
    }

    /// One arity's row, for targeted queries.
    pub fn count_arity(&self, inputs: &[FaceId], output: FaceId) -> ArityCount {
        let trees = self.monomials(inputs, output);
        ArityCount {
            inputs: inputs.to_vec(),
            output,
            monomials: trees.len(),
            normal_forms: trees.iter().filter(|t| self.is_normal(&t.tree)).count(),
            dim: op_dim(&self.polytope, inputs, output).dim(),
        }
    }

    pub fn render_arity(&self, inputs: &[FaceId], output: FaceId) -> String {
        let ins: Vec<&str> = inputs.iter().map(|&c| self.polytope.label(c)).collect();
        format!("{}->{}", ins.join(","), self.polytope.label(output))
    }

    /// Compares the installed leading terms with those forced by the order:
    /// in each arity every quadratic monomial but the smallest must lead.
    pub fn presentation_check(&self) -> PresentationReport {
        let mut by_arity: BTreeMap<(Vec<FaceId>, FaceId), Vec<Quadratic>> = BTreeMap::new();
        for root in self.generator_ids() {
            for slot in 0..self.generator(root).arity() {
                for &child in &self.by_output[self.generator(root).inputs[slot].index()] {
                    let q = Quadratic { root, slot, child };
                    by_arity.entry(self.quadratic_arity(q)).or_default().push(q);
                }
            }
        }
        let mut report = PresentationReport::default();
        for quads in by_arity.values() {
            let min = quads
                .iter()
                .copied()
                .reduce(|a, b| {
                    match self.compare_trees(&self.quadratic_tree(a), &self.quadratic_tree(b)).expect("total order") {
                        Ordering::Greater => b,
                        _ => a,
                    }
                })
                .expect("nonempty arity");
            for &q in quads {
                if q != min && !self.leading.contains(&q) {
                    report.missing.push(self.render_quadratic(q));
                }
                if q == min && self.leading.contains(&q) {
                    report.spurious.push(self.render_quadratic(q));
                }
            }
        }
        report
    }

    /// Trees with at most `bound` vertices, grouped by arity.
    pub fn monomials_up_to(&self, bound: usize) -> BTreeMap<(Vec<FaceId>, FaceId), Vec<Tree>> {
        let colors: Vec<FaceId> = self.polytope.faces().collect();
        // by_vertices[v][color]
        let mut by_vertices: Vec<Vec<Vec<Tree>>> = vec![colors.iter().map(|&c| vec![Tree::Leaf(c)]).collect()];
        for v in 1..=bound {
            let mut level: Vec<Vec<Tree>> = vec![Vec::new(); colors.len()];
            for g in self.generator_ids() {
                let gen = self.generator(g);
                for dist in distributions(v - 1, gen.arity()) {
                    let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
                    for (i, &k) in dist.iter().enumerate() {
                        let subs = &by_vertices[k][gen.inputs[i].index()];
                        partial = partial
                            .into_iter()
                            .flat_map(|prefix| {
                                subs.iter().map(move |t| {
                                    let mut p = prefix.clone();
                                    p.push(t.clone());
                                    p
                                })
                            })
                            .collect();
                    }
                    level[gen.output.index()].extend(partial.into_iter().map(|ch| Tree::Node(g, ch)));
                }
            }
            by_vertices.push(level);
        }
        let mut out: BTreeMap<(Vec<FaceId>, FaceId), Vec<Tree>> = BTreeMap::new();
        for level in by_vertices.into_iter().skip(1) {
            for trees in level {
                for t in trees {
                    out.entry((t.inputs(), self.tree_output(&t))).or_default().push(t);
                }
            }
        }
        out
    }

    /// Checks both admissibility clauses on monomials with at most `bound`
    /// vertices: fewer leaves means smaller, and `α ≤ α′`, `β ≤ β′` imply
    /// `α ∘ᵢ β ≤ α′ ∘ᵢ β′` (strictly if either is strict), for `α, α′` of one
    /// arity and `β, β′` of one arity.
    pub fn admissibility_check(&self, bound: usize) -> AdmissibilityReport {
        let groups = self.monomials_up_to(bound);
        let mut report = AdmissibilityReport { monomials: groups.values().map(Vec::len).sum(), ..Default::default() };
        let all: Vec<&Tree> = groups.values().flatten().collect();
        for a in &all {
            for b in &all {
                let (la, lb) = (a.inputs().len(), b.inputs().len());
                if la < lb {
                    report.pairs_checked += 1;
                    if self.compare_trees(a, b) != Ok(Ordering::Less) {
                        report.failures.push(format!("arity: {} !< {}", self.render_tree(a), self.render_tree(b)));
                    }
                }
            }
        }
        let with_identity = |trees: &[Tree], color: FaceId| {
            let mut v = trees.to_vec();
            v.push(Tree::Leaf(color));
            v
        };
        for ((ins, out), alphas) in &groups {
            let alphas = if ins.len() == 1 && ins[0] == *out { with_identity(alphas, *out) } else { alphas.clone() };
            for (slot, &color) in ins.iter().enumerate() {
                for ((bins, bout), betas) in groups.range((Vec::new(), FaceId::from_index(0))..) {
                    if *bout != color {
                        continue;
                    }
                    let betas = if bins.len() == 1 && bins[0] == *bout { with_identity(betas, color) } else { betas.clone() };
                    for a in &alphas {
                        for a2 in &alphas {
                            let oa = self.compare_trees(a, a2).expect("total order");
                            if oa == Ordering::Greater {
                                continue;
                            }
                            for b in &betas {
                                for b2 in &betas {
                                    let ob = self.compare_trees(b, b2).expect("total order");
                                    if ob == Ordering::Greater {
                                        continue;
                                    }
                                    if a.vertex_count() + b.vertex_count() > bound || a2.vertex_count() + b2.vertex_count() > bound {
                                        continue;
                                    }
                                    report.pairs_checked += 1;
                                    let (c, c2) = (graft(a, slot, b), graft(a2, slot, b2));
                                    let oc = self.compare_trees(&c, &c2).expect("total order");
                                    let strict = oa == Ordering::Less || ob == Ordering::Less;
                                    let ok = if strict { oc == Ordering::Less } else { oc != Ordering::Greater };
                                    if !ok {
                                        report.failures.push(format!(
                                            "composition: {} vs {}",
                                            self.render_tree(&c),
                                            self.render_tree(&c2)
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// The normal form of a colored arity, or `None` when the operation
    /// space is zero. For simplices this is the stem-and-comb construction,
    /// which coincides with the order minimum; for polygons it is the order
    /// minimum itself, since the subword construction is not always
    /// irreducible under the polygon order.
    pub fn normal_form(&self, inputs: &[FaceId], output: FaceId) -> Option<TreeMonomial> {
        if inputs.is_empty() || !op_dim(&self.polytope, inputs, output).present {
            return None;
        }
        match &self.layout {
            Layout::Simplex { sets } => {
                let descending = self.variant == OrderVariant::DescendingStems;
                Some(self.monomial(simplex::normal_form(self, sets, inputs, output, descending)))
            }
            Layout::Polygon(_) => self.minimal_monomial(inputs, output).expect("polygon order is total"),
        }
    }

    /// The monomial built by the constructive procedure: descending stems
    /// and a right comb for simplices; subword towers, one `M`, then
    /// 0-actions for polygons.
    pub fn proof_normal_form(&self, inputs: &[FaceId], output: FaceId) -> Option<TreeMonomial> {
        if inputs.is_empty() || !op_dim(&self.polytope, inputs, output).present {
            return None;
        }
        let tree = match &self.layout {
            Layout::Simplex { sets } => simplex::normal_form(self, sets, inputs, output, true),
            Layout::Polygon(l) => polygon::normal_form(self, l, inputs, output),
        };
        Some(self.monomial(tree))
    }
}

/// Grafts `b` onto the `slot`-th leaf of `a`.
pub fn graft(a: &Tree, slot: usize, b: &Tree) -> Tree {
    fn go(t: &Tree, slot: &mut usize, b: &Tree) -> Tree {
        match t {
            Tree::Leaf(c) => {
                let out = if *slot == 0 { b.clone() } else { Tree::Leaf(*c) };
                *slot = slot.wrapping_sub(1);
                out
            }
            Tree::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| go(c, slot, b)).collect()),
        }
    }
    let mut s = slot;
    go(a, &mut s, b)
}

/// Ways to cut `n` items into `k` nonempty consecutive parts.
fn splits(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (1..=n.saturating_sub(k - 1))
        .flat_map(|first| {
            splits(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Ways to write `n` as an ordered sum of `k` nonnegative parts.
fn distributions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=n)
        .flat_map(|first| {
            distributions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// All words of length `1..=max_len` over `alphabet`.
fn words(alphabet: &[FaceId], max_len: usize) -> Vec<Vec<FaceId>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<FaceId>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&c| {
                    let mut w2 = w.clone();
                    w2.push(c);
                    w2
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
