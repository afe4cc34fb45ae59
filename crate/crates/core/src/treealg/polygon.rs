//! Generators over a polygon with an upper path `0, x(1), …, x(n), 1`
//! (edges `e(i)`) and a lower path `0, y(1), …, y(m), 1` (edges `f(j)`).

use std::cmp::Ordering;

use super::{Family, FamilyError, FamilyKind, GenId, GenKind, Generator, Layout, OrderVariant, Quadratic, RelationList, Tree};
use crate::polytope::{Builtin, DirectedPolytope, FaceId};

/// One boundary path: `vertices[i]` and `vertices[i + 1]` bound `edges[i]`.
#[derive(Clone, Debug)]
pub struct BoundaryPath {
    pub vertices: Vec<FaceId>,
    pub edges: Vec<FaceId>,
}

#[derive(Clone, Debug)]
pub struct PolygonLayout {
    pub paths: [BoundaryPath; 2],
    pub top: FaceId,
    /// Sort key of each color: vertices, then edges, then `P`, left to right.
    key: Vec<(u8, usize)>,
}

impl PolygonLayout {
    fn new(p: &DirectedPolytope, n: usize, m: usize) -> Self {
        let f = |s: String| p.face(&s).expect("polygon face");
        let path = |v: char, e: char, len: usize| BoundaryPath {
            vertices: (0..=len + 1)
                .map(|i| match i {
                    0 => f("0".into()),
                    i if i == len + 1 => f("1".into()),
                    i => f(format!("{v}({i})")),
                })
                .collect(),
            edges: (0..=len).map(|i| f(format!("{e}({i})"))).collect(),
        };
        let paths = [path('x', 'e', n), path('y', 'f', m)];
        let top = f("P".into());
        let mut key = vec![(0, 0); p.face_count()];
        key[f("0".into()).index()] = (0, 0);
        key[f("1".into()).index()] = (3, 0);
        for (k, path) in paths.iter().enumerate() {
            for (i, v) in path.vertices.iter().enumerate().skip(1).take(path.vertices.len() - 2) {
                key[v.index()] = (1 + k as u8, i);
            }
            for (i, e) in path.edges.iter().enumerate() {
                key[e.index()] = (4 + k as u8, i);
            }
        }
        key[top.index()] = (6, 0);
        PolygonLayout { paths, top, key }
    }

    fn zero(&self) -> FaceId {
        self.paths[0].vertices[0]
    }

    fn one(&self) -> FaceId {
        *self.paths[0].vertices.last().expect("path has ends")
    }

    /// Path index and edge position of an edge color.
    fn edge_position(&self, c: FaceId) -> Option<(usize, usize)> {
        self.paths.iter().enumerate().find_map(|(k, p)| p.edges.iter().position(|&e| e == c).map(|i| (k, i)))
    }

    /// Path index and position of an interior vertex color.
    fn interior_position(&self, c: FaceId) -> Option<(usize, usize)> {
        self.paths.iter().enumerate().find_map(|(k, p)| {
            p.vertices[1..p.vertices.len() - 1].iter().position(|&v| v == c).map(|i| (k, i + 1))
        })
    }
}

pub(super) fn build(n: usize, m: usize, list: RelationList, variant: OrderVariant) -> Result<Family, FamilyError> {
    let p = DirectedPolytope::builtin(Builtin::Polygon(n, m)).map_err(|e| FamilyError::Parameter(e.to_string()))?;
    let layout = PolygonLayout::new(&p, n, m);
    let mut gens: Vec<Generator> = Vec::new();
    let mut push = |kind: GenKind, inputs: Vec<FaceId>, output: FaceId| {
        if !gens.iter().any(|g| g.inputs == inputs && g.output == output) {
            gens.push(Generator { kind, inputs, output });
        }
    };
    for path in &layout.paths {
        for v in &path.vertices {
            push(GenKind::VertexProduct, vec![*v, *v], *v);
        }
        for (i, &e) in path.edges.iter().enumerate() {
            let (a, b) = (path.vertices[i], path.vertices[i + 1]);
            push(GenKind::LeftInclusion, vec![a], e);
            push(GenKind::RightInclusion, vec![b], e);
            push(GenKind::VertexEdge, vec![a, e], e);
            push(GenKind::EdgeVertex, vec![e, b], e);
        }
    }
    push(GenKind::SourceAction, vec![layout.zero(), layout.top], layout.top);
    push(GenKind::SinkAction, vec![layout.top, layout.one()], layout.top);
    for path in &layout.paths {
        let len = path.edges.len();
        for mask in 1u32..1 << len {
            let sigma: Vec<FaceId> = (0..len).filter(|i| mask >> i & 1 == 1).map(|i| path.edges[i]).collect();
            push(GenKind::EdgeSequence, sigma, layout.top);
        }
    }
    let mut fam = Family::assemble((FamilyKind::Polygon(n, m), list, variant), p, gens, Layout::Polygon(layout.clone()));
    let pairs = relations(&fam, &layout, list);
    fam.install(pairs);
    Ok(fam)
}

fn relations(fam: &Family, l: &PolygonLayout, list: RelationList) -> Vec<(String, Quadratic, Quadratic)> {
    let g = |ins: &[FaceId], out: FaceId| fam.generator_for(ins, out).expect("generator exists");
    let q = |root: GenId, slot: usize, child: GenId| fam.quadratic(root, slot, child).expect("composable");
    let (zero, one, top) = (l.zero(), l.one(), l.top);
    let mut out: Vec<(String, Quadratic, Quadratic)> = Vec::new();
    let mut rel = |kind: &str, a: Quadratic, b: Quadratic| out.push((kind.to_string(), a, b));

    // Relations with a vertex or edge output, as on a 1-simplex.
    for path in &l.paths {
        for (i, &e) in path.edges.iter().enumerate() {
            let (a, b) = (path.vertices[i], path.vertices[i + 1]);
            let (aa, bb) = (g(&[a, a], a), g(&[b, b], b));
            let (ae, eb) = (g(&[a, e], e), g(&[e, b], e));
            let (ul, ur) = (g(&[a], e), g(&[b], e));
            rel("assoc", q(aa, 0, aa), q(aa, 1, aa));
            rel("assoc", q(bb, 0, bb), q(bb, 1, bb));
            rel("assoc", q(ae, 0, aa), q(ae, 1, ae));
            rel("assoc", q(eb, 0, ae), q(ae, 1, eb));
            rel("assoc", q(eb, 0, eb), q(eb, 1, bb));
            rel("gap", q(eb, 0, ul), q(ae, 1, ur));
            rel("insert-left", q(ur, 0, bb), q(eb, 0, ur));
            rel("insert-right", q(ul, 0, aa), q(ae, 1, ul));
        }
    }

    let (src, sink) = (g(&[zero, top], top), g(&[top, one], top));
    let (zz, oo) = (g(&[zero, zero], zero), g(&[one, one], one));
    rel("assoc", q(src, 0, zz), q(src, 1, src));
    rel("assoc", q(sink, 0, sink), q(sink, 1, oo));
    if list == RelationList::Completed {
        rel("source-sink", q(sink, 0, src), q(src, 1, sink));
        let paths_edge = |k: usize, i: usize| l.paths[k].edges[i];
        let last = |k: usize| l.paths[k].edges.len() - 1;
        let m0 = |k: usize| g(&[paths_edge(k, 0)], top);
        let mn = |k: usize| g(&[paths_edge(k, last(k))], top);
        rel("exchange-source", q(m0(0), 0, g(&[zero], paths_edge(0, 0))), q(m0(1), 0, g(&[zero], paths_edge(1, 0))));
        rel(
            "exchange-sink",
            q(mn(0), 0, g(&[one], paths_edge(0, last(0)))),
            q(mn(1), 0, g(&[one], paths_edge(1, last(1)))),
        );
    }

    for path in &l.paths {
        let len = path.edges.len();
        let n = len - 1;
        let edges = |idx: &[usize]| idx.iter().map(|&i| path.edges[i]).collect::<Vec<_>>();
        let m = |idx: &[usize]| g(&edges(idx), top);
        let subsets = |lo: usize, hi: usize| -> Vec<Vec<usize>> {
            let span: Vec<usize> = (lo..hi).collect();
            (0u32..1 << span.len())
                .map(|mask| span.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect())
                .collect()
        };
        let e0 = path.edges[0];
        let en = path.edges[n];
        for s in subsets(1, len) {
            // type 2: 0 acting next to e(0)
            let mut with0 = vec![0];
            with0.extend(&s);
            rel("source-edge", q(src, 1, m(&with0)), q(m(&with0), 0, g(&[zero, e0], e0)));
            // type 3: 0 acting without e(0)
            if !s.is_empty() {
                rel("source-vertex", q(src, 1, m(&s)), q(m(&with0), 0, g(&[zero], e0)));
            }
        }
        for s in subsets(0, n) {
            let mut withn = s.clone();
            withn.push(n);
            // type 4: 1 acting next to e(n)
            rel("sink-edge", q(m(&withn), withn.len() - 1, g(&[en, one], en)), q(sink, 0, m(&withn)));
            // type 5: 1 acting without e(n)
            if !s.is_empty() {
                rel("sink-vertex", q(m(&withn), withn.len() - 1, g(&[one], en)), q(sink, 0, m(&s)));
            }
        }
        for j in 1..=n {
            let x = path.vertices[j];
            let (left, right) = (path.edges[j - 1], path.edges[j]);
            for s in subsets(0, len) {
                let has_left = s.contains(&(j - 1));
                let has_right = s.contains(&j);
                let pos = |i: usize, set: &[usize]| set.iter().position(|&t| t == i).expect("index in set");
                let add = |i: usize| {
                    let mut t = s.clone();
                    t.push(i);
                    t.sort_unstable();
                    t
                };
                match (has_left, has_right) {
                    (false, false) => {
                        // type 6: a lone vertex enters either neighbouring edge
                        let (sl, sr) = (add(j - 1), add(j));
                        rel("vertex-choice", q(m(&sr), pos(j, &sr), g(&[x], right)), q(m(&sl), pos(j - 1, &sl), g(&[x], left)));
                    }
                    (true, false) => {
                        // type 7
                        let sr = add(j);
                        rel("edge-vertex", q(m(&s), pos(j - 1, &s), g(&[left, x], left)), q(m(&sr), pos(j, &sr), g(&[x], right)));
                    }
                    (false, true) => {
                        // type 8
                        let sl = add(j - 1);
                        rel("vertex-edge", q(m(&s), pos(j, &s), g(&[x, right], right)), q(m(&sl), pos(j - 1, &sl), g(&[x], left)));
                    }
                    (true, true) => {
                        // type 9
                        rel("vertex-between", q(m(&s), pos(j - 1, &s), g(&[left, x], left)), q(m(&s), pos(j, &s), g(&[x, right], right)));
                    }
                }
            }
        }
    }
    out
}

fn unary_rank(kind: &GenKind) -> u8 {
    match kind {
        GenKind::RightInclusion => 0,
        GenKind::LeftInclusion => 1,
        _ => 2,
    }
}

pub(super) fn compare(fam: &Family, l: &PolygonLayout, a: GenId, b: GenId) -> Ordering {
    let (ga, gb) = (fam.generator(a), fam.generator(b));
    let key = |c: &FaceId| l.key[c.index()];
    let inputs = |g: &Generator| g.inputs.iter().map(key).collect::<Vec<_>>();
    ga.arity().cmp(&gb.arity()).then_with(|| match ga.arity() {
        1 => unary_rank(&ga.kind)
            .cmp(&unary_rank(&gb.kind))
            .then_with(|| key(&ga.output).cmp(&key(&gb.output)))
            .then_with(|| inputs(ga).cmp(&inputs(gb))),
        2 => key(&ga.output).cmp(&key(&gb.output)).then_with(|| inputs(ga).cmp(&inputs(gb))),
        _ => inputs(ga).cmp(&inputs(gb)),
    })
}

/// The subword construction: 0s and `e(0)` first, then one tower per vertex
/// ending in its right edge (the last one also absorbs the 1s), all joined
/// by one `M`, then the 0-actions.
pub(super) fn normal_form(fam: &Family, l: &PolygonLayout, inputs: &[FaceId], output: FaceId) -> Tree {
    if output != l.top {
        return segment(fam, l, inputs, output);
    }
    let (zero, one) = (l.zero(), l.one());
    let mut zeros = inputs.iter().take_while(|&&c| c == zero).count();
    let ones = inputs.iter().rev().take_while(|&&c| c == one).count();
    let middle = &inputs[zeros..inputs.len() - ones];
    if middle == [l.top] {
        let mut tree = Tree::Leaf(l.top);
        if let Some(comb) = ones_comb(fam, one, ones) {
            tree = Tree::Node(gen(fam, &[l.top, one], l.top), vec![tree, comb]);
        }
        return with_zeros(fam, l, tree, zeros);
    }
    let k = middle
        .first()
        .and_then(|&c| l.edge_position(c).or_else(|| l.interior_position(c)))
        .map_or(0, |(k, _)| k);
    let path = &l.paths[k];
    let n = path.edges.len() - 1;
    let count = |v: FaceId| middle.iter().filter(|&&c| c == v).count();
    let has = |e: FaceId| middle.contains(&e);
    let mut sigma = Vec::new();
    let mut items = Vec::new();
    if n == 0 {
        if has(path.edges[0]) || ones > 0 {
            sigma.push(path.edges[0]);
            items.push(tower(fam, l, None, 0, path.edges[0], has(path.edges[0]), ones));
        }
    } else {
        if has(path.edges[0]) {
            sigma.push(path.edges[0]);
            items.push(Tree::Leaf(path.edges[0]));
        }
        for i in 1..=n {
            let (x, e) = (path.vertices[i], path.edges[i]);
            let absorbed = if i == n { ones } else { 0 };
            if count(x) > 0 || has(e) || absorbed > 0 {
                sigma.push(e);
                items.push(tower(fam, l, Some(x), count(x), e, has(e), absorbed));
            }
        }
    }
    if items.is_empty() {
        let e0 = path.edges[0];
        zeros -= 1;
        sigma.push(e0);
        items.push(Tree::Node(gen(fam, &[zero], e0), vec![Tree::Leaf(zero)]));
    }
    with_zeros(fam, l, Tree::Node(gen(fam, &sigma, l.top), items), zeros)
}

fn with_zeros(fam: &Family, l: &PolygonLayout, mut tree: Tree, zeros: usize) -> Tree {
    let zero = l.zero();
    for _ in 0..zeros {
        tree = Tree::Node(gen(fam, &[zero, l.top], l.top), vec![Tree::Leaf(zero), tree]);
    }
    tree
}

/// Right comb `B(1, B(1, …))` of `k` copies of the sink.
fn ones_comb(fam: &Family, one: FaceId, k: usize) -> Option<Tree> {
    (0..k).map(|_| Tree::Leaf(one)).reduce(|acc, leaf| Tree::Node(gen(fam, &[one, one], one), vec![leaf, acc]))
}

fn gen(fam: &Family, inputs: &[FaceId], output: FaceId) -> GenId {
    fam.generator_for(inputs, output).expect("generator exists")
}

/// `B(x, B(x, …, base))` where the base is `e`, `U_right(1)` or `U_left(x)`,
/// followed on the right by a comb of the remaining 1s.
fn tower(fam: &Family, l: &PolygonLayout, x: Option<FaceId>, mut xs: usize, e: FaceId, has_e: bool, ones: usize) -> Tree {
    let one = l.one();
    let mut base = if has_e {
        Tree::Leaf(e)
    } else if ones > 0 {
        Tree::Node(gen(fam, &[one], e), vec![Tree::Leaf(one)])
    } else {
        let x = x.expect("a tower has a vertex");
        xs -= 1;
        Tree::Node(gen(fam, &[x], e), vec![Tree::Leaf(x)])
    };
    let rest = if has_e { ones } else { ones.saturating_sub(1) };
    if let Some(comb) = ones_comb(fam, one, rest) {
        base = Tree::Node(gen(fam, &[e, one], e), vec![base, comb]);
    }
    for _ in 0..xs {
        let x = x.expect("a tower has a vertex");
        base = Tree::Node(gen(fam, &[x, e], e), vec![Tree::Leaf(x), base]);
    }
    base
}

/// Normal form for a vertex or edge output, as on a 1-simplex with
/// vertices `a = {0}`, `b = {1}` and edge `{0,1}`.
fn segment(fam: &Family, l: &PolygonLayout, inputs: &[FaceId], output: FaceId) -> Tree {
    let ends = l.edge_position(output).map(|(k, i)| (l.paths[k].vertices[i], l.paths[k].vertices[i + 1]));
    let set = |c: FaceId| match ends {
        Some((a, _)) if c == a => 0b01u8,
        Some((_, b)) if c == b => 0b10,
        _ => 0b11,
    };
    let max = |s: u8| if s & 0b10 != 0 { 1 } else { 0 };
    let color = |s: u8| match (s, ends) {
        (0b01, Some((a, _))) => a,
        (0b10, Some((_, b))) => b,
        _ => output,
    };
    let k = inputs.len();
    let mut stems: Vec<(Tree, u8)> = Vec::with_capacity(k);
    for (s, &c) in inputs.iter().enumerate() {
        let own = set(c);
        let lo = (s > 0).then(|| max(set(inputs[s - 1])));
        let hi = (s + 1 < k).then(|| max(own));
        let missing = (0..2).find(|&x| own >> x & 1 == 0 && lo.is_none_or(|l| x >= l) && hi.is_none_or(|h| x < h));
        match missing {
            Some(_) => stems.push((Tree::Node(gen(fam, &[c], output), vec![Tree::Leaf(c)]), 0b11)),
            None => stems.push((Tree::Leaf(c), own)),
        }
    }
    let (mut tree, mut cur) = stems.pop().expect("at least one input");
    while let Some((left, ls)) = stems.pop() {
        let u = ls | cur;
        tree = Tree::Node(gen(fam, &[color(ls), color(cur)], color(u)), vec![left, tree]);
        cur = u;
    }
    tree
}
