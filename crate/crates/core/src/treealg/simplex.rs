//! Generators `U_i(I)` and `B(I,J)` over the faces of a simplex.

use std::cmp::Ordering;

use super::{Family, FamilyError, FamilyKind, GenId, GenKind, Generator, Layout, OrderVariant, Quadratic, RelationList, Tree};
use crate::polytope::{Builtin, DirectedPolytope, FaceId};

fn vertex_sets(p: &DirectedPolytope) -> Vec<Vec<usize>> {
    p.faces()
        .map(|f| p.face_vertices(f).iter().map(|&v| p.vertex_label(v).parse::<usize>().expect("digit labels")).collect())
        .map(|mut s: Vec<usize>| {
            s.sort_unstable();
            s
        })
        .collect()
}

fn face_of(sets: &[Vec<usize>], s: &[usize]) -> FaceId {
    FaceId::from_index(sets.iter().position(|x| x == s).expect("every subset is a face"))
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

fn with(a: &[usize], i: usize) -> Vec<usize> {
    union(a, &[i])
}

pub(super) fn build(n: usize, list: RelationList, variant: OrderVariant) -> Result<Family, FamilyError> {
    let p = DirectedPolytope::builtin(Builtin::Simplex(n)).map_err(|e| FamilyError::Parameter(e.to_string()))?;
    let sets = vertex_sets(&p);
    let mut gens = Vec::new();
    for (fi, s) in sets.iter().enumerate() {
        for i in 0..=n {
            if !s.contains(&i) {
                gens.push(Generator { kind: GenKind::Insert(i), inputs: vec![FaceId::from_index(fi)], output: face_of(&sets, &with(s, i)) });
            }
        }
    }
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            if sa.last() == sb.first() {
                gens.push(Generator {
                    kind: GenKind::Merge,
                    inputs: vec![FaceId::from_index(a), FaceId::from_index(b)],
                    output: face_of(&sets, &union(sa, sb)),
                });
            }
        }
    }
    let mut fam = Family::assemble((FamilyKind::Simplex(n), list, variant), p, gens, Layout::Simplex { sets: sets.clone() });
    let pairs = relations(&fam, &sets, n, list);
    fam.install(pairs);
    Ok(fam)
}

fn relations(fam: &Family, sets: &[Vec<usize>], n: usize, list: RelationList) -> Vec<(String, Quadratic, Quadratic)> {
    let f = |s: &[usize]| face_of(sets, s);
    let u = |s: &[usize], i: usize| fam.generator_for(&[f(s)], f(&with(s, i))).expect("insertion exists");
    let b = |s: &[usize], t: &[usize]| fam.generator_for(&[f(s), f(t)], f(&union(s, t))).expect("merge exists");
    let q = |root: GenId, slot: usize, child: GenId| fam.quadratic(root, slot, child).expect("composable");
    let mut out = Vec::new();
    for sa in sets {
        let ma = *sa.last().expect("nonempty");
        for sb in sets.iter().filter(|s| s[0] == ma) {
            let mb = *sb.last().expect("nonempty");
            // type 1: associativity
            for sc in sets.iter().filter(|s| s[0] == mb) {
                out.push(("assoc".to_string(), q(b(&union(sa, sb), sc), 0, b(sa, sb)), q(b(sa, &union(sb, sc)), 1, b(sb, sc))));
            }
            // types 3 and 4: insertion past a merge
            for i in 0..=n {
                if sa.contains(&i) || sb.contains(&i) {
                    continue;
                }
                let ab = union(sa, sb);
                let top = q(u(&ab, i), 0, b(sa, sb));
                if i < ma {
                    out.push(("insert-left".to_string(), top, q(b(&with(sa, i), sb), 0, u(sa, i))));
                } else {
                    let printed = i > mb;
                    if list == RelationList::Completed || printed {
                        out.push(("insert-right".to_string(), top, q(b(sa, &with(sb, i)), 1, u(sb, i))));
                    }
                }
            }
        }
        // type 2: a gap between two blocks
        for sb in sets.iter().filter(|s| s[0] > ma) {
            let mb = sb[0];
            out.push((
                "gap".to_string(),
                q(b(&with(sa, mb), sb), 0, u(sa, mb)),
                q(b(sa, &with(sb, ma)), 1, u(sb, ma)),
            ));
        }
        // type 5: two insertions commute
        for i in 0..=n {
            for j in i + 1..=n {
                if sa.contains(&i) || sa.contains(&j) {
                    continue;
                }
                out.push((
                    "insert-insert".to_string(),
                    q(u(&with(sa, i), j), 0, u(sa, i)),
                    q(u(&with(sa, j), i), 0, u(sa, j)),
                ));
            }
        }
    }
    out
}

pub(super) fn compare(fam: &Family, sets: &[Vec<usize>], a: GenId, b: GenId, variant: OrderVariant) -> Ordering {
    let (ga, gb) = (fam.generator(a), fam.generator(b));
    let set = |c: FaceId| &sets[c.index()];
    match (&ga.kind, &gb.kind) {
        (GenKind::Insert(i), GenKind::Insert(j)) => {
            let (sa, sb) = (set(ga.inputs[0]), set(gb.inputs[0]));
            let tie = match variant {
                OrderVariant::DescendingStems => j.cmp(i),
                OrderVariant::AscendingStems => i.cmp(j),
            };
            sa.len().cmp(&sb.len()).then_with(|| sa.cmp(sb)).then(tie)
        }
        (GenKind::Insert(_), _) => Ordering::Less,
        (_, GenKind::Insert(_)) => Ordering::Greater,
        _ => {
            let (ua, ub) = (set(ga.output), set(gb.output));
            ua.len()
                .cmp(&ub.len())
                .then_with(|| ua.cmp(ub))
                .then_with(|| set(ga.inputs[0]).len().cmp(&set(gb.inputs[0]).len()))
        }
    }
}

/// Right comb of merges over stems; each stem inserts its indices from the
/// largest down, or from the smallest up when `descending` is false.
pub(super) fn normal_form(fam: &Family, sets: &[Vec<usize>], inputs: &[FaceId], output: FaceId, descending: bool) -> Tree {
    let target = &sets[output.index()];
    let blocks: Vec<&Vec<usize>> = inputs.iter().map(|c| &sets[c.index()]).collect();
    let k = blocks.len();
    let mut stems = Vec::with_capacity(k);
    for (s, block) in blocks.iter().enumerate() {
        let lo = if s == 0 { None } else { blocks[s - 1].last().copied() };
        let hi = if s + 1 == k { None } else { block.last().copied() };
        let mut add: Vec<usize> = target
            .iter()
            .copied()
            .filter(|x| !block.contains(x))
            .filter(|&x| lo.is_none_or(|l| x >= l) && hi.is_none_or(|h| x < h))
            .collect();
        if descending {
            add.reverse();
        }
        let mut cur = block.to_vec();
        let mut tree = Tree::Leaf(inputs[s]);
        for i in add {
            let g = fam.generator_for(&[face_of(sets, &cur)], face_of(sets, &with(&cur, i))).expect("insertion exists");
            tree = Tree::Node(g, vec![tree]);
            cur = with(&cur, i);
        }
        stems.push((tree, cur));
    }
    let (mut tree, mut cur) = stems.pop().expect("at least one input");
    while let Some((left, lset)) = stems.pop() {
        let g = fam.generator_for(&[face_of(sets, &lset), face_of(sets, &cur)], face_of(sets, &union(&lset, &cur))).expect("merge exists");
        tree = Tree::Node(g, vec![left, tree]);
        cur = union(&lset, &cur);
    }
    tree
}
