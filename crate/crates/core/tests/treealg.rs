use std::cmp::Ordering;

use polyop::polytope::FaceId;
use polyop::treealg::{Family, FamilyKind, GenId, OrderError, OrderVariant, RelationList, Tree};

fn one_vertex(fam: &Family, g: GenId) -> Tree {
    Tree::Node(g, fam.generator(g).inputs.iter().map(|&c| Tree::Leaf(c)).collect())
}

fn colors(fam: &Family, labels: &[&str]) -> Vec<FaceId> {
    labels.iter().map(|l| fam.color(l).unwrap()).collect()
}

/// Every colored arity with at most `k` inputs that has a nonzero space.
fn present_arities(fam: &Family, k: usize) -> Vec<(Vec<FaceId>, FaceId)> {
    fam.count_normal_forms(k).rows.into_iter().filter(|r| r.dim == 1).map(|r| (r.inputs, r.output)).collect()
}

#[test]
fn simplex_one_generator_order() {
    let fam = Family::simplex(1).unwrap();
    let mut gens: Vec<GenId> = fam.generator_ids().collect();
    gens.sort_by(|&a, &b| fam.compare_generators(a, b).unwrap());
    let names: Vec<String> = gens.iter().map(|&g| fam.render_tree(&one_vertex(&fam, g))).collect();
    assert_eq!(names, ["U_1(0)", "U_0(1)", "B(0,0)", "B(1,1)", "B(0,01)", "B(01,1)"]);
}

#[test]
fn left_comb_exceeds_right_comb() {
    let fam = Family::simplex(1).unwrap();
    let [zero, e] = [colors(&fam, &["0"])[0], colors(&fam, &["01"])[0]];
    let b00 = fam.generator_for(&[zero, zero], zero).unwrap();
    let b0e = fam.generator_for(&[zero, e], e).unwrap();
    let leaf = Tree::Leaf;
    let left = Tree::Node(b0e, vec![Tree::Node(b00, vec![leaf(zero), leaf(zero)]), leaf(e)]);
    let right = Tree::Node(b0e, vec![leaf(zero), Tree::Node(b0e, vec![leaf(zero), leaf(e)])]);
    assert_eq!(fam.compare_trees(&left, &right), Ok(Ordering::Greater));
    assert_eq!(fam.compare_trees(&left, &left), Ok(Ordering::Equal));
}

#[test]
fn monomials_of_different_families_do_not_compare() {
    let a = Family::simplex(1).unwrap();
    let b = Family::simplex(2).unwrap();
    let ta = a.monomial(Tree::Leaf(FaceId::from_index(0)));
    let tb = b.monomial(Tree::Leaf(FaceId::from_index(0)));
    assert!(matches!(a.compare(&ta, &tb), Err(OrderError::CrossFamily { .. })));
}

fn all_families() -> Vec<Family> {
    let mut out = Vec::new();
    for list in [RelationList::Printed, RelationList::Completed] {
        for k in [FamilyKind::Simplex(2), FamilyKind::Simplex(3), FamilyKind::Polygon(0, 1), FamilyKind::Polygon(1, 1), FamilyKind::Polygon(2, 1)] {
            out.push(Family::new(k, list).unwrap());
        }
    }
    out
}

#[test]
fn relations_are_quadratic_and_oriented() {
    for fam in all_families() {
        assert!(!fam.relations().is_empty());
        for r in fam.relations() {
            let (l, o) = (fam.quadratic_tree(r.leading), fam.quadratic_tree(r.other));
            assert_eq!((l.vertex_count(), o.vertex_count()), (2, 2), "{}", r.kind);
            assert_eq!(l.inputs(), o.inputs());
            assert_eq!(fam.tree_output(&l), fam.tree_output(&o));
            assert_eq!(fam.compare_trees(&l, &o), Ok(Ordering::Greater), "{}: {}", fam.kind(), r.kind);
        }
    }
}

#[test]
fn completed_lists_cover_every_non_minimal_quadratic() {
    for k in [FamilyKind::Simplex(2), FamilyKind::Simplex(3), FamilyKind::Polygon(1, 1), FamilyKind::Polygon(2, 2)] {
        let fam = Family::new(k, RelationList::Completed).unwrap();
        let report = fam.presentation_check();
        assert!(report.is_empty(), "{k}: {report:?}");
    }
}

#[test]
fn printed_polygon_list_misses_three_leading_terms() {
    let fam = Family::new(FamilyKind::Polygon(1, 1), RelationList::Printed).unwrap();
    let mut missing = fam.presentation_check().missing;
    missing.sort();
    assert_eq!(missing, ["B(B(0,P),1)", "M(U_left(0))", "M(U_right(1))"]);
}

#[test]
fn order_is_admissible() {
    for k in [FamilyKind::Simplex(2), FamilyKind::Polygon(1, 1)] {
        let fam = Family::new(k, RelationList::Completed).unwrap();
        let report = fam.admissibility_check(3);
        assert!(report.pairs_checked > 1000);
        assert!(report.failures.is_empty(), "{k}: {:?}", report.failures.first());
    }
}

#[test]
fn simplex_normal_form_is_the_class_minimum() {
    for n in [2, 3] {
        let fam = Family::simplex(n).unwrap();
        for (ins, out) in present_arities(&fam, 3) {
            let nf = fam.normal_form(&ins, out).unwrap().tree;
            assert!(fam.is_normal(&nf), "{}", fam.render_tree(&nf));
            let class = fam.equivalence_class(&nf);
            assert_eq!(class.len(), fam.monomials(&ins, out).len(), "relations connect the arity");
            for t in &class {
                assert_ne!(fam.compare_trees(t, &nf), Ok(Ordering::Less));
            }
            assert_eq!(Some(nf), fam.minimal_monomial(&ins, out).unwrap().map(|m| m.tree));
        }
    }
}

#[test]
fn ascending_stems_normal_form_is_the_minimum() {
    let fam = Family::with_order(FamilyKind::Simplex(3), RelationList::Completed, OrderVariant::AscendingStems).unwrap();
    for (ins, out) in present_arities(&fam, 3) {
        let nf = fam.normal_form(&ins, out).unwrap().tree;
        assert_eq!(Some(nf), fam.minimal_monomial(&ins, out).unwrap().map(|m| m.tree));
    }
}

#[test]
fn polygon_normal_form_is_normal() {
    for (n, m) in [(0, 1), (1, 1), (2, 1)] {
        let fam = Family::polygon(n, m).unwrap();
        for (ins, out) in present_arities(&fam, 3) {
            let nf = fam.normal_form(&ins, out).unwrap().tree;
            assert!(fam.is_normal(&nf), "{}", fam.render_tree(&nf));
            assert_eq!(fam.reduce(&fam.proof_normal_form(&ins, out).unwrap().tree), nf);
        }
    }
}

#[test]
fn displayed_simplex_normal_form() {
    let fam = Family::simplex(6).unwrap();
    let ins = colors(&fam, &["13", "6", "6"]);
    let nf = fam.normal_form(&ins, fam.color("12346").unwrap()).unwrap();
    assert_eq!(fam.render(&nf), "B(U_2(13),B(U_3(U_4(6)),6))");
    assert!(fam.is_normal(&nf.tree));
}

#[test]
fn displayed_polygon_normal_form() {
    let fam = Family::polygon(2, 1).unwrap();
    let ins = colors(&fam, &["0", "0", "e(0)", "x(1)", "x(1)", "x(2)", "e(2)", "1"]);
    let p = fam.color("P").unwrap();
    let expected = "B(0,B(0,M(e(0),B(x(1),U_left(x(1))),B(x(2),B(e(2),1)))))";
    assert_eq!(fam.render(&fam.proof_normal_form(&ins, p).unwrap()), expected);
    let nf = fam.normal_form(&ins, p).unwrap();
    assert_eq!(fam.render(&nf), expected);
    assert!(fam.is_normal(&nf.tree));
}

#[test]
fn proof_construction_diverges_only_through_divisible_monomials() {
    let fam = Family::polygon(1, 1).unwrap();
    let mut differing = 0;
    for (ins, out) in present_arities(&fam, 3) {
        let proof = fam.proof_normal_form(&ins, out).unwrap().tree;
        let nf = fam.normal_form(&ins, out).unwrap().tree;
        if proof != nf {
            differing += 1;
            assert!(!fam.is_normal(&proof));
        }
    }
    assert!(differing > 0);
}

#[test]
fn non_chain_arity_has_no_monomials() {
    let fam = Family::simplex(2).unwrap();
    let ins = colors(&fam, &["02", "12"]);
    let row = fam.count_arity(&ins, fam.color("012").unwrap());
    assert_eq!((row.monomials, row.normal_forms, row.dim), (0, 0, 0));
}

#[test]
fn counting_is_exact_where_the_quadratic_basis_holds() {
    let fam = Family::polygon(1, 1).unwrap();
    assert!(fam.count_normal_forms(4).mismatches().is_empty());
    for n in [1, 2, 3] {
        let fam = Family::with_order(FamilyKind::Simplex(n), RelationList::Completed, OrderVariant::AscendingStems).unwrap();
        assert!(fam.count_normal_forms(4).mismatches().is_empty(), "simplex({n})");
    }
}
