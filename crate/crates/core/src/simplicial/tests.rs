use proptest::prelude::*;

use super::*;
use crate::group::Group;

/// Simplex `x ∘ σ` with `σ : [m] ↠ [dim x]` stored as its value list.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Oracle {
    base: usize,
    surj: Vec<usize>,
}

fn to_oracle(x: &GSSet, r: &SimplexRef) -> Oracle {
    let mut surj: Vec<usize> = (0..=x.dim(r.base)).collect();
    // s_{i_k} ⋯ s_{i_1} x = x ∘ σ_{i_1} ∘ ⋯ ∘ σ_{i_k}.
    for &i in r.word.iter().rev() {
        let mut next = Vec::with_capacity(surj.len() + 1);
        for p in 0..=surj.len() {
            next.push(surj[if p <= i { p } else { p - 1 }]);
        }
        surj = next;
    }
    Oracle { base: r.base, surj }
}

fn from_oracle(o: &Oracle) -> SimplexRef {
    let mut word: Vec<usize> = (0..o.surj.len() - 1).filter(|&p| o.surj[p] == o.surj[p + 1]).collect();
    word.reverse();
    SimplexRef { base: o.base, word }
}

fn oracle_face(x: &GSSet, o: &Oracle, i: usize) -> Oracle {
    let mut composite = o.surj.clone();
    composite.remove(i);
    let n = x.dim(o.base);
    match (0..=n).find(|v| !composite.contains(v)) {
        None => Oracle {
            base: o.base,
            surj: composite,
        },
        Some(v) => {
            let stored = to_oracle(x, &x.faces(o.base)[v]);
            let tau: Vec<usize> = composite.iter().map(|&w| if w > v { w - 1 } else { w }).collect();
            Oracle {
                base: stored.base,
                surj: tau.iter().map(|&t| stored.surj[t]).collect(),
            }
        }
    }
}

fn oracle_degeneracy(o: &Oracle, j: usize) -> Oracle {
    let mut surj = o.surj.clone();
    surj.insert(j, o.surj[j]);
    Oracle { base: o.base, surj }
}

/// `S^2 = Δ[2]/∂Δ[2]`: every edge is degenerate.
fn sphere2() -> GSSet {
    let sv = SimplexRef { base: 0, word: vec![0] };
    GSSet::plain(vec![(0, vec![]), (2, vec![sv.clone(), sv.clone(), sv])]).unwrap()
}

/// `Δ[3]` with the edge `[0,1]` collapsed.
fn collapsed() -> GSSet {
    let n = |b| SimplexRef::nondegenerate(b);
    let s0 = |b| SimplexRef { base: b, word: vec![0] };
    // vertices 0 (=v01), 1 (=v2), 2 (=v3)
    // edges 3=[v01,v2], 4=[v01,v3], 5=[v2,v3]
    // triangles 6=[0,1,2]: faces d0=[1,2]=3, d1=[0,2]=3, d2=[0,1]=s0 v01
    //           7=[0,1,3]: d0=[1,3]=4, d1=[0,3]=4, d2=s0 v01
    //           8=[0,2,3]: d0=5, d1=4, d2=3
    //           9=[1,2,3]: d0=5, d1=4, d2=3
    // top 10=[0,1,2,3]: d0=9, d1=8, d2=7, d3=6
    GSSet::plain(vec![
        (0, vec![]),
        (0, vec![]),
        (0, vec![]),
        (1, vec![n(1), n(0)]),
        (1, vec![n(2), n(0)]),
        (1, vec![n(2), n(1)]),
        (2, vec![n(3), n(3), s0(0)]),
        (2, vec![n(4), n(4), s0(0)]),
        (2, vec![n(5), n(4), n(3)]),
        (2, vec![n(5), n(4), n(3)]),
        (3, vec![n(9), n(8), n(7), n(6)]),
    ])
    .unwrap()
}

/// C2 swapping the two outer vertices of a subdivided triangle boundary:
/// vertices 0, 1, 2, m with edges `[0,1] [0,2] [1,m] [2,m]`.
fn swap_square() -> GSSet {
    let g = Group::cyclic(2);
    GSSet::from_complex(
        &g,
        4,
        &[vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]],
        &[vec![0, 1, 2, 3], vec![0, 2, 1, 3]],
    )
    .unwrap()
}

fn swap_points() -> GSSet {
    let g = Group::cyclic(2);
    GSSet::from_complex(&g, 2, &[], &[vec![0, 1], vec![1, 0]]).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing chains of length `m + 1` in the poset `[n] × [1]`.
fn product_chains(n: usize, m: usize) -> usize {
    let points: Vec<(usize, usize)> = (0..=n).flat_map(|a| [(a, 0), (a, 1)]).collect();
    fn count(points: &[(usize, usize)], last: Option<(usize, usize)>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        points
            .iter()
            .filter(|&&p| last.is_none_or(|l| l != p && l.0 <= p.0 && l.1 <= p.1))
            .map(|&p| count(points, Some(p), left - 1))
            .sum()
    }
    count(&points, None, m + 1)
}

#[test]
fn simplex_and_boundary_counts() {
    for n in 0..5 {
        let d = GSSet::standard_simplex(n);
        let b = GSSet::boundary(n);
        for k in 0..=n {
            assert_eq!(d.count_of_dim(k), binomial(n + 1, k + 1));
            let expected = if k == n { 0 } else { binomial(n + 1, k + 1) };
            assert_eq!(b.count_of_dim(k), expected);
        }
    }
    assert!(GSSet::boundary(0).is_empty());
    assert_eq!(GSSet::point().count(), 1);
}

#[test]
fn rejects_broken_identities() {
    let n = SimplexRef::nondegenerate;
    // A triangle whose edges do not meet correctly.
    let bad = GSSet::plain(vec![
        (0, vec![]),
        (0, vec![]),
        (0, vec![]),
        (1, vec![n(1), n(0)]),
        (1, vec![n(2), n(0)]),
        (1, vec![n(2), n(1)]),
        (2, vec![n(5), n(3), n(4)]),
    ]);
    assert!(matches!(bad, Err(Error::SimplicialIdentity { .. })));
    let wrong_count = GSSet::plain(vec![(0, vec![]), (1, vec![n(0)])]);
    assert!(matches!(wrong_count, Err(Error::InvalidSSet(_))));
    let unsorted = GSSet::plain(vec![(1, vec![n(1), n(1)]), (0, vec![])]);
    assert!(unsorted.is_err());
}

#[test]
fn dimension_cap() {
    // A vertex and one simplex per dimension with constant faces.
    let mut simplices = vec![(0, vec![])];
    for d in 1..=9 {
        simplices.push((
            d,
            (0..=d)
                .map(|_| SimplexRef {
                    base: 0,
                    word: (0..d - 1).rev().collect(),
                })
                .collect(),
        ));
    }
    assert!(GSSet::plain(simplices[..9].to_vec()).is_ok());
    let r = GSSet::plain(simplices);
    assert!(matches!(r, Err(Error::DimensionCap { dim: 9, cap: 8 })));
}

#[test]
fn swap_on_triangle_boundary_is_not_simplicial() {
    let g = Group::cyclic(2);
    let r = GSSet::from_complex(
        &g,
        3,
        &[vec![0, 1], vec![0, 2], vec![1, 2]],
        &[vec![0, 1, 2], vec![0, 2, 1]],
    );
    assert!(r.is_err());
    let b = GSSet::boundary(2);
    // ids: vertices 0 1 2, edges 3=[0,1] 4=[0,2] 5=[1,2]
    let swap = vec![0, 2, 1, 4, 3, 5];
    let r = b.with_action(&g, vec![(0..6).collect(), swap]);
    assert!(matches!(r, Err(Error::InvalidSSet(_))));
}

#[test]
fn engine_handles_degenerate_faces() {
    let s = sphere2();
    let t = SimplexRef::nondegenerate(1);
    let e = s.face(&t, 1).unwrap();
    assert_eq!(e, SimplexRef { base: 0, word: vec![0] });
    assert_eq!(s.face(&e, 0).unwrap(), SimplexRef::nondegenerate(0));
    let st = s.degeneracy(&t, 1).unwrap();
    assert_eq!(s.face(&st, 1).unwrap(), t);
    assert_eq!(s.face(&st, 2).unwrap(), t);
    assert!(matches!(
        s.face(&SimplexRef::nondegenerate(0), 0),
        Err(Error::OperatorRange { .. })
    ));
    assert!(s.degeneracy(&t, 3).is_err());
}

#[test]
fn repeated_degeneracy_normal_form() {
    let pt = GSSet::point();
    let v = SimplexRef::nondegenerate(0);
    let ss = pt.degeneracy(&pt.degeneracy(&v, 0).unwrap(), 0).unwrap();
    assert_eq!(ss, SimplexRef { base: 0, word: vec![1, 0] });
    assert_eq!(pt.face(&ss, 1).unwrap(), SimplexRef { base: 0, word: vec![0] });
    assert_eq!(pt.face(&ss, 1).unwrap(), pt.degeneracy(&v, 0).unwrap());
}

#[test]
fn square_counts() {
    let p = prism(&GSSet::standard_simplex(1));
    let counts: Vec<usize> = (0..3).map(|m| p.product.count_of_dim(m)).collect();
    assert_eq!(counts, vec![4, 5, 2]);
    assert_eq!(p.product.count_of_dim(3), 0);
}

#[test]
fn operator_ranges() {
    let d = GSSet::standard_simplex(2);
    let top = SimplexRef::nondegenerate(d.count() - 1);
    assert!(d.apply_operator(&top, Operator::Face(3)).is_err());
    assert!(d.apply_operator(&top, Operator::Degeneracy(2)).is_ok());
    assert!(d.apply_operator(&SimplexRef::nondegenerate(99), Operator::Face(0)).is_err());
}

fn corpus() -> Vec<GSSet> {
    vec![
        GSSet::standard_simplex(3),
        GSSet::boundary(3),
        sphere2(),
        collapsed(),
        prism(&GSSet::standard_simplex(2)).product,
        prism(&sphere2()).product,
    ]
}

proptest! {
    #[test]
    fn engine_matches_surjection_oracle(
        which in 0usize..6,
        start in 0usize..64,
        ops in proptest::collection::vec((any::<bool>(), 0usize..8), 0..12),
    ) {
        let x = &corpus()[which];
        let mut r = SimplexRef::nondegenerate(start % x.count());
        let mut o = to_oracle(x, &r);
        for (is_face, idx) in ops {
            let dim = x.ref_dim(&r);
            if is_face {
                if dim == 0 { continue; }
                let i = idx % (dim + 1);
                r = x.face(&r, i).unwrap();
                o = oracle_face(x, &o, i);
            } else {
                if dim >= 6 { continue; }
                let j = idx % (dim + 1);
                r = x.degeneracy(&r, j).unwrap();
                o = oracle_degeneracy(&o, j);
            }
            prop_assert_eq!(&r, &from_oracle(&o));
            prop_assert_eq!(to_oracle(x, &r), o.clone());
        }
    }

    #[test]
    fn insertion_keeps_words_decreasing(word in proptest::collection::btree_set(0usize..10, 0..6), j in 0usize..12) {
        let w: Vec<usize> = word.into_iter().rev().collect();
        let out = insert_degeneracy(&w, j);
        prop_assert_eq!(out.len(), w.len() + 1);
        prop_assert!(out.windows(2).all(|p| p[0] > p[1]));
    }
}

#[test]
fn prism_counts_match_poset_nerve() {
    for n in 0..4 {
        let p = prism(&GSSet::standard_simplex(n));
        for m in 0..=n + 1 {
            assert_eq!(p.product.count_of_dim(m), product_chains(n, m), "n={n} m={m}");
        }
    }
}

#[test]
fn prism_structure_maps() {
    for x in [sphere2(), collapsed(), swap_square()] {
        let p = prism(&x);
        let id = SMap::identity(&x);
        assert_eq!(p.proj.after(&p.end0).unwrap(), id);
        assert_eq!(p.proj.after(&p.end1).unwrap(), id);
        assert!(p.end0.is_injective() && p.end1.is_injective());
        let top = x.top_dim().unwrap();
        for m in 0..=top + 1 {
            let expected = (m + 2) * x.count_of_dim(m) + if m > 0 { m * x.count_of_dim(m - 1) } else { 0 };
            assert_eq!(p.product.count_of_dim(m), expected);
        }
        let labels_ok = (0..p.product.count()).all(|id| {
            let l = p.label(id);
            p.normalize(&x, &l.simplex, l.threshold) == SimplexRef::nondegenerate(id)
        });
        assert!(labels_ok);
    }
}

#[test]
fn fixed_points_and_skeleta() {
    let x = swap_square();
    let g = x.group().clone();
    let whole = crate::group::Subgroup::whole(&g);
    let (f, incl) = fixed_sset(&x, &whole).unwrap();
    assert_eq!(f.count(), 2);
    assert_eq!(incl.values(), &[SimplexRef::nondegenerate(0), SimplexRef::nondegenerate(3)]);
    let (e, _) = fixed_sset(&x, &crate::group::Subgroup::trivial(&g)).unwrap();
    assert_eq!(e.count(), x.count());
    let (sk0, i0) = skeleton(&x, 0);
    assert_eq!(sk0.count(), 4);
    assert!(i0.is_injective());
    let (sk, _) = skeleton(&x, -1);
    assert!(sk.is_empty());
    let other = Group::cyclic(3);
    assert!(fixed_sset(&x, &crate::group::Subgroup::whole(&other)).is_err());
}

#[test]
fn tensor_with_orbit() {
    let g = Group::cyclic(3);
    let orbit = crate::gset::coset_gset(&g, &crate::group::Subgroup::trivial(&g)).unwrap();
    let d = GSSet::standard_simplex(1).with_trivial_action(&g);
    let t = gtensor(&orbit, &d);
    assert_eq!(t.count_of_dim(0), 6);
    assert_eq!(t.count_of_dim(1), 3);
    for c in 0..3 {
        for id in 0..d.count() {
            let tid = gtensor_id(3, &d, c, id);
            assert_eq!(t.dim(tid), d.dim(id));
        }
    }
    assert_eq!(t.act(1, gtensor_id(3, &d, 0, 2)), gtensor_id(3, &d, orbit.act(1, 0), 2));
}

#[test]
fn cells_of_free_and_fixed_examples() {
    let x = swap_square();
    let f = SMap::from_empty(&x);
    let cells = cell_decomposition(&f).unwrap();
    assert_eq!(cells.counts(), vec![3, 2]);
    let fixed = cells.of_dim(0).filter(|c| c.stabilizer.order() == 2).count();
    assert_eq!(fixed, 2);
    let r = replay(&f, &cells).unwrap();
    assert!(r.comparison.is_isomorphism());
    assert_eq!(r.stage_counts, vec![4, 8]);
    assert!(find_isomorphism(&r.space, &x).is_some());

    let y = swap_points();
    let cells = cell_decomposition(&SMap::from_empty(&y)).unwrap();
    assert_eq!(cells.counts(), vec![1]);
    assert!(cells.cells[0].stabilizer.is_trivial());
}

#[test]
fn replay_of_prism_ends() {
    for x in [swap_square(), collapsed().with_trivial_action(&Group::cyclic(2)), sphere2()] {
        let p = prism(&x);
        let (ends, left, right) = x.disjoint_union(&x);
        let mut values = vec![SimplexRef::nondegenerate(0); ends.count()];
        for id in 0..x.count() {
            values[left[id]] = p.end0.value(id).clone();
            values[right[id]] = p.end1.value(id).clone();
        }
        let f = SMap::new(&ends, &p.product, values).unwrap();
        let cells = cell_decomposition(&f).unwrap();
        let top = x.top_dim().unwrap();
        // one cell (x, k) with 0 < k ≤ m for each orbit, and the s_j x.
        let total: usize = (0..=top + 1)
            .map(|m| {
                let a = if m <= top { m * x.count_of_dim(m) } else { 0 };
                let b = if m > 0 { m * x.count_of_dim(m - 1) } else { 0 };
                a + b
            })
            .sum();
        let orbits_total: usize = cells.cells.iter().map(|c| c.orbit.len()).sum();
        assert_eq!(orbits_total, total);
        let r = replay(&f, &cells).unwrap();
        assert!(r.comparison.is_isomorphism());
    }
}

#[test]
fn replay_detects_tampering() {
    let x = swap_square();
    let f = SMap::from_empty(&x);
    let mut cells = cell_decomposition(&f).unwrap();
    cells.cells.pop();
    assert!(replay(&f, &cells).is_err());
    let mut cells = cell_decomposition(&f).unwrap();
    let e = crate::group::Subgroup::trivial(x.group());
    let fixed = cells.cells.iter().position(|c| c.stabilizer.order() == 2).unwrap();
    cells.cells[fixed].stabilizer = e;
    assert!(replay(&f, &cells).is_err());
}

#[test]
fn cofibration_checks() {
    let x = swap_square();
    let g = x.group().clone();
    let e = crate::group::Subgroup::trivial(&g);
    let whole = crate::group::Subgroup::whole(&g);
    let v = check_f_cofibration(&SMap::from_empty(&x), std::slice::from_ref(&e)).unwrap();
    match v.failure {
        Some(CofibrationFailure::Isotropy { simplex, stabilizer }) => {
            assert_eq!(simplex, 0);
            assert_eq!(stabilizer, whole);
        }
        other => panic!("unexpected {other:?}"),
    }
    let v = check_f_cofibration(&SMap::from_empty(&x), &[e.clone(), whole]).unwrap();
    assert!(v.is_cofibration() && v.strict);
    let y = swap_points();
    let v = check_f_cofibration(&SMap::from_empty(&y), &[e]).unwrap();
    assert!(v.is_cofibration());

    // Collapse two points of Δ[1] ⊔ pt onto one vertex.
    let d = GSSet::standard_simplex(1);
    let two = GSSet::from_complex(&Group::trivial(), 2, &[], &[vec![0, 1]]).unwrap();
    let f = SMap::from_ids(&two, &d, &[0, 0]).unwrap();
    let v = check_f_cofibration(&f, &[crate::group::Subgroup::trivial(&Group::trivial())]).unwrap();
    assert_eq!(v.failure, Some(CofibrationFailure::NotInjective { simplex: 1 }));
}

#[test]
fn conjugate_members_are_accepted_but_not_strict() {
    let g = Group::symmetric(3);
    let subs = g.all_subgroups().unwrap();
    let h = subs[1].clone();
    let h2 = subs[2].clone();
    let orbit = crate::gset::coset_gset(&g, &h2).unwrap();
    let x = gtensor(&orbit, &GSSet::point().with_trivial_action(&g));
    let v = check_f_cofibration(&SMap::from_empty(&x), &[h]).unwrap();
    assert!(v.is_cofibration());
    assert!(!v.strict);
}

#[test]
fn pushout_glues_edges() {
    let pt = GSSet::point();
    let d1 = GSSet::standard_simplex(1);
    let i = SMap::from_ids(&pt, &d1, &[1]).unwrap();
    let phi = SMap::from_ids(&pt, &d1, &[0]).unwrap();
    let (p, s_to_p, l_to_p) = pushout_along_mono(&i, &phi).unwrap();
    assert_eq!(p.count_of_dim(0), 3);
    assert_eq!(p.count_of_dim(1), 2);
    assert_eq!(s_to_p.after(&phi).unwrap(), l_to_p.after(&i).unwrap());
    let bad = SMap::from_ids(&GSSet::boundary(1), &pt, &[0, 0]).unwrap();
    assert!(pushout_along_mono(&bad, &bad).is_err());
}

#[test]
fn maps_validate_faces_and_equivariance() {
    let x = swap_square();
    let pt = GSSet::point().with_trivial_action(x.group());
    let to_pt = SMap::new(
        &x,
        &pt,
        (0..x.count())
            .map(|id| SimplexRef {
                base: 0,
                word: (0..x.dim(id)).rev().collect(),
            })
            .collect(),
    )
    .unwrap();
    assert!(!to_pt.is_injective());
    let y = swap_points();
    // Sending the two swapped points to the fixed vertices 0 and 3 is not equivariant.
    assert!(SMap::from_ids(&y, &x, &[0, 3]).is_err());
    assert!(SMap::from_ids(&y, &x, &[1, 2]).is_ok());
    // Edge [0,1] cannot go to [1,m] reversed.
    let d1 = GSSet::standard_simplex(1);
    let ux = x.underlying();
    assert!(SMap::from_ids(&d1, &ux, &[1, 0, 4]).is_err());
    assert!(SMap::from_ids(&d1, &ux, &[0, 1, 4]).is_ok());
}

#[test]
fn isomorphism_search() {
    let x = swap_square();
    let perm_action: Vec<Vec<usize>> = x.action_table().to_vec();
    let y = x.with_action(x.group(), perm_action).unwrap();
    assert!(find_isomorphism(&x, &y).is_some());
    let free = gtensor(
        &crate::gset::coset_gset(x.group(), &crate::group::Subgroup::trivial(x.group())).unwrap(),
        &GSSet::standard_simplex(1).with_trivial_action(x.group()),
    );
    assert!(find_isomorphism(&x, &free).is_none());
}
