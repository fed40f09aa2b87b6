use proptest::prelude::*;

use super::*;
use crate::chain::{normalized_chains, ChainComplex, ChainMap, EqChainComplex};
use crate::fixtures;
use crate::group::Group;
use crate::gset::{coset_gset, GSet};
use crate::linalg::{Matrix, Ring};
use crate::simplicial::GSSet;

fn all_family(g: &Group) -> OrbitCategory {
    OrbitCategory::new(g, &g.all_subgroups().unwrap()).unwrap()
}

fn fin_sizes(d: &OrbitDiagram<FinSet>) -> Vec<usize> {
    d.values().to_vec()
}

fn regular(g: &Group) -> GSet {
    coset_gset(g, &Subgroup::trivial(g)).unwrap()
}

#[test]
fn free_point_cell_restricts_to_the_regular_set() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let e = cat.trivial_object().unwrap();
    let t = free_cell_diagram(&FinSet, &cat, e, &1).unwrap();
    assert_eq!(fin_sizes(&t), vec![2, 0]);
    let u = i_upper(&FinSet, &t).unwrap();
    assert_eq!(u.carrier, 2);
    assert_eq!(u.action[1].values, vec![1, 0]);

    let ts = free_cell_diagram(&FinSSet, &cat, e, &GSSet::point()).unwrap();
    let us = i_upper(&FinSSet, &ts).unwrap();
    let gs = FinSSet::to_gsset(&us).unwrap();
    assert_eq!(gs.count(), 2);
    assert_eq!(gs.act(1, 0), 1);
}

#[test]
fn constant_diagram_has_trivial_action() {
    let g = Group::cyclic(3);
    let cat = all_family(&g);
    let t = OrbitDiagram::from_fn(&FinSet, &cat, vec![3; cat.object_count()], |_| Ok(FinSet.identity(&3))).unwrap();
    let u = i_upper(&FinSet, &t).unwrap();
    assert!(u.action.iter().all(|a| a.values == vec![0, 1, 2]));
    let (lu, _) = i_lower(&FinSet, &cat, &u).unwrap();
    assert_eq!(fin_sizes(&lu), vec![3; cat.object_count()]);
}

#[test]
fn fixed_point_diagrams() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let (d, _) = i_lower(&FinSet, &cat, &FinSet::gobject(&regular(&g))).unwrap();
    assert_eq!(fin_sizes(&d), vec![2, 0]);

    let zc2 = normalized_chains(&fixtures::swap_points(), Ring::Integers);
    let (d, _) = i_lower(&Chain(Ring::Integers), &cat, &Chain::gobject(&zc2)).unwrap();
    assert_eq!(d.value(0).ranks(), &[2]);
    assert_eq!(d.value(1).ranks(), &[1]);
}

#[test]
fn free_cell_values() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let whole = cat.object_of(&Subgroup::whole(&g)).unwrap();
    let t = free_cell_diagram(&FinSet, &cat, whole, &3).unwrap();
    assert_eq!(fin_sizes(&t), vec![3, 3]);
    let z0 = ChainComplex::concentrated(Ring::Integers, 0);
    let t = free_cell_diagram(&Chain(Ring::Integers), &cat, 0, &z0).unwrap();
    assert_eq!(t.value(0).ranks(), &[2]);
    assert_eq!(t.value(1).ranks(), &[0]);
}

#[test]
fn rejects_bad_actions_and_diagrams() {
    let g = Group::cyclic(3);
    let swap = FinMap {
        source: 2,
        target: 2,
        values: vec![1, 0],
    };
    let id = FinSet.identity(&2);
    assert!(GObject::new(&FinSet, &g, 2, vec![id.clone(), swap.clone(), swap.clone()]).is_err());
    assert!(GObject::new(&FinSet, &g, 2, vec![id.clone(), id.clone()]).is_err());

    let c2 = Group::cyclic(2);
    let cat = all_family(&c2);
    let bad = OrbitDiagram::from_fn(&FinSet, &cat, vec![2, 2], |m| {
        Ok(if m.source == 0 && m.target == 0 && m.rep == 1 { FinMap { source: 2, target: 2, values: vec![0, 0] } } else { FinSet.identity(&2) })
    });
    assert!(matches!(bad, Err(Error::InvalidDiagram(_))));
    let wrong_ends = OrbitDiagram::from_fn(&FinSet, &cat, vec![2, 1], |_| Ok(FinSet.identity(&2)));
    assert!(wrong_ends.is_err());
}

#[test]
fn requires_the_trivial_subgroup() {
    let g = Group::cyclic(2);
    let cat = OrbitCategory::new(&g, &[Subgroup::whole(&g)]).unwrap();
    let t = free_cell_diagram(&FinSet, &cat, 0, &1).unwrap();
    assert!(matches!(i_upper(&FinSet, &t), Err(Error::MissingTrivialSubgroup)));
}

fn gsset_fixtures() -> Vec<GSSet> {
    vec![
        fixtures::swap_points(),
        fixtures::swap_square(),
        fixtures::swap_wedge(),
        fixtures::s3_hexagon(),
        fixtures::c3_hexagon(),
        fixtures::sphere2().with_trivial_action(&Group::cyclic(2)),
        GSSet::standard_simplex(2).with_trivial_action(&Group::symmetric(3)),
    ]
}

#[test]
fn counit_is_an_isomorphism_on_fixtures() {
    for x in gsset_fixtures() {
        let cat = all_family(x.group());
        let xo = FinSSet::gobject(&x);
        let (_, eps) = counit(&FinSSet, &cat, &xo).unwrap();
        assert!(eps.is_isomorphism());
        let e = cat.trivial_object().unwrap();
        let t = free_cell_diagram(&FinSSet, &cat, e, &GSSet::boundary(1)).unwrap();
        let r = adjunction_check(&FinSSet, &t, &xo).unwrap();
        assert!(r.counit_iso && r.counit_equivariant && r.triangle_identities && r.unit_natural);
    }
}

/// `|(G/K)^H|` counted by the conjugation criterion `a⁻¹Ha ⊆ K`.
fn fixed_coset_count(h: &Subgroup, k: &Subgroup) -> usize {
    Cosets::new(k).reps().iter().filter(|&&a| h.conjugates_into(a, k)).count()
}

fn sset_cells() -> Vec<GSSet> {
    vec![
        GSSet::point(),
        GSSet::standard_simplex(1),
        GSSet::standard_simplex(2),
        GSSet::boundary(1),
        GSSet::boundary(2),
        fixtures::sphere2(),
        GSSet::empty(&Group::trivial()),
    ]
}

#[test]
fn unit_on_free_cells_matches_cellularity() {
    for g in [Group::cyclic(2), Group::symmetric(3)] {
        let cat = all_family(&g);
        for k in 0..cat.object_count() {
            for c in sset_cells() {
                let t = free_cell_diagram(&FinSSet, &cat, k, &c).unwrap();
                let (target, eta) = unit(&FinSSet, &t).unwrap();
                for h in 0..cat.object_count() {
                    let (lhs, rhs, cmp) =
                        cellularity_comparison(&FinSSet, cat.subgroup(h), cat.subgroup(k), &c).unwrap();
                    let n = fixed_coset_count(cat.subgroup(h), cat.subgroup(k));
                    assert_eq!(lhs.count(), n * c.count());
                    assert_eq!(rhs.count(), n * c.count());
                    assert_eq!(target.value(h).count(), n * c.count());
                    assert!(cmp.is_isomorphism());
                    assert_eq!(eta[h].is_isomorphism(), cmp.is_isomorphism());
                }
                let r = adjunction_check(&FinSSet, &t, &FinSSet::gobject(&GSSet::boundary(1).with_trivial_action(&g))).unwrap();
                assert!(r.unit_iso && r.triangle_identities);
            }
            for c in 0..4usize {
                let t = free_cell_diagram(&FinSet, &cat, k, &c).unwrap();
                let (_, eta) = unit(&FinSet, &t).unwrap();
                for h in 0..cat.object_count() {
                    let (_, _, cmp) = cellularity_comparison(&FinSet, cat.subgroup(h), cat.subgroup(k), &c).unwrap();
                    assert!(FinSet.is_iso(&cmp));
                    assert_eq!(FinSet.is_iso(&eta[h]), FinSet.is_iso(&cmp));
                }
            }
        }
    }
}

#[test]
fn fixed_points_of_tensored_interval() {
    let g = Group::cyclic(2);
    let whole = Subgroup::whole(&g);
    let i = GSSet::standard_simplex(1);
    let (lhs, rhs, cmp) = cellularity_comparison(&FinSSet, &whole, &Subgroup::trivial(&g), &i).unwrap();
    assert!(lhs.is_empty() && rhs.is_empty() && cmp.is_isomorphism());
    let (lhs, rhs, cmp) = cellularity_comparison(&FinSSet, &whole, &whole, &i).unwrap();
    assert_eq!(lhs.count(), 3);
    assert_eq!(rhs.count(), 3);
    assert!(cmp.is_isomorphism());
}

#[test]
fn chain_unit_fails_on_the_free_cell() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let v = Chain(Ring::Integers);
    let z0 = ChainComplex::concentrated(Ring::Integers, 0);
    let t = free_cell_diagram(&v, &cat, 0, &z0).unwrap();
    let x = EqChainComplex::trivial(z0.clone(), &g);
    let r = adjunction_check(&v, &t, &Chain::gobject(&x)).unwrap();
    assert!(!r.unit_iso);
    assert!(r.counit_iso && r.triangle_identities && r.unit_natural);
    let at_c2 = &r.per_object["G/{0,1}"];
    assert!(!at_c2.unit_iso);
    assert_eq!(at_c2.weak_equivalence, Some(false));
    assert_eq!(at_c2.source, "ranks [0]; H_0 = 0");
    assert_eq!(at_c2.target, "ranks [1]; H_0 = Z");
    assert!(r.per_object["G/{0}"].unit_iso);

    let (_, eta) = unit(&v, &t).unwrap();
    let h_src = crate::chain::homology(eta[1].source());
    let h_tgt = crate::chain::homology(eta[1].target());
    assert_eq!((h_src[0].rank, h_tgt[0].rank), (0, 1));
}

#[test]
fn chain_cellularity_counterexample() {
    let g = Group::cyclic(2);
    let z0 = ChainComplex::concentrated(Ring::Integers, 0);
    let v = Chain(Ring::Integers);
    let r = cellularity_report(&v, &Subgroup::whole(&g), &Subgroup::trivial(&g), &z0, true).unwrap();
    assert!(!r.iso);
    assert_eq!(r.lhs, "ranks [0]; H_0 = 0");
    assert_eq!(r.rhs, "ranks [1]; H_0 = Z");
    assert_eq!(r.fixed_basis, Vec::<usize>::new());
    assert_eq!(r.orbit_basis, Some(vec![vec![0, 1]]));

    let r = cellularity_report(&v, &Subgroup::whole(&g), &Subgroup::whole(&g), &z0, true).unwrap();
    assert!(r.iso);
    let r = cellularity_report(&v, &Subgroup::trivial(&g), &Subgroup::trivial(&g), &z0, true).unwrap();
    assert!(r.iso);
    assert_eq!(r.orbit_basis, Some(vec![vec![0], vec![1]]));
}

#[test]
fn chain_cellularity_holds_exactly_when_h_fixes_every_coset_it_meets() {
    let g = Group::symmetric(3);
    let subs = g.all_subgroups().unwrap();
    let z0 = ChainComplex::concentrated(Ring::Integers, 0);
    let v = Chain(Ring::Integers);
    for h in &subs {
        for k in &subs {
            let r = cellularity_report(&v, h, k, &z0, true).unwrap();
            let cosets = Cosets::new(k).gset();
            let burnside: usize =
                h.members().iter().map(|&x| (0..cosets.size()).filter(|&c| cosets.act(x, c) == c).count()).sum::<usize>()
                    / h.order();
            assert_eq!(r.orbit_basis.as_ref().unwrap().len(), burnside);
            assert_eq!(r.fixed_basis.len(), fixed_coset_count(h, k));
            assert_eq!(r.iso, fixed_coset_count(h, k) == burnside);
        }
    }
}

#[test]
fn census_counts() {
    let c2 = Group::cyclic(2);
    let r = arrow_poset_census(&all_family(&c2));
    assert_eq!((r.diagrams, r.g_objects), (3, 2));
    assert_eq!(r.diagram_classes, 3);
    let r = arrow_poset_census(&OrbitCategory::new(&c2, &[Subgroup::whole(&c2)]).unwrap());
    assert_eq!((r.diagrams, r.g_objects), (2, 2));
    let e = Group::trivial();
    let r = arrow_poset_census(&all_family(&e));
    assert_eq!((r.diagrams, r.g_objects), (2, 2));
    let s3 = Group::symmetric(3);
    let r = arrow_poset_census(&all_family(&s3));
    assert_eq!(r.diagrams, 6);
    assert_eq!(r.render_text().lines().next(), Some("6 diagrams vs 2 G-objects"));
}

#[test]
fn census_assignments_are_arrow_poset_diagrams() {
    let c2 = Group::cyclic(2);
    let cat = all_family(&c2);
    let r = arrow_poset_census(&cat);
    for a in &r.assignments {
        let values: Vec<bool> = a.iter().map(|&b| b == 1).collect();
        let d = OrbitDiagram::from_fn(&ArrowPoset, &cat, values.clone(), |m| Ok((values[m.target], values[m.source])));
        assert!(d.is_ok());
    }
    let values = [false, true];
    let bad = OrbitDiagram::from_fn(&ArrowPoset, &cat, values.to_vec(), |m| Ok((values[m.target], values[m.source])));
    assert!(bad.is_err());
}

fn bijection_groups() -> Vec<Group> {
    vec![
        Group::cyclic(2),
        Group::cyclic(3),
        Group::cyclic(4),
        Group::direct_product(&Group::cyclic(2), &Group::cyclic(2)),
        Group::symmetric(3),
        Group::dihedral(4),
    ]
}

fn small_gsets(g: &Group) -> Vec<GSet> {
    let mut out = vec![GSet::trivial(g, 0), GSet::trivial(g, 1), GSet::trivial(g, 2)];
    for h in g.all_subgroups().unwrap() {
        if h.index() <= 4 {
            out.push(coset_gset(g, &h).unwrap());
        }
        if h.index() <= 3 {
            out.push(coset_gset(g, &h).unwrap().disjoint_union(&GSet::trivial(g, 1)));
        }
    }
    out
}

#[test]
fn hom_set_bijection_exhaustive() {
    for g in bijection_groups() {
        let cat = all_family(&g);
        let sets = small_gsets(&g);
        let mut diagrams: Vec<OrbitDiagram<FinSet>> =
            sets.iter().map(|s| i_lower(&FinSet, &cat, &FinSet::gobject(s)).unwrap().0).collect();
        for k in 0..cat.object_count() {
            for c in 0..=2usize {
                let t = free_cell_diagram(&FinSet, &cat, k, &c).unwrap();
                if t.values().iter().all(|&n| n <= 4) {
                    diagrams.push(t);
                }
            }
        }
        for t in &diagrams {
            for x in &sets {
                let r = hom_bijection_check(t, &FinSet::gobject(x)).unwrap();
                assert!(r.bijective, "group of order {}", g.order());
                assert_eq!(r.equivariant_maps, r.natural_maps);
            }
        }
    }
}

#[test]
fn hom_set_counts_agree_with_direct_counting() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let reg = regular(&g);
    let t = free_cell_diagram(&FinSet, &cat, 0, &1).unwrap();
    let r = hom_bijection_check(&t, &FinSet::gobject(&reg)).unwrap();
    assert_eq!(r.equivariant_maps, 2);
    let r = hom_bijection_check(&t, &FinSet::gobject(&GSet::trivial(&g, 3))).unwrap();
    assert_eq!(r.equivariant_maps, 3);
}

#[test]
fn arrow_poset_adjunction() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let t = OrbitDiagram::from_fn(&ArrowPoset, &cat, vec![true, false], |m| Ok((m.target == 0, m.source == 0))).unwrap();
    let x = GObject::trivial(&ArrowPoset, &g, true);
    let r = adjunction_check(&ArrowPoset, &t, &x).unwrap();
    assert!(!r.unit_iso);
    assert!(r.counit_iso && r.triangle_identities);
}

#[test]
fn chain_adjunction_on_permutation_modules() {
    for x in gsset_fixtures() {
        let cat = all_family(x.group());
        for ring in [Ring::Integers, Ring::Prime(2), Ring::Rationals] {
            let v = Chain(ring);
            let c = Chain::gobject(&normalized_chains(&x, ring));
            let (lx, _) = i_lower(&v, &cat, &c).unwrap();
            let r = adjunction_check(&v, &lx, &c).unwrap();
            assert!(r.counit_iso && r.triangle_identities && r.unit_natural && r.unit_iso);
        }
    }
}

#[test]
fn chain_lift_rejects_maps_outside_the_image() {
    let v = Chain(Ring::Integers);
    let z = ChainComplex::concentrated(Ring::Integers, 0);
    let z2 = v.copower(2, &z);
    let diag = ChainMap::new(&z, &z2, vec![Matrix::from_i64(&[vec![1], vec![1]], 1)]).unwrap();
    let first = ChainMap::new(&z, &z2, vec![Matrix::from_i64(&[vec![1], vec![0]], 1)]).unwrap();
    assert!(v.lift(&diag, &first).is_err());
    let twice = ChainMap::new(&z, &z2, vec![Matrix::from_i64(&[vec![2], vec![2]], 1)]).unwrap();
    assert!(v.lift(&diag, &twice).is_ok());
}

#[test]
fn report_json_shape() {
    let g = Group::cyclic(2);
    let cat = all_family(&g);
    let t = free_cell_diagram(&FinSSet, &cat, 0, &GSSet::boundary(1)).unwrap();
    let r = adjunction_check(&FinSSet, &t, &FinSSet::gobject(&fixtures::swap_points())).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["unit_iso"], true);
    assert_eq!(j["counit_iso"], true);
    assert!(j["per_object"]["G/{0}"].is_object());
    assert!(r.render_text().contains("triangle identities: yes"));
}

fn arb_gset() -> impl Strategy<Value = GSet> {
    (0usize..bijection_groups().len(), proptest::collection::vec((0usize..16, 0usize..3), 0..3)).prop_map(|(gi, parts)| {
        let g = bijection_groups().swap_remove(gi);
        let subs = g.all_subgroups().unwrap();
        let mut x = GSet::trivial(&g, 0);
        for (si, extra) in parts {
            x = x.disjoint_union(&coset_gset(&g, &subs[si % subs.len()]).unwrap());
            x = x.disjoint_union(&GSet::trivial(&g, extra));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangle_identities_on_random_gsets(x in arb_gset(), k in 0usize..16, c in 0usize..3) {
        let cat = all_family(x.group());
        let k = k % cat.object_count();
        let t = free_cell_diagram(&FinSet, &cat, k, &c).unwrap();
        let r = adjunction_check(&FinSet, &t, &FinSet::gobject(&x)).unwrap();
        prop_assert!(r.triangle_identities && r.counit_iso && r.unit_iso && r.unit_natural);
    }

    #[test]
    fn fixed_diagram_sizes(x in arb_gset()) {
        let cat = all_family(x.group());
        let (d, _) = i_lower(&FinSet, &cat, &FinSet::gobject(&x)).unwrap();
        for (o, h) in cat.family().iter().enumerate() {
            let direct = (0..x.size()).filter(|&p| h.members().iter().all(|&g| x.act(g, p) == p)).count();
            prop_assert_eq!(*d.value(o), direct);
        }
    }
}
