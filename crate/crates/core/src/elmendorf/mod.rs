//! Orbit diagrams, `G`-objects and the adjunction between them given by
//! restriction to `G/e` and fixed-point diagrams.

mod values;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::gset::{Cosets, GSet};
use crate::orbitcat::{OrbitCategory, OrbitMorphism};

pub use values::{ArrowPoset, Chain, FinMap, FinSSet, FinSet};

/// A category in which orbit diagrams and `G`-objects take values.
pub trait ValueCategory: Sized {
    type Obj: Clone + fmt::Debug + PartialEq;
    type Mor: Clone + fmt::Debug + PartialEq;

    fn name(&self) -> String;
    fn describe(&self, a: &Self::Obj) -> String;
    fn mor_source(&self, f: &Self::Mor) -> Self::Obj;
    fn mor_target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, second: &Self::Mor, first: &Self::Mor) -> Result<Self::Mor>;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    fn mor_eq(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a == b
    }

    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool {
        a == b
    }

    fn is_valid_mor(&self, _f: &Self::Mor) -> bool {
        true
    }

    /// Homology comparison where the category has one.
    fn weak_equivalence(&self, _f: &Self::Mor) -> Option<bool> {
        None
    }

    /// `n ⊗ c`, the coproduct of `n` copies of `c`.
    fn copower(&self, n: usize, c: &Self::Obj) -> Self::Obj;

    /// `f ⊗ c : n ⊗ c → m ⊗ c` for `f : {0..n} → {0..m}`, `n = f.len()`.
    fn copower_map(&self, f: &[usize], m: usize, c: &Self::Obj) -> Self::Mor;

    /// The `H`-fixed subobject with its inclusion.
    fn fixed(&self, x: &GObject<Self>, h: &Subgroup) -> Result<(Self::Obj, Self::Mor)>;

    /// Factors `f` through the monomorphism `incl`.
    fn lift(&self, incl: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
}

/// An object with a `G`-action by automorphisms.
#[derive(Clone, Debug)]
pub struct GObject<V: ValueCategory> {
    pub group: Group,
    pub carrier: V::Obj,
    pub action: Vec<V::Mor>,
}

impl<V: ValueCategory> GObject<V> {
    pub fn new(v: &V, group: &Group, carrier: V::Obj, action: Vec<V::Mor>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidDiagram(format!(
                "{} automorphisms for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if !v.obj_eq(&v.mor_source(a), &carrier) || !v.obj_eq(&v.mor_target(a), &carrier) {
                return Err(Error::InvalidDiagram(format!("element {g} does not act on the carrier")));
            }
        }
        if !v.mor_eq(&action[0], &v.identity(&carrier)) {
            return Err(Error::InvalidDiagram("the identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = v.compose(&action[g], &action[h])?;
                if !v.mor_eq(&gh, &action[group.mul(g, h)]) {
                    return Err(Error::InvalidDiagram(format!(
                        "action is not a homomorphism at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(GObject {
            group: group.clone(),
            carrier,
            action,
        })
    }

    pub fn trivial(v: &V, group: &Group, carrier: V::Obj) -> Self {
        let id = v.identity(&carrier);
        GObject {
            group: group.clone(),
            carrier,
            action: vec![id; group.order()],
        }
    }

    /// Whether `f : self → other` commutes with the actions.
    pub fn is_equivariant(&self, v: &V, other: &GObject<V>, f: &V::Mor) -> Result<bool> {
        for g in self.group.elements() {
            let left = v.compose(f, &self.action[g])?;
            let right = v.compose(&other.action[g], f)?;
            if !v.mor_eq(&left, &right) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A contravariant functor on an orbit category: `maps[m] : T(G/K) → T(G/H)`
/// for each `m : G/H → G/K`.
#[derive(Clone, Debug)]
pub struct OrbitDiagram<V: ValueCategory> {
    cat: OrbitCategory,
    values: Vec<V::Obj>,
    maps: BTreeMap<OrbitMorphism, V::Mor>,
}

impl<V: ValueCategory> OrbitDiagram<V> {
    /// Validates functoriality over every identity and composable pair.
    pub fn new(
        v: &V,
        cat: &OrbitCategory,
        values: Vec<V::Obj>,
        maps: BTreeMap<OrbitMorphism, V::Mor>,
    ) -> Result<Self> {
        if values.len() != cat.object_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} values for {} objects",
                values.len(),
                cat.object_count()
            )));
        }
        let morphisms = cat.morphisms();
        for m in &morphisms {
            let f = maps
                .get(m)
                .ok_or_else(|| Error::InvalidDiagram(format!("no structure map for {m:?}")))?;
            if !v.is_valid_mor(f) {
                return Err(Error::InvalidDiagram(format!("structure map for {m:?} is not a morphism")));
            }
            if !v.obj_eq(&v.mor_source(f), &values[m.target]) || !v.obj_eq(&v.mor_target(f), &values[m.source]) {
                return Err(Error::InvalidDiagram(format!("structure map for {m:?} has the wrong ends")));
            }
        }
        if maps.len() != morphisms.len() {
            return Err(Error::InvalidDiagram("structure map for a morphism outside the category".into()));
        }
        for o in 0..cat.object_count() {
            if !v.mor_eq(&maps[&cat.identity(o)], &v.identity(&values[o])) {
                return Err(Error::InvalidDiagram(format!("identity of object {o} is not sent to an identity")));
            }
        }
        for a in &morphisms {
            for b in morphisms.iter().filter(|b| b.source == a.target) {
                let ba = cat.compose(b, a)?;
                let expected = v.compose(&maps[a], &maps[b])?;
                if !v.mor_eq(&maps[&ba], &expected) {
                    return Err(Error::InvalidDiagram(format!("composition {b:?} ∘ {a:?} is not respected")));
                }
            }
        }
        Ok(OrbitDiagram {
            cat: cat.clone(),
            values,
            maps,
        })
    }

    pub fn from_fn(
        v: &V,
        cat: &OrbitCategory,
        values: Vec<V::Obj>,
        mut map: impl FnMut(&OrbitMorphism) -> Result<V::Mor>,
    ) -> Result<Self> {
        let maps = cat
            .morphisms()
            .into_iter()
            .map(|m| Ok((m, map(&m)?)))
            .collect::<Result<_>>()?;
        Self::new(v, cat, values, maps)
    }

    pub fn category(&self) -> &OrbitCategory {
        &self.cat
    }

    pub fn values(&self) -> &[V::Obj] {
        &self.values
    }

    pub fn value(&self, object: usize) -> &V::Obj {
        &self.values[object]
    }

    pub fn map(&self, m: &OrbitMorphism) -> &V::Mor {
        &self.maps[m]
    }
}

/// Whether the family of components `T(G/H) → S(G/H)` is natural.
pub fn is_natural<V: ValueCategory>(
    v: &V,
    source: &OrbitDiagram<V>,
    target: &OrbitDiagram<V>,
    components: &[V::Mor],
) -> Result<bool> {
    for m in source.cat.morphisms() {
        let left = v.compose(&components[m.source], source.map(&m))?;
        let right = v.compose(target.map(&m), &components[m.target])?;
        if !v.mor_eq(&left, &right) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trivial_object(cat: &OrbitCategory) -> Result<usize> {
    cat.trivial_object().ok_or(Error::MissingTrivialSubgroup)
}

/// Restriction to `G/e`: the carrier `T(G/e)` with `g` acting by
/// `T(R_g)`, where `R_g : G/e → G/e` sends `h ↦ hg`.
pub fn i_upper<V: ValueCategory>(v: &V, t: &OrbitDiagram<V>) -> Result<GObject<V>> {
    let cat = &t.cat;
    let e = trivial_object(cat)?;
    let action = cat
        .group()
        .elements()
        .map(|g| {
            let m = cat.morphism(e, e, g).expect("every element gives an endomorphism of G/e");
            t.map(&m).clone()
        })
        .collect();
    GObject::new(v, cat.group(), t.value(e).clone(), action)
}

/// The fixed-point diagram `G/H ↦ X^H`, with `R_a` acting by `x ↦ a·x`,
/// together with the inclusions `X^H → X`.
pub fn i_lower<V: ValueCategory>(
    v: &V,
    cat: &OrbitCategory,
    x: &GObject<V>,
) -> Result<(OrbitDiagram<V>, Vec<V::Mor>)> {
    if cat.group() != &x.group {
        return Err(Error::MismatchedGroups);
    }
    let mut values = Vec::with_capacity(cat.object_count());
    let mut incl = Vec::with_capacity(cat.object_count());
    for h in cat.family() {
        let (f, i) = v.fixed(x, h)?;
        values.push(f);
        incl.push(i);
    }
    let d = OrbitDiagram::from_fn(v, cat, values, |m| {
        let moved = v.compose(&x.action[m.rep], &incl[m.target])?;
        v.lift(&incl[m.source], &moved)
    })?;
    Ok((d, incl))
}

/// `i_lower` on a `G`-map `f : x → y`: components `X^H → Y^H`.
pub fn i_lower_map<V: ValueCategory>(
    v: &V,
    cat: &OrbitCategory,
    x: &GObject<V>,
    y: &GObject<V>,
    f: &V::Mor,
) -> Result<Vec<V::Mor>> {
    let (_, ix) = i_lower(v, cat, x)?;
    let (_, iy) = i_lower(v, cat, y)?;
    ix.iter()
        .zip(&iy)
        .map(|(a, b)| v.lift(b, &v.compose(f, a)?))
        .collect()
}

/// `η_T : T → i_lower(i_upper(T))`, at `G/H` the map `T(R_e)` into the
/// `H`-fixed part of `T(G/e)`.
pub fn unit<V: ValueCategory>(v: &V, t: &OrbitDiagram<V>) -> Result<(OrbitDiagram<V>, Vec<V::Mor>)> {
    let cat = &t.cat;
    let e = trivial_object(cat)?;
    let u = i_upper(v, t)?;
    let (target, incl) = i_lower(v, cat, &u)?;
    let comps = (0..cat.object_count())
        .map(|o| {
            let r = cat.morphism(e, o, 0).expect("G/e maps to every orbit");
            v.lift(&incl[o], t.map(&r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, comps))
}

/// `ε_X : i_upper(i_lower(X)) → X`, the inclusion of `X^e`.
pub fn counit<V: ValueCategory>(v: &V, cat: &OrbitCategory, x: &GObject<V>) -> Result<(GObject<V>, V::Mor)> {
    let e = trivial_object(cat)?;
    let (d, incl) = i_lower(v, cat, x)?;
    let u = i_upper(v, &d)?;
    Ok((u, incl[e].clone()))
}

pub fn free_cell_diagram<V: ValueCategory>(
    v: &V,
    cat: &OrbitCategory,
    k: usize,
    c: &V::Obj,
) -> Result<OrbitDiagram<V>> {
    if k >= cat.object_count() {
        return Err(Error::InvalidDiagram(format!("object {k} is not in the orbit category")));
    }
    let values = (0..cat.object_count())
        .map(|h| v.copower(cat.hom_reps(h, k).len(), c))
        .collect();
    OrbitDiagram::from_fn(v, cat, values, |m| {
        let from = cat.hom(m.target, k);
        let f = from
            .iter()
            .map(|phi| Ok(cat.hom_position(&cat.compose(phi, m)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(v.copower_map(&f, cat.hom_reps(m.source, k).len(), c))
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObjectReport {
    pub subgroup: Vec<usize>,
    pub source: String,
    pub target: String,
    pub unit_iso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_equivalence: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub category: String,
    pub unit_iso: bool,
    pub counit_iso: bool,
    pub unit_natural: bool,
    pub counit_equivariant: bool,
    pub triangle_identities: bool,
    pub per_object: BTreeMap<String, ObjectReport>,
}

impl AdjunctionReport {
    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!("adjunction check in {}\n", self.category);
        out += &format!("  unit is an isomorphism: {}\n", yn(self.unit_iso));
        out += &format!("  counit is an isomorphism: {}\n", yn(self.counit_iso));
        out += &format!("  unit natural: {}\n", yn(self.unit_natural));
        out += &format!("  counit equivariant: {}\n", yn(self.counit_equivariant));
        out += &format!("  triangle identities: {}\n", yn(self.triangle_identities));
        for (name, o) in &self.per_object {
            out += &format!("  {name}: unit iso {}", yn(o.unit_iso));
            if let Some(w) = o.weak_equivalence {
                out += &format!(", homology iso {}", yn(w));
            }
            out += &format!("\n    source: {}\n    target: {}\n", o.source, o.target);
        }
        out
    }
}

/// Builds the unit at `t` and counit at `x`, and checks naturality,
/// equivariance, invertibility and both triangle identities.
pub fn adjunction_check<V: ValueCategory>(v: &V, t: &OrbitDiagram<V>, x: &GObject<V>) -> Result<AdjunctionReport> {
    let cat = &t.cat;
    let e = trivial_object(cat)?;
    let (lt, eta) = unit(v, t)?;
    let unit_natural = is_natural(v, t, &lt, &eta)?;
    let (ux, eps) = counit(v, cat, x)?;
    let counit_equivariant = ux.is_equivariant(v, x, &eps)?;
    let counit_iso = v.is_iso(&eps);

    let u = i_upper(v, t)?;
    let (_, eps_u) = counit(v, cat, &u)?;
    let first = v.mor_eq(&v.compose(&eps_u, &eta[e])?, &v.identity(&u.carrier));

    let (lx, _) = i_lower(v, cat, x)?;
    let (_, eta_lx) = unit(v, &lx)?;
    let lower_eps = i_lower_map(v, cat, &ux, x, &eps)?;
    let mut second = true;
    for o in 0..cat.object_count() {
        let c = v.compose(&lower_eps[o], &eta_lx[o])?;
        second &= v.mor_eq(&c, &v.identity(lx.value(o)));
    }

    let mut per_object = BTreeMap::new();
    for (o, h) in cat.family().iter().enumerate() {
        per_object.insert(
            format!("G/{h}"),
            ObjectReport {
                subgroup: h.members().to_vec(),
                source: v.describe(t.value(o)),
                target: v.describe(lt.value(o)),
                unit_iso: v.is_iso(&eta[o]),
                weak_equivalence: v.weak_equivalence(&eta[o]),
            },
        );
    }
    Ok(AdjunctionReport {
        category: v.name(),
        unit_iso: eta.iter().all(|f| v.is_iso(f)),
        counit_iso,
        unit_natural,
        counit_equivariant,
        triangle_identities: first && second,
        per_object,
    })
}

/// `G/K ⊗ A` with `G` permuting the copies.
pub fn coset_copower<V: ValueCategory>(v: &V, k: &Subgroup, a: &V::Obj) -> GObject<V> {
    let s = Cosets::new(k).gset();
    let carrier = v.copower(s.size(), a);
    let action = s
        .action_table()
        .iter()
        .map(|row| v.copower_map(row, s.size(), a))
        .collect();
    GObject {
        group: k.group().clone(),
        carrier,
        action,
    }
}

/// The comparison `(G/K)^H ⊗ A → (G/K ⊗ A)^H`, returned with both ends.
pub fn cellularity_comparison<V: ValueCategory>(
    v: &V,
    h: &Subgroup,
    k: &Subgroup,
    a: &V::Obj,
) -> Result<(V::Obj, V::Obj, V::Mor)> {
    if h.group() != k.group() {
        return Err(Error::MismatchedGroups);
    }
    let s = Cosets::new(k).gset();
    let fixed = s.fixed_points(h);
    let lhs = v.copower(fixed.len(), a);
    let x = coset_copower(v, k, a);
    let (rhs, incl) = v.fixed(&x, h)?;
    let into = v.copower_map(&fixed, s.size(), a);
    let comparison = v.lift(&incl, &into)?;
    Ok((lhs, rhs, comparison))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CellularityReport {
    pub category: String,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub iso: bool,
    /// Cosets of `K` fixed by `H`.
    pub fixed_basis: Vec<usize>,
    /// `H`-orbits on `G/K`, reported for additive value categories.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_basis: Option<Vec<Vec<usize>>>,
}

impl CellularityReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "cellularity in {} for H = {:?}, K = {:?}\n  (G/K)^H ⊗ A: {}\n  (G/K ⊗ A)^H: {}\n  comparison is an isomorphism: {}\n  fixed cosets: {:?}\n",
            self.category,
            self.h,
            self.k,
            self.lhs,
            self.rhs,
            if self.iso { "yes" } else { "no" },
            self.fixed_basis
        );
        if let Some(orbits) = &self.orbit_basis {
            out += &format!("  H-orbits on G/K: {orbits:?}\n");
        }
        out
    }
}

pub fn cellularity_report<V: ValueCategory>(
    v: &V,
    h: &Subgroup,
    k: &Subgroup,
    a: &V::Obj,
    additive: bool,
) -> Result<CellularityReport> {
    let (lhs, rhs, comparison) = cellularity_comparison(v, h, k, a)?;
    let s = Cosets::new(k).gset();
    let orbit_basis = additive.then(|| h_orbits(&s, h));
    Ok(CellularityReport {
        category: v.name(),
        h: h.members().to_vec(),
        k: k.members().to_vec(),
        lhs: v.describe(&lhs),
        rhs: v.describe(&rhs),
        iso: v.is_iso(&comparison),
        fixed_basis: s.fixed_points(h),
        orbit_basis,
    })
}

fn h_orbits(s: &GSet, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; s.size()];
    let mut out = Vec::new();
    for x in 0..s.size() {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = h.members().iter().map(|&g| s.act(g, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Census {
    pub diagrams: usize,
    pub g_objects: usize,
    pub diagram_classes: usize,
    pub g_object_classes: usize,
    /// Each diagram as its value (0 or 1) per object.
    pub assignments: Vec<Vec<u8>>,
}

impl Census {
    pub fn render_text(&self) -> String {
        format!(
            "{} diagrams vs {} G-objects\n  isomorphism classes: {} vs {}\n  diagrams: {:?}\n",
            self.diagrams, self.g_objects, self.diagram_classes, self.g_object_classes, self.assignments
        )
    }
}

/// Orbit diagrams valued in `0 → 1` are assignments with `T(G/K) ≤ T(G/H)`
/// whenever `G/H → G/K` exists; a `G`-object there is `0` or `1` with the
/// trivial action. Distinct assignments are non-isomorphic.
pub fn arrow_poset_census(cat: &OrbitCategory) -> Census {
    let n = cat.object_count();
    let arrows: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !cat.hom_reps(s, t).is_empty())
        .collect();
    let assignments: Vec<Vec<u8>> = (0..1usize << n)
        .map(|bits| (0..n).map(|o| ((bits >> o) & 1) as u8).collect::<Vec<u8>>())
        .filter(|a| arrows.iter().all(|&(s, t)| a[t] <= a[s]))
        .collect();
    Census {
        diagrams: assignments.len(),
        g_objects: 2,
        diagram_classes: assignments.len(),
        g_object_classes: 2,
        assignments,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomBijection {
    pub equivariant_maps: usize,
    pub natural_maps: usize,
    pub bijective: bool,
}

/// Enumerates `G`-maps `i_upper(T) → X` and natural maps
/// `T → i_lower(X)` of finite sets and checks that the adjunct
/// correspondences are mutually inverse.
pub fn hom_bijection_check(t: &OrbitDiagram<FinSet>, x: &GObject<FinSet>) -> Result<HomBijection> {
    let v = FinSet;
    let cat = &t.cat;
    let e = trivial_object(cat)?;
    let u = i_upper(&v, t)?;
    let (lx, ix) = i_lower(&v, cat, x)?;
    let (_, eta) = unit(&v, t)?;

    let equivariant: Vec<FinMap> = all_maps(u.carrier, x.carrier)
        .filter(|f| u.is_equivariant(&v, x, f).unwrap_or(false))
        .collect();

    let mut natural: Vec<Vec<FinMap>> = vec![Vec::new()];
    for o in 0..cat.object_count() {
        let mut next = Vec::new();
        for partial in &natural {
            for f in all_maps(*t.value(o), *lx.value(o)) {
                let ok = cat.morphisms().iter().all(|m| {
                    let (s, tg) = (m.source, m.target);
                    if s > o || tg > o || (s != o && tg != o) {
                        return true;
                    }
                    let cs = if s == o { &f } else { &partial[s] };
                    let ct = if tg == o { &f } else { &partial[tg] };
                    let left = v.compose(cs, t.map(m)).expect("composable");
                    let right = v.compose(lx.map(m), ct).expect("composable");
                    left == right
                });
                if ok {
                    let mut p = partial.clone();
                    p.push(f);
                    next.push(p);
                }
            }
        }
        natural = next;
    }

    let to_natural = |f: &FinMap| -> Result<Vec<FinMap>> {
        (0..cat.object_count())
            .map(|o| {
                let through = v.compose(f, &v.compose(&ix_upper_incl(&v, cat, &u, o)?, &eta[o])?)?;
                v.lift(&ix[o], &through)
            })
            .collect()
    };
    let to_equivariant = |alpha: &[FinMap]| -> Result<FinMap> { v.compose(&ix[e], &alpha[e]) };

    let mut bijective = equivariant.len() == natural.len();
    for f in &equivariant {
        let alpha = to_natural(f)?;
        bijective &= natural.contains(&alpha) && &to_equivariant(&alpha)? == f;
    }
    for alpha in &natural {
        let f = to_equivariant(alpha)?;
        bijective &= equivariant.contains(&f) && &to_natural(&f)? == alpha;
    }
    Ok(HomBijection {
        equivariant_maps: equivariant.len(),
        natural_maps: natural.len(),
        bijective,
    })
}

fn ix_upper_incl(v: &FinSet, cat: &OrbitCategory, u: &GObject<FinSet>, o: usize) -> Result<FinMap> {
    let (_, incl) = v.fixed(u, cat.subgroup(o))?;
    Ok(incl)
}

fn all_maps(source: usize, target: usize) -> impl Iterator<Item = FinMap> {
    let total = if source == 0 { 1 } else { target.checked_pow(source as u32).unwrap_or(0) };
    (0..total).map(move |mut code| {
        let values = (0..source)
            .map(|_| {
                let y = code % target;
                code /= target;
                y
            })
            .collect();
        FinMap { source, target, values }
    })
}
