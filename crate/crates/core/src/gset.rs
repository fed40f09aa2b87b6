//! Finite G-sets, coset spaces, orbits and fixed points.

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// A finite set with a left action of a group: `act[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Group,
    act: Vec<Vec<usize>>,
    size: usize,
}

impl GSet {
    pub fn new(group: &Group, size: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::InvalidGSet(format!(
                "expected {} permutations, got {}",
                group.order(),
                act.len()
            )));
        }
        for (g, p) in act.iter().enumerate() {
            if p.len() != size {
                return Err(Error::InvalidGSet(format!("permutation of {g} has wrong length")));
            }
            let mut seen = vec![false; size];
            for &y in p {
                if y >= size || seen[y] {
                    return Err(Error::InvalidGSet(format!("action of {g} is not a permutation")));
                }
                seen[y] = true;
            }
        }
        if act[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidGSet("identity acts non-trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| act[g][act[h][x]] != act[gh][x]) {
                    return Err(Error::InvalidGSet(format!(
                        "action is not a homomorphism at ({g},{h})"
                    )));
                }
            }
        }
        Ok(GSet {
            group: group.clone(),
            act,
            size,
        })
    }

    /// `n` points with trivial action.
    pub fn trivial(group: &Group, size: usize) -> Self {
        GSet {
            group: group.clone(),
            act: vec![(0..size).collect(); group.order()],
            size,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn is_fixed_by(&self, x: usize, h: &Subgroup) -> bool {
        h.members().iter().all(|&g| self.act[g][x] == x)
    }

    /// `X^H` in ascending order.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_fixed_by(x, h)).collect()
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = self.group.elements().filter(|&g| self.act[g][x] == x).collect();
        Subgroup::from_members(&self.group, &members).expect("stabilizers are subgroups")
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.group.elements().map(|g| self.act[g][x]).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbit(0).len() == self.size
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        assert_eq!(self.group, other.group);
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&y| y + self.size)).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            act,
            size: self.size + other.size,
        }
    }

    /// The product with diagonal action; the pair `(x, y)` is point
    /// `x * other.size + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        assert_eq!(self.group, other.group);
        let m = other.size;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(p, q)| {
                (0..self.size * m)
                    .map(|xy| p[xy / m] * m + q[xy % m])
                    .collect()
            })
            .collect();
        GSet {
            group: self.group.clone(),
            act,
            size: self.size * m,
        }
    }

    /// Relabels points: point `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> GSet {
        let mut inverse = vec![0; self.size];
        for (x, &y) in perm.iter().enumerate() {
            inverse[y] = x;
        }
        let act = self
            .act
            .iter()
            .map(|p| (0..self.size).map(|y| perm[p[inverse[y]]]).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            act,
            size: self.size,
        }
    }
}

/// Left cosets `gH`, numbered by ascending least representative.
#[derive(Clone, Debug)]
pub struct Cosets {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Cosets {
    pub fn new(h: &Subgroup) -> Self {
        let g = h.group();
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for a in g.elements() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for &x in h.members() {
                coset_of[g.mul(a, x)] = idx;
            }
        }
        Cosets {
            subgroup: h.clone(),
            reps,
            coset_of,
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Least representative of coset `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.reps[i]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Index of the coset `aH`.
    pub fn index_of(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    pub fn gset(&self) -> GSet {
        let g = self.subgroup.group();
        let act = g
            .elements()
            .map(|x| self.reps.iter().map(|&r| self.coset_of[g.mul(x, r)]).collect())
            .collect();
        GSet {
            group: g.clone(),
            act,
            size: self.reps.len(),
        }
    }
}

/// `G/H` with action by left translation.
pub fn coset_gset(group: &Group, h: &Subgroup) -> Result<GSet> {
    if h.group() != group {
        return Err(Error::MismatchedGroups);
    }
    Ok(Cosets::new(h).gset())
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: usize,
    /// Stabilizer of the representative in the whole group.
    pub stabilizer: Subgroup,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitAnalysis {
    pub orbits: Vec<Orbit>,
    /// `X^H`.
    pub fixed: Vec<usize>,
}

pub fn orbit_analysis(x: &GSet, h: &Subgroup) -> Result<OrbitAnalysis> {
    if h.group() != x.group() {
        return Err(Error::MismatchedGroups);
    }
    let mut seen = vec![false; x.size()];
    let mut orbits = Vec::new();
    for p in 0..x.size() {
        if seen[p] {
            continue;
        }
        let members = x.orbit(p);
        for &m in &members {
            seen[m] = true;
        }
        orbits.push(Orbit {
            representative: p,
            stabilizer: x.stabilizer(p),
            members,
        });
    }
    Ok(OrbitAnalysis {
        orbits,
        fixed: x.fixed_points(h),
    })
}

/// An equivariant map of G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub values: Vec<usize>,
}

impl GMap {
    pub fn new(source: &GSet, target: &GSet, values: Vec<usize>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::MismatchedGroups);
        }
        if values.len() != source.size() || values.iter().any(|&v| v >= target.size()) {
            return Err(Error::InvalidGMap("values do not match the point sets".into()));
        }
        for g in source.group().elements() {
            for p in 0..source.size() {
                if values[source.act(g, p)] != target.act(g, values[p]) {
                    return Err(Error::InvalidGMap(format!(
                        "not equivariant at element {g}, point {p}"
                    )));
                }
            }
        }
        Ok(GMap {
            source: source.clone(),
            target: target.clone(),
            values,
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if first.target != self.source {
            return Err(Error::NotComposable("G-map endpoints differ".into()));
        }
        Ok(GMap {
            source: first.source.clone(),
            target: self.target.clone(),
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.values.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }
}

/// All G-maps out of a transitive G-set, one per point of `target^H`
/// where `H` is the stabilizer of point `0` of `source`. The bijection
/// `f ↦ f(0)` onto `target^H` is checked before returning.
pub fn equivariant_maps(source: &GSet, target: &GSet) -> Result<Vec<GMap>> {
    if source.group() != target.group() {
        return Err(Error::MismatchedGroups);
    }
    if !source.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let g = source.group();
    let h = source.stabilizer(0);
    let fixed = target.fixed_points(&h);
    let mut maps = Vec::with_capacity(fixed.len());
    for &y in &fixed {
        let mut values = vec![usize::MAX; source.size()];
        for a in g.elements() {
            let p = source.act(a, 0);
            let v = target.act(a, y);
            if values[p] != usize::MAX && values[p] != v {
                return Err(Error::Verification(format!("map through {y} is not well defined")));
            }
            values[p] = v;
        }
        maps.push(GMap::new(source, target, values)?);
    }
    let evaluated: Vec<usize> = maps.iter().map(|m| m.values[0]).collect();
    if evaluated != fixed {
        return Err(Error::Verification("evaluation is not a bijection onto X^H".into()));
    }
    Ok(maps)
}

/// Pushout of `g: A → C` along an injective `f: A → B`. The result is
/// `C ⊔ (B − f(A))`, with the new points in ascending order of `B`; the
/// returned vector sends each point of `B` to its image.
pub fn pushout(f: &GMap, g: &GMap) -> Result<(GSet, Vec<usize>)> {
    if f.source != g.source {
        return Err(Error::NotComposable("pushout legs have different sources".into()));
    }
    if !f.is_injective() {
        return Err(Error::InvalidGMap("pushout leg is not injective".into()));
    }
    let b = &f.target;
    let c = &g.target;
    let mut preimage = vec![None; b.size()];
    for (a, &v) in f.values.iter().enumerate() {
        preimage[v] = Some(a);
    }
    let mut to_result = vec![0; b.size()];
    let mut next = c.size();
    for y in 0..b.size() {
        to_result[y] = match preimage[y] {
            Some(a) => g.values[a],
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let group = b.group();
    let act = group
        .elements()
        .map(|e| {
            let mut p: Vec<usize> = (0..c.size()).map(|z| c.act(e, z)).collect();
            p.extend((0..b.size()).filter(|&y| preimage[y].is_none()).map(|y| to_result[b.act(e, y)]));
            p
        })
        .collect();
    Ok((GSet::new(group, next, act)?, to_result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::symmetric(3)
    }

    /// Every equivariant map by brute force over all assignments.
    fn brute_force_maps(source: &GSet, target: &GSet) -> Vec<Vec<usize>> {
        let (n, m) = (source.size(), target.size());
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % m;
                        code /= m;
                        v
                    })
                    .collect::<Vec<usize>>()
            })
            .filter(|vals| GMap::new(source, target, vals.clone()).is_ok())
            .collect()
    }

    #[test]
    fn coset_spaces() {
        let c2 = Group::cyclic(2);
        let point = coset_gset(&c2, &Subgroup::whole(&c2)).unwrap();
        assert_eq!(point.size(), 1);
        let free = coset_gset(&c2, &Subgroup::trivial(&c2)).unwrap();
        assert_eq!(free.action_table(), &[vec![0, 1], vec![1, 0]]);

        let g = s3();
        let h = &g.all_subgroups().unwrap()[1];
        let x = coset_gset(&g, h).unwrap();
        assert_eq!(x.size(), 3);
        let cosets = Cosets::new(h);
        for a in g.elements() {
            for i in 0..3 {
                let expected = cosets.index_of(g.mul(a, cosets.rep(i)));
                assert_eq!(x.act(a, i), expected);
                // every element of the coset maps to the same coset
                for &m in h.members() {
                    let r = g.mul(cosets.rep(i), m);
                    assert_eq!(cosets.index_of(g.mul(a, r)), expected);
                }
            }
        }
    }

    #[test]
    fn orbits_and_fixed_points() {
        let c2 = Group::cyclic(2);
        let triv = GSet::trivial(&c2, 3);
        let an = orbit_analysis(&triv, &Subgroup::whole(&c2)).unwrap();
        assert_eq!(an.orbits.len(), 3);
        assert_eq!(an.fixed, vec![0, 1, 2]);

        let free = coset_gset(&c2, &Subgroup::trivial(&c2)).unwrap();
        assert!(orbit_analysis(&free, &Subgroup::whole(&c2)).unwrap().fixed.is_empty());

        let g = s3();
        let h = &g.all_subgroups().unwrap()[1];
        let x = coset_gset(&g, h).unwrap();
        let an = orbit_analysis(&x, h).unwrap();
        assert_eq!(an.fixed, vec![0]);
        assert_eq!(an.orbits.len(), 1);
        assert_eq!(an.orbits[0].stabilizer, *h);
    }

    #[test]
    fn representability_examples() {
        let c2 = Group::cyclic(2);
        let point = coset_gset(&c2, &Subgroup::whole(&c2)).unwrap();
        let free = coset_gset(&c2, &Subgroup::trivial(&c2)).unwrap();
        assert_eq!(equivariant_maps(&point, &GSet::trivial(&c2, 2)).unwrap().len(), 2);
        assert_eq!(equivariant_maps(&free, &free).unwrap().len(), 2);
        assert_eq!(brute_force_maps(&free, &free).len(), 2);
        assert_eq!(equivariant_maps(&point, &free).unwrap().len(), 0);
        assert_eq!(brute_force_maps(&point, &free).len(), 0);
        assert_eq!(
            equivariant_maps(&free.disjoint_union(&free), &free),
            Err(Error::NotTransitive)
        );
    }

    #[test]
    fn maps_match_brute_force_on_s3() {
        let g = s3();
        let subs = g.all_subgroups().unwrap();
        for h in &subs {
            let src = coset_gset(&g, h).unwrap();
            for k in &subs {
                let tgt = coset_gset(&g, k).unwrap();
                let fast: Vec<Vec<usize>> = equivariant_maps(&src, &tgt)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.values)
                    .collect();
                let mut slow = brute_force_maps(&src, &tgt);
                slow.sort();
                let mut fast_sorted = fast.clone();
                fast_sorted.sort();
                assert_eq!(fast_sorted, slow);
            }
        }
    }

    #[test]
    fn pushout_of_sets() {
        let c2 = Group::cyclic(2);
        let free = coset_gset(&c2, &Subgroup::trivial(&c2)).unwrap();
        let empty = GSet::trivial(&c2, 0);
        let into_free = GMap::new(&empty, &free, vec![]).unwrap();
        let into_point = GMap::new(&empty, &GSet::trivial(&c2, 1), vec![]).unwrap();
        let (p, to) = pushout(&into_free, &into_point).unwrap();
        assert_eq!(p.size(), 3);
        assert_eq!(to, vec![1, 2]);
    }
}
