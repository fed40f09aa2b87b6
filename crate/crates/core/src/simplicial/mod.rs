//! Finite simplicial sets with a group action, stored through their
//! nondegenerate simplices.
//!
//! Every simplex is named by its Eilenberg–Zilber normal form
//! `s_{i_k} ⋯ s_{i_1} x` with `x` nondegenerate and `i_k > ⋯ > i_1`
//! ([`SimplexRef`]). Faces of nondegenerate simplices are stored; all other
//! face and degeneracy operators are computed by the simplicial identities.

mod cells;
mod iso;
mod product;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::gset::GSet;

pub use cells::{
    cell_decomposition, check_f_cofibration, pushout_along_mono, replay, Cell, CellStructure,
    CofibrationFailure, CofibrationVerdict, Replay,
};
pub use iso::find_isomorphism;
pub use product::{prism, Prism, PrismSimplex};

/// Default cap on the top dimension of user-supplied simplicial sets.
pub const DEFAULT_DIM_CAP: usize = 8;

/// A simplex in normal form: the degeneracy word `word = [i_k, …, i_1]`
/// (strictly decreasing) applied to the nondegenerate simplex `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub base: usize,
    pub word: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(base: usize) -> Self {
        SimplexRef {
            base,
            word: Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    fn with_base(&self, base: usize) -> Self {
        SimplexRef {
            base,
            word: self.word.clone(),
        }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.word {
            write!(f, "s{i} ")?;
        }
        write!(f, "x{}", self.base)
    }
}

/// Inserts `s_j` into a normal-form word using `s_j s_i = s_{i+1} s_j`
/// for `j ≤ i`.
pub fn insert_degeneracy(word: &[usize], j: usize) -> Vec<usize> {
    match word.split_first() {
        None => vec![j],
        Some((&top, rest)) => {
            if j > top {
                let mut w = vec![j];
                w.extend_from_slice(word);
                w
            } else {
                let mut w = vec![top + 1];
                w.extend(insert_degeneracy(rest, j));
                w
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Nondegenerate {
    dim: usize,
    faces: Vec<SimplexRef>,
}

/// A finite simplicial set with a simplicial action of a finite group.
///
/// Identifiers are dense and ordered by dimension. A plain simplicial set
/// is one over the trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSSet {
    group: Group,
    simplices: Vec<Nondegenerate>,
    offsets: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl GSSet {
    /// Validates and builds a G-simplicial set. `simplices[id] = (dim,
    /// faces)` must be sorted by dimension; `action[g][id]` permutes
    /// identifiers.
    pub fn new(
        group: &Group,
        simplices: Vec<(usize, Vec<SimplexRef>)>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        Self::assemble(group, simplices, action, Some(DEFAULT_DIM_CAP))
    }

    /// Plain simplicial set (trivial group).
    pub fn plain(simplices: Vec<(usize, Vec<SimplexRef>)>) -> Result<Self> {
        let n = simplices.len();
        Self::new(&Group::trivial(), simplices, vec![(0..n).collect()])
    }

    pub(crate) fn assemble(
        group: &Group,
        simplices: Vec<(usize, Vec<SimplexRef>)>,
        action: Vec<Vec<usize>>,
        cap: Option<usize>,
    ) -> Result<Self> {
        let count = simplices.len();
        let mut offsets = vec![0];
        let mut stored = Vec::with_capacity(count);
        for (id, (dim, faces)) in simplices.into_iter().enumerate() {
            if let Some(cap) = cap {
                if dim > cap {
                    return Err(Error::DimensionCap { dim, cap });
                }
            }
            let prev = stored.last().map_or(0, |s: &Nondegenerate| s.dim);
            if dim < prev {
                return Err(Error::InvalidSSet(format!(
                    "simplex {id} has dimension {dim} after a simplex of dimension {prev}"
                )));
            }
            while offsets.len() <= dim {
                offsets.push(id);
            }
            let expected = if dim == 0 { 0 } else { dim + 1 };
            if faces.len() != expected {
                return Err(Error::InvalidSSet(format!(
                    "simplex {id} of dimension {dim} lists {} faces, expected {expected}",
                    faces.len()
                )));
            }
            stored.push(Nondegenerate { dim, faces });
        }
        offsets.push(count);
        let x = GSSet {
            group: group.clone(),
            simplices: stored,
            offsets,
            action,
        };
        x.validate_faces()?;
        x.validate_action()?;
        Ok(x)
    }

    fn validate_ref(&self, r: &SimplexRef, expected_dim: usize, owner: usize) -> Result<()> {
        if r.base >= owner {
            return Err(Error::InvalidSSet(format!(
                "simplex {owner} has a face on simplex {} which is not of lower dimension",
                r.base
            )));
        }
        let base_dim = self.simplices[r.base].dim;
        if base_dim + r.word.len() != expected_dim {
            return Err(Error::InvalidSSet(format!(
                "face {r} of simplex {owner} has the wrong dimension"
            )));
        }
        if r.word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSSet(format!(
                "face {r} of simplex {owner}: degeneracy word is not strictly decreasing"
            )));
        }
        for (k, &i) in r.word.iter().rev().enumerate() {
            if i > base_dim + k {
                return Err(Error::InvalidSSet(format!(
                    "face {r} of simplex {owner}: degeneracy index {i} out of range"
                )));
            }
        }
        Ok(())
    }

    fn validate_faces(&self) -> Result<()> {
        for (id, s) in self.simplices.iter().enumerate() {
            for f in &s.faces {
                self.validate_ref(f, s.dim - 1, id)?;
                if self.simplices[f.base].dim >= s.dim {
                    return Err(Error::InvalidSSet(format!(
                        "simplex {id} has a face on simplex {} which is not of lower dimension",
                        f.base
                    )));
                }
            }
            if s.dim < 2 {
                continue;
            }
            for j in 1..=s.dim {
                for i in 0..j {
                    let lhs = self.face_unchecked(&s.faces[j], i);
                    let rhs = self.face_unchecked(&s.faces[i], j - 1);
                    if lhs != rhs {
                        return Err(Error::SimplicialIdentity { i, j, simplex: id });
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_action(&self) -> Result<()> {
        let n = self.count();
        if self.action.len() != self.group.order() {
            return Err(Error::InvalidSSet(format!(
                "action lists {} elements, the group has {}",
                self.action.len(),
                self.group.order()
            )));
        }
        for (g, perm) in self.action.iter().enumerate() {
            if perm.len() != n {
                return Err(Error::InvalidSSet(format!("action of {g} has the wrong length")));
            }
            let mut hit = vec![false; n];
            for (x, &y) in perm.iter().enumerate() {
                if y >= n || std::mem::replace(&mut hit[y], true) {
                    return Err(Error::InvalidSSet(format!(
                        "action of {g} does not permute the nondegenerate simplices"
                    )));
                }
                if self.simplices[x].dim != self.simplices[y].dim {
                    return Err(Error::InvalidSSet(format!(
                        "action of {g} changes the dimension of simplex {x}"
                    )));
                }
            }
        }
        if self.action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidSSet("the identity acts non-trivially".into()));
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                if (0..n).any(|x| self.action[g][self.action[h][x]] != self.action[gh][x]) {
                    return Err(Error::InvalidSSet(format!(
                        "action is not a homomorphism at ({g},{h})"
                    )));
                }
            }
            for x in 0..n {
                let gx = self.action[g][x];
                for (i, f) in self.simplices[x].faces.iter().enumerate() {
                    if self.simplices[gx].faces[i] != self.act_ref(g, f) {
                        return Err(Error::InvalidSSet(format!(
                            "face d_{i} of simplex {x} is not equivariant under element {g}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(group: &Group) -> Self {
        GSSet {
            group: group.clone(),
            simplices: Vec::new(),
            offsets: vec![0],
            action: vec![Vec::new(); group.order()],
        }
    }

    /// Builds the simplicial set of an ordered simplicial complex: every
    /// listed simplex (a vertex list) is closed under subsets, vertices are
    /// ordered by label, and `vertex_action[g]` must map each simplex to a
    /// simplex preserving the vertex order.
    pub fn from_complex(
        group: &Group,
        vertices: usize,
        simplices: &[Vec<usize>],
        vertex_action: &[Vec<usize>],
    ) -> Result<Self> {
        let mut all: BTreeMap<(usize, Vec<usize>), ()> = BTreeMap::new();
        for v in 0..vertices {
            all.insert((0, vec![v]), ());
        }
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.iter().any(|&v| v >= vertices) {
                return Err(Error::InvalidSSet(format!("bad simplex {s:?}")));
            }
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert((sub.len() - 1, sub), ());
            }
        }
        let list: Vec<Vec<usize>> = all.into_keys().map(|(_, s)| s).collect();
        let index: BTreeMap<&[usize], usize> =
            list.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let simplices: Vec<(usize, Vec<SimplexRef>)> = list
            .iter()
            .map(|s| {
                let faces = if s.len() == 1 {
                    Vec::new()
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            SimplexRef::nondegenerate(index[f.as_slice()])
                        })
                        .collect()
                };
                (s.len() - 1, faces)
            })
            .collect();
        if vertex_action.len() != group.order() {
            return Err(Error::InvalidSSet("vertex action has the wrong length".into()));
        }
        let mut action = Vec::with_capacity(group.order());
        for (g, perm) in vertex_action.iter().enumerate() {
            if perm.len() != vertices {
                return Err(Error::InvalidSSet(format!("vertex action of {g} has the wrong length")));
            }
            let mut row = Vec::with_capacity(list.len());
            for s in &list {
                let image: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
                if image.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidSSet(format!(
                        "element {g} does not preserve the vertex order of {s:?}"
                    )));
                }
                let id = index.get(image.as_slice()).ok_or_else(|| {
                    Error::InvalidSSet(format!("element {g} maps {s:?} outside the complex"))
                })?;
                row.push(*id);
            }
            action.push(row);
        }
        Self::new(group, simplices, action)
    }

    /// `Δ[n]`.
    pub fn standard_simplex(n: usize) -> Self {
        let g = Group::trivial();
        Self::from_complex(&g, n + 1, &[(0..=n).collect()], &[(0..=n).collect()])
            .expect("standard simplex")
    }

    /// `∂Δ[n]`.
    pub fn boundary(n: usize) -> Self {
        let g = Group::trivial();
        let facets: Vec<Vec<usize>> = if n == 0 {
            Vec::new()
        } else {
            (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect()
        };
        let vertices = if n == 0 { 0 } else { n + 1 };
        Self::from_complex(&g, vertices, &facets, &[(0..vertices).collect()]).expect("boundary")
    }

    pub fn point() -> Self {
        Self::standard_simplex(0)
    }

    /// The same simplicial set with `group` acting trivially.
    pub fn with_trivial_action(&self, group: &Group) -> Self {
        GSSet {
            group: group.clone(),
            simplices: self.simplices.clone(),
            offsets: self.offsets.clone(),
            action: vec![(0..self.count()).collect(); group.order()],
        }
    }

    /// Forgets the action.
    pub fn underlying(&self) -> Self {
        self.with_trivial_action(&Group::trivial())
    }

    /// Replaces the action by one given per element of `group`.
    pub fn with_action(&self, group: &Group, action: Vec<Vec<usize>>) -> Result<Self> {
        let x = GSSet {
            group: group.clone(),
            simplices: self.simplices.clone(),
            offsets: self.offsets.clone(),
            action,
        };
        x.validate_action()?;
        Ok(x)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Number of nondegenerate simplices.
    pub fn count(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.dim)
    }

    pub fn dim(&self, id: usize) -> usize {
        self.simplices[id].dim
    }

    pub fn ref_dim(&self, r: &SimplexRef) -> usize {
        self.simplices[r.base].dim + r.word.len()
    }

    /// Identifiers of the nondegenerate `n`-simplices.
    pub fn ids_of_dim(&self, n: usize) -> std::ops::Range<usize> {
        if n + 1 >= self.offsets.len() {
            let end = *self.offsets.last().unwrap();
            return end..end;
        }
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn count_of_dim(&self, n: usize) -> usize {
        self.ids_of_dim(n).len()
    }

    /// Position of `id` among the simplices of its dimension.
    pub fn position(&self, id: usize) -> usize {
        id - self.offsets[self.simplices[id].dim]
    }

    pub fn faces(&self, id: usize) -> &[SimplexRef] {
        &self.simplices[id].faces
    }

    #[inline]
    pub fn act(&self, g: usize, id: usize) -> usize {
        self.action[g][id]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn act_ref(&self, g: usize, r: &SimplexRef) -> SimplexRef {
        r.with_base(self.action[g][r.base])
    }

    pub fn stabilizer(&self, id: usize) -> Subgroup {
        let members: Vec<usize> = self.group.elements().filter(|&g| self.action[g][id] == id).collect();
        Subgroup::from_members(&self.group, &members).expect("stabilizers are subgroups")
    }

    pub fn orbit(&self, id: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.action[g][id]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn is_fixed_by(&self, id: usize, h: &Subgroup) -> bool {
        h.members().iter().all(|&g| self.action[g][id] == id)
    }

    fn face_unchecked(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        match r.word.split_first() {
            None => self.simplices[r.base].faces[i].clone(),
            Some((&j, rest)) => {
                let rest = SimplexRef {
                    base: r.base,
                    word: rest.to_vec(),
                };
                if i < j {
                    let f = self.face_unchecked(&rest, i);
                    SimplexRef {
                        base: f.base,
                        word: insert_degeneracy(&f.word, j - 1),
                    }
                } else if i == j || i == j + 1 {
                    rest
                } else {
                    let f = self.face_unchecked(&rest, i - 1);
                    SimplexRef {
                        base: f.base,
                        word: insert_degeneracy(&f.word, j),
                    }
                }
            }
        }
    }

    /// `d_i` of a simplex, in normal form.
    pub fn face(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let dim = self.ref_dim(r);
        if dim == 0 || i > dim {
            return Err(Error::OperatorRange { index: i, dim });
        }
        Ok(self.face_unchecked(r, i))
    }

    /// `s_j` of a simplex, in normal form.
    pub fn degeneracy(&self, r: &SimplexRef, j: usize) -> Result<SimplexRef> {
        let dim = self.ref_dim(r);
        if j > dim {
            return Err(Error::OperatorRange { index: j, dim });
        }
        Ok(SimplexRef {
            base: r.base,
            word: insert_degeneracy(&r.word, j),
        })
    }

    pub fn apply_operator(&self, r: &SimplexRef, op: Operator) -> Result<SimplexRef> {
        if r.base >= self.count() {
            return Err(Error::InvalidSSet(format!("no simplex {}", r.base)));
        }
        match op {
            Operator::Face(i) => self.face(r, i),
            Operator::Degeneracy(j) => self.degeneracy(r, j),
        }
    }

    /// The face of a nondegenerate simplex spanned by the sorted vertex
    /// positions `keep ⊆ {0..dim}`.
    pub fn face_along(&self, id: usize, keep: &[usize]) -> SimplexRef {
        let dim = self.dim(id);
        let mut r = SimplexRef::nondegenerate(id);
        for m in (0..=dim).rev().filter(|m| !keep.contains(m)) {
            r = self.face_unchecked(&r, m);
        }
        r
    }

    /// The sub-simplicial set on the nondegenerate simplices with
    /// `keep[id]`, which must be closed under faces. The action is kept
    /// when `keep` is closed under it and dropped (trivial group)
    /// otherwise. Returns the subobject and the map from new to old ids.
    pub fn restrict(&self, keep: &[bool], equivariant: bool) -> Result<(GSSet, Vec<usize>)> {
        let old_ids: Vec<usize> = (0..self.count()).filter(|&i| keep[i]).collect();
        let mut new_id = vec![usize::MAX; self.count()];
        for (n, &o) in old_ids.iter().enumerate() {
            new_id[o] = n;
        }
        let mut simplices = Vec::with_capacity(old_ids.len());
        for &o in &old_ids {
            let mut faces = Vec::new();
            for f in self.faces(o) {
                if !keep[f.base] {
                    return Err(Error::InvalidSSet(format!(
                        "subset is not closed under faces at simplex {o}"
                    )));
                }
                faces.push(f.with_base(new_id[f.base]));
            }
            simplices.push((self.dim(o), faces));
        }
        let (group, action) = if equivariant {
            let mut action = Vec::with_capacity(self.group.order());
            for g in self.group.elements() {
                let mut row = Vec::with_capacity(old_ids.len());
                for &o in &old_ids {
                    let image = self.act(g, o);
                    if !keep[image] {
                        return Err(Error::InvalidSSet(format!(
                            "subset is not closed under the action at simplex {o}"
                        )));
                    }
                    row.push(new_id[image]);
                }
                action.push(row);
            }
            (self.group.clone(), action)
        } else {
            (Group::trivial(), vec![(0..old_ids.len()).collect()])
        };
        let sub = GSSet::assemble(&group, simplices, action, None)?;
        Ok((sub, old_ids))
    }

    /// Disjoint union; the second summand's ids follow the first's within
    /// each dimension. Returns the union and both id maps.
    pub fn disjoint_union(&self, other: &GSSet) -> (GSSet, Vec<usize>, Vec<usize>) {
        assert_eq!(self.group, other.group, "disjoint union over different groups");
        let top = self.top_dim().max(other.top_dim()).map_or(0, |d| d + 1);
        let mut left = vec![0; self.count()];
        let mut right = vec![0; other.count()];
        let mut next = 0;
        for n in 0..top {
            for id in self.ids_of_dim(n) {
                left[id] = next;
                next += 1;
            }
            for id in other.ids_of_dim(n) {
                right[id] = next;
                next += 1;
            }
        }
        let mut simplices = vec![(0, Vec::new()); next];
        for id in 0..self.count() {
            simplices[left[id]] = (
                self.dim(id),
                self.faces(id).iter().map(|f| f.with_base(left[f.base])).collect(),
            );
        }
        for id in 0..other.count() {
            simplices[right[id]] = (
                other.dim(id),
                other.faces(id).iter().map(|f| f.with_base(right[f.base])).collect(),
            );
        }
        let action = self
            .group
            .elements()
            .map(|g| {
                let mut row = vec![0; next];
                for id in 0..self.count() {
                    row[left[id]] = left[self.act(g, id)];
                }
                for id in 0..other.count() {
                    row[right[id]] = right[other.act(g, id)];
                }
                row
            })
            .collect();
        let u = GSSet::assemble(&self.group, simplices, action, None).expect("disjoint union");
        (u, left, right)
    }
}

/// `Sk_n X` and its inclusion; `n = -1` gives the empty simplicial set.
pub fn skeleton(x: &GSSet, n: isize) -> (GSSet, SMap) {
    let keep: Vec<bool> = (0..x.count()).map(|id| (x.dim(id) as isize) <= n).collect();
    let (sk, old) = x.restrict(&keep, true).expect("skeleta are closed");
    let incl = SMap::from_ids(&sk, x, &old).expect("skeleton inclusion");
    (sk, incl)
}

/// `X^H` as a plain simplicial set, with its inclusion into the
/// underlying simplicial set of `X`.
pub fn fixed_sset(x: &GSSet, h: &Subgroup) -> Result<(GSSet, SMap)> {
    if h.group() != x.group() {
        return Err(Error::MismatchedGroups);
    }
    let keep: Vec<bool> = (0..x.count()).map(|id| x.is_fixed_by(id, h)).collect();
    let (fixed, old) = x.restrict(&keep, false)?;
    let incl = SMap::from_ids(&fixed, &x.underlying(), &old)?;
    Ok((fixed, incl))
}

/// `S ⊗ A`: one copy of `A` per point of `S`, with the group permuting the
/// copies. Within each dimension, copies are listed point by point.
pub fn gtensor(s: &GSet, a: &GSSet) -> GSSet {
    let top = a.top_dim().map_or(0, |d| d + 1);
    let mut id_of = vec![vec![0; a.count()]; s.size()];
    let mut simplices = Vec::new();
    for n in 0..top {
        for ids in id_of.iter_mut() {
            for id in a.ids_of_dim(n) {
                ids[id] = simplices.len();
                simplices.push((n, Vec::new()));
            }
        }
    }
    for ids in &id_of {
        for id in 0..a.count() {
            simplices[ids[id]].1 = a.faces(id).iter().map(|f| f.with_base(ids[f.base])).collect();
        }
    }
    let group = s.group();
    let action = group
        .elements()
        .map(|g| {
            let mut row = vec![0; simplices.len()];
            for c in 0..s.size() {
                for id in 0..a.count() {
                    row[id_of[c][id]] = id_of[s.act(g, c)][id];
                }
            }
            row
        })
        .collect();
    GSSet::assemble(group, simplices, action, None).expect("tensor with a G-set")
}

/// Identifier of the copy of simplex `id` of `A` over point `c` in
/// [`gtensor`]`(S, A)`.
pub fn gtensor_id(s_size: usize, a: &GSSet, c: usize, id: usize) -> usize {
    let n = a.dim(id);
    let before_dim: usize = (0..n).map(|k| a.count_of_dim(k)).sum::<usize>() * s_size;
    before_dim + c * a.count_of_dim(n) + a.position(id)
}

/// A simplicial map, equivariant for the common group, given by the
/// image of every nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMap {
    source: GSSet,
    target: GSSet,
    values: Vec<SimplexRef>,
}

impl SMap {
    pub fn new(source: &GSSet, target: &GSSet, values: Vec<SimplexRef>) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::InvalidSMap("source and target carry different groups".into()));
        }
        if values.len() != source.count() {
            return Err(Error::InvalidSMap(format!(
                "{} values for {} simplices",
                values.len(),
                source.count()
            )));
        }
        for (x, v) in values.iter().enumerate() {
            if v.base >= target.count() {
                return Err(Error::InvalidSMap(format!("simplex {x} maps to missing simplex {}", v.base)));
            }
            target
                .validate_ref(v, source.dim(x), usize::MAX)
                .map_err(|e| Error::InvalidSMap(format!("value of simplex {x}: {e}")))?;
        }
        let m = SMap {
            source: source.clone(),
            target: target.clone(),
            values,
        };
        for x in 0..source.count() {
            for (i, f) in source.faces(x).iter().enumerate() {
                let lhs = target.face_unchecked(&m.values[x], i);
                if lhs != m.map_ref(f) {
                    return Err(Error::InvalidSMap(format!("does not commute with d_{i} at simplex {x}")));
                }
            }
            for g in source.group().elements() {
                if m.values[source.act(g, x)] != target.act_ref(g, &m.values[x]) {
                    return Err(Error::InvalidSMap(format!(
                        "not equivariant at simplex {x}, element {g}"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Map sending nondegenerate simplex `x` to nondegenerate `ids[x]`.
    pub fn from_ids(source: &GSSet, target: &GSSet, ids: &[usize]) -> Result<Self> {
        Self::new(source, target, ids.iter().map(|&i| SimplexRef::nondegenerate(i)).collect())
    }

    pub fn identity(x: &GSSet) -> Self {
        SMap {
            source: x.clone(),
            target: x.clone(),
            values: (0..x.count()).map(SimplexRef::nondegenerate).collect(),
        }
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(target: &GSSet) -> Self {
        SMap {
            source: GSSet::empty(target.group()),
            target: target.clone(),
            values: Vec::new(),
        }
    }

    pub fn source(&self) -> &GSSet {
        &self.source
    }

    pub fn target(&self) -> &GSSet {
        &self.target
    }

    pub fn values(&self) -> &[SimplexRef] {
        &self.values
    }

    pub fn value(&self, id: usize) -> &SimplexRef {
        &self.values[id]
    }

    /// Image of an arbitrary simplex.
    pub fn map_ref(&self, r: &SimplexRef) -> SimplexRef {
        let v = &self.values[r.base];
        let mut word = v.word.clone();
        for &j in r.word.iter().rev() {
            word = insert_degeneracy(&word, j);
        }
        SimplexRef { base: v.base, word }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SMap) -> Result<SMap> {
        if first.target != self.source {
            return Err(Error::NotComposable("simplicial map endpoints differ".into()));
        }
        Ok(SMap {
            source: first.source.clone(),
            target: self.target.clone(),
            values: first.values.iter().map(|r| self.map_ref(r)).collect(),
        })
    }

    /// Injective on all simplices: nondegenerate simplices go to distinct
    /// nondegenerate simplices.
    pub fn is_injective(&self) -> bool {
        self.first_non_injective().is_none()
    }

    /// First source simplex witnessing a failure of injectivity.
    pub fn first_non_injective(&self) -> Option<usize> {
        let mut hit = vec![false; self.target.count()];
        for (x, v) in self.values.iter().enumerate() {
            if v.is_degenerate() || std::mem::replace(&mut hit[v.base], true) {
                return Some(x);
            }
        }
        None
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.count() == self.target.count()
    }

    /// Target ids hit by nondegenerate simplices.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut hit = vec![false; self.target.count()];
        for v in &self.values {
            if !v.is_degenerate() {
                hit[v.base] = true;
            }
        }
        hit
    }

    /// The restriction `X^H → Y^H`.
    pub fn restrict_to_fixed(&self, h: &Subgroup) -> Result<(SMap, SMap, SMap)> {
        let (fx, ix) = fixed_sset(&self.source, h)?;
        let (fy, iy) = fixed_sset(&self.target, h)?;
        let mut to_fixed = vec![usize::MAX; self.target.count()];
        for (new, v) in iy.values().iter().enumerate() {
            to_fixed[v.base] = new;
        }
        let values = ix
            .values()
            .iter()
            .map(|v| {
                let image = &self.values[v.base];
                SimplexRef {
                    base: to_fixed[image.base],
                    word: image.word.clone(),
                }
            })
            .collect();
        Ok((SMap::new(&fx, &fy, values)?, ix, iy))
    }
}

#[cfg(test)]
mod tests;
