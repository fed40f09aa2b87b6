//! Finite groups given by multiplication tables, their subgroups and
//! conjugation.
//!
//! Elements are dense identifiers `0..order` with `0` the identity.
//! `mul(a, b)` is the product `ab`; when a group comes from permutations,
//! `ab` acts as "first `b`, then `a`".

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order accepted by subgroup enumeration.
pub const MAX_SUBGROUP_ORDER: usize = 64;

/// Default bound on the closure of permutation generators.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

/// A finite group. Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order && self.0.mult == other.0.mult)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {})", self.order())
    }
}

impl Group {
    /// Builds a group from a square composition table, validating identity
    /// at `0`, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with_perms(table, None)
    }

    fn from_table_with_perms(
        table: Vec<Vec<usize>>,
        perms: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry ({i},{j}) = {v} is not an element"
                    )));
                }
                mult.push(v);
            }
        }
        for x in 0..n {
            if mult[x] != x || mult[x * n] != x {
                return Err(Error::InvalidGroup(format!(
                    "0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mult[x * n + y] == 0 && mult[y * n + x] == 0) {
                Some(y) => inv[x] = y,
                None => {
                    return Err(Error::InvalidGroup(format!("element {x} has no inverse")))
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mult[x * n + y];
                for z in 0..n {
                    if mult[xy * n + z] != mult[x * n + mult[y * n + z]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(Group(Arc::new(GroupData {
            order: n,
            mult,
            inv,
            perms,
        })))
    }

    /// Closes a set of permutations of `0..degree` under composition.
    /// Elements are numbered in lexicographic order of their image lists,
    /// so the identity is `0`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self> {
        for (k, p) in generators.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {k} has length {}, expected {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in p {
                if v >= degree || seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "generator {k} is not a permutation of 0..{degree}"
                    )));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = g.iter().map(|&i| p[i]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > max_order {
                        return Err(Error::OrderBound {
                            order: seen.len(),
                            bound: max_order,
                        });
                    }
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let ab: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                        index[ab.as_slice()]
                    })
                    .collect()
            })
            .collect();
        Self::from_table_with_perms(table, Some(perms))
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]]).expect("trivial group")
    }

    /// The cyclic group of order `n`, generated by the `n`-cycle.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[gen], usize::MAX).expect("cyclic group")
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n, &gens, usize::MAX).expect("symmetric group")
    }

    /// The dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl], usize::MAX).expect("dihedral group")
    }

    /// The direct product, realised on the disjoint union of the two
    /// permutation domains (or on the regular representations).
    pub fn direct_product(a: &Group, b: &Group) -> Self {
        let pa = a.permutation_rep();
        let pb = b.permutation_rep();
        let (da, db) = (pa[0].len(), pb[0].len());
        let mut gens = Vec::new();
        for p in pa.iter().skip(1) {
            gens.push(p.iter().copied().chain(da..da + db).collect());
        }
        for p in pb.iter().skip(1) {
            gens.push((0..da).chain(p.iter().map(|&i| i + da)).collect());
        }
        Self::from_permutations(da + db, &gens, usize::MAX).expect("direct product")
    }

    /// Permutations realising the group, falling back to the left regular
    /// representation for table-defined groups.
    pub fn permutation_rep(&self) -> Vec<Vec<usize>> {
        match &self.0.perms {
            Some(p) => p.clone(),
            None => (0..self.order())
                .map(|g| (0..self.order()).map(|x| self.mul(g, x)).collect())
                .collect(),
        }
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.0.perms.as_deref()
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mult[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a]
    }

    /// `a⁻¹ x a`.
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.inv(a), self.mul(x, a))
    }

    /// Rows of the composition table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|a| self.0.mult[a * n..(a + 1) * n].to_vec())
            .collect()
    }

    /// A generating set chosen greedily in identifier order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[0] = true;
        for x in self.elements() {
            if !span[x] {
                gens.push(x);
                span = self.closure_mask(&gens);
            }
        }
        gens
    }

    fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// Every subgroup exactly once, sorted by order and then by the
    /// lexicographic order of member lists.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        let n = self.order();
        if n > MAX_SUBGROUP_ORDER {
            return Err(Error::OrderBound {
                order: n,
                bound: MAX_SUBGROUP_ORDER,
            });
        }
        let to_mask = |inside: &[bool]| -> u64 {
            inside
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u64, |m, (i, _)| m | (1u64 << i))
        };
        let cyclic: BTreeSet<u64> = self
            .elements()
            .map(|x| to_mask(&self.closure_mask(&[x])))
            .collect();
        let mut found: BTreeSet<u64> = cyclic.clone();
        let mut frontier: Vec<u64> = cyclic.iter().copied().collect();
        while let Some(s) = frontier.pop() {
            for &c in &cyclic {
                if s & c == c {
                    continue;
                }
                let gens: Vec<usize> = (0..n).filter(|&i| (s | c) >> i & 1 == 1).collect();
                let joined = to_mask(&self.closure_mask(&gens));
                if found.insert(joined) {
                    frontier.push(joined);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|m| {
                let members = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                Subgroup::new_unchecked(self.clone(), members)
            })
            .collect();
        subs.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().cmp(b.members()))
        });
        Ok(subs)
    }
}

/// A subgroup, stored as its sorted member list.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Group,
    members: Vec<usize>,
    inside: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl Subgroup {
    fn new_unchecked(group: Group, members: Vec<usize>) -> Self {
        let mut inside = vec![false; group.order()];
        for &m in &members {
            inside[m] = true;
        }
        Subgroup {
            group,
            members,
            inside,
        }
    }

    /// Validates that `members` is a subgroup of `group`.
    pub fn from_members(group: &Group, members: &[usize]) -> Result<Self> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&m) = sorted.iter().find(|&&m| m >= group.order()) {
            return Err(Error::InvalidSubgroup(format!("{m} is not an element")));
        }
        if sorted.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("identity missing".into()));
        }
        let sub = Self::new_unchecked(group.clone(), sorted);
        for &a in &sub.members {
            if !sub.contains(group.inv(a)) {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sub.members {
                if !sub.contains(group.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under products at ({a},{b})"
                    )));
                }
            }
        }
        Ok(sub)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[usize]) -> Result<Self> {
        if let Some(&m) = gens.iter().find(|&&m| m >= group.order()) {
            return Err(Error::InvalidSubgroup(format!("{m} is not an element")));
        }
        let inside = group.closure_mask(gens);
        let members = (0..group.order()).filter(|&i| inside[i]).collect();
        Ok(Self::new_unchecked(group.clone(), members))
    }

    pub fn trivial(group: &Group) -> Self {
        Self::new_unchecked(group.clone(), vec![0])
    }

    pub fn whole(group: &Group) -> Self {
        Self::new_unchecked(group.clone(), group.elements().collect())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.inside.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.iter().all(|&m| other.contains(m))
    }

    /// `a⁻¹ H a`.
    pub fn conjugate(&self, a: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.group.conj(h, a)).collect();
        members.sort_unstable();
        Self::new_unchecked(self.group.clone(), members)
    }

    /// Whether `a⁻¹ H a ⊆ K` for `H = self`.
    pub fn conjugates_into(&self, a: usize, k: &Subgroup) -> bool {
        self.members.iter().all(|&h| k.contains(self.group.conj(h, a)))
    }
}

/// The least `a` (by identifier) with `a⁻¹ H a ⊆ K`, searched exhaustively.
pub fn conjugating_element(h: &Subgroup, k: &Subgroup) -> Result<Option<usize>> {
    if h.group != k.group {
        return Err(Error::MismatchedGroups);
    }
    if h.order() > k.order() || !k.order().is_multiple_of(h.order()) {
        return Ok(None);
    }
    Ok(h.group.elements().find(|&a| h.conjugates_into(a, k)))
}

/// Whether `H` and `K` are conjugate subgroups.
pub fn are_conjugate(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    Ok(h.order() == k.order() && conjugating_element(h, k)?.is_some())
}
