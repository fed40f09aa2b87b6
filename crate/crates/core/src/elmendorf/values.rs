//! The value categories: finite sets, finite simplicial sets, chain
//! complexes over a ring, and the arrow poset `0 → 1`.

use crate::chain::{homology, invariants, render_homology, ChainComplex, ChainMap, EqChainComplex};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::gset::GSet;
use crate::linalg::{self, Matrix, Ring};
use crate::simplicial::{fixed_sset, gtensor, gtensor_id, GSSet, SMap, SimplexRef};

use super::{GObject, ValueCategory};

/// A function between finite sets `{0..source} → {0..target}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMap {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FinSet;

impl FinSet {
    pub fn gobject(x: &GSet) -> GObject<FinSet> {
        let action = x
            .action_table()
            .iter()
            .map(|row| FinMap {
                source: x.size(),
                target: x.size(),
                values: row.clone(),
            })
            .collect();
        GObject::new(&FinSet, x.group(), x.size(), action).expect("G-sets are G-objects")
    }
}

impl ValueCategory for FinSet {
    type Obj = usize;
    type Mor = FinMap;

    fn name(&self) -> String {
        "FinSet".into()
    }

    fn describe(&self, a: &usize) -> String {
        format!("{a} points")
    }

    fn mor_source(&self, f: &FinMap) -> usize {
        f.source
    }

    fn mor_target(&self, f: &FinMap) -> usize {
        f.target
    }

    fn identity(&self, a: &usize) -> FinMap {
        FinMap {
            source: *a,
            target: *a,
            values: (0..*a).collect(),
        }
    }

    fn compose(&self, second: &FinMap, first: &FinMap) -> Result<FinMap> {
        if first.target != second.source {
            return Err(Error::NotComposable("finite set maps".into()));
        }
        Ok(FinMap {
            source: first.source,
            target: second.target,
            values: first.values.iter().map(|&x| second.values[x]).collect(),
        })
    }

    fn is_iso(&self, f: &FinMap) -> bool {
        let mut hit = vec![false; f.target];
        f.source == f.target && f.values.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    fn copower(&self, n: usize, c: &usize) -> usize {
        n * c
    }

    fn copower_map(&self, f: &[usize], m: usize, c: &usize) -> FinMap {
        FinMap {
            source: f.len() * c,
            target: m * c,
            values: f.iter().flat_map(|&j| (0..*c).map(move |x| j * c + x)).collect(),
        }
    }

    fn fixed(&self, x: &GObject<Self>, h: &Subgroup) -> Result<(usize, FinMap)> {
        let points: Vec<usize> = (0..x.carrier)
            .filter(|&p| h.members().iter().all(|&g| x.action[g].values[p] == p))
            .collect();
        Ok((
            points.len(),
            FinMap {
                source: points.len(),
                target: x.carrier,
                values: points,
            },
        ))
    }

    fn lift(&self, incl: &FinMap, f: &FinMap) -> Result<FinMap> {
        let mut inverse = vec![usize::MAX; incl.target];
        for (a, &y) in incl.values.iter().enumerate() {
            inverse[y] = a;
        }
        let values = f
            .values
            .iter()
            .map(|&y| match inverse[y] {
                usize::MAX => Err(Error::Verification(format!("point {y} is outside the subobject"))),
                a => Ok(a),
            })
            .collect::<Result<_>>()?;
        Ok(FinMap {
            source: f.source,
            target: incl.source,
            values,
        })
    }
}

/// Finite simplicial sets; objects are plain (trivial-group) [`GSSet`]s.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinSSet;

impl FinSSet {
    pub fn gobject(x: &GSSet) -> GObject<FinSSet> {
        let carrier = x.underlying();
        let action = x
            .action_table()
            .iter()
            .map(|row| SMap::from_ids(&carrier, &carrier, row).expect("automorphism"))
            .collect();
        GObject::new(&FinSSet, x.group(), carrier, action).expect("G-simplicial sets are G-objects")
    }

    pub fn to_gsset(x: &GObject<FinSSet>) -> Result<GSSet> {
        let action = x
            .action
            .iter()
            .map(|a| {
                a.values()
                    .iter()
                    .map(|v| {
                        if v.is_degenerate() {
                            Err(Error::InvalidSSet("automorphism sends a simplex to a degenerate one".into()))
                        } else {
                            Ok(v.base)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        x.carrier.with_action(&x.group, action)
    }
}

impl ValueCategory for FinSSet {
    type Obj = GSSet;
    type Mor = SMap;

    fn name(&self) -> String {
        "FinSSet".into()
    }

    fn describe(&self, a: &GSSet) -> String {
        let top = a.top_dim().map_or(0, |d| d + 1);
        let counts: Vec<usize> = (0..top).map(|n| a.count_of_dim(n)).collect();
        format!("nondegenerate simplices per dimension {counts:?}")
    }

    fn mor_source(&self, f: &SMap) -> GSSet {
        f.source().clone()
    }

    fn mor_target(&self, f: &SMap) -> GSSet {
        f.target().clone()
    }

    fn identity(&self, a: &GSSet) -> SMap {
        SMap::identity(a)
    }

    fn compose(&self, second: &SMap, first: &SMap) -> Result<SMap> {
        second.after(first)
    }

    fn is_iso(&self, f: &SMap) -> bool {
        f.is_isomorphism()
    }

    fn copower(&self, n: usize, c: &GSSet) -> GSSet {
        gtensor(&GSet::trivial(&Group::trivial(), n), c)
    }

    fn copower_map(&self, f: &[usize], m: usize, c: &GSSet) -> SMap {
        let n = f.len();
        let source = self.copower(n, c);
        let target = self.copower(m, c);
        let mut ids = vec![0; source.count()];
        for (i, &j) in f.iter().enumerate() {
            for x in 0..c.count() {
                ids[gtensor_id(n, c, i, x)] = gtensor_id(m, c, j, x);
            }
        }
        SMap::from_ids(&source, &target, &ids).expect("copower map")
    }

    fn fixed(&self, x: &GObject<Self>, h: &Subgroup) -> Result<(GSSet, SMap)> {
        let gs = FinSSet::to_gsset(x)?;
        fixed_sset(&gs, h)
    }

    fn lift(&self, incl: &SMap, f: &SMap) -> Result<SMap> {
        let mut inverse = vec![usize::MAX; incl.target().count()];
        for (a, v) in incl.values().iter().enumerate() {
            inverse[v.base] = a;
        }
        let values = f
            .values()
            .iter()
            .map(|v| match inverse[v.base] {
                usize::MAX => Err(Error::Verification(format!("simplex {} is outside the subobject", v.base))),
                a => Ok(SimplexRef {
                    base: a,
                    word: v.word.clone(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        SMap::new(f.source(), incl.source(), values)
    }
}

/// Chain complexes over a fixed ring.
#[derive(Clone, Copy, Debug)]
pub struct Chain(pub Ring);

impl Chain {
    pub fn gobject(x: &EqChainComplex) -> GObject<Chain> {
        let c = x.complex();
        let action = x
            .group()
            .elements()
            .map(|g| {
                let maps = (0..c.len()).map(|n| x.rep(g, n)).collect();
                ChainMap::new(c, c, maps).expect("representations commute with d")
            })
            .collect();
        GObject::new(&Chain(x.ring()), x.group(), c.clone(), action).expect("equivariant complexes are G-objects")
    }

    pub fn to_eq(x: &GObject<Chain>) -> Result<EqChainComplex> {
        let rep = x.action.iter().map(|f| f.components().to_vec()).collect();
        EqChainComplex::new(x.carrier.clone(), &x.group, rep)
    }
}

impl ValueCategory for Chain {
    type Obj = ChainComplex;
    type Mor = ChainMap;

    fn name(&self) -> String {
        format!("Ch({})", self.0)
    }

    fn describe(&self, a: &ChainComplex) -> String {
        let h = render_homology(self.0, &homology(a)).trim_end().replace('\n', ", ");
        format!("ranks {:?}; {}", a.ranks(), if h.is_empty() { "acyclic (zero)".into() } else { h })
    }

    fn mor_source(&self, f: &ChainMap) -> ChainComplex {
        f.source().clone()
    }

    fn mor_target(&self, f: &ChainMap) -> ChainComplex {
        f.target().clone()
    }

    fn identity(&self, a: &ChainComplex) -> ChainMap {
        ChainMap::identity(a)
    }

    fn compose(&self, second: &ChainMap, first: &ChainMap) -> Result<ChainMap> {
        second.after(first)
    }

    fn mor_eq(&self, a: &ChainMap, b: &ChainMap) -> bool {
        let top = a.source().len().max(b.source().len());
        a.source().trimmed() == b.source().trimmed()
            && a.target().trimmed() == b.target().trimmed()
            && (0..top).all(|n| self.0.matrices_equal(&a.component(n), &b.component(n)))
    }

    fn is_iso(&self, f: &ChainMap) -> bool {
        f.is_isomorphism()
    }

    fn weak_equivalence(&self, f: &ChainMap) -> Option<bool> {
        Some(f.is_quasi_iso())
    }

    fn copower(&self, n: usize, c: &ChainComplex) -> ChainComplex {
        let ranks = c.ranks().iter().map(|r| r * n).collect();
        let d = (0..c.len()).map(|k| Matrix::block_diag(&vec![c.d(k); n])).collect();
        ChainComplex::new(c.ring(), ranks, d).expect("copower of a complex")
    }

    fn copower_map(&self, f: &[usize], m: usize, c: &ChainComplex) -> ChainMap {
        let source = self.copower(f.len(), c);
        let target = self.copower(m, c);
        let maps = (0..c.len())
            .map(|k| {
                let r = c.rank(k);
                let mut mat = Matrix::zeros(m * r, f.len() * r);
                for (i, &j) in f.iter().enumerate() {
                    mat.set_block(j * r, i * r, &Matrix::identity(r));
                }
                mat
            })
            .collect();
        ChainMap::new(&source, &target, maps).expect("copower map")
    }

    fn fixed(&self, x: &GObject<Self>, h: &Subgroup) -> Result<(ChainComplex, ChainMap)> {
        let inv = invariants(&Chain::to_eq(x)?, h)?;
        Ok((inv.complex, inv.inclusion))
    }

    fn lift(&self, incl: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        let ring = self.0;
        let maps = (0..f.source().len())
            .map(|n| {
                linalg::solve(ring, &incl.component(n), &f.component(n)).ok_or_else(|| {
                    Error::Verification(format!("map does not factor through the subcomplex in degree {n}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(f.source(), incl.source(), maps)
    }
}

/// The poset `0 → 1`; an object is `false` (0) or `true` (1) and a
/// morphism is a pair `(a, b)` with `a ≤ b`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ArrowPoset;

impl ValueCategory for ArrowPoset {
    type Obj = bool;
    type Mor = (bool, bool);

    fn name(&self) -> String {
        "0→1".into()
    }

    fn describe(&self, a: &bool) -> String {
        if *a { "1".into() } else { "0".into() }
    }

    fn mor_source(&self, f: &(bool, bool)) -> bool {
        f.0
    }

    fn mor_target(&self, f: &(bool, bool)) -> bool {
        f.1
    }

    fn identity(&self, a: &bool) -> (bool, bool) {
        (*a, *a)
    }

    fn compose(&self, second: &(bool, bool), first: &(bool, bool)) -> Result<(bool, bool)> {
        if first.1 != second.0 {
            return Err(Error::NotComposable("arrow poset morphisms".into()));
        }
        Ok((first.0, second.1))
    }

    fn is_iso(&self, f: &(bool, bool)) -> bool {
        f.0 == f.1
    }

    fn is_valid_mor(&self, f: &(bool, bool)) -> bool {
        !f.0 || f.1
    }

    fn copower(&self, n: usize, c: &bool) -> bool {
        n > 0 && *c
    }

    fn copower_map(&self, f: &[usize], m: usize, c: &bool) -> (bool, bool) {
        (self.copower(f.len(), c), self.copower(m, c))
    }

    fn fixed(&self, x: &GObject<Self>, _h: &Subgroup) -> Result<(bool, (bool, bool))> {
        Ok((x.carrier, (x.carrier, x.carrier)))
    }

    fn lift(&self, incl: &(bool, bool), f: &(bool, bool)) -> Result<(bool, bool)> {
        if f.0 && !incl.0 {
            return Err(Error::Verification("1 does not map to 0".into()));
        }
        Ok((f.0, incl.0))
    }
}
