//! Bounded, non-negatively graded chain complexes of finitely generated
//! free modules over `Z`, `Q` or `F_p`, with exact homology.

mod normalized;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::GSet;
use crate::linalg::{self, Matrix, Ring};

pub use normalized::{
    fixed_point_comparison, induced_map, invariants, normalized_chains, prism_homotopy, Invariants,
};

/// `C_0 ← C_1 ← ⋯ ← C_N`, with `d[n] : C_n → C_{n−1}` stored as a
/// `rank(n−1) × rank(n)` matrix (`d[0]` has no rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    d: Vec<Matrix>,
}

impl ChainComplex {
    /// Validates shapes and ring membership and checks `d∘d = 0`.
    pub fn new(ring: Ring, ranks: Vec<usize>, d: Vec<Matrix>) -> Result<Self> {
        if d.len() != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} differentials for {} degrees",
                d.len(),
                ranks.len()
            )));
        }
        let mut reduced = Vec::with_capacity(d.len());
        for (n, m) in d.iter().enumerate() {
            let rows = if n == 0 { 0 } else { ranks[n - 1] };
            if m.shape() != (rows, ranks[n]) {
                return Err(Error::InvalidComplex(format!(
                    "d_{n} has shape {:?}, expected ({rows}, {})",
                    m.shape(),
                    ranks[n]
                )));
            }
            reduced.push(ring.matrix_element(m)?);
        }
        let c = ChainComplex {
            ring,
            ranks,
            d: reduced,
        };
        for n in 2..c.ranks.len() {
            if !ring.is_zero_matrix(&ring.mul(&c.d[n - 1], &c.d[n])) {
                return Err(Error::InvalidComplex(format!("d_{} ∘ d_{n} ≠ 0", n - 1)));
            }
        }
        Ok(c)
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex {
            ring,
            ranks: Vec::new(),
            d: Vec::new(),
        }
    }

    /// `R⟨n⟩`: one copy of the ring in degree `n`.
    pub fn concentrated(ring: Ring, n: usize) -> Self {
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        Self::from_ranks_zero(ring, ranks)
    }

    /// `Dⁿ`: the ring in degrees `n` and `n − 1` with identity differential.
    /// `D⁰` is the zero complex.
    pub fn disk(ring: Ring, n: usize) -> Self {
        if n == 0 {
            return Self::zero(ring);
        }
        let mut c = Self::from_ranks_zero(ring, {
            let mut r = vec![0; n + 1];
            r[n - 1] = 1;
            r[n] = 1;
            r
        });
        c.d[n] = Matrix::identity(1);
        c
    }

    fn from_ranks_zero(ring: Ring, ranks: Vec<usize>) -> Self {
        let d = (0..ranks.len())
            .map(|n| Matrix::zeros(if n == 0 { 0 } else { ranks[n - 1] }, ranks[n]))
            .collect();
        ChainComplex { ring, ranks, d }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of stored degrees (`top + 1`).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n : C_n → C_{n−1}`, zero outside the stored range.
    pub fn d(&self, n: usize) -> Matrix {
        match self.d.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(if n == 0 { 0 } else { self.rank(n - 1) }, self.rank(n)),
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.d
    }

    /// The same complex padded with zero modules up to degree `top`.
    pub fn padded(&self, top: usize) -> Self {
        let mut c = self.clone();
        while c.ranks.len() <= top {
            let n = c.ranks.len();
            c.d.push(Matrix::zeros(if n == 0 { 0 } else { c.rank(n - 1) }, 0));
            c.ranks.push(0);
        }
        c
    }

    /// Drops trailing zero modules.
    pub fn trimmed(&self) -> Self {
        let mut c = self.clone();
        while c.ranks.last() == Some(&0) {
            c.ranks.pop();
            c.d.pop();
        }
        c
    }

    /// Same degrees and ranks, differentials compared over the ring.
    pub fn same_shape(&self, other: &ChainComplex) -> bool {
        self.ring == other.ring && self.trimmed().ranks == other.trimmed().ranks
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::InvalidRing("direct sum over different rings".into()));
        }
        let top = self.len().max(other.len());
        let ranks = (0..top).map(|n| self.rank(n) + other.rank(n)).collect();
        let d = (0..top)
            .map(|n| Matrix::block_diag(&[self.d(n), other.d(n)]))
            .collect();
        Ok(ChainComplex {
            ring: self.ring,
            ranks,
            d,
        })
    }
}

/// A chain complex with a representation of a finite group: `rep[g][n]`
/// is the invertible matrix of `g` on `C_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqChainComplex {
    complex: ChainComplex,
    group: Group,
    rep: Vec<Vec<Matrix>>,
}

impl EqChainComplex {
    pub fn new(complex: ChainComplex, group: &Group, rep: Vec<Vec<Matrix>>) -> Result<Self> {
        let ring = complex.ring;
        if rep.len() != group.order() {
            return Err(Error::InvalidComplex(format!(
                "representation lists {} elements, the group has {}",
                rep.len(),
                group.order()
            )));
        }
        let mut reduced = Vec::with_capacity(rep.len());
        for (g, mats) in rep.iter().enumerate() {
            if mats.len() != complex.len() {
                return Err(Error::InvalidComplex(format!(
                    "representation of {g} covers {} degrees, expected {}",
                    mats.len(),
                    complex.len()
                )));
            }
            let mut row = Vec::with_capacity(mats.len());
            for (n, m) in mats.iter().enumerate() {
                let r = complex.rank(n);
                if m.shape() != (r, r) {
                    return Err(Error::InvalidComplex(format!(
                        "representation of {g} in degree {n} has the wrong shape"
                    )));
                }
                let m = ring.matrix_element(m)?;
                if !linalg::is_invertible(ring, &m) {
                    return Err(Error::InvalidComplex(format!(
                        "representation of {g} in degree {n} is not invertible"
                    )));
                }
                row.push(m);
            }
            reduced.push(row);
        }
        let c = EqChainComplex {
            complex,
            group: group.clone(),
            rep: reduced,
        };
        for n in 0..c.complex.len() {
            let id = Matrix::identity(c.complex.rank(n));
            if !ring.matrices_equal(&c.rep[0][n], &id) {
                return Err(Error::InvalidComplex(format!("identity acts non-trivially in degree {n}")));
            }
            for g in group.elements() {
                for h in group.elements() {
                    let gh = group.mul(g, h);
                    if !ring.matrices_equal(&ring.mul(&c.rep[g][n], &c.rep[h][n]), &c.rep[gh][n]) {
                        return Err(Error::InvalidComplex(format!(
                            "representation is not a homomorphism at ({g},{h}) in degree {n}"
                        )));
                    }
                }
                if n >= 1 {
                    let lhs = ring.mul(&c.complex.d[n], &c.rep[g][n]);
                    let rhs = ring.mul(&c.rep[g][n - 1], &c.complex.d[n]);
                    if !ring.matrices_equal(&lhs, &rhs) {
                        return Err(Error::InvalidComplex(format!(
                            "element {g} does not commute with d_{n}"
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn trivial(complex: ChainComplex, group: &Group) -> Self {
        let rep = vec![
            (0..complex.len()).map(|n| Matrix::identity(complex.rank(n))).collect();
            group.order()
        ];
        EqChainComplex {
            complex,
            group: group.clone(),
            rep,
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring
    }

    /// Matrix of `g` on `C_n`; the empty matrix outside the stored range.
    pub fn rep(&self, g: usize, n: usize) -> Matrix {
        self.rep[g]
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::identity(self.complex.rank(n)))
    }

    /// The permutation of basis elements induced by `g` in degree `n`, if
    /// every group element acts by permutation matrices there.
    pub fn permutation(&self, g: usize, n: usize) -> Option<Vec<usize>> {
        self.rep(g, n).as_permutation()
    }

    pub fn is_permutation(&self) -> bool {
        self.group
            .elements()
            .all(|g| (0..self.complex.len()).all(|n| self.permutation(g, n).is_some()))
    }

    pub fn padded(&self, top: usize) -> Self {
        let complex = self.complex.padded(top);
        let rep = self
            .rep
            .iter()
            .map(|mats| {
                let mut mats = mats.clone();
                while mats.len() < complex.len() {
                    mats.push(Matrix::identity(0));
                }
                mats
            })
            .collect();
        EqChainComplex {
            complex,
            group: self.group.clone(),
            rep,
        }
    }

    /// `S ⊗ C`: one copy of `C` per point of `S`, with `g` sending the copy
    /// over `s` to the copy over `g s` through `ρ(g)`.
    pub fn gset_tensor(&self, s: &GSet) -> Result<Self> {
        if s.group() != &self.group {
            return Err(Error::MismatchedGroups);
        }
        let k = s.size();
        let c = &self.complex;
        let ranks: Vec<usize> = c.ranks.iter().map(|r| r * k).collect();
        let d = (0..c.len())
            .map(|n| Matrix::block_diag(&vec![c.d(n); k]))
            .collect();
        let complex = ChainComplex {
            ring: c.ring,
            ranks,
            d,
        };
        let rep = self
            .group
            .elements()
            .map(|g| {
                (0..c.len())
                    .map(|n| {
                        let r = c.rank(n);
                        let mut m = Matrix::zeros(r * k, r * k);
                        for p in 0..k {
                            m.set_block(s.act(g, p) * r, p * r, &self.rep(g, n));
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        EqChainComplex::new(complex, &self.group, rep)
    }
}

/// A family of matrices `f_n : C_n → D_{n+shift}`.
fn check_degreewise(
    source: &ChainComplex,
    target: &ChainComplex,
    maps: &[Matrix],
    shift: usize,
    what: &str,
) -> Result<Vec<Matrix>> {
    if source.ring != target.ring {
        return Err(Error::InvalidRing(format!("{what} between complexes over different rings")));
    }
    if maps.len() != source.len() {
        return Err(Error::Shape(format!(
            "{what} has {} components for {} source degrees",
            maps.len(),
            source.len()
        )));
    }
    let mut out = Vec::with_capacity(maps.len());
    for (n, m) in maps.iter().enumerate() {
        let expected = (target.rank(n + shift), source.rank(n));
        if m.shape() != expected {
            return Err(Error::Shape(format!(
                "{what} component {n} has shape {:?}, expected {expected:?}",
                m.shape()
            )));
        }
        out.push(source.ring.matrix_element(m)?);
    }
    Ok(out)
}

/// `f : C → D` with `d f = f d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<Matrix>) -> Result<Self> {
        let maps = check_degreewise(source, target, &maps, 0, "chain map")?;
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps,
        };
        let ring = source.ring;
        for n in 1..source.len().max(target.len()) {
            let lhs = ring.mul(&target.d(n), &f.component(n));
            let rhs = ring.mul(&f.component(n - 1), &source.d(n));
            if !ring.matrices_equal(&lhs, &rhs) {
                return Err(Error::NotChainMap(format!("d f ≠ f d in degree {n}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps: (0..c.len()).map(|n| Matrix::identity(c.rank(n))).collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps: (0..source.len())
                .map(|n| Matrix::zeros(target.rank(n), source.rank(n)))
                .collect(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    /// `f_n`, zero outside the stored range.
    pub fn component(&self, n: usize) -> Matrix {
        self.maps
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &[Matrix] {
        &self.maps
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target.trimmed() != self.source.trimmed() {
            return Err(Error::NotComposable("chain map endpoints differ".into()));
        }
        let ring = self.ring();
        Ok(ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            maps: (0..first.source.len())
                .map(|n| ring.mul(&self.component(n), &first.component(n)))
                .collect(),
        })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source.trimmed() != other.source.trimmed() || self.target.trimmed() != other.target.trimmed() {
            return Err(Error::Shape("difference of chain maps with different endpoints".into()));
        }
        let ring = self.ring();
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: (0..self.source.len())
                .map(|n| ring.sub(&self.component(n), &other.component(n)))
                .collect(),
        })
    }

    /// `ρ_D(g) f = f ρ_C(g)` for every group element and degree.
    pub fn is_equivariant(&self, source: &EqChainComplex, target: &EqChainComplex) -> bool {
        if source.group != target.group {
            return false;
        }
        let ring = self.ring();
        source.group.elements().all(|g| {
            (0..self.source.len()).all(|n| {
                ring.matrices_equal(
                    &ring.mul(&target.rep(g, n), &self.component(n)),
                    &ring.mul(&self.component(n), &source.rep(g, n)),
                )
            })
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let ring = self.ring();
        let top = self.source.len().max(self.target.len());
        (0..top).all(|n| {
            let m = self.component(n);
            m.is_square() && linalg::is_invertible(ring, &m)
        })
    }

    pub fn is_quasi_iso(&self) -> bool {
        homology(&cone(self)).iter().all(|h| h.is_zero())
    }
}

/// Degree `+1` maps `h_n : C_n → D_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<Matrix>,
}

impl ChainHomotopy {
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<Matrix>) -> Result<Self> {
        let maps = check_degreewise(source, target, &maps, 1, "chain homotopy")?;
        Ok(ChainHomotopy {
            source: source.clone(),
            target: target.clone(),
            maps,
        })
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainHomotopy {
            source: source.clone(),
            target: target.clone(),
            maps: (0..source.len())
                .map(|n| Matrix::zeros(target.rank(n + 1), source.rank(n)))
                .collect(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: usize) -> Matrix {
        self.maps
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(n + 1), self.source.rank(n)))
    }

    pub fn components(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn components_mut(&mut self) -> &mut [Matrix] {
        &mut self.maps
    }

    /// `d h + h d` in degree `n`.
    pub fn boundary(&self, n: usize) -> Matrix {
        let ring = self.source.ring;
        let dh = ring.mul(&self.target.d(n + 1), &self.component(n));
        if n == 0 {
            return dh;
        }
        let hd = ring.mul(&self.component(n - 1), &self.source.d(n));
        ring.add(&dh, &hd)
    }

    /// Whether `d h + h d = f − g` in every degree.
    pub fn witnesses(&self, f: &ChainMap, g: &ChainMap) -> bool {
        let ring = self.source.ring;
        (0..self.source.len()).all(|n| {
            ring.matrices_equal(&self.boundary(n), &ring.sub(&f.component(n), &g.component(n)))
        })
    }

    pub fn is_equivariant(&self, source: &EqChainComplex, target: &EqChainComplex) -> bool {
        let ring = self.source.ring;
        source.group == target.group
            && source.group.elements().all(|g| {
                (0..self.source.len()).all(|n| {
                    ring.matrices_equal(
                        &ring.mul(&target.rep(g, n + 1), &self.component(n)),
                        &ring.mul(&self.component(n), &source.rep(g, n)),
                    )
                })
            })
    }
}

/// `H_n` as free rank plus torsion coefficients, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl HomologyGroup {
    /// `H_n = R^k + Z/a + ⋯` with `R` replaced by `ring`.
    pub fn render(&self, ring: &str) -> String {
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push(ring.to_string());
        } else if self.rank > 1 {
            parts.push(format!("{ring}^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("H_{} = {body}", self.degree)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("R"))
    }
}

/// Homology in every stored degree: Smith normal form over `Z`, rank over
/// fields.
pub fn homology(c: &ChainComplex) -> Vec<HomologyGroup> {
    let ring = c.ring;
    let ranks: Vec<usize> = (0..=c.len()).map(|n| linalg::rank(ring, &c.d(n))).collect();
    (0..c.len())
        .map(|n| {
            let cycles = c.rank(n) - ranks[n];
            let boundaries = ranks[n + 1];
            let torsion = if ring == Ring::Integers {
                linalg::invariant_factors(&c.d(n + 1))
                    .into_iter()
                    .map(|x| x.abs())
                    .filter(|x| !x.is_one())
                    .collect()
            } else {
                Vec::new()
            };
            HomologyGroup {
                degree: n,
                rank: cycles - boundaries,
                torsion,
            }
        })
        .collect()
}

/// One line per degree, e.g. `H_1 = R^2 + Z/2`, where `R` is the ring.
pub fn render_homology(ring: Ring, groups: &[HomologyGroup]) -> String {
    let mut out = String::new();
    let name = ring.to_string();
    for h in groups {
        out.push_str(&h.render(&name));
        out.push('\n');
    }
    out
}

/// Mapping cone: `cone_n = C_{n−1} ⊕ D_n`, `d(x, y) = (−d x, f x + d y)`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (c, d) = (&f.source, &f.target);
    let ring = c.ring;
    let top = (c.len() + 1).max(d.len());
    let ranks: Vec<usize> = (0..top)
        .map(|n| if n == 0 { 0 } else { c.rank(n - 1) } + d.rank(n))
        .collect();
    let diffs = (0..top)
        .map(|n| {
            let rows = if n == 0 { 0 } else { ranks[n - 1] };
            let mut m = Matrix::zeros(rows, ranks[n]);
            if n >= 1 {
                let c_prev = c.rank(n - 1);
                let c_prev2 = if n >= 2 { c.rank(n - 2) } else { 0 };
                if n >= 2 {
                    m.set_block(0, 0, &ring.neg(&c.d(n - 1)));
                }
                m.set_block(c_prev2, 0, &f.component(n - 1));
                m.set_block(c_prev2, c_prev, &d.d(n));
            }
            m
        })
        .collect();
    ChainComplex {
        ring,
        ranks,
        d: diffs,
    }
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    f.is_quasi_iso()
}
