//! The orbit category `O_F(G)`: objects `G/H` for `H` in a family `F`,
//! morphisms `R_a : G/H → G/K` sending `gH ↦ gaK` for cosets `aK` with
//! `a⁻¹Ha ⊆ K`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::gset::{Cosets, GMap, GSet};

/// `R_a : G/H → G/K`, with objects given by their index in the family and
/// `rep` the least element of `aK`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub source: usize,
    pub target: usize,
    pub rep: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitCategory {
    group: Group,
    family: Vec<Subgroup>,
    cosets: Vec<Cosets>,
    hom: Vec<Vec<Vec<usize>>>,
}

impl OrbitCategory {
    pub fn new(group: &Group, family: &[Subgroup]) -> Result<Self> {
        for (i, h) in family.iter().enumerate() {
            if h.group() != group {
                return Err(Error::InvalidOrbitCategory(format!(
                    "family member {i} is not a subgroup of the group"
                )));
            }
            if family[..i].contains(h) {
                return Err(Error::InvalidOrbitCategory(format!(
                    "family member {i} is listed twice"
                )));
            }
        }
        let cosets: Vec<Cosets> = family.iter().map(Cosets::new).collect();
        let hom = family
            .iter()
            .map(|h| {
                cosets
                    .iter()
                    .map(|ck| {
                        ck.reps()
                            .iter()
                            .copied()
                            .filter(|&a| h.conjugates_into(a, ck.subgroup()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(OrbitCategory {
            group: group.clone(),
            family: family.to_vec(),
            cosets,
            hom,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn family(&self) -> &[Subgroup] {
        &self.family
    }

    pub fn object_count(&self) -> usize {
        self.family.len()
    }

    pub fn subgroup(&self, object: usize) -> &Subgroup {
        &self.family[object]
    }

    pub fn object_of(&self, h: &Subgroup) -> Option<usize> {
        self.family.iter().position(|k| k == h)
    }

    pub fn trivial_object(&self) -> Option<usize> {
        self.family.iter().position(|k| k.is_trivial())
    }

    pub fn cosets(&self, object: usize) -> &Cosets {
        &self.cosets[object]
    }

    /// Coset representatives of the morphisms `G/H → G/K`, ascending.
    pub fn hom_reps(&self, source: usize, target: usize) -> &[usize] {
        &self.hom[source][target]
    }

    pub fn hom(&self, source: usize, target: usize) -> Vec<OrbitMorphism> {
        self.hom[source][target]
            .iter()
            .map(|&rep| OrbitMorphism { source, target, rep })
            .collect()
    }

    /// Position of a morphism inside its hom-set.
    pub fn hom_position(&self, m: &OrbitMorphism) -> usize {
        self.hom[m.source][m.target]
            .binary_search(&m.rep)
            .expect("morphism belongs to its hom-set")
    }

    pub fn morphisms(&self) -> Vec<OrbitMorphism> {
        let n = self.object_count();
        (0..n)
            .flat_map(|s| (0..n).flat_map(move |t| self.hom(s, t)))
            .collect()
    }

    pub fn identity(&self, object: usize) -> OrbitMorphism {
        OrbitMorphism {
            source: object,
            target: object,
            rep: 0,
        }
    }

    /// The morphism `R_a : G/H → G/K`, canonicalised; `None` when
    /// `a⁻¹Ha ⊄ K`.
    pub fn morphism(&self, source: usize, target: usize, a: usize) -> Option<OrbitMorphism> {
        let k = &self.cosets[target];
        if !self.family[source].conjugates_into(a, k.subgroup()) {
            return None;
        }
        Some(OrbitMorphism {
            source,
            target,
            rep: k.rep(k.index_of(a)),
        })
    }

    /// `second ∘ first`: `R_b ∘ R_a = R_{ab}`.
    pub fn compose(&self, second: &OrbitMorphism, first: &OrbitMorphism) -> Result<OrbitMorphism> {
        if first.target != second.source {
            return Err(Error::NotComposable(format!(
                "first ends at object {}, second starts at object {}",
                first.target, second.source
            )));
        }
        let ab = self.group.mul(first.rep, second.rep);
        self.morphism(first.source, second.target, ab).ok_or_else(|| {
            Error::Verification("composite does not satisfy the conjugation condition".into())
        })
    }

    pub fn coset_gset(&self, object: usize) -> GSet {
        self.cosets[object].gset()
    }

    /// The G-map `gH ↦ gaK` realised by a morphism.
    pub fn realize(&self, m: &OrbitMorphism) -> GMap {
        let src = &self.cosets[m.source];
        let tgt = &self.cosets[m.target];
        let values = src
            .reps()
            .iter()
            .map(|&g| tgt.index_of(self.group.mul(g, m.rep)))
            .collect();
        GMap::new(&src.gset(), &tgt.gset(), values).expect("R_a is equivariant")
    }

    /// One line per ordered pair of objects listing the morphism
    /// representatives, followed by the composition table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let n = self.object_count();
        let _ = writeln!(out, "orbit category: |G| = {}, {} objects", self.group.order(), n);
        for (i, h) in self.family.iter().enumerate() {
            let _ = writeln!(out, "  object {i}: G/{h}  (|G/H| = {})", h.index());
        }
        for s in 0..n {
            for t in 0..n {
                let _ = writeln!(out, "  hom({s},{t}) = {:?}", self.hom[s][t]);
            }
        }
        let _ = writeln!(out, "composition (second ∘ first):");
        for f in self.morphisms() {
            for s in self.morphisms().iter().filter(|s| s.source == f.target) {
                let c = self.compose(s, &f).expect("composable");
                let _ = writeln!(
                    out,
                    "  R_{}:{}->{} ∘ R_{}:{}->{} = R_{}",
                    s.rep, s.source, s.target, f.rep, f.source, f.target, c.rep
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> OrbitCategoryJson {
        let n = self.object_count();
        let mut hom = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                hom.insert(format!("{s},{t}"), self.hom[s][t].clone());
            }
        }
        OrbitCategoryJson {
            objects: self.family.iter().map(|h| h.members().to_vec()).collect(),
            hom,
        }
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct OrbitCategoryJson {
    pub objects: Vec<Vec<usize>>,
    pub hom: BTreeMap<String, Vec<usize>>,
}
