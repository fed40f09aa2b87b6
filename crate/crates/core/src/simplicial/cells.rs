//! Relative cell structures of monomorphisms `A → B` of G-simplicial sets.
//!
//! The nondegenerate simplices of `B` outside the image of `A` fall into
//! G-orbits; each orbit of `n`-simplices with stabilizer `G_x` is one cell
//! `G/G_x ⊗ Δ[n]` attached along `G/G_x ⊗ ∂Δ[n]`.

use crate::error::{Error, Result};
use crate::group::{are_conjugate, Subgroup};
use crate::gset::Cosets;

use super::{gtensor, gtensor_id, GSSet, SMap, SimplexRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// Least simplex of the orbit, as an id in `B`.
    pub simplex: usize,
    pub stabilizer: Subgroup,
    pub orbit: Vec<usize>,
    /// Faces of the representative, in `B`.
    pub attaching: Vec<SimplexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStructure {
    pub cells: Vec<Cell>,
}

impl CellStructure {
    pub fn of_dim(&self, n: usize) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.dim == n)
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Number of cells in each dimension up to the top one.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.top_dim().map_or(0, |d| d + 1);
        (0..top).map(|n| self.of_dim(n).count()).collect()
    }
}

pub fn cell_decomposition(f: &SMap) -> Result<CellStructure> {
    if let Some(x) = f.first_non_injective() {
        return Err(Error::InvalidSMap(format!("not injective at simplex {x}")));
    }
    let b = f.target();
    let mut seen = f.image_mask();
    let mut cells = Vec::new();
    for id in 0..b.count() {
        if seen[id] {
            continue;
        }
        let orbit = b.orbit(id);
        for &y in &orbit {
            seen[y] = true;
        }
        cells.push(Cell {
            dim: b.dim(id),
            simplex: id,
            stabilizer: b.stabilizer(id),
            orbit,
            attaching: b.faces(id).to_vec(),
        });
    }
    Ok(CellStructure { cells })
}

/// Nonempty subsets of `{0..n}` in the order used for `Δ[n]`.
fn vertex_lists(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u64..(1u64 << (n + 1)))
        .map(|mask| (0..=n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    all
}

/// Pushout of `S ← K → L` along the monomorphism `i : K → L`. Returns
/// `P` with the maps `S → P` and `L → P`.
pub fn pushout_along_mono(i: &SMap, phi: &SMap) -> Result<(GSSet, SMap, SMap)> {
    if i.source() != phi.source() {
        return Err(Error::InvalidSMap("pushout legs have different sources".into()));
    }
    if let Some(x) = i.first_non_injective() {
        return Err(Error::InvalidSMap(format!("pushout leg is not injective at simplex {x}")));
    }
    let (l, s) = (i.target(), phi.target());
    let mut preimage = vec![None; l.count()];
    for (x, v) in i.values().iter().enumerate() {
        preimage[v.base] = Some(x);
    }
    let top = l.top_dim().max(s.top_dim()).map_or(0, |d| d + 1);
    let mut from_s = vec![0; s.count()];
    let mut from_l = vec![usize::MAX; l.count()];
    let mut next = 0;
    for n in 0..top {
        for y in s.ids_of_dim(n) {
            from_s[y] = next;
            next += 1;
        }
        for y in l.ids_of_dim(n).filter(|&y| preimage[y].is_none()) {
            from_l[y] = next;
            next += 1;
        }
    }
    let l_value = |r: &SimplexRef| -> SimplexRef {
        match preimage[r.base] {
            None => SimplexRef {
                base: from_l[r.base],
                word: r.word.clone(),
            },
            Some(x) => {
                let v = phi.map_ref(&SimplexRef {
                    base: x,
                    word: r.word.clone(),
                });
                SimplexRef {
                    base: from_s[v.base],
                    word: v.word,
                }
            }
        }
    };
    let mut simplices = vec![(0, Vec::new()); next];
    for y in 0..s.count() {
        simplices[from_s[y]] = (
            s.dim(y),
            s.faces(y)
                .iter()
                .map(|f| SimplexRef {
                    base: from_s[f.base],
                    word: f.word.clone(),
                })
                .collect(),
        );
    }
    for y in (0..l.count()).filter(|&y| preimage[y].is_none()) {
        simplices[from_l[y]] = (l.dim(y), l.faces(y).iter().map(l_value).collect());
    }
    let action = s
        .group()
        .elements()
        .map(|g| {
            let mut row = vec![0; next];
            for y in 0..s.count() {
                row[from_s[y]] = from_s[s.act(g, y)];
            }
            for y in (0..l.count()).filter(|&y| preimage[y].is_none()) {
                row[from_l[y]] = from_l[l.act(g, y)];
            }
            row
        })
        .collect();
    let p = GSSet::assemble(s.group(), simplices, action, None)?;
    let s_to_p = SMap::from_ids(s, &p, &from_s)?;
    let l_to_p = SMap::new(
        l,
        &p,
        (0..l.count()).map(|y| l_value(&SimplexRef::nondegenerate(y))).collect(),
    )?;
    Ok((p, s_to_p, l_to_p))
}

/// Result of rebuilding `B` from `A` by attaching cells.
#[derive(Clone, Debug)]
pub struct Replay {
    pub space: GSSet,
    /// The comparison isomorphism onto `B`.
    pub comparison: SMap,
    /// Nondegenerate simplex count after each dimension is attached.
    pub stage_counts: Vec<usize>,
}

/// Attaches the cells dimension by dimension through pushouts, checking
/// after every stage that the result is `A ∪ Sk_n B`, and finally that
/// the comparison map onto `B` is an isomorphism.
pub fn replay(f: &SMap, cells: &CellStructure) -> Result<Replay> {
    if let Some(x) = f.first_non_injective() {
        return Err(Error::InvalidSMap(format!("not injective at simplex {x}")));
    }
    let b = f.target();
    let group = b.group();
    let mut stage = f.source().clone();
    let mut to_b: Vec<usize> = f.values().iter().map(|v| v.base).collect();
    let mut stage_counts = Vec::new();
    let top = b.top_dim().map_or(0, |d| d + 1);
    for n in 0..top {
        let mut b_to_stage = vec![usize::MAX; b.count()];
        for (p, &y) in to_b.iter().enumerate() {
            b_to_stage[y] = p;
        }
        let delta = GSSet::standard_simplex(n).with_trivial_action(group);
        let bdry = GSSet::boundary(n).with_trivial_action(group);
        let lists = vertex_lists(n);
        let mut l = GSSet::empty(group);
        let mut k = GSSet::empty(group);
        let mut incl: Vec<usize> = Vec::new();
        let mut attach: Vec<SimplexRef> = Vec::new();
        let mut tops: Vec<(usize, usize)> = Vec::new();
        for cell in cells.of_dim(n) {
            let cosets = Cosets::new(&cell.stabilizer);
            let orbit = cosets.gset();
            let lc = gtensor(&orbit, &delta);
            let kc = gtensor(&orbit, &bdry);
            let (l2, l_old, l_new) = l.disjoint_union(&lc);
            let (k2, k_old, k_new) = k.disjoint_union(&kc);
            let mut incl2 = vec![0; k2.count()];
            let mut attach2 = vec![SimplexRef::nondegenerate(0); k2.count()];
            for (x, &y) in incl.iter().enumerate() {
                incl2[k_old[x]] = l_old[y];
                attach2[k_old[x]] = attach[x].clone();
            }
            for q in 0..cosets.len() {
                let g = cosets.rep(q);
                for (t, list) in lists.iter().enumerate().take(bdry.count()) {
                    let kid = k_new[gtensor_id(cosets.len(), &bdry, q, t)];
                    incl2[kid] = l_new[gtensor_id(cosets.len(), &delta, q, t)];
                    let face = b.act_ref(g, &b.face_along(cell.simplex, list));
                    let base = b_to_stage[face.base];
                    if base == usize::MAX {
                        return Err(Error::Verification(format!(
                            "cell at simplex {} attaches outside the previous stage",
                            cell.simplex
                        )));
                    }
                    attach2[kid] = SimplexRef {
                        base,
                        word: face.word,
                    };
                }
                let top_id = l_new[gtensor_id(cosets.len(), &delta, q, delta.count() - 1)];
                tops.push((top_id, b.act(g, cell.simplex)));
            }
            let earlier = tops.len() - cosets.len();
            for t in tops.iter_mut().take(earlier) {
                t.0 = l_old[t.0];
            }
            l = l2;
            k = k2;
            incl = incl2;
            attach = attach2;
        }
        if !tops.is_empty() {
            let i = SMap::from_ids(&k, &l, &incl)?;
            let phi = SMap::new(&k, &stage, attach)?;
            let (p, s_to_p, l_to_p) = pushout_along_mono(&i, &phi)?;
            let mut next = vec![usize::MAX; p.count()];
            for (x, v) in s_to_p.values().iter().enumerate() {
                next[v.base] = to_b[x];
            }
            for (lid, y) in tops {
                next[l_to_p.value(lid).base] = y;
            }
            stage = p;
            to_b = next;
        }
        let mut expected = f.image_mask();
        for id in 0..b.count() {
            if b.dim(id) <= n {
                expected[id] = true;
            }
        }
        let mut hit = vec![false; b.count()];
        for &y in &to_b {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return Err(Error::Verification(format!(
                    "stage {n} does not embed in the target"
                )));
            }
        }
        if hit != expected {
            return Err(Error::Verification(format!(
                "stage {n} is not the union of the source with the {n}-skeleton"
            )));
        }
        stage_counts.push(stage.count());
    }
    let comparison = SMap::from_ids(&stage, b, &to_b)
        .map_err(|e| Error::Verification(format!("comparison map: {e}")))?;
    if !comparison.is_isomorphism() {
        return Err(Error::Verification("comparison map is not an isomorphism".into()));
    }
    Ok(Replay {
        space: stage,
        comparison,
        stage_counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofibrationFailure {
    /// The map is not injective at this source simplex.
    NotInjective { simplex: usize },
    /// This target simplex has a stabilizer outside the family.
    Isotropy { simplex: usize, stabilizer: Subgroup },
}

#[derive(Clone, Debug)]
pub struct CofibrationVerdict {
    pub failure: Option<CofibrationFailure>,
    /// Every cell stabilizer is literally a member of the family, not
    /// just conjugate to one.
    pub strict: bool,
    pub cells: Option<CellStructure>,
}

impl CofibrationVerdict {
    pub fn is_cofibration(&self) -> bool {
        self.failure.is_none()
    }
}

/// Decides whether `f` is a monomorphism whose new simplices all have
/// stabilizers conjugate to members of `family`.
pub fn check_f_cofibration(f: &SMap, family: &[Subgroup]) -> Result<CofibrationVerdict> {
    if family.iter().any(|h| h.group() != f.source().group()) {
        return Err(Error::MismatchedGroups);
    }
    if let Some(simplex) = f.first_non_injective() {
        return Ok(CofibrationVerdict {
            failure: Some(CofibrationFailure::NotInjective { simplex }),
            strict: false,
            cells: None,
        });
    }
    let cells = cell_decomposition(f)?;
    let b = f.target();
    let image = f.image_mask();
    let mut strict = true;
    for id in (0..b.count()).filter(|&id| !image[id]) {
        let stabilizer = b.stabilizer(id);
        if !family.contains(&stabilizer) {
            strict = false;
        }
        let mut conjugate = false;
        for h in family {
            if are_conjugate(&stabilizer, h)? {
                conjugate = true;
                break;
            }
        }
        if !conjugate {
            return Ok(CofibrationVerdict {
                failure: Some(CofibrationFailure::Isotropy { simplex: id, stabilizer }),
                strict: false,
                cells: Some(cells),
            });
        }
    }
    Ok(CofibrationVerdict {
        failure: None,
        strict,
        cells: Some(cells),
    })
}
