//! The prism `X × Δ[1]`.
//!
//! An `m`-simplex of `Δ[1]` is a monotone map `[m] → [1]`, recorded here by
//! its threshold `k`: vertices below `k` go to 0, the rest to 1. A pair
//! `(a, k)` is nondegenerate exactly when `a` and the threshold share no
//! repeated position, which leaves two kinds: `(x, k)` with `x`
//! nondegenerate, and `(s_j x, j + 1)`.

use std::collections::HashMap;

use super::{GSSet, SMap, SimplexRef};

/// Label of a nondegenerate simplex of the prism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrismSimplex {
    pub simplex: SimplexRef,
    pub threshold: usize,
}

#[derive(Clone, Debug)]
pub struct Prism {
    pub product: GSSet,
    /// `X × {0} → X × Δ[1]`.
    pub end0: SMap,
    /// `X × {1} → X × Δ[1]`.
    pub end1: SMap,
    pub proj: SMap,
    labels: Vec<PrismSimplex>,
    index: HashMap<PrismSimplex, usize>,
}

impl Prism {
    pub fn label(&self, id: usize) -> &PrismSimplex {
        &self.labels[id]
    }

    /// Normal form of the pair `(a, k)`, where `a` has dimension `m` and
    /// `0 ≤ k ≤ m + 1`.
    pub fn normalize(&self, x: &GSSet, a: &SimplexRef, k: usize) -> SimplexRef {
        let (core, word) = strip(x, a, k);
        SimplexRef {
            base: self.index[&core],
            word,
        }
    }
}

fn strip(x: &GSSet, a: &SimplexRef, k: usize) -> (PrismSimplex, Vec<usize>) {
    let m = x.ref_dim(a);
    let common: Vec<usize> = a
        .word
        .iter()
        .copied()
        .filter(|&p| p < m && !(k >= 1 && p == k - 1))
        .collect();
    let mut a = a.clone();
    let mut k = k;
    for &p in &common {
        a = x.face(&a, p).expect("repeat position is a valid face");
        if p < k {
            k -= 1;
        }
    }
    (
        PrismSimplex {
            simplex: a,
            threshold: k,
        },
        common,
    )
}

pub fn prism(x: &GSSet) -> Prism {
    let top = x.top_dim().map_or(0, |d| d + 2);
    let mut labels = Vec::new();
    for m in 0..top {
        for id in x.ids_of_dim(m) {
            for k in 0..=m + 1 {
                labels.push(PrismSimplex {
                    simplex: SimplexRef::nondegenerate(id),
                    threshold: k,
                });
            }
        }
        if m >= 1 {
            for id in x.ids_of_dim(m - 1) {
                for j in 0..m {
                    labels.push(PrismSimplex {
                        simplex: SimplexRef {
                            base: id,
                            word: vec![j],
                        },
                        threshold: j + 1,
                    });
                }
            }
        }
    }
    let index: HashMap<PrismSimplex, usize> =
        labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let normal = |a: &SimplexRef, k: usize| {
        let (core, word) = strip(x, a, k);
        SimplexRef {
            base: index[&core],
            word,
        }
    };
    let simplices = labels
        .iter()
        .map(|l| {
            let m = x.ref_dim(&l.simplex);
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let a = x.face(&l.simplex, i).expect("face in range");
                        let k = if i < l.threshold { l.threshold - 1 } else { l.threshold };
                        normal(&a, k)
                    })
                    .collect()
            };
            (m, faces)
        })
        .collect();
    let action = x
        .group()
        .elements()
        .map(|g| {
            labels
                .iter()
                .map(|l| {
                    index[&PrismSimplex {
                        simplex: x.act_ref(g, &l.simplex),
                        threshold: l.threshold,
                    }]
                })
                .collect()
        })
        .collect();
    let product = GSSet::assemble(x.group(), simplices, action, None).expect("prism is simplicial");
    let end = |zero: bool| {
        let ids: Vec<usize> = (0..x.count())
            .map(|id| {
                let k = if zero { x.dim(id) + 1 } else { 0 };
                index[&PrismSimplex {
                    simplex: SimplexRef::nondegenerate(id),
                    threshold: k,
                }]
            })
            .collect();
        SMap::from_ids(x, &product, &ids).expect("prism end")
    };
    let end0 = end(true);
    let end1 = end(false);
    let proj = SMap::new(&product, x, labels.iter().map(|l| l.simplex.clone()).collect())
        .expect("prism projection");
    Prism {
        product,
        end0,
        end1,
        proj,
        labels,
        index,
    }
}
