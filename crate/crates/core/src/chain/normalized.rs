//! Normalized chains of G-simplicial sets, invariants and the prism
//! homotopy.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::{self, int, Matrix, Ring, Scalar};
use crate::simplicial::{fixed_sset, prism, GSSet, SMap, SimplexRef};

use super::{ChainComplex, ChainHomotopy, ChainMap, EqChainComplex};

/// `C(X; R)`: basis the nondegenerate simplices in identifier order,
/// `d x = Σ (−1)^i d_i x` with degenerate faces dropped, and the group
/// acting by permutation matrices.
pub fn normalized_chains(x: &GSSet, ring: Ring) -> EqChainComplex {
    let len = x.top_dim().map_or(0, |d| d + 1);
    let ranks: Vec<usize> = (0..len).map(|n| x.count_of_dim(n)).collect();
    let d = (0..len)
        .map(|n| {
            if n == 0 {
                return Matrix::zeros(0, ranks[0]);
            }
            let mut m = Matrix::zeros(ranks[n - 1], ranks[n]);
            for id in x.ids_of_dim(n) {
                for (i, f) in x.faces(id).iter().enumerate() {
                    if f.is_degenerate() {
                        continue;
                    }
                    let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                    m.add_to(x.position(f.base), x.position(id), &sign);
                }
            }
            ring.reduce_matrix(&m)
        })
        .collect();
    let complex = ChainComplex::new(ring, ranks, d).expect("normalized chains satisfy d∘d = 0");
    let rep = x
        .group()
        .elements()
        .map(|g| {
            (0..len)
                .map(|n| {
                    let perm: Vec<usize> = x.ids_of_dim(n).map(|id| x.position(x.act(g, id))).collect();
                    Matrix::permutation(&perm)
                })
                .collect()
        })
        .collect();
    EqChainComplex::new(complex, x.group(), rep).expect("simplicial actions give representations")
}

/// `C(f; R)`: nondegenerate images map to their basis element, degenerate
/// images to zero.
pub fn induced_map(f: &SMap, ring: Ring) -> ChainMap {
    let (x, y) = (f.source(), f.target());
    let cx = normalized_chains(x, ring);
    let cy = normalized_chains(y, ring);
    let maps = (0..cx.complex().len())
        .map(|n| {
            let mut m = Matrix::zeros(cy.complex().rank(n), cx.complex().rank(n));
            for id in x.ids_of_dim(n) {
                let v = f.value(id);
                if !v.is_degenerate() {
                    m.set(y.position(v.base), x.position(id), int(1));
                }
            }
            m
        })
        .collect();
    ChainMap::new(cx.complex(), cy.complex(), maps).expect("simplicial maps induce chain maps")
}

/// `C^H` with its basis and inclusion into `C`.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    /// Whether the basis consists of orbit sums of a permutation basis.
    pub orbit_sums: bool,
}

/// Degreewise invariants under `h`: orbit sums when `h` permutes the basis,
/// otherwise an exact kernel basis of the stacked `ρ(h) − id`.
pub fn invariants(c: &EqChainComplex, h: &Subgroup) -> Result<Invariants> {
    if h.group() != c.group() {
        return Err(Error::MismatchedGroups);
    }
    let ring = c.ring();
    let cx = c.complex();
    let mut bases = Vec::with_capacity(cx.len());
    let mut all_orbit_sums = true;
    for n in 0..cx.len() {
        let r = cx.rank(n);
        let perms: Option<Vec<Vec<usize>>> = h.members().iter().map(|&g| c.permutation(g, n)).collect();
        let basis = match perms {
            Some(perms) => {
                let mut seen = vec![false; r];
                let mut cols = Vec::new();
                for start in 0..r {
                    if seen[start] {
                        continue;
                    }
                    let mut col = vec![Scalar::zero(); r];
                    for p in &perms {
                        let y = p[start];
                        if !seen[y] {
                            seen[y] = true;
                            col[y] = int(1);
                        }
                    }
                    cols.push(col);
                }
                Matrix::from_columns(&cols, r)
            }
            None => {
                all_orbit_sums = false;
                let mut stacked = Matrix::zeros(0, r);
                for &g in h.members() {
                    stacked = stacked.vstack(&ring.sub(&c.rep(g, n), &Matrix::identity(r)));
                }
                linalg::kernel(ring, &stacked)
            }
        };
        bases.push(basis);
    }
    let ranks: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mut d = Vec::with_capacity(cx.len());
    for n in 0..cx.len() {
        if n == 0 {
            d.push(Matrix::zeros(0, ranks[0]));
            continue;
        }
        let image = ring.mul(&cx.d(n), &bases[n]);
        let m = linalg::solve(ring, &bases[n - 1], &image).ok_or_else(|| {
            Error::Verification(format!("differential does not preserve invariants in degree {n}"))
        })?;
        d.push(ring.reduce_matrix(&m));
    }
    let complex = ChainComplex::new(ring, ranks, d)?;
    let inclusion = ChainMap::new(&complex, cx, bases)?;
    Ok(Invariants {
        complex,
        inclusion,
        orbit_sums: all_orbit_sums,
    })
}

/// The comparison `C(X^H) → C(X)^H` sending a fixed simplex to itself.
pub fn fixed_point_comparison(x: &GSSet, h: &Subgroup, ring: Ring) -> Result<ChainMap> {
    let (fixed, incl) = fixed_sset(x, h)?;
    let inv = invariants(&normalized_chains(x, ring), h)?;
    let into_x = induced_map(&incl, ring);
    let cf = normalized_chains(&fixed, ring);
    let maps = (0..cf.complex().len())
        .map(|n| {
            linalg::solve(ring, &inv.inclusion.component(n), &into_x.component(n))
                .ok_or_else(|| Error::Verification(format!("fixed simplices are not invariant in degree {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(cf.complex(), &inv.complex, maps)
}

/// From a chain map `hc : C(X × Δ[1]) → D`, the homotopy
/// `φ_n(x) = Σ_j (−1)^j hc(s_j x, 0^{j+1}1^{n−j})` with
/// `d φ + φ d = hc∘C(end₁) − hc∘C(end₀)`, verified before returning.
pub fn prism_homotopy(hc: &ChainMap, x: &GSSet) -> Result<ChainHomotopy> {
    let ring = hc.ring();
    let p = prism(x);
    let cp = normalized_chains(&p.product, ring);
    if hc.source().trimmed() != cp.complex().trimmed() {
        return Err(Error::Shape("chain map does not start at the chains of the prism".into()));
    }
    let cx = normalized_chains(x, ring);
    let target = hc.target();
    let maps: Vec<Matrix> = (0..cx.complex().len())
        .map(|n| {
            let upper = hc.component(n + 1);
            let mut m = Matrix::zeros(target.rank(n + 1), cx.complex().rank(n));
            for id in x.ids_of_dim(n) {
                for j in 0..=n {
                    let shuffle = SimplexRef {
                        base: id,
                        word: vec![j],
                    };
                    let r = p.normalize(x, &shuffle, j + 1);
                    debug_assert!(!r.is_degenerate());
                    let col = p.product.position(r.base);
                    let sign = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    for row in 0..m.rows() {
                        let v = upper.get(row, col);
                        if !v.is_zero() {
                            m.add_to(row, x.position(id), &(v * &sign));
                        }
                    }
                }
            }
            ring.reduce_matrix(&m)
        })
        .collect();
    let phi = ChainHomotopy::new(cx.complex(), target, maps)?;
    let end1 = hc.after(&induced_map(&p.end1, ring))?;
    let end0 = hc.after(&induced_map(&p.end0, ring))?;
    if !phi.witnesses(&end1, &end0) {
        return Err(Error::Verification(
            "prism homotopy does not satisfy dφ + φd = hc∘end₁ − hc∘end₀".into(),
        ));
    }
    Ok(phi)
}
