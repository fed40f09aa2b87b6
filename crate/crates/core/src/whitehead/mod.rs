//! Hypotheses of the equivariant chain-level Whitehead theorem and explicit
//! equivariant homotopy-equivalence certificates.


use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::chain::{induced_map, invariants, normalized_chains, ChainHomotopy, ChainMap, EqChainComplex};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::{self, Matrix, Ring, Scalar};
use crate::simplicial::{check_f_cofibration, CofibrationFailure, SMap};

/// Default bound on the number of unknowns in the certificate system.
pub const DEFAULT_UNKNOWN_CAP: usize = 5000;

/// A homotopy inverse `g : D → C` of `f : C → D` with `s : fg ≃ id_D` and
/// `t : gf ≃ id_C`, all equivariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub g: ChainMap,
    pub s: ChainHomotopy,
    pub t: ChainHomotopy,
}

/// Re-checks every defining property of a certificate by exact arithmetic.
pub fn verify_certificate(cert: &Certificate, c: &EqChainComplex, d: &EqChainComplex, f: &ChainMap) -> bool {
    let (cc, dc) = (c.complex().trimmed(), d.complex().trimmed());
    let ends = |src: &crate::chain::ChainComplex, tgt: &crate::chain::ChainComplex, a, b| {
        src.trimmed() == a && tgt.trimmed() == b
    };
    if !ends(f.source(), f.target(), cc.clone(), dc.clone())
        || !ends(cert.g.source(), cert.g.target(), dc.clone(), cc.clone())
        || !ends(cert.s.source(), cert.s.target(), dc.clone(), dc.clone())
        || !ends(cert.t.source(), cert.t.target(), cc.clone(), cc.clone())
    {
        return false;
    }
    if ChainMap::new(cert.g.source(), cert.g.target(), cert.g.components().to_vec()).is_err() {
        return false;
    }
    let (Ok(fg), Ok(gf)) = (f.after(&cert.g), cert.g.after(f)) else {
        return false;
    };
    cert.g.is_equivariant(d, c)
        && cert.s.is_equivariant(d, d)
        && cert.t.is_equivariant(c, c)
        && cert.s.witnesses(&fg, &ChainMap::identity(cert.s.source()))
        && cert.t.witnesses(&gf, &ChainMap::identity(cert.t.source()))
}

/// A basis of the matrices `M : A_n → B_m` with `ρ_B(g) M = M ρ_A(g)`.
fn equivariant_basis(ring: Ring, a: &EqChainComplex, n: usize, b: &EqChainComplex, m: usize) -> Vec<Matrix> {
    let (rows, cols) = (b.complex().rank(m), a.complex().rank(n));
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let group = a.group();
    let perms: Option<Vec<(Vec<usize>, Vec<usize>)>> = group
        .elements()
        .map(|g| Some((b.permutation(g, m)?, a.permutation(g, n)?)))
        .collect();
    if let Some(perms) = perms {
        let mut seen = vec![false; rows * cols];
        let mut basis = Vec::new();
        for start in 0..rows * cols {
            if seen[start] {
                continue;
            }
            let mut mat = Matrix::zeros(rows, cols);
            let (i, j) = (start / cols, start % cols);
            for (pb, pa) in &perms {
                let k = pb[i] * cols + pa[j];
                if !seen[k] {
                    seen[k] = true;
                    mat.set(pb[i], pa[j], linalg::int(1));
                }
            }
            basis.push(mat);
        }
        return basis;
    }
    let mut system = Matrix::zeros(0, rows * cols);
    for g in group.generators() {
        let (rb, ra) = (b.rep(g, m), a.rep(g, n));
        let mut block = Matrix::zeros(rows * cols, rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let unknown = i * cols + j;
                for p in 0..rows {
                    let v = rb.get(p, i);
                    if !v.is_zero() {
                        block.add_to(p * cols + j, unknown, v);
                    }
                }
                for q in 0..cols {
                    let v = ra.get(j, q);
                    if !v.is_zero() {
                        block.add_to(i * cols + q, unknown, &-v);
                    }
                }
            }
        }
        system = system.vstack(&block);
    }
    let k = linalg::kernel(ring, &system);
    (0..k.cols())
        .map(|c| {
            let col = k.column(c);
            Matrix::from_rows(col.chunks(cols).map(|r| r.to_vec()).collect(), cols)
        })
        .collect()
}

struct Block {
    rows: usize,
    cols: usize,
    offset: usize,
    basis: Vec<Matrix>,
}

/// `sign · left · X · right` for the unknown block `X`.
struct Term<'a> {
    left: Matrix,
    block: &'a Block,
    right: Matrix,
    negate: bool,
}

/// Poses `dg = gd`, `fg − id = ds + sd`, `gf − id = dt + td` over the
/// equivariant matrices and solves them in one linear system.
pub fn certificate_search(c: &EqChainComplex, d: &EqChainComplex, f: &ChainMap) -> Result<Option<Certificate>> {
    certificate_search_capped(c, d, f, DEFAULT_UNKNOWN_CAP)
}

pub fn certificate_search_capped(
    c: &EqChainComplex,
    d: &EqChainComplex,
    f: &ChainMap,
    cap: usize,
) -> Result<Option<Certificate>> {
    let ring = c.ring();
    if c.group() != d.group() {
        return Err(Error::MismatchedGroups);
    }
    if d.ring() != ring || f.ring() != ring {
        return Err(Error::InvalidRing("complexes over different rings".into()));
    }
    if f.source().trimmed() != c.complex().trimmed() || f.target().trimmed() != d.complex().trimmed() {
        return Err(Error::Shape("chain map does not run between the given complexes".into()));
    }
    if !f.is_equivariant(c, d) {
        return Err(Error::InvalidGMap("chain map is not equivariant".into()));
    }
    let len = c.complex().len().max(d.complex().len()).max(1);
    let (cc, dc) = (c.complex().padded(len - 1), d.complex().padded(len - 1));
    let (c, d) = (c.padded(len - 1), d.padded(len - 1));
    let f = ChainMap::new(&cc, &dc, (0..len).map(|n| f.component(n)).collect())?;

    if f.is_isomorphism() {
        let inverse = (0..len)
            .map(|n| linalg::solve(ring, &f.component(n), &Matrix::identity(dc.rank(n))))
            .collect::<Option<Vec<_>>>();
        if let Some(inverse) = inverse {
            let cert = Certificate {
                g: ChainMap::new(&dc, &cc, inverse)?,
                s: ChainHomotopy::zero(&dc, &dc),
                t: ChainHomotopy::zero(&cc, &cc),
            };
            if verify_certificate(&cert, &c, &d, &f) {
                return Ok(Some(cert));
            }
        }
    }

    let mut offset = 0;
    let mut make = |a: &EqChainComplex, n: usize, b: &EqChainComplex, m: usize| {
        let basis = equivariant_basis(ring, a, n, b, m);
        let blk = Block {
            rows: b.complex().rank(m),
            cols: a.complex().rank(n),
            offset,
            basis,
        };
        offset += blk.basis.len();
        blk
    };
    let g: Vec<Block> = (0..len).map(|n| make(&d, n, &c, n)).collect();
    let s: Vec<Block> = (0..len).map(|n| make(&d, n, &d, n + 1)).collect();
    let t: Vec<Block> = (0..len).map(|n| make(&c, n, &c, n + 1)).collect();
    let unknowns = offset;
    if unknowns > cap {
        return Err(Error::SystemTooLarge { unknowns, cap });
    }

    let mut equations: Vec<(Vec<Term>, Matrix)> = Vec::new();
    let id = Matrix::identity;
    for n in 1..len {
        equations.push((
            vec![
                Term { left: cc.d(n), block: &g[n], right: id(dc.rank(n)), negate: false },
                Term { left: id(cc.rank(n - 1)), block: &g[n - 1], right: dc.d(n), negate: true },
            ],
            Matrix::zeros(cc.rank(n - 1), dc.rank(n)),
        ));
    }
    for n in 0..len {
        let mut terms = vec![
            Term { left: f.component(n), block: &g[n], right: id(dc.rank(n)), negate: false },
            Term { left: dc.d(n + 1), block: &s[n], right: id(dc.rank(n)), negate: true },
        ];
        if n > 0 {
            terms.push(Term { left: id(dc.rank(n)), block: &s[n - 1], right: dc.d(n), negate: true });
        }
        equations.push((terms, id(dc.rank(n))));
        let mut terms = vec![
            Term { left: id(cc.rank(n)), block: &g[n], right: f.component(n), negate: false },
            Term { left: cc.d(n + 1), block: &t[n], right: id(cc.rank(n)), negate: true },
        ];
        if n > 0 {
            terms.push(Term { left: id(cc.rank(n)), block: &t[n - 1], right: cc.d(n), negate: true });
        }
        equations.push((terms, id(cc.rank(n))));
    }

    let total_rows: usize = equations.iter().map(|(_, rhs)| rhs.rows() * rhs.cols()).sum();
    let mut a = Matrix::zeros(total_rows, unknowns);
    let mut b = Matrix::zeros(total_rows, 1);
    let mut row0 = 0;
    for (terms, rhs) in &equations {
        let width = rhs.cols();
        for term in terms {
            for (k, basis) in term.block.basis.iter().enumerate() {
                let mut product = ring.mul(&ring.mul(&term.left, basis), &term.right);
                if term.negate {
                    product = ring.neg(&product);
                }
                for (e, v) in product.entries().iter().enumerate() {
                    if !v.is_zero() {
                        a.add_to(row0 + e, term.block.offset + k, v);
                    }
                }
            }
        }
        for (e, v) in rhs.entries().iter().enumerate() {
            b.set(row0 + e, 0, v.clone());
        }
        row0 += rhs.rows() * width;
    }
    let a = ring.reduce_matrix(&a);

    let Some(x) = linalg::solve(ring, &a, &b) else {
        return Ok(None);
    };
    let assemble = |blk: &Block| {
        let mut m = Matrix::zeros(blk.rows, blk.cols);
        for (k, basis) in blk.basis.iter().enumerate() {
            let coeff: &Scalar = x.get(blk.offset + k, 0);
            if !coeff.is_zero() {
                m = ring.add(&m, &basis.scale(coeff));
            }
        }
        ring.reduce_matrix(&m)
    };
    let cert = Certificate {
        g: ChainMap::new(&dc, &cc, g.iter().map(assemble).collect())?,
        s: ChainHomotopy::new(&dc, &dc, s.iter().map(assemble).collect())?,
        t: ChainHomotopy::new(&cc, &cc, t.iter().map(assemble).collect())?,
    };
    if !verify_certificate(&cert, &c, &d, &f) {
        return Err(Error::Verification("solved certificate fails verification".into()));
    }
    Ok(Some(cert))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpaceIsotropy {
    pub ok: bool,
    pub strict: bool,
    /// A simplex whose stabilizer is not conjugate into the family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IsotropyWitness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsotropyWitness {
    pub simplex: usize,
    pub stabilizer: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Isotropy {
    pub ok: bool,
    pub strict: bool,
    pub source: SpaceIsotropy,
    pub target: SpaceIsotropy,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateSummary {
    pub verified: bool,
    pub g: Vec<Vec<Vec<String>>>,
    pub s: Vec<Vec<Vec<String>>>,
    pub t: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WhiteheadReport {
    pub ring: String,
    pub isotropy: Isotropy,
    pub hyp_a: BTreeMap<String, bool>,
    pub hyp_b: BTreeMap<String, bool>,
    pub certificate: Option<CertificateSummary>,
    /// Whether a certificate search was run.
    pub searched: bool,
    /// Hypotheses and isotropy hold but no certificate exists over the ring.
    pub escalate: bool,
}

impl WhiteheadReport {
    pub fn hyp_a_holds(&self) -> bool {
        self.hyp_a.values().all(|&b| b)
    }

    pub fn hyp_b_holds(&self) -> bool {
        self.hyp_b.values().all(|&b| b)
    }

    pub fn render_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!("whitehead check over {}\n", self.ring);
        out += &format!(
            "  isotropy in family: {} (strict membership: {})\n",
            yn(self.isotropy.ok),
            yn(self.isotropy.strict)
        );
        for (side, iso) in [("source", &self.isotropy.source), ("target", &self.isotropy.target)] {
            if let Some(w) = &iso.witness {
                out += &format!("    {side} simplex {} has stabilizer {:?}\n", w.simplex, w.stabilizer);
            }
        }
        out += &format!("  (a) invariants quasi-isomorphic: {}\n", yn(self.hyp_a_holds()));
        for (h, ok) in &self.hyp_a {
            out += &format!("    H = {h}: {}\n", yn(*ok));
        }
        out += &format!("  (b) fixed points quasi-isomorphic: {}\n", yn(self.hyp_b_holds()));
        for (h, ok) in &self.hyp_b {
            out += &format!("    H = {h}: {}\n", yn(*ok));
        }
        match (&self.certificate, self.searched) {
            (Some(c), _) => {
                out += &format!("  certificate: found (verified: {})\n", yn(c.verified));
                for (name, maps) in [("g", &c.g), ("s", &c.s), ("t", &c.t)] {
                    for (n, m) in maps.iter().enumerate() {
                        out += &format!("    {name}_{n} = {m:?}\n");
                    }
                }
            }
            (None, true) => out += "  certificate: none exists over this ring\n",
            (None, false) => out += "  certificate: not searched (no hypothesis holds)\n",
        }
        if self.escalate {
            out += "  ESCALATE: hypotheses hold but no certificate was found\n";
        }
        out
    }
}

fn space_isotropy(x: &crate::simplicial::GSSet, family: &[Subgroup]) -> Result<SpaceIsotropy> {
    let v = check_f_cofibration(&SMap::from_empty(x), family)?;
    let witness = match &v.failure {
        Some(CofibrationFailure::Isotropy { simplex, stabilizer }) => Some(IsotropyWitness {
            simplex: *simplex,
            stabilizer: stabilizer.members().to_vec(),
        }),
        _ => None,
    };
    Ok(SpaceIsotropy {
        ok: v.is_cofibration(),
        strict: v.strict,
        witness,
    })
}

fn render_matrices(ms: &[Matrix]) -> Vec<Vec<Vec<String>>> {
    ms.iter()
        .map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
        .collect()
}

/// Isotropy, hypothesis (a) through invariants of chains, hypothesis (b)
/// through chains of fixed points, and a certificate search when either
/// hypothesis holds.
pub fn whitehead_verify(f: &SMap, family: &[Subgroup], ring: Ring) -> Result<WhiteheadReport> {
    let (x, y) = (f.source(), f.target());
    if family.iter().any(|h| h.group() != x.group()) {
        return Err(Error::MismatchedGroups);
    }
    let source = space_isotropy(x, family)?;
    let target = space_isotropy(y, family)?;
    let isotropy = Isotropy {
        ok: source.ok && target.ok,
        strict: source.strict && target.strict,
        source,
        target,
    };

    let cx = normalized_chains(x, ring);
    let cy = normalized_chains(y, ring);
    let cf = induced_map(f, ring);

    let mut hyp_a = BTreeMap::new();
    let mut hyp_b = BTreeMap::new();
    for h in family {
        let ix = invariants(&cx, h)?;
        let iy = invariants(&cy, h)?;
        let through = cf.after(&ix.inclusion)?;
        let maps = (0..ix.complex.len())
            .map(|n| {
                linalg::solve(ring, &iy.inclusion.component(n), &through.component(n))
                    .ok_or_else(|| Error::Verification("equivariant map does not preserve invariants".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let fa = ChainMap::new(&ix.complex, &iy.complex, maps)?;
        hyp_a.insert(h.to_string(), fa.is_quasi_iso());

        let (fh, _, _) = f.restrict_to_fixed(h)?;
        hyp_b.insert(h.to_string(), induced_map(&fh, ring).is_quasi_iso());
    }

    let a_holds = hyp_a.values().all(|&b| b);
    let b_holds = hyp_b.values().all(|&b| b);
    let searched = a_holds || b_holds;
    let certificate = if searched {
        certificate_search(&cx, &cy, &cf)?.map(|cert| CertificateSummary {
            verified: verify_certificate(&cert, &cx, &cy, &cf),
            g: render_matrices(cert.g.components()),
            s: render_matrices(cert.s.components()),
            t: render_matrices(cert.t.components()),
        })
    } else {
        None
    };
    let escalate = searched && isotropy.ok && certificate.is_none();
    Ok(WhiteheadReport {
        ring: ring.to_string(),
        isotropy,
        hyp_a,
        hyp_b,
        certificate,
        searched,
        escalate,
    })
}
