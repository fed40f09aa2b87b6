//! Small named G-simplicial sets used by tests, reports and the command
//! line.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::simplicial::GSSet;

/// `C₂` swapping the two points of `∂Δ[1]`.
pub fn swap_points() -> GSSet {
    let g = Group::cyclic(2);
    GSSet::from_complex(&g, 2, &[], &[vec![0, 1], vec![1, 0]]).expect("swap points")
}

/// `C₂` acting on a subdivided triangle boundary: vertices `0, 1, 2, m`,
/// edges `[0,1] [0,2] [1,m] [2,m]`, the generator swapping 1 and 2.
pub fn swap_square() -> GSSet {
    let g = Group::cyclic(2);
    GSSet::from_complex(
        &g,
        4,
        &[vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]],
        &[vec![0, 1, 2, 3], vec![0, 2, 1, 3]],
    )
    .expect("swap square")
}

/// `C₂` acting on two edges `[0,1] [0,2]` by swapping their free ends;
/// the apex is fixed.
pub fn swap_wedge() -> GSSet {
    let g = Group::cyclic(2);
    GSSet::from_complex(&g, 3, &[vec![0, 1], vec![0, 2]], &[vec![0, 1, 2], vec![0, 2, 1]])
        .expect("swap wedge")
}

/// The hexagon: corners `0, 1, 2`, edge midpoints `3 = {0,1}`,
/// `4 = {1,2}`, `5 = {0,2}`, edges from each corner to its two midpoints.
/// `S₃` permutes the corners.
pub fn s3_hexagon() -> GSSet {
    let g = Group::symmetric(3);
    let mid = |a: usize, b: usize| match (a.min(b), a.max(b)) {
        (0, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    };
    let perms = g.permutations().expect("permutation group").to_vec();
    let action: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut v: Vec<usize> = (0..3).map(|i| p[i]).collect();
            v.extend([mid(p[0], p[1]), mid(p[1], p[2]), mid(p[0], p[2])]);
            v
        })
        .collect();
    GSSet::from_complex(
        &g,
        6,
        &[vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4], vec![0, 5], vec![2, 5]],
        &action,
    )
    .expect("hexagon")
}

/// The same hexagon with `C₃` rotating it freely.
pub fn c3_hexagon() -> GSSet {
    let g = Group::cyclic(3);
    let rot = |k: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..3).map(|i| (i + k) % 3).collect();
        v.extend((0..3).map(|i| 3 + (i + k) % 3));
        v
    };
    GSSet::from_complex(
        &g,
        6,
        &[vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4], vec![2, 5], vec![0, 5]],
        &[rot(0), rot(1), rot(2)],
    )
    .expect("rotating hexagon")
}

/// `S² = Δ[2]/∂Δ[2]`: one vertex and one triangle with degenerate edges.
pub fn sphere2() -> GSSet {
    use crate::simplicial::SimplexRef;
    let sv = SimplexRef { base: 0, word: vec![0] };
    GSSet::plain(vec![(0, vec![]), (2, vec![sv.clone(), sv.clone(), sv])]).expect("sphere")
}

/// Named plain simplicial sets: `point`, `empty`, `delta:n`, `boundary:n`,
/// `sphere2`, and the named `G`-examples `swap-points`, `swap-square`,
/// `swap-wedge`, `s3-hexagon`, `c3-hexagon`.
pub fn builtin(name: &str) -> Result<GSSet> {
    let parse_n = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad dimension in builtin {name:?}")))
    };
    match name {
        "point" => Ok(GSSet::point()),
        "empty" => Ok(GSSet::empty(&Group::trivial())),
        "sphere2" => Ok(sphere2()),
        "swap-points" => Ok(swap_points()),
        "swap-square" => Ok(swap_square()),
        "swap-wedge" => Ok(swap_wedge()),
        "s3-hexagon" => Ok(s3_hexagon()),
        "c3-hexagon" => Ok(c3_hexagon()),
        _ => {
            if let Some(n) = name.strip_prefix("delta:") {
                let n = parse_n(n)?;
                check_cap(n)?;
                Ok(GSSet::standard_simplex(n))
            } else if let Some(n) = name.strip_prefix("boundary:") {
                let n = parse_n(n)?;
                check_cap(n)?;
                Ok(GSSet::boundary(n))
            } else {
                Err(Error::Parse(format!("unknown builtin simplicial set {name:?}")))
            }
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    let cap = crate::simplicial::DEFAULT_DIM_CAP;
    if n > cap {
        Err(Error::DimensionCap { dim: n, cap })
    } else {
        Ok(())
    }
}
