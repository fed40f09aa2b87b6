use super::{GSSet, SMap};

/// Searches for an equivariant isomorphism `a → b` by backtracking over
/// nondegenerate simplices in dimension order.
pub fn find_isomorphism(a: &GSSet, b: &GSSet) -> Option<SMap> {
    if a.group() != b.group() || a.count() != b.count() || a.top_dim() != b.top_dim() {
        return None;
    }
    let top = a.top_dim().map_or(0, |d| d + 1);
    if (0..top).any(|n| a.count_of_dim(n) != b.count_of_dim(n)) {
        return None;
    }
    let mut assign = vec![usize::MAX; a.count()];
    let mut used = vec![false; b.count()];
    if extend(a, b, 0, &mut assign, &mut used) {
        Some(SMap::from_ids(a, b, &assign).expect("search produces a simplicial map"))
    } else {
        None
    }
}

fn extend(a: &GSSet, b: &GSSet, id: usize, assign: &mut [usize], used: &mut [bool]) -> bool {
    if id == a.count() {
        return true;
    }
    for cand in b.ids_of_dim(a.dim(id)) {
        if used[cand] || !compatible(a, b, id, cand, assign) {
            continue;
        }
        assign[id] = cand;
        used[cand] = true;
        if extend(a, b, id + 1, assign, used) {
            return true;
        }
        assign[id] = usize::MAX;
        used[cand] = false;
    }
    false
}

fn compatible(a: &GSSet, b: &GSSet, id: usize, cand: usize, assign: &[usize]) -> bool {
    let faces_match = a
        .faces(id)
        .iter()
        .zip(b.faces(cand))
        .all(|(f, g)| assign[f.base] == g.base && f.word == g.word);
    faces_match
        && a.group().elements().all(|g| {
            let gid = a.act(g, id);
            if gid == id {
                b.act(g, cand) == cand
            } else if gid < id {
                b.act(g, cand) == assign[gid]
            } else {
                true
            }
        })
}
