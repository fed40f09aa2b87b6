//! JSON file formats for groups, G-sets, G-simplicial sets, simplicial
//! maps, chain complexes and families, and JSON renderings of reports.
//!
//! Parse errors name the first offending field, e.g.
//! `field "faces"."3"[1]: face base 7 is not a simplex`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::chain::{ChainComplex, EqChainComplex, HomologyGroup};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{Group, Subgroup, DEFAULT_MAX_ORDER};
use crate::gset::GSet;
use crate::linalg::{Matrix, Ring, Scalar};
use crate::simplicial::{GSSet, SMap, SimplexRef};

fn field_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("field {path}: {msg}"))
}

fn with_path<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) if m.starts_with("field ") => Error::Parse(m),
        other => field_err(path, other),
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| field_err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| field_err(path, "expected a non-negative integer"))
}

fn uint_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| uint(x, &format!("{path}[{i}]")))
        .collect()
}

fn key_index(k: &str, path: &str) -> Result<usize> {
    k.parse::<usize>()
        .map_err(|_| field_err(&format!("{path}.{k:?}"), "key is not a non-negative integer"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| field_err(&format!("{path}.{key:?}"), "missing"))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(field_err(&format!("{path}.{k:?}"), "unknown field")),
        None => Ok(()),
    }
}

fn scalar(v: &Value, path: &str) -> Result<Scalar> {
    if let Some(i) = v.as_i64() {
        return Ok(BigRational::from_integer(BigInt::from(i)));
    }
    if let Some(s) = v.as_str() {
        let parsed = match s.split_once('/') {
            Some((n, d)) => n
                .trim()
                .parse::<BigInt>()
                .ok()
                .zip(d.trim().parse::<BigInt>().ok())
                .filter(|(_, d)| *d != BigInt::from(0))
                .map(|(n, d)| BigRational::new(n, d)),
            None => s.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
        };
        return parsed.ok_or_else(|| field_err(path, format!("{s:?} is not an integer or fraction")));
    }
    Err(field_err(path, "expected an integer or a string \"a/b\""))
}

fn scalar_json(x: &Scalar) -> Value {
    if x.is_integer() {
        let i = x.to_integer();
        match i64::try_from(&i) {
            Ok(small) => json!(small),
            Err(_) => json!(i.to_string()),
        }
    } else {
        json!(x.to_string())
    }
}

fn matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let rs = array(v, path)?;
    if rs.len() != rows {
        return Err(field_err(path, format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in rs.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let entries = array(r, &rp)?;
        if entries.len() != cols {
            return Err(field_err(&rp, format!("expected {cols} entries, found {}", entries.len())));
        }
        out.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| scalar(x, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out, cols))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
            .collect(),
    )
}

/// `{"order": n, "mult": [[...]]}` or `{"degree": d, "generators": [[perm], ...]}`.
pub fn parse_group(v: &Value) -> Result<Group> {
    let obj = object(v, "group")?;
    if obj.contains_key("mult") {
        reject_unknown(obj, &["order", "mult"], "")?;
        let rows = array(get(obj, "mult", "")?, "\"mult\"")?;
        let table = rows
            .iter()
            .enumerate()
            .map(|(i, r)| uint_list(r, &format!("\"mult\"[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(order) = obj.get("order") {
            let order = uint(order, "\"order\"")?;
            if order != table.len() {
                return Err(field_err("\"order\"", format!("{order} differs from the table size {}", table.len())));
            }
        }
        return with_path("\"mult\"", Group::from_table(table));
    }
    if obj.contains_key("generators") {
        reject_unknown(obj, &["degree", "generators"], "")?;
        let degree = uint(get(obj, "degree", "")?, "\"degree\"")?;
        let gens = array(get(obj, "generators", "")?, "\"generators\"")?
            .iter()
            .enumerate()
            .map(|(i, p)| uint_list(p, &format!("\"generators\"[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        return with_path("\"generators\"", Group::from_permutations(degree, &gens, DEFAULT_MAX_ORDER));
    }
    Err(field_err("\"mult\"", "missing (or give \"degree\" and \"generators\")"))
}

pub fn group_to_json(g: &Group) -> Value {
    json!({"order": g.order(), "mult": g.table()})
}

/// Fills a partial action `element → permutation` by closing the listed
/// elements under composition, `(gs)·x = g·(s·x)`.
fn close_action(group: &Group, size: usize, listed: BTreeMap<usize, Vec<usize>>, path: &str) -> Result<Vec<Vec<usize>>> {
    for (g, p) in &listed {
        let gp = format!("{path}.\"{g}\"");
        if *g >= group.order() {
            return Err(field_err(&gp, format!("{g} is not a group element")));
        }
        let mut seen = vec![false; size];
        if p.len() != size || p.iter().any(|&y| y >= size || std::mem::replace(&mut seen[y], true)) {
            return Err(field_err(&gp, "not a permutation of the underlying set"));
        }
    }
    if listed.keys().all(|&g| g == 0) {
        return Ok(vec![(0..size).collect(); group.order()]);
    }
    let mut act: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    act[0] = Some((0..size).collect());
    for (&g, p) in &listed {
        if g != 0 {
            act[g] = Some(p.clone());
        }
    }
    if let Some(p) = listed.get(&0) {
        if p.iter().enumerate().any(|(x, &y)| x != y) {
            return Err(field_err(&format!("{path}.\"0\""), "the identity must act trivially"));
        }
    }
    let mut queue: Vec<usize> = act.iter().enumerate().filter(|(_, a)| a.is_some()).map(|(g, _)| g).collect();
    while let Some(g) = queue.pop() {
        for (&s, ps) in &listed {
            let gs = group.mul(g, s);
            if act[gs].is_none() {
                let pg = act[g].clone().expect("known");
                act[gs] = Some((0..size).map(|x| pg[ps[x]]).collect());
                queue.push(gs);
            }
        }
    }
    act.into_iter()
        .enumerate()
        .map(|(g, a)| a.ok_or_else(|| field_err(path, format!("listed elements do not generate element {g}"))))
        .collect()
}

/// `{"size": n, "action": {"g": [perm], ...}}`; listing generators is enough.
pub fn parse_gset(v: &Value, group: &Group) -> Result<GSet> {
    let obj = object(v, "G-set")?;
    reject_unknown(obj, &["size", "action"], "")?;
    let size = uint(get(obj, "size", "")?, "\"size\"")?;
    let mut listed = BTreeMap::new();
    if let Some(a) = obj.get("action") {
        for (k, p) in object(a, "\"action\"")? {
            listed.insert(key_index(k, "\"action\"")?, uint_list(p, &format!("\"action\".{k:?}"))?);
        }
    }
    let act = close_action(group, size, listed, "\"action\"")?;
    with_path("\"action\"", GSet::new(group, size, act))
}

pub fn gset_to_json(x: &GSet) -> Value {
    let action: Map<String, Value> = x
        .action_table()
        .iter()
        .enumerate()
        .map(|(g, p)| (g.to_string(), json!(p)))
        .collect();
    json!({"size": x.size(), "action": action})
}

fn simplex_ref(v: &Value, path: &str) -> Result<SimplexRef> {
    let parts = array(v, path)?;
    if parts.len() != 2 {
        return Err(field_err(path, "expected [base, word]"));
    }
    Ok(SimplexRef {
        base: uint(&parts[0], &format!("{path}[0]"))?,
        word: uint_list(&parts[1], &format!("{path}[1]"))?,
    })
}

fn simplex_ref_json(r: &SimplexRef) -> Value {
    json!([r.base, r.word])
}

/// `{"dims": N, "simplices": {"n": [ids]}, "faces": {"id": [[base, word], ...]},
/// "action": {"g": {"id": id'}}}`. Identifiers are `0..count` in dimension
/// order, `dims` is the number of dimensions, identifiers missing from an
/// action entry are fixed, and listing generators is enough. A string
/// names a built-in space.
pub fn parse_gsset(v: &Value, group: &Group) -> Result<GSSet> {
    if let Some(name) = v.as_str() {
        return resolve_builtin(name, group);
    }
    let obj = object(v, "G-simplicial set")?;
    reject_unknown(obj, &["dims", "simplices", "faces", "action"], "")?;
    let by_dim = object(get(obj, "simplices", "")?, "\"simplices\"")?;
    let mut dims: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, ids) in by_dim {
        dims.insert(key_index(k, "\"simplices\"")?, uint_list(ids, &format!("\"simplices\".{k:?}"))?);
    }
    if let Some(d) = obj.get("dims") {
        let d = uint(d, "\"dims\"")?;
        if let Some((&top, _)) = dims.iter().next_back().filter(|(&n, _)| n >= d) {
            return Err(field_err("\"dims\"", format!("dimension {top} listed but dims is {d}")));
        }
    }
    let mut dim_of = Vec::new();
    for (&n, ids) in &dims {
        for (i, &id) in ids.iter().enumerate() {
            if id != dim_of.len() {
                return Err(field_err(
                    &format!("\"simplices\".\"{n}\"[{i}]"),
                    format!("expected identifier {} (identifiers run 0..count in dimension order)", dim_of.len()),
                ));
            }
            dim_of.push(n);
        }
    }
    let count = dim_of.len();
    let faces_obj = match obj.get("faces") {
        Some(f) => object(f, "\"faces\"")?.clone(),
        None => Map::new(),
    };
    for k in faces_obj.keys() {
        let id = key_index(k, "\"faces\"")?;
        if id >= count {
            return Err(field_err(&format!("\"faces\".{k:?}"), format!("{id} is not a simplex")));
        }
    }
    let mut simplices = Vec::with_capacity(count);
    for (id, &n) in dim_of.iter().enumerate() {
        let path = format!("\"faces\".\"{id}\"");
        let faces = match faces_obj.get(&id.to_string()) {
            Some(f) => array(f, &path)?
                .iter()
                .enumerate()
                .map(|(i, r)| simplex_ref(r, &format!("{path}[{i}]")))
                .collect::<Result<Vec<_>>>()?,
            None if n == 0 => Vec::new(),
            None => return Err(field_err(&path, "missing")),
        };
        simplices.push((n, faces));
    }
    let mut listed = BTreeMap::new();
    if let Some(a) = obj.get("action") {
        for (k, m) in object(a, "\"action\"")? {
            let g = key_index(k, "\"action\"")?;
            let mut p: Vec<usize> = (0..count).collect();
            for (from, to) in object(m, &format!("\"action\".{k:?}"))? {
                let path = format!("\"action\".{k:?}.{from:?}");
                let from = key_index(from, &format!("\"action\".{k:?}"))?;
                if from >= count {
                    return Err(field_err(&path, format!("{from} is not a simplex")));
                }
                p[from] = uint(to, &path)?;
            }
            listed.insert(g, p);
        }
    }
    let action = close_action(group, count, listed, "\"action\"")?;
    with_path("\"faces\"", GSSet::new(group, simplices, action))
}

fn resolve_builtin(name: &str, group: &Group) -> Result<GSSet> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    let x = fixtures::builtin(name)?;
    if x.group() == group {
        Ok(x)
    } else if x.group().order() == 1 {
        Ok(x.with_trivial_action(group))
    } else if group.order() == 1 {
        Ok(x)
    } else {
        Err(Error::Parse(format!("built-in {name:?} carries its own group, which differs from --group")))
    }
}

pub fn gsset_to_json(x: &GSSet) -> Value {
    let top = x.top_dim().map_or(0, |d| d + 1);
    let simplices: Map<String, Value> = (0..top)
        .map(|n| (n.to_string(), json!(x.ids_of_dim(n).collect::<Vec<_>>())))
        .collect();
    let faces: Map<String, Value> = (0..x.count())
        .filter(|&id| x.dim(id) > 0)
        .map(|id| (id.to_string(), Value::Array(x.faces(id).iter().map(simplex_ref_json).collect())))
        .collect();
    let action: Map<String, Value> = x
        .group()
        .elements()
        .skip(1)
        .map(|g| {
            let moved: Map<String, Value> = (0..x.count())
                .filter(|&id| x.act(g, id) != id)
                .map(|id| (id.to_string(), json!(x.act(g, id))))
                .collect();
            (g.to_string(), Value::Object(moved))
        })
        .collect();
    json!({"dims": top, "simplices": simplices, "faces": faces, "action": action})
}

/// `{"source": X, "target": Y, "values": {"id": [base, word]}}` with `X`,
/// `Y` G-simplicial set objects or built-in names.
pub fn parse_smap(v: &Value, group: &Group) -> Result<SMap> {
    let obj = object(v, "map")?;
    reject_unknown(obj, &["source", "target", "values"], "")?;
    let source = with_path("\"source\"", parse_gsset(get(obj, "source", "")?, group))?;
    let target = with_path("\"target\"", parse_gsset(get(obj, "target", "")?, group))?;
    let source = if source.group() != target.group() && source.group().order() == 1 {
        source.with_trivial_action(target.group())
    } else {
        source
    };
    let target = if source.group() != target.group() && target.group().order() == 1 {
        target.with_trivial_action(source.group())
    } else {
        target
    };
    parse_smap_values(get(obj, "values", "")?, &source, &target)
}

pub fn parse_smap_values(v: &Value, source: &GSSet, target: &GSSet) -> Result<SMap> {
    let vals = object(v, "\"values\"")?;
    for k in vals.keys() {
        let id = key_index(k, "\"values\"")?;
        if id >= source.count() {
            return Err(field_err(&format!("\"values\".{k:?}"), format!("{id} is not a source simplex")));
        }
    }
    let values = (0..source.count())
        .map(|id| {
            let path = format!("\"values\".\"{id}\"");
            let r = vals.get(&id.to_string()).ok_or_else(|| field_err(&path, "missing"))?;
            simplex_ref(r, &path)
        })
        .collect::<Result<Vec<_>>>()?;
    with_path("\"values\"", SMap::new(source, target, values))
}

pub fn smap_to_json(f: &SMap) -> Value {
    let values: Map<String, Value> = f
        .values()
        .iter()
        .enumerate()
        .map(|(id, r)| (id.to_string(), simplex_ref_json(r)))
        .collect();
    json!({"source": gsset_to_json(f.source()), "target": gsset_to_json(f.target()), "values": values})
}

/// `{"ring": "Z"|"Q"|"Fp:p", "ranks": [...], "d": {"n": [[..]]},
/// "rep": {"g": {"n": [[..]]}}}`; missing differentials are zero, missing
/// degrees of a listed element act as the identity, and listing
/// generators is enough.
pub fn parse_chain(v: &Value, group: &Group) -> Result<EqChainComplex> {
    let obj = object(v, "chain complex")?;
    reject_unknown(obj, &["ring", "ranks", "d", "rep"], "")?;
    let ring_name = get(obj, "ring", "")?
        .as_str()
        .ok_or_else(|| field_err("\"ring\"", "expected a string"))?;
    let ring: Ring = with_path("\"ring\"", ring_name.parse())?;
    let ranks = uint_list(get(obj, "ranks", "")?, "\"ranks\"")?;
    let d_obj = match obj.get("d") {
        Some(d) => object(d, "\"d\"")?.clone(),
        None => Map::new(),
    };
    for k in d_obj.keys() {
        let n = key_index(k, "\"d\"")?;
        if n == 0 || n >= ranks.len() {
            return Err(field_err(&format!("\"d\".{k:?}"), format!("no differential d_{n} for {} degrees", ranks.len())));
        }
    }
    let d = (0..ranks.len())
        .map(|n| {
            if n == 0 {
                return Ok(Matrix::zeros(0, ranks[0]));
            }
            let path = format!("\"d\".\"{n}\"");
            let m = match d_obj.get(&n.to_string()) {
                Some(m) => matrix(m, ranks[n - 1], ranks[n], &path)?,
                None => Matrix::zeros(ranks[n - 1], ranks[n]),
            };
            with_path(&path, ring.matrix_element(&m))
        })
        .collect::<Result<Vec<_>>>()?;
    let complex = with_path("\"d\"", ChainComplex::new(ring, ranks.clone(), d))?;

    let mut listed: BTreeMap<usize, Vec<Matrix>> = BTreeMap::new();
    if let Some(r) = obj.get("rep") {
        for (k, per_degree) in object(r, "\"rep\"")? {
            let g = key_index(k, "\"rep\"")?;
            if g >= group.order() {
                return Err(field_err(&format!("\"rep\".{k:?}"), format!("{g} is not a group element")));
            }
            let degrees = object(per_degree, &format!("\"rep\".{k:?}"))?;
            let mut mats: Vec<Matrix> = ranks.iter().map(|&r| Matrix::identity(r)).collect();
            for (nk, m) in degrees {
                let path = format!("\"rep\".{k:?}.{nk:?}");
                let n = key_index(nk, &format!("\"rep\".{k:?}"))?;
                if n >= ranks.len() {
                    return Err(field_err(&path, format!("degree {n} is out of range")));
                }
                mats[n] = with_path(&path, ring.matrix_element(&matrix(m, ranks[n], ranks[n], &path)?))?;
            }
            listed.insert(g, mats);
        }
    }
    if listed.keys().all(|&g| g == 0) {
        return with_path("\"rep\"", Ok(EqChainComplex::trivial(complex, group)));
    }
    let mut rep: Vec<Option<Vec<Matrix>>> = vec![None; group.order()];
    rep[0] = Some(ranks.iter().map(|&r| Matrix::identity(r)).collect());
    for (&g, m) in &listed {
        rep[g] = Some(m.clone());
    }
    let mut queue: Vec<usize> = rep.iter().enumerate().filter(|(_, r)| r.is_some()).map(|(g, _)| g).collect();
    while let Some(g) = queue.pop() {
        for (&s, ms) in &listed {
            let gs = group.mul(g, s);
            if rep[gs].is_none() {
                let mg = rep[g].clone().expect("known");
                rep[gs] = Some(mg.iter().zip(ms).map(|(a, b)| ring.mul(a, b)).collect());
                queue.push(gs);
            }
        }
    }
    let rep = rep
        .into_iter()
        .enumerate()
        .map(|(g, r)| r.ok_or_else(|| field_err("\"rep\"", format!("listed elements do not generate element {g}"))))
        .collect::<Result<Vec<_>>>()?;
    with_path("\"rep\"", EqChainComplex::new(complex, group, rep))
}

pub fn chain_to_json(c: &EqChainComplex) -> Value {
    let cx = c.complex();
    let d: Map<String, Value> = (1..cx.len()).map(|n| (n.to_string(), matrix_json(&cx.d(n)))).collect();
    let rep: Map<String, Value> = c
        .group()
        .elements()
        .skip(1)
        .map(|g| {
            let per: Map<String, Value> = (0..cx.len()).map(|n| (n.to_string(), matrix_json(&c.rep(g, n)))).collect();
            (g.to_string(), Value::Object(per))
        })
        .collect();
    json!({"ring": cx.ring().to_string(), "ranks": cx.ranks(), "d": d, "rep": rep})
}

/// `all`, `trivial` (or `e`), `whole`, or a JSON list of member lists.
pub fn parse_family_selector(selector: &str, group: &Group, file: Option<&Value>) -> Result<Vec<Subgroup>> {
    match selector {
        "all" => group.all_subgroups(),
        "trivial" | "e" => Ok(vec![Subgroup::trivial(group)]),
        "whole" | "G" => Ok(vec![Subgroup::whole(group)]),
        _ => {
            let v = file.ok_or_else(|| Error::Parse(format!("unknown family selector {selector:?}")))?;
            parse_family(v, group)
        }
    }
}

pub fn parse_family(v: &Value, group: &Group) -> Result<Vec<Subgroup>> {
    let list = array(v, "family")?;
    let mut out: Vec<Subgroup> = Vec::new();
    for (i, m) in list.iter().enumerate() {
        let path = format!("[{i}]");
        let members = uint_list(m, &path)?;
        let h = with_path(&path, Subgroup::from_members(group, &members))?;
        if out.contains(&h) {
            return Err(field_err(&path, "subgroup listed twice"));
        }
        out.push(h);
    }
    Ok(out)
}

pub fn family_to_json(family: &[Subgroup]) -> Value {
    json!(family.iter().map(|h| h.members().to_vec()).collect::<Vec<_>>())
}

/// `[{"degree": n, "rank": r, "torsion": ["2", ...]}, ...]`; torsion
/// coefficients are decimal strings.
pub fn homology_to_json(groups: &[HomologyGroup]) -> Value {
    Value::Array(
        groups
            .iter()
            .map(|h| {
                json!({
                    "degree": h.degree,
                    "rank": h.rank,
                    "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn parse_homology(v: &Value) -> Result<Vec<HomologyGroup>> {
    array(v, "homology")?
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let path = format!("[{i}]");
            let obj = object(h, &path)?;
            let torsion = array(get(obj, "torsion", &path)?, &format!("{path}.\"torsion\""))?
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    let tp = format!("{path}.\"torsion\"[{j}]");
                    let x = scalar(t, &tp)?;
                    if !x.is_integer() || x <= BigRational::one() {
                        return Err(field_err(&tp, "torsion coefficients are integers above 1"));
                    }
                    Ok(x.to_integer())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(HomologyGroup {
                degree: uint(get(obj, "degree", &path)?, &format!("{path}.\"degree\""))?,
                rank: uint(get(obj, "rank", &path)?, &format!("{path}.\"rank\""))?,
                torsion,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, normalized_chains};

    #[test]
    fn group_formats() {
        let g = parse_group(&json!({"order": 2, "mult": [[0, 1], [1, 0]]})).unwrap();
        assert_eq!(g, Group::cyclic(2));
        let s3 = parse_group(&json!({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(parse_group(&group_to_json(&s3)).unwrap(), s3);
        let e = parse_group(&json!({"order": 2, "mult": [[0, 1], [1, 1]]})).unwrap_err();
        assert!(e.to_string().contains("\"mult\""), "{e}");
        let e = parse_group(&json!({"order": 3, "mult": [[0, 1], [1, 0]]})).unwrap_err();
        assert!(e.to_string().contains("\"order\""), "{e}");
        assert!(parse_group(&json!({"mult": [[0]], "extra": 1})).unwrap_err().to_string().contains("\"extra\""));
    }

    #[test]
    fn gset_closure_from_generators() {
        let g = Group::cyclic(4);
        let x = parse_gset(&json!({"size": 4, "action": {"1": [1, 2, 3, 0]}}), &g).unwrap();
        assert_eq!(x.act(2, 0), 2);
        assert_eq!(parse_gset(&gset_to_json(&x), &g).unwrap(), x);
        let e = parse_gset(&json!({"size": 2, "action": {"1": [0, 0]}}), &Group::cyclic(2)).unwrap_err();
        assert!(e.to_string().contains("\"action\".\"1\""), "{e}");
        let fixed = parse_gset(&json!({"size": 3}), &Group::cyclic(2)).unwrap();
        assert_eq!(fixed.act(1, 2), 2);
        let e = parse_gset(&json!({"size": 2, "action": {"2": [1, 0]}}), &g).unwrap_err();
        assert!(e.to_string().contains("do not generate"), "{e}");
    }

    #[test]
    fn gsset_round_trip() {
        for x in [fixtures::swap_square(), fixtures::s3_hexagon(), fixtures::sphere2(), GSSet::boundary(3)] {
            let j = gsset_to_json(&x);
            assert_eq!(parse_gsset(&j, x.group()).unwrap(), x);
        }
    }

    #[test]
    fn gsset_from_file_shape() {
        let j = json!({
            "dims": 2,
            "simplices": {"0": [0, 1, 2], "1": [3, 4, 5]},
            "faces": {"3": [[1, []], [0, []]], "4": [[2, []], [0, []]], "5": [[2, []], [1, []]]}
        });
        let x = parse_gsset(&j, &Group::trivial()).unwrap();
        assert_eq!(x, GSSet::boundary(2));
        let h = homology(normalized_chains(&x, Ring::Integers).complex());
        assert_eq!((h[0].rank, h[1].rank), (1, 1));

        let bad = json!({"simplices": {"0": [0, 1], "1": [2]}, "faces": {"2": [[1, []], [7, []]]}});
        let e = parse_gsset(&bad, &Group::trivial()).unwrap_err();
        assert!(e.to_string().contains("\"faces\""), "{e}");
        let gap = json!({"simplices": {"0": [0, 2]}});
        let e = parse_gsset(&gap, &Group::trivial()).unwrap_err();
        assert!(e.to_string().contains("\"simplices\".\"0\"[1]"), "{e}");
        let missing = json!({"simplices": {"0": [0, 1], "1": [2]}});
        let e = parse_gsset(&missing, &Group::trivial()).unwrap_err();
        assert!(e.to_string().contains("\"faces\".\"2\": missing"), "{e}");
    }

    #[test]
    fn gsset_action_defaults() {
        let g = Group::cyclic(2);
        let j = json!({"simplices": {"0": [0, 1]}, "action": {"1": {"0": 1, "1": 0}}});
        assert_eq!(parse_gsset(&j, &g).unwrap(), fixtures::swap_points());
        let fixed = json!({"simplices": {"0": [0, 1]}, "action": {}});
        let x = parse_gsset(&fixed, &g).unwrap();
        assert_eq!(x.act(1, 0), 0);
        assert_eq!(parse_gsset(&json!("swap-points"), &g).unwrap(), fixtures::swap_points());
        assert_eq!(parse_gsset(&json!("builtin:delta:1"), &g).unwrap().group(), &g);
        assert!(parse_gsset(&json!("swap-points"), &Group::cyclic(3)).is_err());
    }

    #[test]
    fn map_round_trip() {
        let g = Group::cyclic(2);
        let j = json!({"source": "empty", "target": "swap-points", "values": {}});
        let f = parse_smap(&j, &g).unwrap();
        assert_eq!(f.target(), &fixtures::swap_points());
        let j = json!({"source": "point", "target": "swap-wedge", "values": {"0": [0, []]}});
        let f = parse_smap(&j, &Group::trivial()).unwrap();
        assert_eq!(parse_smap(&smap_to_json(&f), &g).unwrap(), f);
        let bad = json!({"source": "point", "target": "swap-wedge", "values": {"0": [1, []]}});
        let e = parse_smap(&bad, &g).unwrap_err();
        assert!(e.to_string().contains("\"values\""), "{e}");
    }

    #[test]
    fn chain_round_trip() {
        let c = normalized_chains(&fixtures::swap_square(), Ring::Integers);
        let j = chain_to_json(&c);
        let back = parse_chain(&j, c.group()).unwrap();
        assert_eq!(back.complex(), c.complex());
        let sign = json!({"ring": "Z", "ranks": [1], "rep": {"1": {"0": [[-1]]}}});
        let s = parse_chain(&sign, &Group::cyclic(2)).unwrap();
        assert!(!s.is_permutation());
        let plain = parse_chain(&json!({"ring": "Z", "ranks": [1]}), &Group::cyclic(2)).unwrap();
        assert!(plain.is_permutation());
        let q = json!({"ring": "Q", "ranks": [1, 1], "d": {"1": [["1/2"]]}});
        assert!(parse_chain(&q, &Group::trivial()).is_ok());
        let bad = json!({"ring": "Z", "ranks": [1, 1, 1], "d": {"1": [[1]], "2": [[1]]}});
        let e = parse_chain(&bad, &Group::trivial()).unwrap_err();
        assert!(e.to_string().contains("\"d\""), "{e}");
        let frac = json!({"ring": "Z", "ranks": [1, 1], "d": {"1": [["1/2"]]}});
        assert!(parse_chain(&frac, &Group::trivial()).unwrap_err().to_string().contains("\"d\".\"1\""));
        let e = parse_chain(&json!({"ring": "F4", "ranks": []}), &Group::trivial()).unwrap_err();
        assert!(e.to_string().contains("\"ring\""), "{e}");
    }

    #[test]
    fn families() {
        let g = Group::symmetric(3);
        assert_eq!(parse_family_selector("all", &g, None).unwrap().len(), 6);
        assert_eq!(parse_family_selector("e", &g, None).unwrap(), vec![Subgroup::trivial(&g)]);
        let f = parse_family(&json!([[0], [0, 1, 2, 3, 4, 5]]), &g).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(parse_family(&family_to_json(&f), &g).unwrap(), f);
        assert!(parse_family(&json!([[0], [0]]), &g).is_err());
        assert!(parse_family(&json!([[0, 1, 2, 3]]), &g).unwrap_err().to_string().contains("[0]"));
        assert!(parse_family_selector("bogus", &g, None).is_err());
    }

    #[test]
    fn homology_round_trip() {
        let x = crate::simplicial::GSSet::boundary(3);
        let h = homology(normalized_chains(&x, Ring::Integers).complex());
        assert_eq!(parse_homology(&homology_to_json(&h)).unwrap(), h);
        let torsion = vec![HomologyGroup { degree: 0, rank: 1, torsion: vec![BigInt::from(2)] }];
        let j = homology_to_json(&torsion);
        assert_eq!(j[0]["torsion"][0], "2");
        assert_eq!(parse_homology(&j).unwrap(), torsion);
    }
}
