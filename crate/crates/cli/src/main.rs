//! `orbitkit`: batch verifier for orbit categories, equivariant cell
//! structures, fixed-point diagrams and equivariant chain homotopy
//! equivalences.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitkit::chain::{homology, invariants, normalized_chains, render_homology, EqChainComplex};
use orbitkit::elmendorf::{
    adjunction_check, arrow_poset_census, cellularity_report, free_cell_diagram, i_lower, Chain, FinSSet, FinSet,
    GObject, OrbitDiagram, ValueCategory,
};
use orbitkit::group::{Group, Subgroup};
use orbitkit::gset::GSet;
use orbitkit::io;
use orbitkit::linalg::Ring;
use orbitkit::orbitcat::OrbitCategory;
use orbitkit::simplicial::{check_f_cofibration, cell_decomposition, fixed_sset, replay, CofibrationFailure, GSSet, SMap};
use orbitkit::whitehead::whitehead_verify;
use orbitkit::Error;

#[derive(Parser)]
#[command(name = "orbitkit", version, about = "Exact equivariant homotopy computations on finite data")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build and print the orbit category of a family.
    OrbitCat(Inputs),
    /// Fixed points of a G-set or G-simplicial set for every member of the family.
    FixedPoints(Inputs),
    /// Homology of invariants and of fixed-point chains, per subgroup.
    Homology(Inputs),
    /// Decide whether a map is an F-cofibration.
    CofibCheck(Inputs),
    /// Relative cell decomposition of a monomorphism, replayed through pushouts.
    Cells(Inputs),
    /// Unit, counit and triangle identities of the fixed-point adjunction, plus cellularity.
    Elmendorf(Inputs),
    /// Hypotheses and an explicit homotopy-inverse certificate for a map.
    Whitehead(Inputs),
    /// Count orbit diagrams and G-objects valued in the arrow poset.
    Census(Inputs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Inputs {
    /// Group file, or `builtin:NAME` with NAME one of cN, sN, dN, c2xc2, trivial.
    #[arg(long)]
    group: Option<String>,
    /// `all`, `trivial` (or `e`), `whole`, or a file listing member lists.
    #[arg(long, default_value = "all")]
    family: String,
    /// G-simplicial set file, or `builtin:NAME`.
    #[arg(long)]
    sset: Option<String>,
    /// Simplicial map file.
    #[arg(long)]
    map: Option<String>,
    /// G-set file.
    #[arg(long)]
    gset: Option<String>,
    /// Chain complex file with a group representation.
    #[arg(long)]
    chain: Option<String>,
    /// Family index of `K` for the free cell diagram `G/K ⊗ A`.
    #[arg(long)]
    cell: Option<usize>,
    /// `Z`, `Q` or `Fp:p`.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = std::result::Result<T, InputError>;

fn read_json(path: &str, what: &str) -> Res<Value> {
    let raw = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {what} file {path}: {e}")))?;
    serde_json::from_str(&raw).map_err(|e| InputError(format!("{what} file {path} is not JSON: {e}")))
}

fn in_file<T>(path: &str, r: orbitkit::Result<T>) -> Res<T> {
    r.map_err(|e| InputError(format!("{path}: {e}")))
}

fn builtin_group(name: &str) -> Res<Group> {
    let bad = || InputError(format!("unknown built-in group {name:?}"));
    let n = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
    match name {
        "trivial" | "e" => Ok(Group::trivial()),
        "c2xc2" | "klein" => Ok(Group::direct_product(&Group::cyclic(2), &Group::cyclic(2))),
        _ => {
            let (kind, rest) = name.split_at(1);
            match (kind, n(rest)) {
                ("c", Some(k)) if k <= 64 => Ok(Group::cyclic(k)),
                ("s", Some(k)) if k <= 4 => Ok(Group::symmetric(k)),
                ("d", Some(k)) if (3..=32).contains(&k) => Ok(Group::dihedral(k)),
                _ => Err(bad()),
            }
        }
    }
}

fn load_group(arg: Option<&str>) -> Res<Group> {
    match arg {
        None => Ok(Group::trivial()),
        Some(s) => match s.strip_prefix("builtin:") {
            Some(name) => builtin_group(name),
            None => Ok(in_file(s, io::parse_group(&read_json(s, "group")?))?),
        },
    }
}

fn load_value(arg: &str, what: &str) -> Res<Value> {
    if arg.starts_with("builtin:") {
        Ok(Value::String(arg.to_string()))
    } else {
        read_json(arg, what)
    }
}

fn load_family(arg: &str, group: &Group) -> Res<Vec<Subgroup>> {
    let file = match arg {
        "all" | "trivial" | "e" | "whole" | "G" => None,
        path => Some(read_json(path, "family")?),
    };
    in_file(arg, io::parse_family_selector(arg, group, file.as_ref()))
}

fn load_ring(arg: Option<&str>) -> Res<Ring> {
    arg.unwrap_or("Z")
        .parse()
        .map_err(|e: Error| InputError(format!("--ring: {e}")))
}

fn need<'a>(v: &'a Option<String>, flag: &str, verb: &str) -> Res<&'a str> {
    v.as_deref()
        .ok_or_else(|| InputError(format!("{verb} needs --{flag}")))
}

fn load_sset(a: &Inputs, group: &Group) -> Res<GSSet> {
    let path = need(&a.sset, "sset", "this verb")?;
    in_file(path, io::parse_gsset(&load_value(path, "sset")?, group))
}

fn load_map(a: &Inputs, group: &Group) -> Res<SMap> {
    let path = need(&a.map, "map", "this verb")?;
    in_file(path, io::parse_smap(&read_json(path, "map")?, group))
}

fn load_chain(path: &str, group: &Group, ring: Option<&str>) -> Res<EqChainComplex> {
    let c = in_file(path, io::parse_chain(&read_json(path, "chain")?, group))?;
    if let Some(r) = ring {
        if load_ring(Some(r))? != c.ring() {
            return Err(InputError(format!("--ring {r} differs from the ring of {path}")));
        }
    }
    Ok(c)
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn orbit_cat(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let family = load_family(&a.family, &group)?;
    let cat = OrbitCategory::new(&group, &family)?;
    Ok(Report {
        text: cat.render_text(),
        json: serde_json::to_value(cat.to_json()).expect("serializable"),
        ok: true,
    })
}

fn fixed_points(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    if let Some(path) = &a.gset {
        let x: GSet = in_file(path, io::parse_gset(&read_json(path, "gset")?, &group))?;
        let family = load_family(&a.family, &group)?;
        text += &format!("fixed points of a G-set of size {}\n", x.size());
        for h in &family {
            let fixed = x.fixed_points(h);
            text += &format!("  H = {h}: {} fixed {:?}\n", fixed.len(), fixed);
            rows.push(json!({"subgroup": h.members(), "fixed": fixed}));
        }
    } else {
        let x = load_sset(a, &group)?;
        let family = load_family(&a.family, x.group())?;
        text += &format!("fixed points of a G-simplicial set with {} simplices\n", x.count());
        for h in &family {
            let (fx, incl) = fixed_sset(&x, h)?;
            let ids: Vec<usize> = incl.values().iter().map(|r| r.base).collect();
            let counts: Vec<usize> = (0..fx.top_dim().map_or(0, |d| d + 1)).map(|n| fx.count_of_dim(n)).collect();
            text += &format!("  H = {h}: counts by dimension {counts:?}, simplices {ids:?}\n");
            rows.push(json!({"subgroup": h.members(), "fixed": ids, "counts": counts}));
        }
    }
    Ok(Report {
        text,
        json: json!({"subgroups": rows}),
        ok: true,
    })
}

fn homology_verb(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let (c, x) = match &a.chain {
        Some(path) => (load_chain(path, &group, a.ring.as_deref())?, None),
        None => {
            let x = load_sset(a, &group)?;
            (normalized_chains(&x, load_ring(a.ring.as_deref())?), Some(x))
        }
    };
    let ring = c.ring();
    let family = load_family(&a.family, c.group())?;
    let mut text = format!("homology over {ring}\n");
    let mut rows = Vec::new();
    let indent = |s: String| s.lines().map(|l| format!("    {l}\n")).collect::<String>();
    for h in &family {
        let inv = homology(&invariants(&c, h)?.complex);
        text += &format!("subgroup {h}\n  invariants of chains:\n{}", indent(render_homology(ring, &inv)));
        let mut row = json!({"subgroup": h.members(), "invariants": io::homology_to_json(&inv)});
        if let Some(x) = &x {
            let (fx, _) = fixed_sset(x, h)?;
            let fix = homology(normalized_chains(&fx, ring).complex());
            text += &format!("  chains of fixed points:\n{}", indent(render_homology(ring, &fix)));
            row["fixed_points"] = io::homology_to_json(&fix);
        }
        rows.push(row);
    }
    Ok(Report {
        text,
        json: json!({"ring": ring.to_string(), "subgroups": rows}),
        ok: true,
    })
}

fn map_or_inclusion(a: &Inputs, group: &Group) -> Res<SMap> {
    if a.map.is_some() {
        load_map(a, group)
    } else if a.sset.is_some() {
        Ok(SMap::from_empty(&load_sset(a, group)?))
    } else {
        Err(InputError("this verb needs --map or --sset".into()))
    }
}

fn cofib_check(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let f = map_or_inclusion(a, &group)?;
    let family = load_family(&a.family, f.source().group())?;
    let v = check_f_cofibration(&f, &family)?;
    let mut text = format!("cofibration: {}\n", yn(v.is_cofibration()));
    let failure = match &v.failure {
        None => Value::Null,
        Some(CofibrationFailure::NotInjective { simplex }) => {
            text += &format!("  not injective at source simplex {simplex}\n");
            json!({"kind": "not_injective", "simplex": simplex})
        }
        Some(CofibrationFailure::Isotropy { simplex, stabilizer }) => {
            text += &format!("  simplex {simplex} has stabilizer {stabilizer}, not subconjugate to the family\n");
            json!({"kind": "isotropy", "simplex": simplex, "stabilizer": stabilizer.members()})
        }
    };
    let counts = v.cells.as_ref().map(|c| c.counts());
    if let Some(c) = &counts {
        text += &format!("  cells by dimension: {c:?}\n");
    }
    if v.is_cofibration() {
        text += &format!("  stabilizers literally in the family: {}\n", yn(v.strict));
    }
    Ok(Report {
        text,
        json: json!({"cofibration": v.is_cofibration(), "strict": v.strict, "failure": failure, "cell_counts": counts}),
        ok: v.is_cofibration(),
    })
}

fn cells(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let f = map_or_inclusion(a, &group)?;
    if let Some(x) = f.first_non_injective() {
        return Ok(Report {
            text: format!("not a monomorphism: source simplices {x} and another share an image\n"),
            json: json!({"monomorphism": false, "simplex": x}),
            ok: false,
        });
    }
    let cs = cell_decomposition(&f)?;
    let r = replay(&f, &cs)?;
    let verified = r.comparison.is_isomorphism();
    let mut text = format!("{} cells, by dimension {:?}\n", cs.cells.len(), cs.counts());
    let mut rows = Vec::new();
    for c in &cs.cells {
        let faces: Vec<String> = c.attaching.iter().map(|r| r.to_string()).collect();
        text += &format!(
            "  dim {}: simplex {}, stabilizer {}, orbit {:?}, attached along [{}]\n",
            c.dim,
            c.simplex,
            c.stabilizer,
            c.orbit,
            faces.join(", ")
        );
        rows.push(json!({
            "dim": c.dim,
            "simplex": c.simplex,
            "stabilizer": c.stabilizer.members(),
            "orbit": c.orbit,
            "attaching": faces,
        }));
    }
    text += &format!("replay stages {:?}, reconstructs the target: {}\n", r.stage_counts, yn(verified));
    Ok(Report {
        text,
        json: json!({"monomorphism": true, "cells": rows, "stage_counts": r.stage_counts, "replay_verified": verified}),
        ok: verified,
    })
}

fn elmendorf_in<V: ValueCategory>(
    v: &V,
    cat: &OrbitCategory,
    x: &GObject<V>,
    cell: Option<usize>,
    additive: bool,
) -> Res<Report> {
    let t: OrbitDiagram<V> = match cell {
        Some(k) => free_cell_diagram(v, cat, k, &x.carrier)?,
        None => i_lower(v, cat, x)?.0,
    };
    let adj = adjunction_check(v, &t, x)?;
    let mut text = adj.render_text();
    let mut reports = Vec::new();
    for h in cat.family() {
        for k in cat.family() {
            let r = cellularity_report(v, h, k, &x.carrier, additive)?;
            text += &r.render_text();
            reports.push(r);
        }
    }
    let ok = adj.counit_iso && adj.unit_natural && adj.counit_equivariant && adj.triangle_identities;
    Ok(Report {
        text,
        json: json!({"adjunction": adj, "cellularity": reports}),
        ok,
    })
}

fn elmendorf(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    if let Some(path) = &a.chain {
        let c = load_chain(path, &group, a.ring.as_deref())?;
        let cat = OrbitCategory::new(c.group(), &load_family(&a.family, c.group())?)?;
        return elmendorf_in(&Chain(c.ring()), &cat, &Chain::gobject(&c), a.cell, true);
    }
    if let Some(path) = &a.gset {
        let x = in_file(path, io::parse_gset(&read_json(path, "gset")?, &group))?;
        let cat = OrbitCategory::new(&group, &load_family(&a.family, &group)?)?;
        return elmendorf_in(&FinSet, &cat, &FinSet::gobject(&x), a.cell, false);
    }
    let x = load_sset(a, &group)?;
    let cat = OrbitCategory::new(x.group(), &load_family(&a.family, x.group())?)?;
    elmendorf_in(&FinSSet, &cat, &FinSSet::gobject(&x), a.cell, false)
}

fn whitehead(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let f = load_map(a, &group)?;
    let family = load_family(&a.family, f.source().group())?;
    let r = whitehead_verify(&f, &family, load_ring(a.ring.as_deref())?)?;
    let ok = r.certificate.as_ref().is_some_and(|c| c.verified);
    Ok(Report {
        text: r.render_text(),
        json: serde_json::to_value(&r).expect("serializable"),
        ok,
    })
}

fn census(a: &Inputs) -> Res<Report> {
    let group = load_group(a.group.as_deref())?;
    let cat = OrbitCategory::new(&group, &load_family(&a.family, &group)?)?;
    let c = arrow_poset_census(&cat);
    Ok(Report {
        text: c.render_text(),
        json: serde_json::to_value(&c).expect("serializable"),
        ok: true,
    })
}

fn run(verb: &Verb) -> Res<(Report, &Inputs)> {
    let (f, a): (fn(&Inputs) -> Res<Report>, &Inputs) = match verb {
        Verb::OrbitCat(a) => (orbit_cat, a),
        Verb::FixedPoints(a) => (fixed_points, a),
        Verb::Homology(a) => (homology_verb, a),
        Verb::CofibCheck(a) => (cofib_check, a),
        Verb::Cells(a) => (cells, a),
        Verb::Elmendorf(a) => (elmendorf, a),
        Verb::Whitehead(a) => (whitehead, a),
        Verb::Census(a) => (census, a),
    };
    Ok((f(a)?, a))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, a) = match run(&cli.verb) {
        Ok(r) => r,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = match a.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
    };
    match &a.out {
        Some(path) => {
            if let Err(e) = std::fs::write(Path::new(path), &body) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
