use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use prym_core::abel_prym::{all_multisets, cell_degree_by_ogod, volume_cover_identity, AbelPrym, FiberPoint};
use prym_core::divisor::{jacobian_order, jacobian_structure, jacobian_volume_squared};
use prym_core::io::{CoverDoc, GraphDoc};
use prym_core::lattice::{jacobian_volume_routes_agree, prym_volume_report};
use prym_core::ogod::{enumerate_ogods, prym_order_by_ogods, prym_volume_squared_by_ogods};
use prym_core::prym_group::{
    prym_order_by_ratio, prym_order_by_signed_laplacian, prym_order_report, prym_structure,
};
use prym_core::zeta::{factorization_holds, l_function_report, zeta_report};
use prym_core::{format_rat, DoubleCover, Graph, Rat, RatMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{AbelPrymCommand, Cli, Command, InputError, Method, Outcome, PrymCommand};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Genus => genus(cli),
        Command::Jacobian => jacobian(cli),
        Command::Prym(PrymCommand::Order { method }) => prym_order(cli, *method),
        Command::Prym(PrymCommand::Volume) => prym_volume(cli),
        Command::Ogods => ogods(cli),
        Command::Zeta => zeta(cli),
        Command::Lfunction => lfunction(cli),
        Command::AbelPrym(sub) => abel_prym(cli, sub),
        Command::Selftest => crate::selftest::run(cli.seed, cli.cases),
    }
}

fn read(path: &Option<std::path::PathBuf>, flag: &'static str) -> Result<String> {
    let path: &Path = path.as_deref().ok_or_else(|| InputError {
        code: "missing_argument",
        message: format!("--{flag} is required"),
    })?;
    std::fs::read_to_string(path).map_err(|e| {
        InputError {
            code: "io_error",
            message: format!("cannot read {}: {e}", path.display()),
        }
        .into()
    })
}

fn load_graph(cli: &Cli) -> Result<(Graph, Value)> {
    let text = read(&cli.graph, "graph")?;
    let g = prym_core::io::parse_graph(&text).context("graph document")?;
    let echo = json!({ "graph": serde_json::to_value(GraphDoc::from_graph(&g))? });
    Ok((g, echo))
}

fn load_cover(cli: &Cli) -> Result<(DoubleCover, Value)> {
    let (g, mut echo) = load_graph(cli)?;
    let text = read(&cli.cover, "cover")?;
    let doc: CoverDoc = serde_json::from_str(&text)
        .map_err(prym_core::PrymError::from)
        .context("cover document")?;
    let cover = doc.to_cover(g).context("cover document")?;
    echo["cover"] = serde_json::to_value(CoverDoc::from_cover(&cover))?;
    Ok((cover, echo))
}

pub fn rat_rows(m: &RatMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(format_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn rats(v: &[Rat]) -> Value {
    json!(v.iter().map(format_rat).collect::<Vec<_>>())
}

fn genus(cli: &Cli) -> Result<Outcome> {
    let (g, inputs) = load_graph(cli)?;
    let genus = g.genus()?;
    Ok(Outcome {
        inputs,
        results: json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "genus": genus }),
        agreement: None,
    })
}

fn jacobian(cli: &Cli) -> Result<Outcome> {
    let (g, inputs) = load_graph(cli)?;
    let order = jacobian_order(&g)?;
    let structure = jacobian_structure(&g)?;
    let agree = structure.order().as_ref() == Some(&order) && jacobian_volume_routes_agree(&g)?;
    Ok(Outcome {
        inputs,
        results: json!({
            "order": order.to_string(),
            "structure": structure.to_string(),
            "invariant_factors": structure.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "volume_squared": format_rat(&jacobian_volume_squared(&g)?),
        }),
        agreement: Some(agree),
    })
}

fn prym_order(cli: &Cli, method: Method) -> Result<Outcome> {
    let (cover, inputs) = load_cover(cli)?;
    let (results, agreement) = match method {
        Method::All => {
            let r = prym_order_report(&cover)?;
            let structure = prym_structure(&cover)?;
            let agree = r.agreement && structure.order().as_ref() == Some(&r.ratio);
            (
                json!({
                    "ratio": r.ratio.to_string(),
                    "signed_det": r.signed_determinant.to_string(),
                    "ogod_sum": r.ogod_sum.to_string(),
                    "structure": structure.to_string(),
                    "agree": agree,
                }),
                Some(agree),
            )
        }
        Method::Ratio => (json!({ "ratio": prym_order_by_ratio(&cover)?.to_string() }), None),
        Method::SignedDet => (json!({ "signed_det": prym_order_by_signed_laplacian(&cover)?.to_string() }), None),
        Method::Ogod => (json!({ "ogod_sum": prym_order_by_ogods(&cover).to_string() }), None),
    };
    Ok(Outcome { inputs, results, agreement })
}

fn prym_volume(cli: &Cli) -> Result<Outcome> {
    let (cover, inputs) = load_cover(cli)?;
    let r = prym_volume_report(&cover)?;
    Ok(Outcome {
        inputs,
        agreement: Some(r.agreement),
        results: serde_json::to_value(r)?,
    })
}

fn ogods(cli: &Cli) -> Result<Outcome> {
    let (cover, inputs) = load_cover(cli)?;
    let base = cover.base();
    let list: Vec<Value> = enumerate_ogods(&cover)
        .iter()
        .map(|o| {
            json!({
                "edges": o.edges.iter().map(|&e| base.edge_name(e)).collect::<Vec<_>>(),
                "rank": o.rank(),
                "weight": format_rat(&o.weight),
                "contribution": format_rat(&o.contribution()),
            })
        })
        .collect();
    Ok(Outcome {
        inputs,
        results: json!({
            "count": list.len(),
            "ogods": list,
            "volume_squared": format_rat(&prym_volume_squared_by_ogods(&cover)),
            "prym_order": prym_order_by_ogods(&cover).to_string(),
        }),
        agreement: None,
    })
}

fn zeta(cli: &Cli) -> Result<Outcome> {
    let (g, inputs) = load_graph(cli)?;
    let r = zeta_report(&g)?;
    // The class-number prediction needs g >= 2; for g = 1 the order still applies.
    let agreement = if g.genus()? >= 2 { Some(r.agreement) } else { None };
    Ok(Outcome { inputs, results: serde_json::to_value(r)?, agreement })
}

fn lfunction(cli: &Cli) -> Result<Outcome> {
    let (cover, inputs) = load_cover(cli)?;
    let r = l_function_report(&cover)?;
    let factors = factorization_holds(&cover)?;
    let agreement = r.agreement && factors;
    let mut results = serde_json::to_value(r)?;
    results["factorization_holds"] = json!(factors);
    Ok(Outcome { inputs, results, agreement: Some(agreement) })
}

fn edge_names(ap: &AbelPrym, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&x| ap.model().total().edge_name(x).to_string()).collect()
}

fn fiber_json(ap: &AbelPrym, points: &[FiberPoint]) -> Value {
    json!(points
        .iter()
        .map(|p| json!({
            "edges": edge_names(ap, &p.edges),
            "parameters": rats(&p.parameters),
            "degree": p.degree,
        }))
        .collect::<Vec<_>>())
}

fn abel_prym(cli: &Cli, sub: &AbelPrymCommand) -> Result<Outcome> {
    let (cover, inputs) = load_cover(cli)?;
    let ap = AbelPrym::new(&cover)?;
    let dimension = ap.dimension();
    let expected = 1u64 << dimension;
    let (results, agreement) = match sub {
        AbelPrymCommand::Cells => {
            let cells = ap.noncontracted_cells()?;
            let agree = cells.iter().all(|c| c.degree == cell_degree_by_ogod(ap.model(), &c.edges))
                && volume_cover_identity(&ap)?;
            if let Some(path) = &cli.svg {
                let picture = crate::svg::cells_picture(&ap, &cells)?;
                std::fs::write(path, picture)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            let list: Vec<Value> = cells
                .iter()
                .map(|c| {
                    json!({
                        "edges": edge_names(&ap, &c.edges),
                        "matrix": rat_rows(&c.matrix),
                        "det": format_rat(&c.det),
                        "degree": c.degree,
                    })
                })
                .collect();
            (
                json!({
                    "dimension": dimension,
                    "model_edges": ap.model().total().edge_count(),
                    "gram": rat_rows(ap.gram()),
                    "count": list.len(),
                    "cells": list,
                }),
                Some(agree),
            )
        }
        AbelPrymCommand::Harmonicity => {
            let n = ap.model().total().edge_count();
            let mut patterns: BTreeMap<String, usize> = BTreeMap::new();
            let mut failures = Vec::new();
            let mut checked = 0usize;
            for cell in all_multisets(n, dimension) {
                for drop in 0..cell.len() {
                    for at_source in [true, false] {
                        let r = ap.harmonicity_balance(&cell, drop, at_source)?;
                        checked += 1;
                        let key = serde_json::to_value(r.classify())?.as_str().unwrap_or("other").to_string();
                        *patterns.entry(key).or_default() += 1;
                        if !r.balanced {
                            failures.push(json!({
                                "edges": edge_names(&ap, &cell),
                                "drop": drop,
                                "sum": format_rat(&r.sum),
                            }));
                        }
                    }
                }
            }
            let agree = failures.is_empty();
            (json!({ "checked": checked, "patterns": patterns, "unbalanced": failures }), Some(agree))
        }
        AbelPrymCommand::Fiber => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let (target, points, total) = ap.random_fiber_degree(&mut rng)?;
            (
                json!({
                    "target": rats(&target.coords),
                    "points": fiber_json(&ap, &points),
                    "degree_sum": total,
                    "expected": expected,
                }),
                Some(total == expected),
            )
        }
        AbelPrymCommand::GlobalDegree => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut sums = Vec::with_capacity(cli.cases);
            for _ in 0..cli.cases {
                sums.push(ap.random_fiber_degree(&mut rng)?.2);
            }
            let identity = volume_cover_identity(&ap)?;
            let agree = identity && sums.iter().all(|&s| s == expected);
            (
                json!({
                    "expected": expected,
                    "targets": cli.cases,
                    "degree_sums": sums,
                    "volume_identity": identity,
                }),
                Some(agree),
            )
        }
    };
    Ok(Outcome { inputs, results, agreement })
}
