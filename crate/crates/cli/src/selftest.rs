//! Bundled fixtures plus a seeded random suite.

use anyhow::Result;
use prym_core::abel_prym::AbelPrym;
use prym_core::divisor::{jacobian_order, linearly_equivalent};
use prym_core::fixtures;
use prym_core::lattice::prym_volume_report;
use prym_core::ogod::enumerate_ogods;
use prym_core::prym_group::{norm_kernel_structure, prym_order_report, prym_structure, sheet_difference};
use prym_core::random::{random_cover, RandomCoverConfig};
use prym_core::rat::{format_rat, int, rat};
use prym_core::zeta::factorization_holds;
use prym_core::{BigInt, Divisor, Rat, RatMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Outcome;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn double_edge_chain() -> Result<Check> {
    let c = fixtures::double_edge_chain();
    let report = prym_order_report(&c)?;
    let kernel = norm_kernel_structure(&c);
    let prym = prym_structure(&c)?;
    let d: Vec<Divisor> = (0..4).map(|v| sheet_difference(&c, v)).collect();
    let times = |k: usize, x: &Divisor| (0..k).fold(Divisor::zero(8), |acc, _| &acc + x);
    let relations = linearly_equivalent(c.total(), &d[3], &(&d[0] + &times(4, &d[1])))?
        && linearly_equivalent(c.total(), &d[2], &times(3, &d[1]))?;
    let passed = jacobian_order(c.base())? == BigInt::from(4)
        && jacobian_order(c.total())? == BigInt::from(64)
        && report.agreement
        && report.ratio == BigInt::from(8)
        && kernel.to_string() == "Z/2 ⊕ Z/8"
        && prym.to_string() == "Z/8"
        && relations;
    Ok(Check {
        name: "double-edge chain",
        passed,
        detail: format!("Ker Nm = {kernel}, Prym = {prym}, relations hold: {relations}"),
    })
}

fn dumbbells(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut passed = true;
    for _ in 0..10 {
        let x: Vec<Rat> = (0..3).map(|_| rat(rng.gen_range(1..=30), rng.gen_range(1..=9))).collect();
        let lengths = [x[0].clone(), x[1].clone(), x[2].clone()];
        let both = prym_volume_report(&fixtures::dumbbell(lengths.clone(), true))?;
        let one = prym_volume_report(&fixtures::dumbbell(lengths, false))?;
        passed &= both.agreement && both.gram_determinant == format_rat(&(&x[0] + &x[1] + &x[2] * int(4)));
        passed &= one.agreement && one.gram_determinant == format_rat(&x[1]);
    }
    Ok(Check { name: "dumbbell volumes", passed, detail: "x1 + x2 + 4 x3 and x2 at 10 seeded triples".into() })
}

fn looped_path() -> Result<Check> {
    let cover = fixtures::looped_path();
    let ogods = enumerate_ogods(&cover);
    let ap = AbelPrym::new(&cover)?;
    let mut degrees_match = true;
    for o in &ogods {
        let names: Vec<String> = o
            .edges
            .iter()
            .map(|&e| match cover.base().edge_name(e) {
                "h1" | "h7" => format!("{}.b+", cover.base().edge_name(e)),
                other => format!("{other}+"),
            })
            .collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let deg = ap.cell_degree(&ap.total_edges(&names)?)?;
        degrees_match &= deg == 1 << (o.rank() - 1);
    }
    let special = ap.cell_matrix(&ap.total_edges(&["h3+", "h6-"])?)?.matrix;
    let passed = ogods.len() == 13 && degrees_match && special == RatMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
    Ok(Check {
        name: "looped path",
        passed,
        detail: format!("{} ogods, cell degrees match ranks: {degrees_match}", ogods.len()),
    })
}

fn mixed_degree_fibre() -> Result<Check> {
    let cover = fixtures::mixed_degree_cover(int(4));
    let ap = AbelPrym::new(&cover)?;
    let total = cover.total();
    let id = |n: &str| total.edge_id(n).expect("fixture edge");
    let (x, y) = (rat(1, 2), rat(1, 4));
    let first = [(id("e1+"), x.clone()), (id("e2+"), int(1) - &y)];
    let second = [(id("e1-"), int(1) - (&x - &y)), (id("e3+"), int(1) + &y * int(2))];
    let locate = |pts: &[(usize, Rat)]| -> Result<Vec<(usize, Rat)>> {
        Ok(pts.iter().map(|(e, t)| ap.locate(*e, t)).collect::<prym_core::Result<_>>()?)
    };
    let (d1, d2) = (locate(&first)?, locate(&second)?);
    let (a1, a2) = (ap.torsor_coordinates(&d1)?, ap.torsor_coordinates(&d2)?);
    let cell = |d: &[(usize, Rat)]| d.iter().map(|(e, _)| *e).collect::<Vec<_>>();
    let degrees = (ap.cell_degree(&cell(&d1))?, ap.cell_degree(&cell(&d2))?);
    let sum: u64 = ap.fiber(&a1)?.iter().map(|p| p.degree).sum();
    Ok(Check {
        name: "mixed-degree fibre",
        passed: ap.equivalent(&a1, &a2) && degrees == (2, 1) && sum == 4,
        detail: format!("local degrees {degrees:?}, fiber degree {sum}"),
    })
}

fn random_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let config = RandomCoverConfig { random_lengths: true, ..Default::default() };
    let mut failures = Vec::new();
    for i in 0..cases {
        let cover = random_cover(rng, &config);
        let ok = prym_order_report(&cover.with_unit_lengths())?.agreement
            && prym_volume_report(&cover)?.agreement
            && factorization_holds(&cover)?;
        if !ok {
            failures.push(i);
        }
    }
    Ok(Check {
        name: "random covers",
        passed: failures.is_empty(),
        detail: format!("{cases} covers, failing cases {failures:?}"),
    })
}

pub fn run(seed: u64, cases: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = [
        double_edge_chain()?,
        dumbbells(&mut rng)?,
        looped_path()?,
        mixed_degree_fibre()?,
        random_suite(&mut rng, cases)?,
    ];
    let all = checks.iter().all(|c| c.passed);
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    Ok(Outcome {
        inputs: json!({ "seed": seed, "cases": cases }),
        results: json!({ "checks": list }),
        agreement: Some(all),
    })
}
