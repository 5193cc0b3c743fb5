//! Acceptance suite. Prints one `[PASS]` / `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails. Every comparison is exact; the only
//! tolerances are the wall-clock limits named on each line.
//!
//! Run with `cargo test -p indpoly --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use indpoly::certificate::realize_with_blocks;
use indpoly::counting::{bracket, brute_force_census, independence_polynomial, value_at_minus_one};
use indpoly::decycling::{check_phi_certificate, exhaustive_decycling_number, min_decycling};
use indpoly::random::{gnp, rooted_gnp, seeded};
use indpoly::synth::{claim_graph, synth};
use indpoly::verify::{engstrom_sweep, verify_certificate};
use indpoly::{make_complete, make_cycle, Bracket, RootedGraph};

const SEED: u64 = 20_240_607;
const CENSUS_CAP: usize = 25;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_small_values() -> Outcome {
    let cases = [
        ("K1", make_complete(1).unwrap(), 0),
        ("K2", make_complete(2).unwrap(), -1),
        ("C3", make_cycle(3).unwrap(), -2),
        ("C6", make_cycle(6).unwrap(), 2),
    ];
    for (name, g, want) in &cases {
        let got = value_at_minus_one(g);
        ensure(got == *want, || {
            format!("{name}: I(-1) = {got}, want {want}")
        })?;
    }
    let table: [[i64; 3]; 7] = [
        [2, 1, -1],
        [1, 2, 1],
        [-1, 1, 2],
        [-2, -1, 1],
        [-1, -2, -1],
        [1, -1, -2],
        [2, 1, -1],
    ];
    let c6 = RootedGraph::new(make_cycle(6).unwrap(), 0).unwrap();
    for (l, row) in table.iter().enumerate() {
        let got = bracket(&c6.extend(l));
        let want = Bracket::try_from(*row).unwrap();
        ensure(got == want, || {
            format!("C6 extended by {l}: {got}, want {want}")
        })?;
    }
    Ok("4 values, 7 table rows".into())
}

fn ac2_exhaustive_small_k() -> Outcome {
    let mut cases = 0;
    let mut by_census = 0;
    for k in 1..=4u32 {
        let top = 1i64 << k;
        for q in -top..=top {
            let g = synth(k, q)
                .map_err(|e| format!("synth({k},{q}): {e}"))?
                .realize()
                .unwrap();
            let g = g.graph();
            ensure(g.is_connected(), || format!("({k},{q}) disconnected"))?;
            let value = if g.vertex_count() <= CENSUS_CAP {
                by_census += 1;
                brute_force_census(g, CENSUS_CAP).unwrap().at_minus_one()
            } else {
                independence_polynomial(g).at_minus_one()
            };
            ensure(value == q.into(), || format!("({k},{q}): I(-1) = {value}"))?;
            let phi = min_decycling(g, None).unwrap().phi;
            ensure(phi == k as usize, || format!("({k},{q}): phi = {phi}"))?;
            cases += 1;
        }
    }
    ensure(cases == 64, || format!("{cases} cases, want 64"))?;
    Ok(format!("{cases} cases, {by_census} by subset census"))
}

fn ac3_large_k() -> Outcome {
    let k = 10u32;
    let qs = [0, 1, -1, 341, -341, 1023, -1023, 1024, -1024];
    for q in qs {
        let cert = synth(k, q).map_err(|e| format!("synth({k},{q}): {e}"))?;
        let report = verify_certificate(&cert);
        ensure(report.passed, || format!("({k},{q}): {report}"))?;
        let r = realize_with_blocks(&cert.root).unwrap();
        ensure(r.cycle_blocks.len() == k as usize, || {
            format!("({k},{q}): {} cycle blocks", r.cycle_blocks.len())
        })?;
        ensure(r.cycle_blocks.iter().all(|b| b.len() == 6), || {
            format!("({k},{q}): non-C6 block")
        })?;
        let pc = r.phi_certificate();
        ensure(pc.decycling_set.len() == k as usize, || {
            format!(
                "({k},{q}): decycling set of size {}",
                pc.decycling_set.len()
            )
        })?;
        check_phi_certificate(r.rooted.graph(), &pc).map_err(|v| format!("({k},{q}): {v}"))?;
    }
    Ok(format!("{} targets", qs.len()))
}

fn ac4_bracket_algebra() -> Outcome {
    let mut rng = seeded(SEED);
    for i in 0..200 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.1..0.9);
        let g = rooted_gnp(n, p, &mut rng);
        let m = rng.gen_range(2..=12);
        let h = rooted_gnp(m, p, &mut rng);
        let l = i % 9;

        let pasted = bracket(&g.paste(&h));
        let algebra = bracket(&g).paste(&bracket(&h));
        ensure(pasted == algebra, || {
            format!("graph {i}: paste {pasted} vs {algebra}")
        })?;
        let extended = bracket(&g.extend(l));
        let algebra = bracket(&g).extend(l);
        ensure(extended == algebra, || {
            format!("graph {i}: extend({l}) {extended} vs {algebra}")
        })?;

        let v = g.root();
        let whole = independence_polynomial(g.graph());
        let split = &independence_polynomial(&g.graph().delete_vertex(v).unwrap())
            + &independence_polynomial(&g.graph().delete_closed_neighborhood(v).unwrap()).shift();
        ensure(whole == split, || {
            format!("graph {i}: deletion recursion fails at the root")
        })?;

        let union = independence_polynomial(&g.graph().disjoint_union(h.graph()));
        let product = &whole * &independence_polynomial(h.graph());
        ensure(union == product, || {
            format!("graph {i}: product rule fails")
        })?;
    }
    Ok("200 graph pairs".into())
}

fn ac5_engstrom() -> Outcome {
    let report = engstrom_sweep(10, 1000, SEED).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || {
        format!("{} violations", report.violations.len())
    })?;
    let random_tight = report
        .tight_examples
        .iter()
        .filter(|c| c.label.starts_with("trial"))
        .count();
    ensure(random_tight >= 1, || {
        "no tight random case with phi >= 1".into()
    })?;
    Ok(format!(
        "1000 trials, 0 violations, {} tight",
        report.tight_count
    ))
}

fn ac6_oracles() -> Outcome {
    let mut rng = seeded(SEED ^ 0x5eed);
    for i in 0..300 {
        let n = rng.gen_range(0..=14);
        let p = rng.gen_range(0.05..0.95);
        let g = gnp(n, p, &mut rng);
        let census = brute_force_census(&g, CENSUS_CAP).unwrap();
        ensure(independence_polynomial(&g) == census, || {
            format!("graph {i}: polynomial differs from census")
        })?;
    }
    for i in 0..300 {
        let n = rng.gen_range(0..=12);
        let p = rng.gen_range(0.05..0.95);
        let g = gnp(n, p, &mut rng);
        let d = min_decycling(&g, None).unwrap();
        let oracle = exhaustive_decycling_number(&g).unwrap();
        ensure(d.phi == oracle, || {
            format!("graph {i}: search {} vs exhaustive {oracle}", d.phi)
        })?;
        ensure(g.delete_vertices(&d.witness).unwrap().is_acyclic(), || {
            format!("graph {i}: bad witness")
        })?;
    }
    Ok("300 polynomials, 300 decycling numbers".into())
}

fn ac7_claim_forms() -> Outcome {
    let mut cases = 0;
    for k in 1..=6u32 {
        for q in (1..1i64 << k).step_by(2) {
            let (node, form) = claim_graph(k, q).map_err(|e| format!("claim({k},{q}): {e}"))?;
            let want = form.bracket(k, q);
            ensure(node.claimed_bracket == want, || {
                format!(
                    "claim({k},{q}): claimed {}, form gives {want}",
                    node.claimed_bracket
                )
            })?;
            let realized = bracket(&realize_with_blocks(&node).unwrap().rooted);
            ensure(realized == want, || {
                format!("claim({k},{q}): realized {realized}, want {want}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} claim graphs"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "AC1",
            title: "small graph values and C6 extension table",
            limit: Some(Duration::from_secs(1)),
            run: ac1_small_values,
        },
        Criterion {
            id: "AC2",
            title: "every (k, q) for k <= 4 is connected, exact value, exact phi",
            limit: Some(Duration::from_secs(60)),
            run: ac2_exhaustive_small_k,
        },
        Criterion {
            id: "AC3",
            title: "k = 10 certificates verify with 10 C6 blocks",
            limit: Some(Duration::from_secs(10)),
            run: ac3_large_k,
        },
        Criterion {
            id: "AC4",
            title: "paste/extend brackets, deletion recursion, product rule",
            limit: None,
            run: ac4_bracket_algebra,
        },
        Criterion {
            id: "AC5",
            title: "|I(G;-1)| <= 2^phi on 1000 random graphs, tight cases seen",
            limit: None,
            run: ac5_engstrom,
        },
        Criterion {
            id: "AC6",
            title: "recursion and search agree with subset oracles",
            limit: None,
            run: ac6_oracles,
        },
        Criterion {
            id: "AC7",
            title: "claim graphs carry their bracket form for k <= 6",
            limit: Some(Duration::from_secs(30)),
            run: ac7_claim_forms,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {}: {detail} ({elapsed:.2?})", c.id, c.title),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {}: {detail} ({elapsed:.2?})", c.id, c.title);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
