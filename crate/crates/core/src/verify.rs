//! Independent checks of (k, q)-graphs and construction certificates, and a
//! randomized sweep of the bound `|I(G; -1)| <= 2^phi(G)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::certificate::{
    check_claims, check_structure, predicted_bracket, predicted_phi, realize_with_blocks,
    ConstructionCertificate, Target,
};
use crate::counting::{bracket, brute_force_census, polynomial_at_minus_one, value_at_minus_one};
use crate::decycling::{
    check_phi_certificate, exhaustive_decycling_number, min_decycling, PhiCertificate,
};
use crate::edgelist;
use crate::error::{Error, Result};
use crate::graph::{make_cycle, Graph};
use crate::random::{gnp, seeded};

pub const REPORT_VERSION: &str = "report-v1";

/// How much independent evidence [`verify_kq`] demands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Value by the deletion recursion; phi from a certificate.
    Poly,
    /// Additionally cross-check the value by subset enumeration when small.
    Oracle,
    /// Additionally compute phi exactly by search.
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(Level::Poly),
            "oracle" => Ok(Level::Oracle),
            "full" => Ok(Level::Full),
            other => Err(Error::InvalidArgument(format!(
                "unknown level {other:?} (expected poly, oracle or full)"
            ))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Poly => "poly",
            Level::Oracle => "oracle",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub micros: u128,
}

/// Machine-readable (JSON) and human-readable (Display) check report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub subject: String,
    pub input_digest: String,
    pub passed: bool,
    pub clauses: Vec<Clause>,
}

impl Report {
    fn new(subject: String, digest_input: &str) -> Self {
        Report {
            version: REPORT_VERSION.to_string(),
            subject,
            input_digest: hex::encode(Sha256::digest(digest_input.as_bytes())),
            passed: true,
            clauses: Vec::new(),
        }
    }

    fn record(
        &mut self,
        name: &str,
        started: Instant,
        outcome: std::result::Result<String, String>,
    ) -> bool {
        let passed = outcome.is_ok();
        self.passed &= passed;
        self.clauses.push(Clause {
            name: name.to_string(),
            passed,
            detail: outcome.unwrap_or_else(|e| e),
            micros: started.elapsed().as_micros(),
        });
        passed
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// First clause that failed, if any.
    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.subject, self.version)?;
        writeln!(f, "digest {}", self.input_digest)?;
        for c in &self.clauses {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {mark} {:<18} {} ({} us)", c.name, c.detail, c.micros)?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn bound_clause(k: u32, q: i64) -> std::result::Result<String, String> {
    if k >= 64 {
        return Ok(format!("|{q}| <= 2^{k}"));
    }
    let limit = 1u128 << k;
    if u128::from(q.unsigned_abs()) <= limit {
        Ok(format!("|{q}| <= 2^{k}"))
    } else {
        Err(format!("|{q}| > 2^{k} = {limit}"))
    }
}

/// Checks that `graph` is a connected (k, q)-graph.
///
/// The phi clause uses `phi_certificate` when one is given and the level is
/// below [`Level::Full`]; otherwise it runs the exact search with budget `k`,
/// which decides `phi = k` exactly.
pub fn verify_kq(
    graph: &Graph,
    k: u32,
    q: i64,
    level: Level,
    phi_certificate: Option<&PhiCertificate>,
    oracle_cap: usize,
) -> Report {
    let digest_input = format!("k={k} q={q}\n{}", edgelist::write(graph, None, &[]));
    let mut report = Report::new(
        format!("verify ({k},{q})-graph at level {level}"),
        &digest_input,
    );

    let t = Instant::now();
    report.record("bound", t, bound_clause(k, q));

    let t = Instant::now();
    let outcome = if graph.is_connected() && !graph.is_empty() {
        Ok(format!(
            "{} vertices, {} edges",
            graph.vertex_count(),
            graph.edge_count()
        ))
    } else {
        Err(format!("{} components", graph.component_count()))
    };
    report.record("connected", t, outcome);

    let t = Instant::now();
    let value = value_at_minus_one(graph);
    let outcome = if value == q {
        Ok(format!("I(G;-1) = {value}"))
    } else {
        Err(format!("I(G;-1) = {value}, expected {q}"))
    };
    report.record("value", t, outcome);

    if level >= Level::Oracle {
        let t = Instant::now();
        let outcome = match brute_force_census(graph, oracle_cap) {
            Ok(poly) => {
                let census = polynomial_at_minus_one(&poly);
                if census == q {
                    Ok(format!("subset census gives {census}"))
                } else {
                    Err(format!("subset census gives {census}, expected {q}"))
                }
            }
            Err(Error::SizeLimit { vertices, cap }) => {
                Ok(format!("skipped: {vertices} vertices above cap {cap}"))
            }
            Err(e) => Err(e.to_string()),
        };
        report.record("oracle", t, outcome);
    }

    let t = Instant::now();
    let outcome = match (level, phi_certificate) {
        (Level::Poly | Level::Oracle, Some(cert)) => match check_phi_certificate(graph, cert) {
            Ok(()) if cert.phi() == k as usize => Ok(format!("certificate proves phi = {k}")),
            Ok(()) => Err(format!(
                "certificate proves phi = {}, expected {k}",
                cert.phi()
            )),
            Err(v) => Err(format!("certificate rejected: {v}")),
        },
        _ => match min_decycling(graph, Some(k as usize)) {
            Ok(d) if d.phi == k as usize => Ok(format!("search finds phi = {k}")),
            Ok(d) => Err(format!("search finds phi = {}, expected {k}", d.phi)),
            Err(Error::BudgetExceeded { .. }) => Err(format!("phi > {k}")),
            Err(e) => Err(e.to_string()),
        },
    };
    report.record("phi", t, outcome);
    report
}

/// Six-stage certificate check; stops at the first failing stage.
///
/// 1. structure, 2. claims, 3. realized bracket and target value,
/// 4. connectivity, 5. phi via the C6 blocks, 6. the 2^k bound.
pub fn verify_certificate(cert: &ConstructionCertificate) -> Report {
    let Target { k, q } = cert.target;
    let mut report = Report::new(format!("verify certificate for ({k},{q})"), &cert.to_json());

    let t = Instant::now();
    let realized = check_structure(&cert.root).and_then(|_| realize_with_blocks(&cert.root));
    let outcome = match &realized {
        Ok(r) => Ok(format!(
            "{} nodes deep, realizes {} vertices",
            cert.root.depth(),
            r.rooted.graph().vertex_count()
        )),
        Err(e) => Err(e.to_string()),
    };
    if !report.record("1-structure", t, outcome) {
        return report;
    }
    let realized = realized.expect("checked above");

    let t = Instant::now();
    let outcome = check_claims(&cert.root)
        .map(|_| {
            format!(
                "claims fold to {} with phi {}",
                predicted_bracket(&cert.root),
                predicted_phi(&cert.root)
            )
        })
        .map_err(|e| e.to_string());
    if !report.record("2-claims", t, outcome) {
        return report;
    }

    let t = Instant::now();
    let predicted = predicted_bracket(&cert.root);
    let computed = bracket(&realized.rooted);
    let outcome = if computed != predicted {
        Err(format!(
            "realized bracket {computed} differs from predicted {predicted}"
        ))
    } else if computed.value() != q {
        Err(format!(
            "realized value {} differs from target {q}",
            computed.value()
        ))
    } else {
        Ok(format!("realized bracket {computed}"))
    };
    if !report.record("3-realized-bracket", t, outcome) {
        return report;
    }

    let t = Instant::now();
    let graph = realized.rooted.graph();
    let outcome = if graph.is_connected() {
        Ok("connected".to_string())
    } else {
        Err(format!("{} components", graph.component_count()))
    };
    if !report.record("4-connected", t, outcome) {
        return report;
    }

    let t = Instant::now();
    let phi_cert = realized.phi_certificate();
    let outcome = match check_phi_certificate(graph, &phi_cert) {
        Ok(()) if phi_cert.phi() == k as usize => Ok(format!(
            "{} disjoint C6 blocks and a {}-vertex decycling set prove phi = {k}",
            phi_cert.disjoint_cycles.len(),
            phi_cert.decycling_set.len()
        )),
        Ok(()) => Err(format!(
            "blocks prove phi = {}, target k = {k}",
            phi_cert.phi()
        )),
        Err(v) => Err(format!("block certificate rejected: {v}")),
    };
    if !report.record("5-phi", t, outcome) {
        return report;
    }

    let t = Instant::now();
    report.record("6-bound", t, bound_clause(k, q));
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCase {
    pub label: String,
    pub vertices: usize,
    pub edges: usize,
    pub value: i64,
    pub phi: usize,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub version: String,
    pub seed: u64,
    pub n_max: usize,
    pub trials: usize,
    pub violations: Vec<SweepCase>,
    pub tight_count: usize,
    /// A few tight random cases plus fixed tight constructions.
    pub tight_examples: Vec<SweepCase>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "engstrom sweep [{}] seed={} n_max={} trials={}",
            self.version, self.seed, self.n_max, self.trials
        )?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  VIOLATION {} I={} phi={}", v.label, v.value, v.phi)?;
        }
        writeln!(
            f,
            "tight random cases: {}/{}",
            self.tight_count, self.trials
        )?;
        for t in &self.tight_examples {
            writeln!(
                f,
                "  tight {}: |I| = {} = 2^{}",
                t.label,
                t.value.abs(),
                t.phi
            )?;
        }
        Ok(())
    }
}

fn sweep_case(label: String, graph: &Graph, phi: usize) -> SweepCase {
    let value = value_at_minus_one(graph);
    SweepCase {
        label,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        value,
        phi,
        tight: value.unsigned_abs() == 1u64 << phi,
    }
}

/// Checks `|I(G;-1)| <= 2^phi(G)` on `trials` seeded G(n, p) graphs with
/// `n` uniform in `1..=n_max` and `p` cycling through 0.1, 0.2, ..., 0.9.
/// Phi comes from the exhaustive subset oracle, so `n_max <= 12`.
pub fn engstrom_sweep(n_max: usize, trials: usize, seed: u64) -> Result<SweepReport> {
    use rand::Rng;

    if n_max == 0 || n_max > 12 {
        return Err(Error::InvalidArgument(format!(
            "n_max must lie in 1..=12, got {n_max}"
        )));
    }
    let mut rng = seeded(seed);
    let mut violations = Vec::new();
    let mut tight_examples = Vec::new();
    let mut tight_count = 0;
    for trial in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let p = 0.1 * (1 + trial % 9) as f64;
        let graph = gnp(n, p, &mut rng);
        let phi = exhaustive_decycling_number(&graph)?;
        let case = sweep_case(format!("trial {trial} G({n}, {p:.1})"), &graph, phi);
        if case.value.unsigned_abs() > 1u64 << phi {
            violations.push(case);
        } else if case.tight {
            tight_count += 1;
            if phi > 0 && tight_examples.len() < 3 {
                tight_examples.push(case);
            }
        }
    }

    let c6 = make_cycle(6).expect("C6");
    let two_c6 = c6.disjoint_union(&c6);
    let phi = exhaustive_decycling_number(&two_c6)?;
    tight_examples.push(sweep_case("C6 + C6".into(), &two_c6, phi));
    let joined = crate::synth::synth(2, 4)?.realize()?;
    let phi = min_decycling(joined.graph(), None)?.phi;
    tight_examples.push(sweep_case(
        "two C6 connectified, synth(2,4)".into(),
        joined.graph(),
        phi,
    ));

    Ok(SweepReport {
        version: REPORT_VERSION.to_string(),
        seed,
        n_max,
        trials,
        violations,
        tight_count,
        tight_examples,
    })
}
