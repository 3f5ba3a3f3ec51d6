//! Verification suites behind `lw verify`.
//!
//! Each suite builds the requested instance, runs its checks, and returns a
//! report whose records carry pass/fail/falsified/budget statuses and
//! witnesses. Sampling is seeded; reports are reproducible.

use std::time::Instant;

use layered_wheel::construction::{verify_construction_invariants, LayeredWheel, LayeredWheelParams};
use layered_wheel::model::{linear_clique_model, validate_model};
use layered_wheel::separators::pipeline::{build_pipeline, verify_h_prime_props, verify_separator_bound};
use layered_wheel::series_parallel::{contract_to_h_prime, is_series_parallel};
use layered_wheel::theta::{crossing_witness, find_long_theta, max_anticomplete_path_family, theta_graph};
use layered_wheel::{Budget, SearchResult};
use rand::seq::SliceRandom;

use crate::report::{from_core, Report, ReportCheck, Status};
use crate::sample::{rng, sample_subgraph, sample_weights, DELETION_RATES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Construction,
    #[value(name = "series-parallel")]
    SeriesParallel,
    Paths,
    Separator,
    Theta,
    All,
}

pub struct SuiteConfig {
    pub g: u32,
    pub k: u32,
    pub seed: u64,
    pub samples: Option<usize>,
    pub budget: u64,
    pub tw_cap: usize,
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report, String> {
    let params = LayeredWheelParams::new(cfg.g, cfg.k).map_err(|e| e.to_string())?;
    let lw = LayeredWheel::build(params).map_err(|e| e.to_string())?;
    let suite_name = match suite {
        Suite::Construction => "construction",
        Suite::SeriesParallel => "series-parallel",
        Suite::Paths => "paths",
        Suite::Separator => "separator",
        Suite::Theta => "theta",
        Suite::All => "all",
    };
    let mut report = Report::new(
        suite_name,
        serde_json::json!({"g": cfg.g, "k": cfg.k}),
        cfg.seed,
        cfg.budget,
    );
    match suite {
        Suite::Construction => construction_checks(&lw, &mut report),
        Suite::SeriesParallel => series_parallel_checks(&lw, cfg, &mut report),
        Suite::Paths => paths_checks(&lw, cfg, &mut report),
        Suite::Separator => separator_checks(&lw, cfg, &mut report),
        Suite::Theta => theta_checks(&lw, cfg, &mut report),
        Suite::All => {
            construction_checks(&lw, &mut report);
            series_parallel_checks(&lw, cfg, &mut report);
            paths_checks(&lw, cfg, &mut report);
            separator_checks(&lw, cfg, &mut report);
            theta_checks(&lw, cfg, &mut report);
        }
    }
    Ok(report)
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn construction_checks(lw: &LayeredWheel, report: &mut Report) {
    let t = Instant::now();
    let inv = verify_construction_invariants(lw);
    let elapsed = ms(t);
    report.extend(inv.checks.iter().map(|c| from_core(c, elapsed)));

    let t = Instant::now();
    let model = linear_clique_model(lw);
    let ok = validate_model(&model, true, false);
    report.push(ReportCheck {
        name: "linear_clique_model".into(),
        claim: "the layer paths form a linear complete model, certifying treewidth >= k-1".into(),
        status: if ok.is_ok() { Status::Pass } else { Status::Fail },
        witness: ok.err().map(|e| serde_json::Value::String(e.to_string())),
        elapsed_ms: ms(t),
    });
}

fn series_parallel_checks(lw: &LayeredWheel, cfg: &SuiteConfig, report: &mut Report) {
    let classes = lw.classes();
    let t = Instant::now();
    let hp = contract_to_h_prime(&lw.graph, &classes).unwrap();
    let full_ok = is_series_parallel(&hp.graph).is_series_parallel();
    report.push(ReportCheck {
        name: "h_prime_series_parallel_full".into(),
        claim: "contracting big stars in the full instance yields a series-parallel graph".into(),
        status: if full_ok { Status::Pass } else { Status::Falsified },
        witness: None,
        elapsed_ms: ms(t),
    });

    let samples = cfg.samples.unwrap_or(200);
    let mut r = rng(cfg.seed);
    let t = Instant::now();
    let mut failures = Vec::new();
    for i in 0..samples {
        let rate = DELETION_RATES[i % DELETION_RATES.len()];
        let (h, sub_classes) = sample_subgraph(&lw.graph, &classes, rate, &mut r);
        let hp = contract_to_h_prime(&h, &sub_classes).unwrap();
        if !is_series_parallel(&hp.graph).is_series_parallel() {
            failures.push(i);
        }
    }
    report.push(ReportCheck {
        name: "h_prime_series_parallel_sampled".into(),
        claim: format!("H' of {samples} sampled induced subgraphs is series-parallel"),
        status: if failures.is_empty() { Status::Pass } else { Status::Falsified },
        witness: if failures.is_empty() {
            None
        } else {
            Some(serde_json::json!({"failed_samples": failures}))
        },
        elapsed_ms: ms(t),
    });
}

fn paths_checks(lw: &LayeredWheel, cfg: &SuiteConfig, report: &mut Report) {
    let bigs = lw.big_vertices();
    let mut max_seen = 0usize;
    for (i, &a) in bigs.iter().enumerate() {
        for &b in &bigs[i + 1..] {
            let t = Instant::now();
            let mut budget = Budget::new(cfg.budget);
            let fam = max_anticomplete_path_family(&lw.graph, a, b, 8, &mut budget);
            let size = fam.family.paths.len();
            max_seen = max_seen.max(size);
            let status = if fam.out_of_budget || fam.hit_cap {
                Status::BudgetExceeded
            } else if size <= 7 {
                Status::Pass
            } else {
                Status::Falsified
            };
            report.push(ReportCheck {
                name: format!("path_family_{a}_{b}"),
                claim: "at most 7 pairwise internally anticomplete paths between big vertices".into(),
                status,
                witness: Some(serde_json::json!({"size": size, "exhaustive": fam.exhaustive})),
                elapsed_ms: ms(t),
            });
        }
    }
    report.push(ReportCheck {
        name: "max_path_family".into(),
        claim: "largest family over all big pairs; 3 is the tight prediction".into(),
        status: Status::Pass,
        witness: Some(serde_json::json!({"max_family": max_seen, "attains_three": max_seen == 3})),
        elapsed_ms: 0,
    });
}

fn separator_checks(lw: &LayeredWheel, cfg: &SuiteConfig, report: &mut Report) {
    let classes = lw.classes();
    let samples = cfg.samples.unwrap_or(100);
    let mut r = rng(cfg.seed);
    for i in 0..samples {
        let t = Instant::now();
        let w = sample_weights(lw.graph.n(), &mut r);
        match build_pipeline(&lw.graph, &classes, &w, cfg.tw_cap) {
            Ok(state) => {
                let checks = verify_separator_bound(&state);
                let bad: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                report.push(ReportCheck {
                    name: format!("pipeline_weights_{i}"),
                    claim: "pipeline completes with a balanced separator within the size bound".into(),
                    status: if bad.is_empty() { Status::Pass } else { Status::Fail },
                    witness: Some(serde_json::json!({
                        "separator_size": state.separator.len(),
                        "h_dprime_width": state.td_width,
                        "width_exact": state.td_exact,
                        "failed": bad,
                    })),
                    elapsed_ms: ms(t),
                });
            }
            Err(e) => {
                report.push(ReportCheck {
                    name: format!("pipeline_weights_{i}"),
                    claim: "pipeline completes with a balanced separator within the size bound".into(),
                    status: Status::Falsified,
                    witness: Some(serde_json::Value::String(e.to_string())),
                    elapsed_ms: ms(t),
                });
            }
        }
    }
    // structural invariants of H' on sampled subgraphs
    let sub_samples = (samples / 10).max(5);
    let t = Instant::now();
    let mut failures = Vec::new();
    for i in 0..sub_samples {
        let rate = DELETION_RATES[i % DELETION_RATES.len()];
        let (h, sub_classes) = sample_subgraph(&lw.graph, &classes, rate, &mut r);
        let hp = contract_to_h_prime(&h, &sub_classes).unwrap();
        if verify_h_prime_props(&hp, lw.params.g).iter().any(|c| !c.passed) {
            failures.push(i);
        }
    }
    report.push(ReportCheck {
        name: "h_prime_structure_sampled".into(),
        claim: "H' of sampled subgraphs keeps off-star degrees <= 2 and star spacing >= 2^g/3 - 2".into(),
        status: if failures.is_empty() { Status::Pass } else { Status::Fail },
        witness: if failures.is_empty() {
            None
        } else {
            Some(serde_json::json!({"failed_samples": failures}))
        },
        elapsed_ms: ms(t),
    });
}

fn theta_checks(lw: &LayeredWheel, cfg: &SuiteConfig, report: &mut Report) {
    let t = Instant::now();
    let min_len = ((1usize << lw.params.g) - 1).max(2);
    let mut budget = Budget::new(cfg.budget);
    let outcome = find_long_theta(&lw.graph, min_len, &mut budget);
    let (status, witness) = match &outcome {
        SearchResult::Found(cert) => (
            Status::Pass,
            serde_json::json!({"found": true, "length": cert.length, "a": cert.a, "b": cert.b}),
        ),
        SearchResult::NotFound => (Status::Pass, serde_json::json!({"found": false})),
        SearchResult::BudgetExceeded => (Status::BudgetExceeded, serde_json::json!({"found": null})),
    };
    report.push(ReportCheck {
        name: "long_theta_search".into(),
        claim: format!("exhaustive search for an induced theta of length >= {min_len}"),
        status,
        witness: Some(witness),
        elapsed_ms: ms(t),
    });

    // crossing pattern on a reference theta under seeded random orders
    let samples = cfg.samples.unwrap_or(10_000);
    let t = Instant::now();
    let (_, cert) = theta_graph([4, 4, 4]);
    let vs = cert.vertices();
    let mut r = rng(cfg.seed);
    let mut falsified = 0usize;
    for _ in 0..samples {
        let mut order = vs.clone();
        order.shuffle(&mut r);
        if crossing_witness(&cert, &order).unwrap().is_none() {
            falsified += 1;
        }
    }
    report.push(ReportCheck {
        name: "crossing_pattern_random_orders".into(),
        claim: format!("every one of {samples} random orders of a length-4 theta has a crossing 4-subset"),
        status: if falsified == 0 { Status::Pass } else { Status::Falsified },
        witness: Some(serde_json::json!({"falsified_orders": falsified})),
        elapsed_ms: ms(t),
    });
}
