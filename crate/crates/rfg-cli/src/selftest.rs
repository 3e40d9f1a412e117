//! Built-in end-to-end checks, deterministic for a fixed seed.

use rfg_core::num_bigint::BigInt;
use rfg_core::{
    ball, canonical_complete, check_local_isometry, exact_divisibility, heisenberg_divisibility,
    lcm_1_to, random_square_closed, separating_cover, slk_bounds_table, verify_certificate_json,
    CoverError, OmegaMode, PartialCover, SimplicialGraph, Word,
};

use super::Failure;

fn fixtures() -> Vec<(&'static str, SimplicialGraph)> {
    vec![
        ("single-vertex", SimplicialGraph::new(&["a"], &[]).unwrap()),
        ("two-isolated", SimplicialGraph::new(&["a", "b"], &[]).unwrap()),
        ("single-edge", SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap()),
        (
            "path-p3",
            SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap(),
        ),
    ]
}

pub fn run(seed: u64) -> Result<String, Failure> {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, result: Result<(), String>| match result {
        Ok(()) => lines.push(format!("ok {name}")),
        Err(detail) => {
            lines.push(format!("FAIL {name}: {detail}"));
            failures.push(name.to_owned());
        }
    };

    record("separating-covers-small-balls", check_witness_pipeline());
    record("oracle-pinned-values", check_oracle());
    record("random-completion", check_random_completion(seed));
    record("missing-corner-negative-control", check_negative_control());
    record("slk-bounds", check_slk());
    record("certificate-round-trip", check_certificate_round_trip());

    let body = lines.join("\n");
    if failures.is_empty() {
        Ok(body)
    } else {
        Err(Failure::error(format!("{body}\nselftest failed: {}", failures.join(", "))))
    }
}

fn check_witness_pipeline() -> Result<(), String> {
    for (name, graph) in fixtures() {
        for e in ball(&graph, 3) {
            let cert = separating_cover(&graph, &e.as_word())
                .map_err(|err| format!("{name} {}: {err}", e.display(&graph)))?;
            if cert.degree > e.len() + 1 {
                return Err(format!("{name}: degree bound violated"));
            }
            if !cert.cover.separates(&e.as_word()) {
                return Err(format!("{name}: certificate does not separate"));
            }
        }
    }
    Ok(())
}

fn check_oracle() -> Result<(), String> {
    let z = SimplicialGraph::new(&["a"], &[]).unwrap();
    let w = Word::parse(&z, "a^6").unwrap();
    let r = exact_divisibility(&z, &w, OmegaMode::AllSubgroups, None)
        .map_err(|e| e.to_string())?;
    if r.value != 4 {
        return Err(format!("D_Z(a^6) = {} (expected 4)", r.value));
    }
    let f2 = SimplicialGraph::new(&["a", "b"], &[]).unwrap();
    let z2 = SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap();
    for graph in [f2, z2] {
        let w = Word::parse(&graph, "a b").unwrap();
        let r = exact_divisibility(&graph, &w, OmegaMode::AllSubgroups, None)
            .map_err(|e| e.to_string())?;
        if r.value != 2 {
            return Err(format!("D(a b) = {} (expected 2)", r.value));
        }
        let cert = separating_cover(&graph, &w).map_err(|e| e.to_string())?;
        if (cert.degree as u64) < r.value {
            return Err("certificate degree fell below the oracle minimum".into());
        }
    }
    Ok(())
}

fn check_random_completion(seed: u64) -> Result<(), String> {
    let graphs = fixtures();
    for case in 0..1000u64 {
        let (_, graph) = &graphs[(case % graphs.len() as u64) as usize];
        let vertices = 1 + (case as usize % 7);
        let pc = random_square_closed(graph, vertices, 3 * vertices, seed ^ (case * 0x9e37));
        if !check_local_isometry(graph, &pc).is_empty() {
            return Err(format!("case {case}: generator emitted a non-isometric cover"));
        }
        canonical_complete(graph, &pc)
            .map_err(|e| format!("case {case}: completion failed: {e}"))?;
    }
    Ok(())
}

fn check_negative_control() -> Result<(), String> {
    let graph = SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap();
    let mut pc = PartialCover::new(2, 3);
    pc.set(&graph, 0, 0, 1).map_err(|e| e.to_string())?;
    pc.set(&graph, 1, 1, 2).map_err(|e| e.to_string())?;
    let report = check_local_isometry(&graph, &pc);
    if report.is_empty() {
        return Err("interval must report a missing corner".into());
    }
    match canonical_complete(&graph, &pc) {
        Err(CoverError::CompletionCommutationFailure { .. }) => Ok(()),
        Err(other) => Err(format!("unexpected error: {other}")),
        Ok(_) => Err("naive completion of the interval must fail commutation".into()),
    }
}

fn check_slk() -> Result<(), String> {
    let table = slk_bounds_table(3, 8).map_err(|e| e.to_string())?;
    for row in &table.rows {
        if row.lower > row.upper {
            return Err(format!("sandwich violated at n={}", row.n));
        }
    }
    let r4 = &table.rows[3];
    if (r4.lower.to_string(), r4.upper.to_string()) != ("25".into(), "31".into()) {
        return Err(format!("row n=4 reads ({}, {})", r4.lower, r4.upper));
    }
    for n in 1..=6u64 {
        let l = lcm_1_to(n);
        for k in [3usize, 4] {
            let (value, _) = heisenberg_divisibility(k, &l).map_err(|e| e.to_string())?;
            let bound = (1..k).fold(BigInt::from(1u8), |acc, _| acc * n);
            if value < bound {
                return Err(format!("Heisenberg bound violated at k={k}, n={n}"));
            }
        }
    }
    Ok(())
}

fn check_certificate_round_trip() -> Result<(), String> {
    let graph = SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    let w = Word::parse(&graph, "a b c^-1").unwrap();
    let cert = separating_cover(&graph, &w).map_err(|e| e.to_string())?;
    let json = cert.to_json(&graph);
    verify_certificate_json(&json).map_err(|e| format!("round trip: {e}"))?;
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    value["degree"] = serde_json::json!(cert.degree + 1);
    if verify_certificate_json(&value.to_string()).is_ok() {
        return Err("corrupted certificate accepted".into());
    }
    Ok(())
}
