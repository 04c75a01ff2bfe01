//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use k0cert::bratteli;
use k0cert::certify::{
    self, find_invariant_state, find_positive_coboundary, lattice_cone_point, ConeDecision, SearchParams, StateRequest,
    VerdictKind, Witness,
};
use k0cert::cli;
use k0cert::dimgroup::{InductiveSystem, LimitElement};
use k0cert::kaction::{sigma_words, K0Action};
use k0cert::linalg::lp::{lp_feasible, Constraint, Feasibility, LinearProgram};
use k0cert::linalg::{determinant, hermite_normal_form, smith_normal_form};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shift_violation() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out_path = dir.path().join("verdict.json");
    let doc = data_path("compactified_shift.json");
    let start = Instant::now();
    let code = cli::run(
        [
            "k0cert",
            "check-mf",
            doc.to_str().unwrap(),
            "--max-stage",
            "3",
            "--word-length",
            "1",
            "--height",
            "2",
            "--json-out",
            out_path.to_str().unwrap(),
        ],
        &mut Vec::new(),
        &mut Vec::new(),
    );
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let v: Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).map_err(|e| e.to_string())?;
    ensure(v["kind"] == "VIOLATION", || format!("kind {}", v["kind"]))?;
    let w = &v["witness"];
    ensure(
        w["value"]["stage"] == 2 && w["value"]["vector"] == serde_json::json!([0, 1, 0, 0, 0]),
        || format!("value {}", w["value"]),
    )?;
    ensure(
        w["preimages"] == serde_json::json!([{"stage": 1, "vector": [1, 0, 0]}]),
        || format!("preimages {}", w["preimages"]),
    )?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "x = 1_{{1}} at stage 2, g = 1_[1,inf] at stage 1, {:.3}s",
        elapsed.as_secs_f64()
    ))
}

fn random_request(rng: &mut StdRng, p: usize, r: usize) -> StateRequest {
    let size = rng.random_range(1..=p.min(3));
    let set = (0..size)
        .map(|_| {
            let mut v = vec![BigInt::from(0); p];
            for x in v.iter_mut() {
                if rng.random_bool(0.4) {
                    *x = BigInt::from(rng.random_range(0..=2));
                }
            }
            if v.iter().all(|x| x == &BigInt::from(0)) {
                v[rng.random_range(0..p)] = BigInt::from(1);
            }
            LimitElement::new(0, v)
        })
        .collect();
    let words = sigma_words(r, 2);
    let f = (0..rng.random_range(1..=3))
        .map(|_| words[rng.random_range(0..words.len())].clone())
        .collect();
    StateRequest { set, words: f }
}

fn finite_systems() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x51ab1e);
    let boxes = [
        SearchParams::default(),
        SearchParams {
            max_stage: 2,
            word_length: 2,
            height_bound: 5,
        },
        SearchParams {
            max_stage: 0,
            word_length: 1,
            height_bound: 1,
        },
    ];
    let start = Instant::now();
    let mut states = 0;
    for t in 0..100 {
        let fs = random_finite_system(&mut rng, 8, 3);
        let (system, action) = bratteli::finite_system_to_k0(&fs).map_err(|e| e.to_string())?;
        let p = fs.points;
        let requests: Vec<StateRequest> = std::iter::once(StateRequest::default_for(&system, &action))
            .chain((0..2).map(|_| random_request(&mut rng, p, action.generators())))
            .collect();
        for params in boxes {
            let v = certify::check_mf(&system, &action, Some(requests.clone()), params).map_err(|e| e.to_string())?;
            ensure(v.kind != VerdictKind::Violation && v.witness().is_none(), || {
                format!("system {t}: witness found")
            })?;
            ensure(v.kind == VerdictKind::Consistent, || format!("system {t}: {}", v.kind))?;
            for s in &v.states {
                let s = s.as_ref().unwrap();
                ensure(s.is_all_ones(), || format!("system {t}: functional {:?}", s.functional))?;
                states += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "100 systems, {states} all-ones states, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

/// Witnesses from the shift document over several boxes and from random
/// one-stage positive maps.
fn discovered_witnesses() -> Vec<(InductiveSystem, K0Action, Witness, usize)> {
    let mut found = Vec::new();
    let doc = golden("compactified_shift.json");
    for (n, l, b) in [(2, 1, 2), (3, 1, 2), (3, 2, 4), (4, 1, 16)] {
        let params = SearchParams {
            max_stage: n,
            word_length: l,
            height_bound: b,
        };
        if let Some(w) = find_positive_coboundary(doc.system(), doc.action(), params)
            .unwrap()
            .witness
        {
            found.push((doc.system().clone(), doc.action().clone(), w, n));
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let (s, a) = random_one_stage(&mut rng, 4, 2);
        if let Some(w) = find_positive_coboundary(&s, &a, SearchParams::default())
            .unwrap()
            .witness
        {
            found.push((s, a, w, 0));
        }
    }
    found
}

fn mutual_exclusion() -> Outcome {
    let witnesses = discovered_witnesses();
    ensure(witnesses.len() > 4, || {
        format!("only {} witnesses discovered", witnesses.len())
    })?;
    for (i, (s, a, w, n)) in witnesses.iter().enumerate() {
        ensure(w.verify(s, a), || format!("witness {i} fails re-verification"))?;
        let req = StateRequest::excluded_by(w, a.generators());
        for max in 0..=(*n + 2) {
            let st = find_invariant_state(s, a, &req, max).map_err(|e| format!("witness {i}: {e}"))?;
            ensure(st.is_none(), || format!("witness {i}: state found at max stage {max}"))?;
        }
    }
    Ok(format!("{} witnesses, no paired state at any stage", witnesses.len()))
}

fn identity_actions() -> Outcome {
    let mut names = Vec::new();
    for name in GOLDENS {
        let doc = golden(name);
        let r = doc.action().generators().max(1);
        let id = doc
            .with_action(K0Action::identity(doc.system(), r))
            .map_err(|e| e.to_string())?;
        let v =
            certify::check_mf(id.system(), id.action(), None, SearchParams::default()).map_err(|e| e.to_string())?;
        ensure(v.kind == VerdictKind::Consistent, || format!("{name}: {}", v.kind))?;
        let st = v
            .states
            .first()
            .cloned()
            .flatten()
            .ok_or(format!("{name}: no state certificate"))?;
        ensure(st.verify(id.system(), id.action()), || {
            format!("{name}: certificate does not verify")
        })?;
        names.push(name.trim_end_matches(".json"));
    }
    Ok(format!("CONSISTENT on {}", names.join(", ")))
}

fn exactlinalg_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xbeef);
    let one = BigInt::from(1);
    for t in 0..500 {
        let rows = rng.random_range(1..=5);
        let cols = rng.random_range(1..=5);
        let a = random_matrix(&mut rng, rows, cols, -9, 9);
        let h = hermite_normal_form(&a);
        ensure(h.u.mul(&a).unwrap() == h.h, || format!("matrix {t}: U·A ≠ H"))?;
        ensure(determinant(&h.u).unwrap().abs() == one, || {
            format!("matrix {t}: U not unimodular")
        })?;
        ensure(is_echelon_reduced(&h.h), || {
            format!("matrix {t}: H not in Hermite form")
        })?;
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).unwrap().mul(&s.v).unwrap() == s.s, || {
            format!("matrix {t}: U·A·V ≠ S")
        })?;
        ensure(
            determinant(&s.u).unwrap().abs() == one && determinant(&s.v).unwrap().abs() == one,
            || format!("matrix {t}: SNF transforms not unimodular"),
        )?;
        ensure(is_smith_diagonal(&s.s), || {
            format!("matrix {t}: S not a divisibility chain")
        })?;
    }
    let mut feasible = 0;
    for t in 0..200 {
        let n = rng.random_range(1..=4);
        let mut lp = LinearProgram::new(n);
        for _ in 0..rng.random_range(0..=2) {
            let c: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
            lp = lp.equal(Constraint::from_i64(&c, rng.random_range(-3..=3)));
        }
        for _ in 0..rng.random_range(1..=6) {
            let c: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
            lp = lp.at_least(Constraint::from_i64(&c, rng.random_range(-3..=3)));
        }
        let verdict = lp_feasible(&lp).unwrap();
        let oracle = brute_force_feasible(&lp);
        ensure(verdict.is_feasible() == oracle, || {
            format!("program {t}: solver {} vs oracle {oracle}", verdict.is_feasible())
        })?;
        match &verdict {
            Feasibility::Feasible(x) => ensure(lp.is_satisfied_by(x), || format!("program {t}: bad point"))?,
            Feasibility::Infeasible(c) => ensure(c.verifies(&lp), || format!("program {t}: bad certificate"))?,
        }
        feasible += usize::from(oracle);
    }
    Ok(format!(
        "500 matrices; 200 programs ({feasible} feasible) match the oracle"
    ))
}

fn lattice_cone_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xc0de);
    let mut meets = 0;
    for t in 0..200 {
        let (s, a) = random_one_stage(&mut rng, 4, 2);
        let basis = a.hsigma_stage_lattice(&s, 0, 0, 1).map_err(|e| e.to_string())?;
        let p = s.rank(0).unwrap();
        let oracle = nonneg_box(p, 5).iter().any(|v| in_column_lattice(&basis, v));
        let decision = lattice_cone_point(&basis);
        let lp_says = matches!(decision, ConeDecision::Point(_));
        ensure(lp_says == oracle, || {
            format!("system {t}: LP {lp_says} vs enumeration {oracle} ({decision:?})")
        })?;
        if let ConeDecision::Point(v) = decision {
            ensure(in_column_lattice(&basis, &v), || {
                format!("system {t}: point outside the lattice")
            })?;
            meets += 1;
        }
    }
    Ok(format!("200 systems agree ({meets} meet the cone)"))
}

fn round_trip_and_determinism() -> Outcome {
    for name in GOLDENS {
        let bytes = golden_bytes(name);
        let doc = bratteli::parse(&bytes).map_err(|e| format!("{name}: {e}"))?;
        let text = bratteli::serialize(&doc);
        ensure(text.as_bytes() == bytes.as_slice(), || {
            format!("{name}: serialization differs from golden")
        })?;
        ensure(bratteli::parse(text.as_bytes()).unwrap() == doc, || {
            format!("{name}: parse∘serialize")
        })?;
        let first = cli::check_mf_bytes(&bytes, None, SearchParams::default())
            .map_err(|e| e.to_string())?
            .1;
        let second = cli::check_mf_bytes(&bytes, None, SearchParams::default())
            .map_err(|e| e.to_string())?
            .1;
        ensure(first == second, || format!("{name}: certificates differ between runs"))?;
    }
    Ok(format!(
        "{} goldens byte-stable, certificates reproducible",
        GOLDENS.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "compactified shift: VIOLATION with the singleton witness",
            shift_violation,
        ),
        ("finite systems: never VIOLATION, all-ones states", finite_systems),
        ("witness / invariant state mutual exclusion", mutual_exclusion),
        ("identity actions on bundled systems: CONSISTENT", identity_actions),
        ("normal forms and exact LP against oracles", exactlinalg_suites),
        ("lattice-cone decision against enumeration", lattice_cone_oracle),
        ("round trip and deterministic certificates", round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
