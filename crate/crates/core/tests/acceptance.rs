//! Acceptance suite: twelve criteria, each with a wall-clock limit.
//!
//! Runs as a plain binary under `cargo test` and prints one line per
//! criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use liecap_core::catalog::CATALOG;
use liecap_core::enumerate::{all_subspaces, subspace_count};
use liecap_core::harness::{run_suite, verify_algebra};
use liecap_core::linalg::format_vector;
use liecap_core::{
    builtin, EnumerationBudget, FieldDescriptor, HarnessConfig, Lattice, LieAlgebra, Outcome, Population, Subspace,
    VerificationReport,
};

type Verdict = Result<String, String>;

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::gf(p).unwrap()
}

fn config() -> HarnessConfig {
    HarnessConfig {
        timing: false,
        ..HarnessConfig::default()
    }
}

fn catalog_population(fields: &[FieldDescriptor]) -> Population {
    Population {
        fields: fields.to_vec(),
        ..Population::default()
    }
}

fn run(ids: &[&str], population: &Population) -> Result<Vec<VerificationReport>, String> {
    run_suite(ids, population, &config()).map_err(|e| e.to_string())
}

fn label(r: &VerificationReport) -> String {
    format!("{} on {} over {}", r.theorem_id, r.algebra.name, r.algebra.field)
}

/// Fails on any report that is neither Pass nor an allowed Skipped.
fn require(reports: &[VerificationReport], allow_skip: impl Fn(&VerificationReport) -> bool) -> Verdict {
    for r in reports {
        match r.outcome {
            Outcome::Pass => {}
            Outcome::Skipped if allow_skip(r) => {}
            _ => {
                return Err(format!(
                    "{}: {:?} {}",
                    label(r),
                    r.outcome,
                    r.witness.as_ref().map_or_else(|| r.note.clone().unwrap_or_default(), |w| w.detail.clone())
                ))
            }
        }
    }
    let passed = reports.iter().filter(|r| r.outcome == Outcome::Pass).count();
    if passed == 0 {
        return Err("no report passed".into());
    }
    Ok(format!("{passed} pass, {} skipped", reports.len() - passed))
}

fn skipped_for_hypothesis(r: &VerificationReport) -> bool {
    r.note.as_deref().is_some_and(|n| n.starts_with("hypothesis"))
}

fn stat(reports: &[VerificationReport], key: &str) -> u64 {
    reports.iter().filter_map(|r| r.stats.get(key)).sum()
}

fn example_one() -> Verdict {
    let reports = run(&["example-1"], &Population::default())?;
    if reports.len() != 2 {
        return Err(format!("expected E4 over Q and GF(3), got {} reports", reports.len()));
    }
    require(&reports, |_| false)
}

fn example_three_seven() -> Verdict {
    let reports = run(&["example-3.7"], &Population::default())?;
    if reports.len() != 2 {
        return Err(format!("expected E3 over Q and GF(3), got {} reports", reports.len()));
    }
    require(&reports, |_| false)
}

fn maximals_of_solvable() -> Verdict {
    let population = Population {
        fields: vec![gf(2), gf(3)],
        min_dim: 1,
        max_dim: 5,
        catalog: true,
        samples: 100,
        seed: 0,
        extra: Vec::new(),
    };
    let reports = run(&["thm-3.3-forward"], &population)?;
    let random = reports.iter().filter(|r| r.algebra.name.starts_with("rand(")).count();
    if random < 100 {
        return Err(format!("only {random} random algebras"));
    }
    if let Some(r) = reports.iter().find(|r| r.algebra.name.starts_with("rand(") && r.outcome != Outcome::Pass) {
        return Err(format!("{}: {:?}", label(r), r.outcome));
    }
    let summary = require(&reports, skipped_for_hypothesis)?;
    Ok(format!("{summary}, {} maximals", stat(&reports, "maximals")))
}

fn sl2_converse() -> Verdict {
    for p in [5, 7] {
        let l = builtin("sl2", gf(p)).map_err(|e| e.to_string())?;
        let lattice = Lattice::new(&l, &EnumerationBudget::default()).map_err(|e| e.to_string())?;
        let caps: BTreeSet<&Subspace> = lattice.subalgebras().iter().filter(|u| lattice.is_cap(u)).collect();
        let trivial: BTreeSet<&Subspace> = [l.zero_subspace(), l.full()]
            .iter()
            .map(|u| &lattice.subalgebras()[lattice.index_of(u).unwrap()])
            .collect();
        if caps != trivial {
            return Err(format!("sl2 over GF({p}) has {} CAP subalgebras", caps.len()));
        }
        if lattice.maximal_subalgebras().iter().all(|m| lattice.is_cap(m)) {
            return Err(format!("every maximal of sl2 over GF({p}) is CAP"));
        }
        for id in ["thm-3.3-converse", "lemma-2.1-iv"] {
            let r = verify_algebra(id, &l, &config()).map_err(|e| e.to_string())?;
            if r.outcome != Outcome::Pass {
                return Err(format!("{}: {:?}", label(&r), r.outcome));
            }
        }
    }
    Ok("CAP set is {0, L} over GF(5) and GF(7)".into())
}

fn dimension_formula() -> Verdict {
    let reports = run(&["lemma-2.6"], &catalog_population(&[gf(2), gf(3)]))?;
    let summary = require(&reports, |_| false)?;
    Ok(format!("{summary}, {} (U, series) pairs", stat(&reports, "checked")))
}

fn ideal_sum_closure() -> Verdict {
    let reports = run(&["lemma-2.5"], &catalog_population(&[gf(2), gf(3)]))?;
    let summary = require(&reports, |_| false)?;
    Ok(format!("{summary}, {} pairs", stat(&reports, "pairs")))
}

fn supersolvable_characterisation() -> Verdict {
    let reports = run(&["prop-2.7", "cor-2.8", "prop-2.9"], &catalog_population(&[gf(2), gf(3)]))?;
    let summary = require(&reports, skipped_for_hypothesis)?;
    let e3 = reports
        .iter()
        .find(|r| r.theorem_id == "cor-2.8" && r.algebra.name == "E3" && r.algebra.field == gf(3).to_string())
        .ok_or("no report for E3 over GF(3)")?;
    if e3.stats["supersolvable"] != 0 || e3.stats["non_cap_lines"] == 0 {
        return Err("E3 over GF(3) is not the non-supersolvable witness".into());
    }
    Ok(format!("{summary}, E3 over GF(3) has {} non-CAP lines", e3.stats["non_cap_lines"]))
}

fn embedding_theorems() -> Verdict {
    let reports = run(&["thm-2.2", "cor-2.3", "thm-2.4"], &catalog_population(&[gf(3)]))?;
    require(&reports, skipped_for_hypothesis)?;
    let mut counts = Vec::new();
    for id in ["thm-2.2", "cor-2.3", "thm-2.4"] {
        let n: u64 = reports
            .iter()
            .filter(|r| r.theorem_id == id)
            .filter_map(|r| r.stats.get("hypothesis"))
            .sum();
        if n == 0 {
            return Err(format!("{id}: empty hypothesis population"));
        }
        counts.push(format!("{id}: {n}"));
    }
    Ok(counts.join(", "))
}

fn cartan_characterisation() -> Verdict {
    let reports = run(&["thm-1.2"], &catalog_population(&[gf(3)]))?;
    let summary = require(&reports, skipped_for_hypothesis)?;
    Ok(format!("{summary}, {} Cartan subalgebras", stat(&reports, "cartans")))
}

fn prefrattini_claims() -> Verdict {
    let reports = run(&["prefrattini", "frattini-complemented"], &catalog_population(&[gf(2), gf(3)]))?;
    let summary = require(&reports, skipped_for_hypothesis)?;
    Ok(format!("{summary}, {} chief series", stat(&reports, "series")))
}

fn two_maximal_constructor() -> Verdict {
    let population = Population {
        fields: vec![gf(2), gf(3), FieldDescriptor::Rationals],
        min_dim: 2,
        max_dim: 5,
        catalog: true,
        samples: 60,
        seed: 1,
        extra: Vec::new(),
    };
    let reports = run(&["lemma-3.8"], &population)?;
    require(&reports, skipped_for_hypothesis)
}

fn satisfies_jacobi(l: &LieAlgebra) -> bool {
    let n = l.dim();
    let b = |x: &[_], y: &[_]| l.bracket(x, y).unwrap();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (x, y, z) = (l.unit(i), l.unit(j), l.unit(k));
                let terms = [b(&x, &b(&y, &z)), b(&y, &b(&z, &x)), b(&z, &b(&x, &y))];
                (0..n).all(|c| {
                    let s = terms[0][c].checked_add(&terms[1][c]).unwrap().checked_add(&terms[2][c]).unwrap();
                    s.is_zero()
                })
            })
        })
    })
}

fn all_vectors(d: FieldDescriptor, n: usize) -> Vec<Vec<liecap_core::FieldElement>> {
    let p = d.order().unwrap();
    (0..p.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let r = code % p;
                    code /= p;
                    d.residue(r)
                })
                .collect()
        })
        .collect()
}

fn vector_set(u: &Subspace, universe: &[Vec<liecap_core::FieldElement>]) -> BTreeSet<String> {
    universe
        .iter()
        .filter(|v| u.contains(v).unwrap())
        .map(|v| format_vector(v))
        .collect()
}

fn gaussian_oracle(n: u32, p: u128) -> u128 {
    (0..=n)
        .map(|k| {
            let num: u128 = (0..k).map(|i| p.pow(n - i) - 1).product();
            let den: u128 = (0..k).map(|i| p.pow(k - i) - 1).product();
            num / den
        })
        .sum()
}

fn infrastructure() -> Verdict {
    let budget = EnumerationBudget::default();
    let mut algebras = 0;
    for d in [gf(2), gf(3), gf(5), FieldDescriptor::Rationals] {
        for name in CATALOG {
            let Ok(l) = builtin(name, d) else { continue };
            let mut family = vec![l.clone(), l.direct_sum(&l).map_err(|e| e.to_string())?];
            if d.is_finite() {
                let lattice = Lattice::new(&l, &budget).map_err(|e| e.to_string())?;
                for ideal in lattice.ideals() {
                    family.push(l.quotient_algebra(&ideal).map_err(|e| e.to_string())?.algebra().clone());
                }
            }
            for m in &family {
                algebras += 1;
                if !satisfies_jacobi(m) {
                    return Err(format!("Jacobi fails for {} over {d}", m.name()));
                }
            }
        }
    }
    let d = gf(2);
    let mut pairs = 0;
    for n in 1..=4 {
        let universe = all_vectors(d, n);
        let subspaces = all_subspaces(d, n, &budget).map_err(|e| e.to_string())?;
        let sets: Vec<BTreeSet<String>> = subspaces.iter().map(|u| vector_set(u, &universe)).collect();
        for (u, su) in subspaces.iter().zip(&sets) {
            if su.len() != 1 << u.dim() {
                return Err(format!("{u} has {} vectors", su.len()));
            }
            for (v, sv) in subspaces.iter().zip(&sets) {
                pairs += 1;
                let meet: BTreeSet<String> = su.intersection(sv).cloned().collect();
                if vector_set(&u.intersection(v).unwrap(), &universe) != meet {
                    return Err(format!("intersection of {u} and {v}"));
                }
                let join: BTreeSet<String> = universe
                    .iter()
                    .filter(|x| su.contains(&format_vector(x)))
                    .flat_map(|x| {
                        universe
                            .iter()
                            .filter(|y| sv.contains(&format_vector(y)))
                            .map(|y| format_vector(&x.iter().zip(y).map(|(a, b)| a.checked_add(b).unwrap()).collect::<Vec<_>>()))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                if vector_set(&u.sum(v).unwrap(), &universe) != join {
                    return Err(format!("sum of {u} and {v}"));
                }
                if u.is_subspace_of(v) != su.is_subset(sv) {
                    return Err(format!("containment of {u} in {v}"));
                }
            }
        }
    }
    for p in [2u32, 3, 5] {
        for n in 0..=4usize {
            let d = gf(p as u64);
            let enumerated = all_subspaces(d, n, &budget).map_err(|e| e.to_string())?.len() as u128;
            let expected = gaussian_oracle(n as u32, p as u128);
            if enumerated != expected || subspace_count(n, p) != expected {
                return Err(format!("GF({p})^{n}: {enumerated} subspaces, expected {expected}"));
            }
        }
    }
    Ok(format!("{algebras} algebras satisfy Jacobi, {pairs} subspace pairs agree"))
}

type Criterion = (&'static str, Duration, fn() -> Verdict);

const CRITERIA: &[Criterion] = &[
    ("example: E4 minimal ideal, pronormal, NotCAP", Duration::from_secs(1), example_one),
    ("example: E3 line is NotCAP", Duration::from_secs(1), example_three_seven),
    ("maximals of solvable algebras are CAP", Duration::from_secs(300), maximals_of_solvable),
    ("sl2 has a NotCAP maximal and only trivial CAP subalgebras", Duration::from_secs(30), sl2_converse),
    ("covered dimension equals dim U", Duration::from_secs(300), dimension_formula),
    ("CAP plus ideal is CAP", Duration::from_secs(300), ideal_sum_closure),
    ("lines CAP iff supersolvable", Duration::from_secs(120), supersolvable_characterisation),
    ("ideally embedded and supplement criteria", Duration::from_secs(300), embedding_theorems),
    ("Cartan subalgebras by cover/avoid pattern", Duration::from_secs(120), cartan_characterisation),
    ("prefrattini pattern and series independence", Duration::from_secs(300), prefrattini_claims),
    ("2-maximal ideal constructor", Duration::from_secs(120), two_maximal_constructor),
    ("Jacobi, subspace oracles, subspace counts", Duration::from_secs(120), infrastructure),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for (i, (name, limit, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; over time limit")),
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "[{tag}] {:>2}. {name} ({:.2}s, limit {}s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        failures += verdict.is_err() as usize;
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
