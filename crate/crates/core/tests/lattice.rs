//! Chief series, cover/avoid predicates, enumeration and the catalog, with
//! brute-force oracles where the answer is derived.

use liecap_core::cap::{
    avoids, cap_dimension, check_ideally_embedded_with, check_two_maximal, covers, is_c_ideal, is_cap,
    is_ideally_embedded, is_strongly_pronormal, is_supplement, prefrattini_subalgebras, supplement_cap_hypothesis,
    two_maximal_ideal,
};
use liecap_core::catalog::{self, builtin};
use liecap_core::chief::{
    all_chief_factors, chief_series, classify_factor, is_chief_factor, minimal_ideal_rational, minimal_ideals,
};
use liecap_core::enumerate::{
    all_ideals, all_subspaces, cartan_subalgebras, frattini, is_supersolvable, maximal_subalgebras, nilradical,
    radical, random_solvable,
};
use liecap_core::harness::{verify, verify_algebra};
use liecap_core::{
    Certainty, CapMode, ChiefFactor, ChiefSeries, EnumerationBudget, Error, FieldDescriptor, HarnessConfig, Lattice,
    LieAlgebra, Outcome, Overall, Population, Subspace,
};

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::gf(p).unwrap()
}

const Q: FieldDescriptor = FieldDescriptor::Rationals;

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn coord(l: &LieAlgebra, idx: &[usize]) -> Subspace {
    l.coordinate_span(idx)
}

fn span(l: &LieAlgebra, rows: &[&[i64]]) -> Subspace {
    let d = l.descriptor();
    l.span(rows.iter().map(|r| r.iter().map(|&x| d.from_i64(x)).collect()).collect()).unwrap()
}

/// Ideals by filtering every subspace on basis brackets.
fn brute_ideals(l: &LieAlgebra) -> Vec<Subspace> {
    all_subspaces(l.descriptor(), l.dim(), &budget())
        .unwrap()
        .into_iter()
        .filter(|u| {
            u.basis()
                .iter()
                .all(|v| (0..l.dim()).all(|i| u.contains(&l.bracket(v, &l.unit(i)).unwrap()).unwrap()))
        })
        .collect()
}

/// Subalgebras by filtering every subspace on pairwise basis brackets.
fn brute_subalgebras(l: &LieAlgebra) -> Vec<Subspace> {
    all_subspaces(l.descriptor(), l.dim(), &budget())
        .unwrap()
        .into_iter()
        .filter(|u| {
            u.basis()
                .iter()
                .all(|a| u.basis().iter().all(|b| u.contains(&l.bracket(a, b).unwrap()).unwrap()))
        })
        .collect()
}

/// Maximal subalgebras: proper, with no proper subalgebra strictly above.
fn brute_maximals(l: &LieAlgebra) -> Vec<Subspace> {
    let subs = brute_subalgebras(l);
    subs.iter()
        .filter(|m| !m.is_full())
        .filter(|m| !subs.iter().any(|s| !s.is_full() && s.dim() > m.dim() && m.is_subspace_of(s)))
        .cloned()
        .collect()
}

#[test]
fn minimal_ideals_over_prime_fields() {
    let e3 = builtin("E3", gf(3)).unwrap();
    assert_eq!(minimal_ideals(&e3, &budget()).unwrap(), vec![coord(&e3, &[0, 1])]);
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(minimal_ideals(&sl2, &budget()).unwrap(), vec![sl2.full()]);
    let a2 = builtin("abelian(2)", gf(2)).unwrap();
    assert_eq!(minimal_ideals(&a2, &budget()).unwrap().len(), 3);
}

#[test]
fn minimal_ideals_match_brute_force() {
    for name in ["E3", "E4", "H3", "K2+K2", "R3"] {
        for p in [2, 3, 5] {
            let l = builtin(name, gf(p)).unwrap();
            let ideals = brute_ideals(&l);
            let minimal: Vec<Subspace> = ideals
                .iter()
                .filter(|a| !a.is_zero() && !ideals.iter().any(|b| !b.is_zero() && b.dim() < a.dim() && b.is_subspace_of(a)))
                .cloned()
                .collect();
            assert_eq!(minimal_ideals(&l, &budget()).unwrap(), minimal, "{name} over GF({p})");
        }
    }
}

#[test]
fn rational_minimal_ideals_are_certified() {
    let e4 = builtin("E4", Q).unwrap();
    let m = minimal_ideal_rational(&e4).unwrap();
    assert!(m.certified);
    assert_eq!(m.ideal, coord(&e4, &[0, 1]));
    let k2 = builtin("K2", Q).unwrap();
    let m = minimal_ideal_rational(&k2).unwrap();
    assert!(m.certified);
    assert_eq!(m.ideal, coord(&k2, &[0]));
    let a1 = builtin("abelian(1)", Q).unwrap();
    assert_eq!(minimal_ideal_rational(&a1).unwrap().ideal, a1.full());
}

#[test]
fn canonical_chief_series() {
    let k2 = builtin("K2", gf(3)).unwrap();
    let s = chief_series(&k2, &budget()).unwrap();
    assert_eq!(s.terms(), &[k2.zero_subspace(), coord(&k2, &[0]), k2.full()]);
    let h3 = builtin("H3", gf(3)).unwrap();
    let s = chief_series(&h3, &budget()).unwrap();
    assert_eq!(s.terms(), &[h3.zero_subspace(), coord(&h3, &[2]), coord(&h3, &[1, 2]).min(coord(&h3, &[0, 2])), h3.full()]);
    let e4 = builtin("E4", Q).unwrap();
    let s = chief_series(&e4, &budget()).unwrap();
    assert!(s.is_certified());
    assert_eq!(s.terms()[..3], [e4.zero_subspace(), coord(&e4, &[0, 1]), coord(&e4, &[0, 1, 2])]);
}

#[test]
fn rational_sl2_series_is_uncertified() {
    let sl2 = builtin("sl2", Q).unwrap();
    assert_eq!(chief_series(&sl2, &budget()), Err(Error::UncertifiedMinimality(3)));
}

#[test]
fn all_chief_factors_from_lattice() {
    let k2 = builtin("K2", gf(3)).unwrap();
    let factors: Vec<(Subspace, Subspace)> = all_chief_factors(&k2, &budget())
        .unwrap()
        .iter()
        .map(|f| (f.upper().clone(), f.lower().clone()))
        .collect();
    assert_eq!(factors, vec![(coord(&k2, &[0]), k2.zero_subspace()), (k2.full(), coord(&k2, &[0]))]);
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(all_chief_factors(&sl2, &budget()).unwrap().len(), 1);
    let a2 = builtin("abelian(2)", gf(2)).unwrap();
    assert_eq!(all_chief_factors(&a2, &budget()).unwrap().len(), 6);
}

#[test]
fn chief_factor_membership() {
    let e4 = builtin("E4", Q).unwrap();
    assert_eq!(is_chief_factor(&e4, &coord(&e4, &[0, 1]), &e4.zero_subspace(), &budget()).unwrap(), Certainty::Yes);
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(is_chief_factor(&sl2, &sl2.full(), &sl2.zero_subspace(), &budget()).unwrap(), Certainty::Yes);
    let k2 = builtin("K2", gf(3)).unwrap();
    assert_eq!(is_chief_factor(&k2, &k2.full(), &k2.zero_subspace(), &budget()).unwrap(), Certainty::No);
}

#[test]
fn factor_classification() {
    let h3 = builtin("H3", gf(3)).unwrap();
    let maximals = maximal_subalgebras(&h3, &budget()).unwrap();
    let f = ChiefFactor::new(coord(&h3, &[2]), h3.zero_subspace(), true);
    let c = classify_factor(&h3, &f, Some(&maximals)).unwrap();
    assert!(c.central);
    assert_eq!((c.frattini, c.complemented), (Some(true), Some(false)));
    let k2 = builtin("K2", gf(3)).unwrap();
    let maximals = maximal_subalgebras(&k2, &budget()).unwrap();
    let f = ChiefFactor::new(coord(&k2, &[0]), k2.zero_subspace(), true);
    let c = classify_factor(&k2, &f, Some(&maximals)).unwrap();
    assert_eq!((c.frattini, c.complemented), (Some(false), Some(true)));
    let a3 = builtin("abelian(3)", Q).unwrap();
    let f = ChiefFactor::new(coord(&a3, &[1]), a3.zero_subspace(), true);
    assert!(classify_factor(&a3, &f, None).unwrap().central);
}

#[test]
fn cover_and_avoid_examples() {
    let k2 = builtin("K2", gf(3)).unwrap();
    assert!(covers(&k2, &coord(&k2, &[1]), &k2.full(), &coord(&k2, &[0])).unwrap());
    let e4 = builtin("E4", Q).unwrap();
    let (u, a, zero) = (coord(&e4, &[0, 2]), coord(&e4, &[0, 1]), e4.zero_subspace());
    assert!(!covers(&e4, &u, &a, &zero).unwrap());
    assert!(!avoids(&e4, &u, &a, &zero).unwrap());
    assert!(matches!(covers(&e4, &u, &a, &a), Err(Error::Precondition(_))));
    let e3 = builtin("E3", gf(3)).unwrap();
    assert!(!avoids(&e3, &coord(&e3, &[0]), &coord(&e3, &[0, 1]), &e3.zero_subspace()).unwrap());
    assert!(avoids(&e4, &zero, &a, &zero).unwrap());
}

#[test]
fn cap_verdicts() {
    let e4 = builtin("E4", Q).unwrap();
    let s = chief_series(&e4, &budget()).unwrap();
    let v = is_cap(&e4, &coord(&e4, &[0, 2]), CapMode::Series(&s), &budget()).unwrap();
    assert_eq!(v.overall, Overall::NotCap);
    let w = v.witness.unwrap();
    assert_eq!((w.upper(), w.lower()), (&coord(&e4, &[0, 1]), &e4.zero_subspace()));
    let e3 = builtin("E3", gf(3)).unwrap();
    let v = is_cap(&e3, &coord(&e3, &[0]), CapMode::AllFactors, &budget()).unwrap();
    assert_eq!(v.overall, Overall::NotCap);
    let sl2 = builtin("sl2", gf(5)).unwrap();
    let borel = coord(&sl2, &[0, 1]);
    let v = is_cap(&sl2, &borel, CapMode::AllFactors, &budget()).unwrap();
    assert_eq!(v.overall, Overall::NotCap);
    assert!(!v.factors[0].covered && !v.factors[0].avoided);
    assert!(matches!(is_cap(&e4, &e4.full(), CapMode::AllFactors, &budget()), Err(Error::RequiresPrimeField(_))));
}

#[test]
fn covered_dimension() {
    let k2 = builtin("K2", gf(3)).unwrap();
    let s = chief_series(&k2, &budget()).unwrap();
    assert_eq!(cap_dimension(&k2, &coord(&k2, &[1]), &s).unwrap(), 1);
    assert_eq!(cap_dimension(&k2, &k2.full(), &s).unwrap(), 2);
    assert_eq!(cap_dimension(&k2, &k2.zero_subspace(), &s).unwrap(), 0);
}

#[test]
fn prefrattini_examples() {
    let k2 = builtin("K2", gf(3)).unwrap();
    let s = chief_series(&k2, &budget()).unwrap();
    let maximals = maximal_subalgebras(&k2, &budget()).unwrap();
    assert_eq!(prefrattini_subalgebras(&k2, &s, &maximals, &budget()).unwrap(), vec![k2.zero_subspace()]);
    let h3 = builtin("H3", gf(3)).unwrap();
    let lattice = Lattice::new(&h3, &budget()).unwrap();
    let maximals = lattice.maximal_subalgebras();
    for s in lattice.all_chief_series().unwrap() {
        let set = prefrattini_subalgebras(&h3, &s, &maximals, &budget()).unwrap();
        assert!(!set.is_empty());
        for x in &set {
            assert_eq!(x.dim(), 1);
            assert!(covers(&h3, x, &coord(&h3, &[2]), &h3.zero_subspace()).unwrap());
            for f in s.factors().iter().skip(1) {
                assert!(avoids(&h3, x, f.upper(), f.lower()).unwrap());
            }
        }
    }
}

#[test]
fn strong_pronormality() {
    let e4 = builtin("E4", gf(3)).unwrap();
    assert!(is_strongly_pronormal(&e4, &coord(&e4, &[0, 2]), &budget()).unwrap());
    assert!(is_strongly_pronormal(&e4, &coord(&e4, &[0, 1]), &budget()).unwrap());
    assert!(is_strongly_pronormal(&e4, &e4.zero_subspace(), &budget()).unwrap());
}

#[test]
fn ideal_embedding() {
    let e4 = builtin("E4", Q).unwrap();
    assert!(check_ideally_embedded_with(&e4, &coord(&e4, &[0, 1, 2]), &coord(&e4, &[2, 3])).unwrap());
    let e4p = builtin("E4", gf(3)).unwrap();
    for ideal in all_ideals(&e4p, &budget()).unwrap() {
        assert!(is_ideally_embedded(&e4p, &ideal, &budget()).unwrap());
    }
    for c in cartan_subalgebras(&e4p, &budget()).unwrap() {
        for u in all_subspaces(gf(3), 4, &budget()).unwrap() {
            if c.is_subspace_of(&u) && e4p.is_subalgebra(&u) {
                assert!(is_ideally_embedded(&e4p, &u, &budget()).unwrap());
            }
        }
    }
}

#[test]
fn supplements() {
    let e4 = builtin("E4", gf(3)).unwrap();
    let (u, b) = (coord(&e4, &[2, 3]), coord(&e4, &[0, 1]));
    assert!(is_supplement(&e4, &u, &b).unwrap());
    assert!(supplement_cap_hypothesis(&e4, &u, &b).unwrap());
    assert!(is_cap(&e4, &u, CapMode::AllFactors, &budget()).unwrap().is_cap());
    assert!(supplement_cap_hypothesis(&e4, &e4.full(), &b).unwrap());
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert!(!supplement_cap_hypothesis(&sl2, &sl2.zero_subspace(), &sl2.full()).unwrap());
    let h3 = builtin("H3", gf(3)).unwrap();
    assert!(supplement_cap_hypothesis(&h3, &h3.zero_subspace(), &h3.full()).unwrap());
}

#[test]
fn c_ideals() {
    let k2 = builtin("K2", gf(3)).unwrap();
    assert!(is_c_ideal(&k2, &coord(&k2, &[1]), &budget()).unwrap());
    assert!(is_c_ideal(&k2, &coord(&k2, &[0]), &budget()).unwrap());
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert!(!is_c_ideal(&sl2, &coord(&sl2, &[0, 1]), &budget()).unwrap());
}

#[test]
fn two_maximal_ideals() {
    let h3 = builtin("H3", gf(3)).unwrap();
    let t = two_maximal_ideal(&h3, &budget()).unwrap();
    assert_eq!(t.ideal, coord(&h3, &[2]));
    check_two_maximal(&h3, &t, &budget()).unwrap();
    let k2 = builtin("K2", Q).unwrap();
    let t = two_maximal_ideal(&k2, &budget()).unwrap();
    assert!(t.ideal.is_zero());
    assert_eq!(t.maximal, coord(&k2, &[1]));
    let a2 = builtin("abelian(2)", gf(2)).unwrap();
    assert!(two_maximal_ideal(&a2, &budget()).unwrap().ideal.is_zero());
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(two_maximal_ideal(&sl2, &budget()), Err(Error::NotSolvable));
}

#[test]
fn subspace_counts() {
    assert_eq!(all_subspaces(gf(2), 2, &budget()).unwrap().len(), 5);
    assert_eq!(all_subspaces(gf(2), 4, &budget()).unwrap().len(), 1 + 15 + 35 + 15 + 1);
    assert_eq!(all_subspaces(gf(3), 3, &budget()).unwrap().len(), 1 + 13 + 13 + 1);
}

#[test]
fn ideal_and_subalgebra_lattices_match_brute_force() {
    for name in ["K2", "H3", "E3", "E4", "sl2", "K2+abelian(1)"] {
        let l = builtin(name, gf(3)).unwrap();
        let lattice = Lattice::new(&l, &budget()).unwrap();
        assert_eq!(lattice.ideals(), brute_ideals(&l), "{name}");
        assert_eq!(lattice.subalgebras(), &brute_subalgebras(&l)[..], "{name}");
        assert_eq!(lattice.maximal_subalgebras(), brute_maximals(&l), "{name}");
    }
}

#[test]
fn ideal_lattices() {
    let k2 = builtin("K2", gf(3)).unwrap();
    assert_eq!(all_ideals(&k2, &budget()).unwrap(), vec![k2.zero_subspace(), coord(&k2, &[0]), k2.full()]);
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(all_ideals(&sl2, &budget()).unwrap(), vec![sl2.zero_subspace(), sl2.full()]);
    let a3 = builtin("abelian(3)", gf(2)).unwrap();
    assert_eq!(all_ideals(&a3, &budget()).unwrap().len(), all_subspaces(gf(2), 3, &budget()).unwrap().len());
}

#[test]
fn maximal_subalgebra_examples() {
    let h3 = builtin("H3", gf(3)).unwrap();
    let maximals = maximal_subalgebras(&h3, &budget()).unwrap();
    assert_eq!(maximals.len(), 4);
    assert!(maximals.iter().all(|m| m.dim() == 2 && coord(&h3, &[2]).is_subspace_of(m)));
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert!(maximal_subalgebras(&sl2, &budget()).unwrap().contains(&coord(&sl2, &[0, 1])));
    let k2 = builtin("K2", gf(3)).unwrap();
    let expected = vec![coord(&k2, &[0]), span(&k2, &[&[0, 1]]), span(&k2, &[&[1, 1]]), span(&k2, &[&[2, 1]])];
    let mut got = maximal_subalgebras(&k2, &budget()).unwrap();
    let mut want = expected;
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn frattini_examples() {
    let h3 = builtin("H3", gf(3)).unwrap();
    assert_eq!(frattini(&h3, &budget()).unwrap().1, coord(&h3, &[2]));
    let k2 = builtin("K2", gf(3)).unwrap();
    assert!(frattini(&k2, &budget()).unwrap().1.is_zero());
    let a3 = builtin("abelian(3)", gf(2)).unwrap();
    assert!(frattini(&a3, &budget()).unwrap().0.is_zero());
}

#[test]
fn cartan_examples() {
    let e4 = builtin("E4", gf(3)).unwrap();
    assert!(cartan_subalgebras(&e4, &budget()).unwrap().contains(&coord(&e4, &[2, 3])));
    let h3 = builtin("H3", gf(3)).unwrap();
    assert_eq!(cartan_subalgebras(&h3, &budget()).unwrap(), vec![h3.full()]);
    let k2 = builtin("K2", gf(3)).unwrap();
    let cartans = cartan_subalgebras(&k2, &budget()).unwrap();
    assert_eq!(cartans.len(), 3);
    assert!(!cartans.contains(&coord(&k2, &[0])));
}

#[test]
fn radicals() {
    let e4 = builtin("E4", gf(3)).unwrap();
    assert_eq!(nilradical(&e4, &budget()).unwrap(), coord(&e4, &[0, 1]));
    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert!(radical(&sl2, &budget()).unwrap().is_zero());
    let h3 = builtin("H3", gf(3)).unwrap();
    assert_eq!(nilradical(&h3, &budget()).unwrap(), h3.full());
}

#[test]
fn supersolvability() {
    assert!(is_supersolvable(&builtin("K2", gf(3)).unwrap(), &budget()).unwrap());
    assert!(!is_supersolvable(&builtin("E3", gf(3)).unwrap(), &budget()).unwrap());
    assert!(is_supersolvable(&builtin("E4", gf(5)).unwrap(), &budget()).unwrap());
    assert!(!is_supersolvable(&builtin("E4", gf(3)).unwrap(), &budget()).unwrap());
}

#[test]
fn random_solvable_examples() {
    let l = random_solvable(1, 3, 11).unwrap();
    assert!(l.is_abelian() && l.dim() == 1);
    assert_eq!(random_solvable(4, 2, 5).unwrap(), random_solvable(4, 2, 5).unwrap());
    for seed in 0..100 {
        let l = random_solvable(1 + (seed as usize % 5), 2 + (seed % 2), seed).unwrap();
        assert!(l.is_solvable());
    }
}

#[test]
fn catalog_builtins() {
    let e4 = builtin("E4", Q).unwrap();
    assert!(minimal_ideal_rational(&e4).unwrap().certified);
    let e3 = builtin("E3", gf(3)).unwrap();
    assert_eq!(minimal_ideals(&e3, &budget()).unwrap(), vec![coord(&e3, &[0, 1])]);
    let a3 = builtin("abelian(3)", gf(2)).unwrap();
    assert!(a3.structure_constants().all(|(_, _, v)| v.iter().all(|x| x.is_zero())));
    assert!(matches!(builtin("sl2", gf(2)), Err(Error::InvalidFieldForAlgebra { .. })));
    assert!(matches!(builtin("nope", Q), Err(Error::UnknownAlgebra(_))));
}

#[test]
fn e4_field_sensitivity() {
    let e4 = builtin("E4", gf(3)).unwrap();
    assert!(minimal_ideals(&e4, &budget()).unwrap().contains(&coord(&e4, &[0, 1])));
    let e4 = builtin("E4", gf(5)).unwrap();
    assert!(!minimal_ideals(&e4, &budget()).unwrap().contains(&coord(&e4, &[0, 1])));
}

#[test]
fn every_catalog_entry_matches_its_metadata() {
    for d in [gf(2), gf(3), gf(5), gf(7)] {
        for name in catalog::CATALOG {
            let Ok((l, declared)) = catalog::builtin_with_metadata(name, d) else {
                continue;
            };
            assert_eq!(catalog::computed_metadata(&l, &budget()).unwrap(), declared, "{name} over {d}");
        }
    }
}

#[test]
fn spec_files() {
    let text = r#"{"name":"E4","field":"Q","dim":4,
        "brackets":[[2,4,["1","0","0","0"]],[1,3,[1,0,0,0]],[1,4,["0","-1","0","0"]],[2,3,["0","1","0","0"]]],
        "expected":{"solvable":true}}"#;
    let spec = catalog::parse_spec(text).unwrap();
    let canonical = catalog::serialize(&spec).unwrap();
    assert_eq!(catalog::serialize(&catalog::parse_spec(&canonical).unwrap()).unwrap(), canonical);
    let l = catalog::load(&spec, &budget()).unwrap();
    assert!(l.structure_constants().eq(builtin("E4", Q).unwrap().structure_constants()));

    // J(e1, e2, e3) = [e2, [e3, e1]] + [e3, [e1, e2]] = 0 − e2 ≠ 0
    let bad = r#"{"name":"bad","field":"Q","dim":3,"brackets":[[1,2,["1","0","0"]],[1,3,["0","1","0"]]]}"#;
    assert_eq!(catalog::load(&catalog::parse_spec(bad).unwrap(), &budget()), Err(Error::Jacobi(1, 2, 3)));

    let lying = r#"{"name":"x","field":"gfp:3","dim":2,"brackets":[[1,2,["1","0"]]],"expected":{"nilpotent":true}}"#;
    let err = catalog::load(&catalog::parse_spec(lying).unwrap(), &budget()).unwrap_err();
    assert!(err.to_string().contains("nilpotent"), "{err}");
}

#[test]
fn harness_examples() {
    let config = HarnessConfig {
        timing: false,
        ..HarnessConfig::default()
    };
    let population = Population {
        fields: vec![gf(2), gf(3)],
        min_dim: 1,
        max_dim: 5,
        catalog: false,
        samples: 100,
        seed: 42,
        extra: Vec::new(),
    };
    let reports = verify("thm-3.3-forward", &population, &config).unwrap();
    assert_eq!(reports.len(), 100);
    assert!(reports.iter().all(|r| r.outcome == Outcome::Pass));

    let sl2 = builtin("sl2", gf(5)).unwrap();
    assert_eq!(verify_algebra("lemma-2.1-iv", &sl2, &config).unwrap().outcome, Outcome::Pass);

    let reports = verify("example-1", &Population::default(), &config).unwrap();
    assert!(reports.iter().any(|r| r.algebra.field == "Q" && r.outcome == Outcome::Pass));

    assert!(matches!(verify("nope", &population, &config), Err(Error::UnknownTheorem(_))));
}

#[test]
fn chief_series_validation() {
    let k2 = builtin("K2", gf(3)).unwrap();
    assert!(ChiefSeries::from_terms(&k2, vec![k2.zero_subspace(), k2.full()], &budget()).is_err());
    assert!(ChiefSeries::from_terms(&k2, vec![k2.zero_subspace(), coord(&k2, &[0]), k2.full()], &budget()).is_ok());
    assert!(ChiefSeries::from_terms(&k2, vec![k2.zero_subspace(), coord(&k2, &[1]), k2.full()], &budget()).is_err());
    let sl2 = builtin("sl2", Q).unwrap();
    let s = ChiefSeries::from_terms(&sl2, vec![sl2.zero_subspace(), sl2.full()], &budget()).unwrap();
    assert!(!s.is_certified());
}
