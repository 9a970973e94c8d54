//! Theorem checks over populations of algebras.
//!
//! Each theorem id maps to a check run against one algebra. Checks that need
//! the subalgebra lattice run over prime fields only; elsewhere, and whenever
//! the algebra falls outside a theorem's hypothesis, the outcome is
//! `Skipped`. Reports are sorted by theorem id, then algebra, and serialise
//! as JSON lines.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cap::{
    avoids, covers, is_cap, is_strongly_pronormal, strongly_pronormal_witness, two_maximal_ideal, CapMode, Overall,
};
use crate::catalog::{builtin, parse_vectors, CATALOG};
use crate::chief::{chief_series, classify_factor, minimal_ideal_rational, minimal_ideals};
use crate::enumerate::{EnumerationBudget, Lattice};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::liealg::{nth_term, LieAlgebra};
use crate::linalg::{format_vector, Subspace};

/// Registered theorem ids.
pub const THEOREMS: &[&str] = &[
    "cap-mode-agreement",
    "cor-2.3",
    "cor-2.8",
    "example-1",
    "example-3.7",
    "frattini-complemented",
    "lemma-2.1-iii",
    "lemma-2.1-iv",
    "lemma-2.1-v",
    "lemma-2.1-vi",
    "lemma-2.5",
    "lemma-2.6",
    "lemma-3.8",
    "prefrattini",
    "prop-2.7",
    "prop-2.9",
    "thm-1.2",
    "thm-2.2",
    "thm-2.4",
    "thm-3.3-converse",
    "thm-3.3-forward",
    "thm-3.6",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraRef {
    pub name: String,
    pub field: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// The subalgebra neither covers nor avoids the factor.
    Neither,
    /// The subalgebra should cover the factor but does not.
    NotCovered,
    /// The subalgebra should avoid the factor but does not.
    NotAvoided,
    /// Any other violated equality; replayed by rerunning the check.
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRef {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorRef>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub algebra: AlgebraRef,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub stats: BTreeMap<String, u64>,
    /// Seconds, or `None` when timing is disabled.
    pub elapsed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HarnessConfig {
    pub budget: EnumerationBudget,
    /// Record wall-clock time per report. Off gives byte-identical output across runs.
    pub timing: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            budget: EnumerationBudget::default(),
            timing: true,
        }
    }
}

/// Which algebras a suite runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    pub fields: Vec<FieldDescriptor>,
    pub min_dim: usize,
    pub max_dim: usize,
    /// Include the catalog entries whose dimension is in range.
    pub catalog: bool,
    /// Random solvable algebras, spread over the prime fields and dimensions.
    pub samples: usize,
    pub seed: u64,
    /// Further builtin names, taken regardless of dimension.
    pub extra: Vec<String>,
}

impl Default for Population {
    fn default() -> Self {
        Population {
            fields: vec![FieldDescriptor::gf(2).expect("prime"), FieldDescriptor::gf(3).expect("prime")],
            min_dim: 1,
            max_dim: 4,
            catalog: true,
            samples: 0,
            seed: 0,
            extra: Vec::new(),
        }
    }
}

impl Population {
    pub fn algebras(&self) -> Result<Vec<LieAlgebra>> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut push = |l: LieAlgebra, out: &mut Vec<LieAlgebra>| {
            if seen.insert((l.name().to_string(), l.descriptor())) {
                out.push(l);
            }
        };
        for &d in &self.fields {
            if self.catalog {
                for name in CATALOG {
                    if let Ok(l) = builtin(name, d) {
                        if (self.min_dim..=self.max_dim).contains(&l.dim()) {
                            push(l, &mut out);
                        }
                    }
                }
            }
            for name in &self.extra {
                push(builtin(name, d)?, &mut out);
            }
        }
        let primes: Vec<u32> = self.fields.iter().filter_map(|d| d.order()).collect();
        if self.samples > 0 {
            if primes.is_empty() {
                return Err(Error::Precondition("random samples need a prime field".into()));
            }
            let lo = self.min_dim.max(1);
            let hi = self.max_dim.max(lo);
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for i in 0..self.samples {
                let p = primes[i % primes.len()];
                let n = lo + (i / primes.len()) % (hi - lo + 1);
                let seed: u32 = rng.random();
                let name = format!("rand(n={n},p={p},seed={seed})");
                push(builtin(&name, FieldDescriptor::gf(p as u64)?)?, &mut out);
            }
        }
        Ok(out)
    }
}

/// Outcome of one check before timing and naming are attached.
#[derive(Debug, Clone, PartialEq)]
struct Check {
    outcome: Outcome,
    witness: Option<Witness>,
    stats: BTreeMap<String, u64>,
    note: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Check {
            outcome: Outcome::Pass,
            witness: None,
            stats: BTreeMap::new(),
            note: None,
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Check {
            outcome: Outcome::Skipped,
            note: Some(reason.into()),
            ..Check::pass()
        }
    }

    fn fail(witness: Witness) -> Self {
        Check {
            outcome: Outcome::Fail,
            witness: Some(witness),
            ..Check::pass()
        }
    }

    fn stat(mut self, key: &str, value: usize) -> Self {
        self.stats.insert(key.to_string(), value as u64);
        self
    }
}

fn basis_strings(u: &Subspace) -> Vec<String> {
    u.basis().iter().map(|v| format_vector(v)).collect()
}

fn witness(kind: WitnessKind, u: Option<&Subspace>, factor: Option<(&Subspace, &Subspace)>, detail: impl Into<String>) -> Witness {
    Witness {
        kind,
        subalgebra: u.map(basis_strings),
        factor: factor.map(|(h, k)| FactorRef {
            upper: basis_strings(h),
            lower: basis_strings(k),
        }),
        detail: detail.into(),
    }
}

struct Ctx<'a> {
    algebra: &'a LieAlgebra,
    lattice: Option<&'a Lattice>,
    budget: &'a EnumerationBudget,
}

impl Ctx<'_> {
    fn lattice(&self) -> Result<&Lattice> {
        self.lattice.ok_or(Error::RequiresPrimeField(self.algebra.descriptor()))
    }
}

/// Theorems whose population is fixed rather than taken from the suite.
fn fixed_population(id: &str) -> Option<Vec<(&'static str, FieldDescriptor)>> {
    let gf3 = FieldDescriptor::gf(3).expect("prime");
    match id {
        "example-1" => Some(vec![("E4", FieldDescriptor::Rationals), ("E4", gf3)]),
        "example-3.7" => Some(vec![("E3", FieldDescriptor::Rationals), ("E3", gf3)]),
        _ => None,
    }
}

fn run_check(id: &str, ctx: &Ctx<'_>) -> Result<Check> {
    match id {
        "lemma-2.1-iii" => lemma_2_1_iii(ctx),
        "lemma-2.1-iv" => lemma_2_1_iv(ctx),
        "lemma-2.1-v" => lemma_2_1_v(ctx),
        "lemma-2.1-vi" => lemma_2_1_vi(ctx),
        "lemma-2.5" => lemma_2_5(ctx),
        "lemma-2.6" => lemma_2_6(ctx),
        "prop-2.7" => prop_2_7(ctx),
        "cor-2.8" => cor_2_8(ctx),
        "prop-2.9" => prop_2_9(ctx),
        "thm-2.2" => thm_2_2(ctx),
        "cor-2.3" => cor_2_3(ctx),
        "thm-2.4" => thm_2_4(ctx),
        "thm-3.3-forward" => thm_3_3_forward(ctx),
        "thm-3.3-converse" => thm_3_3_converse(ctx),
        "thm-3.6" => thm_3_6(ctx),
        "lemma-3.8" => lemma_3_8(ctx),
        "thm-1.2" => thm_1_2(ctx),
        "prefrattini" => prefrattini(ctx),
        "frattini-complemented" => frattini_complemented(ctx),
        "cap-mode-agreement" => cap_mode_agreement(ctx),
        "example-1" => example_1(ctx),
        "example-3.7" => example_3_7(ctx),
        _ => Err(Error::UnknownTheorem(id.into())),
    }
}

/// First chief factor (as indices) that `u` neither covers nor avoids.
fn cap_failure(lat: &Lattice, u: &Subspace) -> Option<(usize, usize)> {
    lat.cap_profile(u)
        .iter()
        .zip(lat.chief_factor_indices())
        .find(|((c, a), _)| !c && !a)
        .map(|(_, &f)| f)
}

fn not_cap(lat: &Lattice, u: &Subspace, detail: &str) -> Check {
    let subs = lat.subalgebras();
    let f = cap_failure(lat, u);
    Check::fail(witness(
        WitnessKind::Neither,
        Some(u),
        f.map(|(h, k)| (&subs[h], &subs[k])),
        detail,
    ))
}

fn lemma_2_1_iii(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let ideals = lat.ideals();
    for b in &ideals {
        if cap_failure(lat, b).is_some() {
            return Ok(not_cap(lat, b, "ideal is not CAP"));
        }
    }
    Ok(Check::pass()
        .stat("ideals", ideals.len())
        .stat("factors", lat.chief_factors().len()))
}

/// No ideals other than `0` and `L`.
fn has_no_proper_ideals(lat: &Lattice) -> bool {
    lat.ideals().iter().all(|i| i.is_zero() || i.is_full())
}

fn lemma_2_1_iv(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if ctx.algebra.dim() == 0 {
        return Ok(Check::skipped("hypothesis: L nonzero"));
    }
    let proper_caps: Vec<&Subspace> = lat
        .subalgebras()
        .iter()
        .filter(|u| !u.is_zero() && !u.is_full() && lat.is_cap(u))
        .collect();
    let simple = has_no_proper_ideals(lat);
    let check = match (simple, proper_caps.first()) {
        (true, Some(u)) => Check::fail(witness(
            WitnessKind::Mismatch,
            Some(u),
            None,
            "no proper nonzero ideal, yet a proper nonzero CAP subalgebra exists",
        )),
        (false, None) => Check::fail(witness(
            WitnessKind::Mismatch,
            None,
            None,
            "proper nonzero ideal exists, yet no proper nonzero CAP subalgebra",
        )),
        _ => Check::pass(),
    };
    Ok(check
        .stat("subalgebras", lat.subalgebras().len())
        .stat("proper_cap_subalgebras", proper_caps.len()))
}

fn lemma_2_1_v(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let mut compared = 0;
    for n in lat.ideals().iter().filter(|n| !n.is_zero() && !n.is_full()) {
        let q = ctx.algebra.quotient_algebra(n)?;
        let qlat = Lattice::new(q.algebra(), ctx.budget)?;
        for u in lat.subalgebras().iter().filter(|u| n.is_subspace_of(u)) {
            compared += 1;
            let image = q.to_local(u)?;
            if lat.is_cap(u) != qlat.is_cap(&image) {
                return Ok(Check::fail(witness(
                    WitnessKind::Mismatch,
                    Some(u),
                    None,
                    format!("CAP status differs from its image modulo {n}"),
                )));
            }
        }
    }
    Ok(Check::pass().stat("pairs", compared))
}

fn lemma_2_1_vi(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let subs = lat.subalgebras();
    let factors = lat.chief_factor_indices();
    // meets[x][f] = (dim(X ∩ H_f), dim(X ∩ K_f))
    let meets: Vec<Vec<(usize, usize)>> = (0..subs.len())
        .map(|x| factors.iter().map(|&(h, k)| (lat.meet_dim(x, h), lat.meet_dim(x, k))).collect())
        .collect();
    let mut triples = 0;
    for u in 0..subs.len() {
        for c in (0..subs.len()).filter(|&c| lat.contains_index(u, c)) {
            for (f, &(h, k)) in factors.iter().enumerate() {
                let (uh, uk) = meets[u][f];
                let (ch, ck) = meets[c][f];
                let covered = subs[h].dim() - uh == subs[k].dim() - uk;
                let avoided = uh == uk;
                // U + (H ∩ C) = U + (K ∩ C) and U ∩ (H ∩ C) = U ∩ (K ∩ C), by dimension
                let covered_c = ch - uh == ck - uk;
                let avoided_c = uh == uk;
                triples += 1;
                if (covered && !covered_c) || (avoided && !avoided_c) {
                    let (hc, kc) = (subs[h].intersection_unchecked(&subs[c]), subs[k].intersection_unchecked(&subs[c]));
                    let kind = if covered { WitnessKind::NotCovered } else { WitnessKind::NotAvoided };
                    return Ok(Check::fail(witness(
                        kind,
                        Some(&subs[u]),
                        Some((&hc, &kc)),
                        format!("restriction to {} loses the property", subs[c]),
                    )));
                }
            }
        }
    }
    Ok(Check::pass().stat("triples", triples))
}

fn lemma_2_5(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let ideals = lat.ideals();
    let mut pairs = 0;
    for u in lat.subalgebras().iter().filter(|u| lat.is_cap(u)) {
        for b in &ideals {
            pairs += 1;
            let sum = u.sum_unchecked(b);
            if !lat.is_cap(&sum) {
                return Ok(not_cap(lat, &sum, &format!("B + U is not CAP for U = {u}, B = {b}")));
            }
        }
    }
    Ok(Check::pass().stat("pairs", pairs))
}

fn lemma_2_6(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let chains = lat.all_chief_chains()?;
    let subs = lat.subalgebras();
    let mut checked = 0;
    for u in subs.iter().filter(|u| lat.is_cap(u)) {
        for chain in &chains {
            let profile = lat.cap_profile_on(u, chain);
            let covered: usize = profile
                .iter()
                .zip(chain.windows(2))
                .filter(|((c, _), _)| *c)
                .map(|(_, w)| subs[w[1]].dim() - subs[w[0]].dim())
                .sum();
            checked += 1;
            if covered != u.dim() {
                return Ok(Check::fail(witness(
                    WitnessKind::Mismatch,
                    Some(u),
                    None,
                    format!("covered dimension {covered} differs from dim U = {}", u.dim()),
                )));
            }
        }
    }
    Ok(Check::pass().stat("series", chains.len()).stat("checked", checked))
}

fn prop_2_7(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let lines = lat.lines();
    let profiles: Vec<Vec<(bool, bool)>> = lines.iter().map(|x| lat.cap_profile(x)).collect();
    for (f, factor) in lat.chief_factors().iter().enumerate() {
        let all = profiles.iter().all(|p| p[f].0 || p[f].1);
        if all != (factor.dim() == 1) {
            let offender = lines.iter().zip(&profiles).find(|(_, p)| !p[f].0 && !p[f].1).map(|(x, _)| x);
            let kind = if offender.is_some() { WitnessKind::Neither } else { WitnessKind::Mismatch };
            return Ok(Check::fail(witness(
                kind,
                offender,
                Some((factor.upper(), factor.lower())),
                format!("factor of dimension {} against one-dimensional subalgebras", factor.dim()),
            )));
        }
    }
    Ok(Check::pass()
        .stat("lines", lines.len())
        .stat("factors", lat.chief_factors().len()))
}

fn cor_2_8(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let lines = lat.lines();
    let bad = lines.iter().find(|x| !lat.is_cap(x));
    let supersolvable = lat.is_supersolvable();
    let check = match (supersolvable, bad) {
        (true, Some(x)) => not_cap(lat, x, "supersolvable, yet a line is not CAP"),
        (false, None) => Check::fail(witness(
            WitnessKind::Mismatch,
            None,
            None,
            "every line is CAP, yet not supersolvable",
        )),
        _ => Check::pass(),
    };
    Ok(check
        .stat("lines", lines.len())
        .stat("supersolvable", supersolvable as usize)
        .stat("non_cap_lines", lines.iter().filter(|x| !lat.is_cap(x)).count()))
}

fn prop_2_9(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !lat.is_supersolvable() {
        return Ok(Check::skipped("hypothesis: supersolvable"));
    }
    for u in lat.subalgebras() {
        if !lat.is_cap(u) {
            return Ok(not_cap(lat, u, "subalgebra of a supersolvable algebra is not CAP"));
        }
    }
    Ok(Check::pass().stat("subalgebras", lat.subalgebras().len()))
}

/// Subalgebras whose idealiser contains some Cartan subalgebra.
fn ideally_embedded(lat: &Lattice) -> Vec<usize> {
    let subs = lat.subalgebras();
    (0..subs.len())
        .filter(|&u| {
            let idealiser = lat.algebra().idealiser(&subs[u]);
            let i = lat.index_of(&idealiser).expect("idealisers are subalgebras");
            lat.cartan_indices().iter().any(|&c| lat.contains_index(c, i))
        })
        .collect()
}

fn thm_2_2(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_metanilpotent() {
        return Ok(Check::skipped("hypothesis: metanilpotent"));
    }
    let candidates = ideally_embedded(lat);
    for &u in &candidates {
        let u = &lat.subalgebras()[u];
        if !lat.is_cap(u) {
            return Ok(not_cap(lat, u, "ideally embedded subalgebra is not CAP"));
        }
    }
    Ok(Check::pass().stat("hypothesis", candidates.len()))
}

fn cor_2_3(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_solvable() {
        return Ok(Check::skipped("hypothesis: solvable"));
    }
    let n2 = nth_term(&ctx.algebra.lower_nilpotent_series(), 2).clone();
    let candidates: Vec<usize> = ideally_embedded(lat)
        .into_iter()
        .filter(|&u| n2.is_subspace_of(&lat.subalgebras()[u]))
        .collect();
    for &u in &candidates {
        let u = &lat.subalgebras()[u];
        if !lat.is_cap(u) {
            return Ok(not_cap(lat, u, "ideally embedded subalgebra containing N_2 is not CAP"));
        }
    }
    Ok(Check::pass().stat("hypothesis", candidates.len()))
}

fn thm_2_4(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let subs = lat.subalgebras();
    let n = ctx.algebra.dim();
    let ideals: Vec<(usize, Vec<usize>)> = (0..subs.len())
        .filter(|&i| lat.is_ideal_index(i))
        .map(|b| {
            let terms = ctx
                .algebra
                .lower_central_series_of(&subs[b])
                .iter()
                .map(|t| lat.index_of(t).expect("ideals are subalgebras"))
                .collect();
            (b, terms)
        })
        .collect();
    let mut hypothesis = 0;
    let mut pairs = 0;
    for u in 0..subs.len() {
        for (b, terms) in &ideals {
            pairs += 1;
            let supplement = subs[u].dim() + subs[*b].dim() - lat.meet_dim(u, *b) == n;
            if !supplement || !terms.iter().any(|&t| lat.contains_index(t, u)) {
                continue;
            }
            hypothesis += 1;
            if !lat.is_cap(&subs[u]) {
                return Ok(not_cap(lat, &subs[u], &format!("supplement to {} containing a power of it is not CAP", subs[*b])));
            }
        }
    }
    Ok(Check::pass().stat("pairs", pairs).stat("hypothesis", hypothesis))
}

fn thm_3_3_forward(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_solvable() {
        return Ok(Check::skipped("hypothesis: solvable"));
    }
    let maximals = lat.maximal_subalgebras();
    for m in &maximals {
        if !lat.is_cap(m) {
            return Ok(not_cap(lat, m, "maximal subalgebra of a solvable algebra is not CAP"));
        }
    }
    Ok(Check::pass().stat("maximals", maximals.len()))
}

fn thm_3_3_converse(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if ctx.algebra.is_solvable() {
        return Ok(Check::skipped("hypothesis: not solvable"));
    }
    let maximals = lat.maximal_subalgebras();
    let non_cap = maximals.iter().filter(|m| !lat.is_cap(m)).count();
    let check = if non_cap == 0 {
        Check::fail(witness(
            WitnessKind::Mismatch,
            None,
            None,
            "not solvable, yet every maximal subalgebra is CAP",
        ))
    } else {
        Check::pass()
    };
    Ok(check.stat("maximals", maximals.len()).stat("non_cap_maximals", non_cap))
}

fn thm_3_6(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let two_max = lat.two_maximal_set();
    if two_max.iter().any(|k| !lat.is_cap(k)) {
        return Ok(Check::skipped("hypothesis: every 2-maximal subalgebra CAP").stat("two_maximals", two_max.len()));
    }
    let solvable = ctx.algebra.is_solvable();
    let simple_branch = has_no_proper_ideals(lat) && lat.maximal_subalgebras().iter().all(|m| m.dim() == 1);
    let check = if solvable || simple_branch {
        Check::pass()
    } else {
        Check::fail(witness(
            WitnessKind::Mismatch,
            None,
            None,
            "every 2-maximal subalgebra is CAP, yet neither solvable nor simple with one-dimensional maximals",
        ))
    };
    Ok(check.stat("two_maximals", two_max.len()).stat("solvable", solvable as usize))
}

fn lemma_3_8(ctx: &Ctx<'_>) -> Result<Check> {
    if !ctx.algebra.is_solvable() || ctx.algebra.dim() < 2 {
        return Ok(Check::skipped("hypothesis: solvable of dimension at least 2"));
    }
    let t = match two_maximal_ideal(ctx.algebra, ctx.budget) {
        Ok(t) => t,
        Err(Error::Invariant(msg)) => {
            return Ok(Check::fail(witness(WitnessKind::Mismatch, None, None, msg)));
        }
        Err(e) => return Err(e),
    };
    if let Some(lat) = ctx.lattice {
        if !lat.two_maximal_set().contains(&t.ideal) || !lat.maximal_subalgebras().contains(&t.maximal) {
            return Ok(Check::fail(witness(
                WitnessKind::Mismatch,
                Some(&t.ideal),
                None,
                "constructed ideal is not 2-maximal by enumeration",
            )));
        }
    }
    Ok(Check::pass().stat("ideal_dim", t.ideal.dim()))
}

fn thm_1_2(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_metanilpotent() {
        return Ok(Check::skipped("hypothesis: metanilpotent"));
    }
    let full = ctx.algebra.full();
    let central: Vec<bool> = lat
        .chief_factors()
        .iter()
        .map(|f| ctx.algebra.bracket_subspaces(&full, f.upper()).is_subspace_of(f.lower()))
        .collect();
    let cartans = lat.cartan_indices();
    for (i, u) in lat.subalgebras().iter().enumerate() {
        let profile = lat.cap_profile(u);
        let pattern = profile.iter().zip(&central).all(|(&(c, a), &z)| if z { c } else { a });
        let is_cartan = cartans.contains(&i);
        if pattern != is_cartan {
            let detail = if is_cartan {
                "Cartan subalgebra misses the cover/avoid pattern"
            } else {
                "covers central and avoids eccentric factors, yet is not Cartan"
            };
            return Ok(Check::fail(witness(WitnessKind::Mismatch, Some(u), None, detail)));
        }
    }
    Ok(Check::pass()
        .stat("cartans", cartans.len())
        .stat("subalgebras", lat.subalgebras().len()))
}

fn prefrattini(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_solvable() {
        return Ok(Check::skipped("hypothesis: solvable"));
    }
    let maximals = lat.maximal_subalgebras();
    let frattini: Vec<bool> = lat
        .chief_factors()
        .iter()
        .map(|f| Ok(classify_factor(ctx.algebra, f, Some(&maximals))?.frattini == Some(true)))
        .collect::<Result<_>>()?;
    let chains = lat.all_chief_chains()?;
    let mut reference: Option<Vec<Subspace>> = None;
    for chain in &chains {
        let set = lat.prefrattini(chain)?;
        match &reference {
            None => {
                for u in &set {
                    for ((c, a), (f, is_frattini)) in lat.cap_profile(u).iter().zip(lat.chief_factors().iter().zip(&frattini)) {
                        let (ok, kind) = if *is_frattini { (*c, WitnessKind::NotCovered) } else { (*a, WitnessKind::NotAvoided) };
                        if !ok {
                            return Ok(Check::fail(witness(
                                kind,
                                Some(u),
                                Some((f.upper(), f.lower())),
                                "prefrattini subalgebra breaks the Frattini cover/avoid pattern",
                            )));
                        }
                    }
                }
                reference = Some(set);
            }
            Some(r) if *r != set => {
                let series: Vec<String> = chain.iter().map(|&i| lat.subalgebras()[i].to_string()).collect();
                return Ok(Check::fail(witness(
                    WitnessKind::Mismatch,
                    None,
                    None,
                    format!("prefrattini set depends on the chief series: {}", series.join(" < ")),
                )));
            }
            Some(_) => {}
        }
    }
    Ok(Check::pass()
        .stat("series", chains.len())
        .stat("prefrattini", reference.map_or(0, |r| r.len())))
}

fn frattini_complemented(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    if !ctx.algebra.is_solvable() {
        return Ok(Check::skipped("hypothesis: solvable"));
    }
    let maximals = lat.maximal_subalgebras();
    let mut frattini_count = 0;
    for f in lat.chief_factors() {
        let class = classify_factor(ctx.algebra, f, Some(&maximals))?;
        if class.frattini == class.complemented {
            return Ok(Check::fail(witness(
                WitnessKind::Mismatch,
                None,
                Some((f.upper(), f.lower())),
                format!("frattini = complemented = {:?}", class.frattini),
            )));
        }
        frattini_count += usize::from(class.frattini == Some(true));
    }
    Ok(Check::pass()
        .stat("factors", lat.chief_factors().len())
        .stat("frattini", frattini_count))
}

/// Compares CAP against all chief factors with CAP against each chief series.
/// Divergence is an observation, not a failure.
fn cap_mode_agreement(ctx: &Ctx<'_>) -> Result<Check> {
    let lat = ctx.lattice()?;
    let chains = lat.all_chief_chains()?;
    let mut divergent = 0;
    let mut first = None;
    for u in lat.subalgebras() {
        let all = lat.is_cap(u);
        for chain in &chains {
            let series = lat.cap_profile_on(u, chain).iter().all(|&(c, a)| c || a);
            if all && !series {
                return Ok(Check::fail(witness(
                    WitnessKind::Mismatch,
                    Some(u),
                    None,
                    "CAP on all factors but not on one series",
                )));
            }
            if series != all {
                divergent += 1;
                first.get_or_insert_with(|| u.clone());
            }
        }
    }
    let mut check = Check::pass()
        .stat("series", chains.len())
        .stat("subalgebras", lat.subalgebras().len())
        .stat("divergent", divergent);
    if let Some(u) = first {
        check.note = Some(format!("finding: {u} is CAP on some chief series but not on all chief factors"));
    }
    Ok(check)
}

fn example_1(ctx: &Ctx<'_>) -> Result<Check> {
    let l = ctx.algebra;
    let a = l.coordinate_span(&[0, 1]);
    let u = l.coordinate_span(&[0, 2]);
    let fail = |detail: &str| Ok(Check::fail(witness(WitnessKind::Mismatch, Some(&u), None, detail)));
    let (minimal, pronormal, verdict) = if l.descriptor().is_finite() {
        let lat = ctx.lattice()?;
        (
            minimal_ideals(l, ctx.budget)? == vec![a.clone()],
            is_strongly_pronormal(l, &u, ctx.budget)?,
            crate::cap::is_cap_in(lat, &u)?,
        )
    } else {
        let m = minimal_ideal_rational(l)?;
        let d = l.descriptor();
        let cartans = ["0", "1", "-1", "2", "1/2"]
            .iter()
            .map(|alpha| l.span(parse_vectors(d, 4, &format!("{alpha},0,1,0"))?))
            .collect::<Result<Vec<_>>>()?;
        let s = chief_series(l, ctx.budget)?;
        (
            m.certified && m.ideal == a,
            strongly_pronormal_witness(l, &u, &cartans)?,
            is_cap(l, &u, CapMode::Series(&s), ctx.budget)?,
        )
    };
    if !minimal {
        return fail("span(e1, e2) is not the certified minimal ideal");
    }
    if !pronormal {
        return fail("U is not strongly pronormal");
    }
    let zero = l.zero_subspace();
    let w = verdict.witness.as_ref().map(|f| (f.upper().clone(), f.lower().clone()));
    if verdict.overall != Overall::NotCap || w != Some((a.clone(), zero.clone())) {
        return fail("U is not NotCAP with witness A/0");
    }
    Ok(Check::pass().stat("factors", verdict.factors.len()))
}

fn example_3_7(ctx: &Ctx<'_>) -> Result<Check> {
    let l = ctx.algebra;
    let a = l.coordinate_span(&[0, 1]);
    let u = l.coordinate_span(&[0]);
    let zero = l.zero_subspace();
    let fail = |detail: &str| Ok(Check::fail(witness(WitnessKind::Mismatch, Some(&u), Some((&a, &zero)), detail)));
    if covers(l, &u, &a, &zero)? || avoids(l, &u, &a, &zero)? {
        return fail("U covers or avoids A/0");
    }
    let verdict = if let Some(lat) = ctx.lattice {
        if !lat.two_maximal_set().contains(&u) {
            return fail("U is not 2-maximal");
        }
        crate::cap::is_cap_in(lat, &u)?
    } else {
        let s = chief_series(l, ctx.budget)?;
        is_cap(l, &u, CapMode::Series(&s), ctx.budget)?
    };
    let w = verdict.witness.as_ref().map(|f| (f.upper().clone(), f.lower().clone()));
    if verdict.overall != Overall::NotCap || w != Some((a.clone(), zero.clone())) {
        return fail("U is not NotCAP with witness A/0");
    }
    Ok(Check::pass())
}

fn report(id: &str, algebra: &LieAlgebra, check: Check, elapsed: Option<f64>) -> VerificationReport {
    VerificationReport {
        theorem_id: id.to_string(),
        algebra: AlgebraRef {
            name: algebra.name().to_string(),
            field: algebra.descriptor().to_string(),
        },
        outcome: check.outcome,
        witness: check.witness,
        stats: check.stats,
        elapsed,
        note: check.note,
    }
}

/// Turns errors into outcomes: exhausted budgets and field restrictions skip,
/// uncertifiable steps are unknown, anything else fails.
fn settle(result: Result<Check>) -> Check {
    match result {
        Ok(c) => c,
        Err(e @ (Error::BudgetExceeded { .. } | Error::RequiresPrimeField(_) | Error::InvalidFieldForAlgebra { .. })) => {
            Check::skipped(e.to_string())
        }
        Err(e @ Error::UncertifiedMinimality(_)) => Check {
            outcome: Outcome::Unknown,
            note: Some(e.to_string()),
            ..Check::pass()
        },
        Err(e) => Check::fail(witness(WitnessKind::Mismatch, None, None, e.to_string())),
    }
}

fn run_on(algebra: &LieAlgebra, ids: &[&str], config: &HarnessConfig) -> Vec<VerificationReport> {
    let lattice = algebra
        .descriptor()
        .is_finite()
        .then(|| Lattice::new(algebra, &config.budget));
    ids.par_iter()
        .map(|id| {
            let start = Instant::now();
            let check = match &lattice {
                Some(Err(e)) if *id != "lemma-3.8" => settle(Err(e.clone())),
                _ => {
                    let ctx = Ctx {
                        algebra,
                        lattice: lattice.as_ref().and_then(|l| l.as_ref().ok()),
                        budget: &config.budget,
                    };
                    settle(run_check(id, &ctx))
                }
            };
            let elapsed = config.timing.then(|| start.elapsed().as_secs_f64());
            report(id, algebra, check, elapsed)
        })
        .collect()
}

/// Expands `"all"` and validates ids.
pub fn resolve_ids(ids: &[&str]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for id in ids {
        if *id == "all" {
            out.extend_from_slice(THEOREMS);
        } else {
            let known = THEOREMS
                .iter()
                .find(|t| *t == id)
                .ok_or_else(|| Error::UnknownTheorem(id.to_string()))?;
            out.push(*known);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Runs the given theorems over the population, concurrently, returning
/// reports sorted by theorem id then algebra.
pub fn run_suite(ids: &[&str], population: &Population, config: &HarnessConfig) -> Result<Vec<VerificationReport>> {
    let ids = resolve_ids(ids)?;
    let (fixed, general): (Vec<&str>, Vec<&str>) = ids.iter().partition(|id| fixed_population(id).is_some());
    let mut jobs: Vec<(LieAlgebra, Vec<&str>)> = Vec::new();
    if !general.is_empty() {
        for l in population.algebras()? {
            jobs.push((l, general.clone()));
        }
    }
    for id in fixed {
        for (name, d) in fixed_population(id).expect("fixed") {
            jobs.push((builtin(name, d)?, vec![id]));
        }
    }
    let mut reports: Vec<VerificationReport> = jobs.par_iter().flat_map(|(l, ids)| run_on(l, ids, config)).collect();
    reports.sort_by(|a, b| (&a.theorem_id, &a.algebra).cmp(&(&b.theorem_id, &b.algebra)));
    Ok(reports)
}

/// Runs one theorem over the population.
pub fn verify(theorem_id: &str, population: &Population, config: &HarnessConfig) -> Result<Vec<VerificationReport>> {
    run_suite(&[theorem_id], population, config)
}

/// Runs one theorem on one algebra.
pub fn verify_algebra(theorem_id: &str, algebra: &LieAlgebra, config: &HarnessConfig) -> Result<VerificationReport> {
    let id = resolve_ids(&[theorem_id])?;
    Ok(run_on(algebra, &id, config).remove(0))
}

/// Per-outcome counts.
pub fn summarise(reports: &[VerificationReport]) -> BTreeMap<Outcome, usize> {
    let mut out = BTreeMap::from([(Outcome::Pass, 0), (Outcome::Fail, 0), (Outcome::Unknown, 0), (Outcome::Skipped, 0)]);
    for r in reports {
        *out.entry(r.outcome).or_default() += 1;
    }
    out
}

/// Feeds a failure witness back through its predicate; true when the
/// violation reproduces.
pub fn replay_witness(report: &VerificationReport, config: &HarnessConfig) -> Result<bool> {
    let w = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::Precondition("report carries no witness".into()))?;
    let d: FieldDescriptor = report.algebra.field.parse()?;
    let l = builtin(&report.algebra.name, d)?;
    let span = |rows: &[String]| -> Result<Subspace> { l.span(parse_vectors(d, l.dim(), &rows.join(";"))?) };
    let u = w.subalgebra.as_deref().map(span).transpose()?;
    let factor = w
        .factor
        .as_ref()
        .map(|f| Ok::<_, Error>((span(&f.upper)?, span(&f.lower)?)))
        .transpose()?;
    match (w.kind, u, factor) {
        (WitnessKind::Neither, Some(u), Some((h, k))) => Ok(!covers(&l, &u, &h, &k)? && !avoids(&l, &u, &h, &k)?),
        (WitnessKind::NotCovered, Some(u), Some((h, k))) => Ok(!covers(&l, &u, &h, &k)?),
        (WitnessKind::NotAvoided, Some(u), Some((h, k))) => Ok(!avoids(&l, &u, &h, &k)?),
        _ => Ok(verify_algebra(&report.theorem_id, &l, config)?.outcome == Outcome::Fail),
    }
}
