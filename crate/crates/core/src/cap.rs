//! Cover/avoid predicates, the CAP test and the constructions built on it.

use std::collections::BTreeSet;

use crate::chief::{chief_series_through, classify_factor, ChiefFactor, ChiefSeries};
use crate::enumerate::{projective_points, EnumerationBudget, Lattice};
use crate::error::{CartanFailure, Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{quotient_coordinates, Subspace};

fn check_pair(algebra: &LieAlgebra, u: &Subspace, upper: &Subspace, lower: &Subspace) -> Result<()> {
    for s in [u, upper, lower] {
        algebra.span(s.basis().to_vec())?;
    }
    if lower.dim() >= upper.dim() || !lower.is_subspace_of(upper) {
        return Err(Error::Precondition(format!("{lower} is not strictly inside {upper}")));
    }
    Ok(())
}

/// `U + H = U + K`.
pub fn covers(algebra: &LieAlgebra, u: &Subspace, upper: &Subspace, lower: &Subspace) -> Result<bool> {
    check_pair(algebra, u, upper, lower)?;
    let direct = u.sum_unchecked(upper) == u.sum_unchecked(lower);
    let modular = u.intersection_unchecked(upper).sum_unchecked(lower) == *upper;
    if direct != modular {
        return Err(Error::Invariant(format!("cover test disagrees with (U ∩ H) + K = H for {u}")));
    }
    Ok(direct)
}

/// `U ∩ H = U ∩ K`.
pub fn avoids(algebra: &LieAlgebra, u: &Subspace, upper: &Subspace, lower: &Subspace) -> Result<bool> {
    check_pair(algebra, u, upper, lower)?;
    let direct = u.intersection_unchecked(upper) == u.intersection_unchecked(lower);
    let modular = lower.sum_unchecked(u).intersection_unchecked(upper) == *lower;
    if direct != modular {
        return Err(Error::Invariant(format!("avoid test disagrees with (K + U) ∩ H = K for {u}")));
    }
    Ok(direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Overall {
    Cap,
    NotCap,
    Unknown,
}

impl std::fmt::Display for Overall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Overall::Cap => "CAP",
            Overall::NotCap => "NotCAP",
            Overall::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub enum CapMode<'a> {
    /// Every chief factor of `L`, from the ideal lattice.
    AllFactors,
    /// The factors of one chief series.
    Series(&'a ChiefSeries),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorVerdict {
    pub factor: ChiefFactor,
    pub covered: bool,
    pub avoided: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapVerdict {
    pub mode: &'static str,
    pub factors: Vec<FactorVerdict>,
    pub overall: Overall,
    pub witness: Option<ChiefFactor>,
}

impl CapVerdict {
    pub fn is_cap(&self) -> bool {
        self.overall == Overall::Cap
    }

    /// Total dimension of the covered factors.
    pub fn covered_dimension(&self) -> usize {
        self.factors.iter().filter(|f| f.covered).map(|f| f.factor.dim()).sum()
    }
}

/// Judges `U` against a list of factors. A covered or avoided factor stays
/// so under any refinement, so only uncertified factors that are neither can
/// make the verdict `Unknown`.
pub fn verdict_for_factors(
    algebra: &LieAlgebra,
    u: &Subspace,
    factors: &[ChiefFactor],
    mode: &'static str,
) -> Result<CapVerdict> {
    algebra.require_subalgebra(u)?;
    let mut out = Vec::with_capacity(factors.len());
    let mut witness = None;
    let mut unknown = false;
    for f in factors {
        let covered = covers(algebra, u, f.upper(), f.lower())?;
        let avoided = avoids(algebra, u, f.upper(), f.lower())?;
        if !covered && !avoided {
            if f.is_certified() {
                witness.get_or_insert_with(|| f.clone());
            } else {
                unknown = true;
            }
        }
        out.push(FactorVerdict {
            factor: f.clone(),
            covered,
            avoided,
        });
    }
    let overall = match (&witness, unknown) {
        (Some(_), _) => Overall::NotCap,
        (None, true) => Overall::Unknown,
        (None, false) => Overall::Cap,
    };
    if overall != Overall::Cap && algebra.is_ideal(u) {
        return Err(Error::Invariant(format!("ideal {u} judged {overall}")));
    }
    Ok(CapVerdict {
        mode,
        factors: out,
        overall,
        witness,
    })
}

/// The CAP test. `AllFactors` needs a prime field.
pub fn is_cap(algebra: &LieAlgebra, u: &Subspace, mode: CapMode<'_>, budget: &EnumerationBudget) -> Result<CapVerdict> {
    match mode {
        CapMode::AllFactors => {
            if !algebra.descriptor().is_finite() {
                return Err(Error::RequiresPrimeField(algebra.descriptor()));
            }
            let lattice = Lattice::new(algebra, budget)?;
            is_cap_in(&lattice, u)
        }
        CapMode::Series(s) => verdict_for_factors(algebra, u, &s.factors(), "series"),
    }
}

/// `AllFactors` test reusing an already enumerated lattice.
pub fn is_cap_in(lattice: &Lattice, u: &Subspace) -> Result<CapVerdict> {
    verdict_for_factors(lattice.algebra(), u, lattice.chief_factors(), "all")
}

/// `Σ dim(A_i/A_{i-1})` over the factors of `s` covered by `U`.
pub fn cap_dimension(algebra: &LieAlgebra, u: &Subspace, s: &ChiefSeries) -> Result<usize> {
    let v = verdict_for_factors(algebra, u, &s.factors(), "series")?;
    if !v.is_cap() {
        return Err(Error::NotCap);
    }
    Ok(v.covered_dimension())
}

/// Every intersection `⋂ M_i` obtained by choosing, for each non-Frattini
/// factor `A_i/A_{i-1}` of `s`, a maximal subalgebra containing `A_{i-1}` but
/// not `A_i`.
pub fn prefrattini_subalgebras(
    algebra: &LieAlgebra,
    s: &ChiefSeries,
    maximals: &[Subspace],
    budget: &EnumerationBudget,
) -> Result<Vec<Subspace>> {
    if !s.is_certified() {
        return Err(Error::UncertifiedMinimality(
            s.factors().iter().find(|f| !f.is_certified()).map_or(0, ChiefFactor::dim),
        ));
    }
    let mut choices = Vec::new();
    let mut tuples: u128 = 1;
    for f in s.factors() {
        let class = classify_factor(algebra, &f, Some(maximals))?;
        if class.frattini == Some(true) {
            continue;
        }
        let options: Vec<&Subspace> = maximals
            .iter()
            .filter(|m| f.lower().is_subspace_of(m) && !f.upper().is_subspace_of(m))
            .collect();
        if options.is_empty() {
            return Err(Error::IncompleteMaximals(format!("no maximal subalgebra for non-Frattini factor {f}")));
        }
        tuples = tuples.saturating_mul(options.len() as u128);
        choices.push(options);
    }
    if tuples > budget.max_tuples {
        return Err(Error::BudgetExceeded {
            what: "prefrattini choice tuples",
            needed: tuples,
            limit: budget.max_tuples,
        });
    }
    let mut current: BTreeSet<Subspace> = BTreeSet::from([algebra.full()]);
    for options in choices {
        current = current
            .iter()
            .flat_map(|x| options.iter().map(move |m| x.intersection_unchecked(m)))
            .collect();
    }
    Ok(current.into_iter().collect())
}

/// `C`, a subspace of `L`, is a Cartan subalgebra of the subalgebra `S`.
fn is_cartan_of(algebra: &LieAlgebra, s: &Subspace, c: &Subspace) -> Result<bool> {
    if !c.is_subspace_of(s) {
        return Ok(false);
    }
    let sub = algebra.subalgebra_as_algebra(s)?;
    let local = sub.to_local(c)?;
    Ok(sub.algebra().is_cartan(&local))
}

/// Every Cartan subalgebra of `U` is a Cartan subalgebra of `U^L`. Prime fields only.
pub fn is_strongly_pronormal(algebra: &LieAlgebra, u: &Subspace, budget: &EnumerationBudget) -> Result<bool> {
    algebra.require_subalgebra(u)?;
    let closure = algebra.ideal_closure(u);
    let sub = algebra.subalgebra_as_algebra(u)?;
    let lattice = Lattice::new(sub.algebra(), budget)?;
    for c in lattice.cartan_subalgebras() {
        if !is_cartan_of(algebra, &closure, &sub.to_ambient(&c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks given candidates, each of which must be a Cartan subalgebra of
/// `U`; true when every one is also a Cartan subalgebra of `U^L`. This is the
/// form usable over `Q`, where Cartan subalgebras cannot be enumerated.
pub fn strongly_pronormal_witness(algebra: &LieAlgebra, u: &Subspace, cartans_of_u: &[Subspace]) -> Result<bool> {
    algebra.require_subalgebra(u)?;
    let closure = algebra.ideal_closure(u);
    for c in cartans_of_u {
        algebra.span(c.basis().to_vec())?;
        if !is_cartan_of(algebra, u, c)? {
            return Err(Error::Precondition(format!("{c} is not a Cartan subalgebra of {u}")));
        }
        if !is_cartan_of(algebra, &closure, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I_L(U)` contains a Cartan subalgebra of `L`. Prime fields only.
pub fn is_ideally_embedded(algebra: &LieAlgebra, u: &Subspace, budget: &EnumerationBudget) -> Result<bool> {
    let lattice = Lattice::new(algebra, budget)?;
    is_ideally_embedded_in(&lattice, u)
}

/// [`is_ideally_embedded`] reusing an enumerated lattice.
pub fn is_ideally_embedded_in(lattice: &Lattice, u: &Subspace) -> Result<bool> {
    let algebra = lattice.algebra();
    algebra.require_subalgebra(u)?;
    let idealiser = algebra.idealiser(u);
    Ok(lattice.cartan_subalgebras().iter().any(|c| c.is_subspace_of(&idealiser)))
}

/// `I_L(U)` contains the given Cartan subalgebra `C`.
pub fn check_ideally_embedded_with(algebra: &LieAlgebra, u: &Subspace, c: &Subspace) -> Result<bool> {
    algebra.require_subalgebra(u)?;
    algebra.span(c.basis().to_vec())?;
    algebra.cartan_check(c).map_err(Error::NotCartan)?;
    Ok(c.is_subspace_of(&algebra.idealiser(u)))
}

/// `U + B = L` for the ideal `B`.
pub fn is_supplement(algebra: &LieAlgebra, u: &Subspace, b: &Subspace) -> Result<bool> {
    algebra.span(u.basis().to_vec())?;
    algebra.span(b.basis().to_vec())?;
    if !algebra.is_ideal(b) {
        return Err(Error::NotIdeal);
    }
    Ok(u.sum_unchecked(b).is_full())
}

/// `U` supplements `B` and some lower central term of `B` lies in `U`.
pub fn supplement_cap_hypothesis(algebra: &LieAlgebra, u: &Subspace, b: &Subspace) -> Result<bool> {
    if !is_supplement(algebra, u, b)? {
        return Ok(false);
    }
    Ok(algebra.lower_central_series_of(b).iter().any(|t| t.is_subspace_of(u)))
}

/// Some ideal `C` has `U + C = L` and `U ∩ C ≤ core(U)`.
pub fn is_c_ideal(algebra: &LieAlgebra, u: &Subspace, budget: &EnumerationBudget) -> Result<bool> {
    let lattice = Lattice::new(algebra, budget)?;
    is_c_ideal_in(&lattice, u)
}

/// [`is_c_ideal`] reusing an enumerated lattice.
pub fn is_c_ideal_in(lattice: &Lattice, u: &Subspace) -> Result<bool> {
    let algebra = lattice.algebra();
    algebra.require_subalgebra(u)?;
    let core = algebra.core(u);
    Ok(lattice
        .ideals()
        .iter()
        .any(|c| u.sum_unchecked(c).is_full() && u.intersection_unchecked(c).is_subspace_of(&core)))
}

/// An ideal `K` of `L` together with a maximal subalgebra `M` of `L` in which
/// `K` is maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMaximalIdeal {
    pub ideal: Subspace,
    pub maximal: Subspace,
}

/// No subalgebra lies strictly between `M` and `L`, decided by adjoining each
/// projective point outside `M`.
fn is_maximal_exhaustive(algebra: &LieAlgebra, m: &Subspace, budget: &EnumerationBudget) -> Result<bool> {
    if m.is_full() || !algebra.is_subalgebra(m) {
        return Ok(false);
    }
    for v in projective_points(&algebra.full(), budget)? {
        if !m.contains_unchecked(&v) {
            let mut gens = m.basis().to_vec();
            gens.push(v);
            if !algebra.generated_subalgebra(gens).is_full() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A 2-maximal subalgebra of a solvable algebra that is an ideal.
///
/// When `L/L²` has dimension at least two, `K` is `L²` plus all but two of the
/// complement vectors, and `M` adds one more. Otherwise `L = L² + Fx`, `K` is
/// the term below `L²` in a chief series through `L²`, and `M = K + Fx`.
pub fn two_maximal_ideal(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<TwoMaximalIdeal> {
    if !algebra.is_solvable() {
        return Err(Error::NotSolvable);
    }
    if algebra.dim() < 2 {
        return Err(Error::Precondition("two_maximal_ideal needs dim L ≥ 2".into()));
    }
    let full = algebra.full();
    let square = algebra.bracket_subspaces(&full, &full);
    let complement = quotient_coordinates(&full, &square)?.section().to_vec();
    let result = if complement.len() >= 2 {
        let ideal = square.extend(complement[2..].iter().cloned());
        let maximal = ideal.extend([complement[1].clone()]);
        TwoMaximalIdeal { ideal, maximal }
    } else {
        let series = chief_series_through(algebra, &square, budget)?;
        let at = series
            .terms()
            .iter()
            .position(|t| *t == square)
            .ok_or_else(|| Error::Invariant("chief series misses L²".into()))?;
        let ideal = series.terms()[at - 1].clone();
        let maximal = ideal.extend([complement[0].clone()]);
        TwoMaximalIdeal { ideal, maximal }
    };
    check_two_maximal(algebra, &result, budget)?;
    Ok(result)
}

/// Checks `K` ideal, `K` maximal in `M` and `M` maximal in `L`. Maximality
/// is trivial in codimension one; otherwise it is decided exhaustively over
/// a prime field, and over `Q` from `M + L² = L`, `L^(2) ≤ K ≤ M` and the
/// certified chief factor `L²/K`.
pub fn check_two_maximal(algebra: &LieAlgebra, t: &TwoMaximalIdeal, budget: &EnumerationBudget) -> Result<()> {
    let (k, m) = (&t.ideal, &t.maximal);
    let fail = |what: &str| Err(Error::Invariant(format!("two-maximal check failed: {what}")));
    if !algebra.is_ideal(k) {
        return fail("K is not an ideal");
    }
    if !algebra.is_subalgebra(m) || !k.is_subspace_of(m) || k.dim() + 1 != m.dim() {
        return fail("K is not a hyperplane of the subalgebra M");
    }
    if m.dim() + 1 == algebra.dim() {
        return Ok(());
    }
    if algebra.descriptor().is_finite() {
        if !is_maximal_exhaustive(algebra, m, budget)? {
            return fail("M is not maximal");
        }
        return Ok(());
    }
    let full = algebra.full();
    let square = algebra.bracket_subspaces(&full, &full);
    let second = algebra.bracket_subspaces(&square, &square);
    let chief = crate::chief::is_chief_factor(algebra, &square, k, budget)?;
    if m.sum_unchecked(&square).is_full() && second.is_subspace_of(k) && chief == crate::chief::Certainty::Yes {
        Ok(())
    } else {
        fail("maximality of M could not be certified")
    }
}

/// Which Cartan condition a candidate fails, if any.
pub fn cartan_failure(algebra: &LieAlgebra, c: &Subspace) -> Option<CartanFailure> {
    algebra.cartan_check(c).err()
}
