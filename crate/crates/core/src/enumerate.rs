//! Exhaustive enumeration over prime fields.
//!
//! Subspaces of `GF(p)^n` are generated directly in RREF, ordered by
//! dimension, pivot profile and then entries (the same order as
//! `Ord for Subspace`), so every "canonically least" choice downstream is
//! deterministic. Budgets fail hard; nothing is ever truncated.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chief::ChiefFactor;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_subspaces: u128,
    pub max_vectors: u128,
    /// Upper bound on the number of chief series listed by [`Lattice::all_chief_series`].
    pub max_series: u128,
    /// Upper bound on the number of choice tuples behind prefrattini subalgebras.
    pub max_tuples: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_subspaces: 1_000_000,
            max_vectors: 10_000_000,
            max_series: 100_000,
            max_tuples: 1_000_000,
        }
    }
}

fn prime_of(descriptor: FieldDescriptor) -> Result<u32> {
    descriptor.order().ok_or(Error::RequiresPrimeField(descriptor))
}

/// The Gaussian binomial `[n k]_p`: the number of `k`-dimensional subspaces of `GF(p)^n`.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

pub fn subspace_count(n: usize, p: u32) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).sum()
}

fn check_vectors(n: usize, p: u32, budget: &EnumerationBudget) -> Result<()> {
    let needed = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget.max_vectors {
        return Err(Error::BudgetExceeded {
            what: "vectors",
            needed,
            limit: budget.max_vectors,
        });
    }
    Ok(())
}

/// Every subspace of `GF(p)^n` exactly once, in canonical order.
pub fn all_subspaces(descriptor: FieldDescriptor, n: usize, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for_each_subspace(descriptor, n, budget, |s| out.push(s))?;
    Ok(out)
}

/// Streaming form of [`all_subspaces`].
pub fn for_each_subspace(
    descriptor: FieldDescriptor,
    n: usize,
    budget: &EnumerationBudget,
    mut f: impl FnMut(Subspace),
) -> Result<()> {
    let p = prime_of(descriptor)?;
    let needed = subspace_count(n, p);
    if needed > budget.max_subspaces {
        return Err(Error::BudgetExceeded {
            what: "subspaces",
            needed,
            limit: budget.max_subspaces,
        });
    }
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![descriptor.zero(); n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = descriptor.one();
                }
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    if d != 0 {
                        rows[r][c] = descriptor.residue(d);
                    }
                }
                f(Subspace::from_rref_unchecked(descriptor, n, rows));
                if !increment(&mut digits, p) {
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Odometer increment with the last digit fastest; false on wrap-around.
fn increment(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Coordinate vectors (over the basis of `u`) whose first nonzero entry is 1:
/// one representative per line of `u`, returned in ambient coordinates.
pub fn projective_points(u: &Subspace, budget: &EnumerationBudget) -> Result<Vec<Vector>> {
    let d = u.descriptor();
    let p = prime_of(d)?;
    let m = u.dim();
    check_vectors(m, p, budget)?;
    let mut out = Vec::new();
    for lead in 0..m {
        let mut digits = vec![0u32; m - lead - 1];
        loop {
            let mut coeffs = vec![d.zero(); m];
            coeffs[lead] = d.one();
            for (i, &x) in digits.iter().enumerate() {
                coeffs[lead + 1 + i] = d.residue(x);
            }
            out.push(combine(u, &coeffs));
            if !increment(&mut digits, p) {
                break;
            }
        }
    }
    Ok(out)
}

fn combine(u: &Subspace, coeffs: &[crate::field::FieldElement]) -> Vector {
    let mut x = vec![u.descriptor().zero(); u.ambient_dim()];
    for (a, row) in coeffs.iter().zip(u.basis()) {
        crate::linalg::axpy(&mut x, a, row);
    }
    x
}

/// Index of a vector of `GF(p)^n` in `0..p^n`.
fn vector_index(v: &[crate::field::FieldElement], p: u32) -> usize {
    v.iter()
        .fold(0usize, |acc, x| acc * p as usize + x.as_residue().expect("prime field") as usize)
}

/// All vectors of a subspace, as a bitset over `0..p^n`.
fn vector_set(u: &Subspace, p: u32) -> FixedBitSet {
    let n = u.ambient_dim();
    let mut set = FixedBitSet::with_capacity((p as usize).pow(n as u32));
    let m = u.dim();
    let d = u.descriptor();
    let mut digits = vec![0u32; m];
    loop {
        let coeffs: Vector = digits.iter().map(|&x| d.residue(x)).collect();
        set.insert(vector_index(&combine(u, &coeffs), p));
        if !increment(&mut digits, p) {
            break;
        }
    }
    set
}

/// Bitsets are used for containment tests when `p^n` is at most this.
const VECTOR_SET_LIMIT: usize = 1 << 12;

/// The subalgebra and ideal lattice of an algebra over a prime field, with
/// derived objects computed on demand and cached.
///
/// When `p^n` is small every subalgebra also carries its vector set, and
/// containment, cover and avoidance reduce to bitset operations: `U` avoids
/// `H/K` iff `|U ∩ H| = |U ∩ K|`, and covers it iff `|U ∩ H|·|K| = |U ∩ K|·|H|`.
#[derive(Debug)]
pub struct Lattice {
    algebra: LieAlgebra,
    budget: EnumerationBudget,
    prime: u32,
    subalgebras: Vec<Subspace>,
    sets: Option<Vec<FixedBitSet>>,
    ideals: Vec<usize>,
    maximals: OnceLock<Vec<usize>>,
    factor_pairs: OnceLock<Vec<(usize, usize)>>,
    chief_factors: OnceLock<Vec<ChiefFactor>>,
    cartans: OnceLock<Vec<usize>>,
    set_index: OnceLock<HashMap<FixedBitSet, usize>>,
}

impl Lattice {
    pub fn new(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Self> {
        let d = algebra.descriptor();
        let p = prime_of(d)?;
        let n = algebra.dim();
        let mut subalgebras = Vec::new();
        for_each_subspace(d, n, budget, |s| {
            if algebra.is_subalgebra(&s) {
                subalgebras.push(s);
            }
        })?;
        let small = (p as u128).checked_pow(n as u32).is_some_and(|v| v <= VECTOR_SET_LIMIT as u128);
        let sets = small.then(|| subalgebras.iter().map(|s| vector_set(s, p)).collect());
        let ideals = (0..subalgebras.len()).filter(|&i| algebra.is_ideal(&subalgebras[i])).collect();
        Ok(Lattice {
            algebra: algebra.clone(),
            budget: *budget,
            prime: p,
            subalgebras,
            sets,
            ideals,
            maximals: OnceLock::new(),
            factor_pairs: OnceLock::new(),
            chief_factors: OnceLock::new(),
            cartans: OnceLock::new(),
            set_index: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn budget(&self) -> &EnumerationBudget {
        &self.budget
    }

    /// `subalgebras[i] ≤ subalgebras[j]`.
    fn leq(&self, i: usize, j: usize) -> bool {
        match &self.sets {
            Some(sets) => sets[i].is_subset(&sets[j]),
            None => self.subalgebras[i].is_subspace_of(&self.subalgebras[j]),
        }
    }

    fn lt(&self, i: usize, j: usize) -> bool {
        self.subalgebras[i].dim() < self.subalgebras[j].dim() && self.leq(i, j)
    }

    pub fn subalgebras(&self) -> &[Subspace] {
        &self.subalgebras
    }

    pub fn index_of(&self, u: &Subspace) -> Option<usize> {
        self.subalgebras.binary_search(u).ok()
    }

    fn require_index(&self, u: &Subspace) -> Result<usize> {
        self.index_of(u)
            .ok_or_else(|| Error::Precondition(format!("{u} is not a subalgebra of {}", self.algebra.name())))
    }

    pub fn ideals(&self) -> Vec<Subspace> {
        self.ideals.iter().map(|&i| self.subalgebras[i].clone()).collect()
    }

    pub fn is_ideal_index(&self, i: usize) -> bool {
        self.ideals.binary_search(&i).is_ok()
    }

    /// Subalgebra indices of the maximal subalgebras.
    pub fn maximal_indices(&self) -> &[usize] {
        self.maximals.get_or_init(|| {
            let n = self.algebra.dim();
            let proper: Vec<usize> = (0..self.subalgebras.len())
                .filter(|&i| self.subalgebras[i].dim() < n)
                .collect();
            proper
                .iter()
                .copied()
                .filter(|&m| !proper.iter().any(|&s| self.lt(m, s)))
                .collect()
        })
    }

    pub fn maximal_subalgebras(&self) -> Vec<Subspace> {
        self.maximal_indices().iter().map(|&i| self.subalgebras[i].clone()).collect()
    }

    /// Pairs `(K, M)` with `M` maximal in the algebra and `K` maximal in `M`.
    pub fn two_maximal_subalgebras(&self) -> Vec<(Subspace, Subspace)> {
        let mut out = Vec::new();
        for &m in self.maximal_indices() {
            let inside: Vec<usize> = (0..self.subalgebras.len()).filter(|&s| self.lt(s, m)).collect();
            for &k in &inside {
                if !inside.iter().any(|&s| self.lt(k, s)) {
                    out.push((self.subalgebras[k].clone(), self.subalgebras[m].clone()));
                }
            }
        }
        out
    }

    /// Distinct 2-maximal subalgebras.
    pub fn two_maximal_set(&self) -> Vec<Subspace> {
        let mut ks: Vec<Subspace> = self.two_maximal_subalgebras().into_iter().map(|(k, _)| k).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// `(F, φ)`: the intersection of all maximal subalgebras and its core.
    pub fn frattini(&self) -> (Subspace, Subspace) {
        let f = self
            .maximal_indices()
            .iter()
            .fold(self.algebra.full(), |acc, &m| acc.intersection_unchecked(&self.subalgebras[m]));
        let phi = self.algebra.core(&f);
        (f, phi)
    }

    /// Subalgebra indices of the Cartan subalgebras.
    pub fn cartan_indices(&self) -> &[usize] {
        self.cartans.get_or_init(|| {
            (0..self.subalgebras.len())
                .filter(|&i| self.algebra.is_cartan(&self.subalgebras[i]))
                .collect()
        })
    }

    pub fn cartan_subalgebras(&self) -> Vec<Subspace> {
        self.cartan_indices().iter().map(|&i| self.subalgebras[i].clone()).collect()
    }

    /// Largest ideal with the given property, checking that it contains every other such ideal.
    fn largest_ideal(&self, what: &str, pred: impl Fn(&Subspace) -> bool) -> Result<Subspace> {
        let good: Vec<usize> = self.ideals.iter().copied().filter(|&i| pred(&self.subalgebras[i])).collect();
        let top = *good
            .iter()
            .max_by_key(|&&i| self.subalgebras[i].dim())
            .expect("the zero ideal always qualifies");
        if let Some(&bad) = good.iter().find(|&&i| !self.leq(i, top)) {
            return Err(Error::Invariant(format!(
                "{what} is not unique: {} is not inside {}",
                self.subalgebras[bad], self.subalgebras[top]
            )));
        }
        Ok(self.subalgebras[top].clone())
    }

    pub fn nilradical(&self) -> Result<Subspace> {
        self.largest_ideal("nilradical", |u| self.algebra.is_nilpotent_subalgebra(u))
    }

    pub fn radical(&self) -> Result<Subspace> {
        self.largest_ideal("radical", |u| self.algebra.is_solvable_subalgebra(u))
    }

    /// `(upper, lower)` subalgebra indices of every chief factor.
    fn factor_pairs(&self) -> &[(usize, usize)] {
        self.factor_pairs.get_or_init(|| {
            let mut out = Vec::new();
            for &k in &self.ideals {
                let above: Vec<usize> = self.ideals.iter().copied().filter(|&h| self.lt(k, h)).collect();
                for &h in &above {
                    if !above.iter().any(|&j| self.lt(j, h)) {
                        out.push((h, k));
                    }
                }
            }
            out
        })
    }

    /// Every pair `K < H` of ideals with no ideal strictly between.
    pub fn chief_factors(&self) -> &[ChiefFactor] {
        self.chief_factors.get_or_init(|| {
            self.factor_pairs()
                .iter()
                .map(|&(h, k)| ChiefFactor::new(self.subalgebras[h].clone(), self.subalgebras[k].clone(), true))
                .collect()
        })
    }

    /// Whether `H/K` is a chief factor, by lookup in the ideal lattice.
    pub fn is_chief_factor(&self, upper: &Subspace, lower: &Subspace) -> bool {
        match (self.index_of(upper), self.index_of(lower)) {
            (Some(h), Some(k)) => self.factor_pairs().contains(&(h, k)),
            _ => false,
        }
    }

    /// Every chief series, as chains through the cover relation of the ideal lattice.
    pub fn all_chief_series(&self) -> Result<Vec<crate::chief::ChiefSeries>> {
        Ok(self
            .all_chief_chains()?
            .into_iter()
            .map(|chain| crate::chief::ChiefSeries::certified(chain.iter().map(|&i| self.subalgebras[i].clone()).collect()))
            .collect())
    }

    /// Every chief series as a chain of subalgebra indices.
    pub fn all_chief_chains(&self) -> Result<Vec<Vec<usize>>> {
        let pairs = self.factor_pairs();
        let zero = self.index_of(&self.algebra.zero_subspace()).expect("0 is a subalgebra");
        let full = self.index_of(&self.algebra.full()).expect("L is a subalgebra");
        let mut out = Vec::new();
        let mut stack = vec![vec![zero]];
        while let Some(chain) = stack.pop() {
            let top = *chain.last().expect("nonempty");
            if top == full {
                out.push(chain);
                if out.len() as u128 > self.budget.max_series {
                    return Err(Error::BudgetExceeded {
                        what: "chief series",
                        needed: out.len() as u128,
                        limit: self.budget.max_series,
                    });
                }
                continue;
            }
            for &(h, _) in pairs.iter().rev().filter(|(_, k)| *k == top) {
                let mut next = chain.clone();
                next.push(h);
                stack.push(next);
            }
        }
        Ok(out)
    }

    /// Subalgebra indices of the terms of a chief series.
    pub fn series_indices(&self, s: &crate::chief::ChiefSeries) -> Result<Vec<usize>> {
        s.terms().iter().map(|t| self.require_index(t)).collect()
    }

    /// One-dimensional subalgebras (every line is one).
    pub fn lines(&self) -> Vec<Subspace> {
        self.subalgebras.iter().filter(|s| s.dim() == 1).cloned().collect()
    }

    /// Every chief factor is one-dimensional.
    pub fn is_supersolvable(&self) -> bool {
        self.chief_factors().iter().all(|f| f.dim() == 1)
    }

    fn set_size(&self, i: usize) -> usize {
        (self.prime as usize).pow(self.subalgebras[i].dim() as u32)
    }

    fn vector_set_of(&self, u: &Subspace) -> Option<Cow<'_, FixedBitSet>> {
        let sets = self.sets.as_ref()?;
        Some(match self.index_of(u) {
            Some(i) => Cow::Borrowed(&sets[i]),
            None => Cow::Owned(vector_set(u, self.prime)),
        })
    }

    /// `(covers, avoids)` for `U` against the pair of subalgebras `(upper, lower)`, `lower ≤ upper`.
    fn cover_avoid(&self, u: &Subspace, su: Option<&FixedBitSet>, upper: usize, lower: usize) -> (bool, bool) {
        match (su, &self.sets) {
            (Some(su), Some(sets)) => {
                let ch = su.intersection_count(&sets[upper]);
                let ck = su.intersection_count(&sets[lower]);
                (ch * self.set_size(lower) == ck * self.set_size(upper), ch == ck)
            }
            _ => {
                let (h, k) = (&self.subalgebras[upper], &self.subalgebras[lower]);
                (
                    u.sum_unchecked(h) == u.sum_unchecked(k),
                    u.intersection_unchecked(h) == u.intersection_unchecked(k),
                )
            }
        }
    }

    /// `(covers, avoids)` for every chief factor, in [`Lattice::chief_factors`] order.
    pub fn cap_profile(&self, u: &Subspace) -> Vec<(bool, bool)> {
        let su = self.vector_set_of(u);
        self.factor_pairs()
            .iter()
            .map(|&(h, k)| self.cover_avoid(u, su.as_deref(), h, k))
            .collect()
    }

    /// `U` covers or avoids every chief factor.
    pub fn is_cap(&self, u: &Subspace) -> bool {
        let su = self.vector_set_of(u);
        self.factor_pairs()
            .iter()
            .all(|&(h, k)| matches!(self.cover_avoid(u, su.as_deref(), h, k), (true, _) | (_, true)))
    }

    /// `(covers, avoids)` for each factor of a chain given by subalgebra indices.
    pub fn cap_profile_on(&self, u: &Subspace, chain: &[usize]) -> Vec<(bool, bool)> {
        let su = self.vector_set_of(u);
        chain
            .windows(2)
            .map(|w| self.cover_avoid(u, su.as_deref(), w[1], w[0]))
            .collect()
    }

    /// `(covers, avoids)` of `U` against `(H ∩ C, K ∩ C)` for a chief factor
    /// `(upper, lower)` given by indices.
    pub fn cover_avoid_restricted(&self, u: &Subspace, c: &Subspace, upper: usize, lower: usize) -> (bool, bool) {
        let (h, k) = (&self.subalgebras[upper], &self.subalgebras[lower]);
        let (hc, kc) = (h.intersection_unchecked(c), k.intersection_unchecked(c));
        (
            u.sum_unchecked(&hc) == u.sum_unchecked(&kc),
            u.intersection_unchecked(&hc) == u.intersection_unchecked(&kc),
        )
    }

    /// `subalgebras[small] ≤ subalgebras[big]`.
    pub fn contains_index(&self, small: usize, big: usize) -> bool {
        self.leq(small, big)
    }

    /// `dim(subalgebras[i] ∩ subalgebras[j])`.
    pub fn meet_dim(&self, i: usize, j: usize) -> usize {
        match &self.sets {
            Some(sets) => sets[i].intersection_count(&sets[j]).ilog(self.prime as usize) as usize,
            None => self.subalgebras[i].intersection_unchecked(&self.subalgebras[j]).dim(),
        }
    }

    /// `(upper, lower)` indices of every chief factor.
    pub fn chief_factor_indices(&self) -> &[(usize, usize)] {
        self.factor_pairs()
    }

    fn set_index(&self) -> Option<&HashMap<FixedBitSet, usize>> {
        let sets = self.sets.as_ref()?;
        Some(
            self.set_index
                .get_or_init(|| sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()),
        )
    }

    /// Prefrattini subalgebras built from the chief series given by a chain of
    /// indices. Agrees with [`crate::cap::prefrattini_subalgebras`] fed the
    /// complete maximal list.
    pub fn prefrattini(&self, chain: &[usize]) -> Result<Vec<Subspace>> {
        let maximals = self.maximal_indices();
        let (Some(sets), Some(index)) = (self.sets.as_ref(), self.set_index()) else {
            let series = crate::chief::ChiefSeries::certified(chain.iter().map(|&i| self.subalgebras[i].clone()).collect());
            return crate::cap::prefrattini_subalgebras(&self.algebra, &series, &self.maximal_subalgebras(), &self.budget);
        };
        let full = self.index_of(&self.algebra.full()).expect("L is a subalgebra");
        let mut choices = Vec::new();
        let mut tuples: u128 = 1;
        for w in chain.windows(2) {
            let (k, h) = (w[0], w[1]);
            let above_k: Vec<usize> = maximals.iter().copied().filter(|&m| self.leq(k, m)).collect();
            let mut meet = sets[full].clone();
            for &m in &above_k {
                meet.intersect_with(&sets[m]);
            }
            let meet = &self.subalgebras[index[&meet]];
            if self.subalgebras[h].is_subspace_of(&self.algebra.core(meet)) {
                continue;
            }
            let options: Vec<usize> = above_k.into_iter().filter(|&m| !self.leq(h, m)).collect();
            tuples = tuples.saturating_mul(options.len() as u128);
            choices.push(options);
        }
        if tuples > self.budget.max_tuples {
            return Err(Error::BudgetExceeded {
                what: "prefrattini choice tuples",
                needed: tuples,
                limit: self.budget.max_tuples,
            });
        }
        let mut current: HashSet<FixedBitSet> = HashSet::from([sets[full].clone()]);
        for options in choices {
            current = current
                .iter()
                .flat_map(|x| {
                    options.iter().map(move |&m| {
                        let mut y = x.clone();
                        y.intersect_with(&sets[m]);
                        y
                    })
                })
                .collect();
        }
        let mut out: Vec<Subspace> = current.iter().map(|s| self.subalgebras[index[s]].clone()).collect();
        out.sort();
        Ok(out)
    }
}

pub fn all_subalgebras(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    Ok(Lattice::new(algebra, budget)?.subalgebras().to_vec())
}

pub fn all_ideals(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    Ok(Lattice::new(algebra, budget)?.ideals())
}

pub fn maximal_subalgebras(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    Ok(Lattice::new(algebra, budget)?.maximal_subalgebras())
}

pub fn two_maximal_subalgebras(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<(Subspace, Subspace)>> {
    Ok(Lattice::new(algebra, budget)?.two_maximal_subalgebras())
}

pub fn frattini(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<(Subspace, Subspace)> {
    Ok(Lattice::new(algebra, budget)?.frattini())
}

pub fn cartan_subalgebras(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    Ok(Lattice::new(algebra, budget)?.cartan_subalgebras())
}

pub fn nilradical(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Subspace> {
    Lattice::new(algebra, budget)?.nilradical()
}

pub fn radical(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Subspace> {
    Lattice::new(algebra, budget)?.radical()
}

/// All chief factors one-dimensional. Over a prime field every chief factor is
/// inspected; over `Q` the factors of one certified chief series are, which
/// suffices because all chief series share their factor dimensions.
pub fn is_supersolvable(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<bool> {
    if algebra.descriptor().is_finite() {
        Ok(Lattice::new(algebra, budget)?.is_supersolvable())
    } else {
        let series = crate::chief::chief_series(algebra, budget)?;
        Ok(series.factors().iter().all(|f| f.dim() == 1))
    }
}

/// A basis of the derivation algebra, each derivation as the matrix `D` with
/// `D(x) = x · D`.
pub fn derivations(algebra: &LieAlgebra) -> Vec<Matrix> {
    let n = algebra.dim();
    let d = algebra.descriptor();
    let var = |a: usize, b: usize| a * n + b;
    let mut equations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = algebra.basis_bracket(i, j);
            for t in 0..n {
                let mut row = vec![d.zero(); n * n];
                // D([x_i, x_j])_t
                for (k, c) in cij.iter().enumerate() {
                    if !c.is_zero() {
                        row[var(k, t)] = &row[var(k, t)] + c;
                    }
                }
                // − [D x_i, x_j]_t − [x_i, D x_j]_t
                for b in 0..n {
                    let c1 = &algebra.basis_bracket(b, j)[t];
                    if !c1.is_zero() {
                        row[var(i, b)] = &row[var(i, b)] - c1;
                    }
                    let c2 = &algebra.basis_bracket(i, b)[t];
                    if !c2.is_zero() {
                        row[var(j, b)] = &row[var(j, b)] - c2;
                    }
                }
                equations.push(row);
            }
        }
    }
    let solutions = if equations.is_empty() {
        (0..n * n).map(|k| crate::linalg::unit(d, n * n, k)).collect()
    } else {
        Matrix::from_rows(d, n * n, equations).expect("rectangular").right_kernel()
    };
    solutions
        .into_iter()
        .map(|s| Matrix::from_rows(d, n, s.chunks(n).map(|c| c.to_vec()).collect()).expect("square"))
        .collect()
}

/// A seeded random solvable algebra of dimension `n` over `GF(p)`.
///
/// Built as an iterated split extension: starting from a line, each step
/// adjoins a basis vector acting by a random derivation of what has been
/// built so far.
pub fn random_solvable(n: usize, p: u64, seed: u64) -> Result<LieAlgebra> {
    let d = FieldDescriptor::gf(p)?;
    if n == 0 {
        return Err(Error::Precondition("random_solvable needs n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = LieAlgebra::abelian(d, 1);
    for m in 2..=n {
        let ders = derivations(&current);
        let mut attempt = 0;
        current = loop {
            let mut action = Matrix::zeros(d, m - 1, m - 1);
            for der in &ders {
                let c = d.residue(rng.random_range(0..p as u32));
                for r in 0..m - 1 {
                    for s in 0..m - 1 {
                        let v = &action.get(r, s).clone() + &(&c * der.get(r, s));
                        action.set(r, s, v);
                    }
                }
            }
            let zero = d.zero();
            let mut brackets: Vec<(usize, usize, Vector)> = current
                .structure_constants()
                .map(|(i, j, v)| {
                    let mut w = v.clone();
                    w.push(zero.clone());
                    (i, j, w)
                })
                .collect();
            for i in 0..m - 1 {
                // [x_i, x_new] = −D(x_i)
                let mut w: Vector = action.row(i).iter().map(|x| -x).collect();
                w.push(zero.clone());
                brackets.push((i, m - 1, w));
            }
            match LieAlgebra::new("random", d, m, brackets) {
                Ok(l) => break l,
                Err(e) if attempt >= 16 => return Err(e),
                Err(_) => attempt += 1,
            }
        };
    }
    Ok(current.with_name(format!("rand(n={n},p={p},seed={seed})")))
}

/// Deduplicated copy preserving first occurrence order.
pub fn dedup_subspaces(items: impl IntoIterator<Item = Subspace>) -> Vec<Subspace> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    fn budget() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(all_subspaces(gf(2), 2, &budget()).unwrap().len(), 5);
        assert_eq!(all_subspaces(gf(2), 4, &budget()).unwrap().len(), 67);
        assert_eq!(all_subspaces(gf(3), 3, &budget()).unwrap().len(), 28);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = all_subspaces(gf(3), 3, &budget()).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budgets_fail_hard() {
        let tight = EnumerationBudget {
            max_subspaces: 10,
            ..budget()
        };
        assert!(matches!(
            all_subspaces(gf(2), 4, &tight),
            Err(Error::BudgetExceeded { what: "subspaces", needed: 67, limit: 10 })
        ));
        assert!(matches!(
            all_subspaces(FieldDescriptor::Rationals, 2, &budget()),
            Err(Error::RequiresPrimeField(_))
        ));
    }

    #[test]
    fn random_solvable_is_deterministic_and_solvable() {
        let a = random_solvable(4, 3, 11).unwrap();
        let b = random_solvable(4, 3, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.is_solvable());
        let line = random_solvable(1, 2, 0).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.is_abelian());
    }

    #[test]
    fn derivations_of_abelian_are_everything() {
        let a = LieAlgebra::abelian(gf(3), 2);
        assert_eq!(derivations(&a).len(), 4);
    }
}
