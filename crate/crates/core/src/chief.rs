//! Minimal ideals, chief series and chief-factor classification.
//!
//! Over a prime field minimality is decided exhaustively by spinning every
//! projective point of the candidate. Over `Q` candidates come from ideal
//! closures of basis vectors, and minimality is certified only for factors of
//! dimension at most two; larger factors are reported as uncertified.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{projective_points, EnumerationBudget};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace, Vector};

/// A pair `K < H` of ideals, with `H/K` claimed minimal in `L/K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiefFactor {
    upper: Subspace,
    lower: Subspace,
    certified: bool,
}

impl ChiefFactor {
    pub fn new(upper: Subspace, lower: Subspace, certified: bool) -> Self {
        ChiefFactor { upper, lower, certified }
    }

    /// `H`.
    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    /// `K`.
    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn dim(&self) -> usize {
        self.upper.dim() - self.lower.dim()
    }
}

impl std::fmt::Display for ChiefFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} / {}", self.upper, self.lower)
    }
}

/// `0 = A_0 < A_1 < … < A_n = L`, with a certification flag per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiefSeries {
    terms: Vec<Subspace>,
    certified: Vec<bool>,
}

impl ChiefSeries {
    pub(crate) fn certified(terms: Vec<Subspace>) -> Self {
        let n = terms.len().saturating_sub(1);
        ChiefSeries {
            terms,
            certified: vec![true; n],
        }
    }

    /// Validates a user-supplied chain `0 = A_0 < … < A_n = L` of ideals and
    /// checks each factor. Refuted factors are an error; factors that cannot
    /// be certified over `Q` are kept and flagged.
    pub fn from_terms(algebra: &LieAlgebra, terms: Vec<Subspace>, budget: &EnumerationBudget) -> Result<Self> {
        let shape = terms.first().is_some_and(Subspace::is_zero)
            && terms.last().is_some_and(|t| *t == algebra.full())
            && terms.iter().all(|t| algebra.is_ideal(t))
            && terms.windows(2).all(|w| w[0].dim() < w[1].dim() && w[0].is_subspace_of(&w[1]));
        if !shape {
            return Err(Error::Precondition("terms do not form a chain of ideals from 0 to L".into()));
        }
        let mut certified = Vec::with_capacity(terms.len() - 1);
        for w in terms.windows(2) {
            match is_chief_factor(algebra, &w[1], &w[0], budget)? {
                Certainty::Yes => certified.push(true),
                Certainty::Unknown => certified.push(false),
                Certainty::No => {
                    return Err(Error::Precondition(format!("{} / {} is not a chief factor", w[1], w[0])));
                }
            }
        }
        Ok(ChiefSeries { terms, certified })
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.certified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certified.is_empty()
    }

    pub fn factors(&self) -> Vec<ChiefFactor> {
        self.terms
            .windows(2)
            .zip(&self.certified)
            .map(|(w, &c)| ChiefFactor::new(w[1].clone(), w[0].clone(), c))
            .collect()
    }

    pub fn is_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

/// Three-valued answer for questions that may be undecidable over `Q` with
/// the available certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Certainty {
    fn from(b: bool) -> Self {
        if b {
            Certainty::Yes
        } else {
            Certainty::No
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorClass {
    pub frattini: Option<bool>,
    pub complemented: Option<bool>,
    pub central: bool,
}

/// Result of a minimality test for a nonzero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    /// A strictly smaller nonzero ideal.
    NotMinimal(Subspace),
    Unknown,
}

/// A nonzero ideal with its certification status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalIdeal {
    pub ideal: Subspace,
    pub certified: bool,
}

fn require_ideal(algebra: &LieAlgebra, u: &Subspace) -> Result<()> {
    algebra.span(u.basis().to_vec())?;
    if !algebra.is_ideal(u) {
        return Err(Error::NotIdeal);
    }
    Ok(())
}

fn line(algebra: &LieAlgebra, v: &[FieldElement]) -> Subspace {
    algebra.span(vec![v.to_vec()]).expect("vector of the right length")
}

/// All minimal ideals of `L` contained in the ideal `within`, in canonical
/// order. Prime fields only.
pub fn minimal_ideals_within(algebra: &LieAlgebra, within: &Subspace, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    require_ideal(algebra, within)?;
    let points = projective_points(within, budget)?;
    let mut closures: HashMap<Vector, Subspace> = HashMap::new();
    for v in &points {
        closures.insert(v.clone(), algebra.ideal_closure(&line(algebra, v)));
    }
    let mut distinct: Vec<Subspace> = closures.values().cloned().collect();
    distinct.sort();
    distinct.dedup();
    let minimal: Vec<Subspace> = distinct
        .iter()
        .filter(|a| !distinct.iter().any(|b| b.dim() < a.dim() && b.is_subspace_of(a)))
        .cloned()
        .collect();
    for a in &minimal {
        for v in points.iter().filter(|v| a.contains_unchecked(v)) {
            if closures[v] != *a {
                return Err(Error::Invariant(format!("minimal ideal {a} failed certification")));
            }
        }
    }
    Ok(minimal)
}

/// All minimal ideals of `L`. Prime fields only.
pub fn minimal_ideals(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    if algebra.dim() == 0 {
        return Ok(Vec::new());
    }
    minimal_ideals_within(algebra, &algebra.full(), budget)
}

/// Integer divisors (positive) of a nonzero integer.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn evaluate(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of `Σ coeffs[i] t^i`, by the rational root theorem.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> = coeffs.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(BigRational::zero());
        while coeffs[0].is_zero() {
            coeffs.remove(0);
        }
    }
    if coeffs.len() > 1 {
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect();
        let (constant, leading) = (&ints[0], &ints[ints.len() - 1]);
        for p in divisors(constant) {
            for q in divisors(leading) {
                for sign in [1, -1] {
                    let x = BigRational::new(BigInt::from(sign) * &p, q.clone());
                    if !roots.contains(&x) && evaluate(&coeffs, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Matrices of `ad x_i` restricted to the ideal `a`, in the basis of `a`,
/// acting on row vectors.
fn restricted_operators(algebra: &LieAlgebra, a: &Subspace) -> Vec<Matrix> {
    let d = algebra.descriptor();
    (0..algebra.dim())
        .map(|i| {
            let x = algebra.unit(i);
            let rows = a
                .basis()
                .iter()
                .map(|b| a.coordinates(&algebra.bracket_unchecked(&x, b)).expect("ideal"))
                .collect();
            Matrix::from_rows(d, a.dim(), rows).expect("square")
        })
        .collect()
}

fn is_scalar(m: &Matrix) -> bool {
    let n = m.rows();
    (0..n).all(|r| (0..n).all(|c| if r == c { m.get(r, c) == m.get(0, 0) } else { m.get(r, c).is_zero() }))
}

/// Tests whether the nonzero ideal `a` of an algebra over `Q` is minimal.
///
/// Lines are always minimal. A plane is minimal unless the restricted
/// adjoint operators share an invariant line; candidate lines are the
/// rational eigenlines of one non-scalar operator. Larger ideals are minimal
/// only as far as basis-vector closures can refute it; otherwise `Unknown`.
pub fn certify_minimal_rational(algebra: &LieAlgebra, a: &Subspace) -> Result<Minimality> {
    require_ideal(algebra, a)?;
    if a.is_zero() {
        return Err(Error::Precondition("the zero ideal is not minimal".into()));
    }
    for b in a.basis() {
        let c = algebra.ideal_closure(&line(algebra, b));
        if c.dim() < a.dim() {
            return Ok(Minimality::NotMinimal(c));
        }
    }
    match a.dim() {
        1 => Ok(Minimality::Minimal),
        2 => {
            let ops = restricted_operators(algebra, a);
            let d = algebra.descriptor();
            let to_ambient = |coords: &[FieldElement]| -> Result<Subspace> {
                let mut v = algebra.zero_vector();
                for (c, b) in coords.iter().zip(a.basis()) {
                    crate::linalg::axpy(&mut v, c, b);
                }
                algebra.span(vec![v])
            };
            let Some(t) = ops.iter().find(|m| !is_scalar(m)) else {
                return Ok(Minimality::NotMinimal(line(algebra, &a.basis()[0])));
            };
            let (p, q, r, s) = (
                t.get(0, 0).as_rational().expect("rational").clone(),
                t.get(0, 1).as_rational().expect("rational").clone(),
                t.get(1, 0).as_rational().expect("rational").clone(),
                t.get(1, 1).as_rational().expect("rational").clone(),
            );
            let trace = &p + &s;
            let det = &p * &s - &q * &r;
            // t² − trace·t + det
            let roots = rational_roots(&[det, -trace, BigRational::one()]);
            for lambda in roots {
                let lam = FieldElement::Rational(lambda);
                let mut shifted = t.clone();
                for i in 0..2 {
                    shifted.set(i, i, &shifted.get(i, i).clone() - &lam);
                }
                for v in shifted.left_kernel() {
                    let invariant = ops.iter().all(|m| {
                        let w = m.left_apply(&v);
                        let line = Subspace::span(d, 2, vec![v.clone()]).expect("nonzero");
                        line.contains_unchecked(&w)
                    });
                    if invariant {
                        return Ok(Minimality::NotMinimal(to_ambient(&v)?));
                    }
                }
            }
            Ok(Minimality::Minimal)
        }
        _ => Ok(Minimality::Unknown),
    }
}

/// Refines a starting ideal inside `within` until no basis-vector closure
/// shrinks it and the certificate either accepts it or gives up.
fn minimal_ideal_rational_within(algebra: &LieAlgebra, within: &Subspace) -> Result<MinimalIdeal> {
    let mut candidates: Vec<Subspace> = within
        .basis()
        .iter()
        .map(|b| algebra.ideal_closure(&line(algebra, b)))
        .collect();
    candidates.sort_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.cmp(y)));
    let mut a = candidates
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition("the zero algebra has no minimal ideal".into()))?;
    loop {
        match certify_minimal_rational(algebra, &a)? {
            Minimality::Minimal => return Ok(MinimalIdeal { ideal: a, certified: true }),
            Minimality::NotMinimal(b) => a = b,
            Minimality::Unknown => return Ok(MinimalIdeal { ideal: a, certified: false }),
        }
    }
}

/// A nonzero ideal of an algebra over `Q`, certified minimal when possible.
pub fn minimal_ideal_rational(algebra: &LieAlgebra) -> Result<MinimalIdeal> {
    if algebra.descriptor().is_finite() {
        return Err(Error::Precondition("minimal_ideal_rational needs the rationals".into()));
    }
    minimal_ideal_rational_within(algebra, &algebra.full())
}


fn build_series(algebra: &LieAlgebra, through: Option<&Subspace>, budget: &EnumerationBudget, strict: bool) -> Result<ChiefSeries> {
    let full = algebra.full();
    let mut terms = vec![algebra.zero_subspace()];
    let mut certified = Vec::new();
    while *terms.last().expect("nonempty") != full {
        let a = terms.last().expect("nonempty").clone();
        let quotient = algebra.quotient_algebra(&a)?;
        let target = match through {
            Some(j) if !j.is_subspace_of(&a) => quotient.to_local(j)?,
            _ => quotient.algebra().full(),
        };
        let choice = if algebra.descriptor().is_finite() {
            let mins = minimal_ideals_within(quotient.algebra(), &target, budget)?;
            MinimalIdeal {
                ideal: mins.into_iter().next().ok_or_else(|| Error::Invariant("no minimal ideal".into()))?,
                certified: true,
            }
        } else {
            minimal_ideal_rational_within(quotient.algebra(), &target)?
        };
        if strict && !choice.certified {
            return Err(Error::UncertifiedMinimality(choice.ideal.dim()));
        }
        terms.push(quotient.to_ambient(&choice.ideal));
        certified.push(choice.certified);
    }
    Ok(ChiefSeries { terms, certified })
}

/// A chief series built bottom-up from canonically least minimal ideals of
/// successive quotients. Over `Q` every factor must certify.
pub fn chief_series(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<ChiefSeries> {
    build_series(algebra, None, budget, true)
}

/// As [`chief_series`], but uncertified factors over `Q` are kept and flagged.
pub fn chief_series_lenient(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<ChiefSeries> {
    build_series(algebra, None, budget, false)
}

/// A chief series having the ideal `j` as one of its terms.
pub fn chief_series_through(algebra: &LieAlgebra, j: &Subspace, budget: &EnumerationBudget) -> Result<ChiefSeries> {
    require_ideal(algebra, j)?;
    build_series(algebra, Some(j), budget, true)
}

/// Every chief factor of `L`, from the full ideal lattice. Prime fields only.
pub fn all_chief_factors(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<ChiefFactor>> {
    Ok(crate::enumerate::Lattice::new(algebra, budget)?.chief_factors().to_vec())
}

/// Whether `H/K` is a chief factor of `L`.
pub fn is_chief_factor(algebra: &LieAlgebra, upper: &Subspace, lower: &Subspace, budget: &EnumerationBudget) -> Result<Certainty> {
    algebra.span(upper.basis().to_vec())?;
    algebra.span(lower.basis().to_vec())?;
    if !algebra.is_ideal(upper)
        || !algebra.is_ideal(lower)
        || lower.dim() >= upper.dim()
        || !lower.is_subspace_of(upper)
    {
        return Ok(Certainty::No);
    }
    let quotient = algebra.quotient_algebra(lower)?;
    let image = quotient.to_local(upper)?;
    if algebra.descriptor().is_finite() {
        let mins = minimal_ideals_within(quotient.algebra(), &image, budget)?;
        Ok((mins.len() == 1 && mins[0] == image).into())
    } else {
        Ok(match certify_minimal_rational(quotient.algebra(), &image)? {
            Minimality::Minimal => Certainty::Yes,
            Minimality::NotMinimal(_) => Certainty::No,
            Minimality::Unknown => Certainty::Unknown,
        })
    }
}

fn validate_maximals(algebra: &LieAlgebra, maximals: &[Subspace]) -> Result<()> {
    if algebra.dim() > 0 && maximals.is_empty() {
        return Err(Error::IncompleteMaximals("empty list for a nonzero algebra".into()));
    }
    for (i, m) in maximals.iter().enumerate() {
        if m.ambient_dim() != algebra.dim() || m.descriptor() != algebra.descriptor() {
            return Err(Error::IncompleteMaximals(format!("{m} lives in the wrong space")));
        }
        if m.is_full() || !algebra.is_subalgebra(m) {
            return Err(Error::IncompleteMaximals(format!("{m} is not a proper subalgebra")));
        }
        if maximals[..i].iter().any(|o| m.is_subspace_of(o) || o.is_subspace_of(m)) {
            return Err(Error::IncompleteMaximals(format!("{m} is comparable with another entry")));
        }
    }
    Ok(())
}

/// Central/eccentric always; Frattini and complemented when the complete
/// list of maximal subalgebras is supplied.
pub fn classify_factor(algebra: &LieAlgebra, factor: &ChiefFactor, maximals: Option<&[Subspace]>) -> Result<FactorClass> {
    let (h, k) = (factor.upper(), factor.lower());
    let central = algebra.bracket_subspaces(&algebra.full(), h).is_subspace_of(k);
    let Some(maximals) = maximals else {
        return Ok(FactorClass {
            frattini: None,
            complemented: None,
            central,
        });
    };
    validate_maximals(algebra, maximals)?;
    let meet = maximals
        .iter()
        .filter(|m| k.is_subspace_of(m))
        .fold(algebra.full(), |acc, m| acc.intersection_unchecked(m));
    let frattini = h.is_subspace_of(&algebra.core(&meet));
    let full = algebra.full();
    let complemented = maximals
        .iter()
        .any(|m| m.sum_unchecked(h) == full && m.intersection_unchecked(h) == *k);
    Ok(FactorClass {
        frattini: Some(frattini),
        complemented: Some(complemented),
        central,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::gf(p).unwrap()
    }

    fn e3(d: FieldDescriptor) -> LieAlgebra {
        LieAlgebra::from_int_brackets("E3", d, 3, &[(0, 2, &[0, 1, 0]), (1, 2, &[-1, 0, 0])]).unwrap()
    }

    fn e4(d: FieldDescriptor) -> LieAlgebra {
        LieAlgebra::from_int_brackets(
            "E4",
            d,
            4,
            &[(0, 2, &[1, 0, 0, 0]), (1, 2, &[0, 1, 0, 0]), (0, 3, &[0, -1, 0, 0]), (1, 3, &[1, 0, 0, 0])],
        )
        .unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_roots_of_small_polynomials() {
        assert!(rational_roots(&[q(1), q(0), q(1)]).is_empty());
        assert_eq!(rational_roots(&[q(-1), q(0), q(1)]), vec![q(-1), q(1)]);
        assert_eq!(
            rational_roots(&[q(-1), q(0), q(4)]),
            vec![BigRational::new((-1).into(), 2.into()), BigRational::new(1.into(), 2.into())]
        );
        assert_eq!(rational_roots(&[q(0), q(0), q(1)]), vec![q(0)]);
    }

    #[test]
    fn e3_minimal_ideal_over_gf3() {
        let l = e3(gf(3));
        let mins = minimal_ideals(&l, &EnumerationBudget::default()).unwrap();
        assert_eq!(mins, vec![l.coordinate_span(&[0, 1])]);
    }

    #[test]
    fn e4_minimal_ideal_over_q() {
        let l = e4(FieldDescriptor::Rationals);
        let m = minimal_ideal_rational(&l).unwrap();
        assert_eq!(m.ideal, l.coordinate_span(&[0, 1]));
        assert!(m.certified);
        let s = chief_series(&l, &EnumerationBudget::default()).unwrap();
        assert_eq!(s.dimensions(), vec![0, 2, 3, 4]);
        assert_eq!(s.terms()[2], l.coordinate_span(&[0, 1, 2]));
    }

    #[test]
    fn split_plane_is_refuted() {
        // over Q, ad e3 acting diagonally on span(e1, e2) with distinct eigenvalues
        let l = LieAlgebra::from_int_brackets("D", FieldDescriptor::Rationals, 3, &[(0, 2, &[1, 0, 0]), (1, 2, &[0, 2, 0])])
            .unwrap();
        let a = l.coordinate_span(&[0, 1]);
        assert!(matches!(certify_minimal_rational(&l, &a).unwrap(), Minimality::NotMinimal(_)));
    }

    #[test]
    fn three_valued_chief_factor() {
        let l = e4(FieldDescriptor::Rationals);
        let b = EnumerationBudget::default();
        assert_eq!(
            is_chief_factor(&l, &l.coordinate_span(&[0, 1]), &l.zero_subspace(), &b).unwrap(),
            Certainty::Yes
        );
        assert_eq!(is_chief_factor(&l, &l.full(), &l.zero_subspace(), &b).unwrap(), Certainty::No);
    }
}
