//! Lie algebras given by structure constants, and the subspace calculus
//! built on the bracket: subalgebras, ideals, closures, idealisers, cores,
//! the classical series, quotients and Cartan subalgebras.
//!
//! Every [`Subspace`] produced here is in the ambient algebra's coordinates.
//! Passing to a quotient or to a subalgebra viewed as an algebra in its own
//! right goes through [`AlgebraWithMap`], which carries the change of
//! coordinates explicitly.

use crate::error::{CartanFailure, Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg::{axpy, format_vector, is_zero_vector, quotient_coordinates, unit, Matrix, Subspace, Vector};

/// A finite-dimensional Lie algebra with basis `x_0 .. x_{n-1}`.
///
/// Only the brackets `[x_i, x_j]` with `i < j` are stored; antisymmetry is
/// structural. The Jacobi identity is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    descriptor: FieldDescriptor,
    dim: usize,
    upper: Vec<Vector>,
    table: Vec<Vector>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra from brackets `(i, j, [x_i, x_j])` with 0-based `i < j`.
    /// Omitted pairs bracket to zero.
    pub fn new(
        name: impl Into<String>,
        descriptor: FieldDescriptor,
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let zero = vec![descriptor.zero(); dim];
        let mut upper = vec![zero; dim * dim.saturating_sub(1) / 2];
        let mut seen = vec![false; upper.len()];
        for (i, j, v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::BracketIndex(i + 1, j + 1, dim));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if let Some(x) = v.iter().find(|x| x.descriptor() != descriptor) {
                return Err(Error::DescriptorMismatch(descriptor, x.descriptor()));
            }
            let k = pair_index(dim, i, j);
            if seen[k] {
                return Err(Error::BracketIndex(i + 1, j + 1, dim));
            }
            seen[k] = true;
            upper[k] = v;
        }
        let algebra = Self::from_upper(name.into(), descriptor, dim, upper);
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_brackets(
        name: impl Into<String>,
        descriptor: FieldDescriptor,
        dim: usize,
        brackets: &[(usize, usize, &[i64])],
    ) -> Result<Self> {
        let bs = brackets
            .iter()
            .map(|(i, j, c)| (*i, *j, c.iter().map(|&x| descriptor.from_i64(x)).collect()))
            .collect::<Vec<_>>();
        Self::new(name, descriptor, dim, bs)
    }

    pub fn abelian(descriptor: FieldDescriptor, dim: usize) -> Self {
        Self::new(format!("abelian({dim})"), descriptor, dim, []).expect("abelian algebras satisfy Jacobi")
    }

    fn from_upper(name: String, descriptor: FieldDescriptor, dim: usize, upper: Vec<Vector>) -> Self {
        let zero = vec![descriptor.zero(); dim];
        let mut table = vec![zero; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = &upper[pair_index(dim, i, j)];
                table[j * dim + i] = v.iter().map(|x| -x).collect();
                table[i * dim + j] = v.clone();
            }
        }
        LieAlgebra {
            name,
            descriptor,
            dim,
            upper,
            table,
        }
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (xi, xj, xk) = (self.unit(i), self.unit(j), self.unit(k));
                    let mut total = self.bracket_unchecked(&self.bracket_unchecked(&xi, &xj), &xk);
                    let b = self.bracket_unchecked(&self.bracket_unchecked(&xj, &xk), &xi);
                    let c = self.bracket_unchecked(&self.bracket_unchecked(&xk, &xi), &xj);
                    let one = self.descriptor.one();
                    axpy(&mut total, &one, &b);
                    axpy(&mut total, &one, &c);
                    if !is_zero_vector(&total) {
                        return Err(Error::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[x_i, x_j]` for 0-based basis indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// The stored brackets `(i, j, [x_i, x_j])`, `i < j`, zero brackets included.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, &Vector)> + '_ {
        let n = self.dim;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, &self.upper[pair_index(n, i, j)])))
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit(self.descriptor, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.descriptor.zero(); self.dim]
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.descriptor, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.descriptor, self.dim)
    }

    /// Span of the given vectors in this algebra's coordinates.
    pub fn span(&self, vectors: Vec<Vector>) -> Result<Subspace> {
        Subspace::span(self.descriptor, self.dim, vectors)
    }

    /// Span of basis vectors given by 0-based indices.
    pub fn coordinate_span(&self, indices: &[usize]) -> Subspace {
        Subspace::coordinate(self.descriptor, self.dim, indices)
    }

    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let n = self.dim;
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let row = &self.table[i * n + j];
                if is_zero_vector(row) {
                    continue;
                }
                axpy(&mut out, &(xi * yj), row);
            }
        }
        out
    }

    /// `[U, V]`: the span of brackets of basis pairs.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::with_capacity(u.dim() * v.dim());
        for a in u.basis() {
            for b in v.basis() {
                let w = self.bracket_unchecked(a, b);
                if !is_zero_vector(&w) {
                    vs.push(w);
                }
            }
        }
        Subspace::span_unchecked(self.descriptor, self.dim, vs)
    }

    /// The first bracket of basis vectors of `u` that leaves `u`, if any.
    pub fn subalgebra_violation(&self, u: &Subspace) -> Option<(Vector, Vector, Vector)> {
        let basis = u.basis();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                let w = self.bracket_unchecked(x, y);
                if !u.contains_unchecked(&w) {
                    return Some((x.clone(), y.clone(), w));
                }
            }
        }
        None
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        self.subalgebra_violation(u).is_none()
    }

    /// Errors with the offending bracket when `u` is not closed.
    pub fn require_subalgebra(&self, u: &Subspace) -> Result<()> {
        match self.subalgebra_violation(u) {
            None => Ok(()),
            Some((x, y, w)) => Err(Error::NotSubalgebra {
                left: format_vector(&x),
                right: format_vector(&y),
                bracket: format_vector(&w),
            }),
        }
    }

    pub fn is_ideal(&self, u: &Subspace) -> bool {
        (0..self.dim).all(|i| {
            let x = self.unit(i);
            u.basis().iter().all(|b| u.contains_unchecked(&self.bracket_unchecked(&x, b)))
        })
    }

    /// Smallest subalgebra containing the given vectors.
    pub fn generated_subalgebra(&self, vectors: Vec<Vector>) -> Subspace {
        let mut span = Subspace::span_unchecked(self.descriptor, self.dim, vectors);
        loop {
            let next = span.sum_unchecked(&self.bracket_subspaces(&span, &span));
            if next == span {
                return span;
            }
            span = next;
        }
    }

    /// Smallest ideal containing `u`.
    pub fn ideal_closure(&self, u: &Subspace) -> Subspace {
        let full = self.full();
        let mut v = u.clone();
        loop {
            let next = v.sum_unchecked(&self.bracket_subspaces(&full, &v));
            if next == v {
                return v;
            }
            v = next;
        }
    }

    /// Left null space of the matrix with rows `rows`, mapped through `basis`.
    fn solve_combinations(&self, rows: Vec<Vector>, basis: &[Vector]) -> Subspace {
        let cols = rows.first().map_or(0, Vec::len);
        let combos = if cols == 0 {
            (0..rows.len()).map(|i| unit(self.descriptor, rows.len(), i)).collect()
        } else {
            Matrix::from_rows(self.descriptor, cols, rows)
                .expect("rectangular")
                .left_kernel()
        };
        let vs = combos
            .into_iter()
            .map(|c| {
                let mut x = self.zero_vector();
                for (a, b) in c.iter().zip(basis) {
                    axpy(&mut x, a, b);
                }
                x
            })
            .collect();
        Subspace::span_unchecked(self.descriptor, self.dim, vs)
    }

    /// `I_L(U) = {x : [x, U] ⊆ U}`.
    pub fn idealiser(&self, u: &Subspace) -> Subspace {
        let ann = u.annihilator();
        let basis: Vec<Vector> = (0..self.dim).map(|i| self.unit(i)).collect();
        let rows = basis
            .iter()
            .map(|x| {
                let mut row = Vec::new();
                for b in u.basis() {
                    let w = self.bracket_unchecked(x, b);
                    row.extend(ann.iter().map(|y| dot(&w, y, self.descriptor)));
                }
                row
            })
            .collect();
        self.solve_combinations(rows, &basis)
    }

    /// `C_L(x) = {y : [y, x] = 0}`.
    pub fn centraliser(&self, x: &[FieldElement]) -> Subspace {
        let basis: Vec<Vector> = (0..self.dim).map(|i| self.unit(i)).collect();
        let rows = basis.iter().map(|y| self.bracket_unchecked(y, x)).collect();
        self.solve_combinations(rows, &basis)
    }

    /// Largest ideal of the algebra contained in `u`.
    pub fn core(&self, u: &Subspace) -> Subspace {
        let mut k = u.clone();
        loop {
            let ann = k.annihilator();
            let rows = k
                .basis()
                .iter()
                .map(|b| {
                    let mut row = Vec::new();
                    for i in 0..self.dim {
                        let w = self.bracket_unchecked(&self.unit(i), b);
                        row.extend(ann.iter().map(|y| dot(&w, y, self.descriptor)));
                    }
                    row
                })
                .collect();
            let next = self.solve_combinations(rows, k.basis());
            if next == k {
                return k;
            }
            k = next;
        }
    }

    /// `U ⊇ [U,U] ⊇ [[U,U],[U,U]] ⊇ …` until the first repeat.
    pub fn derived_series_of(&self, u: &Subspace) -> Vec<Subspace> {
        let mut series = vec![u.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_subspaces(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `U = U¹ ⊇ U² = [U,U] ⊇ U³ = [U,U²] ⊇ …` until the first repeat.
    pub fn lower_central_series_of(&self, u: &Subspace) -> Vec<Subspace> {
        let mut series = vec![u.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_subspaces(u, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        self.derived_series_of(&self.full())
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.lower_central_series_of(&self.full())
    }

    pub fn is_solvable(&self) -> bool {
        self.is_solvable_subalgebra(&self.full())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subalgebra(&self.full())
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.iter().all(|v| is_zero_vector(v))
    }

    /// Whether the subalgebra `u` is solvable as an algebra.
    pub fn is_solvable_subalgebra(&self, u: &Subspace) -> bool {
        self.derived_series_of(u).last().is_some_and(Subspace::is_zero)
    }

    /// Whether the subalgebra `u` is nilpotent as an algebra.
    pub fn is_nilpotent_subalgebra(&self, u: &Subspace) -> bool {
        self.lower_central_series_of(u).last().is_some_and(Subspace::is_zero)
    }

    /// γ∞: the stable term of the lower central series.
    pub fn nilpotent_residual(&self) -> Subspace {
        self.lower_central_series().pop().expect("nonempty")
    }

    /// `N_0 = L`, `N_{i+1} = γ∞(N_i)` with each `N_i` taken as an algebra in
    /// its own right; stops at the first repeated term.
    pub fn lower_nilpotent_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.full()];
        loop {
            let last = series.last().expect("nonempty");
            let as_algebra = self
                .subalgebra_as_algebra(last)
                .expect("terms of the lower nilpotent series are subalgebras");
            let next = as_algebra.to_ambient(&as_algebra.algebra().nilpotent_residual());
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `N_2(L) = 0`.
    pub fn is_metanilpotent(&self) -> bool {
        nth_term(&self.lower_nilpotent_series(), 2).is_zero()
    }

    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<AlgebraWithMap> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal) {
            return Err(Error::NotIdeal);
        }
        let map = quotient_coordinates(&self.full(), ideal)?;
        let m = map.image_dim();
        let section = map.section().to_vec();
        let mut brackets = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let w = map.apply(&self.bracket_unchecked(&section[a], &section[b]));
                brackets.push((a, b, w));
            }
        }
        let algebra = LieAlgebra::new(format!("{}/{}", self.name, ideal), self.descriptor, m, brackets)?;
        let result = AlgebraWithMap {
            algebra,
            kind: MapKind::Projection,
            to_ambient: section,
            from_ambient: map.projection().clone(),
            ambient_subspace: ideal.clone(),
        };
        result.check_homomorphism(self)?;
        Ok(result)
    }

    pub fn subalgebra_as_algebra(&self, u: &Subspace) -> Result<AlgebraWithMap> {
        self.check_subspace(u)?;
        self.require_subalgebra(u)?;
        let m = u.dim();
        let basis = u.basis().to_vec();
        let mut brackets = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let w = self.bracket_unchecked(&basis[a], &basis[b]);
                let coords = u.coordinates(&w).expect("closed under the bracket");
                brackets.push((a, b, coords));
            }
        }
        let algebra = LieAlgebra::new(format!("{}[{}]", self.name, u), self.descriptor, m, brackets)?;
        let mut from_ambient = Matrix::zeros(self.descriptor, self.dim, m);
        for (a, &c) in u.pivots().iter().enumerate() {
            from_ambient.set(c, a, self.descriptor.one());
        }
        let result = AlgebraWithMap {
            algebra,
            kind: MapKind::Inclusion,
            to_ambient: basis,
            from_ambient,
            ambient_subspace: u.clone(),
        };
        result.check_homomorphism(self)?;
        Ok(result)
    }

    /// `self ⊕ other` with zero cross brackets.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(self.descriptor, other.descriptor));
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let zero = self.descriptor.zero();
        let mut brackets = Vec::new();
        for (i, j, v) in self.structure_constants() {
            let mut w = v.clone();
            w.extend(std::iter::repeat_n(zero.clone(), n2));
            brackets.push((i, j, w));
        }
        for (i, j, v) in other.structure_constants() {
            let mut w = vec![zero.clone(); n1];
            w.extend(v.iter().cloned());
            brackets.push((i + n1, j + n1, w));
        }
        LieAlgebra::new(format!("{}+{}", self.name, other.name), self.descriptor, n, brackets)
    }

    /// Checks the three defining conditions of a Cartan subalgebra.
    pub fn cartan_check(&self, c: &Subspace) -> std::result::Result<(), CartanFailure> {
        if !self.is_subalgebra(c) {
            return Err(CartanFailure::NotSubalgebra);
        }
        if !self.is_nilpotent_subalgebra(c) {
            return Err(CartanFailure::NotNilpotent);
        }
        if &self.idealiser(c) != c {
            return Err(CartanFailure::NotSelfIdealising);
        }
        Ok(())
    }

    /// Nilpotent and self-idealising.
    pub fn is_cartan(&self, c: &Subspace) -> bool {
        self.cartan_check(c).is_ok()
    }

    pub(crate) fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.ambient_dim(),
            });
        }
        if u.descriptor() != self.descriptor {
            return Err(Error::DescriptorMismatch(self.descriptor, u.descriptor()));
        }
        Ok(())
    }
}

/// `series[i]`, or the stable last term when the series stopped earlier.
pub fn nth_term(series: &[Subspace], i: usize) -> &Subspace {
    series.get(i).unwrap_or_else(|| series.last().expect("nonempty series"))
}

fn dot(a: &[FieldElement], b: &[FieldElement], d: FieldDescriptor) -> FieldElement {
    let mut acc = d.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// A subalgebra viewed as an algebra; the map is the inclusion.
    Inclusion,
    /// A quotient algebra; the map is the projection.
    Projection,
}

/// An algebra derived from an ambient one, with the linear map relating
/// their coordinates.
#[derive(Debug, Clone)]
pub struct AlgebraWithMap {
    algebra: LieAlgebra,
    kind: MapKind,
    to_ambient: Vec<Vector>,
    from_ambient: Matrix,
    ambient_subspace: Subspace,
}

impl AlgebraWithMap {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// The subalgebra (for an inclusion) or the kernel (for a projection).
    pub fn ambient_subspace(&self) -> &Subspace {
        &self.ambient_subspace
    }

    /// Ambient coordinates: the inclusion, or a section of the projection.
    pub fn vector_to_ambient(&self, v: &[FieldElement]) -> Vector {
        let d = self.algebra.descriptor;
        let mut out = vec![d.zero(); self.from_ambient.rows()];
        for (a, row) in v.iter().zip(&self.to_ambient) {
            axpy(&mut out, a, row);
        }
        out
    }

    /// Local coordinates of an ambient vector (for an inclusion the vector must lie in the subalgebra).
    pub fn vector_to_local(&self, w: &[FieldElement]) -> Vector {
        self.from_ambient.left_apply(w)
    }

    /// Local subspace to ambient: its image (inclusion) or full preimage (projection).
    pub fn to_ambient(&self, u: &Subspace) -> Subspace {
        let vs: Vec<Vector> = u.basis().iter().map(|v| self.vector_to_ambient(v)).collect();
        match self.kind {
            MapKind::Inclusion => {
                Subspace::span_unchecked(self.algebra.descriptor, self.from_ambient.rows(), vs)
            }
            MapKind::Projection => self.ambient_subspace.extend(vs),
        }
    }

    /// Ambient subspace to local coordinates.
    ///
    /// For an inclusion the subspace must lie inside the subalgebra.
    pub fn to_local(&self, u: &Subspace) -> Result<Subspace> {
        if self.kind == MapKind::Inclusion && !u.is_subspace_of(&self.ambient_subspace) {
            return Err(Error::NotContained);
        }
        Ok(u.image(&self.from_ambient))
    }

    fn check_homomorphism(&self, ambient: &LieAlgebra) -> Result<()> {
        match self.kind {
            MapKind::Projection => {
                for i in 0..ambient.dim {
                    for j in i + 1..ambient.dim {
                        let lhs = self.vector_to_local(ambient.basis_bracket(i, j));
                        let rhs = self.algebra.bracket_unchecked(
                            &self.vector_to_local(&ambient.unit(i)),
                            &self.vector_to_local(&ambient.unit(j)),
                        );
                        if lhs != rhs {
                            return Err(Error::Invariant("projection is not a homomorphism".into()));
                        }
                    }
                }
            }
            MapKind::Inclusion => {
                let m = self.algebra.dim;
                for a in 0..m {
                    for b in a + 1..m {
                        let lhs = self.vector_to_ambient(self.algebra.basis_bracket(a, b));
                        let rhs = ambient.bracket_unchecked(&self.to_ambient[a], &self.to_ambient[b]);
                        if lhs != rhs {
                            return Err(Error::Invariant("inclusion is not a homomorphism".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
