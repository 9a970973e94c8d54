//! Exact dense linear algebra: matrices, reduced row echelon form, and
//! subspaces kept in canonical (RREF) form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};

/// A coordinate vector.
pub type Vector = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    descriptor: FieldDescriptor,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(descriptor: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            descriptor,
            entries: vec![descriptor.zero(); rows * cols],
        }
    }

    pub fn identity(descriptor: FieldDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(descriptor, n, n);
        for i in 0..n {
            m.set(i, i, descriptor.one());
        }
        m
    }

    pub fn from_rows(descriptor: FieldDescriptor, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in &row {
                if x.descriptor() != descriptor {
                    return Err(Error::DescriptorMismatch(descriptor, x.descriptor()));
                }
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            descriptor,
            entries,
        })
    }

    /// Builds a matrix from small integer literals.
    pub fn from_ints(descriptor: FieldDescriptor, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| descriptor.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(descriptor, cols, rows).expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.descriptor, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(self.descriptor, other.descriptor));
        }
        let rows = self.row_iter().map(|r| other.left_apply(r)).collect();
        Matrix::from_rows(self.descriptor, other.cols, rows)
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_apply(&self, v: &[FieldElement]) -> Vector {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![self.descriptor.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            axpy(&mut out, coeff, self.row(r));
        }
        out
    }

    /// Reduced row echelon form with zero rows dropped, and the rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        let rank = pivots.len();
        (
            Matrix::from_rows(self.descriptor, self.cols, rows).expect("rref keeps shape"),
            rank,
        )
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn right_kernel(&self) -> Vec<Vector> {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        kernel_from_rref(self.descriptor, &rows, &pivots, self.cols)
    }

    /// Basis of `{y : y · self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        self.transpose().right_kernel()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        self.descriptor.one()
                    } else {
                        self.descriptor.zero()
                    }
                }));
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.descriptor, n, inv).expect("square"))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", format_vector(row))?;
        }
        write!(f, "]")
    }
}

/// `out += coeff * row`.
pub(crate) fn axpy(out: &mut [FieldElement], coeff: &FieldElement, row: &[FieldElement]) {
    for (o, x) in out.iter_mut().zip(row) {
        if !x.is_zero() {
            *o = &*o + &(coeff * x);
        }
    }
}

pub fn format_vector(v: &[FieldElement]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

/// Gauss-Jordan elimination. The pivot is the first nonzero entry in column
/// order; returns the nonzero rows and their pivot columns.
pub(crate) fn rref_rows(mut rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = -&row[c];
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn kernel_from_rref(
    descriptor: FieldDescriptor,
    rows: &[Vector],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vector> {
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![descriptor.zero(); cols];
            v[free] = descriptor.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][free];
            }
            v
        })
        .collect()
}

/// A subspace of `F^n`, stored by its unique RREF basis.
///
/// Two subspaces are equal exactly when their bases are identical, so
/// subspaces can be hashed and deduplicated directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    descriptor: FieldDescriptor,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(descriptor: FieldDescriptor, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            descriptor,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(descriptor: FieldDescriptor, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(descriptor, ambient_dim, i)).collect();
        Subspace {
            ambient_dim,
            descriptor,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of the given vectors, checked for length and field.
    pub fn span(descriptor: FieldDescriptor, ambient_dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if let Some(x) = v.iter().find(|x| x.descriptor() != descriptor) {
                return Err(Error::DescriptorMismatch(descriptor, x.descriptor()));
            }
        }
        Ok(Self::span_unchecked(descriptor, ambient_dim, vectors))
    }

    pub(crate) fn span_unchecked(descriptor: FieldDescriptor, ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        let (basis, pivots) = rref_rows(vectors, ambient_dim);
        Subspace {
            ambient_dim,
            descriptor,
            basis,
            pivots,
        }
    }

    /// Span of standard basis vectors, given by 0-based indices.
    pub fn coordinate(descriptor: FieldDescriptor, ambient_dim: usize, indices: &[usize]) -> Self {
        let vs = indices.iter().map(|&i| unit(descriptor, ambient_dim, i)).collect();
        Self::span_unchecked(descriptor, ambient_dim, vs)
    }

    /// Wraps rows already known to be in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(descriptor: FieldDescriptor, ambient_dim: usize, basis: Vec<Vector>) -> Self {
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Subspace {
            ambient_dim,
            descriptor,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.descriptor, self.ambient_dim, self.basis.clone()).expect("well formed")
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(self.descriptor, other.descriptor));
        }
        Ok(())
    }

    /// `w` minus its projection along the pivot columns; zero iff `w` lies in the span.
    pub fn reduce(&self, w: &[FieldElement]) -> Vector {
        let mut out = w.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !out[c].is_zero() {
                let factor = -&out[c];
                axpy(&mut out, &factor, row);
            }
        }
        out
    }

    pub(crate) fn contains_unchecked(&self, w: &[FieldElement]) -> bool {
        is_zero_vector(&self.reduce(w))
    }

    pub fn contains(&self, w: &[FieldElement]) -> Result<bool> {
        if w.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: w.len(),
            });
        }
        Ok(self.contains_unchecked(w))
    }

    /// Coefficients of `w` with respect to the RREF basis, if `w` is in the span.
    pub fn coordinates(&self, w: &[FieldElement]) -> Option<Vector> {
        let coeffs: Vector = self.pivots.iter().map(|&c| w[c].clone()).collect();
        let mut rebuilt = vec![self.descriptor.zero(); self.ambient_dim];
        for (a, row) in coeffs.iter().zip(&self.basis) {
            axpy(&mut rebuilt, a, row);
        }
        (rebuilt.as_slice() == w).then_some(coeffs)
    }

    /// `self ≤ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.basis.iter().all(|r| other.contains_unchecked(r))
    }

    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.is_subspace_of(other))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        if other.is_subspace_of(self) {
            return self.clone();
        }
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span_unchecked(self.descriptor, self.ambient_dim, vs)
    }

    /// Adds vectors to the subspace.
    pub fn extend(&self, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let vs = self.basis.iter().cloned().chain(vectors).collect();
        Subspace::span_unchecked(self.descriptor, self.ambient_dim, vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.intersection_unchecked(other))
    }

    /// Zassenhaus: row-reduce `[[u, u], [v, 0]]`; rows whose left half
    /// vanishes carry a basis of `u ∩ v` in their right half.
    pub(crate) fn intersection_unchecked(&self, other: &Subspace) -> Subspace {
        if self.is_subspace_of(other) {
            return self.clone();
        }
        if other.is_subspace_of(self) {
            return other.clone();
        }
        let n = self.ambient_dim;
        let zero = self.descriptor.zero();
        let mut stacked = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            stacked.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_n(zero.clone(), n));
            stacked.push(row);
        }
        let (rows, pivots) = rref_rows(stacked, 2 * n);
        let basis: Vec<Vector> = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        // The right halves of those rows are already in RREF.
        Subspace::from_rref_unchecked(self.descriptor, n, basis)
    }

    /// Basis of `{y : u · y = 0 for all u in self}`; `w ∈ self` iff `w · y = 0` for every returned `y`.
    pub fn annihilator(&self) -> Vec<Vector> {
        kernel_from_rref(self.descriptor, &self.basis, &self.pivots, self.ambient_dim)
    }

    /// Image under a linear map given as an `ambient_dim × m` matrix.
    pub fn image(&self, map: &Matrix) -> Subspace {
        let vs = self.basis.iter().map(|r| map.left_apply(r)).collect();
        Subspace::span_unchecked(self.descriptor, map.cols(), vs)
    }
}

pub(crate) fn unit(descriptor: FieldDescriptor, n: usize, i: usize) -> Vector {
    let mut v = vec![descriptor.zero(); n];
    v[i] = descriptor.one();
    v
}

/// Canonical order: dimension, then pivot profile, then basis entries row-major.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", format_vector(row))?;
        }
        write!(f, ">")
    }
}

/// A surjection from `total` onto `F^(dim total − dim sub)` with kernel `sub`,
/// together with a section back into ambient coordinates.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    total: Subspace,
    sub: Subspace,
    section: Vec<Vector>,
    projection: Matrix,
}

impl QuotientMap {
    /// The images of quotient basis vectors in ambient coordinates.
    pub fn section(&self) -> &[Vector] {
        &self.section
    }

    /// The `ambient_dim × image_dim` matrix of the projection.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn image_dim(&self) -> usize {
        self.section.len()
    }

    pub fn total(&self) -> &Subspace {
        &self.total
    }

    pub fn kernel(&self) -> &Subspace {
        &self.sub
    }

    /// Quotient coordinates of `w ∈ total`.
    pub fn apply(&self, w: &[FieldElement]) -> Vector {
        self.projection.left_apply(w)
    }

    /// Ambient representative of quotient coordinates.
    pub fn lift(&self, q: &[FieldElement]) -> Vector {
        let d = self.total.descriptor();
        let mut out = vec![d.zero(); self.total.ambient_dim()];
        for (a, row) in q.iter().zip(&self.section) {
            axpy(&mut out, a, row);
        }
        out
    }

    /// Image of a subspace of `total`.
    pub fn push(&self, u: &Subspace) -> Subspace {
        u.image(&self.projection)
    }

    /// Full preimage of a subspace of the quotient coordinate space.
    pub fn pull(&self, q: &Subspace) -> Subspace {
        self.sub.extend(q.basis().iter().map(|v| self.lift(v)))
    }
}

pub fn quotient_coordinates(total: &Subspace, sub: &Subspace) -> Result<QuotientMap> {
    total.check_compatible(sub)?;
    if !sub.is_subspace_of(total) {
        return Err(Error::NotContained);
    }
    let descriptor = total.descriptor();
    let n = total.ambient_dim();
    let mut span = sub.clone();
    let mut section = Vec::new();
    for row in total.basis() {
        if !span.contains_unchecked(row) {
            span = span.extend([row.clone()]);
            section.push(row.clone());
        }
    }
    // Coordinates of w ∈ total w.r.t. (sub basis ++ section) are read off the
    // pivot columns of total.
    let dt = total.dim();
    let ds = sub.dim();
    let square_rows: Vec<Vector> = sub
        .basis()
        .iter()
        .chain(&section)
        .map(|r| total.pivots().iter().map(|&c| r[c].clone()).collect())
        .collect();
    let square = Matrix::from_rows(descriptor, dt, square_rows)?;
    let inv = square
        .inverse()
        .ok_or_else(|| Error::Invariant("quotient basis is not invertible".into()))?;
    let m = dt - ds;
    let mut projection = Matrix::zeros(descriptor, n, m);
    for (a, &c) in total.pivots().iter().enumerate() {
        for j in 0..m {
            projection.set(c, j, inv.get(a, ds + j).clone());
        }
    }
    Ok(QuotientMap {
        total: total.clone(),
        sub: sub.clone(),
        section,
        projection,
    })
}
