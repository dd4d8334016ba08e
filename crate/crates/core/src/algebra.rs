//! Nilpotent commutative algebras given by structure constants.
//!
//! An `Algebra` is the maximal ideal `m` of a local algebra `A = F·1 ⊕ m`,
//! described by a symmetric table of structure constants over a fixed basis.
//! The unit is adjoined formally: elements carry an explicit unit coordinate
//! and multiplication extends the table distributively.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{subspace_equal, MatrixQ};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Coefficient ring for elements: exact scalars for concrete elements,
/// polynomials for symbolic ones.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Coeff for Scalar {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
}

impl Coeff for MultiPoly {
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        MultiPoly::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars())
    }
}

/// Element of `A = F·1 ⊕ m` over coefficient ring `C`.
///
/// Members of `m` have `unit = 0`; unital elements `1 + u` have `unit = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenElement<C: Coeff> {
    pub unit: C,
    pub coords: Vec<C>,
}

pub type Element = GenElement<Scalar>;

/// Element with multivariate polynomial coordinates, used for symbolic
/// computations such as graph polynomials and membership identities.
pub type PolyElement = GenElement<MultiPoly>;

impl<C: Coeff> GenElement<C> {
    pub fn in_m(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.coords.iter().all(Coeff::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coords.len(), other.coords.len());
        GenElement {
            unit: self.unit.add(&other.unit),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.coords.len(), other.coords.len());
        GenElement {
            unit: self.unit.sub(&other.unit),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        GenElement {
            unit: self.unit.scale(s),
            coords: self.coords.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Drops the unit coordinate, keeping the `m`-part.
    pub fn m_part(&self) -> Self {
        GenElement {
            unit: self.unit.zero_like(),
            coords: self.coords.clone(),
        }
    }

    /// Adds 1 to the unit coordinate.
    pub fn plus_one(&self) -> Self {
        GenElement {
            unit: self.unit.add(&self.unit.one_like()),
            coords: self.coords.clone(),
        }
    }

    /// Subtracts 1 from the unit coordinate.
    pub fn minus_one(&self) -> Self {
        GenElement {
            unit: self.unit.sub(&self.unit.one_like()),
            coords: self.coords.clone(),
        }
    }
}

/// Members of `m` serialize as their bare coordinate array.
impl Serialize for Element {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        if !self.unit.is_zero() {
            return Err(serde::ser::Error::custom(
                "only members of the maximal ideal serialize",
            ));
        }
        self.coords.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        Ok(Element::from_coords(Vec::<Scalar>::deserialize(
            deserializer,
        )?))
    }
}

impl Element {
    pub fn zero(dim: usize) -> Element {
        GenElement {
            unit: Scalar::zero(),
            coords: vec![Scalar::zero(); dim],
        }
    }

    /// Member of `m` from its coordinate vector.
    pub fn from_coords(coords: Vec<Scalar>) -> Element {
        GenElement {
            unit: Scalar::zero(),
            coords,
        }
    }

    pub fn from_ints(coords: &[i64]) -> Element {
        Element::from_coords(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Symbolic copy with constant polynomial coordinates in `nvars` variables.
    pub fn to_poly(&self, nvars: usize) -> PolyElement {
        GenElement {
            unit: MultiPoly::constant(nvars, self.unit.clone()),
            coords: self
                .coords
                .iter()
                .map(|c| MultiPoly::constant(nvars, c.clone()))
                .collect(),
        }
    }
}

impl PolyElement {
    /// The generic point of `m`: coordinate `i` is the variable `a_{i+1}`.
    pub fn symbolic(dim: usize) -> PolyElement {
        GenElement {
            unit: MultiPoly::zero(dim),
            coords: (0..dim).map(|i| MultiPoly::var(dim, i)).collect(),
        }
    }

    /// Evaluates every coordinate at `point`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Element> {
        Ok(GenElement {
            unit: self.unit.eval(point)?,
            coords: self
                .coords
                .iter()
                .map(|c| c.eval(point))
                .collect::<Result<_>>()?,
        })
    }
}

/// Linear subspace of `m` in canonical (reduced row echelon) form, so that
/// equality of subspaces is equality of representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    // canonical basis vectors as rows of an rref matrix, zero rows dropped
    rows: MatrixQ,
}

impl Subspace {
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: vectors.iter().map(Vec::len).find(|&l| l != ambient_dim).unwrap_or(0),
            });
        }
        if vectors.is_empty() {
            return Ok(Subspace {
                rows: MatrixQ::zeros(0, ambient_dim),
            });
        }
        let m = MatrixQ::from_rows(vectors.to_vec())?;
        let (r, pivots) = m.rref();
        let rows = MatrixQ::from_rows(
            (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        )?;
        Ok(Subspace { rows })
    }

    pub fn from_elements(ambient_dim: usize, elems: &[Element]) -> Result<Subspace> {
        Subspace::from_vectors(
            ambient_dim,
            &elems.iter().map(|e| e.coords.clone()).collect::<Vec<_>>(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.cols()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.rows.row_vecs()
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        self.basis_vectors()
            .into_iter()
            .map(Element::from_coords)
            .collect()
    }

    /// Basis as the columns of a matrix.
    pub fn basis_matrix(&self) -> MatrixQ {
        self.rows.transpose()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.rows.row_vecs();
        rows.push(v.to_vec());
        MatrixQ::from_rows(rows).expect("rectangular").rank() == self.dim()
    }

    pub fn equal(&self, other: &Subspace) -> bool {
        self.rows == other.rows
    }
}

/// Pass/fail record of the grading axiom, with a witness pair on failure.
#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub homogeneous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

/// Axiom-by-axiom validation outcome.  Indices in witnesses are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub commutative: bool,
    pub associative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associativity_witness: Option<(usize, usize, usize)>,
    pub nilpotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nil_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingReport>,
    pub ok: bool,
}

/// Graded decomposition `m = A_1 ⊕ … ⊕ A_d` by basis indices.
#[derive(Clone, Debug)]
pub struct GradedComponents {
    /// `indices[k]` lists the basis indices of degree `k + 1`.
    pub indices: Vec<Vec<usize>>,
    pub top_degree: usize,
    pub components: Vec<Subspace>,
}

impl GradedComponents {
    pub fn of_degree(&self, degree: usize) -> &[usize] {
        if degree == 0 || degree > self.top_degree {
            &[]
        } else {
            &self.indices[degree - 1]
        }
    }
}

#[derive(Clone)]
pub struct Algebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    degrees: Option<Vec<usize>>,
    // full symmetric grid; table[i][j] = coordinates of e_i · e_j
    table: Vec<Vec<Vec<Scalar>>>,
    // nil-index cached at construction; None when the table is not nilpotent
    nu: Option<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim)
    }
}

impl Algebra {
    /// Builds an algebra from upper-triangle products `(i, j, coords)` with
    /// `i <= j` (0-based); omitted products are zero.  Symmetry is built in.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        degrees: Option<Vec<usize>>,
        products: Vec<(usize, usize, Vec<Scalar>)>,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Malformed("algebra must have dim_m >= 1".into()));
        }
        if let Some(d) = &degrees {
            if d.len() != dim {
                return Err(Error::Malformed("degrees length differs from dim_m".into()));
            }
            if d.contains(&0) {
                return Err(Error::Malformed("degrees must be positive".into()));
            }
        }
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for (i, j, coords) in products {
            if i > j {
                return Err(Error::Malformed(format!(
                    "product entry ({}, {}) must satisfy i <= j",
                    i + 1,
                    j + 1
                )));
            }
            if j >= dim {
                return Err(Error::Malformed(format!(
                    "product index {} out of range",
                    j + 1
                )));
            }
            if seen[i][j] {
                return Err(Error::Malformed(format!(
                    "duplicate product entry ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if coords.len() != dim {
                return Err(Error::Malformed(format!(
                    "product ({}, {}) has {} coefficients, expected {}",
                    i + 1,
                    j + 1,
                    coords.len(),
                    dim
                )));
            }
            seen[i][j] = true;
            table[j][i] = coords.clone();
            table[i][j] = coords;
        }
        let mut alg = Algebra {
            name: name.into(),
            dim,
            labels,
            degrees,
            table,
            nu: None,
        };
        alg.nu = alg.compute_nil_index();
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `N = dim m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n = dim m − 1`.
    pub fn n(&self) -> usize {
        self.dim - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    pub fn product_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = vec![Scalar::zero(); self.dim];
        coords[i] = Scalar::one();
        Element::from_coords(coords)
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(self.dim)
    }

    pub fn one_element(&self) -> Element {
        GenElement {
            unit: Scalar::one(),
            coords: vec![Scalar::zero(); self.dim],
        }
    }

    /// Bilinear extension of the structure table to `A = F·1 ⊕ m`:
    /// `(s + u)(t + v) = st + (sv + tu + uv)`.
    pub fn mul<C: Coeff>(&self, u: &GenElement<C>, v: &GenElement<C>) -> Result<GenElement<C>> {
        if u.coords.len() != self.dim || v.coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.coords.len().max(v.coords.len()),
            });
        }
        let mut coords: Vec<C> = (0..self.dim)
            .map(|k| {
                u.coords[k]
                    .mul(&v.unit)
                    .add(&v.coords[k].mul(&u.unit))
            })
            .collect();
        for i in 0..self.dim {
            if u.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v.coords[j].is_zero() {
                    continue;
                }
                let uv = u.coords[i].mul(&v.coords[j]);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        coords[k] = coords[k].add(&uv.scale(c));
                    }
                }
            }
        }
        Ok(GenElement {
            unit: u.unit.mul(&v.unit),
            coords,
        })
    }

    /// Matrix of left multiplication by `u` on `m`.
    pub fn mul_matrix(&self, u: &Element) -> Result<MatrixQ> {
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let prod = self.mul(u, &self.basis_element(j))?;
            cols.push(prod.coords);
        }
        MatrixQ::from_columns(cols)
    }

    fn commutative(&self) -> bool {
        // symmetry is enforced by the storage layout
        true
    }

    fn associativity_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let ei = self.basis_element(i);
                    let ej = self.basis_element(j);
                    let ek = self.basis_element(k);
                    let left = self.mul(&self.mul(&ei, &ej)?, &ek)?;
                    let right = self.mul(&ei, &self.mul(&ej, &ek)?)?;
                    if left != right {
                        return Ok(Some((i + 1, j + 1, k + 1)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Ideal powers `m^1 ⊇ m^2 ⊇ …` down to the zero space, computed as
    /// spans of products with echelon reduction.  Returns `None` if the
    /// chain stabilizes at a nonzero space (table not nilpotent).
    pub fn ideal_powers(&self) -> Option<Vec<Subspace>> {
        let full = Subspace::from_elements(
            self.dim,
            &(0..self.dim)
                .map(|i| self.basis_element(i))
                .collect::<Vec<_>>(),
        )
        .expect("basis");
        let mut powers = vec![full];
        loop {
            let last = powers.last().unwrap();
            if last.dim() == 0 {
                powers.pop();
                return Some(powers);
            }
            let mut products = Vec::new();
            for v in last.basis_elements() {
                for i in 0..self.dim {
                    let p = self
                        .mul(&v, &self.basis_element(i))
                        .expect("dimensions agree");
                    products.push(p.coords);
                }
            }
            let next = Subspace::from_vectors(self.dim, &products).expect("dimensions agree");
            if next.dim() >= last.dim() {
                return None;
            }
            powers.push(next);
        }
    }

    fn compute_nil_index(&self) -> Option<usize> {
        self.ideal_powers().map(|p| p.len())
    }

    /// Largest `ν` with `m^ν != 0`.
    pub fn nil_index(&self) -> Result<usize> {
        self.nu.ok_or(Error::NotNilpotent)
    }

    fn grading_witness(&self) -> Option<(usize, usize)> {
        let degrees = self.degrees.as_ref()?;
        for i in 0..self.dim {
            for j in i..self.dim {
                let target = degrees[i] + degrees[j];
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() && degrees[k] != target {
                        return Some((i + 1, j + 1));
                    }
                }
            }
        }
        None
    }

    /// Checks every axiom and reports pass/fail with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let witness = self.associativity_witness().expect("dimensions agree");
        let grading = self.degrees.as_ref().map(|_| {
            let w = self.grading_witness();
            GradingReport {
                homogeneous: w.is_none(),
                witness: w,
            }
        });
        let nilpotent = self.nu.is_some();
        let ok = witness.is_none()
            && nilpotent
            && grading.as_ref().is_none_or(|g| g.homogeneous);
        ValidationReport {
            commutative: self.commutative(),
            associative: witness.is_none(),
            associativity_witness: witness,
            nilpotent,
            nil_index: self.nu,
            grading,
            ok,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.ok {
            Ok(())
        } else if !report.nilpotent {
            Err(Error::NotNilpotent)
        } else if let Some(w) = report.associativity_witness {
            Err(Error::Malformed(format!(
                "associativity fails at basis triple {w:?}"
            )))
        } else {
            Err(Error::NotGraded(format!(
                "inhomogeneous product at {:?}",
                report.grading.and_then(|g| g.witness)
            )))
        }
    }

    /// `Ann(m) = {u ∈ m : u·m = 0}` as the exact kernel of the stacked
    /// multiplication maps.
    pub fn annihilator(&self) -> Subspace {
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim * self.dim);
        // row for (j, k): sum_i u_i c[i][j]_k = 0
        for j in 0..self.dim {
            for k in 0..self.dim {
                rows.push((0..self.dim).map(|i| self.table[i][j][k].clone()).collect());
            }
        }
        let m = MatrixQ::from_rows(rows).expect("rectangular");
        let kernel = m.kernel_basis();
        Subspace::from_vectors(self.dim, &kernel).expect("dimensions agree")
    }

    /// Gorenstein means the annihilator of `m` is 1-dimensional.
    pub fn is_gorenstein(&self) -> bool {
        self.annihilator().dim() == 1
    }

    pub fn ensure_gorenstein(&self) -> Result<()> {
        let ann = self.annihilator().dim();
        if ann == 1 {
            Ok(())
        } else {
            Err(Error::NotGorenstein { ann_dim: ann })
        }
    }

    /// Basis of the derivation algebra `Der(m)` (which in characteristic
    /// zero has the same dimension as the automorphism group of `m`),
    /// solved exactly from the Leibniz identities on all basis pairs.
    pub fn derivation_algebra(&self) -> (Vec<MatrixQ>, usize) {
        let n = self.dim;
        // unknowns: D[k][l] at index k * n + l
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let mut row = vec![Scalar::zero(); n * n];
                    // D(e_i e_j) coordinate k: sum_l c[i][j]_l D[k][l]
                    for l in 0..n {
                        if !self.table[i][j][l].is_zero() {
                            row[k * n + l] = &row[k * n + l] + &self.table[i][j][l];
                        }
                    }
                    // minus D(e_i) e_j coordinate k: sum_l D[l][i] c[l][j]_k
                    for l in 0..n {
                        if !self.table[l][j][k].is_zero() {
                            row[l * n + i] = &row[l * n + i] - &self.table[l][j][k];
                        }
                    }
                    // minus e_i D(e_j) coordinate k: sum_l D[l][j] c[i][l]_k
                    for l in 0..n {
                        if !self.table[i][l][k].is_zero() {
                            row[l * n + j] = &row[l * n + j] - &self.table[i][l][k];
                        }
                    }
                    if row.iter().any(|s| !s.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            // no constraints: every matrix is a derivation
            MatrixQ::identity(n * n).row_vecs()
        } else {
            MatrixQ::from_rows(rows).expect("rectangular").kernel_basis()
        };
        let basis: Vec<MatrixQ> = kernel
            .into_iter()
            .map(|flat| {
                let mut m = MatrixQ::zeros(n, n);
                for k in 0..n {
                    for l in 0..n {
                        m[(k, l)] = flat[k * n + l].clone();
                    }
                }
                m
            })
            .collect();
        let dim = basis.len();
        (basis, dim)
    }

    /// Splits the basis into graded components and checks `Ann(m) = A_d`.
    pub fn graded_components(&self) -> Result<GradedComponents> {
        let degrees = self
            .degrees
            .as_ref()
            .ok_or_else(|| Error::NotGraded("no degrees supplied".into()))?;
        if let Some(w) = self.grading_witness() {
            return Err(Error::NotGraded(format!("inhomogeneous product at {w:?}")));
        }
        let top = *degrees.iter().max().expect("dim >= 1");
        let mut indices = vec![Vec::new(); top];
        for (i, &d) in degrees.iter().enumerate() {
            indices[d - 1].push(i);
        }
        let components: Vec<Subspace> = indices
            .iter()
            .map(|idx| {
                Subspace::from_elements(
                    self.dim,
                    &idx.iter().map(|&i| self.basis_element(i)).collect::<Vec<_>>(),
                )
                .expect("dimensions agree")
            })
            .collect();
        let ann = self.annihilator();
        let top_comp = &components[top - 1];
        let same = ann.dim() == top_comp.dim()
            && subspace_equal(&ann.basis_matrix(), &top_comp.basis_matrix())?;
        if !same {
            return Err(Error::AnnihilatorNotTop);
        }
        Ok(GradedComponents {
            indices,
            top_degree: top,
            components,
        })
    }

    /// True when degrees are supplied, products are homogeneous and the
    /// annihilator is the top component.
    pub fn is_graded_gorenstein(&self) -> bool {
        self.is_gorenstein() && self.graded_components().is_ok()
    }

    /// Degree-`k` component of an element under the grading.
    pub fn graded_part(&self, comps: &GradedComponents, u: &Element, degree: usize) -> Element {
        let mut coords = vec![Scalar::zero(); self.dim];
        for &i in comps.of_degree(degree) {
            coords[i] = u.coords[i].clone();
        }
        Element::from_coords(coords)
    }
}

/// `dim(m / m^2)`, the minimal number of generators of `m`.
pub fn codim_m_squared(alg: &Algebra) -> usize {
    match alg.ideal_powers() {
        Some(powers) => {
            let m2 = powers.get(1).map_or(0, Subspace::dim);
            alg.dim() - m2
        }
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sc(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn t3_validates_with_nil_index_two() {
        let alg = fixtures::truncated_polynomial(3);
        let report = alg.validate();
        assert!(report.ok);
        assert_eq!(report.nil_index, Some(2));
        assert!(report.grading.unwrap().homogeneous);
    }

    #[test]
    fn associativity_failure_reports_witness() {
        // e1 e1 = e2, e1 e2 = e1: (e1 e1) e2 = e1 e2 = e1 but e1 (e1 e2) = e1 e1 = e2
        let alg = Algebra::new(
            "broken",
            vec!["u".into(), "v".into()],
            None,
            vec![
                (0, 0, vec![sc(0), sc(1)]),
                (0, 1, vec![sc(1), sc(0)]),
            ],
        )
        .unwrap();
        let report = alg.validate();
        assert!(!report.associative);
        assert_eq!(report.associativity_witness, Some((1, 1, 2)));
        assert!(!report.ok);
    }

    #[test]
    fn x2y2_products_match_hand_expansion() {
        // basis x, y, xy; all nine products written out by hand
        let alg = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        assert_eq!(alg.labels(), &["x", "y", "x*y"]);
        let x = alg.basis_element(0);
        let y = alg.basis_element(1);
        let xy = alg.basis_element(2);
        let zero = alg.zero_element();
        assert_eq!(alg.mul(&x, &x).unwrap(), zero);
        assert_eq!(alg.mul(&x, &y).unwrap(), xy);
        assert_eq!(alg.mul(&y, &x).unwrap(), xy);
        assert_eq!(alg.mul(&y, &y).unwrap(), zero);
        assert_eq!(alg.mul(&x, &xy).unwrap(), zero);
        assert_eq!(alg.mul(&xy, &x).unwrap(), zero);
        assert_eq!(alg.mul(&y, &xy).unwrap(), zero);
        assert_eq!(alg.mul(&xy, &y).unwrap(), zero);
        assert_eq!(alg.mul(&xy, &xy).unwrap(), zero);
        assert!(alg.validate().ok);
    }

    #[test]
    fn multiply_handles_unit_distributively() {
        // (1 + t)(1 - t) = 1 - t^2 in Q[t]/(t^3)
        let alg = fixtures::truncated_polynomial(3);
        let t = alg.basis_element(0);
        let one = alg.one_element();
        let left = one.add(&t);
        let right = one.sub(&t);
        let product = alg.mul(&left, &right).unwrap();
        let expected = one.sub(&alg.basis_element(1));
        assert_eq!(product, expected);
    }

    #[test]
    fn annihilator_examples() {
        let t4 = fixtures::truncated_polynomial(4);
        let ann = t4.annihilator();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&[sc(0), sc(0), sc(1)]));
        // Ann(m) · m = 0 exactly
        for b in ann.basis_elements() {
            for i in 0..t4.dim() {
                assert!(t4.mul(&b, &t4.basis_element(i)).unwrap().is_zero());
            }
        }

        let x2y2 = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let ann = x2y2.annihilator();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&[sc(0), sc(0), sc(1)]));

        // Q[t]/(t^2): every product vanishes, Ann(m) = m
        let t2 = fixtures::truncated_polynomial(2);
        assert_eq!(t2.annihilator().dim(), 1);
        assert_eq!(t2.nil_index().unwrap(), 1);
    }

    #[test]
    fn gorenstein_detection() {
        assert!(fixtures::truncated_polynomial(4).is_gorenstein());
        assert!(fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]).is_gorenstein());
        // Q[x,y]/(x^2, xy, y^2): all products zero, annihilator 2-dimensional
        let flat = Algebra::new(
            "flat",
            vec!["x".into(), "y".into()],
            None,
            vec![],
        )
        .unwrap();
        assert!(!flat.is_gorenstein());
        assert_eq!(flat.annihilator().dim(), 2);
    }

    #[test]
    fn nil_index_examples() {
        assert_eq!(fixtures::truncated_polynomial(4).nil_index().unwrap(), 3);
        assert_eq!(
            fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2])
                .nil_index()
                .unwrap(),
            2
        );
        assert_eq!(fixtures::truncated_polynomial(2).nil_index().unwrap(), 1);
    }

    #[test]
    fn derivations_of_t2() {
        // one generator, no relations: t -> c t
        let (basis, dim) = fixtures::truncated_polynomial(2).derivation_algebra();
        assert_eq!(dim, 1);
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn derivations_of_t4_contain_euler_like_map() {
        let alg = fixtures::truncated_polynomial(4);
        let (basis, dim) = alg.derivation_algebra();
        assert!(dim >= alg.n());
        // D(t^j) = j t^{j+1} is a derivation; check it lies in the span
        let d = MatrixQ::int_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]]);
        let mut cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|m| {
                let mut flat = Vec::new();
                for i in 0..3 {
                    flat.extend(m.row(i).to_vec());
                }
                flat
            })
            .collect();
        let mut target = Vec::new();
        for i in 0..3 {
            target.extend(d.row(i).to_vec());
        }
        let a = MatrixQ::from_columns(std::mem::take(&mut cols)).unwrap();
        assert!(a.solve(&target).is_ok());
        // every basis derivation satisfies Leibniz exactly
        for m in &basis {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let ei = alg.basis_element(i);
                    let ej = alg.basis_element(j);
                    let prod = alg.mul(&ei, &ej).unwrap();
                    let left = Element::from_coords(m.mul_vec(&prod.coords).unwrap());
                    let de_i = Element::from_coords(m.mul_vec(&ei.coords).unwrap());
                    let de_j = Element::from_coords(m.mul_vec(&ej.coords).unwrap());
                    let right = alg
                        .mul(&de_i, &ej)
                        .unwrap()
                        .add(&alg.mul(&ei, &de_j).unwrap());
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn derivation_dimension_bounds_for_x2y2() {
        let alg = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let (_, dim) = alg.derivation_algebra();
        assert!(dim >= alg.n());
        assert!(dim >= codim_m_squared(&alg));
        assert_eq!(codim_m_squared(&alg), 2);
    }

    #[test]
    fn graded_components_of_t4() {
        let alg = fixtures::truncated_polynomial(4);
        let comps = alg.graded_components().unwrap();
        assert_eq!(comps.top_degree, 3);
        assert_eq!(comps.of_degree(1), &[0]);
        assert_eq!(comps.of_degree(2), &[1]);
        assert_eq!(comps.of_degree(3), &[2]);
    }

    #[test]
    fn graded_components_reject_annihilator_not_on_top() {
        // zero products with degrees (1, 2): Ann(m) is everything, A_2 is not
        let alg = Algebra::new(
            "zero",
            vec!["u".into(), "v".into()],
            Some(vec![1, 2]),
            vec![],
        )
        .unwrap();
        assert!(matches!(
            alg.graded_components(),
            Err(Error::AnnihilatorNotTop)
        ));
    }

    #[test]
    fn associativity_and_commutativity_exhaustive_on_suite() {
        for alg in fixtures::suite() {
            let report = alg.validate();
            assert!(report.ok, "{} failed validation", alg.name());
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let ei = alg.basis_element(i);
                    let ej = alg.basis_element(j);
                    assert_eq!(alg.mul(&ei, &ej).unwrap(), alg.mul(&ej, &ei).unwrap());
                }
            }
        }
    }

    #[test]
    fn nil_index_brackets_ideal_powers() {
        for alg in fixtures::suite() {
            let nu = alg.nil_index().unwrap();
            let powers = alg.ideal_powers().unwrap();
            assert_eq!(powers.len(), nu);
            assert!(powers[nu - 1].dim() > 0);
        }
    }
}
