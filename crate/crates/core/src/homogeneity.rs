//! Automorphism transport and affine symmetries of the hypersurface.
//!
//! On a graded algebra, every hyperplane target `(1 + y)Π` is reached by an
//! automorphism assembled from homogeneous factors `φ_{x_i}`, one per degree.
//! The staged solve keeps the composite `ψ_k = φ_{x_k} ∘ … ∘ φ_{x_1}` and at
//! stage `k` kills the top-degree residual of `(1 + y)^{-1} ψ_{k-1}(u)` on
//! the component of degree `d − k`; grading makes the first-order effect of
//! `φ_{x_k}` there exactly `(d − k)·x_k·u`, and leaves already-cleared
//! components untouched.  Every output is accepted only after the exact
//! final check `φ(Π) = (1 + y)Π`.
//!
//! Certified transports convert into affine self-maps of the hypersurface:
//! the map `v ↦ L(v) + p` preserves the surface whenever `L` is an algebra
//! automorphism with `L(K) = (1 + exp(2p) − 1)^{-1} K`.  For ungraded input
//! no theorem applies; a bounded Newton-style search over nilpotent
//! derivations either certifies a transporter or reports undecided.

use serde::Serialize;

use crate::affine::AffineMap;
use crate::algebra::{Algebra, Element, GradedComponents, PolyElement, Subspace};
use crate::error::{Error, Result};
use crate::hypersurface::{
    graph_coeffs_of_hyperplane, hyperplane_from_graph_coeffs, image_membership_poly,
    quadric_translation, surface_value, GraphPoly, Projection,
};
use crate::matrix::{subspace_equal, MatrixQ};
use crate::poly::MultiPoly;
use crate::sample;
use crate::scalar::Scalar;
use crate::series::{binomial_power, exp_m, log_m};
use crate::transport::{find_x, multiply_subspace, x_to_y};

/// Automorphism of a graded algebra together with the homogeneous factors
/// generating it as `φ_{x_{d−1}} ∘ … ∘ φ_{x_1}`.
#[derive(Clone, Debug)]
pub struct GradedAutomorphism {
    pub matrix: MatrixQ,
    pub factors: Vec<(usize, Element)>,
}

impl GradedAutomorphism {
    pub fn apply(&self, u: &Element) -> Result<Element> {
        Ok(Element::from_coords(self.matrix.mul_vec(&u.coords)?))
    }
}

/// Exact multiplicativity check `L(uv) = L(u)L(v)` on all basis pairs, plus
/// invertibility.
pub fn automorphism_check(alg: &Algebra, m: &MatrixQ) -> Result<()> {
    if m.det()?.is_zero() {
        return Err(Error::contradiction("automorphism check", "singular matrix"));
    }
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let ei = alg.basis_element(i);
            let ej = alg.basis_element(j);
            let prod = alg.mul(&ei, &ej)?;
            let lhs = m.mul_vec(&prod.coords)?;
            let li = Element::from_coords(m.mul_vec(&ei.coords)?);
            let lj = Element::from_coords(m.mul_vec(&ej.coords)?);
            let rhs = alg.mul(&li, &lj)?;
            if lhs != rhs.coords {
                return Err(Error::contradiction(
                    "automorphism check",
                    format!("multiplicativity fails on basis pair ({}, {})", i + 1, j + 1),
                ));
            }
        }
    }
    Ok(())
}

fn require_in_pi(
    alg: &Algebra,
    comps: &GradedComponents,
    x: &Element,
    what: &str,
) -> Result<()> {
    if !x.in_m() {
        return Err(Error::NotInMaximalIdeal(x.unit.to_string()));
    }
    for &idx in comps.of_degree(comps.top_degree) {
        if !x.coords[idx].is_zero() {
            return Err(Error::Malformed(format!(
                "{what} must lie in the sum of the components below the top degree"
            )));
        }
    }
    let _ = alg;
    Ok(())
}

/// Automorphisms assembled from homogeneous factors never lower the degree.
fn filtration_check(alg: &Algebra, m: &MatrixQ) -> Result<()> {
    let degrees = alg.degrees().expect("graded");
    for row in 0..alg.dim() {
        for col in 0..alg.dim() {
            if degrees[row] < degrees[col] && !m[(row, col)].is_zero() {
                return Err(Error::contradiction(
                    "graded automorphism",
                    format!("matrix lowers the degree at entry ({}, {})", row + 1, col + 1),
                ));
            }
        }
    }
    Ok(())
}

/// The derivation `D_x(u) = x·(u_1 + 2u_2 + … + (d−1)u_{d−1})` for `x ∈ Π`,
/// as a matrix on `m`.  The Leibniz identity is verified exactly on all
/// basis pairs.
pub fn derivation_matrix(
    alg: &Algebra,
    comps: &GradedComponents,
    x: &Element,
) -> Result<MatrixQ> {
    require_in_pi(alg, comps, x, "derivation direction")?;
    let d = comps.top_degree;
    let mut cols = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        let degree = alg.degrees().expect("graded")[b];
        if degree == d {
            cols.push(vec![Scalar::zero(); alg.dim()]);
        } else {
            let image = alg
                .mul(x, &alg.basis_element(b))?
                .scale(&Scalar::from_int(degree as i64));
            cols.push(image.coords);
        }
    }
    let m = MatrixQ::from_columns(cols)?;
    // Leibniz: D(uv) = D(u)v + uD(v) on all basis pairs
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let ei = alg.basis_element(i);
            let ej = alg.basis_element(j);
            let prod = alg.mul(&ei, &ej)?;
            let lhs = m.mul_vec(&prod.coords)?;
            let di = Element::from_coords(m.mul_vec(&ei.coords)?);
            let dj = Element::from_coords(m.mul_vec(&ej.coords)?);
            let rhs = alg.mul(&di, &ej)?.add(&alg.mul(&ei, &dj)?);
            if lhs != rhs.coords {
                return Err(Error::contradiction(
                    "derivation",
                    format!("Leibniz identity fails on basis pair ({}, {})", i + 1, j + 1),
                ));
            }
        }
    }
    Ok(m)
}

/// The automorphism `φ_{x_i}(u) = Σ_j (1 − i·x_i)^{−j/i} u_j + u_d` for a
/// homogeneous `x_i` of degree `i`, cross-checked against the exact matrix
/// exponential of `D_{x_i}` and verified multiplicative.
pub fn phi_homogeneous(
    alg: &Algebra,
    comps: &GradedComponents,
    i: usize,
    x_i: &Element,
) -> Result<GradedAutomorphism> {
    let d = comps.top_degree;
    if i == 0 || i >= d.max(1) {
        return Err(Error::Malformed(format!(
            "factor degree must satisfy 1 <= i <= d-1, got {i}"
        )));
    }
    for (idx, c) in x_i.coords.iter().enumerate() {
        if !c.is_zero() && alg.degrees().expect("graded")[idx] != i {
            return Err(Error::NotHomogeneous { expected: i });
        }
    }
    let base = x_i.scale(&Scalar::from_int(-(i as i64))).plus_one();
    let mut cols = vec![vec![Scalar::zero(); alg.dim()]; alg.dim()];
    for degree in 1..=d {
        let idxs = comps.of_degree(degree);
        if idxs.is_empty() {
            continue;
        }
        if degree == d {
            for &b in idxs {
                cols[b] = alg.basis_element(b).coords;
            }
            continue;
        }
        let q = Scalar::ratio(-(degree as i64), i as i64);
        let multiplier = binomial_power(alg, &base, &q)?;
        for &b in idxs {
            cols[b] = alg.mul(&multiplier, &alg.basis_element(b))?.coords;
        }
    }
    let matrix = MatrixQ::from_columns(cols)?;

    // cross-check against exp(D_{x_i})
    let exp_d = derivation_matrix(alg, comps, x_i)?.exp_nilpotent()?;
    if exp_d != matrix {
        return Err(Error::contradiction(
            "homogeneous automorphism",
            "binomial-power form differs from the exponential of the derivation",
        ));
    }
    automorphism_check(alg, &matrix)?;
    filtration_check(alg, &matrix)?;
    Ok(GradedAutomorphism {
        matrix,
        factors: vec![(i, x_i.clone())],
    })
}

/// Finds `φ = φ_{x_{d−1}} ∘ … ∘ φ_{x_1}` with `φ(Π) = (1 + y)Π` by the
/// staged elimination, then verifies the subspace identity exactly.
pub fn graded_transport(
    alg: &Algebra,
    comps: &GradedComponents,
    proj: &Projection,
    y: &Element,
) -> Result<GradedAutomorphism> {
    require_in_pi(alg, comps, y, "transport target")?;
    let d = comps.top_degree;
    let top_idx = comps.of_degree(d)[0];
    // the staged solve is tied to the canonical kernel
    if !proj
        .lambda()
        .iter()
        .enumerate()
        .all(|(i, l)| if i == top_idx { l.is_one() } else { l.is_zero() })
    {
        return Err(Error::Malformed(
            "graded transport requires the canonical projection".into(),
        ));
    }
    let w_inv = binomial_power(alg, &y.clone().plus_one(), &Scalar::from_int(-1))?;
    let mut psi = MatrixQ::identity(alg.dim());
    let mut factors = Vec::new();

    // top-degree residual of (1 + y)^{-1} psi(e_u)
    let residual = |psi: &MatrixQ, u_idx: usize| -> Result<Scalar> {
        let v = Element::from_coords(psi.column(u_idx));
        let z = alg.mul(&w_inv, &v)?;
        Ok(z.coords[top_idx].clone())
    };

    for k in 1..d {
        let unknowns = comps.of_degree(k).to_vec();
        let equations = comps.of_degree(d - k).to_vec();
        let mut system = MatrixQ::zeros(equations.len(), unknowns.len());
        let mut rhs = Vec::with_capacity(equations.len());
        let stage_factor = Scalar::from_int((d - k) as i64);
        for (row, &u_idx) in equations.iter().enumerate() {
            for (col, &b_idx) in unknowns.iter().enumerate() {
                let prod = alg.mul(&alg.basis_element(b_idx), &alg.basis_element(u_idx))?;
                system[(row, col)] = &stage_factor * &prod.coords[top_idx];
            }
            rhs.push(-residual(&psi, u_idx)?);
        }
        let sol = system.solve(&rhs).map_err(|_| {
            Error::contradiction(
                "graded transport",
                format!("stage-{k} system inconsistent on {}", alg.name()),
            )
        })?;
        let mut x_k = alg.zero_element();
        for (col, &b_idx) in unknowns.iter().enumerate() {
            x_k = x_k.add(&alg.basis_element(b_idx).scale(&sol.particular[col]));
        }
        let phi_k = phi_homogeneous(alg, comps, k, &x_k)?;
        psi = phi_k.matrix.mul(&psi)?;
        factors.push((k, x_k));

        // triangularity: residuals cleared so far stay cleared
        for cleared in 1..=k {
            for &u_idx in comps.of_degree(d - cleared) {
                if !residual(&psi, u_idx)?.is_zero() {
                    return Err(Error::contradiction(
                        "graded transport",
                        format!(
                            "stage {k} disturbed the residual of basis vector {} on {}",
                            u_idx + 1,
                            alg.name()
                        ),
                    ));
                }
            }
        }
    }

    // final verification: phi(Pi) = (1 + y)Pi via the independent subspace
    // comparison
    let image = apply_matrix_to_subspace(alg, &psi, &proj.kernel_subspace(alg))?;
    let target = multiply_subspace(alg, &y.clone().plus_one(), &proj.kernel_subspace(alg))?;
    if !image.equal(&target) {
        return Err(Error::contradiction(
            "graded transport",
            format!("phi(Pi) differs from (1+y)Pi for y = {:?}", y.coords),
        ));
    }
    automorphism_check(alg, &psi)?;
    filtration_check(alg, &psi)?;
    Ok(GradedAutomorphism {
        matrix: psi,
        factors,
    })
}

pub fn apply_matrix_to_subspace(
    alg: &Algebra,
    m: &MatrixQ,
    sub: &Subspace,
) -> Result<Subspace> {
    let images: Vec<Vec<Scalar>> = sub
        .basis_vectors()
        .iter()
        .map(|v| m.mul_vec(v))
        .collect::<Result<_>>()?;
    Subspace::from_vectors(alg.dim(), &images)
}

/// Outcome of a transport certification run.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyPReport {
    pub algebra: String,
    pub graded: bool,
    pub samples: u64,
    pub seed: u64,
    pub certified: u64,
    pub undecided: u64,
}

/// Samples hyperplanes complementary to the annihilator and certifies for
/// each one an automorphism carrying the canonical kernel onto it.  On a
/// graded algebra every failure is a hard contradiction; on ungraded input
/// unresolved samples are reported as undecided.
pub fn property_p_certify(alg: &Algebra, samples: u64, seed: u64) -> Result<PropertyPReport> {
    let proj = Projection::canonical(alg)?;
    let comps = alg.graded_components().ok();
    let mut certified = 0;
    let mut undecided = 0;
    for i in 0..samples {
        let mut rng = sample::rng(seed, i);
        let coeffs = sample::graph_coeffs(proj.n(), &mut rng);
        let target = hyperplane_from_graph_coeffs(alg, &proj, &coeffs)?;
        match &comps {
            Some(comps) => {
                let x = find_x(alg, &proj, &target)?;
                let y = x_to_y(alg, &proj, &x)?;
                let phi = graded_transport(alg, comps, &proj, &y)?;
                let image =
                    apply_matrix_to_subspace(alg, &phi.matrix, &proj.kernel_subspace(alg))?;
                if !subspace_equal(&image.basis_matrix(), &target.basis_matrix())? {
                    return Err(Error::contradiction(
                        "transport certification",
                        format!(
                            "sample {i} on {}: phi(Pi) misses the target {:?}",
                            alg.name(),
                            coeffs
                        ),
                    ));
                }
                certified += 1;
            }
            None => match ungraded_transport_search(alg, &proj, &target)? {
                Some(_) => certified += 1,
                None => undecided += 1,
            },
        }
    }
    Ok(PropertyPReport {
        algebra: alg.name().to_string(),
        graded: comps.is_some(),
        samples,
        seed,
        certified,
        undecided,
    })
}

/// Bounded search for an automorphism with `φ(Π) = Π̃` on ungraded input:
/// Newton-style rounds over derivations mapping `m` into `m²` (those
/// exponentiate to unipotent automorphisms over the rationals).  Returns
/// `None` when the search gives up; nothing is proved in that case.
pub fn ungraded_transport_search(
    alg: &Algebra,
    proj: &Projection,
    target: &Subspace,
) -> Result<Option<MatrixQ>> {
    let n = proj.n();
    if n == 0 {
        return Ok(Some(MatrixQ::identity(alg.dim())));
    }
    let der2 = nilpotent_derivation_basis(alg);
    if der2.is_empty() {
        return Ok(None);
    }
    let target_coeffs = graph_coeffs_of_hyperplane(alg, proj, target)?;
    let kernel = proj.kernel_subspace(alg);
    let mut phi = MatrixQ::identity(alg.dim());
    let max_rounds = 2 * alg.nil_index()? + 4;
    for _ in 0..max_rounds {
        let image = apply_matrix_to_subspace(alg, &phi, &kernel)?;
        let Ok(cur) = graph_coeffs_of_hyperplane(alg, proj, &image) else {
            return Ok(None); // image left the complementary locus
        };
        if cur == target_coeffs {
            if !image.equal(target) {
                return Err(Error::contradiction(
                    "ungraded transport",
                    "graph coordinates agree but subspaces differ",
                ));
            }
            automorphism_check(alg, &phi)?;
            return Ok(Some(phi));
        }
        // first-order correction: for the plane basis b_i = k_i + t_i e,
        // perturbing by D changes t_i by lambda(D b_i) - t(kappa_i)
        let mut system = MatrixQ::zeros(n, der2.len());
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            let b = proj.kernel_basis()[i].add(&proj.e().scale(&cur[i]));
            for (col, d) in der2.iter().enumerate() {
                let db = Element::from_coords(d.mul_vec(&b.coords)?);
                let adapted = proj.adapted_coords(&db)?;
                let mut delta = adapted[n].clone();
                for j in 0..n {
                    delta = &delta - &(&cur[j] * &adapted[j]);
                }
                system[(i, col)] = delta;
            }
            rhs.push(&target_coeffs[i] - &cur[i]);
        }
        let Ok(sol) = system.solve(&rhs) else {
            return Ok(None);
        };
        let mut d = MatrixQ::zeros(alg.dim(), alg.dim());
        for (col, basis_d) in der2.iter().enumerate() {
            if !sol.particular[col].is_zero() {
                d = d.add(&basis_d.scale(&sol.particular[col]))?;
            }
        }
        if d.is_zero() {
            return Ok(None); // no first-order progress possible
        }
        phi = d.exp_nilpotent()?.mul(&phi)?;
    }
    Ok(None)
}

/// Derivations with image inside `m²`; these are nilpotent as matrices.
fn nilpotent_derivation_basis(alg: &Algebra) -> Vec<MatrixQ> {
    let (der, _) = alg.derivation_algebra();
    if der.is_empty() {
        return der;
    }
    let powers = alg.ideal_powers().expect("nilpotent");
    let m2_rows = if powers.len() > 1 {
        powers[1].basis_vectors()
    } else {
        Vec::new()
    };
    // functionals vanishing on m^2
    let functionals = if m2_rows.is_empty() {
        MatrixQ::identity(alg.dim()).row_vecs()
    } else {
        MatrixQ::from_rows(m2_rows).expect("rectangular").kernel_basis()
    };
    // rows: f(D(e_i)) = 0 for every functional f and basis index i
    let mut rows = Vec::new();
    for f in &functionals {
        for i in 0..alg.dim() {
            let row: Vec<Scalar> = der
                .iter()
                .map(|d| {
                    d.column(i)
                        .iter()
                        .zip(f)
                        .map(|(a, b)| a * b)
                        .sum::<Scalar>()
                })
                .collect();
            rows.push(row);
        }
    }
    let combos = MatrixQ::from_rows(rows).expect("rectangular").kernel_basis();
    combos
        .into_iter()
        .map(|c| {
            let mut acc = MatrixQ::zeros(alg.dim(), alg.dim());
            for (m, coeff) in der.iter().zip(&c) {
                if !coeff.is_zero() {
                    acc = acc.add(&m.scale(coeff)).expect("same shape");
                }
            }
            acc
        })
        .filter(|m| !m.is_zero())
        .collect()
}

/// Result of an affine-symmetry construction: a certified map, or undecided
/// when the ungraded search gives up.
#[derive(Clone, Debug)]
pub enum SymmetryOutcome {
    Certified(AffineMap),
    Undecided,
}

impl SymmetryOutcome {
    pub fn certified(self) -> Result<AffineMap> {
        match self {
            SymmetryOutcome::Certified(map) => Ok(map),
            SymmetryOutcome::Undecided => Err(Error::Malformed(
                "transport search was undecided; no certificate produced".into(),
            )),
        }
    }
}

/// Linear transporter for the point `p`: an automorphism `L` with
/// `L(K) = (1 + exp(2p) − 1)^{-1} K`.
fn surface_transporter(
    alg: &Algebra,
    proj: &Projection,
    p: &Element,
) -> Result<Option<MatrixQ>> {
    let value = surface_value(alg, proj, p)?;
    if !value.is_zero() {
        return Err(Error::NotOnHypersurface(value.to_string()));
    }
    // z = 2u + u^2 for u = exp(p) - 1, i.e. z = exp(2p) - 1, a kernel member
    let z = exp_m(alg, &p.scale(&Scalar::from_int(2)))?.minus_one();
    if !proj.lambda_of(&z).is_zero() {
        return Err(Error::contradiction(
            "surface transporter",
            "exp(2p) - 1 escapes the kernel for a surface point",
        ));
    }
    let inv = binomial_power(alg, &z.clone().plus_one(), &Scalar::from_int(-1))?;
    let target = multiply_subspace(alg, &inv, &proj.kernel_subspace(alg))?;
    let transporter = match alg.graded_components() {
        Ok(comps) => {
            let y = x_to_y(alg, proj, &z)?;
            Some(graded_transport(alg, &comps, proj, &y)?.matrix)
        }
        Err(_) => ungraded_transport_search(alg, proj, &target)?,
    };
    let Some(l) = transporter else {
        return Ok(None);
    };
    let image = apply_matrix_to_subspace(alg, &l, &proj.kernel_subspace(alg))?;
    if !image.equal(&target) {
        return Err(Error::contradiction(
            "surface transporter",
            format!("L(K) misses the target hyperplane for p = {:?}", p.coords),
        ));
    }
    Ok(Some(l))
}

/// Exact certification of an affine self-map of the hypersurface: the
/// linear part must be an algebra automorphism, and the graph-membership
/// identity must vanish for the map and for its inverse.
pub fn verify_surface_symmetry(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    map: &AffineMap,
) -> Result<()> {
    automorphism_check(alg, &map.linear)?;
    let forward = image_membership_poly(alg, proj, graph, map)?;
    let backward = image_membership_poly(alg, proj, graph, &map.inverse()?)?;
    if !forward.is_zero() || !backward.is_zero() {
        return Err(Error::contradiction(
            "surface symmetry",
            format!("graph preservation residuals {forward} ; {backward}"),
        ));
    }
    Ok(())
}

/// Affine self-map of the hypersurface moving the origin to `p`, built as
/// `v ↦ L(v) + p` from a certified transporter and verified exactly.
pub fn affine_symmetry_to(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    p: &Element,
) -> Result<SymmetryOutcome> {
    let Some(l) = surface_transporter(alg, proj, p)? else {
        return Ok(SymmetryOutcome::Undecided);
    };
    let map = AffineMap::new(l, p.clone())?;
    verify_surface_symmetry(alg, proj, graph, &map)?;
    Ok(SymmetryOutcome::Certified(map))
}

/// Affine self-map carrying `p` to `q`, as the composition of two
/// origin-based symmetries; re-verified after composing.
pub fn affine_symmetry_between(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    p: &Element,
    q: &Element,
) -> Result<SymmetryOutcome> {
    let fp = match affine_symmetry_to(alg, proj, graph, p)? {
        SymmetryOutcome::Certified(f) => f,
        SymmetryOutcome::Undecided => return Ok(SymmetryOutcome::Undecided),
    };
    let fq = match affine_symmetry_to(alg, proj, graph, q)? {
        SymmetryOutcome::Certified(f) => f,
        SymmetryOutcome::Undecided => return Ok(SymmetryOutcome::Undecided),
    };
    let map = fq.compose(&fp.inverse()?)?;
    verify_surface_symmetry(alg, proj, graph, &map)?;
    if map.apply(p)? != *q {
        return Err(Error::contradiction(
            "surface symmetry",
            "composed map misses the requested endpoint",
        ));
    }
    Ok(SymmetryOutcome::Certified(map))
}

/// Affine self-map carrying `p` to `q` for an arbitrary admissible
/// projection.  Non-canonical projections reduce to the canonical one
/// through the translation relating the two hypersurfaces; the result is
/// re-verified against the original projection.
pub fn affine_symmetry(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    p: &Element,
    q: &Element,
) -> Result<SymmetryOutcome> {
    let canonical = Projection::canonical(alg)?;
    if *proj == canonical {
        return affine_symmetry_between(alg, proj, graph, p, q);
    }
    let x = crate::hypersurface::translate_projection(alg, &canonical, proj)?;
    let canonical_graph = crate::hypersurface::compute_graph(alg, &canonical)?;
    let f0 = match affine_symmetry_between(
        alg,
        &canonical,
        &canonical_graph,
        &p.sub(&x),
        &q.sub(&x),
    )? {
        SymmetryOutcome::Certified(f) => f,
        SymmetryOutcome::Undecided => return Ok(SymmetryOutcome::Undecided),
    };
    let shift = AffineMap::translation_by(x.clone());
    let map = shift.compose(&f0)?.compose(&shift.inverse()?)?;
    verify_surface_symmetry(alg, proj, graph, &map)?;
    if map.apply(p)? != *q {
        return Err(Error::contradiction(
            "surface symmetry",
            "conjugated map misses the requested endpoint",
        ));
    }
    Ok(SymmetryOutcome::Certified(map))
}

/// Polynomial self-map of the hypersurface induced by a quadric translation
/// through the exp/log conjugation, with its componentwise degrees.
#[derive(Clone, Debug, Serialize)]
pub struct QuadricInducedMap {
    pub components: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    pub affine: bool,
}

impl QuadricInducedMap {
    pub fn apply(&self, point: &Element) -> Result<Element> {
        Ok(Element::from_coords(
            self.components
                .iter()
                .map(|c| c.eval(&point.coords))
                .collect::<Result<_>>()?,
        ))
    }
}

/// Conjugates an affine self-map of the quadric into a polynomial self-map
/// of the hypersurface, `f = log ∘ g ∘ exp`, and reports whether it is
/// affine.  The input must carry the quadric into itself: its membership
/// polynomial has to pull back to a nonzero constant multiple of itself,
/// checked exactly.
pub fn quadric_induced_map(
    alg: &Algebra,
    proj: &Projection,
    g: &AffineMap,
) -> Result<QuadricInducedMap> {
    let mu = crate::hypersurface::quadric_poly(alg, proj)?;
    let image = g.apply_poly(&PolyElement::symbolic(alg.dim()))?;
    let pulled = mu.compose(&image.coords)?;
    let scaled_back = preserves_up_to_scale(&pulled, &mu);
    if !scaled_back {
        return Err(Error::Malformed(
            "map does not preserve the affine quadric".into(),
        ));
    }
    let sym = PolyElement::symbolic(alg.dim());
    let u = exp_m(alg, &sym)?.minus_one();
    let moved = g.apply_poly(&u)?;
    let f = log_m(alg, &moved.plus_one())?;
    let degrees: Vec<u32> = f.coords.iter().map(MultiPoly::total_degree).collect();
    let affine = degrees.iter().all(|&d| d <= 1);
    Ok(QuadricInducedMap {
        components: f.coords,
        degrees,
        affine,
    })
}

/// `pulled = c · mu` for some nonzero constant `c`.
fn preserves_up_to_scale(pulled: &MultiPoly, mu: &MultiPoly) -> bool {
    let Some((m0, c0)) = mu.terms().next() else {
        return pulled.is_zero();
    };
    let ratio = &pulled.coeff(&m0.0) / c0;
    !ratio.is_zero() && pulled == &mu.scale(&ratio)
}

/// Conjugates the quadric translation by `β ∈ K` with exp/log into a
/// polynomial self-map of the hypersurface and reports whether it is affine.
pub fn nonaffine_quadric_symmetry(
    alg: &Algebra,
    proj: &Projection,
    beta: &Element,
) -> Result<QuadricInducedMap> {
    let translation = quadric_translation(alg, proj, beta)?;
    quadric_induced_map(alg, proj, &translation)
}

/// Whether translation by `y` preserves the hypersurface, decided by the
/// exact graph-membership identity.  For nonzero surface points this is
/// always false: a pure translation never preserves the surface.
pub fn translation_preserves_surface(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    y: &Element,
) -> Result<bool> {
    let value = surface_value(alg, proj, y)?;
    if !value.is_zero() {
        return Err(Error::NotOnHypersurface(value.to_string()));
    }
    let map = AffineMap::translation_by(y.clone());
    Ok(image_membership_poly(alg, proj, graph, &map)?.is_zero())
}
