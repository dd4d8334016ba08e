//! Reconstruction of the algebra from the graph tensors, and verification
//! of equivalence certificates.
//!
//! The quadratic and cubic tensors of the graph polynomial determine the
//! multiplication completely: with `g(u,v) = −λ(uv)` and
//! `h(u,v,w) = −(2/3)λ(uvw)` on the kernel, the kernel component `w` of a
//! product `u∘v` is the unique solution of `g(w, k) = (3/2)·h(u, v, k)`, and
//! its annihilator component is `−g(u, v)`.  Deciding equivalence of
//! arbitrary form pairs is out of scope; only certificates are verified,
//! which is exact and total.

use serde::Serialize;

use crate::affine::AffineMap;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::hypersurface::{
    blaschke_check, compute_graph, graph_param, surface_poly_of, GraphPoly, Projection,
};
use crate::matrix::MatrixQ;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// Rebuilds the algebra on `K ⊕ F·e` from the quadratic and cubic tensors.
/// The output must pass validation; unrealizable tensors are rejected.
pub fn reconstruct_algebra(graph: &GraphPoly) -> Result<Algebra> {
    let n = graph.n();
    
    let g_inv = graph
        .g
        .inverse()
        .map_err(|_| Error::NotRealizable("quadratic tensor is singular".into()))?;
    let mut products = Vec::new();
    let three_halves = Scalar::ratio(3, 2);
    for i in 0..n {
        for j in i..n {
            // kernel component: g(w, k) = (3/2) h(i, j, k) for all k
            let rhs: Vec<Scalar> = (0..n)
                .map(|k| &three_halves * graph.h_at(i, j, k))
                .collect();
            let w = g_inv.mul_vec(&rhs)?;
            let mut coords = w;
            coords.push(-&graph.g[(i, j)]);
            products.push((i, j, coords));
        }
    }
    // products with e vanish: e spans the annihilator by construction
    let labels: Vec<String> = (1..=n)
        .map(|i| format!("k{i}"))
        .chain(std::iter::once("e".to_string()))
        .collect();
    let alg = Algebra::new("reconstructed", labels, None, products)?;
    let report = alg.validate();
    if !report.associative {
        return Err(Error::NotRealizable(format!(
            "input tensors not realizable: associativity fails at {:?}",
            report.associativity_witness
        )));
    }
    if !report.nilpotent {
        return Err(Error::NotRealizable(
            "input tensors not realizable: table is not nilpotent".into(),
        ));
    }
    if !alg.is_gorenstein() {
        return Err(Error::NotRealizable(
            "input tensors not realizable: annihilator is not one-dimensional".into(),
        ));
    }
    Ok(alg)
}

/// Compares the reconstructed table against the source algebra expressed in
/// the adapted basis `(k_1, …, k_n, e)`.
pub fn round_trip_matches(
    alg: &Algebra,
    proj: &Projection,
    graph: &GraphPoly,
    reconstructed: &Algebra,
) -> Result<bool> {
    let n = graph.n();
    let mut adapted: Vec<Element> = graph.kernel_basis.to_vec();
    adapted.push(proj.e().clone());
    let basis = MatrixQ::from_columns(adapted.iter().map(|e| e.coords.clone()).collect())?;
    let basis_inv = basis.inverse().map_err(|_| Error::DependentColumns)?;
    for i in 0..=n {
        for j in i..=n {
            let product = alg.mul(&adapted[i], &adapted[j])?;
            let expected = basis_inv.mul_vec(&product.coords)?;
            if reconstructed.product_coords(i, j) != expected.as_slice() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verdict of an affine-equivalence certificate check.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<MatrixQ>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<MultiPoly>,
}

impl EquivalenceVerdict {
    fn no(reason: impl Into<String>, residual: Option<MultiPoly>) -> Self {
        EquivalenceVerdict {
            equivalent: false,
            reason: reason.into(),
            isomorphism: None,
            residual,
        }
    }
}

/// Checks that the affine map carries one hypersurface onto the other, as
/// exact polynomial identities in both directions.  On success the linear
/// part is independently verified to be an algebra isomorphism; a divergence
/// between the two checks is a hard contradiction.
pub fn verify_affine_equivalence(
    alg: &Algebra,
    proj: &Projection,
    other: &Algebra,
    other_proj: &Projection,
    map: &AffineMap,
) -> Result<EquivalenceVerdict> {
    if alg.dim() != other.dim() {
        return Ok(EquivalenceVerdict::no(
            format!(
                "dimension mismatch: dim m = {} vs {}",
                alg.dim(),
                other.dim()
            ),
            None,
        ));
    }
    if map.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: map.dim(),
        });
    }
    if map.linear.det()?.is_zero() {
        return Err(Error::SingularLinearPart);
    }
    if alg.nil_index()? != other.nil_index()? {
        return Ok(EquivalenceVerdict::no(
            format!(
                "nil-index mismatch: {} vs {}",
                alg.nil_index()?,
                other.nil_index()?
            ),
            None,
        ));
    }
    if proj.n() == 0 {
        // both hypersurfaces are the single point 0
        let fixes_origin = map.apply(&alg.zero_element())?.is_zero();
        return Ok(if fixes_origin {
            EquivalenceVerdict {
                equivalent: true,
                reason: "both hypersurfaces are {0} and the map fixes 0".into(),
                isomorphism: Some(map.linear.clone()),
                residual: None,
            }
        } else {
            EquivalenceVerdict::no("map does not fix the origin", None)
        });
    }

    let graph = compute_graph(alg, proj)?;
    let image = map.apply_poly(&graph_param(alg, proj, &graph))?;
    let forward = surface_poly_of(other, other_proj, &image)?;
    if !forward.is_zero() {
        return Ok(EquivalenceVerdict::no(
            "image of the first hypersurface escapes the second",
            Some(forward),
        ));
    }
    let other_graph = compute_graph(other, other_proj)?;
    let back_image = map
        .inverse()?
        .apply_poly(&graph_param(other, other_proj, &other_graph))?;
    let backward = surface_poly_of(alg, proj, &back_image)?;
    if !backward.is_zero() {
        return Ok(EquivalenceVerdict::no(
            "preimage of the second hypersurface escapes the first",
            Some(backward),
        ));
    }

    // the linear part must now be multiplicative m -> m'; anything else
    // contradicts the reconstruction argument
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let prod = alg.mul(&alg.basis_element(i), &alg.basis_element(j))?;
            let lhs = map.linear.mul_vec(&prod.coords)?;
            let li = Element::from_coords(map.linear.mul_vec(&alg.basis_element(i).coords)?);
            let lj = Element::from_coords(map.linear.mul_vec(&alg.basis_element(j).coords)?);
            let rhs = other.mul(&li, &lj)?;
            if lhs != rhs.coords {
                return Err(Error::contradiction(
                    "affine equivalence",
                    format!(
                        "hypersurfaces match but the linear part is not multiplicative at ({}, {})",
                        i + 1,
                        j + 1
                    ),
                ));
            }
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: true,
        reason: "graph preservation verified in both directions".into(),
        isomorphism: Some(map.linear.clone()),
        residual: None,
    })
}

/// Verifies a scaled linear equivalence `s·P(α) = P'(Cα)` between graphs in
/// Blaschke normal form.  The normal-form precondition is checked first and
/// reported separately.
pub fn verify_scaled_linear_equivalence(
    graph: &GraphPoly,
    other: &GraphPoly,
    c: &MatrixQ,
    s: &Scalar,
) -> Result<EquivalenceVerdict> {
    if !blaschke_check(graph)?.pass || !blaschke_check(other)?.pass {
        return Err(Error::NotBlaschke);
    }
    if s.is_zero() {
        return Err(Error::Malformed("scale factor must be nonzero".into()));
    }
    let n = graph.n();
    if other.n() != n {
        return Ok(EquivalenceVerdict::no(
            format!("variable count mismatch: {} vs {}", n, other.n()),
            None,
        ));
    }
    if c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.rows().max(c.cols()),
        });
    }
    if c.det()?.is_zero() {
        return Err(Error::SingularLinearPart);
    }
    // substitutions alpha_i -> sum_j C_ij alpha_j
    let subs: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::zero(n);
            for j in 0..n {
                if !c[(i, j)].is_zero() {
                    acc = acc.add(&MultiPoly::var(n, j).scale(&c[(i, j)]));
                }
            }
            acc
        })
        .collect();
    let composed = other.poly.compose(&subs)?;
    let scaled = graph.poly.scale(s);
    if composed == scaled {
        Ok(EquivalenceVerdict {
            equivalent: true,
            reason: "scaled polynomial identity holds".into(),
            isomorphism: Some(c.clone()),
            residual: None,
        })
    } else {
        Ok(EquivalenceVerdict::no(
            "scaled polynomial identity fails",
            Some(composed.sub(&scaled)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homogeneity::{affine_symmetry_to, SymmetryOutcome};
    use crate::hypersurface::graph_point;
    use crate::sample;

    fn sc(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    #[test]
    fn reconstruct_x2y2_round_trip() {
        let alg = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let rebuilt = reconstruct_algebra(&graph).unwrap();
        assert!(round_trip_matches(&alg, &proj, &graph, &rebuilt).unwrap());
        // x∘y = e, x∘x = 0 in the rebuilt table
        let e01 = rebuilt.product_coords(0, 1);
        assert_eq!(e01, &[sc(0, 1), sc(0, 1), sc(1, 1)]);
        assert!(rebuilt.product_coords(0, 0).iter().all(Scalar::is_zero));
    }

    #[test]
    fn reconstruct_t4_round_trip() {
        let alg = fixtures::truncated_polynomial(4);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let rebuilt = reconstruct_algebra(&graph).unwrap();
        assert!(round_trip_matches(&alg, &proj, &graph, &rebuilt).unwrap());
        // t∘t = t^2 and t∘t^2 = e
        assert_eq!(
            rebuilt.product_coords(0, 0),
            &[sc(0, 1), sc(1, 1), sc(0, 1)]
        );
        assert_eq!(
            rebuilt.product_coords(0, 1),
            &[sc(0, 1), sc(0, 1), sc(1, 1)]
        );
    }

    #[test]
    fn reconstruct_from_unit_quadric() {
        // g = [1], h = 0: k∘k = -e, the t^3 table up to rescaling e
        let graph = GraphPoly {
            kernel_basis: vec![Element::from_ints(&[1, 0])],
            poly: MultiPoly::monomial(1, vec![2], Scalar::one()),
            g: MatrixQ::identity(1),
            h: vec![Scalar::zero()],
        };
        let rebuilt = reconstruct_algebra(&graph).unwrap();
        assert!(rebuilt.validate().ok);
        assert!(rebuilt.is_gorenstein());
        assert_eq!(rebuilt.product_coords(0, 0), &[sc(0, 1), sc(-1, 1)]);
        assert!(rebuilt.product_coords(0, 1).iter().all(Scalar::is_zero));
    }

    #[test]
    fn reconstruct_rejects_tampered_tensors() {
        // a lopsided cubic edit encodes contradictory triple products, so
        // the rebuilt table cannot be associative (symmetric edits can land
        // on a different realizable algebra instead)
        let alg = fixtures::truncated_polynomial(5);
        let proj = Projection::canonical(&alg).unwrap();
        let mut graph = compute_graph(&alg, &proj).unwrap();
        // entry (0, 0, 1) only, leaving (0, 1, 0) and (1, 0, 0) untouched
        graph.h[1] = &graph.h[1] + &Scalar::one();
        assert!(matches!(
            reconstruct_algebra(&graph),
            Err(Error::NotRealizable(_))
        ));
    }

    #[test]
    fn round_trip_on_whole_suite() {
        for alg in fixtures::suite() {
            let proj = Projection::canonical(&alg).unwrap();
            let graph = compute_graph(&alg, &proj).unwrap();
            let rebuilt = reconstruct_algebra(&graph).unwrap();
            assert!(
                round_trip_matches(&alg, &proj, &graph, &rebuilt).unwrap(),
                "round trip failed on {}",
                alg.name()
            );
        }
    }

    #[test]
    fn identity_certificate_verifies() {
        let alg = fixtures::truncated_polynomial(4);
        let proj = Projection::canonical(&alg).unwrap();
        let verdict = verify_affine_equivalence(
            &alg,
            &proj,
            &alg,
            &proj,
            &AffineMap::identity(alg.dim()),
        )
        .unwrap();
        assert!(verdict.equivalent);
        assert_eq!(verdict.isomorphism.unwrap(), MatrixQ::identity(3));
    }

    #[test]
    fn certified_symmetry_verifies_as_self_equivalence() {
        let alg = fixtures::truncated_polynomial(4);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let mut rng = sample::rng(51, 0);
        let p = graph_point(
            &alg,
            &proj,
            &graph,
            &sample::kernel_coords(graph.n(), &mut rng),
        )
        .unwrap();
        let SymmetryOutcome::Certified(f) = affine_symmetry_to(&alg, &proj, &graph, &p).unwrap()
        else {
            panic!("graded algebra must certify");
        };
        let verdict = verify_affine_equivalence(&alg, &proj, &alg, &proj, &f).unwrap();
        assert!(verdict.equivalent);
    }

    #[test]
    fn zero_dimensional_kernels_compare_through_the_origin() {
        // both hypersurfaces are {0}; any origin-fixing bijection works
        let t2 = fixtures::truncated_polynomial(2);
        let proj = Projection::canonical(&t2).unwrap();
        let double = AffineMap::new(
            MatrixQ::from_rows(vec![vec![sc(2, 1)]]).unwrap(),
            Element::zero(1),
        )
        .unwrap();
        let verdict = verify_affine_equivalence(&t2, &proj, &t2, &proj, &double).unwrap();
        assert!(verdict.equivalent);
        let shifted = AffineMap::new(MatrixQ::identity(1), Element::from_ints(&[1])).unwrap();
        let verdict = verify_affine_equivalence(&t2, &proj, &t2, &proj, &shifted).unwrap();
        assert!(!verdict.equivalent);
    }

    #[test]
    fn different_algebras_fail_verification() {
        let a = fixtures::truncated_polynomial(4);
        let b = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let pa = Projection::canonical(&a).unwrap();
        let pb = Projection::canonical(&b).unwrap();
        let verdict =
            verify_affine_equivalence(&a, &pa, &b, &pb, &AffineMap::identity(3)).unwrap();
        assert!(!verdict.equivalent);
    }

    #[test]
    fn scaled_identity_certificate() {
        let alg = fixtures::truncated_polynomial(4);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let verdict = verify_scaled_linear_equivalence(
            &graph,
            &graph,
            &MatrixQ::identity(2),
            &Scalar::one(),
        )
        .unwrap();
        assert!(verdict.equivalent);
    }

    #[test]
    fn swap_symmetry_of_x2y2() {
        // P = -2ab is symmetric under swapping the variables
        let alg = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let swap = MatrixQ::int_rows(&[&[0, 1], &[1, 0]]);
        let verdict =
            verify_scaled_linear_equivalence(&graph, &graph, &swap, &Scalar::one()).unwrap();
        assert!(verdict.equivalent);
    }

    #[test]
    fn cubic_term_blocks_pure_scaling() {
        // s = 2 with C = identity fails on t4 because of the cubic term
        let alg = fixtures::truncated_polynomial(4);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        let verdict = verify_scaled_linear_equivalence(
            &graph,
            &graph,
            &MatrixQ::identity(2),
            &Scalar::from_int(2),
        )
        .unwrap();
        assert!(!verdict.equivalent);
        assert!(verdict.residual.is_some());
    }

    #[test]
    fn blaschke_precondition_reported_separately() {
        // g = [1] with h = [1] violates the normal form
        let crooked = GraphPoly {
            kernel_basis: vec![Element::from_ints(&[1, 0])],
            poly: MultiPoly::monomial(1, vec![2], Scalar::one())
                .add(&MultiPoly::monomial(1, vec![3], Scalar::one())),
            g: MatrixQ::identity(1),
            h: vec![Scalar::one()],
        };
        assert!(matches!(
            verify_scaled_linear_equivalence(
                &crooked,
                &crooked,
                &MatrixQ::identity(1),
                &Scalar::one()
            ),
            Err(Error::NotBlaschke)
        ));
    }

    #[test]
    fn scaled_certificates_compose() {
        let alg = fixtures::monomial_quotient("x2y2", &["x", "y"], &[2, 2]);
        let proj = Projection::canonical(&alg).unwrap();
        let graph = compute_graph(&alg, &proj).unwrap();
        // C1: swap with scale 1; C2: diagonal (2, 1/2) with scale 1
        let c1 = MatrixQ::int_rows(&[&[0, 1], &[1, 0]]);
        let c2 = MatrixQ::from_rows(vec![
            vec![sc(2, 1), sc(0, 1)],
            vec![sc(0, 1), sc(1, 2)],
        ])
        .unwrap();
        let one = Scalar::one();
        assert!(
            verify_scaled_linear_equivalence(&graph, &graph, &c1, &one)
                .unwrap()
                .equivalent
        );
        assert!(
            verify_scaled_linear_equivalence(&graph, &graph, &c2, &one)
                .unwrap()
                .equivalent
        );
        let composed = c2.mul(&c1).unwrap();
        assert!(
            verify_scaled_linear_equivalence(&graph, &graph, &composed, &one)
                .unwrap()
                .equivalent
        );
    }
}
