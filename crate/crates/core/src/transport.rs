//! Transport between the two presentations of a complementary hyperplane.
//!
//! Any hyperplane `Π̃` complementary to the annihilator can be written both
//! as `(1 + x)^{-1}Π` and as `(1 + y)Π` with `x, y` in the canonical kernel
//! `Π`.  The element `x` solves the exact linear system `λ(x·u) = −λ(u)`
//! over a basis of `Π̃` (the pairing is an isomorphism for Gorenstein
//! algebras), and `y` is the `Π`-component of `(1 + x)^{-1} − 1`.  Both
//! outputs are accepted only after an exact subspace-equality check.

use crate::algebra::{Algebra, Element, Subspace};
use crate::error::{Error, Result};
use crate::hypersurface::{ensure_complementary, Projection};
use crate::matrix::{subspace_equal, MatrixQ};
use crate::scalar::Scalar;
use crate::series::binomial_power;

/// `(1 + w)^{±1}·V` for a unital multiplier, as a subspace of `m`.
pub fn multiply_subspace(alg: &Algebra, unital: &Element, sub: &Subspace) -> Result<Subspace> {
    let images: Vec<Element> = sub
        .basis_elements()
        .iter()
        .map(|b| alg.mul(unital, b).map(|p| p.m_part()))
        .collect::<Result<_>>()?;
    Subspace::from_elements(alg.dim(), &images)
}

/// Finds `x ∈ Π` with `(1 + x)^{-1}Π = Π̃`, verified exactly.
pub fn find_x(alg: &Algebra, proj: &Projection, target: &Subspace) -> Result<Element> {
    ensure_complementary(alg, proj, target)?;
    let n = proj.n();
    if n == 0 {
        return Ok(alg.zero_element());
    }
    let basis = target.basis_elements();
    // system: sum_j xi_j lambda(k_j b_i) = -lambda(b_i)
    let mut system = MatrixQ::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    for (i, b) in basis.iter().enumerate() {
        for (j, k) in proj.kernel_basis().iter().enumerate() {
            system[(i, j)] = proj.lambda_of(&alg.mul(k, b)?);
        }
        rhs.push(-proj.lambda_of(b));
    }
    let sol = system.solve(&rhs).map_err(|_| {
        Error::contradiction(
            "hyperplane transport",
            "pairing system inconsistent on a Gorenstein algebra",
        )
    })?;
    if !sol.kernel.is_empty() {
        return Err(Error::contradiction(
            "hyperplane transport",
            "pairing with the kernel basis is not injective",
        ));
    }
    let x = proj.element_from_kernel_coords(alg, &sol.particular);

    let inv = binomial_power(alg, &x.plus_one(), &Scalar::from_int(-1))?;
    let image = multiply_subspace(alg, &inv, &proj.kernel_subspace(alg))?;
    if !subspace_equal(&image.basis_matrix(), &target.basis_matrix())? {
        return Err(Error::contradiction(
            "hyperplane transport",
            format!("(1+x)^-1 K differs from the target for x = {:?}", x.coords),
        ));
    }
    Ok(x)
}

/// Converts the `(1 + x)^{-1}Π` presentation into `(1 + y)Π`: `y` is the
/// `Π`-component of `(1 + x)^{-1} − 1`, verified exactly.
pub fn x_to_y(alg: &Algebra, proj: &Projection, x: &Element) -> Result<Element> {
    if !x.in_m() || !proj.lambda_of(x).is_zero() {
        return Err(Error::Malformed(
            "transport input must lie in the kernel of the projection".into(),
        ));
    }
    let x_prime = binomial_power(alg, &x.plus_one(), &Scalar::from_int(-1))?.minus_one();
    let y = proj.k_component(&x_prime);

    let kernel = proj.kernel_subspace(alg);
    let lhs = multiply_subspace(alg, &y.plus_one(), &kernel)?;
    let inv = binomial_power(alg, &x.plus_one(), &Scalar::from_int(-1))?;
    let rhs = multiply_subspace(alg, &inv, &kernel)?;
    if !lhs.equal(&rhs) {
        return Err(Error::contradiction(
            "hyperplane transport",
            format!("(1+y)K differs from (1+x)^-1 K for x = {:?}", x.coords),
        ));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hypersurface::hyperplane_from_graph_coeffs;
    use crate::sample;

    fn sc(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    #[test]
    fn identity_hyperplane_gives_zero() {
        let alg = fixtures::truncated_polynomial(4);
        let p = Projection::canonical(&alg).unwrap();
        let x = find_x(&alg, &p, &p.kernel_subspace(&alg)).unwrap();
        assert!(x.is_zero());
        assert!(x_to_y(&alg, &p, &x).unwrap().is_zero());
    }

    #[test]
    fn t3_one_dimensional_system() {
        // target spanned by t + c t^2: x = -c t
        let alg = fixtures::truncated_polynomial(3);
        let p = Projection::canonical(&alg).unwrap();
        let c = sc(5, 1);
        let target = hyperplane_from_graph_coeffs(&alg, &p, std::slice::from_ref(&c)).unwrap();
        let x = find_x(&alg, &p, &target).unwrap();
        assert_eq!(x.coords, vec![-&c, Scalar::zero()]);
    }

    #[test]
    fn t3_x_to_y_hand_value() {
        // x = t: (1+t)^{-1} = 1 - t + t^2, so y = -t
        let alg = fixtures::truncated_polynomial(3);
        let p = Projection::canonical(&alg).unwrap();
        let y = x_to_y(&alg, &p, &alg.basis_element(0)).unwrap();
        assert_eq!(y.coords, vec![sc(-1, 1), sc(0, 1)]);
    }

    #[test]
    fn transport_round_trips_on_sampled_hyperplanes() {
        for alg in fixtures::suite() {
            let p = Projection::canonical(&alg).unwrap();
            let kernel = p.kernel_subspace(&alg);
            let mut rng = sample::rng(31, 0);
            for _ in 0..25 {
                let coeffs = sample::graph_coeffs(p.n(), &mut rng);
                let target = hyperplane_from_graph_coeffs(&alg, &p, &coeffs).unwrap();
                // the subspace-equality verification happens inside both ops
                let x = find_x(&alg, &p, &target).unwrap();
                let y = x_to_y(&alg, &p, &x).unwrap();
                let image = multiply_subspace(&alg, &y.plus_one(), &kernel).unwrap();
                assert!(image.equal(&target), "(1+y)K != target on {}", alg.name());
            }
        }
    }

    #[test]
    fn non_complementary_target_rejected() {
        let alg = fixtures::truncated_polynomial(4);
        let p = Projection::canonical(&alg).unwrap();
        // the annihilator direction is inside this plane, so it is not in T
        let bad = Subspace::from_elements(
            alg.dim(),
            &[alg.basis_element(0), alg.basis_element(2)],
        )
        .unwrap();
        assert!(matches!(
            find_x(&alg, &p, &bad),
            Err(Error::NotComplementary)
        ));
    }
}
