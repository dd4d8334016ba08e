//! Shared oracles for the integration suites.
//!
//! The graph-polynomial oracle here is deliberately independent of the
//! closed form used by the library: it solves the defining equation of the
//! quadric symbolically, with the value coordinate carried as an extra
//! polynomial variable, and isolates that variable from the affine-linear
//! membership constraint.

use socle_core::algebra::{Algebra, PolyElement};
use socle_core::hypersurface::Projection;
use socle_core::poly::MultiPoly;
use socle_core::scalar::Scalar;
use socle_core::series::exp_m;

/// Graph polynomial computed straight from the definition: substitute
/// `v = Σ a_i k_i + b·e` into the quadric membership of `exp(v) − 1` and
/// solve the resulting constraint, which must be affine-linear in `b` with
/// a constant nonzero coefficient.
pub fn definitional_graph_poly(alg: &Algebra, proj: &Projection) -> MultiPoly {
    let n = proj.n();
    assert!(n >= 1, "oracle needs a nonzero kernel");
    let nvars = n + 1; // a_1, …, a_n, b
    // v = sum a_i k_i + b e over the m-basis
    let coords: Vec<MultiPoly> = (0..alg.dim())
        .map(|c| {
            let mut acc = MultiPoly::zero(nvars);
            for (i, k) in proj.kernel_basis().iter().enumerate() {
                if !k.coords[c].is_zero() {
                    acc = acc.add(&MultiPoly::var(nvars, i).scale(&k.coords[c]));
                }
            }
            if !proj.e().coords[c].is_zero() {
                acc = acc.add(&MultiPoly::var(nvars, n).scale(&proj.e().coords[c]));
            }
            acc
        })
        .collect();
    let v = PolyElement {
        unit: MultiPoly::zero(nvars),
        coords,
    };

    // u = exp(v) - 1; membership value lambda(2u + u^2)
    let u = exp_m(alg, &v).expect("v is in m").minus_one();
    let two_u = u.scale(&Scalar::from_int(2));
    let square = alg.mul(&u, &u).expect("dimensions agree");
    let membership = proj.lambda_of_poly(&two_u.add(&square));

    // split by the power of b: the constraint must be affine-linear in b
    // with constant leading coefficient
    assert_eq!(membership.degree_in(n), 1, "constraint not linear in b");
    let mut constant_part = MultiPoly::zero(n);
    let mut linear_coeff = MultiPoly::zero(n);
    for (mono, coeff) in membership.terms() {
        let b_power = mono.0[n];
        let reduced = MultiPoly::monomial(n, mono.0[..n].to_vec(), coeff.clone());
        match b_power {
            0 => constant_part = constant_part.add(&reduced),
            1 => linear_coeff = linear_coeff.add(&reduced),
            _ => panic!("constraint has degree {b_power} in b"),
        }
    }
    assert_eq!(
        linear_coeff.total_degree(),
        0,
        "leading coefficient is not constant"
    );
    let lead = linear_coeff.coeff(&vec![0; n]);
    assert!(!lead.is_zero(), "leading coefficient vanishes");
    constant_part.scale(&(-Scalar::one() / lead))
}
