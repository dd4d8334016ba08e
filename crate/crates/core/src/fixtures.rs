//! Catalog of small monomial quotient algebras.
//!
//! These tables back the test suite, the benchmarks and the bundled `data/`
//! files.  Every algebra here is a graded Gorenstein monomial complete
//! intersection `F[x_1, …, x_k] / (x_1^{c_1}, …, x_k^{c_k})`, presented by
//! its structure constants over the monomial basis sorted by total degree.

use crate::algebra::Algebra;
use crate::scalar::Scalar;

fn label(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                (*v).to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// `F[x_1, …, x_k] / (x_1^{caps_1}, …, x_k^{caps_k})`, with the maximal
/// ideal spanned by the nonconstant monomials below the caps.
pub fn monomial_quotient(name: &str, vars: &[&str], caps: &[u32]) -> Algebra {
    assert_eq!(vars.len(), caps.len());
    assert!(caps.iter().all(|&c| c >= 2));
    // enumerate exponent vectors 0 <= a_i <= caps_i - 1, excluding zero
    let mut monomials: Vec<Vec<u32>> = vec![vec![]];
    for &c in caps {
        monomials = monomials
            .into_iter()
            .flat_map(|m| {
                (0..c).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
    }
    monomials.retain(|m| m.iter().any(|&e| e > 0));
    // ascending total degree; within a degree, earlier variables first
    monomials.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| b.cmp(a))
    });

    let index_of = |m: &[u32]| monomials.iter().position(|x| x == m);
    let dim = monomials.len();
    let labels = monomials.iter().map(|m| label(vars, m)).collect();
    let degrees = monomials
        .iter()
        .map(|m| m.iter().sum::<u32>() as usize)
        .collect();

    let mut products = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let sum: Vec<u32> = monomials[i]
                .iter()
                .zip(&monomials[j])
                .map(|(a, b)| a + b)
                .collect();
            let within = sum.iter().zip(caps).all(|(&s, &c)| s < c);
            if within {
                let k = index_of(&sum).expect("closed under admissible products");
                let mut coords = vec![Scalar::zero(); dim];
                coords[k] = Scalar::one();
                products.push((i, j, coords));
            }
        }
    }
    Algebra::new(name, labels, Some(degrees), products).expect("well-formed table")
}

/// `F[t]/(t^k)`: basis `t, t^2, …, t^{k−1}`.
pub fn truncated_polynomial(k: u32) -> Algebra {
    monomial_quotient(&format!("t{k}"), &["t"], &[k])
}

/// The six algebras exercised by default across the test suite.
pub fn suite() -> Vec<Algebra> {
    vec![
        truncated_polynomial(3),
        monomial_quotient("x2y2", &["x", "y"], &[2, 2]),
        truncated_polynomial(4),
        truncated_polynomial(5),
        monomial_quotient("x3y2", &["x", "y"], &[3, 2]),
        monomial_quotient("x2y2z2", &["x", "y", "z"], &[2, 2, 2]),
    ]
}

/// Larger graded algebras (dim m up to 8, top degree up to 6) used by the
/// transport stress tests.
pub fn extended_graded() -> Vec<Algebra> {
    vec![
        truncated_polynomial(7),
        monomial_quotient("x3y3", &["x", "y"], &[3, 3]),
    ]
}
