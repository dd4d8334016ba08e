//! Polynomial exp/log/binomial-power maps on a nilpotent algebra.
//!
//! Nilpotency makes every series here a finite sum: terms beyond the
//! nil-index vanish identically, so truncation is exact rather than
//! approximate.  The maps are generic over the coefficient ring, so the same
//! code drives concrete elements and symbolic polynomial-valued ones.

use crate::algebra::{Algebra, Coeff, Element, GenElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn require_in_m<C: Coeff>(u: &GenElement<C>) -> Result<()> {
    if u.unit.is_zero() {
        Ok(())
    } else {
        Err(Error::NotInMaximalIdeal(format!("{:?}", u.unit)))
    }
}

fn require_unital<C: Coeff>(w: &GenElement<C>) -> Result<()> {
    if w.unit == w.unit.one_like() {
        Ok(())
    } else {
        Err(Error::NotUnital(format!("{:?}", w.unit)))
    }
}

/// `exp(u) = 1 + Σ_{m≥1} u^m / m!` for `u ∈ m`, truncated exactly at the
/// nil-index.
pub fn exp_m<C: Coeff>(alg: &Algebra, u: &GenElement<C>) -> Result<GenElement<C>> {
    require_in_m(u)?;
    let nu = alg.nil_index()?;
    let mut acc = u.clone().plus_one();
    let mut term = u.clone(); // u^m / m! after step m
    for m in 2..=nu as u32 {
        term = alg.mul(&term, u)?.scale(&Scalar::from_int(m as i64).recip()?);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `log(1 + u) = Σ_{m≥1} (−1)^{m+1} u^m / m` for unital input.
pub fn log_m<C: Coeff>(alg: &Algebra, w: &GenElement<C>) -> Result<GenElement<C>> {
    require_unital(w)?;
    let nu = alg.nil_index()?;
    let v = w.clone().minus_one();
    let mut acc = v.clone();
    let mut power = v.clone();
    for m in 2..=nu as u32 {
        power = alg.mul(&power, &v)?;
        if power.is_zero() {
            break;
        }
        let coeff = if m % 2 == 0 {
            -Scalar::from_int(m as i64).recip()?
        } else {
            Scalar::from_int(m as i64).recip()?
        };
        acc = acc.add(&power.scale(&coeff));
    }
    Ok(acc)
}

/// `(1 + v)^q = 1 + Σ_{m≥1} binom(q, m) v^m` for any rational exponent `q`;
/// exact because the base is unipotent.
pub fn binomial_power<C: Coeff>(
    alg: &Algebra,
    w: &GenElement<C>,
    q: &Scalar,
) -> Result<GenElement<C>> {
    require_unital(w)?;
    let nu = alg.nil_index()?;
    let v = w.clone().minus_one();
    let mut acc = v.scale(&Scalar::zero()).plus_one(); // 1
    let mut power = acc.clone(); // v^m after step m, seeded with 1
    let mut binom = Scalar::one();
    for m in 1..=nu as u32 {
        // binom(q, m) = q (q-1) ... (q-m+1) / m!
        binom = &binom * &(q - &Scalar::from_int(m as i64 - 1));
        binom = &binom * &Scalar::from_int(m as i64).recip()?;
        power = alg.mul(&power, &v)?;
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale(&binom));
    }
    Ok(acc)
}

/// Solves `2u + u^2 = v` for `u ∈ m` via `u = (1 + v)^{1/2} − 1`, and checks
/// the identity back exactly.
pub fn solve_half_square(alg: &Algebra, v: &Element) -> Result<Element> {
    require_in_m(v)?;
    let u = binomial_power(alg, &v.clone().plus_one(), &Scalar::ratio(1, 2))?.minus_one();
    let check = u.scale(&Scalar::from_int(2)).add(&alg.mul(&u, &u)?);
    if &check != v {
        return Err(Error::contradiction(
            "square-root solve",
            format!("2u + u^2 = {:?} differs from v = {:?}", check.coords, v.coords),
        ));
    }
    Ok(u)
}
