//! Affine maps on the maximal ideal.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, PolyElement};
use crate::error::{Error, Result};
use crate::matrix::MatrixQ;
use crate::poly::MultiPoly;

/// Invertible linear map plus translation on `m`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: MatrixQ,
    pub translation: Element,
}

impl AffineMap {
    pub fn new(linear: MatrixQ, translation: Element) -> Result<AffineMap> {
        if linear.rows() != linear.cols() || linear.rows() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                got: translation.dim(),
            });
        }
        if linear.det()?.is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> AffineMap {
        AffineMap {
            linear: MatrixQ::identity(dim),
            translation: Element::zero(dim),
        }
    }

    pub fn translation_by(t: Element) -> AffineMap {
        AffineMap {
            linear: MatrixQ::identity(t.dim()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.linear == MatrixQ::identity(self.dim()) && self.translation.is_zero()
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        let lin = self.linear.mul_vec(&u.coords)?;
        Ok(Element::from_coords(lin).add(&self.translation))
    }

    /// Applies the map to an element with polynomial coordinates.
    pub fn apply_poly(&self, u: &PolyElement) -> Result<PolyElement> {
        if u.coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.coords.len(),
            });
        }
        let nvars = u.coords[0].nvars();
        let coords = (0..self.dim())
            .map(|i| {
                let mut acc = MultiPoly::constant(nvars, self.translation.coords[i].clone());
                for (j, c) in u.coords.iter().enumerate() {
                    let entry = &self.linear[(i, j)];
                    if !entry.is_zero() {
                        acc = acc.add(&c.scale(entry));
                    }
                }
                acc
            })
            .collect();
        Ok(PolyElement {
            unit: MultiPoly::zero(nvars),
            coords,
        })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        let linear = self.linear.mul(&other.linear)?;
        let moved = Element::from_coords(self.linear.mul_vec(&other.translation.coords)?);
        Ok(AffineMap {
            linear,
            translation: moved.add(&self.translation),
        })
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse().map_err(|_| Error::SingularLinearPart)?;
        let t = Element::from_coords(inv.mul_vec(&self.translation.coords)?);
        Ok(AffineMap {
            linear: inv,
            translation: t.scale(&crate::scalar::Scalar::from_int(-1)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn compose_then_invert_is_identity() {
        let f = AffineMap::new(
            MatrixQ::int_rows(&[&[1, 2], &[0, 1]]),
            Element::from_ints(&[3, -1]),
        )
        .unwrap();
        let g = f.inverse().unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
        let p = Element::from_ints(&[5, 7]);
        assert_eq!(g.apply(&f.apply(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn singular_linear_part_rejected() {
        let err = AffineMap::new(
            MatrixQ::int_rows(&[&[1, 2], &[2, 4]]),
            Element::zero(2),
        );
        assert!(matches!(err, Err(Error::SingularLinearPart)));
    }

    #[test]
    fn apply_poly_matches_pointwise_apply() {
        let f = AffineMap::new(
            MatrixQ::int_rows(&[&[2, 1], &[1, 1]]),
            Element::from_ints(&[1, 0]),
        )
        .unwrap();
        let sym = crate::algebra::PolyElement::symbolic(2);
        let image = f.apply_poly(&sym).unwrap();
        let point = vec![Scalar::from_int(3), Scalar::ratio(1, 2)];
        assert_eq!(
            image.eval(&point).unwrap(),
            f.apply(&Element::from_coords(point.clone())).unwrap()
        );
    }
}
