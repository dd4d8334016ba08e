//! JSON file formats.
//!
//! Every scalar travels as a decimal string `"p/q"` (or `"p"`); nothing in a
//! serialized artifact is ever floating point.  Indices in algebra files are
//! 1-based, matching how basis elements are labelled in reports.

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::hypersurface::GraphPoly;
use crate::matrix::MatrixQ;
use crate::scalar::Scalar;

/// `{"name", "dim_m", "basis", "degrees"?, "products": [{"i", "j", "coeffs"}]}`
/// with 1-based `i <= j`; omitted products are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim_m: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    pub products: Vec<ProductEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Scalar>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &Algebra) -> AlgebraFile {
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                let coords = alg.product_coords(i, j);
                if coords.iter().any(|c| !c.is_zero()) {
                    products.push(ProductEntry {
                        i: i + 1,
                        j: j + 1,
                        coeffs: coords.to_vec(),
                    });
                }
            }
        }
        AlgebraFile {
            name: alg.name().to_string(),
            dim_m: alg.dim(),
            basis: alg.labels().to_vec(),
            degrees: alg.degrees().map(<[usize]>::to_vec),
            products,
        }
    }

    pub fn into_algebra(self) -> Result<Algebra> {
        if self.basis.len() != self.dim_m {
            return Err(Error::Malformed(format!(
                "basis has {} labels but dim_m = {}",
                self.basis.len(),
                self.dim_m
            )));
        }
        let products = self
            .products
            .into_iter()
            .map(|p| {
                if p.i == 0 || p.j == 0 {
                    return Err(Error::Malformed(
                        "product indices are 1-based; got 0".into(),
                    ));
                }
                Ok((p.i - 1, p.j - 1, p.coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.name, self.basis, self.degrees, products)
    }
}

pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("algebra file: {e}")))?;
    file.into_algebra()
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg)).expect("serializable")
}

/// `{"graph_coeffs": ["p/q", ...]}` of length `n`: the hyperplane spanned by
/// `k_i + t_i·e` over the canonical kernel basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneFile {
    pub graph_coeffs: Vec<Scalar>,
}

pub fn hyperplane_from_json(text: &str) -> Result<HyperplaneFile> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("hyperplane file: {e}")))
}

/// Points and elements of `m` serialize as a bare coordinate array.
pub fn element_from_json(text: &str, dim: usize) -> Result<Element> {
    let coords: Vec<Scalar> =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("point file: {e}")))?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: coords.len(),
        });
    }
    Ok(Element::from_coords(coords))
}

pub fn element_to_json(e: &Element) -> String {
    serde_json::to_string(&e.coords).expect("serializable")
}

/// `{"e": [...], "lambda": [...]}`: a non-canonical admissible projection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectionFile {
    pub e: Vec<Scalar>,
    pub lambda: Vec<Scalar>,
}

pub fn projection_from_json(text: &str) -> Result<ProjectionFile> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("projection file: {e}")))
}

/// Equivalence certificates: either an affine map
/// `{"linear": [[..]], "translation": [..]}` or a scaled linear certificate
/// `{"C": [[..]], "s": "p/q"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateFile {
    Scaled { #[serde(rename = "C")] c: MatrixQ, s: Scalar },
    Affine { linear: MatrixQ, translation: Vec<Scalar> },
}

pub fn certificate_from_json(text: &str) -> Result<CertificateFile> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("certificate file: {e}")))
}

pub fn affine_map_from_certificate(cert: &CertificateFile) -> Result<AffineMap> {
    match cert {
        CertificateFile::Affine { linear, translation } => AffineMap::new(
            linear.clone(),
            Element::from_coords(translation.clone()),
        ),
        CertificateFile::Scaled { .. } => Err(Error::Malformed(
            "expected an affine-map certificate, got a scaled linear one".into(),
        )),
    }
}

pub fn affine_map_to_json(map: &AffineMap) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        linear: &'a MatrixQ,
        translation: &'a [Scalar],
    }
    serde_json::to_string_pretty(&Doc {
        linear: &map.linear,
        translation: &map.translation.coords,
    })
    .expect("serializable")
}

/// Graph polynomial document with a deterministic term order.
#[derive(Clone, Debug, Serialize)]
pub struct GraphDoc {
    pub n: usize,
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub terms: crate::poly::MultiPoly,
    pub g: MatrixQ,
    pub h: Vec<Vec<Vec<Scalar>>>,
}

impl GraphDoc {
    pub fn from_graph(graph: &GraphPoly) -> GraphDoc {
        let n = graph.n();
        let h = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| graph.h_at(i, j, k).clone()).collect())
                    .collect()
            })
            .collect();
        GraphDoc {
            n,
            kernel_basis: graph.kernel_basis.iter().map(|e| e.coords.clone()).collect(),
            terms: graph.poly.clone(),
            g: graph.g.clone(),
            h,
        }
    }
}
