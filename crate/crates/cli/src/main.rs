//! `socle`: exact computations with Gorenstein structure-constant algebras
//! and their associated hypersurfaces.
//!
//! Every subcommand reads JSON documents, writes one deterministic JSON
//! document to standard output, and signals through the exit code:
//! 0 success, 1 a mathematical property fails, 2 malformed input,
//! 3 a certificate fails verification, 4 an internal contradiction
//! (impossible on valid input; reported with a witness).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use socle_core::algebra::{codim_m_squared, Algebra, Element};
use socle_core::equivalence::{
    reconstruct_algebra, round_trip_matches, verify_affine_equivalence,
    verify_scaled_linear_equivalence,
};
use socle_core::error::Error;
use socle_core::homogeneity::{affine_symmetry, property_p_certify, SymmetryOutcome};
use socle_core::hypersurface::{
    blaschke_check, compute_graph, graph_coeffs_of_hyperplane, hyperplane_from_graph_coeffs,
    psi_inverse, psi_map, surface_value, Projection,
};
use socle_core::io::{self, AlgebraFile, CertificateFile, GraphDoc, HyperplaneFile, ProjectionFile};
use socle_core::matrix::MatrixQ;
use socle_core::scalar::Scalar;
use socle_core::transport::{find_x, x_to_y};

#[derive(Parser)]
#[command(
    name = "socle",
    version,
    about = "Exact hypersurface computations for Gorenstein structure-constant algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProjectionArg {
    /// Admissible projection: "canonical" or a projection JSON file
    #[arg(long, default_value = "canonical")]
    projection: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check commutativity, associativity, nilpotency and grading
    Validate { algebra: PathBuf },
    /// Dimensions, nil-index, annihilator, verdicts and derivation bounds
    Info { algebra: PathBuf },
    /// Graph polynomial of the hypersurface with its tensors
    Hypersurface {
        algebra: PathBuf,
        #[command(flatten)]
        projection: ProjectionArg,
    },
    /// Blaschke normal-form residuals of the graph equation
    Blaschke {
        algebra: PathBuf,
        #[command(flatten)]
        projection: ProjectionArg,
    },
    /// Present a target hyperplane as (1+x)^{-1}K and (1+y)K
    Transport {
        algebra: PathBuf,
        /// Hyperplane file {"graph_coeffs": [...]}
        #[arg(long)]
        target: PathBuf,
        #[command(flatten)]
        projection: ProjectionArg,
    },
    /// Certified affine self-map of the hypersurface between two points
    Automorphism {
        algebra: PathBuf,
        /// Point file (coordinate array) on the hypersurface
        #[arg(long)]
        from: PathBuf,
        /// Point file (coordinate array) on the hypersurface
        #[arg(long)]
        to: PathBuf,
        #[command(flatten)]
        projection: ProjectionArg,
    },
    /// Certify hyperplane transitivity on seeded random targets
    #[command(name = "property-p")]
    PropertyP {
        algebra: PathBuf,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Rebuild the algebra from its graph tensors and compare tables
    Reconstruct {
        algebra: PathBuf,
        #[command(flatten)]
        projection: ProjectionArg,
    },
    /// Verify an equivalence certificate between two algebras
    #[command(name = "verify-equiv")]
    VerifyEquiv {
        algebra: PathBuf,
        other: PathBuf,
        /// Certificate file: affine map or {"C": [[..]], "s": "p/q"}
        #[arg(long)]
        map: PathBuf,
    },
    /// Hyperplane attached to a surface point (--from), or its inverse
    /// (--target)
    Psi {
        algebra: PathBuf,
        #[arg(long, conflicts_with = "target")]
        from: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[command(flatten)]
        projection: ProjectionArg,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Malformed(_)
        | Error::DimensionMismatch { .. }
        | Error::ArityMismatch { .. }
        | Error::DependentColumns
        | Error::NotInMaximalIdeal(_)
        | Error::NotUnital(_)
        | Error::NotHomogeneous { .. }
        | Error::NotComplementary => 2,
        Error::NotGorenstein { .. }
        | Error::NotNilpotent
        | Error::NotGraded(_)
        | Error::AnnihilatorNotTop
        | Error::NotOnHypersurface(_)
        | Error::ZeroDimensionalKernel
        | Error::InconsistentSystem
        | Error::NotRealizable(_)
        | Error::AxiomFailed(_)
        | Error::Singular => 1,
        Error::SingularLinearPart | Error::NotBlaschke | Error::CertificateRejected(_) => 3,
        Error::Contradiction { .. } => 4,
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Algebra, Error> {
    io::algebra_from_json(&read_text(path)?)
}

fn load_projection(alg: &Algebra, arg: &ProjectionArg) -> Result<Projection, Error> {
    if arg.projection == "canonical" {
        return Projection::canonical(alg);
    }
    let file: ProjectionFile = io::projection_from_json(&read_text(Path::new(&arg.projection))?)?;
    Projection::new(alg, Element::from_coords(file.e), file.lambda)
}

fn load_point(alg: &Algebra, path: &Path) -> Result<Element, Error> {
    io::element_from_json(&read_text(path)?, alg.dim())
}

fn print_doc<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("serializable document")
    );
}

#[derive(Serialize)]
struct BoundCheck {
    required: usize,
    actual: usize,
    holds: bool,
}

#[derive(Serialize)]
struct InfoDoc {
    algebra: String,
    dim_m: usize,
    nil_index: usize,
    annihilator_basis: Vec<Vec<Scalar>>,
    gorenstein: bool,
    graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    top_degree: Option<usize>,
    derivation_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_hyperplane_space: Option<BoundCheck>,
    bound_generators: BoundCheck,
}

#[derive(Serialize)]
struct AutomorphismDoc {
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear: Option<MatrixQ>,
    #[serde(skip_serializing_if = "Option::is_none")]
    translation: Option<Element>,
    from: Element,
    to: Element,
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate { algebra } => {
            let alg = load_algebra(&algebra)?;
            let report = alg.validate();
            #[derive(Serialize)]
            struct Doc<'a> {
                algebra: &'a str,
                report: &'a socle_core::ValidationReport,
            }
            print_doc(&Doc {
                algebra: alg.name(),
                report: &report,
            });
            if report.ok {
                Ok(())
            } else if let Some(w) = report.associativity_witness {
                Err(Error::AxiomFailed(format!(
                    "associativity fails at basis triple {w:?}"
                )))
            } else if !report.nilpotent {
                Err(Error::NotNilpotent)
            } else {
                Err(Error::AxiomFailed(
                    "grading is not homogeneous; see report".into(),
                ))
            }
        }
        Command::Info { algebra } => {
            let alg = load_algebra(&algebra)?;
            alg.ensure_valid()?;
            let (_, der_dim) = alg.derivation_algebra();
            let graded = alg.degrees().is_some() && alg.graded_components().is_ok();
            let generators = codim_m_squared(&alg);
            print_doc(&InfoDoc {
                algebra: alg.name().to_string(),
                dim_m: alg.dim(),
                nil_index: alg.nil_index()?,
                annihilator_basis: alg.annihilator().basis_vectors(),
                gorenstein: alg.is_gorenstein(),
                graded,
                top_degree: alg.graded_components().ok().map(|c| c.top_degree),
                derivation_dimension: der_dim,
                bound_hyperplane_space: graded.then_some(BoundCheck {
                    required: alg.n(),
                    actual: der_dim,
                    holds: der_dim >= alg.n(),
                }),
                bound_generators: BoundCheck {
                    required: generators,
                    actual: der_dim,
                    holds: der_dim >= generators,
                },
            });
            Ok(())
        }
        Command::Hypersurface { algebra, projection } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            if proj.n() == 0 {
                #[derive(Serialize)]
                struct Degenerate {
                    n: usize,
                    note: String,
                }
                print_doc(&Degenerate {
                    n: 0,
                    note: "kernel is zero-dimensional; the hypersurface is the single point 0"
                        .into(),
                });
                return Ok(());
            }
            let graph = compute_graph(&alg, &proj)?;
            print_doc(&GraphDoc::from_graph(&graph));
            Ok(())
        }
        Command::Blaschke { algebra, projection } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            let graph = compute_graph(&alg, &proj)?;
            print_doc(&blaschke_check(&graph)?);
            Ok(())
        }
        Command::Transport {
            algebra,
            target,
            projection,
        } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            let file: HyperplaneFile = io::hyperplane_from_json(&read_text(&target)?)?;
            let plane = hyperplane_from_graph_coeffs(&alg, &proj, &file.graph_coeffs)?;
            let x = find_x(&alg, &proj, &plane)?;
            let y = x_to_y(&alg, &proj, &x)?;
            #[derive(Serialize)]
            struct Doc {
                graph_coeffs: Vec<Scalar>,
                x: Element,
                y: Element,
                verified: bool,
            }
            print_doc(&Doc {
                graph_coeffs: file.graph_coeffs,
                x,
                y,
                verified: true,
            });
            Ok(())
        }
        Command::Automorphism {
            algebra,
            from,
            to,
            projection,
        } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            let p = load_point(&alg, &from)?;
            let q = load_point(&alg, &to)?;
            if proj.n() == 0 {
                // the hypersurface is {0}; only the trivial motion exists
                for point in [&p, &q] {
                    let value = surface_value(&alg, &proj, point)?;
                    if !value.is_zero() {
                        return Err(Error::NotOnHypersurface(value.to_string()));
                    }
                }
                print_doc(&AutomorphismDoc {
                    status: "certified".into(),
                    linear: Some(MatrixQ::identity(alg.dim())),
                    translation: Some(Element::zero(alg.dim())),
                    from: p,
                    to: q,
                });
                return Ok(());
            }
            let graph = compute_graph(&alg, &proj)?;
            let doc = match affine_symmetry(&alg, &proj, &graph, &p, &q)? {
                SymmetryOutcome::Certified(map) => AutomorphismDoc {
                    status: "certified".into(),
                    linear: Some(map.linear),
                    translation: Some(map.translation),
                    from: p,
                    to: q,
                },
                SymmetryOutcome::Undecided => AutomorphismDoc {
                    status: "undecided".into(),
                    linear: None,
                    translation: None,
                    from: p,
                    to: q,
                },
            };
            print_doc(&doc);
            Ok(())
        }
        Command::PropertyP {
            algebra,
            samples,
            seed,
        } => {
            let alg = load_algebra(&algebra)?;
            print_doc(&property_p_certify(&alg, samples, seed)?);
            Ok(())
        }
        Command::Reconstruct { algebra, projection } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            let graph = compute_graph(&alg, &proj)?;
            let rebuilt = reconstruct_algebra(&graph)?;
            let round_trip = round_trip_matches(&alg, &proj, &graph, &rebuilt)?;
            if !round_trip {
                return Err(Error::contradiction(
                    "reconstruction",
                    "rebuilt table differs from the source in adapted coordinates",
                ));
            }
            #[derive(Serialize)]
            struct Doc {
                algebra: AlgebraFile,
                round_trip: bool,
            }
            print_doc(&Doc {
                algebra: AlgebraFile::from_algebra(&rebuilt),
                round_trip,
            });
            Ok(())
        }
        Command::VerifyEquiv {
            algebra,
            other,
            map,
        } => {
            let alg = load_algebra(&algebra)?;
            let other_alg = load_algebra(&other)?;
            let proj = Projection::canonical(&alg)?;
            let other_proj = Projection::canonical(&other_alg)?;
            let cert = io::certificate_from_json(&read_text(&map)?)?;
            let verdict = match &cert {
                CertificateFile::Affine { .. } => {
                    let map = io::affine_map_from_certificate(&cert)?;
                    verify_affine_equivalence(&alg, &proj, &other_alg, &other_proj, &map)?
                }
                CertificateFile::Scaled { c, s } => {
                    let graph = compute_graph(&alg, &proj)?;
                    let other_graph = compute_graph(&other_alg, &other_proj)?;
                    verify_scaled_linear_equivalence(&graph, &other_graph, c, s)?
                }
            };
            let rejected = (!verdict.equivalent).then(|| verdict.reason.clone());
            print_doc(&verdict);
            match rejected {
                None => Ok(()),
                Some(reason) => Err(Error::CertificateRejected(reason)),
            }
        }
        Command::Psi {
            algebra,
            from,
            target,
            projection,
        } => {
            let alg = load_algebra(&algebra)?;
            let proj = load_projection(&alg, &projection)?;
            match (from, target) {
                (Some(point_path), None) => {
                    let point = load_point(&alg, &point_path)?;
                    let plane = psi_map(&alg, &proj, &point)?;
                    let coeffs = graph_coeffs_of_hyperplane(&alg, &proj, &plane)?;
                    print_doc(&HyperplaneFile {
                        graph_coeffs: coeffs,
                    });
                    Ok(())
                }
                (None, Some(plane_path)) => {
                    let file: HyperplaneFile = io::hyperplane_from_json(&read_text(&plane_path)?)?;
                    let plane = hyperplane_from_graph_coeffs(&alg, &proj, &file.graph_coeffs)?;
                    let point = psi_inverse(&alg, &proj, &plane)?;
                    #[derive(Serialize)]
                    struct Doc {
                        point: Element,
                    }
                    print_doc(&Doc { point });
                    Ok(())
                }
                _ => Err(Error::Malformed(
                    "psi needs exactly one of --from <point> or --target <hyperplane>".into(),
                )),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": err.to_string(), "exit": exit_code(&err) })
            );
            ExitCode::from(exit_code(&err))
        }
    }
}
