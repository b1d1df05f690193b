mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genus2_core::branching::{cohomology_d11, restrict_untwisted, restrict_wreath, sigma_twisted_trace};
use genus2_core::char_ring::{decompose_sp4, sp4_irrep_character, DominantWeight, SymplecticCharacter};
use genus2_core::facts::FactsTable;
use genus2_core::gysin::{generator_sweep, h1_m2, h2_m2_weights, relation_candidates, theorem_a, weight_ledger_report};
use genus2_core::lie_structure::{free_lie_graded, lambda2, sym2};
use genus2_core::modular::{
    delta, dim_cusp_forms, eigenform, eisenstein, l_value, period, QExpansion, DEFAULT_PRECISION, DEFAULT_TOLERANCE,
};
use genus2_core::nilpotent::{
    ce_cohomology, kostant_cohomology, product_module, siegel_module, sl2_module, stalk_dimensions, Parabolic,
};
use genus2_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use output::{envelope, render, save_copy, Format};

#[derive(Parser, Debug)]
#[command(name = "genus2", version, about = "Weight bookkeeping for the genus-two relative completion")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Sweep bound on a+b.
    #[arg(long, default_value_t = genus2_core::gysin::DEFAULT_SWEEP, global = true)]
    max_weight: u32,

    /// Absolute error tolerance for L-values and periods.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_float, global = true)]
    tolerance: f64,

    /// Number of q-expansion coefficients.
    #[arg(long, default_value_t = DEFAULT_PRECISION, global = true)]
    precision: usize,

    /// Attach L-value certificates to exclusions.
    #[arg(long, global = true)]
    certify: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a tensor product, exterior or symmetric square into irreducibles.
    Decompose(DecomposeArgs),
    /// Degree-n piece of the free Lie algebra on an irreducible.
    FreeLie {
        #[arg(value_parser = weight)]
        generator: DominantWeight,
        degree: u32,
    },
    /// Restriction to SL2 x SL2 and to the wreath product.
    Branch {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
    },
    /// H^0 and H^1 of D11 with coefficients V_{a+b}(twist).
    D11Cohomology {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Kostant's theorem for the Borel (B) or Siegel (Q) parabolic.
    Kostant {
        #[arg(value_enum)]
        parabolic: ParabolicArg,
        #[arg(value_parser = weight)]
        weight: DominantWeight,
        degree: usize,
    },
    /// Chevalley-Eilenberg cohomology: `n_B m`, `n_P c,d` or `n_Q a,b`.
    Ce {
        #[arg(value_enum)]
        algebra: AlgebraArg,
        coefficient: String,
        /// Include class representatives.
        #[arg(long)]
        representatives: bool,
    },
    /// Boundary stalk tables for a > b, a+b even.
    Stalks {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
    },
    /// Dimension of level-one cusp forms of weight k.
    DimCusp {
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// q-expansion of E4, E6, Delta or a one-dimensional eigenform.
    Qexp {
        #[arg(value_enum)]
        form: FormArg,
        /// Weight, for `eigenform`.
        weight: Option<u32>,
    },
    /// L(f, s) for the eigenform of weight k.
    Lvalue { k: u32, s: f64 },
    /// Period r_n(f) for the eigenform of weight k.
    Period { k: u32, n: u32 },
    /// Gysin-sequence ledger for V_{a+b}.
    Gysin {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
    },
    /// H^1(M2, V_{a+b}).
    H1 {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
    },
    /// Possible weights of H^2(M2, V_{a+b}).
    H2Weights {
        #[arg(value_parser = weight)]
        weight: DominantWeight,
    },
    /// Candidate relation modules.
    Relations,
    /// Generator and relation bounds end to end.
    TheoremA,
    /// The facts table with citations.
    Facts,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Tensor product of the listed irreducibles.
    #[arg(long, num_args = 1.., value_parser = weight, conflicts_with_all = ["lambda2", "sym2"])]
    tensor: Vec<DominantWeight>,
    #[arg(long, value_parser = weight, conflicts_with = "sym2")]
    lambda2: Option<DominantWeight>,
    #[arg(long, value_parser = weight)]
    sym2: Option<DominantWeight>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParabolicArg {
    B,
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    #[value(name = "n_B")]
    NB,
    #[value(name = "n_P")]
    NP,
    #[value(name = "n_Q")]
    NQ,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    E4,
    E6,
    Delta,
    Eigenform,
}

fn positive_float(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err("must be positive and finite".into())
    }
}

fn pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad integer `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad integer `{b}`"))?;
    Ok((a, b))
}

fn weight(s: &str) -> std::result::Result<DominantWeight, String> {
    let (a, b) = pair(s)?;
    DominantWeight::new(a, b).map_err(|e| e.to_string())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn decomposition_value(c: &SymplecticCharacter) -> Result<Value> {
    let d = decompose_sp4(c)?;
    Ok(json!({ "decomposition": to_value(&d), "dimension": d.dimension() as u64 }))
}

fn qexp_value(f: &QExpansion) -> Value {
    let coefficients: Vec<String> = f.coefficients().iter().map(|c| c.to_string()).collect();
    json!({ "weight": f.weight(), "precision": f.precision(), "coefficients": coefficients })
}

fn run(cli: &Cli) -> Result<(String, &'static str, Value)> {
    let tol = cli.tolerance;
    let out = match &cli.command {
        Command::Decompose(args) => {
            let c = if let Some(w) = args.lambda2 {
                lambda2(&sp4_irrep_character(w))?
            } else if let Some(w) = args.sym2 {
                sym2(&sp4_irrep_character(w))?
            } else if !args.tensor.is_empty() {
                args.tensor.iter().fold(SymplecticCharacter::one(), |acc, w| &acc * &sp4_irrep_character(*w))
            } else {
                return Err(Error::InvalidArgument("give --tensor, --lambda2 or --sym2".into()));
            };
            ("decompose", "computed", decomposition_value(&c)?)
        }
        Command::FreeLie { generator, degree } => {
            let piece = free_lie_graded(&sp4_irrep_character(*generator), *degree)?;
            let mut v = decomposition_value(&piece.character)?;
            v["degree"] = json!(degree);
            ("free-lie", "computed", v)
        }
        Command::Branch { weight } => {
            let untwisted: Vec<Value> =
                restrict_untwisted(*weight).into_iter().map(|((p, q), m)| json!({"p": p, "q": q, "multiplicity": m})).collect();
            let trace: Vec<Value> =
                sigma_twisted_trace(*weight).terms().map(|(e, k)| json!({"exponent": e, "coefficient": k as i64})).collect();
            let wreath = restrict_wreath(*weight)?;
            let v = json!({ "untwisted": untwisted, "sigma_trace": trace, "wreath": to_value(&wreath), "dimension": wreath.dimension() as u64 });
            ("branch", "computed", v)
        }
        Command::D11Cohomology { weight, twist } => ("d11-cohomology", "computed", to_value(&cohomology_d11(*weight, *twist)?)),
        Command::Kostant { parabolic, weight, degree } => {
            let p = match parabolic {
                ParabolicArg::B => Parabolic::Borel,
                ParabolicArg::Q => Parabolic::Siegel,
            };
            ("kostant", "computed", to_value(&kostant_cohomology(p, *weight, *degree)?))
        }
        Command::Ce { algebra, coefficient, representatives } => {
            let module = match algebra {
                AlgebraArg::NB => sl2_module(coefficient.parse().map_err(|_| Error::InvalidArgument(format!("bad label `{coefficient}`")))?),
                AlgebraArg::NP => {
                    let (c, d) = pair(coefficient).map_err(Error::InvalidArgument)?;
                    let c = u32::try_from(c).map_err(|_| Error::InvalidArgument("labels are nonnegative".into()))?;
                    let d = u32::try_from(d).map_err(|_| Error::InvalidArgument("labels are nonnegative".into()))?;
                    product_module(c, d)
                }
                AlgebraArg::NQ => {
                    let (a, b) = pair(coefficient).map_err(Error::InvalidArgument)?;
                    siegel_module(DominantWeight::new(a, b)?)
                }
            };
            let r = ce_cohomology(&module, *representatives);
            let by_degree: Vec<Value> = r
                .by_degree
                .iter()
                .enumerate()
                .map(|(l, table)| {
                    let weights: Vec<Value> = table.iter().map(|(w, d)| json!({"torus_weight": w, "dim": d})).collect();
                    json!({"degree": l, "dimension": r.dimension(l), "weights": weights})
                })
                .collect();
            let mut v = json!({ "algebra_dimension": r.algebra_dimension, "by_degree": by_degree, "euler_characteristic": r.euler_characteristic() });
            if *representatives {
                v["representatives"] = to_value(&r.representatives);
            }
            ("ce", "computed", v)
        }
        Command::Stalks { weight } => ("stalks", "computed", to_value(&stalk_dimensions(*weight)?)),
        Command::DimCusp { k } => ("dim-cusp", "computed", json!({ "k": k, "dimension": dim_cusp_forms(*k) })),
        Command::Qexp { form, weight } => {
            let n = cli.precision;
            let f = match (form, weight) {
                (FormArg::E4, _) => eisenstein(4, n)?,
                (FormArg::E6, _) => eisenstein(6, n)?,
                (FormArg::Delta, _) => delta(n),
                (FormArg::Eigenform, Some(k)) => eigenform(*k, n)?,
                (FormArg::Eigenform, None) => return Err(Error::InvalidArgument("eigenform needs a weight".into())),
            };
            ("qexp", "computed", qexp_value(&f))
        }
        Command::Lvalue { k, s } => {
            let f = eigenform(*k, cli.precision)?;
            ("lvalue", "computed", json!({ "k": k, "l_value": to_value(&l_value(&f, *s, tol)?) }))
        }
        Command::Period { k, n } => {
            let f = eigenform(*k, cli.precision)?;
            ("period", "computed", json!({ "k": k, "n": n, "period": to_value(&period(&f, *n, tol)?) }))
        }
        Command::Gysin { weight } => ("gysin", "cited-fact", to_value(&weight_ledger_report(*weight)?)),
        Command::H1 { weight } => {
            let table = h1_m2(*weight)?;
            ("h1", "computed", json!({ "weight": weight, "weights": to_value(&table.nonzero().into_iter().map(|(w, dim)| json!({"w": w, "dim": dim})).collect::<Vec<_>>()) }))
        }
        Command::H2Weights { weight } => ("h2-weights", "computed", json!({ "weight": weight, "possible_weights": h2_m2_weights(*weight)? })),
        Command::Relations => {
            let generators = generator_sweep(cli.max_weight)?;
            let report = relation_candidates(cli.certify, cli.max_weight, tol)?;
            let mut v = to_value(&report);
            v["generator_count"] = json!(generators.generators.len());
            ("relations", "computed", v)
        }
        Command::TheoremA => ("theorem-a", "computed", to_value(&theorem_a(cli.max_weight, true, tol)?)),
        Command::Facts => {
            let table = FactsTable::builtin();
            let facts: Vec<Value> = table.iter().map(to_value).collect();
            ("facts", "cited-fact", json!({ "version": table.version(), "facts": facts }))
        }
    };
    Ok((out.0.to_string(), out.1, out.2))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let certify = cli.certify || matches!(cli.command, Command::TheoremA);
    let parameters = json!({
        "tolerance": cli.tolerance,
        "precision": cli.precision,
        "max_weight": cli.max_weight,
        "certify": certify,
        "facts_version": FactsTable::builtin().version(),
    });
    match run(&cli) {
        Ok((command, provenance, result)) => {
            let rendered = render(&envelope(&command, provenance, parameters, result), cli.format);
            print!("{rendered}");
            if let Err(e) = save_copy(&command, &rendered, cli.format) {
                eprintln!("error[E_OUTPUT_DIR]: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
