use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use kahler::kahler::{evaluate, tame_certificate, MonomialChart, Pluriform};
use kahler::lattice::{semilattice_index, PresentationMatrix};
use kahler::tropical::{min_locus, semistable_skeleton, tropicalize, RationalPolytope};
use kahler::weight::KummerDivisorialSpec;
use kahler::{BaseFieldModel, ValExp};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::io::{self, rational_json, value_json, value_text};
use crate::parser::Vars;
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "kahler", version, about = "Exact Kähler seminorms and tropical skeleta")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// trivial | padic:<p> | piadic-q | piadic-f<p>
    #[arg(long)]
    pub field: String,
    /// Number of variables (inferred from --point or the region when omitted).
    #[arg(long)]
    pub n: Option<usize>,
    /// Rational radii "q1,..,qn" (defaults to all zero).
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Base ε in (0, 1) for the optional "approx" rendering.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct Region {
    /// Semistable skeleton "<n>,<va>": ρ ≥ 0, Σρ ≤ va.
    #[arg(long, conflicts_with = "polytope")]
    pub semistable: Option<String>,
    /// Polytope JSON file.
    #[arg(long)]
    pub polytope: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kähler value of a form at a chart's Gauss point, with the tame certificate.
    EvalNorm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: PathBuf,
        /// Chart JSON file; the identity chart when omitted.
        #[arg(long)]
        chart: Option<PathBuf>,
    },
    /// Tropicalization of a form, optionally evaluated at --point.
    Trop {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: PathBuf,
    },
    /// Minimum value and minimizing faces of the tropicalization over a polytope.
    MaxLocus {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        region: Region,
        #[arg(long)]
        form: PathBuf,
    },
    /// Elementary divisors of a presentation matrix.
    Smith {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Content of the module presented by a matrix.
    Content {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Index [lattice : sublattice] of two square matrices.
    Index {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: PathBuf,
    },
    /// Adic seminorm of an element of the presented module.
    Adic {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated constant expressions: free coordinates, then torsion.
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
    },
    /// Weight norm against the Kähler seminorm on a Kummer cover.
    WeightCompare {
        #[command(flatten)]
        common: Common,
        /// "j:e,..." with 1-based j.
        #[arg(long)]
        kummer: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Coefficient g in t1..tn and the Kummer roots s_j.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        g: String,
    },
    /// Skeleton coordinates of a chart's point.
    Retract {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chart: PathBuf,
    },
    /// Tame certificate of a monomial chart.
    TameCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chart: PathBuf,
    },
    /// CSV of tropical values on a grid over a polytope.
    Grid {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        region: Region,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        grid: u32,
    },
}

pub fn parse_field(s: &str) -> Result<BaseFieldModel, CliError> {
    let prime = |digits: &str| {
        digits
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("--field: '{digits}' is not a positive integer")))
    };
    let model = match s {
        "trivial" => BaseFieldModel::TrivialQ,
        "piadic-q" => BaseFieldModel::PiAdicQ,
        _ => {
            if let Some(p) = s.strip_prefix("padic:") {
                BaseFieldModel::padic(prime(p)?)?
            } else if let Some(p) = s.strip_prefix("piadic-f") {
                BaseFieldModel::piadic_fp(prime(p)?)?
            } else {
                return Err(CliError::Usage(format!(
                    "--field: unknown model '{s}' (expected trivial, padic:<p>, piadic-q or piadic-f<p>)"
                )));
            }
        }
    };
    Ok(model)
}

struct Ctx {
    model: BaseFieldModel,
    n: usize,
    rho: Vec<BigRational>,
    epsilon: Option<f64>,
}

impl Ctx {
    fn new(c: &Common) -> Result<Self, CliError> {
        Ctx::with_dim(c, None)
    }

    fn with_dim(c: &Common, region_dim: Option<usize>) -> Result<Self, CliError> {
        let model = parse_field(&c.field)?;
        let point = match &c.point {
            Some(p) => Some(io::rational_list(p, "--point")?),
            None => None,
        };
        let n = c.n.or(point.as_ref().map(Vec::len)).or(region_dim).unwrap_or(0);
        let rho = point.unwrap_or_else(|| vec![BigRational::zero(); n]);
        if rho.len() != n {
            return Err(kahler::Error::DimensionMismatch { expected: n, found: rho.len() }.into());
        }
        if let Some(e) = c.epsilon {
            if !(e > 0.0 && e < 1.0) {
                return Err(CliError::Usage(format!("--epsilon must lie in (0, 1), got {e}")));
            }
        }
        Ok(Ctx { model, n, rho, epsilon: c.epsilon })
    }

    fn value(&self, v: &ValExp) -> Value {
        value_json(v, self.epsilon)
    }

    fn form(&self, path: &Path) -> Result<Pluriform, CliError> {
        let file: io::FormFile = io::read_json(path)?;
        io::form(&file, self.model, self.n, &path.display().to_string())
    }

    fn chart(&self, path: &Path) -> Result<MonomialChart, CliError> {
        let file: io::ChartFile = io::read_json(path)?;
        let subs = io::chart(&file, self.model, &path.display().to_string())?;
        if subs.len() != self.n {
            return Err(kahler::Error::DimensionMismatch { expected: self.n, found: subs.len() }.into());
        }
        Ok(MonomialChart::new(self.model, subs, self.rho.clone())?)
    }

    fn presentation(&self, path: &Path) -> Result<PresentationMatrix, CliError> {
        let file: io::MatrixFile = io::read_json(path)?;
        let m = io::matrix(&file, self.model, &self.rho, &path.display().to_string())?;
        Ok(PresentationMatrix::new(m)?)
    }
}

fn parse_region(r: &Region) -> Result<RationalPolytope, CliError> {
    let p = match (&r.semistable, &r.polytope) {
        (Some(s), None) => {
            let (n, va) = s
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("--semistable expects '<n>,<va>', got '{s}'")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--semistable: '{n}' is not a dimension")))?;
            let va = io::rational(va, "--semistable")?;
            semistable_skeleton(n, &va)?
        }
        (None, Some(path)) => {
            let file: io::PolytopeFile = io::read_json(path)?;
            io::polytope(&file, &path.display().to_string())?
        }
        _ => return Err(CliError::Usage("exactly one of --semistable or --polytope is required".into())),
    };
    Ok(p)
}

fn parse_kummer(s: &str) -> Result<Vec<(usize, u64)>, CliError> {
    let bad = || CliError::Usage(format!("--kummer expects 'j:e,...' with 1-based j, got '{s}'"));
    s.split(',')
        .map(|item| {
            let (j, e) = item.split_once(':').ok_or_else(bad)?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            let e: u64 = e.trim().parse().map_err(|_| bad())?;
            Ok((j.checked_sub(1).ok_or_else(bad)?, e))
        })
        .collect()
}

fn point_json(p: &[BigRational]) -> Value {
    Value::Array(p.iter().map(rational_json).collect())
}

fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one subcommand and returns what it prints on standard output.
pub fn execute(cmd: &Command) -> Result<String, CliError> {
    match cmd {
        Command::EvalNorm { common, form, chart } => {
            let ctx = Ctx::new(common)?;
            let form = ctx.form(form)?;
            let chart = match chart {
                Some(path) => ctx.chart(path)?,
                None => MonomialChart::identity(ctx.model, ctx.rho.clone()),
            };
            let ev = evaluate(&form, &chart)?;
            Ok(render(json!({
                "value": ctx.value(&ev.value),
                "certificate": ev.certificate.to_string(),
            })))
        }
        Command::Trop { common, form } => {
            let ctx = Ctx::new(common)?;
            let t = tropicalize(&ctx.form(form)?);
            let terms: Vec<Value> =
                t.terms().map(|(slope, c)| json!({ "c": rational_json(c), "slope": slope })).collect();
            let mut out = json!({ "terms": terms });
            if common.point.is_some() {
                out["value"] = ctx.value(&t.eval(&ctx.rho)?);
            }
            Ok(render(out))
        }
        Command::MaxLocus { common, region, form } => {
            let p = parse_region(region)?;
            let ctx = Ctx::with_dim(common, Some(p.n()))?;
            if p.n() != ctx.n {
                return Err(kahler::Error::DimensionMismatch { expected: ctx.n, found: p.n() }.into());
            }
            let t = tropicalize(&ctx.form(form)?);
            let (m_star, complex) = min_locus(&t, &p)?;
            let faces: Vec<Value> = complex
                .faces
                .iter()
                .map(|f| {
                    let tight: Vec<usize> = f.tight.iter().map(|k| k + 1).collect();
                    let vertices: Vec<Value> = f.vertices.iter().map(|v| point_json(v)).collect();
                    json!({ "tight": tight, "vertices": vertices })
                })
                .collect();
            Ok(render(json!({
                "m_star": ctx.value(&ValExp::Finite(m_star)),
                "faces": faces,
            })))
        }
        Command::Smith { common, matrix } => {
            let ctx = Ctx::new(common)?;
            let d = ctx.presentation(matrix)?.smith();
            let divisors: Vec<Value> = d.divisors.iter().map(|v| ctx.value(v)).collect();
            Ok(render(json!({ "divisors": divisors, "free_rank": d.free_rank })))
        }
        Command::Content { common, matrix } => {
            let ctx = Ctx::new(common)?;
            let c = ctx.presentation(matrix)?.content();
            Ok(render(json!({ "content": ctx.value(&c) })))
        }
        Command::Index { common, index } => {
            let ctx = Ctx::new(common)?;
            let file: io::IndexFile = io::read_json(index)?;
            let name = index.display().to_string();
            let lattice = io::matrix(&file.lattice, ctx.model, &ctx.rho, &format!("{name}: lattice"))?;
            let sub = io::matrix(&file.sublattice, ctx.model, &ctx.rho, &format!("{name}: sublattice"))?;
            let idx = semilattice_index(&lattice, &sub)?;
            Ok(render(json!({ "index": ctx.value(&idx) })))
        }
        Command::Adic { common, matrix, coords } => {
            let ctx = Ctx::new(common)?;
            let d = ctx.presentation(matrix)?.smith();
            let vars = Vars::t_only(0);
            let mut xs = Vec::new();
            for (k, src) in coords.split(',').enumerate() {
                let p = io::poly(src, ctx.model, &vars, &format!("--coords[{k}]"))?;
                xs.push(p.as_constant().expect("no variables in scope"));
            }
            let norm = d.adic_norm(&xs, ctx.model)?;
            Ok(render(json!({ "norm": ctx.value(&norm) })))
        }
        Command::WeightCompare { common, kummer, m, g } => {
            let ctx = Ctx::new(common)?;
            let spec = KummerDivisorialSpec::new(ctx.model, ctx.n, parse_kummer(kummer)?)?;
            let g = io::poly(g, ctx.model, &Vars { t: ctx.n, s: ctx.n }, "--g")?;
            let r = spec.compare(&g, *m)?;
            Ok(render(json!({
                "wt": ctx.value(&r.wt),
                "omega": ctx.value(&r.omega),
                "delta_log": ctx.value(&r.delta_log_k),
                "holds": r.identity_holds,
            })))
        }
        Command::Retract { common, chart } => {
            let ctx = Ctx::new(common)?;
            let chart = ctx.chart(chart)?;
            Ok(render(json!({ "retraction": point_json(&chart.retract()) })))
        }
        Command::TameCheck { common, chart } => {
            let ctx = Ctx::new(common)?;
            let status = tame_certificate(&ctx.chart(chart)?)?;
            Ok(render(json!({ "certificate": status.to_string() })))
        }
        Command::Grid { common, region, form, grid } => {
            let p = parse_region(region)?;
            let ctx = Ctx::with_dim(common, Some(p.n()))?;
            if p.n() != ctx.n {
                return Err(kahler::Error::DimensionMismatch { expected: ctx.n, found: p.n() }.into());
            }
            let t = tropicalize(&ctx.form(form)?);
            let mut out = String::new();
            let header: Vec<String> = (1..=ctx.n).map(|i| format!("r{i}")).collect();
            out.push_str(&header.join(","));
            if ctx.n > 0 {
                out.push(',');
            }
            out.push_str("value");
            if ctx.epsilon.is_some() {
                out.push_str(",approx");
            }
            out.push('\n');
            for x in p.grid_points(*grid)? {
                let v = t.eval(&x)?;
                for c in &x {
                    write!(out, "{c},").unwrap();
                }
                out.push_str(&value_text(&v));
                if let Some(eps) = ctx.epsilon {
                    write!(out, ",{}", v.approx(eps)).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}
