//! Command-line front end. Every command produces a [`CommandReport`]:
//! ordered `key: value` lines plus named verdicts. Exit codes: 0 when all
//! verdicts pass, 2 for unparsable input, 3 for violated preconditions,
//! 4 for failed certifications.

use std::fs;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::binary::{
    invariants_qcd, j_invariant, j_prime, root_pattern, veronese, BinaryForm, JNormalization,
};
use crate::components::{
    build_linear_pullback, build_logarithmic, build_rational, random_recipe, RecipeKind,
};
use crate::error::{Error, Result};
use crate::exceptional::{
    affine_fields, check_double_tangency, contract_volume, derive_omega_bar, explicit_omega_bar,
    tangent_system_dim,
};
use crate::exterior::{descends_check, integrability_check, saturate, DiffForm, OneFormFile};
use crate::poly::{parse_poly, MultiPoly, VarNames};
use crate::probe::{run_probe, ProbeTarget};
use crate::scalar::Scalar;

#[derive(Debug, Parser)]
#[command(
    name = "foliations",
    about = "Exact computations with foliations on projective space"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Q, C, D, j and the root pattern of a binary quartic.
    Invariants(FormArg),
    /// Root multiplicities and orbit of a binary form.
    Classify(FormArg),
    /// The Veronese image of a point of the projective line.
    Veronese {
        degree: u32,
        /// The point as `c:d`.
        point: String,
    },
    /// Build a form of one of the classical components.
    #[command(subcommand)]
    Build(Build),
    /// Descent and integrability of a 1-form file.
    Check {
        #[arg(long)]
        form: String,
    },
    /// The exceptional component pipeline.
    #[command(subcommand)]
    Exceptional(Exceptional),
    /// Finite-field certificate for a singular locus.
    Probe {
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long)]
        target: String,
        /// Number of points listed per difference set.
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// Seeded randomized checks of the constructors and the discriminant.
    Certify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per constructor.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Random quartics for the discriminant identity.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
struct FormArg {
    /// A polynomial in t0, t1, or comma-separated weighted coordinates.
    form: String,
    /// Read a coordinate list as plain monomial coefficients.
    #[arg(long)]
    monomial: bool,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the 1-form file here.
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated variable names (default x0, x1, ...).
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Build {
    /// p1·F2·dF1 − p2·F1·dF2.
    Rational {
        f1: String,
        f2: String,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Σ λ_i (Π_{j≠i} F_j) dF_i.
    Log {
        /// Factors, separated by `;`.
        factors: String,
        /// Weights, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// π*η for a 3×(r+1) matrix π and a 1-form file η on three variables.
    Pullback {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        eta: String,
        #[command(flatten)]
        output: Output,
    },
    /// A seeded random recipe.
    Random {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Rational,
    Log,
    Pullback,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Explicit,
    Derived,
    Contraction,
}

#[derive(Debug, Subcommand)]
enum Exceptional {
    /// Restrict 3C dQ − 2Q dC to the osculating hyperplane and saturate.
    Derive {
        #[arg(long)]
        out: Option<String>,
    },
    /// The explicit degree-two form on P³.
    #[command(name = "paper-form", alias = "explicit-form")]
    ExplicitForm {
        #[arg(long)]
        out: Option<String>,
    },
    /// The affine fields X, Y, R and the contraction i_X i_Y i_R Ω.
    Fields {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Dimension of the first-order deformations.
    TangentDim {
        #[arg(long, conflicts_with = "source")]
        form: Option<String>,
        #[arg(long, value_enum, default_value = "explicit")]
        source: Source,
    },
    /// D restricted to the osculating hyperplane.
    DoubleTangency,
}

/// Outcome of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandReport {
    pub command: String,
    pub fields: Vec<(String, String)>,
    pub verdicts: Vec<(String, bool)>,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            fields: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    fn verdict(&mut self, key: &str, ok: bool) -> &mut Self {
        self.verdicts.push((key.to_string(), ok));
        self
    }

    fn form(&mut self, prefix: &str, form: &DiffForm, names: &VarNames) -> &mut Self {
        for (k, v) in form.to_lines(names) {
            self.field(format!("{prefix}[{k}]"), v);
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().all(|(_, ok)| *ok) {
            0
        } else {
            4
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for (k, ok) in &self.verdicts {
            out.push_str(&format!("{k}: {}\n", if *ok { "pass" } else { "fail" }));
        }
        out.push_str(&format!(
            "status: {}\n",
            if self.exit_code() == 0 { "ok" } else { "fail" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let fields: serde_json::Map<String, serde_json::Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.clone().into()))
            .collect();
        let verdicts: serde_json::Map<String, serde_json::Value> = self
            .verdicts
            .iter()
            .map(|(k, v)| (k.clone(), (*v).into()))
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "fields": fields,
            "verdicts": verdicts,
            "exit_code": self.exit_code(),
        });
        format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("plain values")
        )
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::Certification { .. } => 4,
        _ => 3,
    }
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.into(),
    }
}

fn parse_rationals(text: &str) -> Result<Vec<BigRational>> {
    text.split(',')
        .map(|t| {
            BigRational::from_str(t.trim())
                .map_err(|_| parse_error(format!("not a rational: `{t}`")))
        })
        .collect()
}

fn parse_binary(arg: &FormArg) -> Result<BinaryForm> {
    if arg.form.contains('t') {
        return BinaryForm::parse(&arg.form);
    }
    let values = parse_rationals(&arg.form)?;
    if arg.monomial {
        BinaryForm::from_monomial_coeffs(values)
    } else {
        BinaryForm::from_coords(values)
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn rationals_text(v: &[BigRational]) -> String {
    join(v.iter().map(|q| Scalar::Rational(q.clone())))
}

fn names_for(vars: &Option<String>, arity: usize) -> Result<VarNames> {
    match vars {
        None => Ok(VarNames::indexed("x", arity)),
        Some(v) => {
            let names = VarNames::new(v.split(',').map(|s| s.trim().to_string()).collect());
            if names.len() != arity {
                return Err(Error::DimensionMismatch(format!(
                    "{} names for arity {arity}",
                    names.len()
                )));
            }
            Ok(names)
        }
    }
}

/// Parses polynomials in `x0..x{n−1}` (or the given names), inferring the
/// arity from the highest variable index used when not given.
fn parse_polys(
    texts: &[&str],
    arity: Option<usize>,
    vars: &Option<String>,
) -> Result<(Vec<MultiPoly>, VarNames)> {
    let arity = match (arity, vars) {
        (Some(a), _) => a,
        (None, Some(v)) => v.split(',').count(),
        (None, None) => {
            let wide = VarNames::indexed("x", 64);
            let mut top = 0;
            for t in texts {
                top = top.max(
                    parse_poly(t, &wide)?
                        .highest_variable()
                        .map_or(0, |i| i + 1),
                );
            }
            top.max(1)
        }
    };
    let names = names_for(vars, arity)?;
    let polys = texts
        .iter()
        .map(|t| parse_poly(t, &names))
        .collect::<Result<Vec<_>>>()?;
    Ok((polys, names))
}

fn read_form(path: &str) -> Result<(DiffForm, VarNames)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))?;
    let file = OneFormFile::from_toml(&text)?;
    Ok((file.to_form()?, file.names()))
}

fn write_form(
    path: &Option<String>,
    form: &DiffForm,
    names: &VarNames,
    report: &mut CommandReport,
) -> Result<()> {
    if let Some(path) = path {
        let text = OneFormFile::from_form(form, names)?.to_toml();
        fs::write(path, text)
            .map_err(|e| Error::Precondition(format!("cannot write {path}: {e}")))?;
        report.field("out", path);
    }
    Ok(())
}

fn form_summary(
    report: &mut CommandReport,
    key: &str,
    form: &DiffForm,
    names: &VarNames,
) -> Result<()> {
    report.field("arity", form.arity());
    report.field(
        "coefficient_degree",
        form.coefficient_degree()
            .map_or("-".into(), |d| d.to_string()),
    );
    report.form(key, form, names);
    report.verdict("descends", descends_check(form)?.ok);
    report.verdict("integrable", integrability_check(form)?.ok);
    Ok(())
}

fn binary_report(command: &str, form: &BinaryForm) -> Result<CommandReport> {
    let mut r = CommandReport::new(command);
    r.field("form", form);
    r.field("coords", rationals_text(form.coords()));
    r.field("monomial_coeffs", rationals_text(&form.monomial_coeffs()));
    let pattern = root_pattern(form);
    r.field("pattern", &pattern);
    if let Some(class) = pattern.orbit_class {
        r.field("orbit", class.label());
    }
    Ok(r)
}

fn run_command(cli: &Cli) -> Result<CommandReport> {
    match &cli.command {
        Command::Invariants(arg) => {
            let form = parse_binary(arg)?;
            let inv = invariants_qcd(&form)?;
            let mut r = binary_report("invariants", &form)?;
            r.field("Q", Scalar::Rational(inv.q.clone()));
            r.field("C", Scalar::Rational(inv.c.clone()));
            r.field("D", Scalar::Rational(inv.d()));
            r.field("j_raw", j_invariant(&form, JNormalization::Raw)?);
            r.field(
                "j_classical",
                j_invariant(&form, JNormalization::Classical)?,
            );
            r.field("j_prime", j_prime(&form)?);
            Ok(r)
        }
        Command::Classify(arg) => binary_report("classify", &parse_binary(arg)?),
        Command::Veronese { degree, point } => {
            let coords = point
                .split(':')
                .map(|t| {
                    BigRational::from_str(t.trim())
                        .map_err(|_| parse_error(format!("bad point `{point}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let [c, d]: [BigRational; 2] = coords
                .try_into()
                .map_err(|_| parse_error("a point of the line is `c:d`"))?;
            binary_report("veronese", &veronese(*degree, &[c, d])?)
        }
        Command::Build(build) => run_build(build),
        Command::Check { form } => {
            let (w, names) = read_form(form)?;
            let mut r = CommandReport::new("check");
            r.field("form", form);
            let descent = descends_check(&w)?;
            let integrability = integrability_check(&w)?;
            if !descent.ok {
                r.field(
                    "first_residual",
                    format!("i_R: {}", descent.residual.to_text(&names)),
                );
            } else if let Some((k, v)) = integrability.residual.to_lines(&names).into_iter().next()
            {
                r.field("first_residual", format!("{k}: {v}"));
            }
            r.verdict("descends", descent.ok);
            r.verdict("integrable", integrability.ok);
            Ok(r)
        }
        Command::Exceptional(e) => run_exceptional(e),
        Command::Probe {
            prime,
            target,
            witnesses,
        } => {
            let t = ProbeTarget::from_label(target).ok_or_else(|| {
                parse_error(format!(
                    "unknown target `{target}`; expected one of {}",
                    join(ProbeTarget::ALL.iter().map(|t| t.label()))
                ))
            })?;
            let rep = run_probe(t, *prime)?;
            let mut r = CommandReport::new("probe");
            r.field("target", t.label());
            r.field("prime", prime);
            r.field("zeros", rep.zeros.len());
            r.field("expected", rep.expected_count);
            r.field("vanishing_mod_p", rep.vanishing_mod_p);
            let listing = |s: &crate::probe::PointSet| {
                s.iter()
                    .take(*witnesses)
                    .map(|v| {
                        format!(
                            "[{}]",
                            v.iter().map(u64::to_string).collect::<Vec<_>>().join(":")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            if rep.zeros.len() <= *witnesses {
                r.field("points", listing(&rep.zeros));
            }
            if let Some(c) = &rep.comparison {
                r.field("reference", rep.reference_label());
                r.field("only_zeros", c.only_a.len());
                r.field("only_reference", c.only_b.len());
                if !c.equal {
                    r.field("only_zeros_witnesses", listing(&c.only_a));
                    r.field("only_reference_witnesses", listing(&c.only_b));
                }
                r.verdict("sets_equal", c.equal);
            }
            r.verdict(
                "count_matches",
                rep.zeros.len() as u64 == rep.expected_count,
            );
            r.field(
                "note",
                "set-level certificate; multiplicities are not probed",
            );
            Ok(r)
        }
        Command::Certify {
            seed,
            count,
            samples,
        } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut r = CommandReport::new("certify");
            r.field("seed", seed);
            for (label, kind) in [
                ("rational", RecipeKind::Rational),
                ("log", RecipeKind::Logarithmic),
                ("pullback", RecipeKind::Pullback),
            ] {
                let mut passed = 0;
                for _ in 0..*count {
                    if random_recipe(kind, &mut rng).build().is_ok() {
                        passed += 1;
                    }
                }
                r.field(format!("{label}_passed"), format!("{passed}/{count}"));
                r.verdict(&format!("{label}_constructors"), passed == *count);
            }
            let checked = crate::binary::certify_discriminant(*samples, 20, *seed)?;
            r.field("discriminant_samples", checked);
            r.field("resultant_over_d", crate::binary::RESULTANT_OVER_D);
            r.verdict("discriminant", checked == *samples);
            Ok(r)
        }
    }
}

fn emit_built(
    command: &str,
    form: &DiffForm,
    names: &VarNames,
    output: &Output,
) -> Result<CommandReport> {
    let mut r = CommandReport::new(command);
    write_form(&output.out, form, names, &mut r)?;
    form_summary(&mut r, "omega", form, names)?;
    Ok(r)
}

fn run_build(build: &Build) -> Result<CommandReport> {
    match build {
        Build::Rational {
            f1,
            f2,
            arity,
            output,
        } => {
            let (p, names) = parse_polys(&[f1, f2], *arity, &output.vars)?;
            emit_built(
                "build rational",
                &build_rational(&p[0], &p[1])?,
                &names,
                output,
            )
        }
        Build::Log {
            factors,
            weights,
            arity,
            output,
        } => {
            let texts: Vec<&str> = factors.split(';').map(str::trim).collect();
            let (p, names) = parse_polys(&texts, *arity, &output.vars)?;
            let w = parse_rationals(weights)?;
            emit_built("build log", &build_logarithmic(&p, &w)?, &names, output)
        }
        Build::Pullback {
            matrix,
            eta,
            output,
        } => {
            let rows = matrix
                .split(';')
                .map(|row| {
                    Ok(parse_rationals(row)?
                        .into_iter()
                        .map(Scalar::Rational)
                        .collect())
                })
                .collect::<Result<Vec<Vec<Scalar>>>>()?;
            let (eta, _) = read_form(eta)?;
            let cols = rows.first().map_or(0, Vec::len);
            let names = names_for(&output.vars, cols)?;
            emit_built(
                "build pullback",
                &build_linear_pullback(&rows, &eta)?,
                &names,
                output,
            )
        }
        Build::Random { kind, seed, output } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let kind = match kind {
                Kind::Rational => RecipeKind::Rational,
                Kind::Log => RecipeKind::Logarithmic,
                Kind::Pullback => RecipeKind::Pullback,
            };
            let form = random_recipe(kind, &mut rng).build()?;
            let names = names_for(&output.vars, form.arity())?;
            emit_built("build random", &form, &names, output)
        }
    }
}

fn run_exceptional(e: &Exceptional) -> Result<CommandReport> {
    let h_names = VarNames::indexed("a", 4);
    match e {
        Exceptional::Derive { out } => {
            let rep = derive_omega_bar()?;
            let mut r = CommandReport::new("exceptional derive");
            write_form(out, &rep.omega_bar, &h_names, &mut r)?;
            r.field("hyperplane", "a4 = 0");
            r.field("factor", rep.factor.to_text(&h_names));
            r.field("unit", &rep.unit);
            r.field("factor_degree", rep.factor_degree);
            form_summary(&mut r, "omega_bar", &rep.omega_bar, &h_names)?;
            r.verdict("saturated", saturate(&rep.omega_bar)?.factor.is_constant());
            Ok(r)
        }
        Exceptional::ExplicitForm { out } => {
            let w = explicit_omega_bar();
            let names = VarNames::indexed("x", 4);
            let mut r = CommandReport::new("exceptional paper-form");
            write_form(out, &w, &names, &mut r)?;
            form_summary(&mut r, "omega_bar", &w, &names)?;
            r.verdict("saturated", saturate(&w)?.factor.is_constant());
            Ok(r)
        }
        Exceptional::Fields { n } => {
            let f = affine_fields(*n)?;
            let names = VarNames::indexed("z", *n);
            let field_text = |v: &crate::exterior::PolyVectorField| {
                v.coefficients()
                    .iter()
                    .map(|c| c.to_text(&names))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let mut r = CommandReport::new("exceptional fields");
            r.field("X", field_text(&f.x));
            r.field("Y", field_text(&f.y));
            r.field("R", field_text(&f.r));
            r.verdict("bracket_XY_is_minus_Y", f.x.bracket(&f.y)? == f.y.neg());
            r.verdict("bracket_XR_is_zero", f.x.bracket(&f.r)?.is_zero());
            let w = contract_volume(&f.x, &f.y)?;
            form_summary(&mut r, "contraction", &w, &names)?;
            r.verdict("saturated", saturate(&w)?.factor.is_constant());
            for (label, v) in [("i_X", &f.x), ("i_Y", &f.y), ("i_R", &f.r)] {
                r.verdict(&format!("{label}_annihilates"), w.interior(v)?.is_zero());
            }
            Ok(r)
        }
        Exceptional::TangentDim { form, source } => {
            let (w, label) = match (form, source) {
                (Some(path), _) => (read_form(path)?.0, path.clone()),
                (None, Source::Explicit) => (explicit_omega_bar(), "explicit".to_string()),
                (None, Source::Derived) => (derive_omega_bar()?.omega_bar, "derived".to_string()),
                (None, Source::Contraction) => {
                    let f = affine_fields(4)?;
                    (contract_volume(&f.x, &f.y)?, "contraction".to_string())
                }
            };
            let t = tangent_system_dim(&w)?;
            let mut r = CommandReport::new("exceptional tangent-dim");
            r.field("form", label);
            r.field("equations", 259);
            r.field("unknowns", 80);
            r.field("ambient_dim", t.ambient_dim);
            r.field("raw_kernel_dim", t.raw_kernel_dim);
            r.field("projective_dim", t.projective_dim);
            r.field("parametrized_kernel_dim", t.parametrized_kernel_dim);
            if t.raw_kernel_dim == 13 {
                r.field(
                    "discrepancy",
                    "raw kernel is 13; the projective count is 12",
                );
            }
            r.verdict("contains_omega_bar", t.contains_omega_bar);
            r.verdict(
                "routes_agree",
                t.parametrized_kernel_dim == t.raw_kernel_dim,
            );
            r.verdict("projective_dim_13", t.projective_dim == 13);
            Ok(r)
        }
        Exceptional::DoubleTangency => {
            let t = check_double_tangency()?;
            let mut r = CommandReport::new("exceptional double-tangency");
            r.field(
                "identity",
                "D(a0,a1,a2,a3,0) = c * a3^2 * disc(a0, 4a1, 6a2, 4a3)",
            );
            r.field("constant", Scalar::Rational(t.constant.clone()));
            r.verdict("multiplicity_exactly_two", t.multiplicity_exactly_two);
            r.verdict("identity_holds", t.ok);
            Ok(r)
        }
    }
}

/// Runs one command line; returns the text for stdout, the text for
/// stderr, and the exit code.
pub fn run<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                (e.to_string(), String::new(), 0)
            } else {
                (String::new(), e.to_string(), 2)
            };
        }
    };
    match run_command(&cli) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            (text, String::new(), report.exit_code())
        }
        Err(err) => (
            String::new(),
            format!("error: {err}\n"),
            exit_code_for(&err),
        ),
    }
}
