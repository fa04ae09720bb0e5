//! Command-line front end for `flagcoh-core`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns the
//! rendered output together with the exit status: 0 on success, 2 on usage or
//! parameter errors, 3 when a conjectural product had to fall back to the
//! oracle (the result is still printed), 1 on any other failure.

pub mod bench;
pub mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagcoh_core::divided::{DividedEngine, DividedMethod, DividedQuery};
use flagcoh_core::hanmonsky::{jordan_type, HMMethod, HanMonsky};
use flagcoh_core::incidence::{incidence_cohomology, IncidenceQuery};
use flagcoh_core::lefschetz::{
    has_slp_ci, has_wlp_ci, has_wlp_gorenstein_with, has_wlp_monomial, monomial_cis_without_wlp, sperner_number,
    Apolarity, SlpMethod, WlpMethod,
};
use flagcoh_core::splitting::{
    forget_equivariance, splitting_fdr_with, splitting_pparts_with, EquivariantSplitting, SplittingMethod,
};
use flagcoh_core::{CharacterPoly, Error};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub use bench::{BenchParams, BenchReport, Scenario};
pub use parse::{parse_dual_generator, parse_monomial_ideal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FALLBACK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "flagcoh", version, about = "Exact cohomology characters, splitting types, Han-Monsky products and Lefschetz tests")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// h^i(P^{n-1}, D^d R(e)) for i in {0, 1}.
    Divided(DividedArgs),
    /// h^i(X, O_X(a, b)) on the incidence correspondence in P^{n-1} x P^{n-1}.
    Incidence(IncidenceArgs),
    /// Splitting types on the projective line.
    #[command(subcommand)]
    Splitting(SplittingCommand),
    /// Product of delta_{a_1} ... delta_{a_n} in the graded Han-Monsky ring.
    Hanmonsky(HanMonskyArgs),
    /// Weak Lefschetz property of k[T]/(T_1^{a_1}, ..., T_n^{a_n}).
    HasWlp(WlpArgs),
    /// Strong Lefschetz property of k[T]/(T_1^{a_1}, ..., T_n^{a_n}).
    HasSlp(SlpArgs),
    /// Jordan type of T_1 + ... + T_n on a monomial complete intersection.
    JordanType(CiArgs),
    /// Largest value of the Hilbert function of a monomial complete intersection.
    SpernerNumber(SpernerArgs),
    /// Monomial complete intersections with n variables and socle degree s failing WLP.
    MonomialCisWithoutWlp(SearchArgs),
    /// WLP of the quotient by a monomial ideal.
    HasWlpMonomial(MonomialArgs),
    /// WLP of the Gorenstein algebra with a given dual socle generator.
    HasWlpGorenstein(GorensteinArgs),
    /// Time a fast method against an independent one.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum DividedMethodArg {
    Recursive,
    Nim,
    Oracle,
}

#[derive(Args, Debug)]
pub struct DividedArgs {
    #[arg(long)]
    pub i: u8,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub e: i64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "recursive")]
    pub method: DividedMethodArg,
    /// Print the character instead of the dimension.
    #[arg(long)]
    pub character: bool,
}

#[derive(Args, Debug)]
pub struct IncidenceArgs {
    #[arg(long)]
    pub i: i64,
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub character: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SplittingMethodArg {
    Interval,
    Peeling,
}

#[derive(Subcommand, Debug)]
pub enum SplittingCommand {
    /// The kernel bundle F^d_r of D^d U ⊗ O -> D^{d-r} U ⊗ O(r).
    Fdr {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        r: i64,
        /// List the torus-equivariant summands as (i, u, v).
        #[arg(long)]
        multidegree: bool,
        #[arg(long, value_enum, default_value = "interval")]
        method: SplittingMethodArg,
    },
    /// Principal parts P^k(O(m)).
    Pparts {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        multidegree: bool,
        #[arg(long, value_enum, default_value = "interval")]
        method: SplittingMethodArg,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum HMMethodArg {
    Conjecture,
    Oracle,
}

impl From<HMMethodArg> for HMMethod {
    fn from(m: HMMethodArg) -> Self {
        match m {
            HMMethodArg::Conjecture => HMMethod::Conjecture,
            HMMethodArg::Oracle => HMMethod::Oracle,
        }
    }
}

#[derive(Args, Debug)]
pub struct HanMonskyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub lengths: Vec<u64>,
    #[arg(long, value_enum, default_value = "conjecture")]
    pub method: HMMethodArg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum WlpMethodArg {
    Summand,
    Sperner,
}

impl From<WlpMethodArg> for WlpMethod {
    fn from(m: WlpMethodArg) -> Self {
        match m {
            WlpMethodArg::Summand => WlpMethod::Summand,
            WlpMethodArg::Sperner => WlpMethod::Sperner,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SlpMethodArg {
    Summand,
    PartialProducts,
}

#[derive(Args, Debug)]
pub struct WlpArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
    #[arg(long, value_enum, default_value = "summand")]
    pub method: WlpMethodArg,
}

#[derive(Args, Debug)]
pub struct SlpArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
    #[arg(long, value_enum, default_value = "summand")]
    pub method: SlpMethodArg,
}

#[derive(Args, Debug)]
pub struct CiArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct SpernerArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: u64,
    #[arg(long, value_enum, default_value = "summand")]
    pub method: WlpMethodArg,
}

#[derive(Args, Debug)]
pub struct MonomialArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated monomials, e.g. "x1^9, x2^9, x1^3*x2^3".
    #[arg(long)]
    pub generators: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ApolarityArg {
    Contraction,
    Differentiation,
}

#[derive(Args, Debug)]
pub struct GorensteinArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    /// Homogeneous form in x1..xn, e.g. "x1^4*x2*x3*x5 + x1^2*x2^2*x4*x5^2".
    #[arg(long, allow_hyphen_values = true)]
    pub dual: String,
    #[arg(long, value_enum, default_value = "contraction")]
    pub apolarity: ApolarityArg,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub scenario: Scenario,
    /// Runs per method; at least 3 are always made.
    #[arg(long, default_value_t = 3)]
    pub runs: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub i: Option<u8>,
    #[arg(long)]
    pub d: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<i64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<u64>>,
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::NotPrime(_)
        | Error::Parse { .. }
        | Error::Inhomogeneous(..)
        | Error::NotArtinian(_)
        | Error::VariableMismatch { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(core) => error_code(core),
                None => EXIT_FAILURE,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e:#}\n") }
        }
    }
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn render_character(c: &CharacterPoly, character: bool, as_json: bool) -> String {
    match (character, as_json) {
        (true, true) => c.to_json().to_string(),
        (true, false) => c.to_text(),
        (false, true) => json!({ "dimension": big_to_json(&c.dimension()) }).to_string(),
        (false, false) => c.dimension().to_string(),
    }
}

fn brace_list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn render_splitting(s: &EquivariantSplitting, multidegree: bool, as_json: bool) -> String {
    match (multidegree, as_json) {
        (true, true) => json!({ "summands": s.summands() }).to_string(),
        (true, false) => brace_list(s.summands().iter().map(|x| format!("{{{}, {}, {}}}", x.i, x.u, x.v))),
        (false, true) => json!({ "degrees": forget_equivariance(s) }).to_string(),
        (false, false) => brace_list(forget_equivariance(s)),
    }
}

fn render_bool(b: bool, as_json: bool) -> String {
    if as_json {
        json!({ "result": b }).to_string()
    } else {
        b.to_string()
    }
}

fn splitting_method(m: SplittingMethodArg) -> SplittingMethod {
    match m {
        SplittingMethodArg::Interval => SplittingMethod::Interval,
        SplittingMethodArg::Peeling => SplittingMethod::Peeling,
    }
}

fn fallback_outcome(stdout: String, engine: &HanMonsky) -> Outcome {
    let fallbacks = engine.fallbacks();
    if fallbacks.is_empty() {
        return Outcome::ok(stdout);
    }
    let stderr = fallbacks
        .iter()
        .map(|f| format!("warning: used the oracle for δ_{}·δ_{}: {}\n", f.a, f.b, f.error))
        .collect();
    Outcome { code: EXIT_FALLBACK, stdout, stderr }
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let js = cli.json;
    let line = |s: String| Ok(Outcome::ok(s + "\n"));
    match &cli.command {
        Command::Divided(a) => {
            let method = match a.method {
                DividedMethodArg::Recursive => DividedMethod::Recursive,
                DividedMethodArg::Nim => DividedMethod::Nim,
                DividedMethodArg::Oracle => DividedMethod::Oracle,
            };
            let q = DividedQuery::new(a.i, a.p, a.d, a.e, a.n)?;
            let c = DividedEngine::new().compute(q, method)?;
            line(render_character(&c, a.character, js))
        }
        Command::Incidence(a) => {
            let c = incidence_cohomology(IncidenceQuery::new(a.i, a.p, a.a, a.b, a.n)?)?;
            line(render_character(&c, a.character, js))
        }
        Command::Splitting(SplittingCommand::Fdr { p, d, r, multidegree, method }) => {
            let s = splitting_fdr_with(*p, *d, *r, splitting_method(*method))?;
            line(render_splitting(&s, *multidegree, js))
        }
        Command::Splitting(SplittingCommand::Pparts { p, m, k, multidegree, method }) => {
            let s = splitting_pparts_with(*p, *m, *k, splitting_method(*method))?;
            line(render_splitting(&s, *multidegree, js))
        }
        Command::Hanmonsky(a) => {
            let engine = HanMonsky::new(a.p)?;
            let x = engine.product(&a.lengths, a.method.into())?;
            let text = if js { x.to_json() } else { x.to_string() };
            Ok(fallback_outcome(text + "\n", &engine))
        }
        Command::HasWlp(a) => line(render_bool(has_wlp_ci(a.p, &a.exponents, a.method.into())?, js)),
        Command::HasSlp(a) => {
            let method = match a.method {
                SlpMethodArg::Summand => SlpMethod::Summand,
                SlpMethodArg::PartialProducts => SlpMethod::PartialProducts,
            };
            line(render_bool(has_slp_ci(a.p, &a.exponents, method)?, js))
        }
        Command::JordanType(a) => {
            let engine = HanMonsky::new(a.p)?;
            let ci = flagcoh_core::lefschetz::MonomialCI::new(&a.exponents)?;
            let parts = jordan_type(&engine.product(ci.exponents(), HMMethod::Conjecture)?);
            let text = if js { json!({ "parts": parts }).to_string() } else { brace_list(&parts) };
            Ok(fallback_outcome(text + "\n", &engine))
        }
        Command::SpernerNumber(a) => {
            flagcoh_core::lefschetz::MonomialCI::new(&a.exponents)?;
            let n = sperner_number(&a.exponents);
            line(if js { json!({ "sperner_number": n }).to_string() } else { n.to_string() })
        }
        Command::MonomialCisWithoutWlp(a) => {
            let found = monomial_cis_without_wlp(a.p, a.n, a.s, a.method.into())?;
            line(if js {
                json!({ "tuples": found }).to_string()
            } else {
                brace_list(found.iter().map(|t| brace_list(t)))
            })
        }
        Command::HasWlpMonomial(a) => {
            let ideal = parse_monomial_ideal(&a.generators, a.n)?;
            line(render_bool(has_wlp_monomial(a.p, &ideal)?, js))
        }
        Command::HasWlpGorenstein(a) => {
            let f = parse_dual_generator(&a.dual, a.n)?;
            let apolarity = match a.apolarity {
                ApolarityArg::Contraction => Apolarity::Contraction,
                ApolarityArg::Differentiation => Apolarity::Differentiation,
            };
            let verdict = has_wlp_gorenstein_with(a.p, &f, apolarity)?;
            let mut out = Outcome::ok(render_bool(verdict, js) + "\n");
            if a.p != 0 {
                out.stderr = format!(
                    "note: the verdict is for the linear form x1+...+x{} over F_{}; a general linear form over an extension field may behave differently\n",
                    a.n, a.p
                );
            }
            Ok(out)
        }
        Command::Bench(a) => {
            let params = BenchParams {
                p: a.p,
                i: a.i,
                d: a.d,
                e: a.e,
                n: a.n,
                r: a.r,
                s: a.s,
                lengths: a.lengths.clone(),
            };
            let report = bench::bench(a.scenario, &params, a.runs)?;
            let mut out = Outcome::ok(if js { report.to_json().to_string() } else { report.to_text() } + "\n");
            if !report.fast_is_faster() {
                out.stderr = format!("warning: {} was not faster than {}\n", report.fast_label, report.slow_label);
            }
            Ok(out)
        }
    }
}
