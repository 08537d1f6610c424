use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "asymlog", version, about = "Euler-Maclaurin expansions of logarithmic sums and their constants")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for grid commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bernoulli number B_n (B_1 = -1/2).
    Bernoulli(BernoulliArgs),
    /// Generalized harmonic number H_n^(i).
    Harmonic(HarmonicArgs),
    /// S_{r,s,t}, or the unsigned Stirling number [n,k] with --n/--k.
    Stirling(StirlingArgs),
    /// Entry c_{j,i} of the c-table.
    Ctable(CtableArgs),
    /// Asymptotic expansion of a family in JSON shape.
    Expansion(ExpansionArgs),
    /// Direct partial sum of a family.
    DirectSum(DirectSumArgs),
    /// zeta^{(p)}(a) by constant extraction.
    ZetaDeriv(ZetaDerivArgs),
    /// Stieltjes constant gamma_p.
    Stieltjes(StieltjesArgs),
    /// Generalized Glaisher constant of sum k^q log k.
    Glaisher(GlaisherArgs),
    /// The constant C_{p,q} of sum 1/(k^q (log k)^p).
    Cpq(CpqArgs),
    /// C_{p,q} for p = 1..6, q = 0..4.
    Table1(Table1Args),
    /// Richardson-type acceleration of a sequence read from CSV.
    Asympk(AsympkArgs),
    /// Polylogarithm Li_j(x).
    Polylog(PolylogArgs),
    /// Nielsen integral S_{k,p}(x).
    Nielsen(NielsenArgs),
    /// Exact identity suites, one JSON line per instance.
    Verify(VerifyArgs),
    /// Taylor coefficients of (z / -log(1-z))^k.
    Taylor(TaylorArgs),
    /// Norlund polynomial B_n^(order)(alpha).
    Norlund(NorlundArgs),
    /// The incomplete-gamma constants c_0..c_M.
    Bootstrap(BootstrapArgs),
    /// sum_{n>=2} (n log n)^{-s} and its limit identities.
    Metazeta(MetazetaArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct BernoulliArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct HarmonicArgs {
    #[arg(long)]
    pub n: u64,
    /// Order of the harmonic number.
    #[arg(long, default_value_t = 1)]
    pub i: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct StirlingArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long, conflicts_with_all = ["r", "t"])]
    pub n: Option<u64>,
    #[arg(long, requires = "n")]
    pub k: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct CtableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub j: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct ExpansionArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct DirectSumArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct ZetaDerivArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct StieltjesArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct GlaisherArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct CpqArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct Table1Args {
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
    /// Also fit C_{p,q} - 2^{-q}(log 2)^{-p} to two exponentials.
    #[arg(long)]
    pub fit: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct AsympkArgs {
    /// CSV file: one value per line, or index,value.
    #[arg(long)]
    pub input: String,
    #[arg(long, default_value_t = 4)]
    pub k: u32,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Recover the coefficient of n^{-j} instead of the limit.
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct PolylogArgs {
    #[arg(long)]
    pub j: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Evaluate through the Li_j(1-x) reflection.
    #[arg(long)]
    pub reflection: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct NielsenArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub max_p: Option<u64>,
    #[arg(long)]
    pub max_n: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct TaylorArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: u64,
    /// Exact rational coefficient (default when --asymp is absent).
    #[arg(long)]
    pub exact: bool,
    /// Asymptotic approximation with --terms terms.
    #[arg(long)]
    pub asymp: bool,
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct NorlundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub order: i64,
    /// Rational argument, e.g. 1/2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Args, Debug, Serialize)]
pub struct BootstrapArgs {
    #[arg(long, default_value_t = 4)]
    pub max_i: u32,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct MetazetaArgs {
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
    /// Limit identity instead of a value: zeta_gamma or metazeta_C11.
    #[arg(long, conflicts_with = "s")]
    pub limit: Option<String>,
}
