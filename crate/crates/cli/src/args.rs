use std::path::PathBuf;

use adams_core::ring::parse_rational;
use adams_core::{Integer, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "adams-spectra",
    version,
    about = "Exact spectra of Adams operators on graded connected Hopf algebras"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn integer_arg(s: &str) -> Result<Integer, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

/// Comma list that may be empty, unlike `value_delimiter` lists.
fn integer_list_arg(s: &str) -> Result<Vec<Integer>, String> {
    split_list(s).map(integer_arg).collect()
}

fn rational_list_arg(s: &str) -> Result<Vec<Rational>, String> {
    split_list(s).map(rational_arg).collect()
}

/// `symbolic` or a rational value for q.
#[derive(Debug, Clone, PartialEq)]
pub enum QValue {
    Symbolic,
    Value(Rational),
}

fn q_arg(s: &str) -> Result<QValue, String> {
    if s == "symbolic" {
        Ok(QValue::Symbolic)
    } else {
        rational_arg(s).map(QValue::Value)
    }
}

/// Where a dimension profile comes from: exactly one source.
#[derive(Debug, Clone, Default, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct ProfileSourceArgs {
    /// Named profile: sym, schur_p, qsym, ssym, peak, geometric:<r>, fibonacci.
    #[arg(long)]
    pub preset: Option<String>,
    /// Dimensions h_0 = 1, h_1, ..., h_M.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub h: Option<Vec<Integer>>,
    /// Primitive-type counts g_1, ..., g_M (Euler transform input).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub g: Option<Vec<Integer>>,
    /// Alphabet sizes v_1, ..., v_M (v_n letters of weight n).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub v: Option<Vec<Integer>>,
    /// Rational generating function as "numerator;denominator" coefficient lists,
    /// e.g. "1,0,-1;1,-1,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub rational: Option<String>,
    /// JSON file holding exactly one of {"h": [...]}, {"g": [...]}, {"v": [...]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub source: ProfileSourceArgs,
    /// Evaluate the formulas even when some g_i is negative.
    #[arg(long)]
    pub force_nonrealizable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EulerDirection {
    /// g ↦ h.
    Forward,
    /// h ↦ g.
    Invert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceRouteArg {
    /// Σ_k n^k mul(k, m).
    Formula,
    /// Coefficients of Π (1 - n t^i)^{-g_i}.
    Gf,
    /// h(t²)/h(t); only for n = -1.
    Antipode,
    /// Alternating palindrome counts; only for n = -1 and an alphabet.
    Palindromes,
    /// Every route that applies, checked against each other.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Identities,
    Qidentities,
    Species,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    H,
    G,
    V,
    /// Antipode traces trace(S | H_m).
    Trace,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler transform g ↦ h or its inverse h ↦ g.
    Euler {
        #[arg(value_enum)]
        direction: EulerDirection,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
        h: Option<Vec<Integer>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
        g: Option<Vec<Integer>>,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
        #[arg(long)]
        force_nonrealizable: bool,
    },
    /// Characteristic polynomial of Ψ_n on H_m.
    Charpoly {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value = "-1", allow_hyphen_values = true, value_parser = rational_arg)]
        n: Rational,
        /// Degree.
        #[arg(long, visible_alias = "degree")]
        m: usize,
        /// Read n as an integer power S^n under composition instead of convolution.
        #[arg(long)]
        composition: bool,
    },
    /// Traces of Ψ_n on H_0, ..., H_M.
    Trace {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value = "-1", allow_hyphen_values = true, value_parser = rational_arg)]
        n: Rational,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = TraceRouteArg::Formula)]
        route: TraceRouteArg,
    },
    /// Trace generating function, with the rational closed form for the antipode.
    Tracegf {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value = "-1", allow_hyphen_values = true, value_parser = rational_arg)]
        n: Rational,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
    },
    /// Palindrome table pal(k, m) and the cofree antipode spectrum.
    Palindromes {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
    },
    /// q-deformed antipode traces and characteristic polynomials.
    Qtrace {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
        /// "symbolic" or a rational value.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true, value_parser = q_arg)]
        q: QValue,
        /// Also report the factored characteristic polynomial per degree.
        #[arg(long)]
        charpoly: bool,
    },
    /// Lyndon word counts by Witt's formula, against the inverse Euler transform.
    Witt {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
    },
    /// Hopf monoid (species) dimension data and antipode traces.
    Species {
        #[command(flatten)]
        source: SpeciesSourceArgs,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
        /// Also factor the characteristic polynomial of Ψ_n on H[m] for each m.
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        n: Option<Rational>,
    },
    /// Asymptotic ratio trace(S|H_m) / h_m for a rational profile.
    Asym {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Degrees at which to compare prediction and exact ratio.
        #[arg(long, value_delimiter = ',', default_value = "20,40,80")]
        at: Vec<usize>,
        #[arg(long, default_value_t = 128)]
        precision_bits: usize,
        #[arg(long, default_value = "1/100000000000000000000", value_parser = rational_arg)]
        tolerance: Rational,
    },
    /// Run a verification suite; exits 1 when any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "max-degree", visible_alias = "m")]
        max_degree: Option<usize>,
        /// Alphabet for the oracle suite; an empty list is allowed.
        #[arg(long, value_parser = integer_list_arg)]
        alphabet: Option<::std::vec::Vec<Integer>>,
        /// Values of n for the oracle suite; an empty list checks nothing.
        #[arg(long, allow_hyphen_values = true, value_parser = rational_list_arg)]
        n: Option<::std::vec::Vec<Rational>>,
    },
    /// Compare computed values with an OEIS sequence (offline-first cache).
    Oeis {
        /// Sequence id such as A003319.
        id: String,
        #[command(flatten)]
        values: OeisValuesArgs,
        #[arg(long, value_enum, default_value_t = Quantity::H)]
        quantity: Quantity,
        #[arg(long = "max-degree", visible_alias = "m", default_value_t = 10)]
        max_degree: usize,
        /// OEIS index of the first computed value; searched over 0..=3 when absent.
        #[arg(long)]
        start: Option<i64>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        allow_network: bool,
    },
}

#[derive(Debug, Clone, Default, Args)]
#[group(id = "species_source", required = true, multiple = false)]
pub struct SpeciesSourceArgs {
    /// Sigma, Pi, L or E.
    #[arg(long)]
    pub preset: Option<String>,
    /// dim H[m] for m = 0..M.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub h: Option<Vec<Integer>>,
    /// dim P[m] for m = 0..M (p_0 = 0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub p: Option<Vec<Integer>>,
    /// dim P[m] of a positive species P; the profile is L∘P.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub linear_orders: Option<Vec<Integer>>,
}

#[derive(Debug, Clone, Default, Args)]
#[group(id = "oeis_values", required = true, multiple = false)]
pub struct OeisValuesArgs {
    /// Explicit values to compare.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub values: Option<Vec<Integer>>,
    /// Profile preset whose --quantity is compared.
    #[arg(long)]
    pub preset: Option<String>,
    /// Dimensions h whose --quantity is compared.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = integer_arg)]
    pub h: Option<Vec<Integer>>,
}
