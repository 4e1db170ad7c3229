//! Command-line front end for the `maxker` binary.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{self, chains, tables, DegreeN2Seed};
use crate::gf::{Elem, FieldCtx, FieldSpec};
use crate::linpoly::{LinearizedPoly, SubspaceBasis};
use crate::maxkernel::{self, Method, DEFAULT_ORDER_CAP};
use crate::mrd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "maxker", version, about = "Maximum-kernel linearized polynomials over finite fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArg {
    /// Field spec p^e^n[/modulus], e.g. 2^1^4/19.
    #[arg(long)]
    pub field: String,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[command(flatten)]
    pub field: FieldArg,
    /// Polynomial spec s=<int>;a=[a_0,...,a_k].
    #[arg(long)]
    pub poly: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field parameters, modulus and F_q-basis.
    FieldInfo(FieldArg),
    /// Evaluate a polynomial at field elements.
    Eval {
        #[command(flatten)]
        poly: PolyArgs,
        /// Element encodings, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
    /// Kernel dimension and an F_q-basis of the kernel.
    Kernel(PolyArgs),
    /// Decide whether the kernel dimension equals the σ-degree.
    CheckMax {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value = "matrix")]
        method: String,
        /// Also report the splitting-field degree, iterating up to this cap.
        #[arg(long)]
        order_cap: Option<u64>,
    },
    /// Splitting-field degree m = ord(A A^σ ... A^{σ^{n-1}}).
    SplittingField {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: u64,
        /// Count roots in F_{q^{nm}} directly when that field is small enough.
        #[arg(long)]
        verify: bool,
    },
    /// Adjoint with respect to the trace form.
    Adjoint(PolyArgs),
    /// Monic q^s-polynomial whose kernel is the span of the given elements.
    Annihilator {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_delimiter = ',', required = true)]
        elems: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        s: i64,
    },
    /// List all monic maximum-kernel polynomials of σ-degree k.
    Enumerate(EnumerateArgs),
    /// Compare a condition table with the enumerated maximum-kernel sets.
    VerifyTable(VerifyTableArgs),
    /// Build a σ-degree n-2 polynomial from (a_0, a_{n-3}).
    DeriveN2 {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[arg(long)]
        a0: u64,
        /// The coefficient a_{n-3}.
        #[arg(long)]
        atop: u64,
    },
    /// Exhaustive MRD check of a generalized Gabidulin code.
    MrdVerify(MrdArgs),
    /// Compare q^s- and q^t-polynomials with coefficients in F_{q^m}.
    TransferCheck {
        /// The field F_{q^{nm}}.
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        t: i64,
        /// Lower coefficients a_0..a_{k-1}, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "k")]
        coeffs: Option<Vec<u64>>,
        /// Sweep every tuple of σ-degree k with entries in F_{q^m}.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Grouped form of `enumerate` and `verify-table`.
    Families {
        #[command(subcommand)]
        command: FamiliesCommand,
    },
    /// Grouped form of `mrd-verify`.
    Mrd {
        #[command(subcommand)]
        command: MrdCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamiliesCommand {
    Enumerate(EnumerateArgs),
    VerifyTable(VerifyTableArgs),
}

#[derive(Subcommand, Debug)]
pub enum MrdCommand {
    Verify(MrdArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub field: FieldArg,
    #[arg(long, default_value_t = 1)]
    pub s: i64,
    #[arg(long)]
    pub k: usize,
    /// Sweep every tuple, or the (a_0, a_{n-3}) seeds (k = n-2 only).
    #[arg(long, default_value = "exhaustive")]
    pub strategy: String,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyTableArgs {
    /// Table index: 1 (n = 4), 2 (n = 5) or 3 (n = 6).
    #[arg(long)]
    pub table: u8,
    /// Base field size q = p^e.
    #[arg(long)]
    pub q: u32,
    /// Restrict to one s (default: every s the table covers).
    #[arg(long)]
    pub s: Option<u32>,
    /// Restrict to these σ-degrees.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    /// Also check the reduction chains for the table's n.
    #[arg(long)]
    pub reductions: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MrdArgs {
    #[command(flatten)]
    pub field: FieldArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub s: i64,
}

/// Parses `argv` (including the program name), runs the command and writes its
/// output. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(value) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable")),
                Format::Text => write!(out, "{}", render_text(&value)),
            };
            0
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let body = json!({ "error": { "code": e.code(), "message": e.to_string() } });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                Format::Text => {
                    let _ = writeln!(err, "error[{}]: {}", e.code(), e);
                }
            }
            1
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn render_text(value: &Value) -> String {
    let mut s = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::String(t) => s.push_str(&format!("{k}: {t}\n")),
                    other => s.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        other => s.push_str(&format!("{other}\n")),
    }
    s
}

fn field(arg: &FieldArg) -> Result<Arc<FieldCtx>> {
    Ok(Arc::new(arg.field.parse::<FieldSpec>()?.build()?))
}

fn poly(args: &PolyArgs) -> Result<LinearizedPoly> {
    let ctx = field(&args.field)?;
    LinearizedPoly::parse(&ctx, &args.poly)
}

fn elems(ctx: &FieldCtx, values: &[u64]) -> Result<Vec<Elem>> {
    values.iter().map(|&v| ctx.elem(v)).collect()
}

fn values(zs: &[Elem]) -> Vec<u32> {
    zs.iter().map(|z| z.value()).collect()
}

/// Field F_q for a prime power q = p^e.
fn base_field(q: u32, n: u32) -> Result<Arc<FieldCtx>> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q as u64))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    Ok(Arc::new(FieldCtx::new(p, e, n, None)?))
}

fn execute(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::FieldInfo(arg) => {
            let ctx = field(arg)?;
            Ok(json!({
                "field": ctx.spec_string(),
                "p": ctx.p(),
                "e": ctx.e(),
                "n": ctx.n(),
                "q": ctx.q(),
                "order": ctx.order(),
                "modulus": ctx.modulus(),
                "modulus_code": ctx.modulus_code(),
                "primitive": ctx.primitive(),
                "gamma": ctx.gamma(),
                "basis": ctx.basis(),
            }))
        }
        Command::Eval { poly: p, x } => {
            let f = poly(p)?;
            let xs = elems(f.ctx(), x)?;
            let ys: Vec<Elem> = xs.iter().map(|&z| f.evaluate(z)).collect();
            Ok(json!({ "poly": f.to_string(), "x": xs, "value": ys }))
        }
        Command::Kernel(p) => {
            let f = poly(p)?;
            let basis = f.kernel_basis();
            Ok(json!({
                "poly": f.to_string(),
                "kernel_dim": basis.dim(),
                "rank": f.rank(),
                "sigma_degree": f.sigma_degree(),
                "basis": basis.elems(),
            }))
        }
        Command::CheckMax { poly: p, method, order_cap } => {
            let f = poly(p)?;
            let method: Method = method.parse()?;
            Ok(to_value(&maxkernel::check_report(&f, method, *order_cap)?))
        }
        Command::SplittingField { poly: p, order_cap, verify } => {
            let f = poly(p)?;
            let d = maxkernel::splitting_field_degree(&f, *order_cap)?;
            let mut v = json!({
                "poly": f.to_string(),
                "m": d.m,
                "extension_degree": d.extension_degree,
                "splitting_field": format!("F_{{{}^{}}}", f.ctx().q(), f.ctx().n() as u64 * d.extension_degree),
                "extension_beyond_q_polynomials": d.extension_beyond_q_polynomials,
            });
            if *verify {
                let ctx = f.ctx();
                let big = FieldCtx::new(ctx.p(), ctx.e(), ctx.n() * d.extension_degree as u32, None)?;
                let roots = maxkernel::count_roots_in_extension(&f, &big)?;
                let k = f.sigma_degree().expect("nonzero");
                v["roots_in_splitting_field"] = json!(roots);
                v["expected_roots"] = json!((ctx.q() as u64).pow(f.s() * k as u32));
            }
            Ok(v)
        }
        Command::Adjoint(p) => {
            let f = poly(p)?;
            let g = f.adjoint();
            Ok(json!({
                "poly": f.to_string(),
                "adjoint": g.to_string(),
                "kernel_dim": f.kernel_dim(),
                "adjoint_kernel_dim": g.kernel_dim(),
            }))
        }
        Command::Annihilator { field: arg, elems: es, s } => {
            let ctx = field(arg)?;
            let basis = SubspaceBasis::new(&ctx, elems(&ctx, es)?)?;
            let f = basis.annihilator()?.with_s(*s)?;
            Ok(json!({ "poly": f.to_string(), "kernel_dim": f.kernel_dim(), "sigma_degree": f.sigma_degree() }))
        }
        Command::Enumerate(a) | Command::Families { command: FamiliesCommand::Enumerate(a) } => enumerate(a),
        Command::VerifyTable(a) | Command::Families { command: FamiliesCommand::VerifyTable(a) } => verify_table(a),
        Command::DeriveN2 { field: arg, s, a0, atop } => {
            let ctx = field(arg)?;
            let seed = DegreeN2Seed { ctx: Arc::clone(&ctx), s: *s, a0: ctx.elem(*a0)?, a_top: ctx.elem(*atop)? };
            let (f, closes) = families::derive_degree_n_minus_2(&seed)?;
            Ok(json!({ "poly": f.to_string(), "closing_conditions": closes, "kernel_dim": f.kernel_dim() }))
        }
        Command::MrdVerify(a) | Command::Mrd { command: MrdCommand::Verify(a) } => {
            let ctx = field(&a.field)?;
            let code = mrd::gabidulin_code(&ctx, a.k, a.s)?;
            Ok(to_value(&mrd::verify_mrd(&code, families::budget_from_env())?))
        }
        Command::TransferCheck { field: arg, m, s, t, coeffs, k } => {
            let ctx = field(arg)?;
            match (coeffs, k) {
                (Some(c), _) => {
                    let lower = elems(&ctx, c)?;
                    let out = maxkernel::transfer_check(&ctx, *m, &lower, *s, *t)?;
                    Ok(json!({ "coeffs": values(&lower), "outcome": out }))
                }
                (None, Some(k)) => {
                    let sub = ctx.subfield_elements(*m)?;
                    let total = (sub.len() as u128).checked_pow(*k as u32).unwrap_or(u128::MAX);
                    let budget = families::budget_from_env();
                    if total > budget {
                        return Err(Error::BudgetExceeded { needed: total, budget });
                    }
                    let mut checked = 0u64;
                    let mut agree = 0u64;
                    let mut max_kernel = 0u64;
                    let mut idx = vec![0usize; *k];
                    loop {
                        let lower: Vec<Elem> = idx.iter().map(|&i| sub[i]).collect();
                        let out = maxkernel::transfer_check(&ctx, *m, &lower, *s, *t)?;
                        checked += 1;
                        agree += out.agree as u64;
                        max_kernel += out.f_max_kernel as u64;
                        let mut j = *k;
                        let done = loop {
                            if j == 0 {
                                break true;
                            }
                            j -= 1;
                            idx[j] += 1;
                            if idx[j] < sub.len() {
                                break false;
                            }
                            idx[j] = 0;
                        };
                        if done {
                            break;
                        }
                    }
                    Ok(json!({ "checked": checked, "agree": agree, "max_kernel": max_kernel, "all_agree": agree == checked }))
                }
                (None, None) => Err(Error::Precondition("pass --coeffs or --k".into())),
            }
        }
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<Value> {
    let ctx = field(&a.field)?;
    let found = match a.strategy.as_str() {
        "exhaustive" => families::enumerate_max_kernel(&ctx, a.s, a.k, families::budget_from_env())?,
        "seeds" => {
            if a.k + 2 != ctx.n() as usize {
                return Err(Error::Precondition("seed enumeration needs k = n-2".into()));
            }
            families::enumerate_degree_n_minus_2(&ctx, a.s)?
        }
        other => return Err(Error::Precondition(format!("unknown strategy {other:?}"))),
    };
    let gauss = families::gaussian_binomial(ctx.n(), a.k as u32, ctx.q() as u64);
    Ok(json!({
        "field": ctx.spec_string(),
        "s": a.s,
        "k": a.k,
        "count": found.len(),
        "gaussian_binomial": gauss,
        "polys": found.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    }))
}

fn verify_table(a: &VerifyTableArgs) -> Result<Value> {
    let n = tables::table_n(a.table)?;
    let ctx = base_field(a.q, n)?;
    let s_values: Vec<u32> = match a.s {
        Some(s) => vec![s],
        None => tables::table_s_values(a.table)?.to_vec(),
    };
    let budget = families::budget_from_env();
    let mut reports = Vec::new();
    for &s in &s_values {
        reports.push(tables::verify_table(&ctx, a.table, s, a.k.as_deref(), budget)?);
    }
    let mut value = json!({
        "table": a.table,
        "field": ctx.spec_string(),
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports,
    });
    if a.reductions {
        let mut reds = Vec::new();
        for red in chains::reductions().into_iter().filter(|r| r.n == n) {
            for &s in red.s_values.iter().filter(|&&s| s_values.contains(&(s as u32))) {
                reds.push(chains::check_reduction(&ctx, &red, s, budget)?);
            }
        }
        let all = reds.iter().all(|r| r.equivalent);
        value["reductions"] = to_value(&reds);
        value["pass"] = json!(value["pass"].as_bool().unwrap_or(false) && all);
    }
    Ok(value)
}
