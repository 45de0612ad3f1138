//! Command-line front end. `run` is the whole program minus process exit, so
//! it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cantor::{
    build_cover, build_hulls, count_omega, intersect_spans, newhouse_dim_bound, sibling_checks, sum_image_check,
    thickness_star, thickness_star_by_level, Cover, CoverOptions, Span,
};
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::expansion::{expand, generalized_golden_ratio, is_univoque_point_with, Mode};
use crate::freqsets::{
    checkpoint_lengths, dim_lower_ir, dim_lower_sn, gamma, oscillation_evidence, sample_irregular,
    sample_simply_normal, sn_run_limit,
};
use crate::real::{decimal_string, ln_biguint, parse_rational, pow2, CertifiedReal};
use crate::solver::{bracket_floor, komornik_loreti_with, phi_inverse_in, solve_base_with, RunLimitedSet, SolveOptions};
use crate::symbolic::{Alphabet, PeriodicSeq};

#[derive(Parser, Debug)]
#[command(name = "univoque", version, about = "Expansions in non-integer bases and univoque bases")]
struct Cli {
    /// Settings file (TOML); missing file means defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for cover construction.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Precision budget in bits (overrides the settings file).
    #[arg(long, global = true)]
    max_bits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// run limit m + j
    Lemma,
    /// run limit 2^j
    Dyadic,
}

#[derive(Args, Debug, Clone)]
struct SetArgs {
    /// Rational x in D_M, e.g. 1/2.
    #[arg(long)]
    x: String,
    #[arg(long = "M", default_value_t = 1)]
    m: u32,
    #[arg(long)]
    j: usize,
    #[arg(long, value_enum, default_value_t = Kind::Lemma)]
    kind: Kind,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Greedy, quasi-greedy or lazy digits of x in base q.
    Expand {
        #[arg(long)]
        x: String,
        /// Base: a rational or one of phi, qg, kl.
        #[arg(long)]
        q: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value = "greedy")]
        mode: String,
    },
    /// Base q with ((s))_q = x for an eventually periodic s such as 1(10).
    SolveBase {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long)]
        lo: Option<String>,
        #[arg(long)]
        hi: Option<String>,
        #[arg(long)]
        tol: Option<String>,
        /// Also require s to be the quasi-greedy expansion in the solved base.
        #[arg(long)]
        quasi_greedy: bool,
    },
    /// Generalized golden ratio q_G(M).
    Qg {
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long)]
        tol: Option<String>,
    },
    /// Komornik–Loreti constant.
    Kl {
        #[arg(long, default_value = "1e-12")]
        tol: String,
    },
    /// Whether x has a unique expansion in base q (to depth n).
    Univoque {
        #[arg(long)]
        x: String,
        #[arg(long)]
        q: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Basic intervals and gaps of the run-limited set through a level.
    Cover {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        tol: Option<String>,
    },
    /// Hulls [α_j, β_j] with their ordering and bound checks.
    Hulls {
        #[arg(long)]
        x: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long)]
        jmin: Option<u32>,
        #[arg(long)]
        jmax: u32,
    },
    /// Levelwise thickness, ordered thickness and sibling bound checks.
    Thickness {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Symbolic dimension of the run-limited shift and the thickness bound.
    Dim {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Simply normal / irregular block constructions.
    Freq {
        #[command(subcommand)]
        cmd: FreqCmd,
    },
    /// Common intervals of the covers of several x.
    Intersect {
        /// Comma-separated rationals.
        #[arg(long)]
        xs: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Kind::Lemma)]
        kind: Kind,
    },
    /// Union of I + λJ over cover intervals, with holes above a resolution.
    Sumcheck {
        #[command(flatten)]
        set: SetArgs,
        /// Second x (defaults to x).
        #[arg(long)]
        x2: Option<String>,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1e-4")]
        resolution: String,
    },
    /// Two-column interval data for plotting.
    Plotdata {
        #[arg(long, value_enum, default_value_t = Series::Cover)]
        series: Series,
        #[arg(long)]
        x: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Kind::Lemma)]
        kind: Kind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Series {
    Cover,
    Hulls,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FreqKind {
    Sn,
    Ir,
}

#[derive(Subcommand, Debug)]
enum FreqCmd {
    /// A sampled prefix of the construction.
    Sample {
        #[arg(long, value_enum)]
        kind: FreqKind,
        #[arg(long)]
        x: String,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dimension lower bounds for j = 1..=jmax.
    Dim {
        #[arg(long, value_enum)]
        kind: FreqKind,
        /// Defaults to 1/(M+1).
        #[arg(long)]
        x: Option<String>,
        #[arg(long = "M", default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        jmax: usize,
    },
}

struct Ctx {
    settings: Settings,
    format: Format,
}

impl Ctx {
    fn cover_opts(&self) -> CoverOptions {
        CoverOptions { tol: None, enumeration_cap: self.settings.enumeration_cap, max_bits: self.settings.max_bits }
    }

    fn solve(&self) -> SolveOptions {
        SolveOptions { max_bits: self.settings.max_bits }
    }

    fn tol(&self, s: &Option<String>) -> Result<BigRational> {
        match s {
            Some(t) => parse_rational(t),
            None => Ok(pow2(-(self.settings.tol_bits as i64))),
        }
    }
}

fn rounded(r: &BigRational, digits: usize, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let s = r * BigRational::from_integer(scale.clone());
    let n = if up { s.ceil() } else { s.floor() }.to_integer();
    let (ip, fp) = n.abs().div_rem(&scale);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>digits$}", fp.to_string())
    }
}

/// `{lo, hi, decimal}` with `lo`/`hi` rounded outward.
pub fn triple(v: &CertifiedReal) -> Value {
    let w = v.width();
    let digits = if w.is_zero() {
        30
    } else {
        let bits = (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as f64;
        ((bits * std::f64::consts::LOG10_2) as usize).clamp(1, 60)
    };
    json!({
        "lo": rounded(v.lo(), digits + 2, false),
        "hi": rounded(v.hi(), digits + 2, true),
        "decimal": decimal_string(&v.midpoint(), digits),
    })
}

fn alphabet(m: u32) -> Result<Alphabet> {
    Alphabet::new(m)
}

/// A real argument: rational text or one of the named constants.
fn parse_real(s: &str, a: Alphabet, ctx: &Ctx) -> Result<CertifiedReal> {
    match s.trim() {
        "phi" => Ok(generalized_golden_ratio(Alphabet::new(1)?)),
        "qg" => Ok(generalized_golden_ratio(a)),
        "kl" => komornik_loreti_with(&pow2(-(ctx.settings.tol_bits as i64)), ctx.solve()),
        t => Ok(CertifiedReal::exact(parse_rational(t)?)),
    }
}

fn make_set(x: &BigRational, a: Alphabet, j: usize, kind: Kind) -> Result<RunLimitedSet> {
    match kind {
        Kind::Lemma => RunLimitedSet::lemma(x, a, j),
        Kind::Dyadic => RunLimitedSet::dyadic(x, a, u32::try_from(j).map_err(|_| Error::InvalidArgument("j too large".into()))?),
    }
}

fn set_from(args: &SetArgs) -> Result<RunLimitedSet> {
    make_set(&parse_rational(&args.x)?, alphabet(args.m)?, args.j, args.kind)
}

fn span_json(s: &Span) -> Value {
    json!([triple(&s.lo), triple(&s.hi)])
}

fn tau_json(c: &Cover) -> Result<(Value, Value)> {
    match thickness_star(c) {
        Ok(t) => {
            let nb = newhouse_dim_bound(t.lo())?;
            Ok((triple(&t), json!(nb)))
        }
        Err(Error::InvalidArgument(_)) => Ok((Value::Null, Value::Null)),
        Err(e) => Err(e),
    }
}

fn emit_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        writeln!(out, "{}", r.join(","))?;
    }
    Ok(())
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("output error: {e}"))
}

fn execute(cmd: Cmd, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    let mut emit = |v: Value| -> Result<()> { writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io) };
    match cmd {
        Cmd::Expand { x, q, m, n, mode } => {
            let a = alphabet(m)?;
            let mode: Mode = mode.parse()?;
            let xv = parse_real(&x, a, ctx)?;
            let qv = parse_real(&q, a, ctx)?;
            let p = expand(&xv, &qv, a, n, mode, ctx.settings.max_bits)?;
            let tail = CertifiedReal::enclosure(p.tail_lo.clone(), p.tail_hi.clone())?;
            emit(json!({"mode": mode, "digits": p.digits.to_string(), "tail": triple(&tail)}))
        }
        Cmd::SolveBase { seq, x, m, lo, hi, tol, quasi_greedy } => {
            let a = alphabet(m)?;
            let s = PeriodicSeq::parse(&seq, a)?;
            let xv = parse_rational(&x)?;
            let lo = lo.as_deref().map(parse_rational).transpose()?.unwrap_or_else(bracket_floor);
            let hi = hi.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| BigRational::from_integer(a.base().into()));
            let tol = ctx.tol(&tol)?;
            let q = if quasi_greedy {
                phi_inverse_in(&s, &xv, &lo, &hi, &tol, ctx.solve())?
            } else {
                solve_base_with(&s, &xv, &lo, &hi, &tol, ctx.solve())?
            };
            emit(json!({"seq": s.to_string(), "q": triple(&q)}))
        }
        Cmd::Qg { m, tol } => {
            let a = alphabet(m)?;
            let bits = crate::real::bits_for_tol(&ctx.tol(&tol)?)?;
            let g = generalized_golden_ratio(a).refine(bits + 4)?;
            emit(json!({"M": m, "q_G": triple(&g)}))
        }
        Cmd::Kl { tol } => {
            let q = komornik_loreti_with(&parse_rational(&tol)?, ctx.solve())?;
            emit(json!({"q_KL": triple(&q)}))
        }
        Cmd::Univoque { x, q, m, n } => {
            let a = alphabet(m)?;
            let st = is_univoque_point_with(&parse_real(&x, a, ctx)?, &parse_real(&q, a, ctx)?, a, n, ctx.settings.max_bits)?;
            emit(json!({"status": st, "depth": n}))
        }
        Cmd::Cover { set, level, tol } => {
            let s = set_from(&set)?;
            let mut opts = ctx.cover_opts();
            opts.tol = tol.as_deref().map(parse_rational).transpose()?;
            let c = build_cover(&s, level, &opts)?;
            let (tau, nb) = tau_json(&c)?;
            if ctx.format == Format::Csv {
                let rows: Vec<Vec<String>> = c
                    .intervals()
                    .iter()
                    .map(|iv| vec![iv.word.to_string(), decimal_string(iv.span.lo.lo(), 20), decimal_string(iv.span.hi.hi(), 20)])
                    .collect();
                return emit_csv(out, &["word", "lo", "hi"], &rows).map_err(io);
            }
            let intervals: Vec<Value> =
                c.intervals().iter().map(|iv| json!([triple(&iv.span.lo), triple(&iv.span.hi), iv.word.to_string()])).collect();
            let gaps: Vec<Value> =
                c.gaps().iter().map(|g| json!([triple(&g.span.lo), triple(&g.span.hi), g.word.to_string()])).collect();
            emit(json!({
                "run_limit": s.run_limit(),
                "level": level,
                "intervals": intervals,
                "gaps": gaps,
                "thickness_star": tau,
                "newhouse_bound": nb,
            }))
        }
        Cmd::Hulls { x, m, jmin, jmax } => {
            let a = alphabet(m)?;
            let xv = parse_rational(&x)?;
            let jmin = match jmin {
                Some(j) => j,
                None => {
                    let mm = RunLimitedSet::new(&xv, a, 2)?.dm().m();
                    (0..31).find(|&j| (1usize << j) > mm).unwrap()
                }
            };
            let h = build_hulls(&xv, a, jmin, jmax, &ctx.cover_opts())?;
            if ctx.format == Format::Csv {
                let rows: Vec<Vec<String>> = h
                    .entries
                    .iter()
                    .zip(&h.checks)
                    .map(|(e, c)| {
                        vec![
                            e.j.to_string(),
                            decimal_string(&e.alpha.midpoint(), 20),
                            decimal_string(&e.beta.midpoint(), 20),
                            c.upper.to_string(),
                            c.lower_1.to_string(),
                            c.lower_2.to_string(),
                        ]
                    })
                    .collect();
                return emit_csv(out, &["j", "alpha", "beta", "upper", "lower_1", "lower_2"], &rows).map_err(io);
            }
            let rows: Vec<Value> = h
                .entries
                .iter()
                .map(|e| {
                    let c = h.checks.iter().find(|c| c.j == e.j);
                    json!({
                        "j": e.j,
                        "alpha": triple(&e.alpha),
                        "beta": triple(&e.beta),
                        "upper": c.map(|c| c.upper),
                        "lower_1": c.map(|c| c.lower_1),
                        "lower_2": c.map(|c| c.lower_2),
                        "min_ratio": c.map(|c| decimal_string(&c.min_ratio.lo, 6)),
                    })
                })
                .collect();
            emit(json!({"hulls": rows, "ratios_increasing": h.ratios_increasing()}))
        }
        Cmd::Thickness { set, level } => {
            let s = set_from(&set)?;
            let c = build_cover(&s, level, &ctx.cover_opts())?;
            let per: Vec<Value> = thickness_star_by_level(&c)?
                .into_iter()
                .enumerate()
                .map(|(l, t)| match t {
                    Some(t) => json!({"level": l, "lo": rounded(&t.lo, 8, false), "hi": rounded(&t.hi, 8, true)}),
                    None => json!({"level": l, "lo": null, "hi": null}),
                })
                .collect();
            let checks = sibling_checks(&s, &c)?;
            let (tau, nb) = tau_json(&c)?;
            let ordered = c.ordered_thickness()?.map(|t| decimal_string(&t, 8));
            emit(json!({
                "run_limit": s.run_limit(),
                "lead": s.lead(),
                "levels": per,
                "thickness_star": tau,
                "ordered_thickness": ordered,
                "newhouse_bound": nb,
                "sibling_pairs": checks.len(),
                "gap_upper_ok": checks.iter().all(|c| c.gap_upper),
                "interval_lower_ok": checks.iter().all(|c| c.left_lower && c.right_lower),
                "ratio_lower_ok": checks.iter().all(|c| c.ratio_lower),
            }))
        }
        Cmd::Dim { set, level } => {
            let s = set_from(&set)?;
            let lb = (s.alphabet().base() as f64).ln();
            let partials: Vec<Value> = [8usize, 16, 32, 64, 128, 256]
                .iter()
                .map(|&n| json!({"n": n, "value": ln_biguint(&count_omega(&s, n)) / (n as f64 * lb)}))
                .collect();
            let c = build_cover(&s, level, &ctx.cover_opts())?;
            let (tau, nb) = tau_json(&c)?;
            emit(json!({"symbolic_partials": partials, "thickness_star": tau, "newhouse_bound": nb}))
        }
        Cmd::Freq { cmd } => freq(cmd, ctx, out),
        Cmd::Intersect { xs, m, j, level, kind } => {
            let a = alphabet(m)?;
            let mut acc: Option<Vec<Span>> = None;
            for x in xs.split(',') {
                let s = make_set(&parse_rational(x)?, a, j, kind)?;
                let spans = build_cover(&s, level, &ctx.cover_opts())?.spans();
                acc = Some(match acc {
                    None => spans,
                    Some(prev) => intersect_spans(&prev, &spans),
                });
            }
            let spans = acc.unwrap_or_default();
            if ctx.format == Format::Csv {
                let rows: Vec<Vec<String>> =
                    spans.iter().map(|s| vec![decimal_string(s.lo.lo(), 20), decimal_string(s.hi.hi(), 20)]).collect();
                return emit_csv(out, &["lo", "hi"], &rows).map_err(io);
            }
            emit(json!({"intervals": spans.iter().map(span_json).collect::<Vec<_>>()}))
        }
        Cmd::Sumcheck { set, x2, level, lambda, resolution } => {
            let s1 = set_from(&set)?;
            let s2 = match &x2 {
                Some(x) => set_from(&SetArgs { x: x.clone(), ..set.clone() })?,
                None => s1.clone(),
            };
            let c1 = build_cover(&s1, level, &ctx.cover_opts())?;
            let c2 = build_cover(&s2, level, &ctx.cover_opts())?;
            let r = sum_image_check(&c1.spans(), &c2.spans(), &parse_rational(&lambda)?, &parse_rational(&resolution)?)?;
            let (t1, _) = tau_json(&c1)?;
            let (t2, _) = tau_json(&c2)?;
            let pair = |p: &(BigRational, BigRational)| json!([decimal_string(&p.0, 20), decimal_string(&p.1, 20)]);
            emit(json!({
                "thickness_star": [t1, t2],
                "pieces": r.pieces,
                "covered": r.covered.as_ref().map(pair),
                "holes": r.holes.iter().map(pair).collect::<Vec<_>>(),
            }))
        }
        Cmd::Plotdata { series, x, m, j, level, kind } => {
            let a = alphabet(m)?;
            let xv = parse_rational(&x)?;
            match series {
                Series::Cover => {
                    let s = make_set(&xv, a, j, kind)?;
                    let c = build_cover(&s, level, &ctx.cover_opts())?;
                    for (l, lev) in c.levels().iter().enumerate() {
                        writeln!(out, "# level {l}").map_err(io)?;
                        for iv in &lev.intervals {
                            writeln!(out, "{} {}", decimal_string(&iv.span.lo.midpoint(), 20), decimal_string(&iv.span.hi.midpoint(), 20))
                                .map_err(io)?;
                        }
                    }
                }
                Series::Hulls => {
                    let mm = RunLimitedSet::new(&xv, a, 2)?.dm().m();
                    let jmin = (0..31).find(|&j| (1usize << j) > mm).unwrap();
                    let h = build_hulls(&xv, a, jmin, (j as u32).max(jmin), &ctx.cover_opts())?;
                    writeln!(out, "# hulls").map_err(io)?;
                    for e in &h.entries {
                        writeln!(out, "{} {}", decimal_string(&e.alpha.midpoint(), 20), decimal_string(&e.beta.midpoint(), 20)).map_err(io)?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn freq(cmd: FreqCmd, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    match cmd {
        FreqCmd::Sample { kind, x, m, j, depth, seed } => {
            let a = alphabet(m)?;
            let xv = parse_rational(&x)?;
            let mm = RunLimitedSet::new(&xv, a, 2)?.dm().m();
            let v = match kind {
                FreqKind::Sn => {
                    let s = RunLimitedSet::new(&xv, a, sn_run_limit(a, mm, j))?;
                    let w = sample_simply_normal(&s, depth, seed)?;
                    let tail = &w.digits()[s.prefix().len()..];
                    let ratios: Vec<String> =
                        (0..=a.m()).map(|b| decimal_string(&BigRational::new(crate::symbolic::digit_count(tail, b).into(), tail.len().into()), 6)).collect();
                    json!({"run_limit": s.run_limit(), "word": w.to_string(), "tail_ratios": ratios})
                }
                FreqKind::Ir => {
                    let s = RunLimitedSet::lemma(&xv, a, j)?;
                    let mut k = 0;
                    let mut total = s.prefix().len() as u64;
                    while total < depth as u64 {
                        total += crate::freqsets::DeltaBlock::new(a, s.run_limit(), k)?.len();
                        k += 1;
                    }
                    let smp = sample_irregular(&s, k.saturating_sub(1), seed)?;
                    let profile = if a.m() >= 2 {
                        let cps: Vec<(u64, u64)> =
                            (0..k).map(|kk| checkpoint_lengths(a, s.run_limit(), kk, a.m())).collect::<Result<_>>()?;
                        Some(oscillation_evidence(smp.tail(), a.m(), &cps)?)
                    } else {
                        None
                    };
                    json!({"run_limit": s.run_limit(), "word": smp.word.to_string(), "profile": profile})
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)
        }
        FreqCmd::Dim { kind, x, m, jmax } => {
            let a = alphabet(m)?;
            let xv = match x {
                Some(x) => parse_rational(&x)?,
                None => BigRational::new(1.into(), a.base().into()),
            };
            let mm = RunLimitedSet::new(&xv, a, 2)?.dm().m();
            let mut rows = Vec::new();
            for j in 1..=jmax {
                let n = match kind {
                    FreqKind::Sn => sn_run_limit(a, mm, j),
                    FreqKind::Ir => mm + j,
                };
                let s = RunLimitedSet::new(&xv, a, n)?;
                let g = gamma(&s, &pow2(-64))?;
                let d = match kind {
                    FreqKind::Sn => dim_lower_sn(a, n, &g)?,
                    FreqKind::Ir => dim_lower_ir(a, n, &g)?,
                };
                rows.push((j, n, g, d));
            }
            if ctx.format == Format::Json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(j, n, g, d)| json!({"j": j, "run_limit": n, "gamma": triple(g), "bound": {"lo": d.lo, "hi": d.hi}}))
                    .collect();
                return writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io);
            }
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(j, n, g, d)| {
                    vec![j.to_string(), n.to_string(), decimal_string(&g.midpoint(), 15), format!("{:.12}", d.lo), format!("{:.12}", d.hi)]
                })
                .collect();
            emit_csv(out, &["j", "run_limit", "gamma", "bound_lo", "bound_hi"], &rows).map_err(io)
        }
    }
}

/// Runs the program on `args` (including the program name); returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut settings = match &cli.config {
        Some(p) => match Settings::load(p) {
            Ok((s, warnings)) => {
                for w in warnings {
                    let _ = writeln!(err, "warning: {w}");
                }
                s
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
        },
        None => Settings::default(),
    };
    if let Some(b) = cli.max_bits {
        settings.max_bits = b;
    }
    if let Some(t) = cli.threads {
        settings.threads = Some(t);
    }
    let ctx = Ctx { settings, format: cli.format };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(ctx.settings.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut buf = Vec::new();
    let res = pool.install(|| execute(cli.cmd, &ctx, &mut buf));
    let _ = out.write_all(&buf);
    match res {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_precision() {
                3
            } else {
                2
            }
        }
    }
}
