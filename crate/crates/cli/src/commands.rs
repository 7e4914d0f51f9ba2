//! One function per subcommand. Each returns the canonical parameters (the
//! replayable form of its flags), a result object, certificates and an
//! optional table.

use crate::args::*;
use crate::error::{usage, CliError};
use crate::json::{self, obj};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use powseq::algebraic::{classify_with, pv_power_residues, waring_condition};
use powseq::boyd::{boyd_a1_range, run_boyd, BoydParams, Verdict, DEFAULT_GUARD};
use powseq::distribution::{
    star_discrepancy, star_discrepancy_enclosure, ud_report, SampleSequence,
};
use powseq::numeric::precision::PrecisionPolicy;
use powseq::numeric::rational::{self, Rational};
use powseq::poly::{IntPolynomial, RatPolynomial};
use powseq::quadratic::QuadraticElement;
use powseq::recurrence::coefficients::lambda_field_matches;
use powseq::recurrence::fatou::{horizon, verify_reduction};
use powseq::recurrence::padic::IntegralityVerdict;
use powseq::recurrence::{
    char_poly, extend_backward, fatou_reduce, galois_swap_check, global_integrality, growth_check,
    hankel_minimality, integrality_check, nearest_integer_model, numerator_poly, recover_coefficients,
    recover_recurrence, root_valuations, verify_numerator, GrowthVerdict, PadicContext, SwapVerdict,
};
use powseq::synthesis::{
    badly_distributed_targets, fractional_multiple_targets, synth_alpha, synth_lambda, synth_lambda_real,
    SynthesisProblem, SynthesisTrace, Variant,
};
use serde_json::{json, Map, Value};

pub struct Context {
    pub policy: PrecisionPolicy,
    pub precision: u32,
    /// Tables cost extra work in some commands; skip them unless asked for.
    pub want_table: bool,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

pub struct Outcome {
    pub params: Map<String, Value>,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub table: Option<Table>,
}

type Res = Result<Outcome, CliError>;

fn cert(name: &str, holds: bool, detail: Value) -> Value {
    json!({"name": name, "holds": holds, "detail": detail})
}

struct Params(Map<String, Value>);

impl Params {
    fn new() -> Self {
        Params(Map::new())
    }
    fn set(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.0.insert(k.to_string(), Value::String(v.to_string()));
        self
    }
}

fn parse_rat(s: &str, what: &str) -> Result<Rational, CliError> {
    rational::parse_rational(s).ok_or_else(|| usage(format!("cannot parse {what} as a rational: {s:?}")))
}

fn parse_rats(s: &str, what: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_rat(t, what)).collect()
}

fn parse_int(s: &str, what: &str) -> Result<BigInt, CliError> {
    s.trim().parse().map_err(|_| usage(format!("cannot parse {what} as an integer: {s:?}")))
}

fn parse_quad(s: &str, what: &str) -> Result<QuadraticElement, CliError> {
    QuadraticElement::parse(s).ok_or_else(|| usage(format!("cannot parse {what}: {s:?}")))
}

fn parse_int_poly(s: &str) -> Result<IntPolynomial, CliError> {
    IntPolynomial::parse(s).ok_or_else(|| usage(format!("cannot parse polynomial {s:?}")))
}

fn read_column(path: &std::path::Path) -> Result<Vec<Rational>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| usage(format!("bad CSV in {}: {e}", path.display())))?;
        if let Some(f) = rec.get(0).filter(|f| !f.is_empty()) {
            out.push(parse_rat(f, "sample")?);
        }
    }
    Ok(out)
}

fn samples(a: &SampleArgs) -> Result<Vec<Rational>, CliError> {
    match (&a.values, &a.file) {
        (Some(v), None) => parse_rats(v, "sample"),
        (None, Some(f)) => read_column(f),
        _ => Err(usage("give exactly one of --values and --file")),
    }
}

fn variant(v: VariantArg) -> (Variant, &'static str) {
    match v {
        VariantArg::OneSided => (Variant::OneSided, "one-sided"),
        VariantArg::Centered => (Variant::Centered, "centered"),
    }
}

fn f64_of(q: &Rational) -> Value {
    json!(rational::to_f64(q))
}

/// Targets from exactly one source; recorded inline so replays need no files.
fn targets(t: &TargetArgs, ctx: &Context, p: &mut Params) -> Result<Vec<Rational>, CliError> {
    let sources = [t.targets.is_some(), t.targets_file.is_some(), t.multiples.is_some(), t.index_set.is_some()];
    if sources.iter().filter(|&&b| b).count() != 1 {
        return Err(usage("give exactly one of --targets, --targets-file, --multiples, --index-set"));
    }
    let v = if let Some(s) = &t.targets {
        parse_rats(s, "target")?
    } else if let Some(f) = &t.targets_file {
        read_column(f)?
    } else {
        let n = t.n.ok_or_else(|| usage("--n is required with --multiples or --index-set"))?;
        if let Some(x) = &t.multiples {
            let x = parse_quad(x, "--multiples")?;
            fractional_multiple_targets(&x, n, t.target_bits, &ctx.policy)?
        } else {
            let set: Vec<usize> = t
                .index_set
                .as_deref()
                .unwrap()
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad index {s:?}"))))
                .collect::<Result<_, _>>()?;
            badly_distributed_targets(|k| set.contains(&k), n)
        }
    };
    p.set("targets", json::rats_text(&v));
    Ok(v)
}

fn trace_result(trace: &SynthesisTrace, limit_name: &str) -> Value {
    obj(vec![
        (limit_name, json::ball(&trace.limit)),
        ("final_iterate", json::real(&trace.final_iterate)),
        ("iterates", Value::Array(trace.iterates.iter().map(json::real).collect())),
        ("floors", json::ints(&trace.floors)),
        ("tail_bound", json::rat(&trace.tail_bound)),
        ("bound", json::rat(&trace.bound)),
        ("bound_vacuous", json!(trace.bound_vacuous)),
        (
            "residues",
            Value::Array(
                trace
                    .residues
                    .iter()
                    .map(|r| json!({"n": r.n, "lo": json::rat(&r.lo), "hi": json::rat(&r.hi)}))
                    .collect(),
            ),
        ),
        ("certified_up_to", json!(trace.certified_up_to)),
        ("precision_bits", json!(trace.precision_bits)),
    ])
}

fn residue_table(trace: &SynthesisTrace) -> Table {
    Table {
        columns: vec!["n", "residue_upper"],
        rows: trace.residues.iter().map(|r| vec![json!(r.n), f64_of(&r.hi)]).collect(),
    }
}

fn residue_cert(trace: &SynthesisTrace) -> Value {
    cert(
        "residue_bound",
        trace.all_certified(),
        json!({"bound": json::rat(&trace.bound), "certified_up_to": trace.certified_up_to, "n": trace.n()}),
    )
}

pub fn synth_alpha_cmd(a: &SynthAlphaArgs, ctx: &Context) -> Res {
    let mut p = Params::new();
    let lambda = parse_rat(&a.lambda, "--lambda")?;
    let big_a = parse_rat(&a.a, "--a")?;
    let (var, vname) = variant(a.variant);
    p.set("lambda", json::rat_text(&lambda)).set("a", json::rat_text(&big_a)).set("variant", vname);
    let t = targets(&a.targets, ctx, &mut p)?;
    let trace = synth_alpha(&SynthesisProblem::alpha(lambda.clone(), big_a.clone(), t, var), &ctx.policy)?;
    // A <= alpha <= A + A/(|lambda|(A-1))
    let upper = &big_a + &big_a / (lambda.abs() * (&big_a - Rational::one()));
    let in_range = trace.limit.lo().to_rational() >= big_a && trace.limit.hi().to_rational() <= upper;
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            residue_cert(&trace),
            cert("alpha_range", in_range, json!({"lo": json::rat(&big_a), "hi": json::rat(&upper)})),
        ],
        table: Some(residue_table(&trace)),
        result: trace_result(&trace, "alpha"),
    })
}

pub fn synth_lambda_cmd(a: &SynthLambdaArgs, ctx: &Context) -> Res {
    let mut p = Params::new();
    let l = parse_rat(&a.l, "--l")?;
    let alpha = parse_quad(&a.alpha, "--alpha")?;
    let (var, vname) = variant(a.variant);
    p.set("l", json::rat_text(&l)).set("alpha", alpha.to_string()).set("variant", vname);
    let t = targets(&a.targets, ctx, &mut p)?;
    let (trace, alpha_lower) = if alpha.is_rational() {
        let tr = synth_lambda(&SynthesisProblem::lambda(l.clone(), alpha.a.clone(), t, var), &ctx.policy)?;
        (tr, alpha.a.clone())
    } else {
        if alpha.d < 0 {
            return Err(CliError::Domain("alpha must be real".into()));
        }
        let enclosure = move |prec: u32| alpha.to_ball(prec).expect("real field");
        // a dyadic strictly below alpha
        let lower = enclosure(64).lo().to_rational() - Rational::new(BigInt::one(), BigInt::one() << 40);
        let tr = synth_lambda_real(&l, &enclosure, &lower, &t, var, &ctx.policy)?;
        (tr, lower)
    };
    // |L| <= |lambda| <= |L| + 1/(alpha-1)
    let hi = l.abs() + Rational::one() / (&alpha_lower - Rational::one());
    let lam = trace.limit.abs();
    let in_range = lam.lo().to_rational() >= l.abs() && lam.hi().to_rational() <= hi;
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            residue_cert(&trace),
            cert("lambda_range", in_range, json!({"lo": json::rat(&l.abs()), "hi": json::rat(&hi)})),
        ],
        table: Some(residue_table(&trace)),
        result: trace_result(&trace, "lambda"),
    })
}

pub fn targets_cmd(a: &TargetArgs, ctx: &Context) -> Res {
    let mut p = Params::new();
    let t = targets(a, ctx, &mut p)?;
    Ok(Outcome {
        params: p.0,
        certificates: vec![],
        table: Some(Table {
            columns: vec!["n", "theta"],
            rows: t.iter().enumerate().map(|(i, x)| vec![json!(i + 1), f64_of(x)]).collect(),
        }),
        result: json!({"targets": json::rats(&t)}),
    })
}

pub fn boyd_cmd(a: &BoydArgs) -> Res {
    let mut p = Params::new();
    let params = BoydParams {
        a: parse_rat(&a.a, "--a")?,
        b: parse_rat(&a.b, "--b")?,
        a0: parse_int(&a.a0, "--a0")?,
        f: a.f
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u8>().map_err(|_| usage(format!("bad f value {s:?}"))))
            .collect::<Result<_, _>>()?,
        n: a.n,
    };
    let (lo, hi) = boyd_a1_range(&params.a, &params.b, &params.a0)?;
    let a1 = match &a.a1 {
        Some(s) => parse_int(s, "--a1")?,
        None => lo.clone(),
    };
    p.set("a", json::rat_text(&params.a))
        .set("b", json::rat_text(&params.b))
        .set("a0", &params.a0)
        .set("a1", &a1)
        .set("f", params.f.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
        .set("n", params.n);
    let r = run_boyd(&params, &a1, DEFAULT_GUARD)?;
    let verdict = |v: Verdict| match v {
        Verdict::Certified => "Certified",
        Verdict::Violated => "Violated",
        Verdict::Undecided => "Undecided",
    };
    let lam_ok = r.nearest_lambda.as_ref() == Some(&params.a0);
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            cert("boyd_bound", r.all_certified(), json!({"delta": json::ball(&r.delta_bound)})),
            cert("nearest_lambda_is_a0", lam_ok, json!({"a0": json::int(&params.a0)})),
        ],
        table: Some(Table {
            columns: vec!["n", "error_upper"],
            rows: r
                .checks
                .iter()
                .map(|c| vec![json!(c.n), json!(c.error.abs_hi().to_f64())])
                .collect(),
        }),
        result: json!({
            "a1_range": [json::int(&lo), json::int(&hi)],
            "sequence": json::ints(&r.a),
            "alpha": json::ball(&r.alpha),
            "lambda": json::ball(&r.lambda),
            "delta_bound": json::ball(&r.delta_bound),
            "nearest_lambda": r.nearest_lambda.as_ref().map(json::int),
            "guard": r.guard,
            "checks": r.checks.iter().map(|c| json!({"n": c.n, "error": json::ball(&c.error), "verdict": verdict(c.verdict)})).collect::<Vec<_>>(),
        }),
    })
}

pub fn classify_cmd(a: &PolyArgs, ctx: &Context) -> Res {
    let poly = parse_int_poly(&a.poly)?;
    let mut p = Params::new();
    p.set("poly", poly.to_list());
    let c = classify_with(&poly, &ctx.policy)?;
    let w = &c.witness;
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "unit_circle_by_reciprocal_gcd",
            true,
            json!({"reciprocal_gcd": json::int_poly(&c.reciprocal_gcd), "boundary_roots": c.boundary_roots}),
        )],
        table: None,
        result: json!({
            "kind": c.kind.name(),
            "degree": poly.deg(),
            "boundary_roots": c.boundary_roots,
            "outside_roots": c.outside_roots,
            "reciprocal_gcd": json::int_poly(&c.reciprocal_gcd),
            "dominant": w.dominant,
            "max_other_modulus": w.max_other_modulus.as_ref().map(json::ball),
            "roots": w.roots.iter().map(|r| json!({
                "value": json::complex(&r.value),
                "modulus": json::ball(&r.modulus()),
                "multiplicity": r.multiplicity,
                "is_real": r.is_real,
            })).collect::<Vec<_>>(),
            "precision_bits": w.precision_bits,
        }),
    })
}

pub fn pv_residues_cmd(a: &PvResiduesArgs, ctx: &Context) -> Res {
    let poly = parse_int_poly(&a.poly)?;
    let mut p = Params::new();
    p.set("poly", poly.to_list()).set("n-max", a.n_max);
    let r = pv_power_residues(&poly, a.n_max, ctx.precision)?;
    // ||alpha^n|| <= 2 (deg - 1) rho^n
    let c = Rational::from_integer(BigInt::from(2 * (poly.deg() - 1)));
    let decay = r
        .entries
        .iter()
        .all(|e| e.distance.hi().to_rational() <= &c * rational::pow(&r.rho, e.n as u32));
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "geometric_decay",
            decay,
            json!({"c": json::rat(&c), "rho": json::rat(&r.rho)}),
        )],
        table: Some(Table {
            columns: vec!["n", "distance_upper"],
            rows: r.entries.iter().map(|e| vec![json!(e.n), json!(e.distance.abs_hi().to_f64())]).collect(),
        }),
        result: json!({
            "kind": r.classification.kind.name(),
            "rho": json::rat(&r.rho),
            "threshold": r.threshold,
            "entries": r.entries.iter().map(|e| json!({
                "n": e.n,
                "trace": json::int(&e.trace),
                "distance": json::ball(&e.distance),
                "nearest_is_trace": e.nearest_is_trace,
            })).collect::<Vec<_>>(),
        }),
    })
}

pub fn waring_cmd(a: &WaringArgs) -> Res {
    let mut p = Params::new();
    p.set("k", a.k);
    let r = waring_condition(a.k)?;
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "distance_exceeds_threshold",
            r.condition_holds,
            json!({"distance": json::rat(&r.distance), "threshold": json::rat(&r.threshold)}),
        )],
        table: None,
        result: json!({
            "k": r.k,
            "g": r.g.as_ref().map(json::int),
            "condition_holds": r.condition_holds,
            "distance": json::rat(&r.distance),
            "threshold": json::rat(&r.threshold),
        }),
    })
}

fn parse_intervals(s: &str) -> Result<Vec<(Rational, Rational)>, CliError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = parse_rats(t, "interval end")?;
            match v.as_slice() {
                [a, b] => Ok((a.clone(), b.clone())),
                _ => Err(usage(format!("interval must be \"s,t\": {t:?}"))),
            }
        })
        .collect()
}

pub fn ud_cmd(a: &UdArgs, ctx: &Context) -> Res {
    let mut p = Params::new();
    let intervals = parse_intervals(&a.intervals)?;
    let hs: Vec<i64> = a
        .h
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad frequency {t:?}"))))
        .collect::<Result<_, _>>()?;
    let seq = match (&a.multiples, a.samples.values.is_some() || a.samples.file.is_some()) {
        (Some(x), false) => {
            let count = a.count.ok_or_else(|| usage("--count is required with --multiples"))?;
            let xq = parse_quad(x, "--multiples")?;
            p.set("multiples", xq.to_string()).set("count", count);
            if xq.is_rational() {
                SampleSequence::from_rationals((1..=count).map(|n| &xq.a * Rational::from_integer(n.into())))
            } else {
                let b = xq.to_ball(ctx.precision + 32).ok_or_else(|| CliError::Domain("x must be real".into()))?;
                SampleSequence::multiples(&b, count)
            }
        }
        (None, true) => {
            let v = samples(&a.samples)?;
            p.set("values", json::rats_text(&v));
            SampleSequence::from_rationals(v)
        }
        _ => return Err(usage("give exactly one of --values, --file, --multiples")),
    };
    p.set(
        "intervals",
        intervals.iter().map(|(s, t)| format!("{},{}", json::rat_text(s), json::rat_text(t))).collect::<Vec<_>>().join(";"),
    )
    .set("h", hs.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    let rep = ud_report(&seq, &intervals, &hs, ctx.precision)?;
    let exact = seq.rationals().map(|v| star_discrepancy(&v));
    // star discrepancy of prefixes of length 2^k, plus the full sequence
    let mut rows = Vec::new();
    let mut m = if ctx.want_table { 1usize } else { usize::MAX };
    while m <= seq.len() {
        let prefix = SampleSequence { values: seq.values[..m].to_vec() };
        rows.push(vec![json!(m), json!(star_discrepancy_enclosure(&prefix)?.to_f64())]);
        m = if m * 2 > seq.len() && m != seq.len() { seq.len() } else { m * 2 };
    }
    Ok(Outcome {
        params: p.0,
        certificates: vec![],
        table: ctx.want_table.then(|| Table { columns: vec!["n", "star_discrepancy"], rows }),
        result: json!({
            "n": rep.n,
            "intervals": rep.interval_frequencies.iter().map(|(s, t, f)| json!({"s": json::rat(s), "t": json::rat(t), "frequency": json::rat(f)})).collect::<Vec<_>>(),
            "weyl_sums": rep.weyl_sums.iter().map(|(h, z)| json!({"h": h, "value": json::complex(z), "modulus": json::ball(&z.abs())})).collect::<Vec<_>>(),
            "star_discrepancy": json::ball(&rep.star_discrepancy),
            "star_discrepancy_exact": exact.as_ref().map(json::rat),
        }),
    })
}

pub fn recur_cmd(a: &RecurArgs) -> Res {
    let mut p = Params::new();
    let v = samples(&a.samples)?;
    p.set("values", json::rats_text(&v)).set("max-order", a.max_order).set("back", a.back);
    let sys = recover_recurrence(&v, a.max_order)?;
    let t = a.t.unwrap_or(sys.start);
    if let Some(t) = a.t {
        p.set("t", t);
    }
    let (f, q) = char_poly(&sys);
    let num = numerator_poly(&sys, t)?;
    let identity = verify_numerator(&sys, t)?;
    let (d, next) = hankel_minimality(&sys);
    let back = extend_backward(&sys, a.back);
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            cert("fits_window", sys.holds(), json!({"samples": sys.samples.len()})),
            cert("hankel_nonsingular", !d.is_zero(), json!({"det": json::rat(&d)})),
            cert("numerator_identity", identity, json!({"t": t})),
        ],
        table: Some(Table {
            columns: vec!["n", "value"],
            rows: back
                .iter()
                .chain(&sys.samples)
                .enumerate()
                .map(|(i, c)| vec![json!(sys.start - a.back as i64 + i as i64), json!(json::rat_text(c))])
                .collect(),
        }),
        result: json!({
            "order": sys.order,
            "coefficients": json::rats(&sys.coefficients),
            "start": sys.start,
            "f": json::rat_poly(&f),
            "q": json::rat_poly(&q),
            "numerator": {"t": t, "p": json::rat_poly(&num)},
            "hankel_det": json::rat(&d),
            "hankel_det_next": next.as_ref().map(json::rat),
            "backward": json::rats(&back),
        }),
    })
}

pub fn fatou_cmd(a: &FatouArgs) -> Res {
    let (pp, qq) = (parse_int_poly(&a.p)?, parse_int_poly(&a.q)?);
    let mut p = Params::new();
    p.set("p", pp.to_list()).set("q", qq.to_list());
    let (bp, bq) = fatou_reduce(&pp, &qq)?;
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "reduction",
            verify_reduction(&pp, &qq, &bp, &bq),
            json!({"horizon": horizon(&pp, &qq)}),
        )],
        table: None,
        result: json!({"p": json::int_poly(&bp), "q": json::int_poly(&bq), "horizon": horizon(&pp, &qq)}),
    })
}

fn prime(s: &str) -> Result<PadicContext, CliError> {
    Ok(PadicContext::new(parse_int(s, "--p")?)?)
}

fn valuation_table(v: &[Option<i64>], start: i64) -> Table {
    Table {
        columns: vec!["n", "valuation"],
        rows: v.iter().enumerate().map(|(i, x)| vec![json!(start + i as i64), json!(x)]).collect(),
    }
}

pub fn padic_cmd(a: &PadicArgs) -> Res {
    let mut p = Params::new();
    let v = samples(&a.samples)?;
    let ctx = prime(&a.p)?;
    p.set("values", json::rats_text(&v)).set("max-order", a.max_order).set("p", &ctx.p);
    let sys = recover_recurrence(&v, a.max_order)?;
    let local = integrality_check(&sys, &ctx);
    let global = global_integrality(&sys);
    let vals: Vec<Option<i64>> = sys.samples.iter().map(|c| ctx.valuation(c)).collect();
    let local_ok = local.verdict == IntegralityVerdict::Certified;
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            cert("local_integrality", local_ok, json!({"p": json::int(&ctx.p)})),
            cert("global_integrality", global.certified, json!({"bad_primes": json::ints(&global.bad_primes)})),
        ],
        table: Some(valuation_table(&vals, sys.start)),
        result: json!({
            "coefficients": json::rats(&sys.coefficients),
            "start": sys.start,
            "sample_bound": json::rat(&local.sample_bound),
            "scaling": json::rat(&local.scaling),
            "coefficient_valuations": local.coefficient_valuations,
            "local_verdict": if local_ok { "Certified" } else { "Violated" },
            "global_verdict": if global.certified { "Certified" } else { "Violated" },
            "bad_primes": json::ints(&global.bad_primes),
        }),
    })
}

pub fn newton_cmd(a: &NewtonArgs) -> Res {
    let mut p = Params::new();
    let f = RatPolynomial::new(parse_rats(&a.poly, "coefficient")?);
    let ctx = prime(&a.p)?;
    p.set("poly", json::rats_text(f.coeffs())).set("p", &ctx.p);
    let np = root_valuations(&f, &ctx)?;
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "absolute_value_identity",
            np.identity_holds,
            json!({"root_side_exponent": json::rat(&np.root_side_exponent), "coefficient_side_exponent": np.coefficient_side_exponent}),
        )],
        table: Some(Table {
            columns: vec!["segment", "root_valuation"],
            rows: np.segments.iter().enumerate().map(|(i, s)| vec![json!(i), f64_of(&s.root_valuation)]).collect(),
        }),
        result: json!({
            "p": json::int(&np.p),
            "zero_roots": np.zero_roots,
            "vertices": np.vertices,
            "segments": np.segments.iter().map(|s| json!({"slope": json::rat(&s.slope), "length": s.length, "root_valuation": json::rat(&s.root_valuation)})).collect::<Vec<_>>(),
            "min_root_valuation": np.min_root_valuation.as_ref().map(json::rat),
            "max_abs": np.max_abs,
        }),
    })
}

pub fn growth_cmd(a: &GrowthArgs) -> Res {
    let mut p = Params::new();
    let v = samples(&a.samples)?;
    let ctx = prime(&a.p)?;
    p.set("values", json::rats_text(&v)).set("p", &ctx.p);
    let r = growth_check(&v, &ctx)?;
    let verdict = match r.verdict {
        GrowthVerdict::Bounded => "Bounded",
        GrowthVerdict::SubexponentialSuspect => "SubexponentialSuspect",
        GrowthVerdict::ExponentialGrowth => "ExponentialGrowth",
    };
    Ok(Outcome {
        params: p.0,
        certificates: vec![],
        table: Some(valuation_table(&r.valuations, 0)),
        result: json!({
            "valuations": r.valuations,
            "tail_slope": json::rat(&r.tail_slope),
            "tail_records": r.tail_records,
            "verdict": verdict,
            "diagnostic": r.diagnostic,
        }),
    })
}

fn parse_roots(s: &str) -> Result<Vec<(QuadraticElement, usize)>, CliError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (x, d) = t.rsplit_once(':').unwrap_or((t, "1"));
            let d: usize = d.trim().parse().map_err(|_| usage(format!("bad multiplicity in {t:?}")))?;
            Ok((parse_quad(x, "root")?, d))
        })
        .collect()
}

pub fn recover_cmd(a: &RecoverArgs) -> Res {
    let mut p = Params::new();
    let v = samples(&a.samples)?;
    let roots = parse_roots(&a.roots)?;
    p.set("values", json::rats_text(&v)).set(
        "roots",
        roots.iter().map(|(x, d)| format!("{x}:{d}")).collect::<Vec<_>>().join(";"),
    );
    let model = recover_coefficients(&roots, &v)?;
    let (swap, perm) = galois_swap_check(&model);
    let swap_detail = match swap {
        SwapVerdict::Certified => json!({"permutation": perm}),
        SwapVerdict::Violated { index } => json!({"permutation": perm, "index": index}),
    };
    Ok(Outcome {
        params: p.0,
        certificates: vec![
            cert("reconstruction", true, json!({"checked_terms": v.len() + powseq::recurrence::coefficients::EXTRA_CHECKS})),
            cert("galois_swap", swap == SwapVerdict::Certified, swap_detail),
        ],
        table: None,
        result: json!({
            "field": model.field,
            "char_poly": json::rat_poly(&model.char_poly()?),
            "components": model.roots.iter().zip(&model.lambdas).enumerate().map(|(i, ((x, d), lam))| json!({
                "alpha": json::quadratic(x),
                "multiplicity": d,
                "lambda": lam.iter().map(json::quadratic).collect::<Vec<_>>(),
                "lambda_field_matches": lambda_field_matches(&model, i),
            })).collect::<Vec<_>>(),
        }),
    })
}

pub fn detect_cmd(a: &DetectArgs, ctx: &Context) -> Res {
    let mut p = Params::new();
    let lam = parse_quad(&a.lambda, "--lambda")?;
    let alpha = parse_quad(&a.alpha, "--alpha")?;
    if (!lam.is_rational() && lam.d < 0) || (!alpha.is_rational() && alpha.d < 0) {
        return Err(CliError::Domain("lambda and alpha must be real".into()));
    }
    p.set("lambda", lam.to_string())
        .set("alpha", alpha.to_string())
        .set("n-max", a.n_max)
        .set("max-order", a.max_order);
    let lf = move |prec: u32| lam.to_ball(prec).expect("real");
    let af = move |prec: u32| alpha.to_ball(prec).expect("real");
    let r = nearest_integer_model(&lf, &af, a.n_max, a.max_order, &ctx.policy)?;
    let sys = r.system.as_ref().map(|s| {
        json!({"order": s.order, "coefficients": json::rats(&s.coefficients), "start": s.start})
    });
    Ok(Outcome {
        params: p.0,
        certificates: vec![cert(
            "integer_recurrence",
            r.pv_consistent(),
            json!({"window": r.system.as_ref().map(|s| s.samples.len())}),
        )],
        table: Some(Table {
            columns: vec!["n", "nearest"],
            rows: r.values.iter().enumerate().map(|(i, u)| vec![json!(i), json::int(u)]).collect(),
        }),
        result: json!({
            "values": json::ints(&r.values),
            "recurrence": sys,
            "integer_coefficients": r.integer_coefficients,
            "pv_consistent": r.pv_consistent(),
        }),
    })
}
