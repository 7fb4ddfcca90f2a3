use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::cli::jobspec::{Arg, CommandKind, JobSpec};
use crate::core_engine::{compute_core, verify_core, CheckOutcome, CoreOptions, CoreResult, Method, T_MAX};
use crate::error::{Error, Result};
use crate::groebner::engine::{counters, reset_counters};
use crate::ideal::Ideal;
use crate::kernel::{Polynomial, Ring};
use crate::reduction::{
    analytic_spread, classify_hypotheses, multiplicity, sample_general_reduction, CertificateSummary, R_MAX,
};

/// Outcome of a job: the JSON document, a plain-text rendering and the exit code.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

/// Exit code for an error: 3 for hypothesis violations, 2 for caps, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation(_) => 3,
        e if e.is_cap() => 2,
        _ => 1,
    }
}

/// Generators of the reduced basis, sorted by leading monomial.
pub fn canonical_strings(i: &Ideal) -> Result<Vec<String>> {
    let mut gens = i.canonical_generators()?;
    let ord = i.ring().order().clone();
    gens.sort_by(|a, b| match (a.lead(), b.lead()) {
        (Some(x), Some(y)) => ord.cmp_mono(&x.1, &y.1),
        _ => a.len().cmp(&b.len()),
    });
    Ok(gens.iter().map(|g| g.to_string()).collect())
}

struct Ctx<'a> {
    job: &'a JobSpec,
    ring: Ring,
}

impl Ctx<'_> {
    fn ideal(&self, a: &Arg) -> Result<Ideal> {
        match a {
            Arg::Word(w) => {
                let spec = self
                    .job
                    .ideals
                    .iter()
                    .find(|i| &i.name == w)
                    .ok_or_else(|| Error::Unsupported(format!("unknown ideal `{w}`")))?;
                Ideal::parse(&self.ring, &spec.gens)
            }
            Arg::Group(g) => Ideal::parse(&self.ring, g),
        }
    }

    fn poly(&self, a: &Arg) -> Result<Polynomial> {
        match a {
            Arg::Word(w) => self.ring.parse(w),
            Arg::Group(g) => self.ring.parse(&g[0]),
        }
    }

    /// The explicit ideal argument, or the first declared ideal.
    fn subject(&self) -> Result<Ideal> {
        match self.job.command.args.first() {
            Some(a) => self.ideal(a),
            None => {
                let spec = self
                    .job
                    .ideals
                    .first()
                    .ok_or_else(|| Error::Unsupported("no ideal declared".into()))?;
                Ideal::parse(&self.ring, &spec.gens)
            }
        }
    }

    fn seed(&self) -> u64 {
        self.job.options.seed.unwrap_or(0)
    }

    fn r_max(&self) -> usize {
        self.job.options.r_max.unwrap_or(R_MAX)
    }
}

fn checks_json(m: &BTreeMap<String, CheckOutcome>) -> Value {
    serde_json::to_value(m).expect("serializable")
}

fn checks_text(m: &BTreeMap<String, CheckOutcome>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={}", serde_json::to_value(v).unwrap().as_str().unwrap_or("?")))
        .collect::<Vec<_>>()
        .join(" ")
}

struct Outcome {
    hypotheses: Value,
    result: Value,
    checks: Value,
    text: String,
    exit_code: i32,
}

impl Outcome {
    fn simple(result: Value, text: String) -> Outcome {
        Outcome {
            hypotheses: Value::Null,
            result,
            checks: json!({}),
            text,
            exit_code: 0,
        }
    }
}

fn run_core(ctx: &Ctx) -> Result<Outcome> {
    let i = ctx.subject()?;
    let o = &ctx.job.options;
    let opts = CoreOptions {
        seed: ctx.seed(),
        t_max: o.t_max.unwrap_or(T_MAX),
        r_max: ctx.r_max(),
        exponent: o.exponent,
        variant: o.variant.unwrap_or(CoreOptions::default().variant),
        force: o.force,
        ..CoreOptions::default()
    };
    let method = match o.method {
        Some(m) => m,
        None if i.is_m_primary()? => Method::Both,
        None => Method::Deterministic,
    };
    let res: CoreResult = compute_core(&i, method, &opts)?;
    let gens = canonical_strings(&res.core)?;
    let certs: Vec<CertificateSummary> = res.certificates.iter().map(CertificateSummary::from).collect();
    let mut candidates = serde_json::Map::new();
    for (m, c) in &res.candidates {
        candidates.insert(m.as_str().to_string(), json!(canonical_strings(c)?));
    }
    let result = json!({
        "generators": gens,
        "method": res.method.as_str(),
        "seed": res.seed,
        "t_used": res.t_used,
        "exponent_used": res.exponent_used,
        "certified": res.certified,
        "certificates": certs,
        "candidates": candidates,
    });
    let mut text = format!("core = ({})\n", gens.join(", "));
    text += &format!("method: {}  seed: {}", res.method.as_str(), res.seed);
    if let Some(t) = res.t_used {
        text += &format!("  t_used: {t}");
    }
    if let Some(n) = res.exponent_used {
        text += &format!("  exponent_used: {n}");
    }
    text += &format!("\ncertified: {}\n", res.certified);
    let h = &res.hypotheses;
    text += &format!(
        "hypotheses: {} (ell = {}, ht = {}, G_ell {})\n",
        h.classification.as_str(),
        h.ell,
        h.height,
        if h.g_ell.satisfied { "holds" } else { "fails" }
    );
    text += &format!("checks: {}\n", checks_text(&res.checks));
    for w in &h.warnings {
        text += &format!("warning: {w}\n");
    }
    Ok(Outcome {
        hypotheses: serde_json::to_value(&res.hypotheses).expect("serializable"),
        result,
        checks: checks_json(&res.checks),
        text,
        exit_code: if res.checks_pass() { 0 } else { 2 },
    })
}

fn run_ops(ctx: &Ctx) -> Result<Outcome> {
    let args = &ctx.job.command.args;
    let op = ctx.job.command.op.as_deref().unwrap_or("");
    let ideal_out = |i: Ideal| -> Result<Outcome> {
        let g = canonical_strings(&i)?;
        let text = format!("({})\n", g.join(", "));
        Ok(Outcome::simple(json!(g), text))
    };
    let flag = |b: bool| Outcome::simple(json!(b), format!("{b}\n"));
    let int = |n: i64| Outcome::simple(json!(n), format!("{n}\n"));
    match op {
        "gb" => ideal_out(ctx.ideal(&args[0])?),
        "intersect" => ideal_out(ctx.ideal(&args[0])?.intersection(&ctx.ideal(&args[1])?)?),
        "colon" => ideal_out(ctx.ideal(&args[0])?.colon(&ctx.ideal(&args[1])?)?),
        "saturate" => ideal_out(ctx.ideal(&args[0])?.saturation(&ctx.ideal(&args[1])?)?),
        "eliminate" => {
            let i = ctx.ideal(&args[0])?;
            let vars: Vec<usize> = args[1..]
                .iter()
                .map(|a| ctx.ring.var_index(&a.to_string()).expect("validated"))
                .collect();
            ideal_out(i.eliminate(&vars)?)
        }
        "radical-member" => Ok(flag(ctx.ideal(&args[1])?.radical_contains(&ctx.poly(&args[0])?)?)),
        "member" => Ok(flag(ctx.ideal(&args[1])?.contains(&ctx.poly(&args[0])?)?)),
        "local-member" => Ok(flag(ctx.ideal(&args[1])?.local_contains(&ctx.poly(&args[0])?)?)),
        "dim" => Ok(int(ctx.ideal(&args[0])?.krull_dimension()?)),
        "vdim" => {
            let i = ctx.ideal(&args[0])?;
            if i.krull_dimension()? > 0 {
                return Err(Error::PositiveDimensional(i.krull_dimension()?));
            }
            Ok(int(i.vector_space_dimension()? as i64))
        }
        "fitting" => {
            let j: usize = args[0].to_string().parse().expect("validated");
            ideal_out(ctx.ideal(&args[1])?.fitting_ideal(j)?)
        }
        "local-part" => ideal_out(ctx.ideal(&args[0])?.local_contraction_zero_dim()?),
        other => Err(Error::Unsupported(format!("unknown operation `{other}`"))),
    }
}

fn dispatch(ctx: &Ctx) -> Result<Outcome> {
    match ctx.job.command.kind {
        CommandKind::Core => run_core(ctx),
        CommandKind::Spread => {
            let l = analytic_spread(&ctx.subject()?)?;
            Ok(Outcome::simple(json!({ "analytic_spread": l }), format!("analytic spread: {l}\n")))
        }
        CommandKind::Multiplicity => {
            let e = multiplicity(&ctx.subject()?, ctx.seed())?;
            Ok(Outcome::simple(json!({ "multiplicity": e }), format!("multiplicity: {e}\n")))
        }
        CommandKind::Reduction => {
            let i = ctx.subject()?;
            let l = analytic_spread(&i)?;
            let cert = sample_general_reduction(&i, l, ctx.seed(), ctx.r_max())?;
            let summary = CertificateSummary::from(&cert);
            let text = format!(
                "J = ({})\nreduction number: {}\n",
                summary.generators.join(", "),
                summary.reduction_number
            );
            Ok(Outcome::simple(
                json!({ "analytic_spread": l, "reduction_number": cert.r, "certificate": summary }),
                text,
            ))
        }
        CommandKind::Verify => {
            let args = &ctx.job.command.args;
            let (i, c) = if args.len() == 2 {
                (ctx.ideal(&args[0])?, ctx.ideal(&args[1])?)
            } else {
                let spec = ctx
                    .job
                    .ideals
                    .first()
                    .ok_or_else(|| Error::Unsupported("no ideal declared".into()))?;
                (Ideal::parse(&ctx.ring, &spec.gens)?, ctx.ideal(&args[0])?)
            };
            let checks = verify_core(&i, &c, 5, ctx.seed(), ctx.r_max())?;
            let pass = checks.values().all(|c| *c != CheckOutcome::Fail);
            let hyp = classify_hypotheses(&i)?;
            Ok(Outcome {
                hypotheses: serde_json::to_value(&hyp).expect("serializable"),
                result: json!({ "all_pass": pass }),
                checks: checks_json(&checks),
                text: format!("checks: {}\nall pass: {pass}\n", checks_text(&checks)),
                exit_code: if pass { 0 } else { 2 },
            })
        }
        CommandKind::Ops => run_ops(ctx),
    }
}

/// Runs a parsed job. Errors are returned for the caller to map to exit codes.
pub fn run(job: &JobSpec) -> Result<Report> {
    let start = Instant::now();
    reset_counters();
    let ring = job.ring.build()?;
    let ctx = Ctx { job, ring };
    let out = dispatch(&ctx)?;
    let (gb, pairs) = counters();
    let json = json!({
        "input": {
            "job": job.to_string(),
            "command": job.command.kind.as_str(),
        },
        "hypotheses": out.hypotheses,
        "result": out.result,
        "checks": out.checks,
        "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
        "counters": { "groebner_bases": gb, "spair_reductions": pairs },
    });
    Ok(Report {
        json,
        text: out.text,
        exit_code: out.exit_code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::jobspec::parse_jobspec;

    fn run_src(src: &str) -> Report {
        run(&parse_jobspec(src).unwrap()).unwrap()
    }

    #[test]
    fn spread_of_maximal_ideal() {
        let r = run_src("ring Q[U,V]\nideal I = U, V\nspread");
        assert_eq!(r.json["result"], json!({ "analytic_spread": 2 }));
    }

    #[test]
    fn intersect_two_lines() {
        let r = run_src("ring Q[U,V]\nops intersect (U) (V)");
        assert_eq!(r.json["result"], json!(["U*V"]));
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn core_report_shape() {
        let r = run_src("ring Q[U,V] weights [1,1]; ideal I = U^3, U*V^3, V^4; core --method both");
        let j = &r.json;
        for key in ["input", "hypotheses", "checks", "timing_ms", "counters"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        for key in ["generators", "method", "seed", "t_used", "exponent_used"] {
            assert!(j["result"].get(key).is_some(), "{key}");
        }
        assert_eq!(j["result"]["method"], "both");
        assert_eq!(j["checks"]["pipelines_agree"], "pass");
        assert_eq!(j["result"]["generators"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn hypothesis_violation_exit_code() {
        let job = parse_jobspec("ring Q[U,V,W] quotient [U^2+V^2, V*W]; ideal I = U, V; core --method prob").unwrap();
        let e = run(&job).err().unwrap();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn calculator_operations() {
        let base = "ring Q[U,V,t]\nideal P = U - t, V - t^2\n";
        let r = run_src(&format!("{base}ops eliminate P t"));
        assert_eq!(r.json["result"], json!(["U^2 - V"]));
        let r = run_src("ring Q[U,V]\nideal I = U^2, V^3\nops vdim I");
        assert_eq!(r.json["result"], json!(6));
        let r = run_src("ring Q[U,V]\nideal I = U*V, V^2\nops radical-member V I");
        assert_eq!(r.json["result"], json!(true));
        let r = run_src("ring Q[U,V]\nideal I = U^2 - U\nops local-member U I");
        assert_eq!(r.json["result"], json!(true));
    }
}
