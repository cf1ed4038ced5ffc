//! Scenario dispatch. Each task returns its `result` object for
//! report.json, any extra artifacts, and how it ended.

use serde::Deserialize;
use serde_json::{json, Value};
use swmix_core::chaos::{distance_envelope, scrambled_verdict, xiong_witness, Verdict};
use swmix_core::hitting::{hitting_sets, wm_certificate, SearchBudget, SetPair};
use swmix_core::spread::{build_chain, build_qnet, certify_spread, xiong_from_chain, QNet};
use swmix_core::{compile, Float, IntervalSet, Rational, SwitchedSystem};

use crate::codec::{Certificate, CertificateFile, ChainJson, EnvelopeJson, HittingJson, PairJson, SpreadJson, WmJson, XiongJson};
use crate::demo::{self, DemoParams};
use crate::error::{settle, CliError};
use crate::num::Num;
use crate::scenario::{scalars, word, Kind, NumericMode, Scenario, SetDesc, SystemDesc, Q};

/// How a run ended; determines the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The budget ran out; partial artifacts were produced.
    BudgetExceeded(String),
    /// A built-in check or a verification came out negative.
    CheckFailed(String),
}

impl Status {
    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::BudgetExceeded(_) => 2,
            Status::CheckFailed(_) => 3,
        }
    }

    fn budget(reason: Option<String>) -> Self {
        reason.map_or(Status::Ok, Status::BudgetExceeded)
    }
}

/// Everything a run writes: report.json plus named artifacts.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: Value,
    pub files: Vec<(String, String)>,
    pub status: Status,
}

struct Done {
    result: Value,
    files: Vec<(String, String)>,
    status: Status,
}

impl Done {
    fn ok(result: Value) -> Self {
        Done { result, files: Vec::new(), status: Status::Ok }
    }
}

pub fn run(sc: &Scenario) -> Result<RunOutput, CliError> {
    let done = match (sc.task.as_str(), sc.numeric) {
        ("tent-demo", _) => {
            let (result, files, status) = demo::run(&sc.params::<DemoParams>()?, sc.seed);
            Done { result, files, status }
        }
        (_, NumericMode::Rational) => run_as::<Rational>(sc)?,
        (_, NumericMode::Float) => run_as::<Float>(sc)?,
    };
    let mut report = json!({
        "task": sc.task,
        "numeric": sc.numeric.name(),
        "seed": sc.seed,
        "status": match &done.status {
            Status::Ok => "ok",
            Status::BudgetExceeded(_) => "budget-exceeded",
            Status::CheckFailed(_) => "check-failed",
        },
        "result": done.result,
    });
    if let Status::BudgetExceeded(r) | Status::CheckFailed(r) = &done.status {
        report["reason"] = json!(r);
    }
    Ok(RunOutput { report, files: done.files, status: done.status })
}

struct Ctx<'a, S: Num> {
    sc: &'a Scenario,
    desc: &'a SystemDesc,
    sys: SwitchedSystem<S>,
    budget: SearchBudget,
}

impl<S: Num> Ctx<'_, S> {
    fn certificate(&self, c: Certificate) -> Result<(String, String), CliError> {
        let file = CertificateFile::new(self.sc.numeric, self.desc, self.sc.language.as_ref(), c);
        Ok(("certificate.json".into(), pretty(&serde_json::to_value(file)?)))
    }

    fn bounds(&self) -> IntervalSet<S> {
        self.sys.bounds().clone().into()
    }

    fn set_or_bounds(&self, d: &Option<SetDesc>) -> Result<IntervalSet<S>, CliError> {
        d.as_ref().map_or_else(|| Ok(self.bounds()), SetDesc::get)
    }
}

fn run_as<S: Num>(sc: &Scenario) -> Result<Done, CliError> {
    let Some(desc) = &sc.system else {
        return Err(CliError::Invalid(format!("task `{}` needs a `system`", sc.task)));
    };
    let ctx = Ctx { sc, desc, sys: desc.build::<S>(sc.language.as_ref())?, budget: sc.budget.budget()? };
    match sc.task.as_str() {
        "prelang" => prelang(&ctx),
        "orbit" => orbit(&ctx),
        "hitting" => hitting(&ctx),
        "wm-cert" => wm_cert(&ctx),
        "scrambled" => scrambled(&ctx),
        "xiong" => xiong(&ctx),
        "spread" => spread(&ctx),
        other => Err(CliError::Invalid(format!(
            "unknown task `{other}` (expected prelang, orbit, hitting, wm-cert, scrambled, xiong, spread or tent-demo)"
        ))),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

const LIST_CAP: u64 = 1 << 20;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrelangParams {
    max_length: usize,
    /// List the words themselves up to this length.
    #[serde(default)]
    list_up_to: usize,
}

fn prelang<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: PrelangParams = ctx.sc.params()?;
    if p.max_length == 0 || p.list_up_to > p.max_length {
        return Err(CliError::Invalid("need 1 <= max_length and list_up_to <= max_length".into()));
    }
    let aut = compile(ctx.sys.language_spec())?;
    let counts: Vec<Value> =
        (1..=p.max_length).map(|n| json!({ "length": n, "count": aut.count_words(n).to_string() })).collect();
    let mut done = Done::ok(json!({ "alphabet": ctx.sys.alphabet(), "counts": counts }));
    if p.list_up_to > 0 {
        let listed: u64 = (1..=p.list_up_to).map(|n| u64::try_from(aut.count_words(n)).unwrap_or(u64::MAX)).fold(0, u64::saturating_add);
        if listed > LIST_CAP {
            return Err(CliError::Invalid(format!("listing {listed} words exceeds the cap of {LIST_CAP}")));
        }
        let mut csv = String::from("length,word\n");
        for n in 1..=p.list_up_to {
            for w in aut.words(n) {
                csv.push_str(&format!("{n},{w}\n"));
            }
        }
        done.files.push(("words.csv".into(), csv));
    }
    Ok(done)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitParams {
    x: Q,
    word: Vec<usize>,
    #[serde(default)]
    set: Option<SetDesc>,
}

fn orbit<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: OrbitParams = ctx.sc.params()?;
    let w = word(&p.word)?;
    let x: S = p.x.get()?;
    let orbit = ctx.sys.orbit(&w, &x)?;
    let mut csv = String::from("step,value\n");
    for (i, y) in orbit.iter().enumerate() {
        csv.push_str(&format!("{i},{}\n", y.render()));
    }
    let mut result = json!({
        "word": p.word,
        "admissible": ctx.sys.language().accepts_prefix(&w),
        "orbit": orbit.iter().map(Q::of).collect::<Vec<_>>(),
    });
    if let Some(set) = &p.set {
        let image = ctx.sys.eval_interval(&w, &set.get()?)?;
        result["image"] = serde_json::to_value(SetDesc::of(&image))?;
    }
    Ok(Done { result, files: vec![("orbit.csv".into(), csv)], status: Status::Ok })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HittingParams {
    u: SetDesc,
    v: SetDesc,
}

fn hitting<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: HittingParams = ctx.sc.params()?;
    let (u, v) = (p.u.get::<S>()?, p.v.get::<S>()?);
    let (rep, stop) = settle(hitting_sets(&ctx.sys, &u, &v, &ctx.budget))?;
    let json = HittingJson::of(&rep, &u, &v);
    let file = ctx.certificate(Certificate::Hitting(json.clone()))?;
    Ok(Done { result: serde_json::to_value(json)?, files: vec![file], status: Status::budget(stop) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WmParams {
    #[serde(rename = "type")]
    kind: Kind,
    #[serde(default)]
    k: Option<SetDesc>,
    #[serde(default)]
    q: Option<SetDesc>,
    pairs: Vec<PairJson>,
}

fn wm_cert<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: WmParams = ctx.sc.params()?;
    let (k, q) = (ctx.set_or_bounds(&p.k)?, ctx.set_or_bounds(&p.q)?);
    let pairs =
        p.pairs.iter().map(|x| Ok(SetPair { u: x.u.get()?, v: x.v.get()? })).collect::<Result<Vec<_>, CliError>>()?;
    let (cert, stop) = settle(wm_certificate(&ctx.sys, &k, &q, &pairs, p.kind.into(), &ctx.budget))?;
    let json = WmJson::of(&cert);
    let file = ctx.certificate(Certificate::WeakMixing(json.clone()))?;
    Ok(Done { result: serde_json::to_value(json)?, files: vec![file], status: Status::budget(stop) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScrambledParams {
    x: Q,
    y: Q,
    #[serde(rename = "type")]
    kind: Kind,
    /// Defaults to the budget horizon.
    #[serde(default)]
    horizon: Option<usize>,
    eps_prox: Q,
    eps_div: Q,
    k: usize,
}

fn scrambled<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: ScrambledParams = ctx.sc.params()?;
    let (x, y) = (p.x.get::<S>()?, p.y.get::<S>()?);
    let horizon = p.horizon.unwrap_or(ctx.budget.max_horizon);
    let (env, stop) = settle(distance_envelope(&ctx.sys, &x, &y, p.kind.into(), horizon, &ctx.budget))?;
    let json = EnvelopeJson::of(&env);
    let verdict = scrambled_verdict(&env, &p.eps_prox.get()?, &p.eps_div.get()?, p.k)?;
    let result = json!({
        "envelope": json,
        "verdict": {
            "verdict": match verdict.verdict {
                Verdict::Supported => "supported",
                Verdict::RefutedAtHorizon => "refuted-at-horizon",
                Verdict::Inconclusive => "inconclusive",
            },
            "proximity": { "value": Q::of(&verdict.proximity.0), "length": verdict.proximity.1 },
            "divergence": { "value": Q::of(&verdict.divergence.0), "length": verdict.divergence.1 },
            "eps_prox": Q::of(&verdict.eps_prox),
            "eps_div": Q::of(&verdict.eps_div),
            "k": verdict.k,
            "proximal_lengths": verdict.proximal_lengths,
            "divergent_lengths": verdict.divergent_lengths,
        },
    });
    let files = vec![("envelope.csv".into(), json.csv()), ctx.certificate(Certificate::Envelope(json))?];
    Ok(Done { result, files, status: Status::budget(stop) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct XiongParams {
    points: Vec<Q>,
    targets: Vec<Q>,
    #[serde(rename = "type")]
    kind: Kind,
    tolerances: Vec<Q>,
}

fn xiong<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: XiongParams = ctx.sc.params()?;
    let (points, targets, tol) = (scalars::<S>(&p.points)?, scalars::<S>(&p.targets)?, scalars::<S>(&p.tolerances)?);
    let (wit, stop) = settle(xiong_witness(&ctx.sys, &points, &targets, p.kind.into(), &tol, &ctx.budget))?;
    let json = XiongJson::of(&wit);
    let file = ctx.certificate(Certificate::Xiong(json.clone()))?;
    Ok(Done { result: serde_json::to_value(json)?, files: vec![file], status: Status::budget(stop) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StageParams {
    eps: Q,
    net_radius: Q,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpreadParams {
    seeds: Vec<SetDesc>,
    #[serde(default)]
    k: Option<SetDesc>,
    #[serde(default)]
    q: Option<SetDesc>,
    #[serde(default)]
    eps: Option<Q>,
    #[serde(default)]
    net_radius: Option<Q>,
    /// Several stages with decreasing ε instead of a single certificate.
    #[serde(default)]
    chain: Option<Vec<StageParams>>,
    /// With `chain`: read a Xiong witness for these points and targets.
    #[serde(default)]
    points: Option<Vec<Q>>,
    #[serde(default)]
    targets: Option<Vec<Q>>,
}

fn spread<S: Num>(ctx: &Ctx<S>) -> Result<Done, CliError> {
    let p: SpreadParams = ctx.sc.params()?;
    let (k, q) = (ctx.set_or_bounds(&p.k)?, ctx.set_or_bounds(&p.q)?);
    let seeds = p.seeds.iter().map(SetDesc::get).collect::<Result<Vec<IntervalSet<S>>, _>>()?;
    let net_for = |r: &Q| -> Result<QNet<S>, CliError> { Ok(build_qnet(&q, &r.get()?)?) };
    match (&p.eps, &p.net_radius, &p.chain) {
        (Some(eps), Some(r), None) => {
            if p.points.is_some() || p.targets.is_some() {
                return Err(CliError::Invalid("`points`/`targets` need `chain`".into()));
            }
            let net = net_for(r)?;
            match certify_spread(&ctx.sys, &seeds, &k, &q, &eps.get()?, &net, &ctx.budget) {
                Ok(cert) => {
                    let json = SpreadJson::of(&cert, &net);
                    let file = ctx.certificate(Certificate::Spread(json.clone()))?;
                    Ok(Done { result: serde_json::to_value(json)?, files: vec![file], status: Status::Ok })
                }
                Err(swmix_core::SearchError::Budget { partial, reason }) => Ok(Done {
                    result: json!({
                        "rows": partial.rows.iter().map(|r| json!({ "alpha": r.alpha, "word": r.word.indices() })).collect::<Vec<_>>(),
                        "failed_alpha": partial.failed_alpha,
                    }),
                    files: Vec::new(),
                    status: Status::BudgetExceeded(reason.to_string()),
                }),
                Err(swmix_core::SearchError::Invalid(e)) => Err(e.into()),
            }
        }
        (None, None, Some(stages)) => {
            let stages = stages
                .iter()
                .map(|s| Ok((s.eps.get::<S>()?, net_for(&s.net_radius)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let (chain, stop) = settle(build_chain(&ctx.sys, &seeds, &k, &q, &stages, &ctx.budget))?;
            let json = ChainJson::of(&chain);
            let mut result = serde_json::to_value(&json)?;
            match (&p.points, &p.targets, &stop) {
                (Some(pts), Some(h), None) => {
                    let wit = xiong_from_chain(&ctx.sys, &chain, &scalars::<S>(pts)?, &scalars::<S>(h)?)?;
                    result["xiong"] = serde_json::to_value(XiongJson::of(&wit.xiong))?;
                    result["stage_bounds"] = wit
                        .stages
                        .iter()
                        .map(|s| json!({ "certificate": s.certificate, "bound": Q::of(&s.bound), "coarse_bound": Q::of(&s.coarse_bound) }))
                        .collect();
                }
                (None, None, _) | (Some(_), Some(_), Some(_)) => {}
                _ => return Err(CliError::Invalid("`points` and `targets` go together".into())),
            }
            let file = ctx.certificate(Certificate::SpreadChain(json))?;
            Ok(Done { result, files: vec![file], status: Status::budget(stop) })
        }
        _ => Err(CliError::Invalid("spread needs either `eps` with `net_radius`, or `chain`".into())),
    }
}
