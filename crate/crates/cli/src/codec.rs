//! JSON forms of the certificates and reports, with conversions both ways.
//!
//! Every certificate file carries the system it was computed for, so
//! `swmix verify` can rebuild the system and re-run the owning verifier.

use serde::{Deserialize, Serialize};
use swmix_core::chaos::{ArgWords, DistanceEnvelope, EnvelopeRow, XiongStage, XiongWitness};
use swmix_core::hitting::{HitWitness, HittingReport, PairWitness, SetPair, WMCertificate, WitnessSource};
use swmix_core::spread::{QNet, SpreadCertificate, SpreadChain, SpreadRow};
use swmix_core::{IntervalSet, SwitchedSystem, Word};

use crate::error::CliError;
use crate::num::Num;
use crate::scenario::{interval, interval_desc, scalars, word, Kind, LanguageDesc, NumericMode, SetDesc, SystemDesc, Q};

pub const FORMAT: &str = "swmix-certificate";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceJson {
    Set([Q; 2]),
    Point(Q),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub word: Vec<usize>,
    pub source: SourceJson,
}

impl WitnessJson {
    pub fn of<S: Num>(w: &HitWitness<S>) -> Self {
        let source = match &w.source {
            WitnessSource::Set(i) => SourceJson::Set(interval_desc(i)),
            WitnessSource::Point(x) => SourceJson::Point(Q::of(x)),
        };
        WitnessJson { word: w.word.indices(), source }
    }

    pub fn get<S: Num>(&self) -> Result<HitWitness<S>, CliError> {
        let source = match &self.source {
            SourceJson::Set(i) => WitnessSource::Set(interval(i)?),
            SourceJson::Point(x) => WitnessSource::Point(x.get()?),
        };
        Ok(HitWitness { word: word(&self.word)?, source })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingJson {
    pub u: SetDesc,
    pub v: SetDesc,
    pub horizon: usize,
    pub type1: Vec<usize>,
    pub type2: Vec<WitnessJson>,
    pub exhausted: bool,
    pub nodes: u64,
}

impl HittingJson {
    pub fn of<S: Num>(r: &HittingReport<S>, u: &IntervalSet<S>, v: &IntervalSet<S>) -> Self {
        HittingJson {
            u: SetDesc::of(u),
            v: SetDesc::of(v),
            horizon: r.horizon,
            type1: r.type1.clone(),
            type2: r.type2.iter().map(WitnessJson::of).collect(),
            exhausted: r.exhausted,
            nodes: r.nodes,
        }
    }

    pub fn verify<S: Num>(&self, sys: &SwitchedSystem<S>) -> Result<bool, CliError> {
        let report = HittingReport {
            horizon: self.horizon,
            type1: self.type1.clone(),
            type2: self.type2.iter().map(WitnessJson::get).collect::<Result<_, _>>()?,
            exhausted: self.exhausted,
            nodes: self.nodes,
        };
        Ok(report.verify(sys, &self.u.get()?, &self.v.get()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub u: SetDesc,
    pub v: SetDesc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitnessJson {
    pub pair: usize,
    #[serde(flatten)]
    pub witness: WitnessJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WmJson {
    #[serde(rename = "type")]
    pub kind: Kind,
    pub k: SetDesc,
    pub q: SetDesc,
    pub pairs: Vec<PairJson>,
    pub lengths: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub witnesses: Vec<PairWitnessJson>,
    pub exhausted: bool,
}

impl WmJson {
    pub fn of<S: Num>(c: &WMCertificate<S>) -> Self {
        WmJson {
            kind: c.kind.into(),
            k: SetDesc::of(&c.k),
            q: SetDesc::of(&c.q),
            pairs: c.pairs.iter().map(|p| PairJson { u: SetDesc::of(&p.u), v: SetDesc::of(&p.v) }).collect(),
            lengths: c.lengths.clone(),
            words: c.words.iter().map(Word::indices).collect(),
            witnesses: c
                .witnesses
                .iter()
                .map(|w| PairWitnessJson { pair: w.pair, witness: WitnessJson::of(&w.witness) })
                .collect(),
            exhausted: c.exhausted,
        }
    }

    pub fn get<S: Num>(&self) -> Result<WMCertificate<S>, CliError> {
        Ok(WMCertificate {
            kind: self.kind.into(),
            k: self.k.get()?,
            q: self.q.get()?,
            pairs: self
                .pairs
                .iter()
                .map(|p| Ok(SetPair { u: p.u.get()?, v: p.v.get()? }))
                .collect::<Result<_, CliError>>()?,
            lengths: self.lengths.clone(),
            words: self.words.iter().map(|w| word(w)).collect::<Result<_, _>>()?,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| Ok(PairWitness { pair: w.pair, witness: w.witness.get()? }))
                .collect::<Result<_, CliError>>()?,
            exhausted: self.exhausted,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgJson {
    Common(Vec<usize>),
    Pair([Vec<usize>; 2]),
}

impl ArgJson {
    fn of(a: &ArgWords) -> Self {
        match a {
            ArgWords::Common(w) => ArgJson::Common(w.indices()),
            ArgWords::Pair(a, b) => ArgJson::Pair([a.indices(), b.indices()]),
        }
    }

    fn get(&self) -> Result<ArgWords, CliError> {
        Ok(match self {
            ArgJson::Common(w) => ArgWords::Common(word(w)?),
            ArgJson::Pair([a, b]) => ArgWords::Pair(word(a)?, word(b)?),
        })
    }

    /// Both words as digit strings, for CSV columns.
    pub fn columns(&self) -> (String, String) {
        let text = |w: &[usize]| word(w).map(|w| w.to_string()).unwrap_or_default();
        match self {
            ArgJson::Common(w) => (text(w), text(w)),
            ArgJson::Pair([a, b]) => (text(a), text(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeRowJson {
    pub length: usize,
    pub d_min: Q,
    pub d_max: Q,
    pub arg_min: ArgJson,
    pub arg_max: ArgJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeJson {
    #[serde(rename = "type")]
    pub kind: Kind,
    pub x: Q,
    pub y: Q,
    pub rows: Vec<EnvelopeRowJson>,
}

impl EnvelopeJson {
    pub fn of<S: Num>(e: &DistanceEnvelope<S>) -> Self {
        EnvelopeJson {
            kind: e.kind.into(),
            x: Q::of(&e.x),
            y: Q::of(&e.y),
            rows: e
                .rows
                .iter()
                .map(|r| EnvelopeRowJson {
                    length: r.length,
                    d_min: Q::of(&r.d_min),
                    d_max: Q::of(&r.d_max),
                    arg_min: ArgJson::of(&r.arg_min),
                    arg_max: ArgJson::of(&r.arg_max),
                })
                .collect(),
        }
    }

    pub fn get<S: Num>(&self) -> Result<DistanceEnvelope<S>, CliError> {
        Ok(DistanceEnvelope {
            kind: self.kind.into(),
            x: self.x.get()?,
            y: self.y.get()?,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    Ok(EnvelopeRow {
                        length: r.length,
                        d_min: r.d_min.get()?,
                        d_max: r.d_max.get()?,
                        arg_min: r.arg_min.get()?,
                        arg_max: r.arg_max.get()?,
                    })
                })
                .collect::<Result<_, CliError>>()?,
        })
    }

    /// `length,d_min,d_max,word_min,word_max`; type-1 rows put `ω/s` in the
    /// word columns.
    pub fn csv(&self) -> String {
        let mut out = String::from("length,d_min,d_max,word_min,word_max\n");
        for r in &self.rows {
            let cell = |a: &ArgJson| match a.columns() {
                (x, y) if x == y => x,
                (x, y) => format!("{x}/{y}"),
            };
            out.push_str(&format!("{},{},{},{},{}\n", r.length, r.d_min.0, r.d_max.0, cell(&r.arg_min), cell(&r.arg_max)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiongStageJson {
    pub length: usize,
    pub words: Vec<Vec<usize>>,
    pub error: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiongJson {
    #[serde(rename = "type")]
    pub kind: Kind,
    pub points: Vec<Q>,
    pub targets: Vec<Q>,
    pub tolerances: Vec<Q>,
    pub stages: Vec<XiongStageJson>,
}

impl XiongJson {
    pub fn of<S: Num>(w: &XiongWitness<S>) -> Self {
        XiongJson {
            kind: w.kind.into(),
            points: w.points.iter().map(Q::of).collect(),
            targets: w.targets.iter().map(Q::of).collect(),
            tolerances: w.tolerances.iter().map(Q::of).collect(),
            stages: w
                .stages
                .iter()
                .map(|s| XiongStageJson {
                    length: s.length,
                    words: s.words.iter().map(Word::indices).collect(),
                    error: Q::of(&s.error),
                })
                .collect(),
        }
    }

    pub fn get<S: Num>(&self) -> Result<XiongWitness<S>, CliError> {
        Ok(XiongWitness {
            kind: self.kind.into(),
            points: scalars(&self.points)?,
            targets: scalars(&self.targets)?,
            tolerances: scalars(&self.tolerances)?,
            stages: self
                .stages
                .iter()
                .map(|s| {
                    Ok(XiongStage {
                        length: s.length,
                        words: s.words.iter().map(|w| word(w)).collect::<Result<_, _>>()?,
                        error: s.error.get()?,
                    })
                })
                .collect::<Result<_, CliError>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadRowJson {
    pub alpha: Vec<usize>,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadJson {
    pub eps: Q,
    pub delta: Q,
    pub centers: Vec<Q>,
    pub net: Vec<Q>,
    pub net_radius: Q,
    pub rows: Vec<SpreadRowJson>,
}

impl SpreadJson {
    pub fn of<S: Num>(c: &SpreadCertificate<S>, net: &QNet<S>) -> Self {
        SpreadJson {
            eps: Q::of(&c.eps),
            delta: Q::of(&c.delta),
            centers: c.centers.iter().map(Q::of).collect(),
            net: c.net.iter().map(Q::of).collect(),
            net_radius: Q::of(&net.radius),
            rows: c.rows.iter().map(|r| SpreadRowJson { alpha: r.alpha.clone(), word: r.word.indices() }).collect(),
        }
    }

    pub fn get<S: Num>(&self) -> Result<(SpreadCertificate<S>, QNet<S>), CliError> {
        let cert = SpreadCertificate {
            eps: self.eps.get()?,
            delta: self.delta.get()?,
            centers: scalars(&self.centers)?,
            net: scalars(&self.net)?,
            rows: self
                .rows
                .iter()
                .map(|r| Ok(SpreadRow { alpha: r.alpha.clone(), word: word(&r.word)? }))
                .collect::<Result<_, CliError>>()?,
        };
        let net = QNet { radius: self.net_radius.get()?, centers: scalars(&self.net)? };
        Ok((cert, net))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub certificates: Vec<SpreadJson>,
}

impl ChainJson {
    pub fn of<S: Num>(c: &SpreadChain<S>) -> Self {
        ChainJson { certificates: c.certificates.iter().zip(&c.nets).map(|(c, n)| SpreadJson::of(c, n)).collect() }
    }

    pub fn get<S: Num>(&self) -> Result<SpreadChain<S>, CliError> {
        let (certificates, nets) = self.certificates.iter().map(SpreadJson::get).collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
        Ok(SpreadChain { certificates, nets })
    }
}

/// The certificate payload, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Hitting(HittingJson),
    WeakMixing(WmJson),
    Envelope(EnvelopeJson),
    Xiong(XiongJson),
    Spread(SpreadJson),
    SpreadChain(ChainJson),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Hitting(_) => "hitting",
            Certificate::WeakMixing(_) => "weak-mixing",
            Certificate::Envelope(_) => "envelope",
            Certificate::Xiong(_) => "xiong",
            Certificate::Spread(_) => "spread",
            Certificate::SpreadChain(_) => "spread-chain",
        }
    }

    pub fn verify<S: Num>(&self, sys: &SwitchedSystem<S>) -> Result<bool, CliError> {
        Ok(match self {
            Certificate::Hitting(h) => h.verify(sys)?,
            Certificate::WeakMixing(w) => w.get::<S>()?.verify(sys),
            Certificate::Envelope(e) => e.get::<S>()?.verify(sys),
            Certificate::Xiong(x) => x.get::<S>()?.verify(sys),
            Certificate::Spread(s) => {
                let (cert, net) = s.get::<S>()?;
                swmix_core::spread::verify_certificate(sys, &cert, &net)
            }
            Certificate::SpreadChain(c) => c.get::<S>()?.verify(sys),
        })
    }
}

/// A certificate together with the system it speaks about.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub numeric: NumericMode,
    pub system: SystemDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<LanguageDesc>,
    pub certificate: Certificate,
}

impl CertificateFile {
    pub fn new(numeric: NumericMode, system: &SystemDesc, language: Option<&LanguageDesc>, certificate: Certificate) -> Self {
        CertificateFile {
            format: FORMAT.into(),
            numeric,
            system: system.clone(),
            language: language.cloned(),
            certificate,
        }
    }

    pub fn verify(&self) -> Result<bool, CliError> {
        if self.format != FORMAT {
            return Err(CliError::Invalid(format!("unknown certificate format `{}`", self.format)));
        }
        match self.numeric {
            NumericMode::Rational => self.certificate.verify(&self.system.build::<swmix_core::Rational>(self.language.as_ref())?),
            NumericMode::Float => self.certificate.verify(&self.system.build::<swmix_core::Float>(self.language.as_ref())?),
        }
    }
}
