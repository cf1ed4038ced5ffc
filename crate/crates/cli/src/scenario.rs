//! Scenario files and the system/language descriptions shared with
//! certificate files.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use swmix_core::hitting::{MixingType, SearchBudget};
use swmix_core::{
    AffinePiece, Domain, Interval, IntervalSet, LanguageSpec, Options, PiecewiseAffineMap, SwitchedSystem, Symbol, Word,
};

use crate::error::CliError;
use crate::num::Num;

/// A scalar in JSON: a string (`"3/10"`, `"0.3"`) or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "QRepr", into = "String")]
pub struct Q(pub String);

#[derive(Deserialize)]
#[serde(untagged)]
enum QRepr {
    Text(String),
    Int(i64),
}

impl From<QRepr> for Q {
    fn from(r: QRepr) -> Self {
        match r {
            QRepr::Text(s) => Q(s),
            QRepr::Int(i) => Q(i.to_string()),
        }
    }
}

impl From<Q> for String {
    fn from(q: Q) -> Self {
        q.0
    }
}

impl Q {
    pub fn of<S: Num>(x: &S) -> Self {
        Q(x.render())
    }

    pub fn get<S: Num>(&self) -> Result<S, CliError> {
        S::parse(&self.0).map_err(CliError::Invalid)
    }
}

/// An open set: one interval `[lo, hi]` or a list of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetDesc {
    One([Q; 2]),
    Many(Vec<[Q; 2]>),
}

impl SetDesc {
    pub fn of<S: Num>(set: &IntervalSet<S>) -> Self {
        SetDesc::Many(set.components().iter().map(interval_desc).collect())
    }

    pub fn get<S: Num>(&self) -> Result<IntervalSet<S>, CliError> {
        let parts = match self {
            SetDesc::One(i) => std::slice::from_ref(i),
            SetDesc::Many(v) => v.as_slice(),
        };
        let parts = parts.iter().map(interval).collect::<Result<Vec<_>, _>>()?;
        Ok(IntervalSet::from_intervals(parts))
    }
}

pub fn interval_desc<S: Num>(i: &Interval<S>) -> [Q; 2] {
    [Q::of(i.lo()), Q::of(i.hi())]
}

pub fn interval<S: Num>(d: &[Q; 2]) -> Result<Interval<S>, CliError> {
    let (lo, hi) = (d[0].get::<S>()?, d[1].get::<S>()?);
    Interval::new(lo, hi).ok_or_else(|| CliError::Invalid(format!("empty interval ({}, {})", d[0].0, d[1].0)))
}

pub fn scalars<S: Num>(v: &[Q]) -> Result<Vec<S>, CliError> {
    v.iter().map(Q::get).collect()
}

pub fn word(indices: &[usize]) -> Result<Word, CliError> {
    Ok(Word::from_indices(indices)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<Q>,
    pub slope: Q,
    pub offset: Q,
}

/// Either a built-in system or explicit maps with working bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDesc {
    /// `tent-pair` (`{2x, 2 - 2x}`) or `tent-map` (the single tent map).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// One list of affine pieces per map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<Vec<PieceDesc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[Q; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_min: Option<Q>,
    /// Outward rounding margin for the float backend.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kill_box: Option<[Q; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LanguageDesc {
    FullShift {},
    GoldenMean {},
    Forbidden { forbidden: Vec<Vec<usize>> },
    /// Transitions are `[from, symbol, to]`.
    Automaton { states: usize, start: usize, transitions: Vec<[usize; 3]> },
}

impl LanguageDesc {
    pub fn spec(&self, alphabet: usize) -> Result<LanguageSpec, CliError> {
        Ok(match self {
            LanguageDesc::FullShift {} => LanguageSpec::FullShift { alphabet },
            LanguageDesc::GoldenMean {} => {
                if alphabet != 2 {
                    return Err(CliError::Invalid("the golden-mean language needs exactly two maps".into()));
                }
                LanguageSpec::golden_mean()
            }
            LanguageDesc::Forbidden { forbidden } => LanguageSpec::ForbiddenWords {
                alphabet,
                forbidden: forbidden.iter().map(|w| word(w)).collect::<Result<_, _>>()?,
            },
            LanguageDesc::Automaton { states, start, transitions } => LanguageSpec::Automaton {
                alphabet,
                states: *states,
                start: *start,
                transitions: transitions
                    .iter()
                    .map(|&[a, s, b]| Ok((a, Symbol::new(s)?, b)))
                    .collect::<Result<_, swmix_core::Error>>()?,
            },
        })
    }
}

impl SystemDesc {
    pub fn builtin(name: &str) -> Self {
        SystemDesc { builtin: Some(name.into()), maps: None, bounds: None, eps_min: None, tau: None, kill_box: None }
    }

    pub fn build<S: Num>(&self, language: Option<&LanguageDesc>) -> Result<SwitchedSystem<S>, CliError> {
        let (maps, default_bounds) = match (&self.builtin, &self.maps) {
            (Some(name), None) => {
                let sys = match name.as_str() {
                    "tent-pair" => SwitchedSystem::<S>::tent_pair(),
                    "tent-map" => SwitchedSystem::<S>::tent_map(),
                    other => return Err(CliError::Invalid(format!("unknown builtin system `{other}`"))),
                };
                (sys.maps().to_vec(), Some(sys.bounds().clone()))
            }
            (None, Some(maps)) => {
                let maps = maps.iter().map(|pieces| build_map(pieces)).collect::<Result<Vec<_>, _>>()?;
                (maps, None)
            }
            _ => return Err(CliError::Invalid("system needs exactly one of `builtin` and `maps`".into())),
        };
        let bounds = match (&self.bounds, default_bounds) {
            (Some(b), _) => interval(b)?,
            (None, Some(b)) => b,
            (None, None) => return Err(CliError::Invalid("explicit systems need `bounds`".into())),
        };
        let mut options = Options::<S>::default();
        if let Some(e) = &self.eps_min {
            options.eps_min = e.get()?;
        }
        if let Some(t) = self.tau {
            if S::EXACT && t != 0.0 {
                return Err(CliError::Invalid("`tau` must be 0 in rational mode".into()));
            }
            options.tau = t;
        }
        if let Some(k) = &self.kill_box {
            options.kill_box = Some(interval(k)?);
        }
        let spec = language.unwrap_or(&LanguageDesc::FullShift {}).spec(maps.len())?;
        Ok(SwitchedSystem::with_options(maps, spec, bounds, options)?)
    }
}

fn build_map<S: Num>(pieces: &[PieceDesc]) -> Result<PiecewiseAffineMap<S>, CliError> {
    let pieces = pieces
        .iter()
        .map(|p| {
            let lo = p.lo.as_ref().map(Q::get).transpose()?;
            let hi = p.hi.as_ref().map(Q::get).transpose()?;
            let domain = Domain::new(lo, hi).ok_or_else(|| CliError::Invalid("piece domain is empty".into()))?;
            Ok(AffinePiece::new(domain, p.slope.get()?, p.offset.get()?)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(PiecewiseAffineMap::new(pieces)?)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    #[default]
    Rational,
    Float,
}

impl NumericMode {
    pub fn name(self) -> &'static str {
        match self {
            NumericMode::Rational => "rational",
            NumericMode::Float => "float",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Type1,
    Type2,
}

impl From<Kind> for MixingType {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Type1 => MixingType::Type1,
            Kind::Type2 => MixingType::Type2,
        }
    }
}

impl From<MixingType> for Kind {
    fn from(k: MixingType) -> Self {
        match k {
            MixingType::Type1 => Kind::Type1,
            MixingType::Type2 => Kind::Type2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetDesc {
    #[serde(default = "default_horizon")]
    pub max_horizon: usize,
    #[serde(default = "default_words")]
    pub max_words: u64,
    #[serde(default)]
    pub wall_clock_ms: Option<u64>,
    #[serde(default = "default_required")]
    pub required: usize,
}

fn default_horizon() -> usize {
    20
}

fn default_words() -> u64 {
    SearchBudget::default().max_words
}

fn default_required() -> usize {
    1
}

impl Default for BudgetDesc {
    fn default() -> Self {
        BudgetDesc { max_horizon: default_horizon(), max_words: default_words(), wall_clock_ms: None, required: 1 }
    }
}

static START: OnceLock<Instant> = OnceLock::new();

fn elapsed_ms() -> u64 {
    START.get_or_init(Instant::now).elapsed().as_millis() as u64
}

impl BudgetDesc {
    pub fn budget(&self) -> Result<SearchBudget, CliError> {
        let mut b = SearchBudget::horizon(self.max_horizon).with_max_words(self.max_words).with_required(self.required);
        if let Some(ms) = self.wall_clock_ms {
            START.get_or_init(Instant::now);
            b.wall_clock_ms = Some(ms);
            b.clock = Some(elapsed_ms);
        }
        b.validate()?;
        Ok(b)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Not needed by `tent-demo`.
    #[serde(default)]
    pub system: Option<SystemDesc>,
    #[serde(default)]
    pub language: Option<LanguageDesc>,
    /// `prelang`, `orbit`, `hitting`, `wm-cert`, `scrambled`, `xiong`,
    /// `spread` or `tent-demo`.
    pub task: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub budget: BudgetDesc,
    #[serde(default)]
    pub numeric: NumericMode,
    /// Output directory; `--out` takes precedence.
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Task parameters checked against the task's schema.
    pub fn params<P: serde::de::DeserializeOwned>(&self) -> Result<P, CliError> {
        let v = if self.params.is_null() { Value::Object(Default::default()) } else { self.params.clone() };
        serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("params for `{}`: {e}", self.task)))
    }
}
