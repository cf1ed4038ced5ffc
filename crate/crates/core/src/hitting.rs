//! Hitting-time sets and weak-mixing certificates.
//!
//! For open sets `U`, `V` the type-1 hitting set collects the lengths `n`
//! for which some admissible word of length `n` maps `U` onto a set meeting
//! `V`; the type-2 hitting set collects the words themselves. Both are
//! infinite objects; searches here decide them up to a horizon by
//! depth-first enumeration of the word tree. Branches are abandoned only
//! when their enclosure is empty, or has left the system's escape trap
//! (working bounds whose complement no map can leave) while the target lies
//! inside it, or, on request, has left the configured kill-box.
//!
//! Every hit is turned into a [`HitWitness`]: a source interval inside `U`
//! whose enclosure under the word lies inside `V`, re-checkable with
//! [`SwitchedSystem::eval_interval`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, SearchError, StopReason};
use crate::interval::{Interval, IntervalSet};
use crate::sampling::Weyl;
use crate::scalar::Scalar;
use crate::system::SwitchedSystem;
use crate::word::{Symbol, Word};

/// Limits for every search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Longest word examined.
    pub max_horizon: usize,
    /// Word-tree nodes examined before giving up.
    pub max_words: u64,
    /// Optional wall-clock limit; only enforced when `clock` is set.
    pub wall_clock_ms: Option<u64>,
    /// How many elements of `S` (or stages) to exhibit.
    pub required: usize,
    /// Millisecond clock supplied by the caller (the core has no time source).
    pub clock: Option<fn() -> u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_horizon: 12, max_words: 20_000_000, wall_clock_ms: None, required: 1, clock: None }
    }
}

impl SearchBudget {
    pub fn horizon(max_horizon: usize) -> Self {
        SearchBudget { max_horizon, ..Default::default() }
    }

    pub fn with_required(mut self, required: usize) -> Self {
        self.required = required;
        self
    }

    pub fn with_max_words(mut self, max_words: u64) -> Self {
        self.max_words = max_words;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.max_horizon == 0 || self.max_words == 0 || self.required == 0 || self.wall_clock_ms == Some(0) {
            return Err(Error::InvalidInput("budget limits must be positive".into()));
        }
        Ok(())
    }
}

/// Counts examined nodes and polls the clock.
#[derive(Debug)]
pub(crate) struct Meter {
    max_words: u64,
    visited: u64,
    deadline: Option<(fn() -> u64, u64)>,
}

impl Meter {
    pub(crate) fn new(b: &SearchBudget) -> Self {
        let deadline = match (b.clock, b.wall_clock_ms) {
            (Some(clock), Some(ms)) => Some((clock, clock().saturating_add(ms))),
            _ => None,
        };
        Meter { max_words: b.max_words, visited: 0, deadline }
    }

    pub(crate) fn tick(&mut self) -> Result<(), StopReason> {
        self.visited += 1;
        if self.visited > self.max_words {
            return Err(StopReason::Words);
        }
        if self.visited & 0xff == 0 {
            if let Some((clock, end)) = self.deadline {
                if clock() >= end {
                    return Err(StopReason::WallClock);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn visited(&self) -> u64 {
        self.visited
    }
}

/// Evidence that `f_word(U) ∩ V ≠ ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource<S> {
    /// `source ⊆ U` and the enclosure of `f_word(source)` lies in `V`: a proof.
    Set(Interval<S>),
    /// `x ∈ U` with `f_word(x) ∈ V`; a proof only in exact arithmetic.
    Point(S),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitWitness<S> {
    pub word: Word,
    pub source: WitnessSource<S>,
}

impl<S: Scalar> HitWitness<S> {
    pub fn is_set(&self) -> bool {
        matches!(self.source, WitnessSource::Set(_))
    }

    /// Re-checks the witness against `U` and `V` through the core evaluator.
    pub fn verify(&self, system: &SwitchedSystem<S>, u: &IntervalSet<S>, v: &IntervalSet<S>) -> bool {
        if !system.language().accepts_prefix(&self.word) {
            return false;
        }
        match &self.source {
            WitnessSource::Set(src) => {
                if !u.contains_interval(src) {
                    return false;
                }
                match system.eval_interval(&self.word, &src.clone().into()) {
                    Ok(img) => !img.is_empty() && v.contains_set(&img),
                    Err(_) => false,
                }
            }
            WitnessSource::Point(x) => {
                u.contains_point(x) && system.eval_point(&self.word, x).is_ok_and(|y| v.contains_point(&y))
            }
        }
    }
}

/// Builds a set witness for a word already known to hit.
pub fn set_witness<S: Scalar>(
    system: &SwitchedSystem<S>,
    word: &Word,
    u: &IntervalSet<S>,
    v: &IntervalSet<S>,
) -> Option<HitWitness<S>> {
    let image = system.image_restricted(word, u);
    let hit = image.intersect(v);
    let quarter = S::ratio(1, 4);
    for comp in hit.components().iter().filter(|c| c.width() > *system.eps_min()) {
        let target: IntervalSet<S> = if S::EXACT { comp.clone().into() } else { comp.shrink(&quarter)?.into() };
        if let Ok(Some(c)) = system.preimage_component(word, u, &target) {
            let mut cand = c;
            for _ in 0..48 {
                let ok = system.eval_interval(word, &cand.clone().into()).is_ok_and(|img| !img.is_empty() && v.contains_set(&img));
                if ok {
                    return Some(HitWitness { word: word.clone(), source: WitnessSource::Set(cand) });
                }
                if S::EXACT {
                    break;
                }
                cand = cand.shrink(&quarter)?;
            }
        }
    }
    None
}

/// Samples `samples` low-discrepancy points of `U` and returns the first
/// whose image under `word` lands in `V`. A fast pre-screen; only set
/// witnesses are proofs.
pub fn sample_point_witness<S: Scalar>(
    system: &SwitchedSystem<S>,
    word: &Word,
    u: &IntervalSet<S>,
    v: &IntervalSet<S>,
    samples: usize,
) -> Option<HitWitness<S>> {
    let mut seq = Weyl::new(0x5eed);
    for comp in u.components() {
        for _ in 0..samples {
            let x = seq.next_in(comp);
            if system.eval_point(word, &x).is_ok_and(|y| v.contains_point(&y)) {
                return Some(HitWitness { word: word.clone(), source: WitnessSource::Point(x) });
            }
        }
    }
    None
}

/// Does `word` belong to `N2(U, V)`: admissible and `f_word(U) ∩ V` of
/// positive width.
pub fn in_n2<S: Scalar>(system: &SwitchedSystem<S>, word: &Word, u: &IntervalSet<S>, v: &IntervalSet<S>) -> bool {
    word.check_alphabet(system.alphabet()).is_ok()
        && system.language().accepts_prefix(word)
        && system.image_restricted(word, u).meets(v, system.eps_min())
}

/// One tracked start set and its target.
pub(crate) struct Probe<S> {
    pub(crate) start: IntervalSet<S>,
    pub(crate) target: IntervalSet<S>,
    clip: Option<Interval<S>>,
}

impl<S: Scalar> Probe<S> {
    pub(crate) fn new(system: &SwitchedSystem<S>, start: IntervalSet<S>, target: IntervalSet<S>) -> Self {
        let trap = system.trap().filter(|t| IntervalSet::from((*t).clone()).contains_set(&target)).cloned();
        let clip = match (trap, system.options().kill_box.clone()) {
            (Some(t), Some(k)) => t.intersect(&k),
            (Some(t), None) => Some(t),
            (None, k) => k,
        };
        Probe { start, target, clip }
    }

    pub(crate) fn advance(&self, system: &SwitchedSystem<S>, s: Symbol, set: &IntervalSet<S>) -> IntervalSet<S> {
        let img = system.image(s, set);
        match &self.clip {
            Some(c) => img.intersect_interval(c),
            None => img,
        }
    }
}

/// Failed subtrees remembered by [`first_word`], bounded in size.
const MEMO_CAP: usize = 1 << 18;

/// Depth-first search for the lexicographically first word of exactly
/// `len` symbols hitting every probe; `accept(state, word)` filters
/// candidates at the leaves and must depend only on the state and the
/// images reached. Subtrees that failed are remembered by
/// `(remaining length, state, images)` and not explored again.
pub(crate) fn first_word<S: Scalar>(
    system: &SwitchedSystem<S>,
    probes: &[Probe<S>],
    len: usize,
    meter: &mut Meter,
    accept: &mut dyn FnMut(usize, &[Symbol]) -> bool,
) -> Result<Option<Word>, StopReason> {
    type Key<S> = (usize, usize, Vec<IntervalSet<S>>);

    struct Dfs<'a, S> {
        system: &'a SwitchedSystem<S>,
        probes: &'a [Probe<S>],
        len: usize,
        word: Vec<Symbol>,
        failed: BTreeSet<Key<S>>,
    }

    impl<S: Scalar> Dfs<'_, S> {
        fn go(
            &mut self,
            state: usize,
            images: Vec<IntervalSet<S>>,
            meter: &mut Meter,
            accept: &mut dyn FnMut(usize, &[Symbol]) -> bool,
        ) -> Result<bool, StopReason> {
            let key = (self.len - self.word.len(), state, images);
            if self.failed.contains(&key) {
                return Ok(false);
            }
            let images = &key.2;
            for (a, t) in self.system.language().successors(state) {
                meter.tick()?;
                let next: Vec<IntervalSet<S>> =
                    self.probes.iter().zip(images).map(|(p, img)| p.advance(self.system, a, img)).collect();
                if next.iter().any(|s| s.is_empty()) {
                    continue;
                }
                self.word.push(a);
                if self.word.len() == self.len {
                    let eps = self.system.eps_min();
                    let hits = self.probes.iter().zip(&next).all(|(p, img)| img.meets(&p.target, eps));
                    if hits && accept(t, &self.word) {
                        return Ok(true);
                    }
                } else if self.go(t, next, meter, accept)? {
                    return Ok(true);
                }
                self.word.pop();
            }
            if self.failed.len() < MEMO_CAP {
                self.failed.insert(key);
            }
            Ok(false)
        }
    }

    if len == 0 {
        return Ok(None);
    }
    let mut dfs = Dfs { system, probes, len, word: Vec::with_capacity(len), failed: BTreeSet::new() };
    let starts: Vec<IntervalSet<S>> = probes.iter().map(|p| p.start.clone()).collect();
    if dfs.go(system.language().start(), starts, meter, accept)? {
        Ok(Word::new(dfs.word).ok())
    } else {
        Ok(None)
    }
}

/// `N1` and `N2` restricted to a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingReport<S> {
    pub horizon: usize,
    /// Lengths with at least one witness, ascending.
    pub type1: Vec<usize>,
    /// Every hitting word found, shortlex order, each with a set witness.
    pub type2: Vec<HitWitness<S>>,
    /// Every admissible word up to the horizon was decided.
    pub exhausted: bool,
    pub nodes: u64,
}

impl<S: Scalar> HittingReport<S> {
    fn from_words(system: &SwitchedSystem<S>, u: &IntervalSet<S>, v: &IntervalSet<S>, horizon: usize, mut words: Vec<Word>, exhausted: bool, nodes: u64) -> Self {
        words.sort_by(|a, b| a.shortlex_cmp(b));
        let type2: Vec<HitWitness<S>> = words.iter().filter_map(|w| set_witness(system, w, u, v)).collect();
        let mut type1: Vec<usize> = type2.iter().map(|w| w.word.len()).collect();
        type1.dedup();
        HittingReport { horizon, type1, type2, exhausted, nodes }
    }

    /// Every reported length carries a witness and every witness re-checks.
    pub fn verify(&self, system: &SwitchedSystem<S>, u: &IntervalSet<S>, v: &IntervalSet<S>) -> bool {
        self.type1.iter().all(|n| self.type2.iter().any(|w| w.word.len() == *n))
            && self.type2.iter().all(|w| w.verify(system, u, v))
    }
}

/// Decides `N1(U,V) ∩ [1, horizon]` and lists `N2(U,V)` up to the horizon.
pub fn hitting_sets<S: Scalar>(
    system: &SwitchedSystem<S>,
    u: &IntervalSet<S>,
    v: &IntervalSet<S>,
    budget: &SearchBudget,
) -> Result<HittingReport<S>, SearchError<HittingReport<S>>> {
    budget.validate()?;
    if u.is_empty() || v.is_empty() {
        return Err(Error::InvalidInput("U and V must be nonempty".into()).into());
    }
    let probe = Probe::new(system, u.clone(), v.clone());
    let mut meter = Meter::new(budget);
    let mut found = Vec::new();
    let mut word = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn collect<S: Scalar>(
        system: &SwitchedSystem<S>,
        probe: &Probe<S>,
        horizon: usize,
        state: usize,
        image: &IntervalSet<S>,
        word: &mut Vec<Symbol>,
        meter: &mut Meter,
        found: &mut Vec<Word>,
    ) -> Result<(), StopReason> {
        for (a, t) in system.language().successors(state) {
            meter.tick()?;
            let next = probe.advance(system, a, image);
            if next.is_empty() {
                continue;
            }
            word.push(a);
            if next.meets(&probe.target, system.eps_min()) {
                found.push(Word::new(word.clone()).expect("nonempty"));
            }
            if word.len() < horizon {
                collect(system, probe, horizon, t, &next, word, meter, found)?;
            }
            word.pop();
        }
        Ok(())
    }

    let start = system.language().start();
    let res = collect(system, &probe, budget.max_horizon, start, u, &mut word, &mut meter, &mut found);
    match res {
        Ok(()) => Ok(HittingReport::from_words(system, u, v, budget.max_horizon, found, true, meter.visited())),
        Err(reason) => Err(SearchError::Budget {
            partial: HittingReport::from_words(system, u, v, budget.max_horizon, found, false, meter.visited()),
            reason,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MixingType {
    /// Lengths are shared across pairs, words may differ.
    Type1,
    /// One word serves every pair.
    Type2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPair<S> {
    pub u: IntervalSet<S>,
    pub v: IntervalSet<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness<S> {
    pub pair: usize,
    pub witness: HitWitness<S>,
}

/// Evidence of weak mixing of order `pairs.len()` relative to `K` and `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMCertificate<S> {
    pub kind: MixingType,
    pub k: IntervalSet<S>,
    pub q: IntervalSet<S>,
    pub pairs: Vec<SetPair<S>>,
    /// The exhibited part of `S` as lengths (for type 2, the word lengths).
    pub lengths: Vec<usize>,
    /// Type 2 only: the exhibited words of `S`, strictly increasing length.
    pub words: Vec<Word>,
    /// For every element of `S` and every pair, one witness whose source
    /// lies in `K ∩ U_i`.
    pub witnesses: Vec<PairWitness<S>>,
    /// No length up to the last one examined was cut short by the budget.
    pub exhausted: bool,
}

impl<S: Scalar> WMCertificate<S> {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// Re-checks admissibility, the shape of `S`, and every witness.
    pub fn verify(&self, system: &SwitchedSystem<S>) -> bool {
        let eps = system.eps_min();
        if self.pairs.is_empty()
            || self.pairs.iter().any(|p| !p.u.meets(&self.k, eps) || !p.v.meets(&self.q, eps))
            || self.lengths.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        let sources: Vec<IntervalSet<S>> = self.pairs.iter().map(|p| p.u.intersect(&self.k)).collect();
        for w in &self.witnesses {
            let Some(pair) = self.pairs.get(w.pair) else {
                return false;
            };
            if !w.witness.is_set() || !w.witness.verify(system, &sources[w.pair], &pair.v) {
                return false;
            }
        }
        match self.kind {
            MixingType::Type1 => {
                if !self.words.is_empty() {
                    return false;
                }
                self.lengths.iter().all(|&n| {
                    (0..self.pairs.len())
                        .all(|i| self.witnesses.iter().any(|w| w.pair == i && w.witness.word.len() == n))
                })
            }
            MixingType::Type2 => {
                self.words.len() == self.lengths.len()
                    && self.words.iter().zip(&self.lengths).all(|(w, &n)| w.len() == n)
                    && self.words.iter().all(|s| {
                        (0..self.pairs.len())
                            .all(|i| self.witnesses.iter().any(|w| w.pair == i && w.witness.word == *s))
                    })
            }
        }
    }

    /// Reads a type-2 certificate as type-1 evidence with lengths `l(s_i)`.
    pub fn as_type1(&self) -> WMCertificate<S> {
        WMCertificate { kind: MixingType::Type1, words: Vec::new(), ..self.clone() }
    }
}

fn check_pairs<S: Scalar>(
    system: &SwitchedSystem<S>,
    k: &IntervalSet<S>,
    q: &IntervalSet<S>,
    pairs: &[SetPair<S>],
) -> Result<Vec<IntervalSet<S>>, Error> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("at least one pair is required".into()));
    }
    let eps = system.eps_min();
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.u.meets(k, eps) && p.v.meets(q, eps) {
                Ok(p.u.intersect(k))
            } else {
                Err(Error::InadmissiblePair { index: i })
            }
        })
        .collect()
}

/// Searches for a weak-mixing certificate of order `pairs.len()`.
///
/// Type 1 walks lengths upward and, per length, looks for the
/// lexicographically first witness word of each pair independently; a
/// length enters `S` when every pair has one. Type 2 looks for the first
/// single word of each length serving all pairs at once. The search stops
/// once `budget.required` elements of `S` are exhibited.
pub fn wm_certificate<S: Scalar>(
    system: &SwitchedSystem<S>,
    k: &IntervalSet<S>,
    q: &IntervalSet<S>,
    pairs: &[SetPair<S>],
    kind: MixingType,
    budget: &SearchBudget,
) -> Result<WMCertificate<S>, SearchError<WMCertificate<S>>> {
    budget.validate()?;
    let sources = check_pairs(system, k, q, pairs)?;
    let mut cert = WMCertificate {
        kind,
        k: k.clone(),
        q: q.clone(),
        pairs: pairs.to_vec(),
        lengths: Vec::new(),
        words: Vec::new(),
        witnesses: Vec::new(),
        exhausted: true,
    };
    let probes: Vec<Probe<S>> =
        sources.iter().zip(pairs).map(|(s, p)| Probe::new(system, s.clone(), p.v.clone())).collect();
    let mut meter = Meter::new(budget);

    for n in 1..=budget.max_horizon {
        let step = match kind {
            MixingType::Type1 => type1_length(system, &probes, n, &mut meter),
            MixingType::Type2 => type2_length(system, &probes, n, &mut meter),
        };
        match step {
            Ok(Some((word, witnesses))) => {
                cert.lengths.push(n);
                if let Some(w) = word {
                    cert.words.push(w);
                }
                cert.witnesses.extend(witnesses);
                if cert.lengths.len() >= budget.required {
                    return Ok(cert);
                }
            }
            Ok(None) => {}
            Err(reason) => {
                cert.exhausted = false;
                return Err(SearchError::Budget { partial: cert, reason });
            }
        }
    }
    Err(SearchError::Budget { partial: cert, reason: StopReason::Horizon })
}

type LengthResult<S> = Result<Option<(Option<Word>, Vec<PairWitness<S>>)>, StopReason>;

fn type1_length<S: Scalar>(system: &SwitchedSystem<S>, probes: &[Probe<S>], n: usize, meter: &mut Meter) -> LengthResult<S> {
    let mut witnesses = Vec::with_capacity(probes.len());
    for (i, p) in probes.iter().enumerate() {
        let single = core::slice::from_ref(p);
        let mut accept = |_: usize, w: &[Symbol]| witness_for(system, w, p).is_some();
        match first_word(system, single, n, meter, &mut accept)? {
            Some(w) => {
                let witness = set_witness(system, &w, &p.start, &p.target).expect("accepted words have witnesses");
                witnesses.push(PairWitness { pair: i, witness });
            }
            None => return Ok(None),
        }
    }
    Ok(Some((None, witnesses)))
}

fn type2_length<S: Scalar>(system: &SwitchedSystem<S>, probes: &[Probe<S>], n: usize, meter: &mut Meter) -> LengthResult<S> {
    let mut accept = |_: usize, w: &[Symbol]| probes.iter().all(|p| witness_for(system, w, p).is_some());
    let Some(word) = first_word(system, probes, n, meter, &mut accept)? else {
        return Ok(None);
    };
    let witnesses = probes
        .iter()
        .enumerate()
        .map(|(i, p)| PairWitness {
            pair: i,
            witness: set_witness(system, &word, &p.start, &p.target).expect("accepted words have witnesses"),
        })
        .collect();
    Ok(Some((Some(word), witnesses)))
}

fn witness_for<S: Scalar>(system: &SwitchedSystem<S>, w: &[Symbol], p: &Probe<S>) -> Option<HitWitness<S>> {
    set_witness(system, &Word::new(w.to_vec()).ok()?, &p.start, &p.target)
}

/// Common word of length at least `min_len` hitting every probe, searched
/// by increasing length up to the budget horizon.
pub(crate) fn common_word<S: Scalar>(
    system: &SwitchedSystem<S>,
    probes: &[Probe<S>],
    min_len: usize,
    max_len: usize,
    meter: &mut Meter,
) -> Result<Option<Word>, StopReason> {
    for n in min_len.max(1)..=max_len {
        let mut accept = |_: usize, w: &[Symbol]| probes.iter().all(|p| witness_for(system, w, p).is_some());
        if let Some(w) = first_word(system, probes, n, meter, &mut accept)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Refines two pairs into one: `U = U1 ∩ f_s^{-1}(U2)`, `V = V1 ∩ f_s^{-1}(V2)`.
///
/// For commuting families every word hitting `(U, V)` hits both
/// `(U1, V1)` and `(U2, V2)`. With `assume_commuting` false the maps are
/// first compared on 64 sample points of the working bounds.
#[allow(clippy::too_many_arguments)]
pub fn order_reduction<S: Scalar>(
    system: &SwitchedSystem<S>,
    u1: &IntervalSet<S>,
    u2: &IntervalSet<S>,
    v1: &IntervalSet<S>,
    v2: &IntervalSet<S>,
    s: &Word,
    assume_commuting: bool,
) -> Result<(IntervalSet<S>, IntervalSet<S>), Error> {
    if !assume_commuting {
        let mut seq = Weyl::new(0xc0ffee);
        let samples: Vec<S> = (0..64).map(|_| seq.next_in(system.bounds())).collect();
        if !system.commutes_on(&samples) {
            return Err(Error::NonCommuting);
        }
    }
    if !in_n2(system, s, u1, u2) || !in_n2(system, s, v1, v2) {
        return Err(Error::PreconditionFailed("s is not a common hitting word of (U1,U2) and (V1,V2)".into()));
    }
    let u = system.preimage_within(s, u1, u2)?;
    let v = system.preimage_within(s, v1, v2)?;
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyRefinement);
    }
    Ok((u, v))
}

/// Given `s ∈ N2(U,V)`, finds `w` hitting one component of
/// `f_s^{-1}(V) ∩ U` from `U` and returns
/// the longer hitting word `w·s` (`w` applied first).
pub fn extend_witness<S: Scalar>(
    system: &SwitchedSystem<S>,
    u: &IntervalSet<S>,
    v: &IntervalSet<S>,
    s: &Word,
    budget: &SearchBudget,
) -> Result<Word, SearchError<()>> {
    budget.validate()?;
    if !in_n2(system, s, u, v) {
        return Err(Error::PreconditionFailed("s is not in N2(U, V)".into()).into());
    }
    let Some(target) = system.preimage_component(s, u, v)? else {
        return Err(Error::EmptyRefinement.into());
    };
    let probes = [Probe::new(system, u.clone(), target.into())];
    let mut meter = Meter::new(budget);
    let aut = system.language();
    for n in 1..=budget.max_horizon {
        let mut accept = |state: usize, w: &[Symbol]| {
            aut.run_from(state, s.symbols()).is_some() && {
                let mut full = w.to_vec();
                full.extend_from_slice(s.symbols());
                Word::new(full).is_ok_and(|ws| in_n2(system, &ws, u, v))
            }
        };
        match first_word(system, &probes, n, &mut meter, &mut accept) {
            Ok(Some(w)) => return Ok(w.concat(s)),
            Ok(None) => {}
            Err(reason) => return Err(SearchError::Budget { partial: (), reason }),
        }
    }
    Err(SearchError::Budget { partial: (), reason: StopReason::Horizon })
}

/// Iterates [`extend_witness`] `count` times starting from `s`, giving
/// words of strictly increasing length in `N2(U, V)`.
pub fn extension_chain<S: Scalar>(
    system: &SwitchedSystem<S>,
    u: &IntervalSet<S>,
    v: &IntervalSet<S>,
    s: &Word,
    count: usize,
    budget: &SearchBudget,
) -> Result<Vec<Word>, SearchError<Vec<Word>>> {
    let mut out: Vec<Word> = Vec::with_capacity(count);
    let mut cur = s.clone();
    for _ in 0..count {
        match extend_witness(system, u, v, &cur, budget) {
            Ok(next) => {
                out.push(next.clone());
                cur = next;
            }
            Err(SearchError::Budget { reason, .. }) => return Err(SearchError::Budget { partial: out, reason }),
            Err(SearchError::Invalid(e)) => return Err(SearchError::Invalid(e)),
        }
    }
    Ok(out)
}

/// Convenience: `vec![SetPair { u, v }, …]` from tuples.
pub fn pairs_from<S: Scalar>(list: &[(IntervalSet<S>, IntervalSet<S>)]) -> Vec<SetPair<S>> {
    list.iter().map(|(u, v)| SetPair { u: u.clone(), v: v.clone() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::language::LanguageSpec;
    use crate::map::PiecewiseAffineMap;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn open(a: Rational, b: Rational) -> IntervalSet<Rational> {
        IntervalSet::open(a, b)
    }

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix).unwrap()
    }

    fn doubling() -> SwitchedSystem<Rational> {
        SwitchedSystem::new(
            vec![PiecewiseAffineMap::affine(r(2, 1), r(0, 1)).unwrap()],
            LanguageSpec::FullShift { alphabet: 1 },
            Interval::new(r(0, 1), r(1, 1)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tent_hitting_first_length_is_four() {
        let sys = SwitchedSystem::tent_pair();
        let (u, v) = (open(r(0, 1), r(1, 10)), open(r(9, 10), r(1, 1)));
        let rep = hitting_sets(&sys, &u, &v, &SearchBudget::horizon(4)).unwrap();
        assert_eq!(rep.type1, [4]);
        assert!(rep.exhausted);
        assert_eq!(rep.type2[0].word, w(&[0, 0, 0, 0]));
        assert_eq!(sys.eval_interval(&w(&[0, 0, 0, 0]), &u).unwrap(), open(r(0, 1), r(16, 10)));
        assert!(rep.verify(&sys, &u, &v));
    }

    #[test]
    fn overlapping_u_v_has_no_length_one_hit() {
        let sys = SwitchedSystem::tent_pair();
        let u = open(r(4, 10), r(6, 10));
        let rep = hitting_sets(&sys, &u, &u, &SearchBudget::horizon(1)).unwrap();
        assert!(rep.type1.is_empty());
        assert!(rep.exhausted);
    }

    #[test]
    fn unreachable_target_is_exhausted_empty() {
        let sys = SwitchedSystem::tent_pair();
        let rep = hitting_sets(&sys, &open(r(0, 1), r(1, 10)), &open(r(5, 1), r(6, 1)), &SearchBudget::horizon(1)).unwrap();
        assert!(rep.type1.is_empty() && rep.exhausted);
    }

    #[test]
    fn budget_exhaustion_returns_partial() {
        let sys = SwitchedSystem::tent_pair();
        let (u, v) = (open(r(0, 1), r(1, 10)), open(r(9, 10), r(1, 1)));
        let err = hitting_sets(&sys, &u, &v, &SearchBudget::horizon(10).with_max_words(5)).unwrap_err();
        let partial = err.partial().unwrap();
        assert!(!partial.exhausted);
    }

    #[test]
    fn type1_certificate_example() {
        let sys = SwitchedSystem::tent_pair();
        let kq = open(r(0, 1), r(1, 1));
        let pairs = pairs_from(&[
            (open(r(0, 1), r(1, 4)), open(r(7, 10), r(8, 10))),
            (open(r(5, 10), r(6, 10)), open(r(1, 10), r(2, 10))),
        ]);
        let cert = wm_certificate(&sys, &kq, &kq, &pairs, MixingType::Type1, &SearchBudget::horizon(2)).unwrap();
        assert_eq!(cert.lengths, [2]);
        let words: Vec<_> = cert.witnesses.iter().map(|p| p.witness.word.clone()).collect();
        assert_eq!(words, [w(&[0, 0]), w(&[1, 1])]);
        assert!(cert.verify(&sys));
        // the point orbits quoted for the two pairs
        assert_eq!(sys.eval_point(&w(&[0, 0]), &r(19, 100)).unwrap(), r(76, 100));
        assert_eq!(sys.eval_point(&w(&[1, 1]), &r(54, 100)).unwrap(), r(16, 100));
    }

    #[test]
    fn single_pair_type2_matches_hitting_sets() {
        let sys = SwitchedSystem::tent_pair();
        let kq = open(r(0, 1), r(1, 1));
        let (u, v) = (open(r(1, 10), r(2, 10)), open(r(6, 10), r(7, 10)));
        let budget = SearchBudget::horizon(6).with_required(3);
        let cert = wm_certificate(&sys, &kq, &kq, &pairs_from(&[(u.clone(), v.clone())]), MixingType::Type2, &budget)
            .unwrap();
        let rep = hitting_sets(&sys, &u, &v, &SearchBudget::horizon(6)).unwrap();
        assert_eq!(cert.lengths, rep.type1[..3]);
        for (word, n) in cert.words.iter().zip(&cert.lengths) {
            let first = rep.type2.iter().find(|h| h.word.len() == *n).unwrap();
            assert_eq!(*word, first.word);
        }
        assert!(cert.verify(&sys) && cert.as_type1().verify(&sys));
    }

    #[test]
    fn inadmissible_pair_rejected() {
        let sys = SwitchedSystem::tent_pair();
        let k = open(r(1, 2), r(1, 1));
        let pairs = pairs_from(&[(open(r(0, 1), r(1, 4)), open(r(1, 2), r(1, 1)))]);
        let err = wm_certificate(&sys, &k, &k, &pairs, MixingType::Type1, &SearchBudget::default()).unwrap_err();
        assert!(matches!(err, SearchError::Invalid(Error::InadmissiblePair { index: 0 })));
    }

    #[test]
    fn order_reduction_example() {
        let sys = doubling();
        let (u1, u2) = (open(r(0, 1), r(1, 10)), open(r(0, 1), r(4, 10)));
        let (v1, v2) = (open(r(0, 1), r(2, 10)), open(r(0, 1), r(8, 10)));
        let (u, v) = order_reduction(&sys, &u1, &u2, &v1, &v2, &w(&[0, 0]), false).unwrap();
        assert_eq!(u, u1);
        assert_eq!(v, v1);
        let far = open(r(5, 1), r(6, 1));
        assert!(matches!(
            order_reduction(&sys, &u1, &far, &v1, &v2, &w(&[0, 0]), true),
            Err(Error::PreconditionFailed(_))
        ));
        assert_eq!(
            order_reduction(&SwitchedSystem::tent_pair(), &u1, &u2, &v1, &v2, &w(&[0]), false),
            Err(Error::NonCommuting)
        );
    }

    #[test]
    fn extend_witness_example() {
        let sys = doubling();
        let (u, v) = (open(r(0, 1), r(1, 10)), open(r(0, 1), r(2, 10)));
        let ext = extend_witness(&sys, &u, &v, &w(&[0, 0]), &SearchBudget::horizon(4)).unwrap();
        assert_eq!(ext, w(&[0, 0, 0]));
        assert_eq!(sys.eval_interval(&ext, &u).unwrap(), open(r(0, 1), r(8, 10)));
        let chain = extension_chain(&sys, &u, &v, &w(&[0]), 5, &SearchBudget::horizon(4)).unwrap();
        assert!(chain.windows(2).all(|p| p[0].len() < p[1].len()));
        assert!(chain.iter().all(|c| in_n2(&sys, c, &u, &v)));
    }

    #[test]
    fn point_prescreen() {
        let sys = SwitchedSystem::tent_pair();
        let (u, v) = (open(r(0, 1), r(1, 10)), open(r(9, 10), r(1, 1)));
        let word = w(&[0, 0, 0, 0]);
        let pw = sample_point_witness(&sys, &word, &u, &v, 64).unwrap();
        assert!(!pw.is_set());
        assert!(pw.verify(&sys, &u, &v));
        assert!(sample_point_witness(&sys, &w(&[0]), &u, &v, 64).is_none());
    }
}
