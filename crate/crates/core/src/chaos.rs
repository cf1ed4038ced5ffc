//! Scrambled-pair envelopes and Xiong-chaos witnesses.
//!
//! A pair `(x, y)` is scrambled when the word-indexed orbit distances
//! have liminf zero and positive limsup. Neither limit is decidable at a
//! finite horizon, so this module computes, for each length `i`, the exact
//! minimum and maximum of `|f_ω(x) − f_s(y)|` over admissible words
//! (type 2: `s = ω`; type 1: independent `ω, s` of the same length) and
//! reports finite-horizon evidence through [`scrambled_verdict`].
//!
//! Words reaching the same automaton state and the same pair of values have
//! identical futures, so each length keeps one representative per such
//! key: the lexicographically smallest word. When every map is globally
//! affine the type-2 key collapses further to `(state, |f_ω(x) − f_ω(y)|)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, SearchError, StopReason};
use crate::hitting::{Meter, MixingType, SearchBudget};
use crate::scalar::Scalar;
use crate::system::SwitchedSystem;
use crate::word::{Symbol, Word};

/// Words attaining an envelope value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgWords {
    /// Type 2: one word moves both points.
    Common(Word),
    /// Type 1: `(ω, s)` with `ω` applied to `x` and `s` to `y`.
    Pair(Word, Word),
}

impl ArgWords {
    pub fn words(&self) -> (&Word, &Word) {
        match self {
            ArgWords::Common(w) => (w, w),
            ArgWords::Pair(a, b) => (a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeRow<S> {
    pub length: usize,
    pub d_min: S,
    pub d_max: S,
    pub arg_min: ArgWords,
    pub arg_max: ArgWords,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceEnvelope<S> {
    pub kind: MixingType,
    pub x: S,
    pub y: S,
    /// One row per length `1..=rows.len()`.
    pub rows: Vec<EnvelopeRow<S>>,
}

impl<S: Scalar> DistanceEnvelope<S> {
    /// Every arg-word is admissible, has the row's length, and reproduces
    /// the row's value.
    pub fn verify(&self, system: &SwitchedSystem<S>) -> bool {
        let dist = |arg: &ArgWords| -> Option<S> {
            let (a, b) = arg.words();
            if !system.language().accepts_prefix(a) || !system.language().accepts_prefix(b) {
                return None;
            }
            let fx = system.eval_point(a, &self.x).ok()?;
            let fy = system.eval_point(b, &self.y).ok()?;
            Some(fx.sub(&fy).abs())
        };
        let shape_ok = |arg: &ArgWords| matches!((self.kind, arg), (MixingType::Type1, ArgWords::Pair(..)) | (MixingType::Type2, ArgWords::Common(_)));
        self.rows.iter().enumerate().all(|(i, r)| {
            let (a, b) = r.arg_min.words();
            let (c, d) = r.arg_max.words();
            r.length == i + 1
                && [a, b, c, d].iter().all(|w| w.len() == r.length)
                && shape_ok(&r.arg_min)
                && shape_ok(&r.arg_max)
                && r.d_min <= r.d_max
                && dist(&r.arg_min).as_ref() == Some(&r.d_min)
                && dist(&r.arg_max).as_ref() == Some(&r.d_max)
        })
    }
}

struct Node<S> {
    state: usize,
    word: Vec<Symbol>,
    fx: S,
    fy: S,
}

/// Per-length `d_min`/`d_max` for the pair `(x, y)` up to `horizon`.
///
/// On budget exhaustion the rows completed so far are returned as the
/// partial result.
pub fn distance_envelope<S: Scalar>(
    system: &SwitchedSystem<S>,
    x: &S,
    y: &S,
    kind: MixingType,
    horizon: usize,
    budget: &SearchBudget,
) -> Result<DistanceEnvelope<S>, SearchError<DistanceEnvelope<S>>> {
    budget.validate()?;
    if x == y {
        return Err(Error::InvalidInput("x and y must differ".into()).into());
    }
    if horizon == 0 {
        return Err(Error::InvalidInput("horizon must be positive".into()).into());
    }
    let mut env = DistanceEnvelope { kind, x: x.clone(), y: y.clone(), rows: Vec::with_capacity(horizon) };
    let mut meter = Meter::new(budget);
    let res = match kind {
        MixingType::Type2 => type2_rows(system, x, y, horizon, &mut meter, &mut env.rows),
        MixingType::Type1 => type1_rows(system, x, y, horizon, &mut meter, &mut env.rows),
    };
    match res {
        Ok(()) => Ok(env),
        Err(reason) => Err(SearchError::Budget { partial: env, reason }),
    }
}

fn word_of(symbols: &[Symbol]) -> Word {
    Word::new(symbols.to_vec()).expect("rows start at length 1")
}

fn type2_rows<S: Scalar>(
    system: &SwitchedSystem<S>,
    x: &S,
    y: &S,
    horizon: usize,
    meter: &mut Meter,
    rows: &mut Vec<EnvelopeRow<S>>,
) -> Result<(), StopReason> {
    let affine = system.all_globally_affine();
    let aut = system.language();
    let mut frontier =
        alloc::vec![Node { state: aut.start(), word: Vec::new(), fx: x.clone(), fy: y.clone() }];
    for length in 1..=horizon {
        let mut seen: BTreeSet<(usize, S, S)> = BTreeSet::new();
        let mut next = Vec::new();
        for node in &frontier {
            for (a, t) in aut.successors(node.state) {
                meter.tick()?;
                let (Some(fx), Some(fy)) = (system.apply(a, &node.fx), system.apply(a, &node.fy)) else {
                    continue;
                };
                let key = if affine { (t, fx.sub(&fy).abs(), S::zero()) } else { (t, fx.clone(), fy.clone()) };
                if seen.insert(key) {
                    let mut word = node.word.clone();
                    word.push(a);
                    next.push(Node { state: t, word, fx, fy });
                }
            }
        }
        if next.is_empty() {
            // every branch left the maps' domains
            return Ok(());
        }
        let dist = |n: &Node<S>| n.fx.sub(&n.fy).abs();
        let mut lo = (0, dist(&next[0]));
        let mut hi = lo.clone();
        for (i, n) in next.iter().enumerate().skip(1) {
            let d = dist(n);
            if d < lo.1 {
                lo = (i, d.clone());
            }
            if d > hi.1 {
                hi = (i, d);
            }
        }
        rows.push(EnvelopeRow {
            length,
            d_min: lo.1,
            d_max: hi.1,
            arg_min: ArgWords::Common(word_of(&next[lo.0].word)),
            arg_max: ArgWords::Common(word_of(&next[hi.0].word)),
        });
        frontier = next;
    }
    Ok(())
}

struct Single<S> {
    state: usize,
    word: Vec<Symbol>,
    value: S,
}

fn advance_single<S: Scalar>(system: &SwitchedSystem<S>, frontier: &[Single<S>], meter: &mut Meter) -> Result<Vec<Single<S>>, StopReason> {
    let mut seen: BTreeSet<(usize, S)> = BTreeSet::new();
    let mut next = Vec::new();
    for node in frontier {
        for (a, t) in system.language().successors(node.state) {
            meter.tick()?;
            let Some(v) = system.apply(a, &node.value) else {
                continue;
            };
            if seen.insert((t, v.clone())) {
                let mut word = node.word.clone();
                word.push(a);
                next.push(Single { state: t, word, value: v });
            }
        }
    }
    Ok(next)
}

/// Distinct values in order, each with the index of its lexicographically
/// first word (frontiers are generated in lexicographic order).
fn value_index<S: Scalar>(nodes: &[Single<S>]) -> Vec<(S, usize)> {
    let mut first: BTreeMap<&S, usize> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        first.entry(&n.value).or_insert(i);
    }
    first.into_iter().map(|(v, i)| (v.clone(), i)).collect()
}

fn type1_rows<S: Scalar>(
    system: &SwitchedSystem<S>,
    x: &S,
    y: &S,
    horizon: usize,
    meter: &mut Meter,
    rows: &mut Vec<EnvelopeRow<S>>,
) -> Result<(), StopReason> {
    let start = system.language().start();
    let mut fa = alloc::vec![Single { state: start, word: Vec::new(), value: x.clone() }];
    let mut fb = alloc::vec![Single { state: start, word: Vec::new(), value: y.clone() }];
    for length in 1..=horizon {
        fa = advance_single(system, &fa, meter)?;
        fb = advance_single(system, &fb, meter)?;
        if fa.is_empty() || fb.is_empty() {
            return Ok(());
        }
        let va = value_index(&fa);
        let vb = value_index(&fb);

        // nearest neighbour of each a among the sorted b values
        let mut best: Option<(S, usize, usize)> = None;
        for (a, ia) in &va {
            meter.tick()?;
            let pos = vb.partition_point(|(b, _)| b < a);
            for j in [pos.wrapping_sub(1), pos] {
                let Some((b, ib)) = vb.get(j) else {
                    continue;
                };
                let d = a.sub(b).abs();
                let better = match &best {
                    None => true,
                    Some((bd, ba, bb)) => {
                        d < *bd || (d == *bd && (fa[*ia].word.as_slice(), fb[*ib].word.as_slice()) < (fa[*ba].word.as_slice(), fb[*bb].word.as_slice()))
                    }
                };
                if better {
                    best = Some((d, *ia, *ib));
                }
            }
        }
        let (d_min, mi, mj) = best.expect("both sides nonempty");

        let (amin, amax) = (&va[0], &va[va.len() - 1]);
        let (bmin, bmax) = (&vb[0], &vb[vb.len() - 1]);
        let up = amax.0.sub(&bmin.0);
        let down = bmax.0.sub(&amin.0);
        let (d_max, xi, yi) = if up >= down { (up, amax.1, bmin.1) } else { (down, amin.1, bmax.1) };
        rows.push(EnvelopeRow {
            length,
            d_min,
            d_max: d_max.abs(),
            arg_min: ArgWords::Pair(word_of(&fa[mi].word), word_of(&fb[mj].word)),
            arg_max: ArgWords::Pair(word_of(&fa[xi].word), word_of(&fb[yi].word)),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Both conditions observed at `k` or more lengths. Evidence, not proof.
    Supported,
    /// One of the conditions is never observed within the horizon.
    RefutedAtHorizon,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrambledVerdict<S> {
    /// Smallest `d_min` over the horizon, with its length.
    pub proximity: (S, usize),
    /// Largest `d_max` over the horizon, with its length.
    pub divergence: (S, usize),
    pub eps_prox: S,
    pub eps_div: S,
    pub k: usize,
    /// Lengths with `d_min < eps_prox`.
    pub proximal_lengths: Vec<usize>,
    /// Lengths with `d_max > eps_div`.
    pub divergent_lengths: Vec<usize>,
    pub verdict: Verdict,
}

/// Threshold rule on a finished envelope.
///
/// * fewer than `k` rows: inconclusive;
/// * no proximal length or no divergent length: refuted at this horizon;
/// * at least `k` of each: supported;
/// * otherwise inconclusive.
///
/// A supported verdict is finite evidence for the liminf/limsup conditions,
/// never a proof of them.
pub fn scrambled_verdict<S: Scalar>(env: &DistanceEnvelope<S>, eps_prox: &S, eps_div: &S, k: usize) -> Result<ScrambledVerdict<S>, Error> {
    let first = env.rows.first().ok_or_else(|| Error::InvalidInput("envelope is empty".into()))?;
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let mut proximity = (first.d_min.clone(), first.length);
    let mut divergence = (first.d_max.clone(), first.length);
    for r in &env.rows[1..] {
        if r.d_min < proximity.0 {
            proximity = (r.d_min.clone(), r.length);
        }
        if r.d_max > divergence.0 {
            divergence = (r.d_max.clone(), r.length);
        }
    }
    let proximal_lengths: Vec<usize> = env.rows.iter().filter(|r| r.d_min < *eps_prox).map(|r| r.length).collect();
    let divergent_lengths: Vec<usize> = env.rows.iter().filter(|r| r.d_max > *eps_div).map(|r| r.length).collect();
    let verdict = if env.rows.len() < k {
        Verdict::Inconclusive
    } else if proximal_lengths.is_empty() || divergent_lengths.is_empty() {
        Verdict::RefutedAtHorizon
    } else if proximal_lengths.len() >= k && divergent_lengths.len() >= k {
        Verdict::Supported
    } else {
        Verdict::Inconclusive
    };
    Ok(ScrambledVerdict {
        proximity,
        divergence,
        eps_prox: eps_prox.clone(),
        eps_div: eps_div.clone(),
        k,
        proximal_lengths,
        divergent_lengths,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiongStage<S> {
    pub length: usize,
    /// Type 2: a single shared word. Type 1: one word per point of `E`.
    pub words: Vec<Word>,
    /// `max_{x∈E} |f(x) − g(x)|` achieved by the stage words.
    pub error: S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiongWitness<S> {
    pub kind: MixingType,
    pub points: Vec<S>,
    pub targets: Vec<S>,
    /// The requested schedule; stage `i` must beat `tolerances[i]`.
    pub tolerances: Vec<S>,
    pub stages: Vec<XiongStage<S>>,
}

impl<S: Scalar> XiongWitness<S> {
    pub fn word_for(&self, stage: usize, point: usize) -> &Word {
        let st = &self.stages[stage];
        match self.kind {
            MixingType::Type2 => &st.words[0],
            MixingType::Type1 => &st.words[point],
        }
    }

    /// Re-evaluates every stage: lengths strictly increase, words are
    /// admissible, and the recomputed error matches and beats the schedule.
    pub fn verify(&self, system: &SwitchedSystem<S>) -> bool {
        if self.points.len() != self.targets.len() || self.stages.len() > self.tolerances.len() {
            return false;
        }
        let mut prev = 0;
        for (i, st) in self.stages.iter().enumerate() {
            let expected_words = match self.kind {
                MixingType::Type2 => 1,
                MixingType::Type1 => self.points.len(),
            };
            if st.length <= prev || st.words.len() != expected_words {
                return false;
            }
            prev = st.length;
            let mut err = S::zero();
            for (j, (x, g)) in self.points.iter().zip(&self.targets).enumerate() {
                let w = self.word_for(i, j);
                if w.len() != st.length || !system.language().accepts_prefix(w) {
                    return false;
                }
                match system.eval_point(w, x) {
                    Ok(v) => err = S::max_of(&err, &v.sub(g).abs()),
                    Err(_) => return false,
                }
            }
            if err != st.error || err >= self.tolerances[i] {
                return false;
            }
        }
        true
    }
}

struct Multi<S> {
    state: usize,
    word: Vec<Symbol>,
    values: Vec<S>,
}

fn max_error<S: Scalar>(values: &[S], targets: &[S]) -> S {
    values.iter().zip(targets).fold(S::zero(), |m, (v, g)| S::max_of(&m, &v.sub(g).abs()))
}

/// Builds stages `q_1 < q_2 < …` whose words carry `E` to within `ε_i` of
/// the targets, one stage per tolerance. Lengths are searched upward from
/// the previous stage up to `budget.max_horizon`; each stage takes the
/// shortest qualifying length and, within it, the lexicographically first
/// word (type 2) or first word per point (type 1).
pub fn xiong_witness<S: Scalar>(
    system: &SwitchedSystem<S>,
    points: &[S],
    targets: &[S],
    kind: MixingType,
    tolerances: &[S],
    budget: &SearchBudget,
) -> Result<XiongWitness<S>, SearchError<XiongWitness<S>>> {
    budget.validate()?;
    if points.is_empty() || points.len() != targets.len() {
        return Err(Error::InvalidInput("E must be nonempty with one target per point".into()).into());
    }
    if points.iter().collect::<BTreeSet<_>>().len() != points.len() {
        return Err(Error::InvalidInput("points of E must be distinct".into()).into());
    }
    if tolerances.is_empty()
        || tolerances.iter().any(|e| !(*e > S::zero()))
        || tolerances.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(Error::InvalidInput("tolerances must be positive and strictly decreasing".into()).into());
    }
    let mut wit = XiongWitness {
        kind,
        points: points.to_vec(),
        targets: targets.to_vec(),
        tolerances: tolerances.to_vec(),
        stages: Vec::new(),
    };
    let mut meter = Meter::new(budget);
    let res = match kind {
        MixingType::Type2 => xiong_type2(system, points, targets, tolerances, budget.max_horizon, &mut meter, &mut wit.stages),
        MixingType::Type1 => xiong_type1(system, points, targets, tolerances, budget.max_horizon, &mut meter, &mut wit.stages),
    };
    match res {
        Ok(()) if wit.stages.len() == tolerances.len() => Ok(wit),
        Ok(()) => Err(SearchError::Budget { partial: wit, reason: StopReason::Horizon }),
        Err(reason) => Err(SearchError::Budget { partial: wit, reason }),
    }
}

fn xiong_type2<S: Scalar>(
    system: &SwitchedSystem<S>,
    points: &[S],
    targets: &[S],
    tolerances: &[S],
    horizon: usize,
    meter: &mut Meter,
    stages: &mut Vec<XiongStage<S>>,
) -> Result<(), StopReason> {
    let aut = system.language();
    let mut frontier = alloc::vec![Multi { state: aut.start(), word: Vec::new(), values: points.to_vec() }];
    for length in 1..=horizon {
        let mut seen: BTreeSet<(usize, Vec<S>)> = BTreeSet::new();
        let mut next = Vec::new();
        for node in &frontier {
            for (a, t) in aut.successors(node.state) {
                meter.tick()?;
                let Some(values) = node.values.iter().map(|v| system.apply(a, v)).collect::<Option<Vec<S>>>() else {
                    continue;
                };
                if seen.insert((t, values.clone())) {
                    let mut word = node.word.clone();
                    word.push(a);
                    next.push(Multi { state: t, word, values });
                }
            }
        }
        if next.is_empty() {
            return Ok(());
        }
        let eps = &tolerances[stages.len()];
        if let Some((node, error)) = next.iter().map(|n| (n, max_error(&n.values, targets))).find(|(_, e)| e < eps) {
            stages.push(XiongStage { length, words: alloc::vec![word_of(&node.word)], error });
            if stages.len() == tolerances.len() {
                return Ok(());
            }
        }
        frontier = next;
    }
    Ok(())
}

fn xiong_type1<S: Scalar>(
    system: &SwitchedSystem<S>,
    points: &[S],
    targets: &[S],
    tolerances: &[S],
    horizon: usize,
    meter: &mut Meter,
    stages: &mut Vec<XiongStage<S>>,
) -> Result<(), StopReason> {
    let start = system.language().start();
    let mut frontiers: Vec<Vec<Single<S>>> =
        points.iter().map(|x| alloc::vec![Single { state: start, word: Vec::new(), value: x.clone() }]).collect();
    for length in 1..=horizon {
        for f in frontiers.iter_mut() {
            *f = advance_single(system, f, meter)?;
            if f.is_empty() {
                return Ok(());
            }
        }
        let eps = &tolerances[stages.len()];
        let picks: Option<Vec<(&Single<S>, S)>> = frontiers
            .iter()
            .zip(targets)
            .map(|(f, g)| f.iter().map(|n| (n, n.value.sub(g).abs())).find(|(_, e)| e < eps))
            .collect();
        if let Some(picks) = picks {
            let error = picks.iter().fold(S::zero(), |m, (_, e)| S::max_of(&m, e));
            let words = picks.iter().map(|(n, _)| word_of(&n.word)).collect();
            stages.push(XiongStage { length, words, error });
            if stages.len() == tolerances.len() {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitting::in_n2;
    use crate::interval::{Interval, IntervalSet};
    use crate::language::LanguageSpec;
    use crate::map::PiecewiseAffineMap;
    use crate::scalar::Rational;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn slope_law_type2() {
        let sys = SwitchedSystem::tent_pair();
        let env = distance_envelope(&sys, &r(2, 10), &r(25, 100), MixingType::Type2, 20, &SearchBudget::default()).unwrap();
        assert_eq!(env.rows.len(), 20);
        for row in &env.rows {
            let expect = r(5, 100).mul(&Rational::from_i64(1 << row.length));
            assert_eq!(row.d_min, expect);
            assert_eq!(row.d_max, expect);
        }
        assert!(env.verify(&sys));
    }

    #[test]
    fn type1_length_one() {
        let sys = SwitchedSystem::tent_pair();
        let env = distance_envelope(&sys, &r(2, 10), &r(25, 100), MixingType::Type1, 3, &SearchBudget::default()).unwrap();
        assert_eq!(env.rows[0].d_min, r(1, 10));
        assert_eq!(env.rows[0].d_max, r(11, 10));
        assert!(env.verify(&sys));
    }

    #[test]
    fn fixed_points_give_constant_envelope() {
        // both maps fix 0 and 1
        let sys = SwitchedSystem::new(
            vec![PiecewiseAffineMap::affine(r(1, 1), r(0, 1)).unwrap(), PiecewiseAffineMap::affine(r(1, 1), r(0, 1)).unwrap()],
            LanguageSpec::FullShift { alphabet: 2 },
            Interval::new(r(0, 1), r(1, 1)).unwrap(),
        )
        .unwrap();
        for kind in [MixingType::Type1, MixingType::Type2] {
            let env = distance_envelope(&sys, &r(0, 1), &r(1, 1), kind, 5, &SearchBudget::default()).unwrap();
            assert!(env.rows.iter().all(|row| row.d_min == r(1, 1) && row.d_max == r(1, 1)));
        }
        assert!(distance_envelope(&sys, &r(1, 2), &r(1, 2), MixingType::Type2, 5, &SearchBudget::default()).is_err());
    }

    #[test]
    fn envelope_budget_returns_rows_so_far() {
        let sys = SwitchedSystem::tent_map();
        let sys2: SwitchedSystem<Rational> = sys;
        let err = distance_envelope(&sys2, &r(1, 10), &r(2, 10), MixingType::Type2, 50, &SearchBudget::default().with_max_words(7))
            .unwrap_err();
        assert_eq!(err.partial().unwrap().rows.len(), 7);
    }

    fn env_from(d_min: &[Rational], d_max: &[Rational]) -> DistanceEnvelope<Rational> {
        let w = Word::from_indices(&[0]).unwrap();
        DistanceEnvelope {
            kind: MixingType::Type2,
            x: r(0, 1),
            y: r(1, 1),
            rows: d_min
                .iter()
                .zip(d_max)
                .enumerate()
                .map(|(i, (a, b))| EnvelopeRow {
                    length: i + 1,
                    d_min: a.clone(),
                    d_max: b.clone(),
                    arg_min: ArgWords::Common(w.clone()),
                    arg_max: ArgWords::Common(w.clone()),
                })
                .collect(),
        }
    }

    #[test]
    fn verdict_rule() {
        let z = r(0, 1);
        let big = r(6, 10);
        let small = r(1, 10);
        let mins: Vec<_> = (1..=7).map(|i| if i % 2 == 1 && i > 1 { z.clone() } else { r(3, 10) }).collect();
        let maxs: Vec<_> = (1..=7).map(|i| if i % 2 == 0 { big.clone() } else { small.clone() }).collect();
        let v = scrambled_verdict(&env_from(&mins, &maxs), &r(1, 100), &r(2, 10), 3).unwrap();
        assert_eq!(v.verdict, Verdict::Supported);
        assert_eq!(v.proximal_lengths, [3, 5, 7]);
        assert_eq!(v.divergent_lengths, [2, 4, 6]);

        let grow: Vec<_> = (1..=10).map(|i| r(5, 100).mul(&Rational::from_i64(1 << i))).collect();
        let v = scrambled_verdict(&env_from(&grow, &grow), &r(1, 100), &r(2, 10), 3).unwrap();
        assert_eq!(v.verdict, Verdict::RefutedAtHorizon);

        let v = scrambled_verdict(&env_from(&mins[..2], &maxs[..2]), &r(1, 100), &r(2, 10), 3).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn xiong_type2_on_tent_pair() {
        let sys = SwitchedSystem::tent_pair();
        let pts = [r(123, 1000)];
        let wit = xiong_witness(&sys, &pts, &[r(1, 2)], MixingType::Type2, &[r(5, 100)], &SearchBudget::horizon(10)).unwrap();
        assert_eq!(wit.stages[0].words[0], Word::from_indices(&[0, 0]).unwrap());
        assert_eq!(wit.stages[0].error, r(8, 1000));
        assert!(wit.verify(&sys));
    }

    #[test]
    fn xiong_point_three_never_reaches_half() {
        // every f_ω(0.3) is ±0.3·2^n plus an even integer
        let sys = SwitchedSystem::tent_pair();
        let err = xiong_witness(&sys, &[r(3, 10)], &[r(1, 2)], MixingType::Type2, &[r(5, 100)], &SearchBudget::horizon(10))
            .unwrap_err();
        assert!(matches!(err, SearchError::Budget { reason: StopReason::Horizon, .. }));
    }

    #[test]
    fn xiong_stages_increase_and_hit() {
        let sys = SwitchedSystem::tent_pair();
        let pts = [r(3, 11), r(7, 19)];
        let tgt = [r(1, 3), r(1, 2)];
        let tol = [r(1, 4), r(1, 5), r(1, 7)];
        let wit = xiong_witness(&sys, &pts, &tgt, MixingType::Type1, &tol, &SearchBudget::horizon(12)).unwrap();
        assert_eq!(wit.stages.iter().map(|s| s.length).collect::<Vec<_>>(), [1, 8, 9]);
        assert!(wit.verify(&sys));

        let tol = [r(1, 4), r(1, 8), r(1, 16)];

        // a shared word keeps 2^n (x - y), so type 2 is tested on one point
        let (x, g) = (r(3, 11), r(1, 3));
        let wit = xiong_witness(&sys, core::slice::from_ref(&x), core::slice::from_ref(&g), MixingType::Type2, &tol, &SearchBudget::horizon(12)).unwrap();
        assert_eq!(wit.stages.iter().map(|s| s.length).collect::<Vec<_>>(), [1, 4, 9]);
        assert!(wit.verify(&sys));
        // Lemma 2.2: each stage word hits (ball(x), ball(g(x), ε_i))
        for (st, eps) in wit.stages.iter().zip(&tol) {
            let u = IntervalSet::from(Interval::ball(&x, &r(1, 1_000_000)).unwrap());
            let v = IntervalSet::from(Interval::ball(&g, eps).unwrap());
            assert!(in_n2(&sys, &st.words[0], &u, &v));
        }
    }

    #[test]
    fn xiong_identity_return() {
        let sys = SwitchedSystem::new(
            vec![PiecewiseAffineMap::affine(r(1, 1), r(0, 1)).unwrap()],
            LanguageSpec::FullShift { alphabet: 1 },
            Interval::new(r(0, 1), r(1, 1)).unwrap(),
        )
        .unwrap();
        let wit = xiong_witness(&sys, &[r(1, 3)], &[r(1, 3)], MixingType::Type2, &[r(1, 2), r(1, 4)], &SearchBudget::default()).unwrap();
        assert_eq!(wit.stages.iter().map(|s| s.length).collect::<Vec<_>>(), [1, 2]);
    }

    #[test]
    fn xiong_rejects_bad_input() {
        let sys: SwitchedSystem<Rational> = SwitchedSystem::tent_pair();
        let b = SearchBudget::default();
        assert!(xiong_witness(&sys, &[r(1, 3), r(1, 3)], &[r(0, 1), r(1, 1)], MixingType::Type2, &[r(1, 2)], &b).is_err());
        assert!(xiong_witness(&sys, &[r(1, 3)], &[r(0, 1)], MixingType::Type2, &[r(1, 4), r(1, 2)], &b).is_err());
    }
}
