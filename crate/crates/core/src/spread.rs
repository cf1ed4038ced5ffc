//! ε-spread certificates.
//!
//! A set is ε-spread in `Q` when there are centers `z_1, …, z_n`, a radius
//! `δ ∈ (0, ε)` and, for every assignment `h` of the centers to points of
//! a finite net of `Q`, one word `ω` of length `k` with `1/k < ε` such that
//! `f_ω(B(z_i, δ)) ⊆ B(h(z_i), ε)` for every `i`.
//!
//! [`certify_spread`] builds such a table by the refinement loop: each
//! assignment in turn shrinks the current windows `W_i` to preimage pieces
//! of the target balls, so the final windows serve every row at once.
//! [`build_chain`] repeats this with shrinking ε over nested seeds, and
//! [`xiong_from_chain`] reads approximating word sequences off the chain.

use alloc::vec::Vec;

use crate::chaos::{XiongStage, XiongWitness};
use crate::error::{Error, SearchError, StopReason};
use crate::geometry::CompactRep;
use crate::hitting::{common_word, set_witness, Meter, MixingType, Probe, SearchBudget, WitnessSource};
use crate::interval::{Interval, IntervalSet};
use crate::scalar::Scalar;
use crate::system::SwitchedSystem;
use crate::word::Word;

/// Largest table `m^n` materialized by default.
pub const DEFAULT_TABLE_CAP: usize = 4096;

/// Centers whose open `radius`-balls cover a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QNet<S> {
    pub radius: S,
    pub centers: Vec<S>,
}

impl<S: Scalar> QNet<S> {
    fn balls(&self) -> IntervalSet<S> {
        self.centers
            .iter()
            .filter_map(|c| Interval::ball(c, &self.radius))
            .fold(IntervalSet::empty(), |acc, b| acc.union(&b.into()))
    }

    /// `Q ⊆ ⋃ B(y_j, r)` for an open `Q`.
    pub fn covers(&self, q: &IntervalSet<S>) -> bool {
        self.balls().contains_set(q)
    }

    /// `Q ⊆ ⋃ B(y_j, r)` for a compact `Q`.
    pub fn covers_compact(&self, q: &CompactRep<S>) -> bool {
        let balls = self.balls();
        q.components().iter().all(|c| balls.components().iter().any(|b| b.lo() < c.lo() && c.hi() < b.hi()))
    }

    /// Index of the center nearest `x`, lowest index on ties.
    pub fn nearest(&self, x: &S) -> usize {
        let mut best = 0;
        for (j, c) in self.centers.iter().enumerate().skip(1) {
            if c.sub(x).abs() < self.centers[best].sub(x).abs() {
                best = j;
            }
        }
        best
    }
}

/// Uniform net of the closure of a bounded open set.
pub fn build_qnet<S: Scalar>(q: &IntervalSet<S>, r: &S) -> Result<QNet<S>, Error> {
    build_qnet_compact(&CompactRep::closure_of(q)?, r)
}

/// Each component `[a, b]` of length `L` gets `⌊L/2r⌋ + 1` evenly spaced
/// centers `a + (2k+1)L/(2c)`; a degenerate component gets one.
pub fn build_qnet_compact<S: Scalar>(q: &CompactRep<S>, r: &S) -> Result<QNet<S>, Error> {
    if !(*r > S::zero()) {
        return Err(Error::InvalidInput("net radius must be positive".into()));
    }
    let two_r = r.add(r);
    let mut centers = Vec::new();
    for c in q.components() {
        let len = c.hi().sub(c.lo());
        let count = floor_ratio(&len, &two_r) + 1;
        let step = len.div(&S::from_i64(2 * count as i64));
        for k in 0..count {
            centers.push(c.lo().add(&step.mul(&S::from_i64(2 * k as i64 + 1))));
        }
    }
    let net = QNet { radius: r.clone(), centers };
    debug_assert!(net.covers_compact(q));
    if !net.covers_compact(q) {
        return Err(Error::PreconditionFailed("net does not cover Q".into()));
    }
    Ok(net)
}

/// `⌊a / b⌋` for `a ≥ 0`, `b > 0`.
fn floor_ratio<S: Scalar>(a: &S, b: &S) -> usize {
    let q = a.div(b);
    // saturating cast: negative and NaN go to 0
    let mut k = q.to_f64() as usize;
    while k > 0 && S::from_i64(k as i64) > q {
        k -= 1;
    }
    while S::from_i64(k as i64 + 1) <= q {
        k += 1;
    }
    k
}

/// Smallest `k ≥ 1` with `1/k < ε`.
pub fn min_word_length<S: Scalar>(eps: &S) -> usize {
    floor_ratio(&S::one(), eps) + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadRow {
    /// `alpha[i]` is the net index assigned to center `i`.
    pub alpha: Vec<usize>,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadCertificate<S> {
    pub eps: S,
    pub delta: S,
    pub centers: Vec<S>,
    pub net: Vec<S>,
    /// All `m^n` assignments in lexicographic order.
    pub rows: Vec<SpreadRow>,
}

/// The `j`-th assignment of `{0..m}^n` in lexicographic order.
fn assignment(mut j: usize, m: usize, n: usize) -> Vec<usize> {
    let mut alpha = alloc::vec![0; n];
    for slot in alpha.iter_mut().rev() {
        *slot = j % m;
        j /= m;
    }
    alpha
}

fn table_size(m: usize, n: usize, cap: usize) -> Result<usize, Error> {
    let rows = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if rows > cap as u128 {
        return Err(Error::TableTooLarge { rows, cap });
    }
    Ok(rows as usize)
}

impl<S: Scalar> SpreadCertificate<S> {
    pub fn ball(&self, i: usize) -> Option<Interval<S>> {
        Interval::ball(self.centers.get(i)?, &self.delta)
    }

    /// The row for a given assignment.
    pub fn row(&self, alpha: &[usize]) -> Option<&SpreadRow> {
        let m = self.net.len();
        let j = alpha.iter().try_fold(0usize, |acc, &a| (a < m).then(|| acc * m + a))?;
        self.rows.get(j).filter(|r| r.alpha == alpha)
    }

    /// Keeps the listed centers; each restricted assignment takes the row
    /// that assigns net index 0 to every dropped center.
    pub fn restrict(&self, keep: &[usize]) -> Result<SpreadCertificate<S>, Error> {
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&i| i >= self.centers.len()) {
            return Err(Error::InvalidInput("keep must be a nonempty increasing list of center indices".into()));
        }
        let m = self.net.len();
        let rows = table_size(m, keep.len(), usize::MAX)?;
        let mut out = Vec::with_capacity(rows);
        for j in 0..rows {
            let sub = assignment(j, m, keep.len());
            let mut full = alloc::vec![0; self.centers.len()];
            for (&i, &a) in keep.iter().zip(&sub) {
                full[i] = a;
            }
            let row = self.row(&full).ok_or(Error::InvalidInput("certificate table is incomplete".into()))?;
            out.push(SpreadRow { alpha: sub, word: row.word.clone() });
        }
        Ok(SpreadCertificate {
            eps: self.eps.clone(),
            delta: self.delta.clone(),
            centers: keep.iter().map(|&i| self.centers[i].clone()).collect(),
            net: self.net.clone(),
            rows: out,
        })
    }
}

/// Re-checks every row by enclosure: `δ < ε`, the table is complete,
/// each word is admissible with `1/l(ω) < ε`, and
/// `f_ω(B(z_i, δ)) ⊆ B(y_{α(i)}, ε)` for every center.
pub fn verify_certificate<S: Scalar>(system: &SwitchedSystem<S>, cert: &SpreadCertificate<S>, net: &QNet<S>) -> bool {
    if cert.net != net.centers || cert.centers.is_empty() || net.centers.is_empty() {
        return false;
    }
    if !(cert.delta > S::zero() && cert.delta < cert.eps) {
        return false;
    }
    let (m, n) = (net.centers.len(), cert.centers.len());
    let Ok(rows) = table_size(m, n, usize::MAX) else {
        return false;
    };
    if cert.rows.len() != rows {
        return false;
    }
    let min_len = min_word_length(&cert.eps);
    let Some(balls) = (0..n).map(|i| cert.ball(i).map(IntervalSet::from)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    cert.rows.iter().enumerate().all(|(j, row)| {
        row.alpha == assignment(j, m, n)
            && row.word.len() >= min_len
            && system.language().accepts_prefix(&row.word)
            && balls.iter().zip(&row.alpha).all(|(b, &a)| {
                let Some(target) = Interval::ball(&net.centers[a], &cert.eps) else {
                    return false;
                };
                system
                    .eval_interval(&row.word, b)
                    .is_ok_and(|img| !img.is_empty() && IntervalSet::from(target).contains_set(&img))
            })
    })
}

/// The certificate with the window trail of the refinement loop:
/// `windows[j][i]` is `W_i` after row `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement<S> {
    pub certificate: SpreadCertificate<S>,
    pub windows: Vec<Vec<Interval<S>>>,
}

impl<S: Scalar> Refinement<S> {
    /// `W_i^{last} ⊆ … ⊆ W_i^1 ⊆ U_i`.
    pub fn is_nested(&self, seeds: &[IntervalSet<S>]) -> bool {
        let first_ok = self
            .windows
            .first()
            .is_some_and(|w| w.len() == seeds.len() && w.iter().zip(seeds).all(|(w, u)| u.contains_interval(w)));
        first_ok
            && self.windows.windows(2).all(|p| p[0].iter().zip(&p[1]).all(|(outer, inner)| outer.contains_interval(inner)))
    }
}

/// Partial progress when a row's search runs out of budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadProgress<S> {
    pub rows: Vec<SpreadRow>,
    /// The assignment whose common word was not found.
    pub failed_alpha: Vec<usize>,
    pub windows: Vec<Vec<Interval<S>>>,
}

#[allow(clippy::too_many_arguments)]
/// [`certify_spread`] with an explicit table cap and minimum word length,
/// returning the window trail too.
pub fn refine_spread<S: Scalar>(
    system: &SwitchedSystem<S>,
    seeds: &[IntervalSet<S>],
    k: &IntervalSet<S>,
    q: &IntervalSet<S>,
    eps: &S,
    net: &QNet<S>,
    budget: &SearchBudget,
    cap: usize,
    min_len: usize,
) -> Result<Refinement<S>, SearchError<SpreadProgress<S>>> {
    budget.validate()?;
    if !(*eps > S::zero()) {
        return Err(Error::InvalidInput("eps must be positive".into()).into());
    }
    if seeds.is_empty() || net.centers.is_empty() {
        return Err(Error::InvalidInput("seeds and net must be nonempty".into()).into());
    }
    if !net.covers(q) {
        return Err(Error::PreconditionFailed("net does not cover Q".into()).into());
    }
    let mut windows: Vec<IntervalSet<S>> = Vec::with_capacity(seeds.len());
    for (i, u) in seeds.iter().enumerate() {
        let w = u.intersect(k);
        if !w.meets(k, system.eps_min()) {
            return Err(Error::InadmissibleSeeds { index: i }.into());
        }
        windows.push(w);
    }
    let (m, n) = (net.centers.len(), seeds.len());
    let rows = table_size(m, n, cap)?;
    let min_len = min_len.max(min_word_length(eps));
    let half = eps.div(&S::from_i64(2));
    let targets: Vec<IntervalSet<S>> =
        net.centers.iter().map(|y| Interval::ball(y, &half).expect("eps > 0").into()).collect();

    let mut meter = Meter::new(budget);
    let mut table = Vec::with_capacity(rows);
    let mut trail: Vec<Vec<Interval<S>>> = Vec::with_capacity(rows);
    for j in 0..rows {
        let alpha = assignment(j, m, n);
        let probes: Vec<Probe<S>> =
            windows.iter().zip(&alpha).map(|(w, &a)| Probe::new(system, w.clone(), targets[a].clone())).collect();
        let fail = |reason| {
            SearchError::Budget {
                partial: SpreadProgress { rows: table.clone(), failed_alpha: alpha.clone(), windows: trail.clone() },
                reason,
            }
        };
        let word = match common_word(system, &probes, min_len, budget.max_horizon, &mut meter) {
            Ok(Some(w)) => w,
            Ok(None) => return Err(fail(StopReason::Horizon)),
            Err(reason) => return Err(fail(reason)),
        };
        let mut next = Vec::with_capacity(n);
        for p in &probes {
            let wit = set_witness(system, &word, &p.start, &p.target).expect("common words have witnesses");
            match wit.source {
                WitnessSource::Set(src) => next.push(src),
                WitnessSource::Point(_) => unreachable!("set witnesses only"),
            }
        }
        windows = next.iter().cloned().map(IntervalSet::from).collect();
        trail.push(next);
        table.push(SpreadRow { alpha, word });
    }

    let last = trail.last().expect("at least one row");
    let centers: Vec<S> = last.iter().map(|w| w.mid()).collect();
    let min_half = last.iter().map(|w| w.width().div(&S::from_i64(2))).min().expect("nonempty");
    let mut delta = S::one();
    while !(delta < *eps && delta <= min_half) {
        delta = delta.mul(&S::ratio(1, 2));
    }
    Ok(Refinement {
        certificate: SpreadCertificate { eps: eps.clone(), delta, centers, net: net.centers.clone(), rows: table },
        windows: trail,
    })
}

/// Runs the refinement loop over every assignment of seeds to net centers.
/// Fails with [`Error::TableTooLarge`] beyond [`DEFAULT_TABLE_CAP`] rows.
pub fn certify_spread<S: Scalar>(
    system: &SwitchedSystem<S>,
    seeds: &[IntervalSet<S>],
    k: &IntervalSet<S>,
    q: &IntervalSet<S>,
    eps: &S,
    net: &QNet<S>,
    budget: &SearchBudget,
) -> Result<SpreadCertificate<S>, SearchError<SpreadProgress<S>>> {
    refine_spread(system, seeds, k, q, eps, net, budget, DEFAULT_TABLE_CAP, 1).map(|r| r.certificate)
}

/// Certificates for strictly decreasing ε over nested center sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadChain<S> {
    pub certificates: Vec<SpreadCertificate<S>>,
    pub nets: Vec<QNet<S>>,
}

impl<S: Scalar> SpreadChain<S> {
    /// Every certificate verifies and each stage's balls lie inside the
    /// previous stage's balls.
    pub fn verify(&self, system: &SwitchedSystem<S>) -> bool {
        self.certificates.len() == self.nets.len()
            && self.certificates.iter().zip(&self.nets).all(|(c, n)| verify_certificate(system, c, n))
            && self.certificates.windows(2).all(|p| {
                p[0].centers.len() == p[1].centers.len()
                    && (0..p[0].centers.len()).all(|i| match (p[0].ball(i), p[1].ball(i)) {
                        (Some(outer), Some(inner)) => outer.contains_interval(&inner),
                        _ => false,
                    })
            })
    }
}

/// Stage `s+1` is certified on the seeds `B(z^s_i, δ_s)` of stage `s`, and
/// its words are longer than every word of stage `s`, so stage lengths
/// strictly increase along the chain.
pub fn build_chain<S: Scalar>(
    system: &SwitchedSystem<S>,
    seeds: &[IntervalSet<S>],
    k: &IntervalSet<S>,
    q: &IntervalSet<S>,
    stages: &[(S, QNet<S>)],
    budget: &SearchBudget,
) -> Result<SpreadChain<S>, SearchError<SpreadChain<S>>> {
    if stages.is_empty()
        || stages.windows(2).any(|w| w[0].0 <= w[1].0 || w[0].1.radius < w[1].1.radius)
    {
        return Err(Error::InvalidInput("ε must strictly decrease and net radii must not increase".into()).into());
    }
    let mut chain = SpreadChain { certificates: Vec::new(), nets: Vec::new() };
    let mut cur: Vec<IntervalSet<S>> = seeds.to_vec();
    let mut min_len = 1;
    for (eps, net) in stages {
        match refine_spread(system, &cur, k, q, eps, net, budget, DEFAULT_TABLE_CAP, min_len) {
            Ok(r) => {
                let c = r.certificate;
                min_len = c.rows.iter().map(|r| r.word.len()).max().unwrap_or(0) + 1;
                cur = (0..c.centers.len()).map(|i| c.ball(i).expect("δ > 0").into()).collect();
                chain.certificates.push(c);
                chain.nets.push(net.clone());
            }
            Err(SearchError::Budget { reason, .. }) => return Err(SearchError::Budget { partial: chain, reason }),
            Err(SearchError::Invalid(e)) => return Err(SearchError::Invalid(e)),
        }
    }
    Ok(chain)
}

/// One stage of [`xiong_from_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStage<S> {
    /// Index of the certificate in the chain.
    pub certificate: usize,
    /// Center covering each point of `A`.
    pub centers: Vec<usize>,
    pub alpha: Vec<usize>,
    /// `ε + max_a |y_{α(z(a))} − h(a)|`: a strict bound on the stage error.
    pub bound: S,
    /// `ε + r + ω_h`, with `ω_h` the largest spread of `h` over points sharing
    /// a center. Never below `bound`.
    pub coarse_bound: S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness<S> {
    /// Achieved errors in `stages[i].error`, certified bounds as tolerances.
    pub xiong: XiongWitness<S>,
    pub stages: Vec<ChainStage<S>>,
}

/// Reads a type-2 Xiong witness for `A` with targets `h(a) ∈ Q` off a
/// chain.
///
/// Every point must lie strictly inside some ball `B(z, δ)` of every
/// certificate from some stage on; earlier stages are skipped. At each
/// stage a center shared by several points is sent to the net center that
/// minimizes the largest distance to their targets, and the row of that
/// assignment supplies the word.
pub fn xiong_from_chain<S: Scalar>(
    system: &SwitchedSystem<S>,
    chain: &SpreadChain<S>,
    points: &[S],
    h: &[S],
) -> Result<ChainWitness<S>, Error> {
    if points.is_empty() || points.len() != h.len() || chain.certificates.is_empty() {
        return Err(Error::InvalidInput("A must be nonempty with one target per point and the chain nonempty".into()));
    }
    let covering = |c: &SpreadCertificate<S>, x: &S| (0..c.centers.len()).find(|&i| c.ball(i).is_some_and(|b| b.contains(x)));
    let mut first = 0;
    for (p, x) in points.iter().enumerate() {
        let mut last_miss = None;
        for (s, c) in chain.certificates.iter().enumerate() {
            if covering(c, x).is_none() {
                last_miss = Some(s);
            }
        }
        match last_miss {
            Some(s) if s + 1 == chain.certificates.len() => return Err(Error::NotCovered { point: p }),
            Some(s) => first = first.max(s + 1),
            None => {}
        }
    }

    let mut stages = Vec::new();
    let mut xstages = Vec::new();
    let mut tolerances = Vec::new();
    for s in first..chain.certificates.len() {
        let (c, net) = (&chain.certificates[s], &chain.nets[s]);
        let centers: Vec<usize> = points.iter().map(|x| covering(c, x).expect("checked")).collect();
        let mut alpha = alloc::vec![0; c.centers.len()];
        let mut spread = S::zero();
        for (z, slot) in alpha.iter_mut().enumerate() {
            let group: Vec<&S> = centers.iter().zip(h).filter(|(&cz, _)| cz == z).map(|(_, t)| t).collect();
            if group.is_empty() {
                continue;
            }
            let worst = |y: &S| group.iter().map(|t| y.sub(t).abs()).max().expect("nonempty");
            let mut best = 0;
            for j in 1..net.centers.len() {
                if worst(&net.centers[j]) < worst(&net.centers[best]) {
                    best = j;
                }
            }
            *slot = best;
            let hi = group.iter().max().expect("nonempty");
            let lo = group.iter().min().expect("nonempty");
            spread = S::max_of(&spread, &hi.sub(lo));
        }
        let row = c.row(&alpha).ok_or(Error::InvalidInput("certificate table is incomplete".into()))?;
        let mut bound_slack = S::zero();
        let mut error = S::zero();
        for ((x, t), &z) in points.iter().zip(h).zip(&centers) {
            bound_slack = S::max_of(&bound_slack, &net.centers[alpha[z]].sub(t).abs());
            error = S::max_of(&error, &system.eval_point(&row.word, x)?.sub(t).abs());
        }
        let bound = c.eps.add(&bound_slack);
        let coarse_bound = c.eps.add(&net.radius).add(&spread);
        tolerances.push(coarse_bound.clone());
        xstages.push(XiongStage { length: row.word.len(), words: alloc::vec![row.word.clone()], error });
        stages.push(ChainStage { certificate: s, centers, alpha, bound, coarse_bound });
    }
    Ok(ChainWitness {
        xiong: XiongWitness {
            kind: MixingType::Type2,
            points: points.to_vec(),
            targets: h.to_vec(),
            tolerances,
            stages: xstages,
        },
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn unit() -> IntervalSet<Rational> {
        IntervalSet::open(r(0, 1), r(1, 1))
    }

    #[test]
    fn qnet_examples() {
        assert_eq!(build_qnet(&unit(), &r(1, 2)).unwrap().centers, [r(1, 4), r(3, 4)]);
        assert_eq!(build_qnet(&unit(), &r(26, 100)).unwrap().centers, [r(1, 4), r(3, 4)]);
        assert_eq!(build_qnet(&unit(), &r(1, 7)).unwrap().centers.len(), 4);
        let point = CompactRep::points(&[r(1, 3)]).unwrap();
        assert_eq!(build_qnet_compact(&point, &r(1, 10)).unwrap().centers, [r(1, 3)]);
        assert!(build_qnet(&unit(), &r(0, 1)).is_err());
    }

    #[test]
    fn min_lengths() {
        assert_eq!(min_word_length(&r(1, 5)), 6);
        assert_eq!(min_word_length(&r(21, 100)), 5);
        assert_eq!(min_word_length(&r(2, 1)), 1);
    }

    #[test]
    fn degenerate_table() {
        let sys = SwitchedSystem::tent_map();
        let net = QNet { radius: r(1, 1), centers: vec![r(1, 2)] };
        let seeds = [IntervalSet::open(r(1, 10), r(2, 10))];
        let refn = refine_spread(&sys, &seeds, &unit(), &unit(), &r(1, 2), &net, &SearchBudget::horizon(40), 16, 1).unwrap();
        assert_eq!(refn.certificate.rows.len(), 1);
        assert!(refn.is_nested(&seeds));
        assert!(verify_certificate(&sys, &refn.certificate, &net));
    }

    #[test]
    fn tent_two_seeds_four_centers() {
        let sys = SwitchedSystem::tent_map();
        let net = build_qnet(&unit(), &r(1, 7)).unwrap();
        let seeds = [IntervalSet::open(r(1, 10), r(2, 10)), IntervalSet::open(r(6, 10), r(7, 10))];
        let refn = refine_spread(&sys, &seeds, &unit(), &unit(), &r(1, 5), &net, &SearchBudget::horizon(200), 4096, 1).unwrap();
        let cert = &refn.certificate;
        assert_eq!(cert.rows.len(), 16);
        assert!(refn.is_nested(&seeds));
        assert!(verify_certificate(&sys, cert, &net));

        let mut bad = cert.clone();
        bad.rows[5].word = bad.rows[5].word.truncated(3).unwrap();
        assert!(!verify_certificate(&sys, &bad, &net));
        let mut bad = cert.clone();
        bad.delta = bad.eps.clone();
        assert!(!verify_certificate(&sys, &bad, &net));

        for keep in [&[0usize][..], &[1]] {
            assert!(verify_certificate(&sys, &cert.restrict(keep).unwrap(), &net));
        }
    }

    #[test]
    fn inadmissible_seed() {
        let sys = SwitchedSystem::tent_map();
        let net = build_qnet(&unit(), &r(1, 2)).unwrap();
        let k = IntervalSet::open(r(0, 1), r(1, 2));
        let seeds = [IntervalSet::open(r(6, 10), r(7, 10))];
        let err = certify_spread(&sys, &seeds, &k, &unit(), &r(1, 2), &net, &SearchBudget::horizon(20)).unwrap_err();
        assert!(matches!(err, SearchError::Invalid(Error::InadmissibleSeeds { index: 0 })));
    }

    #[test]
    fn table_cap_refuses() {
        let sys = SwitchedSystem::tent_map();
        let net = build_qnet(&unit(), &r(1, 20)).unwrap();
        let seeds: Vec<_> = (0..5).map(|i| IntervalSet::open(r(2 * i, 10), r(2 * i + 1, 10))).collect();
        let err = certify_spread(&sys, &seeds, &unit(), &unit(), &r(1, 5), &net, &SearchBudget::horizon(20)).unwrap_err();
        assert!(matches!(err, SearchError::Invalid(Error::TableTooLarge { .. })));
    }

    fn chain() -> (SwitchedSystem<Rational>, SpreadChain<Rational>) {
        let sys = SwitchedSystem::tent_map();
        let stages: Vec<_> = [r(1, 2), r(1, 3), r(1, 4)]
            .into_iter()
            .map(|e| {
                let net = build_qnet(&unit(), &e.div(&r(2, 1))).unwrap();
                (e, net)
            })
            .collect();
        let seeds = [IntervalSet::open(r(1, 10), r(2, 10)), IntervalSet::open(r(6, 10), r(7, 10))];
        let chain = build_chain(&sys, &seeds, &unit(), &unit(), &stages, &SearchBudget::horizon(600)).unwrap();
        (sys, chain)
    }

    #[test]
    fn chain_and_xiong() {
        let (sys, chain) = chain();
        assert!(chain.verify(&sys));
        let last = chain.certificates.last().unwrap();
        let a = vec![last.centers[0].clone(), last.centers[1].clone()];
        let h = vec![r(1, 3), r(1, 3)];
        let wit = xiong_from_chain(&sys, &chain, &a, &h).unwrap();
        assert_eq!(wit.stages.len(), 3);
        assert!(wit.xiong.verify(&sys));
        assert!(wit.xiong.tolerances.windows(2).all(|p| p[0] >= p[1]));
        for st in &wit.stages {
            assert!(st.bound <= st.coarse_bound);
        }

        let err = xiong_from_chain(&sys, &chain, &[r(99, 100)], &[r(1, 2)]).unwrap_err();
        assert_eq!(err, Error::NotCovered { point: 0 });
    }
}
