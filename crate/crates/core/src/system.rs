//! Switched systems `x_{n+1} = f_{ω_n}(x_n)` over piecewise-affine maps.
//!
//! Words are applied left to right: for `u = u_0 u_1 … u_{n-1}` the map
//! `f_{u_0}` acts first and `f_u = f_{u_{n-1}} ∘ ⋯ ∘ f_{u_0}`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, Interval, IntervalSet};
use crate::language::{compile, LanguageSpec, PrunedAutomaton};
use crate::map::PiecewiseAffineMap;
use crate::scalar::Scalar;
use crate::word::{Symbol, Word};

/// Default outward margin per operation in float mode.
pub const DEFAULT_TAU: f64 = 1.0 / (1u64 << 40) as f64;

/// Numeric knobs shared by every analysis on a system.
#[derive(Clone, Debug, PartialEq)]
pub struct Options<S> {
    /// Outward rounding margin; zero for exact scalars, positive otherwise.
    pub tau: f64,
    /// Overlaps must be wider than this to count as a hit.
    pub eps_min: S,
    /// Search-pruning device: enclosures are clipped to this box and
    /// branches leaving it entirely are abandoned. Not sound in general.
    pub kill_box: Option<Interval<S>>,
}

impl<S: Scalar> Default for Options<S> {
    fn default() -> Self {
        Options { tau: if S::EXACT { 0.0 } else { DEFAULT_TAU }, eps_min: S::zero(), kill_box: None }
    }
}

#[derive(Clone, Debug)]
pub struct SwitchedSystem<S> {
    maps: Vec<PiecewiseAffineMap<S>>,
    language: PrunedAutomaton,
    spec: LanguageSpec,
    bounds: Interval<S>,
    options: Options<S>,
    // `bounds` when its complement is forward invariant under every map
    trap: Option<Interval<S>>,
}

impl<S: Scalar> SwitchedSystem<S> {
    pub fn new(maps: Vec<PiecewiseAffineMap<S>>, spec: LanguageSpec, bounds: Interval<S>) -> Result<Self> {
        Self::with_options(maps, spec, bounds, Options::default())
    }

    pub fn with_options(
        maps: Vec<PiecewiseAffineMap<S>>,
        spec: LanguageSpec,
        bounds: Interval<S>,
        options: Options<S>,
    ) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidSystem("at least one map is required".into()));
        }
        if spec.alphabet() != maps.len() {
            return Err(Error::InvalidSystem(format!(
                "language alphabet {} does not match {} maps",
                spec.alphabet(),
                maps.len()
            )));
        }
        if S::EXACT && options.tau != 0.0 {
            return Err(Error::InvalidSystem("exact mode requires tau = 0".into()));
        }
        if !S::EXACT && (options.tau.is_nan() || options.tau <= 0.0) {
            return Err(Error::InvalidSystem("float mode requires tau > 0".into()));
        }
        if options.eps_min.is_negative() {
            return Err(Error::InvalidSystem("eps_min must be nonnegative".into()));
        }
        let closed = ClosedInterval::closure_of(&bounds);
        for (i, m) in maps.iter().enumerate() {
            if !m.covers(&closed) {
                return Err(Error::InvalidSystem(format!("map {i} is not defined on all of {bounds}")));
            }
        }
        let language = compile(&spec)?;
        let mut sys = SwitchedSystem { maps, language, spec, bounds, options, trap: None };
        let b: IntervalSet<S> = sys.bounds.clone().into();
        if sys.maps.iter().all(|m| b.contains_set(&m.preimage(&b, sys.options.tau))) {
            sys.trap = Some(sys.bounds.clone());
        }
        Ok(sys)
    }

    /// The two-map system `f_0 = 2x`, `f_1 = 2 - 2x` on ℝ with working
    /// bounds `(0, 1)` and unconstrained switching.
    pub fn tent_pair() -> Self {
        let two = S::from_i64(2);
        let maps = alloc::vec![
            PiecewiseAffineMap::affine(two.clone(), S::zero()).expect("nonzero slope"),
            PiecewiseAffineMap::affine(two.neg(), two).expect("nonzero slope"),
        ];
        let bounds = Interval::new(S::zero(), S::one()).expect("0 < 1");
        SwitchedSystem::new(maps, LanguageSpec::FullShift { alphabet: 2 }, bounds).expect("valid system")
    }

    /// The tent map `T` on `[0, 1]` as a one-map system.
    pub fn tent_map() -> Self {
        use crate::interval::Domain;
        use crate::map::AffinePiece;
        let two = S::from_i64(2);
        let half = S::ratio(1, 2);
        let t = PiecewiseAffineMap::new(alloc::vec![
            AffinePiece::new(Domain::bounded(S::zero(), half.clone()).expect("0 < 1/2"), two.clone(), S::zero())
                .expect("nonzero slope"),
            AffinePiece::new(Domain::bounded(half, S::one()).expect("1/2 < 1"), two.neg(), two).expect("nonzero slope"),
        ])
        .expect("disjoint pieces");
        let bounds = Interval::new(S::zero(), S::one()).expect("0 < 1");
        SwitchedSystem::new(alloc::vec![t], LanguageSpec::FullShift { alphabet: 1 }, bounds).expect("valid system")
    }

    pub fn maps(&self) -> &[PiecewiseAffineMap<S>] {
        &self.maps
    }

    pub fn alphabet(&self) -> usize {
        self.maps.len()
    }

    pub fn language(&self) -> &PrunedAutomaton {
        &self.language
    }

    pub fn language_spec(&self) -> &LanguageSpec {
        &self.spec
    }

    pub fn bounds(&self) -> &Interval<S> {
        &self.bounds
    }

    pub fn options(&self) -> &Options<S> {
        &self.options
    }

    pub fn tau(&self) -> f64 {
        self.options.tau
    }

    pub fn eps_min(&self) -> &S {
        &self.options.eps_min
    }

    /// The working bounds, when no point outside them can ever re-enter.
    pub fn trap(&self) -> Option<&Interval<S>> {
        self.trap.as_ref()
    }

    pub fn all_globally_affine(&self) -> bool {
        self.maps.iter().all(|m| m.is_globally_affine())
    }

    fn map(&self, s: Symbol) -> Result<&PiecewiseAffineMap<S>> {
        self.maps.get(s.index()).ok_or(Error::SymbolOutOfRange { symbol: s.index(), alphabet: self.maps.len() })
    }

    pub fn apply(&self, s: Symbol, x: &S) -> Option<S> {
        self.maps.get(s.index())?.eval(x)
    }

    /// `f_u(x)`.
    pub fn eval_point(&self, word: &Word, x: &S) -> Result<S> {
        word.check_alphabet(self.alphabet())?;
        let mut y = x.clone();
        for (k, &s) in word.symbols().iter().enumerate() {
            y = self.maps[s.index()].eval(&y).ok_or(Error::UndefinedAtPoint { step: k + 1 })?;
        }
        Ok(y)
    }

    /// Orbit `x, f_{u_0}(x), f_{u_1 u_0}(x), …` along the word.
    pub fn orbit(&self, word: &Word, x: &S) -> Result<Vec<S>> {
        word.check_alphabet(self.alphabet())?;
        let mut out = alloc::vec![x.clone()];
        let mut y = x.clone();
        for (k, &s) in word.symbols().iter().enumerate() {
            y = self.maps[s.index()].eval(&y).ok_or(Error::UndefinedAtPoint { step: k + 1 })?;
            out.push(y.clone());
        }
        Ok(out)
    }

    /// `f_u(I)`; fails if some part of the set leaves the piece domains.
    pub fn eval_interval(&self, word: &Word, set: &IntervalSet<S>) -> Result<IntervalSet<S>> {
        word.check_alphabet(self.alphabet())?;
        let mut cur = set.clone();
        for (k, &s) in word.symbols().iter().enumerate() {
            let m = &self.maps[s.index()];
            if !m.defined_on(&cur) {
                return Err(Error::UndefinedOnSet { step: k + 1 });
            }
            cur = m.image(&cur, self.options.tau);
        }
        Ok(cur)
    }

    /// Image under one symbol, dropping the points where it is undefined.
    pub fn image(&self, s: Symbol, set: &IntervalSet<S>) -> IntervalSet<S> {
        match self.maps.get(s.index()) {
            Some(m) => m.image(set, self.options.tau),
            None => IntervalSet::empty(),
        }
    }

    /// Image along a word, dropping undefined points.
    pub fn image_restricted(&self, word: &Word, set: &IntervalSet<S>) -> IntervalSet<S> {
        word.symbols().iter().fold(set.clone(), |cur, &s| self.image(s, &cur))
    }

    pub fn preimage(&self, s: Symbol, v: &IntervalSet<S>) -> Result<IntervalSet<S>> {
        Ok(self.map(s)?.preimage(v, self.options.tau))
    }

    /// `f_u^{-1}(V)`, peeling symbols from the last applied to the first.
    pub fn word_preimage(&self, word: &Word, v: &IntervalSet<S>) -> Result<IntervalSet<S>> {
        word.check_alphabet(self.alphabet())?;
        let mut cur = v.clone();
        for &s in word.symbols().iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.maps[s.index()].preimage(&cur, self.options.tau);
        }
        Ok(cur)
    }

    /// `{x ∈ U : f_u(x) ∈ V}` up to finitely many points. Each pullback is
    /// intersected with the forward image of `U` at that depth, so the
    /// component count stays bounded by that of the images.
    pub fn preimage_within(&self, word: &Word, u: &IntervalSet<S>, v: &IntervalSet<S>) -> Result<IntervalSet<S>> {
        word.check_alphabet(self.alphabet())?;
        let syms = word.symbols();
        let mut layers = Vec::with_capacity(syms.len());
        let mut cur = u.clone();
        for &s in syms {
            let next = self.image(s, &cur);
            layers.push(cur);
            cur = next;
        }
        let mut back = v.intersect(&cur);
        for (&s, layer) in syms.iter().zip(layers).rev() {
            if back.is_empty() {
                break;
            }
            back = self.maps[s.index()].preimage(&back, self.options.tau).intersect(&layer);
        }
        Ok(back)
    }

    /// One component of [`preimage_within`](Self::preimage_within), pulled
    /// back a single component at a time so the cost stays linear in the
    /// word length even when the full preimage has exponentially many
    /// components.
    pub fn preimage_component(&self, word: &Word, u: &IntervalSet<S>, v: &IntervalSet<S>) -> Result<Option<Interval<S>>> {
        word.check_alphabet(self.alphabet())?;
        let syms = word.symbols();
        let mut layers = Vec::with_capacity(syms.len());
        let mut cur = u.clone();
        for &s in syms {
            let next = self.image(s, &cur);
            layers.push(cur);
            cur = next;
        }
        let Some(mut back) = v.intersect(&cur).components().first().cloned() else {
            return Ok(None);
        };
        for (&s, layer) in syms.iter().zip(layers).rev() {
            let pre = self.maps[s.index()].preimage(&back.into(), self.options.tau).intersect(&layer);
            match pre.components().first() {
                Some(c) => back = c.clone(),
                None => return Ok(None),
            }
        }
        Ok(Some(back))
    }

    /// Symbolic itinerary of `x` under the reference map encoded by
    /// `partition`: at each step the first cell containing the iterate
    /// selects the symbol applied next.
    pub fn itinerary_word(&self, partition: &[(ClosedInterval<S>, Symbol)], x: &S, len: usize) -> Result<Word> {
        let mut y = x.clone();
        let mut out = Vec::with_capacity(len);
        for step in 1..=len {
            let &(_, s) =
                partition.iter().find(|(cell, _)| cell.contains(&y)).ok_or(Error::OutsidePartition { step })?;
            y = self.map(s)?.eval(&y).ok_or(Error::UndefinedAtPoint { step })?;
            out.push(s);
        }
        Word::new(out)
    }

    /// Checks `f_i ∘ f_j = f_j ∘ f_i` at every sample and every pair.
    /// Exact in rational mode, within `2τ·max(1,|y|)` in float mode.
    pub fn commutes_on(&self, samples: &[S]) -> bool {
        let m = self.maps.len();
        for i in 0..m {
            for j in (i + 1)..m {
                for x in samples {
                    let ij = self.maps[j].eval(x).and_then(|y| self.maps[i].eval(&y));
                    let ji = self.maps[i].eval(x).and_then(|y| self.maps[j].eval(&y));
                    match (ij, ji) {
                        (Some(a), Some(b)) => {
                            if S::EXACT {
                                if a != b {
                                    return false;
                                }
                            } else {
                                let tol = a.round_up(2.0 * self.options.tau).sub(&a);
                                if a.sub(&b).abs() > tol {
                                    return false;
                                }
                            }
                        }
                        (None, None) => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }
}

/// `{[0,1/2] → 0, [1/2,1] → 1}`: the partition selecting `2x` or `2 - 2x`
/// so that the tent pair reproduces the tent map.
pub fn tent_partition<S: Scalar>() -> Vec<(ClosedInterval<S>, Symbol)> {
    let half = S::ratio(1, 2);
    alloc::vec![
        (ClosedInterval::new(S::zero(), half.clone()).expect("ordered"), Symbol::from_raw(0)),
        (ClosedInterval::new(half, S::one()).expect("ordered"), Symbol::from_raw(1)),
    ]
}
