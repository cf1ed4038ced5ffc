//! Switching languages and their pre-languages.
//!
//! A constraint set Λ of infinite switching sequences is presented as a full
//! shift, a subshift of finite type given by forbidden words, or a
//! deterministic labelled graph. [`compile`] turns each into a
//! [`PrunedAutomaton`] whose paths from the start state spell exactly the
//! finite prefixes of sequences in Λ. Because those prefixes must extend to
//! infinite sequences, states with no infinite continuation are removed.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word, MAX_ALPHABET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageSpec {
    FullShift { alphabet: usize },
    ForbiddenWords { alphabet: usize, forbidden: Vec<Word> },
    /// Deterministic graph; every state is accepting, Λ is the set of
    /// labels of infinite paths from `start`.
    Automaton { alphabet: usize, states: usize, start: usize, transitions: Vec<(usize, Symbol, usize)> },
}

impl LanguageSpec {
    pub fn alphabet(&self) -> usize {
        match self {
            LanguageSpec::FullShift { alphabet }
            | LanguageSpec::ForbiddenWords { alphabet, .. }
            | LanguageSpec::Automaton { alphabet, .. } => *alphabet,
        }
    }

    /// The golden-mean shift: binary sequences without `11`.
    pub fn golden_mean() -> Self {
        LanguageSpec::ForbiddenWords {
            alphabet: 2,
            forbidden: vec![Word::from_indices(&[1, 1]).expect("nonempty")],
        }
    }
}

const NONE: u32 = u32::MAX;

/// Deterministic automaton in which every state admits an infinite path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedAutomaton {
    alphabet: usize,
    start: u32,
    // row-major: delta[state * alphabet + symbol]
    delta: Vec<u32>,
}

impl PrunedAutomaton {
    pub fn full_shift(alphabet: usize) -> Result<Self> {
        compile(&LanguageSpec::FullShift { alphabet })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len() / self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start as usize
    }

    pub fn step(&self, state: usize, symbol: Symbol) -> Option<usize> {
        if symbol.index() >= self.alphabet {
            return None;
        }
        match self.delta[state * self.alphabet + symbol.index()] {
            NONE => None,
            t => Some(t as usize),
        }
    }

    /// State reached from `state` after reading `symbols`.
    pub fn run_from(&self, state: usize, symbols: &[Symbol]) -> Option<usize> {
        symbols.iter().try_fold(state, |q, &a| self.step(q, a))
    }

    /// `w ∈ ℒ(Λ)`.
    pub fn accepts_prefix(&self, w: &Word) -> bool {
        self.run_from(self.start(), w.symbols()).is_some()
    }

    /// Outgoing transitions of `state` in symbol order.
    pub fn successors(&self, state: usize) -> impl Iterator<Item = (Symbol, usize)> + '_ {
        let row = &self.delta[state * self.alphabet..(state + 1) * self.alphabet];
        row.iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(|(a, &t)| (Symbol::from_raw(a as u8), t as usize))
    }

    /// Lazy lexicographic stream of `ℒ^n(Λ)`.
    pub fn words(&self, n: usize) -> Words<'_, fn(&[Symbol]) -> bool> {
        Words::new(self, n, keep_all)
    }

    /// Like [`words`](Self::words) but abandons every branch whose prefix
    /// `keep` rejects.
    pub fn words_pruned<F: FnMut(&[Symbol]) -> bool>(&self, n: usize, keep: F) -> Words<'_, F> {
        Words::new(self, n, keep)
    }

    /// `|ℒ^n(Λ)|` through powers of the transfer matrix.
    pub fn count_words(&self, n: usize) -> BigUint {
        let k = self.state_count();
        let mut a = vec![vec![BigUint::zero(); k]; k];
        for (q, row) in a.iter_mut().enumerate() {
            for (_, t) in self.successors(q) {
                row[t] += 1u32;
            }
        }
        let p = matrix_power(&a, n);
        p[self.start()].iter().fold(BigUint::zero(), |acc, x| acc + x)
    }
}

fn keep_all(_: &[Symbol]) -> bool {
    true
}

fn matrix_power(a: &[Vec<BigUint>], mut n: usize) -> Vec<Vec<BigUint>> {
    let k = a.len();
    let mut result: Vec<Vec<BigUint>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect()).collect();
    let mut base = a.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            result = matrix_mul(&result, &base);
        }
        n >>= 1;
        if n > 0 {
            base = matrix_mul(&base, &base);
        }
    }
    result
}

fn matrix_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let k = a.len();
    let mut c = vec![vec![BigUint::zero(); k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    c[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    c
}

/// Depth-first lexicographic enumeration of words of one length.
pub struct Words<'a, F> {
    aut: &'a PrunedAutomaton,
    n: usize,
    prefix: Vec<Symbol>,
    // states[d] is the state after prefix[..d]; cursor[d] the next symbol to try there
    states: Vec<usize>,
    cursor: Vec<usize>,
    keep: F,
    done: bool,
}

impl<'a, F: FnMut(&[Symbol]) -> bool> Words<'a, F> {
    fn new(aut: &'a PrunedAutomaton, n: usize, keep: F) -> Self {
        Words {
            aut,
            n,
            prefix: Vec::with_capacity(n),
            states: vec![aut.start()],
            cursor: vec![0],
            keep,
            done: n == 0,
        }
    }

    fn backtrack(&mut self) {
        if self.prefix.pop().is_none() {
            self.done = true;
            return;
        }
        self.states.pop();
        self.cursor.pop();
    }
}

impl<F: FnMut(&[Symbol]) -> bool> Iterator for Words<'_, F> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while !self.done {
            let d = self.prefix.len();
            if d == self.n {
                let w = Word::new(self.prefix.clone()).ok();
                self.backtrack();
                return w;
            }
            let a = self.cursor[d];
            if a >= self.aut.alphabet {
                self.backtrack();
                continue;
            }
            self.cursor[d] += 1;
            let sym = Symbol::from_raw(a as u8);
            if let Some(t) = self.aut.step(self.states[d], sym) {
                self.prefix.push(sym);
                if !(self.keep)(&self.prefix) {
                    self.prefix.pop();
                    continue;
                }
                self.states.push(t);
                self.cursor.push(0);
            }
        }
        None
    }
}

/// Builds the pruned automaton for `spec`.
pub fn compile(spec: &LanguageSpec) -> Result<PrunedAutomaton> {
    let alphabet = spec.alphabet();
    if alphabet == 0 {
        return Err(Error::InvalidLanguage("alphabet must be nonempty".into()));
    }
    if alphabet > MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge(alphabet));
    }
    let (delta, start) = match spec {
        LanguageSpec::FullShift { .. } => (vec![0u32; alphabet], 0),
        LanguageSpec::ForbiddenWords { forbidden, .. } => forbidden_automaton(alphabet, forbidden)?,
        LanguageSpec::Automaton { states, start, transitions, .. } => {
            graph_automaton(alphabet, *states, *start, transitions)?
        }
    };
    prune(alphabet, delta, start)
}

fn graph_automaton(
    alphabet: usize,
    states: usize,
    start: usize,
    transitions: &[(usize, Symbol, usize)],
) -> Result<(Vec<u32>, usize)> {
    if states == 0 || start >= states {
        return Err(Error::InvalidLanguage(format!("start state {start} invalid for {states} states")));
    }
    let mut delta = vec![NONE; states * alphabet];
    for &(q, a, t) in transitions {
        if q >= states || t >= states {
            return Err(Error::InvalidLanguage(format!("transition ({q}, {}, {t}) names a missing state", a.index())));
        }
        if a.index() >= alphabet {
            return Err(Error::SymbolOutOfRange { symbol: a.index(), alphabet });
        }
        let slot = &mut delta[q * alphabet + a.index()];
        if *slot != NONE && *slot != t as u32 {
            return Err(Error::InvalidLanguage(format!("nondeterministic transition on ({q}, {})", a.index())));
        }
        *slot = t as u32;
    }
    Ok((delta, start))
}

/// Aho-Corasick automaton over the forbidden words; trie nodes that end a
/// forbidden word (directly or through their failure chain) are dropped.
fn forbidden_automaton(alphabet: usize, forbidden: &[Word]) -> Result<(Vec<u32>, usize)> {
    let mut children: Vec<Vec<u32>> = vec![vec![NONE; alphabet]];
    let mut terminal = vec![false];
    for w in forbidden {
        w.check_alphabet(alphabet)?;
        let mut node = 0usize;
        for &a in w.symbols() {
            let next = children[node][a.index()];
            node = if next == NONE {
                children.push(vec![NONE; alphabet]);
                terminal.push(false);
                let id = children.len() - 1;
                children[node][a.index()] = id as u32;
                id
            } else {
                next as usize
            };
        }
        terminal[node] = true;
    }

    let n = children.len();
    let mut fail = vec![0usize; n];
    let mut goto = vec![0u32; n * alphabet];
    let mut queue = VecDeque::new();
    for a in 0..alphabet {
        match children[0][a] {
            NONE => goto[a] = 0,
            c => {
                goto[a] = c;
                fail[c as usize] = 0;
                queue.push_back(c as usize);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        terminal[u] = terminal[u] || terminal[fail[u]];
        for a in 0..alphabet {
            match children[u][a] {
                NONE => goto[u * alphabet + a] = goto[fail[u] * alphabet + a],
                c => {
                    fail[c as usize] = goto[fail[u] * alphabet + a] as usize;
                    goto[u * alphabet + a] = c;
                    queue.push_back(c as usize);
                }
            }
        }
    }
    if terminal[0] {
        return Err(Error::InvalidLanguage("the empty word cannot be forbidden".into()));
    }
    for (i, g) in goto.iter_mut().enumerate() {
        if terminal[*g as usize] || terminal[i / alphabet] {
            *g = NONE;
        }
    }
    Ok((goto, 0))
}

/// Removes states without an infinite continuation and states unreachable
/// from the start, then renumbers in breadth-first order.
fn prune(alphabet: usize, mut delta: Vec<u32>, start: usize) -> Result<PrunedAutomaton> {
    let n = delta.len() / alphabet;
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if !alive[q] {
                continue;
            }
            let row = &delta[q * alphabet..(q + 1) * alphabet];
            if !row.iter().any(|&t| t != NONE && alive[t as usize]) {
                alive[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !alive[start] {
        return Err(Error::EmptyLanguage);
    }
    for t in delta.iter_mut() {
        if *t != NONE && !alive[*t as usize] {
            *t = NONE;
        }
    }

    let mut id = vec![NONE; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    id[start] = 0;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for a in 0..alphabet {
            let t = delta[q * alphabet + a];
            if t != NONE && id[t as usize] == NONE {
                id[t as usize] = order.len() as u32 + queue.len() as u32;
                queue.push_back(t as usize);
            }
        }
    }
    let mut out = vec![NONE; order.len() * alphabet];
    for (new_q, &q) in order.iter().enumerate() {
        for a in 0..alphabet {
            let t = delta[q * alphabet + a];
            if t != NONE {
                out[new_q * alphabet + a] = id[t as usize];
            }
        }
    }
    Ok(PrunedAutomaton { alphabet, start: 0, delta: out })
}
