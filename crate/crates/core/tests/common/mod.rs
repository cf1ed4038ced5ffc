#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use swmix_core::geometry::CompactRep;
use swmix_core::{
    AffinePiece, ClosedInterval, Domain, Interval, IntervalSet, LanguageSpec, PiecewiseAffineMap, Rational, Scalar, SwitchedSystem,
    Word,
};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

pub fn open(a: Rational, b: Rational) -> IntervalSet<Rational> {
    IntervalSet::open(a, b)
}

pub fn unit() -> IntervalSet<Rational> {
    open(r(0, 1), r(1, 1))
}

/// `T∘T` on `[0, 1]`.
pub fn tent_squared() -> PiecewiseAffineMap<Rational> {
    let piece = |a: i64, b: i64, slope: i64, offset: i64| {
        AffinePiece::new(Domain::bounded(r(a, 4), r(b, 4)).unwrap(), r(slope, 1), r(offset, 1)).unwrap()
    };
    PiecewiseAffineMap::new(vec![piece(0, 1, 4, 0), piece(1, 2, -4, 2), piece(2, 3, 4, -2), piece(3, 4, -4, 4)])
        .unwrap()
}

/// `{T, T∘T}`: a commuting, mixing two-map family on `[0, 1]`.
pub fn tent_powers() -> SwitchedSystem<Rational> {
    let t = SwitchedSystem::<Rational>::tent_map().maps()[0].clone();
    SwitchedSystem::new(vec![t, tent_squared()], LanguageSpec::FullShift { alphabet: 2 }, Interval::new(r(0, 1), r(1, 1)).unwrap())
        .unwrap()
}

/// A random open subinterval of `(0, 1)` with endpoints on the grid
/// `1/1000` and width at least `min_width / 1000`.
pub fn subinterval(rng: &mut ChaCha8Rng, min_width: i64) -> IntervalSet<Rational> {
    let w = rng.gen_range(min_width..=400);
    let a = rng.gen_range(0..=1000 - w);
    open(r(a, 1000), r(a + w, 1000))
}

fn random_map(rng: &mut ChaCha8Rng) -> PiecewiseAffineMap<Rational> {
    let pieces = rng.gen_range(1..=3);
    let mut cuts: Vec<i64> = (0..pieces - 1).map(|_| rng.gen_range(1..8)).collect();
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::new();
    for k in 0..=cuts.len() {
        let lo = (k > 0).then(|| r(cuts[k - 1], 8));
        let hi = cuts.get(k).map(|&c| r(c, 8));
        let mut slope = 0;
        while slope == 0 {
            slope = rng.gen_range(-6..=6);
        }
        let offset = rng.gen_range(-8..=8);
        out.push(AffinePiece::new(Domain::new(lo, hi).unwrap(), r(slope, 2), r(offset, 4)).unwrap());
    }
    PiecewiseAffineMap::new(out).unwrap()
}

/// Random piecewise-affine system on `(0, 1)`: alphabet 1-3, 1-3 pieces
/// per map with cuts on the grid `1/8`, full shift or one or two forbidden
/// words of length at most 2.
pub fn random_system(rng: &mut ChaCha8Rng) -> SwitchedSystem<Rational> {
    loop {
        let alphabet = rng.gen_range(1..=3usize);
        let maps = (0..alphabet).map(|_| random_map(rng)).collect();
        let spec = if alphabet == 1 || rng.gen_bool(0.4) {
            LanguageSpec::FullShift { alphabet }
        } else {
            let forbidden = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let len = rng.gen_range(1..=2);
                    Word::from_indices(&(0..len).map(|_| rng.gen_range(0..alphabet)).collect::<Vec<_>>()).unwrap()
                })
                .collect();
            LanguageSpec::ForbiddenWords { alphabet, forbidden }
        };
        if let Ok(sys) = SwitchedSystem::new(maps, spec, Interval::new(r(0, 1), r(1, 1)).unwrap()) {
            return sys;
        }
    }
}

/// Every admissible word of length `1..=horizon` whose image of `U`
/// meets `V`, by plain enumeration without pruning, shortlex order.
pub fn brute_force_hits(
    sys: &SwitchedSystem<Rational>,
    u: &IntervalSet<Rational>,
    v: &IntervalSet<Rational>,
    horizon: usize,
) -> Vec<Word> {
    let mut out = Vec::new();
    for n in 1..=horizon {
        for w in sys.language().words(n) {
            if sys.image_restricted(&w, u).meets(v, sys.eps_min()) {
                out.push(w);
            }
        }
    }
    out
}

/// One to four closed pieces on the grid `1/1000`, points included.
pub fn random_compact(g: &mut ChaCha8Rng) -> CompactRep<Rational> {
    let k = g.gen_range(1..5);
    let parts = (0..k)
        .map(|_| {
            let a = g.gen_range(0..1000);
            let w = if g.gen_bool(0.4) { 0 } else { g.gen_range(0..200) };
            ClosedInterval::new(r(a, 1000), r(a + w, 1000)).unwrap()
        })
        .collect();
    CompactRep::intervals(parts).unwrap()
}
