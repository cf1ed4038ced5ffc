//! The built-in tent-map scenario: itinerary identity, a weak-mixing
//! batch, and the slope law for the affine pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use swmix_core::chaos::distance_envelope;
use swmix_core::hitting::{wm_certificate, MixingType, SearchBudget, SetPair};
use swmix_core::sampling::Weyl;
use swmix_core::{tent_partition, Float, IntervalSet, Rational, Scalar, SwitchedSystem};

use crate::num::Num;
use crate::tasks::Status;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DemoParams {
    /// Points for the itinerary check.
    pub samples: usize,
    /// Longest itinerary checked.
    pub horizon: usize,
    /// Random quadruples in the weak-mixing batch.
    pub trials: usize,
    pub wm_horizon: usize,
    /// Point pairs for the slope law.
    pub pairs: usize,
    pub slope_horizon: usize,
}

impl Default for DemoParams {
    fn default() -> Self {
        DemoParams { samples: 1000, horizon: 20, trials: 50, wm_horizon: 25, pairs: 100, slope_horizon: 20 }
    }
}

fn tent(x: &Rational) -> Rational {
    let two = Rational::from_i64(2);
    if *x <= Rational::ratio(1, 2) { x.mul(&two) } else { two.sub(&x.mul(&two)) }
}

/// Open subinterval of `(0, 1)` on the grid `1/1000`, width in `[0.05, 0.4]`.
fn grid_interval(seq: &mut Weyl) -> (i64, i64) {
    let w = 50 + (seq.next_unit::<Rational>().to_f64() * 351.0) as i64;
    let a = (seq.next_unit::<Rational>().to_f64() * (1001 - w) as f64) as i64;
    (a, a + w)
}

fn open(bounds: (i64, i64)) -> IntervalSet<Rational> {
    IntervalSet::open(Rational::ratio(bounds.0, 1000), Rational::ratio(bounds.1, 1000))
}

fn itinerary_check(p: &DemoParams, seq: &mut Weyl) -> (Value, bool) {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let fsys = SwitchedSystem::<Float>::tent_pair();
    let (part, fpart) = (tent_partition::<Rational>(), tent_partition::<Float>());
    let xs: Vec<Rational> = (0..p.samples).map(|_| seq.next_unit()).collect();
    let per_point: Vec<(usize, f64)> = xs
        .par_iter()
        .map(|x| {
            let fx = Float::new(x.to_f64()).expect("finite");
            let (mut bad, mut worst) = (0, 0.0f64);
            let mut t = x.clone();
            for m in 1..=p.horizon {
                t = tent(&t);
                let exact = sys.itinerary_word(&part, x, m).and_then(|w| sys.eval_point(&w, x));
                if exact.as_ref() != Ok(&t) {
                    bad += 1;
                }
                if let Ok(y) = fsys.itinerary_word(&fpart, &fx, m).and_then(|w| fsys.eval_point(&w, &fx)) {
                    worst = worst.max((y.get() - t.to_f64()).abs());
                } else {
                    worst = f64::INFINITY;
                }
            }
            (bad, worst)
        })
        .collect();
    let mismatches: usize = per_point.iter().map(|r| r.0).sum();
    let float_error = per_point.iter().map(|r| r.1).fold(0.0, f64::max);
    let ok = mismatches == 0 && float_error <= 1e-9;
    let report = json!({
        "samples": p.samples,
        "horizon": p.horizon,
        "checked": p.samples * p.horizon,
        "mismatches": mismatches,
        "max_float_error": float_error,
        "passed": ok,
    });
    (report, ok)
}

fn wm_batch(p: &DemoParams, seq: &mut Weyl) -> (Value, String, bool) {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let unit = open((0, 1000));
    let quads: Vec<[(i64, i64); 4]> = (0..p.trials).map(|_| [(); 4].map(|_| grid_interval(seq))).collect();
    let budget = SearchBudget::horizon(p.wm_horizon);
    let outcomes: Vec<(bool, bool, Option<usize>)> = quads
        .par_iter()
        .map(|q| {
            let pairs = vec![SetPair { u: open(q[0]), v: open(q[1]) }, SetPair { u: open(q[2]), v: open(q[3]) }];
            match wm_certificate(&sys, &unit, &unit, &pairs, MixingType::Type1, &budget) {
                Ok(c) => (true, c.verify(&sys), c.lengths.first().copied()),
                Err(_) => (false, false, None),
            }
        })
        .collect();
    let mut csv = String::from("trial,u1,v1,u2,v2,found,verified,first_length\n");
    let fmt = |b: (i64, i64)| format!("({}/1000 {}/1000)", b.0, b.1);
    for (i, (q, o)) in quads.iter().zip(&outcomes).enumerate() {
        let len = o.2.map(|l| l.to_string()).unwrap_or_default();
        csv.push_str(&format!("{i},{},{},{},{},{},{},{len}\n", fmt(q[0]), fmt(q[1]), fmt(q[2]), fmt(q[3]), o.0, o.1));
    }
    let found = outcomes.iter().filter(|o| o.0).count();
    let verified = outcomes.iter().filter(|o| o.1).count();
    let ok = verified == p.trials;
    let report = json!({
        "trials": p.trials,
        "horizon": p.wm_horizon,
        "found": found,
        "verified": verified,
        "success_rate": if p.trials == 0 { 1.0 } else { verified as f64 / p.trials as f64 },
        "passed": ok,
    });
    (report, csv, ok)
}

fn slope_law(p: &DemoParams, seq: &mut Weyl) -> (Value, String, bool) {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let pts: Vec<(Rational, Rational)> = (0..p.pairs).map(|_| (seq.next_unit(), seq.next_unit())).filter(|(x, y)| x != y).collect();
    let rows: Vec<Option<Vec<(Rational, Rational, Rational)>>> = pts
        .par_iter()
        .map(|(x, y)| {
            let env = distance_envelope(&sys, x, y, MixingType::Type2, p.slope_horizon, &SearchBudget::default()).ok()?;
            let mut expect = x.sub(y).abs();
            Some(
                env.rows
                    .into_iter()
                    .map(|r| {
                        expect = expect.mul(&Rational::from_i64(2));
                        (r.d_min, r.d_max, expect.clone())
                    })
                    .collect(),
            )
        })
        .collect();
    let mut csv = String::from("pair,length,d_min,d_max,expected\n");
    let mut mismatches = 0;
    for (i, r) in rows.iter().enumerate() {
        match r {
            Some(r) if r.len() == p.slope_horizon => {
                for (n, (lo, hi, e)) in r.iter().enumerate() {
                    mismatches += (lo != e || hi != e) as usize;
                    csv.push_str(&format!("{i},{},{},{},{}\n", n + 1, lo.render(), hi.render(), e.render()));
                }
            }
            _ => mismatches += 1,
        }
    }
    let ok = mismatches == 0;
    let report = json!({
        "pairs": pts.len(),
        "horizon": p.slope_horizon,
        "mismatches": mismatches,
        "passed": ok,
        "conclusion": if ok { "d_min(i) = d_max(i) = 2^i |x - y|: no type-2 proximal pair exists" } else { "slope law violated" },
    });
    (report, csv, ok)
}

pub fn run(p: &DemoParams, seed: u64) -> (Value, Vec<(String, String)>, Status) {
    let mut seq = Weyl::new(seed);
    let (itin, a) = itinerary_check(p, &mut seq);
    let (wm, wm_csv, b) = wm_batch(p, &mut seq);
    let (slope, slope_csv, c) = slope_law(p, &mut seq);
    let result = json!({ "itinerary": itin, "wm_batch": wm, "slope_law": slope, "passed": a && b && c });
    let failed: Vec<&str> = [("itinerary", a), ("wm_batch", b), ("slope_law", c)].iter().filter(|x| !x.1).map(|x| x.0).collect();
    let status = if failed.is_empty() { Status::Ok } else { Status::CheckFailed(format!("failed checks: {}", failed.join(", "))) };
    (result, vec![("wm_batch.csv".into(), wm_csv), ("slope_law.csv".into(), slope_csv)], status)
}
