//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swmix_core::chaos::distance_envelope;
use swmix_core::geometry::hausdorff_distance;
use swmix_core::hitting::{
    extension_chain, hitting_sets, in_n2, order_reduction, wm_certificate, MixingType, SearchBudget, SetPair,
};
use swmix_core::spread::{build_chain, build_qnet, certify_spread, verify_certificate, xiong_from_chain};
use swmix_core::{compile, tent_partition, Float, LanguageSpec, Rational, Scalar, SwitchedSystem, Word};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn tent(x: &Rational) -> Rational {
    if *x <= r(1, 2) { x.mul(&r(2, 1)) } else { r(2, 1).sub(&x.mul(&r(2, 1))) }
}

fn itinerary_identity() -> Outcome {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let fsys = SwitchedSystem::<Float>::tent_pair();
    let (part, fpart) = (tent_partition::<Rational>(), tent_partition::<Float>());
    let mut g = ChaCha8Rng::seed_from_u64(1);
    let mut worst_float = 0.0f64;
    for _ in 0..1000 {
        let x = r(g.gen_range(0..=1_000_000), 1_000_000);
        let fx = Float::new(x.to_f64()).unwrap();
        let mut t = x.clone();
        for m in 1..=20 {
            t = tent(&t);
            let w = sys.itinerary_word(&part, &x, m).map_err(|e| e.to_string())?;
            let got = sys.eval_point(&w, &x).map_err(|e| e.to_string())?;
            ensure(got == t, || format!("x = {x}, m = {m}: {got} != {t}"))?;
            let fw = fsys.itinerary_word(&fpart, &fx, m).map_err(|e| e.to_string())?;
            let fgot = fsys.eval_point(&fw, &fx).map_err(|e| e.to_string())?;
            worst_float = worst_float.max((fgot.get() - t.to_f64()).abs());
        }
    }
    ensure(worst_float <= 1e-9, || format!("float error {worst_float:e}"))?;
    Ok(format!("20000 rational identities exact, float error ≤ {worst_float:e}"))
}

fn hitting_oracle() -> Outcome {
    let mut g = ChaCha8Rng::seed_from_u64(2);
    let mut words = 0;
    for trial in 0..100 {
        let sys = random_system(&mut g);
        let (u, v) = (subinterval(&mut g, 20), subinterval(&mut g, 20));
        let horizon = g.gen_range(1..=8);
        let rep = hitting_sets(&sys, &u, &v, &SearchBudget::horizon(horizon)).map_err(|e| format!("{e:?}"))?;
        let found: Vec<Word> = rep.type2.iter().map(|h| h.word.clone()).collect();
        ensure(found == brute_force_hits(&sys, &u, &v, horizon), || format!("system {trial} disagrees"))?;
        ensure(rep.exhausted && rep.verify(&sys, &u, &v), || format!("system {trial} fails to verify"))?;
        words += found.len();
    }
    let sys = SwitchedSystem::tent_pair();
    let rep = hitting_sets(&sys, &open(r(0, 1), r(1, 10)), &open(r(9, 10), r(1, 1)), &SearchBudget::horizon(4))
        .map_err(|e| format!("{e:?}"))?;
    ensure(rep.type1 == [4], || format!("tent N1 ∩ [1,4] = {:?}", rep.type1))?;
    Ok(format!("100 systems, {words} words agree; tent N1 ∩ [1,4] = {{4}}"))
}

fn language_counts() -> Outcome {
    let full = compile(&LanguageSpec::FullShift { alphabet: 2 }).map_err(|e| e.to_string())?;
    let golden = compile(&LanguageSpec::golden_mean()).map_err(|e| e.to_string())?;
    let (mut a, mut b) = (num_bigint::BigUint::from(1u32), num_bigint::BigUint::from(2u32));
    for n in 1..=20 {
        ensure(full.count_words(n) == num_bigint::BigUint::from(1u32) << n, || format!("full shift n = {n}"))?;
        ensure(golden.count_words(n) == b, || format!("golden mean n = {n}"))?;
        let next = &a + &b;
        a = b;
        b = next;
    }
    for n in 1..=12 {
        for aut in [&full, &golden] {
            let listed = aut.words(n).count();
            ensure(aut.count_words(n) == num_bigint::BigUint::from(listed), || format!("enumeration n = {n}"))?;
        }
    }
    Ok("2^n and Fibonacci for n ≤ 20, enumeration = count for n ≤ 12".into())
}

fn wm_batch() -> Outcome {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let mut g = ChaCha8Rng::seed_from_u64(4);
    let mut longest = 0;
    for trial in 0..50 {
        let pairs: Vec<SetPair<Rational>> =
            (0..2).map(|_| SetPair { u: subinterval(&mut g, 50), v: subinterval(&mut g, 50) }).collect();
        let cert = wm_certificate(&sys, &unit(), &unit(), &pairs, MixingType::Type1, &SearchBudget::horizon(25))
            .map_err(|e| format!("quadruple {trial}: {e:?}"))?;
        ensure(cert.verify(&sys), || format!("quadruple {trial} fails to verify"))?;
        longest = longest.max(cert.lengths[0]);
    }
    Ok(format!("50 type-1 certificates verified, longest first length {longest}"))
}

fn prop_2_3() -> Outcome {
    let systems = [SwitchedSystem::<Rational>::tent_map(), tent_powers()];
    let mut g = ChaCha8Rng::seed_from_u64(5);
    let budget = SearchBudget::horizon(30);
    let mut checked = 0;
    for trial in 0..200 {
        let sys = &systems[trial % 2];
        let [u1, u2, v1, v2] = [(); 4].map(|_| subinterval(&mut g, 50));
        let fail = |what: &str| format!("trial {trial}: {what}");
        let pairs = vec![SetPair { u: u1.clone(), v: u2.clone() }, SetPair { u: v1.clone(), v: v2.clone() }];
        let s = wm_certificate(sys, &unit(), &unit(), &pairs, MixingType::Type2, &budget)
            .map_err(|e| fail(&format!("{e:?}")))?
            .words[0]
            .clone();
        let (u, v) = order_reduction(sys, &u1, &u2, &v1, &v2, &s, false).map_err(|e| fail(&e.to_string()))?;
        let in_both = |w: &Word| in_n2(sys, w, &u1, &v1) && in_n2(sys, w, &u2, &v2);
        let rep = hitting_sets(sys, &u, &v, &SearchBudget::horizon(6)).map_err(|e| fail(&format!("{e:?}")))?;
        for h in &rep.type2 {
            ensure(in_both(&h.word), || fail(&format!("{} escapes", h.word)))?;
        }
        let start = wm_certificate(sys, &unit(), &unit(), &[SetPair { u: u.clone(), v: v.clone() }], MixingType::Type2, &budget)
            .map_err(|e| fail(&format!("{e:?}")))?
            .words[0]
            .clone();
        let chain = extension_chain(sys, &u, &v, &start, 5, &budget).map_err(|e| fail(&format!("{e:?}")))?;
        ensure(chain.len() == 5, || fail("short chain"))?;
        ensure(chain.windows(2).all(|p| p[0].len() < p[1].len()) && start.len() < chain[0].len(), || {
            fail("lengths do not increase")
        })?;
        for w in &chain {
            ensure(in_n2(sys, w, &u, &v) && in_both(w), || fail(&format!("{w} does not verify")))?;
        }
        checked += rep.type2.len() + chain.len();
    }
    Ok(format!("200 trials, {checked} words in N2(U1,V1) ∩ N2(U2,V2)"))
}

fn spread_certificate() -> Outcome {
    let sys = SwitchedSystem::<Rational>::tent_map();
    let net = build_qnet(&unit(), &r(1, 7)).map_err(|e| e.to_string())?;
    ensure(net.centers.len() == 4, || format!("{} centers", net.centers.len()))?;
    let seeds = [open(r(1, 10), r(2, 10)), open(r(6, 10), r(7, 10))];
    let cert = certify_spread(&sys, &seeds, &unit(), &unit(), &r(1, 5), &net, &SearchBudget::horizon(200))
        .map_err(|e| format!("{e:?}"))?;
    ensure(cert.rows.len() == 16, || format!("{} rows", cert.rows.len()))?;
    ensure(verify_certificate(&sys, &cert, &net), || "certificate does not verify".into())?;
    let mut g = ChaCha8Rng::seed_from_u64(6);
    let mut flipped = 0;
    for _ in 0..20 {
        let row = g.gen_range(0..16);
        let word = &cert.rows[row].word;
        let len = g.gen_range(1..word.len());
        let mut broken = cert.clone();
        broken.rows[row].word = word.truncated(len).unwrap();
        let still_valid = len >= 6
            && (0..2).all(|i| {
                let ball = cert.ball(i).unwrap();
                let (mut a, mut b) = (ball.lo().clone(), ball.hi().clone());
                for _ in 0..len {
                    (a, b) = tent_image(&a, &b);
                }
                let y = &net.centers[broken.rows[row].alpha[i]];
                y.sub(&r(1, 5)) < a && b < y.add(&r(1, 5))
            });
        ensure(verify_certificate(&sys, &broken, &net) == still_valid, || {
            format!("row {row} truncated to {len}: verifier disagrees with the tent oracle")
        })?;
        flipped += !still_valid as usize;
    }
    ensure(flipped > 0, || "no truncation broke a row".into())?;
    let longest = cert.rows.iter().map(|r| r.word.len()).max().unwrap_or(0);
    Ok(format!("16 rows verified (longest word {longest}), {flipped} of 20 truncations rejected, the rest still valid"))
}

/// Closure of `T([a, b])`.
fn tent_image(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let half = r(1, 2);
    if *b <= half || *a >= half {
        let (x, y) = (tent(a), tent(b));
        if x <= y { (x, y) } else { (y, x) }
    } else {
        (Rational::min_of(&tent(a), &tent(b)), r(1, 1))
    }
}

fn chain_content() -> Outcome {
    let sys = SwitchedSystem::<Rational>::tent_map();
    let stages: Vec<_> = [r(1, 2), r(1, 3), r(1, 4)]
        .into_iter()
        .map(|e| {
            let net = build_qnet(&unit(), &e.div(&r(2, 1))).unwrap();
            (e, net)
        })
        .collect();
    let seeds = [open(r(1, 10), r(2, 10)), open(r(6, 10), r(7, 10))];
    let chain = build_chain(&sys, &seeds, &unit(), &unit(), &stages, &SearchBudget::horizon(600))
        .map_err(|e| format!("{e:?}"))?;
    ensure(chain.verify(&sys), || "chain does not verify".into())?;
    let last = chain.certificates.last().unwrap();
    let points = last.centers.clone();
    let mut bounds = Vec::new();
    for h in [r(1, 3), r(1, 2), r(4, 5)] {
        let wit = xiong_from_chain(&sys, &chain, &points, &vec![h.clone(); points.len()]).map_err(|e| e.to_string())?;
        ensure(wit.stages.len() == 3, || format!("h = {h}: {} stages", wit.stages.len()))?;
        let tol = &wit.xiong.tolerances;
        ensure(tol.windows(2).all(|p| p[0] >= p[1]), || format!("h = {h}: bounds increase"))?;
        ensure(wit.xiong.verify(&sys), || format!("h = {h}: witness does not verify"))?;
        for (st, xs) in wit.stages.iter().zip(&wit.xiong.stages) {
            ensure(xs.error < st.bound && st.bound <= st.coarse_bound, || format!("h = {h}: stage error above bound"))?;
        }
        bounds = tol.iter().map(|t| t.to_string()).collect();
    }
    Ok(format!("3 stages, bounds {} for h = 4/5", bounds.join(" ≥ ")))
}

fn hausdorff_axioms() -> Outcome {
    let mut g = ChaCha8Rng::seed_from_u64(8);
    let d = hausdorff_distance;
    for trial in 0..1000 {
        let [a, b, c] = [(); 3].map(|_| random_compact(&mut g));
        ensure(d(&a, &a) == Rational::zero(), || format!("trial {trial}: self-distance"))?;
        ensure(d(&a, &b) == d(&b, &a), || format!("trial {trial}: symmetry"))?;
        ensure(d(&a, &c) <= d(&a, &b).add(&d(&b, &c)), || format!("trial {trial}: triangle"))?;
        ensure(a == b || d(&a, &b) > Rational::zero(), || format!("trial {trial}: separation"))?;
    }
    Ok("1000 triples, exact".into())
}

fn slope_law() -> Outcome {
    let sys = SwitchedSystem::<Rational>::tent_pair();
    let mut g = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..100 {
        let x = r(g.gen_range(1..1_000_000), 1_000_000);
        let y = loop {
            let y = r(g.gen_range(1..1_000_000), 1_000_000);
            if y != x {
                break y;
            }
        };
        let env = distance_envelope(&sys, &x, &y, MixingType::Type2, 20, &SearchBudget::default())
            .map_err(|e| format!("{e:?}"))?;
        ensure(env.rows.len() == 20, || format!("pair {trial}: {} rows", env.rows.len()))?;
        let mut expect = x.sub(&y).abs();
        for row in &env.rows {
            expect = expect.mul(&r(2, 1));
            ensure(row.d_min == expect && row.d_max == expect, || format!("pair {trial}, i = {}", row.length))?;
        }
    }
    Ok("d_min = d_max = 2^i|x - y| for i ≤ 20 on 100 pairs".into())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("itinerary identity", 5, itinerary_identity),
        ("hitting-set oracle equivalence", 30, hitting_oracle),
        ("language counting", 5, language_counts),
        ("weak-mixing batch", 60, wm_batch),
        ("order reduction and extension", 30, prop_2_3),
        ("spread certificate", 60, spread_certificate),
        ("spread chain to Xiong witness", 60, chain_content),
        ("Hausdorff metric axioms", 5, hausdorff_axioms),
        ("affine slope law", 10, slope_law),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; over the {limit}s limit")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("{tag} {name:<32} {:>7.2}s / {limit}s  {msg}", took.as_secs_f64());
        failed += outcome.is_err() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
