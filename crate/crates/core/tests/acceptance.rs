//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{rat, random_ideal};
use lcmrel::combinat::{binomial, for_each_subset, stirling2};
use lcmrel::filtration::{full_filtration, k_fold_ideal, Guard};
use lcmrel::profile::{profile, Methods};
use lcmrel::resolution::{
    ahh_kofr, ahh_rank, check_differentials, degenerate, minimal_betti, strand_exactness, taylor,
    taylor_kpolynomial, KPolynomial, Resolution,
};
use lcmrel::stats::{
    degree_slice, failure_count_distribution, failure_probability, generator_degree_histogram,
    k_fold_signature, mean_failures, moment, slice_differences, slice_probabilities,
    tail_probabilities, truncation_bounds, Bernoulli, Oracle, Symbolic,
};
use lcmrel::systems::{
    complete_graph_cut_ideal, complete_graph_mean_closed_form, consecutive_ideal,
    consecutive_mean_closed_form, k_out_of_n_ideal, partition_ideal,
};
use lcmrel::{Monomial, MonomialIdeal, UniPoly};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Parses `5p^2-4p^3+p^6` style text.
fn poly(text: &str) -> UniPoly {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = UniPoly::zero();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.trim_start_matches('+')),
        };
        let (coef, deg) = match body.find('p') {
            None => (body.to_string(), 0),
            Some(i) => {
                let c = if i == 0 { "1".to_string() } else { body[..i].to_string() };
                let d = body[i + 1..].strip_prefix('^').map_or(1, |d| d.parse().unwrap());
                (c, d)
            }
        };
        let mut c: BigInt = coef.parse().unwrap();
        if neg {
            c = -c;
        }
        out.add_term(&c, deg);
    }
    out
}

/// Signed monomial lists `(+terms, -terms)` into a collected polynomial map.
fn signed(ideal: &MonomialIdeal, plus: &[&str], minus: &[&str]) -> BTreeMap<Monomial, BigInt> {
    let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (list, s) in [(plus, 1), (minus, -1)] {
        for t in list {
            let m = Monomial::parse(t, ideal.vars()).unwrap();
            *out.entry(m).or_default() += s;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn exact_everywhere(res: &Resolution) -> Result<(), String> {
    let mut degrees: Vec<Monomial> = res.strata().iter().flatten().map(|s| s.multidegree.clone()).collect();
    degrees.sort();
    degrees.dedup();
    for mu in degrees {
        let rep = strand_exactness(res, &mu);
        ensure!(rep.is_exact(), "strand {mu:?} has homology {:?}", rep.homology);
    }
    Ok(())
}

fn kpoly_terms(k: &KPolynomial) -> BTreeMap<Monomial, BigInt> {
    k.terms().clone()
}

fn criterion_1() -> Outcome {
    let i1 = consecutive_ideal(2, 5).unwrap();
    let f = full_filtration(&i1, Guard::default()).unwrap();
    let k1 = taylor(i1.vars(), i1.gens(), Guard::default()).unwrap().kpolynomial();
    let want1 = signed(
        &i1,
        &["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x1*x2*x3*x4*x5"],
        &["x1*x2*x3", "x2*x3*x4", "x3*x4*x5", "x1*x2*x4*x5"],
    );
    ensure!(kpoly_terms(&k1) == want1, "I1 numerator: {k1}");
    let i2 = f.level(2);
    let k2 = taylor(i2.vars(), i2.gens(), Guard::default()).unwrap().kpolynomial();
    let want2 = signed(
        &i1,
        &["x1*x2*x3", "x2*x3*x4", "x3*x4*x5", "x1*x2*x4*x5"],
        &["x1*x2*x3*x4", "x2*x3*x4*x5", "x1*x2*x3*x4*x5"],
    );
    ensure!(kpoly_terms(&k2) == want2, "I2 numerator: {k2}");
    Ok(())
}

fn two_of_six() -> (MonomialIdeal, lcmrel::Filtration) {
    let i = consecutive_ideal(2, 6).unwrap();
    let f = full_filtration(&i, Guard::default()).unwrap();
    (i, f)
}

fn criterion_2() -> Outcome {
    let (_, f) = two_of_six();
    let tails = tail_probabilities(&f, &Symbolic).unwrap();
    let want = [
        "5p^2-4p^3-3p^4+4p^5-p^6",
        "4p^3-6p^5+3p^6",
        "3p^4 - 2p^6",
        "2p^5 -p^6",
        "p^6",
    ];
    ensure!(tails.len() == 5, "expected 5 levels, got {}", tails.len());
    for (k, (got, w)) in tails.iter().zip(want).enumerate() {
        ensure!(*got == poly(w), "P_{} = {got}, expected {w}", k + 1);
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let (ideal, f) = two_of_six();
    let masses = failure_count_distribution(&f, &Symbolic).unwrap();
    let printed_p0 = poly("1-5p^2+4p^3+3p^4-5p^5+p^6");
    let want = [
        "1-5p^2+4p^3+3p^4-4p^5+p^6",
        "5p^2-8p^3-3p^4+10p^5-4p^6",
        "4p^3-3p^4-6p^5+5p^6",
        "3p^4 -2p^5 -p^6",
        "2p^5 -2p^6",
        "p^6",
    ];
    for (k, (got, w)) in masses.iter().zip(want).enumerate() {
        ensure!(*got == poly(w), "p_{k} = {got}, expected {w}");
    }
    let diff = &masses[0] - &printed_p0;
    ensure!(diff == UniPoly::term(1, 5), "printed p_0 differs by {diff}, expected p^5 only");
    let total = masses.iter().fold(UniPoly::zero(), |a, b| a + b);
    ensure!(total == UniPoly::one(), "sum of masses is {total}");
    let mean = masses
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |a, (k, m)| a + m.scale(&BigInt::from(k)));
    ensure!(mean == poly("5p^2"), "mean {mean}");
    ensure!(mean == mean_failures(&ideal, &Symbolic).unwrap(), "mean_failures disagrees");

    let third = rat(1, 3);
    for (k, n) in [(2, 5), (2, 6), (3, 7)] {
        let i = consecutive_ideal(k, n).unwrap();
        let mu = mean_failures(&i, &Symbolic).unwrap();
        let closed = UniPoly::term((n - k + 1) as i64, k);
        ensure!(mu == closed, "mu_({k},{n}) = {mu}");
        ensure!(consecutive_mean_closed_form(k, n) == closed, "closed form ({k},{n})");
        let o = Oracle::new(&i, &Bernoulli::iid(third.clone(), n).unwrap()).unwrap();
        ensure!(o.moment(1) == mu.eval(&third), "oracle mean ({k},{n})");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let (ideal, f) = two_of_six();
    let big_q = slice_probabilities(&ideal, &Symbolic).unwrap();
    let small_q = slice_differences(&big_q);
    let printed_q = ["4p^3 -3p^4", "6p^4 - 6p^5 + p^6", "4p^5 - 3p^6", "p^6"];
    let printed_small = ["4p^3 -9p^4+6p^5-p^6", "6p^4-10p^5+4p^6", "4p^5-4p^6", "p^6"];
    for (n, i) in (3..=6).enumerate() {
        ensure!(big_q[i] == poly(printed_q[n]), "Q_{i} = {}", big_q[i]);
        ensure!(small_q[i] == poly(printed_small[n]), "q_{i} = {}", small_q[i]);
    }
    let p1 = tail_probabilities(&f, &Symbolic).unwrap()[0].clone();
    ensure!(big_q[2] == p1, "Q_2 = {} differs from P_1", big_q[2]);
    ensure!(small_q[2] == poly("5p^2-8p^3+4p^5-p^6"), "q_2 = {}", small_q[2]);
    let total = (2..=6).fold(UniPoly::zero(), |a, j| a + &small_q[j]);
    ensure!(total == p1, "sum of q_j is {total}");

    let slices = [
        vec!["x1*x2*x3", "x2*x3*x4", "x3*x4*x5", "x4*x5*x6"],
        vec!["x1*x2*x3*x4", "x1*x2*x4*x5", "x1*x2*x5*x6", "x2*x3*x4*x5", "x2*x3*x5*x6", "x3*x4*x5*x6"],
        vec!["x1*x2*x3*x4*x5", "x1*x2*x3*x5*x6", "x1*x2*x4*x5*x6", "x2*x3*x4*x5*x6"],
        vec!["x1*x2*x3*x4*x5*x6"],
    ];
    for (n, want) in slices.iter().enumerate() {
        let i = n + 3;
        let got = degree_slice(&ideal, i).unwrap();
        let want = MonomialIdeal::parse_generators(ideal.vars(), want).unwrap();
        ensure!(got == want, "slice {i}: {got}");
    }
    ensure!(degree_slice(&ideal, 2).unwrap() == ideal, "slice 2 is not I_1");

    for p in [rat(1, 3), rat(1, 2)] {
        let o = Oracle::new(&ideal, &Bernoulli::iid(p.clone(), 6).unwrap()).unwrap();
        for i in 2..=6 {
            let brute = o.slice_probability(&ideal, i);
            ensure!(brute == big_q[i].eval(&p), "oracle Q_{i} at {p}");
            let next = if i < 6 { o.slice_probability(&ideal, i + 1) } else { BigRational::zero() };
            ensure!(brute - next == small_q[i].eval(&p), "oracle q_{i} at {p}");
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let (_, f) = two_of_six();
    let hist = generator_degree_histogram(&f);
    let want: BTreeMap<(usize, u32), usize> = [
        ((1, 2), 5),
        ((2, 3), 4),
        ((2, 4), 3),
        ((3, 4), 3),
        ((3, 5), 2),
        ((4, 5), 2),
        ((5, 6), 1),
    ]
    .into_iter()
    .collect();
    ensure!(hist == want, "histogram {hist:?}");
    ensure!(hist.values().sum::<usize>() == 20, "total");
    Ok(())
}

fn criterion_6() -> Outcome {
    for r in 1..=7 {
        for k in 1..=r {
            let res = ahh_kofr(k, r).map_err(|e| e.to_string())?;
            let ranks = res.ranks();
            for (i, &got) in ranks.iter().enumerate() {
                ensure!(got as u128 == ahh_rank(k, r, i), "rank k={k} r={r} i={i}");
                // count pairs directly
                let mut count = 0u64;
                for_each_subset(r, k, |sigma| {
                    let top = *sigma.last().unwrap();
                    let free = (0..top).filter(|j| !sigma.contains(j)).count();
                    count += binomial(free as u64, i as u64) as u64;
                });
                ensure!(count == got, "enumeration k={k} r={r} i={i}");
            }
            check_differentials(&res).map_err(|e| format!("k={k} r={r}: {e}"))?;
            if r <= 5 {
                exact_everywhere(&res).map_err(|e| format!("k={k} r={r}: {e}"))?;
            }
            let betti = minimal_betti(&k_out_of_n_ideal(k, r).unwrap()).unwrap();
            ensure!(betti.ranks() == ranks, "Betti k={k} r={r}: {:?}", betti.ranks());
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut systems: Vec<(String, MonomialIdeal)> = (3..=8)
        .map(|n| (format!("2-out-of-{n}"), consecutive_ideal(2, n).unwrap()))
        .collect();
    systems.push(("K4".into(), complete_graph_cut_ideal(4).unwrap()));
    for (name, ideal) in systems {
        let f = full_filtration(&ideal, Guard::default()).unwrap();
        let r = ideal.len();
        for k in 1..=r {
            let d = degenerate(&ideal, k, Guard::default()).map_err(|e| e.to_string())?;
            check_differentials(&d).map_err(|e| format!("{name} k={k}: {e}"))?;
            let level = f.level(k);
            let t = taylor_kpolynomial(level.vars(), level.gens(), Guard::default()).unwrap();
            ensure!(d.kpolynomial() == t, "{name} k={k}: K-polynomials differ");
            if r <= 6 {
                exact_everywhere(&d).map_err(|e| format!("{name} k={k}: {e}"))?;
            }
            if k == 1 {
                let tr = taylor(ideal.vars(), ideal.gens(), Guard::default()).unwrap();
                ensure!(tr.ranks() == d.ranks(), "{name}: ranks differ from Taylor");
                for i in 0..tr.strata().len() {
                    ensure!(tr.graded_ranks(i) == d.graded_ranks(i), "{name}: multidegrees differ at {i}");
                }
            }
            let betti = minimal_betti(level).unwrap().ranks();
            for (i, b) in betti.iter().enumerate() {
                ensure!((*b as u128) <= ahh_rank(k, r, i), "{name} k={k}: beta_{i} = {b} too large");
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let k4 = complete_graph_cut_ideal(4).unwrap();
    let f = full_filtration(&k4, Guard::default()).unwrap();
    let p43 = partition_ideal(4, 3).unwrap();
    let p44 = partition_ideal(4, 4).unwrap();
    ensure!(p43.len() as u128 == stirling2(4, 3) && p43.len() == 6, "|P_4,3| = {}", p43.len());
    ensure!(p44.len() as u128 == stirling2(4, 4) && p44.len() == 1, "|P_4,4| = {}", p44.len());
    ensure!(f.len() == 7, "K4 has {} cuts", f.len());
    for k in 2..=3 {
        ensure!(f.level(k) == &p43, "K4 I_{k} != P_4,3");
    }
    for k in 4..=7 {
        ensure!(f.level(k) == &p44, "K4 I_{k} != P_4,4");
    }
    let k5 = complete_graph_cut_ideal(5).unwrap();
    ensure!(k5.len() == 15, "K5 has {} cuts", k5.len());
    let p53 = partition_ideal(5, 3).unwrap();
    for k in 2..=3 {
        let level = k_fold_ideal(&k5, k, Guard::default()).unwrap();
        ensure!(level == p53, "K5 I_{k} != P_5,3");
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let half = rat(1, 2);
    for (n, printed) in [(4, "4p^3+3p^4"), (5, "5p^4+10p^6")] {
        let closed = complete_graph_mean_closed_form(n);
        ensure!(closed == poly(printed), "closed form mu_{n} = {closed}");
        let ideal = complete_graph_cut_ideal(n).unwrap();
        let mean = mean_failures(&ideal, &Symbolic).unwrap();
        ensure!(mean == closed, "mean_failures K{n} = {mean}");
        let o = Oracle::new(&ideal, &Bernoulli::iid(half.clone(), ideal.nvars()).unwrap()).unwrap();
        ensure!(o.moment(1) == closed.eval(&half), "oracle mean K{n}");
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..50 {
        let m = rng.gen_range(2..=10);
        let ideal = random_ideal(&mut rng, m, 7);
        let p = if rng.gen_bool(0.5) { rat(1, 4) } else { rat(1, 2) };
        let model = Bernoulli::iid(p.clone(), m).unwrap();
        let f = full_filtration(&ideal, Guard::default()).unwrap();
        let o = Oracle::new(&ideal, &model).unwrap();
        let ctx = || format!("case {case}: {ideal} at p={p}");
        ensure!(tail_probabilities(&f, &model).unwrap() == o.tails(), "P_k, {}", ctx());
        ensure!(failure_count_distribution(&f, &model).unwrap() == o.masses(), "p_k, {}", ctx());
        for order in 1..=3 {
            let alg = moment(&ideal, order, &model, Guard::default()).unwrap();
            ensure!(alg == o.moment(order), "moment {order}, {}", ctx());
        }
        for k in 1..=f.len() {
            let table = k_fold_signature(&f, k, &model).unwrap();
            let cond = o.conditional_size(k).unwrap();
            ensure!(table.total() == BigRational::one(), "sum s^{k}, {}", ctx());
            for row in &table.rows {
                ensure!(row.s == cond[row.i], "s_{}^{k}, {}", row.i, ctx());
                let brute = o.slice_probability(f.level(k), row.i);
                ensure!(row.slice == brute, "Q_{} of I_{k}, {}", row.i, ctx());
            }
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    let (ideal, _) = two_of_six();
    let t = taylor(ideal.vars(), ideal.gens(), Guard::default()).unwrap();
    let b = minimal_betti(&ideal).unwrap();
    for p in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let model = Bernoulli::iid(p.clone(), 6).unwrap();
        let exact = failure_probability(&ideal, &model).unwrap();
        for depth in 0..t.strata().len() {
            let (tl, tu) = truncation_bounds(&t, depth, &model).unwrap();
            let (bl, bu) = truncation_bounds(&b, depth, &model).unwrap();
            ensure!(tl <= exact && exact <= tu, "Taylor depth {depth} at {p}");
            ensure!(bl <= exact && exact <= bu, "minimal depth {depth} at {p}");
            ensure!(tl <= bl && bu <= tu, "minimal looser than Taylor at depth {depth}, p={p}");
        }
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let ideal = consecutive_ideal(2, 10).unwrap();
    let rows = profile(&ideal, Methods::default(), Guard::default()).unwrap();
    for row in &rows {
        ensure!(row.error.is_none(), "k={}: {:?}", row.k, row.error);
        let (t, a, m) = (
            row.size_taylor.clone().unwrap(),
            row.size_ahh.unwrap(),
            row.size_minimal.unwrap(),
        );
        ensure!(BigUint::from(m) <= t && (m as u128) <= a, "k={}: minimal {m} vs {t}, {a}", row.k);
        let g = k_fold_ideal(&ideal, row.k, Guard::default()).unwrap().len();
        ensure!(t == (BigUint::one() << g) - BigUint::one(), "k={}: taylor size", row.k);
    }
    let k4 = profile(&complete_graph_cut_ideal(4).unwrap(), Methods::default(), Guard::default()).unwrap();
    for plateau in [2..=3, 4..=7] {
        let first = &k4[*plateau.start() - 1];
        for k in plateau {
            let row = &k4[k - 1];
            ensure!(row.size_taylor == first.size_taylor, "K4 taylor size at k={k}");
            ensure!(row.size_minimal == first.size_minimal, "K4 minimal size at k={k}");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("golden 2-out-of-5 numerators of I1 and I2", criterion_1, 1),
        ("golden 2-out-of-6 tail probabilities", criterion_2, 1),
        ("golden failure-count distribution and means", criterion_3, 1),
        ("golden slice probabilities and differences", criterion_4, 1),
        ("generator degree histogram of 2-out-of-6", criterion_5, 1),
        ("k-out-of-r resolution ranks, boundary, exactness, minimality", criterion_6, 30),
        ("degenerated resolutions of I_k", criterion_7, 60),
        ("complete-graph staircase", criterion_8, 120),
        ("complete-graph mean failures", criterion_9, 10),
        ("oracle equivalence on 50 random ideals", criterion_10, 120),
        ("truncation bounds on 2-out-of-6", criterion_11, 5),
        ("profile size shape", criterion_12, 120),
    ];
    let mut failed = 0;
    for (n, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("took {elapsed:.2?}, limit {limit}s"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS ({elapsed:.2?}) {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL ({elapsed:.2?}) {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
