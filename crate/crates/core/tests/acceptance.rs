//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs as part of `cargo test`; run alone with
//! `cargo test -p hecke-core --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hecke_core::bounds::write_csv;
use hecke_core::divergence::{family_certificate, DEFAULT_CAP_FACTOR};
use hecke_core::orbits::partition_of;
use hecke_core::{
    a_bound, apply_word, cmp_eps, d_int, distinct_orbit_certificates, divisor_pairs, enumerate_b,
    find_s0, in_b, is_valid_n, lemma_growth_step, orbit_partition, par, reduce_to_b, survey,
    theorem_bound, verify_action, word_to_matrix, ExplorationConfig, GeneratorToken, GroupWord,
    Triple,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sq_free(range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range.filter(|&n| is_valid_n(n)).collect()
}

fn random_triple(rng: &mut ChaCha8Rng, ns: &[i64], a_max: i64) -> Triple {
    let n = ns[rng.gen_range(0..ns.len())];
    let a = rng.gen_range(-a_max..=a_max);
    let pairs = divisor_pairs(a * a - n).unwrap();
    let (b, c) = pairs[rng.gen_range(0..pairs.len())];
    Triple::new(n, a, b, c).unwrap()
}

fn ac1_remark_replay() -> Outcome {
    let start = Instant::now();
    let alpha = Triple::make(7, 1, 2).map_err(|e| e.to_string())?;
    let s1 = alpha.apply_w(-2).unwrap();
    let s2 = s1.apply_x();
    let s3 = s2.apply_w(-2).unwrap();
    let beta = Triple::make(-2, 2, 2).map_err(|e| e.to_string())?;
    let r1 = beta.apply_w(-2).unwrap();
    let r2 = r1.apply_x();
    let elapsed = start.elapsed();
    let got = [alpha, s1, s2, s3, beta, r1, r2].map(|t| t.to_string());
    let want = ["1,-3,2", "-3,1,2", "3,2,1", "1,-6,1", "2,3,2", "-2,3,2", "2,2,3"];
    ensure!(got == want, "chain {got:?} != {want:?}");
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!("7 triples byte-exact in {elapsed:?}"))
}

fn ac2_closure() -> Outcome {
    let ns = sq_free(-50..=50);
    let mut rng = ChaCha8Rng::seed_from_u64(0xC105);
    let mut failures = 0;
    for _ in 0..100_000 {
        let t = random_triple(&mut rng, &ns, 60);
        let lambda = rng.gen_range(1..=3);
        let out = match rng.gen_range(0..3) {
            0 => t.apply_x(),
            1 => t.apply_w(lambda * rng.gen_range(1..=5)).unwrap(),
            _ => t.apply_w(-lambda * rng.gen_range(1..=5)).unwrap(),
        };
        let (a, b, c, n) = (out.a() as i128, out.b() as i128, out.c() as i128, out.n() as i128);
        if b * c != a * a - n {
            failures += 1;
        }
    }
    ensure!(failures == 0, "{failures} applications broke bc = a^2 - n");
    Ok("100000 applications, 0 failures".into())
}

fn ac3_matrix_consistency() -> Outcome {
    let ns = sq_free(-50..=50);
    let mut rng = ChaCha8Rng::seed_from_u64(0x3A7);
    for i in 0..10_000 {
        let t = random_triple(&mut rng, &ns, 20);
        let lambda = rng.gen_range(1..=3i64);
        let len = rng.gen_range(0..=12);
        let max_k = 10 / lambda;
        let tokens = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    GeneratorToken::X
                } else {
                    let k = rng.gen_range(1..=max_k) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    GeneratorToken::T(k * lambda)
                }
            })
            .collect();
        let w = GroupWord::new(lambda, tokens).unwrap();
        let image = apply_word(&w, &t).map_err(|e| format!("word {i}: {e}"))?;
        let m = word_to_matrix(&w).map_err(|e| format!("word {i}: {e}"))?;
        ensure!(m.det() == 1, "word {w} has det {}", m.det());
        let ok = verify_action(&m, &t, &image).map_err(|e| e.to_string())?;
        ensure!(ok, "verify_action failed for word {w} on {t}");
    }
    Ok("10000 random words verified".into())
}

fn ac4_reduction() -> Outcome {
    let start = Instant::now();
    let ns = sq_free(-50..=50);
    let per_n = par::map(&ns, |&n| -> Result<usize, String> {
        let mut checked = 0;
        for a in -40..=40i64 {
            for (b, c) in divisor_pairs(a * a - n).unwrap() {
                if b.abs() > 40 || c.abs() > 40 {
                    continue;
                }
                let t = Triple::new(n, a, b, c).unwrap();
                let r = reduce_to_b(&t, 2).map_err(|e| format!("{t} (n={n}): {e}"))?;
                let limit = 2 * a.unsigned_abs() as usize + 1;
                ensure!(r.steps.len() <= limit, "{t} (n={n}) took {} steps", r.steps.len());
                ensure!(in_b(&r.reduced), "{t} (n={n}) reduced outside B");
                let m = r.certificate.to_matrix().map_err(|e| e.to_string())?;
                ensure!(
                    verify_action(&m, &t, &r.reduced).unwrap(),
                    "certificate for {t} (n={n}) does not verify"
                );
                checked += 1;
            }
        }
        Ok(checked)
    });
    let mut total = 0;
    for r in per_n {
        total += r?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{total} triples reduced and certified in {elapsed:?}"))
}

/// Padded brute-force scan over `a` and `b`, with `c` forced by divisibility.
fn brute_force_b(n: i64) -> Vec<(i64, i64, i64)> {
    let a_pad = a_bound(n).unwrap() + 2;
    let bc_pad = 2 * n.abs().max(n * n) + 2;
    let mut out = Vec::new();
    for a in -a_pad..=a_pad {
        let target = a * a - n;
        for b in -bc_pad..=bc_pad {
            if b == 0 || target % b != 0 {
                continue;
            }
            let c = target / b;
            if c.abs() <= bc_pad && a.abs() <= b.abs() && a.abs() <= c.abs() {
                out.push((a, b, c));
            }
        }
    }
    out.sort();
    out
}

fn ac5_enumeration_oracle() -> Outcome {
    let ns = sq_free(-30..=30);
    for &n in &ns {
        let bset = enumerate_b(n).map_err(|e| e.to_string())?;
        let ours: Vec<_> = bset.members.iter().map(Triple::coords).collect();
        ensure!(ours == brute_force_b(n), "B({n}) differs from brute force");
        ensure!(
            bset.counts.zero as u64 == d_int(n).unwrap(),
            "|B0({n})| = {} != d({n})",
            bset.counts.zero
        );
        ensure!(bset.counts.pos == bset.counts.neg, "|B+({n})| != |B-({n})|");
    }
    Ok(format!("{} values of n match the padded scan", ns.len()))
}

fn ac6_growth_lemma() -> Outcome {
    let mut checked = 0u64;
    let (mut case_same_sign, mut case_opposite) = (0u64, 0u64);
    for n in sq_free(-30..=30) {
        for a in -30..=30i64 {
            let target = a * a - n;
            if target <= 0 {
                continue;
            }
            for (b, c) in divisor_pairs(target).unwrap() {
                if c <= 0 || !cmp_eps(c, a.abs()) {
                    continue;
                }
                let t = Triple::new(n, a, b, c).unwrap();
                for k in (-9..=9i64).filter(|k| k.abs() >= 3) {
                    let (_, checks) = lemma_growth_step(&t, k).map_err(|e| e.to_string())?;
                    ensure!(checks.all(), "growth fails for {t} (n={n}), k={k}: {checks:?}");
                    checked += 1;
                    match (a * k).signum() {
                        1 => case_same_sign += 1,
                        -1 => case_opposite += 1,
                        _ => {}
                    }
                }
            }
        }
    }
    ensure!(case_same_sign > 0 && case_opposite > 0, "both sign cases must be exercised");
    Ok(format!(
        "{checked} steps, 0 failures (ak>0: {case_same_sign}, ak<0: {case_opposite})"
    ))
}

fn ac7_bound() -> Outcome {
    let start = Instant::now();
    let ns = sq_free(-30..=30);
    for &n in &ns {
        let bset = enumerate_b(n).unwrap();
        let p = partition_of(&bset, 2, &ExplorationConfig::tight(&bset)).map_err(|e| e.to_string())?;
        ensure!(p.stable, "n={n} not stable");
        ensure!(p.cap_used <= 10_000, "n={n} needed cap {}", p.cap_used);
        let bound = theorem_bound(n).unwrap();
        ensure!(p.count() as u64 <= bound, "n={n}: count {} > bound {bound}", p.count());
        if n == 7 || n == -2 {
            ensure!((p.count() as u64) < bound, "n={n}: bound not strict");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("{} values of n within bound, strict at 7 and -2, {elapsed:?}", ns.len()))
}

fn ac8_divergence() -> Outcome {
    let s0 = find_s0(2).map_err(|e| e.to_string())?;
    ensure!(s0 == 6, "s0 = {s0}, expected 6");
    let certs = distinct_orbit_certificates(2, 3, 10, DEFAULT_CAP_FACTOR).map_err(|e| e.to_string())?;
    let ss: Vec<i64> = certs.iter().map(|c| c.s).collect();
    ensure!(ss == (6..=15).collect::<Vec<_>>(), "indices {ss:?}");
    for c in &certs {
        ensure!(c.preconds_ok, "s={} preconditions fail", c.s);
        ensure!(c.empirical_min_norm, "s={} min-norm fails", c.s);
        ensure!(c.cap_used == 16 * c.triple.a() as u64, "s={} cap {}", c.s, c.cap_used);
        let doubled = family_certificate(2, 3, c.s, 2 * DEFAULT_CAP_FACTOR).map_err(|e| e.to_string())?;
        ensure!(doubled.passed(), "s={} fails at doubled cap", c.s);
    }
    let mut norms: Vec<i64> = certs.iter().map(|c| c.triple.a()).collect();
    norms.dedup();
    ensure!(norms.len() == 10, "norms not pairwise distinct");
    ensure!(norms.windows(2).all(|w| w[0] < w[1]), "norms not increasing");
    Ok(format!("s0 = 6, 10 certificates, norms {norms:?}"))
}

/// Class counts from the stabilized exploration, frozen after checking that
/// every count is unchanged over seven cap doublings.
fn frozen_counts(lambda: i64) -> BTreeMap<i64, usize> {
    let table: &[(i64, usize)] = match lambda {
        1 => &[
            (-30, 8), (-29, 12), (-26, 12), (-23, 12), (-22, 4), (-21, 8), (-19, 8),
            (-17, 8), (-15, 8), (-14, 8), (-13, 4), (-11, 8), (-10, 4), (-7, 4),
            (-6, 4), (-5, 4), (-3, 4), (-2, 2), (-1, 2), (2, 1), (3, 2), (5, 2),
            (6, 2), (7, 2), (10, 2), (11, 2), (13, 2), (14, 2), (15, 4), (17, 2),
            (19, 2), (21, 4), (22, 2), (23, 2), (26, 2), (29, 2), (30, 4),
        ],
        _ => &[
            (-30, 24), (-29, 36), (-26, 36), (-23, 36), (-22, 12), (-21, 24), (-19, 24),
            (-17, 24), (-15, 24), (-14, 24), (-13, 12), (-11, 24), (-10, 12), (-7, 12),
            (-6, 12), (-5, 12), (-3, 8), (-2, 6), (-1, 4), (2, 3), (3, 4), (5, 4),
            (6, 6), (7, 4), (10, 6), (11, 4), (13, 4), (14, 6), (15, 8), (17, 6),
            (19, 4), (21, 8), (22, 6), (23, 4), (26, 6), (29, 4), (30, 12),
        ],
    };
    table.iter().copied().collect()
}

fn ac9_finiteness() -> Outcome {
    let mut seen = 0;
    for lambda in [1, 2] {
        let frozen = frozen_counts(lambda);
        let ns = sq_free(-30..=30);
        ensure!(ns.len() == frozen.len(), "snapshot covers {} values, expected {}", frozen.len(), ns.len());
        for &n in &ns {
            let bset = enumerate_b(n).unwrap();
            let p = partition_of(&bset, lambda, &ExplorationConfig::for_n(n)).map_err(|e| e.to_string())?;
            ensure!(p.stable, "lambda={lambda} n={n} not stable");
            ensure!(p.count() <= bset.len(), "lambda={lambda} n={n} count > |B|");
            ensure!(p.count() == frozen[&n], "lambda={lambda} n={n}: {} != snapshot {}", p.count(), frozen[&n]);
            seen += 1;
        }
    }
    let p7 = orbit_partition(7, 2, &ExplorationConfig::for_n(7)).unwrap();
    let pairs7 = [Triple::new(7, 1, -3, 2).unwrap(), Triple::new(7, 1, -6, 1).unwrap()];
    ensure!(p7.class_of(&pairs7[0]) == p7.class_of(&pairs7[1]), "n=7 merge missing");
    let pm2 = orbit_partition(-2, 2, &ExplorationConfig::for_n(-2)).unwrap();
    let pairs2 = [Triple::new(-2, 2, 3, 2).unwrap(), Triple::new(-2, 2, 2, 3).unwrap()];
    ensure!(pm2.class_of(&pairs2[0]) == pm2.class_of(&pairs2[1]), "n=-2 merge missing");
    Ok(format!("{seen} partitions stable and equal to snapshot"))
}

fn survey_csv() -> Result<Vec<u8>, String> {
    let reports = survey(-30..=30, 2, ExplorationConfig::for_n).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    write_csv(&mut buf, &reports).map_err(|e| e.to_string())?;
    Ok(buf)
}

fn ac10_determinism() -> Outcome {
    let first = survey_csv()?;
    let second = survey_csv()?;
    ensure!(first == second, "survey output differs between runs");
    let rows = first.iter().filter(|&&b| b == b'\n').count() - 1;
    Ok(format!("two surveys byte-identical ({rows} rows, {} bytes)", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 worked-example replay", ac1_remark_replay),
        ("AC2 closure of the action", ac2_closure),
        ("AC3 action/matrix consistency", ac3_matrix_consistency),
        ("AC4 reduction into B(n)", ac4_reduction),
        ("AC5 B(n) enumeration oracle", ac5_enumeration_oracle),
        ("AC6 growth lemma", ac6_growth_lemma),
        ("AC7 divisor-sum bound", ac7_bound),
        ("AC8 divergence certificates", ac8_divergence),
        ("AC9 finiteness and snapshots", ac9_finiteness),
        ("AC10 survey determinism", ac10_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
