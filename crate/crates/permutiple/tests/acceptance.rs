//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use permutiple::conjectures::{check_conjectures, Bounds, ConjectureId};
use permutiple::core::cf::gauss_step;
use permutiple::core::classify::{
    classify, classify_relaxed, continuant_preservation_routes, numerator_ratio_below_two,
    representative_sigma,
};
use permutiple::core::concat::{
    concat, concat_strings, concat_witness, concatenated_continuant, palindromic_concat,
};
use permutiple::core::construct::{
    enumerate_three_digit_reverse, perfect_cyclic, perfect_reverse, two_digit,
};
use permutiple::core::continuant::continuant;
use permutiple::core::surd::{
    asymptotic_continuant_gap, equivalence_probe, infinite_perfect_stream, verify_surd_permutiple,
    ParamSequence, ProbeVerdict,
};
use permutiple::core::{ContinuedFraction, Permutation, QuadraticSurd, Rational, Witness};
use permutiple::search::{exhaustive_search, SearchConfig};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cf(s: &str) -> ContinuedFraction {
    s.parse().expect("valid fraction")
}

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn digits_u64(w: &Witness) -> Vec<u64> {
    w.cf()
        .digits()
        .iter()
        .map(|d| u64::try_from(d).expect("small digit"))
        .collect()
}

// Value of [x0; x1, ..., xn] by folding nested fractions from the right.
fn nested(xs: &[BigUint]) -> Rational {
    let last = BigInt::from(xs[xs.len() - 1].clone());
    xs[..xs.len() - 1]
        .iter()
        .rev()
        .fold(Rational::from_integer(last), |acc, x| {
            let (p, q) = (
                BigInt::from(x.clone()) * acc.numer() + acc.denom(),
                acc.numer().clone(),
            );
            Rational::new(p, q).expect("positive")
        })
}

fn search(
    lengths: std::ops::RangeInclusive<usize>,
    max_digit: u64,
    k_max: Option<u64>,
) -> Vec<Witness> {
    let mut c = SearchConfig::new(lengths, max_digit);
    c.k_max = k_max;
    let out = exhaustive_search(&c).expect("valid config");
    assert!(!out.truncated, "search truncated");
    out.witnesses
}

struct Scans {
    four_digit: Vec<Witness>,
    up_to_five: Vec<Witness>,
}

fn scans() -> &'static Scans {
    static SCANS: OnceLock<Scans> = OnceLock::new();
    SCANS.get_or_init(|| Scans {
        four_digit: search(4..=4, 20, None),
        up_to_five: search(2..=5, 12, None),
    })
}

struct Example {
    digits: &'static str,
    permuted: &'static str,
    k: u64,
    expect: fn(&Witness) -> bool,
}

fn criterion_1() -> Outcome {
    let gallery = [
        Example {
            digits: "7;1,3",
            permuted: "3;1,7",
            k: 2,
            expect: |w| w.flags().reverse_multiple,
        },
        Example {
            digits: "7;2,1,3",
            permuted: "3;1,2,7",
            k: 2,
            expect: |w| w.flags().reverse_multiple,
        },
        Example {
            digits: "7;1,14,2",
            permuted: "1;7,2,14",
            k: 7,
            expect: |w| w.flags().perfect,
        },
        Example {
            digits: "3;1,9,1,3,3",
            permuted: "1;3,3,3,1,9",
            k: 3,
            expect: |w| w.flags().perfect && w.flags().symmetric,
        },
        Example {
            digits: "4;2,1,8,1,2",
            permuted: "1;2,4,2,1,8",
            k: 3,
            expect: |w| w.flags().symmetric && !w.flags().perfect && !w.flags().reverse_multiple,
        },
        Example {
            digits: "9;3,2,8,2",
            permuted: "2;3,9,2,8",
            k: 4,
            expect: |w| !w.flags().symmetric,
        },
        Example {
            digits: "2;1,5,1,2",
            permuted: "1;2,2,1,5",
            k: 2,
            expect: |w| w.flags().landess && !w.flags().symmetric,
        },
        Example {
            digits: "11;1,10,2,3",
            permuted: "1;3,11,10,2",
            k: 9,
            expect: |w| !w.flags().landess,
        },
    ];
    for ex in &gallery {
        let (a, p) = (cf(ex.digits), cf(ex.permuted));
        let sigma = representative_sigma(a.digits(), p.digits())
            .ok_or_else(|| format!("{} not a rearrangement", ex.permuted))?;
        let w = classify(&a, &sigma, &b(ex.k)).map_err(|e| format!("[{}]: {e}", ex.digits))?;
        let k = BigInt::from(ex.k);
        check(nested(a.digits()) == nested(p.digits()).scale(&k), || {
            format!("[{}] != {} * [{}]", ex.digits, ex.k, ex.permuted)
        })?;
        check(w.value() == &nested(a.digits()), || {
            format!("value of [{}]", ex.digits)
        })?;
        check((ex.expect)(&w), || {
            format!("[{}] flags {:?}", ex.digits, w.flags())
        })?;
    }
    Ok(format!("{} examples", gallery.len()))
}

fn criterion_2() -> Outcome {
    let found = search(3..=3, 25, Some(5));
    let mut searched = BTreeSet::new();
    for w in &found {
        let reversed = w.permuted() == w.cf().reversed();
        check(w.flags().reverse_multiple && reversed, || {
            format!("[{}] is not a reverse multiple", w.cf())
        })?;
        let d = digits_u64(w);
        let k = u64::try_from(w.k()).expect("small k");
        check(d[0] * d[1] + 1 == k * (d[1] * d[2] + 1), || {
            format!("[{}] fails a0 a1 + 1 = k (a1 a2 + 1)", w.cf())
        })?;
        searched.insert((d, k));
    }
    let mut constructed = BTreeSet::new();
    for k in 2..=5 {
        for w in enumerate_three_digit_reverse(&b(k), &b(25)) {
            let d = digits_u64(&w);
            if w.is_canonical() && d.iter().all(|&x| x <= 25) {
                constructed.insert((d, k));
            }
        }
    }
    check(searched == constructed, || {
        format!(
            "search {} vs constructor {}: {:?}",
            searched.len(),
            constructed.len(),
            searched
                .symmetric_difference(&constructed)
                .collect::<Vec<_>>()
        )
    })?;
    Ok(format!("{} three-digit witnesses", searched.len()))
}

fn criterion_3() -> Outcome {
    let found: BTreeSet<(u64, u64, u64)> = search(2..=2, 50, None)
        .iter()
        .map(|w| {
            let d = digits_u64(w);
            (d[0], d[1], u64::try_from(w.k()).expect("small k"))
        })
        .collect();
    let mut family = BTreeSet::new();
    for k in 2..=25 {
        for s in 2..=50 {
            if k * s <= 50 {
                family.insert((k * s, s, k));
            }
        }
    }
    check(found == family, || {
        format!("search {} vs family {}", found.len(), family.len())
    })?;
    Ok(format!("{} two-digit witnesses", found.len()))
}

fn criterion_4() -> Outcome {
    let s = scans();
    let mut summary = Vec::new();
    let runs = [
        (
            ConjectureId::C1,
            &s.four_digit,
            Bounds {
                lengths: 4..=4,
                max_digit: 20,
            },
        ),
        (
            ConjectureId::C4,
            &s.four_digit,
            Bounds {
                lengths: 4..=4,
                max_digit: 20,
            },
        ),
        (
            ConjectureId::C2,
            &s.up_to_five,
            Bounds {
                lengths: 2..=5,
                max_digit: 12,
            },
        ),
        (
            ConjectureId::C3,
            &s.up_to_five,
            Bounds {
                lengths: 2..=5,
                max_digit: 12,
            },
        ),
    ];
    for (id, ws, bounds) in runs {
        let report = check_conjectures(ws.iter().cloned(), &bounds, &[id]).remove(0);
        check(report.examined > 0, || format!("{id}: nothing examined"))?;
        check(report.holds(), || {
            let first = &report.counterexamples[0];
            format!(
                "{id}: COUNTEREXAMPLE [{}] sigma {} k {}",
                first.cf(),
                first.sigma(),
                first.k()
            )
        })?;
        summary.push(format!("{id} 0/{}", report.examined));
    }
    Ok(summary.join(", "))
}

fn criterion_5() -> Outcome {
    let mut runner = TestRunner::new(RunnerConfig {
        cases: 1000,
        failure_persistence: None,
        ..RunnerConfig::default()
    });
    let big = |xs: &[u64]| xs.iter().map(|&x| b(x)).collect::<Vec<_>>();

    runner
        .run(&prop::collection::vec(1u64..1000, 0..14), |xs| {
            let mut rev = xs.clone();
            rev.reverse();
            prop_assert_eq!(continuant(&big(&xs)), continuant(&big(&rev)));
            Ok(())
        })
        .map_err(|e| format!("continuant reversal: {e}"))?;
    runner
        .run(
            &(
                prop::collection::vec(1u64..200, 0..9),
                prop::collection::vec(1u64..200, 0..9),
            ),
            |(l, r)| {
                prop_assert_eq!(
                    concatenated_continuant(&big(&l), &big(&r)),
                    continuant(&concat_strings(&big(&l), &big(&r)))
                );
                Ok(())
            },
        )
        .map_err(|e| format!("concatenation identity: {e}"))?;
    runner
        .run(&prop::collection::vec(1u64..200, 1..12), |xs| {
            let c = ContinuedFraction::new(big(&xs)).unwrap();
            let q = BigInt::from(c.convergents().last().1.clone());
            prop_assert_eq!(c.tails().product(), Rational::new(1, q).unwrap());
            Ok(())
        })
        .map_err(|e| format!("tail product: {e}"))?;

    for len in 0..=6u32 {
        for code in 0..5u64.pow(len) {
            let xs: Vec<u64> = (0..len).map(|i| code / 5u64.pow(i) % 5 + 1).collect();
            let mut rev = xs.clone();
            rev.reverse();
            check(continuant(&big(&xs)) == continuant(&big(&rev)), || {
                format!("reversal {xs:?}")
            })?;
            for cut in 0..=xs.len() {
                let (l, r) = xs.split_at(cut);
                check(
                    concatenated_continuant(&big(l), &big(r)) == continuant(&big(&xs)),
                    || format!("identity {xs:?} at {cut}"),
                )?;
            }
            if !xs.is_empty() {
                let c = ContinuedFraction::new(big(&xs)).unwrap();
                let q = BigInt::from(c.convergents().last().1.clone());
                check(c.tails().product() == Rational::new(1, q).unwrap(), || {
                    format!("tails {xs:?}")
                })?;
                let canon = c.canonicalize();
                let mut x = canon.evaluate().fract();
                for g in canon.tails().tails() {
                    check(g == &x, || format!("gauss orbit {xs:?}"))?;
                    x = gauss_step(&x).unwrap();
                }
            }
        }
    }

    let s = scans();
    let mut checked = 0;
    for w in s.four_digit.iter().chain(&s.up_to_five) {
        let routes = continuant_preservation_routes(w);
        check(routes.iter().all(|&r| r == routes[0]), || {
            format!("[{}]: routes {routes:?}", w.cf())
        })?;
        check(routes[0] == w.flags().continuant_preserving, || {
            format!("[{}]: flag vs routes", w.cf())
        })?;
        if numerator_ratio_below_two(w) {
            check(w.flags().continuant_preserving, || {
                format!("[{}]: p < 2p' but not continuant-preserving", w.cf())
            })?;
        }
        let f = w.flags();
        if f.perfect {
            check(w.len() % 2 == 0 && f.symmetric, || {
                format!("[{}]: perfect but odd or asymmetric", w.cf())
            })?;
        }
        if f.symmetric {
            check(f.landess, || {
                format!("[{}]: symmetric but not Landess", w.cf())
            })?;
        }
        check(f.satisfies_lattice(), || {
            format!("[{}]: lattice {f:?}", w.cf())
        })?;
        checked += 1;
    }
    Ok(format!(
        "3 x 1000 random cases, exhaustive tiny strings, {checked} scanned witnesses"
    ))
}

fn landess_corpus(k: u64) -> Vec<Witness> {
    let kb = b(k);
    let mut out: Vec<Witness> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |w: Witness, out: &mut Vec<Witness>| {
        if w.flags().landess && seen.insert(w.cf().to_string()) {
            out.push(w);
        }
    };
    for w in scans().up_to_five.iter().filter(|w| w.k() == &kb) {
        push(w.clone(), &mut out);
    }
    for s in 2..=12 {
        push(two_digit(&kb, &b(s)).unwrap(), &mut out);
    }
    for w in enumerate_three_digit_reverse(&kb, &b(40)) {
        push(w, &mut out);
    }
    for len in 1..=3u32 {
        for code in 0..4u64.pow(len) {
            let half: Vec<BigUint> = (0..len).map(|i| b(code / 4u64.pow(i) % 4 + 1)).collect();
            push(perfect_reverse(&kb, &half).unwrap(), &mut out);
        }
    }
    for (len, ell) in [(4, 1), (4, 3), (6, 1), (6, 5)] {
        for p in 1..=4 {
            push(perfect_cyclic(&kb, len, ell, &[b(p)]).unwrap(), &mut out);
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for k in [2u64, 3, 7] {
        let corpus = landess_corpus(k);
        check(corpus.len() >= 100, || {
            format!("k = {k}: only {} Landess witnesses", corpus.len())
        })?;
        let kk = BigInt::from(k);
        let mut pairs = 0;
        for w1 in &corpus {
            for w2 in &corpus {
                let w = concat_witness(w1, w2)
                    .map_err(|e| format!("[{}] o [{}]: {e}", w1.cf(), w2.cf()))?;
                check(w.cf() == &concat(w1.cf(), w2.cf()), || {
                    format!("[{}] o [{}]: digits", w1.cf(), w2.cf())
                })?;
                let permuted = concat(&w1.permuted(), &w2.permuted());
                check(w.permuted() == permuted, || {
                    format!("[{}] o [{}]: permuted digits", w1.cf(), w2.cf())
                })?;
                check(w.cf().evaluate() == permuted.evaluate().scale(&kk), || {
                    format!("[{}] o [{}]: value", w1.cf(), w2.cf())
                })?;
                check(w.flags().landess, || {
                    format!("[{}] o [{}]: lost Landess", w1.cf(), w2.cf())
                })?;
                pairs += 1;
            }
        }
        let reverse: Vec<&Witness> = corpus
            .iter()
            .filter(|w| w.flags().reverse_multiple)
            .take(12)
            .collect();
        let mut palindromes = 0;
        for a in &reverse {
            for m in &reverse {
                for list in [
                    vec![(*a).clone()],
                    vec![(*a).clone(), (*m).clone(), (*a).clone()],
                    vec![(*a).clone(), (*m).clone(), (*m).clone(), (*a).clone()],
                ] {
                    let w = palindromic_concat(&list, &b(k))
                        .map_err(|e| format!("palindrome of [{}]: {e}", a.cf()))?;
                    check(
                        w.flags().reverse_multiple
                            && w.cf().evaluate() == w.cf().reversed().evaluate().scale(&kk),
                        || format!("palindrome [{}] is not a reverse multiple", w.cf()),
                    )?;
                    palindromes += 1;
                }
            }
        }
        summary.push(format!(
            "k={k}: {} witnesses, {pairs} pairs, {palindromes} palindromes",
            corpus.len()
        ));
    }
    Ok(summary.join("; "))
}

fn criterion_7() -> Outcome {
    let probe = verify_surd_permutiple(&QuadraticSurd::new(1, 3, 1).unwrap(), 40)
        .map_err(|e| e.to_string())?;
    check(probe.k == BigInt::from(2), || {
        format!("(1,3,1): k = {}", probe.k)
    })?;
    check(matches!(probe.verdict, ProbeVerdict::Consistent(_)), || {
        format!("(1,3,1): {:?}", probe.verdict)
    })?;

    let stream =
        infinite_perfect_stream(&b(2), ParamSequence::Powers(b(4))).map_err(|e| e.to_string())?;
    let digits = stream.prefix(40);
    check(
        digits[..6] == [b(2), b(1), b(8), b(4), b(32), b(16)],
        || format!("stream starts {:?}", &digits[..6]),
    )?;
    for (j, d) in digits.iter().enumerate() {
        let i = (j / 2) as u32;
        let want = if j % 2 == 0 {
            b(2) * b(4).pow(i)
        } else {
            b(4).pow(i)
        };
        check(d == &want, || format!("stream digit {j} = {d}"))?;
        check(stream.permuted_digit(j) == b(2).pow(j as u32), || {
            format!("permuted digit {j}")
        })?;
    }
    for m in 1..=20 {
        let t = stream.truncation(2 * m).unwrap();
        let w = classify_relaxed(&t, &Permutation::adjacent_swaps(2 * m), &b(2))
            .map_err(|e| format!("truncation {}: {e}", 2 * m))?;
        check(w.flags().perfect, || {
            format!("truncation {} not perfect", 2 * m)
        })?;
    }

    let gaps = asymptotic_continuant_gap(&stream, 39);
    for (i, g) in gaps.iter().enumerate() {
        let n = i + 1;
        if n % 2 == 1 {
            check(g == &b(0), || format!("gap at n = {n} is {g}"))?;
        }
    }
    for sample in equivalence_probe(&stream, 39) {
        let v = sample.vanishing();
        check(v.iter().all(|&x| x == v[0]), || {
            format!("equivalence probe disagrees at n = {}: {v:?}", sample.n)
        })?;
    }

    let golden = verify_surd_permutiple(&QuadraticSurd::new(1, 5, 2).unwrap(), 40)
        .map_err(|e| e.to_string())?;
    let recorded = match golden.verdict {
        ProbeVerdict::Inconsistent { position } => {
            format!("golden ratio recorded inconsistent at digit {position}")
        }
        other => return Err(format!("golden ratio probe: {other:?}")),
    };
    Ok(recorded)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("example gallery", criterion_1),
        ("three-digit completeness", criterion_2),
        ("two-digit completeness", criterion_3),
        ("conjecture scans", criterion_4),
        ("property suites", criterion_5),
        ("concatenation closure", criterion_6),
        ("surds and streams", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
