//! Cross-module invariants: matrix power vs iteration, modular reduction,
//! closed forms vs recurrences, search-space properties, and the algebra
//! of the quadratic extensions. Deterministic sweeps where the bound is
//! part of the contract, proptest where inputs are arbitrary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use winsum::higher;
use winsum::identities::{self, SweepBounds};
use winsum::pisano;
use winsum::quad::{self, BinetKind, QuadRat};
use winsum::relations::{self, WitnessDetail};
use winsum::sequences::{self, builtin, RecurrenceSpec, TermTable};

fn all_builtins() -> Vec<RecurrenceSpec> {
    let mut specs = vec![
        sequences::pell(),
        sequences::fibonacci(),
        sequences::lucas(),
        sequences::pell_lucas(),
        sequences::lucas_u(3, -1).unwrap(),
        sequences::lucas_v(3, 1).unwrap(),
    ];
    for k in 1..=4u32 {
        specs.push(sequences::gen_pell(k, k - 1).unwrap());
        if k >= 2 {
            specs.push(sequences::gen_pell(k, 0).unwrap());
            specs.push(sequences::gen_fib(k).unwrap());
        }
    }
    specs
}

#[test]
fn matrix_power_matches_iteration_up_to_300() {
    for spec in all_builtins() {
        let terms = spec.terms(0, 301).unwrap();
        for n in (0..=300).step_by(7).chain([1, 2, 299, 300]) {
            assert_eq!(
                spec.term_by_matrix(n as u64),
                terms[n],
                "{} at n={n}",
                spec.label()
            );
        }
    }
}

#[test]
fn recurrence_satisfied_up_to_300() {
    for spec in all_builtins() {
        let d = spec.order();
        let terms = spec.terms(0, 301).unwrap();
        for n in d..=300 {
            let mut acc = BigInt::zero();
            for (i, c) in spec.coeffs().iter().enumerate() {
                acc += c * &terms[n - 1 - i];
            }
            assert_eq!(acc, terms[n], "{} at n={n}", spec.label());
        }
    }
}

#[test]
fn modular_terms_match_full_terms() {
    for spec in all_builtins() {
        let terms = spec.terms(0, 201).unwrap();
        for m in [2u64, 3, 5, 7, 10, 97] {
            let res = spec.residues(201, m).unwrap();
            let big_m = BigInt::from(m);
            for (n, t) in terms.iter().enumerate() {
                assert_eq!(
                    BigInt::from(res[n]),
                    t.mod_floor(&big_m),
                    "{} mod {m} at n={n}",
                    spec.label()
                );
            }
        }
    }
}

#[test]
fn adjacent_terms_coprime_in_unit_seeded_family() {
    for r in 1..=6i64 {
        let spec = sequences::lucas_u(r, 1).unwrap();
        let terms = spec.terms(0, 202).unwrap();
        for n in 1..=200usize {
            assert_eq!(terms[n].gcd(&terms[n + 1]), BigInt::one(), "r={r} at n={n}");
        }
    }
}

#[test]
fn backward_extension_satisfies_recurrence() {
    for spec in all_builtins() {
        if !spec.backward_ok() {
            continue;
        }
        let d = spec.order() as i64;
        let lo = -50 - d;
        let terms = spec.terms(lo, (50 - lo + 1) as usize).unwrap();
        let at = |n: i64| &terms[(n - lo) as usize];
        for n in -50..=50i64 {
            let mut acc = BigInt::zero();
            for (i, c) in spec.coeffs().iter().enumerate() {
                acc += c * at(n - 1 - i as i64);
            }
            assert_eq!(&acc, at(n), "{} at n={n}", spec.label());
        }
    }
}

// --- quadratic-extension algebra ---------------------------------------

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn quad_element(d: i64) -> impl Strategy<Value = QuadRat> {
    (small_rational(), small_rational()).prop_map(move |(x, y)| QuadRat::new(d, x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative(
        d in prop::sample::select(vec![2i64, 5, 13]),
        pair in (small_rational(), small_rational(), small_rational(), small_rational()),
    ) {
        let (x1, y1, x2, y2) = pair;
        let u = QuadRat::new(d, x1, y1).unwrap();
        let v = QuadRat::new(d, x2, y2).unwrap();
        prop_assert_eq!(u.mul(&v).unwrap().norm(), u.norm() * v.norm());
    }

    #[test]
    fn power_pairs_cancel(
        d in prop::sample::select(vec![2i64, 5, 13]),
        u in quad_element(2).prop_filter("nonzero", |u| !u.is_zero()),
        n in 0i64..=40,
    ) {
        // rebuild over the sampled radicand to vary the field
        let u = QuadRat::new(d, u.rational_part().clone(), u.irrational_coeff().clone()).unwrap();
        prop_assume!(!u.is_zero());
        let prod = u.pow(n).unwrap().mul(&u.pow(-n).unwrap()).unwrap();
        prop_assert_eq!(prod.as_integer(), Some(BigInt::one()));
    }

    #[test]
    fn window_sum_equals_term_sum(start in -20i64..=40, len in 0u32..=25) {
        let spec = sequences::pell();
        let direct: BigInt = spec.terms(start, len as usize).unwrap().into_iter().sum();
        prop_assert_eq!(spec.window_sum(start, len).unwrap(), direct);
    }
}

#[test]
fn closed_forms_match_iteration_for_the_stated_families() {
    // (2,-1) has a vanishing discriminant and must be rejected; the
    // perfect-square family (3,-2) exercises the rational-root branch.
    assert!(quad::binet_term(2, -1, BinetKind::First, 3).is_err());
    for (r, s) in [(2i64, 1i64), (1, 1), (3, -1), (3, -2)] {
        for kind in [BinetKind::First, BinetKind::Second] {
            let spec = quad::matching_spec(r, s, kind).unwrap();
            let terms = spec.terms(0, 201).unwrap();
            for (n, want) in terms.iter().enumerate() {
                assert_eq!(
                    &quad::binet_term(r, s, kind, n as u64).unwrap(),
                    want,
                    "(r,s)=({r},{s}) {kind:?} n={n}"
                );
            }
        }
    }
}

#[test]
fn golden_power_expansion_exact_up_to_300() {
    let fib = sequences::fibonacci();
    for n in 1..=300u64 {
        let p = quad::phi_power(n).unwrap();
        let f_n = fib.term(n as i64).unwrap();
        let f_prev = fib.term(n as i64 - 1).unwrap();
        let want_y = BigRational::new(f_n, BigInt::from(2));
        assert_eq!(p.irrational_coeff(), &want_y);
        assert_eq!(
            p.rational_part(),
            &(&want_y + BigRational::from_integer(f_prev))
        );
    }
}

#[test]
fn root_products_are_minus_one_for_unit_norm_seeds() {
    for (r, s) in [(2i64, 1i64), (1, 1)] {
        let quad::RootPair::Quadratic { alpha, beta } = quad::lucas_roots(r, s).unwrap() else {
            panic!("expected quadratic roots");
        };
        assert_eq!(alpha.mul(&beta).unwrap().as_integer(), Some(-BigInt::one()));
    }
}

#[test]
fn window4_constant_rational_only_at_r_two() {
    for r in 1..=10i64 {
        let c = quad::closed_form_constant(r, 1, 4, 2).unwrap();
        assert_eq!(
            c.irrational_coeff().is_zero(),
            r == 2,
            "window 4, offset 2, r={r}"
        );
    }
    for offset in [3i64, 4] {
        for r in 1..=10i64 {
            let c = quad::closed_form_constant(r, 1, 4, offset).unwrap();
            assert!(
                !c.irrational_coeff().is_zero(),
                "window 4, offset {offset}, r={r} unexpectedly rational"
            );
        }
    }
}

// --- identity sweeps at the contract rectangle -------------------------

#[test]
fn every_verifier_passes_at_the_contract_rectangle() {
    let bounds = SweepBounds::default(); // n <= 100, N <= 10, k <= 10, r <= 6
    for id in identities::VERIFIER_IDS {
        let rep = identities::run_verifier(id, bounds).unwrap();
        assert!(rep.passed, "{id}: {:?}", rep.counterexample);
    }
}

#[test]
fn higher_order_partial_sums_hold_to_150() {
    let rep = identities::verify_gen_pell_identities(6, 150).unwrap();
    assert!(rep.passed, "{:?}", rep.counterexample);
}

// --- relation-search properties -----------------------------------------

#[test]
fn no_constant_non_integer_ratio_on_coprime_seeds() {
    let mut specs = vec![sequences::pell(), sequences::fibonacci()];
    for r in 1..=6 {
        specs.push(sequences::lucas_u(r, 1).unwrap());
    }
    for spec in specs {
        for window in 1..=12u32 {
            let v = relations::search_relation(&spec, window, Some(1), 100, None).unwrap();
            for w in &v.witnesses {
                assert!(
                    !matches!(w.detail, WitnessDetail::ConstantNotPositiveInteger { .. }),
                    "{} window {window}: {:?}",
                    spec.label(),
                    w
                );
            }
        }
    }
}

#[test]
fn at_most_one_offset_certifies_per_window() {
    for spec in [
        sequences::pell(),
        sequences::fibonacci(),
        sequences::lucas(),
    ] {
        for window in 1..=10u32 {
            let mut hits = 0;
            for k in 0..=(window as i64 + 2) {
                let v =
                    relations::search_relation(&spec, window, Some(1), 60, Some(k..=k)).unwrap();
                if v.found {
                    hits += 1;
                }
            }
            assert!(
                hits <= 1,
                "{} window {window}: {hits} offsets",
                spec.label()
            );
        }
    }
}

#[test]
fn odd_windows_sandwiched_between_neighbor_terms() {
    let table = TermTable::build(&sequences::pell(), 140);
    for window in (3..=11i64).step_by(2) {
        for n in 1..=120i64 {
            let sum = table.window(n, window);
            assert!(
                *table.t(n + window - 1) < sum && sum < *table.t(n + window),
                "window {window} at n={n}"
            );
        }
    }
}

#[test]
fn found_offsets_stay_in_band_on_small_sweeps() {
    for r in 2..=5i64 {
        let spec = sequences::lucas_u(r, 1).unwrap();
        for v in relations::classify(&spec, 10, Some(1), 80).unwrap() {
            if v.found && v.window >= 2 {
                let k = v.offset.unwrap();
                let w = v.window as i64;
                assert!((w + 1) / 2 <= k && k <= w, "r={r}: {v:?}");
            }
        }
    }
}

// --- period properties ---------------------------------------------------

#[test]
fn states_repeat_at_the_reported_period() {
    for (spec, m) in [
        (sequences::pell(), 9u64),
        (sequences::fibonacci(), 12),
        (builtin("genPell(2,1)").unwrap(), 5),
        (builtin("lucasU(2,2)").unwrap(), 6),
    ] {
        let r = pisano::pisano(&spec, m).unwrap();
        let d = spec.order();
        let need = r.preperiod as usize + r.period as usize + 50 + d;
        let res = spec.residues(need, m).unwrap();
        for n in r.preperiod as usize..(r.preperiod as usize + 50) {
            for j in 0..d {
                assert_eq!(
                    res[n + j],
                    res[n + r.period as usize + j],
                    "{} mod {m} at n={n}",
                    spec.label()
                );
            }
        }
    }
}

#[test]
fn block_mod2_pattern_up_to_200() {
    for k in 1..=6u32 {
        assert!(higher::gen_pell_mod2_matches(k, 200).unwrap(), "k={k}");
    }
}

#[test]
fn window_divisibility_follows_certified_relations() {
    // every certified window sum is divisible by its constant
    let table = relations::classify(&sequences::pell(), 16, Some(1), 100).unwrap();
    for v in table.iter().filter(|v| v.found) {
        let c = v.constant.clone().unwrap();
        if c > BigInt::one() {
            let m = u64::try_from(&c).unwrap();
            assert!(
                pisano::window_divisibility(&sequences::pell(), v.window, m, 100).unwrap(),
                "window {}",
                v.window
            );
        }
    }
}
