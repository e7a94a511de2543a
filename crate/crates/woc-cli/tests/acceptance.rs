//! End-to-end acceptance checks. Each test covers one release criterion,
//! prints a single PASS/FAIL line, and fails the build on FAIL. Every
//! comparison is exact integer or exact rational arithmetic.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use woc_core::bijections::{
    avoider_to_path, chain_from_colored, colored_from_chain, marked_perm_from_new_inactive,
    new_inactive_from_marked_perm, path_to_avoider, weighted_count, DyckPath, SiteKind,
};
use woc_core::counting::{
    counts_table, ell213, factorial, fubini, series_counts_table, LevelCounts,
};
use woc_core::series::{gf, Gf, GfName, PolyY, TruncatedSeries};
use woc_core::treesim::{enumerate_leaves, oracle_tally, tally, LeafClass, SimConfig};
use woc_core::{Family, StoppingPattern};

fn report(criterion: usize, ok: bool) {
    println!("ACCEPTANCE {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion {criterion} failed");
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn col(table: &[LevelCounts], pick: fn(&LevelCounts) -> &BigUint) -> Vec<BigUint> {
    table.iter().map(|lc| pick(lc).clone()).collect()
}

fn sim_table(family: Family, n_max: usize) -> Vec<LevelCounts> {
    tally(&family.pattern(), n_max, &SimConfig::default())
        .unwrap()
        .levels()
        .to_vec()
}

/// All three tie-breaking conditions on a pair of variables.
#[test]
fn criterion_1_size_two_conditions() {
    let mut ok = true;
    let expected_w: [(Family, &[u64]); 3] = [
        (Family::Tie, &[1, 3, 11, 47, 239]),
        (Family::Lt, &[1, 3, 9, 25, 65]),
        (Family::Le, &[1, 3, 7, 13, 21]),
    ];
    for (family, w) in expected_w {
        let sim = sim_table(family, 9);
        let formula = counts_table(family, 9).unwrap();
        ok &= sim == formula;
        ok &= col(&formula[..5], |lc| &lc.w) == big(w);
    }
    report(1, ok);
}

/// Triple condition x_i < x_j < x_k: simulation, formulas and series agree.
#[test]
fn criterion_2_strict_triple() {
    let mut ok = true;
    let w = big(&[1, 3, 13, 69, 401, 2433, 15121, 95441]);
    let a = big(&[1, 3, 12, 56, 284, 1516, 8384, 47600]);
    let sim = sim_table(Family::Strict123, 8);
    let formula = counts_table(Family::Strict123, 8).unwrap();
    let series = series_counts_table(Family::Strict123, 8).unwrap();
    for table in [&sim, &formula, &series] {
        ok &= col(table, |lc| &lc.w) == w;
        ok &= col(table, |lc| &lc.a) == a;
    }
    ok &= counts_table(Family::Strict123, 30).unwrap()
        == series_counts_table(Family::Strict123, 30).unwrap();
    report(2, ok);
}

/// Triple condition x_i <= x_j <= x_k.
#[test]
fn criterion_3_weak_triple() {
    let mut ok = true;
    let w = big(&[1, 3, 13, 59, 269, 1227, 5613, 25771, 118765]);
    let a = big(&[1, 3, 9, 31, 113, 431, 1697, 6847]);
    let formula = counts_table(Family::Weak123, 9).unwrap();
    let series = series_counts_table(Family::Weak123, 9).unwrap();
    let sim = sim_table(Family::Weak123, 8);
    ok &= col(&formula, |lc| &lc.w) == w;
    ok &= series == formula;
    ok &= sim == formula[..8];
    ok &= col(&formula[..8], |lc| &lc.a) == a;
    report(3, ok);
}

/// Triple condition x_i <= x_j < x_k.
#[test]
fn criterion_4_mixed_triple() {
    let mut ok = true;
    let w = big(&[1, 3, 13, 65, 341, 1827, 9913, 54273, 299209, 1658723]);
    let a = big(&[1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859]);
    let formula = counts_table(Family::Mixed123, 10).unwrap();
    let series = series_counts_table(Family::Mixed123, 10).unwrap();
    let sim = sim_table(Family::Mixed123, 8);
    ok &= col(&formula, |lc| &lc.w) == w;
    ok &= col(&formula, |lc| &lc.a) == a;
    ok &= series == formula;
    ok &= sim == formula[..8];
    report(4, ok);
}

/// k-fold ties: k = 3 sequence, and k = 2 degenerates to the pair tie.
#[test]
fn criterion_5_k_equal() {
    let mut ok = true;
    let w = big(&[1, 3, 13, 73, 505, 4165, 39985, 438145]);
    let formula = counts_table(Family::KEqual(3), 8).unwrap();
    ok &= col(&formula, |lc| &lc.w) == w;
    ok &= sim_table(Family::KEqual(3), 8) == formula;
    ok &= counts_table(Family::KEqual(2), 8).unwrap() == counts_table(Family::Tie, 8).unwrap();
    ok &= sim_table(Family::KEqual(2), 8) == sim_table(Family::Tie, 8);
    report(5, ok);
}

/// Mixed pair conditions (<,=) and (<=,=): recurrences, closed forms, and
/// the two formulations of the (<,=) stopped-count agree far out.
#[test]
fn criterion_6_mixed_pairs() {
    let mut ok = true;
    for family in [Family::LtEq, Family::LeEq] {
        ok &= sim_table(family, 8) == counts_table(family, 8).unwrap();
    }

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let lt_eq_delta_closed = |n: usize| -> BigRational {
        // (n!/2) * sum_{k=3}^{n} (k-2)/k
        let mut sum = BigRational::zero();
        for k in 3..=n {
            sum += BigRational::new(BigInt::from(k as u64 - 2), BigInt::from(k as u64));
        }
        BigRational::from(BigInt::from(factorial(n))) * half.clone() * sum
    };

    let table = counts_table(Family::LtEq, 25).unwrap();
    for (i, lc) in table.iter().enumerate() {
        let n = i + 1;
        if n <= 8 {
            let a_closed = factorial(n + 1) / BigUint::from(2u8);
            ok &= lc.a == a_closed;
        }
        let closed = lt_eq_delta_closed(n);
        ok &= closed.is_integer();
        ok &= BigInt::from(lc.delta.clone()) == closed.to_integer();
    }
    report(6, ok);
}

fn univariate(g: Gf) -> TruncatedSeries<BigRational> {
    match g {
        Gf::Univariate(s) => s,
        Gf::Bivariate(_) => panic!("expected a univariate expansion"),
    }
}

fn bivariate(g: Gf) -> TruncatedSeries<PolyY> {
    match g {
        Gf::Bivariate(s) => s,
        Gf::Univariate(_) => panic!("expected a bivariate expansion"),
    }
}

/// outer(inner) where inner has valuation >= 1.
fn compose(
    outer: &TruncatedSeries<BigRational>,
    inner: &TruncatedSeries<BigRational>,
) -> TruncatedSeries<BigRational> {
    let order = inner.order();
    let mut acc = TruncatedSeries::zero(order);
    let mut power = TruncatedSeries::one(order);
    for k in 0..=outer.order() {
        acc = acc.add(&power.scale(outer.coeff(k).unwrap()));
        power = power.mul(inner).truncate(order);
    }
    acc
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Generating-function identities and exact series arithmetic.
#[test]
fn criterion_7_series_identities() {
    let mut ok = true;
    let y = PolyY::y();
    let y_minus_y2 = PolyY::from_coeffs(vec![rat(0, 1), rat(1, 1), rat(-1, 1)]);
    let one_minus_y = PolyY::from_coeffs(vec![rat(1, 1), rat(-1, 1)]);

    // Kernel identity for the strict-triple descent series:
    // G = x + (x - 1)E + x^2 y E_x + x(y - y^2) E_y.
    let pad = 14;
    let e = bivariate(gf(GfName::E, pad).unwrap());
    let rhs = TruncatedSeries::monomial(PolyY::constant(rat(1, 1)), 1, pad)
        .add(&e.shift_by_x_power(1).sub(&e))
        .add(&e.derivative_x().shift_by_x_power(2).scale(&y))
        .add(&e.derivative_y().shift_by_x_power(1).scale(&y_minus_y2));
    ok &= rhs.truncate(12) == bivariate(gf(GfName::G, 12).unwrap());

    // Same kernel for the mixed-triple series, with an extra x^3(1 - y) term:
    // L = x + (1 - y)x^3 + (x - 1)N + x^2 y N_x + x(y - y^2) N_y.
    let n = bivariate(gf(GfName::N, pad).unwrap());
    let rhs = TruncatedSeries::monomial(PolyY::constant(rat(1, 1)), 1, pad)
        .add(&TruncatedSeries::monomial(one_minus_y, 3, pad))
        .add(&n.shift_by_x_power(1).sub(&n))
        .add(&n.derivative_x().shift_by_x_power(2).scale(&y))
        .add(&n.derivative_y().shift_by_x_power(1).scale(&y_minus_y2));
    ok &= rhs.truncate(12) == bivariate(gf(GfName::L, 12).unwrap());

    // Catalan compositions, order 20.
    let order = 20;
    let c = univariate(gf(GfName::C, order).unwrap());

    // E(x, 2) = (1/2) C(2x(1 - x)) in every coefficient past the constant.
    let poly = |coeffs: &[BigRational]| {
        let mut padded = coeffs.to_vec();
        padded.resize(order + 1, BigRational::zero());
        TruncatedSeries::from_coeffs(padded)
    };

    let e20 = bivariate(gf(GfName::E, order).unwrap()).subst_y(&rat(2, 1));
    let u = poly(&[rat(0, 1), rat(2, 1), rat(-2, 1)]);
    let rhs = compose(&c, &u).scale(&rat(1, 2));
    ok &= (1..=order).all(|k| e20.coeff(k).unwrap() == rhs.coeff(k).unwrap());

    // 1 + A4 = C(x(1 + x)).
    let a4 = univariate(gf(GfName::A4, order).unwrap());
    let v = poly(&[rat(0, 1), rat(1, 1), rat(1, 1)]);
    let rhs = compose(&c, &v);
    let lhs = a4.add(&TruncatedSeries::one(order));
    ok &= lhs == rhs;

    // sqrt round trip on 100 pseudo-random rational series (fixed seed).
    let mut state: u64 = 0x2545F4914F6CDD1D;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    for _ in 0..100 {
        let mut coeffs = vec![rat(1, 1)];
        for _ in 0..12 {
            let num = (next() % 2001) as i64 - 1000;
            let den = (next() % 40) as i64 + 1;
            coeffs.push(rat(num, den));
        }
        let s = TruncatedSeries::from_coeffs(coeffs);
        ok &= s.mul(&s).truncate(s.order()).sqrt().unwrap() == s;
    }
    report(7, ok);
}

/// Constructive bijections: marked lattice paths and marked permutations.
#[test]
fn criterion_8_bijections() {
    let mut ok = true;
    let cfg = SimConfig::default();

    // Marked-path encodings of the weak and mixed active chains: they must
    // round-trip, be injective, and cover the whole marked-path set.
    for kind in [SiteKind::UpDownDown, SiteKind::DownUp] {
        let pattern = kind.family().pattern();
        for n in 1..=6 {
            let active = enumerate_leaves(&pattern, n, LeafClass::Active, &cfg).unwrap();
            let mut image = BTreeSet::new();
            for chain in &active {
                let cp = colored_from_chain(chain, kind).unwrap();
                ok &= chain_from_colored(&cp).as_ref() == Ok(chain);
                image.insert(format!("{cp}"));
            }
            ok &= image.len() == active.len();
            ok &= BigUint::from(active.len()) == weighted_count(kind, n).unwrap();
        }
    }

    // The turn-dot correspondence between paths and 321-avoiders is bijective.
    for n in 1..=8 {
        let mut perms = BTreeSet::new();
        let mut count = 0usize;
        DyckPath::for_each(n, |p| {
            let sigma = path_to_avoider(p);
            ok &= avoider_to_path(&sigma).as_ref() == Ok(p);
            perms.insert(sigma.entries().to_vec());
            count += 1;
        });
        ok &= perms.len() == count;
    }

    // Marked-permutation map on the chains newly stopped by (<=, <), plus
    // the descent-weighted count of what it ranges over.
    let pattern = Family::Mixed123.pattern();
    let mixed = counts_table(Family::Mixed123, 7).unwrap();
    for n in 3..=7 {
        let stopped = enumerate_leaves(&pattern, n, LeafClass::NewlyInactive, &cfg).unwrap();
        for chain in &stopped {
            ok &= marked_perm_from_new_inactive(chain)
                .and_then(|up| new_inactive_from_marked_perm(&up))
                .as_ref()
                == Ok(chain);
        }
        let mut weighted = BigUint::zero();
        for d in 1..=n.saturating_sub(2) {
            weighted += BigUint::from(2u8).pow(d as u32) * ell213(n, d).unwrap();
        }
        ok &= weighted == mixed[n - 1].delta;
        ok &= BigUint::from(stopped.len()) == mixed[n - 1].delta;
    }

    // Weighted strict-kind path counts reproduce the strict active counts.
    let strict = counts_table(Family::Strict123, 10).unwrap();
    for n in 1..=10 {
        ok &= weighted_count(SiteKind::DownUpOrTripleDown, n).unwrap() == strict[n - 1].a;
    }
    report(8, ok);
}

/// Global sanity: tree width versus ordered-partition totals, and the
/// simulation versus a code-independent exhaustive oracle.
#[test]
fn criterion_9_cross_engine_properties() {
    let mut ok = true;
    let cfg = SimConfig::default();
    let conditions: [StoppingPattern; 9] = [
        Family::Tie.pattern(),
        Family::Lt.pattern(),
        Family::Le.pattern(),
        Family::Strict123.pattern(),
        Family::Weak123.pattern(),
        Family::Mixed123.pattern(),
        Family::KEqual(3).pattern(),
        Family::LtEq.pattern(),
        Family::LeEq.pattern(),
    ];
    for pattern in &conditions {
        let t = tally(pattern, 8, &cfg).unwrap();
        let levels = t.levels();
        for (i, lc) in levels.iter().enumerate() {
            let f = fubini(i + 1);
            ok &= lc.w <= f;
            let stopped_before = if i == 0 {
                BigUint::zero()
            } else {
                levels[i - 1].b.clone()
            };
            ok &= (lc.w == f) == stopped_before.is_zero();
        }
        let oracle = oracle_tally(pattern, 7).unwrap();
        ok &= oracle.levels() == &levels[..7];
    }
    report(9, ok);
}
