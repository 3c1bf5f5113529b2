use oscsum_core::arith::rat;
use oscsum_core::exppair::*;
use oscsum_core::{Error, Rational};
use proptest::prelude::*;

fn pq(p: &ExponentPair) -> (Rational, Rational) {
    (p.p.clone(), p.q.clone())
}

#[test]
fn a_process_images() {
    assert_eq!(pq(&a_process(&Seed::Trivial.pair())), (rat(0, 1), rat(1, 1)));
    assert_eq!(pq(&a_process(&Seed::Bourgain.pair())), (rat(13, 194), rat(76, 97)));
    let half = ExponentPair::new(rat(1, 2), rat(1, 2), Seed::Trivial).unwrap();
    assert_eq!(pq(&a_process(&half)), (rat(1, 6), rat(2, 3)));
}

#[test]
fn b_process_images() {
    assert_eq!(pq(&b_process(&Seed::Trivial.pair())), (rat(1, 2), rat(1, 2)));
    // 55/84 - 1/2 = 13/84 and 13/84 + 1/2 = 55/84
    let b = Seed::Bourgain.pair();
    assert_eq!(pq(&b_process(&b)), pq(&b));
    assert!(ExponentPair::new(rat(3, 5), rat(1, 2), Seed::Trivial).is_err());
}

#[test]
fn closure_levels() {
    let d0 = generate(0, &[Seed::Trivial, Seed::Bourgain]).unwrap();
    assert_eq!(d0.len(), 2);
    let d1 = generate(1, &[Seed::Trivial]).unwrap();
    let values: Vec<_> = d1.iter().map(pq).collect();
    assert_eq!(values, vec![(rat(0, 1), rat(1, 1)), (rat(1, 2), rat(1, 2))]);
    let d2 = generate(2, &[Seed::Trivial]).unwrap();
    let sixth = d2.iter().find(|p| pq(p) == (rat(1, 6), rat(2, 3))).unwrap();
    assert_eq!(sixth.derivation(), "A∘B(trivial)");
    assert!(generate(13, &[Seed::Trivial]).is_err());
}

#[test]
fn closure_is_admissible_and_b_is_an_involution() {
    for p in generate(8, &[Seed::Trivial, Seed::Bourgain]).unwrap() {
        assert!(p.is_admissible(), "{p}");
        assert_eq!(pq(&b_process(&b_process(&p))), pq(&p));
    }
}

#[test]
fn bourgain_image_minimizes_the_degree_five_objective() {
    let obj = Objective::degree_five();
    let target = (rat(13, 194), rat(76, 97));
    let value = obj.eval(&target.0, &target.1).unwrap();
    assert_eq!(value, rat(709, 1068));
    let best6 = optimize(&obj, &generate(6, &[Seed::Trivial, Seed::Bourgain]).unwrap()).unwrap();
    assert_eq!(pq(&best6.pair), target);
    assert_eq!(best6.pair.derivation(), "A(bourgain)");
    assert_eq!(best6.value, value);
    let best8 = optimize(&obj, &generate(8, &[Seed::Trivial, Seed::Bourgain]).unwrap()).unwrap();
    assert_eq!(best8.value, best6.value);
    assert_eq!(pq(&best8.pair), target);
}

#[test]
fn bourgain_pair_beats_the_trivial_closure() {
    let obj = Objective::degree_five();
    let value = obj.eval(&rat(13, 194), &rat(76, 97)).unwrap();
    for p in generate(8, &[Seed::Trivial]).unwrap() {
        let image = a_process(&p);
        assert!(obj.eval(&image.p, &image.q).unwrap() > value, "{image}");
    }
}

#[test]
fn optimizer_tie_break_and_trivial_objectives() {
    let pairs = generate(3, &[Seed::Trivial, Seed::Bourgain]).unwrap();
    let constant = optimize(&Objective::parse("7").unwrap(), &pairs).unwrap();
    let first = pairs.iter().map(pq).min().unwrap();
    assert_eq!(pq(&constant.pair), first);
    let by_p = optimize(&Objective::parse("p").unwrap(), &pairs).unwrap();
    assert_eq!(pq(&by_p.pair), (rat(0, 1), rat(1, 1)));
    let vanishing = Objective::parse("1/1-q").unwrap();
    assert!(matches!(optimize(&vanishing, &pairs), Err(Error::DenominatorVanishes { .. })));
}

#[test]
fn balancing_exponent() {
    let delta = balance_delta();
    assert_eq!(delta, rat(1, 356));
    let left = rat(109, 69) * &delta + rat(91, 138);
    let right = rat(2, 3) - &delta;
    assert_eq!(left, right);
    assert_eq!(left, rat(2, 3) - rat(1, 356));
    assert_eq!(solve_balance(&rat(109, 69), &rat(91, 138), &rat(2, 3)), rat(1, 138) / rat(178, 69));
}

proptest! {
    #[test]
    fn processes_preserve_the_box(pn in 0i64..=50, qn in 50i64..=100) {
        let p = ExponentPair::new(rat(pn, 100), rat(qn, 100), Seed::Trivial).unwrap();
        prop_assert!(a_process(&p).is_admissible());
        prop_assert!(b_process(&p).is_admissible());
        prop_assert_eq!(pq(&b_process(&b_process(&p))), pq(&p));
    }
}
