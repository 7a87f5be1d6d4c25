mod common;

use common::*;
use ffield::{Fq, Poly, RatFunc};
use homology::Q;
use num_traits::One;
use modsym::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(rng: &mut ChaCha8Rng, f: &Fq) -> RatFunc {
    let num = random_poly(rng, 3, f);
    let mut den = random_poly(rng, 2, f);
    if den.is_zero() {
        den = Poly::one();
    }
    RatFunc::new(num, den, f)
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
        let s: i64 = w.iter().sum();
        if s > 0 {
            return w.iter().map(|&x| Q::new(x.into(), s.into())).collect();
        }
    }
}

fn instance(seed: u64, q: u32) -> (Fq, Vec<Vec<RatFunc>>, Vec<Q>, Vec<RatFunc>, ChaCha8Rng) {
    let f = Fq::standard(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1..=3);
    let vs: Vec<Vec<RatFunc>> = (0..r).map(|_| (0..2).map(|_| rat(&mut rng, &f)).collect()).collect();
    let t = weights(&mut rng, r);
    let dual: Vec<RatFunc> = (0..2).map(|_| rat(&mut rng, &f)).collect();
    (f, vs, t, dual, rng)
}

proptest! {
    #[test]
    fn scaling_shifts_by_valuation(seed in 0u64..10_000, q in prop::sample::select(vec![2u32, 3, 4])) {
        let (f, vs, t, dual, mut rng) = instance(seed, q);
        let lam = loop {
            let x = rat(&mut rng, &f);
            if !x.is_zero() { break x; }
        };
        let scaled: Vec<RatFunc> = dual.iter().map(|x| x.mul(&lam, &f)).collect();
        let a = seminorm_exponent(&vs, &t, &dual, &f).unwrap();
        let b = seminorm_exponent(&vs, &t, &scaled, &f).unwrap();
        let shift = Q::from_integer((-lam.val()).into());
        prop_assert_eq!(b.0, a.0.map(|x| x + shift));
    }

    #[test]
    fn ultrametric_in_the_functional(seed in 0u64..10_000) {
        let (f, vs, t, dual, mut rng) = instance(seed, 3);
        let other: Vec<RatFunc> = (0..2).map(|_| rat(&mut rng, &f)).collect();
        let sum: Vec<RatFunc> = dual.iter().zip(&other).map(|(a, b)| a.add(b, &f)).collect();
        let a = seminorm_exponent(&vs, &t, &dual, &f).unwrap();
        let b = seminorm_exponent(&vs, &t, &other, &f).unwrap();
        let c = seminorm_exponent(&vs, &t, &sum, &f).unwrap();
        prop_assert!(c <= a.max(b));
    }

    #[test]
    fn less_weight_never_raises_a_term(seed in 0u64..10_000, k in 1i64..6) {
        // a single vector that f sees: exponent = -val - 1/t_0
        let (f, vs, _, dual, _) = instance(seed, 2);
        let v = vec![vs[0].clone(), vec![RatFunc::zero(), RatFunc::zero()]];
        let heavy = vec![Q::new(k.into(), 6.into()), Q::new((6 - k).into(), 6.into())];
        let light = vec![Q::new((k - 1).max(1).into(), 12.into()), Q::one() - Q::new((k - 1).max(1).into(), 12.into())];
        let a = seminorm_exponent(&v, &heavy, &dual, &f).unwrap();
        let b = seminorm_exponent(&v, &light, &dual, &f).unwrap();
        prop_assert!(b <= a);
    }
}
