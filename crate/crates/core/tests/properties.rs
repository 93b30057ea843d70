use std::sync::Arc;

use coxeter_core::predict::{dimension_set, sign_from_dim};
use coxeter_core::ring::{Elem, ExtElem, ExtRing, Mode, Ring, RingSpec};
use coxeter_core::weyl::conjecture_sign;
use coxeter_core::Cyclo;
use proptest::prelude::*;

fn specs() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just((2, 1, 3)),
        Just((3, 1, 2)),
        Just((2, 2, 2)),
        Just((5, 1, 2)),
        Just((2, 3, 1)),
        Just((3, 2, 1)),
    ]
    .prop_flat_map(|(p, k, r)| {
        prop_oneof![Just(Mode::Mixed), Just(Mode::Equal)].prop_map(move |m| RingSpec::new(p, k, r, m).unwrap())
    })
}

proptest! {
    #[test]
    fn ring_axioms(spec in specs(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ring = Ring::new(spec).unwrap();
        let n = ring.size();
        let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        if ring.is_unit(a) {
            prop_assert_eq!(ring.mul(a, ring.invert(a).unwrap()), ring.one());
        }
        prop_assert_eq!(ring.is_unit(a), ring.valuation(a) == 0);
    }

    #[test]
    fn reduction_is_a_homomorphism(spec in specs(), a in any::<u32>(), b in any::<u32>()) {
        prop_assume!(spec.r >= 2);
        let ring = Ring::new(spec).unwrap();
        let low = ring.at_level(spec.r - 1).unwrap();
        let n = ring.size();
        let (a, b) = (Elem(a % n), Elem(b % n));
        let red = |x| ring.reduce_index(x, spec.r - 1);
        prop_assert_eq!(red(ring.mul(a, b)), low.mul(red(a), red(b)));
        prop_assert_eq!(red(ring.add(a, b)), low.add(red(a), red(b)));
    }

    #[test]
    fn extension_norm_and_frobenius(spec in specs(), x in any::<u32>(), y in any::<u32>()) {
        let ext = ExtRing::new(Arc::new(Ring::new(spec).unwrap())).unwrap();
        let base = ext.base().clone();
        let n = ext.size();
        let (x, y) = (ExtElem(x % n), ExtElem(y % n));
        prop_assert_eq!(ext.norm(ext.mul(x, y)), base.mul(ext.norm(x), ext.norm(y)));
        prop_assert_eq!(ext.frobenius(ext.frobenius(x)), x);
        prop_assert_eq!(ext.frobenius(ext.mul(x, y)), ext.mul(ext.frobenius(x), ext.frobenius(y)));
        prop_assert_eq!(ext.trace(ext.add(x, y)), base.add(ext.trace(x), ext.trace(y)));
    }

    #[test]
    fn frobenius_is_q_power_mod_pi(spec in specs(), x in any::<u32>()) {
        let ext = ExtRing::new(Arc::new(Ring::new(spec).unwrap())).unwrap();
        let x = ExtElem(x % ext.size());
        let q = u64::from(ext.base().q());
        prop_assert_eq!(ext.reduce_index(ext.frobenius(x), 1), ext.reduce_index(ext.pow(x, q), 1));
    }

    #[test]
    fn cyclotomic_field_laws(n in 1u32..40, i in 0u64..80, j in 0u64..80, a in -5i64..5, b in -5i64..5) {
        let x = Cyclo::root(n, i).scale(&a);
        let y = Cyclo::root(n, j).scale(&b);
        prop_assert_eq!(&(&x * &y), &(&y * &x));
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
        prop_assert_eq!(&x.conj().conj(), &x);
        let s = &x * &x.conj();
        prop_assert_eq!(&s.conj(), &s);
    }

    #[test]
    fn dimension_signs(q in prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(7), Just(8), Just(9)], r in 1u32..6) {
        let set = dimension_set(q, r);
        prop_assert_eq!(set.len(), r as usize);
        let (p, k) = coxeter_core::weyl::prime_power(u64::from(q)).unwrap();
        for (i, &d) in set.iter().enumerate() {
            prop_assert_eq!(sign_from_dim(d, q).unwrap() as i64, d.signum());
            let c = conjecture_sign(1, 2, p, k, 1, i128::from(d)).unwrap();
            prop_assert_eq!(c.sign.map(i64::from), Some(d.signum()), "i = {}", i + 1);
            let c = conjecture_sign(1, 2, p, k, 1, -i128::from(d) * 7).unwrap();
            prop_assert!(c.sign.is_some());
        }
    }
}
