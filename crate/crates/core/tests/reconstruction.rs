use qzx_core::disentangler::{
    classical_limit, derive, derive_zassenhaus_for, transform_variant, verify_reconstruction, Target,
};
use qzx_core::wordalg::normal_order;
use qzx_core::{NCPoly, Variant, MAX_ORDER};

#[test]
fn every_variant_reconstructs_at_the_cap() {
    for v in [Variant::Escalating, Variant::Uniform, Variant::Qbch] {
        let f = derive(v, MAX_ORDER).unwrap();
        assert!(verify_reconstruction(&f, MAX_ORDER).unwrap().is_zero(), "{v}");
        for g in 2..=MAX_ORDER {
            assert!(normal_order(&f.exponent(g)).is_zero(), "{v} grade {g}");
        }
    }
}

#[test]
fn lower_orders_are_prefixes() {
    for v in [Variant::Escalating, Variant::Uniform, Variant::Qbch] {
        let big = derive(v, 7).unwrap();
        let small = derive(v, 4).unwrap();
        assert_eq!(big.truncated(4).factors, small.factors, "{v}");
    }
}

#[test]
fn classical_limits_reconstruct() {
    for v in [Variant::Escalating, Variant::Uniform, Variant::Qbch] {
        let f = classical_limit(&derive(v, 6).unwrap()).unwrap();
        assert!(verify_reconstruction(&f, 6).unwrap().is_zero(), "{v}");
    }
}

#[test]
fn both_limits_agree_with_each_other() {
    // At q = 1 the escalating and uniform bases coincide.
    let e = classical_limit(&derive(Variant::Escalating, 6).unwrap()).unwrap();
    let u = classical_limit(&derive(Variant::Uniform, 6).unwrap()).unwrap();
    assert_eq!(e.factors, u.factors);
}

#[test]
fn transformed_factorizations_reconstruct() {
    for v in [Variant::Escalating, Variant::Uniform] {
        let f = derive(v, 6).unwrap();
        for t in [Target::LowerE, Target::UpperE] {
            let g = transform_variant(&f, t).unwrap();
            assert!(verify_reconstruction(&g, 6).unwrap().is_zero());
        }
    }
}

#[test]
fn dropping_a_factor_shows_up_at_its_grade() {
    let f = derive(Variant::Escalating, 6).unwrap();
    for k in 2..6 {
        let r = verify_reconstruction(&f.truncated(k), 6).unwrap();
        assert_eq!(r.first_nonzero(), Some(k + 1));
        assert_eq!(*r.coeff(k + 1), f.exponent(k + 1).neg());
    }
}

#[test]
fn zero_b_gives_trivial_factors() {
    for v in [Variant::Escalating, Variant::Uniform] {
        let f = derive_zassenhaus_for(v, 6, &NCPoly::a(), &NCPoly::zero()).unwrap();
        assert!(f.factors.iter().all(|x| x.exponent.is_zero()));
        assert!(classical_limit(&f).unwrap().factors.iter().all(|x| x.exponent.is_zero()));
    }
}
