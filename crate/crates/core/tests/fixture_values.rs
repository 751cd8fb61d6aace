use num_bigint::BigInt;
use prym_core::divisor::{jacobian_order, linearly_equivalent};
use prym_core::fixtures;
use prym_core::prym_group::{
    norm_kernel_structure, prym_order_by_cauchy_binet, prym_order_report, prym_structure, sheet_difference,
};
use prym_core::Divisor;

#[test]
fn double_edge_chain_groups() {
    let c = fixtures::double_edge_chain();
    assert_eq!(jacobian_order(c.base()).unwrap(), BigInt::from(4));
    assert_eq!(jacobian_order(c.total()).unwrap(), BigInt::from(64));
    let report = prym_order_report(&c).unwrap();
    assert!(report.agreement);
    assert_eq!(report.ratio, BigInt::from(8));
    assert_eq!(prym_order_by_cauchy_binet(&c).unwrap(), BigInt::from(8));
    assert_eq!(norm_kernel_structure(&c).to_string(), "Z/2 ⊕ Z/8");
    assert_eq!(prym_structure(&c).unwrap().to_string(), "Z/8");

    let d: Vec<Divisor> = (0..4).map(|v| sheet_difference(&c, v)).collect();
    let combo = |coeffs: [i64; 4]| {
        let mut acc = Divisor::zero(8);
        for (k, x) in coeffs.iter().enumerate() {
            for _ in 0..x.abs() {
                acc = if *x > 0 { &acc + &d[k] } else { &acc - &d[k] };
            }
        }
        acc
    };
    let zero = Divisor::zero(8);
    let total = c.total();
    assert!(linearly_equivalent(total, &combo([2, 0, 0, 0]), &zero).unwrap());
    assert!(!linearly_equivalent(total, &d[0], &zero).unwrap());
    assert!(linearly_equivalent(total, &combo([0, 8, 0, 0]), &zero).unwrap());
    assert!(!linearly_equivalent(total, &combo([0, 4, 0, 0]), &zero).unwrap());
    assert!(linearly_equivalent(total, &d[3], &combo([1, 4, 0, 0])).unwrap());
    assert!(linearly_equivalent(total, &d[2], &combo([0, 3, 0, 0])).unwrap());
}

#[test]
fn dumbbell_orders() {
    let both = fixtures::unit_dumbbell(true);
    let r = prym_order_report(&both).unwrap();
    assert!(r.agreement);
    assert_eq!(r.ratio, BigInt::from(6));
    let one = fixtures::unit_dumbbell(false);
    let r = prym_order_report(&one).unwrap();
    assert!(r.agreement);
    assert_eq!(r.ratio, BigInt::from(1));
}

#[test]
fn looped_path_order() {
    let c = fixtures::looped_path().with_unit_lengths();
    let r = prym_order_report(&c).unwrap();
    assert!(r.agreement, "{r:?}");
    assert_eq!(r.ratio, BigInt::from(49));
}
