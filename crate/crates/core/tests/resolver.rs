use rdsqs_core::catalog;
use rdsqs_core::construction::{boolean_sqs16, c_blocks};
use rdsqs_core::resolver::{confirm_rds, find_parallel_class, find_resolution, ResolveOutcome};
use rdsqs_core::{derived_design, derived_design_at, derived_gdd_at, verify_resolution, Label};

#[test]
fn sqs8_is_not_rds() {
    let d = catalog::sqs8().unwrap();
    for (x, r) in confirm_rds(&d, 1_000_000) {
        assert_eq!(r.outcome, ResolveOutcome::NotResolvable, "{x}");
        // not even one parallel class, by exhaustive search
        let dd = derived_design(&d, &x).unwrap();
        assert!(find_parallel_class(&dd).is_none());
    }
}

#[test]
fn boolean_sqs16_is_rds() {
    let d = catalog::sqs16().unwrap();
    let all = confirm_rds(&d, 1_000_000);
    assert_eq!(all.len(), 16);
    for (x, r) in all {
        let res = r.outcome.resolution().unwrap_or_else(|| panic!("{x}: {}", r.outcome.as_str()));
        assert_eq!(res.classes.len(), 7);
        assert!(verify_resolution(&derived_design(&d, &x).unwrap(), res).passed());
    }
}

#[test]
fn sts21_at_infinity_resolves_within_budget() {
    let d = catalog::sqs22().unwrap();
    let dd = derived_design(&d, &Label::Infinity(0)).unwrap();
    let c = find_parallel_class(&dd).unwrap();
    assert_eq!(c.blocks.len(), 7);
    let r = find_resolution(&dd, 10_000_000);
    assert!(r.nodes <= 10_000_000);
    let res = r.outcome.resolution().unwrap();
    assert_eq!(res.classes.len(), 10);
    assert!(verify_resolution(&dd, res).passed());
}

#[test]
fn derived_gdds_of_the_small_filled_gdd_resolve() {
    let g = catalog::rdgdd24().unwrap();
    for x in 0..24 {
        let dd = derived_gdd_at(&g, x).unwrap().into_design();
        let r = find_resolution(&dd, 10_000_000);
        let res = r.outcome.resolution().unwrap_or_else(|| panic!("{x}: {}", r.outcome.as_str()));
        assert_eq!(res.classes.len(), 9);
        assert!(res.classes.iter().all(|c| c.blocks.len() == 7));
        assert!(verify_resolution(&dd, res).passed());
    }
}

#[test]
fn resolver_is_deterministic() {
    let d = catalog::sqs22().unwrap();
    let dd = derived_design_at(&d, 3).unwrap();
    assert_eq!(find_resolution(&dd, 1_000_000), find_resolution(&dd, 1_000_000));
}

#[test]
fn exhaustion_is_not_a_verdict() {
    let d = catalog::sqs22().unwrap();
    let dd = derived_design_at(&d, 0).unwrap();
    assert_eq!(find_resolution(&dd, 5).outcome, ResolveOutcome::Exhausted);
}

#[test]
fn boolean_template_pieces() {
    let (d, t) = boolean_sqs16().unwrap();
    assert_eq!(d.blocks().len(), 140);
    t.check().unwrap();
    assert_eq!(t.underlined.len(), 16);
    // C on four groups: 6 pairs of groups, 12 blocks each
    let c = c_blocks(&[0, 1, 2, 3]);
    assert_eq!(c.len(), 72);
    let mut sorted = c.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 72);
}
