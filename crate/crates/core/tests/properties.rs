use proptest::prelude::*;

use rdsqs_core::action::{translate_design, translate_resolution};
use rdsqs_core::catalog;
use rdsqs_core::verify::verify_gdd;
use rdsqs_core::{
    derived_design, verify_resolution, verify_steiner, Block, Design, Label, ParallelClass, Resolution, Scheme,
    Shift, F16,
};

fn small_designs() -> Vec<Design> {
    ["sqs8", "sqs14", "sqs16", "sqs22"]
        .iter()
        .map(|n| catalog::by_name(n).unwrap().design().clone())
        .collect()
}

// Replaces one point of block `i`; the result is still a set of blocks.
fn mutate(d: &Design, i: usize, slot: usize, pick: usize) -> Design {
    let mut blocks = d.blocks().to_vec();
    let b = &blocks[i];
    let outside: Vec<u32> = (0..d.v() as u32).filter(|p| !b.contains(*p)).collect();
    let mut pts = b.points().to_vec();
    let at = slot % pts.len();
    pts[at] = outside[pick % outside.len()];
    blocks[i] = Block::new(pts).unwrap();
    d.with_blocks(blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_point_mutation_is_caught(which in 0usize..4, i in any::<prop::sample::Index>(), slot in 0usize..4, pick in 0usize..64) {
        let d = &small_designs()[which];
        let m = mutate(d, i.index(d.blocks().len()), slot, pick);
        let r = verify_steiner(&m);
        prop_assert!(!r.passed());
        prop_assert!(!r.violations()[0].witness.is_empty());
    }

    #[test]
    fn deleting_or_duplicating_a_block_is_caught(which in 0usize..4, i in any::<prop::sample::Index>(), dup in any::<bool>()) {
        let d = &small_designs()[which];
        let i = i.index(d.blocks().len());
        let mut blocks = d.blocks().to_vec();
        if dup {
            blocks.push(blocks[i].clone());
        } else {
            blocks.remove(i);
        }
        let r = verify_steiner(&d.with_blocks(blocks).unwrap());
        prop_assert!(!r.passed());
        prop_assert!(!r.violations()[0].witness.is_empty());
    }

    #[test]
    fn gdd_mutation_is_caught(i in 0usize..378, slot in 0usize..4, pick in 0usize..64) {
        let g = catalog::rdgdd24().unwrap();
        let m = mutate(g.design(), i, slot, pick);
        let g2 = rdsqs_core::Gdd::new(m, g.groups().to_vec()).unwrap();
        prop_assert!(!verify_gdd(&g2).passed());
    }

    #[test]
    fn translation_round_trips(s in 0u32..21) {
        let d = catalog::sqs22().unwrap();
        let there = translate_design(&d, Shift::plain(21, s).unwrap()).unwrap();
        let back = translate_design(&there, Shift::plain(21, s).unwrap().inverse()).unwrap();
        prop_assert_eq!(&back, &d);
        // the design is developed under this shift
        prop_assert_eq!(there.blocks(), d.blocks());
    }

    #[test]
    fn pair_shift_is_an_automorphism_of_sqs28(s in 0u32..7) {
        let d = catalog::sqs28().unwrap();
        let t = translate_design(&d, Shift::pair_first(7, s).unwrap()).unwrap();
        prop_assert_eq!(t.blocks(), d.blocks());
    }

    #[test]
    fn translated_resolutions_verify(s in 0u32..21) {
        let (d, res) = catalog::sqs22_with_resolutions().unwrap();
        let (x, r) = &res[0];
        let shift = Shift::plain(21, s).unwrap();
        let moved = translate_resolution(r, shift).unwrap();
        let y = shift.apply(*x).unwrap();
        prop_assert!(verify_resolution(&derived_design(&d, &y).unwrap(), &moved).passed());
    }

    #[test]
    fn swapping_blocks_across_classes_breaks_a_resolution(c1 in 0usize..10, c2 in 0usize..10, b1 in 0usize..7, b2 in 0usize..7) {
        prop_assume!(c1 != c2);
        let (d, res) = catalog::sqs22_with_resolutions().unwrap();
        let (x, r) = &res[1];
        let mut classes: Vec<Vec<Block>> = r.classes.iter().map(|c| c.blocks.clone()).collect();
        let tmp = classes[c1][b1].clone();
        classes[c1][b1] = classes[c2][b2].clone();
        classes[c2][b2] = tmp;
        let broken = Resolution::new(r.labels.clone(), classes.into_iter().map(ParallelClass::new).collect());
        prop_assert!(!verify_resolution(&derived_design(&d, x).unwrap(), &broken).passed());
    }

    #[test]
    fn field_axioms(a in 0u8..16, b in 0u8..16, c in 0u8..16) {
        let [a, b, c] = [a, b, c].map(|x| F16::from_bits(x).unwrap());
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a + a, F16::ZERO);
        if a != F16::ZERO {
            prop_assert_eq!(a * a.inverse().unwrap(), F16::ONE);
            prop_assert_eq!(F16::alpha_pow(a.log().unwrap() as u32), a);
        }
    }

    #[test]
    fn labels_round_trip(a in 0u32..1000, i in 0u32..10, kind in 0u8..3) {
        let l = match kind {
            0 => Label::Plain(a),
            1 => Label::Pair(a, i),
            _ => Label::Infinity(i),
        };
        prop_assert_eq!(Label::parse(&l.to_string(), Scheme::Standard).unwrap(), l);
    }

    #[test]
    fn blocks_are_sorted_sets(mut pts in prop::collection::vec(0u32..50, 1..8)) {
        match Block::new(pts.clone()) {
            Ok(b) => {
                pts.sort_unstable();
                prop_assert_eq!(b.points(), pts.as_slice());
            }
            Err(_) => {
                pts.sort_unstable();
                prop_assert!(pts.windows(2).any(|w| w[0] == w[1]));
            }
        }
    }
}

#[test]
fn field_labels_round_trip() {
    for e in F16::all() {
        let l = Label::Field(e);
        assert_eq!(Label::parse(&l.to_string(), Scheme::Gf16).unwrap(), l);
    }
}
