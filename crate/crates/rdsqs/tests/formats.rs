use proptest::prelude::*;

use rdsqs::data;
use rdsqs::format::{
    emit_design, emit_resolution, emit_star, parse_design, parse_resolution, parse_star, Companion, DesignFile,
    DesignKind,
};
use rdsqs_core::catalog::{self, Entry, NAMES};
use rdsqs_core::{Block, Design, Label, LabelTable};

fn file_of(name: &str) -> DesignFile {
    match catalog::by_name(name).unwrap() {
        Entry::Design(d) => DesignFile::plain(DesignKind::Sqs, d),
        Entry::Gdd(g) => DesignFile::grouped(DesignKind::Gdd, g),
    }
}

#[test]
fn catalog_designs_round_trip() {
    for name in NAMES {
        let f = file_of(name);
        let text = emit_design(&f);
        let back = parse_design(&text).unwrap();
        assert_eq!(back, f, "{name}");
        assert_eq!(emit_design(&back), text, "{name}");
    }
}

#[test]
fn sqs8_canonical_text() {
    let text = emit_design(&file_of("sqs8"));
    let head: Vec<&str> = text.lines().take(7).collect();
    assert_eq!(head, ["KIND SQS", "T 3", "K 4", "V 8", "LABELS 0 1 2 3 4 5 6 inf_0", "BLOCKS 14", "0 1 2 5"]);
    assert_eq!(text.lines().count(), 6 + 14);
}

#[test]
fn gf16_labels_carry_their_scheme() {
    let text = emit_design(&file_of("sqs16"));
    assert!(text.lines().any(|l| l == "SCHEME gf16"));
    assert!(text.contains("a^14"));
}

const SMALL: &str = "# a comment
KIND RAW
T 1
K 2
V 4
LABELS 0 1 2 3

BLOCKS 2
0 1
3 2
";

#[test]
fn parses_comments_and_blank_lines() {
    let f = parse_design(SMALL).unwrap();
    assert_eq!(f.design().blocks().len(), 2);
}

fn error_line(text: &str) -> usize {
    parse_design(text).unwrap_err().line
}

#[test]
fn oversized_block_cites_its_line() {
    let text = SMALL.replace("3 2\n", "0 1 2 3 4\n");
    let e = parse_design(&text).unwrap_err();
    assert_eq!(e.line, 10);
    assert!(e.msg.contains("size 5"), "{e}");
}

#[test]
fn bad_inputs_cite_lines() {
    assert_eq!(error_line(&SMALL.replace("LABELS 0 1 2 3", "LABELS 0 1 1 3")), 6);
    assert_eq!(error_line(&SMALL.replace("3 2\n", "2 7\n")), 10);
    assert_eq!(error_line(&SMALL.replace("BLOCKS 2", "BLOCKS 3")), 8);
    assert_eq!(error_line(&SMALL.replace("V 4", "V x")), 5);
    assert_eq!(error_line(&SMALL.replace("KIND RAW", "KIND FOO")), 2);
    assert_eq!(error_line(&(SMALL.to_string() + "0 2\n")), 11);
    assert_eq!(error_line(&SMALL.replace("3 2\n", "2 2\n")), 10);
    assert!(parse_design(&SMALL.replace("KIND RAW", "KIND SQS")).is_err());
}

#[test]
fn rdgdd24_listing_point_infinity() {
    let (g, res) = data::rdgdd24_listing().unwrap();
    assert_eq!(res.len(), 24);
    let (x, r) = &res[0];
    assert_eq!(*x, Label::Infinity(0));
    assert_eq!(r.classes.len(), 9);
    assert!(r.classes.iter().all(|c| c.blocks.len() == 7));
    assert_eq!(g.groups().len(), 8);
}

#[test]
fn rdgdd42_listing_point_zero() {
    let (_, res) = data::rdgdd42_listing().unwrap();
    assert_eq!(res.len(), 42);
    let (_, r) = res.iter().find(|(x, _)| *x == Label::Pair(0, 0)).unwrap();
    assert_eq!(r.classes.len(), 18);
    assert!(r.classes.iter().all(|c| c.blocks.len() == 13));
}

#[test]
fn sqs28_star_seeds() {
    let d = catalog::sqs28().unwrap();
    let seeds = data::sqs28_star_seeds(&d).unwrap();
    assert_eq!(seeds.len(), 4);
    for s in &seeds {
        assert_eq!(s.groups.len(), 9);
        assert_eq!(s.groups.iter().map(|g| g.classes.len()).sum::<usize>(), 27);
        assert_eq!(s.special.blocks.len(), 9);
    }
    let text = emit_star(Some("sqs28"), &seeds);
    let back = parse_star(&text, &d).unwrap();
    assert_eq!(back.points, seeds);
    assert_eq!(back.design.as_deref(), Some("sqs28"));
}

#[test]
fn resolutions_round_trip() {
    let (g, res) = data::rdgdd24_listing().unwrap();
    let text = emit_resolution(Some("rdgdd24"), &res);
    let back = parse_resolution(&text, Companion::Gdd(&g)).unwrap();
    assert_eq!(back.points, res);
    assert_eq!(emit_resolution(back.design.as_deref(), &back.points), text);
}

fn sqs22_res_text() -> (Design, String) {
    let (d, res) = catalog::sqs22_with_resolutions().unwrap();
    let text = emit_resolution(Some("sqs22"), &res[..1]);
    (d, text)
}

#[test]
fn empty_class_is_rejected() {
    let (d, text) = sqs22_res_text();
    let broken = text.replacen("CLASS\n", "CLASS\nCLASS\n", 1);
    let e = parse_resolution(&broken, Companion::Design(&d)).unwrap_err();
    assert_eq!(e.line, 3);
}

#[test]
fn ragged_class_is_rejected() {
    let (d, text) = sqs22_res_text();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(4);
    let e = parse_resolution(&(lines.join("\n") + "\n"), Companion::Design(&d)).unwrap_err();
    assert!(e.msg.contains("ragged"), "{e}");
}

#[test]
fn unknown_point_is_rejected() {
    let (d, text) = sqs22_res_text();
    let broken = text.replacen("POINT ", "POINT 9", 1);
    let e = parse_resolution(&broken, Companion::Design(&d)).unwrap_err();
    assert_eq!(e.line, 2);
    assert!(e.msg.contains("unknown point"), "{e}");
}

#[test]
fn star_arity_is_checked() {
    let d = catalog::sqs28().unwrap();
    let seeds = data::sqs28_star_seeds(&d).unwrap();
    let text = emit_star(None, &seeds[..1]);
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(3);
    assert!(parse_star(&(lines.join("\n") + "\n"), &d).is_err());
}

proptest! {
    #[test]
    fn random_designs_round_trip(v in 2u32..12, raw in prop::collection::vec(prop::collection::btree_set(0u32..12, 2..=2), 0..20)) {
        let blocks: Vec<Block> = raw
            .into_iter()
            .map(|s| s.into_iter().map(|p| p % v).collect::<std::collections::BTreeSet<_>>())
            .filter(|s| s.len() == 2)
            .map(|s| Block::new(s.into_iter().collect()).unwrap())
            .collect();
        let d = Design::new(LabelTable::plain(v), 1, vec![2], blocks).unwrap();
        let f = DesignFile::plain(DesignKind::Raw, d);
        let text = emit_design(&f);
        prop_assert_eq!(parse_design(&text).unwrap(), f);
    }
}
