use liouville::{parse_scenario, ErrorCode};
use proptest::prelude::*;

const L21: &str = include_str!("../scenarios/branched_cover_l21.scn");

fn in_bounds(text: &str, line: usize, col: usize) -> bool {
    let lines: Vec<&str> = text.split('\n').collect();
    line >= 1 && line <= lines.len() && col >= 1 && col <= lines[line - 1].chars().count() + 1
}

#[test]
fn bundled_scenarios_parse() {
    assert_eq!(parse_scenario(L21).unwrap().statements.len(), 13);
    parse_scenario(include_str!("../scenarios/surgery_calculus.scn")).unwrap();
}

#[test]
fn error_codes() {
    let cases = [
        ("page P dim=2\npage P dim=2\n", ErrorCode::NameConflict, 2, 6),
        ("verify equal A B\n", ErrorCode::UndeclaredName, 1, 14),
        ("manifold S = mnk 1 1 2\n", ErrorCode::ArityMismatch, 1, 22),
        ("page P dim=2 x\n", ErrorCode::Syntax, 1, 14),
        ("page P dim=2 stein=maybe\n", ErrorCode::Syntax, 1, 20),
    ];
    for (text, code, line, col) in cases {
        let e = parse_scenario(text).unwrap_err();
        assert_eq!((e.code, e.pos.line, e.pos.col), (code, line, col), "{text:?}: {e}");
    }
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(s in "[ -~\n]{0,200}") {
        if let Err(e) = parse_scenario(&s) {
            prop_assert!(in_bounds(&s, e.pos.line, e.pos.col), "{:?} -> {}", s, e);
        }
    }

    #[test]
    fn truncated_scenarios(cut in 0usize..L21.len()) {
        let s = &L21[..cut];
        if let Err(e) = parse_scenario(s) {
            prop_assert!(in_bounds(s, e.pos.line, e.pos.col), "{}", e);
        }
    }

    #[test]
    fn single_byte_edits(at in 0usize..L21.len(), b in prop::sample::select(b"=()[],:^\" x9-".to_vec())) {
        let mut bytes = L21.as_bytes().to_vec();
        bytes[at] = b;
        let s = String::from_utf8(bytes).unwrap();
        if let Err(e) = parse_scenario(&s) {
            prop_assert!(in_bounds(&s, e.pos.line, e.pos.col), "{}", e);
        }
    }
}
