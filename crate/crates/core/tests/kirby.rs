use liouville_core::kirby::{
    branched_cover_diagram, lens_l21_base, parse_diagram, serialize_diagram, surgery_cobordism_diagram, KirbyDiagram,
};
use liouville_core::surgery::PageSpec;

fn cover(q: u32) -> KirbyDiagram {
    branched_cover_diagram(&PageSpec::genus_one(), &lens_l21_base(), q).unwrap()
}

#[test]
fn double_cover_diagram() {
    let d = cover(2);
    assert_eq!(d.dotted().len(), 1);
    assert_eq!(d.two_handles().len(), 2);
    assert_eq!(d.word_strings(), ["+a_1 >D1 -a_2 >D1", "+b_1 >D1 -b_2 >D1"]);
    assert!(d.two_handles().iter().all(|h| h.traversals(1) == 2));
    assert_eq!(d.base().len(), 2);
}

#[test]
fn triple_cover_diagram() {
    let d = cover(3);
    assert_eq!(d.dotted().len(), 2);
    assert_eq!(d.two_handles().len(), 4);
    assert_eq!(d.word_strings()[2], "+a_2' >D2 -a_3 >D2");
}

#[test]
fn handle_counts_grow_linearly() {
    for q in 1..=8 {
        let d = cover(q);
        assert_eq!(d.dotted().len() as u32, q - 1);
        assert_eq!(d.two_handles().len() as u32, 2 * (q - 1));
    }
}

#[test]
fn text_round_trips() {
    for d in [
        cover(2),
        cover(3),
        cover(5),
        surgery_cobordism_diagram(1).unwrap(),
        surgery_cobordism_diagram(-1).unwrap(),
    ] {
        let t = serialize_diagram(&d);
        let back = parse_diagram(&t).unwrap();
        assert_eq!(back, d);
        assert_eq!(serialize_diagram(&back), t);
    }
    assert_eq!(serialize_diagram(&cover(3)), serialize_diagram(&cover(3)));
}

#[test]
fn double_cover_text() {
    let want = "BASE\n\
U_1\t-1\tLegendrian unknot with tb=-1, giving L(2,1)\n\
U_2\t-1\tLegendrian unknot with tb=-1, giving L(2,1)\n\
DOTTED\n\
D1\tp_1\tp_2\n\
2HANDLES\n\
H1\t-1\t+a_1 >D1 -a_2 >D1\n\
H2\t-1\t+b_1 >D1 -b_2 >D1\n\
NOTES\n\
2-fold cyclic cover branched along the boundary of Sigma_1_1\n";
    assert_eq!(serialize_diagram(&cover(2)), want);
}

#[test]
fn malformed_text_rejected() {
    let good = serialize_diagram(&cover(2));
    assert!(parse_diagram(good.trim_end()).is_err());
    assert!(parse_diagram(&good.replace(">D1", ">D7")).is_err());
    assert!(parse_diagram(&good.replace("DOTTED\n", "")).is_err());
    assert!(parse_diagram(&good.replace("H2\t", "H1\t")).is_err());
}

#[test]
fn surgery_diagrams() {
    let d = surgery_cobordism_diagram(1).unwrap();
    assert_eq!((d.dotted().len(), d.two_handles().len()), (1, 1));
    assert_eq!(d.base()[0].coefficient.unwrap().to_string(), "1");
    assert_eq!(d.base()[1].coefficient.unwrap().to_string(), "1/2");
    let w = surgery_cobordism_diagram(-1).unwrap();
    assert_eq!((w.dotted().len(), w.two_handles().len()), (0, 1));
    assert!(surgery_cobordism_diagram(0).is_err());
}
