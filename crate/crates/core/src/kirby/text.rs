//! Line-oriented diagram text. See `docs/kirby-format.md` in the repository
//! for the grammar.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::diagram::{parse_id, word_text, BaseComponent, DottedHandle, KirbyDiagram, TwoHandle, WordItem};
use super::KirbyError;

/// Canonical text: BASE, DOTTED and 2HANDLES sections in that order, then
/// NOTES when there are any. Every line ends in `\n`.
pub fn serialize_diagram(d: &KirbyDiagram) -> String {
    let mut s = String::new();
    s.push_str("BASE\n");
    for b in d.base() {
        let c = b.coefficient.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "{}\t{}\t{}", b.label, c, b.description);
    }
    s.push_str("DOTTED\n");
    for h in d.dotted() {
        let _ = writeln!(s, "D{}\t{}\t{}", h.id, h.anchors.0, h.anchors.1);
    }
    s.push_str("2HANDLES\n");
    for h in d.two_handles() {
        let _ = writeln!(s, "H{}\t{}\t{}", h.id, h.coefficient, word_text(&h.word));
    }
    if !d.notes().is_empty() {
        s.push_str("NOTES\n");
        for n in d.notes() {
            s.push_str(n);
            s.push('\n');
        }
    }
    s
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Section {
    Start,
    Base,
    Dotted,
    Two,
    Notes,
}

/// Inverse of [`serialize_diagram`]. Only canonical text is accepted.
pub fn parse_diagram(text: &str) -> Result<KirbyDiagram, KirbyError> {
    let err = |line: usize, msg: &str| KirbyError::Parse {
        line,
        msg: msg.to_string(),
    };
    if !text.ends_with('\n') {
        return Err(err(text.lines().count().max(1), "missing final newline"));
    }
    let mut section = Section::Start;
    let mut base = Vec::new();
    let mut dotted = Vec::new();
    let mut two = Vec::new();
    let mut notes = Vec::new();
    for (i, line) in text[..text.len() - 1].split('\n').enumerate() {
        let ln = i + 1;
        let header = match line {
            "BASE" => Some(Section::Base),
            "DOTTED" => Some(Section::Dotted),
            "2HANDLES" => Some(Section::Two),
            "NOTES" => Some(Section::Notes),
            _ => None,
        };
        if let Some(h) = header {
            if section == Section::Notes {
                notes.push(line.to_string());
                continue;
            }
            let expected = match section {
                Section::Start => Section::Base,
                Section::Base => Section::Dotted,
                Section::Dotted => Section::Two,
                _ => Section::Notes,
            };
            if h != expected {
                return Err(err(ln, "section out of order"));
            }
            section = h;
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let wrap = |e: KirbyError| KirbyError::Parse {
            line: ln,
            msg: e.to_string(),
        };
        match section {
            Section::Start => return Err(err(ln, "expected BASE")),
            Section::Base => {
                if fields.len() != 3 {
                    return Err(err(ln, "base line needs 3 fields"));
                }
                let coefficient = match fields[1] {
                    "-" => None,
                    c => Some(c.parse().map_err(wrap)?),
                };
                base.push(BaseComponent {
                    label: fields[0].parse().map_err(wrap)?,
                    coefficient,
                    description: fields[2].to_string(),
                });
            }
            Section::Dotted => {
                if fields.len() != 3 {
                    return Err(err(ln, "dotted line needs 3 fields"));
                }
                let id = fields[0]
                    .strip_prefix('D')
                    .and_then(parse_id)
                    .ok_or_else(|| err(ln, "bad dotted id"))?;
                dotted.push(DottedHandle {
                    id,
                    anchors: (fields[1].parse().map_err(wrap)?, fields[2].parse().map_err(wrap)?),
                });
            }
            Section::Two => {
                if fields.len() != 3 {
                    return Err(err(ln, "2-handle line needs 3 fields"));
                }
                let id = fields[0]
                    .strip_prefix('H')
                    .and_then(parse_id)
                    .ok_or_else(|| err(ln, "bad 2-handle id"))?;
                let word = fields[2]
                    .split(' ')
                    .map(|t| t.parse::<WordItem>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(wrap)?;
                two.push(TwoHandle {
                    id,
                    word,
                    coefficient: fields[1].parse().map_err(wrap)?,
                });
            }
            Section::Notes => notes.push(line.to_string()),
        }
    }
    if section < Section::Two {
        return Err(err(text.lines().count(), "missing sections"));
    }
    if section == Section::Notes && notes.is_empty() {
        return Err(err(text.lines().count(), "empty NOTES section"));
    }
    let d = KirbyDiagram::new(base, dotted, two, notes).map_err(|e| err(0, &e.to_string()))?;
    if serialize_diagram(&d) != text {
        return Err(err(0, "text is not in canonical order"));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kirby::{branched_cover_diagram, lens_l21_base, surgery_cobordism_diagram};
    use crate::surgery::PageSpec;

    #[test]
    fn round_trips() {
        for q in 1..5 {
            let d = branched_cover_diagram(&PageSpec::genus_one(), &lens_l21_base(), q).unwrap();
            let t = serialize_diagram(&d);
            assert_eq!(parse_diagram(&t).unwrap(), d);
        }
        for k in [-3, -1, 1, 2, 5] {
            let d = surgery_cobordism_diagram(k).unwrap();
            assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d);
        }
    }

    #[test]
    fn double_cover_text() {
        let d = branched_cover_diagram(&PageSpec::genus_one(), &lens_l21_base(), 2).unwrap();
        let t = serialize_diagram(&d);
        let expected = "BASE\n\
            U_1\t-1\tLegendrian unknot with tb=-1, giving L(2,1)\n\
            U_2\t-1\tLegendrian unknot with tb=-1, giving L(2,1)\n\
            DOTTED\n\
            D1\tp_1\tp_2\n\
            2HANDLES\n\
            H1\t-1\t+a_1 >D1 -a_2 >D1\n\
            H2\t-1\t+b_1 >D1 -b_2 >D1\n\
            NOTES\n\
            2-fold cyclic cover branched along the boundary of Sigma_1_1\n";
        assert_eq!(t, expected);
    }

    #[test]
    fn rejects_bad_text() {
        let good = serialize_diagram(&surgery_cobordism_diagram(2).unwrap());
        assert!(parse_diagram(good.trim_end()).is_err());
        assert!(matches!(
            parse_diagram(&good.replace(">D1", ">D2")),
            Err(KirbyError::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_diagram(&good.replace("DOTTED\n", "")),
            Err(KirbyError::Parse { .. })
        ));
        assert!(matches!(
            parse_diagram("BASE\nDOTTED\n2HANDLES\nX\n"),
            Err(KirbyError::Parse { line: 4, .. })
        ));
        assert!(parse_diagram("BASE\nDOTTED\n2HANDLES\n").is_ok());
        assert!(parse_diagram("BASE\nDOTTED\n2HANDLES\nNOTES\n").is_err());
    }
}
