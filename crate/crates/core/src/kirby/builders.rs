use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::diagram::{BaseComponent, Coefficient, CopyLabel, DottedHandle, KirbyDiagram, TwoHandle, WordItem};
use super::KirbyError;
use crate::surgery::PageSpec;

/// A base component before it is copied into each sheet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSpec {
    pub label: String,
    pub coefficient: Option<Coefficient>,
    pub description: String,
}

/// L(2,1) with its standard contact structure: Legendrian surgery on the
/// tb = −1 unknot.
pub fn lens_l21_base() -> Vec<BaseSpec> {
    vec![BaseSpec {
        label: "U".into(),
        coefficient: Some(Coefficient::integer(-1)),
        description: "Legendrian unknot with tb=-1, giving L(2,1)".into(),
    }]
}

fn zero_handle_names(count: u32) -> Vec<String> {
    if count == 1 {
        vec!["p".into()]
    } else {
        (1..=count).map(|i| format!("p{i}")).collect()
    }
}

/// Diagram of the Stein cobordism from q copies of the base to the q-fold
/// cyclic cover branched along the boundary of the page surface.
///
/// Copy j is joined to copy j+1 by one Liouville sum; from the second copy on
/// the sum uses the pushed-off page, marked with a prime. Each page 0-handle
/// gives one dotted handle per sum, and each 1-handle with core c gives the
/// 2-handle c_j ∪ (−c_{j+1}), passing through the dotted handle of the first
/// 0-handle on the way out and on the way back.
pub fn branched_cover_diagram(page: &PageSpec, base: &[BaseSpec], q: u32) -> Result<KirbyDiagram, KirbyError> {
    if q == 0 {
        return Err(KirbyError::InvalidParameter("q must be at least 1"));
    }
    if page.half_dim() != 1 {
        return Err(KirbyError::InvalidParameter(
            "diagrams are drawn for surface pages only",
        ));
    }
    if page.handles().is_none() {
        return Err(KirbyError::MissingCoreLabels);
    }
    let cores = page.spheres();
    if cores.len() != page.handle_count(1) as usize {
        return Err(KirbyError::MissingCoreLabels);
    }
    let zeros = zero_handle_names(page.handle_count(0));

    let mut components = Vec::new();
    for j in 1..=q {
        for b in base {
            components.push(BaseComponent {
                label: CopyLabel::new(&b.label, j, false),
                coefficient: b.coefficient,
                description: b.description.clone(),
            });
        }
    }

    let mut dotted = Vec::new();
    let mut two = Vec::new();
    for j in 1..q {
        let primed = j >= 2;
        let first_dotted = dotted.len() as u32 + 1;
        for p in &zeros {
            dotted.push(DottedHandle {
                id: dotted.len() as u32 + 1,
                anchors: (CopyLabel::new(p, j, primed), CopyLabel::new(p, j + 1, false)),
            });
        }
        for c in cores {
            two.push(TwoHandle {
                id: two.len() as u32 + 1,
                word: vec![
                    WordItem::Curve {
                        curve: CopyLabel::new(c, j, primed),
                        positive: true,
                    },
                    WordItem::Through(first_dotted),
                    WordItem::Curve {
                        curve: CopyLabel::new(c, j + 1, false),
                        positive: false,
                    },
                    WordItem::Through(first_dotted),
                ],
                coefficient: Coefficient::integer(-1),
            });
        }
    }
    let notes = vec![format!(
        "{q}-fold cyclic cover branched along the boundary of {}",
        page.name()
    )];
    KirbyDiagram::new(components, dotted, two, notes)
}

/// Diagram of the cobordism from S³ ⊔ M_{1,−k} to the result of contact
/// (1/k)-surgery on the standard Legendrian unknot, built from the D*S¹ page.
/// M_{1,−k} is drawn as 1/(1+k)-surgery on a second standard unknot. For
/// k = −1 the cobordism is a single Weinstein 2-handle.
pub fn surgery_cobordism_diagram(k: i64) -> Result<KirbyDiagram, KirbyError> {
    if k == 0 {
        return Err(KirbyError::InvalidParameter("k must be nonzero"));
    }
    if k == -1 {
        let h = TwoHandle {
            id: 1,
            word: vec![WordItem::Curve {
                curve: CopyLabel::new("L", 1, false),
                positive: true,
            }],
            coefficient: Coefficient::integer(-1),
        };
        let notes = vec!["Legendrian surgery on the standard unknot: one Weinstein 2-handle".to_string()];
        return KirbyDiagram::new(Vec::new(), Vec::new(), vec![h], notes);
    }
    let site = BaseComponent {
        label: CopyLabel::new("L", 1, false),
        coefficient: Some(Coefficient::reciprocal(k)?),
        description: "standard Legendrian unknot in S^3, the surgery site".into(),
    };
    let summand = BaseComponent {
        label: CopyLabel::new("L", 2, false),
        coefficient: Some(Coefficient::reciprocal(1 + k)?),
        description: format!("standard Legendrian unknot in S^3, presenting M_(1,{})", -k),
    };
    let d = DottedHandle {
        id: 1,
        anchors: (CopyLabel::new("p", 1, false), CopyLabel::new("p", 2, false)),
    };
    let h = TwoHandle {
        id: 1,
        word: vec![
            WordItem::Curve {
                curve: CopyLabel::new("L", 1, false),
                positive: true,
            },
            WordItem::Through(1),
            WordItem::Curve {
                curve: CopyLabel::new("L", 2, false),
                positive: false,
            },
            WordItem::Through(1),
        ],
        coefficient: Coefficient::integer(-1),
    };
    let mut notes = vec![format!("contact 1/{k} surgery on the standard Legendrian unknot")];
    if k == 1 {
        notes.push("convex end equals +1 surgery on a right-handed Legendrian trefoil".into());
    }
    KirbyDiagram::new(vec![site, summand], vec![d], vec![h], notes)
}
