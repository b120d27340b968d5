use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::descriptor::{
    catalog_M_nk, catalog_facts, check_labels, open_book_descriptor, Glued, ManifoldDescriptor, OpenBook, Presentation,
    Ribbon, SphereRef, Step,
};
use super::flags::{fillability_propagate, FillabilityFlags, Tri};
use super::page::PageSpec;
use super::word::MonodromyWord;
use super::SurgeryError;

/// Liouville connect sum of two open books with the same page: the result is
/// the open book with the composed monodromy.
pub fn liouville_sum_openbooks(ob1: &OpenBook, ob2: &OpenBook) -> Result<ManifoldDescriptor, SurgeryError> {
    liouville_sum(&open_book_descriptor(ob1.clone())?, &open_book_descriptor(ob2.clone())?)
}

/// As [`liouville_sum_openbooks`], but carrying over whatever the inputs'
/// flags and histories already record.
pub fn liouville_sum(d1: &ManifoldDescriptor, d2: &ManifoldDescriptor) -> Result<ManifoldDescriptor, SurgeryError> {
    let (o1, o2) = match (d1.open_book(), d2.open_book()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SurgeryError::NotOpenBook),
    };
    if o1.page() != o2.page() {
        return Err(SurgeryError::PageMismatch {
            left: o1.page().name().to_string(),
            right: o2.page().name().to_string(),
        });
    }
    let page = o1.page();
    let word = o1.word().compose(o2.word());
    let mut out = open_book_descriptor(OpenBook::new(page.clone(), word)?)?;
    let carried = fillability_propagate(&d1.flags, &d2.flags, page.stein(), out.dim, page.h2_vanishes());
    out.flags = out.flags.merge(&carried)?;
    out.history = d1.history.iter().chain(d2.history.iter()).cloned().collect();
    Ok(out.with_step(Step::new(
        "liouville-sum",
        format!("({}, {}) + ({}, {})", page.name(), o1.word(), page.name(), o2.word()),
    )))
}

/// Contact (1/k)-surgery along the labeled sphere: the Liouville connect sum
/// of `m` with M_{n,−k} along that sphere and the zero section of the page.
///
/// On an open book whose page carries the sphere this is the word with τ^{−k}
/// appended. A surgery on the push-off left by the previous surgery, with the
/// same parameter, folds into that surgery's summand. Off the page the
/// parameter is kept verbatim and different parameters are never identified;
/// on the page it plays no role.
pub fn contact_surgery(
    m: &ManifoldDescriptor,
    sphere: &str,
    k: i64,
    parameter: &str,
) -> Result<ManifoldDescriptor, SurgeryError> {
    if k == 0 {
        return Err(SurgeryError::ZeroCoefficient);
    }
    let sref = m
        .sphere(sphere)
        .ok_or_else(|| SurgeryError::UnknownSphere(sphere.to_string()))?
        .clone();
    let n = m.n();
    let step = Step::new("contact-surgery", format!("1/{k} along {sphere} parameter {parameter}"));
    let facts = standard_sphere_facts(&m.flags, sref.standard, k, n, m.dim);

    if let Some(ob) = m.open_book() {
        let target = sref.pushoff_of.as_deref().unwrap_or(sphere);
        if ob.page().has_sphere(target) {
            let word = ob.word().compose(&MonodromyWord::single(target, -k));
            let mut out = open_book_descriptor(OpenBook::new(ob.page().clone(), word)?)?;
            out.flags = out.flags.merge(&facts)?;
            add_pushoff(&mut out.spheres, target);
            out.history = m.history.clone();
            return Ok(out.with_step(step));
        }
    }

    if let (
        Some(of),
        Presentation::Glued(Glued::LiouvilleSum {
            base,
            summand,
            along,
            parameter: p0,
        }),
    ) = (&sref.pushoff_of, &m.presentation)
    {
        if of == along && p0 == parameter {
            let j = summand
                .open_book()
                .and_then(|o| o.word().single_exponent("L"))
                .ok_or(SurgeryError::NotOpenBook)?;
            // summand is M_{n,j} from a 1/(−j) surgery; the total is 1/(−j + k)
            let total = k - j;
            let mut out = if total == 0 {
                (**base).clone()
            } else {
                let along_ref = base
                    .sphere(along)
                    .ok_or_else(|| SurgeryError::UnknownSphere(along.clone()))?
                    .clone();
                sum_along(base, &along_ref, total, parameter)?
            };
            out.flags = out.flags.merge(&facts)?;
            out.history = m.history.clone();
            return Ok(out.with_step(step));
        }
    }

    let mut out = sum_along(m, &sref, k, parameter)?;
    out.flags = out.flags.merge(&facts)?;
    out.history = m.history.clone();
    Ok(out.with_step(step))
}

fn sum_along(
    m: &ManifoldDescriptor,
    sref: &SphereRef,
    k: i64,
    parameter: &str,
) -> Result<ManifoldDescriptor, SurgeryError> {
    let n = m.n();
    let summand = catalog_M_nk(n, -k)?;
    let page = PageSpec::cotangent_disk(n)?;
    let flags = fillability_propagate(&m.flags, &summand.flags, true, m.dim, page.h2_vanishes());
    let mut spheres: Vec<SphereRef> = m.spheres.iter().filter(|s| s.label != sref.label).cloned().collect();
    add_pushoff(&mut spheres, &sref.label);
    Ok(ManifoldDescriptor {
        dim: m.dim,
        presentation: Presentation::Glued(Glued::LiouvilleSum {
            base: Box::new(m.clone()),
            summand: Box::new(summand),
            along: sref.label.clone(),
            parameter: parameter.to_string(),
        }),
        identity: None,
        flags,
        spheres,
        ribbons: m.ribbons.clone(),
        history: Vec::new(),
    })
}

/// Registers `label'` (with more primes if taken) as a push-off of `label`.
fn add_pushoff(spheres: &mut Vec<SphereRef>, label: &str) {
    if spheres.iter().any(|s| s.pushoff_of.as_deref() == Some(label)) {
        return;
    }
    let mut name = format!("{label}'");
    while spheres.iter().any(|s| s.label == name) {
        name.push('\'');
    }
    spheres.push(SphereRef {
        label: name,
        standard: false,
        pushoff_of: Some(label.to_string()),
    });
}

/// Surgery on a standard Legendrian sphere: k = 1 is a connect sum with
/// ∂(D² × D*S^n), and k = 2 gives an algebraically overtwisted manifold.
fn standard_sphere_facts(f: &FillabilityFlags, standard: bool, k: i64, n: u32, dim: u32) -> FillabilityFlags {
    if !standard {
        return FillabilityFlags::unknown();
    }
    match k {
        2 => FillabilityFlags::not_fillable(),
        1 => fillability_propagate(f, &catalog_facts(n, 0).1, true, dim, Tri::True),
        _ => FillabilityFlags::unknown(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    /// Same as a single (1/k)-surgery.
    Single(i64),
    /// The coefficients cancel.
    NoSurgery,
}

/// Successive surgeries with coefficients 1/k₁, 1/k₂, … on iterated push-offs
/// amount to a single 1/(k₁ + k₂ + …) surgery.
pub fn surgery_compose(ks: &[i64]) -> Result<Composition, SurgeryError> {
    if ks.is_empty() {
        return Err(SurgeryError::EmptyComposition);
    }
    if ks.contains(&0) {
        return Err(SurgeryError::ZeroCoefficient);
    }
    let total = ks
        .iter()
        .try_fold(0i64, |a, &k| a.checked_add(k))
        .ok_or(SurgeryError::Overflow)?;
    Ok(if total == 0 {
        Composition::NoSurgery
    } else {
        Composition::Single(total)
    })
}

/// Where a branched cover is branched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypersurface {
    /// The page of the manifold's open book; branch locus is the binding.
    Page,
    /// A listed ribbon of the descriptor.
    Ribbon(String),
}

/// q-fold cyclic cover branched along the boundary of a Liouville
/// hypersurface, assembled from q copies of `m` by q − 1 Liouville sums.
pub fn branched_cover(m: &ManifoldDescriptor, hyp: &Hypersurface, q: u32) -> Result<ManifoldDescriptor, SurgeryError> {
    if q == 0 {
        return Err(SurgeryError::InvalidCoverDegree);
    }
    if q == 1 {
        return Ok(m.clone());
    }
    match hyp {
        Hypersurface::Page => {
            let ob = m
                .open_book()
                .ok_or_else(|| SurgeryError::HypersurfaceNotFound("page".into()))?;
            let mut acc = m.clone();
            for _ in 1..q {
                acc = liouville_sum(&acc, m)?;
            }
            acc.flags = acc.flags.merge(&cover_flags(&m.flags, ob.page().stein()))?;
            acc.history = m.history.clone();
            Ok(acc.with_step(Step::new(
                "branched-cover",
                format!("q={q} over the binding of the page"),
            )))
        }
        Hypersurface::Ribbon(label) => {
            let r = m
                .ribbons
                .iter()
                .find(|r| &r.label == label)
                .ok_or_else(|| SurgeryError::HypersurfaceNotFound(label.clone()))?
                .clone();
            let mut flags = cover_flags(&m.flags, r.stein);
            // covers over the same branch locus compose multiplicatively
            let (base, total) = match &m.presentation {
                Presentation::Glued(Glued::BranchedCover { base, ribbon, q: q0 }) if ribbon == label => {
                    flags = flags.merge(&cover_flags(&base.flags, r.stein))?;
                    ((**base).clone(), q0.checked_mul(q).ok_or(SurgeryError::Overflow)?)
                }
                _ => (m.clone(), q),
            };
            let out = ManifoldDescriptor {
                dim: m.dim,
                presentation: Presentation::Glued(Glued::BranchedCover {
                    base: Box::new(base),
                    ribbon: label.clone(),
                    q: total,
                }),
                identity: None,
                flags,
                spheres: Vec::new(),
                ribbons: alloc::vec![r],
                history: m.history.clone(),
            };
            Ok(out.with_step(Step::new(
                "branched-cover",
                format!("q={q} over the boundary of {label}"),
            )))
        }
    }
}

/// The cover sits atop an exact cobordism from q copies of the base (Stein if
/// the hypersurface is), and weak fillability lifts unconditionally.
fn cover_flags(f: &FillabilityFlags, hyp_stein: bool) -> FillabilityFlags {
    FillabilityFlags::new(
        f.weakly().both(f.weakly()),
        f.symplectically().both(f.symplectically()),
        f.exactly().both(f.exactly()),
        if hyp_stein {
            f.stein().both(f.stein())
        } else {
            Tri::Unknown
        },
    )
    .expect("no false entries")
}

/// M_(Σ,Φ,Ψ), with flags inherited from the open book (Σ, Φ∘Ψ) as computed here.
pub fn fibered_manifold(
    page: &PageSpec,
    phi: &MonodromyWord,
    psi: &MonodromyWord,
) -> Result<ManifoldDescriptor, SurgeryError> {
    check_labels(page, phi)?;
    check_labels(page, psi)?;
    let base = open_book_descriptor(OpenBook::new(page.clone(), phi.compose(psi))?)?;
    fibered_from(&base, phi, psi, Tri::Unknown)
}

/// M_(Σ,Φ,Ψ) obtained by one Liouville sum on `base` = (Σ, Φ∘Ψ), whose flags
/// may carry more than the bare open book gives. `weak_condition` states
/// whether the weak filling's form satisfies the exactness condition on Σ;
/// it matters only above dimension 3.
pub fn fibered_from(
    base: &ManifoldDescriptor,
    phi: &MonodromyWord,
    psi: &MonodromyWord,
    weak_condition: Tri,
) -> Result<ManifoldDescriptor, SurgeryError> {
    let ob = base.open_book().ok_or(SurgeryError::NotOpenBook)?;
    let page = ob.page();
    check_labels(page, phi)?;
    check_labels(page, psi)?;
    if phi.compose(psi) != *ob.word() {
        return Err(SurgeryError::WordMismatch);
    }
    let f = &base.flags;
    let mut flags = FillabilityFlags::new(
        if base.dim == 3 || weak_condition.is_true() {
            f.weakly().both(f.weakly())
        } else {
            Tri::Unknown
        },
        f.symplectically().both(f.symplectically()),
        f.exactly().both(f.exactly()),
        if page.stein() {
            f.stein().both(f.stein())
        } else {
            Tri::Unknown
        },
    )?;
    let mut identity = None;
    if phi.is_identity() && psi.is_identity() {
        let stein = if page.stein() { Tri::True } else { Tri::Unknown };
        flags = flags.merge(&FillabilityFlags::new(Tri::Unknown, Tri::Unknown, Tri::True, stein)?)?;
        identity = Some(format!("boundary of {} x D*S^1", page.name()));
    }
    let out = ManifoldDescriptor {
        dim: base.dim,
        presentation: Presentation::Glued(Glued::Fibered {
            page: page.clone(),
            phi: phi.clone(),
            psi: psi.clone(),
        }),
        identity,
        flags,
        spheres: Vec::new(),
        ribbons: Vec::<Ribbon>::new(),
        history: base.history.clone(),
    };
    Ok(out.with_step(Step::new(
        "fibered",
        format!("one Liouville sum on ({}, {})", page.name(), ob.word()),
    )))
}

/// Name of the identity presentation, used in messages.
pub fn describe(m: &ManifoldDescriptor) -> String {
    match (&m.identity, &m.presentation) {
        (Some(id), _) => id.clone(),
        (None, Presentation::OpenBook(ob)) => format!("({}, {})", ob.page().name(), ob.word()),
        (None, Presentation::Catalog { name }) => name.clone(),
        (None, Presentation::Glued(Glued::LiouvilleSum { along, .. })) => format!("surgery along {along}"),
        (None, Presentation::Glued(Glued::BranchedCover { ribbon, q, .. })) => format!("{q}-fold cover over {ribbon}"),
        (None, Presentation::Glued(Glued::Fibered { page, phi, psi })) => {
            format!("({}, {}, {})", page.name(), phi, psi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sphere(n: u32) -> ManifoldDescriptor {
        catalog_M_nk(n, 1).unwrap()
    }

    #[test]
    fn legendrian_surgery_on_standard_sphere_gives_cotangent_sphere_bundle() {
        for n in 1..4 {
            let d = contact_surgery(&sphere(n), "L", -1, "I").unwrap();
            assert!(d.word_equal(&catalog_M_nk(n, 2).unwrap()));
            assert_eq!(d.flags.stein(), Tri::True);
            assert_eq!(d.history.len(), 1);
        }
    }

    #[test]
    fn push_off_surgeries_add_on_open_books() {
        let a = contact_surgery(&sphere(2), "L", 2, "I").unwrap();
        let b = contact_surgery(&a, "L'", 3, "I").unwrap();
        let c = contact_surgery(&sphere(2), "L", 5, "I").unwrap();
        assert!(b.word_equal(&c));
        assert_eq!(a.flags, FillabilityFlags::not_fillable());
    }

    #[test]
    fn push_off_surgeries_add_on_glued_manifolds() {
        let m = ManifoldDescriptor::catalog(
            "X",
            5,
            FillabilityFlags::stein_fillable(),
            vec![SphereRef::plain("K", false)],
            vec![],
        )
        .unwrap();
        let a = contact_surgery(&m, "K", 2, "I").unwrap();
        let b = contact_surgery(&a, "K'", 3, "I").unwrap();
        let c = contact_surgery(&m, "K", 5, "I").unwrap();
        assert!(b.word_equal(&c));
        assert!(!b.word_equal(&contact_surgery(&m, "K", 5, "J").unwrap()));
        // a different parameter is not folded
        let d = contact_surgery(&a, "K'", 3, "J").unwrap();
        assert!(!d.word_equal(&c));
        // cancelling coefficients give back the base
        let e = contact_surgery(&a, "K'", -2, "I").unwrap();
        assert!(e.word_equal(&m));
    }

    #[test]
    fn standard_sphere_facts_apply_off_open_books() {
        let m = ManifoldDescriptor::catalog(
            "Y",
            5,
            FillabilityFlags::stein_fillable(),
            vec![SphereRef::plain("U", true)],
            vec![],
        )
        .unwrap();
        assert_eq!(
            contact_surgery(&m, "U", 2, "I").unwrap().flags,
            FillabilityFlags::not_fillable()
        );
        assert_eq!(contact_surgery(&m, "U", 1, "I").unwrap().flags.stein(), Tri::True);
        assert_eq!(contact_surgery(&m, "U", -1, "I").unwrap().flags.stein(), Tri::True);
    }

    #[test]
    fn surgery_errors() {
        assert_eq!(
            contact_surgery(&sphere(1), "L", 0, "I"),
            Err(SurgeryError::ZeroCoefficient)
        );
        assert_eq!(
            contact_surgery(&sphere(1), "Q", 1, "I"),
            Err(SurgeryError::UnknownSphere("Q".into()))
        );
    }

    #[test]
    fn compose_examples() {
        assert_eq!(surgery_compose(&[2, 3]), Ok(Composition::Single(5)));
        assert_eq!(surgery_compose(&[1, -1]), Ok(Composition::NoSurgery));
        assert_eq!(surgery_compose(&[-1]), Ok(Composition::Single(-1)));
        assert!(surgery_compose(&[]).is_err());
    }

    #[test]
    fn sum_of_twists() {
        let p = PageSpec::cotangent_disk(2).unwrap();
        let a = OpenBook::new(p.clone(), MonodromyWord::single("L", 2)).unwrap();
        let b = OpenBook::new(p.clone(), MonodromyWord::single("L", 3)).unwrap();
        let d = liouville_sum_openbooks(&a, &b).unwrap();
        assert!(d.word_equal(&catalog_M_nk(2, 5).unwrap()));
        let q = OpenBook::new(PageSpec::cotangent_disk(3).unwrap(), MonodromyWord::identity()).unwrap();
        assert!(matches!(
            liouville_sum_openbooks(&a, &q),
            Err(SurgeryError::PageMismatch { .. })
        ));
    }

    #[test]
    fn covers() {
        let g = PageSpec::genus_one();
        let w: MonodromyWord = "a b^-1".parse().unwrap();
        let m = open_book_descriptor(OpenBook::new(g.clone(), w.clone()).unwrap()).unwrap();
        assert_eq!(branched_cover(&m, &Hypersurface::Page, 1).unwrap(), m);
        let six = branched_cover(&m, &Hypersurface::Page, 6).unwrap();
        let two_three = branched_cover(
            &branched_cover(&m, &Hypersurface::Page, 2).unwrap(),
            &Hypersurface::Page,
            3,
        )
        .unwrap();
        assert!(six.word_equal(&two_three));
        assert_eq!(six.open_book().unwrap().word(), &w.pow(6));

        let s3 = open_book_descriptor(OpenBook::new(PageSpec::ball(1).unwrap(), MonodromyWord::identity()).unwrap())
            .unwrap();
        let c = branched_cover(&s3, &Hypersurface::Page, 4).unwrap();
        assert!(c.word_equal(&s3));
        assert_eq!(c.identity.as_deref(), Some("standard S^3"));

        let mut x = ManifoldDescriptor::catalog("Z", 5, FillabilityFlags::unknown(), vec![], vec![]).unwrap();
        assert!(branched_cover(&x, &Hypersurface::Page, 2).is_err());
        x.ribbons.push(Ribbon {
            label: "R".into(),
            stein: true,
        });
        let r = Hypersurface::Ribbon("R".into());
        let a = branched_cover(&branched_cover(&x, &r, 2).unwrap(), &r, 3).unwrap();
        assert!(a.word_equal(&branched_cover(&x, &r, 6).unwrap()));
        assert!(branched_cover(&x, &Hypersurface::Ribbon("S".into()), 2).is_err());
    }

    #[test]
    fn fibered() {
        let g = PageSpec::genus_one();
        let id = MonodromyWord::identity();
        let f = fibered_manifold(&g, &id, &id).unwrap();
        assert_eq!(f.identity.as_deref(), Some("boundary of Sigma_1_1 x D*S^1"));
        assert_eq!(f.flags.stein(), Tri::True);

        let p = PageSpec::new("P", 2, None, false, vec!["s".into()]).unwrap();
        let phi = MonodromyWord::single("s", -1);
        let psi = MonodromyWord::single("s", -2);
        let mut base = open_book_descriptor(OpenBook::new(p.clone(), phi.compose(&psi)).unwrap()).unwrap();
        base.flags = FillabilityFlags::exactly_fillable();
        assert_eq!(
            fibered_from(&base, &phi, &psi, Tri::Unknown).unwrap().flags.exactly(),
            Tri::True
        );
        base.flags = FillabilityFlags::new(Tri::True, Tri::Unknown, Tri::Unknown, Tri::Unknown).unwrap();
        assert_eq!(
            fibered_from(&base, &phi, &psi, Tri::Unknown).unwrap().flags.weakly(),
            Tri::Unknown
        );
        assert_eq!(
            fibered_from(&base, &phi, &psi, Tri::True).unwrap().flags.weakly(),
            Tri::True
        );
        assert_eq!(
            fibered_from(&base, &psi, &psi, Tri::True),
            Err(SurgeryError::WordMismatch)
        );
    }
}
