use liouville_core::surgery::{
    branched_cover, catalog_M_nk, contact_surgery, fibered_from, fillability_propagate, open_book_descriptor,
    surgery_compose, Composition, FillabilityFlags, HandleCount, Hypersurface, ManifoldDescriptor, MonodromyWord,
    OpenBook, PageSpec, SphereRef, Tri,
};

const T: Tri = Tri::True;
const U: Tri = Tri::Unknown;

fn all_flags() -> Vec<FillabilityFlags> {
    let mut out: Vec<FillabilityFlags> = Vec::new();
    for w in Tri::ALL {
        for s in Tri::ALL {
            for e in Tri::ALL {
                for st in Tri::ALL {
                    if let Ok(f) = FillabilityFlags::new(w, s, e, st) {
                        if !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
            }
        }
    }
    out
}

// Upward closure written out by hand: stein ⇒ exact ⇒ strong ⇒ weak.
fn close(mut weak: Tri, mut symp: Tri, mut exact: Tri, stein: Tri) -> [Tri; 4] {
    if stein == T {
        exact = T;
    }
    if exact == T {
        symp = T;
    }
    if symp == T {
        weak = T;
    }
    [weak, symp, exact, stein]
}

fn and(a: Tri, b: Tri) -> Tri {
    if a == T && b == T {
        T
    } else {
        U
    }
}

#[test]
fn closed_flag_count() {
    // monotone sequences of length 4 over F < U < T, read strongest first:
    // (#F prefix from the weak end, #T from the stein end, rest U)
    assert_eq!(all_flags().len(), 15);
}

#[test]
fn sum_truth_table() {
    let flags = all_flags();
    let mut rows = 0;
    for f1 in &flags {
        for f2 in &flags {
            for page_stein in [false, true] {
                for dim in [3u32, 5] {
                    for h2 in Tri::ALL {
                        let got = fillability_propagate(f1, f2, page_stein, dim, h2);
                        let a = f1.as_array();
                        let b = f2.as_array();
                        let stein = if page_stein || dim == 3 { and(a[3], b[3]) } else { U };
                        let weak = if dim == 3 || h2 == T { and(a[0], b[0]) } else { U };
                        let want = close(weak, and(a[1], b[1]), and(a[2], b[2]), stein);
                        assert_eq!(
                            got.as_array(),
                            want,
                            "{f1} + {f2}, stein page {page_stein}, dim {dim}, h2 {h2}"
                        );
                        assert!(got.is_closed());
                        assert!(!got.as_array().contains(&Tri::False));
                        rows += 1;
                    }
                }
            }
        }
    }
    assert_eq!(rows, 15 * 15 * 2 * 2 * 3);
}

fn with_flags(page: PageSpec, word: &str, flags: FillabilityFlags) -> ManifoldDescriptor {
    let mut d = open_book_descriptor(OpenBook::new(page, word.parse().unwrap()).unwrap()).unwrap();
    d.flags = flags;
    d
}

#[test]
fn fibration_truth_table() {
    let phi: MonodromyWord = "a".parse().unwrap();
    let psi: MonodromyWord = "b^-1".parse().unwrap();
    for f in all_flags() {
        for page_stein in [false, true] {
            for (page, dim) in [(PageSpec::genus_one(), 3u32), (five_dim_page(page_stein), 5)] {
                if dim == 3 && !page_stein {
                    continue;
                }
                for cond in Tri::ALL {
                    let base = with_flags(page.clone(), "a b^-1", f);
                    let got = fibered_from(&base, &phi, &psi, cond).unwrap().flags;
                    let a = f.as_array();
                    let weak = if dim == 3 || cond == T { and(a[0], a[0]) } else { U };
                    let stein = if page_stein { and(a[3], a[3]) } else { U };
                    let want = close(weak, and(a[1], a[1]), and(a[2], a[2]), stein);
                    assert_eq!(
                        got.as_array(),
                        want,
                        "{f}, dim {dim}, stein page {page_stein}, condition {cond}"
                    );
                    assert!(got.is_closed());
                }
            }
        }
    }
}

fn five_dim_page(stein: bool) -> PageSpec {
    let handles = vec![HandleCount { index: 0, count: 1 }, HandleCount { index: 2, count: 2 }];
    PageSpec::new("P", 2, Some(handles), stein, vec!["a".to_string(), "b".to_string()]).unwrap()
}

#[test]
fn composed_pushoff_surgeries() {
    for n in 1..=3 {
        let m = catalog_M_nk(n, 1).unwrap();
        let two = contact_surgery(&m, "L", 2, "I").unwrap();
        let then_three = contact_surgery(&two, "L'", 3, "I").unwrap();
        let five = contact_surgery(&m, "L", 5, "I").unwrap();
        assert!(then_three.word_equal(&five), "n = {n}");
        assert!(!two.word_equal(&five));
    }
    assert_eq!(surgery_compose(&[2, 3]), Ok(Composition::Single(5)));
    assert_eq!(surgery_compose(&[4, -4]), Ok(Composition::NoSurgery));
}

#[test]
fn legendrian_surgery_gives_m_n2() {
    for n in 1..=4 {
        let m = contact_surgery(&catalog_M_nk(n, 1).unwrap(), "L", -1, "I").unwrap();
        assert!(m.word_equal(&catalog_M_nk(n, 2).unwrap()), "n = {n}");
        assert_eq!(m.flags.stein(), T);
    }
}

#[test]
fn covers_compose() {
    let d = with_flags(PageSpec::genus_one(), "a^2 b^-1", FillabilityFlags::unknown());
    let six = branched_cover(&d, &Hypersurface::Page, 6).unwrap();
    let two = branched_cover(&d, &Hypersurface::Page, 2).unwrap();
    let two_three = branched_cover(&two, &Hypersurface::Page, 3).unwrap();
    assert!(six.word_equal(&two_three));
    assert!(!six.word_equal(&two));
    assert_eq!(
        six.open_book().unwrap().word().to_string(),
        "a^2 b^-1 a^2 b^-1 a^2 b^-1 a^2 b^-1 a^2 b^-1 a^2 b^-1"
    );
}

#[test]
fn parameter_is_kept_apart() {
    let spheres = vec![SphereRef::plain("K", false)];
    let m = ManifoldDescriptor::catalog("Y", 5, FillabilityFlags::unknown(), spheres, Vec::new()).unwrap();
    let a = contact_surgery(&m, "K", 1, "I").unwrap();
    let b = contact_surgery(&m, "K", 1, "J").unwrap();
    assert!(a.word_equal(&contact_surgery(&m, "K", 1, "I").unwrap()));
    assert!(!a.word_equal(&b));
}

#[test]
fn descriptor_text_round_trip() {
    let m = contact_surgery(&catalog_M_nk(2, 1).unwrap(), "L", 2, "I").unwrap();
    let t = m.to_text();
    assert_eq!(ManifoldDescriptor::from_text(&t).unwrap(), m);
}
