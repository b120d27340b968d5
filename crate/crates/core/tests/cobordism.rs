use liouville_core::cobordism::{
    cabling_genus, euler_characteristic, gysin_sphere_bundle_homology, hopf_invariant_one_exists,
    sphere_bundle_over_sphere, sum_cobordism, sum_cobordism_spec, twist_square_smoothly_trivial, Exactness, Group,
    Handle, HomologyProfile,
};
use liouville_core::surgery::PageSpec;

#[test]
fn plus_one_cobordism_handles() {
    let hs = sum_cobordism(&PageSpec::cotangent_disk(1).unwrap(), 2).unwrap();
    let mut idx: Vec<u32> = hs.iter().map(Handle::index).collect();
    idx.sort();
    assert_eq!(idx, [1, 2]);
    assert!(hs.iter().all(|h| h.ambient_dim() == 4));
    assert!(sum_cobordism(&PageSpec::cotangent_disk(1).unwrap(), 3).is_err());
}

#[test]
fn genus_one_page_handles() {
    let spec = sum_cobordism_spec(&PageSpec::genus_one(), vec!["A".into(), "B".into()], "C".into()).unwrap();
    let mut idx: Vec<u32> = spec.handles.iter().map(Handle::index).collect();
    idx.sort();
    assert_eq!(idx, [1, 2, 2]);
    assert_eq!(spec.exactness, Exactness::SteinCandidate);
}

#[test]
fn five_sphere_euler_characteristic() {
    // disk plus 2k handles of index n + 1: each changes χ by (−1)^{n+1}
    for n in 1..=6u32 {
        for k in -5i64..=5 {
            let hs: Vec<Handle> = (0..2 * k.unsigned_abs())
                .map(|_| Handle::new(2 * n + 2, n + 1, "h").unwrap())
                .collect();
            let chi = euler_characteristic(1, &hs);
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(chi, 1 + sign * 2 * k.abs());
            assert_eq!(chi == 1, k == 0);
        }
    }
}

#[test]
fn handle_index_range() {
    assert!(Handle::new(4, 5, "x").is_err());
    assert!(Handle::new(4, 4, "x").is_ok());
}

#[test]
fn gysin_tables() {
    assert_eq!(gysin_sphere_bundle_homology(1).unwrap().to_string(), "(Z, Z/2, 0, Z)");
    let g3 = gysin_sphere_bundle_homology(3).unwrap();
    assert_eq!(g3.get(3), Group::cyclic(2));
    assert_eq!(g3.get(4), Group::zero());
    assert_eq!(g3.ranks(), [1, 0, 0, 0, 0, 0, 0, 1]);
    let g2 = gysin_sphere_bundle_homology(2).unwrap();
    assert_eq!(g2.ranks(), HomologyProfile::sphere_product(2, 3).ranks());
    assert_eq!(g2, HomologyProfile::sphere_product(2, 3));
    assert_eq!(sphere_bundle_over_sphere(2, 5).unwrap().get(2), Group::cyclic(5));
}

#[test]
fn twist_square_cross_table() {
    let trivial: Vec<u32> = (1..=64).filter(|&n| twist_square_smoothly_trivial(n)).collect();
    assert_eq!(trivial, [2, 6]);
    for n in 1..=64u32 {
        assert_eq!(
            twist_square_smoothly_trivial(n),
            n % 2 == 0 && matches!(n + 1, 1 | 3 | 7)
        );
    }
    assert!(hopf_invariant_one_exists(4) && !hopf_invariant_one_exists(16));
}

#[test]
fn cabling() {
    assert_eq!(cabling_genus(2, 3).unwrap(), (4, 3));
    assert_eq!(cabling_genus(1, 5).unwrap(), (1, 5));
    assert!(cabling_genus(0, 2).is_err());
}
