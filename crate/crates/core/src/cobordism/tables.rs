use super::CobordismError;

/// Adams: a map S^{2d−1} → S^d of Hopf invariant one exists iff d ∈ {1, 2, 4, 8}.
pub fn hopf_invariant_one_exists(d: u32) -> bool {
    matches!(d, 1 | 2 | 4 | 8)
}

/// James–Whitehead: the unit tangent bundle of S^m is fiber homotopy
/// equivalent to S^{m−1} × S^m iff m ∈ {1, 3, 7}.
pub fn sphere_bundle_is_product_type(m: u32) -> bool {
    matches!(m, 1 | 3 | 7)
}

/// Whether τ_n² is smoothly isotopic to the identity rel boundary: only for
/// n = 2 and n = 6.
pub fn twist_square_smoothly_trivial(n: u32) -> bool {
    let answer = matches!(n, 2 | 6);
    debug_assert_eq!(answer, n.is_multiple_of(2) && sphere_bundle_is_product_type(n + 1));
    answer
}

/// Cabling a genus-g symplectic surface q times gives genus q(g − 1) + 1 in
/// class q[Σ]. Returns `(genus, multiplier)`.
pub fn cabling_genus(g: u64, q: u64) -> Result<(u64, u64), CobordismError> {
    if g == 0 {
        return Err(CobordismError::InvalidParameter("cabling needs genus at least 1"));
    }
    if q == 0 {
        return Err(CobordismError::InvalidParameter(
            "cabling multiplicity must be positive",
        ));
    }
    let genus = q
        .checked_mul(g - 1)
        .and_then(|x| x.checked_add(1))
        .ok_or(CobordismError::InvalidParameter("genus overflows"))?;
    Ok((genus, q))
}

/// Self-linking of the transverse boundary of a Liouville surface with Euler
/// characteristic χ.
pub fn self_linking_liouville(chi: i64) -> i64 {
    -chi
}
