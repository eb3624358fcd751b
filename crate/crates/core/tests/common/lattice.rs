use finring::ElementProfile;

/// `(premise, conclusions)`: every listed implication between element flags.
pub const EDGES: &[(&str, &[&str])] = &[
    ("clean", &["weakly_clean_t1", "r_clean"]),
    ("r_clean", &["weakly_r_clean"]),
    ("weakly_clean", &["weakly_r_clean"]),
    ("star_clean", &["clean", "weakly_star_clean"]),
    ("weakly_star_clean", &["weakly_clean"]),
    ("star_r_clean", &["r_clean"]),
    ("strongly_clean", &["clean"]),
    ("regular", &["r_clean"]),
    ("unit", &["regular"]),
    ("idempotent", &["regular"]),
    ("projection", &["idempotent"]),
];

/// First violated edge, as `(premise, conclusion)`.
pub fn violation(p: &ElementProfile) -> Option<(&'static str, &'static str)> {
    for &(from, tos) in EDGES {
        if p.flag(from) != Some(true) {
            continue;
        }
        for &to in tos {
            if p.flag(to) != Some(true) {
                return Some((from, to));
            }
        }
    }
    None
}

/// Set sanity beyond the edges: units and idempotents are not nilpotent
/// (except 0).
pub fn set_violation(p: &ElementProfile, zero: usize) -> Option<&'static str> {
    if p.unit.is_some() && p.nilpotent.is_some() {
        return Some("unit and nilpotent");
    }
    if p.idempotent && p.nilpotent.is_some() && p.element != zero {
        return Some("nonzero idempotent and nilpotent");
    }
    None
}
