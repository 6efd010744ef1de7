//! Vassiliev invariants from Gauss-diagram counting formulas.
//!
//! `v2` is the Casson invariant and `v3` the order-three invariant normalized
//! by v3(unknot) = 0, v3(right trefoil) = 1, v3(left trefoil) = -1. Both are
//! computed by counting embeddings of small arrow patterns, with arrows
//! pointing from the under- to the over-passage of a crossing. The patterns
//! are configuration data of this module: they are validated against the
//! anchor values above, against the independent Conway-polynomial oracle
//! [`conway_a2`], and against the finite-difference sweep in the test suite
//! rather than trusted blindly.
//!
//! The framed invariant is `v = 6*v3 - w*v2` with `w` the blackboard framing
//! number, and `dnv` is its alternating finite difference over sign
//! resolutions of chosen crossings.

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, Sign, SignedGaussCode, Strand};
use crate::fh::{classify, CycleType, FhError};
use crate::gauss::subdiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Fh(#[from] FhError),
    #[error("crossing label {0} chosen twice")]
    DuplicateLabel(u32),
    #[error("skein recursion exceeded its budget of {0} steps")]
    RecursionBudgetExceeded(usize),
    #[error("arrow pattern is malformed")]
    BadPattern,
}

/// An oriented chord: `tail` is the under-passage slot, `head` the over-passage slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

/// One term of a Gauss-diagram formula: an arrow pattern on slots `0..2k`
/// (k <= 3) with an integer multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowPattern {
    arrows: Vec<Arrow>,
    multiplicity: i64,
}

impl ArrowPattern {
    pub fn new(arrows: Vec<Arrow>, multiplicity: i64) -> Result<Self, InvariantError> {
        let k = arrows.len();
        if k > 3 {
            return Err(InvariantError::BadPattern);
        }
        let mut covered = vec![false; 2 * k];
        for a in &arrows {
            if a.tail >= 2 * k || a.head >= 2 * k || a.tail == a.head {
                return Err(InvariantError::BadPattern);
            }
            if covered[a.tail] || covered[a.head] {
                return Err(InvariantError::BadPattern);
            }
            covered[a.tail] = true;
            covered[a.head] = true;
        }
        Ok(ArrowPattern { arrows, multiplicity })
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    pub fn chord_count(&self) -> usize {
        self.arrows.len()
    }
}

fn pattern(arrows: &[(usize, usize)], multiplicity: i64) -> ArrowPattern {
    ArrowPattern::new(
        arrows.iter().map(|&(tail, head)| Arrow { tail, head }).collect(),
        multiplicity,
    )
    .expect("static pattern is well formed")
}

/// The Casson-invariant formula: one crossed pair, the earlier chord pointing
/// forward and the later one backward.
pub fn v2_formula() -> Vec<ArrowPattern> {
    vec![pattern(&[(0, 2), (3, 1)], 1)]
}

/// The order-three formula: five 3-arrow terms, all with multiplicity one.
/// Two terms sit on the pairwise-crossed word (1,2,3,1,2,3) and one on each
/// word of the Type II cycle.
pub fn v3_formula() -> Vec<ArrowPattern> {
    vec![
        // word (1,2,1,3,2,3)
        pattern(&[(2, 0), (1, 4), (5, 3)], 1),
        // word (1,2,3,1,2,3), both coherent orientations
        pattern(&[(0, 3), (4, 1), (2, 5)], 1),
        pattern(&[(3, 0), (1, 4), (5, 2)], 1),
        // word (1,2,3,1,3,2)
        pattern(&[(3, 0), (1, 5), (4, 2)], 1),
        // word (1,2,3,2,1,3)
        pattern(&[(0, 4), (3, 1), (2, 5)], 1),
    ]
}

/// Arrow data of one crossing of a code: positions of its under- and
/// over-passage and its sign.
fn code_arrows(code: &SignedGaussCode) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::with_capacity(code.crossing_count());
    for label in code.labels() {
        let (a, b) = code.positions_of(label).expect("label exists");
        let first = &code.passages()[a];
        let (under, over) = match first.strand {
            Strand::Under => (a, b),
            Strand::Over => (b, a),
        };
        out.push((under, over, first.sign.value()));
    }
    out
}

/// Signed count of order-preserving embeddings of the pattern into the code's
/// arrow diagram; each match is weighted by the product of crossing signs.
pub fn count_matchings(code: &SignedGaussCode, pat: &ArrowPattern) -> i64 {
    let k = pat.chord_count();
    if k == 0 {
        return 1;
    }
    let arrows = code_arrows(code);
    let n = arrows.len();
    if n < k {
        return 0;
    }
    // pattern chords keyed by their (min, max) slot pair
    let mut total = 0i64;
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        total += matching_weight(&arrows, &combo, pat);
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if combo[i] != i + n - k {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn matching_weight(arrows: &[(usize, usize, i64)], combo: &[usize], pat: &ArrowPattern) -> i64 {
    // slot order of the chosen chords' endpoints
    let mut endpoints: Vec<(usize, usize)> = Vec::with_capacity(combo.len() * 2);
    for &ci in combo {
        let (u, o, _) = arrows[ci];
        endpoints.push((u.min(o), ci));
        endpoints.push((u.max(o), ci));
    }
    endpoints.sort_unstable();
    let mut weight = 1i64;
    for a in pat.arrows() {
        let (lo, hi) = (a.tail.min(a.head), a.tail.max(a.head));
        let (_, ci) = endpoints[lo];
        let (_, ci_hi) = endpoints[hi];
        if ci != ci_hi {
            return 0;
        }
        let (u, o, sign) = arrows[ci];
        // arrow must point (tail=under) the same way as the pattern chord
        let under_first = u < o;
        let tail_first = a.tail < a.head;
        if under_first != tail_first {
            return 0;
        }
        weight *= sign;
    }
    weight
}

/// Evaluate a Gauss-diagram formula.
pub fn evaluate_formula(code: &SignedGaussCode, formula: &[ArrowPattern]) -> i64 {
    formula.iter().map(|p| p.multiplicity() * count_matchings(code, p)).sum()
}

/// The Casson invariant of the underlying knot.
pub fn v2(code: &SignedGaussCode) -> i64 {
    evaluate_formula(code, &v2_formula())
}

/// The order-three invariant, odd under mirror image.
pub fn v3(code: &SignedGaussCode) -> i64 {
    evaluate_formula(code, &v3_formula())
}

const SKEIN_BUDGET: usize = 100_000;

/// Coefficient of z^2 in the Conway polynomial, by switching crossings toward
/// a descending diagram. Independent of the arrow-pattern path; must agree
/// with [`v2`] on every realizable diagram.
///
/// Each switch at a crossing of sign s contributes s times the linking number
/// of the two components of the oriented smoothing, and a descending long
/// diagram is trivial.
pub fn conway_a2(code: &SignedGaussCode) -> Result<i64, InvariantError> {
    let mut code = code.clone();
    let mut a2 = 0i64;
    for step in 0.. {
        if step >= SKEIN_BUDGET {
            return Err(InvariantError::RecursionBudgetExceeded(SKEIN_BUDGET));
        }
        let Some(label) = first_descending_violation(&code) else {
            return Ok(a2);
        };
        let sign = code.sign_of(label)?.value();
        a2 += sign * smoothing_linking_number(&code, label)?;
        code = code.crossing_change(label)?;
    }
    unreachable!()
}

/// First crossing met at its under-passage before its over-passage.
fn first_descending_violation(code: &SignedGaussCode) -> Option<u32> {
    let mut seen = std::collections::BTreeSet::new();
    for p in code.passages() {
        if seen.insert(p.crossing) && p.strand == Strand::Under {
            return Some(p.crossing);
        }
    }
    None
}

/// Linking number of the two components created by the oriented smoothing at
/// `label`: half the signed count of crossings with exactly one passage
/// strictly between the smoothed passages.
fn smoothing_linking_number(code: &SignedGaussCode, label: u32) -> Result<i64, InvariantError> {
    let (p, q) = code.positions_of(label)?;
    let inside = |i: usize| p < i && i < q;
    let mut twice = 0i64;
    for other in code.labels() {
        if other == label {
            continue;
        }
        let (a, b) = code.positions_of(other)?;
        if inside(a) != inside(b) {
            twice += code.sign_of(other)?.value();
        }
    }
    debug_assert_eq!(twice % 2, 0, "inter-component signs must sum evenly");
    Ok(twice / 2)
}

/// Integer invariants of one framed diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub v2: i64,
    pub v3: i64,
    pub w: i64,
    pub v: i64,
}

/// The framed order-three invariant `v = 6*v3 - w*v2` under blackboard framing.
pub fn v_invariant(code: &SignedGaussCode) -> InvariantReport {
    let v2 = v2(code);
    let v3 = v3(code);
    let w = code.writhe();
    InvariantReport { v2, v3, w, v: 6 * v3 - w * v2 }
}

/// Alternating finite difference of `v` over all sign resolutions of the
/// chosen crossings.
pub fn dnv(code: &SignedGaussCode, labels: &[u32]) -> Result<i64, InvariantError> {
    let mut seen = std::collections::BTreeSet::new();
    for &l in labels {
        code.positions_of(l)?;
        if !seen.insert(l) {
            return Err(InvariantError::DuplicateLabel(l));
        }
    }
    let k = labels.len();
    let mut total = 0i64;
    for mask in 0..(1u32 << k) {
        let assignment: Vec<(u32, Sign)> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, if mask & (1 << i) == 0 { Sign::Plus } else { Sign::Minus }))
            .collect();
        let resolved = code.resolve(&assignment)?;
        let parity = if (mask.count_ones() % 2) == 0 { 1 } else { -1 };
        total += parity * v_invariant(&resolved).v;
    }
    Ok(total)
}

/// The value Theorem-style classification predicts for `dnv` on three chosen
/// crossings: -2, 2, 6 or 0 according to the cycle their Gauss diagram
/// belongs to.
pub fn d3v_predicted(code: &SignedGaussCode, labels: &[u32]) -> Result<i64, InvariantError> {
    let sub = subdiagram(code, labels).map_err(|e| match e {
        crate::gauss::GaussError::Code(c) => InvariantError::Code(c),
        _ => InvariantError::BadPattern,
    })?;
    Ok(cycle_value(classify(&sub)?))
}

/// The finite-difference value attached to each cycle type.
pub fn cycle_value(t: CycleType) -> i64 {
    match t {
        CycleType::TypeI => -2,
        CycleType::TypeII => 2,
        CycleType::TypeIII => 6,
        CycleType::Other => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{builtin_catalog, parse_gauss_code};
    use crate::fh::fh_move_on_code;

    fn code(s: &str) -> SignedGaussCode {
        parse_gauss_code(s).unwrap()
    }

    fn trefoil() -> SignedGaussCode {
        code("O1+ U2+ O3+ U1+ O2+ U3+")
    }

    fn fig8() -> SignedGaussCode {
        code("O1+ U2- O4- U1+ O3+ U4- O2- U3+")
    }

    #[test]
    fn count_matchings_basics() {
        let empty_pattern = ArrowPattern::new(vec![], 1).unwrap();
        assert_eq!(count_matchings(&trefoil(), &empty_pattern), 1);
        assert_eq!(count_matchings(&SignedGaussCode::empty(), &v2_formula()[0]), 0);
        assert_eq!(count_matchings(&trefoil(), &v2_formula()[0]), 1);
    }

    #[test]
    fn v2_anchor_values() {
        assert_eq!(v2(&trefoil()), 1);
        assert_eq!(v2(&trefoil().mirror()), 1);
        assert_eq!(v2(&fig8()), -1);
        assert_eq!(v2(&SignedGaussCode::empty()), 0);
    }

    #[test]
    fn v3_anchor_values() {
        assert_eq!(v3(&trefoil()), 1);
        assert_eq!(v3(&trefoil().mirror()), -1);
        assert_eq!(v3(&fig8()), 0);
        assert_eq!(v3(&SignedGaussCode::empty()), 0);
    }

    #[test]
    fn conway_a2_examples() {
        assert_eq!(conway_a2(&trefoil()).unwrap(), 1);
        assert_eq!(conway_a2(&SignedGaussCode::empty()).unwrap(), 0);
        assert_eq!(conway_a2(&fig8()).unwrap(), -1);
    }

    #[test]
    fn conway_matches_v2_on_catalog_and_resolutions() {
        for entry in builtin_catalog() {
            let labels = entry.code.labels();
            for mask in 0..(1u32 << labels.len()) {
                let assignment: Vec<(u32, Sign)> = labels
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| (l, if mask & (1 << i) == 0 { Sign::Plus } else { Sign::Minus }))
                    .collect();
                let resolved = entry.code.resolve(&assignment).unwrap();
                assert_eq!(
                    conway_a2(&resolved).unwrap(),
                    v2(&resolved),
                    "{} mask {:b}",
                    entry.name,
                    mask
                );
            }
        }
    }

    #[test]
    fn v_invariant_examples() {
        let r = v_invariant(&trefoil());
        assert_eq!((r.v2, r.v3, r.w, r.v), (1, 1, 3, 3));
        let left = trefoil().mirror();
        assert_eq!(v_invariant(&left).v, -3);
        assert_eq!(v_invariant(&SignedGaussCode::empty()).v, 0);
        // the kinked trefoil shifts only the framing term
        let kinked = code("O1+ U1+ O2+ U3+ O4+ U2+ O3+ U4+");
        assert_eq!(v_invariant(&kinked).v, 6 - 4);
    }

    #[test]
    fn dnv_paper_anchors() {
        assert_eq!(dnv(&trefoil(), &[1, 2, 3]).unwrap(), 6);
        assert_eq!(dnv(&fig8(), &[1, 2, 3]).unwrap(), 2);
    }

    #[test]
    fn dnv_is_symmetric_in_labels() {
        let c = fig8();
        let base = dnv(&c, &[1, 2, 4]).unwrap();
        assert_eq!(dnv(&c, &[4, 1, 2]).unwrap(), base);
        assert_eq!(dnv(&c, &[2, 4, 1]).unwrap(), base);
    }

    #[test]
    fn dnv_rejects_bad_labels() {
        assert!(matches!(dnv(&trefoil(), &[1, 1]), Err(InvariantError::DuplicateLabel(1))));
        assert!(matches!(dnv(&trefoil(), &[9]), Err(InvariantError::Code(_))));
    }

    #[test]
    fn order_three_differences_vanish() {
        for entry in builtin_catalog() {
            let labels = entry.code.labels();
            if labels.len() < 4 {
                continue;
            }
            for sub in combinations(&labels, 4) {
                assert_eq!(dnv(&entry.code, &sub).unwrap(), 0, "{} {:?}", entry.name, sub);
            }
        }
    }

    #[test]
    fn d3v_matches_prediction_on_catalog() {
        for entry in builtin_catalog() {
            let labels = entry.code.labels();
            for sub in combinations(&labels, 3) {
                let predicted = d3v_predicted(&entry.code, &sub).unwrap();
                let measured = dnv(&entry.code, &sub).unwrap();
                assert_eq!(measured, predicted, "{} {:?}", entry.name, sub);
            }
        }
    }

    #[test]
    fn type_i_subset_measures_minus_two() {
        let kinked = code("O1+ U1+ O2+ U3+ O4+ U2+ O3+ U4+");
        assert_eq!(d3v_predicted(&kinked, &[1, 2, 3]).unwrap(), -2);
        assert_eq!(dnv(&kinked, &[1, 2, 3]).unwrap(), -2);
    }

    #[test]
    fn mirror_parity() {
        for entry in builtin_catalog() {
            let m = entry.code.mirror();
            assert_eq!(v2(&m), v2(&entry.code), "{}", entry.name);
            assert_eq!(v3(&m), -v3(&entry.code), "{}", entry.name);
        }
    }

    #[test]
    fn fh_moves_preserve_v2_v3() {
        for entry in builtin_catalog() {
            if entry.code.is_empty() {
                continue;
            }
            let mut c = entry.code.clone();
            for _ in 0..2 * c.crossing_count() {
                c = fh_move_on_code(&c).unwrap();
                assert_eq!(v2(&c), entry.expected_v2, "{}", entry.name);
                assert_eq!(v3(&c), entry.expected_v3, "{}", entry.name);
            }
        }
    }

    fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let n = items.len();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i]).collect());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}
