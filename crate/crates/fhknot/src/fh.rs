//! The Fox-Hatcher move and its cycles.
//!
//! On a Gauss diagram the move deletes the left-most vertex and appends a new
//! right-most vertex paired with the deleted vertex's old partner. On a code
//! the left-most crossing disappears and a newborn crossing is appended; the
//! moving strand keeps its over/under role and the newborn inherits the sign,
//! so the writhe is constant along a cycle. Iterating first returns to the
//! starting diagram after a period dividing 2n.

use std::fmt;

use thiserror::Error;

use crate::codes::{Passage, SignedGaussCode};
use crate::gauss::{canonical_form, CanonicalWord, GaussDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FhError {
    #[error("the empty diagram admits no Fox-Hatcher move")]
    EmptyDiagram,
    #[error("classification needs exactly 3 chords, got {0}")]
    WrongChordCount(usize),
}

/// Move the left-most vertex to the right-most position.
pub fn fh_move(diagram: &GaussDiagram) -> Result<GaussDiagram, FhError> {
    let n2 = diagram.chord_count() * 2;
    if n2 == 0 {
        return Err(FhError::EmptyDiagram);
    }
    let partner = diagram.partner(0).expect("position 0 is covered");
    let mut pairs = Vec::with_capacity(diagram.chord_count());
    for &(a, b) in diagram.pairs() {
        if (a, b) == (0, partner) {
            pairs.push((partner - 1, n2 - 1));
        } else {
            pairs.push((a - 1, b - 1));
        }
    }
    Ok(GaussDiagram::new(pairs).expect("shifted pairing is valid"))
}

/// The Fox-Hatcher move on a signed code: the first passage is removed and
/// the newborn crossing is appended with the same strand role and sign.
pub fn fh_move_on_code(code: &SignedGaussCode) -> Result<SignedGaussCode, FhError> {
    let passages = code.passages();
    if passages.is_empty() {
        return Err(FhError::EmptyDiagram);
    }
    let head = passages[0];
    let mut rest: Vec<Passage> = passages[1..].to_vec();
    rest.push(head);
    Ok(SignedGaussCode::new(rest).expect("rotated passages stay valid"))
}

/// One Fox-Hatcher cycle of Gauss diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhOrbit {
    /// First-return period of `fh_move`; divides 2n.
    pub period: usize,
    /// The cycle, starting from the lexicographically least member.
    pub sequence: Vec<CanonicalWord>,
}

impl FhOrbit {
    pub fn representative(&self) -> &CanonicalWord {
        &self.sequence[0]
    }

    pub fn contains(&self, word: &CanonicalWord) -> bool {
        self.sequence.contains(word)
    }
}

impl fmt::Display for FhOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.sequence.iter().map(|w| w.to_string()).collect();
        write!(f, "period={} members={}", self.period, members.join(";"))
    }
}

/// Iterate `fh_move` until first return to the starting canonical word.
pub fn fh_orbit(diagram: &GaussDiagram) -> FhOrbit {
    let start = canonical_form(diagram);
    if diagram.chord_count() == 0 {
        return FhOrbit { period: 1, sequence: vec![start] };
    }
    let mut sequence = vec![start.clone()];
    let mut current = diagram.clone();
    loop {
        current = fh_move(&current).expect("nonempty along the orbit");
        let word = canonical_form(&current);
        if word == start {
            break;
        }
        sequence.push(word);
    }
    // rotate so the lexicographically least member comes first
    let least = sequence.iter().enumerate().min_by_key(|(_, w)| *w).map(|(i, _)| i).unwrap();
    sequence.rotate_left(least);
    FhOrbit { period: sequence.len(), sequence }
}

/// Partition all n-chord diagrams into Fox-Hatcher cycles, sorted by
/// representative.
pub fn orbit_decomposition(n: usize) -> Vec<FhOrbit> {
    let mut orbits: Vec<FhOrbit> = Vec::new();
    for diagram in crate::gauss::enumerate(n) {
        let word = canonical_form(&diagram);
        if orbits.iter().any(|o| o.contains(&word)) {
            continue;
        }
        orbits.push(fh_orbit(&diagram));
    }
    orbits.sort_by(|a, b| a.representative().cmp(b.representative()));
    orbits
}

/// Which of the three named 3-chord cycles an orbit member belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleType {
    TypeI,
    TypeII,
    TypeIII,
    Other,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleType::TypeI => "I",
            CycleType::TypeII => "II",
            CycleType::TypeIII => "III",
            CycleType::Other => "other",
        })
    }
}

/// Anchor words of the named cycles.
pub const TYPE_I_ANCHOR: &str = "(1,2,2,3,1,3)";
pub const TYPE_II_ANCHOR: &str = "(1,2,1,3,2,3)";
pub const TYPE_III_ANCHOR: &str = "(1,2,3,1,2,3)";

fn anchor_orbit(text: &str) -> FhOrbit {
    fh_orbit(&CanonicalWord::parse(text).expect("anchor parses").to_diagram())
}

/// Classify a 3-chord diagram by cycle membership.
pub fn classify(diagram: &GaussDiagram) -> Result<CycleType, FhError> {
    if diagram.chord_count() != 3 {
        return Err(FhError::WrongChordCount(diagram.chord_count()));
    }
    let word = canonical_form(diagram);
    if word == CanonicalWord::parse(TYPE_III_ANCHOR).unwrap() {
        return Ok(CycleType::TypeIII);
    }
    if anchor_orbit(TYPE_II_ANCHOR).contains(&word) {
        return Ok(CycleType::TypeII);
    }
    if anchor_orbit(TYPE_I_ANCHOR).contains(&word) {
        return Ok(CycleType::TypeI);
    }
    Ok(CycleType::Other)
}
