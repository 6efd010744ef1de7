//! Abstract linear Gauss diagrams: perfect pairings of an ordered point set.
//!
//! Vertices of a long-knot diagram's Gauss diagram are totally ordered, so
//! isomorphism is plain word equality after renaming chords by first
//! occurrence. The canonical word `(1,2,3,1,2,3)` is the standard trefoil.

use std::fmt;

use thiserror::Error;

use crate::codes::{CodeError, SignedGaussCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("pairing must cover each position exactly once")]
    NotAPairing,
    #[error("canonical word is malformed")]
    BadWord,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A perfect pairing of positions `0..2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    pairs: Vec<(usize, usize)>,
}

impl GaussDiagram {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self, GaussError> {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort();
        let n2 = pairs.len() * 2;
        let mut covered = vec![false; n2];
        for &(a, b) in &pairs {
            if a == b || a >= n2 || b >= n2 || covered[a] || covered[b] {
                return Err(GaussError::NotAPairing);
            }
            covered[a] = true;
            covered[b] = true;
        }
        Ok(GaussDiagram { pairs })
    }

    pub fn empty() -> Self {
        GaussDiagram { pairs: Vec::new() }
    }

    /// Chord count.
    pub fn chord_count(&self) -> usize {
        self.pairs.len()
    }

    /// Pairs `(a, b)` with `a < b`, sorted by first position.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner of a position.
    pub fn partner(&self, pos: usize) -> Option<usize> {
        for &(a, b) in &self.pairs {
            if a == pos {
                return Some(b);
            }
            if b == pos {
                return Some(a);
            }
        }
        None
    }
}

/// Chord word with chords numbered by first occurrence, e.g. `(1,2,3,1,2,3)`.
/// Equal words = isomorphic linear Gauss diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord(Vec<u32>);

impl CanonicalWord {
    pub fn new(word: Vec<u32>) -> Result<Self, GaussError> {
        let mut next = 1u32;
        let mut counts = vec![0usize; word.len() / 2 + 1];
        for &c in &word {
            if c == next {
                next += 1;
            } else if c == 0 || c >= next {
                return Err(GaussError::BadWord);
            }
            if (c as usize) < counts.len() {
                counts[c as usize] += 1;
            } else {
                return Err(GaussError::BadWord);
            }
        }
        if word.len() % 2 != 0 || counts[1..].iter().any(|&k| k != 2) {
            return Err(GaussError::BadWord);
        }
        Ok(CanonicalWord(word))
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn chord_count(&self) -> usize {
        self.0.len() / 2
    }

    /// Parse `(1,2,3,1,2,3)`; the empty word is `()`.
    pub fn parse(text: &str) -> Result<Self, GaussError> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return CanonicalWord::new(Vec::new());
        }
        let word: Result<Vec<u32>, _> = inner.split(',').map(|t| t.trim().parse::<u32>()).collect();
        CanonicalWord::new(word.map_err(|_| GaussError::BadWord)?)
    }

    pub fn to_diagram(&self) -> GaussDiagram {
        let mut first = vec![usize::MAX; self.chord_count() + 1];
        let mut pairs = Vec::with_capacity(self.chord_count());
        for (i, &c) in self.0.iter().enumerate() {
            if first[c as usize] == usize::MAX {
                first[c as usize] = i;
            } else {
                pairs.push((first[c as usize], i));
            }
        }
        GaussDiagram::new(pairs).expect("canonical word is a pairing")
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", syms.join(","))
    }
}

/// Forget signs and over/under: pair the positions of each crossing's passages.
pub fn underlying_diagram(code: &SignedGaussCode) -> GaussDiagram {
    let mut pairs = Vec::with_capacity(code.crossing_count());
    for label in code.labels() {
        let (a, b) = code.positions_of(label).expect("label exists");
        pairs.push((a, b));
    }
    GaussDiagram::new(pairs).expect("valid code yields a pairing")
}

/// The pairing induced on the chosen crossings' passage positions, compressed
/// to an initial segment preserving order.
pub fn subdiagram(code: &SignedGaussCode, labels: &[u32]) -> Result<GaussDiagram, GaussError> {
    let mut positions = Vec::with_capacity(labels.len() * 2);
    for &label in labels {
        let (a, b) = code.positions_of(label)?;
        positions.push((a, label));
        positions.push((b, label));
    }
    positions.sort();
    let mut first: std::collections::BTreeMap<u32, usize> = Default::default();
    let mut pairs = Vec::with_capacity(labels.len());
    for (slot, &(_, label)) in positions.iter().enumerate() {
        match first.get(&label) {
            None => {
                first.insert(label, slot);
            }
            Some(&a) => pairs.push((a, slot)),
        }
    }
    Ok(GaussDiagram::new(pairs).expect("induced pairing is valid"))
}

/// Relabel chords by first occurrence. Two diagrams are isomorphic as linear
/// Gauss diagrams iff their canonical forms are equal.
pub fn canonical_form(diagram: &GaussDiagram) -> CanonicalWord {
    let n2 = diagram.chord_count() * 2;
    let mut word = vec![0u32; n2];
    let mut next = 1u32;
    for pos in 0..n2 {
        if word[pos] == 0 {
            let partner = diagram.partner(pos).expect("covered position");
            word[pos] = next;
            word[partner] = next;
            next += 1;
        }
    }
    CanonicalWord::new(word).expect("first-occurrence relabeling is canonical")
}

/// Do the chosen crossings of `code` respect the Gauss diagram `g`?
pub fn respects(code: &SignedGaussCode, labels: &[u32], g: &GaussDiagram) -> Result<bool, GaussError> {
    Ok(canonical_form(&subdiagram(code, labels)?) == canonical_form(g))
}

/// All `(2n-1)!!` perfect pairings of `2n` positions, in lexicographic order
/// of canonical word.
pub fn enumerate(n: usize) -> Vec<GaussDiagram> {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<GaussDiagram>) {
        if free.is_empty() {
            out.push(GaussDiagram::new(acc.clone()).expect("pairing"));
            return;
        }
        let a = free[0];
        for i in 1..free.len() {
            let b = free[i];
            let mut rest: Vec<usize> = free[1..].to_vec();
            rest.remove(i - 1);
            acc.push((a, b));
            rec(&mut rest, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(GaussDiagram::empty());
        return out;
    }
    let mut free: Vec<usize> = (0..2 * n).collect();
    rec(&mut free, &mut Vec::new(), &mut out);
    out.sort_by_key(canonical_form);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    fn word(s: &str) -> CanonicalWord {
        CanonicalWord::parse(s).unwrap()
    }

    #[test]
    fn underlying_words() {
        let trefoil = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(canonical_form(&underlying_diagram(&trefoil)), word("(1,2,3,1,2,3)"));
        let fig8 = parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap();
        assert_eq!(canonical_form(&underlying_diagram(&fig8)), word("(1,2,3,1,4,3,2,4)"));
        assert_eq!(canonical_form(&underlying_diagram(&SignedGaussCode::empty())), word("()"));
    }

    #[test]
    fn fig8_named_crossings_respect_type_ii_word() {
        // the three crossings singled out on the standard figure-eight diagram
        let fig8 = parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap();
        let sub = subdiagram(&fig8, &[1, 2, 3]).unwrap();
        assert_eq!(canonical_form(&sub), word("(1,2,1,3,2,3)"));
    }

    #[test]
    fn subdiagram_examples() {
        let trefoil = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(canonical_form(&subdiagram(&trefoil, &[1, 2, 3]).unwrap()), word("(1,2,3,1,2,3)"));
        assert_eq!(canonical_form(&subdiagram(&trefoil, &[1, 2]).unwrap()), word("(1,2,1,2)"));
        assert_eq!(canonical_form(&subdiagram(&trefoil, &[2]).unwrap()), word("(1,1)"));
        assert!(matches!(subdiagram(&trefoil, &[7]), Err(GaussError::Code(_))));
    }

    #[test]
    fn canonical_relabels_by_first_occurrence() {
        // positions here are 1-based in the spec's examples; 0-based internally
        let d = GaussDiagram::new(vec![(0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(canonical_form(&d), word("(1,2,3,1,2,3)"));
        let d = GaussDiagram::new(vec![(1, 5), (0, 3), (2, 4)]).unwrap();
        assert_eq!(canonical_form(&d), word("(1,2,3,2,3,1)"));
        assert_eq!(canonical_form(&GaussDiagram::empty()), word("()"));
    }

    #[test]
    fn respects_examples() {
        let trefoil = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let fig8 = parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap();
        let t3 = word("(1,2,3,1,2,3)").to_diagram();
        let t2 = word("(1,2,1,3,2,3)").to_diagram();
        assert!(respects(&trefoil, &[1, 2, 3], &t3).unwrap());
        assert!(!respects(&trefoil, &[1, 2, 3], &t2).unwrap());
        assert!(respects(&fig8, &[1, 2, 3], &t2).unwrap());
    }

    #[test]
    fn enumeration_counts_are_double_factorials() {
        let expect = [1usize, 1, 3, 15, 105, 945, 10395];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(enumerate(n).len(), want, "n={n}");
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_canonical() {
        let all = enumerate(3);
        let words: Vec<CanonicalWord> = all.iter().map(canonical_form).collect();
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(words, sorted);
        assert_eq!(words[0], word("(1,1,2,2,3,3)"));
        assert_eq!(words.last().unwrap(), &word("(1,2,3,3,2,1)"));
    }

    #[test]
    fn bad_pairing_rejected() {
        assert!(GaussDiagram::new(vec![(0, 0)]).is_err());
        assert!(GaussDiagram::new(vec![(0, 1), (1, 2)]).is_err());
        assert!(CanonicalWord::new(vec![1, 1, 1, 1]).is_err());
        assert!(CanonicalWord::new(vec![2, 1, 1, 2]).is_err());
    }

    #[test]
    fn respects_own_subdiagram() {
        let fig8 = parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap();
        for labels in [vec![1], vec![2, 4], vec![1, 2, 3], vec![1, 2, 3, 4]] {
            let sub = subdiagram(&fig8, &labels).unwrap();
            assert!(respects(&fig8, &labels, &sub).unwrap());
        }
    }
}
