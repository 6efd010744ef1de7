//! Signed Gauss codes of long-knot diagrams.
//!
//! A long knot diagram is recorded as the sequence of crossing passages met
//! while traveling the strand from the left tail: `O3+` means "pass over
//! crossing 3, which is positive". The blackboard framing number of such a
//! diagram is its writhe, the sum of one sign per crossing.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("malformed token `{0}`: expected O<label><sign> or U<label><sign>")]
    MalformedToken(String),
    #[error("crossing {label} appears {count} times, expected exactly 2")]
    LabelCountNotTwo { label: u32, count: usize },
    #[error("crossing {0} has two over or two under passages")]
    OverUnderMismatch(u32),
    #[error("the two passages of crossing {0} disagree in sign")]
    SignMismatch(u32),
    #[error("unknown crossing label {0}")]
    UnknownLabel(u32),
    #[error("catalog line {line}: {reason}")]
    BadCatalogRecord { line: usize, reason: String },
}

/// Which branch of the strand passes through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flipped(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

/// Crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One visit to a crossing along the strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub strand: Strand,
    pub crossing: u32,
    pub sign: Sign,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.strand {
            Strand::Over => 'O',
            Strand::Under => 'U',
        };
        write!(f, "{}{}{}", s, self.crossing, self.sign)
    }
}

/// A validated signed Gauss code: every crossing label occurs exactly twice,
/// once over and once under, with equal signs. Labels are normalized to
/// 1..=n by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGaussCode {
    passages: Vec<Passage>,
}

impl SignedGaussCode {
    /// Validate and normalize a passage sequence.
    pub fn new(passages: Vec<Passage>) -> Result<Self, CodeError> {
        let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
        let mut normalized = Vec::with_capacity(passages.len());
        for p in &passages {
            let next = relabel.len() as u32 + 1;
            let label = *relabel.entry(p.crossing).or_insert(next);
            normalized.push(Passage { crossing: label, ..*p });
        }
        let mut seen: BTreeMap<u32, Vec<Passage>> = BTreeMap::new();
        for p in &normalized {
            seen.entry(p.crossing).or_default().push(*p);
        }
        for (label, ps) in &seen {
            if ps.len() != 2 {
                return Err(CodeError::LabelCountNotTwo { label: *label, count: ps.len() });
            }
            if ps[0].strand == ps[1].strand {
                return Err(CodeError::OverUnderMismatch(*label));
            }
            if ps[0].sign != ps[1].sign {
                return Err(CodeError::SignMismatch(*label));
            }
        }
        Ok(SignedGaussCode { passages: normalized })
    }

    /// The empty code: a diagram of the trivial long knot.
    pub fn empty() -> Self {
        SignedGaussCode { passages: Vec::new() }
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// Number of crossings.
    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    /// Crossing labels in increasing order (always 1..=n after normalization).
    pub fn labels(&self) -> Vec<u32> {
        (1..=self.crossing_count() as u32).collect()
    }

    /// Positions (0-based) of the two passages of a crossing.
    pub fn positions_of(&self, label: u32) -> Result<(usize, usize), CodeError> {
        let mut found = Vec::with_capacity(2);
        for (i, p) in self.passages.iter().enumerate() {
            if p.crossing == label {
                found.push(i);
            }
        }
        match found.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(CodeError::UnknownLabel(label)),
        }
    }

    pub fn sign_of(&self, label: u32) -> Result<Sign, CodeError> {
        self.passages
            .iter()
            .find(|p| p.crossing == label)
            .map(|p| p.sign)
            .ok_or(CodeError::UnknownLabel(label))
    }

    /// Blackboard framing number: the sum of one sign per crossing.
    pub fn writhe(&self) -> i64 {
        self.passages.iter().map(|p| p.sign.value()).sum::<i64>() / 2
    }

    /// Switch a crossing: its two passages swap over/under and flip sign.
    /// Applying twice is the identity.
    pub fn crossing_change(&self, label: u32) -> Result<Self, CodeError> {
        self.positions_of(label)?;
        let passages = self
            .passages
            .iter()
            .map(|p| {
                if p.crossing == label {
                    Passage { strand: p.strand.flipped(), crossing: p.crossing, sign: p.sign.flipped() }
                } else {
                    *p
                }
            })
            .collect();
        Ok(SignedGaussCode { passages })
    }

    /// Force the listed crossings to the requested signs, switching where needed.
    pub fn resolve(&self, assignment: &[(u32, Sign)]) -> Result<Self, CodeError> {
        let mut code = self.clone();
        for &(label, want) in assignment {
            if code.sign_of(label)? != want {
                code = code.crossing_change(label)?;
            }
        }
        Ok(code)
    }

    /// Mirror image: every passage swaps over/under and flips sign.
    pub fn mirror(&self) -> Self {
        let passages = self
            .passages
            .iter()
            .map(|p| Passage { strand: p.strand.flipped(), crossing: p.crossing, sign: p.sign.flipped() })
            .collect();
        SignedGaussCode { passages }
    }

    /// Canonical text form; inverse of [`parse_gauss_code`] on normalized text.
    pub fn to_text(&self) -> String {
        let toks: Vec<String> = self.passages.iter().map(|p| p.to_string()).collect();
        toks.join(" ")
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parse whitespace-separated `O<k><s>` / `U<k><s>` tokens, `s` in `{+,-}`.
/// Anything after `#` on a line is a comment.
pub fn parse_gauss_code(text: &str) -> Result<SignedGaussCode, CodeError> {
    let mut passages = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            passages.push(parse_token(tok)?);
        }
    }
    SignedGaussCode::new(passages)
}

fn parse_token(tok: &str) -> Result<Passage, CodeError> {
    let err = || CodeError::MalformedToken(tok.to_string());
    let mut chars = tok.chars();
    let strand = match chars.next() {
        Some('O') => Strand::Over,
        Some('U') => Strand::Under,
        _ => return Err(err()),
    };
    let body: &str = chars.as_str();
    if body.len() < 2 {
        return Err(err());
    }
    let (digits, sign_str) = body.split_at(body.len() - 1);
    let sign = match sign_str {
        "+" => Sign::Plus,
        "-" | "\u{2212}" => Sign::Minus,
        _ => return Err(err()),
    };
    let crossing: u32 = digits.parse().map_err(|_| err())?;
    if crossing == 0 {
        return Err(err());
    }
    Ok(Passage { strand, crossing, sign })
}

/// One line of a catalog file: a named diagram with its expected invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub code: SignedGaussCode,
    pub expected_v2: i64,
    pub expected_v3: i64,
}

/// Parse a catalog: `name<TAB>gauss_code<TAB>expected_v2<TAB>expected_v3`,
/// one knot per line, `#` begins a comment.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CodeError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(CodeError::BadCatalogRecord {
                line: lineno + 1,
                reason: format!("expected 4 tab-separated fields, got {}", fields.len()),
            });
        }
        let code = parse_gauss_code(fields[1])?;
        let expected_v2 = fields[2].trim().parse().map_err(|_| CodeError::BadCatalogRecord {
            line: lineno + 1,
            reason: format!("bad v2 field `{}`", fields[2]),
        })?;
        let expected_v3 = fields[3].trim().parse().map_err(|_| CodeError::BadCatalogRecord {
            line: lineno + 1,
            reason: format!("bad v3 field `{}`", fields[3]),
        })?;
        out.push(CatalogEntry { name: fields[0].trim().to_string(), code, expected_v2, expected_v3 });
    }
    Ok(out)
}

/// The shipped catalog.
///
/// `5_2` is the 5-crossing twist knot in an alternating diagram obtained from
/// the standard trefoil by clasping the left tail (writhe +5); `3_1+kink` is
/// the right trefoil with one positive kink, whose kinked 3-subsets exercise
/// the Type I cycle.
pub const CATALOG_TEXT: &str = "\
# name\tgauss code\tv2\tv3
unknot\t\t0\t0
3_1+\tO1+ U2+ O3+ U1+ O2+ U3+\t1\t1
3_1-\tU1- O2- U3- O1- U2- O3-\t1\t-1
4_1\tO1+ U2- O4- U1+ O3+ U4- O2- U3+\t-1\t0
5_2\tU1+ O2+ U3+ O4+ U5+ O3+ U2+ O1+ U4+ O5+\t2\t3
3_1+kink\tU1+ O1+ U2+ O3+ U4+ O2+ U3+ O4+\t1\t1
";

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(CATALOG_TEXT).expect("builtin catalog parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SignedGaussCode {
        parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").unwrap()
    }

    fn figure_eight() -> SignedGaussCode {
        parse_gauss_code("O1+ U2- O4- U1+ O3+ U4- O2- U3+").unwrap()
    }

    #[test]
    fn parse_trefoil() {
        let c = trefoil();
        assert_eq!(c.crossing_count(), 3);
        assert_eq!(c.to_text(), "O1+ U2+ O3+ U1+ O2+ U3+");
    }

    #[test]
    fn parse_empty() {
        let c = parse_gauss_code("").unwrap();
        assert_eq!(c.crossing_count(), 0);
        assert_eq!(c.to_text(), "");
    }

    #[test]
    fn parse_comments_and_lines() {
        let c = parse_gauss_code("O1+ U2+ # tail\nO3+ U1+ O2+ U3+\n").unwrap();
        assert_eq!(c, trefoil());
    }

    #[test]
    fn normalization_relabels_by_first_appearance() {
        let c = parse_gauss_code("O7+ U42+ O9+ U7+ O42+ U9+").unwrap();
        assert_eq!(c.to_text(), "O1+ U2+ O3+ U1+ O2+ U3+");
    }

    #[test]
    fn reject_malformed_token() {
        for bad in ["X1+", "O+", "O1", "O0+", "Oxyz+", "U3*"] {
            assert!(matches!(parse_gauss_code(bad), Err(CodeError::MalformedToken(_))), "{bad}");
        }
    }

    #[test]
    fn reject_label_count() {
        let err = parse_gauss_code("O1+ U1+ O1+").unwrap_err();
        assert_eq!(err, CodeError::LabelCountNotTwo { label: 1, count: 3 });
    }

    #[test]
    fn reject_over_under_mismatch() {
        let err = parse_gauss_code("O1+ O1+").unwrap_err();
        assert_eq!(err, CodeError::OverUnderMismatch(1));
    }

    #[test]
    fn reject_sign_mismatch() {
        let err = parse_gauss_code("O1+ U1-").unwrap_err();
        assert_eq!(err, CodeError::SignMismatch(1));
    }

    #[test]
    fn writhe_values() {
        assert_eq!(trefoil().writhe(), 3);
        assert_eq!(figure_eight().writhe(), 0);
        // figure-eight with crossings 1,2,3 forced negative: writhe -4
        let g = figure_eight()
            .resolve(&[(1, Sign::Minus), (2, Sign::Minus), (3, Sign::Minus)])
            .unwrap();
        assert_eq!(g.writhe(), -4);
    }

    #[test]
    fn crossing_change_is_involution() {
        let c = trefoil();
        let once = c.crossing_change(1).unwrap();
        assert_eq!(once.writhe(), 1);
        assert_eq!(once.crossing_change(1).unwrap(), c);
    }

    #[test]
    fn crossing_change_unknown_label() {
        assert_eq!(trefoil().crossing_change(9).unwrap_err(), CodeError::UnknownLabel(9));
    }

    #[test]
    fn resolve_noop_and_full_negation() {
        let c = trefoil();
        let same = c.resolve(&[(1, Sign::Plus), (2, Sign::Plus), (3, Sign::Plus)]).unwrap();
        assert_eq!(same, c);
        let left = c
            .resolve(&[(1, Sign::Minus), (2, Sign::Minus), (3, Sign::Minus)])
            .unwrap();
        assert_eq!(left.writhe(), -3);
        assert_eq!(left.to_text(), "U1- O2- U3- O1- U2- O3-");
    }

    #[test]
    fn catalog_roundtrip() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 6);
        assert_eq!(cat[0].name, "unknot");
        assert!(cat[0].code.is_empty());
        assert_eq!(cat[4].name, "5_2");
        assert_eq!(cat[4].code.crossing_count(), 5);
        assert_eq!(cat[4].code.writhe(), 5);
    }

    #[test]
    fn catalog_bad_record() {
        assert!(matches!(
            parse_catalog("name\tO1+ U1+\t0"),
            Err(CodeError::BadCatalogRecord { line: 1, .. })
        ));
    }
}
