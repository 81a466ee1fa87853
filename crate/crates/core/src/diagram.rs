//! Boundary words and planar diagrams.
//!
//! A [`Diagram`] from a bottom word to a top word is a partition of the
//! boundary points into parts of size one (dots) and two (through strands,
//! bottom arcs and top arcs). Internally every point stores the index of
//! its partner: bottom positions come first (`0..nb`), then top positions
//! (`nb..nb + nt`).
//!
//! Arc orientation follows the drawn pictures: a bottom arc closes a letter
//! `x` with a later `x - 1`, a top arc closes `x` with a later `x + 1`.
//! Pivotal families use one self-dual letter, so their arcs only need equal
//! letters.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::family::Family;

pub type Letter = i32;

/// Sentinel partner value for an unpaired point.
pub(crate) const FREE: u16 = u16::MAX;
const UNSET: u16 = u16::MAX - 1;
/// Largest number of boundary points a diagram can carry.
pub const MAX_POINTS: usize = (u16::MAX - 2) as usize;

/// A finite word of integer letters; the empty word is the monoidal unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Comma separated letters, as used by the text grammar.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{l}");
        }
        s
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Top,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Bottom => "bottom",
            Side::Top => "top",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Through,
    BottomArc,
    TopArc,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Through => "through strand",
            PairKind::BottomArc => "bottom arc",
            PairKind::TopArc => "top arc",
        })
    }
}

/// Which way round the rigid arc letter rule is read.
///
/// [`ArcOrientation::Picture`] is the one used everywhere; the mirrored
/// reading exists so the self check can demonstrate that a flipped rule is
/// caught.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArcOrientation {
    #[default]
    Picture,
    Mirrored,
}

impl ArcOrientation {
    fn bottom_ok(self, rigid: bool, left: Letter, right: Letter) -> bool {
        if !rigid {
            return left == right;
        }
        match self {
            ArcOrientation::Picture => left == right + 1,
            ArcOrientation::Mirrored => left + 1 == right,
        }
    }

    fn top_ok(self, rigid: bool, left: Letter, right: Letter) -> bool {
        if !rigid {
            return left == right;
        }
        match self {
            ArcOrientation::Picture => left + 1 == right,
            ArcOrientation::Mirrored => left == right + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("{side} position {position} is outside 1..={len}")]
    PositionOutOfRange {
        side: Side,
        position: usize,
        len: usize,
    },
    #[error("{side} position {position} is used more than once")]
    DuplicatePosition { side: Side, position: usize },
    #[error("letter mismatch in {kind} ({p},{q}): letters {left} and {right}")]
    LetterMismatch {
        kind: PairKind,
        p: usize,
        q: usize,
        left: Letter,
        right: Letter,
    },
    #[error("crossing pairs: {first} and {second}")]
    CrossingPairs { first: String, second: String },
    #[error("{side} position {position} is not covered by any part")]
    UncoveredPosition { side: Side, position: usize },
    #[error("family {family} does not allow {what}")]
    FamilyViolation { family: Family, what: &'static str },
    #[error("boundary mismatch: lower top word [{lower_top}] differs from upper bottom word [{upper_bottom}]")]
    BoundaryMismatch {
        lower_top: String,
        upper_bottom: String,
    },
    #[error("not an endomorphism: bottom [{bottom}] differs from top [{top}]")]
    NotEndomorphism { bottom: String, top: String },
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: &'static str },
    #[error("too many boundary points ({0})")]
    TooLarge(usize),
}

/// Raw 1-based pair and dot lists, the input of [`Diagram::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    /// `(bottom position, top position)`.
    pub through: Vec<(usize, usize)>,
    pub bottom_arcs: Vec<(usize, usize)>,
    pub top_arcs: Vec<(usize, usize)>,
    pub bottom_dots: Vec<usize>,
    pub top_dots: Vec<usize>,
}

/// Order-comparable byte encoding of a diagram, unique per diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A planar diagram between two boundary words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    bottom: Word,
    top: Word,
    links: Vec<u16>,
}

/// Result of [`Diagram::sandwich_factor`]: the diagram equals `bottom`
/// followed by `identity(alpha)` followed by `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichFactor {
    /// Maps `alpha` to the original top word.
    pub top: Diagram,
    /// Letters carried by the through strands, left to right.
    pub alpha: Word,
    /// Maps the original bottom word to `alpha`.
    pub bottom: Diagram,
}

impl Diagram {
    /// Checks a raw pairing against every diagram rule of `family`.
    pub fn validate(
        bottom: Word,
        top: Word,
        pairing: &Pairing,
        family: Family,
    ) -> Result<Diagram, DiagramError> {
        Self::validate_with(bottom, top, pairing, family, ArcOrientation::Picture)
    }

    pub fn validate_with(
        bottom: Word,
        top: Word,
        pairing: &Pairing,
        family: Family,
        orientation: ArcOrientation,
    ) -> Result<Diagram, DiagramError> {
        let nb = bottom.len();
        let nt = top.len();
        if nb + nt > MAX_POINTS {
            return Err(DiagramError::TooLarge(nb + nt));
        }
        let mut links = vec![UNSET; nb + nt];
        let mut seen = vec![false; nb + nt];

        let mut claim = |side: Side, pos: usize| -> Result<usize, DiagramError> {
            let len = if side == Side::Bottom { nb } else { nt };
            if pos == 0 || pos > len {
                return Err(DiagramError::PositionOutOfRange {
                    side,
                    position: pos,
                    len,
                });
            }
            let idx = if side == Side::Bottom { pos - 1 } else { nb + pos - 1 };
            if seen[idx] {
                return Err(DiagramError::DuplicatePosition {
                    side,
                    position: pos,
                });
            }
            seen[idx] = true;
            Ok(idx)
        };

        for &(p, q) in &pairing.through {
            let a = claim(Side::Bottom, p)?;
            let b = claim(Side::Top, q)?;
            links[a] = b as u16;
            links[b] = a as u16;
        }
        for &(p, q) in &pairing.bottom_arcs {
            let (p, q) = (p.min(q), p.max(q));
            let a = claim(Side::Bottom, p)?;
            let b = claim(Side::Bottom, q)?;
            links[a] = b as u16;
            links[b] = a as u16;
        }
        for &(p, q) in &pairing.top_arcs {
            let (p, q) = (p.min(q), p.max(q));
            let a = claim(Side::Top, p)?;
            let b = claim(Side::Top, q)?;
            links[a] = b as u16;
            links[b] = a as u16;
        }
        for &p in &pairing.bottom_dots {
            let a = claim(Side::Bottom, p)?;
            links[a] = FREE;
        }
        for &p in &pairing.top_dots {
            let a = claim(Side::Top, p)?;
            links[a] = FREE;
        }

        let has_dots = !pairing.bottom_dots.is_empty() || !pairing.top_dots.is_empty();
        if has_dots && !family.allows_dots() {
            return Err(DiagramError::FamilyViolation {
                family,
                what: "dots",
            });
        }
        let has_arcs = !pairing.bottom_arcs.is_empty() || !pairing.top_arcs.is_empty();
        if has_arcs && !family.allows_arcs() {
            return Err(DiagramError::FamilyViolation {
                family,
                what: "arcs",
            });
        }

        let rigid = family.is_rigid();
        let bl = bottom.letters();
        let tl = top.letters();
        for &(p, q) in &pairing.through {
            if bl[p - 1] != tl[q - 1] {
                return Err(DiagramError::LetterMismatch {
                    kind: PairKind::Through,
                    p,
                    q,
                    left: bl[p - 1],
                    right: tl[q - 1],
                });
            }
        }
        for &(p, q) in &pairing.bottom_arcs {
            let (p, q) = (p.min(q), p.max(q));
            if !orientation.bottom_ok(rigid, bl[p - 1], bl[q - 1]) {
                return Err(DiagramError::LetterMismatch {
                    kind: PairKind::BottomArc,
                    p,
                    q,
                    left: bl[p - 1],
                    right: bl[q - 1],
                });
            }
        }
        for &(p, q) in &pairing.top_arcs {
            let (p, q) = (p.min(q), p.max(q));
            if !orientation.top_ok(rigid, tl[p - 1], tl[q - 1]) {
                return Err(DiagramError::LetterMismatch {
                    kind: PairKind::TopArc,
                    p,
                    q,
                    left: tl[p - 1],
                    right: tl[q - 1],
                });
            }
        }

        if let Some(idx) = links.iter().position(|&l| l == UNSET) {
            let (side, position) = if idx < nb {
                (Side::Bottom, idx + 1)
            } else {
                (Side::Top, idx - nb + 1)
            };
            return Err(DiagramError::UncoveredPosition { side, position });
        }

        let d = Diagram { bottom, top, links };
        d.check_planar()?;
        Ok(d)
    }

    /// Builds a diagram from partner links without checking any rule.
    pub(crate) fn from_links(bottom: Word, top: Word, links: Vec<u16>) -> Diagram {
        debug_assert_eq!(links.len(), bottom.len() + top.len());
        Diagram { bottom, top, links }
    }

    /// Position of a point when walking the boundary bottom left to right,
    /// then top right to left.
    fn cyclic_index(&self, point: usize) -> usize {
        let nb = self.bottom.len();
        if point < nb {
            point
        } else {
            nb + self.top.len() - 1 - (point - nb)
        }
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let total = self.links.len();
        let mut order = vec![0usize; total];
        for p in 0..total {
            order[self.cyclic_index(p)] = p;
        }
        let mut stack: Vec<usize> = Vec::new();
        for (c, &p) in order.iter().enumerate() {
            let q = self.links[p];
            if q == FREE {
                continue;
            }
            let cq = self.cyclic_index(q as usize);
            if cq > c {
                stack.push(p);
            } else {
                match stack.pop() {
                    Some(open) if open == q as usize => {}
                    Some(open) => {
                        return Err(DiagramError::CrossingPairs {
                            first: self.token_for(open),
                            second: self.token_for(p),
                        })
                    }
                    None => unreachable!("partner visited before its opening point"),
                }
            }
        }
        Ok(())
    }

    pub fn identity(word: &Word) -> Diagram {
        let n = word.len();
        let mut links = Vec::with_capacity(2 * n);
        links.extend((0..n).map(|i| (n + i) as u16));
        links.extend((0..n).map(|i| i as u16));
        Diagram {
            bottom: word.clone(),
            top: word.clone(),
            links,
        }
    }

    pub fn empty() -> Diagram {
        Diagram::identity(&Word::empty())
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub(crate) fn links(&self) -> &[u16] {
        &self.links
    }

    pub fn is_endomorphism(&self) -> bool {
        self.bottom == self.top
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && *self == Diagram::identity(&self.bottom)
    }

    /// Through strands as 1-based `(bottom, top)` pairs, left to right.
    pub fn through(&self) -> Vec<(usize, usize)> {
        let nb = self.bottom.len();
        (0..nb)
            .filter_map(|p| {
                let q = self.links[p];
                (q != FREE && q as usize >= nb).then(|| (p + 1, q as usize - nb + 1))
            })
            .collect()
    }

    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        let nb = self.bottom.len();
        (0..nb)
            .filter_map(|p| {
                let q = self.links[p];
                (q != FREE && (q as usize) < nb && p < q as usize).then(|| (p + 1, q as usize + 1))
            })
            .collect()
    }

    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        let nb = self.bottom.len();
        (nb..self.links.len())
            .filter_map(|p| {
                let q = self.links[p];
                (q != FREE && q as usize >= nb && p < q as usize)
                    .then(|| (p - nb + 1, q as usize - nb + 1))
            })
            .collect()
    }

    pub fn bottom_dots(&self) -> Vec<usize> {
        (0..self.bottom.len())
            .filter(|&p| self.links[p] == FREE)
            .map(|p| p + 1)
            .collect()
    }

    pub fn top_dots(&self) -> Vec<usize> {
        let nb = self.bottom.len();
        (nb..self.links.len())
            .filter(|&p| self.links[p] == FREE)
            .map(|p| p - nb + 1)
            .collect()
    }

    pub fn pairing(&self) -> Pairing {
        Pairing {
            through: self.through(),
            bottom_arcs: self.bottom_arcs(),
            top_arcs: self.top_arcs(),
            bottom_dots: self.bottom_dots(),
            top_dots: self.top_dots(),
        }
    }

    pub fn through_count(&self) -> usize {
        let nb = self.bottom.len();
        self.links[..nb]
            .iter()
            .filter(|&&q| q != FREE && q as usize >= nb)
            .count()
    }

    /// Letters matched by the through strands, left to right.
    pub fn alpha(&self) -> Word {
        let nb = self.bottom.len();
        let letters = self.bottom.letters();
        Word::new(
            (0..nb)
                .filter(|&p| {
                    let q = self.links[p];
                    q != FREE && q as usize >= nb
                })
                .map(|p| letters[p])
                .collect(),
        )
    }

    /// Vertical composition: `self` below, `upper` on top.
    ///
    /// Closed components in the middle are discarded; a path that ends on a
    /// middle dot leaves a dot on its outer endpoint.
    pub fn compose(&self, upper: &Diagram) -> Result<Diagram, DiagramError> {
        if self.top != upper.bottom {
            return Err(DiagramError::BoundaryMismatch {
                lower_top: self.top.to_csv(),
                upper_bottom: upper.bottom.to_csv(),
            });
        }
        let mut links = Vec::new();
        compose_links(self, upper, &mut links);
        Ok(Diagram {
            bottom: self.bottom.clone(),
            top: upper.top.clone(),
            links,
        })
    }

    /// Horizontal concatenation, `other` to the right of `self`.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (nb1, nt1) = (self.bottom.len(), self.top.len());
        let (nb2, nt2) = (other.bottom.len(), other.top.len());
        let nb = nb1 + nb2;
        let map1 = |p: usize| if p < nb1 { p } else { nb + (p - nb1) };
        let map2 = |p: usize| {
            if p < nb2 {
                nb1 + p
            } else {
                nb + nt1 + (p - nb2)
            }
        };
        let mut links = vec![FREE; nb + nt1 + nt2];
        for (p, &q) in self.links.iter().enumerate() {
            if q != FREE {
                links[map1(p)] = map1(q as usize) as u16;
            }
        }
        for (p, &q) in other.links.iter().enumerate() {
            if q != FREE {
                links[map2(p)] = map2(q as usize) as u16;
            }
        }
        Diagram {
            bottom: self.bottom.concat(&other.bottom),
            top: self.top.concat(&other.top),
            links,
        }
    }

    /// Turns the diagram upside down.
    pub fn flip(&self) -> Diagram {
        let nb = self.bottom.len();
        let nt = self.top.len();
        let map = |p: usize| if p < nb { nt + p } else { p - nb };
        let mut links = vec![FREE; nb + nt];
        for (p, &q) in self.links.iter().enumerate() {
            if q != FREE {
                links[map(p)] = map(q as usize) as u16;
            }
        }
        Diagram {
            bottom: self.top.clone(),
            top: self.bottom.clone(),
            links,
        }
    }

    /// Splits an endomorphism into bottom half, through-strand letters and
    /// top half.
    pub fn sandwich_factor(&self) -> Result<SandwichFactor, DiagramError> {
        if !self.is_endomorphism() {
            return Err(DiagramError::NotEndomorphism {
                bottom: self.bottom.to_csv(),
                top: self.top.to_csv(),
            });
        }
        let nb = self.bottom.len();
        let nt = self.top.len();
        let through = self.through();
        let k = through.len();
        let alpha = Word::new(
            through
                .iter()
                .map(|&(p, _)| self.bottom.letters()[p - 1])
                .collect(),
        );

        let mut bl = vec![FREE; nb + k];
        for p in 0..nb {
            let q = self.links[p];
            if q != FREE && (q as usize) < nb {
                bl[p] = q;
            }
        }
        let mut tl = vec![FREE; k + nt];
        for q in 0..nt {
            let r = self.links[nb + q];
            if r != FREE && r as usize >= nb {
                tl[k + q] = (k + r as usize - nb) as u16;
            }
        }
        for (i, &(p, q)) in through.iter().enumerate() {
            bl[p - 1] = (nb + i) as u16;
            bl[nb + i] = (p - 1) as u16;
            tl[i] = (k + q - 1) as u16;
            tl[k + q - 1] = i as u16;
        }
        Ok(SandwichFactor {
            top: Diagram::from_links(alpha.clone(), self.top.clone(), tl),
            bottom: Diagram::from_links(self.bottom.clone(), alpha.clone(), bl),
            alpha,
        })
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut bytes = Vec::with_capacity(4 + 4 * (self.bottom.len() + self.top.len()) + 2 * self.links.len());
        for w in [&self.bottom, &self.top] {
            bytes.extend_from_slice(&(w.len() as u16).to_be_bytes());
            for &l in w.letters() {
                // flip the sign bit so byte order matches numeric order
                bytes.extend_from_slice(&((l as u32) ^ 0x8000_0000).to_be_bytes());
            }
        }
        for &l in &self.links {
            bytes.extend_from_slice(&l.to_be_bytes());
        }
        CanonicalKey(bytes)
    }

    fn token_for(&self, point: usize) -> String {
        let nb = self.bottom.len();
        let q = self.links[point];
        if q == FREE {
            return if point < nb {
                alloc::format!("Db({})", point + 1)
            } else {
                alloc::format!("Dt({})", point - nb + 1)
            };
        }
        let (a, b) = (point.min(q as usize), point.max(q as usize));
        if b < nb {
            alloc::format!("B({},{})", a + 1, b + 1)
        } else if a >= nb {
            alloc::format!("U({},{})", a - nb + 1, b - nb + 1)
        } else {
            alloc::format!("T({},{})", a + 1, b - nb + 1)
        }
    }

    /// The canonical text line (without trailing newline).
    pub fn to_line(&self) -> String {
        let mut tokens: Vec<String> = Vec::new();
        for p in 0..self.links.len() {
            let q = self.links[p];
            if q == FREE || p < q as usize {
                tokens.push(self.token_for(p));
            }
        }
        tokens.sort();
        let mut s = String::new();
        s.push_str(&self.bottom.to_csv());
        s.push(';');
        s.push_str(&self.top.to_csv());
        s.push(';');
        s.push_str(&tokens.join(" "));
        s
    }

    /// Parses a canonical text line (an optional trailing `\n` is accepted)
    /// and validates it for `family`.
    pub fn parse_line(text: &str, family: Family) -> Result<Diagram, DiagramError> {
        let (bottom, top, pairing) = parse_parts(text)?;
        Diagram::validate(bottom, top, &pairing, family)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Writes the partner links of `lower` followed by `upper` into `out`.
///
/// The caller guarantees `lower.top == upper.bottom`.
pub(crate) fn compose_links(lower: &Diagram, upper: &Diagram, out: &mut Vec<u16>) {
    let nbf = lower.bottom.len();
    let mid = upper.bottom.len();
    let ntg = upper.top.len();
    out.clear();
    out.resize(nbf + ntg, UNSET);
    let f = &lower.links;
    let g = &upper.links;
    for r in 0..nbf + ntg {
        if out[r] != UNSET {
            continue;
        }
        let (mut in_upper, mut pt) = if r < nbf { (false, r) } else { (true, mid + r - nbf) };
        let end = loop {
            let q = if in_upper { g[pt] } else { f[pt] };
            if q == FREE {
                break None;
            }
            let q = q as usize;
            if in_upper {
                if q >= mid {
                    break Some(nbf + q - mid);
                }
                in_upper = false;
                pt = nbf + q;
            } else {
                if q < nbf {
                    break Some(q);
                }
                in_upper = true;
                pt = q - nbf;
            }
        };
        match end {
            Some(e) => {
                out[r] = e as u16;
                out[e] = r as u16;
            }
            None => out[r] = FREE,
        }
    }
}

fn parse_err(offset: usize, reason: &'static str) -> DiagramError {
    DiagramError::Parse { offset, reason }
}

fn parse_word(s: &str, base: usize) -> Result<Word, DiagramError> {
    if s.is_empty() {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    let mut offset = base;
    for part in s.split(',') {
        let l: Letter = part
            .parse()
            .map_err(|_| parse_err(offset, "expected an integer letter"))?;
        if part.starts_with('+') {
            return Err(parse_err(offset, "expected an integer letter"));
        }
        letters.push(l);
        offset += part.len() + 1;
    }
    Ok(Word::new(letters))
}

fn parse_position(s: &str, offset: usize) -> Result<usize, DiagramError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(offset, "expected a positive position"));
    }
    s.parse()
        .map_err(|_| parse_err(offset, "position does not fit"))
}

fn parse_parts(text: &str) -> Result<(Word, Word, Pairing), DiagramError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    if let Some(i) = text.bytes().position(|b| !b.is_ascii() || b == b'\n' || b == b'\r') {
        return Err(parse_err(i, "unexpected character"));
    }
    let mut parts = text.splitn(3, ';');
    let bottom_s = parts.next().unwrap_or("");
    let top_s = parts
        .next()
        .ok_or_else(|| parse_err(text.len(), "missing `;` after bottom word"))?;
    let tokens_s = parts
        .next()
        .ok_or_else(|| parse_err(text.len(), "missing `;` after top word"))?;
    if tokens_s.contains(';') {
        let at = bottom_s.len() + top_s.len() + 2 + tokens_s.find(';').unwrap_or(0);
        return Err(parse_err(at, "unexpected `;`"));
    }
    let bottom = parse_word(bottom_s, 0)?;
    let top_base = bottom_s.len() + 1;
    let top = parse_word(top_s, top_base)?;

    let mut pairing = Pairing::default();
    let mut offset = top_base + top_s.len() + 1;
    if !tokens_s.is_empty() {
        for tok in tokens_s.split(' ') {
            parse_token(tok, offset, &mut pairing)?;
            offset += tok.len() + 1;
        }
    }
    Ok((bottom, top, pairing))
}

fn parse_token(tok: &str, offset: usize, pairing: &mut Pairing) -> Result<(), DiagramError> {
    let open = tok
        .find('(')
        .ok_or_else(|| parse_err(offset, "expected a token like T(p,q)"))?;
    if !tok.ends_with(')') {
        return Err(parse_err(offset + tok.len(), "expected `)`"));
    }
    let head = &tok[..open];
    let body = &tok[open + 1..tok.len() - 1];
    let body_offset = offset + open + 1;
    let pair = |body: &str| -> Result<(usize, usize), DiagramError> {
        let comma = body
            .find(',')
            .ok_or_else(|| parse_err(body_offset, "expected `p,q`"))?;
        let p = parse_position(&body[..comma], body_offset)?;
        let q = parse_position(&body[comma + 1..], body_offset + comma + 1)?;
        Ok((p, q))
    };
    match head {
        "T" => pairing.through.push(pair(body)?),
        "B" | "U" => {
            let (p, q) = pair(body)?;
            if p >= q {
                return Err(parse_err(body_offset, "arc positions must increase"));
            }
            if head == "B" {
                pairing.bottom_arcs.push((p, q));
            } else {
                pairing.top_arcs.push((p, q));
            }
        }
        "Db" => pairing.bottom_dots.push(parse_position(body, body_offset)?),
        "Dt" => pairing.top_dots.push(parse_position(body, body_offset)?),
        _ => return Err(parse_err(offset, "unknown token kind")),
    }
    Ok(())
}

impl Pairing {
    /// Convenience for tests and examples.
    pub fn through_only(pairs: &[(usize, usize)]) -> Pairing {
        Pairing {
            through: pairs.to_vec(),
            ..Pairing::default()
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl Word {
    /// Letters joined by single spaces, used in CSV columns.
    pub fn spaced(&self) -> String {
        self.0
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Letter]) -> Word {
        Word::from(v)
    }

    #[test]
    fn identity_validates() {
        let d = Diagram::validate(
            w(&[1, 2]),
            w(&[1, 2]),
            &Pairing::through_only(&[(1, 1), (2, 2)]),
            Family::RTl,
        )
        .unwrap();
        assert_eq!(d, Diagram::identity(&w(&[1, 2])));
        assert!(d.is_identity());
    }

    #[test]
    fn hom_example_is_valid() {
        let p = Pairing {
            through: vec![(1, 1), (6, 2)],
            bottom_arcs: vec![(2, 5), (3, 4)],
            ..Pairing::default()
        };
        let d = Diagram::validate(w(&[1, 2, 1, 0, 1, 2]), w(&[1, 2]), &p, Family::RTl).unwrap();
        assert_eq!(d.through_count(), 2);
        assert_eq!(d.alpha(), w(&[1, 2]));
    }

    #[test]
    fn wrong_arc_letters() {
        let p = Pairing {
            bottom_arcs: vec![(1, 2)],
            ..Pairing::default()
        };
        let err = Diagram::validate(w(&[1, 2]), w(&[1, 2]), &p, Family::RMo).unwrap_err();
        assert!(matches!(
            err,
            DiagramError::LetterMismatch {
                kind: PairKind::BottomArc,
                ..
            }
        ));
    }

    #[test]
    fn mirrored_orientation_rejects_the_hom_example() {
        let p = Pairing {
            through: vec![(1, 1), (6, 2)],
            bottom_arcs: vec![(2, 5), (3, 4)],
            ..Pairing::default()
        };
        let err = Diagram::validate_with(
            w(&[1, 2, 1, 0, 1, 2]),
            w(&[1, 2]),
            &p,
            Family::RTl,
            ArcOrientation::Mirrored,
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::LetterMismatch { .. }));
    }

    #[test]
    fn crossing_is_rejected() {
        // two through strands that swap order
        let p = Pairing::through_only(&[(1, 2), (2, 1)]);
        let err = Diagram::validate(w(&[0, 0]), w(&[0, 0]), &p, Family::Tl).unwrap_err();
        assert!(matches!(err, DiagramError::CrossingPairs { .. }));

        // a through strand under a bottom arc
        let p = Pairing {
            through: vec![(2, 1)],
            bottom_arcs: vec![(1, 3)],
            top_dots: vec![],
            ..Pairing::default()
        };
        let err = Diagram::validate(w(&[0, 0, 0]), w(&[0]), &p, Family::Tl).unwrap_err();
        assert!(matches!(err, DiagramError::CrossingPairs { .. }));

        // interleaved arcs
        let p = Pairing {
            bottom_arcs: vec![(1, 3), (2, 4)],
            ..Pairing::default()
        };
        let err = Diagram::validate(w(&[0; 4]), Word::empty(), &p, Family::Tl).unwrap_err();
        assert!(matches!(err, DiagramError::CrossingPairs { .. }));
    }

    #[test]
    fn family_and_coverage_errors() {
        let p = Pairing {
            through: vec![(1, 1)],
            bottom_dots: vec![2],
            top_dots: vec![2],
            ..Pairing::default()
        };
        let err = Diagram::validate(w(&[1, 2]), w(&[1, 2]), &p, Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::FamilyViolation { what: "dots", .. }));

        let p = Pairing {
            top_arcs: vec![(1, 2)],
            bottom_dots: vec![1, 2],
            ..Pairing::default()
        };
        let err = Diagram::validate(w(&[1, 2]), w(&[1, 2]), &p, Family::RpRo).unwrap_err();
        assert!(matches!(err, DiagramError::FamilyViolation { what: "arcs", .. }));

        let err = Diagram::validate(
            w(&[1, 2]),
            w(&[1, 2]),
            &Pairing::through_only(&[(1, 1)]),
            Family::RTl,
        )
        .unwrap_err();
        assert_eq!(
            err,
            DiagramError::UncoveredPosition {
                side: Side::Bottom,
                position: 2
            }
        );

        let err = Diagram::validate(
            w(&[1, 2]),
            w(&[1, 2]),
            &Pairing::through_only(&[(1, 1), (1, 2)]),
            Family::RTl,
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::DuplicatePosition { .. }));

        let err = Diagram::validate(
            w(&[1, 2]),
            w(&[1, 2]),
            &Pairing::through_only(&[(1, 1), (3, 2)]),
            Family::RTl,
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::PositionOutOfRange { .. }));
    }

    #[test]
    fn serialize_identity() {
        let d = Diagram::identity(&w(&[1, 2]));
        assert_eq!(d.to_line(), "1,2;1,2;T(1,1) T(2,2)");
        assert_eq!(Diagram::parse_line("1,2;1,2;T(1,1) T(2,2)\n", Family::RTl).unwrap(), d);
        assert_eq!(Diagram::empty().to_line(), ";;");
        assert_eq!(Diagram::parse_line(";;", Family::RTl).unwrap(), Diagram::empty());
    }

    #[test]
    fn parse_reports_missing_coverage() {
        let err = Diagram::parse_line("1,2;1,2;T(1,1)", Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::UncoveredPosition { .. }));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let err = Diagram::parse_line("1,x;1,2;T(1,1) T(2,2)", Family::RTl).unwrap_err();
        assert_eq!(
            err,
            DiagramError::Parse {
                offset: 2,
                reason: "expected an integer letter"
            }
        );
        let err = Diagram::parse_line("1,2;1,2;T(1,1) Q(2,2)", Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::Parse { offset: 15, .. }));
        let err = Diagram::parse_line("1,2;1,2", Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::Parse { .. }));
        let err = Diagram::parse_line("1,2;1,2;T(1,1)  T(2,2)", Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::Parse { .. }));
        let err = Diagram::parse_line("1,2;1,2;B(2,1)", Family::RTl).unwrap_err();
        assert!(matches!(err, DiagramError::Parse { .. }));
    }

    #[test]
    fn tokens_sort_as_strings() {
        let word: Vec<Letter> = vec![0; 10];
        let d = Diagram::identity(&w(&word));
        let line = d.to_line();
        assert!(line.ends_with("T(1,1) T(10,10) T(2,2) T(3,3) T(4,4) T(5,5) T(6,6) T(7,7) T(8,8) T(9,9)"));
    }

    #[test]
    fn zigzag_reduces_to_identity() {
        // cup on the top of (1) (0) -> wait: build 1 -> 1 0 1 via top arc
        // lower: bottom [2], top [2,1,2]? Use the rigid rules directly:
        // top arc closes x with a later x+1, bottom arc closes x with a later x-1.
        let lower = Diagram::validate(
            w(&[1]),
            w(&[1, 0, 1]),
            &Pairing {
                through: vec![(1, 3)],
                top_arcs: vec![(1, 2)],
                ..Pairing::default()
            },
            Family::RTl,
        );
        // (1,2) on top is letters 1,0: needs 1+1 == 0, invalid; the valid cup is 0,1 at (2,3)
        assert!(lower.is_err());
        let lower = Diagram::validate(
            w(&[1]),
            w(&[1, 0, 1]),
            &Pairing {
                through: vec![(1, 1)],
                top_arcs: vec![(2, 3)],
                ..Pairing::default()
            },
            Family::RTl,
        )
        .unwrap();
        let upper = Diagram::validate(
            w(&[1, 0, 1]),
            w(&[1]),
            &Pairing {
                through: vec![(3, 1)],
                bottom_arcs: vec![(1, 2)],
                ..Pairing::default()
            },
            Family::RTl,
        )
        .unwrap();
        assert!(lower.compose(&upper).unwrap().is_identity());
    }

    #[test]
    fn middle_dot_becomes_outer_dot() {
        let lower = Diagram::identity(&w(&[1, 2]));
        let upper = Diagram::validate(
            w(&[1, 2]),
            w(&[1, 2]),
            &Pairing {
                through: vec![(2, 2)],
                bottom_dots: vec![1],
                top_dots: vec![1],
                ..Pairing::default()
            },
            Family::RMo,
        )
        .unwrap();
        let c = lower.compose(&upper).unwrap();
        assert_eq!(c.bottom_dots(), vec![1]);
        assert_eq!(c.top_dots(), vec![1]);
        assert_eq!(c.through(), vec![(2, 2)]);
    }

    #[test]
    fn boundary_mismatch() {
        let a = Diagram::identity(&w(&[1, 2]));
        let b = Diagram::identity(&w(&[1]));
        assert!(matches!(
            a.compose(&b),
            Err(DiagramError::BoundaryMismatch { .. })
        ));
    }

    #[test]
    fn tensor_units_and_identities() {
        let id = Diagram::identity(&w(&[1, 2]));
        assert_eq!(Diagram::empty().tensor(&id), id);
        assert_eq!(id.tensor(&Diagram::empty()), id);
        assert_eq!(id.tensor(&id), Diagram::identity(&w(&[1, 2, 1, 2])));
    }

    #[test]
    fn identity_basics() {
        assert_eq!(Diagram::identity(&Word::empty()), Diagram::empty());
        assert_eq!(Diagram::identity(&w(&[1, 2])).through_count(), 2);
        let id = Diagram::identity(&w(&[1, 2, 1, 2]));
        assert_eq!(id.compose(&id).unwrap(), id);
        assert_eq!(id.flip(), id);
    }

    #[test]
    fn sandwich_of_identity() {
        let id = Diagram::identity(&w(&[1, 2, 1, 2]));
        let s = id.sandwich_factor().unwrap();
        assert_eq!(s.alpha, w(&[1, 2, 1, 2]));
        assert!(s.top.is_identity());
        assert!(s.bottom.is_identity());
    }

    #[test]
    fn sandwich_needs_endomorphism() {
        let d = Diagram::identity(&w(&[1])).tensor(&Diagram::empty());
        assert!(d.sandwich_factor().is_ok());
        let lower = Diagram::validate(
            w(&[1]),
            w(&[1, 0, 1]),
            &Pairing {
                through: vec![(1, 1)],
                top_arcs: vec![(2, 3)],
                ..Pairing::default()
            },
            Family::RTl,
        )
        .unwrap();
        assert!(matches!(
            lower.sandwich_factor(),
            Err(DiagramError::NotEndomorphism { .. })
        ));
    }

    #[test]
    fn canonical_keys_order_letters_numerically() {
        let a = Diagram::identity(&w(&[-1]));
        let b = Diagram::identity(&w(&[0]));
        let c = Diagram::identity(&w(&[3]));
        assert!(a.canonical_key() < b.canonical_key());
        assert!(b.canonical_key() < c.canonical_key());
    }
}
