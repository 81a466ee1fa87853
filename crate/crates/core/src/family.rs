use core::fmt;
use core::str::FromStr;

use crate::diagram::{Letter, Word};

/// Letter used for the single self-dual strand of the pivotal families.
pub const PIVOTAL_LETTER: Letter = 0;

/// The six diagram monoid families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Temperley–Lieb on `2n` self-dual strands.
    Tl,
    /// Motzkin on `2n` self-dual strands.
    Mo,
    /// Planar rook on `2n` self-dual strands.
    PRo,
    /// Rigid Temperley–Lieb on `(1 2)^n`.
    RTl,
    /// Rigid Motzkin on `(1 2)^n`.
    RMo,
    /// Rigid planar rook on `(1 2)^n`.
    RpRo,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Tl,
        Family::Mo,
        Family::PRo,
        Family::RTl,
        Family::RMo,
        Family::RpRo,
    ];

    pub fn is_rigid(self) -> bool {
        matches!(self, Family::RTl | Family::RMo | Family::RpRo)
    }

    /// Families whose diagrams may contain cups and caps.
    pub fn allows_arcs(self) -> bool {
        !matches!(self, Family::PRo | Family::RpRo)
    }

    /// Families whose diagrams may contain unpaired points.
    pub fn allows_dots(self) -> bool {
        !matches!(self, Family::Tl | Family::RTl)
    }

    /// The object whose endomorphisms form the monoid of size `n`.
    ///
    /// Rigid families use `(1 2)^n`, pivotal ones a constant word of
    /// length `2n`.
    pub fn word(self, n: usize) -> Word {
        if self.is_rigid() {
            Word::new((0..2 * n).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect())
        } else {
            Word::new(alloc::vec![PIVOTAL_LETTER; 2 * n])
        }
    }

    /// Short lowercase tag used on the command line and in file headers.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Tl => "tl",
            Family::Mo => "mo",
            Family::PRo => "pro",
            Family::RTl => "rtl",
            Family::RMo => "rmo",
            Family::RpRo => "rpro",
        }
    }

    /// Display name as used in tables, e.g. `rTL`.
    pub fn name(self) -> &'static str {
        match self {
            Family::Tl => "TL",
            Family::Mo => "Mo",
            Family::PRo => "pRo",
            Family::RTl => "rTL",
            Family::RMo => "rMo",
            Family::RpRo => "rpRo",
        }
    }

    /// Whether a through-strand count `k` can occur at size `n`.
    ///
    /// Only parity and range are checked; rigid Motzkin and rook cells can
    /// still be empty for particular sequences.
    pub fn k_feasible(self, n: usize, k: usize) -> bool {
        if k > 2 * n {
            return false;
        }
        match self {
            Family::Tl => k.is_multiple_of(2),
            Family::RTl => k.is_multiple_of(2) && k >= 2,
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family `{0}` (expected one of tl, mo, pro, rtl, rmo, rpro)")]
pub struct UnknownFamily(pub alloc::string::String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == lower)
            .ok_or_else(|| UnknownFamily(s.into()))
    }
}
