//! Cell modules, Gram matrices, simple dimensions, truncation windows and
//! representation gaps.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{self, CellSide, RigidCounts};
use crate::diagram::{Diagram, Word};
use crate::family::Family;
use crate::green::{GreenStructure, JCell};
use crate::linalg::{self, Field, LinalgError};
use crate::monoids::MonoidTable;
use crate::numeric::{isqrt, log10_big};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReprError {
    #[error("empty truncation window for {family} at n={n}")]
    EmptyWindow { family: Family, n: usize },
    #[error("no nontrivial apex for {family} at n={n}")]
    NoApex { family: Family, n: usize },
    #[error("no J-cell {0}")]
    NoSuchCell(usize),
    #[error("J-cell {0} contains no idempotent")]
    NotIdempotent(usize),
    #[error("closed-form semisimple dimensions are only available for rigid families")]
    NeedsEnumeration,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Combinat(#[from] combinat::CombinatError),
}

/// Which one-sided cell a module lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleSide {
    /// Basis is a left cell; elements act by multiplication on the left.
    Left,
    /// Basis is a right cell; elements act on the right.
    Right,
}

/// A cell module: every element moves a basis diagram to its product when
/// that stays in the cell, and to zero otherwise.
#[derive(Clone, Debug)]
pub struct CellModule {
    pub side: ModuleSide,
    pub basis: Vec<u32>,
    /// `action[a][i]` is the image of basis vector `i` under element `a`.
    action: Vec<Vec<Option<u32>>>,
}

impl CellModule {
    pub fn new(table: &MonoidTable, structure: &GreenStructure, cell: usize, side: ModuleSide) -> Result<Self, ReprError> {
        let cells = match side {
            ModuleSide::Left => &structure.left_cells,
            ModuleSide::Right => &structure.right_cells,
        };
        let basis = cells.get(cell).ok_or(ReprError::NoSuchCell(cell))?.clone();
        let mut buf = Vec::new();
        let action = (0..table.len() as u32)
            .map(|a| {
                basis
                    .iter()
                    .map(|&l| {
                        let p = match side {
                            ModuleSide::Left => table.product_with(a, l, &mut buf),
                            ModuleSide::Right => table.product_with(l, a, &mut buf),
                        };
                        let same = match side {
                            ModuleSide::Left => structure.left_of(p) == cell,
                            ModuleSide::Right => structure.right_of(p) == cell,
                        };
                        same.then(|| basis.binary_search(&p).expect("in cell") as u32)
                    })
                    .collect()
            })
            .collect();
        Ok(CellModule {
            side,
            basis,
            action,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of basis vector `i` under element `a`, or `None` for zero.
    pub fn act(&self, a: u32, i: usize) -> Option<u32> {
        self.action[a as usize][i]
    }

    /// The 0/1 matrix of `a`; column `i` is the image of basis vector `i`.
    pub fn matrix(&self, a: u32) -> Vec<Vec<u8>> {
        let d = self.dim();
        let mut m = vec![vec![0u8; d]; d];
        for (i, img) in self.action[a as usize].iter().enumerate() {
            if let Some(r) = img {
                m[*r as usize][i] = 1;
            }
        }
        m
    }

    /// Checks `ρ(a) ρ(b) = ρ(ab)` (left) or `ρ(b) ρ(a) = ρ(ab)` (right) for
    /// all pairs, returning the first failing pair.
    pub fn check_homomorphism(&self, table: &MonoidTable) -> Result<(), (u32, u32)> {
        let mut buf = Vec::new();
        let n = table.len() as u32;
        for a in 0..n {
            for b in 0..n {
                let ab = table.product_with(a, b, &mut buf);
                let (first, second) = match self.side {
                    ModuleSide::Left => (b, a),
                    ModuleSide::Right => (a, b),
                };
                for i in 0..self.dim() {
                    let two_step = self.act(first, i).and_then(|j| self.act(second, j as usize));
                    if two_step != self.act(ab, i) {
                        return Err((a, b));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The 0/1 pairing matrix of one J-cell: rows are top halves, columns are
/// bottom halves, and an entry is 1 when the bottom half stacked on the top
/// half keeps every through strand.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub jcell: usize,
    pub k: usize,
    pub alpha: Word,
    pub tops: Vec<Diagram>,
    pub bottoms: Vec<Diagram>,
    pub entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn new(table: &MonoidTable, structure: &GreenStructure, jcell: usize) -> Result<Self, ReprError> {
        let j = structure.j_cells.get(jcell).ok_or(ReprError::NoSuchCell(jcell))?;
        let mut tops = Vec::new();
        let mut bottoms = Vec::new();
        for &a in &j.members {
            let s = table.element(a).sandwich_factor().expect("endomorphism");
            tops.push(s.top);
            bottoms.push(s.bottom);
        }
        let key_order = |x: &Diagram, y: &Diagram| x.canonical_key().cmp(&y.canonical_key());
        tops.sort_by(key_order);
        tops.dedup();
        bottoms.sort_by(key_order);
        bottoms.dedup();
        let identity = Diagram::identity(&j.alpha);
        let entries = tops
            .iter()
            .map(|t| {
                bottoms
                    .iter()
                    .map(|b| i64::from(t.compose(b).expect("alpha boundary") == identity))
                    .collect()
            })
            .collect();
        Ok(GramMatrix {
            jcell,
            k: j.k,
            alpha: j.alpha.clone(),
            tops,
            bottoms,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.tops.len()
    }

    pub fn cols(&self) -> usize {
        self.bottoms.len()
    }

    pub fn rank(&self, field: Field) -> Result<usize, LinalgError> {
        linalg::rank(&self.entries, field)
    }
}

/// Simple and semisimple dimension at one apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexDim {
    pub jcell: usize,
    pub k: usize,
    pub alpha: Word,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Semisimple dimension, the number of bottom halves.
    pub ssdim: usize,
    pub jcell_size: usize,
}

/// Gram ranks of every J-cell, in J-cell order.
pub fn simple_dims(table: &MonoidTable, structure: &GreenStructure, field: Field) -> Result<Vec<ApexDim>, ReprError> {
    structure
        .j_cells
        .iter()
        .map(|j| apex_dim(table, structure, j, field))
        .collect()
}

pub fn apex_dim(table: &MonoidTable, structure: &GreenStructure, j: &JCell, field: Field) -> Result<ApexDim, ReprError> {
    if !j.idempotent {
        return Err(ReprError::NotIdempotent(j.id));
    }
    let g = GramMatrix::new(table, structure, j.id)?;
    Ok(ApexDim {
        jcell: j.id,
        k: j.k,
        alpha: j.alpha.clone(),
        rows: g.rows(),
        cols: g.cols(),
        rank: g.rank(field)?,
        ssdim: g.cols(),
        jcell_size: j.members.len(),
    })
}

/// Inclusive through-strand window of the truncated monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn contains(&self, k: usize) -> bool {
        self.lo <= k && k <= self.hi
    }
}

/// Truncation window: real bounds rounded inward and intersected with the
/// family's feasible through-strand counts.
pub fn truncation_window(family: Family, n: usize) -> Result<Window, ReprError> {
    let n64 = n as u64;
    let (lo, hi) = match family {
        // 0 <= k <= 2 sqrt(2n)
        Family::Tl | Family::Mo | Family::RMo => (0, isqrt(8 * n64)),
        Family::PRo => {
            let r = isqrt(2 * n64);
            (n64.saturating_sub(r), n64 + r)
        }
        Family::RTl => {
            let r = isqrt(2 * n64);
            ((n64 + 1).saturating_sub(r), n64 + 1 + r)
        }
        // n/2 - sqrt(2n) <= k <= n/2 + sqrt(2n), i.e. |2k - n| <= sqrt(8n)
        Family::RpRo => {
            let fits = |h: u64| {
                let d = (2 * h).abs_diff(n64);
                d * d <= 8 * n64
            };
            let mut lo = n64 / 2;
            while lo > 0 && fits(lo - 1) {
                lo -= 1;
            }
            let mut hi = n64 / 2;
            while fits(hi + 1) {
                hi += 1;
            }
            (lo, hi)
        }
    };
    let feasible: Vec<usize> = (lo as usize..=(hi as usize).min(2 * n))
        .filter(|&k| family.k_feasible(n, k))
        .collect();
    match (feasible.first(), feasible.last()) {
        (Some(&lo), Some(&hi)) => Ok(Window { lo, hi }),
        _ => Err(ReprError::EmptyWindow { family, n }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapMode {
    /// Simple dimensions from Gram ranks of the enumerated monoid.
    Exact,
    /// Cell sizes, from closed forms where available.
    Semisimple,
}

impl fmt::Display for GapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapMode::Exact => "exact",
            GapMode::Semisimple => "semisimple",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    Full,
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denominator {
    Full,
    Truncated,
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Denominator::Full => "full",
            Denominator::Truncated => "truncated",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapOptions {
    pub mode: GapMode,
    pub truncation: Truncation,
    pub field: Field,
    pub denominator: Denominator,
    /// In a truncated monoid, ignore the cells at both window ends.
    pub exclude_window_edges: bool,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            mode: GapMode::Exact,
            truncation: Truncation::Full,
            field: Field::Rationals,
            denominator: Denominator::Full,
            exclude_window_edges: false,
        }
    }
}

/// How an apex is named: by its through sequence when enumerated, by the
/// number of `1 2` factors when taken from closed forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ApexLabel {
    Sequence(Word),
    Factors12(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apex {
    pub k: usize,
    pub label: ApexLabel,
}

impl Apex {
    fn sort_key(&self) -> (usize, &ApexLabel) {
        (self.k, &self.label)
    }
}

impl fmt::Display for Apex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            ApexLabel::Sequence(w) => write!(f, "k={}:alpha={}", self.k, w.spaced()),
            ApexLabel::Factors12(j) => write!(f, "k={}:j={}", self.k, j),
        }
    }
}

/// One apex with its dimension and the size of its J-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexEntry {
    pub apex: Apex,
    pub dim: BigInt,
    pub jcell_size: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub family: Family,
    pub n: usize,
    pub mode: GapMode,
    pub field: Field,
    pub window: Option<Window>,
    pub denominator_mode: Denominator,
    /// Every counted apex with its dimension, sorted by apex.
    pub dims: Vec<ApexEntry>,
    pub gap: BigInt,
    pub witnesses: Vec<Apex>,
    pub denominator: BigInt,
    pub log10_gap: f64,
    pub log10_ratio: f64,
}

impl GapReport {
    pub fn witness_string(&self) -> String {
        let parts: Vec<String> = self.witnesses.iter().map(|w| alloc::format!("{w}")).collect();
        parts.join(";")
    }
}

/// Closed-form apexes of a rigid family with `k` in `ks`, skipping empty
/// cells. Dimensions are right-cell sizes.
pub fn rigid_apexes(counts: &RigidCounts, ks: impl Fn(usize) -> bool) -> Vec<ApexEntry> {
    counts
        .labels()
        .filter(|&(k, _)| ks(k))
        .filter_map(|(k, j)| {
            let r = counts.cell(k, j, CellSide::Right);
            if r.is_zero() {
                return None;
            }
            let l = counts.cell(k, j, CellSide::Left);
            Some(ApexEntry {
                apex: Apex {
                    k,
                    label: ApexLabel::Factors12(j),
                },
                jcell_size: counts.sequences(k, j) * &r * l,
                dim: r,
            })
        })
        .collect()
}

/// Apexes of an enumerated monoid with Gram-rank or semisimple dimensions.
pub fn enumerated_apexes(
    table: &MonoidTable,
    structure: &GreenStructure,
    mode: GapMode,
    field: Field,
) -> Result<Vec<ApexEntry>, ReprError> {
    Ok(entries_from_dims(simple_dims(table, structure, field)?, mode))
}

fn entries_from_dims(dims: Vec<ApexDim>, mode: GapMode) -> Vec<ApexEntry> {
    dims.into_iter()
        .map(|d| ApexEntry {
            apex: Apex {
                k: d.k,
                label: ApexLabel::Sequence(d.alpha),
            },
            dim: BigInt::from(match mode {
                GapMode::Exact => d.rank,
                GapMode::Semisimple => d.ssdim,
            }),
            jcell_size: BigInt::from(d.jcell_size),
        })
        .collect()
}

/// Bottom (identity) and top apex of a rigid family in closed-form labels.
fn rigid_trivial(family: Family, n: usize, a: &Apex) -> bool {
    let top_k = if family == Family::RTl { 2 } else { 0 };
    a.k == top_k || (a.k == 2 * n && a.label == ApexLabel::Factors12(n))
}

/// The monoid a gap is taken over, as far as the gap needs to know it.
#[derive(Clone, Debug)]
pub struct ApexSet {
    pub family: Family,
    pub n: usize,
    /// Candidate apexes; in truncated mode at least those in the window.
    pub apexes: Vec<ApexEntry>,
    /// Size of the untruncated monoid.
    pub full_size: BigInt,
    /// Smallest and largest through-strand count of a nonempty cell.
    pub k_range: (usize, usize),
}

/// Representation gap over a set of apexes.
///
/// `trivial` flags the top and bottom cells, which a full monoid ignores.
pub fn repgap_from_apexes(
    set: ApexSet,
    trivial: impl Fn(&Apex) -> bool,
    opts: &GapOptions,
) -> Result<GapReport, ReprError> {
    let ApexSet {
        family,
        n,
        mut apexes,
        full_size,
        k_range: (min_k, max_k),
    } = set;
    apexes.sort_by(|a, b| a.apex.sort_key().cmp(&b.apex.sort_key()));
    let window = match opts.truncation {
        Truncation::Full => None,
        Truncation::Paper => Some(truncation_window(family, n)?),
    };
    let counted: Vec<&ApexEntry> = apexes
        .iter()
        .filter(|e| match window {
            None => !trivial(&e.apex),
            Some(w) => {
                w.contains(e.apex.k)
                    && !(opts.exclude_window_edges && (e.apex.k == w.lo || e.apex.k == w.hi))
            }
        })
        .collect();
    let gap = counted
        .iter()
        .map(|e| e.dim.clone())
        .min()
        .ok_or(ReprError::NoApex { family, n })?;
    let witnesses: Vec<Apex> = counted
        .iter()
        .filter(|e| e.dim == gap)
        .map(|e| e.apex.clone())
        .collect();

    let denominator = match (opts.denominator, window) {
        (Denominator::Full, _) | (Denominator::Truncated, None) => full_size,
        (Denominator::Truncated, Some(w)) => {
            let mut s: BigInt = apexes
                .iter()
                .filter(|e| w.contains(e.apex.k))
                .map(|e| &e.jcell_size)
                .sum();
            // adjoined zero standing for the cells above the window
            if min_k < w.lo {
                s += 1;
            }
            // adjoined unit when the identity's cell is cut away
            if max_k > w.hi {
                s += 1;
            }
            s
        }
    };
    let log10_gap = log10_big(&gap);
    let log10_ratio = log10_gap - 0.5 * log10_big(&denominator);
    Ok(GapReport {
        family,
        n,
        mode: opts.mode,
        field: opts.field,
        window,
        denominator_mode: opts.denominator,
        dims: counted.into_iter().cloned().collect(),
        gap,
        witnesses,
        denominator,
        log10_gap,
        log10_ratio,
    })
}

/// Semisimple gap of a rigid family from closed forms, at any `n`.
pub fn repgap_semisimple(family: Family, n: usize, opts: &GapOptions) -> Result<GapReport, ReprError> {
    let counts = RigidCounts::new(family, n)?;
    let window = match opts.truncation {
        Truncation::Full => None,
        Truncation::Paper => Some(truncation_window(family, n)?),
    };
    let apexes = rigid_apexes(&counts, |k| window.is_none_or(|w| w.contains(k)));
    let min_k = if family == Family::RTl { 2 } else { 0 };
    let full_size = match window {
        None => apexes.iter().map(|e| &e.jcell_size).sum(),
        // not read
        Some(_) if opts.denominator == Denominator::Truncated => BigInt::zero(),
        Some(_) => counts.monoid_size(),
    };
    let set = ApexSet {
        family,
        n,
        apexes,
        full_size,
        k_range: (min_k, 2 * n),
    };
    let mut o = *opts;
    o.mode = GapMode::Semisimple;
    repgap_from_apexes(set, |a| rigid_trivial(family, n, a), &o)
}

/// Gap of an enumerated monoid, in either mode.
pub fn repgap_enumerated(table: &MonoidTable, structure: &GreenStructure, opts: &GapOptions) -> Result<GapReport, ReprError> {
    let dims = simple_dims(table, structure, opts.field)?;
    repgap_from_dims(table, structure, dims, opts)
}

/// As [`repgap_enumerated`] with the per-cell dimensions already computed,
/// e.g. in parallel. `dims` must cover every J-cell and be computed over
/// `opts.field`.
pub fn repgap_from_dims(
    table: &MonoidTable,
    structure: &GreenStructure,
    dims: Vec<ApexDim>,
    opts: &GapOptions,
) -> Result<GapReport, ReprError> {
    let apexes = entries_from_dims(dims, opts.mode);
    let top = &structure.j_cells[structure.top_cell];
    let bottom = &structure.j_cells[structure.bottom_cell];
    let trivial = |a: &Apex| {
        [top, bottom]
            .iter()
            .any(|j| a.k == j.k && a.label == ApexLabel::Sequence(j.alpha.clone()))
    };
    let set = ApexSet {
        family: table.family(),
        n: table.n(),
        full_size: BigInt::from(table.len()),
        k_range: (top.k, bottom.k),
        apexes,
    };
    repgap_from_apexes(set, trivial, opts)
}

/// Orders apexes by dimension then label; used for reporting minima.
pub fn cmp_dims(a: &ApexDim, b: &ApexDim) -> Ordering {
    (a.rank, a.k, &a.alpha).cmp(&(b.rank, b.k, &b.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(truncation_window(Family::RTl, 8).unwrap(), Window { lo: 6, hi: 12 });
        assert_eq!(truncation_window(Family::RMo, 8).unwrap(), Window { lo: 0, hi: 8 });
        assert_eq!(truncation_window(Family::RpRo, 8).unwrap(), Window { lo: 0, hi: 8 });
        assert_eq!(truncation_window(Family::Tl, 8).unwrap(), Window { lo: 0, hi: 8 });
        assert_eq!(truncation_window(Family::PRo, 8).unwrap(), Window { lo: 4, hi: 12 });
        // n/2 ± sqrt(2n) at n = 100: 50 ± 14.14
        assert_eq!(truncation_window(Family::RpRo, 100).unwrap(), Window { lo: 36, hi: 64 });
    }

    #[test]
    fn rtl8_truncated_gap() {
        let opts = GapOptions {
            truncation: Truncation::Paper,
            ..GapOptions::default()
        };
        let r = repgap_semisimple(Family::RTl, 8, &opts).unwrap();
        assert_eq!(r.gap, 21.into());
        let ks: Vec<usize> = r.witnesses.iter().map(|a| a.k).collect();
        assert_eq!(ks, vec![6, 12]);
        assert_eq!(r.window, Some(Window { lo: 6, hi: 12 }));
    }

    #[test]
    fn rtl3_exact_gap() {
        let t = MonoidTable::enumerate(Family::RTl, 3).unwrap();
        let g = GreenStructure::compute(&t).unwrap();
        let r = repgap_enumerated(&t, &g, &GapOptions::default()).unwrap();
        assert_eq!(r.gap, 2.into());
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].k, 4);
        assert_eq!(r.denominator, 10.into());
    }

    #[test]
    fn gram_of_identity_cell() {
        let t = MonoidTable::enumerate(Family::RMo, 2).unwrap();
        let g = GreenStructure::compute(&t).unwrap();
        let gm = GramMatrix::new(&t, &g, g.bottom_cell).unwrap();
        assert_eq!(gm.entries, vec![vec![1]]);
    }

    #[test]
    fn bottom_cell_module_is_trivial() {
        let t = MonoidTable::enumerate(Family::RTl, 3).unwrap();
        let g = GreenStructure::compute(&t).unwrap();
        let l = g.left_of(t.identity());
        let m = CellModule::new(&t, &g, l, ModuleSide::Left).unwrap();
        assert_eq!(m.dim(), 1);
        for a in 0..t.len() as u32 {
            let expect = if a == t.identity() { Some(0) } else { None };
            assert_eq!(m.act(a, 0), expect);
        }
        m.check_homomorphism(&t).unwrap();
    }
}
