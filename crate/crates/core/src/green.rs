//! Green's relations of an enumerated monoid, the two-sided cell order and
//! eggbox rendering.
//!
//! Orders follow the cellular convention: `a ≤_l b` when `b = c a` for some
//! `c`, so the identity sits in the bottom cell and the cell with the fewest
//! through strands is on top.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;

use crate::diagram::{Diagram, Letter, Word};
use crate::family::Family;
use crate::monoids::MonoidTable;

/// Largest table [`GreenStructure::compute`] accepts by default.
pub const DEFAULT_GREEN_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GreenError {
    #[error("monoid has {size} elements, above the limit of {limit} for cell computations")]
    TooLarge { size: usize, limit: usize },
    #[error("expected {expected} ideal rows, got {got}")]
    RowCount { expected: usize, got: usize },
}

/// Which side an ideal is generated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealSide {
    /// `{ c a : c ∈ M }`
    Left,
    /// `{ a c : c ∈ M }`
    Right,
}

/// The principal one-sided ideal of `a` as a bitset over element ids.
pub fn ideal_row(table: &MonoidTable, a: u32, side: IdealSide, buf: &mut Vec<u16>) -> FixedBitSet {
    let mut row = FixedBitSet::with_capacity(table.len());
    for c in 0..table.len() as u32 {
        let p = match side {
            IdealSide::Left => table.product_with(c, a, buf),
            IdealSide::Right => table.product_with(a, c, buf),
        };
        row.insert(p as usize);
    }
    row
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCell {
    pub id: usize,
    /// Number of through strands of every member.
    pub k: usize,
    /// Through-strand letters of every member.
    pub alpha: Word,
    pub members: Vec<u32>,
    /// Left cells (columns of the eggbox), as ids into
    /// [`GreenStructure::left_cells`].
    pub left_cells: Vec<usize>,
    /// Right cells (rows of the eggbox).
    pub right_cells: Vec<usize>,
    pub idempotent: bool,
}

#[derive(Clone, Debug)]
pub struct GreenStructure {
    family: Family,
    n: usize,
    pub left_cells: Vec<Vec<u32>>,
    pub right_cells: Vec<Vec<u32>>,
    pub h_cells: Vec<Vec<u32>>,
    pub j_cells: Vec<JCell>,
    left_of: Vec<usize>,
    right_of: Vec<usize>,
    h_of: Vec<usize>,
    j_of: Vec<usize>,
    /// `above[x]` holds every `y` with `J_x ≤ J_y`.
    above: Vec<FixedBitSet>,
    /// Covering pairs `(lower, upper)` of the two-sided order.
    pub j_order: Vec<(usize, usize)>,
    idempotent: Vec<bool>,
    pub bottom_cell: usize,
    pub top_cell: usize,
}

fn classes(rows: &[FixedBitSet]) -> (Vec<usize>, Vec<Vec<u32>>) {
    let mut ids: HashMap<&FixedBitSet, usize> = HashMap::new();
    let mut of = Vec::with_capacity(rows.len());
    let mut cells: Vec<Vec<u32>> = Vec::new();
    for (a, row) in rows.iter().enumerate() {
        let next = cells.len();
        let id = *ids.entry(row).or_insert(next);
        if id == next {
            cells.push(Vec::new());
        }
        cells[id].push(a as u32);
        of.push(id);
    }
    (of, cells)
}

impl GreenStructure {
    /// Computes everything sequentially, refusing tables above `limit`.
    pub fn compute_with_limit(table: &MonoidTable, limit: usize) -> Result<Self, GreenError> {
        if table.len() > limit {
            return Err(GreenError::TooLarge {
                size: table.len(),
                limit,
            });
        }
        let mut buf = Vec::new();
        let ids = 0..table.len() as u32;
        let left: Vec<_> = ids
            .clone()
            .map(|a| ideal_row(table, a, IdealSide::Left, &mut buf))
            .collect();
        let right: Vec<_> = ids
            .map(|a| ideal_row(table, a, IdealSide::Right, &mut buf))
            .collect();
        Self::from_rows(table, &left, &right)
    }

    pub fn compute(table: &MonoidTable) -> Result<Self, GreenError> {
        Self::compute_with_limit(table, DEFAULT_GREEN_LIMIT)
    }

    /// Assembles the structure from precomputed principal ideals, so that
    /// callers may produce the rows in parallel.
    pub fn from_rows(
        table: &MonoidTable,
        left_rows: &[FixedBitSet],
        right_rows: &[FixedBitSet],
    ) -> Result<Self, GreenError> {
        let size = table.len();
        for rows in [left_rows, right_rows] {
            if rows.len() != size {
                return Err(GreenError::RowCount {
                    expected: size,
                    got: rows.len(),
                });
            }
        }
        let (left_of, left_cells) = classes(left_rows);
        let (right_of, right_cells) = classes(right_rows);

        // two-sided ideal of each left class: the union of right ideals
        // over its left ideal, one representative per right class
        let mut l_ideals: Vec<FixedBitSet> = Vec::with_capacity(left_cells.len());
        for cell in &left_cells {
            let mut ideal = FixedBitSet::with_capacity(size);
            let mut seen = FixedBitSet::with_capacity(right_cells.len());
            for x in left_rows[cell[0] as usize].ones() {
                let r = right_of[x];
                if !seen.put(r) {
                    ideal.union_with(&right_rows[x]);
                }
            }
            l_ideals.push(ideal);
        }
        let (l_to_j, j_groups) = classes(&l_ideals);

        // label every provisional j class and sort by (k, alpha, first member)
        let mut provisional: Vec<(usize, Word, u32, usize)> = j_groups
            .iter()
            .enumerate()
            .map(|(pj, ls)| {
                let rep = left_cells[ls[0] as usize][0];
                let d = table.element(rep);
                let first = ls
                    .iter()
                    .map(|&l| left_cells[l as usize][0])
                    .min()
                    .unwrap_or(rep);
                (d.through_count(), d.alpha(), first, pj)
            })
            .collect();
        provisional.sort();
        let mut remap = vec![0usize; provisional.len()];
        for (new, &(_, _, _, pj)) in provisional.iter().enumerate() {
            remap[pj] = new;
        }
        let j_of: Vec<usize> = left_of.iter().map(|&l| remap[l_to_j[l]]).collect();
        let nj = provisional.len();

        let idempotent: Vec<bool> = (0..size as u32)
            .map(|e| table.product(e, e) == e)
            .collect();

        let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut h_cells: Vec<Vec<u32>> = Vec::new();
        let mut h_of = Vec::with_capacity(size);
        for a in 0..size {
            let key = (left_of[a], right_of[a]);
            let next = h_cells.len();
            let id = *h_ids.entry(key).or_insert(next);
            if id == next {
                h_cells.push(Vec::new());
            }
            h_cells[id].push(a as u32);
            h_of.push(id);
        }

        let mut j_cells: Vec<JCell> = provisional
            .iter()
            .enumerate()
            .map(|(id, (k, alpha, _, _))| JCell {
                id,
                k: *k,
                alpha: alpha.clone(),
                members: Vec::new(),
                left_cells: Vec::new(),
                right_cells: Vec::new(),
                idempotent: false,
            })
            .collect();
        for a in 0..size {
            let j = &mut j_cells[j_of[a]];
            j.members.push(a as u32);
            j.idempotent |= idempotent[a];
        }
        for (l, cell) in left_cells.iter().enumerate() {
            j_cells[j_of[cell[0] as usize]].left_cells.push(l);
        }
        for (r, cell) in right_cells.iter().enumerate() {
            j_cells[j_of[cell[0] as usize]].right_cells.push(r);
        }

        let mut above = vec![FixedBitSet::with_capacity(nj); nj];
        for (pj, ls) in j_groups.iter().enumerate() {
            let x = remap[pj];
            let ideal = &l_ideals[ls[0] as usize];
            for y in ideal.ones() {
                above[x].insert(j_of[y]);
            }
        }

        let mut j_order = Vec::new();
        for x in 0..nj {
            for y in above[x].ones() {
                if y == x {
                    continue;
                }
                let covered = above[x]
                    .ones()
                    .any(|z| z != x && z != y && above[z].contains(y));
                if !covered {
                    j_order.push((x, y));
                }
            }
        }

        let bottom_cell = j_of[table.identity() as usize];
        let top_cell = (0..nj)
            .find(|&y| above[y].count_ones(..) == 1)
            .unwrap_or(bottom_cell);

        Ok(GreenStructure {
            family: table.family(),
            n: table.n(),
            left_cells,
            right_cells,
            h_cells,
            j_cells,
            left_of,
            right_of,
            h_of,
            j_of,
            above,
            j_order,
            idempotent,
            bottom_cell,
            top_cell,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.j_of.len()
    }

    pub fn j_of(&self, a: u32) -> usize {
        self.j_of[a as usize]
    }

    pub fn left_of(&self, a: u32) -> usize {
        self.left_of[a as usize]
    }

    pub fn right_of(&self, a: u32) -> usize {
        self.right_of[a as usize]
    }

    pub fn h_of(&self, a: u32) -> usize {
        self.h_of[a as usize]
    }

    pub fn is_idempotent(&self, a: u32) -> bool {
        self.idempotent[a as usize]
    }

    /// `J_x ≤_lr J_y`.
    pub fn j_leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// Cells with nothing strictly above them.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.j_cells.len())
            .filter(|&y| self.above[y].count_ones(..) == 1)
            .collect()
    }

    /// The member of a J-cell in a given right and left cell, if any.
    pub fn h_member(&self, right: usize, left: usize) -> Option<u32> {
        self.right_cells[right]
            .iter()
            .copied()
            .find(|&a| self.left_of[a as usize] == left)
    }

    /// Verifies the structural cell theorems on this monoid.
    pub fn check_structure(&self, table: &MonoidTable) -> Result<StructureReport, StructureMismatch> {
        let line = |a: u32| table.element(a).to_line();

        // (i) J-cells are the fibres of the through-strand sequence
        let mut by_label: HashMap<&Word, usize> = HashMap::new();
        for j in &self.j_cells {
            for &a in &j.members {
                if table.element(a).alpha() != j.alpha {
                    return Err(StructureMismatch::new(
                        "J-cell members share the through sequence",
                        format!("{} in J{} with alpha {}", line(a), j.id, j.alpha.spaced()),
                    ));
                }
            }
            if let Some(&other) = by_label.get(&j.alpha) {
                return Err(StructureMismatch::new(
                    "one J-cell per through sequence",
                    format!(
                        "{} and {}",
                        line(self.j_cells[other].members[0]),
                        line(j.members[0])
                    ),
                ));
            }
            by_label.insert(&j.alpha, j.id);
        }

        // (ii) right cells fix the top half, left cells fix the bottom half
        let halves: Vec<(Diagram, Diagram)> = (0..table.len() as u32)
            .map(|a| {
                let s = table.element(a).sandwich_factor().expect("endomorphism");
                (s.top, s.bottom)
            })
            .collect();
        for j in &self.j_cells {
            for (i, &a) in j.members.iter().enumerate() {
                for &b in &j.members[i + 1..] {
                    let (ta, ba) = &halves[a as usize];
                    let (tb, bb) = &halves[b as usize];
                    let same_r = self.right_of[a as usize] == self.right_of[b as usize];
                    let same_l = self.left_of[a as usize] == self.left_of[b as usize];
                    if same_r != (ta == tb) {
                        return Err(StructureMismatch::new(
                            "right cells are the fibres of the top half",
                            format!("{} / {}", line(a), line(b)),
                        ));
                    }
                    if same_l != (ba == bb) {
                        return Err(StructureMismatch::new(
                            "left cells are the fibres of the bottom half",
                            format!("{} / {}", line(a), line(b)),
                        ));
                    }
                }
            }
        }

        // (iii) every J-cell contains an idempotent
        if let Some(j) = self.j_cells.iter().find(|j| !j.idempotent) {
            return Err(StructureMismatch::new(
                "every J-cell is idempotent",
                format!("J{} k={} alpha={}", j.id, j.k, j.alpha.spaced()),
            ));
        }

        // (iv) the two-sided order is the subsequence order, both ways
        let mut pairs = 0usize;
        for x in &self.j_cells {
            for y in &self.j_cells {
                pairs += 1;
                let order = self.j_leq(x.id, y.id);
                let subseq = is_subsequence(y.alpha.letters(), x.alpha.letters());
                if order != subseq {
                    return Err(StructureMismatch::new(
                        "two-sided order equals the subsequence order",
                        format!(
                            "J{} (alpha {}) vs J{} (alpha {}): order {}, subsequence {}",
                            x.id,
                            x.alpha.spaced(),
                            y.id,
                            y.alpha.spaced(),
                            order,
                            subseq
                        ),
                    ));
                }
            }
        }

        // (v) trivial H-cells
        if let Some(h) = self.h_cells.iter().find(|h| h.len() > 1) {
            return Err(StructureMismatch::new(
                "H-cells are singletons",
                format!("{} / {}", line(h[0]), line(h[1])),
            ));
        }

        if self.maximal_cells().len() != 1 {
            return Err(StructureMismatch::new(
                "unique top J-cell",
                format!("maximal cells {:?}", self.maximal_cells()),
            ));
        }
        if self.j_cells[self.bottom_cell].members.len() != 1 {
            return Err(StructureMismatch::new(
                "the identity's J-cell is a singleton",
                format!("J{}", self.bottom_cell),
            ));
        }

        Ok(StructureReport {
            j_cells: self.j_cells.len(),
            order_pairs: pairs,
        })
    }

    /// Text eggbox, one block per J-cell from the top cell down: rows are
    /// right cells, columns left cells, `[*]` marks idempotents.
    pub fn render_ascii(&self) -> String {
        let mut s = String::new();
        for j in self.blocks_top_down() {
            let _ = writeln!(
                s,
                "J{} k={} alpha={} {}x{}",
                j.id,
                j.k,
                j.alpha.spaced(),
                j.right_cells.len(),
                j.left_cells.len()
            );
            s.push_str(&self.block_rows(j, "\n"));
            s.push('\n');
        }
        s
    }

    /// Graphviz rendering: a cluster per J-cell and an edge per covering
    /// pair of the two-sided order, pointing upwards.
    pub fn render_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "digraph eggbox {{\n  label=\"{} n={}\";\n  node [shape=box, fontname=\"monospace\"];",
            self.family.name(),
            self.n
        );
        for j in self.blocks_top_down() {
            let _ = writeln!(
                s,
                "  subgraph cluster_{id} {{\n    label=\"k={k} alpha={a}\";\n    j{id} [label=\"{rows}\"];\n  }}",
                id = j.id,
                k = j.k,
                a = j.alpha.spaced(),
                rows = self.block_rows(j, "\\l"),
            );
        }
        for &(lo, hi) in &self.j_order {
            let _ = writeln!(s, "  j{lo} -> j{hi};");
        }
        s.push_str("}\n");
        s
    }

    fn blocks_top_down(&self) -> impl Iterator<Item = &JCell> {
        // ascending (k, alpha) puts the fewest through strands first
        self.j_cells.iter()
    }

    fn block_rows(&self, j: &JCell, eol: &str) -> String {
        let mut s = String::new();
        for &r in &j.right_cells {
            for &l in &j.left_cells {
                s.push_str(match self.h_member(r, l) {
                    Some(a) if self.is_idempotent(a) => "[*]",
                    Some(_) => "[ ]",
                    None => "   ",
                });
            }
            s.push_str(eol);
        }
        s
    }
}

/// Whether `small` is a (not necessarily contiguous) subsequence of `big`.
pub fn is_subsequence(small: &[Letter], big: &[Letter]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub j_cells: usize,
    /// Ordered pairs of J-cells compared against the subsequence order.
    pub order_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("structure mismatch ({check}): {witness}")]
pub struct StructureMismatch {
    pub check: &'static str,
    pub witness: String,
}

impl StructureMismatch {
    fn new(check: &'static str, witness: String) -> Self {
        StructureMismatch { check, witness }
    }
}
