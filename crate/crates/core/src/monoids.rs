//! Direct enumeration of diagram Hom-sets and the endomorphism monoids.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::ToPrimitive;

use crate::combinat;
use crate::diagram::{compose_links, ArcOrientation, Diagram, DiagramError, Letter, Word, FREE};
use crate::family::Family;

/// Default refusal threshold for enumerations, in elements.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("size parameter n must be at least 1")]
    ZeroSize,
    #[error("predicted {predicted} elements exceeds the budget of {budget}")]
    BudgetExceeded { predicted: u128, budget: u64 },
    #[error("element list line {line}: {source}")]
    Parse { line: usize, source: DiagramError },
    #[error("element list: {0}")]
    Header(String),
    #[error("element list line {line}: diagram is not an endomorphism of the family word")]
    WrongWord { line: usize },
    #[error("element list line {line}: duplicate element")]
    Duplicate { line: usize },
}

/// Enumerates every valid diagram from `bottom` to `top` in `family`, in
/// canonical key order.
pub fn enumerate_hom(
    bottom: &Word,
    top: &Word,
    family: Family,
    budget: u64,
) -> Result<Vec<Diagram>, MonoidError> {
    enumerate_hom_with(bottom, top, family, ArcOrientation::Picture, budget)
}

/// As [`enumerate_hom`] with an explicit arc orientation.
pub fn enumerate_hom_with(
    bottom: &Word,
    top: &Word,
    family: Family,
    orientation: ArcOrientation,
    budget: u64,
) -> Result<Vec<Diagram>, MonoidError> {
    let mut gen = Generator::new(bottom, top, family, orientation, budget);
    gen.run(0);
    if gen.exceeded {
        return Err(MonoidError::BudgetExceeded {
            predicted: gen.found.len() as u128,
            budget,
        });
    }
    let mut found = gen.found;
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|l| Diagram::from_links(bottom.clone(), top.clone(), l))
        .collect())
}

struct Generator {
    /// Letter at each cyclic position.
    letters: Vec<Letter>,
    /// Point index at each cyclic position.
    point: Vec<usize>,
    nb: usize,
    rigid: bool,
    arcs: bool,
    dots: bool,
    orientation: ArcOrientation,
    links: Vec<u16>,
    stack: Vec<usize>,
    found: Vec<Vec<u16>>,
    budget: u64,
    exceeded: bool,
}

impl Generator {
    fn new(
        bottom: &Word,
        top: &Word,
        family: Family,
        orientation: ArcOrientation,
        budget: u64,
    ) -> Self {
        let nb = bottom.len();
        let nt = top.len();
        let mut letters = Vec::with_capacity(nb + nt);
        let mut point = Vec::with_capacity(nb + nt);
        for (i, &l) in bottom.letters().iter().enumerate() {
            letters.push(l);
            point.push(i);
        }
        for i in (0..nt).rev() {
            letters.push(top.letters()[i]);
            point.push(nb + i);
        }
        Generator {
            letters,
            point,
            nb,
            rigid: family.is_rigid(),
            arcs: family.allows_arcs(),
            dots: family.allows_dots(),
            orientation,
            links: vec![FREE; nb + nt],
            stack: Vec::new(),
            found: Vec::new(),
            budget,
            exceeded: false,
        }
    }

    /// Whether the open cyclic position `o` may be closed at `c > o`.
    fn can_pair(&self, o: usize, c: usize) -> bool {
        let o_bottom = o < self.nb;
        let c_bottom = c < self.nb;
        let (lo, lc) = (self.letters[o], self.letters[c]);
        match (o_bottom, c_bottom) {
            (true, true) => {
                self.arcs && arc_rule(self.orientation, self.rigid, true, lo, lc)
            }
            (true, false) => lo == lc,
            // top positions are walked right to left, so `c` is the left end
            (false, false) => {
                self.arcs && arc_rule(self.orientation, self.rigid, false, lc, lo)
            }
            (false, true) => false,
        }
    }

    fn run(&mut self, c: usize) {
        if self.exceeded {
            return;
        }
        let total = self.letters.len();
        if c == total {
            if self.stack.is_empty() {
                if self.found.len() as u64 >= self.budget {
                    self.exceeded = true;
                    return;
                }
                self.found.push(self.links.clone());
            }
            return;
        }
        let remaining = total - c;
        if self.stack.len() > remaining {
            return;
        }
        let p = self.point[c];
        if let Some(&o) = self.stack.last() {
            if self.can_pair(o, c) {
                self.stack.pop();
                let q = self.point[o];
                self.links[p] = q as u16;
                self.links[q] = p as u16;
                self.run(c + 1);
                self.links[q] = FREE;
                self.links[p] = FREE;
                self.stack.push(o);
            }
        }
        if self.dots {
            self.links[p] = FREE;
            self.run(c + 1);
        }
        if self.stack.len() < remaining - 1 {
            self.stack.push(c);
            self.run(c + 1);
            self.stack.pop();
        }
    }
}

fn arc_rule(
    orientation: ArcOrientation,
    rigid: bool,
    bottom: bool,
    left: Letter,
    right: Letter,
) -> bool {
    if !rigid {
        return left == right;
    }
    let picture = orientation == ArcOrientation::Picture;
    // the bottom rule under one orientation is the top rule under the other
    if bottom == picture {
        left == right + 1
    } else {
        left + 1 == right
    }
}

/// The word `(1 2)^n` for rigid families and `0^{2n}` for pivotal ones.
pub fn family_word(family: Family, n: usize) -> Word {
    family.word(n)
}

/// All elements of one family's endomorphism monoid at one size, sorted by
/// canonical key, with an index for product lookups.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    family: Family,
    n: usize,
    word: Word,
    elements: Vec<Diagram>,
    index: HashMap<Box<[u16]>, u32>,
    identity: u32,
}

impl MonoidTable {
    pub fn enumerate(family: Family, n: usize) -> Result<MonoidTable, MonoidError> {
        Self::enumerate_with_budget(family, n, DEFAULT_BUDGET)
    }

    pub fn enumerate_with_budget(
        family: Family,
        n: usize,
        budget: u64,
    ) -> Result<MonoidTable, MonoidError> {
        if n == 0 {
            return Err(MonoidError::ZeroSize);
        }
        let predicted = combinat::monoid_size_formula(family, n)
            .to_u128()
            .unwrap_or(u128::MAX);
        if predicted > budget as u128 {
            return Err(MonoidError::BudgetExceeded { predicted, budget });
        }
        let word = family.word(n);
        let elements = enumerate_hom(&word, &word, family, budget)?;
        Ok(Self::from_sorted(family, n, word, elements))
    }

    fn from_sorted(family: Family, n: usize, word: Word, elements: Vec<Diagram>) -> MonoidTable {
        let index: HashMap<Box<[u16]>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, d)| (Box::from(d.links()), i as u32))
            .collect();
        let id = Diagram::identity(&word);
        let identity = index[id.links()];
        MonoidTable {
            family,
            n,
            word,
            elements,
            index,
            identity,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Diagram] {
        &self.elements
    }

    pub fn element(&self, id: u32) -> &Diagram {
        &self.elements[id as usize]
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn id_of(&self, d: &Diagram) -> Option<u32> {
        if d.bottom() != &self.word || d.top() != &self.word {
            return None;
        }
        self.index.get(d.links()).copied()
    }

    /// `a · b`: the diagram `a` stacked on top of `b`.
    pub fn product(&self, a: u32, b: u32) -> u32 {
        let mut buf = Vec::new();
        self.product_with(a, b, &mut buf)
    }

    /// As [`MonoidTable::product`], reusing `buf` as scratch space.
    pub fn product_with(&self, a: u32, b: u32, buf: &mut Vec<u16>) -> u32 {
        compose_links(&self.elements[b as usize], &self.elements[a as usize], buf);
        *self
            .index
            .get(buf.as_slice())
            .expect("diagram monoids are closed under composition")
    }

    /// Looks a composite up without assuming closure.
    pub fn try_product(&self, a: u32, b: u32) -> Option<u32> {
        let mut buf = Vec::new();
        compose_links(&self.elements[b as usize], &self.elements[a as usize], &mut buf);
        self.index.get(buf.as_slice()).copied()
    }

    pub fn header_line(&self) -> String {
        format!(
            "# family={} n={} count={}",
            self.family.tag(),
            self.n,
            self.elements.len()
        )
    }

    /// Header plus one canonical line per element, each newline terminated.
    pub fn export_text(&self) -> String {
        let mut s = self.header_line();
        s.push('\n');
        for d in &self.elements {
            s.push_str(&d.to_line());
            s.push('\n');
        }
        s
    }

    /// Rebuilds a table from [`MonoidTable::export_text`] output.
    pub fn from_export(text: &str) -> Result<MonoidTable, MonoidError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| MonoidError::Header("empty input".into()))?;
        let (family, n, count) = parse_header(header)?;
        let word = family.word(n);
        let mut elements = Vec::with_capacity(count);
        for (i, line) in lines.enumerate() {
            let d = Diagram::parse_line(line, family).map_err(|source| MonoidError::Parse {
                line: i + 2,
                source,
            })?;
            if d.bottom() != &word || d.top() != &word {
                return Err(MonoidError::WrongWord { line: i + 2 });
            }
            elements.push(d);
        }
        if elements.len() != count {
            return Err(MonoidError::Header(format!(
                "header announces {count} elements, found {}",
                elements.len()
            )));
        }
        elements.sort_unstable_by(|a, b| a.links().cmp(b.links()));
        for i in 1..elements.len() {
            if elements[i - 1] == elements[i] {
                return Err(MonoidError::Duplicate { line: i + 2 });
            }
        }
        if elements.binary_search_by(|d| d.links().cmp(Diagram::identity(&word).links())).is_err() {
            return Err(MonoidError::Header("identity missing".into()));
        }
        Ok(Self::from_sorted(family, n, word, elements))
    }
}

fn parse_header(header: &str) -> Result<(Family, usize, usize), MonoidError> {
    let bad = || MonoidError::Header(format!("malformed header `{header}`"));
    let rest = header.strip_prefix("# ").ok_or_else(bad)?;
    let mut family = None;
    let mut n = None;
    let mut count = None;
    for field in rest.split(' ') {
        let (key, value) = field.split_once('=').ok_or_else(bad)?;
        match key {
            "family" => family = Some(value.parse::<Family>().map_err(|_| bad())?),
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            "count" => count = Some(value.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    match (family, n, count) {
        (Some(f), Some(n), Some(c)) if n > 0 => Ok((f, n, c)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        assert_eq!(MonoidTable::enumerate(Family::RTl, 3).unwrap().len(), 10);
        assert_eq!(MonoidTable::enumerate(Family::RpRo, 1).unwrap().len(), 4);
        assert_eq!(MonoidTable::enumerate(Family::RMo, 1).unwrap().len(), 5);
        assert_eq!(MonoidTable::enumerate(Family::Tl, 2).unwrap().len(), 14);
        assert_eq!(MonoidTable::enumerate(Family::Mo, 1).unwrap().len(), 9);
        assert_eq!(MonoidTable::enumerate(Family::PRo, 1).unwrap().len(), 6);
    }

    #[test]
    fn rtl_one_is_trivial() {
        let t = MonoidTable::enumerate(Family::RTl, 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.export_text(), "# family=rtl n=1 count=1\n1,2;1,2;T(1,1) T(2,2)\n");
    }

    #[test]
    fn sorted_and_indexed() {
        let t = MonoidTable::enumerate(Family::RMo, 2).unwrap();
        for w in t.elements().windows(2) {
            assert!(w[0].canonical_key() < w[1].canonical_key());
        }
        for (i, d) in t.elements().iter().enumerate() {
            assert_eq!(t.id_of(d), Some(i as u32));
        }
        assert!(t.element(t.identity()).is_identity());
    }

    #[test]
    fn budget_is_enforced() {
        let err = MonoidTable::enumerate_with_budget(Family::RMo, 3, 100).unwrap_err();
        assert_eq!(
            err,
            MonoidError::BudgetExceeded {
                predicted: 937,
                budget: 100
            }
        );
        let w = Family::RMo.word(3);
        assert!(matches!(
            enumerate_hom(&w, &w, Family::RMo, 10),
            Err(MonoidError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn export_round_trip() {
        let t = MonoidTable::enumerate(Family::RTl, 3).unwrap();
        let text = t.export_text();
        assert_eq!(text.lines().count(), 11);
        let back = MonoidTable::from_export(&text).unwrap();
        assert_eq!(back.elements(), t.elements());
        assert_eq!(back.export_text(), text);
    }

    #[test]
    fn export_rejects_duplicates() {
        let t = MonoidTable::enumerate(Family::RTl, 2).unwrap();
        let mut text = t.export_text().replace("count=3", "count=4");
        let first = t.element(0).to_line();
        text.push_str(&first);
        text.push('\n');
        assert!(matches!(
            MonoidTable::from_export(&text),
            Err(MonoidError::Duplicate { .. })
        ));
    }
}
