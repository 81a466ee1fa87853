//! The oracle battery behind `repgap selfcheck`.
//!
//! Checks run in a fixed order and stop at the first failure, which is
//! reported with a serialized witness and exit code 3.

use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use repgap_core::asymptotics::{bound, log10_truncated_ss_gap, BoundSide, Quantity};
use repgap_core::combinat::{
    a_m0, binomial, catalan, catalan_convolution, chu_vandermonde, hyp2f1_terminating, monoid_size_formula,
    wz_certificate_check, BlockCase,
};
use repgap_core::diagram::{ArcOrientation, Diagram, DiagramError, Word};
use repgap_core::linalg::Field;
use repgap_core::monoids::{enumerate_hom, enumerate_hom_with, DEFAULT_BUDGET};
use repgap_core::repr::{repgap_semisimple, GapMode, GapOptions, Truncation};
use repgap_core::{Family, MonoidTable};

use crate::counting;
use crate::error::CliError;
use crate::parallel;

#[derive(Clone, Copy, Debug)]
pub struct Battery {
    pub quick: bool,
    pub orientation: ArcOrientation,
    pub tolerance: f64,
}

type Check = fn(&Battery) -> Result<String, CliError>;

const CHECKS: [(&str, Check); 10] = [
    ("enumeration", Battery::enumeration),
    ("monoid-laws", Battery::monoid_laws),
    ("green-structure", Battery::green_structure),
    ("cell-counts", Battery::cell_counts),
    ("gram-ranks", Battery::gram_ranks),
    ("hypergeometric", Battery::hypergeometric),
    ("catalan-blocks", Battery::catalan_blocks),
    ("truncated-gap", Battery::truncated_gap),
    ("sandwich", Battery::sandwich),
    ("serialization", Battery::serialization),
];

fn fail(check: &str, msg: String) -> CliError {
    CliError::Oracle(format!("selfcheck {check}: {msg}"))
}

/// Variant name of a diagram error, e.g. `LetterMismatch`.
fn variant(e: &DiagramError) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl Battery {
    /// Runs every check; returns the report lines.
    pub fn run(&self) -> Result<String, CliError> {
        let mut report = String::new();
        for (name, check) in CHECKS {
            let start = Instant::now();
            let detail = check(self)?;
            let line = format!("ok {name} ({detail}) {:.2}s\n", start.elapsed().as_secs_f64());
            eprint!("{line}");
            // timings are kept out of the report so it stays reproducible
            report.push_str(&format!("ok {name} ({detail})\n"));
        }
        Ok(report)
    }

    fn max_n(&self, f: Family) -> usize {
        if self.quick {
            return 2;
        }
        match f {
            Family::RTl => 6,
            Family::RpRo => 4,
            Family::Mo => 2,
            _ => 3,
        }
    }

    fn sizes(&self) -> impl Iterator<Item = (Family, usize)> + '_ {
        Family::ALL
            .into_iter()
            .flat_map(move |f| (1..=self.max_n(f)).map(move |n| (f, n)))
    }

    /// Every enumerated element re-validates and the counts match the
    /// closed forms.
    fn enumeration(&self) -> Result<String, CliError> {
        let mut total = 0;
        for (f, n) in self.sizes() {
            let w = f.word(n);
            let elements = enumerate_hom_with(&w, &w, f, self.orientation, DEFAULT_BUDGET)?;
            for d in &elements {
                let line = d.to_line();
                match Diagram::parse_line(&line, f) {
                    Ok(back) if &back == d => {}
                    Ok(_) => return Err(fail("enumeration", format!("{f}_{n}: round trip changed witness=\"{line}\""))),
                    Err(e) => {
                        return Err(fail(
                            "enumeration",
                            format!("{f}_{n}: {} witness=\"{line}\" reason=\"{e}\"", variant(&e)),
                        ))
                    }
                }
            }
            let formula = monoid_size_formula(f, n);
            if BigInt::from(elements.len()) != formula {
                return Err(fail(
                    "enumeration",
                    format!("{f}_{n}: enumerated {} elements, formula gives {formula}", elements.len()),
                ));
            }
            total += elements.len();
        }
        Ok(format!("{total} elements"))
    }

    fn monoid_laws(&self) -> Result<String, CliError> {
        let mut rng = StdRng::seed_from_u64(11);
        let mut triples = 0;
        for (f, n) in self.sizes().filter(|&(_, n)| n <= 3) {
            let t = MonoidTable::enumerate(f, n)?;
            let len = t.len() as u32;
            let id = Diagram::identity(t.word());
            for (i, d) in t.elements().iter().enumerate() {
                if d.compose(&id).ok().as_ref() != Some(d) || id.compose(d).ok().as_ref() != Some(d) {
                    return Err(fail("monoid-laws", format!("{f}_{n}: identity fails witness=\"{}\"", d.to_line())));
                }
                if d.flip().flip() != *d {
                    return Err(fail("monoid-laws", format!("{f}_{n}: flip witness=\"{}\"", d.to_line())));
                }
                if len <= 2000 {
                    for b in 0..len {
                        if t.try_product(i as u32, b).is_none() {
                            return Err(fail(
                                "monoid-laws",
                                format!("{f}_{n}: product leaves the monoid witness=\"{}\" \"{}\"", d.to_line(), t.element(b).to_line()),
                            ));
                        }
                    }
                }
            }
            for _ in 0..300 {
                let [a, b, c] = [0; 3].map(|_| t.element(rng.gen_range(0..len)));
                let compose = |x: &Diagram, y: &Diagram| x.compose(y).map_err(|e| fail("monoid-laws", e.to_string()));
                let left = compose(&compose(a, b)?, c)?;
                let right = compose(a, &compose(b, c)?)?;
                if left != right {
                    return Err(fail(
                        "monoid-laws",
                        format!("{f}_{n}: not associative witness=\"{}\" \"{}\" \"{}\"", a.to_line(), b.to_line(), c.to_line()),
                    ));
                }
                if compose(a, b)?.flip() != compose(&b.flip(), &a.flip())? {
                    return Err(fail("monoid-laws", format!("{f}_{n}: flip is not an anti-homomorphism witness=\"{}\" \"{}\"", a.to_line(), b.to_line())));
                }
                triples += 1;
            }
        }
        Ok(format!("{triples} random triples"))
    }

    fn green_structure(&self) -> Result<String, CliError> {
        let mut cells = 0;
        for (f, n) in self.sizes().filter(|&(f, n)| n <= 3 && !(f == Family::Mo && n == 3)) {
            let t = MonoidTable::enumerate(f, n)?;
            let g = parallel::green_structure(&t)?;
            let report = g
                .check_structure(&t)
                .map_err(|e| fail("green-structure", format!("{f}_{n}: {e}")))?;
            cells += report.j_cells;
        }
        let t = MonoidTable::enumerate(Family::RTl, 3)?;
        let g = parallel::green_structure(&t)?;
        let shapes: Vec<(usize, usize, usize, bool)> = g
            .j_cells
            .iter()
            .map(|j| (j.k, j.right_cells.len(), j.left_cells.len(), j.idempotent))
            .collect();
        if shapes != [(2, 3, 1, true), (4, 3, 2, true), (6, 1, 1, true)] || g.h_cells.iter().any(|h| h.len() != 1) {
            return Err(fail("green-structure", format!("rtl_3 eggbox is {shapes:?}")));
        }
        Ok(format!("{cells} J-cells"))
    }

    fn cell_counts(&self) -> Result<String, CliError> {
        let mut labels = 0;
        for (f, n) in self.sizes().filter(|&(_, n)| n <= 3) {
            let a = counting::formula_rows(f, n)?;
            let b = counting::brute_rows(f, n, DEFAULT_BUDGET)?;
            counting::compare(f, n, &a, &b)?;
            labels += a.len();
        }
        Ok(format!("{labels} labels"))
    }

    fn gram_ranks(&self) -> Result<String, CliError> {
        let fields = [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5)];
        let mut grams = 0;
        for n in 1..=self.max_n(Family::RpRo) {
            let t = MonoidTable::enumerate(Family::RpRo, n)?;
            let g = parallel::green_structure(&t)?;
            for field in fields {
                let dims = parallel::apex_dims(&t, &g, field, |_| true)?;
                let total: usize = dims.iter().map(|d| d.rank * d.rank).sum();
                if let Some(d) = dims.iter().find(|d| d.rows != d.cols || d.rank != d.cols) {
                    return Err(fail(
                        "gram-ranks",
                        format!("rpro_{n} {field}: k={} alpha={} is {}x{} of rank {}", d.k, d.alpha.spaced(), d.rows, d.cols, d.rank),
                    ));
                }
                if total != t.len() {
                    return Err(fail("gram-ranks", format!("rpro_{n} {field}: squares sum to {total}, not {}", t.len())));
                }
                grams += dims.len();
            }
        }
        for n in 1..=self.max_n(Family::RTl).min(5) {
            let t = MonoidTable::enumerate(Family::RTl, n)?;
            let g = parallel::green_structure(&t)?;
            for field in &fields[..3] {
                for d in parallel::apex_dims(&t, &g, *field, |_| true)? {
                    let expect = binomial(n as i64 - 1, (2 * n - d.k) as i64 / 2);
                    if BigInt::from(d.rank) != expect {
                        return Err(fail("gram-ranks", format!("rtl_{n} {field}: k={} rank {} instead of {expect}", d.k, d.rank)));
                    }
                    grams += 1;
                }
            }
        }
        if !self.quick {
            let t = MonoidTable::enumerate(Family::RMo, 3)?;
            let g = parallel::green_structure(&t)?;
            let dims = parallel::apex_dims(&t, &g, Field::Rationals, |k| k == 2)?;
            let mut ranks: Vec<usize> = dims.iter().map(|d| d.rank).collect();
            let mut ss: Vec<usize> = dims.iter().map(|d| d.ssdim).collect();
            ranks.sort_unstable();
            ss.sort_unstable();
            if ranks != [4, 5, 5, 12] || ss != [5, 5, 5, 14] {
                return Err(fail("gram-ranks", format!("rmo_3 k=2 ranks {ranks:?}, cell sizes {ss:?}")));
            }
            grams += dims.len();
        }
        Ok(format!("{grams} Gram matrices"))
    }

    fn hypergeometric(&self) -> Result<String, CliError> {
        let (sums, certificates) = if self.quick { (200, 20) } else { (1000, 100) };
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut checked = 0;
        while checked < sums {
            let (m, b, c) = (rng.gen_range(0..=30u64), rng.gen_range(-40..=40i64), rng.gen_range(-40..=40i64));
            let (Ok(lhs), Ok(rhs)) = (hyp2f1_terminating(m, b, c), chu_vandermonde(m, b, c)) else {
                continue;
            };
            if lhs != rhs {
                return Err(fail("hypergeometric", format!("(m, b, c) = ({m}, {b}, {c}): sum {lhs}, closed form {rhs}")));
            }
            checked += 1;
        }
        let mut certified = 0;
        while certified < certificates {
            let (m, b, c) = (rng.gen_range(1..=30u64), rng.gen_range(-40..=40i64), rng.gen_range(-40..=40i64));
            match wz_certificate_check(m, b, c) {
                Ok(Some(true)) => certified += 1,
                Ok(Some(false)) => return Err(fail("hypergeometric", format!("WZ certificate fails at ({m}, {b}, {c})"))),
                _ => {}
            }
        }
        Ok(format!("{sums} sums, {certificates} certificates"))
    }

    fn catalan_blocks(&self) -> Result<String, CliError> {
        let cat: Vec<BigInt> = (0..=12).map(catalan).collect();
        for kfold in 1..=6u64 {
            // direct convolution
            let mut acc = vec![BigInt::from(0); 13];
            acc[0] = BigInt::from(1);
            for _ in 0..kfold {
                let mut next = vec![BigInt::from(0); 13];
                for i in 0..13 {
                    for j in 0..13 - i {
                        next[i + j] += &acc[i] * &cat[j];
                    }
                }
                acc = next;
            }
            for (n, want) in acc.iter().enumerate() {
                if &catalan_convolution(kfold, n as u64) != want {
                    return Err(fail("catalan-blocks", format!("{kfold}-fold convolution at n={n}")));
                }
            }
        }
        let limit = if self.quick { 4 } else { 8 };
        let count = |w: &Word| -> Result<BigInt, CliError> { Ok(enumerate_hom(w, &Word::empty(), Family::RMo, DEFAULT_BUDGET)?.len().into()) };
        for m in 0..=limit {
            let w = Word::new((0..m).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect());
            if count(&w)? != a_m0(m) {
                return Err(fail("catalan-blocks", format!("bottom halves on {m} points")));
            }
        }
        for case in BlockCase::ALL {
            for size in 0..=limit {
                if let Some(shape) = case.shape(size) {
                    if Some(count(&shape)?) != case.count(size) {
                        return Err(fail("catalan-blocks", format!("{case:?} at size {size}")));
                    }
                }
            }
        }
        Ok(format!("block sizes <= {limit}"))
    }

    fn truncated_gap(&self) -> Result<String, CliError> {
        let opts = GapOptions {
            mode: GapMode::Semisimple,
            truncation: Truncation::Paper,
            ..GapOptions::default()
        };
        let r = repgap_semisimple(Family::RTl, 8, &opts)?;
        let window = r.window.map(|w| (w.lo, w.hi));
        if r.gap != BigInt::from(21) || window != Some((6, 12)) {
            return Err(fail("truncated-gap", format!("rtl_8 gives {} over {window:?}", r.gap)));
        }
        for (f, n, want) in [(Family::Tl, 2, 14), (Family::Mo, 1, 9), (Family::PRo, 1, 6)] {
            let brute = MonoidTable::enumerate(f, n)?.len();
            let formula = monoid_size_formula(f, n);
            if brute != want || formula != BigInt::from(want) {
                return Err(fail("truncated-gap", format!("{f}_{n}: enumerated {brute}, formula {formula}")));
            }
        }
        Ok("rtl_8 gap 21 on 6..12".into())
    }

    fn sandwich(&self) -> Result<String, CliError> {
        for f in [Family::RTl, Family::RpRo] {
            let lo = bound(f, Quantity::Gap, BoundSide::Lower)?;
            let up = bound(f, Quantity::Gap, BoundSide::Upper)?;
            for n in [100usize, 500, 1000] {
                let v = log10_truncated_ss_gap(f, n)?;
                let (l, u) = (lo.eval_log10(n as f64)?, up.eval_log10(n as f64)?);
                if v < l - self.tolerance || v > u + self.tolerance {
                    return Err(fail("sandwich", format!("{f}_{n}: log10 gap {v:.6} outside [{l:.6}, {u:.6}]")));
                }
            }
        }
        Ok(format!("tolerance {}", self.tolerance))
    }

    fn serialization(&self) -> Result<String, CliError> {
        let t = MonoidTable::enumerate(Family::RMo, 2)?;
        let back = MonoidTable::from_export(&t.export_text())?;
        if back.elements() != t.elements() || back.export_text() != t.export_text() {
            return Err(fail("serialization", "rmo_2 element list does not round trip".into()));
        }
        Ok(format!("{} lines", t.len()))
    }
}
