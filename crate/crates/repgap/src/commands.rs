//! One function per subcommand.

use rayon::prelude::*;
use repgap_core::asymptotics::{
    bound, figure_points, intro_n_values, AsymptoticsError, BoundSide, FigureId, FigurePoint, Quantity,
};
use repgap_core::linalg::Field;
use repgap_core::repr::{cmp_dims, repgap_from_dims, repgap_semisimple, GapOptions, GapReport};
use repgap_core::{Family, MonoidTable};

use crate::cli::{EggboxFormat, Sizes, Source, TableSource, Target};
use crate::counting::{self, CellRow};
use crate::error::CliError;
use crate::io::{csv_text, fixed, label, load_table, Sink};
use crate::parallel;

pub const GREEN_HEADER: [&str; 9] = [
    "family", "n", "jcell_id", "k", "alpha", "left_cells", "right_cells", "size", "idempotent",
];
pub const COUNTS_HEADER: [&str; 8] = ["family", "n", "k", "j", "right_size", "left_size", "jcell_size", "source"];
pub const GRAM_HEADER: [&str; 9] = ["family", "n", "k", "alpha", "rows", "cols", "field", "rank", "ssdim"];
pub const GAP_HEADER: [&str; 11] = [
    "family",
    "n",
    "mode",
    "field",
    "window_lo",
    "window_hi",
    "gap",
    "log10_gap",
    "denominator_mode",
    "log10_ratio",
    "witness_apexes",
];
pub const BOUNDS_HEADER: [&str; 6] = ["family", "quantity", "side", "n", "log10_value", "known"];
pub const FIGURE_HEADER: [&str; 4] = ["figure_id", "series", "n_or_k", "log10_value"];

fn table(source: &TableSource) -> Result<MonoidTable, CliError> {
    let t = &source.target;
    match &source.input {
        Some(path) => {
            let table = load_table(path)?;
            if table.family() != t.family || table.n() != t.n {
                return Err(CliError::Usage(format!(
                    "{} holds {}_{}, not {}_{}",
                    path.display(),
                    table.family(),
                    table.n(),
                    t.family,
                    t.n
                )));
            }
            Ok(table)
        }
        None => Ok(MonoidTable::enumerate_with_budget(t.family, t.n, t.budget)?),
    }
}

pub fn enumerate(t: &Target, sink: &Sink) -> Result<(), CliError> {
    let table = MonoidTable::enumerate_with_budget(t.family, t.n, t.budget)?;
    sink.emit(&label(t.family.tag(), &t.n.to_string()), "elements.txt", &table.export_text(), true)
}

pub fn eggbox(source: &TableSource, format: EggboxFormat, sink: &Sink) -> Result<(), CliError> {
    let table = table(source)?;
    let g = parallel::green_structure(&table)?;
    let (f, n) = (table.family(), table.n());
    let rows: Vec<Vec<String>> = g
        .j_cells
        .iter()
        .map(|j| {
            vec![
                f.tag().into(),
                n.to_string(),
                j.id.to_string(),
                j.k.to_string(),
                j.alpha.spaced(),
                j.left_cells.len().to_string(),
                j.right_cells.len().to_string(),
                j.members.len().to_string(),
                j.idempotent.to_string(),
            ]
        })
        .collect();
    let dir = label(f.tag(), &n.to_string());
    sink.emit(&dir, "eggbox.txt", &g.render_ascii(), format == EggboxFormat::Ascii)?;
    sink.emit(&dir, "eggbox.dot", &g.render_dot(), format == EggboxFormat::Dot)?;
    sink.emit(&dir, "green.csv", &csv_text(&GREEN_HEADER, &rows)?, format == EggboxFormat::Csv)
}

fn count_rows(family: Family, n: usize, rows: &[CellRow], source: &str) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                family.tag().into(),
                n.to_string(),
                r.k.to_string(),
                r.j.to_string(),
                r.right.to_string(),
                r.left.to_string(),
                r.jcell_size().to_string(),
                source.into(),
            ]
        })
        .collect()
}

pub fn counts(family: Family, sizes: &Sizes, source: Source, budget: u64, sink: &Sink) -> Result<(), CliError> {
    let per_n: Vec<Vec<Vec<String>>> = sizes
        .values
        .par_iter()
        .map(|&n| -> Result<_, CliError> {
            let mut out = Vec::new();
            let formula = match source {
                Source::Brute => None,
                _ => Some(counting::formula_rows(family, n)?),
            };
            let brute = match source {
                Source::Formula => None,
                _ => Some(counting::brute_rows(family, n, budget)?),
            };
            if let (Some(a), Some(b)) = (&formula, &brute) {
                counting::compare(family, n, a, b)?;
            }
            if let Some(a) = &formula {
                out.extend(count_rows(family, n, a, "formula"));
            }
            if let Some(b) = &brute {
                out.extend(count_rows(family, n, b, "brute"));
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<String>> = per_n.into_iter().flatten().collect();
    sink.emit(&label(family.tag(), &sizes.raw), "counts.csv", &csv_text(&COUNTS_HEADER, &rows)?, true)
}

pub fn gram(source: &TableSource, k: Option<usize>, field: Field, sink: &Sink) -> Result<(), CliError> {
    let table = table(source)?;
    let g = parallel::green_structure(&table)?;
    let mut dims = parallel::apex_dims(&table, &g, field, |jk| k.is_none_or(|want| want == jk))?;
    // by layer, then by rank within a layer
    dims.sort_by(|a, b| a.k.cmp(&b.k).then_with(|| cmp_dims(a, b)));
    if dims.is_empty() {
        return Err(CliError::Infeasible(format!(
            "{}_{} has no J-cell with the requested k",
            table.family(),
            table.n()
        )));
    }
    let rows: Vec<Vec<String>> = dims
        .iter()
        .map(|d| {
            vec![
                table.family().tag().into(),
                table.n().to_string(),
                d.k.to_string(),
                d.alpha.spaced(),
                d.rows.to_string(),
                d.cols.to_string(),
                field.to_string(),
                d.rank.to_string(),
                d.ssdim.to_string(),
            ]
        })
        .collect();
    let dir = label(table.family().tag(), &table.n().to_string());
    sink.emit(&dir, "gram.csv", &csv_text(&GRAM_HEADER, &rows)?, true)
}

fn enumerated_gap(family: Family, n: usize, opts: &GapOptions, budget: u64) -> Result<GapReport, CliError> {
    let table = MonoidTable::enumerate_with_budget(family, n, budget)?;
    let g = parallel::green_structure(&table)?;
    let dims = parallel::apex_dims(&table, &g, opts.field, |_| true)?;
    Ok(repgap_from_dims(&table, &g, dims, opts)?)
}

/// The gap at one size along the chosen route.
pub fn gap_report(family: Family, n: usize, opts: &GapOptions, source: Source, budget: u64) -> Result<GapReport, CliError> {
    match source {
        Source::Formula => Ok(repgap_semisimple(family, n, opts)?),
        Source::Brute => enumerated_gap(family, n, opts, budget),
        Source::Both => {
            let a = repgap_semisimple(family, n, opts)?;
            let b = enumerated_gap(family, n, opts, budget)?;
            if a.gap != b.gap || a.denominator != b.denominator {
                return Err(CliError::Oracle(format!(
                    "{family}_{n}: closed forms give gap {} over {}, enumeration gives {} over {}",
                    a.gap, a.denominator, b.gap, b.denominator
                )));
            }
            Ok(a)
        }
    }
}

pub fn gap_row(r: &GapReport) -> Vec<String> {
    let (lo, hi) = r
        .window
        .map_or((String::new(), String::new()), |w| (w.lo.to_string(), w.hi.to_string()));
    vec![
        r.family.tag().into(),
        r.n.to_string(),
        r.mode.to_string(),
        r.field.to_string(),
        lo,
        hi,
        r.gap.to_string(),
        fixed(r.log10_gap),
        r.denominator_mode.to_string(),
        fixed(r.log10_ratio),
        r.witness_string(),
    ]
}

pub fn gap(family: Family, sizes: &Sizes, opts: &GapOptions, source: Source, budget: u64, sink: &Sink) -> Result<(), CliError> {
    let reports: Vec<GapReport> = sizes
        .values
        .par_iter()
        .map(|&n| gap_report(family, n, opts, source, budget))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<String>> = reports.iter().map(gap_row).collect();
    sink.emit(&label(family.tag(), &sizes.raw), "gap.csv", &csv_text(&GAP_HEADER, &rows)?, true)
}

pub fn bounds(
    family: Option<Family>,
    quantity: Option<Quantity>,
    side: Option<BoundSide>,
    sizes: &Sizes,
    show: bool,
    sink: &Sink,
) -> Result<(), CliError> {
    let explicit = family.is_some() && quantity.is_some() && side.is_some();
    let families: Vec<Family> = family.map_or(Family::ALL.to_vec(), |f| vec![f]);
    let quantities: Vec<Quantity> = quantity.map_or(Quantity::ALL.to_vec(), |q| vec![q]);
    let sides: Vec<BoundSide> = side.map_or(vec![BoundSide::Lower, BoundSide::Upper], |s| vec![s]);
    let mut rows = Vec::new();
    let mut text = String::new();
    for &f in &families {
        for &q in &quantities {
            for &s in &sides {
                let e = match bound(f, q, s) {
                    Ok(e) => e,
                    Err(AsymptoticsError::NotStated { .. }) if !explicit => continue,
                    Err(err) => return Err(err.into()),
                };
                text.push_str(&format!("{f} {q} {s}: {e}\n"));
                for &n in &sizes.values {
                    let value = match e.eval_log10(n as f64) {
                        Ok(v) => fixed(v),
                        Err(AsymptoticsError::UnknownPrefactor) => String::new(),
                        Err(err) => return Err(err.into()),
                    };
                    rows.push(vec![
                        f.tag().into(),
                        q.to_string(),
                        s.to_string(),
                        n.to_string(),
                        value,
                        e.known.to_string(),
                    ]);
                }
            }
        }
    }
    let dir = label(family.map_or("all", |f| f.tag()), &sizes.raw);
    sink.emit(&dir, "bounds.txt", &text, show)?;
    sink.emit(&dir, "bounds.csv", &csv_text(&BOUNDS_HEADER, &rows)?, !show)
}

fn figure_rows(points: &[FigurePoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| {
            vec![
                p.figure.as_str().into(),
                p.series.clone(),
                p.x.to_string(),
                fixed(p.log10_value),
            ]
        })
        .collect()
}

pub fn figures(figure: Option<FigureId>, sizes: Option<&Sizes>, sink: &Sink) -> Result<(), CliError> {
    let ids: Vec<FigureId> = figure.map_or(FigureId::ALL.to_vec(), |f| vec![f]);
    let blocks: Vec<Vec<FigurePoint>> = ids
        .par_iter()
        .map(|&id| -> Result<Vec<FigurePoint>, CliError> {
            let points = match (id, sizes) {
                (FigureId::IntroGap, None) => figure_points(id, &intro_n_values())?,
                (FigureId::IntroGap, Some(s)) => figure_points(id, &s.values)?,
                (_, None) => figure_points(id, &[id.default_n()])?,
                (_, Some(s)) => {
                    let mut all = Vec::new();
                    for &n in &s.values {
                        all.extend(figure_points(id, &[n])?);
                    }
                    all
                }
            };
            Ok(points)
        })
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<String>> = blocks.iter().flat_map(|b| figure_rows(b)).collect();
    let dir = label("figures", sizes.map_or("default", |s| s.raw.as_str()));
    sink.emit(&dir, "figure.csv", &csv_text(&FIGURE_HEADER, &rows)?, true)
}
