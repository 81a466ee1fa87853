//! Cell sizes per label `(k, j)`, by closed form and by enumeration.

use num_bigint::BigInt;
use repgap_core::combinat::{cell_count, count_12, pivotal_half_counts, CellSide, RigidCounts};
use repgap_core::diagram::Word;
use repgap_core::monoids::enumerate_hom;
use repgap_core::{Family, Letter};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRow {
    pub k: usize,
    pub j: usize,
    pub right: BigInt,
    pub left: BigInt,
}

impl CellRow {
    pub fn jcell_size(&self) -> BigInt {
        &self.right * &self.left
    }
}

/// Labels in `(k, j)` order. Pivotal families carry `j = 0`.
pub fn labels(family: Family, n: usize) -> Result<Vec<(usize, usize)>, CliError> {
    if family.is_rigid() {
        Ok(RigidCounts::new(family, n)?.labels().collect())
    } else {
        Ok((0..=2 * n).filter(|&k| family.k_feasible(n, k)).map(|k| (k, 0)).collect())
    }
}

/// Closed forms; for `rMo` both forms are evaluated and compared.
pub fn formula_rows(family: Family, n: usize) -> Result<Vec<CellRow>, CliError> {
    if !family.is_rigid() {
        let halves = pivotal_half_counts(family, 2 * n);
        return Ok(labels(family, n)?
            .into_iter()
            .map(|(k, j)| CellRow {
                k,
                j,
                right: halves[k].clone(),
                left: halves[k].clone(),
            })
            .collect());
    }
    labels(family, n)?
        .into_iter()
        .map(|(k, j)| {
            Ok(CellRow {
                k,
                j,
                right: cell_count(family, n, k, j, CellSide::Right)?,
                left: cell_count(family, n, k, j, CellSide::Left)?,
            })
        })
        .collect()
}

/// Through sequences carrying the label `(k, j)`.
pub fn sequences(family: Family, k: usize, j: usize) -> Vec<Vec<Letter>> {
    match family {
        Family::RTl => vec![(0..k).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect()],
        Family::RMo | Family::RpRo => (0..1u64 << k)
            .map(|bits| (0..k).map(|i| 1 + ((bits >> i) & 1) as Letter).collect::<Vec<_>>())
            .filter(|a| count_12(a) == j)
            .collect(),
        _ => vec![vec![0; k]],
    }
}

fn full_through(bottom: &Word, top: &Word, family: Family, k: usize, budget: u64) -> Result<BigInt, CliError> {
    let ds = enumerate_hom(bottom, top, family, budget)?;
    Ok(ds.iter().filter(|d| d.through_count() == k).count().into())
}

/// Counts by enumerating half diagrams onto every sequence of the label;
/// fails if two sequences with the same label disagree.
pub fn brute_rows(family: Family, n: usize, budget: u64) -> Result<Vec<CellRow>, CliError> {
    let w = family.word(n);
    labels(family, n)?
        .into_iter()
        .map(|(k, j)| {
            let mut row: Option<CellRow> = None;
            for alpha in sequences(family, k, j) {
                let a = Word::new(alpha);
                let here = CellRow {
                    k,
                    j,
                    right: full_through(&w, &a, family, k, budget)?,
                    left: full_through(&a, &w, family, k, budget)?,
                };
                match &row {
                    Some(r) if *r != here => {
                        return Err(CliError::Oracle(format!(
                            "{family}_{n}: cells over sequence [{}] differ from others with k={k} j={j}",
                            a.spaced()
                        )))
                    }
                    Some(_) => {}
                    None => row = Some(here),
                }
            }
            Ok(row.expect("every label has a sequence"))
        })
        .collect()
}

/// Formula and enumeration must agree label by label.
pub fn compare(family: Family, n: usize, formula: &[CellRow], brute: &[CellRow]) -> Result<(), CliError> {
    for (f, b) in formula.iter().zip(brute) {
        if f != b {
            return Err(CliError::Oracle(format!(
                "{family}_{n} k={} j={}: formula gives right={} left={}, enumeration gives right={} left={}",
                f.k, f.j, f.right, f.left, b.right, b.left
            )));
        }
    }
    if formula.len() != brute.len() {
        return Err(CliError::Oracle(format!("{family}_{n}: label lists differ")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use repgap_core::monoids::DEFAULT_BUDGET;

    #[test]
    fn routes_agree_small() {
        for f in Family::ALL {
            for n in 1..=2 {
                let a = formula_rows(f, n).unwrap();
                let b = brute_rows(f, n, DEFAULT_BUDGET).unwrap();
                compare(f, n, &a, &b).unwrap();
            }
        }
    }

    #[test]
    fn rtl3_rows() {
        let rows = formula_rows(Family::RTl, 3).unwrap();
        let sizes: Vec<(usize, u32)> = rows
            .iter()
            .map(|r| (r.k, u32::try_from(r.jcell_size()).unwrap()))
            .collect();
        assert_eq!(sizes, vec![(2, 3), (4, 6), (6, 1)]);
    }
}
