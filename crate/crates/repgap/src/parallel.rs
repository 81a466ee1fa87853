//! Parallel drivers over the core crate. Each one collects in input order,
//! so results do not depend on the number of workers.

use rayon::prelude::*;
use repgap_core::green::{ideal_row, GreenError, IdealSide, DEFAULT_GREEN_LIMIT};
use repgap_core::linalg::Field;
use repgap_core::repr::{apex_dim, ApexDim, ReprError};
use repgap_core::{GreenStructure, MonoidTable};

/// Green's relations with the principal ideals computed in parallel.
pub fn green_structure(table: &MonoidTable) -> Result<GreenStructure, GreenError> {
    if table.len() > DEFAULT_GREEN_LIMIT {
        return Err(GreenError::TooLarge {
            size: table.len(),
            limit: DEFAULT_GREEN_LIMIT,
        });
    }
    let rows = |side| {
        (0..table.len() as u32)
            .into_par_iter()
            .map_init(Vec::new, |buf, a| ideal_row(table, a, side, buf))
            .collect::<Vec<_>>()
    };
    let left = rows(IdealSide::Left);
    let right = rows(IdealSide::Right);
    GreenStructure::from_rows(table, &left, &right)
}

/// Gram ranks of the selected J-cells, one task per cell.
pub fn apex_dims(
    table: &MonoidTable,
    structure: &GreenStructure,
    field: Field,
    keep: impl Fn(usize) -> bool + Sync,
) -> Result<Vec<ApexDim>, ReprError> {
    structure
        .j_cells
        .par_iter()
        .filter(|j| keep(j.k))
        .map(|j| apex_dim(table, structure, j, field))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use repgap_core::Family;

    #[test]
    fn matches_sequential() {
        for (f, n) in [(Family::RMo, 2), (Family::Tl, 3), (Family::RpRo, 2)] {
            let t = MonoidTable::enumerate(f, n).unwrap();
            let seq = GreenStructure::compute(&t).unwrap();
            let par = green_structure(&t).unwrap();
            assert_eq!(seq.render_ascii(), par.render_ascii());
            assert_eq!(seq.render_dot(), par.render_dot());
        }
    }
}
