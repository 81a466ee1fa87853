use num_bigint::BigInt;
use repgap_core::combinat::{cell_count, sequence_count, CellSide};
use repgap_core::green::GreenStructure;
use repgap_core::monoids::MonoidTable;
use repgap_core::Family;

fn structure(f: Family, n: usize) -> (MonoidTable, GreenStructure) {
    let t = MonoidTable::enumerate(f, n).unwrap();
    let g = GreenStructure::compute(&t).unwrap();
    (t, g)
}

fn shapes(g: &GreenStructure) -> Vec<(usize, usize, usize)> {
    g.j_cells
        .iter()
        .map(|j| (j.k, j.right_cells.len(), j.left_cells.len()))
        .collect()
}

#[test]
fn rtl3_eggbox() {
    let (t, g) = structure(Family::RTl, 3);
    assert_eq!(shapes(&g), vec![(2, 3, 1), (4, 3, 2), (6, 1, 1)]);
    assert!(g.j_cells.iter().all(|j| j.idempotent));
    assert!(g.h_cells.iter().all(|h| h.len() == 1));
    assert_eq!(g.j_cells[g.bottom_cell].k, 6);
    assert_eq!(g.j_cells[g.top_cell].k, 2);
    assert!(g.j_leq(g.bottom_cell, g.top_cell));
    assert!(!g.j_leq(g.top_cell, g.bottom_cell));
    assert_eq!(g.j_of(t.identity()), g.bottom_cell);
}

#[test]
fn rtl_structure_up_to_five() {
    for n in 1..=5 {
        let (t, g) = structure(Family::RTl, n);
        g.check_structure(&t).unwrap();
        // the two-sided order is total
        for x in 0..g.j_cells.len() {
            for y in 0..g.j_cells.len() {
                assert!(g.j_leq(x, y) || g.j_leq(y, x));
            }
        }
    }
}

#[test]
fn all_families_up_to_three() {
    for f in Family::ALL {
        for n in 1..=3 {
            if f == Family::Mo && n == 3 {
                continue;
            }
            let (t, g) = structure(f, n);
            g.check_structure(&t).unwrap_or_else(|e| panic!("{f}_{n}: {e}"));
            for j in &g.j_cells {
                assert_eq!(j.members.len(), j.left_cells.len() * j.right_cells.len());
            }
        }
    }
}

#[test]
fn motzkin_three_structure() {
    let (t, g) = structure(Family::Mo, 3);
    g.check_structure(&t).unwrap();
}

#[test]
fn rmo3_cells() {
    let (t, g) = structure(Family::RMo, 3);
    g.check_structure(&t).unwrap();
    let expect: BigInt = (0..=6usize)
        .flat_map(|k| (0..=k / 2).map(move |j| (k, j)))
        .filter(|&(k, j)| cell_count(Family::RMo, 3, k, j, CellSide::Right).unwrap() != BigInt::from(0))
        .map(|(k, j)| sequence_count(k, j))
        .sum();
    assert_eq!(expect, 33.into());
    assert_eq!(g.j_cells.len(), 33);
    let singles: Vec<_> = g
        .j_cells
        .iter()
        .filter(|j| j.k == 3 && !j.alpha.letters().windows(2).any(|w| w == [1, 2]))
        .collect();
    assert_eq!(singles.len(), 4);
    assert!(singles.iter().all(|j| j.members.len() == 1));
}

#[test]
fn rmo2_order_is_subsequence_order() {
    let (t, g) = structure(Family::RMo, 2);
    let report = g.check_structure(&t).unwrap();
    assert_eq!(report.order_pairs, g.j_cells.len() * g.j_cells.len());
}

#[test]
fn rpro_cells() {
    let (t, g) = structure(Family::RpRo, 3);
    g.check_structure(&t).unwrap();
    let k3: Vec<_> = g.j_cells.iter().filter(|j| j.k == 3).collect();
    assert_eq!(k3.len(), 8);
    let singles: Vec<_> = k3.iter().filter(|j| j.members.len() == 1).collect();
    assert_eq!(singles.len(), 4);
    assert!(singles.iter().all(|j| !j.alpha.letters().windows(2).any(|w| w == [1, 2])));

    let (_, g) = structure(Family::RpRo, 1);
    let sizes: Vec<(usize, usize)> = g.j_cells.iter().map(|j| (j.k, j.members.len())).collect();
    assert_eq!(sizes, vec![(0, 1), (1, 1), (1, 1), (2, 1)]);
}

#[test]
fn renderings() {
    let (_, g) = structure(Family::RTl, 1);
    assert_eq!(g.render_ascii(), "J0 k=2 alpha=1 2 1x1\n[*]\n\n");
    let (_, g) = structure(Family::RTl, 3);
    let ascii = g.render_ascii();
    let headers: Vec<&str> = ascii.lines().filter(|l| l.starts_with('J')).collect();
    assert!(headers[0].ends_with("3x1"));
    assert!(headers[1].ends_with("3x2"));
    assert!(headers[2].ends_with("1x1"));
    let dot = g.render_dot();
    assert!(dot.contains("k=4 alpha=1 2 1 2"));
    assert!(dot.contains("->"));
}
