use num_bigint::BigInt;
use repgap_core::combinat::{binomial, monoid_size_formula};
use repgap_core::green::GreenStructure;
use repgap_core::linalg::Field;
use repgap_core::monoids::MonoidTable;
use repgap_core::repr::{
    repgap_enumerated, repgap_semisimple, simple_dims, ApexLabel, CellModule, GapMode, GapOptions,
    GramMatrix, ModuleSide,
};
use repgap_core::Family;

fn structure(f: Family, n: usize) -> (MonoidTable, GreenStructure) {
    let t = MonoidTable::enumerate(f, n).unwrap();
    let g = GreenStructure::compute(&t).unwrap();
    (t, g)
}

const FIELDS: [Field; 4] = [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5)];

#[test]
fn rmo3_layer_two() {
    let (t, g) = structure(Family::RMo, 3);
    let dims = simple_dims(&t, &g, Field::Rationals).unwrap();
    let mut layer: Vec<_> = dims.iter().filter(|d| d.k == 2).collect();
    layer.sort_by_key(|d| (d.rank, d.ssdim));
    let ranks: Vec<usize> = layer.iter().map(|d| d.rank).collect();
    let mut ss: Vec<usize> = layer.iter().map(|d| d.ssdim).collect();
    ss.sort();
    assert_eq!(ranks, vec![4, 5, 5, 12]);
    assert_eq!(ss, vec![5, 5, 5, 14]);
    assert_eq!(layer[0].alpha.letters(), &[2, 1]);
    assert!(dims.iter().all(|d| d.rank <= d.ssdim));
    assert!(dims.iter().any(|d| d.rank < d.ssdim));

    let report = repgap_enumerated(&t, &g, &GapOptions::default()).unwrap();
    let k2_min = report.dims.iter().filter(|e| e.apex.k == 2).map(|e| e.dim.clone()).min();
    assert_eq!(k2_min, Some(BigInt::from(4)));
}

#[test]
fn rtl_grams_full_rank() {
    for n in 1..=5 {
        let (t, g) = structure(Family::RTl, n);
        for field in &FIELDS[..3] {
            for d in simple_dims(&t, &g, *field).unwrap() {
                let expect = binomial(n as i64 - 1, (2 * n - d.k) as i64 / 2);
                assert_eq!(BigInt::from(d.rank), expect, "n={n} k={} {field}", d.k);
                assert_eq!(d.rank, d.ssdim);
            }
        }
        let exact = repgap_enumerated(&t, &g, &GapOptions::default());
        let ss = repgap_semisimple(Family::RTl, n, &GapOptions::default());
        match (exact, ss) {
            (Ok(a), Ok(b)) => assert_eq!(a.gap, b.gap),
            (a, b) => assert!(a.is_err() && b.is_err(), "n={n}"),
        }
    }
}

#[test]
fn rtl_is_not_semisimple() {
    for n in 2..=5 {
        let (t, g) = structure(Family::RTl, n);
        let dims = simple_dims(&t, &g, Field::Rationals).unwrap();
        let squares: usize = dims.iter().map(|d| d.ssdim * d.ssdim).sum();
        let products: usize = dims.iter().map(|d| d.rows * d.cols).sum();
        assert_ne!(squares, t.len());
        assert_eq!(products, t.len());
    }
}

#[test]
fn rpro_grams_square_and_full_rank() {
    for n in 1..=4 {
        let (t, g) = structure(Family::RpRo, n);
        for field in FIELDS {
            let dims = simple_dims(&t, &g, field).unwrap();
            let mut total = 0usize;
            for d in &dims {
                assert_eq!(d.rows, d.cols);
                assert_eq!(d.rank, d.cols, "n={n} {field}");
                total += d.rank * d.rank;
            }
            assert_eq!(BigInt::from(total), monoid_size_formula(Family::RpRo, n));
            assert_eq!(total, t.len());
        }
        let opts = GapOptions::default();
        let exact = repgap_enumerated(&t, &g, &opts).unwrap();
        let ss = repgap_semisimple(Family::RpRo, n, &opts).unwrap();
        assert_eq!(exact.gap, ss.gap);
    }
}

#[test]
fn gram_entries_match_products() {
    for (f, n) in [(Family::RTl, 3), (Family::RMo, 2), (Family::RpRo, 2), (Family::Mo, 2), (Family::Tl, 2)] {
        let (t, g) = structure(f, n);
        for j in &g.j_cells {
            let gram = GramMatrix::new(&t, &g, j.id).unwrap();
            for &x in &j.members {
                let bx = t.element(x).sandwich_factor().unwrap().bottom;
                let col = gram.bottoms.iter().position(|b| *b == bx).unwrap();
                for &y in &j.members {
                    let ty = t.element(y).sandwich_factor().unwrap().top;
                    let row = gram.tops.iter().position(|b| *b == ty).unwrap();
                    let stays = g.j_of(t.product(x, y)) == j.id;
                    assert_eq!(gram.entries[row][col] == 1, stays, "{f}_{n} J{}", j.id);
                }
            }
            assert_eq!(gram.rows(), j.right_cells.len());
            assert_eq!(gram.cols(), j.left_cells.len());
        }
    }
}

#[test]
fn rtl3_middle_gram() {
    let (t, g) = structure(Family::RTl, 3);
    let j = g.j_cells.iter().find(|j| j.k == 4).unwrap();
    let gram = GramMatrix::new(&t, &g, j.id).unwrap();
    assert_eq!((gram.rows(), gram.cols()), (3, 2));
    assert_eq!(gram.rank(Field::Rationals).unwrap(), 2);
    let bottom = GramMatrix::new(&t, &g, g.bottom_cell).unwrap();
    assert_eq!(bottom.entries, vec![vec![1]]);
}

#[test]
fn cell_modules_are_representations() {
    let (t, g) = structure(Family::RTl, 3);
    let j = g.j_cells.iter().find(|j| j.k == 4).unwrap();
    let m = CellModule::new(&t, &g, j.right_cells[0], ModuleSide::Right).unwrap();
    assert_eq!(m.dim(), 2);
    m.check_homomorphism(&t).unwrap();

    let (t, g) = structure(Family::RMo, 2);
    for side in [ModuleSide::Left, ModuleSide::Right] {
        let count = match side {
            ModuleSide::Left => g.left_cells.len(),
            ModuleSide::Right => g.right_cells.len(),
        };
        for c in 0..count {
            let m = CellModule::new(&t, &g, c, side).unwrap();
            m.check_homomorphism(&t).unwrap_or_else(|(a, b)| panic!("{side:?} cell {c}: ({a}, {b})"));
        }
    }
}

#[test]
fn identity_module_is_trivial() {
    let (t, g) = structure(Family::RMo, 2);
    let m = CellModule::new(&t, &g, g.left_of(t.identity()), ModuleSide::Left).unwrap();
    assert_eq!(m.dim(), 1);
    for a in 0..t.len() as u32 {
        assert_eq!(m.matrix(a), vec![vec![u8::from(a == t.identity())]]);
    }
}

#[test]
fn semisimple_mode_labels() {
    let (t, g) = structure(Family::RMo, 3);
    let opts = GapOptions {
        mode: GapMode::Semisimple,
        ..GapOptions::default()
    };
    let enumerated = repgap_enumerated(&t, &g, &opts).unwrap();
    let closed = repgap_semisimple(Family::RMo, 3, &opts).unwrap();
    assert_eq!(enumerated.gap, closed.gap);
    assert!(closed.witnesses.iter().all(|w| matches!(w.label, ApexLabel::Factors12(_))));
    assert_eq!(enumerated.denominator, closed.denominator);
}
