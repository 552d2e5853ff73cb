//! Published spectrum rows `A_{q,s}` as fixture data, with provenance and a
//! check of each row against its own stated total.

use serde::Serialize;
use std::collections::BTreeMap;

/// Published rows for `q ≡ 3 (mod 4)`: `(q, Σ, [(size, count)])`.
const ROWS_3_MOD_4: &[(u32, u64, &[(usize, u64)])] = &[
    (3, 1, &[(3, 1)]),
    (7, 2, &[(5, 1), (7, 1)]),
    (11, 4, &[(7, 3), (11, 1)]),
    (19, 54, &[(7, 25), (8, 7), (9, 19), (11, 4), (19, 1)]),
    (23, 294, &[(7, 85), (8, 108), (9, 80), (10, 7), (11, 9), (13, 4), (23, 1)]),
    (27, 645, &[(7, 27), (8, 411), (9, 142), (10, 50), (11, 12), (15, 2), (27, 1)]),
    (31, 6005, &[(7, 60), (8, 2004), (9, 2734), (10, 933), (11, 199), (12, 26), (13, 46), (17, 2), (31, 1)]),
    (
        43,
        231890,
        &[
            (7, 15),
            (8, 1748),
            (9, 54700),
            (10, 109127),
            (11, 54759),
            (12, 9785),
            (13, 1490),
            (14, 156),
            (15, 87),
            (17, 20),
            (23, 2),
            (43, 1),
        ],
    ),
];

/// Published rows for `q ≡ 1 (mod 4)`.
const ROWS_1_MOD_4: &[(u32, u64, &[(usize, u64)])] = &[
    (5, 1, &[(5, 1)]),
    (9, 4, &[(6, 2), (9, 2)]),
    (13, 30, &[(6, 2), (7, 11), (8, 8), (9, 5), (10, 1), (13, 3)]),
    (17, 107, &[(7, 8), (8, 57), (9, 24), (10, 12), (11, 2), (13, 1), (17, 3)]),
    (
        25,
        488,
        &[
            (7, 9),
            (8, 122),
            (9, 148),
            (10, 108),
            (11, 41),
            (12, 23),
            (13, 17),
            (14, 8),
            (15, 4),
            (16, 1),
            (17, 2),
            (19, 1),
            (25, 4),
        ],
    ),
    (
        29,
        9693,
        &[
            (7, 6),
            (8, 893),
            (9, 4264),
            (10, 2864),
            (11, 1230),
            (12, 284),
            (13, 116),
            (14, 22),
            (15, 6),
            (16, 3),
            (17, 2),
            (29, 3),
        ],
    ),
    (
        37,
        103604,
        &[
            (7, 1),
            (8, 314),
            (9, 17485),
            (10, 44952),
            (11, 24067),
            (12, 10645),
            (13, 4835),
            (14, 906),
            (15, 234),
            (16, 89),
            (17, 55),
            (18, 11),
            (19, 2),
            (20, 3),
            (21, 1),
            (25, 1),
            (37, 3),
        ],
    ),
    (
        41,
        347761,
        &[
            (7, 1),
            (8, 1169),
            (9, 61940),
            (10, 149839),
            (11, 86159),
            (12, 33941),
            (13, 10854),
            (14, 2891),
            (15, 646),
            (16, 136),
            (17, 131),
            (18, 27),
            (19, 16),
            (21, 4),
            (22, 3),
            (23, 1),
            (25, 1),
            (41, 3),
        ],
    ),
];

/// An expected row of the spectrum table and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub q: u32,
    /// The stated total Σ.
    pub sigma: u64,
    pub cells: BTreeMap<usize, u64>,
    pub source: String,
}

impl ExpectedRow {
    pub fn cell_sum(&self) -> u64 {
        self.cells.values().sum()
    }

    /// Whether the cells add up to the stated total.
    pub fn is_consistent(&self) -> bool {
        self.cell_sum() == self.sigma
    }

    pub fn count(&self, size: usize) -> u64 {
        self.cells.get(&size).copied().unwrap_or(0)
    }
}

/// The expected row for `q`: the published table for odd `q`, the single
/// class `{q²: 1}` for even `q`.
pub fn expected_row(q: u32) -> Option<ExpectedRow> {
    if q >= 2 && q.is_multiple_of(2) {
        let size = (q * q) as usize;
        return Some(ExpectedRow {
            q,
            sigma: 1,
            cells: BTreeMap::from([(size, 1)]),
            source: "even q: the whole plane is the only maximal set".into(),
        });
    }
    let (block, rows) = if q % 4 == 3 { ("q ≡ 3 (mod 4)", ROWS_3_MOD_4) } else { ("q ≡ 1 (mod 4)", ROWS_1_MOD_4) };
    rows.iter().find(|r| r.0 == q).map(|&(q, sigma, cells)| ExpectedRow {
        q,
        sigma,
        cells: cells.iter().copied().collect(),
        source: format!("published A_(q,s) table, {block} block, row {q}"),
    })
}

/// Every `q` with a published row, ascending.
pub fn published_orders() -> Vec<u32> {
    let mut qs: Vec<u32> = ROWS_3_MOD_4.iter().chain(ROWS_1_MOD_4).map(|r| r.0).collect();
    qs.sort_unstable();
    qs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_cover_the_published_orders() {
        assert_eq!(published_orders(), vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43]);
    }

    #[test]
    fn only_rows_19_and_41_disagree_with_their_totals() {
        let bad: Vec<(u32, u64, u64)> = published_orders()
            .into_iter()
            .map(|q| expected_row(q).unwrap())
            .filter(|r| !r.is_consistent())
            .map(|r| (r.q, r.sigma, r.cell_sum()))
            .collect();
        assert_eq!(bad, vec![(19, 54, 56), (41, 347761, 347762)]);
    }

    #[test]
    fn every_odd_row_ends_with_the_lines() {
        for q in published_orders() {
            let row = expected_row(q).unwrap();
            assert_eq!(row.cells.keys().next_back(), Some(&(q as usize)));
            let lines = if q % 4 == 3 { 1 } else { row.count(q as usize) };
            assert!(row.count(q as usize) == lines && lines >= 1, "q = {q}");
        }
    }

    #[test]
    fn even_rows_and_unknown_rows() {
        let r = expected_row(8).unwrap();
        assert_eq!(r.cells, BTreeMap::from([(64, 1)]));
        assert!(r.is_consistent());
        assert_eq!(expected_row(47), None);
        assert_eq!(expected_row(15), None);
    }
}
