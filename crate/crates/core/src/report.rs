//! Comparing computed values with expected ones.

use crate::search::SpectrumTable;
use crate::tables::expected_row;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    /// The computed value disagrees with a published value that is itself
    /// contradicted by the published total; the computed value agrees with
    /// one reading of the row.
    PublishedInconsistency,
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::PublishedInconsistency => "published-inconsistency",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub item: String,
    pub source: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
}

impl Comparison {
    pub fn exact(item: impl Into<String>, source: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let verdict = if expected == computed { Verdict::Match } else { Verdict::Mismatch };
        Comparison { item: item.into(), source: source.into(), expected, computed, verdict }
    }
}

/// The worst verdict, or `Match` for an empty list.
pub fn worst(cmps: &[Comparison]) -> Verdict {
    cmps.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Match)
}

/// Cell-wise comparison of a computed table with the expected row, plus the
/// total. Returns an empty list when no row is known for `q`.
///
/// When the expected row contradicts its own total and the computed total
/// equals either the stated total or the cell sum, disagreeing cells are
/// reported as [`Verdict::PublishedInconsistency`].
pub fn compare_spectrum(table: &SpectrumTable) -> Vec<Comparison> {
    let Some(row) = expected_row(table.q) else {
        return Vec::new();
    };
    let total = table.total();
    let excused = !row.is_consistent() && (total == row.sigma || total == row.cell_sum());
    let mut sizes: Vec<usize> = row.cells.keys().chain(table.rows.keys()).copied().collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = Vec::new();
    for s in sizes {
        let mut c = Comparison::exact(format!("A({},{s})", table.q), &row.source, row.count(s), table.count(s));
        if c.verdict == Verdict::Mismatch && excused {
            c.verdict = Verdict::PublishedInconsistency;
        }
        out.push(c);
    }
    out.push(Comparison::exact(format!("sigma({})", table.q), &row.source, row.sigma, total));
    if !row.is_consistent() {
        out.push(Comparison {
            item: format!("cell-sum({})", table.q),
            source: row.source.clone(),
            expected: row.sigma.to_string(),
            computed: row.cell_sum().to_string(),
            verdict: Verdict::PublishedInconsistency,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn table(q: u32, cells: &[(usize, u64)]) -> SpectrumTable {
        SpectrumTable { q, rows: cells.iter().copied().collect::<BTreeMap<_, _>>() }
    }

    #[test]
    fn matching_row() {
        let cmps = compare_spectrum(&table(11, &[(7, 3), (11, 1)]));
        assert_eq!(cmps.len(), 3);
        assert_eq!(worst(&cmps), Verdict::Match);
    }

    #[test]
    fn mismatching_cell() {
        let cmps = compare_spectrum(&table(11, &[(7, 2), (11, 1)]));
        assert_eq!(worst(&cmps), Verdict::Mismatch);
        assert_eq!(cmps.iter().filter(|c| c.verdict == Verdict::Mismatch).count(), 2);
    }

    #[test]
    fn inconsistent_row_excuses_cells_that_restore_the_total() {
        let cmps = compare_spectrum(&table(19, &[(7, 25), (8, 7), (9, 17), (11, 4), (19, 1)]));
        assert_eq!(worst(&cmps), Verdict::PublishedInconsistency);
        let cell = cmps.iter().find(|c| c.item == "A(19,9)").unwrap();
        assert_eq!((cell.expected.as_str(), cell.computed.as_str()), ("19", "17"));
        assert!(cmps.iter().any(|c| c.item == "cell-sum(19)"));
    }

    #[test]
    fn inconsistent_row_does_not_excuse_a_wrong_total() {
        let cmps = compare_spectrum(&table(19, &[(7, 20), (19, 1)]));
        assert_eq!(worst(&cmps), Verdict::Mismatch);
    }

    #[test]
    fn unknown_and_even() {
        assert!(compare_spectrum(&table(47, &[(47, 1)])).is_empty());
        assert_eq!(worst(&compare_spectrum(&table(4, &[(16, 1)]))), Verdict::Match);
        assert_eq!(Verdict::PublishedInconsistency.as_str(), "published-inconsistency");
    }
}
