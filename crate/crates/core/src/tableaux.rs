//! Admissible supertableaux on skew shapes.

use thiserror::Error;

use crate::diagrams::SkewShape;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("top tableau needs a straight shape")]
    SkewTopTableau,
    #[error("shape is not covariant-dominant (needs mu_{{r+2}} <= s+1)")]
    NotCovariantDominant,
    #[error("label set has no label {0}")]
    UnknownLabel(i32),
    #[error("invalid label set: {0}")]
    InvalidLabels(String),
}

/// A totally ordered, graded alphabet. Labels are listed in increasing order;
/// `parity[k]` is the grading of `labels[k]` (0 even, 1 odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    labels: Vec<i32>,
    parity: Vec<u8>,
}

impl LabelSet {
    pub fn new(labels: Vec<i32>, parity: Vec<u8>) -> Result<Self, TableauError> {
        if labels.len() != parity.len() || labels.is_empty() {
            return Err(TableauError::InvalidLabels("labels and parities differ in length".into()));
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(TableauError::InvalidLabels("parity must be 0 or 1".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(TableauError::InvalidLabels("repeated label".into()));
        }
        Ok(LabelSet { labels, parity })
    }

    /// `1 ≺ 2 ≺ … ≺ r+s+2` with `1..=r+1` even.
    pub fn distinguished_covariant(r: i32, s: i32) -> Self {
        let n = r + s + 2;
        LabelSet {
            labels: (1..=n).collect(),
            parity: (1..=n).map(|a| u8::from(a > r + 1)).collect(),
        }
    }

    /// `−r−s−2 ≺ … ≺ −1` with `−1..=−r−1` even.
    pub fn distinguished_contravariant(r: i32, s: i32) -> Self {
        let n = r + s + 2;
        let labels: Vec<i32> = (1..=n).rev().map(|a| -a).collect();
        let parity = labels.iter().map(|&a| u8::from(-a > r + 1)).collect();
        LabelSet { labels, parity }
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Position of a label in the order.
    pub fn rank(&self, label: i32) -> Result<usize, TableauError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(TableauError::UnknownLabel(label))
    }

    pub fn parity(&self, label: i32) -> Result<u8, TableauError> {
        Ok(self.parity[self.rank(label)?])
    }

    pub fn parity_at(&self, rank: usize) -> u8 {
        self.parity[rank]
    }

    pub fn even_count(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 0).count()
    }

    pub fn odd_count(&self) -> usize {
        self.parity.iter().filter(|&&p| p == 1).count()
    }
}

/// A filling of a skew shape; `entries[k]` sits in `cells[k]` (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    cells: Vec<(usize, usize)>,
    entries: Vec<i32>,
}

impl Tableau {
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i32> {
        self.cells.iter().position(|&c| c == (i, j)).map(|k| self.entries[k])
    }

    /// `(cell, label)` pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i32)> + '_ {
        self.cells.iter().copied().zip(self.entries.iter().copied())
    }

    /// Checks rules (i)-(iii) on every horizontally or vertically adjacent pair.
    pub fn is_admissible(&self, labels: &LabelSet) -> bool {
        let rank_of = |l: i32| labels.rank(l).ok();
        for (k, &(i, j)) in self.cells.iter().enumerate() {
            let Some(a) = rank_of(self.entries[k]) else { return false };
            if let Some(right) = self.get(i, j + 1) {
                let Some(b) = rank_of(right) else { return false };
                if !row_ok(labels, a, b) {
                    return false;
                }
            }
            if let Some(below) = self.get(i + 1, j) {
                let Some(b) = rank_of(below) else { return false };
                if !column_ok(labels, a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// `a` left of `b`: weakly increasing, strictly for odd labels.
pub(crate) fn row_ok(labels: &LabelSet, a: usize, b: usize) -> bool {
    b > a || (b == a && labels.parity_at(a) == 0)
}

/// `a` above `b`: weakly increasing, strictly for even labels.
pub(crate) fn column_ok(labels: &LabelSet, a: usize, b: usize) -> bool {
    b > a || (b == a && labels.parity_at(a) == 1)
}

/// Calls `visit` with the label ranks of each admissible filling, in
/// lexicographic order of the row-major cell scan. Returning `false` from
/// `visit` stops the scan.
pub fn for_each_filling<Fn_: FnMut(&[usize]) -> bool>(shape: &SkewShape, labels: &LabelSet, mut visit: Fn_) {
    let cells = shape.cells();
    if cells.is_empty() {
        visit(&[]);
        return;
    }
    // neighbour indices within the cell list
    let left: Vec<Option<usize>> = cells
        .iter()
        .map(|&(i, j)| cells.iter().position(|&c| c == (i, j.wrapping_sub(1))))
        .collect();
    let up: Vec<Option<usize>> = cells
        .iter()
        .map(|&(i, j)| cells.iter().position(|&c| c == (i.wrapping_sub(1), j)))
        .collect();
    let mut fill = vec![0usize; cells.len()];
    fill_from(0, &mut fill, &left, &up, labels, &mut visit);
}

fn fill_from<Fn_: FnMut(&[usize]) -> bool>(
    k: usize,
    fill: &mut Vec<usize>,
    left: &[Option<usize>],
    up: &[Option<usize>],
    labels: &LabelSet,
    visit: &mut Fn_,
) -> bool {
    if k == fill.len() {
        return visit(fill);
    }
    let mut lo = 0;
    if let Some(l) = left[k] {
        lo = lo.max(fill[l]);
    }
    if let Some(u) = up[k] {
        lo = lo.max(fill[u]);
    }
    for c in lo..labels.len() {
        if let Some(l) = left[k] {
            if !row_ok(labels, fill[l], c) {
                continue;
            }
        }
        if let Some(u) = up[k] {
            if !column_ok(labels, fill[u], c) {
                continue;
            }
        }
        fill[k] = c;
        if !fill_from(k + 1, fill, left, up, labels, visit) {
            return false;
        }
    }
    true
}

pub fn enumerate(shape: &SkewShape, labels: &LabelSet) -> Vec<Tableau> {
    let cells = shape.cells();
    let mut out = Vec::new();
    for_each_filling(shape, labels, |fill| {
        out.push(Tableau {
            cells: cells.clone(),
            entries: fill.iter().map(|&c| labels.labels[c]).collect(),
        });
        true
    });
    out
}

pub fn count(shape: &SkewShape, labels: &LabelSet) -> usize {
    let mut n = 0;
    for_each_filling(shape, labels, |_| {
        n += 1;
        true
    });
    n
}

/// Whether at least one admissible filling exists.
pub fn has_filling(shape: &SkewShape, labels: &LabelSet) -> bool {
    let mut found = false;
    for_each_filling(shape, labels, |_| {
        found = true;
        false
    });
    found
}

/// The tableau of the leading term at large `q^u` for the distinguished
/// covariant alphabet: row `i ≤ r+1` holds `i`, and below that column `j`
/// holds `r+j+1`.
pub fn top_tableau(shape: &SkewShape, r: i32, s: i32) -> Result<Tableau, TableauError> {
    if !shape.inner().is_empty() {
        return Err(TableauError::SkewTopTableau);
    }
    if shape.outer().part((r + 2) as usize) as i32 > s + 1 {
        return Err(TableauError::NotCovariantDominant);
    }
    let cells = shape.cells();
    let entries = cells
        .iter()
        .map(|&(i, j)| if i as i32 <= r + 1 { i as i32 } else { r + j as i32 + 1 })
        .collect();
    Ok(Tableau { cells, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Partition;

    fn shape(v: &[usize]) -> SkewShape {
        SkewShape::straight(Partition::new(v.to_vec()).unwrap())
    }

    #[test]
    fn single_row_and_box_counts() {
        let j = LabelSet::distinguished_covariant(0, 0);
        assert_eq!(count(&shape(&[1]), &j), 2);
        let row: Vec<Vec<i32>> = enumerate(&shape(&[2]), &j).into_iter().map(|t| t.entries).collect();
        assert_eq!(row, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(count(&shape(&[2, 2]), &j), 0);
        assert_eq!(count(&shape(&[1, 1]), &j), 2);
    }

    #[test]
    fn empty_shape_has_one_filling() {
        let j = LabelSet::distinguished_covariant(1, 0);
        assert_eq!(count(&shape(&[]), &j), 1);
    }

    #[test]
    fn top_tableau_of_the_figure() {
        let t = top_tableau(&shape(&[5, 4, 3, 2, 2, 1]), 2, 1).unwrap();
        let j = LabelSet::distinguished_covariant(2, 1);
        assert_eq!(t.get(1, 5), Some(1));
        assert_eq!(t.get(3, 3), Some(3));
        assert_eq!(t.get(4, 1), Some(4));
        assert_eq!(t.get(5, 2), Some(5));
        assert_eq!(t.get(6, 1), Some(4));
        assert!(t.is_admissible(&j));
        assert!(enumerate(&shape(&[5, 4, 3, 2, 2, 1]), &j).contains(&t));
    }

    #[test]
    fn top_tableau_of_a_column() {
        let t = top_tableau(&shape(&[1, 1, 1]), 0, 1).unwrap();
        assert_eq!(t.entries(), &[1, 2, 2]);
        assert!(enumerate(&shape(&[1, 1, 1]), &LabelSet::distinguished_covariant(0, 1)).contains(&t));
    }

    #[test]
    fn contravariant_order_runs_through_negative_labels() {
        let j = LabelSet::distinguished_contravariant(1, 0);
        assert_eq!(j.labels(), &[-3, -2, -1]);
        assert_eq!(j.parity(-3).unwrap(), 1);
        assert_eq!(j.parity(-2).unwrap(), 0);
    }
}
