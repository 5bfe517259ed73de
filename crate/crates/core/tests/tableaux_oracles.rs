use bethe_core::diagrams::{Partition, SkewShape};
use bethe_core::tableaux::{count, enumerate, has_filling, top_tableau, LabelSet};

/// All partitions of `n` with parts at most `max_part`.
fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every skew shape λ ⊂ μ with |μ| ≤ max_outer and at least one cell.
fn skew_shapes(max_outer: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for n in 1..=max_outer {
        for mu in partitions(n, n) {
            let mu = Partition::new(mu).unwrap();
            for m in 0..n {
                for lam in partitions(m, m.max(1)) {
                    let lam = Partition::new(lam).unwrap();
                    if let Ok(s) = SkewShape::new(lam, mu.clone()) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// Brute force: try every labelling and keep the ones obeying the three rules
/// read literally off the neighbours.
fn brute_force(shape: &SkewShape, j: &LabelSet) -> usize {
    let cells = shape.cells();
    let n = j.len();
    let total = n.pow(cells.len() as u32);
    let mut good = 0;
    for code in 0..total {
        let mut c = code;
        let mut fill = Vec::with_capacity(cells.len());
        for _ in &cells {
            fill.push(c % n);
            c /= n;
        }
        let at = |i: usize, jj: usize| cells.iter().position(|&x| x == (i, jj)).map(|k| fill[k]);
        let ok = cells.iter().enumerate().all(|(k, &(i, jj))| {
            let a = fill[k];
            let even = j.parity_at(a) == 0;
            let right_ok = at(i, jj + 1).map_or(true, |b| a <= b && (even || a < b));
            let down_ok = at(i + 1, jj).map_or(true, |b| a <= b && (!even || a < b));
            right_ok && down_ok
        });
        if ok {
            good += 1;
        }
    }
    good
}

#[test]
fn enumeration_matches_brute_force_on_small_shapes() {
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let j = LabelSet::distinguished_covariant(r, s);
        for shape in skew_shapes(5) {
            if shape.num_cells() > 5 {
                continue;
            }
            assert_eq!(count(&shape, &j), brute_force(&shape, &j), "r={r} s={s} shape={shape}");
        }
    }
}

#[test]
fn enumeration_yields_admissible_distinct_tableaux() {
    let j = LabelSet::distinguished_covariant(1, 1);
    let shape: SkewShape = "3,3,2/1".parse().unwrap();
    let all = enumerate(&shape, &j);
    assert!(all.iter().all(|t| t.is_admissible(&j)));
    let mut dedup = all.clone();
    dedup.dedup();
    assert_eq!(dedup.len(), all.len());
}

#[test]
fn supercharacter_dimensions_for_the_smallest_alphabet() {
    let j = LabelSet::distinguished_covariant(0, 0);
    for (mu, expect) in [(vec![1], 2), (vec![2], 2), (vec![1, 1], 2)] {
        let shape = SkewShape::straight(Partition::new(mu).unwrap());
        assert_eq!(count(&shape, &j), expect);
    }
}

/// No fillings exactly when the (r+2)×(s+2) rectangle fits, for every skew
/// shape with up to 12 cells (outer diagrams up to 12 boxes).
#[test]
fn emptiness_iff_rectangle_inside() {
    let shapes = skew_shapes(12);
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let j = LabelSet::distinguished_covariant(r, s);
        for shape in &shapes {
            let rect = shape.contains_rectangle((r + 2) as usize, (s + 2) as usize);
            assert_eq!(!has_filling(shape, &j), rect, "r={r} s={s} shape={shape}");
        }
    }
}

#[test]
fn top_tableau_is_admissible_for_all_dominant_shapes() {
    for (r, s) in [(0, 1), (1, 0), (1, 1), (2, 1)] {
        let j = LabelSet::distinguished_covariant(r, s);
        for n in 1..=8 {
            for mu in partitions(n, n) {
                let mu = Partition::new(mu).unwrap();
                if mu.part((r + 2) as usize) > (s + 1) as usize {
                    continue;
                }
                let shape = SkewShape::straight(mu);
                let t = top_tableau(&shape, r, s).unwrap();
                assert!(t.is_admissible(&j), "r={r} s={s} shape={shape}");
            }
        }
    }
}
