//! Young diagrams, skew shapes and Kac-Dynkin labels.
//!
//! Coordinates are 1-based: row `i` grows downward, column `j` to the right.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("inner partition is not contained in the outer one")]
    NotContained,
    #[error("shape is not covariant-dominant (needs mu_{{r+2}} <= s+1)")]
    NotCovariantDominant,
    #[error("shape is not contravariant-dominant (needs mu'_{{s+2}} <= r+1)")]
    NotContravariantDominant,
    #[error("cannot parse partition {0:?}")]
    Parse(String),
}

/// A weakly decreasing list of positive parts (zeros are trimmed on input).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, DiagramError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(DiagramError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single row `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n]).expect("single part")
    }

    /// The single column `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// The `rows × cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| self.part(i) >= other.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = DiagramError;

    /// Accepts `"5,4,3"`, `"(2,2)"`, `"[1]"`, or `""`/`"()"` for the empty diagram.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| DiagramError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// Skew diagram `λ ⊂ μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    inner: Partition,
    outer: Partition,
    inner_conj: Partition,
    outer_conj: Partition,
}

impl SkewShape {
    pub fn new(inner: Partition, outer: Partition) -> Result<Self, DiagramError> {
        if !outer.contains(&inner) {
            return Err(DiagramError::NotContained);
        }
        let inner_conj = inner.conjugate();
        let outer_conj = outer.conjugate();
        Ok(SkewShape { inner, outer, inner_conj, outer_conj })
    }

    /// Straight shape `φ ⊂ μ`.
    pub fn straight(outer: Partition) -> Self {
        SkewShape::new(Partition::empty(), outer).expect("empty partition fits")
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner_conj(&self) -> &Partition {
        &self.inner_conj
    }

    pub fn outer_conj(&self) -> &Partition {
        &self.outer_conj
    }

    /// `μ_1`
    pub fn width(&self) -> usize {
        self.outer.part(1)
    }

    /// `μ'_1`
    pub fn height(&self) -> usize {
        self.outer_conj.part(1)
    }

    pub fn num_cells(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_empty(&self) -> bool {
        self.num_cells() == 0
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.inner.part(i) < j && j <= self.outer.part(i)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_cells());
        for i in 1..=self.outer.len() {
            for j in self.inner.part(i) + 1..=self.outer.part(i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Whether some `rows × cols` block lies entirely inside the skew region.
    pub fn contains_rectangle(&self, rows: usize, cols: usize) -> bool {
        if rows == 0 || cols == 0 {
            return true;
        }
        for i1 in 1..=self.outer.len() {
            if i1 + rows - 1 > self.outer.len() {
                break;
            }
            // the block spans columns j1..j1+cols-1 over rows i1..i1+rows-1;
            // the tightest constraints come from the first row's inner part
            // and the last row's outer part
            let left = self.inner.part(i1) + 1;
            let right = self.outer.part(i1 + rows - 1);
            if right + 1 >= left + cols {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = DiagramError;

    /// `"μ"` or `"μ/λ"`, e.g. `"3,2/1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(i.parse()?, o.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// A random non-empty skew shape with `μ_1 ≤ max_cols` and `μ'_1 ≤ max_rows`.
///
/// Outer parts are drawn uniformly and sorted; each inner part is uniform
/// below both the outer part and the inner part above it.
pub fn random_skew_shape<R: Rng + ?Sized>(rng: &mut R, max_cols: usize, max_rows: usize) -> SkewShape {
    loop {
        let rows = rng.gen_range(1..=max_rows);
        let mut outer: Vec<usize> = (0..rows).map(|_| rng.gen_range(1..=max_cols)).collect();
        outer.sort_unstable_by(|a, b| b.cmp(a));
        let mut inner = Vec::with_capacity(rows);
        let mut cap = usize::MAX;
        for &m in &outer {
            let l = rng.gen_range(0..=m.min(cap));
            inner.push(l);
            cap = l;
        }
        let shape = SkewShape::new(
            Partition::new(inner).expect("decreasing by construction"),
            Partition::new(outer).expect("sorted"),
        )
        .expect("inner fits");
        if !shape.is_empty() {
            return shape;
        }
    }
}

/// Kac-Dynkin labels `a_1..a_{r+s+1}` of a covariant diagram.
pub fn kac_dynkin_covariant(mu: &Partition, r: usize, s: usize) -> Result<Vec<i64>, DiagramError> {
    if mu.part(r + 2) > s + 1 {
        return Err(DiagramError::NotCovariantDominant);
    }
    let conj = mu.conjugate();
    let eta = |j: usize| conj.part(j).saturating_sub(r + 1) as i64;
    let m = |j: usize| mu.part(j) as i64;
    let mut a = Vec::with_capacity(r + s + 1);
    for j in 1..=r {
        a.push(m(j) - m(j + 1));
    }
    a.push(m(r + 1) + eta(1));
    for j in 1..=s {
        a.push(eta(j) - eta(j + 1));
    }
    Ok(a)
}

/// Kac-Dynkin labels `a_1..a_{r+s+1}` of a contravariant diagram.
pub fn kac_dynkin_contravariant(mu: &Partition, r: usize, s: usize) -> Result<Vec<i64>, DiagramError> {
    let conj = mu.conjugate();
    if conj.part(s + 2) > r + 1 {
        return Err(DiagramError::NotContravariantDominant);
    }
    let xi = |j: usize| mu.part(j).saturating_sub(s + 1) as i64;
    let c = |j: usize| conj.part(j) as i64;
    let mut a = vec![0i64; r + s + 1];
    for j in 1..=r {
        a[r + 1 - j - 1] = xi(j) - xi(j + 1);
    }
    a[r] = -xi(1) - c(s + 1);
    for j in 1..=s {
        a[r + s + 2 - j - 1] = c(j) - c(j + 1);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[2, 2, 1]).conjugate(), p(&[3, 2]));
        assert_eq!(p(&[5, 5, 4, 2, 1]).conjugate(), p(&[5, 4, 3, 3, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[2, 2, 1, 0, 0]), p(&[2, 2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn rectangles() {
        let sq = SkewShape::straight(p(&[2, 2]));
        assert!(sq.contains_rectangle(2, 2));
        let holed = SkewShape::new(p(&[1]), p(&[2, 2])).unwrap();
        assert!(!holed.contains_rectangle(2, 2));
        let big = SkewShape::straight(p(&[5, 5, 4, 2, 1]));
        assert!(big.contains_rectangle(2, 4));
        assert!(!big.contains_rectangle(2, 6));
    }

    #[test]
    fn kac_dynkin_examples() {
        assert_eq!(kac_dynkin_covariant(&p(&[1]), 1, 0).unwrap(), vec![1, 0]);
        assert_eq!(kac_dynkin_covariant(&p(&[5, 4, 3, 2, 2, 1]), 2, 1).unwrap(), vec![1, 1, 6, 1]);
        assert_eq!(kac_dynkin_covariant(&Partition::empty(), 2, 3).unwrap(), vec![0; 6]);
        assert_eq!(
            kac_dynkin_covariant(&p(&[3, 3]), 0, 1),
            Err(DiagramError::NotCovariantDominant)
        );
    }

    #[test]
    fn contravariant_single_box() {
        assert_eq!(kac_dynkin_contravariant(&p(&[1]), 1, 0).unwrap(), vec![0, -1]);
        assert_eq!(kac_dynkin_contravariant(&p(&[1]), 1, 1).unwrap(), vec![0, 0, 1]);
        assert_eq!(
            kac_dynkin_contravariant(&p(&[3, 3, 3]), 1, 0),
            Err(DiagramError::NotContravariantDominant)
        );
        assert_eq!(kac_dynkin_contravariant(&Partition::empty(), 1, 0).unwrap(), vec![0, 0]);
    }

    #[test]
    fn parsing() {
        assert_eq!("(2,2)".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        let s: SkewShape = "3,2/1".parse().unwrap();
        assert_eq!(s.cells(), vec![(1, 2), (1, 3), (2, 1), (2, 2)]);
        assert!("1/2".parse::<SkewShape>().is_err());
    }
}
