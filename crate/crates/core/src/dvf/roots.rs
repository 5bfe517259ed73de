//! Bethe roots and inhomogeneities, stored as `y = q^{u_0}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qarith::{QParameter, Rat, Scalar};

/// How far apart (in powers of q) two exact parameters must be.
const GENERIC_WINDOW: i32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct BetheRootSet<F> {
    pub q: QParameter,
    /// `y = q^{w_j}` for each site.
    pub sites: Vec<F>,
    /// `roots[a-1][k]` is `q^{u_k^{(a)}}`.
    pub roots: Vec<Vec<F>>,
    /// Drawn at random (true) or solved/hand-set (false).
    pub generic: bool,
}

impl<F: Scalar> BetheRootSet<F> {
    pub fn new(q: QParameter, sites: Vec<F>, roots: Vec<Vec<F>>) -> Self {
        BetheRootSet { q, sites, roots, generic: false }
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn colors(&self) -> usize {
        self.roots.len()
    }

    /// `N_a`, zero for the boundary colors.
    pub fn count(&self, color: i32) -> usize {
        if color < 1 {
            return 0;
        }
        self.roots.get(color as usize - 1).map_or(0, Vec::len)
    }

    /// Parameter index of site `j` (0-based).
    pub fn site_param(&self, j: usize) -> u16 {
        j as u16
    }

    /// Parameter index of root `k` (0-based) of `color`.
    pub fn root_param(&self, color: i32, k: usize) -> u16 {
        let before: usize = self.roots[..color as usize - 1].iter().map(Vec::len).sum();
        (self.sites.len() + before + k) as u16
    }

    /// The `y`-value behind a parameter index.
    pub fn param_value(&self, p: u16) -> &F {
        let mut p = p as usize;
        if p < self.sites.len() {
            return &self.sites[p];
        }
        p -= self.sites.len();
        for color in &self.roots {
            if p < color.len() {
                return &color[p];
            }
            p -= color.len();
        }
        panic!("parameter index out of range")
    }

    pub fn num_params(&self) -> usize {
        self.sites.len() + self.roots.iter().map(Vec::len).sum::<usize>()
    }

    /// Same parameters with `u ↦ −u`, i.e. `y ↦ 1/y`.
    pub fn negated(&self) -> Self {
        BetheRootSet {
            q: self.q.clone(),
            sites: self.sites.iter().map(Scalar::inv).collect(),
            roots: self.roots.iter().map(|c| c.iter().map(Scalar::inv).collect()).collect(),
            generic: self.generic,
        }
    }

    pub fn with_root(&self, color: i32, k: usize, y: F) -> Self {
        let mut out = self.clone();
        out.roots[color as usize - 1][k] = y;
        out.generic = false;
        out
    }

    pub fn to_complex(&self) -> BetheRootSet<Complex64> {
        BetheRootSet {
            q: self.q.clone(),
            sites: self.sites.iter().map(Scalar::to_complex).collect(),
            roots: self.roots.iter().map(|c| c.iter().map(Scalar::to_complex).collect()).collect(),
            generic: self.generic,
        }
    }
}

impl BetheRootSet<Rat> {
    /// Random exact parameters: `N` sites and `sector[a-1]` roots of color `a`.
    ///
    /// Every value and every pairwise ratio avoids `±q^k` for `|k| ≤ 64`, so no
    /// two brackets built from different parameters can share a zero.
    pub fn draw(q: &QParameter, n_sites: usize, sector: &[usize], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total = n_sites + sector.iter().sum::<usize>();
        let mut values: Vec<Rat> = Vec::with_capacity(total);
        while values.len() < total {
            let num: i64 = rng.gen_range(2..=97);
            let den: i64 = rng.gen_range(2..=89);
            let y = Rat::new(BigInt::from(num), BigInt::from(den));
            if is_q_power(q.value(), &y) || values.iter().any(|v| is_q_power(q.value(), &(&y / v))) {
                continue;
            }
            values.push(y);
        }
        let mut it = values.into_iter();
        let sites = it.by_ref().take(n_sites).collect();
        let roots = sector.iter().map(|&n| it.by_ref().take(n).collect()).collect();
        BetheRootSet { q: q.clone(), sites, roots, generic: true }
    }

    /// Homogeneous sites `w_j = 0` with random roots.
    pub fn draw_homogeneous(q: &QParameter, n_sites: usize, sector: &[usize], seed: u64) -> Self {
        let mut rs = Self::draw(q, 0, sector, seed);
        rs.sites = vec![Rat::from_integer(1.into()); n_sites];
        rs
    }
}

/// Whether `y = ±q^k` for some `|k| ≤ GENERIC_WINDOW`.
fn is_q_power(q: &Rat, y: &Rat) -> bool {
    let y = if y < &Rat::from_integer(0.into()) { -y.clone() } else { y.clone() };
    let one = Rat::from_integer(1.into());
    let mut up = one.clone();
    let mut down = one.clone();
    for _ in 0..=GENERIC_WINDOW {
        if up == y || down == y {
            return true;
        }
        up *= q;
        down /= q;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_indexed() {
        let q = QParameter::default();
        let a = BetheRootSet::draw(&q, 2, &[1, 0, 2], 7);
        let b = BetheRootSet::draw(&q, 2, &[1, 0, 2], 7);
        assert_eq!(a, b);
        assert_eq!(a.num_params(), 5);
        assert_eq!(a.root_param(3, 1), 4);
        assert_eq!(a.param_value(4), &a.roots[2][1]);
        assert_eq!(a.count(2), 0);
        assert_eq!(a.count(0), 0);
    }

    #[test]
    fn q_powers_are_detected() {
        let q = QParameter::default();
        assert!(is_q_power(q.value(), &Rat::new(9.into(), 4.into())));
        assert!(is_q_power(q.value(), &Rat::new((-8).into(), 27.into())));
        assert!(!is_q_power(q.value(), &Rat::new(5.into(), 4.into())));
    }
}
