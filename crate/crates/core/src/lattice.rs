//! Brute-force transfer matrix of the graded vertex model on `N` sites, used
//! as an independent oracle for the column function `T^1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::diagrams::{Partition, SkewShape};
use crate::dvf::{BetheRootSet, Dvf, DvfError, RootSystemConfig};
use crate::qarith::{QArithError, QField, QParameter, Scalar};

/// Largest matrix dimension built.
pub const MAX_DIMENSION: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension {0} exceeds the limit")]
    DimensionTooLarge(usize),
    #[error("eigenvalue solver did not converge")]
    DiagonalizationFailure,
    #[error("matrices have different shapes")]
    ShapeMismatch,
    #[error("sector {0:?} is not a valid occupation")]
    BadSector(Vec<usize>),
    #[error(transparent)]
    Dvf(#[from] DvfError),
    #[error(transparent)]
    QArith(#[from] QArithError),
}

/// `t(u)` at one spectral point, dense and row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix<F> {
    pub r: i32,
    pub s: i32,
    pub n_sites: usize,
    dim: usize,
    entries: Vec<F>,
}

/// Parity of label `a` (1-based) in the distinguished grading.
fn parity(r: i32, a: usize) -> u8 {
    u8::from(a as i32 > r + 1)
}

/// Basis state index ↔ labels (0-based), site 1 most significant.
fn decode(mut idx: usize, n: usize, sites: usize) -> Vec<usize> {
    let mut out = vec![0; sites];
    for i in (0..sites).rev() {
        out[i] = idx % n;
        idx /= n;
    }
    out
}

fn encode(labels: &[usize], n: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * n + l)
}

impl<F: Scalar> TransferMatrix<F> {
    /// Builds `t(u)` at `x = q^u` with site parameters `sites[j] = q^{w_j}`:
    /// the supertrace over the auxiliary label of the ordered product of
    /// `L(u − w_j)`, with the grading sign of the monodromy.
    pub fn new(r: i32, s: i32, q: &QParameter, x: &F, sites: &[F]) -> Result<Self, LatticeError> {
        let n = (r + s + 2) as usize;
        let n_sites = sites.len();
        let dim = n.checked_pow(n_sites as u32).filter(|&d| d <= MAX_DIMENSION);
        let dim = dim.ok_or(LatticeError::DimensionTooLarge(n.saturating_pow(n_sites as u32)))?;
        let field = QField::<F>::new(q);
        let p = |a: usize| parity(r, a + 1);
        // per-site L weights
        let weights: Vec<SiteWeights<F>> = sites.iter().map(|y| SiteWeights::new(&field, x, y, n, &p)).collect();
        let mut entries = vec![F::zero(); dim * dim];
        for beta_idx in 0..dim {
            let beta = decode(beta_idx, n, n_sites);
            for a in 0..n {
                let sign_a = if p(a) == 0 { F::one() } else { -F::one() };
                // walk the auxiliary index from site 1 to site N
                let mut paths: Vec<(usize, Vec<usize>, F)> = vec![(a, Vec::with_capacity(n_sites), sign_a.clone())];
                for (j, w) in weights.iter().enumerate() {
                    let mut next = Vec::with_capacity(paths.len() * 2);
                    for (y, gamma, val) in paths {
                        let b = beta[j];
                        // diagonal: aux and quantum keep their labels
                        let mut g = gamma.clone();
                        g.push(b);
                        next.push((y, g, val.clone() * w.diag(y, b).clone()));
                        if y != b {
                            let mut g = gamma;
                            g.push(y);
                            next.push((b, g, val * w.exchange(y, b).clone()));
                        }
                    }
                    paths = next;
                }
                for (end, gamma, val) in paths {
                    if end != a || val.is_zero() {
                        continue;
                    }
                    let mut odd = 0usize;
                    let mut prefix = 0usize;
                    for i in 0..n_sites {
                        if i > 0 {
                            odd += (p(gamma[i]) as usize + p(beta[i]) as usize) * prefix;
                        }
                        prefix += p(gamma[i]) as usize;
                    }
                    let v = if odd % 2 == 0 { val } else { -val };
                    let k = encode(&gamma, n) * dim + beta_idx;
                    entries[k] = entries[k].clone() + v;
                }
            }
        }
        Ok(TransferMatrix { r, s, n_sites, dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &F {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::ShapeMismatch);
        }
        let d = self.dim;
        let mut out = vec![F::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        out[i * d + j] = out[i * d + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(TransferMatrix { entries: out, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::ShapeMismatch);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(TransferMatrix { entries, ..self.clone() })
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|v| v.modulus().powi(2)).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    /// Label counts of every basis state; `counts[a]` is the number of sites
    /// carrying label `a + 1`.
    pub fn occupation(&self, idx: usize) -> Vec<usize> {
        let n = (self.r + self.s + 2) as usize;
        let mut c = vec![0; n];
        for l in decode(idx, n, self.n_sites) {
            c[l] += 1;
        }
        c
    }

    /// Whether every non-zero entry connects states with equal label counts.
    pub fn preserves_occupation(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j).is_zero() || self.occupation(i) == self.occupation(j)))
    }

    /// Basis states with the given label counts.
    pub fn sector_states(&self, counts: &[usize]) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.occupation(i) == counts).collect()
    }

    /// Restriction to a set of basis states.
    pub fn block(&self, states: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(states.len(), states.len(), |i, j| self.get(states[i], states[j]).to_complex())
    }

    /// The all-ones state `|1 … 1⟩`.
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// `(t|vac⟩)_vac` if `|vac⟩` is an eigenvector, else `None`.
    pub fn vacuum_eigenvalue(&self) -> Option<F> {
        let v = self.vacuum_index();
        (0..self.dim).filter(|&i| i != v).all(|i| self.get(i, v).is_zero()).then(|| self.get(v, v).clone())
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_complex())
    }
}

/// Non-zero `L` entries of one site at fixed `x`.
struct SiteWeights<F> {
    n: usize,
    /// `diag[y][b]`: aux `y` and quantum `b` unchanged.
    diag: Vec<F>,
    /// `exchange[y][b]`: aux `y → b`, quantum `b → y`.
    exchange: Vec<F>,
}

impl<F: Scalar> SiteWeights<F> {
    fn new(field: &QField<F>, x: &F, y: &F, n: usize, p: &impl Fn(usize) -> u8) -> Self {
        let bracket = |c: i32| field.bracket_at(&(field.qpow(c) / y.clone()), x);
        let same = [bracket(2), bracket(-2)];
        let plain = bracket(0);
        let ratio = x.clone() / y.clone();
        let two = field.bracket_int(2);
        let mut diag = Vec::with_capacity(n * n);
        let mut exchange = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                diag.push(if a == b { same[p(a) as usize].clone() } else { plain.clone() });
                // L^{b a}_{a b} = [2(−1)^{p(a)p(b)}] q^{sign(a−b)u}, a the outgoing quantum label
                let e = if a == b {
                    F::zero()
                } else {
                    let sign = if p(a) * p(b) == 1 { -two.clone() } else { two.clone() };
                    sign * if a > b { ratio.clone() } else { ratio.inv() }
                };
                exchange.push(e);
            }
        }
        SiteWeights { n, diag, exchange }
    }

    fn diag(&self, y: usize, b: usize) -> &F {
        &self.diag[y * self.n + b]
    }

    /// Auxiliary `y` in, quantum `b` in; outgoing quantum label is `y`.
    fn exchange(&self, y: usize, b: usize) -> &F {
        &self.exchange[y * self.n + b]
    }
}

/// `‖T1 T2 − T2 T1‖_F / (‖T1‖_F ‖T2‖_F)`.
pub fn commutator_norm<F: Scalar>(t1: &TransferMatrix<F>, t2: &TransferMatrix<F>) -> Result<f64, LatticeError> {
    let c = t1.mul(t2)?.sub(&t2.mul(t1)?)?;
    let scale = t1.frobenius() * t2.frobenius();
    Ok(if scale == 0.0 { 0.0 } else { c.frobenius() / scale })
}

/// Whether `[T1, T2]` vanishes identically.
pub fn commutes<F: Scalar>(t1: &TransferMatrix<F>, t2: &TransferMatrix<F>) -> Result<bool, LatticeError> {
    Ok(t1.mul(t2)?.sub(&t2.mul(t1)?)?.is_zero())
}

/// Eigenvalues of a complex matrix; the offsets work around QR stalls on
/// spectra symmetric under `z ↦ −z`.
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    let offsets = [Complex64::new(0.0, 0.0), Complex64::new(0.37, 0.61), Complex64::new(-0.53, 0.29)];
    offsets.iter().find_map(|&c| {
        let shifted = m + DMatrix::<Complex64>::identity(n, n) * c;
        let e = nalgebra::Schur::try_new(shifted, f64::EPSILON, 10_000)?.eigenvalues()?;
        Some(e.iter().map(|z| z - c).collect())
    })
}

/// Label counts of a Bethe sector: label `a` appears `N_{a−1} − N_a` times
/// with `N_0 = N` and `N_{r+s+2} = 0`.
pub fn sector_occupation(n_sites: usize, sector: &[usize]) -> Result<Vec<usize>, LatticeError> {
    let mut chain = vec![n_sites];
    chain.extend_from_slice(sector);
    chain.push(0);
    chain
        .windows(2)
        .map(|w| w[0].checked_sub(w[1]))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| LatticeError::BadSector(sector.to_vec()))
}

/// `T^1(x)` of the distinguished covariant grading for the given roots.
pub fn t1_value<F: Scalar>(r: i32, s: i32, rs: &BetheRootSet<F>, x: &F) -> Result<F, LatticeError> {
    let dvf = Dvf::new(RootSystemConfig::distinguished_covariant(r, s)?, rs.clone())?;
    let t1 = dvf.t_skew(&SkewShape::straight(Partition::column(1)))?;
    Ok(t1.eval(dvf.field(), x)?)
}

/// Pseudo-vacuum eigenvalue against the trivial-sector `T^1` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct VacuumCheck<F> {
    pub x: F,
    pub eigenvalue: Option<F>,
    pub t1: F,
}

impl<F: Scalar> VacuumCheck<F> {
    /// `eigenvalue / T^1`; `None` when the vacuum is not an eigenvector.
    pub fn ratio(&self) -> Option<F> {
        self.eigenvalue.clone().map(|e| e / self.t1.clone())
    }
}

pub fn vacuum_check<F: Scalar>(r: i32, s: i32, q: &QParameter, sites: &[F], x: &F) -> Result<VacuumCheck<F>, LatticeError> {
    let t = TransferMatrix::new(r, s, q, x, sites)?;
    let colors = (r + s + 1) as usize;
    let rs = BetheRootSet::new(q.clone(), sites.to_vec(), vec![Vec::new(); colors]);
    Ok(VacuumCheck { x: x.clone(), eigenvalue: t.vacuum_eigenvalue(), t1: t1_value(r, s, &rs, x)? })
}

/// Comparison of `ρ(x)·T^1(x)` with the closest eigenvalue in the sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPoint {
    pub x: Complex64,
    pub rho: Complex64,
    pub predicted: Complex64,
    pub closest: Complex64,
    pub mismatch: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub sector: Vec<usize>,
    pub points: Vec<SpectralPoint>,
}

impl SpectralReport {
    pub fn max_mismatch(&self) -> f64 {
        self.points.iter().map(|p| p.mismatch).fold(0.0, f64::max)
    }
}

/// Matches `T^1` built from `solved` against the spectrum of `t(u)` on the
/// sector block at each sample point. The normalization `ρ(x)` is read off
/// the pseudo-vacuum.
pub fn spectral_match(
    r: i32,
    s: i32,
    solved: &BetheRootSet<Complex64>,
    samples: &[Complex64],
) -> Result<SpectralReport, LatticeError> {
    let sector: Vec<usize> = solved.roots.iter().map(Vec::len).collect();
    let counts = sector_occupation(solved.n_sites(), &sector)?;
    let mut points = Vec::with_capacity(samples.len());
    for x in samples {
        let t = TransferMatrix::new(r, s, &solved.q, x, &solved.sites)?;
        let states = t.sector_states(&counts);
        let eig = eigenvalues(&t.block(&states)).ok_or(LatticeError::DiagonalizationFailure)?;
        let vac = vacuum_check(r, s, &solved.q, &solved.sites, x)?;
        let rho = vac.ratio().ok_or(LatticeError::DiagonalizationFailure)?;
        let predicted = rho * t1_value(r, s, solved, x)?;
        let closest = eig
            .iter()
            .copied()
            .min_by(|a, b| (a - predicted).norm().total_cmp(&(b - predicted).norm()))
            .ok_or(LatticeError::BadSector(sector.clone()))?;
        let mismatch = (closest - predicted).norm() / closest.norm().max(predicted.norm()).max(f64::MIN_POSITIVE);
        points.push(SpectralPoint { x: *x, rho, predicted, closest, mismatch });
    }
    Ok(SpectralReport { sector, points })
}
