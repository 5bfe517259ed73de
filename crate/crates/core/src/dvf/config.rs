//! Root-system presets: label order, grading, box-function table and the
//! Cartan data entering the Bethe equations.

use std::fmt;
use std::str::FromStr;

use crate::tableaux::LabelSet;

use super::DvfError;

/// `Q_color(u + num) / Q_color(u + den)`. Colors outside `1..=r+s+1` are the
/// constant boundary functions `Q_0 = Q_{r+s+2} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QRatio {
    pub color: i32,
    pub num: i32,
    pub den: i32,
}

/// `z(a; u) = P(u + psi_shift) · ∏ ratios`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    pub label: i32,
    pub psi_shift: i32,
    pub ratios: Vec<QRatio>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    DistinguishedCovariant,
    DistinguishedContravariant,
    Sl12AppC,
    Sl12AppD,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::DistinguishedCovariant,
        Preset::DistinguishedContravariant,
        Preset::Sl12AppC,
        Preset::Sl12AppD,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::DistinguishedCovariant => "distinguished-covariant",
            Preset::DistinguishedContravariant => "distinguished-contravariant",
            Preset::Sl12AppC => "sl12-appC",
            Preset::Sl12AppD => "sl12-appD",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = DvfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| DvfError::UnknownPreset(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemConfig {
    pub preset: Preset,
    pub r: i32,
    pub s: i32,
    pub labels: LabelSet,
    pub boxes: Vec<BoxSpec>,
    /// `(α_a|α_b)` for colors `a, b = 1..=r+s+1`.
    pub cartan: Vec<Vec<i64>>,
    pub t_signs: Vec<i32>,
    pub degrees: Vec<u8>,
    /// The color whose Bethe equation carries the quantum-space factor.
    pub vacuum_color: i32,
}

impl RootSystemConfig {
    pub fn new(preset: Preset, r: i32, s: i32) -> Result<Self, DvfError> {
        match preset {
            Preset::DistinguishedCovariant => Self::distinguished_covariant(r, s),
            Preset::DistinguishedContravariant => Self::distinguished_contravariant(r, s),
            Preset::Sl12AppC | Preset::Sl12AppD => {
                if (r, s) != (0, 1) {
                    return Err(DvfError::PresetRank { preset: preset.name(), r, s });
                }
                Ok(if preset == Preset::Sl12AppC { Self::sl12_app_c() } else { Self::sl12_app_d() })
            }
        }
    }

    pub fn distinguished_covariant(r: i32, s: i32) -> Result<Self, DvfError> {
        check_rank(r, s)?;
        let labels = LabelSet::distinguished_covariant(r, s);
        let boxes = (1..=r + s + 2)
            .map(|a| {
                let psi_shift = if a == 1 { 2 } else { 0 };
                let ratios = if a <= r + 1 {
                    vec![
                        QRatio { color: a - 1, num: a + 1, den: a - 1 },
                        QRatio { color: a, num: a - 2, den: a },
                    ]
                } else {
                    vec![
                        QRatio { color: a - 1, num: 2 * r - a + 1, den: 2 * r - a + 3 },
                        QRatio { color: a, num: 2 * r - a + 4, den: 2 * r - a + 2 },
                    ]
                };
                BoxSpec { label: a, psi_shift, ratios }
            })
            .collect();
        Ok(Self::assemble(Preset::DistinguishedCovariant, r, s, labels.clone(), boxes, &labels))
    }

    /// Contravariant box functions over a covariant quantum space; the Bethe
    /// equations are those of the distinguished covariant grading.
    pub fn distinguished_contravariant(r: i32, s: i32) -> Result<Self, DvfError> {
        check_rank(r, s)?;
        let labels = LabelSet::distinguished_contravariant(r, s);
        let boxes = (1..=r + s + 2)
            .map(|k| {
                let a = -k;
                let psi_shift = if a == -1 { r - s - 2 } else { r - s };
                let ratios = if k <= r + 1 {
                    vec![
                        QRatio { color: k - 1, num: r - s + a - 1, den: r - s + a + 1 },
                        QRatio { color: k, num: r - s + a + 2, den: r - s + a },
                    ]
                } else {
                    vec![
                        QRatio { color: k - 1, num: -r - s - a - 1, den: -r - s - a - 3 },
                        QRatio { color: k, num: -r - s - a - 4, den: -r - s - a - 2 },
                    ]
                };
                BoxSpec { label: a, psi_shift, ratios }
            })
            .collect();
        let covariant = LabelSet::distinguished_covariant(r, s);
        Ok(Self::assemble(Preset::DistinguishedContravariant, r, s, labels, boxes, &covariant))
    }

    /// sl(1|2) with grading (odd, even, odd).
    pub fn sl12_app_c() -> Self {
        let labels = LabelSet::new(vec![1, 2, 3], vec![1, 0, 1]).expect("valid labels");
        let boxes = vec![
            BoxSpec { label: 1, psi_shift: -2, ratios: vec![QRatio { color: 1, num: 1, den: -1 }] },
            BoxSpec {
                label: 2,
                psi_shift: 0,
                ratios: vec![QRatio { color: 1, num: 1, den: -1 }, QRatio { color: 2, num: -2, den: 0 }],
            },
            BoxSpec { label: 3, psi_shift: 0, ratios: vec![QRatio { color: 2, num: -2, den: 0 }] },
        ];
        Self::assemble(Preset::Sl12AppC, 0, 1, labels.clone(), boxes, &labels)
    }

    /// sl(1|2) with grading (odd, odd, even).
    pub fn sl12_app_d() -> Self {
        let labels = LabelSet::new(vec![1, 2, 3], vec![1, 1, 0]).expect("valid labels");
        let boxes = vec![
            BoxSpec { label: 1, psi_shift: -2, ratios: vec![QRatio { color: 1, num: 1, den: -1 }] },
            BoxSpec {
                label: 2,
                psi_shift: 0,
                ratios: vec![QRatio { color: 1, num: -3, den: -1 }, QRatio { color: 2, num: 0, den: -2 }],
            },
            BoxSpec { label: 3, psi_shift: 0, ratios: vec![QRatio { color: 2, num: 0, den: -2 }] },
        ];
        Self::assemble(Preset::Sl12AppD, 0, 1, labels.clone(), boxes, &labels)
    }

    /// Cartan data from the grading of `roots_from`: simple root `α_a` is
    /// `e_a − e_{a+1}` with `(e_b|e_b) = (−1)^{p(b)}`.
    fn assemble(
        preset: Preset,
        r: i32,
        s: i32,
        labels: LabelSet,
        boxes: Vec<BoxSpec>,
        roots_from: &LabelSet,
    ) -> Self {
        let n = roots_from.len();
        let form = |b: usize| if roots_from.parity_at(b) == 0 { 1i64 } else { -1 };
        let inner = |a: usize, b: usize| if a == b { form(a) } else { 0 };
        let colors = n - 1;
        let cartan = (0..colors)
            .map(|a| {
                (0..colors)
                    .map(|b| inner(a, b) - inner(a, b + 1) - inner(a + 1, b) + inner(a + 1, b + 1))
                    .collect()
            })
            .collect();
        let t_signs = (0..colors).map(|a| form(a) as i32).collect();
        let degrees = (0..colors)
            .map(|a| (roots_from.parity_at(a) + roots_from.parity_at(a + 1)) % 2)
            .collect();
        RootSystemConfig { preset, r, s, labels, boxes, cartan, t_signs, degrees, vacuum_color: 1 }
    }

    /// Number of Q-function colors, `r + s + 1`.
    pub fn colors(&self) -> usize {
        self.cartan.len()
    }

    pub fn box_spec(&self, label: i32) -> Result<&BoxSpec, DvfError> {
        self.boxes
            .iter()
            .find(|b| b.label == label)
            .ok_or(DvfError::UnknownLabel(label))
    }

    pub fn parity(&self, label: i32) -> Result<u8, DvfError> {
        self.labels.parity(label).map_err(|_| DvfError::UnknownLabel(label))
    }
}

fn check_rank(r: i32, s: i32) -> Result<(), DvfError> {
    if r < 0 || s < 0 {
        return Err(DvfError::PresetRank { preset: "distinguished", r, s });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinguished_cartan() {
        let c = RootSystemConfig::distinguished_covariant(1, 1).unwrap();
        assert_eq!(c.cartan, vec![vec![2, -1, 0], vec![-1, 0, 1], vec![0, 1, -2]]);
        assert_eq!(c.t_signs, vec![1, 1, -1]);
        assert_eq!(c.degrees, vec![0, 1, 0]);
    }

    #[test]
    fn non_distinguished_cartan() {
        let c = RootSystemConfig::sl12_app_c();
        assert_eq!(c.cartan, vec![vec![0, -1], vec![-1, 0]]);
        assert_eq!(c.degrees, vec![1, 1]);
        let d = RootSystemConfig::sl12_app_d();
        assert_eq!(d.cartan, vec![vec![-2, 1], vec![1, 0]]);
        assert_eq!(d.degrees, vec![0, 1]);
        assert_eq!(d.t_signs[0], -1);
    }

    #[test]
    fn contravariant_first_box() {
        let c = RootSystemConfig::distinguished_contravariant(1, 0).unwrap();
        let b = c.box_spec(-1).unwrap();
        assert_eq!(b.psi_shift, -1);
        assert_eq!(b.ratios[1], QRatio { color: 1, num: 2, den: 0 });
        assert!(c.box_spec(1).is_err());
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("sl12-appE".parse::<Preset>().is_err());
    }
}
