//! The individual verification checks run by a campaign.

use std::fmt;
use std::str::FromStr;

use bethe_core::bae::{
    enforce_single_root, homogeneous_template, max_bae_residual, pole_audit, solve_full, CartanData, SolveOptions,
};
use bethe_core::diagrams::{kac_dynkin_covariant, Partition, SkewShape};
use bethe_core::dvf::{convolution_residual, crossing_residual, mixed_identity_residual};
use bethe_core::dvf::{Axis, BetheRootSet, Dvf, DvfError, Preset, SeriesKind};
use bethe_core::lattice::{commutator_norm, commutes, spectral_match, vacuum_check, TransferMatrix};
use bethe_core::qarith::{rat, Rat, Scalar};
use bethe_core::tableaux::enumerate;
use bethe_core::tsystem::TGrid;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Campaign;
use crate::report::{fmt_complex, fmt_rat, Entry, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Jt,
    Hirota,
    Reductions,
    Vanishing,
    PoleAudit,
    Lattice,
    Crossing,
    Mixed,
    Ab,
    TopTerm,
    SolveBae,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Jt,
        Check::Hirota,
        Check::Reductions,
        Check::Vanishing,
        Check::PoleAudit,
        Check::Lattice,
        Check::Crossing,
        Check::Mixed,
        Check::Ab,
        Check::TopTerm,
        Check::SolveBae,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Jt => "jt",
            Check::Hirota => "hirota",
            Check::Reductions => "reductions",
            Check::Vanishing => "vanishing",
            Check::PoleAudit => "pole-audit",
            Check::Lattice => "lattice",
            Check::Crossing => "crossing",
            Check::Mixed => "mixed",
            Check::Ab => "ab",
            Check::TopTerm => "top-term",
            Check::SolveBae => "solve-bae",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s || (s == "jt-equivalence" && *c == Check::Jt))
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// Runs every selected check; checks run concurrently, entries come back in
/// selection order.
pub fn run(c: &Campaign) -> Report {
    let mut checks = c.checks.clone();
    checks.sort();
    checks.dedup();
    let results: Vec<Vec<Entry>> = std::thread::scope(|scope| {
        let handles: Vec<_> = checks.iter().map(|&ch| scope.spawn(move || run_one(ch, c))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    Report { entries: results.into_iter().flatten().collect() }
}

pub fn run_one(check: Check, c: &Campaign) -> Vec<Entry> {
    let base = format!("preset={} r={} s={} N={} seed={}", c.preset, c.r(), c.s(), c.n_sites, c.seed);
    let mut out = Vec::new();
    let result = match check {
        Check::Jt => jt(c, &base, &mut out),
        Check::Hirota => hirota(c, &base, &mut out),
        Check::Reductions => reductions(c, &base, &mut out),
        Check::Vanishing => vanishing(c, &base, &mut out),
        Check::PoleAudit => polefree(c, &base, &mut out),
        Check::Lattice => lattice(c, &base, &mut out),
        Check::Crossing => crossing(c, &base, &mut out),
        Check::Mixed => mixed(c, &base, &mut out),
        Check::Ab => ab(c, &base, &mut out),
        Check::TopTerm => top_term(c, &base, &mut out),
        Check::SolveBae => solve_bae(c, &base, &mut out),
    };
    if let Err(e) = result {
        out.push(Entry::new(check, base, false, format!("error: {e}")));
    }
    out
}

type CheckResult = Result<(), String>;

fn exact_dvf(c: &Campaign, n_sites: usize) -> Result<Dvf<Rat>, String> {
    let rs = BetheRootSet::draw(&c.q, n_sites, &c.sector, c.seed);
    Dvf::new(c.root_cfg.clone(), rs).map_err(|e| e.to_string())
}

fn needs_covariant(c: &Campaign) -> CheckResult {
    if c.preset == Preset::DistinguishedCovariant {
        Ok(())
    } else {
        Err(format!("unsupported for preset {}", c.preset))
    }
}

fn zero_witness(zero: bool) -> &'static str {
    if zero {
        "residual=0"
    } else {
        "residual!=0"
    }
}

fn jt(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    let d = exact_dvf(c, c.n_sites)?;
    for sh in &c.shapes {
        for axis in [Axis::Column, Axis::Row] {
            let params = format!("{base} shape={sh} axis={}", if axis == Axis::Column { "column" } else { "row" });
            let cert = d.jt_difference(sh, axis).and_then(|e| Ok(e.certify_zero(d.field())?));
            out.push(match cert {
                Ok(z) => Entry::new(Check::Jt, params, z.is_zero, format!("points={} span={}", z.points, z.span)),
                Err(e) => Entry::new(Check::Jt, params, false, format!("error: {e}")),
            });
        }
    }
    Ok(())
}

fn hirota(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let g = TGrid::new(exact_dvf(c, c.n_sites)?);
    let f = g.dvf().field();
    let (r, s) = (c.r() as usize, c.s() as usize);
    for a in 1..=r + 4 {
        for m in 1..=s + 4 {
            let z = g.hirota_residual(a, m).map_err(|e| e.to_string())?.is_identically_zero(f).map_err(|e| e.to_string())?;
            out.push(Entry::new(Check::Hirota, format!("{base} a={a} m={m}"), z, zero_witness(z)));
        }
    }
    for a in 1..=2 {
        for m in 1..=c.grid_max {
            let z = g.g_identity_residual(a, m).is_identically_zero(f).map_err(|e| e.to_string())?;
            out.push(Entry::new(Check::Hirota, format!("{base} g-identity a={a} m={m}"), z, zero_witness(z)));
        }
    }
    Ok(())
}

fn reductions(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let g = TGrid::new(exact_dvf(c, c.n_sites)?);
    let f = g.dvf().field();
    let (r, s, top) = (c.r() as usize, c.s() as usize, c.grid_max);
    let mut push = |name: String, e: Result<bethe_core::qarith::RatExpr<Rat>, DvfError>| -> CheckResult {
        let z = e.map_err(|e| e.to_string())?.is_identically_zero(f).map_err(|e| e.to_string())?;
        out.push(Entry::new(Check::Reductions, format!("{base} {name}"), z, zero_witness(z)));
        Ok(())
    };
    for m in s + 1..=top {
        push(format!("red1 m={m}"), g.red1_residual(m))?;
    }
    for a in r + 1..=top {
        push(format!("red2 a={a}"), g.red2_residual(a))?;
    }
    for a in 1..=top {
        push(format!("dual a={a}"), g.duality_residual(a))?;
    }
    for m in s + 2..=top {
        push(format!("laplace1 m={m}"), g.laplace1_residual(m))?;
    }
    for a in r + 2..=top {
        push(format!("laplace2 a={a}"), g.laplace2_residual(a))?;
    }
    push("follow-up".to_string(), g.follow_up_residual())
}

fn vanishing(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    let g = TGrid::new(exact_dvf(c, c.n_sites)?);
    let d = g.dvf();
    let (r, s) = (c.r() as usize, c.s() as usize);
    for a in 1..=r + 3 {
        for m in 1..=s + 3 {
            let expect = a >= r + 2 && m >= s + 2;
            let got = g.vanishing_check(a, m).map_err(|e| e.to_string())?;
            out.push(Entry::new(
                Check::Vanishing,
                format!("{base} rectangle={a}x{m}"),
                got == expect,
                format!("zero={got} expected={expect}"),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for sh in &c.shapes {
        let params = format!("{base} shape={sh}");
        let t = d.t_skew(sh).map_err(|e| e.to_string())?;
        if sh.contains_rectangle(r + 2, s + 2) {
            let empty = enumerate(sh, &d.cfg().labels).is_empty();
            let zero = t.is_zero_syntactic();
            out.push(Entry::new(Check::Vanishing, params, empty && zero, format!("block=yes tableaux_empty={empty} zero={zero}")));
        } else {
            // a nonzero value at any of three random points settles it
            let mut witness = None;
            for _ in 0..3 {
                let x = rat(rng.gen_range(1000..5000), 997);
                if let Ok(v) = t.eval(d.field(), &x) {
                    if !v.is_zero() {
                        witness = Some(x);
                        break;
                    }
                }
            }
            out.push(match witness {
                Some(x) => Entry::new(Check::Vanishing, params, true, format!("block=no nonzero_at={}", fmt_rat(&x))),
                None => Entry::new(Check::Vanishing, params, false, "block=no but vanished at all sample points"),
            });
        }
    }
    Ok(())
}

fn polefree(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    let cd = CartanData::from_config(&c.root_cfg);
    let template = BetheRootSet::draw(&c.q, c.n_sites, &c.sector, c.seed).to_complex();
    for b in 1..=c.root_cfg.colors() as i32 {
        if c.sector[b as usize - 1] == 0 {
            continue;
        }
        let params = format!("{base} color={b} a<={}", c.grid_max);
        let rs = if c.corrupt_root {
            template.clone()
        } else {
            match enforce_single_root(b, 0, &template, &cd).map_err(|e| e.to_string())?.into_iter().next() {
                Some(rs) => rs,
                None => {
                    out.push(Entry::new(Check::PoleAudit, params, false, "no admissible root"));
                    continue;
                }
            }
        };
        let audit = pole_audit(&c.root_cfg, c.grid_max, &rs, b, 0).map_err(|e| e.to_string())?;
        let worst = audit.max_relative();
        let pass = !audit.residues.is_empty() && worst < c.tol;
        out.push(Entry::new(
            Check::PoleAudit,
            params,
            pass,
            format!("poles={} max_relative_residue={worst:.3e} root={}", audit.residues.len(), fmt_complex(&rs.roots[b as usize - 1][0])),
        ));
    }
    Ok(())
}

fn lattice(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let (r, s, n) = (c.r(), c.s(), c.n_sites);
    let q = &c.q;
    let sites = BetheRootSet::draw(q, n, &[], c.seed).sites;
    let wc: Vec<Complex64> = sites.iter().map(|y| Complex64::new(bethe_core::qarith::rat_to_f64(y), 0.0)).collect();
    let e = |e: bethe_core::lattice::LatticeError| e.to_string();

    let ta = TransferMatrix::new(r, s, q, &Complex64::new(0.8, 0.3), &wc).map_err(e)?;
    let tb = TransferMatrix::new(r, s, q, &Complex64::new(1.7, -0.4), &wc).map_err(e)?;
    let cn = commutator_norm(&ta, &tb).map_err(e)?;
    out.push(Entry::new(Check::Lattice, format!("{base} commutator float"), cn < c.tol, format!("relative_norm={cn:.3e}")));
    if n <= 2 {
        let ea = TransferMatrix::new(r, s, q, &rat(3, 7), &sites).map_err(e)?;
        let eb = TransferMatrix::new(r, s, q, &rat(11, 5), &sites).map_err(e)?;
        let ok = commutes(&ea, &eb).map_err(e)?;
        out.push(Entry::new(Check::Lattice, format!("{base} commutator exact"), ok, zero_witness(ok)));
        let v = vacuum_check(r, s, q, &sites, &rat(3, 7)).map_err(e)?;
        let ok = v.eigenvalue.as_ref() == Some(&v.t1);
        out.push(Entry::new(Check::Lattice, format!("{base} vacuum exact"), ok, format!("t1={}", fmt_rat(&v.t1))));
    }
    let v = vacuum_check(r, s, q, &wc, &Complex64::new(1.3, 0.2)).map_err(e)?;
    let dev = v.eigenvalue.map(|ev| (ev - v.t1).norm() / ev.norm()).unwrap_or(f64::INFINITY);
    out.push(Entry::new(Check::Lattice, format!("{base} vacuum float"), dev < c.tol, format!("relative_deviation={dev:.3e}")));

    let cd = CartanData::from_config(&c.root_cfg);
    let sols = solve_full(&homogeneous_template(q, n, &c.sector), &cd, c.seed, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let samples = [Complex64::new(1.3, 0.1), Complex64::new(0.7, -0.2), Complex64::new(2.1, 0.4)];
    let sector: Vec<String> = c.sector.iter().map(|k| k.to_string()).collect();
    let sector = sector.join(",");
    if sols.is_empty() {
        out.push(Entry::new(Check::Lattice, format!("{base} spectrum sector={sector}"), true, "solver found no solutions (not blocking)"));
    }
    for (i, sol) in sols.iter().enumerate() {
        let rep = spectral_match(r, s, sol, &samples).map_err(e)?;
        let mm = rep.max_mismatch();
        out.push(Entry::new(
            Check::Lattice,
            format!("{base} spectrum sector={sector} solution={i}"),
            mm < c.tol,
            format!("max_mismatch={mm:.3e} rho={}", fmt_complex(&rep.points[0].rho)),
        ));
    }
    Ok(())
}

fn crossing(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let d = exact_dvf(c, c.n_sites)?;
    for a in d.cfg().labels.labels().to_vec() {
        let z = crossing_residual(c.r(), c.s(), a, d.roots())
            .and_then(|t| Ok(t.is_identically_zero(d.field())?))
            .map_err(|e| e.to_string())?;
        out.push(Entry::new(Check::Crossing, format!("{base} label={a}"), z, zero_witness(z)));
    }
    Ok(())
}

fn mixed(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let d = exact_dvf(c, c.n_sites)?;
    match mixed_identity_residual(c.r(), c.s(), d.roots()) {
        Ok(t) => {
            let z = t.is_identically_zero(d.field()).map_err(|e| e.to_string())?;
            out.push(Entry::new(Check::Mixed, base, z, zero_witness(z)));
        }
        Err(DvfError::EqualRankError) if c.r() == c.s() => {
            out.push(Entry::new(Check::Mixed, base, true, "rejected: r = s"));
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

fn ab(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    let d = exact_dvf(c, c.n_sites)?;
    for n in 0..=c.grid_max as i64 {
        for kind in [SeriesKind::Column, SeriesKind::Row] {
            let z = convolution_residual(&d, kind, n)
                .and_then(|t| Ok(t.is_identically_zero(d.field())?))
                .map_err(|e| e.to_string())?;
            let k = if kind == SeriesKind::Column { "column" } else { "row" };
            out.push(Entry::new(Check::Ab, format!("{base} series={k} n={n}"), z, zero_witness(z)));
        }
    }
    Ok(())
}

/// `(−1)^{Σ_{i≥r+2} μ_i} q^{−2 Σ_b N_b a_b t_b}` with `t_b = +1` up to the odd
/// root and `−1` after it.
fn top_term_expected(c: &Campaign, mu: &Partition) -> Result<Rat, String> {
    let (r, s) = (c.r() as usize, c.s() as usize);
    let a = kac_dynkin_covariant(mu, r, s).map_err(|e| e.to_string())?;
    let e: i64 = a.iter().enumerate().map(|(b, &ab)| c.sector[b] as i64 * ab * if b <= r { 1 } else { -1 }).sum();
    let lower: usize = mu.parts().iter().skip(r + 1).sum();
    let sign = if lower % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(sign * c.q.value().clone().powi(-2 * e as i32))
}

fn top_term(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    needs_covariant(c)?;
    let d = exact_dvf(c, 0)?;
    let (r, s) = (c.r() as usize, c.s() as usize);
    let mut shapes: Vec<Partition> = c.shapes.iter().map(|sh| sh.outer().clone()).filter(|mu| mu.part(r + 2) <= s + 1).collect();
    shapes.dedup();
    if shapes.is_empty() {
        return Err("no covariant shapes among the configured shapes".to_string());
    }
    for mu in shapes {
        let params = format!("{base} vacuum=trivial shape={mu}");
        let got = d
            .top_term(&SkewShape::straight(mu.clone()))
            .map_err(|e| e.to_string())
            .and_then(|t| t.limit_at_infinity(d.field()).map_err(|e| e.to_string()))?;
        let want = top_term_expected(c, &mu)?;
        out.push(Entry::new(Check::TopTerm, params, got == want, format!("limit={} expected={}", fmt_rat(&got), fmt_rat(&want))));
    }
    Ok(())
}

fn solve_bae(c: &Campaign, base: &str, out: &mut Vec<Entry>) -> CheckResult {
    let cd = CartanData::from_config(&c.root_cfg);
    let template = homogeneous_template(&c.q, c.n_sites, &c.sector);
    let sols = solve_full(&template, &cd, c.seed, &SolveOptions::default()).map_err(|e| e.to_string())?;
    if sols.is_empty() {
        out.push(Entry::new(Check::SolveBae, base, false, "no solutions found"));
    }
    for (i, sol) in sols.iter().enumerate() {
        let res = max_bae_residual(sol, &cd).map_err(|e| e.to_string())?;
        let roots: Vec<String> = sol
            .roots
            .iter()
            .enumerate()
            .flat_map(|(a, ys)| ys.iter().map(move |y| format!("y{}={}", a + 1, fmt_complex(y))))
            .collect();
        out.push(Entry::new(
            Check::SolveBae,
            format!("{base} solution={i}"),
            res < c.tol,
            format!("max_residual={res:.3e} {}", roots.join(" ")),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert_eq!("jt-equivalence".parse::<Check>().unwrap(), Check::Jt);
        assert!("hirota ".parse::<Check>().is_ok());
        assert!("nope".parse::<Check>().is_err());
    }
}
