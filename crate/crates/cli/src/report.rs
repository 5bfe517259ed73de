//! Key-value report records.

use std::fmt::Write;

use bethe_core::qarith::Rat;
use num_complex::Complex64;

use crate::checks::Check;

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub check: Check,
    pub params: String,
    pub pass: bool,
    pub witness: String,
}

impl Entry {
    pub fn new(check: Check, params: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Entry { check, params: params.into(), pass, witness: witness.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    /// One record per line, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            writeln!(
                out,
                "check={} params=\"{}\" verdict={} witness=\"{}\"",
                e.check.name(),
                e.params,
                if e.pass { "PASS" } else { "FAIL" },
                e.witness
            )
            .unwrap();
        }
        let failed = self.failed();
        writeln!(out, "summary entries={} passed={} failed={}", self.entries.len(), self.entries.len() - failed, failed)
            .unwrap();
        out
    }
}

pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `re±im i` with 17 significant digits.
pub fn fmt_complex(z: &Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bethe_core::qarith::rat;

    #[test]
    fn number_formats() {
        assert_eq!(fmt_rat(&rat(3, 1)), "3/1");
        assert_eq!(fmt_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(fmt_complex(&Complex64::new(0.5, -2.0)), "5.0000000000000000e-1-2.0000000000000000e0i");
    }

    #[test]
    fn empty_report_passes() {
        let r = Report::default();
        assert!(r.all_pass());
        assert_eq!(r.render(), "summary entries=0 passed=0 failed=0\n");
    }
}
