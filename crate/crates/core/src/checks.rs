//! Named registry of the self-contained verification checks.
//!
//! Each check re-derives one identity (or valuation/congruence condition)
//! from scratch at a configurable depth and reports pass/fail with detail.
//! The CLI `verify` subcommand runs the whole registry; individual checks
//! can be selected by name.

use crate::modfunc::{
    verify_e4chi_ratio, verify_eta_quotients, verify_j8_j16_identity, verify_j_identity,
    verify_uz2_closed_forms, verify_z_hauptmodul, IdentityReport,
};
use crate::scheme::by_level;
use crate::umatrix::{column_genfun_check, diamond_check, multiplier_congruence_check};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl From<IdentityReport> for CheckOutcome {
    fn from(r: IdentityReport) -> Self {
        CheckOutcome { name: r.name, pass: r.pass, detail: r.detail }
    }
}

/// A named verification strategy, run at a given q-depth.
pub trait IdentityCheck: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, depth: usize) -> CheckOutcome;
}

macro_rules! identity_check {
    ($ty:ident, $name:expr, $desc:expr, $run:expr) => {
        struct $ty;
        impl IdentityCheck for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn description(&self) -> &'static str {
                $desc
            }
            fn run(&self, depth: usize) -> CheckOutcome {
                let f: fn(usize) -> CheckOutcome = $run;
                f(depth)
            }
        }
    };
}

identity_check!(
    JIdentity,
    "j-identity",
    "j as a degree-12 rational function of the X_0(8) uniformizer",
    |d| verify_j_identity(d).into()
);
identity_check!(
    J8J16,
    "j8-j16",
    "1/j8 = 1/j16 + 2/j16^2 under the covering X_0(16) -> X_0(8)",
    |d| verify_j8_j16_identity(d).into()
);
identity_check!(
    EtaQuotients,
    "eta-quotients",
    "eta-quotient forms of the uniformizer products, in cleared form",
    |d| verify_eta_quotients(d).into()
);
identity_check!(
    ZHauptmodul,
    "z-hauptmodul",
    "z4 = 2/(j8+4) and z8 = sqrt(2)/(j16+2)",
    |d| verify_z_hauptmodul(d).into()
);
identity_check!(
    UZClosedForms,
    "u-z-squared",
    "closed forms of U(z4^2), U(z8^2) and vanishing of U(z^3)",
    |d| verify_uz2_closed_forms(d).into()
);
identity_check!(
    E4ChiRatio,
    "e4chi-ratio",
    "degree-5 rational function for the weight-4 multiplier at level 8",
    |d| verify_e4chi_ratio(d).into()
);
identity_check!(
    Diamond4,
    "diamond-4",
    "valuation pattern of the z-expansion of U(z4^2)",
    |d| match diamond_check(by_level(4).unwrap(), d.max(4)) {
        Ok(r) => CheckOutcome { name: "diamond-4", pass: r.pass, detail: r.detail },
        Err(e) => CheckOutcome { name: "diamond-4", pass: false, detail: e.to_string() },
    }
);
identity_check!(
    Diamond8,
    "diamond-8",
    "valuation pattern of the z-expansion of U(z8^2)",
    |d| match diamond_check(by_level(8).unwrap(), d.max(4)) {
        Ok(r) => CheckOutcome { name: "diamond-8", pass: r.pass, detail: r.detail },
        Err(e) => CheckOutcome { name: "diamond-8", pass: false, detail: e.to_string() },
    }
);
identity_check!(
    Congruence4,
    "multiplier-congruence-4",
    "weight-4 multiplier = 1 + z8 mod 2 after rescaling",
    |d| congruence_outcome("multiplier-congruence-4", 4, d)
);
identity_check!(
    Congruence8,
    "multiplier-congruence-8",
    "weight-8 multiplier = 1 + z8 mod 2 after rescaling",
    |d| congruence_outcome("multiplier-congruence-8", 8, d)
);
identity_check!(
    GenfunColumns,
    "genfun-columns",
    "mod-2 column generating functions form a basis",
    |_d| {
        let mut pass = true;
        let mut details = Vec::new();
        for (n, i) in [(10usize, 0usize), (10, 3), (16, 0), (16, 5)] {
            let r = column_genfun_check(n, i);
            pass &= r.pass;
            details.push(format!(
                "n={} i={}: det={} elimination {}",
                n,
                i,
                r.determinant,
                if r.elimination_complete { "complete" } else { "stuck" }
            ));
        }
        CheckOutcome { name: "genfun-columns", pass, detail: details.join("; ") }
    }
);

fn congruence_outcome(name: &'static str, weight: u32, depth: usize) -> CheckOutcome {
    let len = depth.clamp(8, 32);
    match multiplier_congruence_check(by_level(8).unwrap(), weight, len) {
        Ok(r) => CheckOutcome { name, pass: r.pass, detail: r.detail },
        Err(e) => CheckOutcome { name, pass: false, detail: e.to_string() },
    }
}

/// All registered checks, in a stable order.
pub fn registry() -> Vec<Box<dyn IdentityCheck>> {
    vec![
        Box::new(JIdentity),
        Box::new(J8J16),
        Box::new(EtaQuotients),
        Box::new(ZHauptmodul),
        Box::new(UZClosedForms),
        Box::new(E4ChiRatio),
        Box::new(Diamond4),
        Box::new(Diamond8),
        Box::new(Congruence4),
        Box::new(Congruence8),
        Box::new(GenfunColumns),
    ]
}

/// Run every registered check at the given depth.
pub fn run_all(depth: usize) -> Vec<CheckOutcome> {
    registry().iter().map(|c| c.run(depth)).collect()
}

/// Run a subset of checks by name; unknown names produce failing outcomes so
/// typos cannot silently pass.
pub fn run_named(names: &[String], depth: usize) -> Vec<CheckOutcome> {
    let reg = registry();
    names
        .iter()
        .map(|n| match reg.iter().find(|c| c.name() == n) {
            Some(c) => c.run(depth),
            None => CheckOutcome {
                name: "unknown-check",
                pass: false,
                detail: format!("no check named {:?}", n),
            },
        })
        .collect()
}
