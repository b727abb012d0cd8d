//! Corpus files, the per-germ report, and the checks run over them.
//!
//! A corpus is a JSON-lines file with one [`GermSpec`] per line; blank lines
//! and lines starting with `#` are skipped. [`analyze`] turns a germ into an
//! [`InvariantReport`], and [`verify_spec`] adds the pass/fail verdict used
//! by the corpus runner.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{GermError, Result};
use crate::milnor::{self, MilnorAlgebra};
use crate::newton;
use crate::parse::{parse_poly, validate_vars};
use crate::poly::{Polynomial, Rational};
use crate::sectional::{self, SectionPlan};

/// Tag marking semi-weighted-homogeneous germs, for which `f² ∈ J_f` is
/// required.
pub const TAG_SWH: &str = "swh";
/// Tag marking deformations `x^m + y^m + z^m + g` whose `τ` is compared
/// (informationally) with `(2m−3)(m+1)(m−1)/3`.
pub const TAG_FERMAT_DEFORMATION: &str = "fermat-deformation";

/// One corpus entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpec {
    pub name: String,
    pub vars: Vec<String>,
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

/// Golden values; absent fields are not compared.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl GermSpec {
    /// Parses the polynomial, checking the variable list and that the germ
    /// vanishes at the origin.
    pub fn polynomial(&self) -> Result<Polynomial> {
        validate_vars(&self.vars)?;
        let f = parse_poly(&self.poly, &self.vars)?;
        if !num_traits::Zero::is_zero(&f.constant_term()) {
            return Err(GermError::InvalidInput(
                "germ must vanish at the origin (nonzero constant term)".into(),
            ));
        }
        Ok(f)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Powers `k` whose membership `f^k ∈ J_f` this entry requires.
    pub fn required_powers(&self) -> Vec<u32> {
        if self.has_tag(TAG_SWH) {
            vec![2]
        } else {
            Vec::new()
        }
    }
}

/// Parses corpus text. Errors carry the 1-based line number.
pub fn parse_corpus(text: &str) -> Result<Vec<GermSpec>> {
    let mut specs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let corpus_err = |message: String| GermError::Corpus {
            line: idx + 1,
            message,
        };
        let spec: GermSpec = serde_json::from_str(line).map_err(|e| corpus_err(e.to_string()))?;
        spec.polynomial()
            .map_err(|e| corpus_err(format!("germ `{}`: {e}", spec.name)))?;
        specs.push(spec);
    }
    Ok(specs)
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<GermSpec>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| {
        GermError::InvalidInput(format!("cannot read corpus {}: {e}", path.display()))
    })?;
    parse_corpus(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Smooth,
    NotIsolated,
    InputError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Smooth => "SMOOTH",
            Status::NotIsolated => "NOT_ISOLATED",
            Status::InputError => "INPUT_ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonSummary {
    pub convenient: bool,
    /// `q → V_q` as exact `"p/q"` strings.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub volumes: BTreeMap<usize, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_ge_nu: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_eq_nu: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_ge_nu_over_n: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionalSummary {
    pub mu_i: Vec<usize>,
    pub log_convex: bool,
    /// `μ ≥ (m−1)ⁿ`.
    pub mu_ge_pow: bool,
    /// `τ ≥ (m−1)ⁿ/n`.
    pub tau_ge_pow_over_n: bool,
    /// `τ > (m−1)ⁿ/n`.
    pub tau_gt_pow_over_n: bool,
    /// The lowest-degree form has an isolated singularity.
    pub semi_homogeneous: bool,
}

/// Everything computed for one germ. Fields other than `name`, `n` and
/// `status` are omitted when not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    /// `μ/τ` as `"p/q"`, present only when `τ > 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration_dims: Option<Vec<usize>>,
    /// `fⁿ ∈ J_f`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bs_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_pow_checks: Option<BTreeMap<u32, bool>>,
    /// `f ∈ J_f`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saito_membership: Option<bool>,
    /// Multiplication by `f` is zero on `M_f`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_ok: Option<bool>,
    /// `ker(f) = (fⁿ⁻¹)` in `M_f`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_case: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton: Option<NewtonSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sectional: Option<SectionalSummary>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl InvariantReport {
    fn empty(name: &str, n: usize) -> Self {
        InvariantReport {
            name: name.to_string(),
            n,
            m: None,
            mu: None,
            tau: None,
            ratio: None,
            filtration_dims: None,
            bs_holds: None,
            f_pow_checks: None,
            saito_membership: None,
            operator_zero: None,
            theorem_ok: None,
            equality_case: None,
            newton: None,
            sectional: None,
            status: Status::Ok,
            message: None,
        }
    }

    fn failed(name: &str, n: usize, err: &GermError) -> Self {
        let status = match err {
            GermError::Smooth => Status::Smooth,
            GermError::NotIsolated => Status::NotIsolated,
            _ => Status::InputError,
        };
        InvariantReport {
            status,
            message: Some(err.to_string()),
            ..InvariantReport::empty(name, n)
        }
    }

    /// Canonical JSON (field order is the declaration order).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Mathematical checks that failed; empty means every computed check
    /// holds. Only meaningful for `status = OK`.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (Some(mu), Some(tau)) = (self.mu, self.tau) else {
            return out;
        };
        let mut need = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        let n = self.n;
        if let Some(ok) = self.theorem_ok {
            need(ok, "mu <= n*tau with the filtration identities");
        }
        if let Some(ok) = self.bs_holds {
            need(ok, "f^n in J_f");
        }
        if let Some(eq) = self.equality_case {
            need(
                eq == (mu == n * tau),
                "equality case agrees with mu = n*tau",
            );
        }
        if let (Some(s), Some(z)) = (self.saito_membership, self.operator_zero) {
            need(
                s == (mu == tau) && z == (mu == tau),
                "mu = tau, f in J_f and A = 0 agree",
            );
        }
        if let Some(nw) = &self.newton {
            if nw.convenient {
                need(nw.mu_ge_nu == Some(true), "mu >= nu");
                need(nw.tau_ge_nu_over_n == Some(true), "tau >= nu/n");
            }
        }
        if let (Some(s), Some(m)) = (&self.sectional, self.m) {
            let ends = s.mu_i.len() == n + 1
                && s.mu_i[0] == 1
                && s.mu_i[n] == mu
                && (n < 2 || s.mu_i[1] + 1 == m as usize);
            need(ends, "mu^0 = 1, mu^1 = m-1, mu^n = mu");
            need(s.log_convex, "sectional Milnor numbers log-convex");
            need(s.mu_ge_pow, "mu >= (m-1)^n");
            need(s.tau_ge_pow_over_n, "tau >= (m-1)^n/n");
        }
        out
    }
}

/// Which groups of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub algebra: bool,
    pub newton: bool,
    pub sectional: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        algebra: true,
        newton: true,
        sectional: true,
    };

    /// Parses a comma-separated list of `algebra`, `newton`, `sectional`,
    /// `all`.
    pub fn parse(list: &str) -> Result<Checks> {
        let mut c = Checks {
            algebra: false,
            newton: false,
            sectional: false,
        };
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "algebra" => c.algebra = true,
                "newton" => c.newton = true,
                "sectional" => c.sectional = true,
                "all" => c = Checks::ALL,
                other => {
                    return Err(GermError::InvalidInput(format!(
                        "unknown check group `{other}` (expected algebra, newton, sectional, all)"
                    )))
                }
            }
        }
        if !(c.algebra || c.newton || c.sectional) {
            return Err(GermError::InvalidInput("no check group selected".into()));
        }
        Ok(c)
    }
}

impl Default for Checks {
    fn default() -> Self {
        Checks::ALL
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub checks: Checks,
    pub plan: SectionPlan,
    /// Extra powers `k` for `f^k ∈ J_f`, besides `n − 1` and `n`.
    pub powers: Vec<u32>,
}

/// Exact rational as `"p/q"`, always with a denominator.
pub fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Computes the report for `f`. Input problems, smooth and non-isolated
/// germs become a status; only internal inconsistencies are errors.
pub fn analyze(name: &str, f: &Polynomial, opts: &AnalysisOptions) -> Result<InvariantReport> {
    match analyze_inner(name, f, opts) {
        Ok(r) => Ok(r),
        Err(e @ GermError::Internal(_)) => Err(e),
        Err(e) => Ok(InvariantReport::failed(name, f.n(), &e)),
    }
}

fn analyze_inner(name: &str, f: &Polynomial, opts: &AnalysisOptions) -> Result<InvariantReport> {
    let n = f.n();
    let alg = MilnorAlgebra::new(f)?;
    let mu = alg.mu();
    let tau = milnor::tjurina_number(f)?;
    let m = f.order().ok_or(GermError::ZeroPolynomial)?;
    let mut r = InvariantReport::empty(name, n);
    r.m = Some(m);
    r.mu = Some(mu);
    r.tau = Some(tau);
    r.ratio = Some(ratio_string(&Rational::new(mu.into(), tau.into())));

    if opts.checks.algebra {
        let mut powers: Vec<u32> = opts.powers.clone();
        powers.extend([n as u32 - 1, n as u32]);
        powers.retain(|&k| k > 0);
        powers.sort_unstable();
        powers.dedup();
        let f_pow: BTreeMap<u32, bool> = powers
            .into_iter()
            .map(|k| (k, milnor::power_membership(&alg, k)))
            .collect();
        r.bs_holds = Some(f_pow.get(&(n as u32)).copied().unwrap_or(true));
        r.f_pow_checks = Some(f_pow);
        r.saito_membership = Some(alg.contains(f));

        let op = milnor::mult_operator(&alg)?;
        let check = milnor::check_theorem(&op, tau)?;
        if !check.equality_case_consistent() {
            return Err(GermError::Internal(format!(
                "{name}: ker A = im A^(n-1) is {}, mu = n*tau is {}",
                check.kernel_is_top_power, check.ratio_is_n
            )));
        }
        r.operator_zero = Some(op.is_zero());
        r.filtration_dims = Some(check.profile.d.clone());
        r.theorem_ok = Some(check.theorem_ok());
        r.equality_case = Some(check.kernel_is_top_power);
    }

    if opts.checks.newton {
        let data = newton::newton_data(f)?;
        let mut summary = NewtonSummary {
            convenient: data.convenient,
            volumes: data
                .volumes
                .iter()
                .map(|(q, v)| (*q, ratio_string(v)))
                .collect(),
            nu: None,
            mu_ge_nu: None,
            mu_eq_nu: None,
            tau_ge_nu_over_n: None,
        };
        if data.convenient {
            let k = newton::kushnirenko_report(f, mu, tau)?;
            summary.nu = Some(k.nu);
            summary.mu_ge_nu = Some(k.mu_ge_nu);
            summary.mu_eq_nu = Some(k.mu_eq_nu);
            summary.tau_ge_nu_over_n = Some(k.tau_ge_nu_over_n);
        }
        r.newton = Some(summary);
    }

    if opts.checks.sectional {
        let profile = sectional::sectional_profile(f, &opts.plan)?;
        let bounds = sectional::multiplicity_bounds(f, mu, tau)?;
        r.sectional = Some(SectionalSummary {
            mu_i: profile.mu_i,
            log_convex: profile.log_convex,
            mu_ge_pow: bounds.mu_ge,
            tau_ge_pow_over_n: bounds.tau_ge,
            tau_gt_pow_over_n: bounds.tau_gt,
            semi_homogeneous: sectional::semi_homogeneous_check(f)?,
        });
    }
    Ok(r)
}

/// Report plus verdict for one corpus entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub report: InvariantReport,
    /// Failed checks and golden-value mismatches.
    pub failures: Vec<String>,
    /// Informational comparisons that do not affect the verdict.
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(2m−3)(m+1)(m−1)/3`, the comparison value for Fermat deformations.
pub fn fermat_deformation_reference(m: u32) -> Rational {
    let m = BigInt::from(m);
    let num = (BigInt::from(2) * &m - 3) * (&m + 1) * (&m - 1);
    Rational::new(num, BigInt::from(3))
}

/// Runs [`analyze`] on a corpus entry and compares against its golden
/// values and tags. A germ that is not `OK` fails unless the entry expects
/// that (an `expected` block is only meaningful for `OK` germs).
pub fn verify_spec(spec: &GermSpec, opts: &AnalysisOptions) -> Result<Verdict> {
    let f = spec.polynomial()?;
    let mut opts = opts.clone();
    opts.powers.extend(spec.required_powers());
    let report = analyze(&spec.name, &f, &opts)?;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    if report.status != Status::Ok {
        failures.push(format!(
            "status {}{}",
            report.status.as_str(),
            report
                .message
                .as_deref()
                .map(|m| format!(": {m}"))
                .unwrap_or_default()
        ));
        return Ok(Verdict {
            report,
            failures,
            notes,
        });
    }
    failures.extend(report.failures());
    if opts.checks.algebra {
        for k in spec.required_powers() {
            let holds = report
                .f_pow_checks
                .as_ref()
                .and_then(|c| c.get(&k))
                .copied();
            if holds != Some(true) {
                failures.push(format!("f^{k} in J_f"));
            }
        }
    }
    if opts.checks.sectional && f.is_homogeneous() && f.n() > 1 {
        if let Some(s) = &report.sectional {
            if !s.tau_gt_pow_over_n {
                failures.push("tau > (m-1)^n/n on a homogeneous germ".into());
            }
        }
    }
    if let Some(exp) = &spec.expected {
        let mut cmp = |what: &str, want: Option<i128>, got: Option<i128>| {
            if let Some(w) = want {
                if got != Some(w) {
                    let got = got.map_or("none".to_string(), |g| g.to_string());
                    failures.push(format!("expected {what} = {w}, got {got}"));
                }
            }
        };
        cmp(
            "mu",
            exp.mu.map(|v| v as i128),
            report.mu.map(|v| v as i128),
        );
        cmp(
            "tau",
            exp.tau.map(|v| v as i128),
            report.tau.map(|v| v as i128),
        );
        cmp("m", exp.m.map(i128::from), report.m.map(i128::from));
        if opts.checks.newton {
            cmp(
                "nu",
                exp.nu.map(i128::from),
                report.newton.as_ref().and_then(|n| n.nu).map(i128::from),
            );
        }
    }
    if spec.has_tag(TAG_FERMAT_DEFORMATION) {
        if let (Some(m), Some(tau)) = (report.m, report.tau) {
            let reference = fermat_deformation_reference(m);
            let holds = Rational::from_integer(tau.into()) >= reference;
            notes.push(format!(
                "tau = {tau} {} (2m-3)(m+1)(m-1)/3 = {}",
                if holds { ">=" } else { "<" },
                ratio_string(&reference)
            ));
        }
    }
    Ok(Verdict {
        report,
        failures,
        notes,
    })
}
