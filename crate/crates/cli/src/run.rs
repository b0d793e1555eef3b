//! Command implementations over resolved problems. Each returns the report
//! plus the exit outcome; input failures surface as `Err` and exit 3.

use serde_json::json;

use paraclose_core::closure::{
    briancon_skoda_check, regular_certificate, tight_closure_test, ClosureStatus, MonomialIdeal,
    MultiplierSpec, RegularOutcome,
};
use paraclose_core::forcing::{
    certificate_from_json, certificate_layout, certificate_to_json, paraclass_vanishes,
    paraclass_vanishes_in_base, parameters_look_zero_dimensional, verify_certificate,
    CertificateJson, ForcingPresentation, ParameterSystem, SearchOutcome,
};
use paraclose_core::groebner::{membership_with_certificate, Ideal, Membership};
use paraclose_core::poly::Polynomial;
use paraclose_core::{Error, Field, Result};

use crate::problem::Problem;
use crate::report::{Outcome, RunReport};

/// Bound overrides from the command line; `None` falls back to the problem
/// file, then to the defaults documented per command.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub k_max: Option<u32>,
    pub e_max: Option<u32>,
    pub degree_bound: Option<u32>,
    pub seed: Option<u64>,
}

impl Overrides {
    fn k_max(&self, problem: &Problem) -> u32 {
        self.k_max.or(problem.file.k_max).unwrap_or(6)
    }

    fn e_max(&self, problem: &Problem) -> u32 {
        self.e_max.or(problem.file.e_max).unwrap_or(2)
    }

    fn degree_bound(&self, problem: &Problem) -> u32 {
        self.degree_bound.or(problem.file.degree_bound).unwrap_or(8)
    }
}

fn base_report(command: &str, problem: &Problem, overrides: &Overrides) -> RunReport {
    let mut report = RunReport::new(command, problem.file.echo());
    if let Some(seed) = overrides.seed {
        report.notes.push(format!("seed: {seed}"));
    }
    report
}

fn forcing_presentation(problem: &Problem) -> Result<ForcingPresentation> {
    ForcingPresentation::new(
        problem.base.clone(),
        problem.require_generators()?.to_vec(),
        problem.require_h()?.clone(),
    )
}

fn parameter_system(problem: &Problem) -> Result<ParameterSystem> {
    ParameterSystem::new(problem.params.clone())
}

/// Membership of h in (generators) + (relations): the presented-ring test.
pub fn cmd_membership(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("membership", problem, overrides);
    let h = problem.require_h()?;
    let ideal = Ideal::new(problem.base.ring(), problem.require_generators()?.to_vec())?
        .join(problem.base.relations().generators())?;
    match membership_with_certificate(h, &ideal)? {
        Membership::Member(cert) => {
            if !cert.verify(h, &ideal) {
                return Err(Error::InvalidWitness(
                    "membership cofactors failed re-expansion".into(),
                ));
            }
            report.verdict = "member".into();
            report.detail = json!({
                "cofactors": cert.cofactors().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "cofactors_verified": true,
            });
        }
        Membership::NotMember { normal_form } => {
            report.verdict = "not a member".into();
            report.detail = json!({ "normal_form": normal_form.to_string() });
        }
    }
    Ok((report, Outcome::Verdict))
}

/// Paraclass-vanishing search over the forcing presentation.
pub fn cmd_paraclass(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("paraclass", problem, overrides);
    let a = forcing_presentation(problem)?;
    let params = parameter_system(problem)?;
    let k_max = overrides.k_max(problem);

    if !parameters_look_zero_dimensional(a.base(), &params)? {
        report
            .notes
            .push("parameter heuristic: leading terms do not witness zero-dimensionality; parameters taken on trust".into());
    }
    match paraclass_vanishes_in_base(a.base(), &params, k_max)? {
        Some(k) => report.notes.push(format!(
            "caution: the paraclass already vanishes in the base ring at k = {k}"
        )),
        None => report.notes.push(format!(
            "paraclass survives in the base ring for k <= {k_max}"
        )),
    }

    match paraclass_vanishes(&a, &params, k_max)? {
        SearchOutcome::Found(cert) => {
            if !verify_certificate(&a, &params, &cert)? {
                return Err(Error::InvalidWitness(
                    "search certificate failed re-expansion".into(),
                ));
            }
            report.verdict = format!("paraclass vanishes, k = {}", cert.k());
            report.certificate = Some(certificate_to_json(&a, &params, &cert));
            report.certificate_verified = Some(true);
            Ok((report, Outcome::Verdict))
        }
        SearchOutcome::NotFoundUpTo(k) => {
            report.verdict = format!("inconclusive up to k_max = {k}");
            Ok((report, Outcome::Inconclusive))
        }
    }
}

/// The constructive certificate over a polynomial ring.
pub fn cmd_regular_cert(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("regular-cert", problem, overrides);
    if !problem.base.relations().is_zero_ideal() {
        return Err(Error::InvalidInput(
            "regular-cert works over the polynomial ring; drop the `relations:` line".into(),
        ));
    }
    let h = problem.require_h()?;
    let ideal = Ideal::new(&problem.ring, problem.require_generators()?.to_vec())?;
    match regular_certificate(&ideal, h) {
        Ok(RegularOutcome::Member(cert)) => {
            report.verdict = "h is a member; the ideal is closed here".into();
            report.detail = json!({
                "cofactors": cert.cofactors().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            Ok((report, Outcome::Verdict))
        }
        Ok(RegularOutcome::NotMember(out)) => {
            // the construction always works with the coordinate parameters
            let params = ParameterSystem::new(
                (0..problem.ring.nvars())
                    .map(|i| Polynomial::variable(&problem.ring, i))
                    .collect(),
            )?;
            if !verify_certificate(&out.presentation, &params, &out.certificate)? {
                return Err(Error::InvalidWitness(
                    "separating certificate failed re-expansion".into(),
                ));
            }
            report.verdict = format!(
                "h is not a member; paraclass certificate at k = {}",
                out.certificate.k()
            );
            report.detail = json!({
                "witness_r": out.witness_r,
                "multiplier": out.multiplier.to_string(),
                "functional_support": out
                    .functional
                    .coefficients()
                    .iter()
                    .map(|(s, c)| json!({
                        "sigma": s,
                        "c": problem.ring.field().format(c),
                    }))
                    .collect::<Vec<_>>(),
                "localization_caveat": out.localization_caveat,
            });
            if out.localization_caveat {
                report.notes.push(
                    "a generator has a unit constant term: polynomial and local membership may differ".into(),
                );
            }
            report.certificate = Some(certificate_to_json(
                &out.presentation,
                &params,
                &out.certificate,
            ));
            report.certificate_verified = Some(true);
            Ok((report, Outcome::Verdict))
        }
        Err(Error::AscensionCapExceeded { cap }) => {
            report.verdict = format!(
                "inconclusive: membership in (I, X^m) persisted up to the cap m = {cap}; h likely lies in the localized ideal"
            );
            Ok((report, Outcome::Inconclusive))
        }
        Err(e) => Err(e),
    }
}

/// Frobenius-power sweep, with a given multiplier or a bounded search.
pub fn cmd_tight(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("tight", problem, overrides);
    let h = problem.require_h()?;
    let ideal = Ideal::new(&problem.ring, problem.require_generators()?.to_vec())?;
    let e_max = overrides.e_max(problem);
    let spec = match (&problem.u, problem.file.search_degree) {
        (Some(u), _) => MultiplierSpec::Given(u.clone()),
        (None, Some(d)) => MultiplierSpec::SearchUpToDegree(d),
        (None, None) => MultiplierSpec::Given(Polynomial::one(&problem.ring)),
    };
    let verdict = tight_closure_test(&problem.base, &ideal, h, &spec, e_max)?;
    report.notes.extend(verdict.notes.iter().cloned());
    let outcome = match &verdict.status {
        ClosureStatus::NotInClosure { e, normal_form } => {
            report.verdict = format!("not in the closure: stage e = {e} fails");
            report.detail = json!({
                "e": e,
                "normal_form": normal_form.to_string(),
            });
            Outcome::Verdict
        }
        ClosureStatus::InClosureUpToBound {
            e_max,
            multiplier,
            passed,
        } => {
            report.verdict = format!("in the closure up to e_max = {e_max} (no closure claim)");
            report.detail = json!({
                "multiplier": multiplier.to_string(),
                "passed": passed,
            });
            Outcome::Verdict
        }
        ClosureStatus::MemberWithCertificate(cert) => {
            report.verdict = "plain member".into();
            report.detail = json!({
                "cofactors": cert.cofactors().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            Outcome::Verdict
        }
        ClosureStatus::NoMultiplierFound {
            degree_bound,
            e_max,
        } => {
            report.verdict =
                format!("no multiplier of degree <= {degree_bound} passes all stages e <= {e_max}");
            Outcome::Inconclusive
        }
    };
    Ok((report, outcome))
}

/// Briancon-Skoda sweep over a monomial ideal.
pub fn cmd_bskoda(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("bskoda", problem, overrides);
    if !matches!(problem.field, Field::Fp(_)) {
        return Err(Error::InvalidInput(
            "bskoda needs a prime field, e.g. `field: Fp:5`".into(),
        ));
    }
    let gens = problem
        .require_generators()?
        .iter()
        .map(|g| {
            if g.terms().len() != 1 || !problem.ring.field().is_one(&g.terms()[0].0) {
                return Err(Error::InvalidInput(format!(
                    "bskoda generators must be plain monomials, got `{g}`"
                )));
            }
            Ok(g.terms()[0].1.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let ideal = MonomialIdeal::new(problem.ring.nvars(), gens)?;
    let n = problem.file.n.unwrap_or_else(|| ideal.generators().len());
    let w = problem.file.w.unwrap_or(0);
    let bs = briancon_skoda_check(
        &problem.ring,
        &ideal,
        n,
        w,
        overrides.degree_bound(problem),
        overrides.e_max(problem),
    )?;
    report.verdict = if bs.passed() {
        format!("pass: {} monomials checked, no violations", bs.checked)
    } else {
        format!(
            "FAIL: {} violations among {} checked",
            bs.violations.len(),
            bs.checked
        )
    };
    report.detail = serde_json::to_value(&bs).expect("report serializes");
    Ok((report, Outcome::Verdict))
}

/// Re-verify a certificate JSON against the presentation in the problem file.
pub fn cmd_verify(
    problem: &Problem,
    overrides: &Overrides,
    cert_text: &str,
) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("verify", problem, overrides);
    let json: CertificateJson = serde_json::from_str(cert_text)
        .map_err(|e| Error::InvalidInput(format!("certificate JSON: {e}")))?;
    let a = forcing_presentation(problem)?;
    let (params, cert) = certificate_from_json(&a, &json)?;
    let ok = verify_certificate(&a, &params, &cert)?;
    report.verdict = if ok {
        format!(
            "certificate valid: identity re-expands exactly at k = {}",
            cert.k()
        )
    } else {
        "certificate INVALID: identity does not re-expand".into()
    };
    if ok {
        report.detail = json!({
            "coefficient_layout": certificate_layout(&a, &cert)?,
        });
    }
    report.certificate = Some(json);
    report.certificate_verified = Some(ok);
    Ok((report, Outcome::Verdict))
}

/// Check an asserted identity lhs = rhs modulo the presented forcing ideal.
pub fn cmd_identity(problem: &Problem, overrides: &Overrides) -> Result<(RunReport, Outcome)> {
    let mut report = base_report("identity", problem, overrides);
    let a = forcing_presentation(problem)?;
    let lhs_src = problem
        .file
        .lhs
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("identity needs an `lhs:` line".into()))?;
    let rhs_src = problem
        .file
        .rhs
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("identity needs an `rhs:` line".into()))?;
    let lhs = Polynomial::parse(a.ext_ring(), &lhs_src.text)?;
    let rhs = Polynomial::parse(a.ext_ring(), &rhs_src.text)?;
    let difference = lhs.sub(&rhs);
    let ideal = a.defining_ideal();
    match membership_with_certificate(&difference, &ideal)? {
        Membership::Member(cert) => {
            if !cert.verify(&difference, &ideal) {
                return Err(Error::InvalidWitness(
                    "identity cofactors failed re-expansion".into(),
                ));
            }
            report.verdict = "identity holds modulo the presented ideal".into();
            report.detail = json!({
                "difference": difference.to_string(),
                "cofactors": cert.cofactors().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
        }
        Membership::NotMember { normal_form } => {
            report.verdict = "identity FAILS".into();
            report.detail = json!({ "normal_form": normal_form.to_string() });
        }
    }
    Ok((report, Outcome::Verdict))
}
