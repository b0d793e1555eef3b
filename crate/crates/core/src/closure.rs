//! Closure operations: the constructive vanishing certificate over a
//! polynomial ring, characteristic-p tight-closure tests with Frobenius
//! powers, the order-element check, monomial integral closure via the Newton
//! polyhedron, Briancon-Skoda desk checks, and reduction mod p.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::forcing::{
    normalize_certificate, AnisotropicWitness, ForcingPresentation, ParameterSystem,
    RingPresentation, VanishingCertificate,
};
use crate::groebner::{
    buchberger_no_cofactors, membership_with_certificate, Ideal, Membership, MembershipCertificate,
};
use crate::newton::power_closure_member;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// The K-linear form of the separating construction: coefficients c_sigma on
/// the monomial box sigma <= r, applied to a polynomial by pairing against
/// its box coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingFunctional {
    r: Vec<u32>,
    field: Field,
    /// nonzero coefficients, keyed by exponent vector, lex-ascending
    coeffs: Vec<(Vec<u32>, Coeff)>,
}

impl SeparatingFunctional {
    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn coefficients(&self) -> &[(Vec<u32>, Coeff)] {
        &self.coeffs
    }

    pub fn coefficient(&self, sigma: &[u32]) -> Coeff {
        self.coeffs
            .iter()
            .find(|(s, _)| s == sigma)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// phi(f) = sum over sigma <= r of c_sigma * [X^sigma] f. Terms outside
    /// the box contribute nothing, which is exactly truncation.
    pub fn apply(&self, f: &Polynomial) -> Coeff {
        let mut acc = self.field.zero();
        for (sigma, c) in &self.coeffs {
            let fc = f.coeff_at(sigma);
            if !self.field.is_zero(&fc) {
                acc = self.field.add(&acc, &self.field.mul(c, &fc));
            }
        }
        acc
    }
}

/// Successful separation: everything needed to audit the construction.
#[derive(Debug, Clone)]
pub struct RegularCertificate {
    pub functional: SeparatingFunctional,
    /// u = sum c_{r - sigma} X^sigma, the multiplier of the forcing relation
    pub multiplier: Polynomial,
    pub witness_r: Vec<u32>,
    pub certificate: VanishingCertificate,
    pub presentation: ForcingPresentation,
    /// Set when some generator has a nonzero constant term, in which case
    /// polynomial membership may differ from membership in the localization
    /// at the origin.
    pub localization_caveat: bool,
}

#[derive(Debug, Clone)]
pub enum RegularOutcome {
    /// h was in the ideal to begin with; carries the membership certificate.
    Member(MembershipCertificate),
    NotMember(Box<RegularCertificate>),
}

fn box_points(r: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r.len()];
    loop {
        out.push(cur.clone());
        let mut i = r.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < r[i] {
                cur[i] += 1;
                for x in cur[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn truncate_to_box(f: &Polynomial, r: &[u32]) -> Polynomial {
    Polynomial::from_terms(
        f.ring(),
        f.terms()
            .iter()
            .filter(|(_, m)| m.exponents().iter().zip(r).all(|(e, ri)| e <= ri))
            .map(|(c, m)| (c.clone(), m.clone()))
            .collect(),
    )
}

/// Exact Gaussian elimination; pivot row is the first with a nonzero entry
/// in the current column, free unknowns are set to zero. `None` when the
/// system is inconsistent.
fn solve_linear(
    field: &Field,
    mut rows: Vec<(Vec<Coeff>, Coeff)>,
    nunknowns: usize,
) -> Option<Vec<Coeff>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; nunknowns];
    let mut next_row = 0usize;
    for col in 0..nunknowns {
        let pivot = (next_row..rows.len()).find(|&i| !field.is_zero(&rows[i].0[col]));
        let Some(pivot) = pivot else { continue };
        rows.swap(next_row, pivot);
        let inv = field.inv(&rows[next_row].0[col]).expect("nonzero pivot");
        for x in rows[next_row].0.iter_mut() {
            *x = field.mul(x, &inv);
        }
        rows[next_row].1 = field.mul(&rows[next_row].1, &inv);
        let (pivot_row, rest) = {
            let (a, b) = rows.split_at_mut(next_row + 1);
            (&a[next_row], b)
        };
        for row in rest.iter_mut() {
            if field.is_zero(&row.0[col]) {
                continue;
            }
            let factor = row.0[col].clone();
            for (x, p) in row.0.iter_mut().zip(&pivot_row.0) {
                let delta = field.mul(&factor, p);
                *x = field.sub(x, &delta);
            }
            let delta = field.mul(&factor, &pivot_row.1);
            row.1 = field.sub(&row.1, &delta);
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }
    // consistency of the eliminated remainder
    for (coeffs, b) in &rows[next_row..] {
        if coeffs.iter().all(|c| field.is_zero(c)) && !field.is_zero(b) {
            return None;
        }
    }
    // back substitution, free unknowns zero
    let mut solution = vec![field.zero(); nunknowns];
    for col in (0..nunknowns).rev() {
        let Some(row) = pivot_of_col[col] else {
            continue;
        };
        let mut value = rows[row].1.clone();
        for j in col + 1..nunknowns {
            if !field.is_zero(&rows[row].0[j]) {
                let delta = field.mul(&rows[row].0[j], &solution[j]);
                value = field.sub(&value, &delta);
            }
        }
        solution[col] = value;
    }
    Some(solution)
}

/// The constructive certificate of Groebner-decided non-membership over a
/// polynomial ring: either h lies in I (with cofactors), or we produce a
/// separating functional, a multiplier u with u * (forcing relation)
/// congruent to X^r modulo the box ideal, and the uniform vanishing
/// certificate obtained from that identity.
pub fn regular_certificate(ideal: &Ideal, h: &Polynomial) -> Result<RegularOutcome> {
    let ring = ideal.ring();
    if !h.ring().compatible(ring) {
        return Err(Error::RingMismatch);
    }
    if ring.nvars() == 0 {
        return Err(Error::InvalidInput("ring has no variables".into()));
    }
    if ideal.is_zero_ideal() {
        return Err(Error::EmptyData);
    }
    match membership_with_certificate(h, ideal)? {
        Membership::Member(cert) => return Ok(RegularOutcome::Member(cert)),
        Membership::NotMember { .. } => {}
    }
    let field = *ring.field();
    let d = ring.nvars();
    let h = h.into_ring(ring)?;

    let max_gen_degree = ideal
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0);
    let cap = 2 * (1 + max_gen_degree as u32 + h.total_degree().unwrap_or(0) as u32);

    let member_of_box = |r_plus_one: &[u32]| -> Result<bool> {
        let mut gens = ideal.generators().to_vec();
        for (i, &e) in r_plus_one.iter().enumerate() {
            gens.push(Polynomial::variable(ring, i).pow(e));
        }
        let gb = buchberger_no_cofactors(&Ideal::new(ring, gens)?, ring.order());
        gb.contains(&h)
    };

    // (a) ascend m until h leaves (I, X_1^m, ..., X_d^m)
    let mut m = None;
    for cand in 1..=cap {
        if !member_of_box(&vec![cand; d])? {
            m = Some(cand);
            break;
        }
    }
    let m = m.ok_or(Error::AscensionCapExceeded { cap })?;

    // (b) coordinate descent from (m-1, ..., m-1), lower indices first,
    // repeated to a fixpoint: h stays outside (I, X^{r+1}) throughout.
    let mut r = vec![m - 1; d];
    loop {
        let mut changed = false;
        for i in 0..d {
            if r[i] == 0 {
                continue;
            }
            let mut trial = r.clone();
            trial[i] -= 1;
            let r_plus_one: Vec<u32> = trial.iter().map(|e| e + 1).collect();
            if !member_of_box(&r_plus_one)? {
                r = trial;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // (c) truncate the data to the box
    let gens_trunc: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| truncate_to_box(g, &r))
        .collect();
    let h_trunc = truncate_to_box(&h, &r);

    // (d) the exact linear system for the c_sigma
    let sigmas = box_points(&r);
    let index_of = |exps: &[u32]| -> Option<usize> {
        // mixed-radix rank, consistent with box_points enumeration order
        let mut idx = 0usize;
        for (e, ri) in exps.iter().zip(&r) {
            if e > ri {
                return None;
            }
            idx = idx * (*ri as usize + 1) + *e as usize;
        }
        Some(idx)
    };
    let n_unknowns = sigmas.len();
    let mut rows: Vec<(Vec<Coeff>, Coeff)> = Vec::new();
    for g in &gens_trunc {
        if g.is_zero() {
            continue;
        }
        for sigma in &sigmas {
            // sum over mu <= r of c_mu * g_{mu - sigma} = 0
            let mut row = vec![field.zero(); n_unknowns];
            let mut nonzero = false;
            for (c, mono) in g.terms() {
                let mu: Vec<u32> = mono
                    .exponents()
                    .iter()
                    .zip(sigma)
                    .map(|(e, s)| e + s)
                    .collect();
                if let Some(idx) = index_of(&mu) {
                    row[idx] = field.add(&row[idx], c);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push((row, field.zero()));
            }
        }
    }
    for sigma in &sigmas {
        let mut row = vec![field.zero(); n_unknowns];
        for (c, mono) in h_trunc.terms() {
            let mu: Vec<u32> = mono
                .exponents()
                .iter()
                .zip(sigma)
                .map(|(e, s)| e + s)
                .collect();
            if let Some(idx) = index_of(&mu) {
                row[idx] = field.add(&row[idx], c);
            }
        }
        let is_origin = sigma.iter().all(|&s| s == 0);
        let rhs = if is_origin { field.one() } else { field.zero() };
        rows.push((row, rhs));
    }
    let solution = solve_linear(&field, rows, n_unknowns).ok_or(Error::LinearSystemInconsistent)?;

    let coeffs: Vec<(Vec<u32>, Coeff)> = sigmas
        .iter()
        .enumerate()
        .filter(|(i, _)| !field.is_zero(&solution[*i]))
        .map(|(i, s)| (s.clone(), solution[i].clone()))
        .collect();
    let functional = SeparatingFunctional {
        r: r.clone(),
        field,
        coeffs,
    };
    debug_assert!(field.is_one(&functional.apply(&h_trunc)));

    // (e) multiplier u = sum c_{r - sigma} X^sigma and the witness identity
    let mut u_terms = Vec::new();
    for sigma in &sigmas {
        let reflected: Vec<u32> = r.iter().zip(sigma).map(|(ri, s)| ri - s).collect();
        let c = solution[index_of(&reflected).expect("inside box")].clone();
        if !field.is_zero(&c) {
            u_terms.push((c, Monomial::from_exponents(sigma.clone())));
        }
    }
    let multiplier = Polynomial::from_terms(ring, u_terms);

    let presentation = ForcingPresentation::new(
        RingPresentation::free(ring),
        ideal.generators().to_vec(),
        h.clone(),
    )?;
    let ext = presentation.ext_ring();
    let u_ext = multiplier.embed(ext)?;
    let expanded = u_ext.mul(presentation.forcing_relation());
    let x_to_r = Polynomial::term(
        ext,
        field.one(),
        Monomial::from_exponents(
            r.iter()
                .cloned()
                .chain(std::iter::repeat_n(0, presentation.data().len()))
                .collect(),
        ),
    );
    // expanded = X^r + R with every term of R divisible by some X_i^{r_i + 1};
    // partition R by the first such coordinate.
    let rest = expanded.sub(&x_to_r);
    let mut cofactors_g = vec![Polynomial::zero(ext); d];
    for (c, mono) in rest.terms() {
        let exps = mono.exponents();
        let i = (0..d)
            .find(|&i| exps[i] > r[i])
            .expect("remainder terms lie in the box ideal");
        let mut quot = exps.to_vec();
        quot[i] -= r[i] + 1;
        let piece = Polynomial::term(ext, field.neg(c), Monomial::from_exponents(quot));
        cofactors_g[i] = cofactors_g[i].add(&piece);
    }
    let witness = AnisotropicWitness {
        r: r.clone(),
        cofactors_g,
        cofactors_h: vec![u_ext],
    };
    let params = ParameterSystem::new((0..d).map(|i| Polynomial::variable(ring, i)).collect())?;
    let certificate = normalize_certificate(&presentation, &params, &witness)?;

    let localization_caveat = ideal
        .generators()
        .iter()
        .any(|g| !field.is_zero(&g.constant_coeff()));

    Ok(RegularOutcome::NotMember(Box::new(RegularCertificate {
        functional,
        multiplier,
        witness_r: r,
        certificate,
        presentation,
        localization_caveat,
    })))
}

/// Multiplier input for the tight-closure test: user-asserted, or searched
/// among monomials and two-monomial sums up to a degree bound.
#[derive(Debug, Clone)]
pub enum MultiplierSpec {
    Given(Polynomial),
    SearchUpToDegree(u32),
}

#[derive(Debug, Clone)]
pub enum ClosureStatus {
    /// u * h^{p^e} is outside I^{[p^e]} + J; a refutation when u is a genuine
    /// test element. The reported e prefers the smallest failing Frobenius
    /// power e >= 1; e = 0 is reported only when it is the sole failure.
    NotInClosure { e: u32, normal_form: Polynomial },
    /// All stages e = 0..e_max passed with the given multiplier. Never a
    /// claim of closure membership.
    InClosureUpToBound {
        e_max: u32,
        multiplier: Polynomial,
        passed: Vec<u32>,
    },
    /// Plain membership already holds; carries the cofactor certificate.
    MemberWithCertificate(MembershipCertificate),
    /// The bounded multiplier search was exhausted.
    NoMultiplierFound { degree_bound: u32, e_max: u32 },
}

#[derive(Debug, Clone)]
pub struct ClosureVerdict {
    pub status: ClosureStatus,
    pub notes: Vec<String>,
}

struct FrobeniusStages {
    /// reduced bases of I^{[p^e]} + J for e = 0..e_max
    bases: Vec<crate::groebner::GroebnerBasis>,
    powered_h: Vec<Polynomial>,
}

fn frobenius_stages(
    base: &RingPresentation,
    ideal: &Ideal,
    h: &Polynomial,
    e_max: u32,
) -> Result<FrobeniusStages> {
    let ring = base.ring();
    let mut bases = Vec::with_capacity(e_max as usize + 1);
    let mut powered_h = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        let mut gens: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|f| f.frobenius_power(e))
            .collect::<Result<_>>()?;
        gens.extend(base.relations().generators().iter().cloned());
        let stage = Ideal::new(ring, gens)?;
        bases.push(buchberger_no_cofactors(&stage, ring.order()));
        powered_h.push(h.frobenius_power(e)?);
    }
    Ok(FrobeniusStages { bases, powered_h })
}

struct SweepResult {
    passed: Vec<u32>,
    /// The witness stage: smallest failing e >= 1 when one exists, else 0.
    failure: Option<(u32, Polynomial)>,
}

fn sweep(stages: &FrobeniusStages, u: &Polynomial) -> Result<SweepResult> {
    let mut passed = Vec::new();
    let mut failure: Option<(u32, Polynomial)> = None;
    for (e, (gb, hq)) in stages.bases.iter().zip(&stages.powered_h).enumerate() {
        let nf = gb.normal_form(&u.mul(hq))?;
        if nf.is_zero() {
            passed.push(e as u32);
        } else if failure.is_none() || (e >= 1 && failure.as_ref().is_some_and(|(fe, _)| *fe == 0))
        {
            failure = Some((e as u32, nf));
        }
    }
    Ok(SweepResult { passed, failure })
}

/// Frobenius-power membership sweep: test u * h^{p^e} in I^{[p^e]} + J for
/// e = 0..e_max.
pub fn tight_closure_test(
    base: &RingPresentation,
    ideal: &Ideal,
    h: &Polynomial,
    multiplier: &MultiplierSpec,
    e_max: u32,
) -> Result<ClosureVerdict> {
    let ring = base.ring();
    if ring.field().characteristic() == 0 {
        return Err(Error::WrongCharacteristic);
    }
    if !h.ring().compatible(ring) || !ideal.ring().compatible(ring) {
        return Err(Error::RingMismatch);
    }
    let h = h.into_ring(ring)?;
    let stages = frobenius_stages(base, ideal, &h, e_max)?;
    let mut notes = Vec::new();

    match multiplier {
        MultiplierSpec::Given(u) => {
            let u = u.into_ring(ring)?;
            if base.is_zero_in_quotient(&u)? {
                return Err(Error::ZeroMultiplier);
            }
            let SweepResult { passed, failure } = sweep(&stages, &u)?;
            match failure {
                Some((e, normal_form)) => {
                    notes.push(format!(
                        "stages passed: {passed:?}; refutation is valid when the multiplier is a genuine test element"
                    ));
                    Ok(ClosureVerdict {
                        status: ClosureStatus::NotInClosure { e, normal_form },
                        notes,
                    })
                }
                None => {
                    verify_stage_memberships(base, ideal, &h, &u, e_max, &mut notes)?;
                    Ok(ClosureVerdict {
                        status: ClosureStatus::InClosureUpToBound {
                            e_max,
                            multiplier: u,
                            passed,
                        },
                        notes,
                    })
                }
            }
        }
        MultiplierSpec::SearchUpToDegree(bound) => {
            if let Membership::Member(cert) =
                membership_with_certificate(&h, &ideal.join(base.relations().generators())?)?
            {
                notes.push("plain membership holds; no multiplier needed".into());
                return Ok(ClosureVerdict {
                    status: ClosureStatus::MemberWithCertificate(cert),
                    notes,
                });
            }
            for u in multiplier_candidates(ring, *bound) {
                if base.is_zero_in_quotient(&u)? {
                    continue;
                }
                let SweepResult { passed, failure } = sweep(&stages, &u)?;
                if failure.is_none() {
                    notes.push(format!("multiplier found by search up to degree {bound}"));
                    verify_stage_memberships(base, ideal, &h, &u, e_max, &mut notes)?;
                    return Ok(ClosureVerdict {
                        status: ClosureStatus::InClosureUpToBound {
                            e_max,
                            multiplier: u,
                            passed,
                        },
                        notes,
                    });
                }
            }
            Ok(ClosureVerdict {
                status: ClosureStatus::NoMultiplierFound {
                    degree_bound: *bound,
                    e_max,
                },
                notes,
            })
        }
    }
}

/// Re-derive each stage membership with cofactors and check the re-expansion,
/// so a positive sweep carries verified memberships.
fn verify_stage_memberships(
    base: &RingPresentation,
    ideal: &Ideal,
    h: &Polynomial,
    u: &Polynomial,
    e_max: u32,
    notes: &mut Vec<String>,
) -> Result<()> {
    for e in 0..=e_max {
        let mut gens: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|f| f.frobenius_power(e))
            .collect::<Result<_>>()?;
        gens.extend(base.relations().generators().iter().cloned());
        let stage = Ideal::new(base.ring(), gens)?;
        let target = u.mul(&h.frobenius_power(e)?);
        match membership_with_certificate(&target, &stage)? {
            Membership::Member(cert) => {
                if !cert.verify(&target, &stage) {
                    return Err(Error::InvalidWitness(format!(
                        "stage e = {e} certificate failed re-expansion"
                    )));
                }
            }
            Membership::NotMember { .. } => {
                return Err(Error::InvalidWitness(format!(
                    "stage e = {e} flipped between runs"
                )))
            }
        }
    }
    notes.push(format!("memberships re-verified for e = 0..={e_max}"));
    Ok(())
}

/// Exponent vectors of total degree exactly `degree`, lexicographically
/// ascending.
fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// Monomials of total degree <= bound (ascending by degree, then lex on
/// exponents), followed by sums of two distinct monomials with coefficient 1.
fn multiplier_candidates(ring: &Arc<PolyRing>, bound: u32) -> Vec<Polynomial> {
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for degree in 0..=bound {
        monomials.extend(exponents_of_degree(ring.nvars(), degree));
    }
    let single: Vec<Polynomial> = monomials
        .iter()
        .map(|e| {
            Polynomial::term(
                ring,
                ring.field().one(),
                Monomial::from_exponents(e.clone()),
            )
        })
        .collect();
    let mut out = single.clone();
    for i in 0..single.len() {
        for j in i + 1..single.len() {
            out.push(single[i].add(&single[j]));
        }
    }
    out
}

/// Necessary condition for u to be an order element of the forcing algebra:
/// u * h must lie in (f_1, ..., f_n) + J in the base presentation.
pub fn order_element_check(a: &ForcingPresentation, u: &Polynomial) -> Result<bool> {
    let ring = a.base().ring();
    let u = u.into_ring(ring)?;
    let mut gens = a.data().to_vec();
    gens.extend(a.base().relations().generators().iter().cloned());
    let ideal = Ideal::new(ring, gens)?;
    let gb = buchberger_no_cofactors(&ideal, ring.order());
    gb.contains(&u.mul(a.target()))
}

/// A monomial ideal stored as the antichain of its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: g.nvars(),
                });
            }
        }
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in &gens {
            if gens.iter().any(|o| o != g && o.divides(g) && !g.divides(o)) {
                continue;
            }
            if !minimal.contains(g) {
                minimal.push(g.clone());
            }
        }
        minimal.sort_by(|a, b| a.exponents().cmp(b.exponents()));
        Ok(MonomialIdeal {
            nvars,
            gens: minimal,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Plain membership: divisibility by some generator.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// The s-th power: all s-fold products of generators, minimalized.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        if s == 0 {
            return MonomialIdeal {
                nvars: self.nvars,
                gens: vec![Monomial::one(self.nvars)],
            };
        }
        let mut products = vec![Monomial::one(self.nvars)];
        for _ in 0..s {
            let mut next = Vec::new();
            for p in &products {
                for g in &self.gens {
                    next.push(p.mul(g));
                }
            }
            products = next;
        }
        MonomialIdeal::new(self.nvars, products).expect("arity preserved")
    }

    pub fn to_polynomials(&self, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
        if ring.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: ring.nvars(),
            });
        }
        Ok(self
            .gens
            .iter()
            .map(|m| Polynomial::term(ring, ring.field().one(), m.clone()))
            .collect())
    }
}

/// Is X^a integral over I^s? For monomial ideals this is exactly membership
/// of `a` in s * Newton(I): a dominates a convex combination, with weights
/// summing to s, of the generator exponents. Decided by exact rational
/// feasibility.
pub fn monomial_integral_closure_member(
    ideal: &MonomialIdeal,
    a: &Monomial,
    s: u32,
) -> Result<bool> {
    if ideal.is_empty() {
        return Err(Error::InvalidInput("empty monomial ideal".into()));
    }
    if s == 0 {
        return Err(Error::InvalidInput("power s must be positive".into()));
    }
    if a.nvars() != ideal.nvars() {
        return Err(Error::ArityMismatch {
            expected: ideal.nvars(),
            got: a.nvars(),
        });
    }
    let gens: Vec<Vec<u32>> = ideal.gens.iter().map(|g| g.exponents().to_vec()).collect();
    Ok(power_closure_member(&gens, a.exponents(), s))
}

/// Report of a Briancon-Skoda sweep, serialized with the exact schema
/// {"ideal": [...], "n": ..., "w": ..., "p": ..., "violations": [], "checked": ...}.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BrianconSkodaReport {
    pub ideal: Vec<String>,
    pub n: usize,
    pub w: u32,
    pub p: u32,
    pub violations: Vec<String>,
    pub checked: usize,
}

impl BrianconSkodaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerate every monomial of total degree <= degree_bound that lies in the
/// integral closure of I^{n + w} and test it for membership in the tight
/// closure of I^{w+1} over F_p (ambient ring regular, so the e-sweep with
/// u = 1 is plain membership at every stage). Violations are collected, not
/// fatal. `ring` supplies the prime field and the variable names used in the
/// report.
pub fn briancon_skoda_check(
    ring: &Arc<PolyRing>,
    ideal: &MonomialIdeal,
    n_gens: usize,
    w: u32,
    degree_bound: u32,
    e_max: u32,
) -> Result<BrianconSkodaReport> {
    if ideal.is_empty() {
        return Err(Error::InvalidInput("empty monomial ideal".into()));
    }
    let field = *ring.field();
    let Field::Fp(prime) = field else {
        return Err(Error::WrongCharacteristic);
    };
    if ring.nvars() != ideal.nvars() {
        return Err(Error::ArityMismatch {
            expected: ideal.nvars(),
            got: ring.nvars(),
        });
    }
    let base = RingPresentation::free(ring);
    let target_ideal = Ideal::new(ring, ideal.power(w + 1).to_polynomials(ring)?)?;
    let u = Polynomial::one(ring);

    let mut checked = 0usize;
    let mut violations = Vec::new();
    for degree in 0..=degree_bound {
        for exps in exponents_of_degree(ideal.nvars(), degree) {
            let candidate = Monomial::from_exponents(exps);
            if !monomial_integral_closure_member(ideal, &candidate, n_gens as u32 + w)? {
                continue;
            }
            checked += 1;
            let h = Polynomial::term(ring, field.one(), candidate);
            let verdict = tight_closure_test(
                &base,
                &target_ideal,
                &h,
                &MultiplierSpec::Given(u.clone()),
                e_max,
            )?;
            if matches!(verdict.status, ClosureStatus::NotInClosure { .. }) {
                violations.push(h.to_string());
            }
        }
    }
    Ok(BrianconSkodaReport {
        ideal: ideal
            .gens
            .iter()
            .map(|m| Polynomial::term(ring, field.one(), m.clone()).to_string())
            .collect(),
        n: n_gens,
        w,
        p: prime.modulus(),
        violations,
        checked,
    })
}

/// Coefficientwise reduction of an ideal and an element from Q to F_p.
/// Denominators are inverted mod p; `BadPrime` if p divides one.
pub fn reduce_mod_p(ideal: &Ideal, h: &Polynomial, p: u32) -> Result<(Ideal, Polynomial)> {
    let ring = ideal.ring();
    if *ring.field() != Field::Q {
        return Err(Error::WrongCharacteristic);
    }
    if !h.ring().compatible(ring) {
        return Err(Error::RingMismatch);
    }
    let field = Field::fp(p)?;
    let target = PolyRing::new(ring.vars().to_vec(), field, ring.order())?;
    let map = |f: &Polynomial| -> Result<Polynomial> {
        let terms = f
            .terms()
            .iter()
            .map(|(c, m)| {
                let Coeff::Rat(r) = c else {
                    unreachable!("Q coefficients")
                };
                Ok((field.from_rational(r)?, m.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(&target, terms))
    };
    let gens = ideal
        .generators()
        .iter()
        .map(&map)
        .collect::<Result<Vec<_>>>()?;
    Ok((Ideal::new(&target, gens)?, map(h)?))
}
