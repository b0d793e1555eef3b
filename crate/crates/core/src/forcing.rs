//! Forcing-algebra presentations, paraclass-vanishing searches, certificate
//! verification, normalization and transport, and the dimension-2 affineness
//! criterion.
//!
//! A forcing presentation for data f_1, ..., f_n; h over R = `K[X]/J` is the
//! algebra K[X, T_1, ..., T_n] / (J + (f_1 T_1 + ... + f_n T_n + h)). The
//! paraclass of parameters x_1, ..., x_d vanishes in it exactly when
//! (x_1 ... x_d)^k lies in (x_1^{k+1}, ..., x_d^{k+1}) plus the defining
//! ideal for some k; a [`VanishingCertificate`] stores the cofactors of that
//! identity so it can be re-expanded without trusting the Groebner engine.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{
    buchberger_no_cofactors, divide_exact, membership_in_order, Ideal, Membership,
};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// A presented ring R = `K[X]/J`. `relations` may be the zero ideal (the
/// polynomial ring itself).
#[derive(Debug, Clone)]
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    relations: Ideal,
}

impl RingPresentation {
    pub fn new(ring: &Arc<PolyRing>, relations: Ideal) -> Result<RingPresentation> {
        if !relations.ring().compatible(ring) {
            return Err(Error::RingMismatch);
        }
        Ok(RingPresentation {
            ring: Arc::clone(ring),
            relations,
        })
    }

    /// The polynomial ring `K[X]` itself.
    pub fn free(ring: &Arc<PolyRing>) -> RingPresentation {
        RingPresentation {
            ring: Arc::clone(ring),
            relations: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Is `f` zero in the presented ring (i.e. in J)?
    pub fn is_zero_in_quotient(&self, f: &Polynomial) -> Result<bool> {
        if self.relations.is_zero_ideal() {
            return Ok(f.into_ring(&self.ring)?.is_zero());
        }
        let gb = buchberger_no_cofactors(&self.relations, self.ring.order());
        Ok(gb.normal_form(f)?.is_zero())
    }
}

/// Forcing presentation: base presentation, forcing data and the extended
/// ring with the T-variables appended.
///
/// `relations_ext` lists the lifted base relations first and the forcing
/// relation last; certificates index their relation cofactors in that order.
#[derive(Debug, Clone)]
pub struct ForcingPresentation {
    base: RingPresentation,
    data: Vec<Polynomial>,
    target: Polynomial,
    ext_ring: Arc<PolyRing>,
    relations_ext: Vec<Polynomial>,
}

impl ForcingPresentation {
    /// Assemble the presentation for data `f`; `h` over the base. The forcing
    /// relation is f_1 T_1 + ... + f_n T_n + h.
    pub fn new(
        base: RingPresentation,
        f: Vec<Polynomial>,
        h: Polynomial,
    ) -> Result<ForcingPresentation> {
        if f.is_empty() {
            return Err(Error::EmptyData);
        }
        for g in f.iter().chain(std::iter::once(&h)) {
            if !g.ring().compatible(base.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let n = f.len();
        let mut vars = base.ring().vars().to_vec();
        for i in 1..=n {
            let name = format!("T{i}");
            if base.ring().var_index(&name).is_some() {
                return Err(Error::InvalidInput(format!(
                    "base ring already uses the variable name `{name}`"
                )));
            }
            vars.push(name);
        }
        let ext_ring = PolyRing::new(vars, *base.ring().field(), MonomialOrder::GrevLex)?;

        let mut forcing = h.embed(&ext_ring)?;
        for (i, fi) in f.iter().enumerate() {
            let t = Polynomial::variable(&ext_ring, base.ring().nvars() + i);
            forcing = forcing.add(&fi.embed(&ext_ring)?.mul(&t));
        }
        let mut relations_ext: Vec<Polynomial> = base
            .relations()
            .generators()
            .iter()
            .map(|g| g.embed(&ext_ring))
            .collect::<Result<_>>()?;
        relations_ext.push(forcing);

        Ok(ForcingPresentation {
            base,
            data: f,
            target: h,
            ext_ring,
            relations_ext,
        })
    }

    pub fn base(&self) -> &RingPresentation {
        &self.base
    }

    pub fn data(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn target(&self) -> &Polynomial {
        &self.target
    }

    pub fn ext_ring(&self) -> &Arc<PolyRing> {
        &self.ext_ring
    }

    /// Lifted base relations followed by the forcing relation.
    pub fn relations_ext(&self) -> &[Polynomial] {
        &self.relations_ext
    }

    pub fn forcing_relation(&self) -> &Polynomial {
        self.relations_ext.last().expect("forcing relation present")
    }

    pub fn defining_ideal(&self) -> Ideal {
        Ideal::new(&self.ext_ring, self.relations_ext.clone()).expect("same ring")
    }
}

/// A system of parameters, taken on trust from the caller; see
/// [`parameters_look_zero_dimensional`] for the optional sanity check.
#[derive(Debug, Clone)]
pub struct ParameterSystem {
    params: Vec<Polynomial>,
}

impl ParameterSystem {
    pub fn new(params: Vec<Polynomial>) -> Result<ParameterSystem> {
        if params.is_empty() {
            return Err(Error::InvalidInput("parameter system is empty".into()));
        }
        Ok(ParameterSystem { params })
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[Polynomial] {
        &self.params
    }
}

/// Heuristic zero-dimensionality check: the leading-term ideal of
/// (x_1, ..., x_d) + J contains a pure power of every variable.
pub fn parameters_look_zero_dimensional(
    base: &RingPresentation,
    params: &ParameterSystem,
) -> Result<bool> {
    let ideal = base.relations().join(params.params())?;
    if ideal.is_zero_ideal() {
        return Ok(base.ring().nvars() == 0);
    }
    let gb = buchberger_no_cofactors(&ideal, MonomialOrder::GrevLex);
    let nvars = base.ring().nvars();
    let mut covered = vec![false; nvars];
    for g in gb.elements() {
        let lm = g.leading().expect("nonzero").1;
        let support: Vec<usize> = lm
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        if support.len() == 1 {
            covered[support[0]] = true;
        }
        if support.is_empty() {
            // unit ideal: zero-dimensional trivially
            return Ok(true);
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Bounded nonvanishing probe in the base ring: returns `Some(k)` if the
/// paraclass already vanishes in R itself at exponent k <= k_max (so the
/// vanishing question over A is vacuous), `None` if it survived every probe.
pub fn paraclass_vanishes_in_base(
    base: &RingPresentation,
    params: &ParameterSystem,
    k_max: u32,
) -> Result<Option<u32>> {
    let ring = base.ring();
    let mut product = Polynomial::one(ring);
    for p in params.params() {
        product = product.mul(&p.into_ring(ring)?);
    }
    for k in 0..=k_max {
        let mut gens: Vec<Polynomial> = params
            .params()
            .iter()
            .map(|p| Ok(p.into_ring(ring)?.pow(k + 1)))
            .collect::<Result<_>>()?;
        gens.extend(base.relations().generators().iter().cloned());
        let ideal = Ideal::new(ring, gens)?;
        let gb = buchberger_no_cofactors(&ideal, ring.order());
        if gb.contains(&product.pow(k))? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Witness that (x_1 ... x_d)^k = sum G_i x_i^{k+1} + sum H_j rel_j exactly
/// in the presentation ring K[X, T].
#[derive(Debug, Clone, PartialEq)]
pub struct VanishingCertificate {
    k: u32,
    cofactors_g: Vec<Polynomial>,
    cofactors_h: Vec<Polynomial>,
}

impl VanishingCertificate {
    pub fn new(
        k: u32,
        cofactors_g: Vec<Polynomial>,
        cofactors_h: Vec<Polynomial>,
    ) -> VanishingCertificate {
        VanishingCertificate {
            k,
            cofactors_g,
            cofactors_h,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn cofactors_g(&self) -> &[Polynomial] {
        &self.cofactors_g
    }

    pub fn cofactors_h(&self) -> &[Polynomial] {
        &self.cofactors_h
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(VanishingCertificate),
    /// Inconclusive: no vanishing up to the bound. Never a parasolidity proof.
    NotFoundUpTo(u32),
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&VanishingCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFoundUpTo(_) => None,
        }
    }
}

fn embedded_params(a: &ForcingPresentation, params: &ParameterSystem) -> Result<Vec<Polynomial>> {
    params
        .params()
        .iter()
        .map(|p| {
            if !p.ring().compatible(a.base().ring()) {
                return Err(Error::RingMismatch);
            }
            p.embed(a.ext_ring())
        })
        .collect()
}

/// Search k = 0..k_max for a vanishing certificate of the paraclass of
/// `params` in the forcing algebra. The returned certificate is the
/// minimal-k success. `NotFoundUpTo` is a semi-decision: it never proves
/// parasolidity.
pub fn paraclass_vanishes(
    a: &ForcingPresentation,
    params: &ParameterSystem,
    k_max: u32,
) -> Result<SearchOutcome> {
    let params_ext = embedded_params(a, params)?;
    let mut product = Polynomial::one(a.ext_ring());
    for p in &params_ext {
        product = product.mul(p);
    }
    for k in 0..=k_max {
        let mut gens: Vec<Polynomial> = params_ext.iter().map(|p| p.pow(k + 1)).collect();
        gens.extend(a.relations_ext().iter().cloned());
        let ideal = Ideal::new(a.ext_ring(), gens)?;
        let target = product.pow(k);

        // Cheap boolean pass first; the cofactor-tracking run only happens on
        // the single k that succeeds.
        let gb = buchberger_no_cofactors(&ideal, MonomialOrder::GrevLex);
        if !gb.contains(&target)? {
            continue;
        }
        match membership_in_order(&target, &ideal, MonomialOrder::GrevLex)? {
            Membership::Member(cert) => {
                let d = params.dim();
                let cofactors = cert.cofactors();
                let cert =
                    VanishingCertificate::new(k, cofactors[..d].to_vec(), cofactors[d..].to_vec());
                debug_assert!(verify_certificate(a, params, &cert)?);
                return Ok(SearchOutcome::Found(cert));
            }
            Membership::NotMember { .. } => unreachable!("normal form was zero"),
        }
    }
    Ok(SearchOutcome::NotFoundUpTo(k_max))
}

/// Exact re-expansion of the certificate identity in K[X, T]. Independent of
/// the Groebner machinery.
pub fn verify_certificate(
    a: &ForcingPresentation,
    params: &ParameterSystem,
    cert: &VanishingCertificate,
) -> Result<bool> {
    if cert.cofactors_g.len() != params.dim() {
        return Err(Error::ArityMismatch {
            expected: params.dim(),
            got: cert.cofactors_g.len(),
        });
    }
    if cert.cofactors_h.len() != a.relations_ext().len() {
        return Err(Error::ArityMismatch {
            expected: a.relations_ext().len(),
            got: cert.cofactors_h.len(),
        });
    }
    let params_ext = embedded_params(a, params)?;
    let mut lhs = Polynomial::one(a.ext_ring());
    for p in &params_ext {
        lhs = lhs.mul(p);
    }
    let mut diff = lhs.pow(cert.k);
    for (g, p) in cert.cofactors_g.iter().zip(&params_ext) {
        let g = g.into_ring(a.ext_ring())?;
        diff = diff.sub(&g.mul(&p.pow(cert.k + 1)));
    }
    for (h, rel) in cert.cofactors_h.iter().zip(a.relations_ext()) {
        let h = h.into_ring(a.ext_ring())?;
        diff = diff.sub(&h.mul(rel));
    }
    Ok(diff.is_zero())
}

/// An anisotropic witness: prod x_i^{r_i} = sum G_i x_i^{r_i + 1} + sum H_j
/// rel_j, as produced by the constructive regular-ring argument.
#[derive(Debug, Clone)]
pub struct AnisotropicWitness {
    pub r: Vec<u32>,
    pub cofactors_g: Vec<Polynomial>,
    pub cofactors_h: Vec<Polynomial>,
}

/// Convert an anisotropic witness into the uniform-k certificate by
/// multiplying the identity through by prod x_i^{k - r_i}, k = max r_i.
pub fn normalize_certificate(
    a: &ForcingPresentation,
    params: &ParameterSystem,
    witness: &AnisotropicWitness,
) -> Result<VanishingCertificate> {
    let d = params.dim();
    if witness.r.len() != d || witness.cofactors_g.len() != d {
        return Err(Error::ArityMismatch {
            expected: d,
            got: witness.r.len(),
        });
    }
    if witness.cofactors_h.len() != a.relations_ext().len() {
        return Err(Error::ArityMismatch {
            expected: a.relations_ext().len(),
            got: witness.cofactors_h.len(),
        });
    }
    let params_ext = embedded_params(a, params)?;

    // Validate the input identity by re-expansion.
    let mut diff = Polynomial::one(a.ext_ring());
    for (p, &ri) in params_ext.iter().zip(&witness.r) {
        diff = diff.mul(&p.pow(ri));
    }
    for (g, (p, &ri)) in witness
        .cofactors_g
        .iter()
        .zip(params_ext.iter().zip(&witness.r))
    {
        diff = diff.sub(&g.into_ring(a.ext_ring())?.mul(&p.pow(ri + 1)));
    }
    for (h, rel) in witness.cofactors_h.iter().zip(a.relations_ext()) {
        diff = diff.sub(&h.into_ring(a.ext_ring())?.mul(rel));
    }
    if !diff.is_zero() {
        return Err(Error::InvalidWitness(format!(
            "difference re-expands to {diff}"
        )));
    }

    let k = *witness.r.iter().max().expect("d >= 1");
    // multiplier for the whole identity
    let mut full = Polynomial::one(a.ext_ring());
    for (p, &ri) in params_ext.iter().zip(&witness.r) {
        full = full.mul(&p.pow(k - ri));
    }
    let mut cofactors_g = Vec::with_capacity(d);
    for (i, g) in witness.cofactors_g.iter().enumerate() {
        // p_i^{r_i+1} * prod_j p_j^{k - r_j} = (prod_{j != i} p_j^{k - r_j}) * p_i^{k+1}
        let mut m = g.into_ring(a.ext_ring())?;
        for (j, (p, &rj)) in params_ext.iter().zip(&witness.r).enumerate() {
            if j != i {
                m = m.mul(&p.pow(k - rj));
            }
        }
        cofactors_g.push(m);
    }
    let cofactors_h = witness
        .cofactors_h
        .iter()
        .map(|h| Ok(h.into_ring(a.ext_ring())?.mul(&full)))
        .collect::<Result<Vec<_>>>()?;
    let cert = VanishingCertificate::new(k, cofactors_g, cofactors_h);
    debug_assert!(verify_certificate(a, params, &cert)?);
    Ok(cert)
}

/// The named presentation maps of forcing algebras. Each kind fixes the
/// substitution of the source T-variables; X-variables map to themselves.
#[derive(Debug, Clone)]
pub enum TransportKind {
    /// Source data g_1..g_m, target data f_1..f_n with every f_i = sum_j
    /// `matrix[i][j] * g_j` (so (f) is contained in (g)); sends S_j to
    /// `sum_i matrix[i][j] T_i`.
    Enlarge { matrix: Vec<Vec<Polynomial>> },
    /// Source data (f, r*h), target (f, h); sends S_i to r*T_i.
    Scale { factor: Polynomial },
    /// Source data (f, h), target (f, a_1 f_1 + ... + a_n f_n + h); sends
    /// S_i to T_i + a_i.
    Translate { shifts: Vec<Polynomial> },
}

/// Transport a vanishing certificate along the presentation map named by
/// `kind`, from the presentation it was found in (`source`) to `target`.
/// The substituted source forcing relation must be a polynomial multiple of
/// the target's; the quotient multiplies the forcing cofactor.
pub fn transport_certificate(
    kind: &TransportKind,
    source: &ForcingPresentation,
    target: &ForcingPresentation,
    params: &ParameterSystem,
    cert: &VanishingCertificate,
) -> Result<VanishingCertificate> {
    if !source.base().ring().compatible(target.base().ring()) {
        return Err(Error::MapMismatch("base rings differ".into()));
    }
    if source.base().relations().generators() != target.base().relations().generators() {
        return Err(Error::MapMismatch("base relations differ".into()));
    }
    let nx = source.base().ring().nvars();
    let ns = source.data().len();
    let nt = target.data().len();

    // images of the source ext variables in the target ext ring
    let mut images: Vec<Polynomial> = Vec::with_capacity(nx + ns);
    for name in source.base().ring().vars() {
        let idx = target
            .ext_ring()
            .var_index(name)
            .ok_or_else(|| Error::MapMismatch(format!("variable `{name}` missing in target")))?;
        images.push(Polynomial::variable(target.ext_ring(), idx));
    }
    match kind {
        TransportKind::Enlarge { matrix } => {
            if matrix.len() != nt || matrix.iter().any(|row| row.len() != ns) {
                return Err(Error::ArityMismatch {
                    expected: nt * ns,
                    got: matrix.len() * matrix.first().map_or(0, |r| r.len()),
                });
            }
            for j in 0..ns {
                let mut img = Polynomial::zero(target.ext_ring());
                for (i, row) in matrix.iter().enumerate() {
                    let t = Polynomial::variable(target.ext_ring(), nx + i);
                    img = img.add(&row[j].embed(target.ext_ring())?.mul(&t));
                }
                images.push(img);
            }
        }
        TransportKind::Scale { factor } => {
            if ns != nt {
                return Err(Error::ArityMismatch {
                    expected: ns,
                    got: nt,
                });
            }
            let r = factor.embed(target.ext_ring())?;
            for i in 0..ns {
                let t = Polynomial::variable(target.ext_ring(), nx + i);
                images.push(r.mul(&t));
            }
        }
        TransportKind::Translate { shifts } => {
            if ns != nt || shifts.len() != ns {
                return Err(Error::ArityMismatch {
                    expected: ns,
                    got: shifts.len(),
                });
            }
            for (i, a) in shifts.iter().enumerate() {
                let t = Polynomial::variable(target.ext_ring(), nx + i);
                images.push(t.add(&a.embed(target.ext_ring())?));
            }
        }
    }

    let mapped_forcing = source
        .forcing_relation()
        .substitute(target.ext_ring(), &images)?;
    let quotient = divide_exact(&mapped_forcing, target.forcing_relation()).ok_or_else(|| {
        Error::MapMismatch(
            "substituted forcing relation is not a multiple of the target relation".into(),
        )
    })?;

    let cofactors_g = cert
        .cofactors_g()
        .iter()
        .map(|g| g.substitute(target.ext_ring(), &images))
        .collect::<Result<Vec<_>>>()?;
    let m = cert.cofactors_h().len();
    if m != source.relations_ext().len() {
        return Err(Error::ArityMismatch {
            expected: source.relations_ext().len(),
            got: m,
        });
    }
    let mut cofactors_h = Vec::with_capacity(target.relations_ext().len());
    for (j, h) in cert.cofactors_h().iter().enumerate() {
        let img = h.substitute(target.ext_ring(), &images)?;
        if j + 1 == m {
            cofactors_h.push(img.mul(&quotient));
        } else {
            cofactors_h.push(img);
        }
    }
    let out = VanishingCertificate::new(cert.k(), cofactors_g, cofactors_h);
    if !verify_certificate(target, params, &out)? {
        return Err(Error::MapMismatch(
            "transported certificate fails re-expansion against the target".into(),
        ));
    }
    Ok(out)
}

/// Data of a unit partition 1 = (a / x^{k-1}) y + (b / y^{k-1}) x on D(x, y),
/// extracted from a vanishing certificate at exponent k - 1. Clearing
/// denominators gives back exactly the stored certificate identity, which is
/// the attached verification.
#[derive(Debug, Clone)]
pub struct UnitPartition {
    pub k: u32,
    /// numerator over x^{k-1}
    pub p_num: Polynomial,
    /// numerator over y^{k-1}
    pub q_num: Polynomial,
    pub certificate: VanishingCertificate,
}

#[derive(Debug, Clone)]
pub enum AffineOutcome {
    Affine(UnitPartition),
    NotFoundUpTo(u32),
}

/// Dimension-2 affineness criterion: D(x, y) in Spec A is affine once the
/// paraclass of (x, y) vanishes; the certificate yields the unit partition.
pub fn affine_criterion_dim2(
    a: &ForcingPresentation,
    x: &Polynomial,
    y: &Polynomial,
    k_max: u32,
) -> Result<AffineOutcome> {
    let params = ParameterSystem::new(vec![x.clone(), y.clone()])?;
    match paraclass_vanishes(a, &params, k_max)? {
        SearchOutcome::NotFoundUpTo(k) => Ok(AffineOutcome::NotFoundUpTo(k)),
        SearchOutcome::Found(cert) => {
            // (xy)^{k_c} = G_0 x^{k_c+1} + G_1 y^{k_c+1} + relations; with
            // k = k_c + 1 this is x^{k-1} y^{k-1} = q_num x^k + p_num y^k.
            let partition = UnitPartition {
                k: cert.k() + 1,
                p_num: cert.cofactors_g()[1].clone(),
                q_num: cert.cofactors_g()[0].clone(),
                certificate: cert,
            };
            Ok(AffineOutcome::Affine(partition))
        }
    }
}

/// Frobenius propagation (char p): from a certificate at exponent k build
/// one at exponent (k+1)p - 1 by raising the identity to the p-th power and
/// padding with prod(x_i)^{p-1}.
pub fn frobenius_propagate(
    a: &ForcingPresentation,
    params: &ParameterSystem,
    cert: &VanishingCertificate,
) -> Result<VanishingCertificate> {
    let p = match a.ext_ring().field() {
        Field::Fp(f) => f.modulus(),
        Field::Q => return Err(Error::WrongCharacteristic),
    };
    let params_ext = embedded_params(a, params)?;
    let mut product = Polynomial::one(a.ext_ring());
    for q in &params_ext {
        product = product.mul(q);
    }
    let pad = product.pow(p - 1);
    let k_new = (cert.k() + 1)
        .checked_mul(p)
        .and_then(|v| v.checked_sub(1))
        .ok_or(Error::ExponentOverflow)?;

    let cofactors_g = cert
        .cofactors_g()
        .iter()
        .map(|g| Ok(g.frobenius_power(1)?.mul(&pad)))
        .collect::<Result<Vec<_>>>()?;
    let cofactors_h = cert
        .cofactors_h()
        .iter()
        .zip(a.relations_ext())
        .map(|(h, rel)| Ok(h.frobenius_power(1)?.mul(&rel.pow(p - 1)).mul(&pad)))
        .collect::<Result<Vec<_>>>()?;
    let out = VanishingCertificate::new(k_new, cofactors_g, cofactors_h);
    debug_assert!(verify_certificate(a, params, &out)?);
    Ok(out)
}

/// One row of the flattened certificate: for a fixed T-monomial, the
/// X-coefficient drawn from the forcing cofactor and the X-coefficients
/// drawn from each parameter cofactor.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LayoutRow {
    pub t_monomial: String,
    pub forcing_coefficient: String,
    pub parameter_coefficients: Vec<String>,
}

fn split_by_t_monomial(
    poly: &Polynomial,
    base_ring: &Arc<PolyRing>,
    nx: usize,
) -> Vec<(Vec<u32>, Polynomial)> {
    let mut groups: std::collections::BTreeMap<
        Vec<u32>,
        Vec<(crate::field::Coeff, crate::poly::Monomial)>,
    > = std::collections::BTreeMap::new();
    for (c, m) in poly.terms() {
        let t_part = m.exponents()[nx..].to_vec();
        let x_part = crate::poly::Monomial::from_exponents(m.exponents()[..nx].to_vec());
        groups.entry(t_part).or_default().push((c.clone(), x_part));
    }
    groups
        .into_iter()
        .map(|(t, terms)| (t, Polynomial::from_terms(base_ring, terms)))
        .collect()
}

/// Flatten a certificate into coefficient tables indexed by T-monomials:
/// each row lists the X-coefficient of the forcing cofactor and of every
/// parameter cofactor at that T-monomial. Base-relation cofactors are not
/// flattened. The union of rows rebuilds the cofactors exactly.
pub fn certificate_layout(
    a: &ForcingPresentation,
    cert: &VanishingCertificate,
) -> Result<Vec<LayoutRow>> {
    let nx = a.base().ring().nvars();
    let base_ring = a.base().ring();
    let forcing_cofactor = cert
        .cofactors_h()
        .last()
        .ok_or_else(|| Error::InvalidInput("certificate has no relation cofactors".into()))?;
    let forcing_groups = split_by_t_monomial(forcing_cofactor, base_ring, nx);
    let param_groups: Vec<Vec<(Vec<u32>, Polynomial)>> = cert
        .cofactors_g()
        .iter()
        .map(|g| split_by_t_monomial(g, base_ring, nx))
        .collect();

    let mut t_monomials: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    t_monomials.extend(forcing_groups.iter().map(|(t, _)| t.clone()));
    for groups in &param_groups {
        t_monomials.extend(groups.iter().map(|(t, _)| t.clone()));
    }

    let t_names: Vec<&String> = a.ext_ring().vars()[nx..].iter().collect();
    let format_t = |exps: &[u32]| -> String {
        let mut s = String::new();
        for (name, &e) in t_names.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    };
    let lookup = |groups: &[(Vec<u32>, Polynomial)], t: &[u32]| -> String {
        groups
            .iter()
            .find(|(g, _)| g == t)
            .map(|(_, p)| p.to_string())
            .unwrap_or_else(|| "0".to_string())
    };

    Ok(t_monomials
        .into_iter()
        .map(|t| LayoutRow {
            t_monomial: format_t(&t),
            forcing_coefficient: lookup(&forcing_groups, &t),
            parameter_coefficients: param_groups.iter().map(|g| lookup(g, &t)).collect(),
        })
        .collect())
}

/// Certificate JSON, with polynomials as strings that round-trip through the
/// polynomial parser.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateJson {
    pub k: u32,
    pub params: Vec<String>,
    #[serde(rename = "cofactors_G")]
    pub cofactors_g: Vec<String>,
    #[serde(rename = "cofactors_H")]
    pub cofactors_h: Vec<String>,
    pub field: String,
}

pub fn certificate_to_json(
    a: &ForcingPresentation,
    params: &ParameterSystem,
    cert: &VanishingCertificate,
) -> CertificateJson {
    CertificateJson {
        k: cert.k(),
        params: params.params().iter().map(|p| p.to_string()).collect(),
        cofactors_g: cert.cofactors_g().iter().map(|p| p.to_string()).collect(),
        cofactors_h: cert.cofactors_h().iter().map(|p| p.to_string()).collect(),
        field: a.ext_ring().field().tag(),
    }
}

pub fn certificate_from_json(
    a: &ForcingPresentation,
    json: &CertificateJson,
) -> Result<(ParameterSystem, VanishingCertificate)> {
    let field = Field::from_tag(&json.field)?;
    if field != *a.ext_ring().field() {
        return Err(Error::InvalidInput(format!(
            "certificate field {} does not match presentation field {}",
            json.field,
            a.ext_ring().field().tag()
        )));
    }
    let params = json
        .params
        .iter()
        .map(|s| Polynomial::parse(a.base().ring(), s))
        .collect::<Result<Vec<_>>>()?;
    let g = json
        .cofactors_g
        .iter()
        .map(|s| Polynomial::parse(a.ext_ring(), s))
        .collect::<Result<Vec<_>>>()?;
    let h = json
        .cofactors_h
        .iter()
        .map(|s| Polynomial::parse(a.ext_ring(), s))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        ParameterSystem::new(params)?,
        VanishingCertificate::new(json.k, g, h),
    ))
}
