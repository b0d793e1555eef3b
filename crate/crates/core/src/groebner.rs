//! Buchberger's algorithm with cofactor tracking, normal forms, ideal
//! membership with re-expandable certificates, and colon ideals via the
//! elimination trick.
//!
//! Determinism contract: for a fixed generator list, order and pair-selection
//! rule (normal strategy, minimal lcm degree) two runs produce identical
//! bases and identical cofactor matrices. Reduced bases are monic, pairwise
//! tail-reduced and sorted by ascending leading monomial.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// A finitely generated ideal. Zero generators are dropped at construction;
/// the zero ideal is the empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: Arc::clone(ring),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: Arc::clone(ring),
            gens: Vec::new(),
        }
    }

    /// Parse `;`-separated generators in the given ring.
    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The ideal generated by the union of both generator lists.
    pub fn join(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }
}

/// Exact expression of a member as a polynomial combination of the ideal's
/// generators: h = sum of `cofactors[j] * gens[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipCertificate {
    cofactors: Vec<Polynomial>,
}

impl MembershipCertificate {
    pub fn cofactors(&self) -> &[Polynomial] {
        &self.cofactors
    }

    /// Re-expands the combination and compares with `h`. Pure arithmetic, no
    /// Groebner machinery.
    pub fn verify(&self, h: &Polynomial, ideal: &Ideal) -> bool {
        if self.cofactors.len() != ideal.gens.len() {
            return false;
        }
        let mut acc = Polynomial::zero(ideal.ring());
        for (c, g) in self.cofactors.iter().zip(&ideal.gens) {
            acc = acc.add(&c.mul(g));
        }
        match h.into_ring(ideal.ring()) {
            Ok(h) => acc == h,
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Membership {
    Member(MembershipCertificate),
    NotMember {
        /// Nonzero normal form, attached as evidence.
        normal_form: Polynomial,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// A reduced Groebner basis, optionally with the cofactor matrix expressing
/// every basis element as a combination of the original generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    cofactors: Option<Vec<Vec<Polynomial>>>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Cofactor rows, present when tracking was enabled. Row i satisfies
    /// `elements[i]` = sum of `row[j] * generators[j]`, exactly.
    pub fn cofactor_rows(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn contains(&self, h: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(h)?.is_zero())
    }

    /// Remainder of multivariate division by the basis: no term of the result
    /// is divisible by any leading monomial of the basis. Idempotent.
    pub fn normal_form(&self, h: &Polynomial) -> Result<Polynomial> {
        let h = h.into_ring(&self.ring)?;
        let (_, rem) = divide_with_quotients(&h, &self.elements);
        Ok(rem)
    }

    /// Checks Buchberger's criterion directly: every S-polynomial of basis
    /// pairs reduces to zero. Test oracle, not used by the algorithm.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                let (_, rem) = divide_with_quotients(&s, &self.elements);
                if !rem.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Re-expands every cofactor row. Test oracle.
    pub fn cofactors_re_expand(&self) -> bool {
        match &self.cofactors {
            None => false,
            Some(rows) => rows.iter().zip(&self.elements).all(|(row, g)| {
                let mut acc = Polynomial::zero(&self.ring);
                for (c, gen) in row.iter().zip(&self.generators) {
                    acc = acc.add(&c.mul(gen));
                }
                acc == *g
            }),
        }
    }
}

/// Multivariate division: h = sum of quotients[i] * divisors[i] + remainder,
/// where no remainder term is divisible by any divisor's leading monomial.
/// The divisor scan order is fixed, so the result is deterministic.
pub(crate) fn divide_with_quotients(
    h: &Polynomial,
    divisors: &[Polynomial],
) -> (Vec<Polynomial>, Polynomial) {
    let ring = h.ring();
    let field = *ring.field();
    let mut quotients = vec![Polynomial::zero(ring); divisors.len()];
    let mut remainder_terms: Vec<(Coeff, Monomial)> = Vec::new();
    let mut work = h.clone();
    'outer: while let Some((c, m)) = work.leading() {
        let (c, m) = (c.clone(), m.clone());
        for (i, d) in divisors.iter().enumerate() {
            let (dc, dm) = match d.leading() {
                Some(t) => t,
                None => continue,
            };
            if let Some(qm) = dm.divide_into(&m) {
                let qc = field.div(&c, dc).expect("nonzero leading coefficient");
                work = work.sub_scaled(&qc, &qm, d);
                quotients[i] = quotients[i].add(&Polynomial::term(ring, qc, qm));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder. Later terms are
        // strictly smaller, so the remainder stays sorted.
        remainder_terms.push((c, m));
        work = Polynomial::from_sorted_terms(ring, work.terms()[1..].to_vec());
    }
    let remainder = Polynomial::from_sorted_terms(ring, remainder_terms);
    (quotients, remainder)
}

/// Exact division by a single polynomial: `Some(q)` with h = q * f, or `None`
/// if f does not divide h.
pub(crate) fn divide_exact(h: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let (q, r) = divide_with_quotients(h, std::slice::from_ref(f));
    if r.is_zero() {
        Some(q.into_iter().next().expect("one divisor"))
    } else {
        None
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let field = ring.field();
    let (fc, fm) = f.leading().expect("nonzero");
    let (gc, gm) = g.leading().expect("nonzero");
    let lcm = fm.lcm(gm);
    let uf = fm.divide_into(&lcm).expect("lcm divisible");
    let ug = gm.divide_into(&lcm).expect("lcm divisible");
    let inv_fc = field.inv(fc).expect("nonzero leading coefficient");
    let inv_gc = field.inv(gc).expect("nonzero leading coefficient");
    f.mul_term(&inv_fc, &uf).sub(&g.mul_term(&inv_gc, &ug))
}

struct Engine {
    ring: Arc<PolyRing>,
    basis: Vec<Polynomial>,
    rows: Option<Vec<Vec<Polynomial>>>,
    n_gens: usize,
}

impl Engine {
    fn unit_row(&self, j: usize, scale: &Coeff) -> Vec<Polynomial> {
        let mut row = vec![Polynomial::zero(&self.ring); self.n_gens];
        row[j] = Polynomial::constant(&self.ring, scale.clone());
        row
    }

    fn scale_row(row: &[Polynomial], c: &Coeff) -> Vec<Polynomial> {
        row.iter().map(|p| p.mul_coeff(c)).collect()
    }

    /// row_a - c * X^m * row_b
    fn row_sub_scaled(
        a: &[Polynomial],
        c: &Coeff,
        m: &Monomial,
        b: &[Polynomial],
    ) -> Vec<Polynomial> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.sub(&y.mul_term(c, m)))
            .collect()
    }

    /// Fully reduce `h` (tracking `row` alongside when present) against the
    /// current basis, skipping index `skip` if given.
    fn reduce(
        &self,
        mut h: Polynomial,
        mut row: Option<Vec<Polynomial>>,
        skip: Option<usize>,
    ) -> (Polynomial, Option<Vec<Polynomial>>) {
        let field = *self.ring.field();
        let mut remainder_terms: Vec<(Coeff, Monomial)> = Vec::new();
        'outer: while let Some((c, m)) = h.leading() {
            let (c, m) = (c.clone(), m.clone());
            for (i, d) in self.basis.iter().enumerate() {
                if Some(i) == skip || d.is_zero() {
                    continue;
                }
                let (dc, dm) = d.leading().expect("nonzero basis element");
                if let Some(qm) = dm.divide_into(&m) {
                    let qc = field.div(&c, dc).expect("nonzero leading coefficient");
                    h = h.sub_scaled(&qc, &qm, d);
                    if let (Some(r), Some(rows)) = (row.as_mut(), self.rows.as_ref()) {
                        *r = Self::row_sub_scaled(r, &qc, &qm, &rows[i]);
                    }
                    continue 'outer;
                }
            }
            remainder_terms.push((c, m));
            h = Polynomial::from_sorted_terms(&self.ring, h.terms()[1..].to_vec());
        }
        (
            Polynomial::from_sorted_terms(&self.ring, remainder_terms),
            row,
        )
    }
}

/// Buchberger's algorithm; returns the reduced Groebner basis with a full
/// cofactor matrix.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    run_buchberger(ideal, order, true)
}

/// Same computation without cofactor tracking, for pure yes/no membership
/// sweeps where the matrix would be wasted memory.
pub fn buchberger_no_cofactors(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    run_buchberger(ideal, order, false)
}

fn run_buchberger(ideal: &Ideal, order: MonomialOrder, track: bool) -> GroebnerBasis {
    let comp_ring = ideal.ring().with_order(order);
    let generators: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.into_ring(&comp_ring).expect("compatible ring"))
        .collect();
    let field = *comp_ring.field();

    let mut engine = Engine {
        ring: Arc::clone(&comp_ring),
        basis: Vec::new(),
        rows: if track { Some(Vec::new()) } else { None },
        n_gens: generators.len(),
    };

    for (j, g) in generators.iter().enumerate() {
        let lc = g.leading().expect("zero generators filtered").0.clone();
        let inv = field.inv(&lc).expect("nonzero leading coefficient");
        engine.basis.push(g.mul_coeff(&inv));
        if track {
            let row = engine.unit_row(j, &inv);
            engine.rows.as_mut().unwrap().push(row);
        }
    }

    // Pending S-pairs keyed by the normal strategy: lcm degree, then the lcm
    // itself, then the index pair. BTreeSet keeps selection deterministic.
    let mut pending: BTreeSet<(u64, Vec<u32>, usize, usize)> = BTreeSet::new();
    let pair_key = |basis: &[Polynomial], i: usize, j: usize| {
        let lm_i = basis[i].leading().expect("nonzero").1;
        let lm_j = basis[j].leading().expect("nonzero").1;
        let lcm = lm_i.lcm(lm_j);
        (lcm.total_degree(), lcm.exponents().to_vec(), i, j)
    };
    for i in 0..engine.basis.len() {
        for j in i + 1..engine.basis.len() {
            pending.insert(pair_key(&engine.basis, i, j));
        }
    }

    let pair_pending = |pending: &BTreeSet<(u64, Vec<u32>, usize, usize)>,
                        basis: &[Polynomial],
                        a: usize,
                        b: usize| {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let key = {
            let lm_i = basis[i].leading().expect("nonzero").1;
            let lm_j = basis[j].leading().expect("nonzero").1;
            let lcm = lm_i.lcm(lm_j);
            (lcm.total_degree(), lcm.exponents().to_vec(), i, j)
        };
        pending.contains(&key)
    };

    let started = std::time::Instant::now();
    let mut last_report = started;
    let mut processed = 0u64;

    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        processed += 1;
        if processed % 512 == 0 && last_report.elapsed().as_secs() >= 5 {
            eprintln!(
                "buchberger: {}s elapsed, basis {}, pending pairs {}",
                started.elapsed().as_secs(),
                engine.basis.len(),
                pending.len()
            );
            last_report = std::time::Instant::now();
        }
        let (_, lcm_exps, i, j) = key;
        let lm_i = engine.basis[i].leading().expect("nonzero").1.clone();
        let lm_j = engine.basis[j].leading().expect("nonzero").1.clone();

        // Product criterion: coprime leading monomials reduce to zero.
        if lm_i.gcd_is_one(&lm_j) {
            continue;
        }
        // Chain criterion: some k with LM_k | lcm(i, j) whose pairs with i
        // and j have both already been handled.
        let lcm_m = Monomial::from_exponents(lcm_exps);
        let mut skip = false;
        for k in 0..engine.basis.len() {
            if k == i || k == j {
                continue;
            }
            let lm_k = engine.basis[k].leading().expect("nonzero").1;
            if lm_k.divides(&lcm_m)
                && !pair_pending(&pending, &engine.basis, i, k)
                && !pair_pending(&pending, &engine.basis, k, j)
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let u_i = lm_i.divide_into(&lcm_m).expect("divides lcm");
        let u_j = lm_j.divide_into(&lcm_m).expect("divides lcm");
        let one = field.one();
        let s = engine.basis[i]
            .mul_term(&one, &u_i)
            .sub(&engine.basis[j].mul_term(&one, &u_j));
        let s_row = engine.rows.as_ref().map(|rows| {
            Engine::row_sub_scaled(
                &rows[i]
                    .iter()
                    .map(|p| p.mul_term(&one, &u_i))
                    .collect::<Vec<_>>(),
                &one,
                &u_j,
                &rows[j],
            )
        });

        let (red, red_row) = engine.reduce(s, s_row, None);
        if red.is_zero() {
            continue;
        }
        let lc = red.leading().expect("nonzero").0.clone();
        let inv = field.inv(&lc).expect("nonzero leading coefficient");
        let new_idx = engine.basis.len();
        engine.basis.push(red.mul_coeff(&inv));
        if let (Some(rows), Some(row)) = (engine.rows.as_mut(), red_row) {
            rows.push(Engine::scale_row(&row, &inv));
        }
        for k in 0..new_idx {
            pending.insert(pair_key(&engine.basis, k, new_idx));
        }
    }

    finalize(engine, generators)
}

/// Minimalize, tail-reduce and sort the basis into the canonical reduced form.
fn finalize(engine: Engine, generators: Vec<Polynomial>) -> GroebnerBasis {
    let order = engine.ring.order();

    // Minimalize: sweep in ascending leading-monomial order, keeping an
    // element only if no kept leading monomial divides its own.
    let mut idx: Vec<usize> = (0..engine.basis.len()).collect();
    idx.sort_by(|&a, &b| {
        let la = engine.basis[a].leading().expect("nonzero").1;
        let lb = engine.basis[b].leading().expect("nonzero").1;
        order.cmp(la, lb).then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idx {
        let lm_i = engine.basis[i].leading().expect("nonzero").1;
        if !kept
            .iter()
            .any(|&j| engine.basis[j].leading().expect("nonzero").1.divides(lm_i))
        {
            kept.push(i);
        }
    }

    let mut reduced = Engine {
        ring: Arc::clone(&engine.ring),
        basis: kept.iter().map(|&i| engine.basis[i].clone()).collect(),
        rows: engine
            .rows
            .as_ref()
            .map(|rows| kept.iter().map(|&i| rows[i].clone()).collect()),
        n_gens: engine.n_gens,
    };

    // Tail reduction: fully reduce each element against the others. Leading
    // terms are pairwise non-divisible so only tails change.
    for i in 0..reduced.basis.len() {
        let row_i = reduced.rows.as_ref().map(|r| r[i].clone());
        let (red, red_row) = reduced.reduce(reduced.basis[i].clone(), row_i, Some(i));
        reduced.basis[i] = red;
        if let (Some(rows), Some(rr)) = (reduced.rows.as_mut(), red_row) {
            rows[i] = rr;
        }
    }

    GroebnerBasis {
        ring: reduced.ring,
        elements: reduced.basis,
        cofactors: reduced.rows,
        generators,
    }
}

/// Remainder of `h` on division by the reduced basis of `ideal` in the given
/// order.
pub fn normal_form(h: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Result<Polynomial> {
    if !h.ring().compatible(ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    let gb = buchberger_no_cofactors(ideal, order);
    gb.normal_form(h)
}

/// Decide h in I. A positive answer carries cofactors that re-expand to `h`
/// exactly; a negative answer carries the nonzero normal form as evidence.
pub fn membership_with_certificate(h: &Polynomial, ideal: &Ideal) -> Result<Membership> {
    membership_in_order(h, ideal, ideal.ring().order())
}

pub fn membership_in_order(
    h: &Polynomial,
    ideal: &Ideal,
    order: MonomialOrder,
) -> Result<Membership> {
    if !h.ring().compatible(ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    if ideal.is_zero_ideal() {
        let h_sorted = h.into_ring(&ideal.ring().with_order(order))?;
        return Ok(if h_sorted.is_zero() {
            Membership::Member(MembershipCertificate { cofactors: vec![] })
        } else {
            Membership::NotMember {
                normal_form: h_sorted,
            }
        });
    }
    let gb = buchberger(ideal, order);
    let h_comp = h.into_ring(gb.ring())?;
    let (quotients, rem) = divide_with_quotients(&h_comp, &gb.elements);
    if !rem.is_zero() {
        return Ok(Membership::NotMember { normal_form: rem });
    }
    let rows = gb.cofactor_rows().expect("tracking enabled");
    let n = ideal.generators().len();
    let mut cofactors = vec![Polynomial::zero(gb.ring()); n];
    for (q, row) in quotients.iter().zip(rows) {
        if q.is_zero() {
            continue;
        }
        for (acc, r) in cofactors.iter_mut().zip(row) {
            *acc = acc.add(&q.mul(r));
        }
    }
    // Map the cofactors back into the ideal's own ring order.
    let cofactors = cofactors
        .into_iter()
        .map(|c| c.into_ring(ideal.ring()).expect("compatible ring"))
        .collect();
    let cert = MembershipCertificate { cofactors };
    debug_assert!(
        cert.verify(h, ideal),
        "membership certificate must re-expand"
    );
    Ok(Membership::Member(cert))
}

/// The colon ideal (I : f) = { g : g*f in I }, via the single-auxiliary
/// variable construction: eliminate t from t*I + (1-t)*(f), then divide the
/// elimination ideal's generators by f. Output generators are the reduced
/// Groebner basis of the colon in the ring's own order.
pub fn colon_ideal(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorQuery);
    }
    if !f.ring().compatible(ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    if ideal.is_zero_ideal() {
        return Ok(Ideal::zero(ideal.ring()));
    }
    let ring = ideal.ring();

    let mut t_name = "t".to_string();
    while ring.var_index(&t_name).is_some() {
        t_name.push('_');
    }
    let mut vars = vec![t_name];
    vars.extend(ring.vars().iter().cloned());
    let ext = PolyRing::new(vars, *ring.field(), MonomialOrder::Elimination { block: 1 })?;

    let t = Polynomial::variable(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&t);
    let mut gens_ext = Vec::with_capacity(ideal.generators().len() + 1);
    for g in ideal.generators() {
        gens_ext.push(t.mul(&g.embed(&ext)?));
    }
    gens_ext.push(one_minus_t.mul(&f.embed(&ext)?));

    let gb = buchberger_no_cofactors(
        &Ideal::new(&ext, gens_ext)?,
        MonomialOrder::Elimination { block: 1 },
    );

    let mut quotients = Vec::new();
    for g in gb.elements() {
        if g.terms().iter().any(|(_, m)| m.exponents()[0] != 0) {
            continue;
        }
        let dropped = Polynomial::from_terms(
            ring,
            g.terms()
                .iter()
                .map(|(c, m)| {
                    (
                        c.clone(),
                        Monomial::from_exponents(m.exponents()[1..].to_vec()),
                    )
                })
                .collect(),
        );
        let q = divide_exact(&dropped, f).expect("elimination ideal elements are multiples of f");
        if !q.is_zero() {
            quotients.push(q);
        }
    }
    if quotients.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    // Canonicalize the generator list.
    let colon = Ideal::new(ring, quotients)?;
    let gb = buchberger_no_cofactors(&colon, ring.order());
    Ideal::new(ring, gb.elements().to_vec())
}
