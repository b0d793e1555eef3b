//! Sparse multivariate polynomials over Q or F_p.
//!
//! A [`PolyRing`] fixes an ordered variable list, the coefficient field and a
//! monomial order; a [`Polynomial`] stores its nonzero terms strictly
//! descending in that order, with no duplicate monomials. Every constructor
//! and operation maintains that canonical form. Values are immutable and all
//! operations are pure, so concurrent use is safe.

mod monomial;
mod parse;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};

/// Ambient polynomial ring context: variables, field, active monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidInput(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
        }
        for i in 0..vars.len() {
            if vars[i + 1..].contains(&vars[i]) {
                return Err(Error::InvalidInput(format!(
                    "duplicate variable `{}`",
                    vars[i]
                )));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block > vars.len() {
                return Err(Error::InvalidInput(format!(
                    "elimination block {block} out of range for {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// Same ring with `&str` variable names, for tests and presets.
    pub fn of(vars: &[&str], field: Field, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        PolyRing::new(vars.iter().map(|s| s.to_string()).collect(), field, order)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under a different order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<PolyRing> {
        if self.order == order {
            return Arc::clone(self);
        }
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field,
            order,
        })
    }

    /// Rings agree up to the monomial order (same variables, same field).
    pub fn compatible(&self, other: &PolyRing) -> bool {
        self.vars == other.vars && self.field == other.field
    }
}

/// A sparse polynomial: nonzero terms, strictly descending in the ring order.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Coeff, Monomial)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_ring(a: &Polynomial, b: &Polynomial) -> bool {
    Arc::ptr_eq(&a.ring, &b.ring) || *a.ring == *b.ring
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Polynomial {
        if ring.field.is_zero(&c) {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(c, Monomial::one(ring.nvars()))],
        }
    }

    pub fn variable(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(ring.field.one(), Monomial::variable(i, ring.nvars()))],
        }
    }

    pub fn term(ring: &Arc<PolyRing>, c: Coeff, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
        if ring.field.is_zero(&c) {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(c, m)],
        }
    }

    /// Canonicalize an arbitrary term list: merge duplicates, drop zeros, sort
    /// strictly descending in the ring order.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Coeff, Monomial)>) -> Polynomial {
        let field = ring.field;
        let mut merged: HashMap<Vec<u32>, Coeff> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            match merged.entry(m.exponents().to_vec()) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = field.add(e.get(), &c);
                    *e.get_mut() = sum;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Coeff, Monomial)> = merged
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e, c)| (c, Monomial::from_exponents(e)))
            .collect();
        let order = ring.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Construct from terms already strictly descending in the ring order
    /// with no zero coefficients. Callers guarantee the invariant.
    pub(crate) fn from_sorted_terms(
        ring: &Arc<PolyRing>,
        terms: Vec<(Coeff, Monomial)>,
    ) -> Polynomial {
        let p = Polynomial {
            ring: Arc::clone(ring),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Coeff, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Coeff, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(_, m)| m.total_degree()).max()
    }

    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(_, m)| m.is_one())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Coefficient of an exact exponent vector (zero if absent).
    pub fn coeff_at(&self, exps: &[u32]) -> Coeff {
        self.terms
            .iter()
            .find(|(_, m)| m.exponents() == exps)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Validates the canonical-form invariant. Used by property tests.
    pub fn is_canonical(&self) -> bool {
        let field = &self.ring.field;
        if self.terms.iter().any(|(c, _)| field.is_zero(c)) {
            return false;
        }
        let order = self.ring.order;
        self.terms
            .windows(2)
            .all(|w| order.cmp(&w[0].1, &w[1].1) == Ordering::Greater)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(self, other), "ring mismatch");
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&self.terms[i].0, &other.terms[j].0);
                    if !field.is_zero(&c) {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (field.neg(c), m.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// self - c * X^m * other; the reduction step of multivariate division.
    pub fn sub_scaled(&self, c: &Coeff, m: &Monomial, other: &Polynomial) -> Polynomial {
        self.sub(&other.mul_term(c, m))
    }

    pub fn mul_coeff(&self, c: &Coeff) -> Polynomial {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(a, m)| (field.mul(a, c), m.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(a, n)| (field.mul(a, c), n.mul(m)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(self, other), "ring mismatch");
        let field = self.ring.field;
        let mut acc: HashMap<Vec<u32>, Coeff> = HashMap::new();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                let prod = field.mul(a, b);
                let key = m.mul(n);
                match acc.entry(key.exponents().to_vec()) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = field.add(e.get(), &prod);
                        *e.get_mut() = sum;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let mut terms: Vec<(Coeff, Monomial)> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e, c)| (c, Monomial::from_exponents(e)))
            .collect();
        let order = self.ring.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Checked variant of [`Polynomial::add`] for API boundaries.
    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(self, other) {
            return Err(Error::RingMismatch);
        }
        Ok(self.add(other))
    }

    /// Checked variant of [`Polynomial::mul`] for API boundaries.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(self, other) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(other))
    }

    /// The q-th power for q = p^e, computed termwise: sum of c^q X^{q a}.
    /// Valid by the additivity of Frobenius in characteristic p; coefficients
    /// are fixed since c^p = c in F_p.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let p = match self.ring.field {
            Field::Fp(f) => f.modulus() as u64,
            Field::Q => return Err(Error::WrongCharacteristic),
        };
        if e == 0 {
            return Ok(self.clone());
        }
        let q = p
            .checked_pow(e)
            .and_then(|q| u32::try_from(q).ok())
            .ok_or(Error::ExponentOverflow)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let exps: Option<Vec<u32>> = m.exponents().iter().map(|a| a.checked_mul(q)).collect();
            let exps = exps.ok_or(Error::ExponentOverflow)?;
            terms.push((c.clone(), Monomial::from_exponents(exps)));
        }
        // q-th powers of distinct monomials stay distinct and keep their
        // relative order, so the term list is already canonical.
        Ok(Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    /// Ring-homomorphism image: variable i is replaced by `images[i]`.
    /// All images must live in `target`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        if self.ring.field != target.field {
            return Err(Error::RingMismatch);
        }
        for img in images {
            if !(Arc::ptr_eq(&img.ring, target) || *img.ring == **target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut acc = Polynomial::zero(target);
        for (c, m) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Map into a ring with more variables, matching variables by name.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch);
        }
        let positions: Option<Vec<usize>> =
            self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        let positions = positions.ok_or(Error::RingMismatch)?;
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut exps = vec![0u32; target.nvars()];
                for (i, &e) in m.exponents().iter().enumerate() {
                    exps[positions[i]] = e;
                }
                (c.clone(), Monomial::from_exponents(exps))
            })
            .collect();
        // Name-based embedding can permute variables, so re-sort.
        Ok(Polynomial::from_terms(target, terms))
    }

    /// The same polynomial re-sorted into `ring` (same variables and field,
    /// possibly different order).
    pub fn into_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if !self.ring.compatible(ring) {
            return Err(Error::RingMismatch);
        }
        if Arc::ptr_eq(&self.ring, ring) || self.ring.order == ring.order {
            return Ok(Polynomial {
                ring: Arc::clone(ring),
                terms: self.terms.clone(),
            });
        }
        let mut terms = self.terms.clone();
        let order = ring.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.1, &a.1));
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms,
        })
    }

    /// Leading coefficient scaled to 1. No-op on zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((c, _)) => {
                if self.ring.field.is_one(c) {
                    self.clone()
                } else {
                    let inv = self.ring.field.inv(c).expect("nonzero leading coefficient");
                    self.mul_coeff(&inv)
                }
            }
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(ring, text)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::write_polynomial(self, f)
    }
}
