//! Sparse multivariate polynomials over a [`ScalarField`].
//!
//! Monomials are ordered graded-lexicographically with respect to the
//! declared variable order; terms are stored in that order with no zero
//! coefficients, so two polynomials over the same ring are equal iff their
//! term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::field::{Scalar, ScalarField, ZETA};
use crate::error::{Error, Result};

/// Reserved name of the formal parameter used by the lambda constructions.
pub const LAMBDA: &str = "lambda";

struct RingData {
    field: ScalarField,
    vars: Vec<String>,
}

/// A polynomial ring `field[vars]`: the variable context shared by
/// polynomials that may be combined.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: ScalarField, vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) || v == ZETA {
                return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData { field, vars })))
    }

    pub fn field(&self) -> &ScalarField {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        Ok(self.var_at(self.var_index(name)?))
    }

    pub fn var_at(&self, idx: usize) -> Poly {
        let mut m = Monomial::one(self.nvars());
        m.0[idx] = 1;
        Poly::monomial(self, m, Scalar::one(self.field()))
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(Scalar::one(self.field()))
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(Scalar::from_int(self.field(), n))
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::monomial(self, Monomial::one(self.nvars()), c)
    }

    /// Parse a polynomial expression over this ring.
    pub fn parse(&self, src: &str) -> Result<Poly> {
        super::parse::parse_poly(self, src)
    }

    /// The ring with `extra` variables appended (existing ones are kept).
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        let mut vars = self.0.vars.clone();
        for v in extra {
            if !vars.iter().any(|w| w == v.as_ref()) {
                vars.push(v.as_ref().to_string());
            }
        }
        Ring::new(self.field().clone(), &vars)
    }

    /// Same variables over a different field.
    pub fn with_field(&self, field: ScalarField) -> Ring {
        Ring(Arc::new(RingData { field, vars: self.0.vars.clone() }))
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars)
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.describe(), right: other.describe() })
        }
    }

    fn describe(&self) -> String {
        format!("{}; {}", self.field(), self.vars().join(", "))
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.describe())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    fn fmt_with(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, v) in self.0.iter().zip(vars) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact coefficients, tied to its [`Ring`].
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Poly {
        debug_assert_eq!(m.0.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ring.field())),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// True when every term has degree exactly `degree` in the given
    /// variables (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous_in(&self, vars: &[usize], degree: u32) -> bool {
        self.terms.keys().all(|m| vars.iter().map(|&v| m.0[v]).sum::<u32>() == degree)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self * other)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        debug_assert!(self.ring.same(&other.ring));
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += a * b`.
    pub fn add_mul_assign(&mut self, a: &Poly, b: &Poly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.ring.check_same(&value.ring)?;
        let mut powers: Vec<Poly> = vec![self.ring.one()];
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            let t = Poly::monomial(&self.ring, rest, c.clone());
            out.add_mul_assign(&t, &powers[e]);
        }
        Ok(out)
    }

    pub fn substitute_named(&self, var: &str, value: &Poly) -> Result<Poly> {
        self.substitute(self.ring.var_index(var)?, value)
    }

    /// Evaluate at a point given as one scalar per variable.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Shape(format!(
                "evaluation point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let field = self.ring.field();
        let mut acc = Scalar::zero(field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Map into another ring by variable name. Rational coefficients may be
    /// moved into any field; otherwise fields must agree.
    pub fn embed(&self, target: &Ring) -> Result<Poly> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        let same_field = self.ring.field() == target.field();
        let mut map: Vec<Option<usize>> = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            map.push(target.var_index(v).ok());
        }
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut tm = Monomial::one(target.nvars());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.vars()[i].clone()))?;
                tm.0[j] = e;
            }
            let tc = if same_field {
                c.clone()
            } else {
                let q = c.as_rational().ok_or_else(|| {
                    Error::RingMismatch { left: self.ring.describe(), right: target.describe() }
                })?;
                Scalar::from_rational(target.field(), q)
            };
            out.add_term(tm, tc);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; fails with the first remainder term
    /// that the leading term of `divisor` does not divide.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        self.ring.check_same(&divisor.ring)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                let t = Poly::monomial(&self.ring, m.clone(), c.clone());
                return Err(Error::NonExactDivision { remainder_term: t.to_string() });
            }
            let q = Poly::monomial(&self.ring, m.div(lm), c * &lc_inv);
            rem = &rem - &(&q * divisor);
            quot.add_assign_ref(&q);
        }
        Ok(quot)
    }

    /// Coefficients with respect to one variable: `self = sum_k out[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![self.ring.zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Division with remainder by a polynomial that is monic in `var`,
    /// treating everything else as coefficients.
    pub fn div_rem_monic_in(&self, var: usize, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.ring.check_same(&divisor.ring)?;
        let dcoeffs = divisor.coefficients_in(var);
        let Some(lead) = dcoeffs.last() else {
            return Err(Error::DivisionByZero);
        };
        if !lead.is_one() {
            return Err(Error::InvalidArgument(format!(
                "divisor {divisor} is not monic in {}",
                self.ring.vars()[var]
            )));
        }
        let dd = dcoeffs.len() - 1;
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        let x = self.ring.var_at(var);
        while let Some(deg) = rem.degree_in(var).map(|d| d as usize) {
            if deg < dd {
                break;
            }
            let c = rem.coefficients_in(var).swap_remove(deg);
            let q = &c * &x.pow((deg - dd) as u32);
            rem = &rem - &(&q * divisor);
            quot.add_assign_ref(&q);
        }
        Ok((quot, rem))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

fn assert_same(a: &Poly, b: &Poly) {
    if let Err(e) = a.ring.check_same(&b.ring) {
        panic!("{e}");
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.ring.zero();
        out.add_mul_assign(self, rhs);
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.fmt_with(vars);
            let coeff = c.to_string();
            let term = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if i == 0 {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
