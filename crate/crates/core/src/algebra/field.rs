//! Exact scalars: the rationals and cyclotomic extensions `Q(zeta_n)`.
//!
//! A cyclotomic field is stored as `Q[t]/(Phi_n(t))` with the exact
//! cyclotomic polynomial as modulus, so every nonzero element is invertible.
//! Scalars are kept in canonical form (coefficient vector in the power basis
//! `1, t, ..., t^(deg Phi_n - 1)`, trailing zeros trimmed), which makes
//! equality syntactic.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Name under which the distinguished root of unity is printed and parsed.
pub const ZETA: &str = "zeta";

type Coeffs = SmallVec<[BigRational; 1]>;

struct FieldData {
    order: u32,
    /// Monic `Phi_order`, lowest degree first.
    modulus: Vec<BigRational>,
}

impl FieldData {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// A field of scalars: `Q` (degree 1) or `Q(zeta_n)`.
#[derive(Clone)]
pub struct ScalarField(Arc<FieldData>);

impl ScalarField {
    /// The rational numbers, with distinguished root `zeta = 1`.
    pub fn rationals() -> Self {
        cyclotomic_field(1).expect("order 1 is valid")
    }

    /// The order `n` this field was created with (`zeta` is a primitive
    /// `n`-th root of unity).
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Coefficients of the modulus `Phi_n`, lowest degree first.
    pub fn modulus(&self) -> &[BigRational] {
        &self.0.modulus
    }

    /// The distinguished primitive `order`-th root of unity.
    pub fn zeta(&self) -> Scalar {
        match self.order() {
            1 => Scalar::one(self),
            2 => -Scalar::one(self),
            _ => {
                let mut coeffs = Coeffs::new();
                coeffs.push(BigRational::zero());
                coeffs.push(BigRational::one());
                Scalar::from_coeffs(self, coeffs)
            }
        }
    }

    /// Largest `m` such that this field contains a primitive `m`-th root of
    /// unity. `Q(zeta_n)` for odd `n` also contains `-zeta_n`, of order `2n`.
    fn root_order(&self) -> u32 {
        let n = self.order();
        if n % 2 == 1 {
            2 * n
        } else {
            n
        }
    }

    fn max_order_root(&self) -> Scalar {
        let n = self.order();
        if n.is_multiple_of(2) {
            self.zeta()
        } else {
            -self.zeta().pow(n.div_ceil(2))
        }
    }

    /// A primitive `r`-th root of unity, if the field contains one.
    pub fn primitive_root(&self, r: u32) -> Result<Scalar> {
        if r == 0 {
            return Err(Error::InvalidArgument("root order must be positive".into()));
        }
        let m = self.root_order();
        if !m.is_multiple_of(r) {
            return Err(Error::MissingRoots { field: self.to_string(), r });
        }
        Ok(self.max_order_root().pow(m / r))
    }

    /// Parse `Q` or `cyclotomic:n`.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Self::rationals());
        }
        if let Some(n) = s.strip_prefix("cyclotomic:") {
            let n: u32 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic order in field spec `{spec}`")))?;
            return cyclotomic_field(n);
        }
        Err(Error::Parse(format!("unknown field spec `{spec}` (expected Q or cyclotomic:r)")))
    }
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.is_rational() && other.is_rational())
            || self.order() == other.order()
    }
}

impl Eq for ScalarField {}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({self})")
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            1 => write!(f, "Q"),
            n => write!(f, "cyclotomic:{n}"),
        }
    }
}

/// The field `Q(zeta_r)` with `zeta = t mod Phi_r`. For `r = 1, 2` this is
/// `Q` with `zeta = 1` resp. `-1`.
pub fn cyclotomic_field(r: u32) -> Result<ScalarField> {
    if r == 0 {
        return Err(Error::InvalidArgument("cyclotomic order must be at least 1".into()));
    }
    let modulus = cyclotomic_polynomial(r)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    Ok(ScalarField(Arc::new(FieldData { order: r, modulus })))
}

/// All `r` distinct `r`-th roots of unity `1, w, w^2, ..., w^(r-1)` for a
/// primitive root `w` of the field.
pub fn roots_of_unity(field: &ScalarField, r: u32) -> Result<Vec<Scalar>> {
    let w = field.primitive_root(r)?;
    let mut out = Vec::with_capacity(r as usize);
    let mut acc = Scalar::one(field);
    for _ in 0..r {
        out.push(acc.clone());
        acc = &acc * &w;
    }
    Ok(out)
}

/// Integer coefficients of `Phi_n`, lowest degree first, computed as
/// `(t^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = int_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn int_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An exact element of a [`ScalarField`].
#[derive(Clone)]
pub struct Scalar {
    field: ScalarField,
    coeffs: Coeffs,
}

// Integer fast paths: skip the gcd normalization of `Ratio` arithmetic.
fn q_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn q_add_assign(c: &mut BigRational, s: &BigRational) {
    if c.is_integer() && s.is_integer() {
        *c = BigRational::from_integer(c.numer() + s.numer());
    } else {
        *c += s;
    }
}

fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

impl Scalar {
    fn from_coeffs(field: &ScalarField, mut coeffs: Coeffs) -> Self {
        let deg = field.degree();
        if coeffs.len() > deg {
            reduce(&mut coeffs, field.modulus());
        }
        trim(&mut coeffs);
        Scalar { field: field.clone(), coeffs }
    }

    pub fn zero(field: &ScalarField) -> Self {
        Scalar { field: field.clone(), coeffs: Coeffs::new() }
    }

    pub fn one(field: &ScalarField) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &ScalarField, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &ScalarField, q: BigRational) -> Self {
        let mut coeffs = Coeffs::new();
        if !q.is_zero() {
            coeffs.push(q);
        }
        Scalar { field: field.clone(), coeffs }
    }

    /// Build `sum c_i zeta^i` from power-basis coordinates (reduced).
    pub fn from_power_basis(field: &ScalarField, coeffs: Vec<BigRational>) -> Self {
        Self::from_coeffs(field, coeffs.into_iter().collect())
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    /// Canonical power-basis coordinates (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        // s * a + t * Phi = 1 in Q[t]
        let (g, s) = xgcd_left(&self.coeffs, self.field.modulus());
        debug_assert!(g.len() == 1);
        let lead = g[0].recip();
        let coeffs = s.into_iter().map(|c| c * &lead).collect();
        Some(Self::from_coeffs(&self.field, coeffs))
    }

    fn check_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalar field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }
}

/// Reduce modulo a monic polynomial in place.
fn reduce(c: &mut Coeffs, modulus: &[BigRational]) {
    let deg = modulus.len() - 1;
    while c.len() > deg {
        let top = c.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - deg;
        for (i, m) in modulus[..deg].iter().enumerate() {
            c[shift + i] -= &top * m;
        }
    }
}

fn poly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), poly_trim(rem));
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (poly_trim(quot), poly_trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Extended Euclid in `Q[t]`: returns `(g, s)` with `s * a = g (mod b)`.
fn xgcd_left(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl<'a> std::ops::Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_field(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            q_add_assign(c, s);
        }
        trim(&mut coeffs);
        Scalar { field: self.field.clone(), coeffs }
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check_field(rhs);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (c, s) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            q_add_assign(c, s);
        }
        trim(&mut self.coeffs);
    }
}

impl<'a> std::ops::Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> std::ops::Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero(&self.field);
        }
        if self.coeffs.len() == 1 && rhs.coeffs.len() == 1 {
            let mut coeffs = Coeffs::new();
            coeffs.push(q_mul(&self.coeffs[0], &rhs.coeffs[0]));
            return Scalar { field: self.field.clone(), coeffs };
        }
        let mut out: Coeffs =
            std::iter::repeat_n(BigRational::zero(), self.coeffs.len() + rhs.coeffs.len() - 1)
                .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                q_add_assign(&mut out[i + j], &q_mul(a, b));
            }
        }
        Scalar::from_coeffs(&self.field, out)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeffs.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", fmt_rational(&self.coeffs[0])),
            _ => {
                let mut parts = String::new();
                for (i, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    let body = match (i, mag.is_one()) {
                        (0, _) => fmt_rational(&mag),
                        (1, true) => ZETA.to_string(),
                        (1, false) => format!("{}*{ZETA}", fmt_rational(&mag)),
                        (_, true) => format!("{ZETA}^{i}"),
                        (_, false) => format!("{}*{ZETA}^{i}", fmt_rational(&mag)),
                    };
                    if parts.is_empty() {
                        if c.is_negative() {
                            parts.push('-');
                        }
                    } else if c.is_negative() {
                        parts.push_str(" - ");
                    } else {
                        parts.push_str(" + ");
                    }
                    parts.push_str(&body);
                }
                write!(f, "({parts})")
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n).iter().map(|c| c.try_into().unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn order_zero_rejected() {
        assert!(cyclotomic_field(0).is_err());
    }

    #[test]
    fn trivial_orders_are_rational() {
        let f1 = cyclotomic_field(1).unwrap();
        let f2 = cyclotomic_field(2).unwrap();
        assert!(f1.is_rational() && f2.is_rational());
        assert!(f1.zeta().is_one());
        assert_eq!(f2.zeta(), Scalar::from_int(&f2, -1));
        assert_eq!(f1, f2);
    }

    #[test]
    fn order_four_root_squares_to_minus_one() {
        let f = cyclotomic_field(4).unwrap();
        let z = f.zeta();
        // repeated multiplication, reducing by t^2 + 1 at each step
        let z2 = &z * &z;
        assert_eq!(z2, Scalar::from_int(&f, -1));
        let z4 = &z2 * &z2;
        assert!(z4.is_one());
        assert!(!z.is_one() && !(&z2 * &z).is_one());
    }

    #[test]
    fn zeta_is_primitive() {
        for r in 1..=12u32 {
            let f = cyclotomic_field(r).unwrap();
            let z = f.zeta();
            assert!(z.pow(r).is_one(), "zeta^{r}");
            for k in 1..r {
                assert!(!z.pow(k).is_one(), "zeta^{k} for r={r}");
            }
        }
    }

    #[test]
    fn inverses() {
        let f = cyclotomic_field(5).unwrap();
        let z = f.zeta();
        let a = &(&z * &z) + &Scalar::from_rational(&f, q(3, 2));
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(Scalar::zero(&f).inv().is_none());
    }

    #[test]
    fn roots_of_unity_rationals() {
        let f = ScalarField::rationals();
        let roots = roots_of_unity(&f, 2).unwrap();
        assert_eq!(roots, vec![Scalar::from_int(&f, 1), Scalar::from_int(&f, -1)]);
        assert!(roots_of_unity(&f, 3).is_err());
    }

    #[test]
    fn odd_order_field_contains_double_order_roots() {
        let f = cyclotomic_field(3).unwrap();
        let w = f.primitive_root(6).unwrap();
        assert!(w.pow(6).is_one());
        assert!(!w.pow(2).is_one() && !w.pow(3).is_one());
        assert!(f.primitive_root(4).is_err());
    }

    #[test]
    fn display() {
        let f = cyclotomic_field(3).unwrap();
        let z = f.zeta();
        let a = &(&z * &Scalar::from_rational(&f, q(-1, 2))) + &Scalar::one(&f);
        assert_eq!(a.to_string(), "(1 - 1/2*zeta)");
        assert_eq!((&z * &z).to_string(), "(-1 - zeta)");
        assert_eq!(Scalar::from_rational(&f, q(-3, 4)).to_string(), "-3/4");
    }
}
