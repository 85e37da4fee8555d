use num_bigint::BigInt;
use num_rational::BigRational;

use super::lemma1::{lambda_degree, lambda_index, LambdaFamily};
use super::sympow::{exponent_vectors, multinomial, sym_power, SymBasis};
use crate::algebra::{Monomial, Poly, Ring, Scalar};
use crate::clifford::{clifford_action, clifford_square, OrthoSection, SpinorModule};
use crate::complexes::Verdict;
use crate::error::{Error, Result};
use crate::supermod::PolyMatrix;

/// Two-term data `d̃: C̃₀ = C₀ ⊕ ⟨1⟩ → C₁` with a symmetric map
/// `ν: S^{r-1}C̃₀ → C₁^∨`.
///
/// The ring carries one coordinate variable per basis vector of `C₀` and
/// `λ` as the coordinate of `1`; all other variables are base parameters.
/// `nu[b][m]` is the value `ν_b(u^β)` on the `m`-th exponent vector `β` of
/// degree `r - 1` over `C̃₀` (order of [`exponent_vectors`], `1` last), so
/// that `ν(y^{r-1}) = Σ_β multinomial(β)·ν(u^β)·y^β`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauData {
    ring: Ring,
    coords: Vec<usize>,
    lambda: usize,
    r: u32,
    d_tilde: PolyMatrix,
    nu: PolyMatrix,
}

/// Coefficient of `y^β` in `p`, where `y` are the variables `vars`.
pub(crate) fn coefficient_of(p: &Poly, vars: &[usize], beta: &[u32]) -> Poly {
    let mut out = p.ring().zero();
    for (m, c) in p.terms() {
        let e = m.exponents();
        if vars.iter().zip(beta).all(|(&v, &b)| e[v] == b) {
            let mut rest = e.to_vec();
            for &v in vars {
                rest[v] = 0;
            }
            out.add_assign_ref(&Poly::monomial(p.ring(), Monomial::from_exponents(&rest), c.clone()));
        }
    }
    out
}

/// `m·y` with `y` the variables `fiber`.
pub(crate) fn apply_linear(ring: &Ring, fiber: &[usize], m: &PolyMatrix) -> Vec<Poly> {
    (0..m.nrows())
        .map(|b| {
            let mut acc = ring.zero();
            for (a, &v) in fiber.iter().enumerate() {
                acc.add_mul_assign(m.get(b, a), &ring.var_at(v));
            }
            acc
        })
        .collect()
}

/// `ν(y^deg) = Σ_β multinomial(β)·ν(u^β)·y^β` for each row of `values`.
pub(crate) fn expand_symmetric(ring: &Ring, fiber: &[usize], deg: u32, values: &PolyMatrix) -> Vec<Poly> {
    let powers: Vec<Poly> = exponent_vectors(fiber.len(), deg)
        .iter()
        .map(|beta| {
            let mut e = vec![0; ring.nvars()];
            for (k, &v) in fiber.iter().enumerate() {
                e[v] = beta[k];
            }
            let c = Scalar::from_int(ring.field(), multinomial(beta) as i64);
            Poly::monomial(ring, Monomial::from_exponents(&e), c)
        })
        .collect();
    (0..values.nrows())
        .map(|b| {
            let mut acc = ring.zero();
            for (m, p) in powers.iter().enumerate() {
                acc.add_mul_assign(values.get(b, m), p);
            }
            acc
        })
        .collect()
}

/// Inverse of [`expand_symmetric`]: the values `ν_b(u^β)` from the
/// polynomials `N_b = ν_b(y^deg)`.
pub(crate) fn nu_values(ring: &Ring, fiber: &[usize], deg: u32, n: &[Poly]) -> Result<PolyMatrix> {
    let betas = exponent_vectors(fiber.len(), deg);
    let mut nu = PolyMatrix::zeros(ring, n.len(), betas.len());
    for (b, nb) in n.iter().enumerate() {
        if !nb.is_zero() && !nb.is_homogeneous_in(fiber, deg) {
            return Err(Error::InvalidArgument(format!("{nb} is not homogeneous of degree {deg} in the fiber")));
        }
        for (m, beta) in betas.iter().enumerate() {
            let c = coefficient_of(nb, fiber, beta);
            let inv = BigRational::new(BigInt::from(1), BigInt::from(multinomial(beta)));
            nu.set(b, m, c.scalar_mul(&Scalar::from_rational(ring.field(), inv)));
        }
    }
    Ok(nu)
}

pub(crate) fn depends_on(p: &Poly, vars: &[usize]) -> bool {
    p.terms().any(|(m, _)| vars.iter().any(|&v| m.exponents()[v] > 0))
}

impl TauData {
    pub fn new_unchecked(
        ring: &Ring,
        coords: &[&str],
        r: u32,
        d_tilde: PolyMatrix,
        nu: PolyMatrix,
    ) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
        }
        ring.check_same(d_tilde.ring())?;
        ring.check_same(nu.ring())?;
        let lambda = lambda_index(ring)?;
        let coords: Vec<usize> = coords.iter().map(|c| ring.var_index(c)).collect::<Result<_>>()?;
        let n0 = coords.len();
        let n1 = d_tilde.nrows();
        if d_tilde.ncols() != n0 + 1 {
            return Err(Error::Shape(format!("d̃ must have {} columns, got {}", n0 + 1, d_tilde.ncols())));
        }
        let monomials = exponent_vectors(n0 + 1, r - 1).len();
        if nu.nrows() != n1 || nu.ncols() != monomials {
            return Err(Error::Shape(format!(
                "ν must be {n1} x {monomials}, got {} x {}",
                nu.nrows(),
                nu.ncols()
            )));
        }
        let mut fiber = coords.clone();
        fiber.push(lambda);
        if let Some((_, _, p)) = d_tilde.entries().chain(nu.entries()).find(|(_, _, p)| depends_on(p, &fiber)) {
            return Err(Error::InvalidArgument(format!("entry {p} depends on a fiber coordinate")));
        }
        Ok(TauData { ring: ring.clone(), coords, lambda, r, d_tilde, nu })
    }

    /// Validates the zero-composition condition.
    pub fn new(ring: &Ring, coords: &[&str], r: u32, d_tilde: PolyMatrix, nu: PolyMatrix) -> Result<Self> {
        let t = Self::new_unchecked(ring, coords, r, d_tilde, nu)?;
        t.zerocomp()?.into_result()?;
        Ok(t)
    }

    /// Builds `ν` from the polynomials `N_b = ν_b(y^{r-1})`, which must be
    /// homogeneous of degree `r - 1` in the fiber coordinates.
    pub fn from_polys(ring: &Ring, coords: &[&str], r: u32, d_tilde: PolyMatrix, n: &[Poly]) -> Result<Self> {
        let lambda = lambda_index(ring)?;
        let mut fiber: Vec<usize> = coords.iter().map(|c| ring.var_index(c)).collect::<Result<_>>()?;
        fiber.push(lambda);
        let nu = nu_values(ring, &fiber, r.saturating_sub(1), n)?;
        Self::new(ring, coords, r, d_tilde, nu)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coords(&self) -> Vec<String> {
        self.coords.iter().map(|&v| self.ring.vars()[v].clone()).collect()
    }

    pub fn d_tilde(&self) -> &PolyMatrix {
        &self.d_tilde
    }

    pub fn nu(&self) -> &PolyMatrix {
        &self.nu
    }

    pub fn c1_rank(&self) -> usize {
        self.d_tilde.nrows()
    }

    fn fiber(&self) -> Vec<usize> {
        let mut f = self.coords.clone();
        f.push(self.lambda);
        f
    }

    /// `d̃(x + λ·1)` as a vector in `C₁`.
    pub fn d_at_generic(&self) -> Vec<Poly> {
        apply_linear(&self.ring, &self.fiber(), &self.d_tilde)
    }

    /// `ν((x + λ·1)^{r-1})` as a covector, expanded multinomially.
    pub fn nu_at_generic(&self) -> Vec<Poly> {
        expand_symmetric(&self.ring, &self.fiber(), self.r - 1, &self.nu)
    }

    /// `⟨ν((x + λ·1)^{r-1}), d̃(x + λ·1)⟩`.
    pub fn pairing(&self) -> Poly {
        let mut acc = self.ring.zero();
        for (n, d) in self.nu_at_generic().iter().zip(self.d_at_generic()) {
            acc.add_mul_assign(n, &d);
        }
        acc
    }

    /// `τ̃ ∘ δ` on `S^rC̃₀` must vanish away from `1^r`, with `τ̃` the pairing
    /// of `ν` with `S^{r-1}C̃₀ ⊗ C₁`.
    pub fn zerocomp(&self) -> Result<Verdict> {
        let sp = sym_power(&self.ring, &self.d_tilde, self.r)?;
        let n0 = self.coords.len() + 1;
        let betas = exponent_vectors(n0, self.r - 1);
        let d = sp.complex.differential();
        let mut top = vec![0; n0];
        top[n0 - 1] = self.r;
        for (col, b) in sp.basis.iter().enumerate() {
            if !b.wedge.is_empty() || b.alpha == top {
                continue;
            }
            let mut value = self.ring.zero();
            for (m, beta) in betas.iter().enumerate() {
                for e in 0..self.c1_rank() {
                    let tau = self.nu.get(e, m);
                    if tau.is_zero() {
                        continue;
                    }
                    if let Some(row) = sp.index_of(&SymBasis { alpha: beta.clone(), wedge: vec![e] }) {
                        value.add_mul_assign(tau, &d.entry(row, col));
                    }
                }
            }
            if !value.is_zero() {
                return Ok(Verdict::fail(
                    "zero composition",
                    format!("τ̃∘δ is {value} on the monomial with exponents {:?}", b.alpha),
                ));
            }
        }
        Ok(Verdict::pass("zero composition"))
    }
}

#[derive(Clone, Debug)]
pub struct SLambdaOutput {
    pub s_lambda: OrthoSection,
    pub s_zero: OrthoSection,
    pub spinors: SpinorModule,
    /// `⟨ν((x + λ·1)^{r-1}), d̃(x + λ·1)⟩ - λ^r`.
    pub residual: Poly,
    pub verdicts: Vec<Verdict>,
    /// The λ-family given by the Clifford action of `s_λ`, when valid.
    pub family: Option<LambdaFamily>,
}

impl SLambdaOutput {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass) && self.family.is_some()
    }
}

pub fn s_lambda_check(t: &TauData) -> Result<SLambdaOutput> {
    let ring = &t.ring;
    let l = ring.var_at(t.lambda);
    let target = l.pow(t.r);
    let s_lambda = OrthoSection::new(t.d_at_generic(), t.nu_at_generic())?;
    let zero = ring.zero();
    let at_zero = |v: &[Poly]| v.iter().map(|p| p.substitute(t.lambda, &zero)).collect::<Result<Vec<_>>>();
    let s_zero = OrthoSection::new(at_zero(&s_lambda.vector)?, at_zero(&s_lambda.covector)?)?;
    let spinors = SpinorModule::new(ring, t.c1_rank())?;

    let mut verdicts = vec![t.zerocomp()?];
    let residual = &t.pairing() - &target;
    verdicts.push(if residual.is_zero() {
        Verdict::pass("pairing = λ^r")
    } else {
        Verdict::fail("pairing = λ^r", format!("residual {residual}"))
    });
    let square = clifford_square(&s_lambda, &spinors)?;
    verdicts.push(if square == target {
        Verdict::pass("clifford_square(s_λ) = λ^r")
    } else {
        Verdict::fail("clifford_square(s_λ) = λ^r", format!("square is {square}"))
    });
    let rho = clifford_action(&s_lambda, &spinors)?;
    let degree = lambda_degree(&rho, t.lambda).unwrap_or(0);
    verdicts.push(if degree < t.r {
        Verdict::pass("λ-degree of the action")
    } else {
        Verdict::fail("λ-degree of the action", format!("degree {degree} exceeds {}", t.r - 1))
    });
    let square0 = clifford_square(&s_zero, &spinors)?;
    verdicts.push(if square0.is_zero() {
        Verdict::pass("s_0 is isotropic")
    } else {
        Verdict::fail("s_0 is isotropic", format!("square is {square0}"))
    });
    let family = if verdicts.iter().all(|v| v.pass) {
        Some(LambdaFamily::new(rho, t.r)?)
    } else {
        None
    };
    Ok(SLambdaOutput { s_lambda, s_zero, spinors, residual, verdicts, family })
}
