use super::lemma2::{lemma2_build, Lemma2Output, TwistFamily};
use super::sympow::exponent_vectors;
use super::tau::{apply_linear, depends_on, expand_symmetric, nu_values};
use crate::algebra::{roots_of_unity, Poly, Ring, Scalar};
use crate::clifford::{clifford_action, spinor_split, OrthoSection, SpinorModule};
use crate::complexes::{CurvedComplex, SupportLocus, Verdict};
use crate::error::{Error, Result};
use crate::kcert::{compose_certs, ClaimTerm, Iso, KCertificate, Move, MoveKind};
use crate::supermod::{Parity, ParityMap, PolyMatrix};

/// `d: C₀ → C₁`, `ν: S^{r-1}C₀ → C₁^∨` and two functionals `e₁, e₂` on `C₀`
/// with `⟨ν(x^{r-1}), d(x)⟩ = -(e₁(x)^r - e₂(x)^r)`.
///
/// The ring has one coordinate variable per basis vector of `C₀`, and its
/// field contains the `r`-th roots of unity. `nu` stores `ν_b(u^β)` on the
/// exponent vectors of degree `r - 1` as in [`super::TauData`].
#[derive(Clone, Debug, PartialEq)]
pub struct RamondData {
    ring: Ring,
    coords: Vec<usize>,
    r: u32,
    d: PolyMatrix,
    nu: PolyMatrix,
    e1: Vec<Poly>,
    e2: Vec<Poly>,
}

impl RamondData {
    pub fn new(
        ring: &Ring,
        coords: &[&str],
        r: u32,
        d: PolyMatrix,
        nu: PolyMatrix,
        e1: Vec<Poly>,
        e2: Vec<Poly>,
    ) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
        }
        roots_of_unity(ring.field(), r)?;
        ring.check_same(d.ring())?;
        ring.check_same(nu.ring())?;
        let coords: Vec<usize> = coords.iter().map(|c| ring.var_index(c)).collect::<Result<_>>()?;
        let n0 = coords.len();
        if d.ncols() != n0 || e1.len() != n0 || e2.len() != n0 {
            return Err(Error::Shape(format!("d, e₁ and e₂ must have {n0} columns")));
        }
        let monomials = exponent_vectors(n0, r - 1).len();
        if nu.nrows() != d.nrows() || nu.ncols() != monomials {
            return Err(Error::Shape(format!(
                "ν must be {} x {monomials}, got {} x {}",
                d.nrows(),
                nu.nrows(),
                nu.ncols()
            )));
        }
        for p in d.entries().chain(nu.entries()).map(|(_, _, p)| p).chain(&e1).chain(&e2) {
            ring.check_same(p.ring())?;
            if depends_on(p, &coords) {
                return Err(Error::InvalidArgument(format!("entry {p} depends on a fiber coordinate")));
            }
        }
        let data = RamondData { ring: ring.clone(), coords, r, d, nu, e1, e2 };
        let lhs = data.pairing();
        let rhs = -&(&data.e1_at().pow(r) - &data.e2_at().pow(r));
        if lhs != rhs {
            return Err(Error::invariant("⟨ν(x^{r-1}), d(x)⟩ = -(e₁^r - e₂^r)", &lhs - &rhs));
        }
        Ok(data)
    }

    /// Builds `ν` from the polynomials `N_b = ν_b(x^{r-1})`.
    pub fn from_polys(
        ring: &Ring,
        coords: &[&str],
        r: u32,
        d: PolyMatrix,
        n: &[Poly],
        e1: Vec<Poly>,
        e2: Vec<Poly>,
    ) -> Result<Self> {
        let fiber: Vec<usize> = coords.iter().map(|c| ring.var_index(c)).collect::<Result<_>>()?;
        let nu = nu_values(ring, &fiber, r.saturating_sub(1), n)?;
        Self::new(ring, coords, r, d, nu, e1, e2)
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

    pub fn d(&self) -> &PolyMatrix {
        &self.d
    }

    pub fn nu(&self) -> &PolyMatrix {
        &self.nu
    }

    pub fn e1(&self) -> &[Poly] {
        &self.e1
    }

    pub fn e2(&self) -> &[Poly] {
        &self.e2
    }

    pub fn c1_rank(&self) -> usize {
        self.d.nrows()
    }

    fn linear(&self, e: &[Poly]) -> Poly {
        let mut acc = self.ring.zero();
        for (c, &v) in e.iter().zip(&self.coords) {
            acc.add_mul_assign(c, &self.ring.var_at(v));
        }
        acc
    }

    /// `e₁(x)`.
    pub fn e1_at(&self) -> Poly {
        self.linear(&self.e1)
    }

    /// `e₂(x)`.
    pub fn e2_at(&self) -> Poly {
        self.linear(&self.e2)
    }

    pub fn d_at(&self) -> Vec<Poly> {
        apply_linear(&self.ring, &self.coords, &self.d)
    }

    pub fn nu_at(&self) -> Vec<Poly> {
        expand_symmetric(&self.ring, &self.coords, self.r - 1, &self.nu)
    }

    pub fn pairing(&self) -> Poly {
        let mut acc = self.ring.zero();
        for (n, d) in self.nu_at().iter().zip(self.d_at()) {
            acc.add_mul_assign(n, &d);
        }
        acc
    }

    /// `f_ξ = e₁ - ξ·e₂`.
    pub fn f_xi(&self, xi: &Scalar) -> Poly {
        &self.e1_at() - &self.e2_at().scalar_mul(xi)
    }

    /// `Σ_i ξ^{r-1-i} e₁^i e₂^{r-1-i}`.
    pub fn cofactor(&self, xi: &Scalar) -> Poly {
        let (a, b) = (self.e1_at(), self.e2_at());
        let mut acc = self.ring.zero();
        for i in 0..self.r {
            let term = &a.pow(i) * &b.pow(self.r - 1 - i);
            acc.add_assign_ref(&term.scalar_mul(&xi.pow(self.r - 1 - i)));
        }
        acc
    }
}

/// `s_ξ = (d(x), e₁ - ξe₂, ν(x^{r-1}), Σ_i ξ^{r-1-i} e₁^i e₂^{r-1-i})`.
pub fn s_xi_build(data: &RamondData, xi: &Scalar) -> Result<OrthoSection> {
    if !xi.pow(data.r).is_one() {
        return Err(Error::InvalidArgument(format!("{xi} is not an {}-th root of unity", data.r)));
    }
    Ok(OrthoSection::new(data.d_at(), data.nu_at())?.with_line(data.f_xi(xi), data.cofactor(xi)))
}

#[derive(Clone, Debug)]
pub struct SXiOutput {
    /// The roots of unity in order `1, ζ, ζ², …`.
    pub xis: Vec<Scalar>,
    pub f_list: Vec<Poly>,
    pub twist: TwistFamily,
    pub lemma2: Lemma2Output,
    pub sections: Vec<OrthoSection>,
    /// `(Λ•(C₁^∨ ⊕ L^{-1}), ρ(s_ξ))` per root.
    pub actions: Vec<CurvedComplex>,
    /// `Λ•(C₁^∨ ⊕ L^{-1}) ≅ Λ[1] ⊕ Λ`, the split followed by the swap.
    pub transport: Iso,
    pub verdicts: Vec<Verdict>,
    /// `Σ_ξ [Λ•(C₁^∨ ⊕ L^{-1}), ρ(s_ξ)] = 0`.
    pub kcert: KCertificate,
}

impl SXiOutput {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass) && self.lemma2.pass()
    }
}

pub fn s_xi_reduce(data: &RamondData) -> Result<SXiOutput> {
    let ring = &data.ring;
    let xis = roots_of_unity(ring.field(), data.r)?;
    let f_list: Vec<Poly> = xis.iter().map(|xi| data.f_xi(xi)).collect();
    let mut verdicts = Vec::new();
    for (k, xi) in xis.iter().enumerate() {
        let others = f_list
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(ring.one(), |acc, (_, f)| &acc * f);
        let diff = &others - &data.cofactor(xi);
        verdicts.push(if diff.is_zero() {
            Verdict::pass(format!("cofactor identity at ξ = {xi}"))
        } else {
            Verdict::fail(format!("cofactor identity at ξ = {xi}"), format!("residual {diff}"))
        });
    }
    let product = f_list.iter().fold(ring.one(), |acc, f| &acc * f);
    let diff = &product - &(&data.e1_at().pow(data.r) - &data.e2_at().pow(data.r));
    verdicts.push(if diff.is_zero() {
        Verdict::pass("∏ f_ξ = e₁^r - e₂^r")
    } else {
        Verdict::fail("∏ f_ξ = e₁^r - e₂^r", format!("residual {diff}"))
    });
    if let Some(bad) = verdicts.iter().find(|v| !v.pass) {
        return Err(Error::invariant(bad.check.clone(), bad.message.clone().unwrap_or_default()));
    }

    let base = SpinorModule::new(ring, data.c1_rank())?;
    let extended = SpinorModule::new(ring, data.c1_rank() + 1)?;
    let s0 = OrthoSection::new(data.d_at(), data.nu_at())?;
    let rho0 = clifford_action(&s0, &base)?;
    // On Λ•C₁^∨[1] ⊕ Λ•C₁^∨ the line components of s_ξ act as f_ξ and the
    // complementary product of the twisted-product differentials.
    let twist = TwistFamily::new(rho0.shift().neg(), f_list.clone())?;
    let lemma2 = lemma2_build(&twist)?;

    let split = spinor_split(&extended)?;
    let v = twist.module().clone();
    let split_parts = [base.module().clone(), base.module().shift()];
    let target_parts = [v.clone(), v.shift()];
    let swap_grid = vec![
        vec![None, Some(ParityMap::identity(&split_parts[1]).relabel(&split_parts[1], &target_parts[0])?)],
        vec![Some(ParityMap::identity(&split_parts[0]).relabel(&split_parts[0], &target_parts[1])?), None],
    ];
    let swap = ParityMap::block_grid(&split_parts, &target_parts, Parity::Even, &swap_grid)?;
    let unswap_grid = vec![
        vec![None, Some(ParityMap::identity(&target_parts[1]).relabel(&target_parts[1], &split_parts[0])?)],
        vec![Some(ParityMap::identity(&target_parts[0]).relabel(&target_parts[0], &split_parts[1])?), None],
    ];
    let unswap = ParityMap::block_grid(&target_parts, &split_parts, Parity::Even, &unswap_grid)?;
    let transport = Iso {
        map: swap.compose(&split.forward)?,
        inverse: split.backward.compose(&unswap)?,
    };

    let mut sections = Vec::with_capacity(xis.len());
    let mut actions = Vec::with_capacity(xis.len());
    let mut kcert = lemma2.kcert.clone();
    for (k, xi) in xis.iter().enumerate() {
        let s = s_xi_build(data, xi)?;
        let rho = clifford_action(&s, &extended)?;
        let moved = transport.map.compose(&rho.compose(&transport.inverse)?)?;
        let target = &lemma2.d_list[k];
        let check = format!("transported action matches d_{} at ξ = {xi}", k + 1);
        verdicts.push(Verdict::from_difference(check, moved.first_difference(target.differential())?));
        let action = CurvedComplex::with_curvature(rho, &ring.zero())?;
        let iso_cert = KCertificate::new(
            vec![
                ClaimTerm { coeff: 1, name: format!("(S, s_ξ) at ξ = {xi}"), complex: action.clone() },
                ClaimTerm { coeff: -1, name: format!("(V+V[1], d_{})", k + 1), complex: target.clone() },
            ],
            SupportLocus::default(),
            vec![Move {
                multiplier: 1,
                note: format!("spinor split at ξ = {xi}"),
                kind: MoveKind::Iso { source: action.clone(), target: target.clone(), iso: transport.clone() },
            }],
        );
        kcert = compose_certs(&kcert, &iso_cert)?;
        sections.push(s);
        actions.push(action);
    }
    Ok(SXiOutput { xis, f_list, twist, lemma2, sections, actions, transport, verdicts, kcert })
}
