use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lemma1::{
    block_filtration, check_monic_square, copies, graded_verdict, identity_piece, lambda_index,
    monic_window, square_zero_verdict,
};
use crate::algebra::{Poly, Ring, Scalar, LAMBDA};
use crate::complexes::{filtration_verify, associated_graded, CurvedComplex, Filtration, Homotopy, SupportLocus, Verdict};
use crate::error::{Error, Result};
use crate::kcert::{check_iso, ClaimTerm, GradedPiece, Iso, KCertificate, Move, MoveKind};
use crate::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};

/// Largest constant term searched by the rational root finder.
const MAX_ROOT_SEARCH: u64 = 1 << 40;

/// An odd endomorphism `d(λ)` with `d(λ)² = f(λ)·id` for a monic `f` of
/// degree `r` in `λ` with distinct roots `z_1, …, z_r` in the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RemarkFamily {
    d: ParityMap,
    f: Poly,
    roots: Vec<Poly>,
    lambda: usize,
}

impl RemarkFamily {
    /// Validates the square identity and the factorization `f = ∏(λ - z)`.
    /// Roots may be omitted when `f` has rational constant coefficients.
    pub fn new(d: ParityMap, f: Poly, roots: Option<Vec<Poly>>) -> Result<Self> {
        let ring = d.ring().clone();
        ring.check_same(f.ring())?;
        let lambda = lambda_index(&ring)?;
        let coeffs = f.coefficients_in(lambda);
        let r = coeffs.len().saturating_sub(1);
        if r == 0 || !coeffs[r].is_one() {
            return Err(Error::InvalidArgument(format!("{f} must be monic of positive degree in {LAMBDA}")));
        }
        check_monic_square(&d, lambda, r as u32, &f)?;
        let roots = match roots {
            Some(z) => z,
            None => rational_roots(&coeffs)?,
        };
        check_split(&ring, lambda, &f, &roots)?;
        Ok(RemarkFamily { d, f, roots, lambda })
    }

    pub fn module(&self) -> &SuperModule {
        self.d.source()
    }

    pub fn differential(&self) -> &ParityMap {
        &self.d
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn roots(&self) -> &[Poly] {
        &self.roots
    }

    pub fn ring(&self) -> &Ring {
        self.d.ring()
    }

    /// `(V, d(z))`, a complex since `f(z) = 0`.
    pub fn fiber(&self, z: &Poly) -> Result<CurvedComplex> {
        CurvedComplex::with_curvature(self.d.substitute(self.lambda, z)?, &self.ring().zero())
    }
}

fn check_split(ring: &Ring, lambda: usize, f: &Poly, roots: &[Poly]) -> Result<()> {
    let l = ring.var_at(lambda);
    for (i, z) in roots.iter().enumerate() {
        ring.check_same(z.ring())?;
        if z.degree_in(lambda).is_some_and(|d| d > 0) {
            return Err(Error::InvalidArgument(format!("root {z} depends on {LAMBDA}")));
        }
        let value = f.substitute(lambda, z)?;
        if !value.is_zero() {
            return Err(Error::invariant(format!("f({z}) = 0"), value));
        }
        if roots[..i].contains(z) {
            return Err(Error::InvalidArgument(format!("{f} is not squarefree: repeated root {z}")));
        }
    }
    let product = roots.iter().fold(ring.one(), |acc, z| &acc * &(&l - z));
    if &product != f {
        return Err(Error::InvalidArgument(format!(
            "{f} is not squarefree or does not split: its roots in the ring give {product}"
        )));
    }
    Ok(())
}

/// All rational roots of a monic polynomial with rational constant
/// coefficients (listed from degree 0 upwards), by the rational root theorem.
fn rational_roots(coeffs: &[Poly]) -> Result<Vec<Poly>> {
    let ring = coeffs[0].ring().clone();
    let field = ring.field().clone();
    let not_constant = || Error::InvalidArgument("roots must be supplied when f has non-constant coefficients".into());
    let q: Vec<BigRational> = coeffs
        .iter()
        .map(|c| c.as_constant().and_then(|s| s.as_rational()).ok_or_else(not_constant))
        .collect::<Result<_>>()?;
    let mut roots = Vec::new();
    let mut rest = q;
    // Peel off zero roots.
    while rest.len() > 1 && rest[0].is_zero() {
        roots.push(BigRational::zero());
        rest.remove(0);
    }
    if rest.len() > 1 {
        let den = rest.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = rest.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
        let a0 = ints[0].abs().to_u64().filter(|&a| a <= MAX_ROOT_SEARCH);
        let lead = ints.last().unwrap().abs().to_u64().filter(|&a| a <= MAX_ROOT_SEARCH);
        let (Some(a0), Some(lead)) = (a0, lead) else {
            return Err(Error::InvalidArgument("coefficients too large for the rational root search; supply roots".into()));
        };
        let eval = |x: &BigRational| rest.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
        for p in divisors(a0) {
            for qd in divisors(lead) {
                for sign in [1i64, -1] {
                    let x = BigRational::new(BigInt::from(p) * sign, BigInt::from(qd));
                    if eval(&x).is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().map(|x| ring.constant(Scalar::from_rational(&field, x))).collect())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `M ⊗ id_V` as an even map between tagged copies of `V`.
pub(crate) fn scalar_grid(
    v: &SuperModule,
    sources: &[SuperModule],
    targets: &[SuperModule],
    m: &PolyMatrix,
) -> Result<ParityMap> {
    let id = ParityMap::identity(v);
    let grid: Vec<Vec<Option<ParityMap>>> = (0..targets.len())
        .map(|a| {
            (0..sources.len())
                .map(|b| {
                    let c = m.get(a, b);
                    (!c.is_zero()).then(|| id.scale(c).relabel(&sources[b], &targets[a])).transpose()
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    ParityMap::block_grid(sources, targets, Parity::Even, &grid)
}

#[derive(Clone, Debug)]
pub struct RemarkOutput {
    /// `(V, d(z))` for each root, in root order.
    pub complexes: Vec<CurvedComplex>,
    pub multiplicities: Vec<u32>,
    /// `V[λ]/(f)` on the monomial basis.
    pub window: CurvedComplex,
    pub homotopy: Homotopy,
    /// The same complex on the Newton basis `∏_{i<j}(λ - z_i)`.
    pub newton: CurvedComplex,
    pub change_of_basis: Iso,
    pub filtration: Filtration,
    pub graded: Vec<GradedPiece>,
    pub verdicts: Vec<Verdict>,
    pub kcert: KCertificate,
}

impl RemarkOutput {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

pub fn remark_decompose(fam: &RemarkFamily) -> Result<RemarkOutput> {
    let ring = fam.ring();
    let v = fam.module();
    let r = fam.roots.len();
    let win = monic_window(&fam.d, fam.lambda, &fam.f)?;
    // Column j of T holds the λ-coefficients of the Newton polynomial N_j.
    let l = ring.var_at(fam.lambda);
    let mut t = PolyMatrix::zeros(ring, r, r);
    let mut newton_poly = ring.one();
    for j in 0..r {
        for (m, c) in newton_poly.coefficients_in(fam.lambda).into_iter().enumerate() {
            t.set(m, j, c);
        }
        newton_poly = &newton_poly * &(&l - &fam.roots[j]);
    }
    // T is unitriangular: T⁻¹ = Σ_k (I - T)^k.
    let nil = PolyMatrix::identity(ring, r).sub(&t)?;
    let mut t_inv = PolyMatrix::identity(ring, r);
    let mut power = PolyMatrix::identity(ring, r);
    for _ in 1..r {
        power = power.mul(&nil)?;
        t_inv = t_inv.add(&power)?;
    }
    let newton_parts = copies(v, r, |k| format!("N{k}"))?;
    let to_newton = scalar_grid(v, &win.parts, &newton_parts, &t_inv)?;
    let from_newton = scalar_grid(v, &newton_parts, &win.parts, &t)?;
    let d_newton = to_newton.compose(&win.w.differential().compose(&from_newton)?)?;
    let newton = CurvedComplex::with_curvature(d_newton, &ring.zero())?;
    let change_of_basis = Iso { map: to_newton, inverse: from_newton };

    let filtration = block_filtration(&newton_parts, |k| k, r);
    let complexes: Vec<CurvedComplex> = fam.roots.iter().map(|z| fam.fiber(z)).collect::<Result<_>>()?;
    let mut verdicts = vec![square_zero_verdict(&win.w, "d_W")];
    let homotopy = Homotopy::null(&win.w, win.h);
    verdicts.push(homotopy.verify()?);
    let iso_fail = check_iso(&win.w, &newton, &change_of_basis)?.into_iter().find(|v| !v.pass);
    verdicts.push(iso_fail.unwrap_or_else(|| Verdict::pass("Newton change of basis")));
    let fv = filtration_verify(&newton, &filtration);
    let filtration_ok = fv.pass;
    verdicts.push(fv);
    let mut graded = Vec::with_capacity(r);
    if filtration_ok {
        for (j, target) in complexes.iter().enumerate() {
            let gr = associated_graded(&newton, &filtration, j + 1)?;
            graded.push(identity_piece(&gr, target)?);
        }
        verdicts.push(graded_verdict(&newton, &filtration, &graded)?);
    } else {
        verdicts.push(Verdict::fail("graded pieces", "filtration is not preserved"));
    }

    let claim = complexes
        .iter()
        .zip(&fam.roots)
        .map(|(c, z)| ClaimTerm { coeff: 1, name: format!("(V, d({z}))"), complex: c.clone() })
        .collect();
    let kcert = KCertificate::new(
        claim,
        SupportLocus::default(),
        vec![
            Move {
                multiplier: 1,
                note: "V[λ]/(f) is null-homotopic".into(),
                kind: MoveKind::Homotopy { complex: win.w.clone(), h: homotopy.h.clone() },
            },
            Move {
                multiplier: -1,
                note: "change to the Newton basis".into(),
                kind: MoveKind::Iso {
                    source: win.w.clone(),
                    target: newton.clone(),
                    iso: change_of_basis.clone(),
                },
            },
            Move {
                multiplier: -1,
                note: "Newton filtration with quotients (V, d(z))".into(),
                kind: MoveKind::Filtration {
                    complex: newton.clone(),
                    filtration: filtration.clone(),
                    graded: graded.clone(),
                },
            },
        ],
    );
    Ok(RemarkOutput {
        complexes,
        multiplicities: vec![1; r],
        window: win.w,
        homotopy,
        newton,
        change_of_basis,
        filtration,
        graded,
        verdicts,
        kcert,
    })
}
