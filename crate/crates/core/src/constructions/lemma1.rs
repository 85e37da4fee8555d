use crate::algebra::{Poly, Ring, LAMBDA};
use crate::complexes::{
    associated_graded, filtration_verify, CurvedComplex, Filtration, Homotopy, SupportLocus,
    Verdict,
};
use crate::error::{Error, Result};
use crate::kcert::{check_iso, ClaimTerm, GradedPiece, Iso, KCertificate, Move, MoveKind};
use crate::supermod::{Parity, ParityMap, SuperModule};

/// An odd endomorphism `d(λ) = d₀ + d₁λ + … + d_{r-1}λ^{r-1}` of `V` with
/// `d(λ)² = λ^r·id`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaFamily {
    d: ParityMap,
    r: u32,
    lambda: usize,
}

/// Index of `λ` in the ring, or an error naming the missing variable.
pub(crate) fn lambda_index(ring: &Ring) -> Result<usize> {
    ring.var_index(LAMBDA).map_err(|_| {
        Error::InvalidArgument(format!("the ring has no `{LAMBDA}` variable"))
    })
}

/// `λ`-degree of a map, or `None` for the zero map.
pub(crate) fn lambda_degree(d: &ParityMap, lambda: usize) -> Option<u32> {
    Parity::BOTH
        .iter()
        .flat_map(|&p| d.block(p).entries().filter_map(|(_, _, e)| e.degree_in(lambda)).collect::<Vec<_>>())
        .max()
}

/// The coefficient maps `d_0, …, d_{n-1}` of `d` in powers of `λ`.
pub(crate) fn lambda_coefficients(d: &ParityMap, lambda: usize, n: usize) -> Result<Vec<ParityMap>> {
    (0..n)
        .map(|i| {
            d.try_map_entries(d.ring(), |e| {
                Ok(e.coefficients_in(lambda).get(i).cloned().unwrap_or_else(|| e.ring().zero()))
            })
        })
        .collect()
}

impl LambdaFamily {
    /// Validates `r ≥ 2`, `deg_λ d ≤ r - 1` and `d(λ)² = λ^r·id`.
    pub fn new(d: ParityMap, r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("need r >= 2, got {r}")));
        }
        let lambda = lambda_index(d.ring())?;
        let expected = d.ring().var_at(lambda).pow(r);
        check_monic_square(&d, lambda, r, &expected)?;
        Ok(LambdaFamily { d, r, lambda })
    }

    /// Assemble `d(λ) = Σ coeffs[i]·λ^i`.
    pub fn from_coefficients(coeffs: &[ParityMap]) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("no coefficient maps".into()))?;
        let lambda = lambda_index(first.ring())?;
        let l = first.ring().var_at(lambda);
        let mut d = ParityMap::zero(first.source(), first.target(), Parity::Odd);
        for (i, c) in coeffs.iter().enumerate() {
            d = d.add(&c.scale(&l.pow(i as u32)))?;
        }
        Self::new(d, coeffs.len() as u32)
    }

    pub fn module(&self) -> &SuperModule {
        self.d.source()
    }

    pub fn differential(&self) -> &ParityMap {
        &self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn ring(&self) -> &Ring {
        self.d.ring()
    }

    pub fn coefficients(&self) -> Result<Vec<ParityMap>> {
        lambda_coefficients(&self.d, self.lambda, self.r as usize)
    }

    /// `(V, d₀)`.
    pub fn special_fiber(&self) -> Result<CurvedComplex> {
        let d0 = self.d.substitute(self.lambda, &self.ring().zero())?;
        CurvedComplex::with_curvature(d0, &self.ring().zero())
    }
}

/// Check that `d` is odd, has `λ`-degree below `r`, and squares to `f·id`.
pub(crate) fn check_monic_square(d: &ParityMap, lambda: usize, r: u32, f: &Poly) -> Result<()> {
    if d.parity() != Parity::Odd || !d.is_endo() {
        return Err(Error::Parity("d(λ) must be an odd endomorphism".into()));
    }
    if let Some(deg) = lambda_degree(d, lambda) {
        if deg >= r {
            return Err(Error::invariant(
                format!("λ-degree of d(λ) must be at most {}", r - 1),
                format!("degree {deg}"),
            ));
        }
    }
    let sq = d.compose(d)?;
    let want = ParityMap::identity(d.source()).scale(f);
    if let Some((i, j, res)) = sq.first_difference(&want)? {
        return Err(Error::invariant(
            format!("d(λ)² = ({f})·id fails at entry ({i}, {j})"),
            res,
        ));
    }
    Ok(())
}

/// `V ⊗ span{b_0, …, b_{r-1}}` with copy `k` labelled by `tag(k)`.
pub(crate) fn copies(v: &SuperModule, r: usize, tag: impl Fn(usize) -> String) -> Result<Vec<SuperModule>> {
    (0..r).map(|k| v.map_labels(|l| format!("{l}·{}", tag(k)))).collect()
}

/// The window `V[λ]/(f)` on the basis `λ^0, …, λ^{r-1}` for `f` monic of
/// degree `r` in `λ`, with `d_W` induced by `d(λ)` and the homotopy `h`
/// given by the quotient: `d(λ)v = d_W v + f·h(v)` for `v` in the window.
pub(crate) struct Window {
    pub parts: Vec<SuperModule>,
    pub w: CurvedComplex,
    pub h: ParityMap,
}

pub(crate) fn monic_window(d: &ParityMap, lambda: usize, f: &Poly) -> Result<Window> {
    let ring = d.ring();
    let fc = f.coefficients_in(lambda);
    let r = fc.len().checked_sub(1).filter(|&r| r >= 1).ok_or_else(|| {
        Error::InvalidArgument(format!("{f} must have positive degree in {LAMBDA}"))
    })?;
    let coeffs = lambda_coefficients(d, lambda, r)?;
    let l = ring.var_at(lambda);
    // λ^n = quot_n·f + rem_n for n ≤ 2r - 2, as coefficient lists in λ.
    let divided: Vec<(Vec<Poly>, Vec<Poly>)> = (0..2 * r - 1)
        .map(|n| {
            let (q, rem) = l.pow(n as u32).div_rem_monic_in(lambda, f)?;
            Ok((q.coefficients_in(lambda), rem.coefficients_in(lambda)))
        })
        .collect::<Result<_>>()?;
    let v = d.source();
    let parts = copies(v, r, |k| format!("{LAMBDA}^{k}"))?;
    let zero = ring.zero();
    let mut dw_grid = vec![vec![None; r]; r];
    let mut h_grid = vec![vec![None; r]; r];
    for m in 0..r {
        for col in 0..r {
            let mut dw = ParityMap::zero(v, v, Parity::Odd);
            let mut h = ParityMap::zero(v, v, Parity::Odd);
            for (i, di) in coeffs.iter().enumerate() {
                if di.is_zero() {
                    continue;
                }
                let (q, rem) = &divided[i + col];
                let cr = rem.get(m).unwrap_or(&zero);
                if !cr.is_zero() {
                    dw = dw.add(&di.scale(cr))?;
                }
                let cq = q.get(m).unwrap_or(&zero);
                if !cq.is_zero() {
                    h = h.add(&di.scale(cq))?;
                }
            }
            if !dw.is_zero() {
                dw_grid[m][col] = Some(dw.relabel(&parts[col], &parts[m])?);
            }
            if !h.is_zero() {
                h_grid[m][col] = Some(h.relabel(&parts[col], &parts[m])?);
            }
        }
    }
    let dw = ParityMap::block_grid(&parts, &parts, Parity::Odd, &dw_grid)?;
    let h = ParityMap::block_grid(&parts, &parts, Parity::Odd, &h_grid)?;
    let w = CurvedComplex::new(dw)?;
    Ok(Window { parts, w, h })
}

/// Filtration of a direct sum by summand blocks: `F^j` is spanned by the
/// summands with block index `≥ j - 1`, where `block[k]` gives the block
/// of summand `k`.
pub(crate) fn block_filtration(parts: &[SuperModule], block: impl Fn(usize) -> usize, nblocks: usize) -> Filtration {
    let steps = (0..nblocks)
        .map(|j| {
            (0..parts.len())
                .filter(|&k| block(k) >= j)
                .flat_map(|k| SuperModule::summand_indices(parts, k))
                .collect()
        })
        .collect();
    Filtration::new(steps)
}

/// The identity between a graded piece (on its sub-basis) and `target`,
/// whose basis is in the same order.
pub(crate) fn identity_piece(gr: &CurvedComplex, target: &CurvedComplex) -> Result<GradedPiece> {
    let map = ParityMap::identity(gr.module()).relabel(gr.module(), target.module())?;
    let inverse = ParityMap::identity(target.module()).relabel(target.module(), gr.module())?;
    Ok(GradedPiece { complex: target.clone(), iso: Iso { map, inverse } })
}

/// Everything produced for a λ-family.
#[derive(Clone, Debug)]
pub struct Lemma1Output {
    pub w: CurvedComplex,
    pub filtration: Filtration,
    pub graded: Vec<GradedPiece>,
    pub homotopy: Homotopy,
    /// `d_W² = 0`, filtration invariance, `gr^j ≅ (V, d₀)`, `d_W h + h d_W = id`.
    pub verdicts: Vec<Verdict>,
    pub kcert: KCertificate,
}

impl Lemma1Output {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Verdict that a complex has curvature zero.
pub(crate) fn square_zero_verdict(c: &CurvedComplex, what: &str) -> Verdict {
    if c.is_complex() {
        Verdict::pass(format!("{what}² = 0"))
    } else {
        Verdict::fail(format!("{what}² = 0"), format!("square is ({})·id", c.curvature()))
    }
}

/// Verdict that each graded piece matches through its recorded iso.
pub(crate) fn graded_verdict(c: &CurvedComplex, f: &Filtration, pieces: &[GradedPiece]) -> Result<Verdict> {
    for (j, piece) in pieces.iter().enumerate() {
        let gr = associated_graded(c, f, j + 1)?;
        if let Some(bad) = check_iso(&gr, &piece.complex, &piece.iso)?.into_iter().find(|v| !v.pass) {
            return Ok(Verdict { check: format!("gr^{} iso: {}", j + 1, bad.check), ..bad });
        }
    }
    Ok(Verdict::pass("graded pieces"))
}

pub fn lemma1_build(fam: &LambdaFamily) -> Result<Lemma1Output> {
    let ring = fam.ring();
    let f = ring.var_at(fam.lambda).pow(fam.r);
    let win = monic_window(&fam.d, fam.lambda, &f)?;
    let r = fam.r as usize;
    let filtration = block_filtration(&win.parts, |k| k, r);
    let v0 = fam.special_fiber()?;
    let mut verdicts = vec![square_zero_verdict(&win.w, "d_W")];
    let fv = filtration_verify(&win.w, &filtration);
    let filtration_ok = fv.pass;
    verdicts.push(fv);
    let mut graded = Vec::with_capacity(r);
    if filtration_ok {
        for j in 1..=r {
            let gr = associated_graded(&win.w, &filtration, j)?;
            graded.push(identity_piece(&gr, &v0)?);
        }
        verdicts.push(graded_verdict(&win.w, &filtration, &graded)?);
    } else {
        verdicts.push(Verdict::fail("graded pieces", "filtration is not preserved"));
    }
    let homotopy = Homotopy::null(&win.w, win.h);
    verdicts.push(homotopy.verify()?);
    let kcert = KCertificate::new(
        vec![ClaimTerm { coeff: fam.r as i64, name: "(V, d0)".into(), complex: v0 }],
        SupportLocus::default(),
        vec![
            Move {
                multiplier: -1,
                note: "W has an r-step filtration with quotients (V, d0)".into(),
                kind: MoveKind::Filtration {
                    complex: win.w.clone(),
                    filtration: filtration.clone(),
                    graded: graded.clone(),
                },
            },
            Move {
                multiplier: 1,
                note: "W is null-homotopic".into(),
                kind: MoveKind::Homotopy { complex: win.w.clone(), h: homotopy.h.clone() },
            },
        ],
    );
    Ok(Lemma1Output { w: win.w, filtration, graded, homotopy, verdicts, kcert })
}
