use super::lemma1::{block_filtration, graded_verdict, identity_piece, square_zero_verdict};
use crate::algebra::{Poly, Ring};
use crate::complexes::{
    associated_graded, filtration_verify, CurvedComplex, Filtration, Homotopy, SupportLocus, Verdict,
};
use crate::error::{Error, Result};
use crate::kcert::{ClaimTerm, GradedPiece, KCertificate, Move, MoveKind};
use crate::supermod::{Parity, ParityMap, SuperModule};

/// An odd endomorphism `d` of `V` with `d² = -(f_1⋯f_r)·id`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistFamily {
    d: ParityMap,
    fs: Vec<Poly>,
}

impl TwistFamily {
    pub fn new(d: ParityMap, fs: Vec<Poly>) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::InvalidArgument("need at least one factor".into()));
        }
        if d.parity() != Parity::Odd || !d.is_endo() {
            return Err(Error::Parity("d must be an odd endomorphism".into()));
        }
        let ring = d.ring();
        for f in &fs {
            ring.check_same(f.ring())?;
        }
        let product = fs.iter().fold(ring.one(), |acc, f| &acc * f);
        let want = ParityMap::identity(d.source()).scale(&-&product);
        if let Some((i, j, res)) = d.compose(&d)?.first_difference(&want)? {
            return Err(Error::invariant(format!("d² = -(f_1⋯f_r)·id fails at entry ({i}, {j})"), res));
        }
        Ok(TwistFamily { d, fs })
    }

    pub fn module(&self) -> &SuperModule {
        self.d.source()
    }

    pub fn differential(&self) -> &ParityMap {
        &self.d
    }

    pub fn factors(&self) -> &[Poly] {
        &self.fs
    }

    pub fn r(&self) -> usize {
        self.fs.len()
    }

    pub fn ring(&self) -> &Ring {
        self.d.ring()
    }

    /// `f_a ⋯ f_b` over the 1-based inclusive range, `1` when empty.
    fn product(&self, a: usize, b: usize) -> Poly {
        (a..=b).fold(self.ring().one(), |acc, m| &acc * &self.fs[m - 1])
    }

    /// `V ⊕ V[1]` with `d_i(x, x') = (d x + (∏_{j≠i} f_j) x', -d x' + f_i x)`.
    pub fn differential_at(&self, i: usize) -> Result<CurvedComplex> {
        let r = self.r();
        if i == 0 || i > r {
            return Err(Error::InvalidArgument(format!("factor index {i} out of range 1..={r}")));
        }
        let v = self.module();
        let parts = [v.clone(), v.shift()];
        let others = &self.product(1, i - 1) * &self.product(i + 1, r);
        let grid = vec![
            vec![Some(self.d.clone()), Some(ParityMap::shift_identity(&parts[1]).scale(&others))],
            vec![Some(ParityMap::shift_identity(v).scale(&self.fs[i - 1])), Some(self.d.shift().neg())],
        ];
        CurvedComplex::new(ParityMap::block_grid(&parts, &parts, Parity::Odd, &grid)?)
    }
}

#[derive(Clone, Debug)]
pub struct Lemma2Output {
    /// `(V ⊕ V[1], d_i)` for `i = 1, …, r`.
    pub d_list: Vec<CurvedComplex>,
    pub w: CurvedComplex,
    pub filtration: Filtration,
    pub graded: Vec<GradedPiece>,
    pub homotopy: Homotopy,
    pub verdicts: Vec<Verdict>,
    pub kcert: KCertificate,
}

impl Lemma2Output {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Builds `W = (V ⊕ V[1])^{⊕r}` with summands ordered `x_1, x'_1, x_2, …`,
/// its differential `D`, the filtration by blocks and the null-homotopy.
pub fn lemma2_build(fam: &TwistFamily) -> Result<Lemma2Output> {
    let r = fam.r();
    let v = fam.module();
    let v1 = v.shift();
    let parts: Vec<SuperModule> = (0..2 * r).map(|k| if k % 2 == 0 { v.clone() } else { v1.clone() }).collect();
    let x = |i: usize| 2 * (i - 1);
    let xp = |i: usize| 2 * (i - 1) + 1;
    let sigma = ParityMap::shift_identity(v);
    let sigma_inv = ParityMap::shift_identity(&v1);
    let minus_shift_d = fam.d.shift().neg();

    let mut dg = vec![vec![None; 2 * r]; 2 * r];
    let mut hg = vec![vec![None; 2 * r]; 2 * r];
    for i in 1..=r {
        dg[x(i)][x(i)] = Some(fam.d.clone());
        let tail = fam.product(i + 1, r);
        for k in 1..=i {
            dg[x(i)][xp(k)] = Some(sigma_inv.scale(&(&tail * &fam.product(1, k - 1))));
        }
        dg[xp(i)][xp(i)] = Some(minus_shift_d.clone());
        dg[xp(i)][x(i)] = Some(sigma.scale(&fam.fs[i - 1]));
        if i >= 2 {
            dg[xp(i)][x(i - 1)] = Some(sigma.neg());
        }
        if i < r {
            for k in i + 1..=r {
                hg[x(i)][xp(k)] = Some(sigma_inv.scale(&fam.product(i + 1, k - 1)).neg());
            }
        }
    }
    hg[xp(1)][x(r)] = Some(sigma.clone());
    let w = CurvedComplex::new(ParityMap::block_grid(&parts, &parts, Parity::Odd, &dg)?)?;
    let h = ParityMap::block_grid(&parts, &parts, Parity::Odd, &hg)?;

    let d_list: Vec<CurvedComplex> = (1..=r).map(|i| fam.differential_at(i)).collect::<Result<_>>()?;
    let mut verdicts: Vec<Verdict> = d_list
        .iter()
        .enumerate()
        .map(|(i, c)| square_zero_verdict(c, &format!("d_{}", i + 1)))
        .collect();
    verdicts.push(square_zero_verdict(&w, "D"));
    let filtration = block_filtration(&parts, |k| k / 2, r);
    let fv = filtration_verify(&w, &filtration);
    let filtration_ok = fv.pass;
    verdicts.push(fv);
    let mut graded = Vec::with_capacity(r);
    if filtration_ok {
        for (j, target) in d_list.iter().enumerate() {
            let gr = associated_graded(&w, &filtration, j + 1)?;
            graded.push(identity_piece(&gr, target)?);
        }
        verdicts.push(graded_verdict(&w, &filtration, &graded)?);
    } else {
        verdicts.push(Verdict::fail("graded pieces", "filtration is not preserved"));
    }
    let homotopy = Homotopy::null(&w, h);
    verdicts.push(homotopy.verify()?);

    let claim = d_list
        .iter()
        .enumerate()
        .map(|(i, c)| ClaimTerm { coeff: 1, name: format!("(V+V[1], d_{})", i + 1), complex: c.clone() })
        .collect();
    let kcert = KCertificate::new(
        claim,
        SupportLocus::default(),
        vec![
            Move {
                multiplier: -1,
                note: "W has an r-step filtration with quotients (V+V[1], d_i)".into(),
                kind: MoveKind::Filtration { complex: w.clone(), filtration: filtration.clone(), graded: graded.clone() },
            },
            Move {
                multiplier: 1,
                note: "W is null-homotopic".into(),
                kind: MoveKind::Homotopy { complex: w.clone(), h: homotopy.h.clone() },
            },
        ],
    );
    Ok(Lemma2Output { d_list, w, filtration, graded, homotopy, verdicts, kcert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarField;
    use crate::supermod::PolyMatrix;

    fn koszul(ring: &Ring, a: &str, b: &str) -> ParityMap {
        let v = SuperModule::with_ranks(ring, 1, 1, "v");
        let m = |s: &str| PolyMatrix::from_rows(ring, vec![vec![ring.parse(s).unwrap()]], 1).unwrap();
        ParityMap::new(&v, &v, Parity::Odd, m(a), m(b)).unwrap()
    }

    #[test]
    fn rank_one_two_factors() {
        let ring = Ring::new(ScalarField::rationals(), &["x", "y"]).unwrap();
        let d = koszul(&ring, "x", "-y");
        let fam = TwistFamily::new(d, vec![ring.parse("x").unwrap(), ring.parse("y").unwrap()]).unwrap();
        let out = lemma2_build(&fam).unwrap();
        assert!(out.pass(), "{:?}", out.verdicts);
        assert_eq!(out.w.module().ranks(), (4, 4));
        let rep = out.kcert.verify().unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn degenerate_product() {
        let ring = Ring::new(ScalarField::rationals(), &["x"]).unwrap();
        let d = koszul(&ring, "x", "0");
        let fam = TwistFamily::new(d, vec![ring.zero(), ring.zero()]).unwrap();
        let out = lemma2_build(&fam).unwrap();
        assert!(out.pass(), "{:?}", out.verdicts);
    }

    #[test]
    fn wrong_curvature_is_rejected() {
        let ring = Ring::new(ScalarField::rationals(), &["x", "y"]).unwrap();
        let d = koszul(&ring, "x", "y");
        assert!(TwistFamily::new(d, vec![ring.parse("x").unwrap(), ring.parse("y").unwrap()]).is_err());
    }
}
