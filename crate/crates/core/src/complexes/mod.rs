//! Curved ℤ/2-graded complexes, chain maps, homotopies and cones.

mod exactness;
mod filtration;

use serde::{Deserialize, Serialize};

pub use exactness::{strict_exactness_sample, ExactnessReport, SamplePoint, SupportLocus};
pub use filtration::{associated_graded, filtration_verify, Filtration};

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap, SuperModule};

/// A failing matrix entry, in full basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFailure {
    pub row: usize,
    pub col: usize,
    pub residual: String,
}

/// Outcome of an exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<EntryFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>) -> Self {
        Verdict { check: check.into(), pass: true, entry: None, message: None }
    }

    pub fn fail(check: impl Into<String>, message: impl Into<String>) -> Self {
        Verdict { check: check.into(), pass: false, entry: None, message: Some(message.into()) }
    }

    /// Pass iff `diff` is `None`; otherwise fail at the reported entry.
    pub fn from_difference(check: impl Into<String>, diff: Option<(usize, usize, Poly)>) -> Self {
        match diff {
            None => Self::pass(check),
            Some((row, col, p)) => Verdict {
                check: check.into(),
                pass: false,
                entry: Some(EntryFailure { row, col, residual: p.to_string() }),
                message: None,
            },
        }
    }

    pub fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self
    }

    /// Turn a failing verdict into an invariant error.
    pub fn into_result(self) -> Result<()> {
        if self.pass {
            return Ok(());
        }
        let residual = match (&self.entry, &self.message) {
            (Some(e), _) => format!("entry ({}, {}) = {}", e.row, e.col, e.residual),
            (None, Some(m)) => m.clone(),
            (None, None) => String::new(),
        };
        Err(Error::invariant(self.check, residual))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.check, if self.pass { "pass" } else { "FAIL" })?;
        if let Some(e) = &self.entry {
            write!(f, " at entry ({}, {}), residual {}", e.row, e.col, e.residual)?;
        }
        if let Some(m) = &self.message {
            write!(f, " ({m})")?;
        }
        Ok(())
    }
}

/// A module with an odd endomorphism `d` and a polynomial `c` with
/// `d² = c·id`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvedComplex {
    d: ParityMap,
    curvature: Poly,
}

/// Compute `d²` and return the complex if it is a scalar multiple of the
/// identity.
pub fn curvature_check(module: &SuperModule, d: &ParityMap) -> Result<CurvedComplex> {
    if d.parity() != Parity::Odd {
        return Err(Error::Parity("a differential must be odd".into()));
    }
    module.check_shape(d.source(), "differential source")?;
    module.check_shape(d.target(), "differential target")?;
    let d2 = d.compose(d)?.to_full();
    let ring = module.ring();
    let c = if d2.nrows() == 0 { ring.zero() } else { d2.get(0, 0).clone() };
    for (i, j, p) in d2.entries() {
        let expected = if i == j { &c } else { &ring.zero() };
        if p != expected {
            return Err(Error::NotScalarSquare {
                row: i,
                col: j,
                entry: p.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(CurvedComplex { d: d.relabel(module, module)?, curvature: c })
}

impl CurvedComplex {
    pub fn new(d: ParityMap) -> Result<Self> {
        curvature_check(&d.source().clone(), &d)
    }

    /// Build and require the curvature to equal `c` (rank-zero modules accept
    /// any `c`).
    pub fn with_curvature(d: ParityMap, c: &Poly) -> Result<Self> {
        let cx = Self::new(d)?;
        if cx.module().total_rank() == 0 {
            return Ok(CurvedComplex { curvature: c.clone(), ..cx });
        }
        if &cx.curvature != c {
            return Err(Error::CurvatureMismatch(cx.curvature.to_string(), c.to_string()));
        }
        Ok(cx)
    }

    pub fn zero(module: &SuperModule, curvature: &Poly) -> Self {
        CurvedComplex {
            d: ParityMap::zero(module, module, Parity::Odd),
            curvature: curvature.clone(),
        }
    }

    pub fn module(&self) -> &SuperModule {
        self.d.source()
    }

    pub fn differential(&self) -> &ParityMap {
        &self.d
    }

    pub fn curvature(&self) -> &Poly {
        &self.curvature
    }

    pub fn ring(&self) -> &Ring {
        self.d.ring()
    }

    pub fn is_complex(&self) -> bool {
        self.curvature.is_zero()
    }

    /// `C[1]` with differential `-d`.
    pub fn shift(&self) -> CurvedComplex {
        CurvedComplex { d: self.d.shift().neg(), curvature: self.curvature.clone() }
    }

    pub fn direct_sum(&self, other: &CurvedComplex) -> Result<CurvedComplex> {
        self.check_curvature(other)?;
        let d = self.d.direct_sum(&other.d)?;
        Ok(CurvedComplex { d, curvature: self.curvature.clone() })
    }

    pub fn direct_sum_all(parts: &[CurvedComplex]) -> Result<CurvedComplex> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        for p in parts {
            first.check_curvature(p)?;
        }
        let modules: Vec<_> = parts.iter().map(|p| p.module().clone()).collect();
        let grid: Vec<Vec<Option<ParityMap>>> = (0..parts.len())
            .map(|a| (0..parts.len()).map(|b| (a == b).then(|| parts[a].d.clone())).collect())
            .collect();
        let d = ParityMap::block_grid(&modules, &modules, Parity::Odd, &grid)?;
        Ok(CurvedComplex { d, curvature: first.curvature.clone() })
    }

    /// Tensor product; curvatures add.
    pub fn tensor(&self, other: &CurvedComplex) -> Result<CurvedComplex> {
        let id_a = ParityMap::identity(self.module());
        let id_b = ParityMap::identity(other.module());
        let d = self.d.tensor(&id_b)?.add(&id_a.tensor(&other.d)?)?;
        let c = self.curvature.try_add(&other.curvature)?;
        CurvedComplex::with_curvature(d, &c)
    }

    /// Same ranks, differential and curvature; labels are ignored.
    pub fn same_structure(&self, other: &CurvedComplex) -> bool {
        self.module().same_shape(other.module())
            && self.curvature == other.curvature
            && self.d.to_full() == other.d.to_full()
    }

    pub(crate) fn check_curvature(&self, other: &CurvedComplex) -> Result<()> {
        if self.curvature != other.curvature {
            return Err(Error::CurvatureMismatch(
                self.curvature.to_string(),
                other.curvature.to_string(),
            ));
        }
        Ok(())
    }

    /// Replace the module labels, keeping the differential.
    pub fn relabel(&self, module: &SuperModule) -> Result<CurvedComplex> {
        Ok(CurvedComplex { d: self.d.relabel(module, module)?, curvature: self.curvature.clone() })
    }
}

/// Check `f ∘ d_C = (-1)^{|f|} d_{C'} ∘ f`.
pub fn is_chain_map(f: &ParityMap, c: &CurvedComplex, c2: &CurvedComplex) -> Result<Verdict> {
    c.module().check_shape(f.source(), "chain map source")?;
    c2.module().check_shape(f.target(), "chain map target")?;
    if c.curvature != c2.curvature {
        return Ok(Verdict::fail(
            "chain map",
            format!("curvatures differ: {} vs {}", c.curvature, c2.curvature),
        ));
    }
    let lhs = f.compose(c.differential())?;
    let mut rhs = c2.differential().compose(f)?;
    if f.parity() == Parity::Odd {
        rhs = rhs.neg();
    }
    Ok(Verdict::from_difference("chain map", lhs.first_difference(&rhs)?))
}

/// Check `d_{C'} h + h d_C = f - g` for maps `C → C'`.
pub fn is_homotopy_between(
    c: &CurvedComplex,
    c2: &CurvedComplex,
    h: &ParityMap,
    f: &ParityMap,
    g: &ParityMap,
) -> Result<Verdict> {
    c.module().check_shape(h.source(), "homotopy source")?;
    c2.module().check_shape(h.target(), "homotopy target")?;
    if h.parity() == f.parity() || f.parity() != g.parity() {
        return Err(Error::Parity(format!(
            "homotopy of parity {} between maps of parity {} and {}",
            h.parity(),
            f.parity(),
            g.parity()
        )));
    }
    let lhs = c2.differential().compose(h)?.add(&h.compose(c.differential())?)?;
    let rhs = f.sub(g)?;
    Ok(Verdict::from_difference("homotopy", lhs.first_difference(&rhs)?))
}

/// Check `d h + h d = f - g` on a single complex.
pub fn is_homotopy(c: &CurvedComplex, h: &ParityMap, f: &ParityMap, g: &ParityMap) -> Result<Verdict> {
    is_homotopy_between(c, c, h, f, g)
}

/// An even chain map between curved complexes of equal curvature, or an odd
/// one when the parity is declared.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: CurvedComplex,
    target: CurvedComplex,
    map: ParityMap,
}

impl ChainMap {
    pub fn new(source: &CurvedComplex, target: &CurvedComplex, map: ParityMap) -> Result<Self> {
        is_chain_map(&map, source, target)?.into_result()?;
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            map: map.relabel(source.module(), target.module())?,
        })
    }

    pub fn identity(c: &CurvedComplex) -> Self {
        ChainMap { source: c.clone(), target: c.clone(), map: ParityMap::identity(c.module()) }
    }

    pub fn zero(source: &CurvedComplex, target: &CurvedComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            map: ParityMap::zero(source.module(), target.module(), Parity::Even),
        }
    }

    pub fn source(&self) -> &CurvedComplex {
        &self.source
    }

    pub fn target(&self) -> &CurvedComplex {
        &self.target
    }

    pub fn map(&self) -> &ParityMap {
        &self.map
    }

    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        ChainMap::new(&g.source, &self.target, self.map.compose(&g.map)?)
    }
}

/// A homotopy `h` with `d' h + h d = f - g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy {
    pub source: CurvedComplex,
    pub target: CurvedComplex,
    pub h: ParityMap,
    pub f: ParityMap,
    pub g: ParityMap,
}

impl Homotopy {
    /// A homotopy on `c` from the identity to zero.
    pub fn null(c: &CurvedComplex, h: ParityMap) -> Self {
        let m = c.module();
        Homotopy {
            source: c.clone(),
            target: c.clone(),
            h,
            f: ParityMap::identity(m),
            g: ParityMap::zero(m, m, Parity::Even),
        }
    }

    pub fn verify(&self) -> Result<Verdict> {
        is_homotopy_between(&self.source, &self.target, &self.h, &self.f, &self.g)
    }
}

/// Mapping cone of an even chain map `f: A → B`, with the canonical maps
/// `i: B → Cone(f)` and `π: Cone(f) → A[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: CurvedComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `B ⊕ A[1]` with differential `[[d_B, f], [0, -d_A]]`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    if f.map.parity() != Parity::Even {
        return Err(Error::Parity("cone of an odd map".into()));
    }
    let a = &f.source;
    let b = &f.target;
    b.check_curvature(a)?;
    let a1 = a.shift();
    let parts = [b.module().clone(), a1.module().clone()];
    // f viewed as an odd map A[1] → B.
    let f_from_shift = f.map.compose(&ParityMap::shift_identity(a1.module()))?;
    let grid = vec![
        vec![Some(b.differential().clone()), Some(f_from_shift)],
        vec![None, Some(a1.differential().clone())],
    ];
    let d = ParityMap::block_grid(&parts, &parts, Parity::Odd, &grid)?;
    let complex = CurvedComplex::with_curvature(d, b.curvature())?;
    let m = complex.module().clone();
    let incl = ParityMap::block_grid(
        &[b.module().clone()],
        &parts,
        Parity::Even,
        &[vec![Some(ParityMap::identity(b.module()))], vec![None]],
    )?
    .relabel(b.module(), &m)?;
    let proj = ParityMap::block_grid(
        &parts,
        &[a1.module().clone()],
        Parity::Even,
        &[vec![None, Some(ParityMap::identity(a1.module()))]],
    )?
    .relabel(&m, a1.module())?;
    Ok(Cone {
        inclusion: ChainMap::new(b, &complex, incl)?,
        projection: ChainMap::new(&complex, &a1, proj)?,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarField;
    use crate::supermod::PolyMatrix;

    fn ring() -> Ring {
        Ring::new(ScalarField::rationals(), &["x", "y", "lambda"]).unwrap()
    }

    fn mat(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        let n = rows.first().map_or(0, |x| x.len());
        let rows = rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect();
        PolyMatrix::from_rows(r, rows, n).unwrap()
    }

    fn koszul(r: &Ring, a: &str, b: &str) -> CurvedComplex {
        let v = SuperModule::with_ranks(r, 1, 1, "v");
        let d = ParityMap::new(&v, &v, Parity::Odd, mat(r, &[&[a]]), mat(r, &[&[b]])).unwrap();
        CurvedComplex::new(d).unwrap()
    }

    #[test]
    fn curvature_examples() {
        let r = ring();
        let v = SuperModule::with_ranks(&r, 1, 1, "v");
        let zero = curvature_check(&v, &ParityMap::zero(&v, &v, Parity::Odd)).unwrap();
        assert!(zero.curvature().is_zero());
        assert_eq!(koszul(&r, "x", "-y").curvature(), &r.parse("-x*y").unwrap());

        for k in 2..=5u32 {
            let w = SuperModule::with_ranks(&r, 2, 2, "w");
            let b = [
                format!("lambda^{}", k - 1),
                if k >= 2 { format!("-x*lambda^{}", k - 2) } else { "0".into() },
            ];
            let d = ParityMap::new(
                &w,
                &w,
                Parity::Odd,
                mat(&r, &[&["lambda", "x"], &["0", "lambda"]]),
                mat(&r, &[&[&b[0], &b[1]], &["0", &b[0]]]),
            )
            .unwrap();
            let c = curvature_check(&w, &d).unwrap();
            assert_eq!(c.curvature(), &r.var("lambda").unwrap().pow(k));
        }
    }

    #[test]
    fn non_scalar_square_reports_entry() {
        let r = ring();
        let v = SuperModule::with_ranks(&r, 1, 1, "v");
        let d = ParityMap::new(&v, &v, Parity::Odd, mat(&r, &[&["x"]]), mat(&r, &[&["y"]])).unwrap();
        assert!(curvature_check(&v, &d).is_ok());
        let w = SuperModule::with_ranks(&r, 2, 1, "w");
        let d = ParityMap::new(&w, &w, Parity::Odd, mat(&r, &[&["1", "0"]]), mat(&r, &[&["1"], &["0"]]))
            .unwrap();
        match curvature_check(&w, &d) {
            Err(Error::NotScalarSquare { row: 1, col: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn homotopy_soundness() {
        let r = ring();
        let c = koszul(&r, "1", "0");
        let m = c.module();
        let id = ParityMap::identity(m);
        let zero = ParityMap::zero(m, m, Parity::Odd);
        assert!(is_homotopy(&c, &zero, &id, &id).unwrap().pass);
        // d = [[0,0],[1,0]], h = [[0,1],[0,0]]: dh + hd = id.
        let h = ParityMap::new(m, m, Parity::Odd, mat(&r, &[&["0"]]), mat(&r, &[&["1"]])).unwrap();
        assert!(Homotopy::null(&c, h.clone()).verify().unwrap().pass);
        let mut bad = h;
        bad.set_entry(0, 1, r.int(2)).unwrap();
        let v = Homotopy::null(&c, bad).verify().unwrap();
        assert!(!v.pass);
        assert!(v.entry.is_some());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let r = ring();
        let a = koszul(&r, "x", "-y");
        let cn = cone(&ChainMap::identity(&a)).unwrap();
        assert_eq!(cn.complex.curvature(), a.curvature());
        // h = [[0,0],[id,0]] from B into A[1].
        let m = cn.complex.module().clone();
        let parts = [a.module().clone(), a.module().shift()];
        let id_to_shift = ParityMap::shift_identity(a.module());
        let h = ParityMap::block_grid(&parts, &parts, Parity::Odd, &[vec![None, None], vec![Some(id_to_shift), None]])
            .unwrap()
            .relabel(&m, &m)
            .unwrap();
        assert!(Homotopy::null(&cn.complex, h).verify().unwrap().pass);
        let pi_i = cn.projection.compose(&cn.inclusion).unwrap();
        assert!(pi_i.map().is_zero());
    }

    #[test]
    fn cone_of_zero_is_direct_sum() {
        let r = ring();
        let a = koszul(&r, "x", "-y");
        let b = koszul(&r, "y", "-x");
        let cn = cone(&ChainMap::zero(&a, &b)).unwrap();
        let sum = b.direct_sum(&a.shift()).unwrap();
        assert!(cn.complex.same_structure(&sum));
    }

    #[test]
    fn shifted_complex_negates() {
        let r = ring();
        let a = koszul(&r, "x", "-y");
        let s = a.shift();
        assert_eq!(s.differential().block(Parity::Even), &mat(&r, &[&["y"]]));
        assert_eq!(s.curvature(), a.curvature());
    }
}
