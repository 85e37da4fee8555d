//! JSON formats for rings, maps, complexes, instances and certificate
//! bundles.
//!
//! Polynomials are strings in the ring's variables (`zeta` denotes the
//! distinguished root of unity of a cyclotomic field). A block matrix is a
//! list of rows of polynomial strings. Parse failures report the line of
//! the offending value in the source text.

mod bundle;
mod instance;

use serde::{Deserialize, Serialize};

pub use bundle::{bundle_from_json, bundle_to_json, BundleFile};
pub use instance::{ConeLiftInstance, Instance, InstanceFile, InstanceSpec};

use crate::algebra::{Poly, Ring, ScalarField};
use crate::complexes::CurvedComplex;
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: String,
    pub vars: Vec<String>,
}

impl RingSpec {
    pub fn of(ring: &Ring) -> Self {
        RingSpec { field: ring.field().to_string(), vars: ring.vars().to_vec() }
    }

    pub fn build(&self) -> Result<Ring> {
        Ring::new(ScalarField::parse(&self.field)?, &self.vars)
    }
}

/// Basis labels of one parity, or just a rank (labels are then generated).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Rank(usize),
    Labels(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub even: LabelSpec,
    pub odd: LabelSpec,
}

impl ModuleSpec {
    pub fn of(m: &SuperModule) -> Self {
        ModuleSpec {
            even: LabelSpec::Labels(m.labels(Parity::Even).to_vec()),
            odd: LabelSpec::Labels(m.labels(Parity::Odd).to_vec()),
        }
    }

    pub fn build(&self, ring: &Ring) -> Result<SuperModule> {
        let labels = |s: &LabelSpec, sign: char| match s {
            LabelSpec::Rank(n) => (0..*n).map(|i| format!("v{sign}{i}")).collect(),
            LabelSpec::Labels(l) => l.clone(),
        };
        SuperModule::new(ring, labels(&self.even, '+'), labels(&self.odd, '-'))
    }
}

/// The two blocks of a parity map: `from_even` maps the even part of the
/// source, `from_odd` the odd part. Rows index the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksSpec {
    pub from_even: Vec<Vec<String>>,
    pub from_odd: Vec<Vec<String>>,
}

/// A parity map with its modules. `target` defaults to `source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub parity: Parity,
    pub source: ModuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ModuleSpec>,
    #[serde(flatten)]
    pub blocks: BlocksSpec,
}

/// Source text used to attach line numbers to errors.
#[derive(Clone, Copy, Default)]
pub struct Source<'a>(pub Option<&'a str>);

impl Source<'_> {
    /// 1-based line of the first occurrence of the JSON string `value`.
    fn line_of(&self, value: &str) -> Option<usize> {
        let text = self.0?;
        let quoted = serde_json::to_string(value).ok()?;
        let at = text.find(&quoted)?;
        Some(text[..at].matches('\n').count() + 1)
    }

    pub(crate) fn error(&self, value: &str, what: &str, e: impl std::fmt::Display) -> Error {
        match self.line_of(value) {
            Some(l) => Error::Parse(format!("line {l}: {what} `{value}`: {e}")),
            None => Error::Parse(format!("{what} `{value}`: {e}")),
        }
    }

    pub(crate) fn poly(&self, ring: &Ring, s: &str) -> Result<Poly> {
        ring.parse(s).map_err(|e| self.error(s, "polynomial", e))
    }

    pub(crate) fn polys(&self, ring: &Ring, v: &[String]) -> Result<Vec<Poly>> {
        v.iter().map(|s| self.poly(ring, s)).collect()
    }

    pub(crate) fn matrix(&self, ring: &Ring, rows: &[Vec<String>], nrows: usize, ncols: usize, what: &str) -> Result<PolyMatrix> {
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            let got = rows.iter().map(Vec::len).collect::<Vec<_>>();
            let shape = Error::Shape(format!("{what} must be {nrows} x {ncols}, got row lengths {got:?}"));
            // Point at the first entry when there is one.
            return Err(match rows.iter().flatten().next().and_then(|s| self.line_of(s)) {
                Some(l) => Error::Parse(format!("line {l}: {shape}")),
                None => shape,
            });
        }
        let rows = rows.iter().map(|r| self.polys(ring, r)).collect::<Result<_>>()?;
        PolyMatrix::from_rows(ring, rows, ncols)
    }

    /// Blocks between known modules.
    pub(crate) fn blocks(
        &self,
        ring: &Ring,
        b: &BlocksSpec,
        source: &SuperModule,
        target: &SuperModule,
        parity: Parity,
    ) -> Result<ParityMap> {
        let shape = |p: Parity| (target.rank(p + parity), source.rank(p));
        let (r0, c0) = shape(Parity::Even);
        let (r1, c1) = shape(Parity::Odd);
        let even = self.matrix(ring, &b.from_even, r0, c0, "from_even block")?;
        let odd = self.matrix(ring, &b.from_odd, r1, c1, "from_odd block")?;
        ParityMap::new(source, target, parity, even, odd)
    }

    pub(crate) fn map(&self, ring: &Ring, m: &MapSpec) -> Result<ParityMap> {
        let source = m.source.build(ring)?;
        let target = match &m.target {
            Some(t) => t.build(ring)?,
            None => source.clone(),
        };
        self.blocks(ring, &m.blocks, &source, &target, m.parity)
    }

    pub(crate) fn complex(&self, ring: &Ring, m: &MapSpec) -> Result<CurvedComplex> {
        let d = self.map(ring, m)?;
        if !d.is_endo() {
            return Err(Error::Shape("a differential must be an endomorphism".into()));
        }
        CurvedComplex::new(d)
    }
}

pub fn poly_strings(v: &[Poly]) -> Vec<String> {
    v.iter().map(Poly::to_string).collect()
}

pub fn matrix_strings(m: &PolyMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| poly_strings(r)).collect()
}

pub fn blocks_spec(f: &ParityMap) -> BlocksSpec {
    BlocksSpec {
        from_even: matrix_strings(f.block(Parity::Even)),
        from_odd: matrix_strings(f.block(Parity::Odd)),
    }
}

pub fn map_spec(f: &ParityMap) -> MapSpec {
    MapSpec {
        parity: f.parity(),
        source: ModuleSpec::of(f.source()),
        target: (!f.is_endo()).then(|| ModuleSpec::of(f.target())),
        blocks: blocks_spec(f),
    }
}

/// Parse a standalone complex file `{"ring": …, "d": …}`.
pub fn complex_from_json(text: &str) -> Result<CurvedComplex> {
    match instance::parse_instance(text)? {
        Instance::Complex(c) => Ok(c),
        _ => Err(Error::Malformed("expected an instance of kind `complex`".into())),
    }
}
