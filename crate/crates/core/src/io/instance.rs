use serde::{Deserialize, Serialize};

use super::{map_spec, matrix_strings, poly_strings, MapSpec, RingSpec, Source};
use crate::algebra::Ring;
use crate::complexes::{ChainMap, CurvedComplex};
use crate::constructions::{exponent_vectors, LambdaFamily, RamondData, RemarkFamily, TauData, TwistFamily};
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap};

/// Two composable chain maps `g: A → B`, `f: B → C` and homotopies from
/// `f∘g` to zero. A second homotopy is optional.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeLiftInstance {
    pub g: ChainMap,
    pub f: ChainMap,
    pub h: ParityMap,
    pub h2: Option<ParityMap>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    LambdaFamily(LambdaFamily),
    RemarkFamily(RemarkFamily),
    TwistFamily(TwistFamily),
    TauData(TauData),
    RamondData(RamondData),
    ConeLift(ConeLiftInstance),
    Complex(CurvedComplex),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSpec {
    LambdaFamily {
        ring: RingSpec,
        r: u32,
        d: MapSpec,
    },
    RemarkFamily {
        ring: RingSpec,
        f: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        roots: Option<Vec<String>>,
        d: MapSpec,
    },
    TwistFamily {
        ring: RingSpec,
        factors: Vec<String>,
        d: MapSpec,
    },
    TauData {
        ring: RingSpec,
        coords: Vec<String>,
        r: u32,
        d_tilde: Vec<Vec<String>>,
        nu: Vec<Vec<String>>,
    },
    RamondData {
        ring: RingSpec,
        coords: Vec<String>,
        r: u32,
        d: Vec<Vec<String>>,
        nu: Vec<Vec<String>>,
        e1: Vec<String>,
        e2: Vec<String>,
    },
    ConeLift {
        ring: RingSpec,
        a: MapSpec,
        b: MapSpec,
        c: MapSpec,
        g: MapSpec,
        f: MapSpec,
        h: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h2: Option<MapSpec>,
    },
    Complex {
        ring: RingSpec,
        d: MapSpec,
    },
}

/// An instance with optional provenance from the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(flatten)]
    pub spec: InstanceSpec,
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

impl InstanceSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceSpec::LambdaFamily { .. } => "lambda-family",
            InstanceSpec::RemarkFamily { .. } => "remark-family",
            InstanceSpec::TwistFamily { .. } => "twist-family",
            InstanceSpec::TauData { .. } => "tau-data",
            InstanceSpec::RamondData { .. } => "ramond-data",
            InstanceSpec::ConeLift { .. } => "cone-lift",
            InstanceSpec::Complex { .. } => "complex",
        }
    }

    pub fn of(inst: &Instance) -> Self {
        match inst {
            Instance::LambdaFamily(f) => InstanceSpec::LambdaFamily {
                ring: RingSpec::of(f.ring()),
                r: f.r(),
                d: map_spec(f.differential()),
            },
            Instance::RemarkFamily(f) => InstanceSpec::RemarkFamily {
                ring: RingSpec::of(f.ring()),
                f: f.f().to_string(),
                roots: Some(poly_strings(f.roots())),
                d: map_spec(f.differential()),
            },
            Instance::TwistFamily(t) => InstanceSpec::TwistFamily {
                ring: RingSpec::of(t.ring()),
                factors: poly_strings(t.factors()),
                d: map_spec(t.differential()),
            },
            Instance::TauData(t) => InstanceSpec::TauData {
                ring: RingSpec::of(t.ring()),
                coords: t.coords(),
                r: t.r(),
                d_tilde: matrix_strings(t.d_tilde()),
                nu: matrix_strings(t.nu()),
            },
            Instance::RamondData(t) => InstanceSpec::RamondData {
                ring: RingSpec::of(t.ring()),
                coords: t.coords(),
                r: t.r(),
                d: matrix_strings(t.d()),
                nu: matrix_strings(t.nu()),
                e1: poly_strings(t.e1()),
                e2: poly_strings(t.e2()),
            },
            Instance::ConeLift(c) => InstanceSpec::ConeLift {
                ring: RingSpec::of(c.g.map().ring()),
                a: map_spec(c.g.source().differential()),
                b: map_spec(c.f.source().differential()),
                c: map_spec(c.f.target().differential()),
                g: map_spec(c.g.map()),
                f: map_spec(c.f.map()),
                h: map_spec(&c.h),
                h2: c.h2.as_ref().map(map_spec),
            },
            Instance::Complex(c) => InstanceSpec::Complex {
                ring: RingSpec::of(c.ring()),
                d: map_spec(c.differential()),
            },
        }
    }

    fn ring_mut(&mut self) -> &mut RingSpec {
        match self {
            InstanceSpec::LambdaFamily { ring, .. }
            | InstanceSpec::RemarkFamily { ring, .. }
            | InstanceSpec::TwistFamily { ring, .. }
            | InstanceSpec::TauData { ring, .. }
            | InstanceSpec::RamondData { ring, .. }
            | InstanceSpec::ConeLift { ring, .. }
            | InstanceSpec::Complex { ring, .. } => ring,
        }
    }

    fn ring(&self) -> &RingSpec {
        match self {
            InstanceSpec::LambdaFamily { ring, .. }
            | InstanceSpec::RemarkFamily { ring, .. }
            | InstanceSpec::TwistFamily { ring, .. }
            | InstanceSpec::TauData { ring, .. }
            | InstanceSpec::RamondData { ring, .. }
            | InstanceSpec::ConeLift { ring, .. }
            | InstanceSpec::Complex { ring, .. } => ring,
        }
    }

    /// Build and validate. `TauData` is loaded without the zero-composition
    /// check so that the checker can report it.
    pub fn build(&self, src: Source) -> Result<Instance> {
        let ring: Ring = self.ring().build()?;
        Ok(match self {
            InstanceSpec::LambdaFamily { r, d, .. } => {
                Instance::LambdaFamily(LambdaFamily::new(src.map(&ring, d)?, *r)?)
            }
            InstanceSpec::RemarkFamily { f, roots, d, .. } => {
                let roots = roots.as_ref().map(|z| src.polys(&ring, z)).transpose()?;
                Instance::RemarkFamily(RemarkFamily::new(src.map(&ring, d)?, src.poly(&ring, f)?, roots)?)
            }
            InstanceSpec::TwistFamily { factors, d, .. } => {
                Instance::TwistFamily(TwistFamily::new(src.map(&ring, d)?, src.polys(&ring, factors)?)?)
            }
            InstanceSpec::TauData { coords, r, d_tilde, nu, .. } => {
                let n1 = d_tilde.len();
                let d = src.matrix(&ring, d_tilde, n1, coords.len() + 1, "d_tilde")?;
                let ncols = exponent_vectors(coords.len() + 1, r.saturating_sub(1)).len();
                let nu = src.matrix(&ring, nu, n1, ncols, "nu")?;
                Instance::TauData(TauData::new_unchecked(&ring, &strs(coords), *r, d, nu)?)
            }
            InstanceSpec::RamondData { coords, r, d, nu, e1, e2, .. } => {
                let n1 = d.len();
                let d = src.matrix(&ring, d, n1, coords.len(), "d")?;
                let ncols = exponent_vectors(coords.len(), r.saturating_sub(1)).len();
                let nu = src.matrix(&ring, nu, n1, ncols, "nu")?;
                Instance::RamondData(RamondData::new(
                    &ring,
                    &strs(coords),
                    *r,
                    d,
                    nu,
                    src.polys(&ring, e1)?,
                    src.polys(&ring, e2)?,
                )?)
            }
            InstanceSpec::ConeLift { a, b, c, g, f, h, h2, .. } => {
                let (a, b, c) = (src.complex(&ring, a)?, src.complex(&ring, b)?, src.complex(&ring, c)?);
                let g = ChainMap::new(&a, &b, src.map(&ring, g)?)?;
                let f = ChainMap::new(&b, &c, src.map(&ring, f)?)?;
                let h = src.map(&ring, h)?;
                let h2 = h2.as_ref().map(|m| src.map(&ring, m)).transpose()?;
                for m in std::iter::once(&h).chain(&h2) {
                    if m.parity() != Parity::Odd {
                        return Err(Error::Parity("homotopies must be odd".into()));
                    }
                }
                Instance::ConeLift(ConeLiftInstance { g, f, h, h2 })
            }
            InstanceSpec::Complex { d, .. } => Instance::Complex(src.complex(&ring, d)?),
        })
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn kind(&self) -> &'static str {
        self.spec.kind()
    }

    /// Replace the coefficient field, e.g. `"Q"` or `"cyclotomic:6"`.
    pub fn set_field(&mut self, field: &str) {
        self.spec.ring_mut().field = field.to_string();
    }

    /// Build and validate; `text` is the source the file was parsed from.
    pub fn build(&self, text: Option<&str>) -> Result<Instance> {
        self.spec.build(Source(text))
    }

    /// The differential of a kind that carries one, built without checking
    /// any invariant beyond its shape and parity.
    pub fn differential(&self, text: Option<&str>) -> Result<ParityMap> {
        let ring = self.spec.ring().build()?;
        match &self.spec {
            InstanceSpec::LambdaFamily { d, .. }
            | InstanceSpec::RemarkFamily { d, .. }
            | InstanceSpec::TwistFamily { d, .. }
            | InstanceSpec::Complex { d, .. } => Source(text).map(&ring, d),
            other => Err(Error::Malformed(format!("instances of kind `{}` carry no differential", other.kind()))),
        }
    }
}

pub(crate) fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.spec.build(Source(Some(text)))
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        InstanceSpec::of(self).kind()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_instance(text)
    }

    pub fn to_json(&self, seed: Option<u64>, size: Option<usize>) -> Result<String> {
        let file = InstanceFile { seed, size, spec: InstanceSpec::of(self) };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }
}
