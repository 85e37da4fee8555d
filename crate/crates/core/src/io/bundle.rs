use serde::{Deserialize, Serialize};

use super::{blocks_spec, map_spec, poly_strings, BlocksSpec, MapSpec, RingSpec, Source};
use crate::complexes::{CurvedComplex, Filtration, SupportLocus};
use crate::error::{Error, Result};
use crate::kcert::{ClaimTerm, GradedPiece, Iso, KCertificate, Move, MoveKind};
use crate::supermod::{Parity, ParityMap};

pub const BUNDLE_FORMAT: &str = "mfcert-bundle/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub coeff: i64,
    pub name: String,
    /// Index into the complex table.
    pub complex: usize,
}

/// A graded piece: the target complex and the two maps between it and the
/// restriction of the filtered complex to the slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSpec {
    pub complex: usize,
    pub map: BlocksSpec,
    pub inverse: BlocksSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MoveSpec {
    Filtration {
        multiplier: i64,
        note: String,
        complex: usize,
        steps: Vec<Vec<usize>>,
        graded: Vec<PieceSpec>,
    },
    Homotopy {
        multiplier: i64,
        note: String,
        complex: usize,
        h: BlocksSpec,
    },
    Iso {
        multiplier: i64,
        note: String,
        source: usize,
        target: usize,
        map: BlocksSpec,
        inverse: BlocksSpec,
    },
}

/// A certificate with its complexes stored once in a table and referenced
/// by index. Maps inside moves are stored as blocks; their modules are
/// those of the complexes they connect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub format: String,
    pub ring: RingSpec,
    /// Generators of the support locus `Z`.
    pub locus: Vec<String>,
    pub complexes: Vec<MapSpec>,
    pub claim: Vec<ClaimSpec>,
    pub moves: Vec<MoveSpec>,
}

struct Table<'a> {
    items: Vec<&'a CurvedComplex>,
}

impl<'a> Table<'a> {
    fn index(&mut self, c: &'a CurvedComplex) -> usize {
        if let Some(i) = self.items.iter().position(|d| *d == c) {
            i
        } else {
            self.items.push(c);
            self.items.len() - 1
        }
    }
}

impl BundleFile {
    pub fn of(cert: &KCertificate) -> Result<Self> {
        let ring = cert
            .claim
            .iter()
            .map(|t| t.complex.ring())
            .chain(cert.moves.iter().map(|m| match &m.kind {
                MoveKind::Filtration { complex, .. } | MoveKind::Homotopy { complex, .. } => complex.ring(),
                MoveKind::Iso { source, .. } => source.ring(),
            }))
            .next()
            .or_else(|| cert.locus.generators.first().map(|g| g.ring()))
            .ok_or_else(|| Error::InvalidArgument("cannot serialize an empty certificate without a ring".into()))?;
        let mut table = Table { items: Vec::new() };
        let claim = cert
            .claim
            .iter()
            .map(|t| ClaimSpec { coeff: t.coeff, name: t.name.clone(), complex: table.index(&t.complex) })
            .collect();
        let moves = cert
            .moves
            .iter()
            .map(|m| {
                let (multiplier, note) = (m.multiplier, m.note.clone());
                match &m.kind {
                    MoveKind::Filtration { complex, filtration, graded } => MoveSpec::Filtration {
                        multiplier,
                        note,
                        complex: table.index(complex),
                        steps: filtration.steps().to_vec(),
                        graded: graded
                            .iter()
                            .map(|g| PieceSpec {
                                complex: table.index(&g.complex),
                                map: blocks_spec(&g.iso.map),
                                inverse: blocks_spec(&g.iso.inverse),
                            })
                            .collect(),
                    },
                    MoveKind::Homotopy { complex, h } => {
                        MoveSpec::Homotopy { multiplier, note, complex: table.index(complex), h: blocks_spec(h) }
                    }
                    MoveKind::Iso { source, target, iso } => MoveSpec::Iso {
                        multiplier,
                        note,
                        source: table.index(source),
                        target: table.index(target),
                        map: blocks_spec(&iso.map),
                        inverse: blocks_spec(&iso.inverse),
                    },
                }
            })
            .collect();
        Ok(BundleFile {
            format: BUNDLE_FORMAT.into(),
            ring: RingSpec::of(ring),
            locus: poly_strings(&cert.locus.generators),
            complexes: table.items.iter().map(|c| map_spec(c.differential())).collect(),
            claim,
            moves,
        })
    }

    /// Indices of the moves that reference complex `k`.
    fn users(&self, k: usize) -> Vec<usize> {
        self.moves
            .iter()
            .enumerate()
            .filter(|(_, m)| match m {
                MoveSpec::Filtration { complex, graded, .. } => {
                    *complex == k || graded.iter().any(|g| g.complex == k)
                }
                MoveSpec::Homotopy { complex, .. } => *complex == k,
                MoveSpec::Iso { source, target, .. } => *source == k || *target == k,
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn build(&self, src: Source) -> Result<KCertificate> {
        if self.format != BUNDLE_FORMAT {
            return Err(Error::Malformed(format!("unknown bundle format `{}`", self.format)));
        }
        let ring = self.ring.build()?;
        let complexes: Vec<CurvedComplex> = self
            .complexes
            .iter()
            .enumerate()
            .map(|(k, spec)| {
                src.complex(&ring, spec).map_err(|e| {
                    e.context(format!("complex {k} (used by moves {:?})", self.users(k)))
                })
            })
            .collect::<Result<_>>()?;
        let get = |k: usize| {
            complexes
                .get(k)
                .ok_or_else(|| Error::Malformed(format!("complex index {k} out of range")))
        };
        let claim = self
            .claim
            .iter()
            .map(|t| Ok(ClaimTerm { coeff: t.coeff, name: t.name.clone(), complex: get(t.complex)?.clone() }))
            .collect::<Result<_>>()?;
        let moves = self
            .moves
            .iter()
            .enumerate()
            .map(|(i, m)| {
                build_move(&src, &ring, m, &get).map_err(|e| e.context(format!("move {i}")))
            })
            .collect::<Result<_>>()?;
        let locus = SupportLocus::new(src.polys(&ring, &self.locus)?);
        Ok(KCertificate::new(claim, locus, moves))
    }
}

fn build_move<'a>(
    src: &Source,
    ring: &crate::algebra::Ring,
    m: &MoveSpec,
    get: &impl Fn(usize) -> Result<&'a CurvedComplex>,
) -> Result<Move> {
    let (multiplier, note, kind) = match m {
        MoveSpec::Filtration { multiplier, note, complex, steps, graded } => {
            let c = get(*complex)?;
            let n = c.module().total_rank();
            if let Some(bad) = steps.iter().flatten().find(|&&i| i >= n) {
                return Err(Error::Malformed(format!("filtration index {bad} out of range for rank {n}")));
            }
            let filtration = Filtration::new(steps.clone());
            let pieces = graded
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    let target = get(p.complex)?;
                    let slice = if j < filtration.len() { filtration.slice(j + 1)? } else { Vec::new() };
                    let gr = c.module().restrict(&slice);
                    let map = src.blocks(ring, &p.map, &gr, target.module(), Parity::Even)?;
                    let inverse = src.blocks(ring, &p.inverse, target.module(), &gr, Parity::Even)?;
                    Ok(GradedPiece { complex: target.clone(), iso: Iso { map, inverse } })
                })
                .collect::<Result<_>>()?;
            (multiplier, note, MoveKind::Filtration { complex: c.clone(), filtration, graded: pieces })
        }
        MoveSpec::Homotopy { multiplier, note, complex, h } => {
            let c = get(*complex)?;
            let h: ParityMap = src.blocks(ring, h, c.module(), c.module(), Parity::Odd)?;
            (multiplier, note, MoveKind::Homotopy { complex: c.clone(), h })
        }
        MoveSpec::Iso { multiplier, note, source, target, map, inverse } => {
            let (s, t) = (get(*source)?, get(*target)?);
            let map = src.blocks(ring, map, s.module(), t.module(), Parity::Even)?;
            let inverse = src.blocks(ring, inverse, t.module(), s.module(), Parity::Even)?;
            (multiplier, note, MoveKind::Iso { source: s.clone(), target: t.clone(), iso: Iso { map, inverse } })
        }
    };
    Ok(Move { multiplier: *multiplier, note: note.clone(), kind })
}

pub fn bundle_to_json(cert: &KCertificate) -> Result<String> {
    Ok(serde_json::to_string_pretty(&BundleFile::of(cert)?)? + "\n")
}

pub fn bundle_from_json(text: &str) -> Result<KCertificate> {
    let file: BundleFile = serde_json::from_str(text)?;
    file.build(Source(Some(text)))
}
