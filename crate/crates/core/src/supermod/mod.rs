//! ℤ/2-graded free modules over a polynomial ring and parity-homogeneous
//! maps between them.
//!
//! A module's full basis lists the even vectors first, then the odd ones.
//! Matrices act on column vectors, so `f.compose(&g)` is `f ∘ g`.

mod matrix;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use matrix::PolyMatrix;

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn from_bit(b: usize) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

struct ModuleData {
    ring: Ring,
    labels: [Vec<String>; 2],
}

/// A free ℤ/2-graded module with labelled basis vectors.
#[derive(Clone)]
pub struct SuperModule(Arc<ModuleData>);

impl SuperModule {
    pub fn new(ring: &Ring, even: Vec<String>, odd: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in even.iter().chain(&odd) {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(SuperModule(Arc::new(ModuleData { ring: ring.clone(), labels: [even, odd] })))
    }

    /// Module with generated labels `{prefix}+i` and `{prefix}-i`.
    pub fn with_ranks(ring: &Ring, even: usize, odd: usize, prefix: &str) -> Self {
        let e = (0..even).map(|i| format!("{prefix}+{i}")).collect();
        let o = (0..odd).map(|i| format!("{prefix}-{i}")).collect();
        Self::new(ring, e, o).expect("generated labels are distinct")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::with_ranks(ring, 0, 0, "")
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn rank(&self, p: Parity) -> usize {
        self.0.labels[p.bit()].len()
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.rank(Parity::Even), self.rank(Parity::Odd))
    }

    pub fn total_rank(&self) -> usize {
        self.rank(Parity::Even) + self.rank(Parity::Odd)
    }

    pub fn labels(&self, p: Parity) -> &[String] {
        &self.0.labels[p.bit()]
    }

    pub fn label(&self, full: usize) -> &str {
        let (p, i) = self.split_index(full);
        &self.0.labels[p.bit()][i]
    }

    pub fn full_index(&self, p: Parity, i: usize) -> usize {
        match p {
            Parity::Even => i,
            Parity::Odd => self.rank(Parity::Even) + i,
        }
    }

    pub fn split_index(&self, full: usize) -> (Parity, usize) {
        let e = self.rank(Parity::Even);
        if full < e {
            (Parity::Even, full)
        } else {
            (Parity::Odd, full - e)
        }
    }

    pub fn parity_of(&self, full: usize) -> Parity {
        self.split_index(full).0
    }

    /// Same ring and ranks; labels are ignored.
    pub fn same_shape(&self, other: &SuperModule) -> bool {
        self.0.ring.same(&other.0.ring) && self.ranks() == other.ranks()
    }

    pub(crate) fn check_shape(&self, other: &SuperModule, what: &str) -> Result<()> {
        self.0.ring.check_same(&other.0.ring)?;
        if self.ranks() != other.ranks() {
            return Err(Error::Shape(format!(
                "{what}: module of rank {:?} vs {:?}",
                self.ranks(),
                other.ranks()
            )));
        }
        Ok(())
    }

    /// Parity shift `M[1]`: even and odd parts swap.
    pub fn shift(&self) -> SuperModule {
        let [e, o] = self.0.labels.clone();
        SuperModule(Arc::new(ModuleData { ring: self.0.ring.clone(), labels: [o, e] }))
    }

    pub fn dual(&self) -> SuperModule {
        let dualize = |ls: &[String]| {
            ls.iter()
                .map(|l| l.strip_suffix('^').map_or_else(|| format!("{l}^"), str::to_string))
                .collect()
        };
        SuperModule(Arc::new(ModuleData {
            ring: self.0.ring.clone(),
            labels: [dualize(&self.0.labels[0]), dualize(&self.0.labels[1])],
        }))
    }

    pub fn direct_sum(&self, other: &SuperModule) -> Result<SuperModule> {
        SuperModule::direct_sum_all(&[self.clone(), other.clone()])
    }

    /// `M_0 ⊕ M_1 ⊕ …`. Labels are prefixed with the summand index when they
    /// would otherwise collide.
    pub fn direct_sum_all(summands: &[SuperModule]) -> Result<SuperModule> {
        let ring = match summands.first() {
            Some(m) => m.ring().clone(),
            None => return Err(Error::InvalidArgument("empty direct sum".into())),
        };
        for m in summands {
            ring.check_same(m.ring())?;
        }
        let mut seen = HashSet::new();
        let clash = summands
            .iter()
            .flat_map(|m| m.0.labels.iter().flatten())
            .any(|l| !seen.insert(l.clone()));
        let mut labels: [Vec<String>; 2] = [Vec::new(), Vec::new()];
        for p in Parity::BOTH {
            for (k, m) in summands.iter().enumerate() {
                for l in m.labels(p) {
                    labels[p.bit()].push(if clash { format!("{k}.{l}") } else { l.clone() });
                }
            }
        }
        let [e, o] = labels;
        SuperModule::new(&ring, e, o)
    }

    /// Full indices in `M_0 ⊕ M_1 ⊕ …` of the full basis of summand `k`.
    pub fn summand_indices(summands: &[SuperModule], k: usize) -> Vec<usize> {
        let total_even: usize = summands.iter().map(|m| m.rank(Parity::Even)).sum();
        let even_before: usize = summands[..k].iter().map(|m| m.rank(Parity::Even)).sum();
        let odd_before: usize = summands[..k].iter().map(|m| m.rank(Parity::Odd)).sum();
        let m = &summands[k];
        (0..m.rank(Parity::Even))
            .map(|i| even_before + i)
            .chain((0..m.rank(Parity::Odd)).map(|i| total_even + odd_before + i))
            .collect()
    }

    /// Basis of `self ⊗ other`: pairs `(i, j)` of full indices in
    /// lexicographic order, even pairs first. Returns the module and, for
    /// each pair in lexicographic order, its full index in the tensor product.
    pub fn tensor(&self, other: &SuperModule) -> Result<(SuperModule, Vec<usize>)> {
        self.ring().check_same(other.ring())?;
        let mut labels: [Vec<String>; 2] = [Vec::new(), Vec::new()];
        let mut slot = Vec::with_capacity(self.total_rank() * other.total_rank());
        for i in 0..self.total_rank() {
            for j in 0..other.total_rank() {
                let p = self.parity_of(i) + other.parity_of(j);
                slot.push((p, labels[p.bit()].len()));
                labels[p.bit()].push(format!("{}⊗{}", self.label(i), other.label(j)));
            }
        }
        let n_even = labels[0].len();
        let index = slot
            .into_iter()
            .map(|(p, k)| if p == Parity::Even { k } else { n_even + k })
            .collect();
        let [e, o] = labels;
        Ok((SuperModule::new(self.ring(), e, o)?, index))
    }

    /// Submodule spanned by the given full basis vectors (kept in the given
    /// order within each parity).
    pub fn restrict(&self, full: &[usize]) -> SuperModule {
        let mut labels: [Vec<String>; 2] = [Vec::new(), Vec::new()];
        for &i in full {
            labels[self.parity_of(i).bit()].push(self.label(i).to_string());
        }
        let [e, o] = labels;
        SuperModule::new(self.ring(), e, o).expect("sub-basis labels are distinct")
    }

    /// Same ranks with every label rewritten by `f` (which must keep them
    /// distinct).
    pub fn map_labels(&self, f: impl Fn(&str) -> String) -> Result<SuperModule> {
        let [e, o] = &self.0.labels;
        SuperModule::new(
            self.ring(),
            e.iter().map(|l| f(l)).collect(),
            o.iter().map(|l| f(l)).collect(),
        )
    }

    /// Module with the same ranks and labels over another ring.
    pub fn with_ring(&self, ring: &Ring) -> SuperModule {
        SuperModule(Arc::new(ModuleData { ring: ring.clone(), labels: self.0.labels.clone() }))
    }
}

impl PartialEq for SuperModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring.same(&other.0.ring) && self.0.labels == other.0.labels)
    }
}

impl fmt::Debug for SuperModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, o) = self.ranks();
        write!(f, "SuperModule({e}|{o})")
    }
}

/// A parity-homogeneous map. `block(p)` sends `source_p` to
/// `target_{p + parity}`.
#[derive(Clone, PartialEq)]
pub struct ParityMap {
    source: SuperModule,
    target: SuperModule,
    parity: Parity,
    blocks: [PolyMatrix; 2],
}

impl ParityMap {
    pub fn new(
        source: &SuperModule,
        target: &SuperModule,
        parity: Parity,
        from_even: PolyMatrix,
        from_odd: PolyMatrix,
    ) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        for (p, b) in Parity::BOTH.into_iter().zip([&from_even, &from_odd]) {
            source.ring().check_same(b.ring())?;
            let want = (target.rank(p + parity), source.rank(p));
            if (b.nrows(), b.ncols()) != want {
                return Err(Error::Shape(format!(
                    "{parity} map block from {p} part is {}x{}, expected {}x{}",
                    b.nrows(),
                    b.ncols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(ParityMap {
            source: source.clone(),
            target: target.clone(),
            parity,
            blocks: [from_even, from_odd],
        })
    }

    pub fn zero(source: &SuperModule, target: &SuperModule, parity: Parity) -> Self {
        let ring = source.ring();
        let blk = |p: Parity| PolyMatrix::zeros(ring, target.rank(p + parity), source.rank(p));
        ParityMap {
            source: source.clone(),
            target: target.clone(),
            parity,
            blocks: [blk(Parity::Even), blk(Parity::Odd)],
        }
    }

    pub fn identity(m: &SuperModule) -> Self {
        let ring = m.ring();
        ParityMap {
            source: m.clone(),
            target: m.clone(),
            parity: Parity::Even,
            blocks: [
                PolyMatrix::identity(ring, m.rank(Parity::Even)),
                PolyMatrix::identity(ring, m.rank(Parity::Odd)),
            ],
        }
    }

    /// The odd identification `M → M[1]`.
    pub fn shift_identity(m: &SuperModule) -> Self {
        let s = m.shift();
        let ring = m.ring();
        ParityMap {
            source: m.clone(),
            target: s,
            parity: Parity::Odd,
            blocks: [
                PolyMatrix::identity(ring, m.rank(Parity::Even)),
                PolyMatrix::identity(ring, m.rank(Parity::Odd)),
            ],
        }
    }

    /// Build from a full `target × source` matrix. Entries outside the
    /// blocks allowed by `parity` must be zero.
    pub fn from_full(
        source: &SuperModule,
        target: &SuperModule,
        parity: Parity,
        full: &PolyMatrix,
    ) -> Result<Self> {
        if full.nrows() != target.total_rank() || full.ncols() != source.total_rank() {
            return Err(Error::Shape(format!(
                "full matrix is {}x{}, expected {}x{}",
                full.nrows(),
                full.ncols(),
                target.total_rank(),
                source.total_rank()
            )));
        }
        for (i, j, p) in full.entries() {
            if !p.is_zero() && target.parity_of(i) != source.parity_of(j) + parity {
                return Err(Error::Parity(format!(
                    "{parity} map has nonzero entry {p} at ({i}, {j}) joining {} to {}",
                    source.parity_of(j),
                    target.parity_of(i)
                )));
            }
        }
        let idx = |m: &SuperModule, p: Parity| -> Vec<usize> {
            (0..m.rank(p)).map(|i| m.full_index(p, i)).collect()
        };
        let blk = |p: Parity| full.submatrix(&idx(target, p + parity), &idx(source, p));
        Self::new(source, target, parity, blk(Parity::Even), blk(Parity::Odd))
    }

    pub fn to_full(&self) -> PolyMatrix {
        let mut out =
            PolyMatrix::zeros(self.ring(), self.target.total_rank(), self.source.total_rank());
        for p in Parity::BOTH {
            let r0 = self.target.full_index(p + self.parity, 0);
            let c0 = self.source.full_index(p, 0);
            out.paste(r0, c0, &self.blocks[p.bit()]);
        }
        out
    }

    pub fn source(&self) -> &SuperModule {
        &self.source
    }

    pub fn target(&self) -> &SuperModule {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    pub fn block(&self, p: Parity) -> &PolyMatrix {
        &self.blocks[p.bit()]
    }

    pub fn is_endo(&self) -> bool {
        self.source.same_shape(&self.target)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(PolyMatrix::is_zero)
    }

    /// Matrix entry from full source index `j` to full target index `i`.
    pub fn entry(&self, i: usize, j: usize) -> Poly {
        let (pj, jj) = self.source.split_index(j);
        let (pi, ii) = self.target.split_index(i);
        if pi != pj + self.parity {
            return self.ring().zero();
        }
        self.blocks[pj.bit()].get(ii, jj).clone()
    }

    /// Overwrite the entry at full indices `(i, j)`. Fails if the position
    /// is forbidden by the parity.
    pub fn set_entry(&mut self, i: usize, j: usize, value: Poly) -> Result<()> {
        let (pj, jj) = self.source.split_index(j);
        let (pi, ii) = self.target.split_index(i);
        if pi != pj + self.parity {
            return Err(Error::Parity(format!(
                "position ({i}, {j}) is not in a {} block",
                self.parity
            )));
        }
        self.blocks[pj.bit()].set(ii, jj, value);
        Ok(())
    }

    /// Positions `(i, j)` in full indices allowed by the parity.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in Parity::BOTH {
            for jj in 0..self.source.rank(p) {
                for ii in 0..self.target.rank(p + self.parity) {
                    out.push((
                        self.target.full_index(p + self.parity, ii),
                        self.source.full_index(p, jj),
                    ));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ParityMap) -> Result<ParityMap> {
        g.target.check_shape(&self.source, "compose")?;
        let block = |p: Parity| self.blocks[(p + g.parity).bit()].mul(&g.blocks[p.bit()]);
        Ok(ParityMap {
            source: g.source.clone(),
            target: self.target.clone(),
            parity: self.parity + g.parity,
            blocks: [block(Parity::Even)?, block(Parity::Odd)?],
        })
    }

    fn check_parallel(&self, other: &ParityMap) -> Result<()> {
        self.source.check_shape(&other.source, "source")?;
        self.target.check_shape(&other.target, "target")?;
        if self.parity != other.parity {
            return Err(Error::Parity(format!(
                "cannot combine {} and {} maps",
                self.parity, other.parity
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ParityMap) -> Result<ParityMap> {
        self.check_parallel(other)?;
        Ok(ParityMap {
            blocks: [self.blocks[0].add(&other.blocks[0])?, self.blocks[1].add(&other.blocks[1])?],
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &ParityMap) -> Result<ParityMap> {
        self.check_parallel(other)?;
        Ok(ParityMap {
            blocks: [self.blocks[0].sub(&other.blocks[0])?, self.blocks[1].sub(&other.blocks[1])?],
            ..self.clone()
        })
    }

    pub fn neg(&self) -> ParityMap {
        self.map_blocks(|b| b.neg())
    }

    pub fn scale(&self, c: &Poly) -> ParityMap {
        self.map_blocks(|b| b.scale(c))
    }

    fn map_blocks(&self, f: impl Fn(&PolyMatrix) -> PolyMatrix) -> ParityMap {
        ParityMap { blocks: [f(&self.blocks[0]), f(&self.blocks[1])], ..self.clone() }
    }

    /// Apply a fallible function to every entry, landing in `ring`.
    pub fn try_map_entries(
        &self,
        ring: &Ring,
        f: impl Fn(&Poly) -> Result<Poly>,
    ) -> Result<ParityMap> {
        Ok(ParityMap {
            source: self.source.with_ring(ring),
            target: self.target.with_ring(ring),
            parity: self.parity,
            blocks: [
                self.blocks[0].try_map_into(ring, &f)?,
                self.blocks[1].try_map_into(ring, &f)?,
            ],
        })
    }

    pub fn substitute(&self, var: usize, value: &Poly) -> Result<ParityMap> {
        self.try_map_entries(self.ring(), |p| p.substitute(var, value))
    }

    pub fn embed(&self, ring: &Ring) -> Result<ParityMap> {
        self.try_map_entries(ring, |p| p.embed(ring))
    }

    /// Same blocks with new source and target modules of identical shape.
    pub fn relabel(&self, source: &SuperModule, target: &SuperModule) -> Result<ParityMap> {
        self.source.check_shape(source, "relabel source")?;
        self.target.check_shape(target, "relabel target")?;
        Ok(ParityMap { source: source.clone(), target: target.clone(), ..self.clone() })
    }

    pub fn direct_sum(&self, g: &ParityMap) -> Result<ParityMap> {
        let s = [self.source.clone(), g.source.clone()];
        let t = [self.target.clone(), g.target.clone()];
        let grid = vec![vec![Some(self.clone()), None], vec![None, Some(g.clone())]];
        ParityMap::block_grid(&s, &t, self.parity, &grid)
    }

    /// Assemble a map `⊕ sources → ⊕ targets` from a grid indexed
    /// `[target][source]`; `None` cells are zero.
    pub fn block_grid(
        sources: &[SuperModule],
        targets: &[SuperModule],
        parity: Parity,
        grid: &[Vec<Option<ParityMap>>],
    ) -> Result<ParityMap> {
        let src = SuperModule::direct_sum_all(sources)?;
        let tgt = SuperModule::direct_sum_all(targets)?;
        if grid.len() != targets.len() {
            return Err(Error::Shape(format!(
                "grid has {} rows for {} targets",
                grid.len(),
                targets.len()
            )));
        }
        let mut full = PolyMatrix::zeros(src.ring(), tgt.total_rank(), src.total_rank());
        for (a, row) in grid.iter().enumerate() {
            if row.len() != sources.len() {
                return Err(Error::Shape(format!(
                    "grid row {a} has {} cells for {} sources",
                    row.len(),
                    sources.len()
                )));
            }
            let ti = SuperModule::summand_indices(targets, a);
            for (b, cell) in row.iter().enumerate() {
                let Some(m) = cell else { continue };
                m.source.check_shape(&sources[b], "grid cell source")?;
                m.target.check_shape(&targets[a], "grid cell target")?;
                if m.parity != parity {
                    return Err(Error::Parity(format!("grid cell ({a}, {b}) is {}", m.parity)));
                }
                let si = SuperModule::summand_indices(sources, b);
                for p in Parity::BOTH {
                    let blk = m.block(p);
                    for (i, j, e) in blk.entries() {
                        if !e.is_zero() {
                            let ii = ti[m.target.full_index(p + parity, i)];
                            let jj = si[m.source.full_index(p, j)];
                            full.set(ii, jj, e.clone());
                        }
                    }
                }
            }
        }
        ParityMap::from_full(&src, &tgt, parity, &full)
    }

    /// The component `source summand b → target summand a` of a map between
    /// direct sums.
    pub fn grid_cell(
        &self,
        sources: &[SuperModule],
        targets: &[SuperModule],
        a: usize,
        b: usize,
    ) -> Result<ParityMap> {
        let ti = SuperModule::summand_indices(targets, a);
        let si = SuperModule::summand_indices(sources, b);
        let sub = self.to_full().submatrix(&ti, &si);
        ParityMap::from_full(&sources[b], &targets[a], self.parity, &sub)
    }

    /// `f[1]`: same blocks between the shifted modules. No sign is applied.
    pub fn shift(&self) -> ParityMap {
        ParityMap {
            source: self.source.shift(),
            target: self.target.shift(),
            parity: self.parity,
            blocks: [self.blocks[1].clone(), self.blocks[0].clone()],
        }
    }

    /// Transpose `T^∨ → S^∨`.
    pub fn dual(&self) -> ParityMap {
        let block = |p: Parity| self.blocks[(p + self.parity).bit()].transpose();
        ParityMap {
            source: self.target.dual(),
            target: self.source.dual(),
            parity: self.parity,
            blocks: [block(Parity::Even), block(Parity::Odd)],
        }
    }

    /// `(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)`.
    pub fn tensor(&self, g: &ParityMap) -> Result<ParityMap> {
        let (src, sidx) = self.source.tensor(&g.source)?;
        let (tgt, tidx) = self.target.tensor(&g.target)?;
        let ns = g.source.total_rank();
        let nt = g.target.total_rank();
        let ff = self.to_full();
        let gf = g.to_full();
        let mut full = PolyMatrix::zeros(src.ring(), tgt.total_rank(), src.total_rank());
        for (a, j, fa) in ff.entries() {
            if fa.is_zero() {
                continue;
            }
            let sign = g.parity.sign_with(self.source.parity_of(j));
            for (b, l, gb) in gf.entries() {
                if gb.is_zero() {
                    continue;
                }
                let mut e = fa * gb;
                if sign < 0 {
                    e = -e;
                }
                full.set(tidx[a * nt + b], sidx[j * ns + l], e);
            }
        }
        ParityMap::from_full(&src, &tgt, self.parity + g.parity, &full)
    }

    /// Restriction to sub-bases given by full indices.
    pub fn restrict(&self, source_idx: &[usize], target_idx: &[usize]) -> Result<ParityMap> {
        let sub = self.to_full().submatrix(target_idx, source_idx);
        ParityMap::from_full(
            &self.source.restrict(source_idx),
            &self.target.restrict(target_idx),
            self.parity,
            &sub,
        )
    }

    /// First entry (full indices, row-major) where the maps differ, with
    /// `self - other` there. Shapes must agree.
    pub fn first_difference(&self, other: &ParityMap) -> Result<Option<(usize, usize, Poly)>> {
        self.source.check_shape(&other.source, "source")?;
        self.target.check_shape(&other.target, "target")?;
        Ok(self.to_full().first_difference(&other.to_full()))
    }
}

impl fmt::Debug for ParityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} map {:?} -> {:?} ", self.parity, self.source, self.target)?;
        fmt::Debug::fmt(&self.to_full(), f)
    }
}
