//! Spinor modules `Λ•C₁^∨` and the Clifford action of sections of
//! `C₁ ⊕ C₁^∨`.
//!
//! A basis vector of `Λ•C₁^∨` is a subset `I` of `{0, …, n-1}`, stored as a
//! bitmask. Subsets are ordered lexicographically as increasing sequences,
//! even subsets first.

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorModule {
    base_rank: usize,
    masks: Vec<u32>,
    positions: Vec<usize>,
    module: SuperModule,
}

fn sorted_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask >> k & 1 == 1).collect()
}

impl SpinorModule {
    pub const MAX_BASE_RANK: usize = 12;

    pub fn new(ring: &Ring, base_rank: usize) -> Result<Self> {
        if base_rank > Self::MAX_BASE_RANK {
            return Err(Error::InvalidArgument(format!(
                "spinor base rank {base_rank} exceeds {}",
                Self::MAX_BASE_RANK
            )));
        }
        let mut subsets: Vec<(Vec<usize>, u32)> = (0..1u32 << base_rank)
            .map(|m| (sorted_indices(m), m))
            .collect();
        subsets.sort();
        let (even, odd): (Vec<_>, Vec<_>) =
            subsets.into_iter().partition(|(s, _)| s.len() % 2 == 0);
        let label = |s: &[usize]| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.iter().map(|k| format!("e{k}^")).collect::<Vec<_>>().join("∧")
            }
        };
        let module = SuperModule::new(
            ring,
            even.iter().map(|(s, _)| label(s)).collect(),
            odd.iter().map(|(s, _)| label(s)).collect(),
        )?;
        let masks: Vec<u32> = even.iter().chain(&odd).map(|&(_, m)| m).collect();
        let mut positions = vec![0; masks.len()];
        for (i, &m) in masks.iter().enumerate() {
            positions[m as usize] = i;
        }
        Ok(SpinorModule { base_rank, masks, positions, module })
    }

    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    pub fn module(&self) -> &SuperModule {
        &self.module
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    /// Bitmask of the subset at a full basis index.
    pub fn mask(&self, full: usize) -> u32 {
        self.masks[full]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.positions[mask as usize]
    }

    /// `(-1)^{#{i ∈ I : i < k}}`.
    fn sign(mask: u32, k: usize) -> i64 {
        if (mask & ((1u32 << k) - 1)).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Matrix of `e_k^∧ ·` scaled by `coeff`, added into `out`.
    fn add_wedge(&self, out: &mut PolyMatrix, k: usize, coeff: &Poly) {
        for (j, &m) in self.masks.iter().enumerate() {
            if m >> k & 1 == 0 {
                let i = self.index_of(m | 1 << k);
                let c = if Self::sign(m, k) > 0 { coeff.clone() } else { -coeff };
                out.get_mut(i, j).add_assign_ref(&c);
            }
        }
    }

    /// Matrix of contraction with the `k`-th dual vector scaled by `coeff`,
    /// added into `out`.
    fn add_contraction(&self, out: &mut PolyMatrix, k: usize, coeff: &Poly) {
        for (j, &m) in self.masks.iter().enumerate() {
            if m >> k & 1 == 1 {
                let i = self.index_of(m & !(1 << k));
                let c = if Self::sign(m, k) > 0 { coeff.clone() } else { -coeff };
                out.get_mut(i, j).add_assign_ref(&c);
            }
        }
    }
}

/// A section `(c, φ)` of `C₁ ⊕ C₁^∨`, optionally extended by a pair
/// `(l, l*)` in `L ⊕ L^{-1}` with `L` trivialized.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoSection {
    pub vector: Vec<Poly>,
    pub covector: Vec<Poly>,
    pub line: Option<(Poly, Poly)>,
}

impl OrthoSection {
    pub fn new(vector: Vec<Poly>, covector: Vec<Poly>) -> Result<Self> {
        if vector.len() != covector.len() {
            return Err(Error::Shape(format!(
                "section has {} vector and {} covector components",
                vector.len(),
                covector.len()
            )));
        }
        Ok(OrthoSection { vector, covector, line: None })
    }

    pub fn with_line(mut self, l: Poly, l_dual: Poly) -> Self {
        self.line = Some((l, l_dual));
        self
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        OrthoSection { vector: vec![ring.zero(); n], covector: vec![ring.zero(); n], line: None }
    }

    pub fn base_rank(&self) -> usize {
        self.vector.len()
    }

    /// Rank of the spinor base this section acts on.
    pub fn spinor_rank(&self) -> usize {
        self.vector.len() + usize::from(self.line.is_some())
    }

    /// `q(s) = ⟨φ, c⟩ (+ l·l*)`, no factor 2.
    pub fn quadratic_form(&self, ring: &Ring) -> Result<Poly> {
        let mut q = ring.zero();
        for (c, f) in self.vector.iter().zip(&self.covector) {
            ring.check_same(c.ring())?;
            ring.check_same(f.ring())?;
            q.add_mul_assign(c, f);
        }
        if let Some((l, ld)) = &self.line {
            q.add_mul_assign(l, ld);
        }
        Ok(q)
    }

    /// Components over the full spinor base, the line pair last.
    fn components(&self) -> (Vec<&Poly>, Vec<&Poly>) {
        let mut v: Vec<&Poly> = self.vector.iter().collect();
        let mut f: Vec<&Poly> = self.covector.iter().collect();
        if let Some((l, ld)) = &self.line {
            v.push(l);
            f.push(ld);
        }
        (v, f)
    }
}

/// The odd endomorphism `Σ_k φ_k·(e_k^∧) + c_k·ι_k` of the spinor module.
pub fn clifford_action(s: &OrthoSection, spinors: &SpinorModule) -> Result<ParityMap> {
    if s.spinor_rank() != spinors.base_rank {
        return Err(Error::Shape(format!(
            "section of spinor rank {} on spinor module of base rank {}",
            s.spinor_rank(),
            spinors.base_rank
        )));
    }
    let ring = spinors.ring();
    let n = spinors.module.total_rank();
    let mut full = PolyMatrix::zeros(ring, n, n);
    let (vector, covector) = s.components();
    for k in 0..spinors.base_rank {
        ring.check_same(vector[k].ring())?;
        ring.check_same(covector[k].ring())?;
        if !covector[k].is_zero() {
            spinors.add_wedge(&mut full, k, covector[k]);
        }
        if !vector[k].is_zero() {
            spinors.add_contraction(&mut full, k, vector[k]);
        }
    }
    ParityMap::from_full(&spinors.module, &spinors.module, Parity::Odd, &full)
}

/// `q(s)`, after checking `clifford_action(s)² = q(s)·id` exactly.
pub fn clifford_square(s: &OrthoSection, spinors: &SpinorModule) -> Result<Poly> {
    let q = s.quadratic_form(spinors.ring())?;
    let rho = clifford_action(s, spinors)?;
    let sq = rho.compose(&rho)?;
    let expected = ParityMap::identity(spinors.module()).scale(&q);
    if let Some((i, j, r)) = sq.first_difference(&expected)? {
        return Err(Error::invariant(
            format!("Clifford relation at entry ({i}, {j})"),
            r,
        ));
    }
    Ok(q)
}

/// The identification `Λ•(C₁^∨ ⊕ L^{-1}) ≅ Λ•C₁^∨ ⊕ Λ•C₁^∨[1]` sending
/// `x + ℓ*∧x'` to `(x, x')`, where `ℓ*` is the last basis covector.
#[derive(Clone, Debug)]
pub struct SpinorSplit {
    pub extended: SpinorModule,
    pub base: SpinorModule,
    /// `Λ ⊕ Λ[1]`.
    pub split: SuperModule,
    pub forward: ParityMap,
    pub backward: ParityMap,
}

pub fn spinor_split(extended: &SpinorModule) -> Result<SpinorSplit> {
    let n = extended
        .base_rank
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("spinor split needs base rank at least 1".into()))?;
    let ring = extended.ring();
    let base = SpinorModule::new(ring, n)?;
    let parts = [base.module.clone(), base.module.shift()];
    let split = SuperModule::direct_sum_all(&parts)?;
    let idx0 = SuperModule::summand_indices(&parts, 0);
    let idx1 = SuperModule::summand_indices(&parts, 1);
    let total = extended.module.total_rank();
    let mut fwd = PolyMatrix::zeros(ring, total, total);
    for (j, &m) in extended.masks.iter().enumerate() {
        if m >> n & 1 == 0 {
            fwd.set(idx0[base.index_of(m)], j, ring.one());
        } else {
            // ℓ*∧e_I = (-1)^{|I|} e_{I ∪ {n}}.
            let rest = m & !(1 << n);
            let sign = if rest.count_ones() % 2 == 0 { 1 } else { -1 };
            let (p, k) = base.module.split_index(base.index_of(rest));
            fwd.set(idx1[parts[1].full_index(p.flip(), k)], j, ring.int(sign));
        }
    }
    let forward = ParityMap::from_full(&extended.module, &split, Parity::Even, &fwd)?;
    // The matrix is a signed permutation, so its inverse is its transpose.
    let backward = ParityMap::from_full(&split, &extended.module, Parity::Even, &fwd.transpose())?;
    Ok(SpinorSplit { extended: extended.clone(), base, split, forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarField;

    fn ring() -> Ring {
        Ring::new(ScalarField::rationals(), &["x", "y", "u", "w"]).unwrap()
    }

    #[test]
    fn basis_order() {
        let s = SpinorModule::new(&ring(), 2).unwrap();
        assert_eq!(s.module().labels(Parity::Even), ["1", "e0^∧e1^"]);
        assert_eq!(s.module().labels(Parity::Odd), ["e0^", "e1^"]);
        let s3 = SpinorModule::new(&ring(), 3).unwrap();
        assert_eq!(s3.module().ranks(), (4, 4));
        assert_eq!(s3.module().labels(Parity::Even)[1], "e0^∧e1^");
    }

    #[test]
    fn rank_one_example() {
        let r = ring();
        let sp = SpinorModule::new(&r, 1).unwrap();
        let s = OrthoSection::new(vec![r.var("x").unwrap()], vec![r.var("y").unwrap()]).unwrap();
        let rho = clifford_action(&s, &sp).unwrap();
        // 1 ↦ y·e*, e* ↦ x·1
        assert_eq!(rho.entry(1, 0), r.var("y").unwrap());
        assert_eq!(rho.entry(0, 1), r.var("x").unwrap());
        assert_eq!(clifford_square(&s, &sp).unwrap(), r.parse("x*y").unwrap());
        let zero = OrthoSection::zero(&r, 1);
        assert!(clifford_action(&zero, &sp).unwrap().is_zero());
    }

    #[test]
    fn disjoint_supports_are_isotropic() {
        let r = ring();
        let sp = SpinorModule::new(&r, 2).unwrap();
        let s = OrthoSection::new(
            vec![r.var("u").unwrap(), r.zero()],
            vec![r.zero(), r.var("w").unwrap()],
        )
        .unwrap();
        assert!(clifford_square(&s, &sp).unwrap().is_zero());
        assert!(!clifford_action(&s, &sp).unwrap().is_zero());
    }

    #[test]
    fn split_round_trip() {
        let r = ring();
        let ext = SpinorModule::new(&r, 2).unwrap();
        let sp = spinor_split(&ext).unwrap();
        assert_eq!(sp.split.ranks(), (2, 2));
        let id = ParityMap::identity(ext.module());
        assert_eq!(sp.backward.compose(&sp.forward).unwrap(), id);
        let id2 = ParityMap::identity(&sp.split);
        assert_eq!(sp.forward.compose(&sp.backward).unwrap().to_full(), id2.to_full());
    }
}
