use std::collections::HashMap;

use crate::algebra::Ring;
use crate::complexes::{ChainMap, CurvedComplex};
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};

/// Exponent vectors of total degree `k` in `n` variables, lexicographically
/// decreasing (`[k, 0, …]` first).
pub fn exponent_vectors(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in exponent_vectors(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(Σα)! / ∏ α_a!`.
pub fn multinomial(alpha: &[u32]) -> u64 {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &a in alpha {
        for j in 1..=a as u64 {
            total += 1;
            acc = acc * total / j;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// A basis vector `u^α ⊗ e_S` of `S^{r-i}C₀ ⊗ Λ^iC₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymBasis {
    pub alpha: Vec<u32>,
    pub wedge: Vec<usize>,
}

impl SymBasis {
    fn label(&self) -> String {
        let mut u: Vec<String> = self
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(k, &a)| if a == 1 { format!("u{k}") } else { format!("u{k}^{a}") })
            .collect();
        if u.is_empty() {
            u.push("1".into());
        }
        let e: Vec<String> = self.wedge.iter().map(|b| format!("e{b}")).collect();
        if e.is_empty() {
            u.join("*")
        } else {
            format!("{}|{}", u.join("*"), e.join("^"))
        }
    }
}

/// `S^r` of a two-term complex `C₀ → C₁`, folded by the exterior degree.
#[derive(Clone, Debug)]
pub struct SymPower {
    pub r: u32,
    pub complex: CurvedComplex,
    /// Basis element at each full index.
    pub basis: Vec<SymBasis>,
    index: HashMap<SymBasis, usize>,
}

impl SymPower {
    pub fn index_of(&self, b: &SymBasis) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// In the split case `C̃₀ = C₀ ⊕ ⟨1⟩` with `1` the last coordinate of
    /// `C₀`: the projection onto `1^r`, a chain map to `L^r` of rank `(1|0)`.
    pub fn augmentation(&self) -> Result<ChainMap> {
        let ring = self.complex.ring();
        let n0 = self.basis.first().map_or(0, |b| b.alpha.len());
        if n0 == 0 {
            return Err(Error::InvalidArgument("C₀ has no distinguished vector".into()));
        }
        let mut top = vec![0; n0];
        top[n0 - 1] = self.r;
        let target_module = SuperModule::new(ring, vec!["L^r".into()], vec![])?;
        let target = CurvedComplex::zero(&target_module, &ring.zero());
        let source_module = self.complex.module();
        let mut even = PolyMatrix::zeros(ring, 1, source_module.rank(Parity::Even));
        let k = self.index_of(&SymBasis { alpha: top, wedge: vec![] }).expect("1^r is a basis vector");
        let (_, local) = source_module.split_index(k);
        even.set(0, local, ring.one());
        let odd = PolyMatrix::zeros(ring, 0, source_module.rank(Parity::Odd));
        let map = ParityMap::new(source_module, &target_module, Parity::Even, even, odd)?;
        ChainMap::new(&self.complex, &target, map)
    }
}

/// `d` is the `rank C₁ × rank C₀` matrix of `C₀ → C₁`.
pub fn sym_power(ring: &Ring, d: &PolyMatrix, r: u32) -> Result<SymPower> {
    ring.check_same(d.ring())?;
    if r == 0 {
        return Err(Error::InvalidArgument("need r >= 1".into()));
    }
    let (n1, n0) = (d.nrows(), d.ncols());
    let mut parts: [Vec<SymBasis>; 2] = [vec![], vec![]];
    for i in 0..=(r as usize).min(n1) {
        for alpha in exponent_vectors(n0, r - i as u32) {
            for wedge in subsets(n1, i) {
                parts[i % 2].push(SymBasis { alpha: alpha.clone(), wedge });
            }
        }
    }
    let basis: Vec<SymBasis> = parts.concat();
    let index: HashMap<SymBasis, usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let labels = |p: &[SymBasis]| p.iter().map(SymBasis::label).collect::<Vec<_>>();
    let module = SuperModule::new(ring, labels(&parts[0]), labels(&parts[1]))?;
    let n = basis.len();
    let mut full = PolyMatrix::zeros(ring, n, n);
    for (col, b) in basis.iter().enumerate() {
        for a in 0..n0 {
            let mult = b.alpha[a];
            if mult == 0 {
                continue;
            }
            let mut alpha = b.alpha.clone();
            alpha[a] -= 1;
            for e in 0..n1 {
                let entry = d.get(e, a);
                if entry.is_zero() || b.wedge.contains(&e) {
                    continue;
                }
                let before = b.wedge.iter().filter(|&&s| s < e).count();
                let mut wedge = b.wedge.clone();
                wedge.insert(before, e);
                let sign = if before % 2 == 0 { mult as i64 } else { -(mult as i64) };
                let row = index[&SymBasis { alpha: alpha.clone(), wedge }];
                full.get_mut(row, col).add_mul_assign(&ring.int(sign), entry);
            }
        }
    }
    let map = ParityMap::from_full(&module, &module, Parity::Odd, &full)?;
    let complex = CurvedComplex::new(map)?;
    if !complex.is_complex() {
        return Err(Error::invariant("symmetric power differential squares to zero", complex.curvature().clone()));
    }
    Ok(SymPower { r, complex, basis, index })
}
