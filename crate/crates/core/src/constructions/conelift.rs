use crate::complexes::{cone, is_homotopy_between, ChainMap, Cone, Verdict};
use crate::error::{Error, Result};
use crate::supermod::{Parity, ParityMap};

/// The chain map `Cone(h): Cone(g) → C` induced by a homotopy `h` from
/// `f∘g` to zero, that is `d_C h + h d_A = f∘g`.
#[derive(Clone, Debug)]
pub struct ConeLift {
    pub cone: Cone,
    pub h: ParityMap,
    /// `(f, h∘σ⁻¹)` on `B ⊕ A[1]`.
    pub lift: ChainMap,
    /// The homotopy precondition and `Cone(h)∘i = f`.
    pub verdicts: Vec<Verdict>,
}

impl ConeLift {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

pub fn cone_lift(g: &ChainMap, f: &ChainMap, h: &ParityMap) -> Result<ConeLift> {
    if g.target() != f.source() {
        return Err(Error::Shape("g and f are not composable".into()));
    }
    let (a, c) = (g.source(), f.target());
    let fg = f.map().compose(g.map())?;
    let zero = ParityMap::zero(a.module(), c.module(), fg.parity());
    let pre = is_homotopy_between(a, c, h, &fg, &zero)?;
    if !pre.pass {
        return Err(Error::invariant("homotopy from f∘g to 0", pre.to_string()));
    }
    let cone = cone(g)?;
    let a1 = a.shift();
    let h_shifted = h.compose(&ParityMap::shift_identity(a1.module()))?;
    let parts = [f.source().module().clone(), a1.module().clone()];
    let map = ParityMap::block_grid(
        &parts,
        &[c.module().clone()],
        Parity::Even,
        &[vec![Some(f.map().clone()), Some(h_shifted)]],
    )?
    .relabel(cone.complex.module(), c.module())?;
    let lift = ChainMap::new(&cone.complex, c, map)?;
    let restricted = lift.map().compose(cone.inclusion.map())?;
    let verdicts = vec![
        pre,
        Verdict::from_difference("restriction to B equals f", restricted.first_difference(f.map())?),
    ];
    Ok(ConeLift { cone, h: h.clone(), lift, verdicts })
}

/// `Cone(h₁) - Cone(h₂) = (h₁ - h₂)∘σ⁻¹∘π` for two lifts of the same pair.
pub fn cone_lift_difference(l1: &ConeLift, l2: &ConeLift) -> Result<Verdict> {
    let lhs = l1.lift.map().sub(l2.lift.map())?;
    let a1 = l1.cone.projection.target().module();
    let rhs = l1
        .h
        .sub(&l2.h)?
        .compose(&ParityMap::shift_identity(a1))?
        .compose(l2.cone.projection.map())?;
    Ok(Verdict::from_difference("Cone(h₁) - Cone(h₂) = (h₁ - h₂)∘π", lhs.first_difference(&rhs)?))
}
