use super::{CurvedComplex, Verdict};
use crate::error::{Error, Result};

/// A descending basis-aligned filtration `F^1 ⊇ F^2 ⊇ … ⊇ F^{s+1} = 0`.
/// `steps[j - 1]` lists the full basis indices spanning `F^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<Vec<usize>>,
}

impl Filtration {
    pub fn new(mut steps: Vec<Vec<usize>>) -> Self {
        for s in &mut steps {
            s.sort_unstable();
            s.dedup();
        }
        Filtration { steps }
    }

    /// The one-step filtration `F^1 = C`.
    pub fn trivial(c: &CurvedComplex) -> Self {
        Filtration { steps: vec![(0..c.module().total_rank()).collect()] }
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Basis of `F^j` not in `F^{j+1}` (1-based `j`).
    pub fn slice(&self, j: usize) -> Result<Vec<usize>> {
        if j == 0 || j > self.steps.len() {
            return Err(Error::InvalidArgument(format!(
                "filtration step {j} out of range 1..={}",
                self.steps.len()
            )));
        }
        let next = self.steps.get(j).map_or(&[][..], Vec::as_slice);
        Ok(self.steps[j - 1].iter().copied().filter(|i| next.binary_search(i).is_err()).collect())
    }
}

/// Check that steps are nested, in range, and preserved by the differential.
pub fn filtration_verify(c: &CurvedComplex, f: &Filtration) -> Verdict {
    const CHECK: &str = "filtration";
    let n = c.module().total_rank();
    for (k, s) in f.steps.iter().enumerate() {
        if let Some(&bad) = s.iter().find(|&&i| i >= n) {
            return Verdict::fail(CHECK, format!("F^{} lists basis index {bad} >= {n}", k + 1));
        }
        if let Some(next) = f.steps.get(k + 1) {
            if let Some(&bad) = next.iter().find(|i| s.binary_search(i).is_err()) {
                return Verdict::fail(
                    CHECK,
                    format!("F^{} contains basis vector {bad} not in F^{}", k + 2, k + 1),
                );
            }
        }
    }
    let d = c.differential().to_full();
    for (k, s) in f.steps.iter().enumerate() {
        for &j in s {
            for i in 0..n {
                let e = d.get(i, j);
                if !e.is_zero() && s.binary_search(&i).is_err() {
                    return Verdict::from_difference(CHECK, Some((i, j, e.clone()))).with_message(
                        format!("d sends basis vector {j} of F^{} outside it", k + 1),
                    );
                }
            }
        }
    }
    Verdict::pass(CHECK)
}

/// The induced complex on `F^j / F^{j+1}`, represented on the basis vectors
/// of `F^j` outside `F^{j+1}`.
pub fn associated_graded(c: &CurvedComplex, f: &Filtration, j: usize) -> Result<CurvedComplex> {
    filtration_verify(c, f).into_result()?;
    let slice = f.slice(j)?;
    let d = c.differential().restrict(&slice, &slice)?;
    CurvedComplex::with_curvature(d, c.curvature())
}
