use serde::Serialize;

use super::instance::Instance;
use crate::error::Result;
use crate::objective::Evaluator;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub independent: bool,
    pub upper_fair: bool,
    pub fair: bool,
    pub fav: usize,
    pub f_value: f64,
    pub size: usize,
}

impl VerifyReport {
    /// Whether the solution is independent and within every upper bound.
    pub fn passed(&self) -> bool {
        self.independent && self.upper_fair
    }
}

pub fn verify(instance: &Instance, solution: &ElementSet) -> Result<VerifyReport> {
    let independent = instance.matroid.is_independent(solution)?;
    let f_value = Evaluator::new(&instance.objective)?.evaluate(solution)?;
    let spec = &instance.fairness;
    Ok(VerifyReport {
        independent,
        upper_fair: spec.is_upper_fair(solution),
        fair: spec.is_fair(solution),
        fav: spec.fav(solution),
        f_value,
        size: solution.len(),
    })
}
