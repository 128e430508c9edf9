use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;
use crate::set::ElementSet;

pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForce {
    /// Best `f` over fair independent sets; `None` when there are none.
    pub opt_fair: Option<f64>,
    /// Best `f` over independent, upper-fair sets.
    pub opt_matint: f64,
    /// Largest independent, upper-fair set size.
    pub n_max: usize,
}

/// Enumerates every subset of a universe of at most [`BRUTE_FORCE_LIMIT`]
/// elements.
pub fn brute_force(ev: &Evaluator, m: &MatroidSpec, spec: &FairnessSpec) -> Result<BruteForce> {
    let n = m.universe_size();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute force",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if spec.universe_size() != n || ev.universe_size() != n {
        return Err(Error::malformed("universe sizes disagree"));
    }
    let mut out = BruteForce {
        opt_fair: None,
        opt_matint: 0.0,
        n_max: 0,
    };
    for mask in 0u32..1 << n {
        let s = ElementSet::from_mask(mask);
        if !m.independent(&s) || !spec.is_upper_fair(&s) {
            continue;
        }
        let v = ev.value_unchecked(&s);
        out.opt_matint = out.opt_matint.max(v);
        out.n_max = out.n_max.max(s.len());
        if spec.is_fair(&s) {
            out.opt_fair = Some(out.opt_fair.map_or(v, |b: f64| b.max(v)));
        }
    }
    Ok(out)
}
