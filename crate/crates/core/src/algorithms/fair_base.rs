use super::max_card_intersection;
use crate::error::{Error, Result};
use crate::exchange::{apply_exchange, generate_paths};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::set::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FairBase {
    /// A fair independent set of the largest possible size.
    Feasible(ElementSet),
    /// No fair independent set exists: at most `reached` of the `needed`
    /// lower-bound slots can be filled at once.
    Infeasible { reached: usize, needed: usize },
}

impl FairBase {
    pub fn into_result(self) -> Result<ElementSet> {
        match self {
            FairBase::Feasible(p) => Ok(p),
            FairBase::Infeasible { reached, needed } => Err(Error::Infeasible(format!(
                "only {reached} of the {needed} lower-bound slots can be filled by an independent set"
            ))),
        }
    }
}

fn check_universe(m: &MatroidSpec, spec: &FairnessSpec) -> Result<()> {
    if m.universe_size() != spec.universe_size() {
        return Err(Error::malformed(format!(
            "matroid has {} elements, coloring has {}",
            m.universe_size(),
            spec.universe_size()
        )));
    }
    Ok(())
}

/// An independent set holding exactly `lower[c]` elements of each color, or
/// `Err(size reached)` if there is none.
pub fn fair_skeleton(m: &MatroidSpec, spec: &FairnessSpec) -> Result<std::result::Result<ElementSet, usize>> {
    check_universe(m, spec)?;
    let b = max_card_intersection(m, &spec.lower_matroid())?;
    Ok(if b.len() < spec.lower_total() { Err(b.len()) } else { Ok(b) })
}

/// A largest fair independent set. Fills the lower bounds first, then grows
/// toward a largest upper-fair independent set using augmenting sets only,
/// which never take an element away from a color.
pub fn build_fair_base(m: &MatroidSpec, spec: &FairnessSpec) -> Result<FairBase> {
    let mut b = match fair_skeleton(m, spec)? {
        Ok(b) => b,
        Err(reached) => {
            return Ok(FairBase::Infeasible {
                reached,
                needed: spec.lower_total(),
            })
        }
    };
    let z = max_card_intersection(m, &spec.upper_matroid())?;
    while b.len() < z.len() {
        let paths = generate_paths(m, spec, &b, &z)?;
        let x = paths
            .iter()
            .find(|x| x.is_augmenting())
            .ok_or_else(|| Error::invariant("no augmenting set while the base is short"))?;
        b = apply_exchange(&b, x);
    }
    if !spec.is_fair(&b) || !m.independent(&b) {
        return Err(Error::invariant("fair base lost fairness or independence"));
    }
    Ok(FairBase::Feasible(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fills_to_rank() {
        let m = MatroidSpec::uniform(4, 3);
        let spec = FairnessSpec::new(vec![0, 0, 1, 1], vec![1, 1], vec![2, 2]).unwrap();
        let FairBase::Feasible(p) = build_fair_base(&m, &spec).unwrap() else {
            panic!("expected feasible");
        };
        assert_eq!(p.len(), 3);
        assert!(spec.is_fair(&p));
    }

    #[test]
    fn too_few_elements_of_a_color() {
        let m = MatroidSpec::free(3);
        let spec = FairnessSpec::new(vec![0, 0, 1], vec![0, 2], vec![2, 2]).unwrap();
        assert_eq!(
            build_fair_base(&m, &spec).unwrap(),
            FairBase::Infeasible { reached: 1, needed: 2 }
        );
    }

    #[test]
    fn no_lower_bounds_gives_max_intersection() {
        let m = MatroidSpec::uniform(4, 3);
        let spec = FairnessSpec::new(vec![0, 0, 1, 1], vec![0, 0], vec![1, 2]).unwrap();
        let FairBase::Feasible(p) = build_fair_base(&m, &spec).unwrap() else {
            panic!("expected feasible");
        };
        let z = max_card_intersection(&m, &spec.upper_matroid()).unwrap();
        assert_eq!(p.len(), z.len());
    }
}
