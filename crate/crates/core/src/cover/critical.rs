//! Criticality of colourings with tree cover number 2 or 3, and the edge
//! counting inequality for colourings in which every vertex sees every colour.

use serde::{Deserialize, Serialize};

use crate::colour::{binomial, k_subsets, ColourSet};
use crate::SetColouring;

use super::exact::{cover_within, exact_tree_cover};
use super::CoverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LbnOutcome {
    pub holds: bool,
    /// `n < 2(t-1)`: the binomial on the right is taken as 0.
    pub below_domain: bool,
}

/// Whether `k·C(n,2) <= r·(t-1 + C(n-2(t-1), 2))`, in exact integers.
pub fn lbn_inequality(n: u64, r: u64, k: u64, t: u64) -> LbnOutcome {
    let reserved = 2 * t.saturating_sub(1);
    let below_domain = n < reserved;
    let rest = if below_domain { 0 } else { binomial(n - reserved, 2) as u128 };
    let lhs = k as u128 * binomial(n, 2) as u128;
    let rhs = r as u128 * (t.saturating_sub(1) as u128 + rest);
    LbnOutcome {
        holds: lhs <= rhs,
        below_domain,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalReport {
    /// Exact tree cover number of the whole colouring.
    pub t: usize,
    /// The `t` the report was asked about.
    pub target: usize,
    pub is_critical: bool,
    /// Per vertex: a smallest colour set whose components cover every other
    /// vertex with `t - 1` pieces. Empty unless the colouring is critical.
    pub critical_function: Vec<Vec<usize>>,
    pub injective: Option<bool>,
    pub sees_all: bool,
    /// `n <= r` for t = 2, `n <= r + C(r,2)` for t = 3, and additionally
    /// `t = 3` and `n <= C(r,2)` when every vertex sees every colour.
    pub vertex_bound_holds: Option<bool>,
}

pub fn critical_report(c: &SetColouring, target: usize, budget: u64) -> Result<CriticalReport, CoverError> {
    if !(2..=3).contains(&target) {
        return Err(CoverError::Unsupported(format!("t must be 2 or 3, got {target}")));
    }
    let n = c.vertex_count();
    let r = c.r();
    let t = exact_tree_cover(c, budget)?.value;
    let sees_all = c.every_vertex_sees_each_colour();
    let mut report = CriticalReport {
        t,
        target,
        is_critical: false,
        critical_function: Vec::new(),
        injective: None,
        sees_all,
        vertex_bound_holds: None,
    };
    if t != target || n < 2 {
        return Ok(report);
    }
    let subs: Vec<SetColouring> = (0..n)
        .map(|v| c.delete_vertex(v).expect("vertex exists"))
        .collect();
    for sub in &subs {
        if cover_within(sub, sub.palette(), t - 1, budget)?.is_none() {
            return Ok(report);
        }
    }
    report.is_critical = true;
    let mut f = Vec::with_capacity(n);
    for sub in &subs {
        let mut found = None;
        'sizes: for size in 1..t {
            for set in k_subsets(ColourSet::full(r), size) {
                if cover_within(sub, set, t - 1, budget)?.is_some() {
                    found = Some(set);
                    break 'sizes;
                }
            }
        }
        let set = found.ok_or_else(|| {
            CoverError::Internal("critical vertex has no colour set of size < t".into())
        })?;
        f.push(set);
    }
    let mut sorted = f.clone();
    sorted.sort();
    sorted.dedup();
    report.injective = Some(sorted.len() == n);
    report.critical_function = f.iter().map(|s| s.to_vec()).collect();
    let bound = if t == 2 { r } else { r + binomial(r as u64, 2) as usize };
    let mut ok = n <= bound;
    if sees_all {
        ok &= t == 3 && n <= binomial(r as u64, 2) as usize;
    }
    report.vertex_bound_holds = Some(ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::two_missing_colouring;
    use crate::{HostGraph, SetColouring};

    #[test]
    fn lbn_examples() {
        assert!(!lbn_inequality(10, 5, 2, 3).holds);
        assert!(lbn_inequality(11, 5, 2, 3).holds);
        for n in 0..20 {
            assert!(lbn_inequality(n, 4, 3, 1).holds);
        }
        assert!(lbn_inequality(3, 5, 2, 3).below_domain);
    }

    #[test]
    fn two_missing_k4_is_critical() {
        let c = two_missing_colouring(4).unwrap();
        let rep = critical_report(&c, 2, 1_000_000).unwrap();
        assert_eq!(rep.t, 2);
        assert!(rep.is_critical);
        assert_eq!(rep.injective, Some(true));
        assert_eq!(rep.vertex_bound_holds, Some(true));
        // vertex i misses colour i, and colour i covers everything else
        assert_eq!(rep.critical_function, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn monochromatic_is_not_two_critical() {
        let c = SetColouring::from_fn(HostGraph::complete(4), 2, Some(1), |_, _| ColourSet::singleton(0))
            .unwrap();
        let rep = critical_report(&c, 2, 1000).unwrap();
        assert_eq!(rep.t, 1);
        assert!(!rep.is_critical);
    }
}
