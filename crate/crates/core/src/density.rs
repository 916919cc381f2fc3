//! `|C(G)|`, `alpha(G) = |C(G)|/|G|` and the average element order, exactly.
//!
//! `alpha` has two independent routes: [`cyclic_subgroups`] enumerates the
//! subgroups `<x>` as member sets, while [`alpha_via_totient`] only looks at
//! element orders and sums `1/phi(o(x))`. They must agree on every group.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::arith::euler_phi;
use crate::group::{ElementId, FiniteGroup};
use crate::rational::Rational;

/// The cyclic subgroups of a group, counted and bucketed by order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCensus {
    pub group_order: usize,
    pub subgroup_count: u64,
    /// subgroup order -> number of cyclic subgroups of that order
    pub by_order: BTreeMap<u32, u64>,
}

/// Enumerate `<x>` for every `x`, deduplicated by sorted member list.
pub fn cyclic_subgroups(g: &FiniteGroup) -> CyclicCensus {
    let mut seen: HashSet<Vec<ElementId>> = HashSet::new();
    // x is covered once some recorded <y> contains x with o(x) = |<y>|, i.e. <x> = <y>
    let mut covered = vec![false; g.order()];
    let mut by_order = BTreeMap::new();
    for x in g.elements() {
        if covered[x.index()] {
            continue;
        }
        let sub = g.cyclic_subgroup(x);
        let size = sub.len() as u32;
        for &y in sub.members() {
            if g.element_order(y) == size {
                covered[y.index()] = true;
            }
        }
        if seen.insert(sub.members().to_vec()) {
            *by_order.entry(size).or_insert(0) += 1;
        }
    }
    CyclicCensus {
        group_order: g.order(),
        subgroup_count: seen.len() as u64,
        by_order,
    }
}

/// Number of elements of each order.
pub fn order_histogram(g: &FiniteGroup) -> BTreeMap<u32, u64> {
    let mut hist = BTreeMap::new();
    for &o in g.element_orders() {
        *hist.entry(o).or_insert(0) += 1;
    }
    hist
}

/// `sum_x 1/phi(o(x))`, which equals `|C(G)|`.
pub fn totient_sum(g: &FiniteGroup) -> Rational {
    totient_sum_of_orders(g.element_orders().iter().copied())
}

/// `sum 1/phi(o)` over any multiset of element orders.
pub fn totient_sum_of_orders(orders: impl IntoIterator<Item = u32>) -> Rational {
    let mut hist: BTreeMap<u32, i64> = BTreeMap::new();
    for o in orders {
        *hist.entry(o).or_insert(0) += 1;
    }
    hist.into_iter()
        .map(|(o, count)| {
            let phi = euler_phi(o as u64).expect("element orders are positive");
            Rational::new(count, phi as i64)
        })
        .sum()
}

/// `|C(G)| / |G|` from subgroup enumeration.
pub fn alpha(g: &FiniteGroup) -> Rational {
    Rational::new(cyclic_subgroups(g).subgroup_count as i64, g.order() as i64)
}

/// `(1/|G|) sum_x 1/phi(o(x))`, from element orders alone.
pub fn alpha_via_totient(g: &FiniteGroup) -> Rational {
    totient_sum(g) / Rational::from_integer(g.order() as i64)
}

/// Mean element order.
pub fn average_order(g: &FiniteGroup) -> Rational {
    let total: i64 = g.element_orders().iter().map(|&o| o as i64).sum();
    Rational::new(total, g.order() as i64)
}

/// Both sides of `|C(G)| = sum_x 1/phi(o(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountIdentity {
    pub enumerated: u64,
    pub totient_sum: Rational,
    pub holds: bool,
}

pub fn subgroup_count_identity_check(g: &FiniteGroup) -> CountIdentity {
    let enumerated = cyclic_subgroups(g).subgroup_count;
    let totient_sum = totient_sum(g);
    CountIdentity {
        enumerated,
        holds: totient_sum == Rational::from_integer(enumerated as i64),
        totient_sum,
    }
}
