//! Checks of `alpha(G) <= alpha(Z(G))`, its equality case, and consequences.
//!
//! Every check is exact. A failed check is never an error: it becomes a
//! [`Finding`] carrying enough element ids and values to reproduce it, and
//! [`full_report`] collects all of them into an [`AlphaReport`].

use serde::Serialize;

use crate::arith::{euler_phi, gcd, is_power_of_two};
use crate::density::{alpha, alpha_via_totient, average_order, cyclic_subgroups, totient_sum, totient_sum_of_orders};
use crate::group::{ElementId, FiniteGroup, Subgroup};
use crate::rational::Rational;

/// The center as a standalone group.
pub fn center_group(g: &FiniteGroup) -> FiniteGroup {
    g.subgroup_as_group(&g.center())
        .with_label(format!("Z({})", g.label()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub alpha_g: Rational,
    pub alpha_z: Rational,
    pub holds: bool,
}

pub fn verify_inequality(g: &FiniteGroup) -> InequalityCheck {
    let alpha_g = alpha(g);
    let alpha_z = alpha(&center_group(g));
    InequalityCheck {
        holds: alpha_g <= alpha_z,
        alpha_g,
        alpha_z,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AverageOrderCheck {
    pub o_g: Rational,
    pub o_z: Rational,
    pub holds: bool,
}

/// `o(G) >= o(Z(G))`.
pub fn verify_average_order_inequality(g: &FiniteGroup) -> AverageOrderCheck {
    let o_g = average_order(g);
    let o_z = average_order(&center_group(g));
    AverageOrderCheck {
        holds: o_g >= o_z,
        o_g,
        o_z,
    }
}

/// One coset `yZ` of the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetFinding {
    #[serde(skip)]
    pub coset_index: usize,
    /// Smallest-id element of minimal order in the coset.
    #[serde(skip)]
    pub rep: ElementId,
    pub k: u32,
    /// `sum_{x in Z} 1/phi(o(yx))`
    pub coset_sum: Rational,
    pub order_identity_ok: bool,
    pub divisibility_ok: bool,
    pub coset_inequality_ok: bool,
}

impl CosetFinding {
    pub fn all_ok(&self) -> bool {
        self.order_identity_ok && self.divisibility_ok && self.coset_inequality_ok
    }
}

/// Per-coset decomposition of `|C(G)|` over the cosets of `Z(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerCosetFindings {
    pub m: usize,
    pub center_sum: Rational,
    pub per_coset: Vec<CosetFinding>,
    pub counterexamples: Vec<Finding>,
}

impl PerCosetFindings {
    pub fn total(&self) -> Rational {
        self.per_coset.iter().map(|c| &c.coset_sum).sum()
    }
}

pub fn per_coset_analysis(g: &FiniteGroup) -> PerCosetFindings {
    let z = g.center();
    let partition = g
        .coset_partition(&z)
        .expect("the center is central");
    let center_sum = totient_sum_of_orders(z.members().iter().map(|&x| g.element_order(x)));
    let mut counterexamples = Vec::new();
    let mut per_coset = Vec::with_capacity(partition.index());

    for (coset, rep) in partition.cosets.iter().zip(&partition.reps) {
        let y = rep.y;
        let k = rep.k;
        let coset_sum = totient_sum_of_orders(coset.iter().map(|&x| g.element_order(x)));

        let mut order_identity_ok = true;
        let mut divisibility_ok = true;
        for &x in z.members() {
            let ox = g.element_order(x) as u64;
            let yx = g.compose(y, x);
            let observed = g.element_order(yx) as u64;
            let predicted = k as u64 / gcd(k as u64, ox) * ox;
            if observed != predicted || observed % ox != 0 {
                order_identity_ok = false;
                counterexamples.push(Finding::OrderIdentity {
                    rep: y,
                    k,
                    x,
                    observed,
                    predicted,
                });
            }
            let phi_x = euler_phi(ox).expect("orders are positive");
            let phi_yx = euler_phi(observed).expect("orders are positive");
            if phi_yx % phi_x != 0 {
                divisibility_ok = false;
                counterexamples.push(Finding::Divisibility { rep: y, x, phi_x, phi_yx });
            }
        }

        let coset_inequality_ok = coset_sum <= center_sum;
        if !coset_inequality_ok {
            counterexamples.push(Finding::CosetInequality {
                coset: coset.clone(),
                coset_sum: coset_sum.clone(),
                center_sum: center_sum.clone(),
            });
        }
        per_coset.push(CosetFinding {
            coset_index: rep.coset_index,
            rep: y,
            k,
            coset_sum,
            order_identity_ok,
            divisibility_ok,
            coset_inequality_ok,
        });
    }

    PerCosetFindings {
        m: partition.index(),
        center_sum,
        per_coset,
        counterexamples,
    }
}

/// `alpha(G) = alpha(Z(G))`, exactly.
pub fn equality_holds(g: &FiniteGroup) -> bool {
    let check = verify_inequality(g);
    check.alpha_g == check.alpha_z
}

/// Why a group fails the structural condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralWitness {
    /// An odd-order element that is not central.
    NonCentralOddElement { element: ElementId, other: ElementId },
    /// Odd-order elements not closed under products.
    OddPartNotClosed { a: ElementId, b: ElementId, product: ElementId },
    /// 2-power-order elements not closed under products.
    TwoPartNotClosed { a: ElementId, b: ElementId, product: ElementId },
    /// The two parts do not factor the group.
    NoFactorization { two_part: usize, odd_part: usize, order: usize },
    /// A coset of `Z(T)` in `T` with no element of order 1 or 2.
    UncoveredCoset { members: Vec<ElementId> },
}

/// Outcome of the structural test; `factors = (T, O)` when the parts are subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralVerdict {
    pub holds: bool,
    pub factors: Option<(Subgroup, Subgroup)>,
    pub witness: Option<StructuralWitness>,
}

/// Closure check for a mask-defined subset, returning a violating pair.
fn closure_witness(g: &FiniteGroup, members: &[ElementId], inside: impl Fn(ElementId) -> bool) -> Option<(ElementId, ElementId, ElementId)> {
    for &a in members {
        for &b in members {
            let p = g.compose(a, b);
            if !inside(p) {
                return Some((a, b, p));
            }
        }
    }
    None
}

/// Decide `G = T x O` with `O` central of odd order and `T` a 2-group whose
/// center-cosets each contain an element of order at most 2.
pub fn structural_condition(g: &FiniteGroup) -> StructuralVerdict {
    let fail = |witness, factors| StructuralVerdict {
        holds: false,
        factors,
        witness: Some(witness),
    };
    let is_odd = |x: ElementId| g.element_order(x) % 2 == 1;
    let is_two = |x: ElementId| is_power_of_two(g.element_order(x) as u64);

    let odd: Vec<ElementId> = g.elements().filter(|&x| is_odd(x)).collect();
    for &x in &odd {
        if let Some(other) = g.elements().find(|&y| !g.commutes(x, y)) {
            return fail(StructuralWitness::NonCentralOddElement { element: x, other }, None);
        }
    }
    if let Some((a, b, product)) = closure_witness(g, &odd, is_odd) {
        return fail(StructuralWitness::OddPartNotClosed { a, b, product }, None);
    }
    let two: Vec<ElementId> = g.elements().filter(|&x| is_two(x)).collect();
    if let Some((a, b, product)) = closure_witness(g, &two, is_two) {
        return fail(StructuralWitness::TwoPartNotClosed { a, b, product }, None);
    }
    let t = g.subgroup_from_set(two).expect("closed subset of a finite group");
    let o = g.subgroup_from_set(odd).expect("closed subset of a finite group");
    // identity is the only element of order both odd and a power of two
    if t.len() * o.len() != g.order() {
        let witness = StructuralWitness::NoFactorization {
            two_part: t.len(),
            odd_part: o.len(),
            order: g.order(),
        };
        return fail(witness, Some((t, o)));
    }

    let t_group = g.subgroup_as_group(&t);
    let zt = t_group.center();
    let partition = t_group.coset_partition(&zt).expect("center is central");
    for (coset, rep) in partition.cosets.iter().zip(&partition.reps) {
        if rep.k > 2 {
            let members = coset.iter().map(|&x| t.members()[x.index()]).collect();
            return fail(StructuralWitness::UncoveredCoset { members }, Some((t, o)));
        }
    }
    StructuralVerdict {
        holds: true,
        factors: Some((t, o)),
        witness: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub equality: bool,
    pub structural: bool,
    pub holds: bool,
}

/// Equality of densities agrees with the structural condition.
pub fn verify_equivalence(g: &FiniteGroup) -> EquivalenceCheck {
    let equality = equality_holds(g);
    let structural = structural_condition(g).holds;
    EquivalenceCheck {
        equality,
        structural,
        holds: equality == structural,
    }
}

/// Exponent of `G/Z(G)`.
pub fn quotient_exponent_check(g: &FiniteGroup) -> u64 {
    g.quotient_by_central(&g.center())
        .expect("the center is central")
        .exponent()
}

/// An element whose square is not central.
pub fn two_central_witness(g: &FiniteGroup) -> Option<ElementId> {
    let z = g.center();
    g.elements().find(|&x| !z.contains(g.compose(x, x)))
}

pub fn is_2_central(g: &FiniteGroup) -> bool {
    two_central_witness(g).is_none()
}

/// A pair with `(xy)^4 != x^4 y^4`.
pub fn four_abelian_witness(g: &FiniteGroup) -> Option<(ElementId, ElementId)> {
    let fourth: Vec<ElementId> = g.elements().map(|x| g.power(x, 4)).collect();
    for x in g.elements() {
        for y in g.elements() {
            let lhs = fourth[g.compose(x, y).index()];
            let rhs = g.compose(fourth[x.index()], fourth[y.index()]);
            if lhs != rhs {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_4_abelian(g: &FiniteGroup) -> bool {
    four_abelian_witness(g).is_none()
}

/// A reproducible counterexample to one of the checked statements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    InequalityViolated { alpha_g: Rational, alpha_z: Rational },
    AverageOrderViolated { o_g: Rational, o_z: Rational },
    CountIdentityMismatch { enumerated: u64, totient_sum: Rational },
    AlphaRoutesDisagree { enumerated: Rational, totient: Rational },
    CosetDecompositionMismatch { coset_total: Rational, cyclic_count: u64 },
    CosetInequality { coset: Vec<ElementId>, coset_sum: Rational, center_sum: Rational },
    OrderIdentity { rep: ElementId, k: u32, x: ElementId, observed: u64, predicted: u64 },
    Divisibility { rep: ElementId, x: ElementId, phi_x: u64, phi_yx: u64 },
    EquivalenceMismatch { equality: bool, structural: bool, witness: Option<StructuralWitness> },
    EqualityCosetSumDiffers { rep: ElementId, coset_sum: Rational, center_sum: Rational },
    EqualityRepNotInvolution { rep: ElementId, k: u32 },
    EqualityQuotientExponent { exponent: u64 },
    EqualityNotTwoCentral { element: ElementId },
    EqualityNotFourAbelian { x: ElementId, y: ElementId },
    EqualityOddOrderNonAbelian { a: ElementId, b: ElementId },
    /// Raised by external tooling, never by [`full_report`] itself.
    Injected { message: String },
}

/// The complete verification record for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub label: String,
    pub order: usize,
    pub cyclic_count: u64,
    pub alpha_g: Rational,
    pub center_order: usize,
    pub alpha_z: Rational,
    #[serde(rename = "inequality")]
    pub inequality_holds: bool,
    #[serde(rename = "equality")]
    pub equality_holds: bool,
    #[serde(rename = "structural")]
    pub structural_holds: bool,
    pub quotient_exponent: u64,
    pub two_central: bool,
    pub four_abelian: bool,
    pub avg_order_g: Rational,
    pub avg_order_z: Rational,
    #[serde(rename = "avg_inequality")]
    pub avg_inequality_holds: bool,
    pub proof_steps: Vec<CosetFinding>,
    pub findings: Vec<Finding>,
}

impl AlphaReport {
    /// True when no counterexample of any kind was found.
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn proof_steps_ok(&self) -> bool {
        self.proof_steps.iter().all(CosetFinding::all_ok)
    }
}

/// Run every check and collect the results.
///
/// `proof_steps` lists the center coset first and the others sorted by
/// `(k, coset_sum)`, so the report does not depend on element numbering.
pub fn full_report(g: &FiniteGroup) -> AlphaReport {
    let census = cyclic_subgroups(g);
    let order = g.order();
    let alpha_g = Rational::new(census.subgroup_count as i64, order as i64);
    let z = center_group(g);
    let alpha_z = alpha(&z);
    let inequality_holds = alpha_g <= alpha_z;
    let equality_holds = alpha_g == alpha_z;
    let avg = verify_average_order_inequality(g);
    let structural = structural_condition(g);
    let quotient_exponent = quotient_exponent_check(g);
    let not_two_central = two_central_witness(g);
    let not_four_abelian = four_abelian_witness(g);
    let steps = per_coset_analysis(g);

    let mut findings = Vec::new();
    if !inequality_holds {
        findings.push(Finding::InequalityViolated {
            alpha_g: alpha_g.clone(),
            alpha_z: alpha_z.clone(),
        });
    }
    if !avg.holds {
        findings.push(Finding::AverageOrderViolated {
            o_g: avg.o_g.clone(),
            o_z: avg.o_z.clone(),
        });
    }
    let tsum = totient_sum(g);
    let count = Rational::from_integer(census.subgroup_count as i64);
    if tsum != count {
        findings.push(Finding::CountIdentityMismatch {
            enumerated: census.subgroup_count,
            totient_sum: tsum,
        });
    }
    let alpha_t = alpha_via_totient(g);
    if alpha_t != alpha_g {
        findings.push(Finding::AlphaRoutesDisagree {
            enumerated: alpha_g.clone(),
            totient: alpha_t,
        });
    }
    if steps.total() != count {
        findings.push(Finding::CosetDecompositionMismatch {
            coset_total: steps.total(),
            cyclic_count: census.subgroup_count,
        });
    }
    findings.extend(steps.counterexamples.iter().cloned());
    if equality_holds != structural.holds {
        findings.push(Finding::EquivalenceMismatch {
            equality: equality_holds,
            structural: structural.holds,
            witness: structural.witness.clone(),
        });
    }

    if equality_holds {
        for c in steps.per_coset.iter().skip(1) {
            if c.k != 2 {
                findings.push(Finding::EqualityRepNotInvolution { rep: c.rep, k: c.k });
            }
            if c.coset_sum != steps.center_sum {
                findings.push(Finding::EqualityCosetSumDiffers {
                    rep: c.rep,
                    coset_sum: c.coset_sum.clone(),
                    center_sum: steps.center_sum.clone(),
                });
            }
        }
        if 2 % quotient_exponent != 0 {
            findings.push(Finding::EqualityQuotientExponent {
                exponent: quotient_exponent,
            });
        }
        if let Some(element) = not_two_central {
            findings.push(Finding::EqualityNotTwoCentral { element });
        }
        if let Some((x, y)) = not_four_abelian {
            findings.push(Finding::EqualityNotFourAbelian { x, y });
        }
        if order % 2 == 1 {
            let pair = g
                .elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .find(|&(a, b)| !g.commutes(a, b));
            if let Some((a, b)) = pair {
                findings.push(Finding::EqualityOddOrderNonAbelian { a, b });
            }
        }
    }

    let mut proof_steps = steps.per_coset;
    if proof_steps.len() > 1 {
        proof_steps[1..].sort_by(|a, b| (a.k, &a.coset_sum).cmp(&(b.k, &b.coset_sum)));
    }

    AlphaReport {
        label: g.label().to_string(),
        order,
        cyclic_count: census.subgroup_count,
        alpha_g,
        center_order: z.order(),
        alpha_z,
        inequality_holds,
        equality_holds,
        structural_holds: structural.holds,
        quotient_exponent,
        two_central: not_two_central.is_none(),
        four_abelian: not_four_abelian.is_none(),
        avg_order_g: avg.o_g,
        avg_order_z: avg.o_z,
        avg_inequality_holds: avg.holds,
        proof_steps,
        findings,
    }
}
