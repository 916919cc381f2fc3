//! Finite groups as dense Cayley tables.
//!
//! Every group in this crate is a [`FiniteGroup`]: an `n x n` multiplication
//! table over element ids `0..n` with the identity at id 0, plus precomputed
//! inverses and element orders. Subgroups are sorted id sets with a
//! membership mask, valid relative to the group they were taken from.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::error::{GroupError, Result};

/// Default cap on group order.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Cap used when the size override is requested; admits the symmetric group on 7 points.
pub const OVERRIDE_SIZE_CAP: usize = 5040;

/// Above this order, imported tables may skip the cubic associativity check.
pub const TRUST_THRESHOLD: usize = 512;

/// Index of an element inside one particular [`FiniteGroup`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Upper bound on the order of any group we are willing to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimit(pub usize);

impl Default for SizeLimit {
    fn default() -> Self {
        SizeLimit(DEFAULT_SIZE_CAP)
    }
}

impl SizeLimit {
    pub fn check(self, order: u128) -> Result<usize> {
        if order > self.0 as u128 {
            Err(GroupError::SizeLimitExceeded { order, cap: self.0 })
        } else {
            Ok(order as usize)
        }
    }
}

/// How much of the associativity law to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocCheck {
    /// Every triple.
    Full,
    /// A fixed-seed sample of this many triples.
    Sampled(usize),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<ElementId>,
    inv: Vec<ElementId>,
    ord: Vec<u32>,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.n)
            .finish()
    }
}

/// Outcome of validating a raw table: the group plus the relabeling applied.
#[derive(Debug, Clone)]
pub struct ValidatedTable {
    pub group: FiniteGroup,
    /// Index of the identity in the input.
    pub identity_in_source: usize,
    /// `relabel[i]` is the id that input element `i` received.
    pub relabel: Vec<ElementId>,
    pub associativity: AssocCheck,
}

/// Validate a raw square table with the full associativity check.
pub fn validate_table(raw: &[Vec<usize>]) -> Result<FiniteGroup> {
    validate_table_with(raw, AssocCheck::Full).map(|v| v.group)
}

/// Validate a raw square table, re-indexing the identity to 0.
///
/// Witnesses in errors refer to the input's own indices.
pub fn validate_table_with(raw: &[Vec<usize>], assoc: AssocCheck) -> Result<ValidatedTable> {
    let n = raw.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    for (row, entries) in raw.iter().enumerate() {
        if entries.len() != n {
            return Err(GroupError::NotClosed {
                n,
                row,
                len: entries.len(),
                value: 0,
            });
        }
        if let Some(&value) = entries.iter().find(|&&v| v >= n) {
            return Err(GroupError::NotClosed {
                n,
                row,
                len: n,
                value,
            });
        }
    }

    let e = (0..n)
        .find(|&e| (0..n).all(|j| raw[e][j] == j && raw[j][e] == j))
        .ok_or(GroupError::NoIdentity)?;

    for a in 0..n {
        let has_inverse = (0..n).any(|b| raw[a][b] == e && raw[b][a] == e);
        if !has_inverse {
            return Err(GroupError::NoInverse { element: a });
        }
    }

    match assoc {
        AssocCheck::Full => {
            check_assoc_full(n, |a, b| raw[a][b])?;
            check_latin(n, |a, b| raw[a][b])?;
        }
        AssocCheck::Sampled(count) => {
            check_latin(n, |a, b| raw[a][b])?;
            check_assoc_sampled(n, count, |a, b| raw[a][b])?;
        }
    }

    // swap the identity into slot 0
    let relabel: Vec<ElementId> = (0..n)
        .map(|i| {
            ElementId::from_index(if i == e {
                0
            } else if i == 0 {
                e
            } else {
                i
            })
        })
        .collect();
    let mut table = vec![ElementId::IDENTITY; n * n];
    for a in 0..n {
        for b in 0..n {
            table[relabel[a].index() * n + relabel[b].index()] = relabel[raw[a][b]];
        }
    }
    let group = FiniteGroup::from_table(n, table, format!("table(n={n})"));
    Ok(ValidatedTable {
        group,
        identity_in_source: e,
        relabel,
        associativity: assoc,
    })
}

fn check_latin(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let p = mul(a, b);
            if seen[p] == a {
                return Err(GroupError::NotLatin { row: a, col: b, value: p });
            }
            seen[p] = a;
        }
    }
    let mut seen = vec![usize::MAX; n];
    for b in 0..n {
        for a in 0..n {
            let p = mul(a, b);
            if seen[p] == b {
                return Err(GroupError::NotLatin { row: a, col: b, value: p });
            }
            seen[p] = b;
        }
    }
    Ok(())
}

fn check_assoc_full(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

fn check_assoc_sampled(n: usize, count: usize, mul: impl Fn(usize, usize) -> usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a11c);
    for _ in 0..count {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
            return Err(GroupError::NotAssociative { a, b, c });
        }
    }
    Ok(())
}

impl FiniteGroup {
    /// Build from a table already known to satisfy the group axioms with identity 0.
    pub(crate) fn from_table(n: usize, table: Vec<ElementId>, label: String) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![ElementId::IDENTITY; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&p| p == ElementId::IDENTITY)
                .expect("every row of a group table contains the identity");
            inv[a] = ElementId::from_index(b);
        }
        let mut ord = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = table[x * n + a].index();
                k += 1;
            }
            ord[a] = k;
        }
        FiniteGroup {
            n,
            table,
            inv,
            ord,
            label,
        }
    }

    /// Build from a product function on `0..n`, identity at 0.
    pub(crate) fn from_fn(n: usize, label: String, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(ElementId::from_index(mul(a, b)));
            }
        }
        Self::from_table(n, table, label)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId::from_index)
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    #[inline]
    pub fn compose(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        self.inv[a.index()]
    }

    /// Order of `a`, read from the table computed at construction.
    #[inline]
    pub fn element_order(&self, a: ElementId) -> u32 {
        self.ord[a.index()]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.ord
    }

    pub fn row(&self, a: ElementId) -> &[ElementId] {
        &self.table[a.index() * self.n..(a.index() + 1) * self.n]
    }

    pub fn power(&self, a: ElementId, k: u64) -> ElementId {
        let k = k % self.element_order(a) as u64;
        let mut x = ElementId::IDENTITY;
        for _ in 0..k {
            x = self.compose(x, a);
        }
        x
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.compose(a, b) == self.compose(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| {
            self.commutes(ElementId::from_index(a), ElementId::from_index(b))
        }))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Subgroup {
        let members: Vec<ElementId> = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.commutes(z, g)))
            .collect();
        Subgroup::from_sorted(self.n, members)
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.ord.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// The subgroup generated by one element, as a sorted id set.
    pub fn cyclic_subgroup(&self, x: ElementId) -> Subgroup {
        let mut members = Vec::with_capacity(self.element_order(x) as usize);
        let mut y = ElementId::IDENTITY;
        loop {
            members.push(y);
            y = self.compose(y, x);
            if y == ElementId::IDENTITY {
                break;
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(self.n, members)
    }

    /// Check that `members` is a subgroup and wrap it.
    pub fn subgroup_from_set(&self, members: impl IntoIterator<Item = ElementId>) -> Result<Subgroup> {
        let mut set = BTreeSet::new();
        for m in members {
            if m.index() >= self.n {
                return Err(GroupError::ElementOutOfRange {
                    element: m.index(),
                    n: self.n,
                });
            }
            set.insert(m);
        }
        if !set.contains(&ElementId::IDENTITY) {
            return Err(GroupError::MissingIdentity);
        }
        let sub = Subgroup::from_sorted(self.n, set.into_iter().collect());
        for &a in sub.members() {
            let ai = self.inverse(a);
            if !sub.contains(ai) {
                return Err(GroupError::NotASubgroup {
                    a: a.index(),
                    b: a.index(),
                    product: ai.index(),
                });
            }
            for &b in sub.members() {
                let p = self.compose(a, b);
                if !sub.contains(p) {
                    return Err(GroupError::NotASubgroup {
                        a: a.index(),
                        b: b.index(),
                        product: p.index(),
                    });
                }
            }
        }
        Ok(sub)
    }

    /// The subgroup as a group in its own right; member `i` of `s` becomes id `i`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> FiniteGroup {
        let mut local = vec![u32::MAX; self.n];
        for (i, &m) in s.members().iter().enumerate() {
            local[m.index()] = i as u32;
        }
        let members = s.members();
        let k = members.len();
        FiniteGroup::from_fn(k, format!("sub({})", self.label), |i, j| {
            local[self.compose(members[i], members[j]).index()] as usize
        })
    }

    fn ensure_central(&self, z: &Subgroup) -> Result<()> {
        for &m in z.members() {
            if let Some(g) = self.elements().find(|&g| !self.commutes(m, g)) {
                return Err(GroupError::NotCentral {
                    member: m.index(),
                    element: g.index(),
                });
            }
        }
        Ok(())
    }

    /// Cosets of a central subgroup, ordered by smallest member.
    fn central_cosets(&self, z: &Subgroup) -> (Vec<Vec<ElementId>>, Vec<u32>) {
        let mut coset_of = vec![u32::MAX; self.n];
        let mut cosets = Vec::with_capacity(self.n / z.len());
        for a in self.elements() {
            if coset_of[a.index()] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            let mut coset: Vec<ElementId> = z.members().iter().map(|&x| self.compose(a, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                coset_of[x.index()] = idx;
            }
            cosets.push(coset);
        }
        (cosets, coset_of)
    }

    /// `G/Z` for a central subgroup `Z`, cosets labelled by smallest member.
    pub fn quotient_by_central(&self, z: &Subgroup) -> Result<FiniteGroup> {
        self.ensure_central(z)?;
        let (cosets, coset_of) = self.central_cosets(z);
        let m = cosets.len();
        Ok(FiniteGroup::from_fn(m, format!("{}/Z", self.label), |i, j| {
            coset_of[self.compose(cosets[i][0], cosets[j][0]).index()] as usize
        }))
    }

    /// Cosets of a central subgroup with their minimal-order representatives.
    pub fn coset_partition(&self, z: &Subgroup) -> Result<CosetPartition> {
        self.ensure_central(z)?;
        let (cosets, coset_of) = self.central_cosets(z);
        let reps = cosets
            .iter()
            .enumerate()
            .map(|(i, coset)| {
                // members are sorted, so min_by_key keeps the smallest id on ties
                let y = *coset
                    .iter()
                    .min_by_key(|&&x| self.element_order(x))
                    .expect("cosets are nonempty");
                MinimalRep {
                    coset_index: i,
                    y,
                    k: self.element_order(y),
                }
            })
            .collect();
        Ok(CosetPartition {
            kernel: z.clone(),
            cosets,
            reps,
            coset_of,
        })
    }

    /// Verify every group invariant on the stored table.
    pub fn check_invariants(&self, assoc: AssocCheck) -> Result<()> {
        let n = self.n;
        let mul = |a: usize, b: usize| self.table[a * n + b].index();
        for j in 0..n {
            if mul(0, j) != j || mul(j, 0) != j {
                return Err(GroupError::NoIdentity);
            }
        }
        check_latin(n, mul)?;
        match assoc {
            AssocCheck::Full => check_assoc_full(n, mul)?,
            AssocCheck::Sampled(count) => check_assoc_sampled(n, count, mul)?,
        }
        for a in self.elements() {
            let ai = self.inverse(a);
            if self.compose(a, ai) != ElementId::IDENTITY || self.inverse(ai) != a {
                return Err(GroupError::NoInverse { element: a.index() });
            }
            let k = self.element_order(a);
            let mut x = ElementId::IDENTITY;
            for step in 1..=k {
                x = self.compose(x, a);
                if (x == ElementId::IDENTITY) != (step == k) {
                    return Err(GroupError::InvalidArgument(format!("stored order of {a} is wrong")));
                }
            }
            if n % k as usize != 0 {
                return Err(GroupError::InvalidArgument(format!("order of {a} does not divide {n}")));
            }
        }
        Ok(())
    }

    /// The table as nested rows of plain indices.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].iter().map(|x| x.index()).collect())
            .collect()
    }

    /// The same table with element `x` renamed to `perm[x]`.
    pub fn permuted_rows(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![vec![0usize; self.n]; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                rows[perm[a]][perm[b]] = perm[self.table[a * self.n + b].index()];
            }
        }
        rows
    }
}

/// Componentwise product; `(a, b)` gets id `a * |h| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limit: SizeLimit) -> Result<FiniteGroup> {
    let n = limit.check(g.order() as u128 * h.order() as u128)?;
    let nh = h.order();
    let label = format!("({})x({})", g.label(), h.label());
    Ok(FiniteGroup::from_fn(n, label, |x, y| {
        let a = g.compose(ElementId::from_index(x / nh), ElementId::from_index(y / nh));
        let b = h.compose(ElementId::from_index(x % nh), ElementId::from_index(y % nh));
        a.index() * nh + b.index()
    }))
}

/// Sorted member list with a membership mask over the parent group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    members: Vec<ElementId>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_sorted(parent_order: usize, members: Vec<ElementId>) -> Self {
        let mut mask = vec![false; parent_order];
        for m in &members {
            mask[m.index()] = true;
        }
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }
}

/// An element of minimal order in one coset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MinimalRep {
    pub coset_index: usize,
    pub y: ElementId,
    pub k: u32,
}

/// The cosets of a central subgroup; `cosets[0]` is the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub kernel: Subgroup,
    pub cosets: Vec<Vec<ElementId>>,
    pub reps: Vec<MinimalRep>,
    coset_of: Vec<u32>,
}

impl CosetPartition {
    /// Index `[G : Z]`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_of(&self, x: ElementId) -> usize {
        self.coset_of[x.index()] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, format!("cyclic:{n}"), |a, b| (a + b) % n)
    }

    fn z6_rows() -> Vec<Vec<usize>> {
        (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect()
    }

    fn e(i: usize) -> ElementId {
        ElementId::from_index(i)
    }

    #[test]
    fn trivial_and_order_two_tables() {
        let g = validate_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let g = validate_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element_order(e(1)), 2);
    }

    #[test]
    fn mutated_z6_is_not_associative() {
        let mut rows = z6_rows();
        rows[1][2] = 4;
        let err = validate_table(&rows).unwrap_err();
        let GroupError::NotAssociative { a, b, c } = err else {
            panic!("expected NotAssociative, got {err:?}");
        };
        let mul = |x: usize, y: usize| rows[x][y];
        assert_ne!(mul(mul(a, b), c), mul(a, mul(b, c)));
    }

    #[test]
    fn sampled_mode_still_catches_latin_failures() {
        let mut rows = z6_rows();
        rows[1][2] = 4;
        assert!(matches!(
            validate_table_with(&rows, AssocCheck::Sampled(10)),
            Err(GroupError::NotLatin { .. })
        ));
    }

    #[test]
    fn missing_identity_and_bad_shape() {
        assert!(matches!(validate_table(&[vec![1, 1], vec![1, 1]]), Err(GroupError::NoIdentity)));
        assert!(matches!(validate_table(&[vec![0, 1], vec![1]]), Err(GroupError::NotClosed { .. })));
        assert!(matches!(validate_table(&[vec![0, 2], vec![1, 0]]), Err(GroupError::NotClosed { .. })));
        assert!(matches!(validate_table(&[]), Err(GroupError::Empty)));
    }

    #[test]
    fn no_inverse_is_reported() {
        // identity at 0, but 1*1 = 1 and 1 has no inverse
        let rows = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 0]];
        assert_eq!(validate_table(&rows).unwrap_err(), GroupError::NoInverse { element: 1 });
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // Z6 relabeled so that the identity is 3
        let perm = [3, 0, 1, 2, 4, 5];
        let rows = cyclic(6).permuted_rows(&perm);
        let v = validate_table_with(&rows, AssocCheck::Full).unwrap();
        assert_eq!(v.identity_in_source, 3);
        assert_eq!(v.relabel[3], ElementId(0));
        assert_eq!(v.relabel[0], ElementId(3));
        v.group.check_invariants(AssocCheck::Full).unwrap();
        let mut orders = v.group.element_orders().to_vec();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 3, 6, 6]);
    }

    #[test]
    fn compose_and_orders() {
        let z6 = cyclic(6);
        assert_eq!(z6.compose(e(2), e(3)), e(5));
        assert_eq!(z6.compose(e(0), e(4)), e(4));
        let z12 = cyclic(12);
        assert_eq!(z12.element_order(e(4)), 3);
        assert_eq!(z12.element_order(e(0)), 1);
        assert_eq!(z12.power(e(5), 3), e(3));
    }

    #[test]
    fn abelian_center_is_everything() {
        let g = cyclic(10);
        assert_eq!(g.center().len(), 10);
        let q = g.quotient_by_central(&g.center()).unwrap();
        assert_eq!(q.order(), 1);
        let p = g.coset_partition(&g.center()).unwrap();
        assert_eq!(p.index(), 1);
        assert_eq!(p.reps[0], MinimalRep { coset_index: 0, y: e(0), k: 1 });
    }

    #[test]
    fn quotient_orders_divide_element_orders() {
        let g = cyclic(12);
        let z = g.subgroup_from_set([e(0), e(4), e(8)]).unwrap();
        let q = g.quotient_by_central(&z).unwrap();
        assert_eq!(q.order(), 4);
        let p = g.coset_partition(&z).unwrap();
        for a in g.elements() {
            let c = ElementId::from_index(p.coset_of(a));
            assert_eq!(g.element_order(a) % q.element_order(c), 0);
        }
    }

    #[test]
    fn exponent_of_cyclic() {
        assert_eq!(cyclic(6).exponent(), 6);
        assert_eq!(cyclic(1).exponent(), 1);
    }

    #[test]
    fn product_with_trivial_keeps_table() {
        let h = cyclic(5);
        let p = direct_product(&cyclic(1), &h, SizeLimit::default()).unwrap();
        assert_eq!(p.to_rows(), h.to_rows());
        let z6 = direct_product(&cyclic(2), &cyclic(3), SizeLimit::default()).unwrap();
        assert!(z6.element_orders().contains(&6));
        assert!(matches!(
            direct_product(&cyclic(100), &cyclic(100), SizeLimit::default()),
            Err(GroupError::SizeLimitExceeded { order: 10000, cap: 4096 })
        ));
    }

    #[test]
    fn subgroup_checks() {
        let g = cyclic(6);
        assert_eq!(g.subgroup_from_set([e(0)]).unwrap().len(), 1);
        assert_eq!(g.subgroup_from_set([e(0), e(3)]).unwrap().len(), 2);
        assert_eq!(g.subgroup_from_set([e(2), e(4)]).unwrap_err(), GroupError::MissingIdentity);
        assert!(matches!(
            g.subgroup_from_set([e(0), e(1)]),
            Err(GroupError::NotASubgroup { .. })
        ));
        assert!(matches!(
            g.subgroup_from_set([e(0), e(9)]),
            Err(GroupError::ElementOutOfRange { element: 9, n: 6 })
        ));
    }

    #[test]
    fn sampled_check_passes_on_groups() {
        let g = cyclic(40);
        g.check_invariants(AssocCheck::Sampled(1000)).unwrap();
        let v = validate_table_with(&g.to_rows(), AssocCheck::Sampled(1000)).unwrap();
        assert_eq!(v.associativity, AssocCheck::Sampled(1000));
    }

    #[test]
    fn subgroup_as_group_restricts_table() {
        let g = cyclic(12);
        let s = g.cyclic_subgroup(e(3));
        assert_eq!(s.members(), &[e(0), e(3), e(6), e(9)]);
        let h = g.subgroup_as_group(&s);
        assert_eq!(h.order(), 4);
        assert_eq!(h.exponent(), 4);
    }
}
