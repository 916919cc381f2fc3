//! Named group families, the group-spec grammar, and Cayley-table files.
//!
//! Element numbering conventions:
//!
//! * cyclic `Z_n`: residue `k` is id `k`.
//! * abelian `Z_{n1} x ... x Z_{nk}`: mixed radix, first factor most significant.
//! * dihedral of order `2n`: ids `0..n` are rotations `r^i`, ids `n..2n` are
//!   reflections `s r^(i-n)`.
//! * dicyclic of order `4n`: ids `0..2n` are `a^i`, ids `2n..4n` are `a^(i-2n) b`.
//! * symmetric: permutations in lexicographic order of their images.
//! * Heisenberg: `[[1,a,c],[0,1,b],[0,0,1]]` has id `c p^2 + a p + b`.
//! * products: `(a, b)` has id `a |h| + b`; central quotients keep the
//!   smaller id of each pair and renumber in increasing order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::arith::{factorize, is_power_of_two, is_prime};
use crate::error::{GroupError, Result};
use crate::group::{
    direct_product, validate_table_with, AssocCheck, ElementId, FiniteGroup, SizeLimit,
    TRUST_THRESHOLD,
};

/// Triples sampled when an imported table is trusted.
pub const TRUSTED_SAMPLE: usize = 200_000;

pub fn make_cyclic(n: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("cyclic group needs n >= 1".into()));
    }
    let n = limit.check(n as u128)?;
    Ok(FiniteGroup::from_fn(n, format!("cyclic:{n}"), |a, b| (a + b) % n))
}

pub fn make_abelian(ns: &[usize], limit: SizeLimit) -> Result<FiniteGroup> {
    if ns.contains(&0) {
        return Err(GroupError::InvalidArgument("abelian factors must be >= 1".into()));
    }
    let order = ns.iter().try_fold(1u128, |acc, &k| acc.checked_mul(k as u128));
    let n = limit.check(order.unwrap_or(u128::MAX))?;
    let label = format!("abelian:{}", join(ns));
    let ns = ns.to_vec();
    Ok(FiniteGroup::from_fn(n, label, |a, b| {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for &k in ns.iter().rev() {
            out += ((a % k + b % k) % k) * scale;
            a /= k;
            b /= k;
            scale *= k;
        }
        out
    }))
}

/// Dihedral group of order `two_n`.
pub fn make_dihedral(two_n: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    if two_n < 4 || two_n % 2 != 0 {
        return Err(GroupError::InvalidArgument(format!(
            "dihedral order must be even and >= 4, got {two_n}"
        )));
    }
    let order = limit.check(two_n as u128)?;
    let n = order / 2;
    Ok(FiniteGroup::from_fn(order, format!("dihedral:{order}"), |x, y| {
        let (xs, i) = (x >= n, x % n);
        let (ys, j) = (y >= n, y % n);
        match (xs, ys) {
            (false, false) => (i + j) % n,
            (false, true) => n + (j + n - i) % n,
            (true, false) => n + (i + j) % n,
            (true, true) => (j + n - i) % n,
        }
    }))
}

/// Dicyclic group `<a, b | a^(2n) = 1, b^2 = a^n, b^-1 a b = a^-1>` of order `four_n`.
///
/// For `four_n` a power of two this is the generalized quaternion group.
pub fn make_generalized_quaternion(four_n: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    if four_n < 8 || four_n % 4 != 0 {
        return Err(GroupError::InvalidArgument(format!(
            "quaternion order must be a multiple of 4 and >= 8, got {four_n}"
        )));
    }
    let order = limit.check(four_n as u128)?;
    let m = order / 2; // order of a
    let n = order / 4;
    Ok(FiniteGroup::from_fn(order, format!("quaternion:{order}"), |x, y| {
        let (xb, i) = (x >= m, x % m);
        let (yb, j) = (y >= m, y % m);
        match (xb, yb) {
            (false, false) => (i + j) % m,
            (false, true) => m + (i + j) % m,
            (true, false) => m + (i + m - j) % m,
            (true, true) => (i + m - j + n) % m,
        }
    }))
}

/// All `k!` permutations of `k` points, generated by closure over a transposition and a `k`-cycle.
pub fn make_symmetric(k: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    if k == 0 || k > 7 {
        return Err(GroupError::InvalidArgument(format!("symmetric degree must be in 1..=7, got {k}")));
    }
    let order: u128 = (1..=k as u128).product();
    limit.check(order)?;

    let identity: Vec<u8> = (0..k as u8).collect();
    let mut transposition = identity.clone();
    transposition.swap(0, k.min(2) - 1);
    let cycle: Vec<u8> = (0..k as u8).map(|i| (i + 1) % k as u8).collect();
    let gens = [transposition, cycle];

    let compose = |p: &[u8], q: &[u8]| -> Vec<u8> { q.iter().map(|&i| p[i as usize]).collect() };

    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut queue = VecDeque::from([identity.clone()]);
    seen.insert(identity, ());
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q = compose(&p, g);
            if !seen.contains_key(&q) {
                seen.insert(q.clone(), ());
                queue.push_back(q);
            }
        }
    }
    let mut perms: Vec<Vec<u8>> = seen.into_keys().collect();
    perms.sort();
    debug_assert_eq!(perms.len() as u128, order);
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    Ok(FiniteGroup::from_fn(perms.len(), format!("symmetric:{k}"), |a, b| {
        index[compose(&perms[a], &perms[b]).as_slice()]
    }))
}

/// `(g x h) / <(zg, zh)>` for central involutions `zg`, `zh`.
pub fn central_product_mod_involution(
    g: &FiniteGroup,
    h: &FiniteGroup,
    zg: ElementId,
    zh: ElementId,
    limit: SizeLimit,
) -> Result<FiniteGroup> {
    Ok(central_product_tracked(g, h, zg, zh, limit)?.0)
}

fn ensure_central_involution(g: &FiniteGroup, z: ElementId) -> Result<()> {
    let ok = z.index() < g.order()
        && g.element_order(z) == 2
        && g.elements().all(|x| g.commutes(x, z));
    if ok {
        Ok(())
    } else {
        Err(GroupError::NotCentralInvolution { element: z.index() })
    }
}

/// Central product plus the image of the amalgamated involution.
fn central_product_tracked(
    g: &FiniteGroup,
    h: &FiniteGroup,
    zg: ElementId,
    zh: ElementId,
    limit: SizeLimit,
) -> Result<(FiniteGroup, ElementId)> {
    ensure_central_involution(g, zg)?;
    ensure_central_involution(h, zh)?;
    let full = g.order() * h.order();
    let n = limit.check(full as u128 / 2)?;
    let nh = h.order();
    let partner = |c: usize| {
        let a = g.compose(ElementId::from_index(c / nh), zg).index();
        let b = h.compose(ElementId::from_index(c % nh), zh).index();
        a * nh + b
    };
    // each class {c, partner(c)} is numbered by its smaller code
    let mut idx = vec![usize::MAX; full];
    let mut reps = Vec::with_capacity(n);
    for c in 0..full {
        if idx[c] == usize::MAX {
            idx[c] = reps.len();
            idx[partner(c)] = reps.len();
            reps.push(c);
        }
    }
    debug_assert_eq!(reps.len(), n);
    let label = format!("({})o({})", g.label(), h.label());
    let group = FiniteGroup::from_fn(n, label, |x, y| {
        let (cx, cy) = (reps[x], reps[y]);
        let a = g.compose(ElementId::from_index(cx / nh), ElementId::from_index(cy / nh));
        let b = h.compose(ElementId::from_index(cx % nh), ElementId::from_index(cy % nh));
        idx[a.index() * nh + b.index()]
    });
    let z = ElementId::from_index(idx[zg.index() * nh]);
    Ok((group, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `m` with `order = 2^(1+2m)`, `m >= 1`.
fn extraspecial_rank(order: usize) -> Option<u32> {
    if order < 8 || !is_power_of_two(order as u64) {
        return None;
    }
    let e = order.trailing_zeros();
    (e % 2 == 1).then_some((e - 1) / 2)
}

/// `m` with `order = 2^(2m+2)`, `m >= 1`.
fn almost_extraspecial_rank(order: usize) -> Option<u32> {
    if order < 16 || !is_power_of_two(order as u64) {
        return None;
    }
    let e = order.trailing_zeros();
    (e % 2 == 0).then_some((e - 2) / 2)
}

fn extraspecial_tracked(order: usize, sign: Sign, limit: SizeLimit) -> Result<(FiniteGroup, ElementId)> {
    let m = extraspecial_rank(order).ok_or_else(|| {
        GroupError::InvalidArgument(format!("extraspecial order must be 2^(1+2m) with m >= 1, got {order}"))
    })?;
    limit.check(order as u128)?;
    let d8 = make_dihedral(8, limit)?;
    // r^2 is id 2 in both D8 and Q8
    let z = ElementId(2);
    let mut acc = match sign {
        Sign::Plus => d8.clone(),
        Sign::Minus => make_generalized_quaternion(8, limit)?,
    };
    let mut acc_z = z;
    for _ in 1..m {
        (acc, acc_z) = central_product_tracked(&acc, &d8, acc_z, z, limit)?;
    }
    Ok((acc.with_label(format!("extraspecial:{order}:{sign}")), acc_z))
}

/// Extraspecial 2-group of the given order: `D8 o ... o D8` (plus) or `Q8 o D8 o ... o D8` (minus).
pub fn make_extraspecial(order: usize, sign: Sign, limit: SizeLimit) -> Result<FiniteGroup> {
    Ok(extraspecial_tracked(order, sign, limit)?.0)
}

/// Plus-type extraspecial group of order `order / 2` amalgamated with `Z4`.
pub fn make_almost_extraspecial(order: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    let m = almost_extraspecial_rank(order).ok_or_else(|| {
        GroupError::InvalidArgument(format!(
            "almost extraspecial order must be 2^(2m+2) with m >= 1, got {order}"
        ))
    })?;
    limit.check(order as u128)?;
    let (e, z) = extraspecial_tracked(1 << (2 * m + 1), Sign::Plus, limit)?;
    let z4 = make_cyclic(4, limit)?;
    let g = central_product_mod_involution(&e, &z4, z, ElementId(2), limit)?;
    Ok(g.with_label(format!("almost-extraspecial:{order}")))
}

/// Upper unitriangular 3x3 matrices over `Z_p`.
pub fn make_heisenberg(p: usize, limit: SizeLimit) -> Result<FiniteGroup> {
    if p % 2 == 0 || !is_prime(p as u64) {
        return Err(GroupError::InvalidArgument(format!("heisenberg needs an odd prime, got {p}")));
    }
    let n = limit.check((p as u128).pow(3))?;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p); // (c, a, b)
    Ok(FiniteGroup::from_fn(n, format!("heisenberg:{p}"), |x, y| {
        let (c1, a1, b1) = split(x);
        let (c2, a2, b2) = split(y);
        let c = (c1 + c2 + a1 * b2) % p;
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        c * p * p + a * p + b
    }))
}

/// Parse the Cayley-table text format: `n`, then `n` rows of `n` integers.
pub fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let parse_err = |line: usize, column: usize, message: String| GroupError::Parse {
        line,
        column,
        message,
    };
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| parse_err(1, 1, "empty file".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_err(1, 1, format!("expected the order, found {:?}", first.trim())))?;
    if n == 0 {
        return Err(parse_err(1, 1, "order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        if rows.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(lineno + 1, 1, "unexpected content after the last row".into()));
        }
        let mut row = Vec::with_capacity(n);
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).map(|p| p + offset).unwrap_or(offset) + 1;
            offset = column - 1 + token.len();
            let value: usize = token
                .parse()
                .map_err(|_| parse_err(lineno + 1, column, format!("expected an integer, found {token:?}")))?;
            if value >= n {
                return Err(parse_err(lineno + 1, column, format!("entry {value} out of range 0..{n}")));
            }
            row.push(value);
        }
        if row.len() != n {
            return Err(parse_err(
                lineno + 1,
                line.len() + 1,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(rows.len() + 2, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

pub fn format_table_text(rows: &[Vec<usize>]) -> String {
    let mut out = format!("{}\n", rows.len());
    for row in rows {
        out.push_str(&join(row).replace(',', " "));
        out.push('\n');
    }
    out
}

/// An imported table together with how it was relabeled.
#[derive(Debug, Clone)]
pub struct LoadedTable {
    pub group: FiniteGroup,
    pub identity_in_file: usize,
    /// `relabel[i]` is the internal id of file element `i`.
    pub relabel: Vec<ElementId>,
    pub associativity: AssocCheck,
}

/// Read and validate a table file. With `trust`, tables above
/// [`TRUST_THRESHOLD`] get a sampled associativity check instead of the full one.
pub fn load_table(path: &Path, trust: bool, limit: SizeLimit) -> Result<LoadedTable> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let rows = parse_table_text(&text)?;
    limit.check(rows.len() as u128)?;
    let assoc = if trust && rows.len() > TRUST_THRESHOLD {
        AssocCheck::Sampled(TRUSTED_SAMPLE)
    } else {
        AssocCheck::Full
    };
    let v = validate_table_with(&rows, assoc)?;
    Ok(LoadedTable {
        group: v.group.with_label(format!("table:{}", path.display())),
        identity_in_file: v.identity_in_source,
        relabel: v.relabel,
        associativity: v.associativity,
    })
}

/// Invariant-factor lists `d1 | d2 | ... | dr` (ascending) of every abelian
/// group of order `n`, one per isomorphism class.
pub fn abelian_invariant_factors(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n as u64) {
        let mut next = Vec::new();
        for part in partitions(e) {
            for existing in &out {
                // part is descending; pad both to the same length and multiply from the top
                let r = existing.len().max(part.len());
                let mut merged = vec![1usize; r];
                for (i, &d) in existing.iter().rev().enumerate() {
                    merged[r - 1 - i] *= d;
                }
                for (i, &k) in part.iter().enumerate() {
                    merged[r - 1 - i] *= (p as usize).pow(k);
                }
                next.push(merged);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Partitions of `e` as descending part lists.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Catalog family names, as they appear in specs and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic,
    Abelian,
    Dihedral,
    Quaternion,
    Symmetric,
    Extraspecial,
    AlmostExtraspecial,
    Heisenberg,
    Product,
    Table,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Cyclic,
        Family::Abelian,
        Family::Dihedral,
        Family::Quaternion,
        Family::Symmetric,
        Family::Extraspecial,
        Family::AlmostExtraspecial,
        Family::Heisenberg,
        Family::Product,
        Family::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Abelian => "abelian",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Symmetric => "symmetric",
            Family::Extraspecial => "extraspecial",
            Family::AlmostExtraspecial => "almost-extraspecial",
            Family::Heisenberg => "heisenberg",
            Family::Product => "product",
            Family::Table => "table",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SpecError;

    fn from_str(s: &str) -> std::result::Result<Self, SpecError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SpecError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// A parsed group description; `Display` prints the canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Quaternion(usize),
    Symmetric(usize),
    Extraspecial(usize, Sign),
    AlmostExtraspecial(usize),
    Heisenberg(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

/// Knobs for turning a spec into a group.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub limit: SizeLimit,
    pub trust_tables: bool,
}

impl GroupSpec {
    pub fn family(&self) -> Family {
        match self {
            GroupSpec::Cyclic(_) => Family::Cyclic,
            GroupSpec::Abelian(_) => Family::Abelian,
            GroupSpec::Dihedral(_) => Family::Dihedral,
            GroupSpec::Quaternion(_) => Family::Quaternion,
            GroupSpec::Symmetric(_) => Family::Symmetric,
            GroupSpec::Extraspecial(..) => Family::Extraspecial,
            GroupSpec::AlmostExtraspecial(_) => Family::AlmostExtraspecial,
            GroupSpec::Heisenberg(_) => Family::Heisenberg,
            GroupSpec::Product(..) => Family::Product,
            GroupSpec::Table(_) => Family::Table,
        }
    }

    /// Group order implied by the spec, without building it. `None` for tables.
    pub fn order(&self) -> Option<u128> {
        Some(match self {
            GroupSpec::Cyclic(n)
            | GroupSpec::Dihedral(n)
            | GroupSpec::Quaternion(n)
            | GroupSpec::Extraspecial(n, _)
            | GroupSpec::AlmostExtraspecial(n) => *n as u128,
            GroupSpec::Abelian(ns) => ns.iter().map(|&k| k as u128).product(),
            GroupSpec::Symmetric(k) => (1..=*k as u128).product(),
            GroupSpec::Heisenberg(p) => (*p as u128).pow(3),
            GroupSpec::Product(a, b) => a.order()? * b.order()?,
            GroupSpec::Table(_) => return None,
        })
    }

    pub fn build(&self, opts: BuildOptions) -> Result<FiniteGroup> {
        let limit = opts.limit;
        let g = match self {
            GroupSpec::Cyclic(n) => make_cyclic(*n, limit)?,
            GroupSpec::Abelian(ns) => make_abelian(ns, limit)?,
            GroupSpec::Dihedral(n) => make_dihedral(*n, limit)?,
            GroupSpec::Quaternion(n) => make_generalized_quaternion(*n, limit)?,
            GroupSpec::Symmetric(k) => make_symmetric(*k, limit)?,
            GroupSpec::Extraspecial(n, s) => make_extraspecial(*n, *s, limit)?,
            GroupSpec::AlmostExtraspecial(n) => make_almost_extraspecial(*n, limit)?,
            GroupSpec::Heisenberg(p) => make_heisenberg(*p, limit)?,
            GroupSpec::Product(a, b) => direct_product(&a.build(opts)?, &b.build(opts)?, limit)?,
            GroupSpec::Table(path) => load_table(path, opts.trust_tables, limit)?.group,
        };
        Ok(g.with_label(self.to_string()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(ns) => write!(f, "abelian:{}", join(ns)),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric:{k}"),
            GroupSpec::Extraspecial(n, s) => write!(f, "extraspecial:{n}:{s}"),
            GroupSpec::AlmostExtraspecial(n) => write!(f, "almost-extraspecial:{n}"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            GroupSpec::Product(a, b) => write!(f, "product:({a})x({b})"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> std::result::Result<Self, SpecError> {
        parse_spec(s, 0)
    }
}

pub fn parse_group_spec(s: &str) -> std::result::Result<GroupSpec, SpecError> {
    s.parse()
}

fn syntax(position: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        position,
        message: message.into(),
    }
}

fn parse_uint(s: &str, position: usize) -> std::result::Result<usize, SpecError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(position, format!("expected an unsigned integer, found {s:?}")));
    }
    s.parse().map_err(|_| syntax(position, format!("integer {s:?} is too large")))
}

/// `offset` is the position of `s` inside the outermost input, for error reporting.
fn parse_spec(s: &str, offset: usize) -> std::result::Result<GroupSpec, SpecError> {
    let (family_name, rest) = s
        .split_once(':')
        .ok_or_else(|| syntax(offset + s.len(), "expected FAMILY:PARAMS"))?;
    let family: Family = family_name.parse()?;
    let at = offset + family_name.len() + 1;
    let bad = |msg: String| SpecError::BadParameter(msg);

    let spec = match family {
        Family::Cyclic => {
            let n = parse_uint(rest, at)?;
            if n == 0 {
                return Err(bad("cyclic order must be >= 1".into()));
            }
            GroupSpec::Cyclic(n)
        }
        Family::Abelian => {
            let mut ns = Vec::new();
            if !rest.is_empty() {
                let mut pos = at;
                for part in rest.split(',') {
                    let k = parse_uint(part, pos)?;
                    if k == 0 {
                        return Err(bad("abelian factors must be >= 1".into()));
                    }
                    ns.push(k);
                    pos += part.len() + 1;
                }
            }
            GroupSpec::Abelian(ns)
        }
        Family::Dihedral => {
            let n = parse_uint(rest, at)?;
            if n < 4 || n % 2 != 0 {
                return Err(bad(format!("dihedral order must be even and >= 4, got {n}")));
            }
            GroupSpec::Dihedral(n)
        }
        Family::Quaternion => {
            let n = parse_uint(rest, at)?;
            if n < 8 || n % 4 != 0 {
                return Err(bad(format!("quaternion order must be a multiple of 4 and >= 8, got {n}")));
            }
            GroupSpec::Quaternion(n)
        }
        Family::Symmetric => {
            let k = parse_uint(rest, at)?;
            if !(1..=7).contains(&k) {
                return Err(bad(format!("symmetric degree must be in 1..=7, got {k}")));
            }
            GroupSpec::Symmetric(k)
        }
        Family::Extraspecial => {
            let (order, sign) = rest
                .split_once(':')
                .ok_or_else(|| syntax(at + rest.len(), "expected extraspecial:ORDER:+|-"))?;
            let n = parse_uint(order, at)?;
            let sign = match sign {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                other => return Err(syntax(at + order.len() + 1, format!("expected + or -, found {other:?}"))),
            };
            if extraspecial_rank(n).is_none() {
                return Err(bad(format!("extraspecial order must be 2^(1+2m) with m >= 1, got {n}")));
            }
            GroupSpec::Extraspecial(n, sign)
        }
        Family::AlmostExtraspecial => {
            let n = parse_uint(rest, at)?;
            if almost_extraspecial_rank(n).is_none() {
                return Err(bad(format!("almost extraspecial order must be 2^(2m+2) with m >= 1, got {n}")));
            }
            GroupSpec::AlmostExtraspecial(n)
        }
        Family::Heisenberg => {
            let p = parse_uint(rest, at)?;
            if p % 2 == 0 || !is_prime(p as u64) {
                return Err(bad(format!("heisenberg needs an odd prime, got {p}")));
            }
            GroupSpec::Heisenberg(p)
        }
        Family::Product => {
            let (left, after) = parenthesized(rest, at)?;
            let after_at = at + left.len() + 2;
            let right_src = after
                .strip_prefix('x')
                .ok_or_else(|| syntax(after_at, "expected 'x' between product factors"))?;
            let (right, tail) = parenthesized(right_src, after_at + 1)?;
            if !tail.is_empty() {
                return Err(syntax(after_at + right.len() + 3, "trailing input after product"));
            }
            GroupSpec::Product(
                Box::new(parse_spec(left, at + 1)?),
                Box::new(parse_spec(right, after_at + 2)?),
            )
        }
        Family::Table => {
            if rest.is_empty() {
                return Err(syntax(at, "expected a file path"));
            }
            GroupSpec::Table(PathBuf::from(rest))
        }
    };
    Ok(spec)
}

/// Split `(inner)tail` at the matching parenthesis.
fn parenthesized(s: &str, at: usize) -> std::result::Result<(&str, &str), SpecError> {
    if !s.starts_with('(') {
        return Err(syntax(at, "expected '('"));
    }
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok((&s[1..i], &s[i + 1..]));
                }
            }
            _ => {}
        }
    }
    Err(syntax(at + s.len(), "unbalanced parentheses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> SizeLimit {
        SizeLimit::default()
    }

    fn involutions(g: &FiniteGroup) -> usize {
        g.elements().filter(|&x| g.element_order(x) == 2).count()
    }

    #[test]
    fn dihedral_conventions() {
        let d8 = make_dihedral(8, lim()).unwrap();
        let s = ElementId(4);
        assert_eq!(d8.compose(s, s), ElementId(0));
        assert_eq!(d8.element_order(ElementId(1)), 4);
        assert_eq!(d8.center().members(), &[ElementId(0), ElementId(2)]);
        // s r s = r^-1
        let r = ElementId(1);
        assert_eq!(d8.compose(d8.compose(s, r), s), ElementId(3));
        let v4 = make_dihedral(4, lim()).unwrap();
        assert_eq!(involutions(&v4), 3);
        assert!(make_dihedral(6 + 1, lim()).is_err());
        assert!(make_dihedral(2, lim()).is_err());
    }

    #[test]
    fn quaternion_family() {
        let q8 = make_generalized_quaternion(8, lim()).unwrap();
        assert_eq!(involutions(&q8), 1);
        assert_eq!(q8.center().len(), 2);
        assert_eq!(q8.element_order(ElementId(1)), 4);
        let q16 = make_generalized_quaternion(16, lim()).unwrap();
        assert_eq!(involutions(&q16), 1);
        assert!(make_generalized_quaternion(10, lim()).is_err());
    }

    #[test]
    fn symmetric_family() {
        assert_eq!(make_symmetric(1, lim()).unwrap().order(), 1);
        let s3 = make_symmetric(3, lim()).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center().len(), 1);
        let s4 = make_symmetric(4, lim()).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.center().len(), 1);
        assert_eq!(s4.exponent(), 12);
        assert!(matches!(
            make_symmetric(7, lim()),
            Err(GroupError::SizeLimitExceeded { order: 5040, .. })
        ));
    }

    #[test]
    fn central_product_matches_quotient_of_direct_product() {
        let q8 = make_generalized_quaternion(8, lim()).unwrap();
        let z4 = make_cyclic(4, lim()).unwrap();
        let fast = central_product_mod_involution(&q8, &z4, ElementId(2), ElementId(2), lim()).unwrap();
        let p = direct_product(&q8, &z4, lim()).unwrap();
        let kernel = p.subgroup_from_set([ElementId(0), ElementId(2 * 4 + 2)]).unwrap();
        let slow = p.quotient_by_central(&kernel).unwrap();
        assert_eq!(fast.to_rows(), slow.to_rows());
        assert_eq!(fast.order(), 16);
        assert_eq!(fast.center().len(), 4);
    }

    #[test]
    fn central_product_of_z2_with_itself() {
        let z2 = make_cyclic(2, lim()).unwrap();
        let g = central_product_mod_involution(&z2, &z2, ElementId(1), ElementId(1), lim()).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn central_product_rejects_non_central_involution() {
        let d8 = make_dihedral(8, lim()).unwrap();
        let err = central_product_mod_involution(&d8, &d8, ElementId(4), ElementId(2), lim()).unwrap_err();
        assert_eq!(err, GroupError::NotCentralInvolution { element: 4 });
        let err = central_product_mod_involution(&d8, &d8, ElementId(1), ElementId(2), lim()).unwrap_err();
        assert_eq!(err, GroupError::NotCentralInvolution { element: 1 });
    }

    #[test]
    fn extraspecial_shapes() {
        assert_eq!(make_extraspecial(8, Sign::Plus, lim()).unwrap().to_rows(), make_dihedral(8, lim()).unwrap().to_rows());
        assert_eq!(
            make_extraspecial(8, Sign::Minus, lim()).unwrap().to_rows(),
            make_generalized_quaternion(8, lim()).unwrap().to_rows()
        );
        let plus = make_extraspecial(32, Sign::Plus, lim()).unwrap();
        let minus = make_extraspecial(32, Sign::Minus, lim()).unwrap();
        assert_eq!(plus.center().len(), 2);
        assert_eq!(minus.center().len(), 2);
        // 2^m(2^m +- 1) - 1 with m = 2
        assert_eq!(involutions(&plus), 19);
        assert_eq!(involutions(&minus), 11);
        assert!(make_extraspecial(24, Sign::Plus, lim()).is_err());
        assert!(make_extraspecial(16, Sign::Plus, lim()).is_err());
    }

    #[test]
    fn almost_extraspecial_shapes() {
        for order in [16, 64, 256] {
            let g = make_almost_extraspecial(order, lim()).unwrap();
            assert_eq!(g.order(), order);
            let z = g.center();
            assert_eq!(z.len(), 4);
            assert!(z.members().iter().any(|&x| g.element_order(x) == 4));
        }
        assert!(make_almost_extraspecial(32, lim()).is_err());
        assert!(make_almost_extraspecial(4, lim()).is_err());
    }

    #[test]
    fn heisenberg_shapes() {
        let h3 = make_heisenberg(3, lim()).unwrap();
        assert_eq!(h3.order(), 27);
        assert_eq!(h3.center().len(), 3);
        assert_eq!(h3.exponent(), 3);
        let h5 = make_heisenberg(5, lim()).unwrap();
        assert_eq!(h5.order(), 125);
        assert!(!h5.is_abelian());
        assert!(make_heisenberg(9, lim()).is_err());
        assert!(make_heisenberg(2, lim()).is_err());
    }

    #[test]
    fn abelian_family() {
        let v4 = make_abelian(&[2, 2], lim()).unwrap();
        assert_eq!(v4.exponent(), 2);
        assert_eq!(make_abelian(&[], lim()).unwrap().order(), 1);
        let g = make_abelian(&[3, 9], lim()).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 9);
        assert!(g.is_abelian());
    }

    #[test]
    fn invariant_factor_counts() {
        // number of abelian groups of order p^k is the partition number p(k)
        assert_eq!(abelian_invariant_factors(256).len(), 22);
        assert_eq!(abelian_invariant_factors(72).len(), 6);
        assert_eq!(abelian_invariant_factors(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_invariant_factors(12), vec![vec![2, 6], vec![12]]);
        for n in 1..200usize {
            for fs in abelian_invariant_factors(n) {
                assert_eq!(fs.iter().product::<usize>(), n);
                assert!(fs.windows(2).all(|w| w[1] % w[0] == 0));
            }
        }
    }

    #[test]
    fn table_text_roundtrip_and_errors() {
        let rows = make_cyclic(3, lim()).unwrap().to_rows();
        let text = format_table_text(&rows);
        assert_eq!(text, "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(parse_table_text(&text).unwrap(), rows);
        assert!(matches!(
            parse_table_text("2\n0 1\n1 x\n"),
            Err(GroupError::Parse { line: 3, column: 3, .. })
        ));
        assert!(matches!(parse_table_text("2\n0 1\n"), Err(GroupError::Parse { line: 3, .. })));
        assert!(matches!(parse_table_text("2\n0 1 0\n1 0\n"), Err(GroupError::Parse { line: 2, .. })));
        assert!(matches!(parse_table_text(""), Err(GroupError::Parse { line: 1, .. })));
        assert!(matches!(parse_table_text("1\n5\n"), Err(GroupError::Parse { line: 2, column: 1, .. })));
    }

    #[test]
    fn spec_examples() {
        assert_eq!(parse_group_spec("cyclic:12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(
            parse_group_spec("product:(quaternion:8)x(abelian:3)").unwrap(),
            GroupSpec::Product(Box::new(GroupSpec::Quaternion(8)), Box::new(GroupSpec::Abelian(vec![3])))
        );
        assert!(matches!(parse_group_spec("extraspecial:24:+"), Err(SpecError::BadParameter(_))));
        assert!(matches!(parse_group_spec("monster:1"), Err(SpecError::UnknownFamily(_))));
        assert!(matches!(parse_group_spec("cyclic"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_group_spec("cyclic:x"), Err(SpecError::Syntax { position: 7, .. })));
        assert!(matches!(parse_group_spec("product:(cyclic:2)(cyclic:3)"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_group_spec("product:(cyclic:2)x(cyclic:3"), Err(SpecError::Syntax { .. })));
        assert_eq!(parse_group_spec("abelian:").unwrap(), GroupSpec::Abelian(vec![]));
        assert_eq!(
            parse_group_spec("table:/tmp/a b.txt").unwrap(),
            GroupSpec::Table(PathBuf::from("/tmp/a b.txt"))
        );
    }

    #[test]
    fn built_specs_carry_their_label() {
        let spec: GroupSpec = "product:(dihedral:8)x(cyclic:3)".parse().unwrap();
        let g = spec.build(BuildOptions::default()).unwrap();
        assert_eq!(g.label(), "product:(dihedral:8)x(cyclic:3)");
        assert_eq!(g.order() as u128, spec.order().unwrap());
    }

    fn arb_leaf() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1usize..500).prop_map(GroupSpec::Cyclic),
            proptest::collection::vec(1usize..20, 0..4).prop_map(GroupSpec::Abelian),
            (2usize..100).prop_map(|n| GroupSpec::Dihedral(2 * n)),
            (2usize..50).prop_map(|n| GroupSpec::Quaternion(4 * n)),
            (1usize..=7).prop_map(GroupSpec::Symmetric),
            (1u32..5, any::<bool>()).prop_map(|(m, s)| GroupSpec::Extraspecial(
                1 << (2 * m + 1),
                if s { Sign::Plus } else { Sign::Minus }
            )),
            (1u32..5).prop_map(|m| GroupSpec::AlmostExtraspecial(1 << (2 * m + 2))),
            prop::sample::select(vec![3usize, 5, 7, 11, 13]).prop_map(GroupSpec::Heisenberg),
            "[a-z/._]{1,12}".prop_map(|p| GroupSpec::Table(PathBuf::from(p))),
        ]
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        arb_leaf().prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
        })
    }

    proptest! {
        #[test]
        fn spec_grammar_roundtrips(spec in arb_spec()) {
            let printed = spec.to_string();
            prop_assert_eq!(printed.parse::<GroupSpec>().unwrap(), spec);
        }
    }
}
