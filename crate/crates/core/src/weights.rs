//! Partitions, dominant `GL` weights and the two pieces of representation
//! theory everything else is built on: Littlewood–Richardson coefficients
//! and the Weyl dimension formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers with trailing zeros
/// stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Skips validation. Callers guarantee the parts are weakly decreasing.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        Partition::from_sorted(vec![k])
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition::from_sorted(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Row `i`, zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(0) as usize <= cols
    }

    /// Complement inside the `rows x cols` rectangle, rotated by 180 degrees.
    pub fn complement(&self, rows: usize, cols: usize) -> Result<Partition> {
        if !self.fits_box(rows, cols) {
            return Err(Error::OutsideBox(self.to_string(), rows, cols));
        }
        let parts = (0..rows)
            .map(|i| cols as u32 - self.part(rows - 1 - i))
            .collect();
        Ok(Partition::from_sorted(parts))
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count() as u32)
            .collect();
        Partition::from_sorted(parts)
    }

    /// Pads to a `GLWeight` of the given length.
    pub fn to_weight(&self, len: usize) -> Result<GLWeight> {
        if self.len() > len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: self.len(),
            });
        }
        let entries = (0..len).map(|i| self.part(i) as i64).collect();
        GLWeight::new(entries)
    }

    /// All partitions inside the `rows x cols` box, ordered by size and then
    /// reverse-lexicographically.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            for v in 0..=max {
                prefix.push(v);
                rec(rows, v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols as u32, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        out
    }

    /// All partitions of `size` with at most `rows` rows.
    pub fn of_size(size: u32, rows: usize) -> Vec<Partition> {
        fn rec(left: u32, max: u32, rows: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            if prefix.len() == rows {
                return;
            }
            for v in (1..=max.min(left)).rev() {
                prefix.push(v);
                rec(left - v, v, rows, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, rows, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::Parse {
                    offset: 0,
                    msg: format!("bad partition part {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dominant weight of `GL_len`: a weakly decreasing integer vector of fixed
/// length. Unlike [`Partition`], entries may be negative and trailing zeros
/// are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GLWeight {
    entries: Vec<i64>,
}

impl TryFrom<Vec<i64>> for GLWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        GLWeight::new(v)
    }
}

impl From<GLWeight> for Vec<i64> {
    fn from(w: GLWeight) -> Self {
        w.entries
    }
}

impl GLWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeight("weight must have positive length".into()));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "weight entries must be weakly decreasing: {entries:?}"
            )));
        }
        Ok(GLWeight { entries })
    }

    pub fn zero(len: usize) -> Self {
        GLWeight {
            entries: vec![0; len.max(1)],
        }
    }

    /// `(c, c, ..., c)`, the `c`-th power of the determinant.
    pub fn constant(len: usize, c: i64) -> Self {
        GLWeight {
            entries: vec![c; len.max(1)],
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> i64 {
        self.entries[0]
    }

    pub fn last(&self) -> i64 {
        *self.entries.last().unwrap()
    }

    pub fn size(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Adds `c` to every entry (tensoring with `det^c`).
    pub fn shift(&self, c: i64) -> GLWeight {
        GLWeight {
            entries: self.entries.iter().map(|e| e + c).collect(),
        }
    }

    /// Highest weight of the dual representation.
    pub fn dual(&self) -> GLWeight {
        GLWeight {
            entries: self.entries.iter().rev().map(|e| -e).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.last() >= 0
    }

    /// Drops trailing zeros. Fails on negative entries.
    pub fn to_partition(&self) -> Result<Partition> {
        if !self.is_nonnegative() {
            return Err(Error::InvalidWeight(format!(
                "weight {self} has negative entries"
            )));
        }
        Ok(Partition::from_sorted(
            self.entries.iter().map(|&e| e as u32).collect(),
        ))
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

type LrKey = (Partition, Partition, usize);
pub type LrTable = BTreeMap<Partition, u64>;

fn lr_cache() -> &'static RwLock<HashMap<LrKey, Arc<LrTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<LrKey, Arc<LrTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Littlewood–Richardson expansion of `s_lambda * s_mu`, keeping only the
/// `nu` with at most `max_rows` rows.
///
/// Results are memoized; the cache is keyed on the ordered pair so the
/// computation itself never depends on what was cached before.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition, max_rows: usize) -> Arc<LrTable> {
    // c^nu_{lambda mu} is symmetric; enumerate with the smaller content.
    let (outer, content) = if mu.size() <= lambda.size() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let key = (outer.clone(), content.clone(), max_rows);
    if let Some(hit) = lr_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let table = Arc::new(lr_enumerate(outer, content, max_rows));
    lr_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| table.clone())
        .clone()
}

/// A single coefficient `c^nu_{lambda mu}`.
pub fn lr_coefficient(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    lr_coefficients(lambda, mu, nu.len())
        .get(nu)
        .copied()
        .unwrap_or(0)
}

/// Cache-free LR enumeration: add `mu_1` ones, then `mu_2` twos, ... as
/// horizontal strips, enforcing the lattice-word condition row by row.
pub fn lr_enumerate(lambda: &Partition, mu: &Partition, max_rows: usize) -> LrTable {
    let mut out = LrTable::new();
    if lambda.len() > max_rows || mu.len() > max_rows {
        return out;
    }
    let mut shape: Vec<u32> = (0..max_rows).map(|i| lambda.part(i)).collect();
    let mut prev_counts = vec![0u32; max_rows];
    place_label(0, mu.parts(), &mut shape, &mut prev_counts, &mut out);
    out
}

fn place_label(
    label: usize,
    content: &[u32],
    shape: &mut Vec<u32>,
    prev_counts: &mut Vec<u32>,
    out: &mut LrTable,
) {
    if label == content.len() {
        *out.entry(Partition::from_sorted(shape.clone())).or_insert(0) += 1;
        return;
    }
    let rows = shape.len();
    let old = shape.clone();
    let mut counts = vec![0u32; rows];
    fill_strip(
        label, 0, content[label], content, &old, shape, &mut counts, prev_counts, 0, 0, out,
    );
}

#[allow(clippy::too_many_arguments)]
fn fill_strip(
    label: usize,
    row: usize,
    left: u32,
    content: &[u32],
    old: &[u32],
    shape: &mut Vec<u32>,
    counts: &mut Vec<u32>,
    prev_counts: &mut Vec<u32>,
    placed_so_far: u32,
    prev_before: u32,
    out: &mut LrTable,
) {
    if left == 0 {
        let mut next_prev = counts.clone();
        std::mem::swap(prev_counts, &mut next_prev);
        place_label(label + 1, content, shape, prev_counts, out);
        std::mem::swap(prev_counts, &mut next_prev);
        return;
    }
    if row == shape.len() {
        return;
    }
    // Horizontal strip: row may grow up to the old length of the row above.
    let cap = if row == 0 { left } else { (old[row - 1] - old[row]).min(left) };
    // Lattice: labels placed in rows <= row may not exceed the previous
    // label's count in rows < row.
    let lattice_cap = if label == 0 {
        left
    } else {
        prev_before.saturating_sub(placed_so_far)
    };
    let cap = cap.min(lattice_cap);
    let next_prev_before = prev_before + if label == 0 { 0 } else { prev_counts[row] };
    for k in (0..=cap).rev() {
        shape[row] = old[row] + k;
        counts[row] = k;
        fill_strip(
            label,
            row + 1,
            left - k,
            content,
            old,
            shape,
            counts,
            prev_counts,
            placed_so_far + k,
            next_prev_before,
            out,
        );
    }
    shape[row] = old[row];
    counts[row] = 0;
}

/// Dimension of the irreducible `GL_n` module with highest weight `mu`.
pub fn weyl_dimension(mu: &GLWeight, n: usize) -> Result<u64> {
    if mu.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: mu.len(),
        });
    }
    let e = mu.entries();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= e[i] - e[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let q = num / den;
    Ok(q.to_u64().expect("Weyl dimension exceeds u64"))
}

/// Every composition `(l_1, ..., l_n)` of `l`, in reverse-lexicographic order.
pub fn sym_power_compositions(l: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in (0..=left).rev() {
            prefix.push(v);
            rec(left - v, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if l == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(l, n, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
