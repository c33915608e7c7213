//! Homogeneous bundles on `Gr(r,n)` and their decomposition into
//! irreducibles.
//!
//! An irreducible homogeneous bundle is written `(alpha; beta)`, meaning
//! `S_alpha(S^∨) ⊗ S_beta(Q)` with `alpha` a dominant `GL_r` weight and `beta`
//! a dominant `GL_{n-r}` weight. Duals negate and reverse both blocks.

mod character;
mod expr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use expr::BundleExpr;

use crate::ambient::Ambient;
use crate::error::Result;
use crate::weights::{lr_coefficient, lr_coefficients, sym_power_compositions, weyl_dimension, GLWeight, Partition};

/// One irreducible piece `(alpha; beta)` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrreducibleSummand {
    pub alpha: GLWeight,
    pub beta: GLWeight,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
}

impl IrreducibleSummand {
    /// Rank of a single copy.
    pub fn irreducible_rank(&self) -> u64 {
        weyl_dimension(&self.alpha, self.alpha.len()).unwrap()
            * weyl_dimension(&self.beta, self.beta.len()).unwrap()
    }

    pub fn rank(&self) -> u64 {
        self.multiplicity * self.irreducible_rank()
    }
}

impl fmt::Display for IrreducibleSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} mult={}",
            self.alpha, self.beta, self.multiplicity
        )
    }
}

/// A multiset of irreducible summands over a fixed ambient, ordered
/// lexicographically by `alpha` then `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summands {
    ambient: Ambient,
    terms: BTreeMap<(GLWeight, GLWeight), u64>,
}

impl Summands {
    pub fn zero(ambient: Ambient) -> Self {
        Summands {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn trivial(ambient: Ambient, rank: u64) -> Self {
        let mut s = Summands::zero(ambient);
        s.add(
            GLWeight::zero(ambient.r()),
            GLWeight::zero(ambient.corank()),
            rank,
        );
        s
    }

    /// A single irreducible. Weights must have lengths `r` and `n - r`.
    pub fn irreducible(ambient: Ambient, alpha: GLWeight, beta: GLWeight) -> Result<Self> {
        check_lengths(ambient, &alpha, &beta)?;
        let mut s = Summands::zero(ambient);
        s.add(alpha, beta, 1);
        Ok(s)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub(crate) fn add(&mut self, alpha: GLWeight, beta: GLWeight, mult: u64) {
        if mult > 0 {
            *self.terms.entry((alpha, beta)).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = IrreducibleSummand> + '_ {
        self.terms.iter().map(|((a, b), &m)| IrreducibleSummand {
            alpha: a.clone(),
            beta: b.clone(),
            multiplicity: m,
        })
    }

    pub fn to_vec(&self) -> Vec<IrreducibleSummand> {
        self.iter().collect()
    }

    /// Number of distinct irreducibles.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> u64 {
        self.iter().map(|s| s.rank()).sum()
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Summands) -> Result<Summands> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = self.clone();
        for ((a, b), &m) in &other.terms {
            out.add(a.clone(), b.clone(), m);
        }
        Ok(out)
    }

    /// `E^{⊕k}`.
    pub fn scale(&self, k: u64) -> Summands {
        let mut out = Summands::zero(self.ambient);
        for ((a, b), &m) in &self.terms {
            out.add(a.clone(), b.clone(), m * k);
        }
        out
    }

    pub fn dual(&self) -> Summands {
        let mut out = Summands::zero(self.ambient);
        for ((a, b), &m) in &self.terms {
            out.add(a.dual(), b.dual(), m);
        }
        out
    }

    /// Tensors every summand with `(det S^∨)^c`.
    pub fn twist(&self, c: i64) -> Summands {
        let mut out = Summands::zero(self.ambient);
        for ((a, b), &m) in &self.terms {
            out.add(a.shift(c), b.clone(), m);
        }
        out
    }

    /// One line per summand.
    pub fn to_text(&self) -> String {
        self.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_vec()).expect("summands serialize")
    }
}

fn check_lengths(ambient: Ambient, alpha: &GLWeight, beta: &GLWeight) -> Result<()> {
    use crate::error::Error;
    if alpha.len() != ambient.r() {
        return Err(Error::LengthMismatch {
            expected: ambient.r(),
            got: alpha.len(),
        });
    }
    if beta.len() != ambient.corank() {
        return Err(Error::LengthMismatch {
            expected: ambient.corank(),
            got: beta.len(),
        });
    }
    Ok(())
}

fn generator(ambient: Ambient, g: &BundleExpr) -> Summands {
    let r = ambient.r();
    let c = ambient.corank();
    let unit = |len: usize| {
        let mut v = vec![0; len];
        v[0] = 1;
        GLWeight::new(v).unwrap()
    };
    let (alpha, beta) = match g {
        BundleExpr::Sv => (unit(r), GLWeight::zero(c)),
        BundleExpr::S => (unit(r).dual(), GLWeight::zero(c)),
        BundleExpr::Q => (GLWeight::zero(r), unit(c)),
        BundleExpr::Qv => (GLWeight::zero(r), unit(c).dual()),
        BundleExpr::Trivial(m) => return Summands::trivial(ambient, *m as u64),
        _ => unreachable!("not a generator"),
    };
    let mut s = Summands::zero(ambient);
    s.add(alpha, beta, 1);
    s
}

/// Decomposes a bundle expression into irreducible homogeneous bundles.
pub fn normalize(ambient: Ambient, expr: &BundleExpr) -> Result<Summands> {
    expr.validate()?;
    Ok(normalize_rec(ambient, expr))
}

fn normalize_rec(ambient: Ambient, expr: &BundleExpr) -> Summands {
    match expr {
        BundleExpr::S | BundleExpr::Sv | BundleExpr::Q | BundleExpr::Qv | BundleExpr::Trivial(_) => {
            generator(ambient, expr)
        }
        BundleExpr::Sum(a, b) => normalize_rec(ambient, a)
            .direct_sum(&normalize_rec(ambient, b))
            .unwrap(),
        BundleExpr::Tensor(a, b) => {
            tensor_summands(&normalize_rec(ambient, a), &normalize_rec(ambient, b)).unwrap()
        }
        BundleExpr::Dual(a) => normalize_rec(ambient, a).dual(),
        BundleExpr::Sym(k, a) => schur_summands(&Partition::row(*k), &normalize_rec(ambient, a)),
        BundleExpr::Schur(lambda, a) => schur_summands(lambda, &normalize_rec(ambient, a)),
    }
}

/// LR expansion of one block: `S_x ⊗ S_y` for dominant weights of equal length.
fn tensor_block(x: &GLWeight, y: &GLWeight) -> Vec<(GLWeight, u64)> {
    let len = x.len();
    let sx = -x.last();
    let sy = -y.last();
    let px = x.shift(sx).to_partition().unwrap();
    let py = y.shift(sy).to_partition().unwrap();
    lr_coefficients(&px, &py, len)
        .iter()
        .map(|(nu, &c)| (nu.to_weight(len).unwrap().shift(-(sx + sy)), c))
        .collect()
}

/// Tensor product, expanding both blocks with Littlewood–Richardson after a
/// determinant shift makes the weights nonnegative.
pub fn tensor_summands(a: &Summands, b: &Summands) -> Result<Summands> {
    a.ambient.ensure_same(b.ambient)?;
    let mut out = Summands::zero(a.ambient);
    for ((a1, b1), &m1) in &a.terms {
        for ((a2, b2), &m2) in &b.terms {
            let alphas = tensor_block(a1, a2);
            let betas = tensor_block(b1, b2);
            for (al, ca) in &alphas {
                for (be, cb) in &betas {
                    out.add(al.clone(), be.clone(), m1 * m2 * ca * cb);
                }
            }
        }
    }
    Ok(out)
}

/// If `w - c·1` is `(1,0,...,0)` return `Some((c, false))`; if it is
/// `(0,...,0,-1)` return `Some((c, true))`.
fn standard_type(w: &GLWeight) -> Option<(i64, bool)> {
    let e = w.entries();
    let c = w.last();
    if e[0] == c + 1 && e[1..].iter().all(|&x| x == c) {
        return Some((c, false));
    }
    let c = w.first();
    if e[e.len() - 1] == c - 1 && e[..e.len() - 1].iter().all(|&x| x == c) {
        return Some((c, true));
    }
    None
}

fn is_constant(w: &GLWeight) -> bool {
    w.first() == w.last()
}

/// `S_lambda` of a single irreducible `(alpha; beta)`.
fn schur_irreducible(lambda: &Partition, alpha: &GLWeight, beta: &GLWeight, ambient: Ambient) -> Summands {
    let mut out = Summands::zero(ambient);
    let k = lambda.size() as i64;
    if lambda.is_empty() {
        return Summands::trivial(ambient, 1);
    }
    // Line bundle: only one-row shapes survive.
    if is_constant(alpha) && is_constant(beta) {
        if lambda.len() == 1 {
            out.add(alpha.shift(alpha.first() * (k - 1)), beta.shift(beta.first() * (k - 1)), 1);
        }
        return out;
    }
    // (standard or co-standard rep of one block) ⊗ (line bundle).
    let closed = |w: &GLWeight, other: &GLWeight| -> Option<(GLWeight, GLWeight)> {
        let (c, dual) = standard_type(w)?;
        if !is_constant(other) || lambda.len() > w.len() {
            return None;
        }
        let base = lambda.to_weight(w.len()).unwrap();
        let base = if dual { base.dual() } else { base };
        Some((base.shift(c * k), other.shift(other.first() * (k - 1))))
    };
    if let Some((a, b)) = closed(alpha, beta) {
        out.add(a, b, 1);
        return out;
    }
    if let Some((b, a)) = closed(beta, alpha) {
        out.add(a, b, 1);
        return out;
    }
    if standard_type(alpha).is_some() && is_constant(beta) || standard_type(beta).is_some() && is_constant(alpha) {
        // Too many rows for the block: the Schur functor vanishes.
        return out;
    }
    let chi = character::irreducible_character(alpha, beta);
    let image = character::schur_of_character(lambda, &chi, ambient.n());
    for (a, b, m) in character::decompose(image, ambient.r()) {
        out.add(a, b, m);
    }
    out
}

/// `S_lambda(E)` for a decomposed `E`, via
/// `S_lambda(A ⊕ B) = ⊕ c^lambda_{mu nu} S_mu(A) ⊗ S_nu(B)`.
pub fn schur_summands(lambda: &Partition, e: &Summands) -> Summands {
    let ambient = e.ambient;
    let copies: Vec<(GLWeight, GLWeight)> = e
        .terms
        .iter()
        .flat_map(|((a, b), &m)| std::iter::repeat_n((a.clone(), b.clone()), m as usize))
        .collect();
    let mut memo = HashMap::new();
    schur_of_copies(lambda, &copies, ambient, &mut memo)
}

fn sub_partitions(lambda: &Partition) -> Vec<Partition> {
    fn rec(lambda: &Partition, i: usize, prev: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            out.push(Partition::new(prefix.clone()).unwrap());
            return;
        }
        for v in 0..=lambda.part(i).min(prev) {
            prefix.push(v);
            rec(lambda, i + 1, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

fn schur_of_copies(
    lambda: &Partition,
    copies: &[(GLWeight, GLWeight)],
    ambient: Ambient,
    memo: &mut HashMap<(Partition, usize), Summands>,
) -> Summands {
    if lambda.is_empty() {
        return Summands::trivial(ambient, 1);
    }
    match copies.len() {
        0 => return Summands::zero(ambient),
        1 => return schur_irreducible(lambda, &copies[0].0, &copies[0].1, ambient),
        _ => {}
    }
    let key = (lambda.clone(), copies.len());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (head, rest) = (&copies[0], &copies[1..]);
    let subs = sub_partitions(lambda);
    let mut out = Summands::zero(ambient);
    for mu in &subs {
        let head_part = schur_irreducible(mu, &head.0, &head.1, ambient);
        if head_part.is_empty() {
            continue;
        }
        for nu in subs.iter().filter(|nu| nu.size() + mu.size() == lambda.size()) {
            let c = lr_coefficient(lambda, mu, nu);
            if c == 0 {
                continue;
            }
            let rest_part = schur_of_copies(nu, rest, ambient, memo);
            if rest_part.is_empty() {
                continue;
            }
            let prod = tensor_summands(&head_part, &rest_part).unwrap();
            out = out.direct_sum(&prod.scale(c)).unwrap();
        }
    }
    memo.insert(key, out.clone());
    out
}

/// `Sym^{l_1} S^∨ ⊗ ... ⊗ Sym^{l_n} S^∨` for one composition.
pub fn composition_summands(ambient: Ambient, composition: &[u32]) -> Summands {
    let r = ambient.r();
    let mut acc: BTreeMap<Partition, u64> = [(Partition::empty(), 1)].into_iter().collect();
    for &l in composition.iter().filter(|&&l| l > 0) {
        let mut next = BTreeMap::new();
        for (nu, &m) in &acc {
            for (rho, &c) in lr_coefficients(nu, &Partition::row(l), r).iter() {
                *next.entry(rho.clone()).or_insert(0) += m * c;
            }
        }
        acc = next;
    }
    let mut out = Summands::zero(ambient);
    for (nu, m) in acc {
        out.add(nu.to_weight(r).unwrap(), GLWeight::zero(ambient.corank()), m);
    }
    out
}

/// Decomposition of `Sym^l N^∨` with `N^∨ = (S^∨)^{⊕n}`, summed over all
/// compositions of `l` into `n` parts.
pub fn sym_conormal(ambient: Ambient, l: u32) -> Summands {
    let mut cache: HashMap<Vec<u32>, Summands> = HashMap::new();
    let mut out = Summands::zero(ambient);
    for comp in sym_power_compositions(l, ambient.n()) {
        let mut key = comp.clone();
        key.sort_unstable();
        let part = cache
            .entry(key)
            .or_insert_with(|| composition_summands(ambient, &comp))
            .clone();
        out = out.direct_sum(&part).unwrap();
    }
    out
}
