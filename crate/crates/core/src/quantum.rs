//! Small quantum cohomology of `Gr(r,n)` by rim-hook reduction, and an exact
//! semisimplicity certificate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::poly::{characteristic_polynomial, Matrix, RatPoly};
use crate::schubert::CohClass;
use crate::weights::{lr_coefficients, Partition};
use crate::Rational;

/// Integer polynomial in `q`, keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly(BTreeMap<u32, BigInt>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(BTreeMap::new())
    }

    pub fn monomial(c: BigInt, d: u32) -> Self {
        let mut p = QPoly::zero();
        p.add_term(d, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigInt> {
        &self.0
    }

    pub fn coefficient(&self, d: u32) -> BigInt {
        self.0.get(&d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, d: u32, c: BigInt) {
        let e = self.0.entry(d).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&d);
        }
    }

    fn add(&mut self, other: &QPoly) {
        for (d, c) in &other.0 {
            self.add_term(*d, c.clone());
        }
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn eval(&self, q0: &Rational) -> Rational {
        self.0
            .iter()
            .map(|(d, c)| Rational::from_integer(c.clone()) * num_traits::pow(q0.clone(), *d as usize))
            .sum()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *d == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "q")?,
                d => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// A quantum cohomology class: Schubert basis with `q`-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    ambient: Ambient,
    terms: BTreeMap<Partition, QPoly>,
}

impl QClass {
    pub fn zero(ambient: Ambient) -> Self {
        QClass {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn schubert(ambient: Ambient, lambda: Partition) -> Result<Self> {
        check_box(ambient, &lambda)?;
        let mut c = QClass::zero(ambient);
        c.add_term(lambda, 0, BigInt::one());
        Ok(c)
    }

    pub fn one(ambient: Ambient) -> Self {
        QClass::schubert(ambient, Partition::empty()).unwrap()
    }

    /// `Σ c σ_λ q^d`.
    pub fn from_terms<I: IntoIterator<Item = (Partition, u32, i64)>>(ambient: Ambient, terms: I) -> Result<Self> {
        let mut c = QClass::zero(ambient);
        for (p, d, x) in terms {
            check_box(ambient, &p)?;
            c.add_term(p, d, x.into());
        }
        Ok(c)
    }

    pub(crate) fn add_term(&mut self, p: Partition, d: u32, c: BigInt) {
        let e = self.terms.entry(p.clone()).or_default();
        e.add_term(d, c);
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Partition, QPoly> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Partition) -> QPoly {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &QClass) -> Result<QClass> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            let e = out.terms.entry(p.clone()).or_default();
            e.add(c);
            if e.is_zero() {
                out.terms.remove(p);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &QClass) -> Result<QClass> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = QClass::zero(self.ambient);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x.mul(y);
                for (nu, z) in basis_product(self.ambient, a, b).terms.iter() {
                    for (d, c) in xy.mul(z).0 {
                        out.add_term(nu.clone(), d, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Specialization `q = 0`.
    pub fn classical(&self) -> CohClass {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), Rational::from_integer(c.coefficient(0))));
        CohClass::from_terms(self.ambient, terms).unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let single = c.0.len() == 1;
                match (single, p.is_empty()) {
                    (_, true) => c.to_string(),
                    (true, false) if c.to_string() == "1" => format!("σ[{p}]"),
                    (true, false) => format!("{c}·σ[{p}]"),
                    (false, false) => format!("({c})·σ[{p}]"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for QClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect();
        let mut st = s.serialize_struct("QClass", 2)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn check_box(ambient: Ambient, p: &Partition) -> Result<()> {
    if p.fits_box(ambient.r(), ambient.corank()) {
        Ok(())
    } else {
        Err(Error::OutsideBox(p.to_string(), ambient.r(), ambient.corank()))
    }
}

/// Reduces a partition with at most `r` rows to the box by stripping
/// `n`-rim hooks. Returns `(sign, q-power, partition)` or `None` when the
/// reduction vanishes.
pub fn rim_hook_reduce(nu: &Partition, r: usize, n: usize) -> Option<(i64, u32, Partition)> {
    if nu.len() > r {
        return None;
    }
    let mut beads: Vec<usize> = (0..r).map(|i| nu.part(i) as usize + r - 1 - i).collect();
    let mut sign = 1i64;
    let mut q = 0u32;
    loop {
        let (pos, &top) = beads.iter().enumerate().max_by_key(|&(_, b)| *b).unwrap();
        if top < n {
            break;
        }
        let target = top - n;
        if beads.contains(&target) {
            return None;
        }
        let between = beads.iter().filter(|&&b| b > target && b < top).count();
        if (r - 1 - between) % 2 == 1 {
            sign = -sign;
        }
        beads[pos] = target;
        q += 1;
    }
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let parts = beads.iter().enumerate().map(|(i, &b)| (b + 1 + i - r) as u32).collect();
    Some((sign, q, Partition::new(parts).unwrap()))
}

type QCache = RwLock<HashMap<(Ambient, Partition, Partition), Arc<QClass>>>;

fn cache() -> &'static QCache {
    static CACHE: OnceLock<QCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn basis_product(ambient: Ambient, lambda: &Partition, mu: &Partition) -> Arc<QClass> {
    let key = if lambda <= mu {
        (ambient, lambda.clone(), mu.clone())
    } else {
        (ambient, mu.clone(), lambda.clone())
    };
    if let Some(hit) = cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let mut out = QClass::zero(ambient);
    for (nu, &c) in lr_coefficients(lambda, mu, ambient.r()).iter() {
        if let Some((sign, d, red)) = rim_hook_reduce(nu, ambient.r(), ambient.n()) {
            out.add_term(red, d, BigInt::from(sign) * BigInt::from(c));
        }
    }
    let out = Arc::new(out);
    cache().write().unwrap().insert(key, out.clone());
    out
}

/// `σ_λ * σ_μ` in `QH^*(Gr(r,n))`.
pub fn quantum_product(lambda: &Partition, mu: &Partition, r: usize, n: usize) -> Result<QClass> {
    let ambient = Ambient::new(r, n)?;
    check_box(ambient, lambda)?;
    check_box(ambient, mu)?;
    Ok((*basis_product(ambient, lambda, mu)).clone())
}

/// Matrix of `x ↦ c * x` at `q = q0`; column `j` is the image of the `j`-th
/// basis class in [`Partition::in_box`] order.
pub fn multiplication_matrix(c: &QClass, q0: &Rational) -> Matrix {
    let ambient = c.ambient;
    let basis = Partition::in_box(ambient.r(), ambient.corank());
    let index: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let columns: Vec<Vec<Rational>> = basis
        .par_iter()
        .map(|b| {
            let image = c.mul(&QClass::schubert(ambient, b.clone()).unwrap()).unwrap();
            let mut col = vec![Rational::zero(); basis.len()];
            for (p, coeff) in image.terms() {
                col[index[p]] = coeff.eval(q0);
            }
            col
        })
        .collect();
    (0..basis.len())
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Semisimple,
    Inconclusive,
}

/// One tested element together with its characteristic polynomial and
/// `gcd(p, p')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateAttempt {
    pub element: QClass,
    pub char_poly: RatPoly,
    pub gcd: RatPoly,
    pub squarefree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimplicityCertificate {
    pub ambient: Ambient,
    pub q0: String,
    pub verdict: Verdict,
    pub sigma1_squarefree: bool,
    pub attempts: Vec<CertificateAttempt>,
}

impl SemisimplicityCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Semisimple
    }

    /// The attempt that settled the verdict, or the last one tried.
    pub fn witness(&self) -> &CertificateAttempt {
        self.attempts
            .iter()
            .find(|a| a.squarefree)
            .unwrap_or_else(|| self.attempts.last().unwrap())
    }
}

const FALLBACK_ELEMENTS: i64 = 8;

/// `σ_1` first, then `σ_1 + c σ_λ` over degree-2 classes `λ` with
/// `c = 1, 2, 3`, then `σ_1` plus distinct small multiples of all degree 2
/// and 3 classes, then `Σ_i k^i σ_{λ_i}` over the positive-degree basis for
/// `k = 2, 3, ...`.
fn candidate_elements(ambient: Ambient) -> Vec<QClass> {
    let basis: Vec<Partition> = Partition::in_box(ambient.r(), ambient.corank())
        .into_iter()
        .filter(|p| !p.is_empty())
        .collect();
    let sigma1 = QClass::schubert(ambient, Partition::row(1)).unwrap();
    let mut out = vec![sigma1.clone()];
    for lambda in basis.iter().filter(|p| p.size() == 2) {
        for c in 1..=3 {
            let mut x = sigma1.clone();
            x.add_term(lambda.clone(), 0, BigInt::from(c));
            out.push(x);
        }
    }
    let low: Vec<&Partition> = basis.iter().filter(|p| (2..=3).contains(&p.size())).collect();
    for j in 1..=3 {
        let mut x = sigma1.clone();
        for (i, lambda) in low.iter().enumerate() {
            x.add_term((*lambda).clone(), 0, BigInt::from(i as i64 + j));
        }
        out.push(x);
    }
    for k in 2..=FALLBACK_ELEMENTS {
        let mut c = QClass::zero(ambient);
        let mut w = BigInt::one();
        for p in &basis {
            w *= k;
            c.add_term(p.clone(), 0, w.clone());
        }
        out.push(c);
    }
    out
}

fn attempt(element: QClass, q0: &Rational) -> CertificateAttempt {
    let char_poly = characteristic_polynomial(&multiplication_matrix(&element, q0));
    let gcd = char_poly.gcd(&char_poly.derivative());
    let squarefree = gcd.degree() == Some(0);
    CertificateAttempt {
        element,
        char_poly,
        gcd,
        squarefree,
    }
}

/// A squarefree characteristic polynomial of degree `N = dim QH` for some
/// `c` forces `Q[c] = QH`, hence `QH ≅ Q[x]/(p)` is a product of fields.
/// `σ_1` is tried first; when its polynomial has a repeated factor the
/// search moves on to generic elements, and reports inconclusive if none
/// of them works.
pub fn semisimplicity_certificate(r: usize, n: usize, q0: &Rational) -> Result<SemisimplicityCertificate> {
    let ambient = Ambient::new(r, n)?;
    if q0.is_zero() {
        return Err(Error::InvalidArgument(
            "q0 must be nonzero: the classical ring is not semisimple".into(),
        ));
    }
    let mut attempts = Vec::new();
    let mut verdict = Verdict::Inconclusive;
    for c in candidate_elements(ambient) {
        let a = attempt(c, q0);
        let done = a.squarefree;
        attempts.push(a);
        if done {
            verdict = Verdict::Semisimple;
            break;
        }
    }
    Ok(SemisimplicityCertificate {
        ambient,
        q0: q0.to_string(),
        verdict,
        sigma1_squarefree: attempts[0].squarefree,
        attempts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub ambient: Ambient,
    pub triples: usize,
    pub failures: Vec<[Partition; 3]>,
    pub holds: bool,
}

/// Exhaustive `(σ_λ σ_μ) σ_ν = σ_λ (σ_μ σ_ν)` over basis triples.
pub fn associativity_check(r: usize, n: usize) -> Result<AssociativityReport> {
    let ambient = Ambient::new(r, n)?;
    let basis = Partition::in_box(r, ambient.corank());
    let sigma = |p: &Partition| QClass::schubert(ambient, p.clone()).unwrap();
    let mut triples = Vec::with_capacity(basis.len().pow(3));
    for a in &basis {
        for b in &basis {
            for c in &basis {
                triples.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let failures: Vec<[Partition; 3]> = triples
        .par_iter()
        .filter(|[a, b, c]| {
            let lhs = sigma(a).mul(&sigma(b)).unwrap().mul(&sigma(c)).unwrap();
            let rhs = sigma(a).mul(&sigma(b).mul(&sigma(c)).unwrap()).unwrap();
            lhs != rhs
        })
        .cloned()
        .collect();
    Ok(AssociativityReport {
        ambient,
        triples: triples.len(),
        holds: failures.is_empty(),
        failures,
    })
}
