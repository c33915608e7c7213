//! The cohomology ring of `Gr(r,n)` in the Schubert basis, with exact
//! rational coefficients.

mod classes;
mod datum;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use classes::{
    chern_character, chern_character_of_summands, chern_classes_from_ch, ch_from_chern_classes, hrr_euler,
    todd_class, total_chern_class, truncate,
};
pub use datum::{crepancy_check, k_equivalence_rank_check, semismall_check, CrepancyWitness, FlopDatum, RankWitness, SemismallWitness};

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::weights::{lr_coefficients, Partition};
use crate::Rational;

/// A rational combination of Schubert classes `σ_λ`, `λ` inside the
/// `r x (n-r)` box. `σ_λ` sits in cohomological degree `2|λ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    ambient: Ambient,
    terms: BTreeMap<Partition, Rational>,
}

impl CohClass {
    pub fn zero(ambient: Ambient) -> Self {
        CohClass {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        CohClass::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: Ambient, c: Rational) -> Self {
        let mut out = CohClass::zero(ambient);
        out.add_term(Partition::empty(), c);
        out
    }

    pub fn schubert(ambient: Ambient, lambda: Partition) -> Result<Self> {
        if !lambda.fits_box(ambient.r(), ambient.corank()) {
            return Err(Error::OutsideBox(lambda.to_string(), ambient.r(), ambient.corank()));
        }
        let mut out = CohClass::zero(ambient);
        out.add_term(lambda, Rational::one());
        Ok(out)
    }

    /// `σ_1`.
    pub fn hyperplane(ambient: Ambient) -> Self {
        CohClass::schubert(ambient, Partition::row(1)).unwrap()
    }

    /// Builds a class from `(partition, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(ambient: Ambient, terms: I) -> Result<Self> {
        let mut out = CohClass::zero(ambient);
        for (p, c) in terms {
            if !p.fits_box(ambient.r(), ambient.corank()) {
                return Err(Error::OutsideBox(p.to_string(), ambient.r(), ambient.corank()));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Complex degree `d` part (cohomological degree `2d`).
    pub fn part(&self, d: u32) -> CohClass {
        CohClass {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.size() == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common complex degree, if the class is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|p| p.size());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> CohClass {
        let mut out = CohClass::zero(self.ambient);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    /// Multiplies the complex-degree-`d` part by `m^d` (the Adams operation
    /// on Chern characters). `m = -1` dualizes.
    pub fn adams(&self, m: i64) -> CohClass {
        let mut out = CohClass::zero(self.ambient);
        for (p, x) in &self.terms {
            let f = Rational::from_integer(m.into()).pow(p.size() as i32);
            out.add_term(p.clone(), x * f);
        }
        out
    }

    /// Coefficient of the point class.
    pub fn integrate(&self) -> Rational {
        let top = Partition::new(vec![self.ambient.corank() as u32; self.ambient.r()]).unwrap();
        self.coefficient(&top)
    }

    pub fn pow(&self, k: u32) -> CohClass {
        let mut acc = CohClass::one(self.ambient);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `exp` of a class without constant term (nilpotent, so the series is
    /// finite).
    pub fn exp_nilpotent(&self) -> CohClass {
        assert!(self.coefficient(&Partition::empty()).is_zero(), "exp needs a nilpotent class");
        let mut acc = CohClass::one(self.ambient);
        let mut term = CohClass::one(self.ambient);
        for j in 1..=self.ambient.dim() as i64 {
            term = (&term * self).scale(&Rational::new(1.into(), j.into()));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("class serializes")
    }
}

/// Schubert structure constants: LR restricted to the box.
pub fn product(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    a.ambient.ensure_same(b.ambient)?;
    let (rows, cols) = (a.ambient.r(), a.ambient.corank());
    let mut out = CohClass::zero(a.ambient);
    for (p, x) in &a.terms {
        for (q, y) in &b.terms {
            let xy = x * y;
            for (nu, &c) in lr_coefficients(p, q, rows).iter() {
                if nu.part(0) as usize <= cols {
                    out.add_term(nu.clone(), &xy * Rational::from_integer(c.into()));
                }
            }
        }
    }
    Ok(out)
}

pub fn integrate(a: &CohClass) -> Rational {
    a.integrate()
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        self + &(-rhs)
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scale(&-Rational::one())
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        product(self, rhs).expect("ambient mismatch")
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let basis = if p.is_empty() { None } else { Some(format!("σ[{p}]")) };
            match basis {
                None => write!(f, "{mag}")?,
                Some(b) if mag.is_one() => write!(f, "{b}")?,
                Some(b) => write!(f, "{mag}·{b}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CohClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect();
        let mut st = s.serialize_struct("CohClass", 2)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Poincaré polynomial in `t`, stored as coefficients of `t^0, t^1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poincare(pub Vec<u64>);

impl Poincare {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn mul(&self, other: &Poincare) -> Poincare {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poincare(out)
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `sum_{λ in box} t^{2|λ|}`.
pub fn poincare_polynomial(ambient: Ambient) -> Poincare {
    let mut coeffs = vec![0u64; 2 * ambient.dim() + 1];
    for p in Partition::in_box(ambient.r(), ambient.corank()) {
        coeffs[2 * p.size() as usize] += 1;
    }
    Poincare(coeffs)
}
