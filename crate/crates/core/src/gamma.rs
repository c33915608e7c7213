//! The Γ-integral-structure transform as formal algebra over `H^*(Gr)`.
//!
//! Series are finite sums of Schubert classes tagged with monomials in the
//! independent symbols `z^{a}` (`a ∈ ½ℤ`), `log z`, `2π√−1`, Euler's `γ`
//! and `ζ(m)`, `m >= 2`. No relation between `ζ(2)` and `2π√−1` is imposed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::ambient::Ambient;
use crate::bundles::BundleExpr;
use crate::error::{Error, Result};
use crate::schubert::{chern_character, CohClass};
use crate::weights::Partition;
use crate::Rational;

/// Exponents of the formal symbols. `z2` is twice the `z` exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub z2: i64,
    pub logz: u32,
    pub twopii: u32,
    pub gamma_em: u32,
    pub zeta: BTreeMap<u32, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn twopii(k: u32) -> Self {
        Monomial {
            twopii: k,
            ..Monomial::default()
        }
    }

    pub fn gamma_em() -> Self {
        Monomial {
            gamma_em: 1,
            ..Monomial::default()
        }
    }

    pub fn zeta(m: u32) -> Self {
        Monomial {
            zeta: BTreeMap::from([(m, 1)]),
            ..Monomial::default()
        }
    }

    pub fn logz(k: u32) -> Self {
        Monomial {
            logz: k,
            ..Monomial::default()
        }
    }

    /// `z` exponent as a rational.
    pub fn z(&self) -> Rational {
        Rational::new(self.z2.into(), 2.into())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut zeta = self.zeta.clone();
        for (m, e) in &other.zeta {
            *zeta.entry(*m).or_default() += e;
        }
        Monomial {
            z2: self.z2 + other.z2,
            logz: self.logz + other.logz,
            twopii: self.twopii + other.twopii,
            gamma_em: self.gamma_em + other.gamma_em,
            zeta,
        }
    }

    /// True when no `γ` or `ζ` symbol occurs.
    pub fn is_symbol_free(&self) -> bool {
        self.gamma_em == 0 && self.zeta.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.z2 != 0 {
            parts.push(format!("z^{}", self.z()));
        }
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => parts.push(name),
            e => parts.push(format!("{name}^{e}")),
        };
        push("log(z)".into(), self.logz);
        push("(2πi)".into(), self.twopii);
        push("γ".into(), self.gamma_em);
        for (m, e) in &self.zeta {
            push(format!("ζ({m})"), *e);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Zeta<'a>(&'a BTreeMap<u32, u32>);
        impl Serialize for Zeta<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.to_string(), v)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Monomial", 5)?;
        st.serialize_field("z", &self.z().to_string())?;
        st.serialize_field("logz", &self.logz)?;
        st.serialize_field("twopii", &self.twopii)?;
        st.serialize_field("gammaEM", &self.gamma_em)?;
        st.serialize_field("zeta", &Zeta(&self.zeta))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSeries {
    ambient: Ambient,
    terms: BTreeMap<Monomial, CohClass>,
}

impl SymbolicSeries {
    pub fn zero(ambient: Ambient) -> Self {
        SymbolicSeries {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        SymbolicSeries::term(Monomial::one(), CohClass::one(ambient))
    }

    pub fn term(m: Monomial, c: CohClass) -> Self {
        let mut s = SymbolicSeries::zero(c.ambient());
        s.add_term(m, c);
        s
    }

    fn add_term(&mut self, m: Monomial, c: CohClass) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(m.clone())
            .or_insert_with(|| CohClass::zero(c.ambient()));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CohClass> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> CohClass {
        self.terms.get(m).cloned().unwrap_or_else(|| CohClass::zero(self.ambient))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymbolicSeries) -> Result<SymbolicSeries> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SymbolicSeries) -> Result<SymbolicSeries> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = SymbolicSeries::zero(self.ambient);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SymbolicSeries {
        let mut out = SymbolicSeries::zero(self.ambient);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.scale(c));
        }
        out
    }

    /// `exp` of a series whose classes have no degree-0 part.
    fn exp_nilpotent(&self) -> SymbolicSeries {
        let mut acc = SymbolicSeries::one(self.ambient);
        let mut term = SymbolicSeries::one(self.ambient);
        for j in 1..=self.ambient.dim() as i64 {
            term = term.mul(self).unwrap().scale(&Rational::new(1.into(), j.into()));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    /// Splits every class into homogeneous parts and multiplies the degree
    /// `d` part by `z^{dim/2 - d}`.
    fn apply_z_minus_mu(&self) -> SymbolicSeries {
        let dim = self.ambient.dim() as i64;
        let mut out = SymbolicSeries::zero(self.ambient);
        for (m, c) in &self.terms {
            for d in 0..=dim {
                let part = c.part(d as u32);
                let mut shifted = m.clone();
                shifted.z2 += dim - 2 * d;
                out.add_term(shifted, part);
            }
        }
        out
    }

    fn shift_z2(&self, by: i64) -> SymbolicSeries {
        let mut out = SymbolicSeries::zero(self.ambient);
        for (m, c) in &self.terms {
            let mut shifted = m.clone();
            shifted.z2 += by;
            out.add_term(shifted, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

impl Serialize for SymbolicSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            class: &'a CohClass,
            monomial: &'a Monomial,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(monomial, class)| Term { class, monomial })
            .collect();
        terms.serialize(s)
    }
}

impl fmt::Display for SymbolicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("[{m}]({c})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A K-class through its Chern character: `ch_0, ..., ch_dim`, with `ch_k`
/// homogeneous of complex degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChVector {
    ambient: Ambient,
    ch: Vec<CohClass>,
}

impl ChVector {
    pub fn new(ambient: Ambient, ch: Vec<CohClass>) -> Result<Self> {
        if ch.len() != ambient.dim() + 1 {
            return Err(Error::LengthMismatch {
                expected: ambient.dim() + 1,
                got: ch.len(),
            });
        }
        for (k, c) in ch.iter().enumerate() {
            c.ambient().ensure_same(ambient)?;
            if !c.is_zero() && c.homogeneous_degree() != Some(k as u32) {
                return Err(Error::InvalidArgument(format!("ch_{k} = {c} is not of degree {k}")));
            }
        }
        Ok(ChVector { ambient, ch })
    }

    /// Splits a mixed-degree class into its homogeneous parts.
    pub fn from_class(total: &CohClass) -> Self {
        let ambient = total.ambient();
        ChVector {
            ambient,
            ch: (0..=ambient.dim() as u32).map(|k| total.part(k)).collect(),
        }
    }

    pub fn of_bundle(ambient: Ambient, expr: &BundleExpr) -> Result<Self> {
        Ok(ChVector::from_class(&chern_character(ambient, expr, ambient.dim() as u32)?))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn components(&self) -> &[CohClass] {
        &self.ch
    }

    pub fn total(&self) -> CohClass {
        self.ch.iter().fold(CohClass::zero(self.ambient), |acc, c| &acc + c)
    }

    pub fn add(&self, other: &ChVector) -> Result<ChVector> {
        self.ambient.ensure_same(other.ambient)?;
        Ok(ChVector::from_class(&(&self.total() + &other.total())))
    }
}

/// Coefficients multiplying each `ζ(m)` term of `log Γ`; all ones for the
/// true Γ-class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaWeights(BTreeMap<u32, Rational>);

impl ZetaWeights {
    pub fn with(mut self, m: u32, c: Rational) -> Self {
        self.0.insert(m, c);
        self
    }

    fn get(&self, m: u32) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::one)
    }
}

/// Γ-class of the tangent bundle:
/// `exp(-γ p_1 + sum_{m>=2} ζ(m) (-1)^m p_m / m)` on the power sums of the
/// Chern roots.
pub fn gamma_class(ambient: Ambient) -> SymbolicSeries {
    gamma_class_with(ambient, &ZetaWeights::default())
}

pub fn gamma_class_with(ambient: Ambient, weights: &ZetaWeights) -> SymbolicSeries {
    let dim = ambient.dim() as u32;
    let ch = chern_character(ambient, &BundleExpr::tangent(), dim).unwrap();
    let mut factorial = Rational::one();
    let mut log = SymbolicSeries::zero(ambient);
    for m in 1..=dim {
        factorial *= Rational::from_integer(m.into());
        let p_m = ch.part(m).scale(&factorial);
        if m == 1 {
            log.add_term(Monomial::gamma_em(), -&p_m);
        } else {
            let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
            let c = sign * weights.get(m) / Rational::from_integer(m.into());
            log.add_term(Monomial::zeta(m), p_m.scale(&c));
        }
    }
    log.exp_nilpotent()
}

/// `ρ = c_1(T)`.
pub fn rho(ambient: Ambient) -> CohClass {
    chern_character(ambient, &BundleExpr::tangent(), 1).unwrap().part(1)
}

/// `z^{-μ} z^{ρ} (Γ ∪ (2π√−1)^{deg/2} ch(α))` with the common `z^{dim/2}`
/// removed.
pub fn psi_transform(alpha: &ChVector) -> SymbolicSeries {
    psi_transform_with(alpha, &ZetaWeights::default())
}

pub fn psi_transform_with(alpha: &ChVector, weights: &ZetaWeights) -> SymbolicSeries {
    let ambient = alpha.ambient;
    let mut tagged = SymbolicSeries::zero(ambient);
    for (k, c) in alpha.ch.iter().enumerate() {
        tagged.add_term(Monomial::twopii(k as u32), c.clone());
    }
    let gamma = gamma_class_with(ambient, weights);
    let mut z_rho = SymbolicSeries::zero(ambient);
    let rho = rho(ambient);
    let mut power = CohClass::one(ambient);
    let mut factorial = Rational::one();
    for k in 0..=ambient.dim() as u32 {
        if k > 0 {
            power = &power * &rho;
            factorial *= Rational::from_integer(k.into());
        }
        z_rho.add_term(Monomial::logz(k), power.scale(&(Rational::one() / &factorial)));
    }
    let inner = gamma.mul(&tagged).unwrap();
    let twisted = z_rho.mul(&inner).unwrap();
    twisted.apply_z_minus_mu().shift_z2(-(ambient.dim() as i64))
}

/// Reads `ch_k` off the `(2π√−1)^k z^{-k}` slot with no `log z`, `γ` or `ζ`.
pub fn extract_ch(s: &SymbolicSeries) -> Result<ChVector> {
    let ambient = s.ambient;
    let dim = ambient.dim() as u32;
    for m in s.terms.keys() {
        if m.z2 % 2 != 0 {
            return Err(Error::NotReduced(format!("half-integer z exponent in {m}")));
        }
        if m.z2 > 0 {
            return Err(Error::NotReduced(format!("positive z exponent in {m}")));
        }
        if m.z2 < -2 * dim as i64 {
            return Err(Error::NotReduced(format!("z exponent below -dim in {m}")));
        }
    }
    let ch = (0..=dim)
        .map(|k| {
            let slot = Monomial {
                z2: -2 * k as i64,
                twopii: k,
                ..Monomial::default()
            };
            let c = s.coefficient(&slot);
            if c.is_zero() || c.homogeneous_degree() == Some(k) {
                Ok(c)
            } else {
                Err(Error::NotReduced(format!("slot {slot} holds {c}, not of degree {k}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ChVector::new(ambient, ch)
}

/// Every term has `z`-exponent plus complex degree equal to zero.
pub fn degree_balanced(s: &SymbolicSeries) -> bool {
    s.terms.iter().all(|(m, c)| {
        c.terms()
            .keys()
            .all(|p: &Partition| m.z2 + 2 * p.size() as i64 == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn amb(r: usize, n: usize) -> Ambient {
        Ambient::new(r, n).unwrap()
    }

    fn sigma(a: Ambient, parts: &[u32]) -> CohClass {
        CohClass::schubert(a, Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn gamma_on_p1() {
        let a = amb(1, 2);
        let g = gamma_class(a);
        let expected = SymbolicSeries::one(a)
            .add(&SymbolicSeries::term(Monomial::gamma_em(), sigma(a, &[1]).scale(&rat(-2, 1))))
            .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn gamma_low_degrees() {
        for a in Ambient::all_up_to(5) {
            let g = gamma_class(a);
            assert_eq!(g.coefficient(&Monomial::one()), CohClass::one(a));
            let c1 = rho(a);
            assert_eq!(g.coefficient(&Monomial::gamma_em()), -&c1);
            for (m, c) in g.terms() {
                assert_eq!(m.z2, 0);
                for &k in m.zeta.keys() {
                    assert!(c.terms().keys().all(|p| p.size() >= k));
                }
            }
        }
    }

    #[test]
    fn gamma_on_p2_degree_two() {
        let a = amb(1, 3);
        let g = gamma_class(a);
        let h2 = sigma(a, &[2]);
        // p_1 = 3h, p_2 = 3h^2: γ^2 p_1^2 / 2 and ζ(2) p_2 / 2.
        let gg = Monomial {
            gamma_em: 2,
            ..Monomial::default()
        };
        assert_eq!(g.coefficient(&gg), h2.scale(&rat(9, 2)));
        assert_eq!(g.coefficient(&Monomial::zeta(2)), h2.scale(&rat(3, 2)));
    }

    #[test]
    fn psi_examples() {
        let a = amb(1, 2);
        let unit = ChVector::from_class(&CohClass::one(a));
        let s = psi_transform(&unit);
        assert_eq!(s.coefficient(&Monomial::one()), CohClass::one(a));
        let slot1 = Monomial {
            z2: -2,
            twopii: 1,
            ..Monomial::default()
        };
        let alpha = ChVector::new(a, vec![CohClass::zero(a), sigma(a, &[1])]).unwrap();
        assert_eq!(psi_transform(&alpha).coefficient(&slot1), sigma(a, &[1]));
        let alpha = ChVector::new(a, vec![CohClass::one(a), sigma(a, &[1])]).unwrap();
        let s = psi_transform(&alpha);
        assert_eq!(s.coefficient(&Monomial::one()), CohClass::one(a));
        assert_eq!(s.coefficient(&slot1), sigma(a, &[1]));
        let logged = Monomial {
            z2: -2,
            logz: 1,
            ..Monomial::default()
        };
        assert_eq!(s.coefficient(&logged), sigma(a, &[1]).scale(&rat(2, 1)));
    }

    #[test]
    fn round_trip_examples() {
        let a = amb(2, 4);
        let unit = ChVector::from_class(&CohClass::one(a));
        assert_eq!(extract_ch(&psi_transform(&unit)).unwrap(), unit);
        let a = amb(1, 3);
        let h = sigma(a, &[1]);
        let alpha = ChVector::new(a, vec![CohClass::one(a), h.clone(), (&h * &h).scale(&rat(1, 2))]).unwrap();
        assert_eq!(extract_ch(&psi_transform(&alpha)).unwrap(), alpha);
        let alpha = ChVector::of_bundle(amb(2, 5), &BundleExpr::tangent()).unwrap();
        assert_eq!(extract_ch(&psi_transform(&alpha)).unwrap(), alpha);
    }

    #[test]
    fn extract_rejects_unreduced() {
        let a = amb(1, 3);
        let half = Monomial {
            z2: -1,
            ..Monomial::default()
        };
        assert!(extract_ch(&SymbolicSeries::term(half, CohClass::one(a))).is_err());
        let positive = Monomial {
            z2: 2,
            ..Monomial::default()
        };
        assert!(extract_ch(&SymbolicSeries::term(positive, CohClass::one(a))).is_err());
        let wrong = Monomial {
            z2: -2,
            twopii: 1,
            ..Monomial::default()
        };
        assert!(matches!(
            extract_ch(&SymbolicSeries::term(wrong, CohClass::one(a))),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = psi_transform(&ChVector::from_class(&CohClass::one(amb(1, 2))));
        let v = s.to_json();
        let first = &v.as_array().unwrap()[0];
        assert!(first["class"]["terms"].is_object());
        let m = &first["monomial"];
        for key in ["z", "logz", "twopii", "gammaEM", "zeta"] {
            assert!(m.get(key).is_some(), "{key}");
        }
        let zeta = Monomial::zeta(3).mul(&Monomial::zeta(3));
        assert_eq!(serde_json::to_value(&zeta).unwrap()["zeta"], serde_json::json!({"3": 2}));
    }

    pub(crate) fn ch_vector(a: Ambient) -> impl Strategy<Value = ChVector> {
        let basis = Partition::in_box(a.r(), a.corank());
        prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
            let total = CohClass::from_terms(a, basis.iter().cloned().zip(cs.iter().map(|&c| rat(c, 1)))).unwrap();
            ChVector::from_class(&total)
        })
    }

    fn ambient_and_vector() -> impl Strategy<Value = ChVector> {
        prop::sample::select(Ambient::all_up_to(4).collect::<Vec<_>>()).prop_flat_map(ch_vector)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn round_trip(alpha in ambient_and_vector()) {
            let s = psi_transform(&alpha);
            prop_assert_eq!(extract_ch(&s).unwrap(), alpha);
            prop_assert!(degree_balanced(&s));
        }

        #[test]
        fn additive(x in ch_vector(amb(2, 4)), y in ch_vector(amb(2, 4))) {
            let lhs = psi_transform(&x.add(&y).unwrap());
            let rhs = psi_transform(&x).add(&psi_transform(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn zeta_perturbation_is_invisible(alpha in ch_vector(amb(2, 4)), num in 2i64..9) {
            let weights = ZetaWeights::default().with(2, rat(num, 1));
            let plain = psi_transform(&alpha);
            let perturbed = psi_transform_with(&alpha, &weights);
            if !alpha.components()[0].is_zero() {
                prop_assert_ne!(&plain, &perturbed);
            }
            prop_assert_eq!(extract_ch(&plain).unwrap(), extract_ch(&perturbed).unwrap());
        }
    }
}
