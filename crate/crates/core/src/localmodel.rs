//! Projective local models `P(E ⊕ O)` over `Gr(r,n)` for the two sides of
//! the flop: `E_- = S ⊗ W^∨ ≅ S^{⊕n}` and `E_+ = S' ⊗ V` on `Gr(r, W^∨)`,
//! identified with the same `Gr(r,n)`.
//!
//! `H^*(P(E ⊕ O)) = H^*(Gr)[p] / (sum_i c_i(E) p^{rn+1-i})`, with `p` the
//! hyperplane class of the fibres.

use std::fmt;

use num_traits::One;
use serde::{Serialize, Serializer};

use crate::ambient::Ambient;
use crate::bundles::BundleExpr;
use crate::error::Result;
use crate::schubert::{chern_character, chern_classes_from_ch, CohClass, FlopDatum, Poincare};
use crate::weights::Partition;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Minus,
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Side::Minus),
            "plus" | "+" => Ok(Side::Plus),
            other => Err(crate::Error::InvalidArgument(format!("unknown side {other:?}"))),
        }
    }
}

/// The defining relation of one local model: `c_0 = 1, c_1, ..., c_{rn}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub ambient: Ambient,
    pub side: Side,
    pub coefficients: Vec<CohClass>,
}

impl Presentation {
    /// Fibre rank `rn + 1`, the degree of the relation in `p`.
    pub fn relation_degree(&self) -> usize {
        self.coefficients.len()
    }
}

/// Relation coefficients for one side.
///
/// The minus side raises `c(S)` to the `n`-th power; the plus side recovers
/// `c(S' ⊗ V)` from its Chern character with Newton's identities.
pub fn presentation(ambient: Ambient, side: Side) -> Presentation {
    let rn = ambient.r() * ambient.n();
    let chern: Vec<CohClass> = match side {
        Side::Minus => {
            let c_s = (0..=ambient.r()).fold(CohClass::zero(ambient), |acc, i| {
                let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                &acc + &CohClass::schubert(ambient, Partition::column(i)).unwrap().scale(&sign)
            });
            let total = c_s.pow(ambient.n() as u32);
            (0..=rn as u32).map(|i| total.part(i)).collect()
        }
        Side::Plus => {
            let e = BundleExpr::tensor(BundleExpr::S, BundleExpr::Trivial(ambient.n() as u32));
            let ch = chern_character(ambient, &e, ambient.dim() as u32).unwrap();
            let mut c = vec![CohClass::one(ambient)];
            c.extend(chern_classes_from_ch(&ch));
            c.resize(rn + 1, CohClass::zero(ambient));
            c.truncate(rn + 1);
            c
        }
    };
    Presentation {
        ambient,
        side,
        coefficients: chern,
    }
}

/// Rewrites `p^{rn+1}` greedily from the top degree.
fn reduce(mut coeffs: Vec<CohClass>, pres: &Presentation) -> Vec<CohClass> {
    let top = pres.relation_degree();
    let ambient = pres.ambient;
    for d in (top..coeffs.len()).rev() {
        let a = std::mem::replace(&mut coeffs[d], CohClass::zero(ambient));
        if a.is_zero() {
            continue;
        }
        for (i, c) in pres.coefficients.iter().enumerate().skip(1) {
            let slot = &mut coeffs[d - i];
            *slot = &*slot - &(&a * c);
        }
    }
    coeffs.resize(top, CohClass::zero(ambient));
    coeffs
}

/// A class on `P(E_side ⊕ O)`: polynomial in `p` of degree `<= rn` with
/// Schubert-class coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjBundleClass {
    ambient: Ambient,
    side: Side,
    coeffs: Vec<CohClass>,
}

impl ProjBundleClass {
    pub fn from_coefficients(pres: &Presentation, coeffs: Vec<CohClass>) -> Result<Self> {
        for c in &coeffs {
            c.ambient().ensure_same(pres.ambient)?;
        }
        Ok(ProjBundleClass {
            ambient: pres.ambient,
            side: pres.side,
            coeffs: reduce(coeffs, pres),
        })
    }

    /// `σ_λ p^k`, reduced.
    pub fn monomial(pres: &Presentation, base: CohClass, k: usize) -> Result<Self> {
        let mut coeffs = vec![CohClass::zero(pres.ambient); k + 1];
        coeffs[k] = base;
        ProjBundleClass::from_coefficients(pres, coeffs)
    }

    pub fn coefficients(&self) -> &[CohClass] {
        &self.coeffs
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &ProjBundleClass, pres: &Presentation) -> Result<ProjBundleClass> {
        self.ambient.ensure_same(other.ambient)?;
        let mut out = vec![CohClass::zero(self.ambient); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ProjBundleClass::from_coefficients(pres, out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

impl Serialize for ProjBundleClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, &CohClass)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        pairs.serialize(s)
    }
}

impl fmt::Display for ProjBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·p"),
                k => format!("({c})·p^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A polynomial in the equivariant parameter `λ` over `H^*(Gr)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantPolynomial {
    ambient: Ambient,
    coeffs: Vec<CohClass>,
}

impl EquivariantPolynomial {
    pub fn new(ambient: Ambient, coeffs: Vec<CohClass>) -> Result<Self> {
        for c in &coeffs {
            c.ambient().ensure_same(ambient)?;
        }
        Ok(EquivariantPolynomial { ambient, coeffs })
    }

    /// `base · λ^k`.
    pub fn monomial(base: CohClass, k: usize) -> Self {
        let ambient = base.ambient();
        let mut coeffs = vec![CohClass::zero(ambient); k + 1];
        coeffs[k] = base;
        EquivariantPolynomial { ambient, coeffs }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn coefficients(&self) -> &[CohClass] {
        &self.coeffs
    }

    pub fn add(&self, other: &EquivariantPolynomial) -> Result<Self> {
        self.ambient.ensure_same(other.ambient)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = CohClass::zero(self.ambient);
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        Ok(EquivariantPolynomial {
            ambient: self.ambient,
            coeffs,
        })
    }

    pub fn mul(&self, other: &EquivariantPolynomial) -> Result<Self> {
        self.ambient.ensure_same(other.ambient)?;
        let mut coeffs = vec![CohClass::zero(self.ambient); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(EquivariantPolynomial {
            ambient: self.ambient,
            coeffs,
        })
    }
}

/// Kirwan map `λ ↦ p` onto the cohomology of the local model.
pub fn kirwan(g: &EquivariantPolynomial, pres: &Presentation) -> Result<ProjBundleClass> {
    g.ambient.ensure_same(pres.ambient)?;
    ProjBundleClass::from_coefficients(pres, g.coeffs.clone())
}

/// Graded dimensions read off the presentation: the monomials `σ_λ p^k`
/// with `k` below the relation degree form a basis.
pub fn poincare_polynomial_bar(ambient: Ambient, side: Side) -> Poincare {
    let pres = presentation(ambient, side);
    debug_assert!(pres.coefficients[0] == CohClass::one(ambient));
    let fibre = pres.relation_degree();
    let datum = FlopDatum::from(ambient);
    let mut coeffs = vec![0u64; 2 * datum.dim_x() + 1];
    for lambda in Partition::in_box(ambient.r(), ambient.corank()) {
        for k in 0..fibre {
            coeffs[2 * (lambda.size() as usize + k)] += 1;
        }
    }
    Poincare(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideComparison {
    pub minus: Poincare,
    pub plus: Poincare,
    pub equal: bool,
    pub presentations_agree: bool,
}

pub fn compare_sides(ambient: Ambient) -> SideComparison {
    let minus = poincare_polynomial_bar(ambient, Side::Minus);
    let plus = poincare_polynomial_bar(ambient, Side::Plus);
    let equal = minus == plus;
    let presentations_agree =
        presentation(ambient, Side::Minus).coefficients == presentation(ambient, Side::Plus).coefficients;
    SideComparison {
        minus,
        plus,
        equal,
        presentations_agree,
    }
}

pub fn flop_datum(r: usize, n: usize) -> Result<FlopDatum> {
    FlopDatum::new(r, n)
}

/// Every basis monomial `σ_λ p^k` of the local model.
pub fn basis(pres: &Presentation) -> Vec<(Partition, usize)> {
    let a = pres.ambient;
    Partition::in_box(a.r(), a.corank())
        .into_iter()
        .flat_map(|l| (0..pres.relation_degree()).map(move |k| (l.clone(), k)))
        .collect()
}

/// Checks that every basis monomial `σ_λ p^k` is hit by `σ_λ λ^k`.
pub fn kirwan_surjective(pres: &Presentation) -> bool {
    basis(pres).into_iter().all(|(l, k)| {
        let base = CohClass::schubert(pres.ambient, l).unwrap();
        let image = kirwan(&EquivariantPolynomial::monomial(base.clone(), k), pres).unwrap();
        image.coeffs.iter().enumerate().all(|(j, c)| {
            if j == k {
                *c == base
            } else {
                c.is_zero()
            }
        })
    })
}

/// `kirwan(g h) = kirwan(g) kirwan(h)` over the given pairs.
pub fn kirwan_multiplicative(pres: &Presentation, pairs: &[(EquivariantPolynomial, EquivariantPolynomial)]) -> bool {
    pairs.iter().all(|(g, h)| {
        let lhs = kirwan(&g.mul(h).unwrap(), pres).unwrap();
        let rhs = kirwan(g, pres).unwrap().mul(&kirwan(h, pres).unwrap(), pres).unwrap();
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::schubert::poincare_polynomial;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn is_monic(pres: &Presentation) -> bool {
        let c0 = &pres.coefficients[0];
        c0.coefficient(&Partition::empty()).is_one()
            && c0.terms().len() == 1
            && pres.coefficients.iter().skip(1).all(|c| c.coefficient(&Partition::empty()).is_zero())
    }

    fn amb(r: usize, n: usize) -> Ambient {
        Ambient::new(r, n).unwrap()
    }

    #[test]
    fn presentation_on_p1() {
        let a = amb(1, 2);
        let s1 = CohClass::hyperplane(a);
        for side in [Side::Minus, Side::Plus] {
            let p = presentation(a, side);
            assert_eq!(p.coefficients.len(), 3);
            assert_eq!(p.coefficients[0], CohClass::one(a));
            assert_eq!(p.coefficients[1], s1.scale(&rat(-2, 1)));
            assert!(p.coefficients[2].is_zero());
        }
    }

    #[test]
    fn presentations_are_monic_and_agree() {
        for a in Ambient::all_up_to(5) {
            let m = presentation(a, Side::Minus);
            let p = presentation(a, Side::Plus);
            assert!(is_monic(&m) && is_monic(&p), "{a}");
            assert_eq!(m.coefficients, p.coefficients, "{a}");
            for (i, c) in m.coefficients.iter().enumerate() {
                if i > a.dim() {
                    assert!(c.is_zero());
                } else if !c.is_zero() {
                    assert_eq!(c.homogeneous_degree(), Some(i as u32));
                }
            }
        }
    }

    #[test]
    fn poincare_bar_examples() {
        assert_eq!(
            poincare_polynomial_bar(amb(1, 2), Side::Minus),
            Poincare(vec![1, 0, 2, 0, 2, 0, 1])
        );
        let expected = poincare_polynomial(amb(1, 3)).mul(&Poincare(vec![1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(poincare_polynomial_bar(amb(1, 3), Side::Plus), expected);
        for a in Ambient::all_up_to(5) {
            let d = FlopDatum::from(a);
            let bar = poincare_polynomial_bar(a, Side::Minus);
            assert_eq!(bar.degree(), 2 * d.dim_x());
            let fibre = Poincare((0..=2 * d.normal_rank()).map(|i| u64::from(i % 2 == 0)).collect());
            assert_eq!(bar, poincare_polynomial(a).mul(&fibre));
            let boxes = Partition::in_box(a.r(), a.corank()).len() as u64;
            assert_eq!(bar.total(), boxes * (d.normal_rank() as u64 + 1));
        }
    }

    #[test]
    fn compare_examples() {
        for (r, n) in [(1, 2), (2, 4), (1, 5)] {
            let c = compare_sides(amb(r, n));
            assert!(c.equal && c.presentations_agree);
        }
    }

    #[test]
    fn kirwan_examples() {
        let a = amb(1, 2);
        let pres = presentation(a, Side::Minus);
        let s1 = CohClass::hyperplane(a);
        let k = kirwan(&EquivariantPolynomial::monomial(s1.clone(), 0), &pres).unwrap();
        assert_eq!(k.coefficients()[0], s1);
        let k = kirwan(&EquivariantPolynomial::monomial(CohClass::one(a), 3), &pres).unwrap();
        assert_eq!(k, ProjBundleClass::monomial(&pres, s1.scale(&rat(2, 1)), 2).unwrap());
        assert_eq!(k.coefficients()[2], s1.scale(&rat(2, 1)));
        let k = kirwan(&EquivariantPolynomial::monomial(s1.clone(), 2), &pres).unwrap();
        assert_eq!(k.coefficients()[2], s1);
        assert!(k.coefficients()[0].is_zero() && k.coefficients()[1].is_zero());
    }

    #[test]
    fn kirwan_rejects_ambient_mismatch() {
        let pres = presentation(amb(1, 2), Side::Minus);
        let g = EquivariantPolynomial::monomial(CohClass::one(amb(2, 4)), 1);
        assert!(kirwan(&g, &pres).is_err());
    }

    #[test]
    fn kirwan_is_surjective() {
        for (r, n) in [(1, 2), (2, 4), (1, 3)] {
            for side in [Side::Minus, Side::Plus] {
                assert!(kirwan_surjective(&presentation(amb(r, n), side)));
            }
        }
    }

    #[test]
    fn datum_examples() {
        let d = flop_datum(2, 4).unwrap();
        assert_eq!((d.dim_z(), d.dim_x(), d.normal_rank()), (4, 12, 8));
        let d = flop_datum(1, 2).unwrap();
        assert_eq!((d.dim_z(), d.dim_x(), d.normal_rank()), (1, 3, 2));
        let d = flop_datum(3, 5).unwrap();
        assert_eq!((d.dim_z(), d.dim_x(), d.normal_rank()), (6, 21, 15));
    }

    fn poly(a: Ambient, max_deg: usize) -> impl Strategy<Value = EquivariantPolynomial> {
        let basis = Partition::in_box(a.r(), a.corank());
        let nb = basis.len();
        prop::collection::vec(prop::collection::vec(-2i64..=2, nb), 1..=max_deg + 1).prop_map(move |rows| {
            let coeffs = rows
                .iter()
                .map(|row| {
                    CohClass::from_terms(a, basis.iter().cloned().zip(row.iter().map(|&c| rat(c, 1)))).unwrap()
                })
                .collect();
            EquivariantPolynomial::new(a, coeffs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn kirwan_multiplicative_on_p1(g in poly(amb(1, 2), 4), h in poly(amb(1, 2), 4)) {
            let pres = presentation(amb(1, 2), Side::Minus);
            prop_assert!(kirwan_multiplicative(&pres, &[(g, h)]));
        }

        #[test]
        fn kirwan_multiplicative_on_gr24(g in poly(amb(2, 4), 3), h in poly(amb(2, 4), 3)) {
            let pres = presentation(amb(2, 4), Side::Plus);
            prop_assert!(kirwan_multiplicative(&pres, &[(g, h)]));
        }

        #[test]
        fn local_model_ring_is_associative(
            f in poly(amb(2, 4), 9),
            g in poly(amb(2, 4), 9),
            h in poly(amb(2, 4), 9),
        ) {
            let pres = presentation(amb(2, 4), Side::Minus);
            let k = |x: &EquivariantPolynomial| kirwan(x, &pres).unwrap();
            let (x, y, z) = (k(&f), k(&g), k(&h));
            let lhs = x.mul(&y, &pres).unwrap().mul(&z, &pres).unwrap();
            let rhs = x.mul(&y.mul(&z, &pres).unwrap(), &pres).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
