//! Borel–Weil–Bott on `Gr(r,n)` and the vanishing sweep for the conormal
//! symmetric powers.
//!
//! The bundle `(alpha; beta)` corresponds to the `GL_n` weight
//! `(alpha, -rev(beta))`. Add `rho = (n-1, ..., 1, 0)`; a repeated entry
//! means every cohomology group vanishes, otherwise sorting takes `l`
//! inversions and the only nonzero group is `H^l`, the irreducible `GL_n`
//! module with highest weight `sort(w + rho) - rho`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ambient::Ambient;
use crate::bundles::{composition_summands, normalize, sym_conormal, tensor_summands, BundleExpr, IrreducibleSummand, Summands};
use crate::error::{Error, Result};
use crate::weights::{sym_power_compositions, weyl_dimension, GLWeight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BwbResult {
    AllZero,
    Nonzero {
        degree: usize,
        weight: GLWeight,
        dimension: u64,
    },
}

impl BwbResult {
    pub fn dimension_in(&self, degree: usize) -> u64 {
        match self {
            BwbResult::Nonzero { degree: d, dimension, .. } if *d == degree => *dimension,
            _ => 0,
        }
    }
}

/// Cohomology of one irreducible summand; the dimension includes its
/// multiplicity.
pub fn bwb_irreducible(ambient: Ambient, summand: &IrreducibleSummand) -> Result<BwbResult> {
    let (r, n) = (ambient.r(), ambient.n());
    if summand.alpha.len() != r || summand.beta.len() != n - r {
        return Err(Error::LengthMismatch {
            expected: n,
            got: summand.alpha.len() + summand.beta.len(),
        });
    }
    let mut shifted: Vec<i64> = summand
        .alpha
        .entries()
        .iter()
        .chain(summand.beta.dual().entries())
        .enumerate()
        .map(|(i, &x)| x + (n - 1 - i) as i64)
        .collect();

    let mut inversions = 0;
    // Insertion sort into strictly decreasing order, counting swaps.
    for i in 1..n {
        let mut j = i;
        while j > 0 && shifted[j - 1] < shifted[j] {
            shifted.swap(j - 1, j);
            inversions += 1;
            j -= 1;
        }
    }
    if shifted.windows(2).any(|p| p[0] == p[1]) {
        return Ok(BwbResult::AllZero);
    }
    let weight = GLWeight::new(
        shifted
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (n - 1 - i) as i64)
            .collect(),
    )
    .expect("sorted weight is dominant");
    let dimension = weyl_dimension(&weight, n)? * summand.multiplicity;
    Ok(BwbResult::Nonzero {
        degree: inversions,
        weight,
        dimension,
    })
}

/// Degree to dimension, with zero groups omitted.
pub fn cohomology_of(summands: &Summands) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for s in summands.iter() {
        if let BwbResult::Nonzero { degree, dimension, .. } = bwb_irreducible(summands.ambient(), &s).unwrap() {
            *out.entry(degree).or_insert(0) += dimension;
        }
    }
    out
}

pub fn cohomology(ambient: Ambient, expr: &BundleExpr) -> Result<BTreeMap<usize, u64>> {
    Ok(cohomology_of(&normalize(ambient, expr)?))
}

pub fn euler_characteristic(ambient: Ambient, expr: &BundleExpr) -> Result<i64> {
    Ok(cohomology(ambient, expr)?
        .iter()
        .map(|(&d, &dim)| if d % 2 == 0 { dim as i64 } else { -(dim as i64) })
        .sum())
}

/// Which check a vanishing record belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `H^1(T ⊗ Sym^k N^∨)`, checked directly.
    TangentDirect,
    /// `H^1(N ⊗ Sym^{k+1} N^∨)`, checked directly.
    NormalDirect,
    /// `H^1(S ⊗ F)` for `F` a composition bundle of degree `k+1`.
    Vanishing1,
    /// `H^1(S ⊗ S^∨ ⊗ F)` with `F` of degree `k`.
    Vanishing2Adjoint,
    /// `H^1(S^∨ ⊗ F)` with `F` of degree `k`.
    Vanishing2Dual,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::TangentDirect,
        Family::NormalDirect,
        Family::Vanishing1,
        Family::Vanishing2Adjoint,
        Family::Vanishing2Dual,
    ];
}

/// The conormal bundle used by the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conormal {
    /// `N^∨ = (S^∨)^{⊕n}`, the geometric case.
    Standard,
    /// `N^∨ = S^{⊕n}`: a deliberately wrong model under which the sweep
    /// must report failures.
    DualControl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCheck {
    pub family: Family,
    pub k: u32,
    pub composition: Option<Vec<u32>>,
    pub summand: IrreducibleSummand,
    pub h1_dim: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingParams {
    pub r: usize,
    pub n: usize,
    pub k_max: u32,
    pub conormal: Conormal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    /// The direct statements for `T` and `N`.
    pub direct: bool,
    pub vanishing1: bool,
    pub vanishing2: bool,
    /// `S ⊗ F` and `S ⊗ S^∨ ⊗ F`, whose summands have last weight `>= -1`.
    pub vanishing3: bool,
    /// Records whose summand has last `alpha` entry `-1`.
    pub boundary_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub params: VanishingParams,
    pub checks: Vec<VanishingCheck>,
    pub summary: FamilySummary,
    pub all_pass: bool,
}

impl VanishingReport {
    pub fn failures(&self) -> impl Iterator<Item = &VanishingCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn h1_records(
    family: Family,
    k: u32,
    composition: Option<Vec<u32>>,
    bundle: &Summands,
) -> Vec<VanishingCheck> {
    bundle
        .iter()
        .map(|s| {
            let h1 = bwb_irreducible(bundle.ambient(), &s).unwrap().dimension_in(1);
            VanishingCheck {
                family,
                k,
                composition: composition.clone(),
                summand: s,
                h1_dim: h1,
                pass: h1 == 0,
            }
        })
        .collect()
}

/// Runs every check for `1 <= k <= k_max`. Independent units run in
/// parallel on the current rayon pool; record order is fixed.
pub fn verify_vanishing(ambient: Ambient, k_max: u32) -> Result<VanishingReport> {
    verify_vanishing_with(ambient, k_max, Conormal::Standard)
}

pub fn verify_vanishing_with(ambient: Ambient, k_max: u32, conormal: Conormal) -> Result<VanishingReport> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let gen = |e: BundleExpr| normalize(ambient, &e).unwrap();
    let s = gen(BundleExpr::S);
    let sv = gen(BundleExpr::Sv);
    let adjoint = tensor_summands(&s, &sv)?;
    let tangent = gen(BundleExpr::tangent());
    let orient = |x: Summands| match conormal {
        Conormal::Standard => x,
        Conormal::DualControl => x.dual(),
    };
    let normal = orient(sv.scale(ambient.n() as u64)).dual();

    #[derive(Clone)]
    enum Unit {
        Direct(Family, u32),
        Composition(Family, u32, Vec<u32>),
    }
    let mut units = Vec::new();
    for k in 1..=k_max {
        units.push(Unit::Direct(Family::TangentDirect, k));
        units.push(Unit::Direct(Family::NormalDirect, k));
        for comp in sym_power_compositions(k + 1, ambient.n()) {
            units.push(Unit::Composition(Family::Vanishing1, k, comp));
        }
        for fam in [Family::Vanishing2Adjoint, Family::Vanishing2Dual] {
            for comp in sym_power_compositions(k, ambient.n()) {
                units.push(Unit::Composition(fam, k, comp));
            }
        }
    }

    let checks: Vec<VanishingCheck> = units
        .par_iter()
        .map(|unit| match unit {
            Unit::Direct(Family::TangentDirect, k) => {
                let sym = orient(sym_conormal(ambient, *k));
                h1_records(Family::TangentDirect, *k, None, &tensor_summands(&tangent, &sym).unwrap())
            }
            Unit::Direct(_, k) => {
                let sym = orient(sym_conormal(ambient, k + 1));
                h1_records(Family::NormalDirect, *k, None, &tensor_summands(&normal, &sym).unwrap())
            }
            Unit::Composition(fam, k, comp) => {
                let f = orient(composition_summands(ambient, comp));
                let left = match fam {
                    Family::Vanishing1 => &s,
                    Family::Vanishing2Adjoint => &adjoint,
                    _ => &sv,
                };
                h1_records(*fam, *k, Some(comp.clone()), &tensor_summands(left, &f).unwrap())
            }
        })
        .flatten()
        .collect();

    let all = |fams: &[Family]| checks.iter().filter(|c| fams.contains(&c.family)).all(|c| c.pass);
    let summary = FamilySummary {
        direct: all(&[Family::TangentDirect, Family::NormalDirect]),
        vanishing1: all(&[Family::Vanishing1]),
        vanishing2: all(&[Family::Vanishing2Adjoint, Family::Vanishing2Dual]),
        vanishing3: all(&[Family::Vanishing1, Family::Vanishing2Adjoint]),
        boundary_checks: checks.iter().filter(|c| c.summand.alpha.last() == -1).count(),
    };
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VanishingReport {
        params: VanishingParams {
            r: ambient.r(),
            n: ambient.n(),
            k_max,
            conormal,
        },
        checks,
        summary,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::Summands;
    use crate::weights::Partition;
    use proptest::prelude::*;

    fn amb(r: usize, n: usize) -> Ambient {
        Ambient::new(r, n).unwrap()
    }

    fn line_on_p1(d: i64) -> IrreducibleSummand {
        IrreducibleSummand {
            alpha: GLWeight::new(vec![d]).unwrap(),
            beta: GLWeight::zero(1),
            multiplicity: 1,
        }
    }

    #[test]
    fn anchors_on_p1() {
        let a = amb(1, 2);
        assert!(matches!(
            bwb_irreducible(a, &line_on_p1(1)).unwrap(),
            BwbResult::Nonzero { degree: 0, dimension: 2, .. }
        ));
        assert_eq!(bwb_irreducible(a, &line_on_p1(-1)).unwrap(), BwbResult::AllZero);
        assert!(matches!(
            bwb_irreducible(a, &line_on_p1(-2)).unwrap(),
            BwbResult::Nonzero { degree: 1, dimension: 1, .. }
        ));
    }

    #[test]
    fn line_bundles_on_projective_spaces() {
        // H^0(P^{n-1}, O(d)) = C(n-1+d, d); H^{n-1}(O(-n-e)) = C(n-1+e, e).
        for n in 2..=5usize {
            let a = amb(1, n);
            for d in -8i64..=4 {
                let s = Summands::irreducible(a, GLWeight::new(vec![d]).unwrap(), GLWeight::zero(n - 1)).unwrap();
                let h = cohomology_of(&s);
                let binom = |top: i64, k: i64| crate::weights::binomial(top as u64, k as u64);
                if d >= 0 {
                    assert_eq!(h, [(0, binom(n as i64 - 1 + d, d))].into_iter().collect());
                } else if d > -(n as i64) {
                    assert!(h.is_empty());
                } else {
                    let e = -d - n as i64;
                    assert_eq!(h, [(n - 1, binom(n as i64 - 1 + e, e))].into_iter().collect());
                }
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        let a = amb(1, 2);
        let t = [(0usize, 3u64)].into_iter().collect();
        assert_eq!(cohomology(a, &BundleExpr::tangent()).unwrap(), t);
        let o = [(0usize, 1u64)].into_iter().collect();
        assert_eq!(cohomology(amb(2, 4), &BundleExpr::Trivial(1)).unwrap(), o);
        let ss: BundleExpr = "S*S".parse().unwrap();
        let h = [(1usize, 1u64)].into_iter().collect();
        assert_eq!(cohomology(a, &ss).unwrap(), h);
    }

    #[test]
    fn euler_examples() {
        let a = amb(1, 2);
        assert_eq!(euler_characteristic(a, &BundleExpr::line(1, 1)).unwrap(), 2);
        assert_eq!(euler_characteristic(a, &BundleExpr::line(1, -2)).unwrap(), -1);
        assert_eq!(euler_characteristic(amb(2, 4), &BundleExpr::Trivial(1)).unwrap(), 1);
    }

    #[test]
    fn tangent_bundle_sections_are_sl_n() {
        // H^0(Gr, T) = sl_n, dimension n^2 - 1; no higher cohomology.
        for a in Ambient::all_up_to(5) {
            let h = cohomology(a, &BundleExpr::tangent()).unwrap();
            let n = a.n() as u64;
            assert_eq!(h, [(0usize, n * n - 1)].into_iter().collect(), "{a}");
        }
    }

    #[test]
    fn rejects_wrong_lengths() {
        let s = IrreducibleSummand {
            alpha: GLWeight::zero(2),
            beta: GLWeight::zero(2),
            multiplicity: 1,
        };
        assert!(bwb_irreducible(amb(1, 4), &s).is_err());
    }

    #[test]
    fn vanishing_examples() {
        assert!(verify_vanishing(amb(1, 2), 3).unwrap().all_pass);
        let rep = verify_vanishing(amb(2, 3), 2).unwrap();
        assert!(rep.all_pass);
        assert!(rep.summary.boundary_checks > 0);
        assert!(verify_vanishing(amb(2, 3), 0).is_err());
    }

    #[test]
    fn dual_control_reports_failure() {
        let rep = verify_vanishing_with(amb(1, 2), 3, Conormal::DualControl).unwrap();
        assert!(!rep.all_pass);
        assert!(rep.failures().any(|c| c.family == Family::Vanishing1 && c.h1_dim > 0));
    }

    #[test]
    fn report_is_independent_of_pool_width() {
        let a = amb(2, 4);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| verify_vanishing(a, 2).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn direct_checks_agree_with_normalize_route() {
        // T ⊗ Sym^k N^∨ assembled from the expression tree.
        let a = amb(2, 3);
        let nv = BundleExpr::copies(BundleExpr::Sv, 3);
        for k in 1..=2 {
            let e = BundleExpr::tensor(BundleExpr::tangent(), BundleExpr::sym(k, nv.clone()));
            assert_eq!(cohomology(a, &e).unwrap().get(&1), None);
        }
    }

    fn random_summand(a: Ambient) -> impl Strategy<Value = IrreducibleSummand> {
        let (r, c) = (a.r(), a.corank());
        (
            prop::collection::vec(-3i64..=3, r),
            prop::collection::vec(-3i64..=3, c),
        )
            .prop_map(|(mut x, mut y)| {
                x.sort_unstable_by(|p, q| q.cmp(p));
                y.sort_unstable_by(|p, q| q.cmp(p));
                IrreducibleSummand {
                    alpha: GLWeight::new(x).unwrap(),
                    beta: GLWeight::new(y).unwrap(),
                    multiplicity: 1,
                }
            })
    }

    fn ambient_strategy() -> impl Strategy<Value = Ambient> {
        prop::sample::select(Ambient::all_up_to(4).collect::<Vec<_>>())
    }

    proptest! {
        #[test]
        fn serre_duality(
            (a, s) in ambient_strategy().prop_flat_map(|a| (Just(a), random_summand(a)))
        ) {
            // K = O(-n) = (det S^∨)^{-n}.
            let e = Summands::irreducible(a, s.alpha.clone(), s.beta.clone()).unwrap();
            let dual_k = e.dual().twist(-(a.n() as i64));
            let h = cohomology_of(&e);
            let hd = cohomology_of(&dual_k);
            for i in 0..=a.dim() {
                prop_assert_eq!(
                    h.get(&i).copied().unwrap_or(0),
                    hd.get(&(a.dim() - i)).copied().unwrap_or(0)
                );
            }
        }

        #[test]
        fn bott_single_degree(
            (a, s) in ambient_strategy().prop_flat_map(|a| (Just(a), random_summand(a)))
        ) {
            match bwb_irreducible(a, &s).unwrap() {
                BwbResult::AllZero => {}
                BwbResult::Nonzero { degree, weight, dimension } => {
                    prop_assert!(degree <= a.dim());
                    prop_assert_eq!(dimension, weyl_dimension(&weight, a.n()).unwrap());
                }
            }
        }
    }

    #[test]
    fn exterior_powers_of_tangent_bundle_on_p2() {
        // Bott: H^q(P^2, Ω^p) = C iff p = q. Ω^1 = S ⊗ Qv.
        let a = amb(1, 3);
        let omega: BundleExpr = "S*Qv".parse().unwrap();
        for p in 0..=2usize {
            let e = if p == 0 {
                BundleExpr::Trivial(1)
            } else {
                BundleExpr::schur(Partition::column(p), omega.clone())
            };
            let h = cohomology(a, &e).unwrap();
            assert_eq!(h, [(p, 1u64)].into_iter().collect(), "p={p}");
        }
    }
}
