use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{chern_character, CohClass};
use crate::ambient::Ambient;
use crate::bundles::BundleExpr;
use crate::error::Result;

/// Dimensions attached to a simple Grassmannian flop of type `(r, n)`: the
/// exceptional locus `Z = Gr(r,n)` with normal bundle `S ⊗ W^∨` of rank `rn`.
/// Derived quantities are always recomputed from `(r, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlopDatum {
    ambient: Ambient,
}

impl FlopDatum {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        Ok(FlopDatum {
            ambient: Ambient::new(r, n)?,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn r(&self) -> usize {
        self.ambient.r()
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn dim_z(&self) -> usize {
        self.ambient.dim()
    }

    pub fn normal_rank(&self) -> usize {
        self.r() * self.n()
    }

    pub fn dim_x(&self) -> usize {
        self.dim_z() + self.normal_rank()
    }
}

impl From<Ambient> for FlopDatum {
    fn from(ambient: Ambient) -> Self {
        FlopDatum { ambient }
    }
}

impl Serialize for FlopDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FlopDatum", 5)?;
        st.serialize_field("r", &self.r())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("dim_z", &self.dim_z())?;
        st.serialize_field("dim_x", &self.dim_x())?;
        st.serialize_field("normal_rank", &self.normal_rank())?;
        st.end()
    }
}

/// `2 dim Z <= dim X`, the inequality the contraction's semismallness
/// reduces to at the contracted point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemismallWitness {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

pub fn semismall_check(datum: &FlopDatum) -> SemismallWitness {
    let lhs = 2 * datum.dim_z();
    let rhs = datum.dim_x();
    SemismallWitness {
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

/// `rn > r(n-r) - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub normal_rank: i64,
    pub bound: i64,
    pub holds: bool,
}

pub fn k_equivalence_rank_check(datum: &FlopDatum) -> RankWitness {
    let normal_rank = datum.normal_rank() as i64;
    let bound = datum.dim_z() as i64 - 2;
    RankWitness {
        normal_rank,
        bound,
        holds: normal_rank > bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrepancyWitness {
    pub c1_tangent: CohClass,
    pub c1_normal: CohClass,
    pub sum: CohClass,
    pub holds: bool,
}

/// `c_1(T_Gr) + c_1(S^{⊕n}) = 0`: the total space of `S ⊗ W^∨` has trivial
/// first Chern class.
pub fn crepancy_check(ambient: Ambient) -> CrepancyWitness {
    let c1 = |e: &BundleExpr| chern_character(ambient, e, 1).unwrap().part(1);
    let c1_tangent = c1(&BundleExpr::tangent());
    let c1_normal = c1(&BundleExpr::copies(BundleExpr::S, ambient.n()));
    let sum = &c1_tangent + &c1_normal;
    let holds = sum.is_zero();
    CrepancyWitness {
        c1_tangent,
        c1_normal,
        sum,
        holds,
    }
}
