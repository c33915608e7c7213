//! Chern characters, Chern classes and the Todd class, without Chern roots:
//! everything goes through power sums and Newton's identities.
//!
//! On `Gr(r,n)`: `c(Q) = sum σ_(i)` and `c(S^∨) = sum σ_(1^i)`.

use num_traits::{One, Zero};

use super::CohClass;
use crate::ambient::Ambient;
use crate::bundles::{BundleExpr, Summands};
use crate::error::{Error, Result};
use crate::weights::{GLWeight, Partition};
use crate::Rational;

fn factorial(k: u32) -> Rational {
    Rational::from_integer((1..=k as i64).product::<i64>().into())
}

/// `ch` from the elementary classes `c_1, c_2, ...` of a bundle of the given
/// rank.
pub fn ch_from_chern_classes(ambient: Ambient, rank: u64, chern: &[CohClass]) -> CohClass {
    let dim = ambient.dim();
    let e = |i: usize| -> CohClass {
        chern
            .get(i.wrapping_sub(1))
            .cloned()
            .unwrap_or_else(|| CohClass::zero(ambient))
    };
    let mut p: Vec<CohClass> = vec![CohClass::zero(ambient)];
    let mut ch = CohClass::constant(ambient, Rational::from_integer(rank.into()));
    for k in 1..=dim {
        let sign = |i: usize| if i % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut pk = e(k).scale(&(sign(k) * Rational::from_integer((k as i64).into())));
        for i in 1..k {
            pk = &pk + &(&e(i) * &p[k - i]).scale(&sign(i));
        }
        ch = &ch + &pk.scale(&(Rational::one() / factorial(k as u32)));
        p.push(pk);
    }
    ch
}

/// Power sums `p_k = k! ch_k` for `k = 1..=dim`.
pub(crate) fn power_sums(ch: &CohClass) -> Vec<CohClass> {
    (1..=ch.ambient().dim() as u32)
        .map(|k| ch.part(k).scale(&factorial(k)))
        .collect()
}

/// Inverse of [`ch_from_chern_classes`]: `c_1, ..., c_dim` from `ch`.
pub fn chern_classes_from_ch(ch: &CohClass) -> Vec<CohClass> {
    let ambient = ch.ambient();
    let p = power_sums(ch);
    let mut e = vec![CohClass::one(ambient)];
    for k in 1..=ambient.dim() {
        let mut acc = CohClass::zero(ambient);
        for i in 1..=k {
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            acc = &acc + &(&e[k - i] * &p[i - 1]).scale(&sign);
        }
        e.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    e.remove(0);
    e
}

/// `1 + c_1 + c_2 + ...` from `ch`.
pub fn total_chern_class(ch: &CohClass) -> CohClass {
    chern_classes_from_ch(ch)
        .iter()
        .fold(CohClass::one(ch.ambient()), |acc, c| &acc + c)
}

/// Drops everything above complex degree `up_to`.
pub fn truncate(class: &CohClass, up_to: u32) -> CohClass {
    let mut out = CohClass::zero(class.ambient());
    for (p, c) in class.terms() {
        if p.size() <= up_to {
            out.add_term(p.clone(), c.clone());
        }
    }
    out
}

fn ch_sv(ambient: Ambient) -> CohClass {
    let chern: Vec<CohClass> = (1..=ambient.r())
        .map(|i| CohClass::schubert(ambient, Partition::column(i)).unwrap())
        .collect();
    ch_from_chern_classes(ambient, ambient.r() as u64, &chern)
}

fn ch_q(ambient: Ambient) -> CohClass {
    let chern: Vec<CohClass> = (1..=ambient.corank())
        .map(|i| CohClass::schubert(ambient, Partition::row(i as u32)).unwrap())
        .collect();
    ch_from_chern_classes(ambient, ambient.corank() as u64, &chern)
}

/// `ch(Sym^k E)` for `k = 0..=max` from `k h_k = sum_m ψ^m(ch E) h_{k-m}`.
fn sym_powers(ch: &CohClass, max: u32) -> Vec<CohClass> {
    let ambient = ch.ambient();
    let mut h = vec![CohClass::one(ambient)];
    for k in 1..=max as usize {
        let mut acc = CohClass::zero(ambient);
        for m in 1..=k {
            acc = &acc + &(&ch.adams(m as i64) * &h[k - m]);
        }
        h.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    h
}

fn determinant(m: &[Vec<CohClass>], ambient: Ambient) -> CohClass {
    match m.len() {
        0 => CohClass::one(ambient),
        1 => m[0][0].clone(),
        len => {
            let mut acc = CohClass::zero(ambient);
            for j in 0..len {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<CohClass>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ambient);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Jacobi–Trudi: `ch(S_λ E) = det(ch Sym^{λ_i - i + j} E)`.
fn schur_ch(lambda: &Partition, ch: &CohClass) -> CohClass {
    let ambient = ch.ambient();
    let len = lambda.len();
    let h = sym_powers(ch, lambda.part(0) + len as u32);
    let m: Vec<Vec<CohClass>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        CohClass::zero(ambient)
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&m, ambient)
}

fn ch_tree(ambient: Ambient, expr: &BundleExpr) -> CohClass {
    match expr {
        BundleExpr::Sv => ch_sv(ambient),
        BundleExpr::S => ch_sv(ambient).adams(-1),
        BundleExpr::Q => ch_q(ambient),
        BundleExpr::Qv => ch_q(ambient).adams(-1),
        BundleExpr::Trivial(m) => CohClass::constant(ambient, Rational::from_integer((*m as i64).into())),
        BundleExpr::Sum(a, b) => &ch_tree(ambient, a) + &ch_tree(ambient, b),
        BundleExpr::Tensor(a, b) => &ch_tree(ambient, a) * &ch_tree(ambient, b),
        BundleExpr::Dual(a) => ch_tree(ambient, a).adams(-1),
        BundleExpr::Sym(k, a) => sym_powers(&ch_tree(ambient, a), *k).pop().unwrap(),
        BundleExpr::Schur(lambda, a) => schur_ch(lambda, &ch_tree(ambient, a)),
    }
}

/// Chern character of an expression, evaluated directly on the tree (no
/// decomposition into irreducibles), truncated at complex degree `up_to`.
pub fn chern_character(ambient: Ambient, expr: &BundleExpr, up_to: u32) -> Result<CohClass> {
    expr.validate()?;
    Ok(truncate(&ch_tree(ambient, expr), up_to))
}

fn block_ch(w: &GLWeight, base: &CohClass) -> CohClass {
    let c = w.last();
    let shape = w.shift(-c).to_partition().unwrap();
    let det = base.part(1).scale(&Rational::from_integer(c.into())).exp_nilpotent();
    &schur_ch(&shape, base) * &det
}

/// Chern character of a decomposed bundle, summand by summand.
pub fn chern_character_of_summands(summands: &Summands) -> CohClass {
    let ambient = summands.ambient();
    let (sv, q) = (ch_sv(ambient), ch_q(ambient));
    let mut out = CohClass::zero(ambient);
    for s in summands.iter() {
        let piece = &block_ch(&s.alpha, &sv) * &block_ch(&s.beta, &q);
        out = &out + &piece.scale(&Rational::from_integer(s.multiplicity.into()));
    }
    out
}

/// Coefficients `a_1, a_2, ...` of `log(x / (1 - e^{-x}))`.
fn todd_log_coefficients(order: usize) -> Vec<Rational> {
    // g(x) = (1 - e^{-x}) / x = sum (-1)^j x^j / (j+1)!, so log td = -log g.
    let u: Vec<Rational> = (0..=order)
        .map(|j| {
            let s = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            if j == 0 {
                Rational::zero()
            } else {
                s / factorial(j as u32 + 1)
            }
        })
        .collect();
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    // log(1 + u) = sum_{m>=1} (-1)^{m+1} u^m / m
    let mut log = vec![Rational::zero(); order + 1];
    let mut power = u.clone();
    for m in 1..=order {
        let s = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
        for (acc, x) in log.iter_mut().zip(&power) {
            *acc += x * &s / Rational::from_integer((m as i64).into());
        }
        power = mul(&power, &u);
    }
    log.into_iter().skip(1).map(|x| -x).collect()
}

/// Todd class of a bundle given by its Chern character.
pub fn todd_class(ch: &CohClass) -> CohClass {
    let ambient = ch.ambient();
    let a = todd_log_coefficients(ambient.dim().max(1));
    let mut log = CohClass::zero(ambient);
    for (k, pk) in power_sums(ch).iter().enumerate() {
        log = &log + &pk.scale(&a[k]);
    }
    log.exp_nilpotent()
}

/// `χ(E) = ∫ ch(E) td(T)`.
pub fn hrr_euler(ambient: Ambient, expr: &BundleExpr) -> Result<i64> {
    let dim = ambient.dim() as u32;
    let ch = chern_character(ambient, expr, dim)?;
    let td = todd_class(&chern_character(ambient, &BundleExpr::tangent(), dim)?);
    let chi = (&ch * &td).integrate();
    if !chi.is_integer() {
        return Err(Error::InvalidArgument(format!("non-integral Euler characteristic {chi}")));
    }
    i64::try_from(chi.to_integer()).map_err(|_| Error::InvalidArgument("Euler characteristic overflow".into()))
}
