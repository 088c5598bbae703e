//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use branchcover::exact::{frac, Rational};
use branchcover::obstruction::{ComponentClass, LiftingData};
use num_traits::{One, Signed, Zero};

/// `a·x ≥ b` over the rationals.
pub type Ineq = (Vec<Rational>, Rational);

/// Fourier–Motzkin elimination: feasible iff eliminating every variable
/// leaves only inequalities `0 ≥ b` with `b ≤ 0`.
pub fn fourier_motzkin(mut system: Vec<Ineq>, vars: usize) -> bool {
    for k in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in system {
            if ineq.0[k].is_positive() {
                pos.push(ineq);
            } else if ineq.0[k].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (sp, sn) = (-&na[k], pa[k].clone());
                let coeffs: Vec<Rational> = pa.iter().zip(na).map(|(x, y)| x * &sp + y * &sn).collect();
                rest.push((coeffs, pb * &sp + nb * &sn));
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|(_, b)| !b.is_positive())
}

/// `m_ij = Σ 1/deg` over components of the preimage of curve `j` in class `i`.
pub fn oracle_matrix(curves: &[String], lifting: &LiftingData) -> Vec<Vec<Rational>> {
    let n = curves.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, from) in curves.iter().enumerate() {
        for c in lifting.components.get(from).into_iter().flatten() {
            if let ComponentClass::Curve(to) = &c.class {
                let i = curves.iter().position(|x| x == to).unwrap();
                m[i][j] += frac(1, c.degree as i64);
            }
        }
    }
    m
}

/// Is there `v ≥ 0` with `Σv = 1` supported on `subset` and `Mv ≥ v` there?
pub fn subset_feasible(m: &[Vec<Rational>], subset: &[usize]) -> bool {
    let k = subset.len();
    let mut system = Vec::new();
    for a in 0..k {
        let mut unit = vec![Rational::zero(); k];
        unit[a] = Rational::one();
        system.push((unit, Rational::zero()));
        let mut row: Vec<Rational> = subset.iter().map(|&j| m[subset[a]][j].clone()).collect();
        row[a] -= Rational::one();
        system.push((row, Rational::zero()));
    }
    system.push((vec![Rational::one(); k], Rational::one()));
    system.push((vec![-Rational::one(); k], -Rational::one()));
    fourier_motzkin(system, k)
}

/// Strong reduction system by enumerating every nonempty subset.
pub fn brute_force_srs(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    (1u32..1 << n).any(|mask| {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        subset_feasible(m, &subset)
    })
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn inf_norm(a: &[Vec<Rational>]) -> Rational {
    a.iter().map(|row| row.iter().map(|x| x.abs()).sum::<Rational>()).max().unwrap_or_else(Rational::zero)
}
