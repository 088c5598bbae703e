use crate::exact::Rational;
use crate::graph::strongly_connected_components;
use crate::lp::{feasible_point, Constraint, Relation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent search stops here; `lemma_p` then reports `None`.
pub const LEMMA_P_LIMIT: u32 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SrsDecision {
    pub exists: bool,
    /// Nonnegative integer vector with `M w ≥ w`, zero outside one component.
    pub witness: Option<Vec<Rational>>,
    pub spectral_radius_estimate: f64,
    pub lemma_p: Option<u32>,
}

fn support_edges(m: &[Vec<Rational>], subset: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate() {
            if !m[i][j].is_zero() {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Solves `v ≥ 0, Σv = 1, (M_SS − I) v ≥ 0` on the index set `subset`.
/// Returns `v` indexed like `subset` when feasible.
pub fn subset_obstructed(m: &[Vec<Rational>], subset: &[usize]) -> Option<Vec<Rational>> {
    if subset.is_empty() {
        return None;
    }
    let k = subset.len();
    let mut cons = Vec::with_capacity(k + 1);
    for (a, &i) in subset.iter().enumerate() {
        let mut row: Vec<Rational> = subset.iter().map(|&j| m[i][j].clone()).collect();
        row[a] -= Rational::one();
        cons.push(Constraint::new(row, Relation::Ge, Rational::zero()));
    }
    cons.push(Constraint::new(vec![Rational::one(); k], Relation::Eq, Rational::one()));
    feasible_point(k, &cons)
}

/// Scales a nonnegative rational vector to the primitive integer vector on
/// the same ray.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
}

/// Decides whether some nonzero `v ≥ 0` has `M v ≥ v`, equivalently
/// `ρ(M) ≥ 1`, one strongly connected block at a time.
pub fn decide_srs_matrix(m: &[Vec<Rational>]) -> SrsDecision {
    let n = m.len();
    let all: Vec<usize> = (0..n).collect();
    let comps = strongly_connected_components(n, &support_edges(m, &all));
    let mut witness = None;
    for comp in &comps {
        if comp.len() == 1 && m[comp[0]][comp[0]] < Rational::one() {
            continue;
        }
        if let Some(v) = subset_obstructed(m, comp) {
            let mut w = vec![Rational::zero(); n];
            for (&i, x) in comp.iter().zip(primitive(&v)) {
                w[i] = x;
            }
            witness = Some(w);
            break;
        }
    }
    let exists = witness.is_some();
    SrsDecision {
        exists,
        witness,
        spectral_radius_estimate: spectral_radius_estimate(m),
        lemma_p: if exists { None } else { lemma_p(m) },
    }
}

/// Perron root estimate. Each irreducible block `B` is handled by power
/// iteration on `B + I`, which is primitive, and the Collatz–Wielandt bounds
/// `min (Bv)_i/v_i ≤ ρ(B) ≤ max (Bv)_i/v_i` are iterated until they meet.
pub fn spectral_radius_estimate(m: &[Vec<Rational>]) -> f64 {
    let n = m.len();
    let all: Vec<usize> = (0..n).collect();
    let comps = strongly_connected_components(n, &support_edges(m, &all));
    let mut best = 0.0f64;
    for comp in comps {
        let k = comp.len();
        let b: Vec<Vec<f64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| crate::exact::to_f64(&m[i][j])).collect())
            .collect();
        if k == 1 {
            best = best.max(b[0][0]);
            continue;
        }
        let mut v = vec![1.0 / k as f64; k];
        let mut estimate = 0.0;
        for _ in 0..20_000 {
            let w: Vec<f64> = (0..k)
                .map(|i| v[i] + (0..k).map(|j| b[i][j] * v[j]).sum::<f64>())
                .collect();
            let ratios = w.iter().zip(&v).map(|(a, b)| a / b);
            let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
            estimate = 0.5 * (lo + hi) - 1.0;
            let total: f64 = w.iter().sum();
            v = w.into_iter().map(|x| x / total).collect();
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        best = best.max(estimate);
    }
    best
}

pub fn lemma_p(m: &[Vec<Rational>]) -> Option<u32> {
    lemma_p_with_limit(m, LEMMA_P_LIMIT)
}

/// Least `p ≥ 1` with `‖M^p‖∞ < 1/2`, by exact powers. The matrix is scaled
/// to integers by the lcm `L` of its denominators, so the test becomes
/// `2 · max row sum of (LM)^p < L^p` in integer arithmetic.
pub fn lemma_p_with_limit(m: &[Vec<Rational>], limit: u32) -> Option<u32> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let l = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer().abs() * (&l / x.denom())).collect())
        .collect();
    let mut power = a.clone();
    let mut scale = l.clone();
    for p in 1..=limit {
        let norm = power
            .iter()
            .map(|row| row.iter().fold(BigInt::zero(), |s, x| s + x))
            .max()
            .unwrap_or_else(BigInt::zero);
        if BigInt::from(2) * norm < scale {
            return Some(p);
        }
        power = mul(&power, &a);
        scale *= &l;
        // Keep the integers small: divide out a common factor when one exists.
        let g = power.iter().flatten().fold(scale.clone(), |g, x| g.gcd(x));
        if !g.is_one() && !g.is_zero() {
            for x in power.iter_mut().flatten() {
                *x /= &g;
            }
            scale /= &g;
        }
    }
    None
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}
