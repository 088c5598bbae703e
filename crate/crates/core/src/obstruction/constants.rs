//! Constants from the compactness argument, evaluated for concrete inputs.
//!
//! * `ξ` is the maximal size of a multicurve on the marked surface.
//! * `K = e^{2D}` and `N = (K d)^ξ ε`.
//! * `b = (d|P| + 1)(ε + 2)`.
//! * `r = max_M ‖M^{p−1} + … + M‖∞ · b` over the supplied matrices.
//! * `C = max{N, 2r, ε}`.

use super::srs::{decide_srs_matrix, lemma_p};
use crate::exact::{from_f64, to_f64, ExactRational, Rational};
use crate::skeleton::Surface;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsInput {
    #[serde(default = "default_surface")]
    pub surface: Surface,
    /// |P|
    pub marked: u32,
    pub degree: u32,
    pub epsilon: ExactRational,
    #[serde(rename = "D")]
    pub d_bound: ExactRational,
    /// A rational upper bound for `e^{2D}`; enables an exact upper bound on `N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_upper: Option<ExactRational>,
    #[serde(default)]
    pub matrices: Vec<Vec<Vec<ExactRational>>>,
    /// Defaults to the largest Lemma-p exponent over the supplied matrices
    /// without a strong reduction system, or 1 when there are none.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
}

fn default_surface() -> Surface {
    Surface::Sphere
}

impl ConstantsInput {
    pub fn new(surface: Surface, marked: u32, degree: u32, epsilon: Rational, d_bound: Rational) -> Self {
        ConstantsInput {
            surface,
            marked,
            degree,
            epsilon: ExactRational(epsilon),
            d_bound: ExactRational(d_bound),
            k_upper: None,
            matrices: Vec::new(),
            p: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofConstants {
    pub xi: u32,
    #[serde(rename = "K")]
    pub k: f64,
    /// Present when `D = 0`.
    #[serde(rename = "K_exact")]
    pub k_exact: Option<ExactRational>,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "N_exact")]
    pub n_exact: Option<ExactRational>,
    /// `(K_upper d)^ξ ε` when a rational bound for `K` was supplied.
    #[serde(rename = "N_upper_exact")]
    pub n_upper_exact: Option<ExactRational>,
    pub b: f64,
    pub b_exact: ExactRational,
    pub p: u32,
    pub r_bound: f64,
    pub r_bound_exact: ExactRational,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "C_exact")]
    pub c_exact: Option<ExactRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstantsError {
    #[error("epsilon must be nonnegative")]
    NegativeEpsilon,
    #[error("D must be nonnegative")]
    NegativeD,
    #[error("K upper bound {0} is below e^(2D)")]
    KUpperTooSmall(String),
    #[error("matrix {0} is not square")]
    NotSquare(usize),
    #[error("matrix {0} has a negative entry")]
    NegativeEntry(usize),
    #[error("degree must be positive")]
    ZeroDegree,
}

fn matrix_power_sum_norm(m: &[Vec<Rational>], p: u32) -> Rational {
    // ‖M + M² + … + M^{p−1}‖∞
    let n = m.len();
    let mut sum = vec![vec![Rational::zero(); n]; n];
    let mut power = m.to_vec();
    for _ in 1..p {
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += &power[i][j];
            }
        }
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &power[i][k] * &m[k][j];
                }
            }
        }
        power = next;
    }
    crate::exact::max_abs_row_sum(&sum)
}

pub fn proof_constants(input: &ConstantsInput) -> Result<ProofConstants, ConstantsError> {
    let eps = &input.epsilon.0;
    let dd = &input.d_bound.0;
    if eps.is_negative() {
        return Err(ConstantsError::NegativeEpsilon);
    }
    if dd.is_negative() {
        return Err(ConstantsError::NegativeD);
    }
    if input.degree == 0 {
        return Err(ConstantsError::ZeroDegree);
    }
    let matrices: Vec<Vec<Vec<Rational>>> = input
        .matrices
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|x| x.0.clone()).collect()).collect())
        .collect();
    for (idx, m) in matrices.iter().enumerate() {
        if m.iter().any(|row| row.len() != m.len()) {
            return Err(ConstantsError::NotSquare(idx));
        }
        if m.iter().flatten().any(|x| x.is_negative()) {
            return Err(ConstantsError::NegativeEntry(idx));
        }
    }

    let xi = input.surface.max_multicurve_size(input.marked as usize) as u32;
    let d = Rational::from_integer(input.degree.into());
    let k = (2.0 * to_f64(dd)).exp();
    let n = (k * input.degree as f64).powi(xi as i32) * to_f64(eps);
    let exact_n = |kk: &Rational| (kk * &d).pow(xi as i32) * eps;
    let k_exact = dd.is_zero().then(Rational::one);
    let n_exact = k_exact.as_ref().map(exact_n);
    let n_upper_exact = match &input.k_upper {
        Some(ku) => {
            if to_f64(&ku.0) < k * (1.0 - 1e-12) {
                return Err(ConstantsError::KUpperTooSmall(ku.0.to_string()));
            }
            Some(exact_n(&ku.0))
        }
        None => None,
    };

    let marked = Rational::from_integer(input.marked.into());
    let two = Rational::from_integer(2.into());
    let b = (&d * &marked + Rational::one()) * (eps + &two);

    let p = input.p.unwrap_or_else(|| {
        matrices
            .iter()
            .filter(|m| !decide_srs_matrix(m).exists)
            .filter_map(|m| lemma_p(m))
            .max()
            .unwrap_or(1)
    });
    let r = matrices
        .iter()
        .map(|m| matrix_power_sum_norm(m, p))
        .max()
        .unwrap_or_else(Rational::zero)
        * &b;

    let two_r = &two * &r;
    let c_float = n.max(to_f64(&two_r)).max(to_f64(eps));
    let c_exact = n_exact.as_ref().map(|nx| {
        let mut c = nx.clone();
        for x in [&two_r, eps] {
            if *x > c {
                c = x.clone();
            }
        }
        c
    });
    let ex = |x: Rational| ExactRational(x);
    Ok(ProofConstants {
        xi,
        k,
        k_exact: k_exact.map(ex),
        n,
        n_exact: n_exact.map(ex),
        n_upper_exact: n_upper_exact.map(ex),
        b: to_f64(&b),
        b_exact: ex(b),
        p,
        r_bound: to_f64(&r),
        r_bound_exact: ex(r),
        c: c_float,
        c_exact: c_exact.map(ex),
    })
}

/// A rational upper bound for `e^{2D}` good to about 1e-12 relative error.
pub fn k_upper_bound(d_bound: &Rational) -> Option<Rational> {
    let k = (2.0 * to_f64(d_bound)).exp();
    from_f64(k * (1.0 + 1e-12))
}
