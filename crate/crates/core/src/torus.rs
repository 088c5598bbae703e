//! Linear torus covers: the holomorphic / reducible / Anosov trichotomy, the
//! reducing curve, and the pullback action on the upper half-plane.
//!
//! A matrix `M = (a b; c d)` with `det M = deg ≥ 1` acts on Teichmüller space
//! by `σ(τ) = (dτ + b)/(cτ + a)`. Normalised by `√deg` this is an isometry of
//! the hyperbolic plane, and its type is read off `Δ = tr² − 4 deg`:
//! elliptic (`Δ < 0`), parabolic (`Δ = 0`, non-scalar), loxodromic (`Δ > 0`),
//! or the identity when `M` is scalar. The Teichmüller metric is half the
//! curvature −1 metric.

use crate::exact::{ExactRational, Rational};
use crate::obstruction::{ComponentClass, LabeledMulticurve, LiftingData, PreimageComponent};
use num_complex::Complex64;
use num_integer::{Integer, Roots};
use num_traits::Signed;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusMapSpec {
    pub matrix: [[i64; 2]; 2],
    /// Translation in half-units: `[h1, h2]` stands for `(h1/2, h2/2)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<[u8; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("determinant {0} is not positive; orientation-reversing and degenerate maps are not covers handled here")]
    NonPositiveDeterminant(i128),
    #[error("translation entries must be 0 or 1 (half-units), got {0:?}")]
    BadTranslation([u8; 2]),
    #[error("the map has no invariant slope (discriminant {0} is not a perfect square)")]
    NotReducible(i128),
    #[error("Teichmüller points need positive finite imaginary part, got {0}")]
    NotInUpperHalfPlane(String),
    #[error("slope ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
}

impl TorusMapSpec {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        TorusMapSpec { matrix: [[a, b], [c, d]], translation: None }
    }

    pub fn with_translation(mut self, h1: u8, h2: u8) -> Self {
        self.translation = Some([h1, h2]);
        self
    }

    pub fn entries(&self) -> (i128, i128, i128, i128) {
        let [[a, b], [c, d]] = self.matrix;
        (a as i128, b as i128, c as i128, d as i128)
    }

    pub fn degree(&self) -> i128 {
        let (a, b, c, d) = self.entries();
        a * d - b * c
    }

    pub fn trace(&self) -> i128 {
        let (a, _, _, d) = self.entries();
        a + d
    }

    pub fn discriminant(&self) -> i128 {
        self.trace() * self.trace() - 4 * self.degree()
    }

    pub fn is_scalar(&self) -> bool {
        let (a, b, c, d) = self.entries();
        b == 0 && c == 0 && a == d
    }

    pub fn validate(&self) -> Result<(), TorusError> {
        if self.degree() < 1 {
            return Err(TorusError::NonPositiveDeterminant(self.degree()));
        }
        if let Some(t) = self.translation {
            if t.iter().any(|&h| h > 1) {
                return Err(TorusError::BadTranslation(t));
            }
        }
        Ok(())
    }
}

fn perfect_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// A point on the boundary of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BoundaryPoint::Finite(x) => s.serialize_f64(*x),
            BoundaryPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPoint {
    pub re: f64,
    pub im: f64,
    pub re_exact: ExactRational,
    pub im_squared_exact: ExactRational,
    /// Scalar matrices fix every point; `i` is reported as a representative.
    pub every_point_fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSlope {
    pub p: i64,
    pub q: i64,
    /// Eigenvalue of the slope, the smaller one in modulus.
    pub eigenvalue: i64,
    pub other_eigenvalue: i64,
    /// `deg / μ²`.
    pub transition_entry: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stretch {
    /// `|μ₁| / √deg`.
    pub lambda: f64,
    /// Closed form of `lambda`.
    pub lambda_exact: String,
    pub expanding_eigenvalue: f64,
    pub contracting_eigenvalue: f64,
    pub expanding_slope: [f64; 2],
    pub contracting_slope: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusVerdict {
    pub matrix: [[i64; 2]; 2],
    pub translation: [u8; 2],
    pub degree: i64,
    pub trace: i64,
    pub discriminant: i64,
    pub holomorphic: bool,
    pub strongly_reducible: bool,
    pub anosov: bool,
    pub fixed_point: Option<FixedPoint>,
    pub invariant_slope: Option<InvariantSlope>,
    pub stretch: Option<Stretch>,
    pub translation_length: f64,
    pub translation_length_realized: bool,
}

impl TorusVerdict {
    /// Names of the set flags, in the order holo, SR, Anosov.
    pub fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.holomorphic {
            out.push("holomorphic");
        }
        if self.strongly_reducible {
            out.push("strongly_reducible");
        }
        if self.anosov {
            out.push("anosov");
        }
        out
    }
}

/// Primitive integer eigenvector of `M` for the integer eigenvalue `mu`,
/// normalised so that `p > 0`, or `p = 0` and `q > 0`.
fn integer_eigenvector(spec: &TorusMapSpec, mu: i128) -> (i64, i64) {
    let (a, b, c, d) = spec.entries();
    let (p, q) = if b != 0 {
        (b, mu - a)
    } else if c != 0 {
        (mu - d, c)
    } else if mu == a {
        (1, 0)
    } else {
        (0, 1)
    };
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / g, q / g);
    if p < 0 || (p == 0 && q < 0) {
        p = -p;
        q = -q;
    }
    (p as i64, q as i64)
}

fn real_eigenvector(spec: &TorusMapSpec, mu: f64) -> [f64; 2] {
    let (a, b, c, d) = spec.entries();
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let (p, q) = if b != 0.0 {
        (b, mu - a)
    } else if c != 0.0 {
        (mu - d, c)
    } else if (mu - a).abs() < (mu - d).abs() {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let n = p.hypot(q);
    let (p, q) = (p / n, q / n);
    if p < 0.0 || (p == 0.0 && q < 0.0) {
        [-p, -q]
    } else {
        [p, q]
    }
}

fn fixed_point(spec: &TorusMapSpec) -> Option<FixedPoint> {
    if spec.is_scalar() {
        return Some(FixedPoint {
            re: 0.0,
            im: 1.0,
            re_exact: ExactRational(Rational::from_integer(0.into())),
            im_squared_exact: ExactRational(Rational::from_integer(1.into())),
            every_point_fixed: true,
        });
    }
    let delta = spec.discriminant();
    if delta >= 0 {
        return None;
    }
    let (a, _, c, d) = spec.entries();
    // c τ² + (a − d) τ − b = 0 has discriminant Δ; c ≠ 0 whenever Δ < 0.
    let re = Rational::new((d - a).into(), (2 * c).into());
    let im2 = Rational::new((-delta).into(), (4 * c * c).into());
    Some(FixedPoint {
        re: crate::exact::to_f64(&re),
        im: crate::exact::to_f64(&im2).sqrt(),
        re_exact: ExactRational(re),
        im_squared_exact: ExactRational(im2),
        every_point_fixed: false,
    })
}

fn invariant_slope(spec: &TorusMapSpec) -> Option<InvariantSlope> {
    let s = perfect_sqrt(spec.discriminant())?;
    let tr = spec.trace();
    let deg = spec.degree();
    let (mu1, mu2) = ((tr + s) / 2, (tr - s) / 2);
    let (small, large) = if mu1.abs() <= mu2.abs() { (mu1, mu2) } else { (mu2, mu1) };
    let (p, q) = if spec.is_scalar() { (1, 0) } else { integer_eigenvector(spec, small) };
    Some(InvariantSlope {
        p,
        q,
        eigenvalue: small as i64,
        other_eigenvalue: large as i64,
        transition_entry: ExactRational(Rational::new(deg.into(), (small * small).into())),
    })
}

fn stretch(spec: &TorusMapSpec) -> Option<Stretch> {
    let delta = spec.discriminant();
    if delta <= 0 {
        return None;
    }
    let tr = spec.trace() as f64;
    let deg = spec.degree() as f64;
    let root = (delta as f64).sqrt();
    let sign = tr.signum();
    let expanding = sign * (tr.abs() + root) / 2.0;
    // μ₁ μ₂ = deg; dividing avoids cancellation in (|tr| − √Δ)/2.
    let contracting = deg / expanding;
    Some(Stretch {
        lambda: expanding.abs() / deg.sqrt(),
        lambda_exact: format!("({}+sqrt({}))/(2*sqrt({}))", spec.trace().abs(), delta, spec.degree()),
        expanding_eigenvalue: expanding,
        contracting_eigenvalue: contracting,
        expanding_slope: real_eigenvector(spec, expanding),
        contracting_slope: real_eigenvector(spec, contracting),
    })
}

pub fn classify(spec: &TorusMapSpec) -> Result<TorusVerdict, TorusError> {
    spec.validate()?;
    let delta = spec.discriminant();
    let holomorphic = delta < 0 || spec.is_scalar();
    let strongly_reducible = perfect_sqrt(delta).is_some();
    let anosov = delta > 0;
    let stretch = stretch(spec);
    let (translation_length, realized) = match &stretch {
        Some(s) => (s.lambda.ln(), true),
        None => (0.0, holomorphic),
    };
    Ok(TorusVerdict {
        matrix: spec.matrix,
        translation: spec.translation.unwrap_or([0, 0]),
        degree: spec.degree() as i64,
        trace: spec.trace() as i64,
        discriminant: delta as i64,
        holomorphic,
        strongly_reducible,
        anosov,
        fixed_point: if holomorphic { fixed_point(spec) } else { None },
        invariant_slope: if strongly_reducible { invariant_slope(spec) } else { None },
        stretch,
        translation_length,
        translation_length_realized: realized,
    })
}

/// The single-curve strong reduction system at the invariant slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusSrs {
    pub curve: String,
    pub slope: (i64, i64),
    pub eigenvalue: i64,
    /// `deg / |μ|` homotopic preimage components, each of degree `|μ|`.
    pub components: u32,
    pub component_degree: u32,
    pub transition_entry: ExactRational,
    #[serde(skip)]
    pub multicurve: LabeledMulticurve,
    pub lifting: LiftingData,
}

pub fn slope_curve_id(p: i64, q: i64) -> String {
    format!("slope({p},{q})")
}

pub fn construct_srs(spec: &TorusMapSpec) -> Result<TorusSrs, TorusError> {
    let verdict = classify(spec)?;
    let slope = verdict
        .invariant_slope
        .ok_or(TorusError::NotReducible(spec.discriminant()))?;
    let mu = slope.eigenvalue.unsigned_abs() as u32;
    let deg = spec.degree() as u32;
    let curve = slope_curve_id(slope.p, slope.q);
    let mut lifting = LiftingData::new();
    for _ in 0..deg / mu {
        lifting = lifting.with(&curve, PreimageComponent::new(mu, ComponentClass::curve(&curve)));
    }
    Ok(TorusSrs {
        multicurve: LabeledMulticurve::new(&[curve.as_str()]),
        curve,
        slope: (slope.p, slope.q),
        eigenvalue: slope.eigenvalue,
        components: deg / mu,
        component_degree: mu,
        transition_entry: slope.transition_entry,
        lifting,
    })
}

/// A point of Teichmüller space of the torus, as `τ` in the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeichPoint {
    pub re: f64,
    pub im: f64,
}

impl TeichPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, TorusError> {
        if !(im > 0.0) || !im.is_finite() || !re.is_finite() {
            return Err(TorusError::NotInUpperHalfPlane(format!("{re}+{im}i")));
        }
        Ok(TeichPoint { re, im })
    }

    pub fn i() -> Self {
        TeichPoint { re: 0.0, im: 1.0 }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_complex(z: Complex64) -> Self {
        TeichPoint { re: z.re, im: z.im }
    }
}

pub fn teich_action(spec: &TorusMapSpec, tau: TeichPoint) -> TeichPoint {
    let [[a, b], [c, d]] = spec.matrix;
    let z = tau.as_complex();
    let num = z * d as f64 + b as f64;
    let den = z * c as f64 + a as f64;
    let w = num / den;
    // The imaginary part is Im τ · deg / |cτ + a|², computed directly to keep
    // it positive when the quotient underflows.
    let im = tau.im * spec.degree() as f64 / den.norm_sqr();
    TeichPoint::from_complex(Complex64::new(w.re, im))
}

/// Exact action on a point with rational coordinates.
pub fn teich_action_exact(spec: &TorusMapSpec, re: &Rational, im: &Rational) -> (Rational, Rational) {
    let (a, b, c, d) = spec.entries();
    let r = |n: i128| Rational::from_integer(n.into());
    let den_re = r(c) * re + r(a);
    let den_im = r(c) * im;
    let num_re = r(d) * re + r(b);
    let norm = &den_re * &den_re + &den_im * &den_im;
    let out_re = (&num_re * &den_re + r(d) * im * &den_im) / &norm;
    let out_im = im * r(spec.degree()) / norm;
    (out_re, out_im)
}

/// Half the hyperbolic distance.
pub fn teich_distance(t1: TeichPoint, t2: TeichPoint) -> f64 {
    let gap = (t1.as_complex() - t2.as_complex()).norm();
    (gap / (2.0 * (t1.im * t2.im).sqrt())).asinh()
}

pub fn curve_modulus(tau: TeichPoint, p: i64, q: i64) -> Result<f64, TorusError> {
    if p.gcd(&q) != 1 {
        return Err(TorusError::NotPrimitive(p, q));
    }
    let w = Complex64::new(p as f64, 0.0) + tau.as_complex() * q as f64;
    Ok(tau.im / w.norm_sqr())
}

pub fn orbit(spec: &TorusMapSpec, start: TeichPoint, steps: usize) -> Vec<TeichPoint> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut tau = start;
    out.push(tau);
    for _ in 0..steps {
        tau = teich_action(spec, tau);
        out.push(tau);
    }
    out
}

/// `D_k = d(i, σ^k(i))` for `k = 1..=steps`, from matrix powers.
///
/// With `g` the normalised Möbius matrix of `σ^k`, `cosh d_hyp(i, g·i) =
/// ‖g‖²_F / 2`. Powers are kept as `e^L G` with `G` rescaled every step, so
/// the computation neither overflows nor loses the orbit to the boundary.
pub fn orbit_displacements(spec: &TorusMapSpec, steps: usize) -> Vec<f64> {
    let [[a, b], [c, d]] = spec.matrix;
    let base = [[d as f64, b as f64], [c as f64, a as f64]];
    let log_det = (spec.degree() as f64).ln();
    let mut g = [[1.0, 0.0], [0.0, 1.0]];
    let mut log_scale = 0.0;
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        g = [
            [
                g[0][0] * base[0][0] + g[0][1] * base[1][0],
                g[0][0] * base[0][1] + g[0][1] * base[1][1],
            ],
            [
                g[1][0] * base[0][0] + g[1][1] * base[1][0],
                g[1][0] * base[0][1] + g[1][1] * base[1][1],
            ],
        ];
        let m = g.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        for x in g.iter_mut().flatten() {
            *x /= m;
        }
        log_scale += m.ln();
        let frob: f64 = g.iter().flatten().map(|x| x * x).sum();
        let log_x = 2.0 * log_scale + frob.ln() - k as f64 * log_det;
        let arccosh = if log_x > 40.0 {
            log_x
        } else {
            (log_x.exp() / 2.0).max(1.0).acosh()
        };
        out.push(0.5 * arccosh);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationProbe {
    pub estimate: f64,
    pub iterations: usize,
    pub converged: bool,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationLength {
    pub tau_sigma: f64,
    pub realized: bool,
    /// Boundary fixed points of the pullback when it is loxodromic.
    pub axis_endpoints: Option<[BoundaryPoint; 2]>,
    pub probe: TranslationProbe,
}

fn axis_endpoints(spec: &TorusMapSpec) -> Option<[BoundaryPoint; 2]> {
    let delta = spec.discriminant();
    if delta <= 0 {
        return None;
    }
    let (a, b, c, d) = spec.entries();
    let root = (delta as f64).sqrt();
    if c != 0 {
        let (c, s) = (c as f64, (d - a) as f64);
        Some([BoundaryPoint::Finite((s + root) / (2.0 * c)), BoundaryPoint::Finite((s - root) / (2.0 * c))])
    } else {
        // (a − d) τ = b; a ≠ d since Δ = (a − d)² > 0.
        Some([BoundaryPoint::Infinity, BoundaryPoint::Finite(b as f64 / (a - d) as f64)])
    }
}

/// Estimates the translation length by `(D_{2n} − D_n)/n` on a doubling
/// schedule, which cancels the additive constant in `D_n ≈ nτ + C`.
pub fn probe_translation_length(spec: &TorusMapSpec, iterations: usize, tolerance: f64) -> TranslationProbe {
    let budget = iterations.max(2);
    let displacements = orbit_displacements(spec, budget);
    let at = |n: usize| displacements[n - 1];
    let mut n = 1;
    let mut previous: Option<f64> = None;
    let mut estimate = at(2) - at(1);
    let mut used = 2;
    let mut converged = false;
    while 2 * n <= budget {
        estimate = (at(2 * n) - at(n)) / n as f64;
        used = 2 * n;
        if let Some(p) = previous {
            if (estimate - p).abs() < tolerance * 1e-2 {
                converged = true;
                break;
            }
        }
        previous = Some(estimate);
        n *= 2;
    }
    TranslationProbe {
        estimate,
        iterations: used,
        converged,
        diagnostic: (!converged).then(|| format!("estimate still moving after {used} iterations")),
    }
}

pub fn translation_length(spec: &TorusMapSpec, iterations: usize, tolerance: f64) -> Result<TranslationLength, TorusError> {
    let verdict = classify(spec)?;
    let mut probe = probe_translation_length(spec, iterations, tolerance);
    if probe.converged && (probe.estimate - verdict.translation_length).abs() > tolerance {
        probe.diagnostic = Some(format!(
            "probe settled at {} but the exact value is {}",
            probe.estimate, verdict.translation_length
        ));
    }
    Ok(TranslationLength {
        tau_sigma: verdict.translation_length,
        realized: verdict.translation_length_realized,
        axis_endpoints: axis_endpoints(spec),
        probe,
    })
}

/// The primitive slope of largest modulus at `τ`, i.e. the shortest nonzero
/// vector `p + qτ` of the lattice `Z + τZ`, found by Gauss reduction.
pub fn shortest_slope(tau: TeichPoint) -> (i64, i64, f64) {
    let z = tau.as_complex();
    // Basis vectors with their integer coordinates in (1, τ).
    let mut u = (Complex64::new(1.0, 0.0), (1i64, 0i64));
    let mut v = (z, (0i64, 1i64));
    loop {
        if v.0.norm_sqr() < u.0.norm_sqr() {
            std::mem::swap(&mut u, &mut v);
        }
        let k = (v.0 / u.0).re.round();
        if k == 0.0 {
            break;
        }
        let ki = k as i64;
        v = (v.0 - u.0 * k, (v.1 .0 - ki * u.1 .0, v.1 .1 - ki * u.1 .1));
        if v.0.norm_sqr() >= u.0.norm_sqr() {
            break;
        }
    }
    let (mut p, mut q) = u.1;
    if p < 0 || (p == 0 && q < 0) {
        p = -p;
        q = -q;
    }
    (p, q, tau.im / u.0.norm_sqr())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EscapeReport {
    /// Largest modulus of any primitive slope along the orbit of `i`.
    pub max_modulus: f64,
    pub slope: (i64, i64),
    pub at_iteration: usize,
    /// First orbit index where the modulus exceeded the threshold.
    pub exceeded_at: Option<usize>,
    pub iterations: usize,
}

pub fn slope_escape(spec: &TorusMapSpec, iterations: usize, threshold: f64) -> EscapeReport {
    let mut report = EscapeReport { max_modulus: 0.0, slope: (1, 0), at_iteration: 0, exceeded_at: None, iterations };
    for (k, tau) in orbit(spec, TeichPoint::i(), iterations).into_iter().enumerate() {
        let (p, q, m) = shortest_slope(tau);
        if m > report.max_modulus {
            report.max_modulus = m;
            report.slope = (p, q);
            report.at_iteration = k;
        }
        if report.exceeded_at.is_none() && m > threshold {
            report.exceeded_at = Some(k);
        }
    }
    report
}
