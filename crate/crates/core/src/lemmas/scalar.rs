//! Pure scalar facts: the tangent inequality and the quintic positivity.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::SCALAR_ABS_TOL;

/// Distance kept from `±π/2` when evaluating tangents.
pub const TAN_CLAMP: f64 = 1e-6;

/// Budget for `|margin|` at the equality points `φ = −ψ/2`.
pub const TAN_EQUALITY_TOL: f64 = 1e-9;

fn check_tan_domain(phi: f64, total: f64) -> Result<()> {
    if !(phi.is_finite()
        && total.is_finite()
        && -FRAC_PI_2 < phi
        && phi < phi + total
        && phi + total < FRAC_PI_2)
    {
        return Err(Error::Domain(format!(
            "need −π/2 < φ < φ+ψ < π/2, got φ={phi}, ψ={total}"
        )));
    }
    Ok(())
}

/// `tan(φ + ψ) − tan φ`, as `sin ψ / (cos φ · cos(φ + ψ))` so the difference
/// keeps full relative precision.
fn tan_increment(phi: f64, psi: f64) -> f64 {
    psi.sin() / (phi.cos() * (phi + psi).cos())
}

/// Moves `[φ, φ + ψ]` at least `TAN_CLAMP` away from `±π/2`, shrinking `ψ`
/// if needed.
fn clamp_interval(phi: f64, psi: f64) -> (f64, f64) {
    let lo = -FRAC_PI_2 + TAN_CLAMP;
    let hi = FRAC_PI_2 - TAN_CLAMP;
    let phi = phi.clamp(lo, hi);
    (phi, psi.min(hi - phi).max(0.0))
}

/// `tan(φ + ψ) ≥ tan φ + 2 tan(ψ/2)` for `−π/2 < φ < φ + ψ < π/2`, stated as
/// `tan(φ + ψ) − tan φ ≥ 2 tan(ψ/2)`.
pub fn tan_inequality_check(phi: f64, psi: f64) -> Result<CheckReport> {
    check_tan_domain(phi, psi)?;
    let (phi, psi) = clamp_interval(phi, psi);
    let lhs = 2.0 * (psi / 2.0).tan();
    let rhs = tan_increment(phi, psi);
    Ok(CheckReport::single(
        "tan",
        lhs,
        rhs,
        SCALAR_ABS_TOL,
        format!("φ={phi}, ψ={psi}"),
    ))
}

/// `tan(φ + Σψ_k) − tan φ ≥ Σ 2 tan(ψ_k/2)` for positive `ψ_k`.
pub fn tan_iterated_check(phi: f64, psis: &[f64]) -> Result<CheckReport> {
    if psis.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::Domain("every ψ_k must be positive".into()));
    }
    let total: f64 = psis.iter().sum();
    check_tan_domain(phi, total)?;
    let (phi, total) = clamp_interval(phi, total);
    let lhs: f64 = psis.iter().map(|&p| 2.0 * (p / 2.0).tan()).sum();
    let rhs = tan_increment(phi, total);
    let tol = SCALAR_ABS_TOL * (1.0 + rhs.abs());
    Ok(CheckReport::single(
        "tan_iterated",
        lhs,
        rhs,
        tol,
        format!("φ={phi}, k={}, Σψ={total}", psis.len()),
    ))
}

/// `n` random admissible `(φ, ψ)` and `n / 8` random iterated tuples with
/// `k ≤ 8`. Returns the two merged reports.
pub fn tan_sampled_check(n: usize, seed: u64) -> [CheckReport; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = -FRAC_PI_2 + TAN_CLAMP;
    let hi = FRAC_PI_2 - TAN_CLAMP;
    let mut single = CheckBuilder::new("tan", SCALAR_ABS_TOL);
    for _ in 0..n {
        let phi = rng.random_range(lo..hi);
        let psi = rng.random_range(0.0..hi - phi);
        if psi <= 0.0 {
            continue;
        }
        let r = tan_inequality_check(phi, psi).expect("sampled inside the domain");
        single.le_abs(r.lhs, r.rhs, r.tolerance, || r.context.clone());
    }
    let mut iterated = CheckBuilder::new("tan_iterated", SCALAR_ABS_TOL);
    for _ in 0..(n / 8).max(1) {
        let k = rng.random_range(1..=8usize);
        let phi = rng.random_range(lo..hi);
        let room = hi - phi;
        let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..1.0)).collect();
        let frac = rng.random_range(0.0..1.0);
        let wsum: f64 = weights.iter().sum();
        let psis: Vec<f64> = weights.iter().map(|w| w / wsum * frac * room).collect();
        if let Ok(r) = tan_iterated_check(phi, &psis) {
            iterated.le_abs(r.lhs, r.rhs, r.tolerance, || r.context.clone());
        }
    }
    [single.finish(), iterated.finish()]
}

/// Equality holds at `φ = −ψ/2`; `|margin| ≤ 1e-9` at `points` values of
/// `ψ` spread over `(0, 3]`.
pub fn tan_equality_check(points: usize) -> CheckReport {
    let mut b = CheckBuilder::new("tan_equality", 0.0);
    for i in 1..=points {
        let psi = 3.0 * i as f64 / points as f64;
        let r = tan_inequality_check(-psi / 2.0, psi).expect("symmetric interval is admissible");
        b.le_abs(r.margin.abs(), TAN_EQUALITY_TOL, 0.0, || {
            format!("ψ={psi}, margin={}", r.margin)
        });
    }
    b.finish()
}

/// A polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn new(coeffs: &[i64]) -> IntPoly {
        IntPoly(coeffs.to_vec()).trimmed()
    }

    pub fn constant(c: i64) -> IntPoly {
        IntPoly::new(&[c])
    }

    /// The monomial `λ`.
    pub fn x() -> IntPoly {
        IntPoly::new(&[0, 1])
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::constant(1), |acc, _| &acc * self)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    fn trimmed(mut self) -> IntPoly {
        while self.0.len() > 1 && self.0.last() == Some(&0) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(0);
        }
        self
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + o.0.get(i).copied().unwrap_or(0))
            .collect();
        IntPoly(c).trimmed()
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        self + &(-o)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly(c).trimmed()
    }
}

/// `5 − 10λ − 10λ² + 35λ³ − 24λ⁴ + 6λ⁵`.
pub fn quintic() -> IntPoly {
    IntPoly::new(&[5, -10, -10, 35, -24, 6])
}

/// `(5 − 16λ + 13λ²) + (λ² − λ³) + 6λ(1 − λ)⁴`.
fn quintic_decomposition() -> IntPoly {
    let x = IntPoly::x();
    let one_minus = &IntPoly::constant(1) - &x;
    let a = IntPoly::new(&[5, -16, 13]);
    let b = IntPoly::new(&[0, 0, 1, -1]);
    let c = &(&IntPoly::constant(6) * &x) * &one_minus.pow(4);
    &(&a + &b) + &c
}

/// `5(1+λ) − 30(1+λ)·J(λ)` for the linearized integral bound
/// `J(λ) = −λ³/3 + (5−λ)(λ³/5 − λ²/3) + 2λ²/(1+λ) + λ(1−λ)/2`, cleared of
/// denominators.
fn linearized_bound_numerator() -> IntPoly {
    let x = IntPoly::x();
    let one_plus = &IntPoly::constant(1) + &x;
    let five_minus = &IntPoly::constant(5) - &x;
    let inner = &(&IntPoly::new(&[0, 0, 0, -10]) + &(&five_minus * &IntPoly::new(&[0, 0, -10, 6])))
        + &IntPoly::new(&[0, 15, -15]);
    let thirty_j = &(&one_plus * &inner) + &IntPoly::new(&[0, 0, 60]);
    &(&IntPoly::constant(5) * &one_plus) - &thirty_j
}

/// Grid positivity, exact endpoint values and the integer identities of the
/// quintic, plus the tangent-line bound `√(2/(1+λ)) ≥ (5 − λ)/4` used to
/// linearize the integral bound.
pub fn quintic_check() -> Vec<CheckReport> {
    let q = quintic();
    let mut grid = CheckBuilder::new("quintic_grid", 0.0);
    let mut tangent = CheckBuilder::new("sqrt_tangent_line", SCALAR_ABS_TOL);
    const STEPS: u32 = 100_000;
    for k in 0..=STEPS {
        let lam = k as f64 / STEPS as f64;
        grid.le_abs(0.0, q.eval(lam), 0.0, || format!("λ={lam}"));
        tangent.ge((2.0 / (1.0 + lam)).sqrt(), (5.0 - lam) / 4.0, 1.0, || {
            format!("λ={lam}")
        });
    }

    let mut ends = CheckBuilder::new("quintic_endpoints", 0.0);
    ends.le_abs((q.eval(0.0) - 5.0).abs(), 0.0, 0.0, || {
        format!("p(0)={}", q.eval(0.0))
    });
    ends.le_abs((q.eval(1.0) - 2.0).abs(), 0.0, 0.0, || {
        format!("p(1)={}", q.eval(1.0))
    });

    let identity = |name: &str, other: IntPoly| {
        let same = other == q;
        CheckReport::single(
            name,
            if same { 0.0 } else { 1.0 },
            0.0,
            0.0,
            format!("{:?} vs {:?}", other.coeffs(), q.coeffs()),
        )
    };
    vec![
        grid.finish(),
        ends.finish(),
        identity("quintic_decomposition", quintic_decomposition()),
        identity("quintic_from_integral_bound", linearized_bound_numerator()),
        tangent.finish(),
    ]
}
