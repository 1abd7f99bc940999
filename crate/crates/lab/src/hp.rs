//! Extended-precision re-evaluation (software floats, default 256 bits ≈ 77
//! significant digits): transform values, witness re-verification, the
//! divergence probe for transforms unbounded at the left endpoint, and a
//! renormalized heat-mode decay probe whose signal sits far below f64 noise.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use fconlab_core::{ExtReal, Transform, TransformView};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default precision in bits; 256 bits comfortably exceed the 30 significant
/// decimal digits required for witness re-verification.
pub const DEFAULT_PRECISION: usize = 256;

/// Convert a `BigFloat` to the nearest `f64` (saturating to ±∞).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _n, sign, exponent, _inexact)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    // the mantissa is normalized with the top bit of the last word set; the
    // value is 0.m * 2^exponent, so the top two words carry all f64 precision
    let word_bits = astro_float::WORD_BIT_SIZE as i32;
    let top = *words.last().unwrap() as f64;
    let next = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
    let mantissa = top * (-word_bits as f64).exp2() + next * (-2.0 * word_bits as f64).exp2();
    let v = mantissa * (exponent as f64).exp2();
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Evaluation context: precision plus the shared constants cache.
pub struct Hp {
    prec: usize,
    consts: Consts,
}

impl Default for Hp {
    fn default() -> Self {
        Hp::new(DEFAULT_PRECISION)
    }
}

impl Hp {
    pub fn new(prec: usize) -> Hp {
        Hp {
            prec,
            consts: Consts::new().expect("constants cache allocation"),
        }
    }

    pub fn num(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    fn one(&self) -> BigFloat {
        self.num(1.0)
    }

    /// `x^e` for positive `x`. An f64 exponent has a finite dyadic expansion,
    /// so this decomposes into an integer power and repeated square roots;
    /// the library's general `pow` (exp of ln) is avoided because its
    /// precision-escalation loop does not terminate when the result is
    /// exactly representable (e.g. squaring an exact value).
    fn powf(&mut self, x: &BigFloat, e: f64) -> BigFloat {
        let p = self.prec + 64;
        if e == 0.0 || x.cmp(&self.one()) == Some(0) {
            return self.one();
        }
        let a = e.abs();
        let mut r = x.powi(a.trunc() as usize, p, RM);
        let mut frac = a.fract();
        let mut root = x.clone();
        while frac > 0.0 {
            root = root.sqrt(p, RM);
            frac *= 2.0;
            if frac >= 1.0 {
                frac -= 1.0;
                r = r.mul(&root, p, RM);
            }
        }
        if e < 0.0 {
            self.one().div(&r, self.prec, RM)
        } else {
            r
        }
    }

    /// Evaluate a transform in extended precision; `None` encodes −∞.
    /// Out-of-interval inputs are the caller's responsibility. Opaque custom
    /// transforms fall back to their working-precision evaluator.
    pub fn eval(&mut self, f: &Transform, tau: &BigFloat) -> Option<BigFloat> {
        let p = self.prec;
        match f.view() {
            TransformView::Power { p: pw } => {
                if tau.is_zero() {
                    if pw > 0.0 {
                        Some(self.num(-1.0 / pw))
                    } else {
                        None
                    }
                } else if pw == 0.0 {
                    Some(tau.ln(p, RM, &mut self.consts))
                } else {
                    let tp = self.powf(tau, pw);
                    Some(tp.sub(&self.one(), p, RM).div(&self.num(pw), p, RM))
                }
            }
            TransformView::PowerStar { p: pw } => {
                if tau.is_zero() {
                    None
                } else {
                    self.eval(&Transform::power(pw), tau)
                }
            }
            TransformView::LogPower { alpha } => {
                if tau.is_zero() {
                    return if alpha >= 0.0 { None } else { Some(self.num(1.0 / alpha)) };
                }
                let neg_log = tau.ln(p, RM, &mut self.consts).neg();
                if neg_log.is_zero() {
                    // tau = 1, the closed right endpoint for alpha > 0
                    return Some(self.num(1.0 / alpha));
                }
                if alpha == 0.0 {
                    Some(neg_log.ln(p, RM, &mut self.consts).neg())
                } else {
                    let powered = self.powf(&neg_log, alpha);
                    Some(
                        powered
                            .sub(&self.one(), p, RM)
                            .div(&self.num(alpha), p, RM)
                            .neg(),
                    )
                }
            }
            TransformView::HalfLogK { k, normalized } => {
                if tau.is_zero() {
                    return None;
                }
                let ratio = tau.div(&self.num(k), p, RM).min(&self.one());
                let l = self.half_log(&ratio);
                if normalized {
                    let log_k = self.num(k).ln(p, RM, &mut self.consts);
                    let inv_k = self.num(1.0 / k);
                    let offset = self.half_log(&inv_k);
                    Some(log_k.sqrt(p, RM).mul(&l.sub(&offset, p, RM), p, RM))
                } else {
                    Some(l)
                }
            }
            TransformView::Affine { a, b, base } => {
                let v = self.eval(base, tau)?;
                Some(self.num(a).mul(&v, p, RM).add(&self.num(b), p, RM))
            }
            TransformView::Reflect { base } => {
                let v = self.eval(base, &tau.neg())?;
                Some(v.neg())
            }
            TransformView::Rescale { lambda, base } => {
                let scaled = self.num(lambda).mul(tau, p, RM);
                self.eval(base, &scaled)
            }
            TransformView::Restrict { base } => self.eval(base, tau),
            TransformView::ConjExp { base } => {
                let e = tau.exp(p, RM, &mut self.consts);
                self.eval(base, &e)
            }
            TransformView::ConjLog { base } => {
                let l = tau.ln(p, RM, &mut self.consts);
                self.eval(base, &l)
            }
            TransformView::Custom => match f.eval(to_f64(tau)).ok()? {
                ExtReal::NegInf => None,
                ExtReal::Finite(v) => Some(self.num(v)),
            },
        }
    }

    /// `−2(√(−ln x) − 1)` for `x ∈ (0, 1]`.
    fn half_log(&mut self, x: &BigFloat) -> BigFloat {
        let p = self.prec;
        let neg_log = x.ln(p, RM, &mut self.consts).neg();
        let root = neg_log.max(&BigFloat::from_f64(0.0, p)).sqrt(p, RM);
        root.sub(&self.one(), p, RM).mul(&self.num(-2.0), p, RM)
    }

    /// Re-evaluate the slack `F(f_m) − (1−μ)F(f_x) − μF(f_y)` for a triple of
    /// field values. `None` when a −∞ makes the slack non-finite (vacuous or
    /// hard violation, decided at working precision).
    pub fn slack(&mut self, f: &Transform, fx: f64, fm: f64, fy: f64, mu: f64) -> Option<BigFloat> {
        let p = self.prec;
        let vx = self.eval(f, &self.num(fx))?;
        let vm = self.eval(f, &self.num(fm))?;
        let vy = self.eval(f, &self.num(fy))?;
        let rhs = self
            .num(1.0 - mu)
            .mul(&vx, p, RM)
            .add(&self.num(mu).mul(&vy, p, RM), p, RM);
        Some(vm.sub(&rhs, p, RM))
    }

    /// Confirm that a working-precision violation witness is genuinely
    /// negative at extended precision (not a discretization or rounding
    /// artifact). The field values entering the slack are exact binary64.
    pub fn confirm_negative_slack(
        &mut self,
        f: &Transform,
        fx: f64,
        fm: f64,
        fy: f64,
        mu: f64,
    ) -> bool {
        match self.slack(f, fx, fm, fy, mu) {
            Some(s) => s.is_negative() && !s.is_zero(),
            None => false,
        }
    }

    /// Follow `F` along the geometric sequence `τ, τ², τ⁴, …` (squared in
    /// extended precision, so the walk continues far below the f64 underflow
    /// threshold) until the value drops below `floor`. Returns
    /// `(log10 τ, F(τ))` pairs; an empty tail means `F` stayed bounded.
    pub fn divergence_probe(
        &mut self,
        f: &Transform,
        start: f64,
        floor: f64,
        max_steps: usize,
    ) -> Vec<(f64, f64)> {
        let p = self.prec;
        let mut tau = self.num(start);
        let mut log10_tau = start.log10();
        let mut out = Vec::new();
        for _ in 0..max_steps {
            let Some(v) = self.eval(f, &tau) else { break };
            let v64 = to_f64(&v);
            out.push((log10_tau, v64));
            if v64 < floor {
                break;
            }
            tau = tau.mul(&tau, p, RM);
            log10_tau *= 2.0;
        }
        out
    }
}

/// Renormalized modal decay of the Crank–Nicolson scheme on `(0, 1)`.
///
/// On the uniform grid the scheme acts diagonally on the discrete sine modes
/// `sin(jπx)` with per-step factor `g_j = (1 − λ_j dt/2)/(1 + λ_j dt/2)`,
/// `λ_j = (4/h²) sin²(jπh/2)`. Dividing out mode 1 exactly, the sup-distance
/// between the renormalized solution and its mode-1 limit is
/// `d(m) = max_i |Σ_{j≥2} c_j (g_j/g_1)^m sin(jπx_i)|`, which decays like
/// `(g_2/g_1)^m ≈ e^{−(λ_2−λ_1)t}` — resolvable only in extended precision
/// for t of order 1. Returns `d` at each requested time (a multiple of `dt`).
pub fn renormalized_mode_decay(times: &[f64], dt: f64, n_cells: usize, prec: usize) -> Vec<f64> {
    let mut hp = Hp::new(prec);
    let p = prec;
    let h = 1.0 / n_cells as f64;
    let coefficients = [1.0, 0.5, 0.25];
    let pi = hp.consts.pi(p, RM);

    // per-step factors g_j for modes j = 1..3
    let mut g = Vec::new();
    for j in 1..=coefficients.len() {
        let arg = pi
            .mul(&hp.num(j as f64), p, RM)
            .mul(&hp.num(h / 2.0), p, RM);
        let s = arg.sin(p, RM, &mut hp.consts);
        let lambda = s.mul(&s, p, RM).mul(&hp.num(4.0 / (h * h)), p, RM);
        let half = lambda.mul(&hp.num(dt / 2.0), p, RM);
        let g_j = hp.one().sub(&half, p, RM).div(&hp.one().add(&half, p, RM), p, RM);
        g.push(g_j);
    }

    times
        .iter()
        .map(|&t| {
            let m = (t / dt).round() as usize;
            assert!(
                ((t / dt) - m as f64).abs() < 1e-9,
                "time {t} is not a multiple of dt = {dt}"
            );
            let mut worst = hp.num(0.0);
            for i in 1..n_cells {
                let x = i as f64 * h;
                let mut acc = hp.num(0.0);
                for (j, c) in coefficients.iter().enumerate().skip(1) {
                    let ratio = g[j].div(&g[0], p, RM);
                    let decay = ratio.powi(m, p, RM);
                    let arg = pi
                        .mul(&hp.num((j + 1) as f64), p, RM)
                        .mul(&hp.num(x), p, RM);
                    let mode = arg.sin(p, RM, &mut hp.consts);
                    acc = acc.add(&hp.num(*c).mul(&decay, p, RM).mul(&mode, p, RM), p, RM);
                }
                worst = worst.max(&acc.abs());
            }
            to_f64(&worst)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fconlab_core::Interval;
    use std::sync::Arc;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{a} vs {b}");
    }

    #[test]
    fn f64_conversion_roundtrips() {
        let hp = Hp::default();
        for v in [0.0, 1.0, -2.5, 1e-300, 3.7e40, -1.0 / 3.0] {
            assert_eq!(to_f64(&hp.num(v)), v);
        }
        assert!(to_f64(&astro_float::INF_NEG).is_infinite());
    }

    #[test]
    fn catalog_matches_working_precision() {
        let mut hp = Hp::default();
        let transforms = [
            Transform::power(2.0),
            Transform::power(0.0),
            Transform::power(-1.5),
            Transform::log_power(0.5),
            Transform::log_power(0.0),
            Transform::log_power(-1.0),
            Transform::scaled_half_log(4.0, true).unwrap(),
            Transform::power(0.5).affine(2.0, -1.0).unwrap(),
            Transform::power(1.0).reflect().unwrap(),
            Transform::log_power(1.0).rescale(2.0).unwrap(),
            Transform::power(0.0).conj_exp().unwrap(),
            Transform::power(2.0).conj_log().unwrap(),
        ];
        for t in &transforms {
            let (lo, hi) = t.interval().finite_window(6.0);
            for i in 1..20 {
                let tau = lo + (hi - lo) * i as f64 / 20.0;
                if !t.interval().interior_contains(tau) {
                    continue;
                }
                let coarse = t.eval(tau).unwrap().as_finite().unwrap();
                let fine = to_f64(&hp.eval(t, &hp.num(tau)).unwrap());
                close(fine, coarse, 1e-12);
            }
        }
    }

    #[test]
    fn minus_infinity_is_none() {
        let mut hp = Hp::default();
        assert!(hp.eval(&Transform::power(0.0), &hp.num(0.0)).is_none());
        assert!(hp.eval(&Transform::power_star(2.0), &hp.num(0.0)).is_none());
        assert!(hp.eval(&Transform::log_power(0.5), &hp.num(0.0)).is_none());
        assert!(hp.eval(&Transform::power(2.0), &hp.num(0.0)).is_some());
    }

    #[test]
    fn slack_agrees_with_working_precision() {
        // log slack of a Gaussian triple: exact value 2·0.5·1.5·(0.5)² ... use
        // direct difference of logs instead
        let mut hp = Hp::default();
        let f = Transform::power(0.0);
        let (fx, fm, fy) = ((-0.25f64).exp(), (-1.0f64).exp(), (-2.25f64).exp());
        let s = hp.slack(&f, fx, fm, fy, 0.5).unwrap();
        close(to_f64(&s), -1.0 + 0.5 * (0.25 + 2.25), 1e-13);
    }

    #[test]
    fn witness_confirmation_distinguishes_sign() {
        let mut hp = Hp::default();
        let f = Transform::power(1.0);
        // strictly convex triple: genuine violation
        assert!(hp.confirm_negative_slack(&f, 1.0, 1.2, 2.0, 0.5));
        // strictly concave triple: not a violation
        assert!(!hp.confirm_negative_slack(&f, 1.0, 1.8, 2.0, 0.5));
    }

    #[test]
    fn divergence_probe_continues_past_f64_underflow() {
        let mut hp = Hp::default();
        let trail = hp.divergence_probe(&Transform::power(0.0), 1e-6, -1000.0, 64);
        let last = trail.last().unwrap();
        assert!(last.1 < -1000.0, "trail ends at {last:?}");
        assert!(last.0 < -400.0, "needed sub-underflow tau, got 1e{}", last.0);
        // ln(10^e) = e·ln 10 along the whole trail
        for (e, v) in &trail {
            close(*v, e * std::f64::consts::LN_10, 1e-12);
        }
    }

    #[test]
    fn bounded_transform_never_reaches_the_floor() {
        let mut hp = Hp::default();
        let trail = hp.divergence_probe(&Transform::power(2.0), 1e-6, -1000.0, 64);
        assert_eq!(trail.len(), 64);
        assert!(trail.iter().all(|&(_, v)| v > -1.0));
    }

    #[test]
    fn mode_decay_is_steeply_monotone() {
        let d = renormalized_mode_decay(&[1.0, 2.0, 3.0], 0.01, 16, 192);
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        // the decade scale matches e^{−(λ₂−λ₁)t} ≈ e^{−3π²t}
        let rate = (d[0] / d[1]).ln();
        assert!((rate - 3.0 * std::f64::consts::PI.powi(2)).abs() < 1.0, "rate {rate}");
        assert!(d[2] > 0.0 && d[2] < 1e-35);
    }

    #[test]
    fn custom_transform_falls_back_to_working_precision() {
        let cubic = Transform::custom(fconlab_core::CustomTransform {
            name: "cubic".into(),
            interval: Interval::open(f64::NEG_INFINITY, f64::INFINITY),
            eval: Arc::new(|tau| ExtReal::Finite(tau * tau * tau)),
            inverse: None,
            derivative: None,
        });
        let mut hp = Hp::default();
        close(to_f64(&hp.eval(&cubic, &hp.num(2.0)).unwrap()), 8.0, 1e-15);
    }
}
