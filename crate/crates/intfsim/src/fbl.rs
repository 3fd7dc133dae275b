//! Finite blocklength coding mathematics.
//!
//! In the normal approximation, `D` information bits survive decoding with
//! error probability `eps` over `R` channel uses of an AWGN channel at SINR
//! `gamma` when
//!
//! ```text
//! D = R * C(gamma) - Qinv(eps) * sqrt(R * V(gamma))
//! ```
//!
//! with Shannon capacity `C(gamma) = log2(1 + gamma)` and channel dispersion
//! `V(gamma) = (1 - (1 + gamma)^-2) / ln(2)^2` in squared information units
//! per channel use. Solving for `R` gives the closed-form channel usage
//! implemented by [`required_blocklength`]; solving for `eps` gives the
//! realized error probability of an allocation evaluated at the actual SINR,
//! implemented by [`realized_error`]. The two are exact inverses of each
//! other, which is what makes the genie-aided predictor allocate exactly the
//! target error.

use crate::error::{Error, Result};

const LN2: f64 = std::f64::consts::LN_2;
const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// 1 / sqrt(2 * pi), the standard normal density at zero.
const INV_SQRT_2PI: f64 = 0.3989422804014327;

/// Targets above this are clamped; the closed form assumes `Qinv >= 0`.
pub const MAX_TARGET_ERROR: f64 = 0.5;

/// Shannon capacity `log2(1 + gamma)` in bits per channel use.
pub fn shannon_capacity(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::invalid("sinr", format!("must be >= 0, got {sinr}")));
    }
    Ok(sinr.ln_1p() / LN2)
}

/// Channel dispersion `(1 - (1 + gamma)^-2) / ln(2)^2`.
pub fn channel_dispersion(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::invalid("sinr", format!("must be >= 0, got {sinr}")));
    }
    let denom = (1.0 + sinr) * (1.0 + sinr);
    Ok((1.0 - 1.0 / denom) / (LN2 * LN2))
}

/// Gaussian tail probability `Q(x) = P[N(0,1) > x]`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Inverse of the Q-function: the `x` with `Q(x) = p`, for `p` in (0, 1).
///
/// A rational initial guess (Acklam's normal-quantile approximation) is
/// polished with two Newton steps on `Q`, giving better than 1e-10 relative
/// accuracy in `Q(inverse_q(p))` across the full double range.
pub fn inverse_q(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 || p >= 1.0 {
        return Err(Error::invalid(
            "probability",
            format!("must lie in (0, 1), got {p}"),
        ));
    }
    let mut x = -acklam_norm_inv(p);
    for _ in 0..2 {
        let pdf = INV_SQRT_2PI * (-0.5 * x * x).exp();
        if pdf <= f64::MIN_POSITIVE {
            break;
        }
        x += (q_function(x) - p) / pdf;
    }
    Ok(x)
}

/// Acklam's rational approximation to the standard normal quantile.
fn acklam_norm_inv(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Channel usage solving the normal approximation for `R`:
///
/// ```text
/// R = D/C + Qinv(eps)^2 V / (2 C^2) * [1 + sqrt(1 + 4 D C / (Qinv(eps)^2 V))]
/// ```
///
/// Targets above 0.5 are clamped to 0.5, where the expression collapses to
/// the Shannon limit `D / C`. Zero SINR is infeasible (zero capacity) and is
/// signaled as [`Error::InfeasibleAllocation`].
pub fn required_blocklength(payload_bits: f64, target_error: f64, sinr: f64) -> Result<f64> {
    if !payload_bits.is_finite() || payload_bits < 1.0 {
        return Err(Error::invalid("payload_bits", "must be finite and >= 1"));
    }
    if target_error.is_nan() || target_error <= 0.0 || target_error >= 1.0 {
        return Err(Error::invalid(
            "target_error",
            format!("must lie in (0, 1), got {target_error}"),
        ));
    }
    let qinv = if target_error >= MAX_TARGET_ERROR {
        0.0
    } else {
        inverse_q(target_error)?
    };
    blocklength_for_qinv(payload_bits, qinv, sinr)
}

/// Hot-path variant of [`required_blocklength`] taking a precomputed
/// `Qinv(eps)`.
pub fn blocklength_for_qinv(payload_bits: f64, qinv: f64, sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::invalid("sinr", format!("must be >= 0, got {sinr}")));
    }
    if sinr == 0.0 {
        return Err(Error::InfeasibleAllocation);
    }
    let c = sinr.ln_1p() / LN2;
    let shannon = payload_bits / c;
    if qinv <= 0.0 {
        return Ok(shannon);
    }
    let v = channel_dispersion(sinr)?;
    let qsq_v = qinv * qinv * v;
    let ratio = 4.0 * payload_bits * c / qsq_v;
    if ratio.is_finite() {
        Ok(shannon + qsq_v / (2.0 * c * c) * (1.0 + (1.0 + ratio).sqrt()))
    } else {
        // Tiny Qinv overflows the inner square root; use the algebraically
        // equivalent small-Qinv expansion.
        Ok(shannon + qinv * (payload_bits * v / (c * c * c)).sqrt() + qsq_v / (2.0 * c * c))
    }
}

/// Blocklength rounded up to whole channel uses.
pub fn required_blocklength_ceil(payload_bits: f64, target_error: f64, sinr: f64) -> Result<u64> {
    Ok(required_blocklength(payload_bits, target_error, sinr)?.ceil() as u64)
}

/// Error probability realized by transmitting `payload_bits` over
/// `blocklength` channel uses at the actual SINR:
/// `Q((R C - D) / sqrt(R V))`.
pub fn realized_error(payload_bits: f64, blocklength: f64, actual_sinr: f64) -> Result<f64> {
    if !blocklength.is_finite() || blocklength <= 0.0 {
        return Err(Error::invalid(
            "blocklength",
            format!("must be positive and finite, got {blocklength}"),
        ));
    }
    if payload_bits.is_nan() || payload_bits < 1.0 {
        return Err(Error::invalid("payload_bits", "must be >= 1"));
    }
    if actual_sinr.is_nan() || actual_sinr < 0.0 {
        return Err(Error::invalid("sinr", "must be >= 0"));
    }
    let c = actual_sinr.ln_1p() / LN2;
    let v = channel_dispersion(actual_sinr)?;
    if v == 0.0 {
        // Zero SINR: no information gets through.
        return Ok(if blocklength * c < payload_bits { 1.0 } else { 0.0 });
    }
    let arg = (blocklength * c - payload_bits) / (blocklength * v).sqrt();
    Ok(q_function(arg))
}

/// A single allocation problem: payload, target error, predicted SINR.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AllocationRequest {
    pub payload_bits: u32,
    pub target_error: f64,
    pub predicted_sinr: f64,
}

/// Result of an allocation, with the error probability the allocation
/// realizes when the prediction is exact (round-trip sanity value).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AllocationResult {
    pub blocklength: f64,
    pub blocklength_ceil: u64,
    pub realized_error: f64,
}

/// Solve one allocation request.
pub fn allocate(request: &AllocationRequest) -> Result<AllocationResult> {
    let d = f64::from(request.payload_bits);
    let r = required_blocklength(d, request.target_error, request.predicted_sinr)?;
    let eps = realized_error(d, r, request.predicted_sinr)?;
    Ok(AllocationResult {
        blocklength: r,
        blocklength_ceil: r.ceil() as u64,
        realized_error: eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng as _;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn capacity_known_points() {
        assert_relative_eq!(shannon_capacity(1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(shannon_capacity(0.0).unwrap(), 0.0);
        assert_relative_eq!(shannon_capacity(3.0).unwrap(), 2.0, max_relative = 1e-15);
        assert!(shannon_capacity(-0.5).is_err());
    }

    #[test]
    fn dispersion_known_points() {
        assert_eq!(channel_dispersion(0.0).unwrap(), 0.0);
        // 0.75 / ln(2)^2 at sinr = 1.
        assert_relative_eq!(
            channel_dispersion(1.0).unwrap(),
            1.5610267357542058,
            max_relative = 1e-14
        );
        // Asymptote 1 / ln(2)^2.
        assert_relative_eq!(
            channel_dispersion(1e12).unwrap(),
            2.0813689810056078,
            max_relative = 1e-9
        );
        assert!(channel_dispersion(-1.0).is_err());
    }

    #[test]
    fn capacity_and_dispersion_match_alternate_algebraic_routes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = 10f64.powf(rng.gen_range(-3.0..6.0));
            let c_alt = (1.0 + g).log2();
            assert_relative_eq!(shannon_capacity(g).unwrap(), c_alt, max_relative = 1e-13);
            let v_alt = (g / (1.0 + g)) * ((g + 2.0) / (1.0 + g)) / (LN2 * LN2);
            assert_relative_eq!(channel_dispersion(g).unwrap(), v_alt, max_relative = 1e-12);
        }
    }

    #[test]
    fn inverse_q_known_points() {
        assert_relative_eq!(inverse_q(0.5).unwrap(), 0.0, epsilon = 1e-12);
        // Q(1) = 0.15865525393145705.
        assert_relative_eq!(
            inverse_q(0.15865525393145705).unwrap(),
            1.0,
            epsilon = 1e-4
        );
        assert_relative_eq!(inverse_q(1e-5).unwrap(), 4.264890793922825, epsilon = 1e-3);
        assert!(inverse_q(0.0).is_err());
        assert!(inverse_q(1.0).is_err());
        assert!(inverse_q(-0.1).is_err());
    }

    #[test]
    fn inverse_q_round_trip_accuracy() {
        // The contract: |Q(inverse_q(p)) - p| / p < 1e-10 over the usable range.
        let mut ps = vec![0.5, 0.3, 0.158655, 0.9, 0.99];
        for k in 1..=15 {
            ps.push(10f64.powi(-k));
        }
        for p in ps {
            let x = inverse_q(p).unwrap();
            let back = q_function(x);
            assert!(
                (back - p).abs() / p < 1e-10,
                "p={p}: Q(Qinv(p))={back}, rel err {}",
                (back - p).abs() / p
            );
        }
    }

    #[test]
    fn inverse_q_agrees_with_bisection_oracle() {
        // Independent inversion path: bisect Q over [-40, 40].
        let bisect = |p: f64| {
            let (mut lo, mut hi) = (-40.0f64, 40.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if q_function(mid) > p {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        for p in [0.4, 0.158655253931457, 1e-2, 1e-5, 1e-9, 0.97] {
            let x = inverse_q(p).unwrap();
            assert!(
                (x - bisect(p)).abs() < 1e-9,
                "p={p}: {x} vs oracle {}",
                bisect(p)
            );
        }
    }

    #[test]
    fn blocklength_at_half_target_is_shannon_limit() {
        assert_relative_eq!(
            required_blocklength(50.0, 0.5, 1.0).unwrap(),
            50.0,
            max_relative = 1e-15
        );
        // Targets above 0.5 clamp to the same limit.
        assert_relative_eq!(
            required_blocklength(50.0, 0.7, 1.0).unwrap(),
            50.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn blocklength_matches_high_precision_oracle() {
        // Frozen from a 50-digit evaluation of the closed form.
        assert_relative_eq!(
            required_blocklength(50.0, 1e-5, 100.0).unwrap(),
            10.50448351521045,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            required_blocklength(200.0, 1e-3, 10.0).unwrap(),
            68.42944045404667,
            max_relative = 1e-12
        );
    }

    #[test]
    fn blocklength_zero_sinr_is_infeasible() {
        assert!(matches!(
            required_blocklength(50.0, 1e-3, 0.0),
            Err(Error::InfeasibleAllocation)
        ));
    }

    #[test]
    fn blocklength_monotone_in_target_error() {
        let mut eps = 1e-7;
        let mut prev = f64::INFINITY;
        while eps < 0.5 {
            let r = required_blocklength(50.0, eps, 10.0).unwrap();
            assert!(r < prev, "R not decreasing at eps={eps}");
            prev = r;
            eps *= 1.5;
        }
    }

    #[test]
    fn blocklength_monotone_in_sinr_and_payload() {
        for d in [32.0, 50.0, 200.0] {
            let mut prev = f64::INFINITY;
            for g in [0.5, 1.0, 3.0, 10.0, 100.0, 1000.0] {
                let r = required_blocklength(d, 1e-4, g).unwrap();
                assert!(r < prev);
                prev = r;
            }
        }
        for g in [1.0, 10.0, 100.0] {
            let mut prev = 0.0;
            for d in [32.0, 50.0, 200.0, 1000.0] {
                let r = required_blocklength(d, 1e-4, g).unwrap();
                assert!(r > prev);
                prev = r;
            }
        }
    }

    #[test]
    fn small_qinv_expansion_matches_direct_formula() {
        // Where both routes are representable they agree; the guard only
        // reroutes when the inner sqrt would overflow.
        for qinv in [1e-3, 1e-6, 1e-9] {
            let direct = blocklength_for_qinv(50.0, qinv, 100.0).unwrap();
            let c = shannon_capacity(100.0).unwrap();
            let v = channel_dispersion(100.0).unwrap();
            let expansion =
                50.0 / c + qinv * (50.0 * v / (c * c * c)).sqrt() + qinv * qinv * v / (2.0 * c * c);
            assert_relative_eq!(direct, expansion, max_relative = 1e-9);
        }
    }

    #[test]
    fn realized_error_at_shannon_rate_is_half() {
        let c = shannon_capacity(3.0).unwrap(); // 2 bits per use
        let r = 50.0 / c;
        assert_relative_eq!(realized_error(50.0, r, 3.0).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn realized_error_vanishes_at_huge_sinr() {
        let eps = realized_error(50.0, 60.0, 1e9).unwrap();
        assert!(eps < 1e-100, "eps = {eps}");
    }

    #[test]
    fn realized_error_zero_sinr_rules() {
        assert_eq!(realized_error(50.0, 100.0, 0.0).unwrap(), 1.0);
        assert!(realized_error(50.0, 0.0, 1.0).is_err());
        assert!(realized_error(50.0, -3.0, 1.0).is_err());
    }

    #[test]
    fn allocation_round_trip_recovers_target() {
        for eps in [1e-1, 1e-3, 1e-5] {
            let r = required_blocklength(50.0, eps, 100.0).unwrap();
            let back = realized_error(50.0, r, 100.0).unwrap();
            assert!(
                (back - eps).abs() / eps < 1e-3,
                "eps={eps}, round trip {back}"
            );
        }
    }

    #[test]
    fn round_trip_grid_within_ten_percent() {
        for d in [32.0, 50.0, 200.0] {
            for k in 1..=6 {
                let eps = 10f64.powi(-k);
                for g in [1.0, 10.0, 100.0] {
                    let r = required_blocklength(d, eps, g).unwrap();
                    let back = realized_error(d, r, g).unwrap();
                    assert!(
                        back >= 0.9 * eps && back <= 1.1 * eps,
                        "d={d} eps={eps} g={g}: {back}"
                    );
                }
            }
        }
    }

    #[test]
    fn realized_error_monotone_in_sinr_and_blocklength() {
        let mut prev = 1.0;
        for g in [0.5, 1.0, 2.0, 5.0, 20.0, 100.0] {
            let e = realized_error(50.0, 30.0, g).unwrap();
            assert!(e <= prev);
            prev = e;
        }
        let mut prev = 1.0;
        for r in [10.0, 20.0, 40.0, 80.0] {
            let e = realized_error(50.0, r, 3.0).unwrap();
            assert!(e < prev);
            prev = e;
        }
    }

    #[test]
    fn allocate_reports_both_blocklength_variants() {
        let out = allocate(&AllocationRequest {
            payload_bits: 50,
            target_error: 1e-5,
            predicted_sinr: 100.0,
        })
        .unwrap();
        assert_eq!(out.blocklength_ceil, 11);
        assert!((out.blocklength - 10.50448351521045).abs() < 1e-9);
        assert!((out.realized_error - 1e-5).abs() / 1e-5 < 1e-3);
    }
}
