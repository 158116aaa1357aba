use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::DerivedParams;
use crate::lp::{to_f64, Rational};

/// Inputs of the hybrid algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmParams {
    /// Number of coin flips per C₂ edge; at least 2.
    pub k: u32,
    pub epsilon: Rational,
    /// Independent randomized trials; the smallest cover wins.
    pub trials: usize,
    pub seed: u64,
    /// Largest edge count for which the exact oracle may replace the run.
    pub exact_fallback_threshold: usize,
    /// Route instances with `m <= exact_fallback_threshold` to the oracle.
    pub exact_shortcut: bool,
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        Self {
            k: 2,
            epsilon: Rational::new(1.into(), 2.into()),
            trials: 10,
            seed: 0,
            exact_fallback_threshold: 20,
            exact_shortcut: false,
        }
    }
}

/// Rigorous rational enclosure `lo <= exp(a) <= hi` for `a >= 0`.
///
/// Taylor partial sums are lower bounds; the tail after `N` terms is at most
/// twice the `N`-th term once `N + 1 >= 2a`. Both ends are then rounded
/// outward to multiples of 2^-`PRECISION_BITS`.
pub fn exp_bounds(a: &Rational) -> (Rational, Rational) {
    assert!(
        !a.is_negative(),
        "exp_bounds expects a non-negative argument"
    );
    const PRECISION_BITS: u32 = 192;
    let tolerance = Rational::new(BigInt::one(), BigInt::from(2).pow(PRECISION_BITS + 8));
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut index = 0u32;
    loop {
        let tail_is_geometric = Rational::from_integer((index + 1).into()) >= a * BigInt::from(2);
        if tail_is_geometric && term <= &sum * &tolerance {
            break;
        }
        sum += &term;
        index += 1;
        term = term * a / BigInt::from(index);
    }
    let hi = &sum + &term * BigInt::from(2);
    let scale = BigInt::from(2).pow(PRECISION_BITS);
    let round = |x: &Rational, up: bool| {
        let scaled = x * &scale;
        let (q, r) = scaled.numer().div_mod_floor(scaled.denom());
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Rational::new(q, scale.clone())
    };
    (round(&sum, false), round(&hi, true))
}

/// λ, λ₀, a_{k,ε}, α and the two ratio bounds for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    pub delta: usize,
    pub b_min: u32,
    pub max_edge_size: usize,
    pub k: u32,
    pub epsilon: Rational,
    pub epsilon_pow_k: Rational,
    /// λ = (δ+1)/2.
    pub lambda: Rational,
    /// λ₀ = (1−ε)δ.
    pub lambda0: Rational,
    /// a_{k,ε} = (k(1−ε) + (δ−1)(1−ε^k)) / 2.
    pub a_k_eps: Rational,
    /// (b−1)δε^k / (6ℓ), the rational factor of α.
    pub alpha_factor: Rational,
    pub exp_a: (Rational, Rational),
    pub alpha: f64,
    /// (1 − (b−1)ε^k exp(a_{k,ε}) / (18ℓ)) δ = δ − α/3.
    pub case1_ratio: f64,
    /// (1 − ½(1−ε)ε^k) δ.
    pub case2_ratio: Rational,
}

impl DerivedConstants {
    /// Rational enclosure of α.
    pub fn alpha_bounds(&self) -> (Rational, Rational) {
        (
            &self.alpha_factor * &self.exp_a.0,
            &self.alpha_factor * &self.exp_a.1,
        )
    }

    /// Rational upper bound on the deterministic-branch ratio.
    pub fn case1_ratio_upper(&self) -> Rational {
        let delta = Rational::from_integer(self.delta.into());
        delta - self.alpha_bounds().0 / BigInt::from(3)
    }

    /// max{case2, case1}: the overall guarantee of the hybrid algorithm.
    pub fn guaranteed_ratio(&self) -> f64 {
        self.case1_ratio.max(to_f64(&self.case2_ratio))
    }

    /// The admissible interval is [(δ−1)/(2δ), ((δ−1)/(2δ))^(1/k)]; this is
    /// its lower end (and the k-th power of its upper end).
    pub fn epsilon_floor(delta: usize) -> Rational {
        Rational::new((delta - 1).into(), (2 * delta).into())
    }

    /// Smallest n for which the success-probability argument applies:
    /// 16 exp(a_{k,ε}) / ε^{k+2}.
    pub fn regime_min_vertices(&self) -> f64 {
        let eps_k2 = &self.epsilon_pow_k * &self.epsilon * &self.epsilon;
        16.0 * to_f64(&self.exp_a.1) / to_f64(&eps_k2)
    }
}

/// Computes every constant of the hybrid algorithm; fails if ε is outside
/// [(δ−1)/(2δ), ((δ−1)/(2δ))^(1/k)] or the other parameters are invalid.
pub fn derive_constants(dp: &DerivedParams, ap: &AlgorithmParams) -> Result<DerivedConstants> {
    if ap.k < 2 {
        return Err(Error::InvalidParams(format!(
            "k must be >= 2, got {}",
            ap.k
        )));
    }
    if ap.trials == 0 {
        return Err(Error::InvalidParams("trials must be >= 1".into()));
    }
    let one = Rational::one();
    let eps = &ap.epsilon;
    let delta = dp.delta;
    let floor = DerivedConstants::epsilon_floor(delta);
    let eps_k = eps.clone().pow(ap.k as i32);
    let outside = !eps.is_positive() || *eps >= one || *eps < floor || eps_k > floor;
    if outside {
        return Err(Error::EpsilonOutOfRange {
            epsilon: eps.to_string(),
            low: floor.to_string(),
            k: ap.k,
            delta: delta as u32,
        });
    }
    let delta_q = Rational::from_integer(delta.into());
    let k_q = Rational::from_integer(ap.k.into());
    let lambda = (&delta_q + &one) / BigInt::from(2);
    let lambda0 = (&one - eps) * &delta_q;
    let a_k_eps = (&k_q * (&one - eps) + (&delta_q - &one) * (&one - &eps_k)) / BigInt::from(2);
    let b1 = Rational::from_integer((dp.b_min as i64 - 1).into());
    let ell = Rational::from_integer(dp.max_edge_size.into());
    let alpha_factor = &b1 * &delta_q * &eps_k / (ell * BigInt::from(6));
    let exp_a = exp_bounds(&a_k_eps);
    let mid = (&exp_a.0 + &exp_a.1) / BigInt::from(2);
    let alpha = to_f64(&(&alpha_factor * &mid));
    let case1_ratio = delta as f64 - alpha / 3.0;
    let case2_ratio = (&one - (&one - eps) * &eps_k / BigInt::from(2)) * &delta_q;
    Ok(DerivedConstants {
        delta,
        b_min: dp.b_min,
        max_edge_size: dp.max_edge_size,
        k: ap.k,
        epsilon: eps.clone(),
        epsilon_pow_k: eps_k,
        lambda,
        lambda0,
        a_k_eps,
        alpha_factor,
        exp_a,
        alpha,
        case1_ratio,
        case2_ratio,
    })
}
