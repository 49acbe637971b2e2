//! Branching parameters and Hausdorff dimension.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::{Budget, QuotientTable};
use crate::error::{Error, Result};
use crate::gfp::GroupSpec;

/// `t_n = p * nu_n - nu_{n+1} + 1` for `n >= s`.
///
/// This inverts the recursion `[G:G_{n+1}] = p^{1-t} [G:G_n]^p`, so `t` is
/// read off the index sequence without enumerating the level-1 stabilizer
/// inside the product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TSequence {
    /// Index `n` of the first value.
    pub start: usize,
    pub values: Vec<i64>,
    /// All consecutive values agree.
    pub stable: bool,
}

impl TSequence {
    pub fn t(&self, n: usize) -> Option<i64> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i)).copied()
    }

    /// The stabilized value, when there is one.
    pub fn limit(&self) -> Option<i64> {
        if self.stable {
            self.values.last().copied()
        } else {
            None
        }
    }
}

/// `nus[0]` is `nu_1`.
pub fn t_sequence(nus: &[u32], p: u32, s: usize) -> Result<TSequence> {
    if s == 0 || nus.len() < s + 1 {
        return Err(Error::InsufficientDepth(format!(
            "t_n for n >= {s} needs nu up to {}, have {}",
            s + 1,
            nus.len()
        )));
    }
    let values: Vec<i64> = (s..nus.len())
        .map(|n| p as i64 * nus[n - 1] as i64 - nus[n] as i64 + 1)
        .collect();
    let stable = values.windows(2).all(|w| w[0] == w[1]);
    Ok(TSequence {
        start: s,
        values,
        stable,
    })
}

/// `t = p` for odd `p`, `t = 3` for `p = 2`.
pub fn theoretical_t(p: u32) -> i64 {
    if p == 2 {
        3
    } else {
        p as i64
    }
}

/// `nu_n = (p^n - t p^{n-m-1} + t - 1)/(p-1)` for `n >= m+1`.
pub fn closed_form_nu(p: u32, m: usize, n: usize) -> Option<u64> {
    if n < m + 1 {
        return None;
    }
    let t = theoretical_t(p) as u128;
    let p = p as u128;
    let pn = p.checked_pow(n as u32)?;
    let pk = p.checked_pow((n - m - 1) as u32)?;
    let num = pn.checked_add(t - 1)?.checked_sub(t.checked_mul(pk)?)?;
    u64::try_from(num / (p - 1)).ok()
}

/// `1 - 1/p^m` for odd `p`, `1 - 3/2^{m+1}` for `p = 2`.
pub fn closed_form_dimension(p: u32, m: usize) -> BigRational {
    let pb = BigInt::from(p);
    if p == 2 {
        BigRational::one() - BigRational::new(BigInt::from(3), pb.pow(m as u32 + 1))
    } else {
        BigRational::one() - BigRational::new(BigInt::one(), pb.pow(m as u32))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimensionMode {
    Empirical,
    Theoretical,
    Hybrid,
}

impl std::str::FromStr for DimensionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empirical" => Ok(DimensionMode::Empirical),
            "theoretical" => Ok(DimensionMode::Theoretical),
            "hybrid" => Ok(DimensionMode::Hybrid),
            _ => Err(Error::BadParameters(format!("unknown mode {s}"))),
        }
    }
}

/// Whether a parameter was computed from an enumeration or taken from theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Measured,
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub p: u32,
    pub m: usize,
    pub s: usize,
    pub r: i64,
    pub t: i64,
    pub r_source: Source,
    pub t_source: Source,
    /// The mode actually delivered.
    pub mode: DimensionMode,
    pub requested_mode: DimensionMode,
    /// Set when an empirical request had to cite a parameter.
    pub fell_back: bool,
    pub fallback_reason: Option<String>,
    /// Measured `nu_s`, `nu_{s+1}` where available.
    pub nus: Vec<(usize, u32)>,
    pub dimension: BigRational,
    pub closed_form: BigRational,
    pub matches_closed_form: bool,
}

impl DimensionReport {
    pub fn dimension_string(&self) -> String {
        self.dimension.to_string()
    }

    pub fn dimension_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.dimension.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn hausdorff_dimension(spec: &GroupSpec, mode: DimensionMode, budget: &Budget) -> Result<DimensionReport> {
    hausdorff_dimension_capped(spec, mode, budget, None)
}

/// As [`hausdorff_dimension`], never enumerating deeper than `max_depth`.
pub fn hausdorff_dimension_capped(
    spec: &GroupSpec,
    mode: DimensionMode,
    budget: &Budget,
    max_depth: Option<usize>,
) -> Result<DimensionReport> {
    let p = spec.p();
    let m = spec.m();
    if m < 2 {
        return Err(Error::DegreeTooSmall(m));
    }
    let s = m + 1;
    let r_cited = (p as i64).pow(s as u32) - 1;
    let t_cited = theoretical_t(p);
    let mut r = (r_cited, Source::Cited);
    let mut t = (t_cited, Source::Cited);
    let mut nus = Vec::new();
    let mut reason = None;

    if mode != DimensionMode::Theoretical {
        let measure = |n: usize| -> std::result::Result<u32, String> {
            if max_depth.is_some_and(|d| n > d) {
                return Err(format!("depth {n} exceeds max depth"));
            }
            QuotientTable::enumerate(spec, n, budget)
                .map(|t| t.nu())
                .map_err(|e| format!("depth {n}: {e}"))
        };
        match measure(s) {
            Ok(nu_s) => {
                nus.push((s, nu_s));
                r = ((p as i64 - 1) * nu_s as i64, Source::Measured);
                match measure(s + 1) {
                    Ok(nu_next) => {
                        nus.push((s + 1, nu_next));
                        t = (p as i64 * nu_s as i64 - nu_next as i64 + 1, Source::Measured);
                    }
                    Err(e) => reason = Some(e),
                }
            }
            Err(e) => reason = Some(e),
        }
    }

    let fell_back = mode == DimensionMode::Empirical && reason.is_some();
    let delivered = match (r.1, t.1) {
        (Source::Measured, Source::Measured) => DimensionMode::Empirical,
        (Source::Cited, Source::Cited) => DimensionMode::Theoretical,
        _ => DimensionMode::Hybrid,
    };
    let delivered = if mode == DimensionMode::Hybrid { DimensionMode::Hybrid } else { delivered };
    let dimension = BigRational::new(
        BigInt::from(r.0 - t.0 + 1),
        BigInt::from(p).pow(s as u32),
    );
    let closed_form = closed_form_dimension(p, m);
    Ok(DimensionReport {
        p,
        m,
        s,
        r: r.0,
        t: t.0,
        r_source: r.1,
        t_source: t.1,
        mode: delivered,
        requested_mode: mode,
        fell_back,
        fallback_reason: reason,
        nus,
        matches_closed_form: dimension == closed_form,
        dimension,
        closed_form,
    })
}

/// Dimension of a finitely constrained group acting on the `k`-ary tree with
/// `[H:H_n] = q^{e(n)}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralDimension {
    pub k: u32,
    pub q: u32,
    pub epsilon: f64,
    pub r: f64,
    pub t: f64,
    pub s: u32,
    pub dimension: f64,
}

impl GeneralDimension {
    /// Predicted `log_q [H:H_n]`.
    pub fn index_exponent(&self, n: u32) -> f64 {
        let k = self.k as f64;
        let lead = (self.r - self.t + self.epsilon) / (k - 1.0);
        lead * k.powi(n as i32 - self.s as i32) + (self.t - self.epsilon) / (k - 1.0)
    }
}

/// `(r - t + epsilon)/k^s`.
pub fn general_dimension(k: u32, q: u32, epsilon: f64, r: f64, t: f64, s: u32) -> Result<GeneralDimension> {
    if k < 2 || q < 2 || s < 1 {
        return Err(Error::BadParameters("need k >= 2, q >= 2, s >= 1".into()));
    }
    if ![epsilon, r, t].iter().all(|x| x.is_finite()) {
        return Err(Error::BadParameters("r, t and epsilon must be finite".into()));
    }
    let ks = (k as f64).powi(s as i32);
    if !ks.is_finite() {
        return Err(Error::BadParameters("k^s overflows".into()));
    }
    Ok(GeneralDimension {
        k,
        q,
        epsilon,
        r,
        t,
        s,
        dimension: (r - t + epsilon) / ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_examples() {
        let ts = t_sequence(&[1, 3, 7, 12, 22], 2, 3).unwrap();
        assert_eq!(ts.values, vec![3, 3]);
        assert_eq!(ts.limit(), Some(3));
        let full: Vec<u32> = (1..=6).map(|n| (3u32.pow(n) - 1) / 2).collect();
        assert!(t_sequence(&full, 3, 2).unwrap().values.iter().all(|&t| t == 0));
        assert!(matches!(t_sequence(&[1, 3], 2, 3), Err(Error::InsufficientDepth(_))));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_nu(2, 2, 3), Some(7));
        assert_eq!(closed_form_nu(2, 2, 4), Some(12));
        assert_eq!(closed_form_nu(2, 2, 5), Some(22));
        assert_eq!(closed_form_nu(2, 2, 2), None);
        assert_eq!(closed_form_dimension(2, 2).to_string(), "5/8");
        assert_eq!(closed_form_dimension(3, 2).to_string(), "8/9");
        assert_eq!(closed_form_dimension(2, 3).to_string(), "13/16");
    }

    #[test]
    fn theoretical_dimensions() {
        let b = Budget::default();
        let g = GroupSpec::new(3, &[2, 2, 1]).unwrap();
        let rep = hausdorff_dimension(&g, DimensionMode::Theoretical, &b).unwrap();
        assert_eq!(rep.dimension_string(), "8/9");
        assert!(rep.matches_closed_form);
        let g = GroupSpec::new(2, &[1, 1, 0, 1]).unwrap();
        let rep = hausdorff_dimension(&g, DimensionMode::Theoretical, &b).unwrap();
        assert_eq!(rep.dimension_string(), "13/16");
        let g = GroupSpec::new(2, &[1, 1]).unwrap();
        assert_eq!(
            hausdorff_dimension(&g, DimensionMode::Theoretical, &b),
            Err(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn empirical_grigorchuk() {
        let g = GroupSpec::new(2, &[1, 1, 1]).unwrap();
        let rep = hausdorff_dimension(&g, DimensionMode::Empirical, &Budget::default()).unwrap();
        assert_eq!(rep.dimension_string(), "5/8");
        assert_eq!((rep.r_source, rep.t_source), (Source::Measured, Source::Measured));
        assert!(!rep.fell_back);
        let capped =
            hausdorff_dimension_capped(&g, DimensionMode::Empirical, &Budget::default(), Some(3)).unwrap();
        assert!(capped.fell_back);
        assert_eq!(capped.mode, DimensionMode::Hybrid);
        assert_eq!(capped.dimension_string(), "5/8");
    }

    #[test]
    fn general_examples() {
        let hanoi = general_dimension(3, 6, 1.0, 2.0, 2f64.ln() / 6f64.ln(), 1).unwrap();
        assert!((hanoi.dimension - (1.0 - (2f64.ln() / 6f64.ln()) / 3.0)).abs() < 1e-12);
        assert_eq!(general_dimension(2, 2, 0.0, 3.0, 3.0, 2).unwrap().dimension, 0.0);
        let padic = general_dimension(3, 3, 1.0, 26.0, 3.0, 3).unwrap();
        assert!((padic.dimension - 24.0 / 27.0).abs() < 1e-15);
        assert!(general_dimension(1, 2, 1.0, 1.0, 1.0, 1).is_err());
    }
}
