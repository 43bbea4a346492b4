use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::OrderedPattern;
use crate::params::{serialize_big_ratio, serialize_big_ratios, ModelParams};

/// Objective values of the exponent maximization and its optimizers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    pub k: usize,
    #[serde(serialize_with = "serialize_big_ratio")]
    pub chi: BigRational,
    /// `f(s)` for `s = 0..=k`.
    #[serde(serialize_with = "serialize_big_ratios")]
    pub values: Vec<BigRational>,
    /// `B = max_s f(s)`.
    #[serde(serialize_with = "serialize_big_ratio")]
    pub b: BigRational,
    /// Number of `s` attaining the maximum exactly.
    pub r: usize,
    pub argmax: Vec<usize>,
}

/// Computes, in exact arithmetic,
/// `f(s) = -s - sum_{i > s} (chi * d_in(i) + (1 - chi) * d_out(i))`
/// for every split point `s`, where `chi = 1/(tau - 1)` and labels are the
/// pattern ordering.
pub fn exponent_b(pattern: &OrderedPattern, params: &ModelParams) -> ExponentReport {
    exponent_b_with_chi(pattern, params.chi())
}

pub(crate) fn exponent_b_with_chi(pattern: &OrderedPattern, chi: BigRational) -> ExponentReport {
    let k = pattern.k();
    let one_minus = BigRational::one() - &chi;
    let cost: Vec<BigRational> = (1..=k)
        .map(|i| {
            &chi * BigInt::from(pattern.in_degree(i))
                + &one_minus * BigInt::from(pattern.out_degree(i))
        })
        .collect();

    // f(s) from the suffix sums of cost.
    let mut values = vec![BigRational::zero(); k + 1];
    let mut suffix = BigRational::zero();
    for s in (0..=k).rev() {
        values[s] = -BigRational::from_integer(BigInt::from(s)) - &suffix;
        if s > 0 {
            suffix += &cost[s - 1];
        }
    }
    let b = values.iter().max().cloned().expect("k + 1 >= 1 values");
    let argmax: Vec<usize> = (0..=k).filter(|&s| values[s] == b).collect();
    ExponentReport {
        k,
        chi,
        r: argmax.len(),
        argmax,
        values,
        b,
    }
}

/// Growth order `n^power * ln(n)^log_power`, constants omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthLaw {
    #[serde(serialize_with = "serialize_big_ratio")]
    pub power: BigRational,
    pub log_power: usize,
}

impl GrowthLaw {
    pub fn evaluate(&self, n: f64) -> f64 {
        let p = self.power.to_f64().unwrap_or(f64::NAN);
        n.powf(p) * n.ln().powi(self.log_power as i32)
    }
}

/// `(k + B, r - 1)`: the predicted order of the expected copy count.
pub fn predicted_growth(pattern: &OrderedPattern, params: &ModelParams) -> GrowthLaw {
    let report = exponent_b(pattern, params);
    GrowthLaw {
        power: BigRational::from_integer(BigInt::from(report.k)) + &report.b,
        log_power: report.r - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // tau = 7/2.
    fn params() -> ModelParams {
        ModelParams::with_delta(2, 1, 1, 0).unwrap()
    }

    #[test]
    fn triangle_values() {
        let r = exponent_b(&OrderedPattern::cycle(3).unwrap(), &params());
        assert_eq!(r.chi, q(2, 5));
        assert_eq!(r.values, vec![q(-3, 1), q(-16, 5), q(-16, 5), q(-3, 1)]);
        assert_eq!(r.b, q(-3, 1));
        assert_eq!(r.r, 2);
        assert_eq!(r.argmax, vec![0, 3]);
    }

    #[test]
    fn k4_values() {
        let r = exponent_b(&OrderedPattern::complete(4).unwrap(), &params());
        // Per-label costs: 3chi, 2chi + (1-chi), chi + 2(1-chi), 3(1-chi) = 6/5, 7/5, 8/5, 9/5.
        assert_eq!(
            r.values,
            vec![q(-6, 1), q(-29, 5), q(-27, 5), q(-24, 5), q(-4, 1)]
        );
        assert_eq!(r.b, q(-4, 1));
        assert_eq!(r.r, 1);
        assert_eq!(r.argmax, vec![4]);
    }

    #[test]
    fn single_edge() {
        let k2 = OrderedPattern::complete(2).unwrap();
        let r = exponent_b(&k2, &params());
        assert_eq!(r.values, vec![q(-1, 1), q(-8, 5), q(-2, 1)]);
        assert_eq!((r.b.clone(), r.r), (q(-1, 1), 1));
        assert_eq!(
            predicted_growth(&k2, &params()),
            GrowthLaw {
                power: q(1, 1),
                log_power: 0
            }
        );
    }

    #[test]
    fn growth_laws_for_cycles_and_rare() {
        for b in 3..=6 {
            let g = predicted_growth(&OrderedPattern::cycle(b).unwrap(), &params());
            assert_eq!(
                g,
                GrowthLaw {
                    power: q(0, 1),
                    log_power: 1
                }
            );
        }
        let g = predicted_growth(&OrderedPattern::complete(4).unwrap(), &params());
        assert_eq!(
            g,
            GrowthLaw {
                power: q(0, 1),
                log_power: 0
            }
        );
        assert!((g.evaluate(1000.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_serializes_exact_strings() {
        let r = exponent_b(&OrderedPattern::cycle(3).unwrap(), &params());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["b"], "-3");
        assert_eq!(json["values"][1], "-16/5");
        assert_eq!(json["chi"], "2/5");
    }
}
