use super::{ElementId, Oracle};
use crate::error::{Error, Result};

/// Largest ground set `estimate_gamma` will enumerate.
pub const MAX_GAMMA_GROUND_SET: usize = 12;

// Marginals below this fraction of max |f| are treated as zero, and ratios
// within it of 1 as 1, so floating-point noise does not register as a
// violation of diminishing returns.
const RELATIVE_TOLERANCE: f64 = 1e-9;

/// Exhaustively computes the diminishing-returns ratio of `f` restricted to
/// `universe`: the minimum of `Δ(x|S) / Δ(x|T)` over `S ⊆ T ⊆ universe`,
/// `x ∉ T` with `Δ(x|T) > 0`, clamped to `[0, 1]`.
///
/// Returns 1 when no positive `Δ(x|T)` exists. Issues `2^|universe|` queries.
pub fn estimate_gamma(oracle: &Oracle, universe: &[ElementId]) -> Result<f64> {
    let mut elems = universe.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.len() > MAX_GAMMA_GROUND_SET {
        return Err(Error::input(format!(
            "gamma estimation enumerates subsets; {} elements exceeds the limit of {MAX_GAMMA_GROUND_SET}",
            elems.len()
        )));
    }
    oracle.check_ids(&elems)?;
    let k = elems.len();
    let full = 1usize << k;

    let mut values = Vec::with_capacity(full);
    let mut members = Vec::with_capacity(k);
    for mask in 0..full {
        members.clear();
        members.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| elems[i]));
        values.push(oracle.eval(&members)?);
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let zero = RELATIVE_TOLERANCE * scale.max(f64::MIN_POSITIVE);

    let mut gamma = 1.0f64;
    for t in 0..full {
        for x in (0..k).filter(|&x| t >> x & 1 == 0) {
            let bit = 1 << x;
            let outer = values[t | bit] - values[t];
            if outer <= zero {
                continue;
            }
            // walk every submask of t, including t itself and the empty set
            let mut s = t;
            loop {
                let inner = values[s | bit] - values[s];
                let ratio = inner / outer;
                if ratio < 1.0 - RELATIVE_TOLERANCE {
                    gamma = gamma.min(ratio);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & t;
            }
        }
    }
    Ok(gamma.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::testing::{Modular, Squared};

    #[test]
    fn modular_is_one() {
        let o = Oracle::new(Modular {
            weights: vec![1.0, 3.0, 0.5, 2.0],
            offset: 0.0,
        });
        assert_eq!(estimate_gamma(&o, &[0, 1, 2, 3]).unwrap(), 1.0);
    }

    #[test]
    fn squared_on_three_elements() {
        // Δ(x|S) = 2|S| + 1; the worst ratio is S = ∅, |T| = 2: 1/5
        let o = Oracle::new(Squared(3));
        assert!((estimate_gamma(&o, &[0, 1, 2]).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn query_count_is_power_of_two() {
        let o = Oracle::new(Squared(5));
        estimate_gamma(&o, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(o.calls(), 32);
    }

    #[test]
    fn oversize_universe_is_rejected() {
        let o = Oracle::new(Squared(20));
        let u: Vec<_> = (0..13).collect();
        assert!(matches!(estimate_gamma(&o, &u), Err(Error::Input(_))));
    }

    #[test]
    fn no_positive_marginal_gives_one() {
        let o = Oracle::new(Modular {
            weights: vec![0.0; 3],
            offset: 0.0,
        });
        assert_eq!(estimate_gamma(&o, &[0, 1, 2]).unwrap(), 1.0);
    }
}
