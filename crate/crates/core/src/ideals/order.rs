use std::cmp::Ordering;

use serde::Serialize;

use crate::poly::weight_of;

/// Monomial orders on exponent vectors. Variable 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum MonomialOrder {
    /// Weighted degree, then total degree, then reverse lexicographic.
    /// Weights must be positive.
    WeightedDegRevLex { weights: Vec<i64> },
    Lex,
    /// Total degree in the first `block` variables, then weighted degrevlex
    /// on all variables. Eliminates the block.
    Elimination { block: usize, weights: Vec<i64> },
}

fn degrevlex(weights: &[i64], a: &[u32], b: &[u32]) -> Ordering {
    weight_of(a, weights)
        .cmp(&weight_of(b, weights))
        .then_with(|| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()))
        .then_with(|| {
            // the smaller exponent in the last differing variable wins
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
}

impl MonomialOrder {
    pub fn degrevlex(weights: Vec<i64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "order weights must be positive");
        MonomialOrder::WeightedDegRevLex { weights }
    }

    pub fn standard(nvars: usize) -> Self {
        MonomialOrder::degrevlex(vec![1; nvars])
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::WeightedDegRevLex { weights } => degrevlex(weights, a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination { block, weights } => {
                let da: u32 = a[..*block].iter().sum();
                let db: u32 = b[..*block].iter().sum();
                da.cmp(&db).then_with(|| degrevlex(weights, a, b))
            }
        }
    }

    /// Grading weights used for sugar and Hilbert functions.
    pub fn weights(&self, nvars: usize) -> Vec<i64> {
        match self {
            MonomialOrder::WeightedDegRevLex { weights } | MonomialOrder::Elimination { weights, .. } => weights.clone(),
            MonomialOrder::Lex => vec![1; nvars],
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MonomialOrder::WeightedDegRevLex { .. } => "wdegrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_in_two_variables() {
        let o = MonomialOrder::standard(2);
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 3], &[2, 0]), Ordering::Greater);
    }

    #[test]
    fn revlex_tie_break_in_three_variables() {
        let o = MonomialOrder::standard(3);
        // x z < y^2 under degrevlex with x > y > z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let w = MonomialOrder::degrevlex(vec![1, 2, 3]);
        assert_eq!(w.cmp(&[0, 0, 1], &[3, 0, 0]), Ordering::Less);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination { block: 1, weights: vec![1, 1] };
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }
}
