use crate::error::{Error, Result};
use crate::ranking::truncated_distance;

fn euclidean(p: &[f64], y: &[f64]) -> f64 {
    p.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// Inverted generational distance: the mean, over reference points `p`, of
/// the distance to the nearest front member `y`.
///
/// With `plus` the distance only counts components where `y` is worse than
/// `p`, i.e. `sqrt(Σ max(y_j − p_j, 0)²)` (IGD⁺).
pub fn igd<R: AsRef<[f64]>, F: AsRef<[f64]>>(reference: &[R], front: &[F], plus: bool) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::Empty("reference set"));
    }
    if front.is_empty() {
        return Err(Error::Empty("front"));
    }
    let dim = reference[0].as_ref().len();
    for y in front.iter().map(AsRef::as_ref).chain(reference.iter().map(AsRef::as_ref)) {
        if y.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: y.len(),
            });
        }
    }
    let total: f64 = reference
        .iter()
        .map(|p| {
            let p = p.as_ref();
            front
                .iter()
                .map(|y| {
                    if plus {
                        truncated_distance(y.as_ref(), p)
                    } else {
                        euclidean(p, y.as_ref())
                    }
                })
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(igd(&r, &r, false).unwrap(), 0.0);
        assert_eq!(igd(&r, &r, true).unwrap(), 0.0);
        assert_eq!(igd(&r, &[vec![1.0, 1.0]], false).unwrap(), 1.0);
        assert!((igd(&r, &[vec![0.5, 0.5]], true).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_sets_are_errors() {
        let r = vec![vec![0.0, 1.0]];
        let e: Vec<Vec<f64>> = vec![];
        assert!(igd(&r, &e, false).is_err());
        assert!(igd(&e, &r, true).is_err());
        assert!(igd(&r, &[vec![1.0]], true).is_err());
    }

    #[test]
    fn weakly_dominating_front_has_zero_igd_plus() {
        let r = vec![vec![0.2, 0.9], vec![0.9, 0.2]];
        let f = vec![vec![0.1, 0.1]];
        assert_eq!(igd(&r, &f, true).unwrap(), 0.0);
        assert!(igd(&r, &f, false).unwrap() > 0.0);
    }
}
