use crate::error::{Error, Result};

/// Stride bands of the K grid: `(first K of the band, stride)`.
///
/// Every integer up to 420, then multiples of 5 up to 1000, multiples of 20
/// up to 6000 and multiples of 500 beyond.
const BANDS: [(u32, u32); 4] = [(1, 1), (421, 5), (1001, 20), (6001, 500)];

/// The graded K grid intersected with `[k_min, k_max]`.
pub fn paper_k_grid(k_min: u32, k_max: u32) -> Result<Vec<u32>> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::Usage(format!(
            "K grid needs 1 <= min <= max, got min={k_min} max={k_max}"
        )));
    }
    let mut ks = Vec::new();
    for (b, &(start, stride)) in BANDS.iter().enumerate() {
        let end = BANDS.get(b + 1).map_or(u32::MAX, |next| next.0 - 1);
        let lo = start.max(k_min);
        let hi = end.min(k_max);
        if lo > hi {
            continue;
        }
        let first = lo.div_ceil(stride) * stride;
        ks.extend((first..=hi).step_by(stride as usize));
    }
    if ks.is_empty() {
        return Err(Error::Usage(format!(
            "K grid between {k_min} and {k_max} is empty"
        )));
    }
    Ok(ks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        assert_eq!(paper_k_grid(6, 10).unwrap(), vec![6, 7, 8, 9, 10]);
        assert_eq!(paper_k_grid(995, 1010).unwrap(), vec![995, 1000]);
        assert_eq!(paper_k_grid(6001, 7000).unwrap(), vec![6500, 7000]);
    }

    #[test]
    fn full_grid_shape() {
        let ks = paper_k_grid(6, 10_000).unwrap();
        assert_eq!(ks.first(), Some(&6));
        assert_eq!(ks.last(), Some(&10_000));
        // 415 + 116 + 250 + 8
        assert_eq!(ks.len(), 415 + 116 + 250 + 8);
        assert!(ks.windows(2).all(|w| w[0] < w[1]));
        assert!(ks.contains(&420) && !ks.contains(&421) && ks.contains(&425));
    }

    #[test]
    fn empty_or_inverted_ranges_are_usage_errors() {
        assert!(paper_k_grid(1001, 1019).is_err());
        assert!(paper_k_grid(10, 6).is_err());
        assert!(paper_k_grid(0, 6).is_err());
    }
}
