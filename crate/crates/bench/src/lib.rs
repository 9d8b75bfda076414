//! Fixtures shared by the criterion benchmarks.

use ultrashort::{PotentialProfile, SegmentedProfile};

/// Gaussian well of depth 5 and standard deviation 1 on `[-2, 2]`, cut into
/// `junctions` junctions of half-width `half_width`.
pub fn gaussian_well(junctions: usize, half_width: f64) -> SegmentedProfile {
    gaussian_profile().discretize(junctions, half_width).expect("valid discretization")
}

pub fn gaussian_profile() -> PotentialProfile {
    PotentialProfile::gaussian(-5.0, 0.0, 1.0, -2.0, 2.0, 1.0).expect("valid profile")
}

/// Segmented profile with `regions` regions (odd), for example 9 or 101.
pub fn with_regions(regions: usize) -> SegmentedProfile {
    assert!(regions % 2 == 1 && regions >= 3);
    gaussian_well((regions - 1) / 2, 1e-3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_counts() {
        assert_eq!(with_regions(9).region_count(), 9);
        assert_eq!(with_regions(101).region_count(), 101);
    }
}
