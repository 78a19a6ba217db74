use super::diagram::InfluenceDiagram;
use super::ModelError;
use crate::scalar::Scalar;

/// Affine map between original and normalized utility scales.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizationInfo<T> {
    pub f_lo: T,
    pub f_hi: T,
    pub utility_count: usize,
}

impl<T: Scalar> NormalizationInfo<T> {
    /// Maps a normalized expected utility (or bound) back to the original scale.
    pub fn denormalize(&self, eu_normalized: T) -> T {
        denormalize_eu(eu_normalized, self)
    }

    /// Maps an original-scale expected utility onto the normalized scale.
    pub fn normalize(&self, eu: T) -> T {
        (eu - T::of(self.utility_count as f64) * self.f_lo) / (self.f_hi - self.f_lo)
    }
}

/// Rescales every utility entry into [0, 1] using the diagram-wide minimum
/// and maximum. Rejects diagrams whose utilities are all equal (or absent):
/// every strategy is then optimal.
pub fn normalize_utilities<T: Scalar>(
    diagram: &InfluenceDiagram<T>,
) -> Result<(InfluenceDiagram<T>, NormalizationInfo<T>), ModelError> {
    let utility_count = diagram.utility_nodes().len();
    let Some((f_lo, f_hi)) = diagram.utility_range() else {
        return Err(ModelError::TrivialDiagram { eu: 0.0 });
    };
    if f_lo >= f_hi {
        return Err(ModelError::TrivialDiagram { eu: (T::of(utility_count as f64) * f_lo).as_f64() });
    }
    let span = f_hi - f_lo;
    let normalized = diagram.map_utilities(|v| if v == f_hi { T::one() } else { (v - f_lo) / span });
    Ok((normalized, NormalizationInfo { f_lo, f_hi, utility_count }))
}

pub fn denormalize_eu<T: Scalar>(eu_normalized: T, info: &NormalizationInfo<T>) -> T {
    eu_normalized * (info.f_hi - info.f_lo) + T::of(info.utility_count as f64) * info.f_lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DiagramBuilder;

    #[test]
    fn maps_extremes_and_interior() {
        let mut b = DiagramBuilder::<f64>::new();
        let d = b.decision("d", 2, &[]);
        b.utility("goal", &[d], vec![1000.0, -500.0]);
        b.utility("cost", &[d], vec![-150.0, 0.0]);
        let diagram = b.build().unwrap();
        let (norm, info) = normalize_utilities(&diagram).unwrap();
        assert_eq!(info, NormalizationInfo { f_lo: -500.0, f_hi: 1000.0, utility_count: 2 });
        let goal: Vec<f64> = norm.utility_tables().next().unwrap().values.clone();
        assert_eq!(goal, vec![1.0, 0.0]);
        let cost = &norm.utility_tables().nth(1).unwrap().values;
        assert!((cost[0] - 350.0 / 1500.0).abs() < 1e-15);
        assert!((cost[0] - 0.233_333_333_333_333_3).abs() < 1e-12);
    }

    #[test]
    fn already_normalized_is_unchanged() {
        let mut b = DiagramBuilder::<f64>::new();
        let d = b.decision("d", 2, &[]);
        b.utility("u", &[d], vec![0.0, 1.0]);
        let diagram = b.build().unwrap();
        let (norm, _) = normalize_utilities(&diagram).unwrap();
        assert_eq!(norm, diagram);
    }

    #[test]
    fn constant_utilities_are_trivial() {
        let mut b = DiagramBuilder::<f64>::new();
        let d = b.decision("d", 2, &[]);
        b.utility("u1", &[d], vec![3.0, 3.0]);
        b.utility("u2", &[d], vec![3.0, 3.0]);
        let diagram = b.build().unwrap();
        assert!(matches!(normalize_utilities(&diagram), Err(ModelError::TrivialDiagram { eu }) if eu == 6.0));
    }

    #[test]
    fn denormalize_is_affine() {
        let info = NormalizationInfo { f_lo: -500.0f64, f_hi: 1000.0, utility_count: 12 };
        assert_eq!(denormalize_eu(0.0, &info), -6000.0);
        let unit = NormalizationInfo { f_lo: 0.0, f_hi: 1.0, utility_count: 5 };
        assert_eq!(denormalize_eu(0.731, &unit), 0.731);
        assert!((info.normalize(info.denormalize(0.42)) - 0.42).abs() < 1e-12);
    }
}
