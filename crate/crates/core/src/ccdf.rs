//! Empirical complementary cumulative distributions over non-zero values.

/// Sorted `(value, fraction of entities with value >= x)` pairs.
///
/// Only strictly positive values are counted; an input with no positive
/// value produces an empty table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CcdfTable {
    pub points: Vec<(f64, f64)>,
    /// Number of entities with a non-zero value.
    pub population: usize,
}

impl CcdfTable {
    pub fn from_values<I>(values: I) -> Self
    where
        I: IntoIterator<Item = f64>,
    {
        let mut values: Vec<f64> = values.into_iter().filter(|v| *v > 0.0).collect();
        values.sort_by(f64::total_cmp);
        let population = values.len();
        let mut points = Vec::new();
        let mut i = 0;
        while i < population {
            let v = values[i];
            points.push((v, (population - i) as f64 / population as f64));
            while i < population && values[i] == v {
                i += 1;
            }
        }
        Self { points, population }
    }

    pub fn from_counts<I>(values: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        Self::from_values(values.into_iter().map(|v| v.into() as f64))
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}
