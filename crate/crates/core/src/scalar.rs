use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive};

/// Floating-point type used for relatedness weights, graph edge weights and
/// derived metrics. Implemented for `f32` and `f64`.
pub trait Weight:
    Float + FromPrimitive + Sum + AddAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless for every count this crate produces.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Weight for f32 {}
impl Weight for f64 {}

/// Fixed 9-decimal rendering used by every file the pipeline writes.
pub fn fmt9<T: Weight>(x: T) -> String {
    let s = format!("{:.9}", x.to_f64_lossy());
    // Tiny negatives round to "-0.000000000".
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Round-trips `x` through its 9-decimal rendering, giving exactly the value
/// a reader of the written file recovers.
pub fn quantize9<T: Weight>(x: T) -> T {
    parse_weight(&fmt9(x)).expect("fixed-point rendering parses")
}

/// Parses a decimal as written by [`fmt9`].
pub fn parse_weight<T: Weight>(text: &str) -> Option<T> {
    let x: f64 = text.parse().ok()?;
    x.is_finite().then(|| T::from_f64_lossy(x))
}
