//! Level histograms and the threshold-split segment PDFs/CDFs derived from them.

use crate::error::{Error, Result};
use crate::image::ImagePlane;

/// Bin counts over `levels` intensity levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    /// Builds a histogram from raw counts; at least one count must be non-zero.
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidParameter(
                "a histogram needs at least two levels".into(),
            ));
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidParameter("histogram is empty".into()));
        }
        Ok(Self { counts, total })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Pixel count `N`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn levels(&self) -> usize {
        self.counts.len()
    }

    /// Count of pixels at or below `t`.
    pub fn count_through(&self, t: usize) -> u64 {
        self.counts[..=t].iter().sum()
    }

    pub fn occupied_levels(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Smallest level with a non-zero count.
    pub fn min_occupied(&self) -> usize {
        self.counts
            .iter()
            .position(|&c| c > 0)
            .expect("histogram total is positive")
    }
}

pub fn compute_histogram(plane: &ImagePlane) -> Histogram {
    let mut counts = vec![0u64; plane.levels()];
    for &x in plane.data() {
        counts[usize::from(x)] += 1;
    }
    Histogram {
        counts,
        total: plane.len() as u64,
    }
}

/// Probability mass of one threshold segment, normalized by the whole-image
/// pixel count (not by the segment's own mass).
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentPdf {
    lo: usize,
    hi: usize,
    counts: Vec<u64>,
    total: u64,
    mass: Vec<f64>,
    segment_mass: f64,
}

impl SegmentPdf {
    fn new(h: &Histogram, lo: usize, hi: usize) -> Self {
        let counts = h.counts[lo..=hi].to_vec();
        let n = h.total as f64;
        let mass = counts.iter().map(|&c| c as f64 / n).collect();
        let segment_count: u64 = counts.iter().sum();
        Self {
            lo,
            hi,
            counts,
            total: h.total,
            mass,
            segment_mass: segment_count as f64 / n,
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Masses for levels `lo..=hi`.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Mass at absolute level `x` (which must lie in the segment).
    pub fn mass_at(&self, x: usize) -> f64 {
        self.mass[x - self.lo]
    }

    pub fn segment_mass(&self) -> f64 {
        self.segment_mass
    }

    pub fn segment_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Pixel count of the whole source histogram.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of zero-mass ("non-height") bins in the segment.
    pub fn empty_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }
}

/// Splits `h` into `[0, t]` and `[t + 1, L - 1]`.
pub fn split_pdf(h: &Histogram, t: usize) -> Result<(SegmentPdf, SegmentPdf)> {
    let levels = h.levels();
    if t + 2 > levels {
        return Err(Error::ThresholdOutOfRange { t, levels });
    }
    Ok((SegmentPdf::new(h, 0, t), SegmentPdf::new(h, t + 1, levels - 1)))
}

/// Cumulative mass of a segment, normalized so the last entry is exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentCdf {
    lo: usize,
    hi: usize,
    cum: Vec<f64>,
}

impl SegmentCdf {
    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn values(&self) -> &[f64] {
        &self.cum
    }

    /// CDF value at absolute level `x`.
    pub fn at(&self, x: usize) -> f64 {
        self.cum[x - self.lo]
    }
}

/// Segment-normalized CDF. Prefix sums run over the integer bin counts, so each
/// entry is a single correctly-rounded division and the final one is exactly 1.
pub fn segment_cdf(p: &SegmentPdf) -> Result<SegmentCdf> {
    let segment_count = p.segment_count();
    if segment_count == 0 {
        return Err(Error::EmptySegment { lo: p.lo, hi: p.hi });
    }
    let denom = segment_count as f64;
    let mut running = 0u64;
    let mut cum: Vec<f64> = p
        .counts
        .iter()
        .map(|&c| {
            running += c;
            running as f64 / denom
        })
        .collect();
    *cum.last_mut().expect("segments are non-empty") = 1.0;
    Ok(SegmentCdf {
        lo: p.lo,
        hi: p.hi,
        cum,
    })
}
