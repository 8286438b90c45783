//! Edge-orientation entropy viewing score and region construction from
//! scored view samples.

mod image;
mod region;
mod score;

pub use image::{read_mask_pgm, read_pgm, read_pgm_file, write_pgm, GrayImage, ObjectMask};
pub use region::{
    build_region_from_scores, read_scores_csv, write_scores_csv, ViewSample, DEFAULT_THRESHOLD, MIN_KEPT_SAMPLES,
};
pub use score::{
    edge_orientation_histogram, entropy, sobel, viewing_score, OrientationHistogram, BINS, DEFAULT_EDGE_FRACTION,
};
