use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{make_polygon, ConvexPolygon, Point2};

/// Anisotropies cycled through by corpus items.
pub const CORPUS_ANISOTROPIES: [f64; 3] = [1.0, 10.0, 100.0];

/// Largest point count of a corpus item.
pub const CORPUS_MAX_POINTS: usize = 30;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-item seed, independent of evaluation order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

pub(crate) fn unit_disk_point(rng: &mut impl Rng) -> Point2 {
    let r = rng.random::<f64>().sqrt();
    let a = rng.random_range(0.0..std::f64::consts::TAU);
    Point2::new(r * a.cos(), r * a.sin())
}

/// Convex hull of `n` uniform points of the unit disk, stretched by
/// `anisotropy` along x. Degenerate draws are redrawn from the same stream.
pub fn random_convex_polygon(n: usize, seed: u64, anisotropy: f64) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 points, got {n}")));
    }
    if !(anisotropy >= 1.0 && anisotropy.is_finite()) {
        return Err(Error::Domain(format!(
            "anisotropy must be ≥ 1, got {anisotropy}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                let p = unit_disk_point(&mut rng);
                Point2::new(p.x * anisotropy, p.y)
            })
            .collect();
        if let Ok(p) = make_polygon(&pts) {
            return Ok(p);
        }
    }
}

/// One polygon of a seeded corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusItem {
    pub index: usize,
    pub seed: u64,
    pub n_points: usize,
    pub anisotropy: f64,
    pub polygon: ConvexPolygon,
}

/// Item `index` of the corpus for `master_seed`: between 3 and 30 points,
/// anisotropy cycling through 1, 10, 100.
pub fn corpus_item(master_seed: u64, index: usize) -> CorpusItem {
    let seed = derive_seed(master_seed, index as u64);
    let n_points = 3 + (splitmix64(seed) % (CORPUS_MAX_POINTS as u64 - 2)) as usize;
    let anisotropy = CORPUS_ANISOTROPIES[index % CORPUS_ANISOTROPIES.len()];
    let polygon =
        random_convex_polygon(n_points, seed, anisotropy).expect("corpus parameters are valid");
    CorpusItem {
        index,
        seed,
        n_points,
        anisotropy,
        polygon,
    }
}

/// The first `count` corpus items.
pub fn corpus(master_seed: u64, count: usize) -> Vec<CorpusItem> {
    (0..count).map(|i| corpus_item(master_seed, i)).collect()
}
