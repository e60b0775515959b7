//! Orbit exploration: breadth-first enumeration to a fixed depth, and Monte
//! Carlo unions of random singular orbits.

mod set;

pub use set::{OrbitSet, DEFAULT_TOLERANCE};

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angles, child, Branch, NormalizedTriangle};

/// Deepest exhaustive enumeration allowed (`3^14 ≈ 4.8M` leaves).
pub const MAX_EXHAUSTIVE_DEPTH: u32 = 14;

/// Walkers are materialized this many at a time before merging.
const WALKER_BATCH: usize = 256;

/// A point reached by trisection, with the branch word that reaches it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitNode {
    pub z: NormalizedTriangle,
    pub depth: u32,
    /// Word over `L`, `M`, `R` of length `depth`.
    pub path: String,
}

/// Follows a branch word from `root`.
pub fn replay_path(root: NormalizedTriangle, path: &str) -> Result<NormalizedTriangle> {
    path.chars().try_fold(root, |z, c| {
        Branch::from_letter(c)
            .map(|b| child(z, b))
            .ok_or(Error::Config("path letters must be L, M or R"))
    })
}

/// Every point reachable from `root` in at most `depth` steps, each with the
/// first branch word that reached it.
///
/// Breadth-first; a child that duplicates a stored point within tolerance
/// is not expanded further.
pub fn exhaustive_orbit_nodes(root: NormalizedTriangle, depth: u32) -> Result<Vec<OrbitNode>> {
    if depth > MAX_EXHAUSTIVE_DEPTH {
        return Err(Error::DepthGuard {
            depth,
            max: MAX_EXHAUSTIVE_DEPTH,
        });
    }
    let mut seen = OrbitSet::default();
    seen.insert(root);
    let mut nodes = vec![OrbitNode {
        z: root,
        depth: 0,
        path: String::new(),
    }];
    let mut frontier = 0..1;
    for level in 1..=depth {
        let start = nodes.len();
        for i in frontier.clone() {
            for b in Branch::ALL {
                let z = child(nodes[i].z, b);
                if seen.insert(z) {
                    let mut path = nodes[i].path.clone();
                    path.push(b.letter());
                    nodes.push(OrbitNode {
                        z,
                        depth: level,
                        path,
                    });
                }
            }
        }
        frontier = start..nodes.len();
        if frontier.is_empty() {
            break;
        }
    }
    Ok(nodes)
}

/// Deduplicated, canonically ordered orbit of `root` to the given depth.
pub fn exhaustive_orbit(root: NormalizedTriangle, depth: u32) -> Result<OrbitSet> {
    let mut set: OrbitSet = exhaustive_orbit_nodes(root, depth)?
        .into_iter()
        .map(|n| n.z)
        .collect();
    set.canonicalize();
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomWalkConfig {
    pub walkers: u64,
    pub steps: u64,
    pub seed: u64,
}

impl RandomWalkConfig {
    pub fn new(walkers: u64, steps: u64, seed: u64) -> Result<Self> {
        if walkers == 0 {
            return Err(Error::Config("walkers must be >= 1"));
        }
        if steps == 0 {
            return Err(Error::Config("steps must be >= 1"));
        }
        Ok(Self {
            walkers,
            steps,
            seed,
        })
    }
}

/// Random stream of walker `walker` under `seed`.
///
/// ChaCha is counter based: each walker gets its own stream id on a common
/// key, so streams are independent of evaluation order.
pub fn walker_stream(seed: u64, walker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(walker);
    rng
}

/// One random path through the trisection tree, root included.
/// Each step picks `L`, `M` or `R` uniformly.
pub fn random_singular_orbit<R: Rng + ?Sized>(
    root: NormalizedTriangle,
    steps: u64,
    stream: &mut R,
) -> Vec<NormalizedTriangle> {
    let mut out = Vec::with_capacity(steps as usize + 1);
    let mut z = root;
    out.push(z);
    for _ in 0..steps {
        let b = Branch::ALL[stream.gen_range(0..3usize)];
        z = child(z, b);
        out.push(z);
    }
    out
}

fn walk(root: NormalizedTriangle, cfg: &RandomWalkConfig, walker: u64) -> Vec<NormalizedTriangle> {
    random_singular_orbit(root, cfg.steps, &mut walker_stream(cfg.seed, walker))
}

/// Union of `cfg.walkers` singular orbits, on the calling thread.
pub fn simulate_orbit(root: NormalizedTriangle, cfg: &RandomWalkConfig) -> OrbitSet {
    let mut set = OrbitSet::default();
    for k in 0..cfg.walkers {
        let mut z = root;
        let mut rng = walker_stream(cfg.seed, k);
        set.insert(z);
        for _ in 0..cfg.steps {
            z = child(z, Branch::ALL[rng.gen_range(0..3usize)]);
            set.insert(z);
        }
    }
    set.canonicalize();
    set
}

/// Same result as [`simulate_orbit`], with walkers spread over the rayon
/// pool. Walks are merged in walker order, so the output is bit-identical.
pub fn simulate_orbit_parallel(root: NormalizedTriangle, cfg: &RandomWalkConfig) -> OrbitSet {
    let mut set = OrbitSet::default();
    let mut first = 0u64;
    while first < cfg.walkers {
        let last = (first + WALKER_BATCH as u64).min(cfg.walkers);
        let walks: Vec<Vec<NormalizedTriangle>> = (first..last)
            .into_par_iter()
            .map(|k| walk(root, cfg, k))
            .collect();
        for w in walks {
            set.extend(w);
        }
        first = last;
    }
    set.canonicalize();
    set
}

/// Angle extremes over an orbit with the triangles that attain them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleStats {
    pub min_angle: f64,
    pub max_angle: f64,
    pub argmin: NormalizedTriangle,
    pub argmax: NormalizedTriangle,
}

pub fn angle_stats(orbit: &OrbitSet) -> Result<AngleStats> {
    let first = *orbit.points().first().ok_or(Error::EmptyOrbit)?;
    let mut stats = AngleStats {
        min_angle: PI,
        max_angle: 0.0,
        argmin: first,
        argmax: first,
    };
    for z in orbit.iter() {
        let a = angles(z);
        if a.alpha < stats.min_angle {
            stats.min_angle = a.alpha;
            stats.argmin = z;
        }
        if a.gamma > stats.max_angle {
            stats.max_angle = a.gamma;
            stats.argmax = z;
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landmarks::{omega, z_eq};

    fn nt(z: crate::Complex64) -> NormalizedTriangle {
        NormalizedTriangle::new(z).unwrap()
    }

    #[test]
    fn depth_zero_is_root() {
        let z = nt(z_eq());
        let o = exhaustive_orbit(z, 0).unwrap();
        assert_eq!(o.points(), &[z]);
    }

    #[test]
    fn omega_orbit_is_three_points() {
        for d in [2, 8] {
            let o = exhaustive_orbit(nt(omega()[0]), d).unwrap();
            assert_eq!(o.len(), 3);
            for w in omega() {
                assert!(o.contains(nt(w)));
            }
        }
    }

    #[test]
    fn depth_guard() {
        let e = exhaustive_orbit(nt(z_eq()), MAX_EXHAUSTIVE_DEPTH + 1).unwrap_err();
        assert!(matches!(e, Error::DepthGuard { .. }));
    }

    #[test]
    fn paths_replay_to_their_points() {
        let root = NormalizedTriangle::from_parts(0.2, 0.1).unwrap();
        for node in exhaustive_orbit_nodes(root, 5).unwrap() {
            assert_eq!(node.path.len() as u32, node.depth);
            let z = replay_path(root, &node.path).unwrap();
            assert!((z.z() - node.z.z()).norm() < 1e-9);
        }
        assert!(replay_path(root, "LX").is_err());
    }

    #[test]
    fn singular_orbit_length_and_determinism() {
        let root = NormalizedTriangle::from_parts(0.2, 0.1).unwrap();
        assert_eq!(
            random_singular_orbit(root, 0, &mut walker_stream(1, 0)),
            vec![root]
        );
        let a = random_singular_orbit(root, 50, &mut walker_stream(9, 3));
        let b = random_singular_orbit(root, 50, &mut walker_stream(9, 3));
        let c = random_singular_orbit(root, 50, &mut walker_stream(9, 4));
        assert_eq!(a.len(), 51);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn omega_walk_stays_in_orbit() {
        let ws = omega();
        let walk = random_singular_orbit(nt(ws[1]), 500, &mut walker_stream(5, 0));
        for z in walk {
            assert!(ws.iter().any(|&w| (z.z() - w).norm() < 1e-12));
        }
    }

    #[test]
    fn branch_choice_is_roughly_uniform() {
        let mut rng = walker_stream(0, 0);
        let mut counts = [0usize; 3];
        for _ in 0..30_000 {
            counts[rng.gen_range(0..3usize)] += 1;
        }
        for c in counts {
            assert!((9_500..10_500).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let root = NormalizedTriangle::from_parts(0.1, 0.1).unwrap();
        let cfg = RandomWalkConfig::new(700, 12, 7).unwrap();
        let a = simulate_orbit(root, &cfg);
        let b = simulate_orbit_parallel(root, &cfg);
        assert_eq!(a.points(), b.points());
    }

    #[test]
    fn config_validation() {
        assert!(RandomWalkConfig::new(0, 1, 0).is_err());
        assert!(RandomWalkConfig::new(1, 0, 0).is_err());
    }

    #[test]
    fn stats_examples() {
        let s = angle_stats(&exhaustive_orbit(nt(z_eq()), 0).unwrap()).unwrap();
        assert!((s.min_angle - PI / 3.0).abs() < 1e-12);
        assert!((s.max_angle - PI / 3.0).abs() < 1e-12);

        let set: OrbitSet = omega().into_iter().map(nt).collect();
        let s = angle_stats(&set).unwrap();
        let all: Vec<f64> = omega()
            .into_iter()
            .flat_map(|w| {
                let a = angles(nt(w));
                [a.alpha, a.beta, a.gamma]
            })
            .collect();
        let max = all.iter().cloned().fold(f64::MIN, f64::max);
        let min = all.iter().cloned().fold(f64::MAX, f64::min);
        assert_eq!(s.max_angle, max);
        assert_eq!(s.min_angle, min);
        // the lowest of the three shapes carries the widest apex
        assert_eq!(s.max_angle, angles(nt(omega()[2])).gamma);

        assert_eq!(angle_stats(&OrbitSet::default()), Err(Error::EmptyOrbit));
    }
}
