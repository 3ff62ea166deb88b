//! The grid-of-circles family: many small well-separated circles of equal
//! total length one. Its average shadow stays bounded away from zero while
//! no fixed-constant Lipschitz graph can capture more than an `O(1/n)`
//! share of it. Circles are realized as inscribed regular polygons with a
//! global radius rescale that makes the total length exactly one.

use alloc::vec::Vec;

use rand::Rng;

use crate::cloud::WeightedCloud;
use crate::geom::{Angle, Point, Polyline, Segment, SegmentSet};
use crate::math;
use crate::mc::{self, MeanAccumulator};
use crate::quad::QuadratureConfig;
use crate::{favard, Error, Result};

/// A generated grid scene.
#[derive(Debug, Clone)]
pub struct GridScene {
    pub n: usize,
    pub poly_sides: usize,
    pub centers: Vec<Point>,
    /// Circle radius before the unit-length rescale.
    pub nominal_radius: f64,
    /// Radius after rescaling to total length one.
    pub radius: f64,
    /// `radius / nominal_radius`.
    pub rescale: f64,
    pub set: SegmentSet,
}

/// Builds the grid scene: `n^2` circle centers on the uniform interior
/// grid of the unit square, each circle an inscribed regular polygon, with
/// the radius chosen so the total perimeter is exactly one.
pub fn generate_grid_set(n: usize, poly_sides: usize) -> Result<GridScene> {
    if n < 2 {
        return Err(Error::InvalidConfig("grid size n must be at least 2".into()));
    }
    if poly_sides < 16 {
        return Err(Error::InvalidConfig("poly_sides must be at least 16".into()));
    }
    let nf = n as f64;
    let nominal_radius = 1.0 / (2.0 * core::f64::consts::PI * nf * nf);
    // Perimeter of an inscribed regular polygon of radius r is
    // 2 * sides * sin(pi / sides) * r; solve for unit total length.
    let chord = 2.0 * poly_sides as f64 * math::sin(core::f64::consts::PI / poly_sides as f64);
    let radius = 1.0 / (nf * nf * chord);
    let mut centers = Vec::with_capacity(n * n);
    for k in 1..=n {
        for l in 1..=n {
            centers.push(Point::new(k as f64 / (nf + 1.0), l as f64 / (nf + 1.0)));
        }
    }
    let mut segments = Vec::with_capacity(n * n * poly_sides);
    for &c in &centers {
        let mut prev = vertex(c, radius, poly_sides, 0);
        for m in 1..=poly_sides {
            let cur = vertex(c, radius, poly_sides, m % poly_sides);
            segments.push(Segment::new(prev, cur)?);
            prev = cur;
        }
    }
    let set = SegmentSet::new(segments, core::f64::consts::SQRT_2 + 1e-9)?;
    // Separation of the closed disks, in exact grid arithmetic.
    let min_center_gap = 1.0 / (nf + 1.0);
    if min_center_gap - 2.0 * radius < 1.0 / (2.0 * nf) {
        return Err(Error::InvalidGeometry("grid disks closer than the separation bound".into()));
    }
    Ok(GridScene {
        n,
        poly_sides,
        centers,
        nominal_radius,
        radius,
        rescale: radius / nominal_radius,
        set,
    })
}

fn vertex(center: Point, radius: f64, sides: usize, m: usize) -> Point {
    let phi = core::f64::consts::TAU * m as f64 / sides as f64;
    center + Point::new(radius * math::cos(phi), radius * math::sin(phi))
}

/// Monte Carlo estimate of the inverse-distance energy of the uniform
/// measure on a union of equal disks: mean of `1/|x - y|` over independent
/// uniform pairs (same-disk pairs included). Returns (value, stderr).
pub fn disk_union_energy(
    centers: &[Point],
    radius: f64,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    assert!(!centers.is_empty() && radius > 0.0 && samples > 0);
    let mut parts = Vec::with_capacity(mc::SHARDS as usize);
    for shard in 0..mc::SHARDS {
        let mut rng = mc::shard_rng(seed, shard);
        let quota = mc::shard_quota(samples, shard);
        let mut acc = MeanAccumulator::default();
        for _ in 0..quota {
            let x = sample_disk_union(&mut rng, centers, radius);
            let y = sample_disk_union(&mut rng, centers, radius);
            acc.push(1.0 / x.distance(y));
        }
        parts.push(acc);
    }
    let total = MeanAccumulator::combine(&parts);
    (total.mean(), total.stderr())
}

fn sample_disk_union<R: Rng>(rng: &mut R, centers: &[Point], radius: f64) -> Point {
    let i = rng.gen_range(0..centers.len());
    let r = radius * math::sqrt(rng.gen_range(0.0f64..1.0));
    let phi = rng.gen_range(0.0..core::f64::consts::TAU);
    centers[i] + Point::new(r * math::cos(phi), r * math::sin(phi))
}

/// Energy of the scene's disk union.
pub fn energy_i1(scene: &GridScene, samples: u64, seed: u64) -> (f64, f64) {
    disk_union_energy(&scene.centers, scene.radius, samples, seed)
}

/// Closed-form inverse-distance energy of a single uniform disk.
pub fn disk_energy_closed_form(radius: f64) -> f64 {
    16.0 / (3.0 * core::f64::consts::PI * radius)
}

/// Shadow integral and inverse energy, side by side. No constant relating
/// them is claimed; the inverse energy is the lower-bound proxy.
#[derive(Debug, Clone, Copy)]
pub struct FavardProxy {
    pub favard: f64,
    pub favard_error: f64,
    pub energy: f64,
    pub energy_stderr: f64,
    pub inv_energy: f64,
}

pub fn favard_proxy(
    scene: &GridScene,
    q: &QuadratureConfig,
    samples: u64,
    seed: u64,
) -> Result<FavardProxy> {
    let (favard, favard_error) = favard::favard_length(&scene.set, q)?;
    let (energy, energy_stderr) = energy_i1(scene, samples, seed);
    Ok(FavardProxy { favard, favard_error, energy, energy_stderr, inv_energy: 1.0 / energy })
}

/// Mass of the scene within resolution `step` of a graph, by thickened
/// incidence counting over precomputed scene samples.
pub fn intersection_mass_with_graph(samples: &WeightedCloud, graph: &Polyline, step: f64) -> f64 {
    let edges = graph.edges();
    let mut mass = 0.0;
    for &(p, w) in samples.points() {
        let close = edges.iter().any(|e| e.distance_to_point(p) <= 0.5 * step);
        if close {
            mass += w;
        }
    }
    mass
}

/// A random piecewise-linear graph with slopes bounded by `m_lip` over a
/// random base direction, spanning the unit square.
pub fn random_lipschitz_graph<R: Rng>(rng: &mut R, m_lip: f64, pieces: usize) -> Polyline {
    let base = Angle::new(rng.gen_range(0.0..core::f64::consts::PI));
    let u = base.unit();
    let v = u.perp();
    // Base range covering the square's shadow in direction `base`.
    let corners = [
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(1.0, 1.0),
    ];
    let ts: Vec<f64> = corners.iter().map(|c| c.dot(u)).collect();
    let hs: Vec<f64> = corners.iter().map(|c| c.dot(v)).collect();
    let (t_lo, t_hi) = (
        ts.iter().cloned().fold(f64::INFINITY, f64::min) - 0.05,
        ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 0.05,
    );
    let (h_lo, h_hi) = (
        hs.iter().cloned().fold(f64::INFINITY, f64::min),
        hs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let mut h = rng.gen_range(h_lo..h_hi);
    let dt = (t_hi - t_lo) / pieces as f64;
    let mut vertices = Vec::with_capacity(pieces + 1);
    let mut t = t_lo;
    vertices.push(u.scale(t) + v.scale(h));
    for _ in 0..pieces {
        let slope = rng.gen_range(-m_lip..m_lip);
        t += dt;
        h += slope * dt;
        vertices.push(u.scale(t) + v.scale(h));
    }
    Polyline::new(vertices).expect("strictly increasing base coordinates")
}

/// Maximum thickened-incidence mass over random bounded-slope graphs.
pub fn lipschitz_intersection_mass(
    scene: &GridScene,
    m_lip: f64,
    trials: u64,
    seed: u64,
    step: f64,
) -> Result<f64> {
    if !(m_lip >= 1.0) {
        return Err(Error::InvalidConfig("Lipschitz bound must be at least 1".into()));
    }
    let samples = WeightedCloud::from_arclength_sampling(&scene.set, step)?;
    let mut worst: f64 = 0.0;
    let mut rng = mc::shard_rng(seed, 0);
    for _ in 0..trials {
        let graph = random_lipschitz_graph(&mut rng, m_lip, 50);
        worst = worst.max(intersection_mass_with_graph(&samples, &graph, step));
    }
    Ok(worst)
}
