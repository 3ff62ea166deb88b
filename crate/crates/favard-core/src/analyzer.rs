//! The structure pipeline: chop curves into direction-coherent pieces,
//! bucket the pieces by direction at two granularities, and either cover
//! almost everything by a single Lipschitz graph (one narrow window of
//! directions carries all but `eps` of the mass) or build a transversal
//! witness: two separated, mutually tube-avoiding point sets on graphs of
//! quantitatively different directions, whose spanned-line measure is a
//! certified lower bound for the shadow defect.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::cloud::WeightedCloud;
use crate::extract::{cover_by_single_graph, CoverConfig, GraphCover};
use crate::favard::{self, FavardReport};
use crate::geom::{AffineLine, Angle, Point, Polyline, Segment, SegmentSet, Tube};
use crate::math;
use crate::pairs::{pair_line_measure_formula, CurveWithTangents, DEFAULT_PAIR_TOL};
use crate::quad::QuadratureConfig;
use crate::{Error, Result, WitnessStage, GEOM_EPS};

/// Tolerances, sampling resolutions, and the pipeline's named constants.
///
/// `Default` carries the nominal constant ledger; [`AnalysisConfig::desk`]
/// is the committed profile whose constants are mutually consistent for
/// unit-scale inputs and is what the CLI and the acceptance suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Direction tolerance of a single piece (slope units).
    pub alpha: f64,
    /// Exponent of the coarse bucket granularity `alpha^kappa`.
    pub kappa: f64,
    /// Upper bound accepted for `alpha`.
    pub alpha0: f64,
    /// Cover constant multiplier: covers have constant `c_lip * alpha`.
    pub c_lip: f64,
    /// Minimal coarse-bucket index distance of a transversal pair.
    pub c_sep: f64,
    /// Scale factor relating `eps` to `alpha` in the derived mode.
    pub c_alp: f64,
    /// Budget constant of the derived mode (kept for the report).
    pub c_thm: f64,
    /// Divisor in the cover's density threshold.
    pub c_pipeline: f64,
    /// Divisor in the witness mass threshold and ball separation.
    pub witness_c: f64,
    /// Multiplier of `alpha^2` in the heavy-ball admissibility threshold.
    pub ball_mass_multiplier: f64,
    /// Target uncovered mass for the window case.
    pub eps_target: f64,
    /// Arclength sampling step; `None` resolves to total length / 2000.
    pub sample_step: Option<f64>,
    /// Relative tolerance of the density supremum search.
    pub tol_density: f64,
    /// Relative tolerance of the pair-measure quadrature.
    pub tol_pair: f64,
    /// Derive `alpha` from `eps` as `(eps / c_alp)^10` instead of taking
    /// `alpha` from this config.
    pub alpha_from_eps: bool,
    pub quad: QuadratureConfig,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            alpha: 0.01,
            kappa: 0.1,
            alpha0: 0.05,
            c_lip: 8.0,
            c_sep: 64.0,
            c_alp: 4.0,
            c_thm: 1e6,
            c_pipeline: 32.0,
            witness_c: 16.0,
            ball_mass_multiplier: 1.0 / 64.0,
            eps_target: 0.1,
            sample_step: None,
            tol_density: 1e-9,
            tol_pair: DEFAULT_PAIR_TOL,
            alpha_from_eps: false,
            quad: QuadratureConfig::default(),
            seed: 0,
        }
    }
}

impl AnalysisConfig {
    /// The committed unit-scale profile: every threshold in the witness
    /// construction is attainable on inputs of diameter about one.
    pub fn desk() -> Self {
        AnalysisConfig {
            alpha: 2e-4,
            kappa: 0.2,
            c_lip: 2.0,
            c_sep: 2.0,
            witness_c: 4.0,
            ..AnalysisConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < self.alpha0) {
            return Err(Error::InvalidConfig(format!(
                "alpha {} outside (0, alpha0 = {})",
                self.alpha, self.alpha0
            )));
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return Err(Error::InvalidConfig("kappa must lie in (0, 1)".into()));
        }
        for (name, v) in [
            ("c_lip", self.c_lip),
            ("c_sep", self.c_sep),
            ("c_alp", self.c_alp),
            ("c_thm", self.c_thm),
            ("c_pipeline", self.c_pipeline),
            ("witness_c", self.witness_c),
        ] {
            if !(v >= 1.0) {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        if !(self.ball_mass_multiplier > 0.0) {
            return Err(Error::InvalidConfig("ball_mass_multiplier must be positive".into()));
        }
        if !(self.eps_target > 0.0) {
            return Err(Error::InvalidConfig("eps_target must be positive".into()));
        }
        if !(self.tol_density > 0.0 && self.tol_pair > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        self.quad.validate()
    }

    /// The sampling step for a set of the given total length.
    pub fn resolve_step(&self, total_length: f64) -> f64 {
        self.sample_step.unwrap_or_else(|| {
            if total_length > 0.0 {
                total_length / 2000.0
            } else {
                1e-3
            }
        })
    }

    /// The `eps` implied by the configured `alpha` under the derived-mode
    /// relation, for reporting.
    pub fn implied_eps(&self) -> f64 {
        self.c_alp * math::powf(self.alpha, 0.1)
    }

    fn cover_config(&self, total_length: f64) -> CoverConfig {
        CoverConfig {
            c_lip: self.c_lip,
            c_pipeline: self.c_pipeline,
            sample_step: self.resolve_step(total_length),
        }
    }
}

/// One direction-coherent piece with its fine direction bucket.
#[derive(Debug, Clone, PartialEq)]
pub struct Minigraph {
    pub piece: Polyline,
    pub fine_bucket: usize,
}

/// Decomposition of a curve family into direction-coherent pieces with two
/// bucket granularities.
#[derive(Debug, Clone, PartialEq)]
pub struct MinigraphFamily {
    pub minigraphs: Vec<Minigraph>,
    /// Fine bucket count; directions `k pi / fine_count`.
    pub fine_count: usize,
    /// Coarse bucket count; axes `k pi / coarse_count`.
    pub coarse_count: usize,
    pub alpha: f64,
    pub kappa: f64,
}

impl MinigraphFamily {
    pub fn fine_direction(&self, k: usize) -> Angle {
        Angle::new(k as f64 * PI / self.fine_count as f64)
    }

    pub fn coarse_axis(&self, k: usize) -> Angle {
        Angle::new(k as f64 * PI / self.coarse_count as f64)
    }

    /// The coarse bucket whose axis is closest to the fine direction
    /// (ties to the smaller index).
    pub fn coarse_of_fine(&self, fine: usize) -> usize {
        let dir = self.fine_direction(fine);
        let mut best = (f64::INFINITY, 0usize);
        for c in 0..self.coarse_count {
            let d = dir.distance(self.coarse_axis(c));
            if d < best.0 - GEOM_EPS {
                best = (d, c);
            }
        }
        best.1
    }

    pub fn fine_mass(&self, k: usize) -> f64 {
        let lens: Vec<f64> = self
            .minigraphs
            .iter()
            .filter(|m| m.fine_bucket == k)
            .map(|m| m.piece.total_length())
            .collect();
        math::pairwise_sum(&lens)
    }

    pub fn coarse_mass(&self, c: usize) -> f64 {
        let lens: Vec<f64> = self
            .minigraphs
            .iter()
            .filter(|m| self.coarse_of_fine(m.fine_bucket) == c)
            .map(|m| m.piece.total_length())
            .collect();
        math::pairwise_sum(&lens)
    }

    pub fn total_mass(&self) -> f64 {
        let lens: Vec<f64> =
            self.minigraphs.iter().map(|m| m.piece.total_length()).collect();
        math::pairwise_sum(&lens)
    }

    /// Segments of every piece in the coarse bucket.
    pub fn coarse_set(&self, c: usize, bounding_radius: f64) -> Result<SegmentSet> {
        let mut segs = Vec::new();
        for m in &self.minigraphs {
            if self.coarse_of_fine(m.fine_bucket) == c {
                segs.extend(m.piece.edges());
            }
        }
        SegmentSet::new(segs, bounding_radius)
    }

    /// Fine buckets populated inside a coarse bucket, each with its edge
    /// segments, ordered by fine index.
    pub fn fine_sets_in_coarse(
        &self,
        c: usize,
        bounding_radius: f64,
    ) -> Result<Vec<(usize, SegmentSet)>> {
        let mut buckets: Vec<(usize, Vec<Segment>)> = Vec::new();
        for m in &self.minigraphs {
            if self.coarse_of_fine(m.fine_bucket) != c {
                continue;
            }
            match buckets.iter_mut().find(|(k, _)| *k == m.fine_bucket) {
                Some((_, v)) => v.extend(m.piece.edges()),
                None => buckets.push((m.fine_bucket, m.piece.edges())),
            }
        }
        buckets.sort_by_key(|(k, _)| *k);
        buckets
            .into_iter()
            .map(|(k, segs)| Ok((k, SegmentSet::new(segs, bounding_radius)?)))
            .collect()
    }
}

fn fine_bucket_count(alpha: f64) -> usize {
    (math::ceil(PI / (2.0 * math::atan(alpha))) as usize).max(2)
}

fn coarse_bucket_count(alpha: f64, kappa: f64) -> usize {
    (math::ceil(PI / (2.0 * math::powf(alpha, kappa))) as usize).max(2)
}

/// Chops each curve into pieces whose edges stay within `atan(alpha)` of
/// the piece's assigned fine direction, greedily left to right. A new
/// piece opens when the incoming edge leaves the current band.
pub fn minigraph_decompose(curves: &[Polyline], alpha: f64, kappa: f64) -> Result<MinigraphFamily> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidConfig("alpha must be positive".into()));
    }
    let fine_count = fine_bucket_count(alpha);
    if fine_count > 100_000_000 {
        return Err(Error::InvalidConfig(format!(
            "alpha {alpha} would require {fine_count} direction buckets"
        )));
    }
    let band = math::atan(alpha) + GEOM_EPS;
    let nearest = |ang: Angle| -> usize {
        (math::round(ang.radians() / (PI / fine_count as f64)) as usize) % fine_count
    };
    let mut minigraphs = Vec::new();
    for curve in curves {
        let verts = curve.vertices();
        let mut start = 0usize;
        let mut bucket = nearest(curve.edges()[0].direction_angle());
        for (i, edge) in curve.edges().iter().enumerate() {
            let dir = edge.direction_angle();
            let v_k = Angle::new(bucket as f64 * PI / fine_count as f64);
            if i > start && dir.distance(v_k) > band {
                minigraphs.push(Minigraph {
                    piece: Polyline::new(verts[start..=i].to_vec())?,
                    fine_bucket: bucket,
                });
                start = i;
                bucket = nearest(dir);
            } else if i == start {
                bucket = nearest(dir);
            }
        }
        minigraphs.push(Minigraph {
            piece: Polyline::new(verts[start..].to_vec())?,
            fine_bucket: bucket,
        });
    }
    Ok(MinigraphFamily {
        minigraphs,
        fine_count,
        coarse_count: coarse_bucket_count(alpha, kappa),
        alpha,
        kappa,
    })
}

/// Outcome of the window scan over coarse buckets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSplit {
    /// A window of `c_sep + 1` consecutive coarse buckets (circularly)
    /// whose complement holds at most `eps` of the mass; leftmost start.
    SingleWindow { start: usize },
    /// No window suffices; a pair of coarse buckets at circular index
    /// distance at least `c_sep` maximizing the smaller mass.
    TransversalPair { k: usize, l: usize },
}

fn circular_distance(a: usize, b: usize, modulus: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(modulus - d)
}

/// Scans windows of `c_sep + 1` consecutive coarse buckets; returns the
/// leftmost window whose complement mass is at most `eps`, otherwise the
/// transversal pair maximizing the smaller bucket mass.
pub fn case_split(fam: &MinigraphFamily, eps: f64, cfg: &AnalysisConfig) -> Result<CaseSplit> {
    let m3 = fam.coarse_count;
    let sep = math::ceil(cfg.c_sep) as usize;
    if m3 < 2 * sep {
        return Err(Error::InsufficientBuckets { buckets: m3, required: 2 * sep });
    }
    let masses: Vec<f64> = (0..m3).map(|c| fam.coarse_mass(c)).collect();
    let total = math::pairwise_sum(&masses);
    for start in 0..m3 {
        let window: f64 = (0..=sep).map(|o| masses[(start + o) % m3]).sum();
        if total - window <= eps {
            return Ok(CaseSplit::SingleWindow { start });
        }
    }
    let mut best: Option<(f64, usize, usize)> = None;
    for k in 0..m3 {
        for l in (k + 1)..m3 {
            if circular_distance(k, l, m3) < sep {
                continue;
            }
            let key = masses[k].min(masses[l]);
            if best.map_or(true, |(b, _, _)| key > b) {
                best = Some((key, k, l));
            }
        }
    }
    let (_, k, l) = best.expect("bucket count admits separated pairs");
    Ok(CaseSplit::TransversalPair { k, l })
}

/// The transversal certificate: separated point sets on two graphs of
/// quantitatively different directions, avoiding each other's tubes.
#[derive(Debug, Clone)]
pub struct Witness {
    pub bucket_k: usize,
    pub bucket_l: usize,
    pub axis_k: Angle,
    pub axis_l: Angle,
    pub line_k: AffineLine,
    pub line_l: AffineLine,
    pub inner_tube_k: Tube,
    pub outer_tube_k: Tube,
    pub inner_tube_l: Tube,
    pub outer_tube_l: Tube,
    pub ball_centers_k: [Point; 2],
    pub ball_centers_l: [Point; 3],
    /// Indices of the ball pair with no tube incidence either way.
    pub chosen: (usize, usize),
    /// Exact clipped pieces of the two point sets.
    pub set_k: Vec<Segment>,
    pub set_l: Vec<Segment>,
    /// Fine-sampled cloud views of the point sets.
    pub cloud_k: WeightedCloud,
    pub cloud_l: WeightedCloud,
    pub mass_k: f64,
    pub mass_l: f64,
    /// Measured lower bound for the defect: the spanned-line measure.
    pub eta_lower: f64,
}

fn witness_err(stage: WitnessStage, detail: impl core::fmt::Display) -> Error {
    Error::WitnessFailed { stage, detail: format!("{detail}") }
}

/// Exact mass of a segment set inside a closed ball.
fn ball_mass(segments: &[Segment], center: Point, radius: f64) -> f64 {
    let lens: Vec<f64> = segments
        .iter()
        .filter_map(|s| {
            let d = s.a() - center;
            let e = s.b() - s.a();
            let aa = e.dot(e);
            let bb = d.dot(e);
            let cc = d.dot(d) - radius * radius;
            let disc = bb * bb - aa * cc;
            if disc < 0.0 {
                return None;
            }
            let sq = math::sqrt(disc);
            let lo = ((-bb - sq) / aa).max(0.0);
            let hi = ((-bb + sq) / aa).min(1.0);
            (hi > lo).then(|| (hi - lo) * s.length())
        })
        .collect();
    math::pairwise_sum(&lens)
}

fn clip_to_ball(segments: &[Segment], center: Point, radius: f64) -> Vec<Segment> {
    let mut out = Vec::new();
    for s in segments {
        let d = s.a() - center;
        let e = s.b() - s.a();
        let aa = e.dot(e);
        let bb = d.dot(e);
        let cc = d.dot(d) - radius * radius;
        let disc = bb * bb - aa * cc;
        if disc < 0.0 {
            continue;
        }
        let sq = math::sqrt(disc);
        let lo = ((-bb - sq) / aa).max(0.0);
        let hi = ((-bb + sq) / aa).min(1.0);
        if let Some(piece) = s.sub_segment(lo, hi) {
            out.push(piece);
        }
    }
    out
}

/// Greedy selection of `need` admissible ball centers: repeatedly the
/// heaviest candidate (ties to the earlier candidate) at pairwise distance
/// at least `sep` from the already chosen.
fn select_heavy_balls(
    segments: &[Segment],
    candidates: &WeightedCloud,
    radius: f64,
    admissible_mass: f64,
    sep: f64,
    need: usize,
) -> Result<Vec<Point>> {
    let masses: Vec<f64> = candidates
        .points()
        .iter()
        .map(|&(p, _)| ball_mass(segments, p, radius))
        .collect();
    let mut chosen: Vec<Point> = Vec::with_capacity(need);
    while chosen.len() < need {
        let mut best: Option<(f64, usize)> = None;
        for (i, &(p, _)) in candidates.points().iter().enumerate() {
            if masses[i] < admissible_mass {
                continue;
            }
            if chosen.iter().any(|c| c.distance(p) < sep) {
                continue;
            }
            if best.map_or(true, |(bm, _)| masses[i] > bm + 1e-12) {
                best = Some((masses[i], i));
            }
        }
        match best {
            Some((_, i)) => chosen.push(candidates.points()[i].0),
            None => {
                return Err(witness_err(
                    WitnessStage::BallSelection,
                    format!(
                        "found {} of {need} separated balls of mass >= {admissible_mass}",
                        chosen.len()
                    ),
                ))
            }
        }
    }
    Ok(chosen)
}

/// Output of the per-bucket preparation: the bucket's covered segments
/// partitioned by fine bucket.
struct PreparedBucket {
    /// `(fine index, covered segments)`, in fine order.
    fine_covered: Vec<(usize, Vec<Segment>)>,
    /// Union of the covered segments.
    all: Vec<Segment>,
}

/// Runs the two cover stages on a coarse bucket: one wide cover over the
/// bucket axis, then one refined cover per fine bucket, keeping segments
/// none of whose samples were removed.
fn prepare_bucket(
    fam: &MinigraphFamily,
    bucket: usize,
    bounding: f64,
    cfg: &AnalysisConfig,
) -> Result<PreparedBucket> {
    let axis = fam.coarse_axis(bucket);
    let alpha = fam.alpha;
    let a_kappa = math::powf(alpha, fam.kappa);
    let set = fam
        .coarse_set(bucket, bounding)
        .map_err(|e| witness_err(WitnessStage::BucketCover, e))?;
    let total = set.h1_length();

    // Wide cover over the bucket axis. Edge angles stay within
    // alpha^kappa + atan(alpha) of the axis, so the slope bound below
    // always passes validation.
    let alpha_wide = math::tan((a_kappa + math::atan(alpha)).min(1.45)) + 1e-12;
    let eps_wide = 0.5 * math::powf(alpha, 2.0 * fam.kappa);
    let cover_cfg = cfg.cover_config(total);
    let wide = cover_by_single_graph(&set, alpha_wide, eps_wide, axis, &cover_cfg)
        .map_err(|e| witness_err(WitnessStage::BucketCover, e))?;
    if wide.covered_mass() < 0.5 * (wide.covered_mass() + wide.removed_mass()) {
        return Err(witness_err(
            WitnessStage::BucketCover,
            format!("wide cover kept only {} of {}", wide.covered_mass(), total),
        ));
    }
    let survives_wide = segment_filter(&wide);

    // Refined covers per fine bucket.
    let mut fine_covered = Vec::new();
    let mut all = Vec::new();
    for (fine, fine_set) in fam.fine_sets_in_coarse(bucket, bounding)? {
        let kept: Vec<Segment> = fine_set
            .segments()
            .iter()
            .filter(|s| survives_wide(s))
            .copied()
            .collect();
        if kept.is_empty() {
            continue;
        }
        let kept_set = SegmentSet::new(kept, bounding)
            .map_err(|e| witness_err(WitnessStage::BucketCover, e))?;
        let refined = cover_by_single_graph(
            &kept_set,
            alpha,
            alpha * alpha,
            fam.fine_direction(fine),
            &cfg.cover_config(kept_set.h1_length()),
        )
        .map_err(|e| witness_err(WitnessStage::BucketCover, e))?;
        let survives = segment_filter(&refined);
        let covered: Vec<Segment> = kept_set
            .segments()
            .iter()
            .filter(|s| survives(s))
            .copied()
            .collect();
        if !covered.is_empty() {
            all.extend_from_slice(&covered);
            fine_covered.push((fine, covered));
        }
    }
    if all.is_empty() {
        return Err(witness_err(WitnessStage::BucketCover, "no segments survived the covers"));
    }
    Ok(PreparedBucket { fine_covered, all })
}

/// Predicate marking segments without any removed sample point on them.
fn segment_filter(cover: &GraphCover) -> impl Fn(&Segment) -> bool {
    let removed: Vec<Point> = cover.removed.points().iter().map(|&(p, _)| p).collect();
    move |s: &Segment| !removed.iter().any(|&p| s.distance_to_point(p) <= 1e-9)
}

struct BallObjects {
    center: Point,
    line: AffineLine,
    inner: Tube,
    outer: Tube,
    pieces: Vec<Segment>,
}

/// Dominant fine graph in a ball, its fitted line, and the tubes.
fn ball_objects(
    prepared: &PreparedBucket,
    fam: &MinigraphFamily,
    bucket_axis: Angle,
    center: Point,
    cfg: &AnalysisConfig,
) -> Result<BallObjects> {
    let alpha = fam.alpha;
    let mut best: Option<(f64, usize)> = None;
    for (idx, (_, segs)) in prepared.fine_covered.iter().enumerate() {
        let m = ball_mass(segs, center, alpha);
        if m > best.map_or(0.0, |(bm, _)| bm + 1e-12) {
            best = Some((m, idx));
        }
    }
    let (mass, idx) = best.ok_or_else(|| {
        witness_err(WitnessStage::DominantGraph, "no graph mass in the selected ball")
    })?;
    let threshold = cfg.ball_mass_multiplier * alpha * alpha * alpha;
    if mass < threshold {
        return Err(witness_err(
            WitnessStage::DominantGraph,
            format!("dominant graph mass {mass} below threshold {threshold}"),
        ));
    }
    let (fine, segs) = &prepared.fine_covered[idx];
    let direction = fam.fine_direction(*fine);
    if direction.distance(bucket_axis) > math::powf(alpha, fam.kappa) + GEOM_EPS {
        return Err(witness_err(
            WitnessStage::LineAngle,
            format!(
                "fitted line direction deviates {} from the bucket axis",
                direction.distance(bucket_axis)
            ),
        ));
    }
    let pieces = clip_to_ball(segs, center, alpha);
    // Fit the line of the graph's direction through the pieces' mean
    // offset (length-weighted; exact for piecewise-linear pieces).
    let theta = direction.rotated(PI / 2.0);
    let mut num = 0.0;
    let mut den = 0.0;
    for p in &pieces {
        let mid = p.midpoint();
        num += p.length() * crate::geom::project_point(mid, theta);
        den += p.length();
    }
    let line = AffineLine::new(theta, num / den);
    let inner_halfwidth = 2.0 * cfg.c_lip * alpha;
    for p in &pieces {
        for q in [p.a(), p.b()] {
            if line.distance_to_point(q) > inner_halfwidth + GEOM_EPS {
                return Err(witness_err(
                    WitnessStage::LineFit,
                    format!("piece endpoint {} off the fitted line", line.distance_to_point(q)),
                ));
            }
        }
    }
    Ok(BallObjects {
        center,
        line,
        inner: Tube::new(line, inner_halfwidth)?,
        outer: Tube::new(line, math::sqrt(alpha))?,
        pieces,
    })
}

/// Removes the part of each piece inside the tube.
fn subtract_tube(pieces: &[Segment], tube: &Tube) -> Vec<Segment> {
    let mut out = Vec::new();
    for p in pieces {
        match p.t_range_tube(tube) {
            None => out.push(*p),
            Some((lo, hi)) => {
                if let Some(left) = p.sub_segment(0.0, lo) {
                    out.push(left);
                }
                if let Some(right) = p.sub_segment(hi, 1.0) {
                    out.push(right);
                }
            }
        }
    }
    out
}

/// Builds the transversal witness for a coarse bucket pair.
///
/// Stages: bucket-mass precondition; wide + refined covers; greedy
/// selection of two (respectively three) separated heavy balls; dominant
/// graph, fitted line, and tubes per ball; the five-radius incidence scan
/// between tubes and opposite balls, which by counting leaves a ball pair
/// free of incidences both ways; exact clipping of that pair's point sets
/// with mutual tube avoidance re-verified point by point.
pub fn build_witness(
    fam: &MinigraphFamily,
    set: &SegmentSet,
    k: usize,
    l: usize,
    cfg: &AnalysisConfig,
) -> Result<Witness> {
    cfg.validate()?;
    let alpha = fam.alpha;
    let a2k = math::powf(alpha, 2.0 * fam.kappa);
    for (name, b) in [("first", k), ("second", l)] {
        let m = fam.coarse_mass(b);
        if m < a2k {
            return Err(witness_err(
                WitnessStage::BucketMass,
                format!("{name} bucket mass {m} below alpha^(2 kappa) = {a2k}"),
            ));
        }
    }
    let bounding = set.bounding_radius();
    let prep_k = prepare_bucket(fam, k, bounding, cfg)?;
    let prep_l = prepare_bucket(fam, l, bounding, cfg)?;

    let sep = a2k / cfg.witness_c;
    let admissible = cfg.ball_mass_multiplier * alpha * alpha;
    let step_k = cfg.resolve_step(math::pairwise_sum(
        &prep_k.all.iter().map(Segment::length).collect::<Vec<_>>(),
    ));
    let cand_k = WeightedCloud::from_arclength_sampling(
        &SegmentSet::new(prep_k.all.clone(), bounding)
            .map_err(|e| witness_err(WitnessStage::BallSelection, e))?,
        step_k,
    )?;
    let centers_k = select_heavy_balls(&prep_k.all, &cand_k, alpha, admissible, sep, 2)?;
    let step_l = cfg.resolve_step(math::pairwise_sum(
        &prep_l.all.iter().map(Segment::length).collect::<Vec<_>>(),
    ));
    let cand_l = WeightedCloud::from_arclength_sampling(
        &SegmentSet::new(prep_l.all.clone(), bounding)
            .map_err(|e| witness_err(WitnessStage::BallSelection, e))?,
        step_l,
    )?;
    let centers_l = select_heavy_balls(&prep_l.all, &cand_l, alpha, admissible, sep, 3)?;

    let axis_k = fam.coarse_axis(k);
    let axis_l = fam.coarse_axis(l);
    let objs_k: Vec<BallObjects> = centers_k
        .iter()
        .map(|&c| ball_objects(&prep_k, fam, axis_k, c, cfg))
        .collect::<Result<_>>()?;
    let objs_l: Vec<BallObjects> = centers_l
        .iter()
        .map(|&c| ball_objects(&prep_l, fam, axis_l, c, cfg))
        .collect::<Result<_>>()?;

    // Incidence between outer tubes and opposite balls.
    let reach = math::sqrt(alpha) + alpha;
    let mut k_hits_l = [[false; 3]; 2];
    let mut l_hits_k = [[false; 2]; 3];
    for (i, ok) in objs_k.iter().enumerate() {
        for (j, ol) in objs_l.iter().enumerate() {
            k_hits_l[i][j] = ok.line.distance_to_point(ol.center) <= reach;
            l_hits_k[j][i] = ol.line.distance_to_point(ok.center) <= reach;
        }
    }
    for (i, row) in k_hits_l.iter().enumerate() {
        if row.iter().filter(|&&b| b).count() > 1 {
            return Err(witness_err(
                WitnessStage::Incidence,
                format!("tube {i} of the first bucket meets two opposite balls"),
            ));
        }
    }
    for (j, row) in l_hits_k.iter().enumerate() {
        if row.iter().filter(|&&b| b).count() > 1 {
            return Err(witness_err(
                WitnessStage::Incidence,
                format!("tube {j} of the second bucket meets two opposite balls"),
            ));
        }
    }
    let mut chosen = None;
    'outer: for i in 0..2 {
        for j in 0..3 {
            if !k_hits_l[i][j] && !l_hits_k[j][i] {
                chosen = Some((i, j));
                break 'outer;
            }
        }
    }
    // At most five incidences cannot cover all six pairs.
    let (i0, j0) = chosen
        .ok_or_else(|| witness_err(WitnessStage::Incidence, "no incidence-free pair"))?;

    let ok = &objs_k[i0];
    let ol = &objs_l[j0];
    let set_k = subtract_tube(&ok.pieces, &ol.outer);
    let set_l = subtract_tube(&ol.pieces, &ok.outer);
    let mass_k = math::pairwise_sum(&set_k.iter().map(Segment::length).collect::<Vec<_>>());
    let mass_l = math::pairwise_sum(&set_l.iter().map(Segment::length).collect::<Vec<_>>());
    let needed = alpha * alpha * alpha / cfg.witness_c;
    if mass_k < needed || mass_l < needed {
        return Err(witness_err(
            WitnessStage::Membership,
            format!("final masses ({mass_k}, {mass_l}) below alpha^3 / witness_c = {needed}"),
        ));
    }
    // Mutual avoidance, re-verified point by point on each piece.
    for (pieces, ball, other_tube) in
        [(&set_k, ok.center, &ol.outer), (&set_l, ol.center, &ok.outer)]
    {
        for p in pieces {
            for q in [p.a(), p.midpoint(), p.b()] {
                if q.distance(ball) > alpha + 1e-9 {
                    return Err(witness_err(WitnessStage::Membership, "point outside its ball"));
                }
                if other_tube.center.distance_to_point(q) < other_tube.halfwidth - 1e-9 {
                    return Err(witness_err(
                        WitnessStage::Membership,
                        "point inside the opposite tube",
                    ));
                }
            }
        }
    }

    let fine_step = (alpha / 8.0).min(mass_k.min(mass_l) / 4.0);
    let cloud_k = WeightedCloud::from_arclength_sampling(
        &SegmentSet::new(set_k.clone(), bounding)
            .map_err(|e| witness_err(WitnessStage::Membership, e))?,
        fine_step,
    )?;
    let cloud_l = WeightedCloud::from_arclength_sampling(
        &SegmentSet::new(set_l.clone(), bounding)
            .map_err(|e| witness_err(WitnessStage::Membership, e))?,
        fine_step,
    )?;

    let mut witness = Witness {
        bucket_k: k,
        bucket_l: l,
        axis_k,
        axis_l,
        line_k: ok.line,
        line_l: ol.line,
        inner_tube_k: ok.inner,
        outer_tube_k: ok.outer,
        inner_tube_l: ol.inner,
        outer_tube_l: ol.outer,
        ball_centers_k: [objs_k[0].center, objs_k[1].center],
        ball_centers_l: [objs_l[0].center, objs_l[1].center, objs_l[2].center],
        chosen: (i0, j0),
        set_k,
        set_l,
        cloud_k,
        cloud_l,
        mass_k,
        mass_l,
        eta_lower: 0.0,
    };
    witness.eta_lower = defect_certificate(&witness, cfg)?;
    Ok(witness)
}

/// The spanned-line measure of the witness pair, by the exact two-curve
/// integral. A lower bound for the shadow defect of any superset, since
/// every line meeting both point sets meets the set twice.
pub fn defect_certificate(witness: &Witness, cfg: &AnalysisConfig) -> Result<f64> {
    let g1 = CurveWithTangents::from_segments(witness.set_k.clone())?;
    let g2 = CurveWithTangents::from_segments(witness.set_l.clone())?;
    pair_line_measure_formula(&g1, &g2, cfg.tol_pair)
}

/// Outcome of the full analysis.
#[derive(Debug, Clone)]
pub enum AnalysisOutcome {
    /// A single graph covers everything but the reported mass.
    Cover { window_start: usize, cover: GraphCover, uncovered_mass: f64 },
    /// A transversal witness with its certified defect lower bound.
    Defect { witness: Witness, certificate: f64 },
}

/// Full analysis report.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub outcome: AnalysisOutcome,
    /// Independently integrated shadow defect of the whole input.
    pub defect_measured: f64,
    pub favard: FavardReport,
    pub total_length: f64,
    pub alpha_used: f64,
    pub implied_eps: f64,
}

/// Runs the pipeline: decompose, bucket, scan windows, then either cover
/// the dominant window's union by one graph or build the witness for the
/// chosen transversal pair.
pub fn analyze(curves: &[Polyline], eps: f64, cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    cfg.validate()?;
    if !(eps > 0.0) {
        return Err(Error::InvalidConfig("eps must be positive".into()));
    }
    let alpha = if cfg.alpha_from_eps {
        let a = math::powf(eps / cfg.c_alp, 10.0);
        if a < 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "derived alpha {a} is below 1e-9; pass alpha directly"
            )));
        }
        a
    } else {
        cfg.alpha
    };

    let bounding = curves
        .iter()
        .flat_map(|c| c.vertices().iter())
        .map(|p| p.norm())
        .fold(1.0f64, f64::max)
        + GEOM_EPS;
    let set = SegmentSet::from_polylines(curves, bounding)?;
    let favard_report = favard::report(&set, &cfg.quad)?;
    let (defect_measured, _) = favard::favard_defect(&set, &cfg.quad)?;
    let total_length = set.h1_length();

    if curves.is_empty() {
        return Ok(AnalysisReport {
            outcome: AnalysisOutcome::Cover {
                window_start: 0,
                cover: cover_by_single_graph(
                    &set,
                    alpha,
                    eps,
                    Angle::new(0.0),
                    &cfg.cover_config(0.0),
                )?,
                uncovered_mass: 0.0,
            },
            defect_measured,
            favard: favard_report,
            total_length,
            alpha_used: alpha,
            implied_eps: cfg.c_alp * math::powf(alpha, 0.1),
        });
    }

    let fam = minigraph_decompose(curves, alpha, cfg.kappa)?;
    let outcome = match case_split(&fam, eps, cfg)? {
        CaseSplit::SingleWindow { start } => {
            let sep = math::ceil(cfg.c_sep) as usize;
            let m3 = fam.coarse_count;
            let mut segs = Vec::new();
            for o in 0..=sep {
                let c = (start + o) % m3;
                for m in &fam.minigraphs {
                    if fam.coarse_of_fine(m.fine_bucket) == c {
                        segs.extend(m.piece.edges());
                    }
                }
            }
            let base = fam.coarse_axis((start + sep / 2) % m3);
            let window_set = SegmentSet::new(segs, bounding)?;
            let window_mass = window_set.h1_length();
            if window_set.is_empty() {
                AnalysisOutcome::Cover {
                    window_start: start,
                    cover: cover_by_single_graph(
                        &window_set,
                        alpha,
                        eps,
                        base,
                        &cfg.cover_config(0.0),
                    )?,
                    uncovered_mass: total_length - window_mass,
                }
            } else {
                let worst_dev = window_set
                    .segments()
                    .iter()
                    .map(|s| s.direction_angle().distance(base))
                    .fold(0.0f64, f64::max);
                let alpha_window = math::tan(worst_dev.min(1.45)) + 1e-12;
                let cover = cover_by_single_graph(
                    &window_set,
                    alpha_window,
                    eps,
                    base,
                    &cfg.cover_config(window_mass),
                )?;
                let uncovered = (total_length - window_mass) + cover.removed_mass();
                AnalysisOutcome::Cover { window_start: start, cover, uncovered_mass: uncovered }
            }
        }
        CaseSplit::TransversalPair { k, l } => {
            let witness = build_witness(&fam, &set, k, l, cfg)?;
            let certificate = witness.eta_lower;
            AnalysisOutcome::Defect { witness, certificate }
        }
    };
    Ok(AnalysisReport {
        outcome,
        defect_measured,
        favard: favard_report,
        total_length,
        alpha_used: alpha,
        implied_eps: cfg.c_alp * math::powf(alpha, 0.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn polyline(pts: &[(f64, f64)]) -> Polyline {
        Polyline::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn plus_curves() -> Vec<Polyline> {
        vec![
            polyline(&[(-0.5, 0.0), (0.5, 0.0)]),
            polyline(&[(0.0, -0.5), (0.0, 0.5)]),
        ]
    }

    #[test]
    fn straight_polyline_is_one_minigraph() {
        let fam =
            minigraph_decompose(&[polyline(&[(0.0, 0.0), (0.4, 0.0), (1.0, 0.0)])], 2e-4, 0.2)
                .unwrap();
        assert_eq!(fam.minigraphs.len(), 1);
    }

    #[test]
    fn right_angle_splits_into_two_opposite_buckets() {
        let fam = minigraph_decompose(
            &[polyline(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)])],
            0.1,
            0.2,
        )
        .unwrap();
        assert_eq!(fam.minigraphs.len(), 2);
        let k = fam.minigraphs[0].fine_bucket;
        let l = fam.minigraphs[1].fine_bucket;
        let half = fam.fine_count / 2;
        assert!(
            k.abs_diff(l).min(fam.fine_count - k.abs_diff(l)).abs_diff(half) <= 1,
            "buckets {k}, {l} of {}",
            fam.fine_count
        );
    }

    #[test]
    fn polygon_circle_chops_into_about_fine_count_pieces() {
        let n = 720;
        let alpha = 0.1f64;
        let pts: Vec<(f64, f64)> = (0..=n)
            .map(|i| {
                let phi = core::f64::consts::TAU * i as f64 / n as f64;
                (math::cos(phi), math::sin(phi))
            })
            .collect();
        let fam = minigraph_decompose(&[polyline(&pts)], alpha, 0.2).unwrap();
        // Independent chopping oracle over the edge directions alone.
        let poly = polyline(&pts);
        let band = math::atan(alpha) + GEOM_EPS;
        let m2 = fam.fine_count as f64;
        let mut oracle = 0usize;
        let mut bucket: Option<Angle> = None;
        for e in poly.edges() {
            let dir = e.direction_angle();
            match bucket {
                Some(v) if dir.distance(v) <= band => {}
                _ => {
                    oracle += 1;
                    let k = math::round(dir.radians() / (PI / m2)) % m2;
                    bucket = Some(Angle::new(k * PI / m2));
                }
            }
        }
        let got = fam.minigraphs.len();
        assert_eq!(got, oracle, "greedy chop disagrees with the oracle");
        // The tangent sweeps two half-turns; each piece spans at most a
        // band of width 2 atan(alpha) around its bucket direction.
        assert!(
            got >= fam.fine_count && got <= 3 * fam.fine_count,
            "pieces {got} vs fine count {}",
            fam.fine_count
        );
    }

    #[test]
    fn bucket_partition_preserves_mass() {
        let fam = minigraph_decompose(&plus_curves(), 2e-4, 0.2).unwrap();
        let total: f64 = (0..fam.fine_count).map(|k| fam.fine_mass(k)).sum();
        assert!((total - 2.0).abs() < 1e-12);
        let coarse: f64 = (0..fam.coarse_count).map(|c| fam.coarse_mass(c)).sum();
        assert!((coarse - 2.0).abs() < 1e-12);
    }

    #[test]
    fn case_split_single_bucket_is_window() {
        let fam = minigraph_decompose(&[polyline(&[(-0.5, 0.0), (0.5, 0.0)])], 2e-4, 0.2).unwrap();
        let cfg = AnalysisConfig::desk();
        match case_split(&fam, 0.1, &cfg).unwrap() {
            CaseSplit::SingleWindow { .. } => {}
            other => panic!("expected a window, got {other:?}"),
        }
    }

    #[test]
    fn case_split_perpendicular_masses_is_pair() {
        let fam = minigraph_decompose(&plus_curves(), 2e-4, 0.2).unwrap();
        let cfg = AnalysisConfig::desk();
        match case_split(&fam, 0.1, &cfg).unwrap() {
            CaseSplit::TransversalPair { k, l } => {
                let d = circular_distance(k, l, fam.coarse_count);
                assert!(d >= 2, "pair ({k}, {l}) too close");
            }
            other => panic!("expected a pair, got {other:?}"),
        }
    }

    #[test]
    fn case_split_vacuous_threshold_is_window() {
        let fam = minigraph_decompose(&plus_curves(), 2e-4, 0.2).unwrap();
        let cfg = AnalysisConfig::desk();
        match case_split(&fam, 2.5, &cfg).unwrap() {
            CaseSplit::SingleWindow { start } => assert_eq!(start, 0),
            other => panic!("expected a vacuous window, got {other:?}"),
        }
    }

    #[test]
    fn case_split_rejects_insufficient_buckets() {
        let fam = minigraph_decompose(&plus_curves(), 2e-4, 0.2).unwrap();
        let mut cfg = AnalysisConfig::desk();
        cfg.c_sep = (fam.coarse_count as f64) / 2.0 + 1.0;
        assert!(matches!(
            case_split(&fam, 0.1, &cfg),
            Err(Error::InsufficientBuckets { .. })
        ));
    }

    #[test]
    fn witness_on_plus_sign() {
        let curves = plus_curves();
        let cfg = AnalysisConfig::desk();
        let fam = minigraph_decompose(&curves, cfg.alpha, cfg.kappa).unwrap();
        let set = SegmentSet::from_polylines(&curves, 1.0 + 1e-9).unwrap();
        let (k, l) = match case_split(&fam, 0.1, &cfg).unwrap() {
            CaseSplit::TransversalPair { k, l } => (k, l),
            other => panic!("expected a pair, got {other:?}"),
        };
        let w = build_witness(&fam, &set, k, l, &cfg).unwrap();
        let a = cfg.alpha;
        assert!(w.mass_k >= a * a * a / cfg.witness_c);
        assert!(w.mass_l >= a * a * a / cfg.witness_c);
        assert!(w.eta_lower > 0.0);
        // Certificate against the per-direction overlap oracle, on a grid
        // fine enough to resolve the narrow overlap support.
        let oracle_quad = QuadratureConfig {
            initial_panels: 1 << 14,
            max_panels: 1 << 17,
            tol_quad: 1e-10,
            ..Default::default()
        };
        let oracle =
            crate::pairs::pair_measure_oracle_sets(&w.set_k, &w.set_l, &oracle_quad).unwrap();
        assert!(
            (w.eta_lower - oracle).abs() <= 1e-4 * oracle.max(1e-12),
            "certificate {} vs oracle {oracle}",
            w.eta_lower
        );
        // Tube-avoidance membership, re-checked here.
        for p in &w.set_k {
            for q in [p.a(), p.b()] {
                assert!(!w.outer_tube_l.contains(q));
            }
        }
        for p in &w.set_l {
            for q in [p.a(), p.b()] {
                assert!(!w.outer_tube_k.contains(q));
            }
        }
        // Line directions stay near their bucket axes.
        let a_kappa = math::powf(a, cfg.kappa);
        assert!(w.line_k.direction_angle().distance(w.axis_k) <= a_kappa + 1e-9);
        assert!(w.line_l.direction_angle().distance(w.axis_l) <= a_kappa + 1e-9);
    }

    #[test]
    fn witness_on_transversal_pair_with_brute_force_incidence() {
        // Two long segments crossing at the origin at an eighth turn.
        let d = 0.5 / core::f64::consts::SQRT_2;
        let curves = vec![
            polyline(&[(-0.5, 0.0), (0.5, 0.0)]),
            polyline(&[(-d, -d), (d, d)]),
        ];
        let cfg = AnalysisConfig::desk();
        let fam = minigraph_decompose(&curves, cfg.alpha, cfg.kappa).unwrap();
        let set = SegmentSet::from_polylines(&curves, 1.0 + 1e-9).unwrap();
        // At desk constants an eighth turn still fits one window, so the
        // split would cover; drive the witness construction directly on
        // the two populated buckets (its own precondition is the pair).
        let populated: Vec<usize> =
            (0..fam.coarse_count).filter(|&c| fam.coarse_mass(c) > 0.0).collect();
        assert_eq!(populated.len(), 2);
        let (k, l) = (populated[0], populated[1]);
        assert!(circular_distance(k, l, fam.coarse_count) >= 2);
        let w = build_witness(&fam, &set, k, l, &cfg).unwrap();
        // Brute-force incidence over the chosen lines and all five balls:
        // each line may reach at most one opposite ball, and the chosen
        // pair reaches neither way.
        let reach = math::sqrt(cfg.alpha) + cfg.alpha;
        let k_hits = w
            .ball_centers_l
            .iter()
            .filter(|&&c| w.line_k.distance_to_point(c) <= reach)
            .count();
        let l_hits = w
            .ball_centers_k
            .iter()
            .filter(|&&c| w.line_l.distance_to_point(c) <= reach)
            .count();
        assert!(k_hits <= 1 && l_hits <= 1, "incidence rows not unique");
        assert!(
            w.line_k.distance_to_point(w.ball_centers_l[w.chosen.1]) > reach
                && w.line_l.distance_to_point(w.ball_centers_k[w.chosen.0]) > reach,
            "chosen pair has an incidence"
        );
        assert!(w.mass_k >= cfg.alpha.powi(3) / cfg.witness_c);
        assert!(w.eta_lower > 0.0);

        // Certificate against the per-direction overlap oracle. The
        // overlap support is only (diam_k + diam_l) / distance wide, so
        // the direction grid must start fine enough to see it.
        let oracle_quad = QuadratureConfig {
            initial_panels: 1 << 14,
            max_panels: 1 << 17,
            tol_quad: 1e-10,
            ..Default::default()
        };
        let oracle =
            crate::pairs::pair_measure_oracle_sets(&w.set_k, &w.set_l, &oracle_quad).unwrap();
        assert!(
            (w.eta_lower - oracle).abs() <= 1e-4 * oracle.max(1e-12),
            "certificate {} vs oracle {oracle}",
            w.eta_lower
        );

        // Explicit lower bound: the integrand is at least its minimum over
        // sampled point pairs, so the certificate is at least that minimum
        // times the two masses.
        let g1 = CurveWithTangents::from_segments(w.set_k.clone()).unwrap();
        let g2 = CurveWithTangents::from_segments(w.set_l.clone()).unwrap();
        let mut min_integrand = f64::INFINITY;
        for a in 0..8 {
            for b in 0..8 {
                let s1 = (a as f64 + 0.5) / 8.0 * g1.total_length();
                let s2 = (b as f64 + 0.5) / 8.0 * g2.total_length();
                min_integrand =
                    min_integrand.min(crate::pairs::pair_integrand(&g1, &g2, s1, s2).unwrap());
            }
        }
        let lower = 0.99 * min_integrand * w.mass_k * w.mass_l;
        assert!(
            w.eta_lower >= lower,
            "certificate {} below brute-force bound {lower}",
            w.eta_lower
        );
    }

    #[test]
    fn witness_fails_on_single_segment_bucket_pair() {
        let curves = vec![polyline(&[(-0.5, 0.0), (0.5, 0.0)])];
        let cfg = AnalysisConfig::desk();
        let fam = minigraph_decompose(&curves, cfg.alpha, cfg.kappa).unwrap();
        let set = SegmentSet::from_polylines(&curves, 1.0 + 1e-9).unwrap();
        let r = build_witness(&fam, &set, 0, fam.coarse_count / 2, &cfg);
        match r {
            Err(Error::WitnessFailed { stage, .. }) => {
                assert_eq!(stage, WitnessStage::BucketMass);
            }
            other => panic!("expected a bucket-mass failure, got {other:?}"),
        }
    }

    #[test]
    fn analyze_bent_segment_is_cover() {
        let t = 0.01f64;
        let curves = vec![polyline(&[
            (-0.5, 0.0),
            (0.0, 0.0),
            (0.5 * math::cos(t), 0.5 * math::sin(t)),
        ])];
        let report = analyze(&curves, 0.1, &AnalysisConfig::desk()).unwrap();
        match report.outcome {
            AnalysisOutcome::Cover { uncovered_mass, .. } => {
                assert!(uncovered_mass <= 0.1 + 2.0 * (1.0 / 2000.0) * 2.0, "uncovered {uncovered_mass}");
            }
            AnalysisOutcome::Defect { .. } => panic!("expected a cover"),
        }
    }

    #[test]
    fn analyze_plus_sign_is_defect_with_sound_certificate() {
        let report = analyze(&plus_curves(), 0.1, &AnalysisConfig::desk()).unwrap();
        match report.outcome {
            AnalysisOutcome::Defect { certificate, .. } => {
                assert!(certificate > 0.0);
                assert!(
                    certificate <= report.defect_measured + 2.0 * 1e-8,
                    "certificate {certificate} vs defect {}",
                    report.defect_measured
                );
            }
            AnalysisOutcome::Cover { .. } => panic!("expected a defect certificate"),
        }
        let analytic = 4.0 - 2.0 * core::f64::consts::SQRT_2;
        assert!((report.defect_measured - analytic).abs() < 1e-6);
    }

    #[test]
    fn analyze_empty_input() {
        let report = analyze(&[], 0.1, &AnalysisConfig::desk()).unwrap();
        assert_eq!(report.total_length, 0.0);
        match report.outcome {
            AnalysisOutcome::Cover { uncovered_mass, .. } => assert_eq!(uncovered_mass, 0.0),
            AnalysisOutcome::Defect { .. } => panic!("empty input cannot witness"),
        }
    }
}
