//! Content importance and ground-truth CVVP.
//!
//! A direction is important to a viewer when it lies strictly closer than
//! `th_dist` to the viewer's labeled direction. The CVVP of a frame is the
//! largest fraction of viewers a single direction can be important to.
//!
//! The maximum over the sphere is found exactly. If a set `S` of labels
//! can all be reached from one direction, the centre of the minimum
//! enclosing cap of `S` reaches them too, and that centre is either a label
//! itself, the midpoint of two labels, or the circumcentre of three. So
//! evaluating the importance at every such point yields the true maximum.
//! An optional regular grid is added on top as a cross-check.

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{angle_between, great_circle_distance, Vec3, ViewingDirection};
use crate::traces::LabelTraceSet;

pub const DEFAULT_TH_DIST: f64 = 30.0;
pub const DEFAULT_GRID_RES: f64 = 1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CvvpError {
    #[error("a frame needs at least one label")]
    NoLabels,
    #[error("th_dist {0} must lie strictly between 0 and 180 degrees")]
    InvalidThreshold(f64),
    #[error("grid resolution {0} must be positive")]
    InvalidGrid(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImportanceParams {
    th_dist: f64,
}

impl ImportanceParams {
    pub fn new(th_dist: f64) -> Result<Self, CvvpError> {
        if !(th_dist > 0.0 && th_dist < 180.0) {
            return Err(CvvpError::InvalidThreshold(th_dist));
        }
        Ok(Self { th_dist })
    }

    pub fn th_dist(&self) -> f64 {
        self.th_dist
    }
}

impl Default for ImportanceParams {
    fn default() -> Self {
        Self {
            th_dist: DEFAULT_TH_DIST,
        }
    }
}

/// How the maximization over the sphere is carried out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Search {
    /// Enclosing-cap candidates only.
    Exact,
    /// Enclosing-cap candidates plus a regular yaw/pitch grid.
    ExactWithGrid(f64),
    /// Grid only; a lower bound on the true maximum.
    GridOnly(f64),
}

impl Search {
    /// `grid_res <= 0` disables the grid.
    pub fn from_grid_res(grid_res: f64) -> Self {
        if grid_res > 0.0 {
            Search::ExactWithGrid(grid_res)
        } else {
            Search::Exact
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameCvvp {
    pub frame_id: usize,
    pub cvvp: f64,
    /// Number of viewers the best direction is important to.
    pub hits: usize,
    pub argmax_direction: ViewingDirection,
}

/// Distances within this many degrees of `th_dist` count as equal to it,
/// so labels exactly on the boundary are consistently out of reach.
pub const DISTANCE_EPS: f64 = 1e-9;

fn within(distance: f64, th_dist: f64) -> bool {
    distance < th_dist - DISTANCE_EPS
}

/// 1 if `view` is strictly closer than `th_dist` to `label`, else 0.
pub fn importance_for_viewer(
    view: ViewingDirection,
    label: ViewingDirection,
    params: &ImportanceParams,
) -> u8 {
    u8::from(within(great_circle_distance(view, label), params.th_dist))
}

/// Mean per-viewer importance of one direction over all labels.
pub fn overall_importance(
    view: ViewingDirection,
    labels: &[ViewingDirection],
    params: &ImportanceParams,
) -> Result<f64, CvvpError> {
    if labels.is_empty() {
        return Err(CvvpError::NoLabels);
    }
    let hits: usize = labels
        .iter()
        .map(|l| usize::from(importance_for_viewer(view, *l, params)))
        .sum();
    Ok(hits as f64 / labels.len() as f64)
}

fn count_hits(center: Vec3, labels: &[Vec3], th_dist: f64) -> usize {
    labels
        .iter()
        .filter(|l| within(angle_between(center, **l), th_dist))
        .count()
}

/// Candidate centres: labels, pair midpoints and triple circumcentres
/// (both antipodal solutions where the answer is ambiguous).
fn enclosing_cap_centers(labels: &[Vec3]) -> Vec<Vec3> {
    let n = labels.len();
    let mut out = Vec::with_capacity(n + n * n + n * n * n / 3);
    out.extend_from_slice(labels);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (labels[i], labels[j]);
            match (a + b).normalized() {
                Some(m) => {
                    out.push(m);
                    out.push(m.scale(-1.0));
                }
                None => {
                    // antipodal pair: every point of the bisecting great
                    // circle is a centre; any one of them serves
                    let helper = if a.x.abs() < 0.9 {
                        Vec3::new(1.0, 0.0, 0.0)
                    } else {
                        Vec3::new(0.0, 1.0, 0.0)
                    };
                    if let Some(p) = a.cross(helper).normalized() {
                        out.push(p);
                        out.push(p.scale(-1.0));
                    }
                }
            }
            for &c in &labels[j + 1..] {
                if let Some(nrm) = (b - a).cross(c - a).normalized() {
                    out.push(nrm);
                    out.push(nrm.scale(-1.0));
                }
            }
        }
    }
    out
}

/// Best `(hits, direction)` over a regular grid. Ties keep the first grid
/// point in yaw-major order.
fn grid_search(labels: &[Vec3], th_dist: f64, res: f64) -> (usize, Vec3) {
    let cos_th = th_dist.to_radians().cos();
    let yaw_steps = (360.0 / res).ceil() as usize;
    let pitch_steps = (180.0 / res).floor() as usize;
    let mut best = (0usize, Vec3::new(1.0, 0.0, 0.0));
    for yi in 0..yaw_steps {
        let yaw = -180.0 + yi as f64 * res;
        let (sy, cy) = yaw.to_radians().sin_cos();
        for pi in 0..=pitch_steps {
            let pitch = (-90.0 + pi as f64 * res).min(90.0);
            let (sp, cp) = pitch.to_radians().sin_cos();
            let v = Vec3::new(cp * cy, cp * sy, sp);
            let hits = labels
                .iter()
                .filter(|l| {
                    let d = v.dot(**l);
                    // exact test only where the fast one is ambiguous
                    if (d - cos_th).abs() < 1e-9 {
                        within(angle_between(v, **l), th_dist)
                    } else {
                        d > cos_th
                    }
                })
                .count();
            if hits > best.0 {
                best = (hits, v);
            }
        }
    }
    best
}

/// CVVP of one frame and a direction achieving it.
pub fn frame_cvvp(
    labels: &[ViewingDirection],
    params: &ImportanceParams,
    search: Search,
) -> Result<FrameCvvp, CvvpError> {
    if labels.is_empty() {
        return Err(CvvpError::NoLabels);
    }
    let th = params.th_dist;
    let vecs: Vec<Vec3> = labels.iter().map(|l| l.to_unit_vector()).collect();

    let mut best = (0usize, vecs[0]);
    let (use_exact, grid) = match search {
        Search::Exact => (true, None),
        Search::ExactWithGrid(r) => (true, Some(r)),
        Search::GridOnly(r) => (false, Some(r)),
    };
    if let Some(r) = grid {
        if !(r > 0.0 && r.is_finite()) {
            return Err(CvvpError::InvalidGrid(r));
        }
    }
    if use_exact {
        for c in enclosing_cap_centers(&vecs) {
            let hits = count_hits(c, &vecs, th);
            if hits > best.0 {
                best = (hits, c);
                if hits == vecs.len() {
                    break;
                }
            }
        }
    }
    if let Some(r) = grid {
        if best.0 < vecs.len() {
            let g = grid_search(&vecs, th, r);
            if g.0 > best.0 {
                best = g;
            }
        }
    }
    Ok(FrameCvvp {
        frame_id: 0,
        cvvp: best.0 as f64 / vecs.len() as f64,
        hits: best.0,
        argmax_direction: ViewingDirection::from_vector(best.1),
    })
}

/// Ground-truth CVVP for every frame of a labeled video, in frame order.
pub fn video_cvvp_series(
    labels: &LabelTraceSet,
    params: &ImportanceParams,
    search: Search,
) -> Result<Vec<FrameCvvp>, CvvpError> {
    (0..labels.frame_count())
        .into_par_iter()
        .map(|i| {
            frame_cvvp(labels.frame_labels(i), params, search).map(|mut f| {
                f.frame_id = i;
                f
            })
        })
        .collect()
}
