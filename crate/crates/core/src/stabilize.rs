//! Per-second averaging, normalization and minimum-duration binarization of
//! CVVP sequences.
//!
//! A schedule is a binary sequence made of alternating constant runs, each
//! at least `t_min` seconds long, that minimizes the mean squared error to
//! the normalized per-second CVVP. Two solvers are provided: an exhaustive
//! enumerator over `(first value, run lengths)` candidates and an `O(T^2)`
//! dynamic program. They share the objective and tie-break below, so they
//! return identical schedules.
//!
//! Ties between equal-error schedules are broken by preferring, in order:
//! fewer runs, a first value of 1, and the lexicographically latest list
//! of run boundaries.
//!
//! Objective values are accumulated in 2^-52 fixed point so that both
//! solvers see bit-identical costs regardless of summation order.

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

pub const DEFAULT_TH_CVVP: f64 = 0.6;
pub const DEFAULT_T_MIN: usize = 20;
pub const DEFAULT_CLIP_LEN: usize = 120;
/// Candidate budget for the exhaustive solver.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilizeError {
    #[error("series is empty")]
    EmptySeries,
    #[error("fps must be >= 1")]
    InvalidFps,
    #[error("value {value} at index {index} is outside {range}")]
    OutOfRange {
        index: usize,
        value: f64,
        range: &'static str,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{count} candidates exceed the brute-force budget of {budget}")]
    BudgetExceeded { count: String, budget: u128 },
}

pub type Result<T> = std::result::Result<T, StabilizeError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizeParams {
    pub th_cvvp: f64,
    pub t_min: usize,
    pub clip_len: usize,
}

impl StabilizeParams {
    pub fn new(th_cvvp: f64, t_min: usize, clip_len: usize) -> Result<Self> {
        let p = Self {
            th_cvvp,
            t_min,
            clip_len,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.th_cvvp > 0.0 && self.th_cvvp < 1.0) {
            return Err(StabilizeError::InvalidParams(format!(
                "th_cvvp {} must lie in (0, 1)",
                self.th_cvvp
            )));
        }
        if self.t_min < 1 {
            return Err(StabilizeError::InvalidParams("t_min must be >= 1".into()));
        }
        if self.clip_len < self.t_min {
            return Err(StabilizeError::InvalidParams(format!(
                "clip_len {} is shorter than t_min {}",
                self.clip_len, self.t_min
            )));
        }
        Ok(())
    }
}

impl Default for StabilizeParams {
    fn default() -> Self {
        Self {
            th_cvvp: DEFAULT_TH_CVVP,
            t_min: DEFAULT_T_MIN,
            clip_len: DEFAULT_CLIP_LEN,
        }
    }
}

/// Mean CVVP per second.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondSeries {
    values: Vec<f64>,
}

impl SecondSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(StabilizeError::EmptySeries);
        }
        check_range(&values, |v| v > 0.0 && v <= 1.0, "(0, 1]")?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Per-second series rescaled so that the CVVP threshold sits at 0.5.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSeries {
    values: Vec<f64>,
}

impl NormalizedSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(StabilizeError::EmptySeries);
        }
        check_range(&values, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn slice(&self, start: usize, end: usize) -> NormalizedSeries {
        NormalizedSeries {
            values: self.values[start..end].to_vec(),
        }
    }
}

fn check_range(values: &[f64], ok: impl Fn(f64) -> bool, range: &'static str) -> Result<()> {
    match values.iter().position(|v| !ok(*v)) {
        Some(index) => Err(StabilizeError::OutOfRange {
            index,
            value: values[index],
            range,
        }),
        None => Ok(()),
    }
}

/// One maximal constant run of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
    pub value: bool,
}

/// Per-second binary mode schedule; `true` means Auto-enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSchedule {
    values: Vec<bool>,
    pub t_min: usize,
    pub clip_len: usize,
    segments: Vec<Segment>,
}

impl ModeSchedule {
    pub fn from_values(values: Vec<bool>, t_min: usize, clip_len: usize) -> Self {
        let segments = runs(&values);
        Self {
            values,
            t_min,
            clip_len,
            segments,
        }
    }

    /// Build from a first value and run lengths.
    pub fn from_runs(first: bool, lengths: &[usize], t_min: usize, clip_len: usize) -> Self {
        let mut values = Vec::with_capacity(lengths.iter().sum());
        let mut v = first;
        for &len in lengths {
            values.extend(std::iter::repeat_n(v, len));
            v = !v;
        }
        Self::from_values(values, t_min, clip_len)
    }

    pub fn constant(value: bool, len: usize, t_min: usize, clip_len: usize) -> Self {
        Self::from_values(vec![value; len], t_min, clip_len)
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maximal runs over the whole schedule (runs may span clips).
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn bit(&self, second: usize) -> bool {
        self.values[second]
    }

    pub fn all(&self, value: bool) -> bool {
        self.values.iter().all(|v| *v == value)
    }

    /// Mean squared error against a normalized series of equal length,
    /// summed in time order.
    pub fn mse(&self, target: &NormalizedSeries) -> f64 {
        mse(&self.values, target.values())
    }

    /// Every run inside each clip is at least `t_min` long, except that a
    /// clip shorter than `t_min` must be a single run.
    pub fn is_feasible(&self) -> bool {
        self.values
            .chunks(self.clip_len.max(1))
            .all(|clip| clip_feasible(clip, self.t_min))
    }
}

fn clip_feasible(clip: &[bool], t_min: usize) -> bool {
    let r = runs(clip);
    if clip.len() < t_min {
        r.len() == 1
    } else {
        r.iter().all(|s| s.len >= t_min)
    }
}

fn runs(values: &[bool]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(seg) if seg.value == *v => seg.len += 1,
            _ => out.push(Segment {
                start: i,
                len: 1,
                value: *v,
            }),
        }
    }
    out
}

fn mse(bits: &[bool], target: &[f64]) -> f64 {
    debug_assert_eq!(bits.len(), target.len());
    let sum: f64 = bits
        .iter()
        .zip(target)
        .map(|(b, x)| {
            let d = f64::from(u8::from(*b)) - x;
            d * d
        })
        .sum();
    sum / target.len() as f64
}

/// Average frames `[t * fps, (t + 1) * fps)` into second `t`; a trailing
/// partial second averages whatever frames it has.
pub fn per_second_average(frames: &[f64], fps: u32) -> Result<SecondSeries> {
    if fps == 0 {
        return Err(StabilizeError::InvalidFps);
    }
    if frames.is_empty() {
        return Err(StabilizeError::EmptySeries);
    }
    let values = frames
        .chunks(fps as usize)
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect();
    SecondSeries::new(values)
}

/// Piecewise-linear monotone map with `0 -> 0`, `th_cvvp -> 0.5`, `1 -> 1`.
pub fn normalize(series: &SecondSeries, th_cvvp: f64) -> Result<NormalizedSeries> {
    if !(th_cvvp > 0.0 && th_cvvp < 1.0) {
        return Err(StabilizeError::InvalidParams(format!(
            "th_cvvp {th_cvvp} must lie in (0, 1)"
        )));
    }
    let values = series
        .values()
        .iter()
        .map(|&x| normalize_value(x, th_cvvp))
        .collect();
    NormalizedSeries::new(values)
}

pub fn normalize_value(x: f64, th: f64) -> f64 {
    let y = if x <= th {
        x * (0.5 / th)
    } else {
        0.5 + (x - th) * (0.5 / (1.0 - th))
    };
    y.clamp(0.0, 1.0)
}

/// Plain per-second thresholding without any duration constraint.
pub fn binarize(norm: &NormalizedSeries) -> Vec<bool> {
    norm.values().iter().map(|v| *v >= 0.5).collect()
}

/// Exact cost model shared by both solvers. Relative to the all-zero
/// schedule, setting second `t` to 1 changes the squared error by
/// `1 - 2 x_t`; those deltas are stored as integers scaled by 2^52.
struct Objective {
    // prefix[t] = sum of deltas over seconds [0, t)
    prefix: Vec<i128>,
}

const FIXED_ONE: f64 = (1u64 << 52) as f64;

impl Objective {
    fn new(norm: &[f64]) -> Self {
        let mut prefix = Vec::with_capacity(norm.len() + 1);
        let mut acc: i128 = 0;
        prefix.push(0);
        for &x in norm {
            let q = (x * FIXED_ONE).round() as i128;
            acc += (1i128 << 52) - 2 * q;
            prefix.push(acc);
        }
        Self { prefix }
    }

    fn run(&self, start: usize, end: usize, value: bool) -> i128 {
        if value {
            self.prefix[end] - self.prefix[start]
        } else {
            0
        }
    }

    fn schedule(&self, first: bool, lengths: &[usize]) -> i128 {
        let mut cost = 0;
        let mut start = 0;
        let mut v = first;
        for &len in lengths {
            cost += self.run(start, start + len, v);
            start += len;
            v = !v;
        }
        cost
    }
}

/// Ordering key of a candidate; smaller is better.
fn compare_candidates(
    a: (i128, bool, &[usize]),
    b: (i128, bool, &[usize]),
) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.2.len().cmp(&b.2.len()))
        // first value 1 wins
        .then(b.1.cmp(&a.1))
        // later boundaries win; comparing run lengths is equivalent
        .then(b.2.cmp(a.2))
}

/// Number of `(first value, run lengths)` candidates with every run at
/// least `t_min` long: `2 * sum_{m=1}^{T / t_min} C(T - m t_min + m - 1, m - 1)`.
/// `None` on overflow.
pub fn candidate_count(t: usize, t_min: usize) -> Option<u128> {
    if t_min == 0 {
        return None;
    }
    let mut total: u128 = 0;
    for m in 1..=t / t_min {
        let n = (t - m * t_min + m - 1) as u128;
        let k = (m - 1) as u128;
        total = total.checked_add(binomial(n, k)?)?;
    }
    total.checked_mul(2)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Visit every candidate: first value 1 then 0, run-length lists in
/// lexicographic order. Returns the number of candidates visited.
pub fn for_each_candidate<F>(t: usize, t_min: usize, mut visit: F) -> u128
where
    F: FnMut(bool, &[usize]),
{
    if t_min == 0 || t < t_min {
        return 0;
    }
    let mut stack = Vec::with_capacity(t / t_min + 1);
    let mut count = 0u128;
    for first in [true, false] {
        compositions(t, t_min, &mut stack, &mut |lengths| {
            count += 1;
            visit(first, lengths);
        });
    }
    count
}

fn compositions<F: FnMut(&[usize])>(rest: usize, t_min: usize, stack: &mut Vec<usize>, f: &mut F) {
    // the remainder either closes as one run or is split further
    for len in t_min..=rest {
        let remaining = rest - len;
        if remaining == 0 {
            stack.push(len);
            f(stack);
            stack.pop();
        } else if remaining >= t_min {
            stack.push(len);
            compositions(remaining, t_min, stack, f);
            stack.pop();
        }
    }
}

/// Result of the exhaustive solver.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOutcome {
    pub schedule: ModeSchedule,
    pub mse: f64,
    pub candidates: u128,
}

/// Exhaustive search over every feasible schedule of one clip.
///
/// When the clip is shorter than `t_min` only the two constant schedules
/// are feasible and `candidates` is 2.
pub fn stabilize_bruteforce(
    norm: &NormalizedSeries,
    params: &StabilizeParams,
    budget: u128,
) -> Result<BruteForceOutcome> {
    if params.t_min < 1 {
        return Err(StabilizeError::InvalidParams("t_min must be >= 1".into()));
    }
    let t = norm.len();
    let obj = Objective::new(norm.values());
    let clip_len = params.clip_len.max(t);
    if t < params.t_min {
        let (schedule, _) = degenerate(&obj, t, params.t_min, clip_len);
        return Ok(BruteForceOutcome {
            mse: schedule.mse(norm),
            schedule,
            candidates: 2,
        });
    }
    let expected = candidate_count(t, params.t_min);
    match expected {
        Some(c) if c <= budget => {}
        other => {
            return Err(StabilizeError::BudgetExceeded {
                count: other.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                budget,
            })
        }
    }
    let mut best: Option<(i128, bool, Vec<usize>)> = None;
    let candidates = for_each_candidate(t, params.t_min, |first, lengths| {
        let cost = obj.schedule(first, lengths);
        let better = match &best {
            None => true,
            Some((bc, bf, bl)) => {
                compare_candidates((cost, first, lengths), (*bc, *bf, bl)) == Ordering::Less
            }
        };
        if better {
            best = Some((cost, first, lengths.to_vec()));
        }
    });
    let (_, first, lengths) = best.expect("t >= t_min yields at least one candidate");
    let schedule = ModeSchedule::from_runs(first, &lengths, params.t_min, clip_len);
    Ok(BruteForceOutcome {
        mse: schedule.mse(norm),
        schedule,
        candidates,
    })
}

fn degenerate(obj: &Objective, t: usize, t_min: usize, clip_len: usize) -> (ModeSchedule, i128) {
    let ones = obj.run(0, t, true);
    // all-ones wins ties
    let first = ones <= 0;
    (
        ModeSchedule::constant(first, t, t_min, clip_len),
        if first { ones } else { 0 },
    )
}

#[derive(Clone, Copy)]
struct Suffix {
    cost: i128,
    runs: usize,
    // end of the first run starting here
    next: usize,
}

/// Optimal single-clip schedule by dynamic programming over run starts.
///
/// `best[s][v]` is the best schedule of seconds `[s, T)` whose first run
/// has value `v`. Candidate first runs are scanned from the longest down,
/// and only strictly better ones replace the incumbent, which realizes the
/// "latest boundary" tie-break.
pub fn stabilize_dp(norm: &NormalizedSeries, params: &StabilizeParams) -> Result<ModeSchedule> {
    if params.t_min < 1 {
        return Err(StabilizeError::InvalidParams("t_min must be >= 1".into()));
    }
    let t = norm.len();
    let t_min = params.t_min;
    let clip_len = params.clip_len.max(t);
    let obj = Objective::new(norm.values());
    if t < t_min {
        return Ok(degenerate(&obj, t, t_min, clip_len).0);
    }

    let mut best: Vec<[Option<Suffix>; 2]> = vec![[None, None]; t + 1];
    for s in (0..t).rev() {
        for v in [false, true] {
            let mut incumbent: Option<Suffix> = None;
            let mut end = t;
            while end >= s + t_min {
                let tail = if end == t {
                    Some((0, 0))
                } else if t - end >= t_min {
                    best[end][usize::from(!v)].map(|n| (n.cost, n.runs))
                } else {
                    None
                };
                if let Some((tail_cost, tail_runs)) = tail {
                    let cand = Suffix {
                        cost: obj.run(s, end, v) + tail_cost,
                        runs: tail_runs + 1,
                        next: end,
                    };
                    let better = match incumbent {
                        None => true,
                        Some(inc) => (cand.cost, cand.runs) < (inc.cost, inc.runs),
                    };
                    if better {
                        incumbent = Some(cand);
                    }
                }
                end -= 1;
            }
            best[s][usize::from(v)] = incumbent;
        }
    }

    let one = best[0][1].expect("t >= t_min");
    let zero = best[0][0].expect("t >= t_min");
    let first = (one.cost, one.runs) <= (zero.cost, zero.runs);
    let mut lengths = Vec::new();
    let mut s = 0;
    let mut v = first;
    while s < t {
        let next = best[s][usize::from(v)].expect("reachable state").next;
        lengths.push(next - s);
        s = next;
        v = !v;
    }
    Ok(ModeSchedule::from_runs(first, &lengths, t_min, clip_len))
}

/// Split into `clip_len` windows, solve each with [`stabilize_dp`] and
/// concatenate. Runs shorter than `t_min` can appear across clip
/// boundaries; runs inside a clip never do.
pub fn stabilize_video(norm: &NormalizedSeries, params: &StabilizeParams) -> Result<ModeSchedule> {
    params.validate()?;
    let t = norm.len();
    let starts: Vec<usize> = (0..t).step_by(params.clip_len).collect();
    let clips = starts
        .par_iter()
        .map(|&s| {
            let end = (s + params.clip_len).min(t);
            stabilize_dp(&norm.slice(s, end), params)
        })
        .collect::<Result<Vec<_>>>()?;
    let values = clips.iter().flat_map(|c| c.values().iter().copied()).collect();
    Ok(ModeSchedule::from_values(values, params.t_min, params.clip_len))
}

/// Full per-frame to per-second pipeline: average, normalize, stabilize.
pub fn schedule_from_frames(
    frames: &[f64],
    fps: u32,
    params: &StabilizeParams,
) -> Result<(NormalizedSeries, ModeSchedule)> {
    let seconds = per_second_average(frames, fps)?;
    let norm = normalize(&seconds, params.th_cvvp)?;
    let schedule = stabilize_video(&norm, params)?;
    Ok((norm, schedule))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(v: &[f64]) -> NormalizedSeries {
        NormalizedSeries::new(v.to_vec()).unwrap()
    }

    fn params(t_min: usize, clip_len: usize) -> StabilizeParams {
        StabilizeParams {
            th_cvvp: 0.6,
            t_min,
            clip_len,
        }
    }

    #[test]
    fn averaging() {
        let s = per_second_average(&[0.8; 60], 30).unwrap();
        assert!(s.values().iter().all(|v| (v - 0.8).abs() < 1e-12));
        let mut frames = vec![0.2; 30];
        frames.extend([1.0; 30]);
        let s = per_second_average(&frames, 30).unwrap();
        assert!((s.values()[0] - 0.2).abs() < 1e-12 && s.values()[1] == 1.0);
        assert_eq!(per_second_average(&[0.5; 45], 30).unwrap().values(), &[0.5, 0.5]);
        assert_eq!(per_second_average(&[], 30), Err(StabilizeError::EmptySeries));
        assert_eq!(per_second_average(&[0.5], 0), Err(StabilizeError::InvalidFps));
    }

    #[test]
    fn normalization_map() {
        assert_eq!(normalize_value(0.6, 0.6), 0.5);
        assert_eq!(normalize_value(0.0, 0.6), 0.0);
        assert_eq!(normalize_value(1.0, 0.6), 1.0);
        assert!((normalize_value(0.8, 0.6) - 0.75).abs() < 1e-12);
        assert!((normalize_value(0.3, 0.6) - 0.25).abs() < 1e-12);
        assert!(normalize(&SecondSeries::new(vec![0.5]).unwrap(), 1.0).is_err());
    }

    #[test]
    fn reference_candidate_count() {
        assert_eq!(candidate_count(120, 20), Some(49_882));
    }

    #[test]
    fn small_candidate_counts_by_hand() {
        // T=4, t_min=2: runs [4] and [2,2], times two first values
        assert_eq!(candidate_count(4, 2), Some(4));
        // T=5, t_min=2: [5], [2,3], [3,2]
        assert_eq!(candidate_count(5, 2), Some(6));
        assert_eq!(candidate_count(3, 4), Some(0));
        let mut seen = Vec::new();
        let n = for_each_candidate(5, 2, |f, l| seen.push((f, l.to_vec())));
        assert_eq!(n, 6);
        assert_eq!(seen[0], (true, vec![2, 3]));
        assert_eq!(seen[2], (true, vec![5]));
    }

    #[test]
    fn two_high_two_low() {
        let n = norm(&[0.9, 0.9, 0.1, 0.1]);
        let p = params(2, 4);
        let bf = stabilize_bruteforce(&n, &p, 1000).unwrap();
        assert_eq!(bf.schedule.values(), &[true, true, false, false]);
        assert_eq!(bf.candidates, 4);
        assert_eq!(stabilize_dp(&n, &p).unwrap(), bf.schedule);
    }

    #[test]
    fn constant_high_is_all_ones() {
        let n = norm(&[0.9; 10]);
        for t_min in 1..=10 {
            let s = stabilize_dp(&n, &params(t_min, 10)).unwrap();
            assert!(s.all(true));
        }
    }

    #[test]
    fn all_half_prefers_ones() {
        let n = norm(&[0.5; 8]);
        let s = stabilize_dp(&n, &params(3, 8)).unwrap();
        assert!(s.all(true));
        let bf = stabilize_bruteforce(&n, &params(3, 8), 1000).unwrap();
        assert_eq!(bf.schedule, s);
    }

    #[test]
    fn t_min_longer_than_clip() {
        let n = norm(&[0.2, 0.9, 0.1]);
        let s = stabilize_dp(&n, &params(5, 5)).unwrap();
        assert!(s.all(false));
        let bf = stabilize_bruteforce(&n, &params(5, 5), 10).unwrap();
        assert_eq!(bf.candidates, 2);
        assert_eq!(bf.schedule, s);
    }

    #[test]
    fn budget_is_enforced() {
        let n = norm(&[0.5; 40]);
        let err = stabilize_bruteforce(&n, &params(2, 40), 1000).unwrap_err();
        assert!(matches!(err, StabilizeError::BudgetExceeded { .. }));
    }

    #[test]
    fn oscillation_respects_t_min() {
        let v: Vec<f64> = (0..60).map(|i| if (i / 3) % 2 == 0 { 0.9 } else { 0.1 }).collect();
        let s = stabilize_dp(&norm(&v), &params(10, 60)).unwrap();
        assert!(s.segments().iter().all(|seg| seg.len >= 10));
        assert!(s.is_feasible());
    }

    #[test]
    fn video_splits_into_clips() {
        let s = stabilize_video(&norm(&[0.9; 240]), &params(20, 120)).unwrap();
        assert!(s.all(true));
        assert_eq!(s.len(), 240);

        let mut v = vec![0.9; 120];
        v.extend([0.1; 10]);
        let s = stabilize_video(&norm(&v), &params(20, 120)).unwrap();
        assert_eq!(s.len(), 130);
        assert!(s.values()[120..].iter().all(|b| !b));
        assert_eq!(s.segments().len(), 2);
        assert!(s.is_feasible());
    }

    #[test]
    fn params_validation() {
        assert!(StabilizeParams::new(0.6, 20, 120).is_ok());
        assert!(StabilizeParams::new(1.0, 20, 120).is_err());
        assert!(StabilizeParams::new(0.6, 0, 120).is_err());
        assert!(StabilizeParams::new(0.6, 30, 20).is_err());
    }

    #[test]
    fn series_ranges() {
        assert!(SecondSeries::new(vec![0.0]).is_err());
        assert!(SecondSeries::new(vec![]).is_err());
        assert!(NormalizedSeries::new(vec![1.2]).is_err());
        assert!(NormalizedSeries::new(vec![0.0, 1.0]).is_ok());
    }
}
