//! Seeded Monte-Carlo estimate of the push-forward density.
//!
//! Generator: ChaCha8 (a counter-based stream cipher core). The 256-bit key
//! is expanded from the 64-bit seed with `SeedableRng::seed_from_u64`, and
//! each shard `s` draws from its own 64-bit stream id `s`, so every shard is
//! an independent, addressable sequence. Samples are split over a fixed
//! number of shards ([`MC_SHARDS`]) with sizes depending only on `N`, so the
//! estimate is bit-identical for a given `(seed, N, model)` whatever the
//! thread scheduling.
//!
//! Estimator: rejection-sample the bounding box of the polytope, project the
//! accepted points, and count those falling in a half-open bin of width
//! `h_j = L_j * N^(-1/(k+2))` around each sample point per projected
//! coordinate `j` (`L_j` the width of the projected support). Then
//! `estimate = box_volume * count / (N * prod h_j)` with the binomial
//! standard error.

use super::{PushforwardError, ToricModel};
use crate::exact::Rational;
use crate::polytope::PolytopeError;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const MC_MIN_SAMPLES: u64 = 10_000;
pub const MC_SHARDS: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct MCEstimate {
    pub sample_points: Vec<Vec<Rational>>,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub bin_widths: Vec<f64>,
    pub seed: u64,
    pub n_samples: u64,
}

impl MCEstimate {
    /// CSV with columns `t, estimate, stderr, N, seed`. Multi-dimensional
    /// sample points are written with space-separated coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,estimate,stderr,N,seed\n");
        for ((t, e), s) in self.sample_points.iter().zip(&self.estimates).zip(&self.std_errors) {
            let t: Vec<String> = t.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{},{e:e},{s:e},{},{}\n", t.join(" "), self.n_samples, self.seed));
        }
        out
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("finite rational")
}

pub fn dh_mc_oracle(
    model: &ToricModel,
    n_samples: u64,
    seed: u64,
    sample_points: &[Vec<Rational>],
) -> Result<MCEstimate, PushforwardError> {
    if n_samples < MC_MIN_SAMPLES {
        return Err(PushforwardError::TooFewSamples { got: n_samples, min: MC_MIN_SAMPLES });
    }
    let k = model.k();
    if let Some(p) = sample_points.iter().find(|p| p.len() != k) {
        return Err(PushforwardError::SamplePointDim { got: p.len(), k });
    }
    let poly = model.polytope();
    if poly.is_empty() {
        return Err(PolytopeError::Empty.into());
    }
    let facets: Vec<(Vec<f64>, f64)> = poly
        .facets()?
        .iter()
        .map(|h| (h.normal_rational().iter().map(to_f64).collect(), to_f64(&h.bound)))
        .collect();
    let n = poly.dim();
    let verts: Vec<Vec<f64>> = poly.vertices().iter().map(|v| v.iter().map(to_f64).collect()).collect();
    let lo: Vec<f64> = (0..n).map(|j| verts.iter().map(|v| v[j]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|j| verts.iter().map(|v| v[j]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let proj: Vec<Vec<f64>> = model.projection().iter().map(|r| r.iter().map(|&c| c as f64).collect()).collect();

    let images: Vec<Vec<f64>> = verts.iter().map(|v| proj.iter().map(|r| dot(r, v)).collect()).collect();
    let shrink = (n_samples as f64).powf(-1.0 / (k as f64 + 2.0));
    let bin_widths: Vec<f64> = (0..k)
        .map(|j| {
            let a = images.iter().map(|v| v[j]).fold(f64::INFINITY, f64::min);
            let b = images.iter().map(|v| v[j]).fold(f64::NEG_INFINITY, f64::max);
            (b - a) * shrink
        })
        .collect();
    let centers: Vec<Vec<f64>> = sample_points.iter().map(|p| p.iter().map(to_f64).collect()).collect();

    let counts: Vec<u64> = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let size = n_samples / MC_SHARDS + u64::from(shard < n_samples % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut local = vec![0u64; centers.len()];
            let mut x = vec![0.0; n];
            for _ in 0..size {
                for j in 0..n {
                    x[j] = lo[j] + (hi[j] - lo[j]) * rng.gen::<f64>();
                }
                if !facets.iter().all(|(nv, b)| dot(nv, &x) >= *b) {
                    continue;
                }
                let y: Vec<f64> = proj.iter().map(|r| dot(r, &x)).collect();
                for (c, count) in centers.iter().zip(local.iter_mut()) {
                    let inside = (0..k).all(|j| {
                        let half = bin_widths[j] / 2.0;
                        y[j] >= c[j] - half && y[j] < c[j] + half
                    });
                    if inside {
                        *count += 1;
                    }
                }
            }
            local
        })
        .reduce(
            || vec![0u64; centers.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );

    let bin_volume: f64 = bin_widths.iter().product();
    let nf = n_samples as f64;
    let scale = box_volume / (nf * bin_volume);
    let estimates = counts.iter().map(|&c| scale * c as f64).collect();
    let std_errors = counts
        .iter()
        .map(|&c| {
            let p = c as f64 / nf;
            scale * (nf * p * (1.0 - p)).sqrt()
        })
        .collect();
    Ok(MCEstimate {
        sample_points: sample_points.to_vec(),
        estimates,
        std_errors,
        bin_widths,
        seed,
        n_samples,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::polytope::VRep;

    fn square_model() -> ToricModel {
        let sq = VRep::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        ToricModel::along(sq, &[1, 1]).unwrap()
    }

    #[test]
    fn square_midpoint_within_three_sigma() {
        let est = dh_mc_oracle(&square_model(), 1_000_000, 7, &[vec![rat(1, 2)]]).unwrap();
        assert!((est.estimates[0] - 0.5).abs() <= 3.0 * est.std_errors[0], "{est:?}");
    }

    #[test]
    fn deterministic_per_seed() {
        let pts = vec![vec![rat(1, 3)], vec![rat(3, 2)]];
        let a = dh_mc_oracle(&square_model(), 20_000, 42, &pts).unwrap();
        let b = dh_mc_oracle(&square_model(), 20_000, 42, &pts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv(), b.to_csv());
        let c = dh_mc_oracle(&square_model(), 20_000, 43, &pts).unwrap();
        assert_ne!(a.estimates, c.estimates);
    }

    #[test]
    fn errors() {
        let empty = ToricModel::along(VRep::empty(2), &[1, 1]).unwrap();
        assert!(dh_mc_oracle(&empty, 20_000, 1, &[vec![int(0)]]).is_err());
        assert!(matches!(
            dh_mc_oracle(&square_model(), 10, 1, &[vec![int(0)]]),
            Err(PushforwardError::TooFewSamples { .. })
        ));
        assert!(matches!(
            dh_mc_oracle(&square_model(), 20_000, 1, &[vec![int(0), int(1)]]),
            Err(PushforwardError::SamplePointDim { .. })
        ));
    }

    #[test]
    fn rank_two_square_is_uniform() {
        let sq = VRep::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let m = ToricModel::new(sq, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let est = dh_mc_oracle(&m, 200_000, 3, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert!((est.estimates[0] - 1.0).abs() <= 3.0 * est.std_errors[0]);
    }
}
