use super::Trajectory;
use crate::states::DensityMatrix;

/// A detected plateau: when it begins and the last sampled state on it.
#[derive(Clone, Debug)]
pub struct SteadyState {
    pub time: f64,
    pub state: DensityMatrix,
    pub negativity: f64,
}

/// Earliest sample `t*` such that at least `window` of trajectory follows it
/// and no later sample differs from the state at `t*` by more than `tol` in
/// any real or imaginary component.
///
/// Runs in one backward pass keeping the componentwise envelope of the
/// suffix.
pub fn detect_steady_state(traj: &Trajectory, window: f64, tol: f64) -> Option<SteadyState> {
    let n = traj.len();
    if n == 0 {
        return None;
    }
    let t_last = traj.times[n - 1];
    let width = traj.states[0].matrix().as_slice().len() * 2;
    let mut lo = vec![f64::INFINITY; width];
    let mut hi = vec![f64::NEG_INFINITY; width];
    let mut found = None;
    for k in (0..n).rev() {
        let mut deviation: f64 = 0.0;
        for (c, z) in traj.states[k].matrix().as_slice().iter().enumerate() {
            for (slot, v) in [(2 * c, z.re), (2 * c + 1, z.im)] {
                lo[slot] = lo[slot].min(v);
                hi[slot] = hi[slot].max(v);
                deviation = deviation.max(hi[slot] - v).max(v - lo[slot]);
            }
        }
        if deviation > tol {
            break;
        }
        if t_last - traj.times[k] >= window {
            found = Some(k);
        }
    }
    found.map(|k| SteadyState {
        time: traj.times[k],
        state: traj.states[n - 1].clone(),
        negativity: traj.negativities[n - 1],
    })
}
