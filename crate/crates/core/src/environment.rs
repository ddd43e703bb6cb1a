//! Dynamic conductance environments: piecewise-constant, nonnegative edge
//! fields over a finite time window.
//!
//! Every concrete environment here (static, dynamical percolation, symmetric
//! exclusion, deterministic phase) is sampled from its stationary law, so
//! trajectories can stand in for stationary random environments on the
//! infinite lattice.
//!
//! Time shifts are tracked as a lazily applied offset so that the shift
//! algebra (`shift(t)` then `shift(-t)`, composition of shifts, interaction
//! with reversal) holds bit-exactly on representations, not merely up to
//! rounding.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, Lattice, LatticeSpec, SharedLattice, Vertex};
use crate::rng::RandomSeed;

/// Observation window `[start, end]`; trajectory values are cadlag with the
/// final value extending to the closed right endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeWindow {
    pub start: f64,
    pub end: f64,
}

impl TimeWindow {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start < end) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidArgument(format!("bad time window [{start}, {end}]")));
        }
        Ok(TimeWindow { start, end })
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        !(self.start < self.end)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn contains_window(&self, other: &TimeWindow) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// Piecewise-constant trajectory of a single edge over the host window.
///
/// `values[i]` holds on `[b_{i-1}, b_i)` where `b_{-1}` is the window start
/// and `b_{len}` the window end; breakpoints are strictly increasing and
/// interior to the window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeTrajectory {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl EdgeTrajectory {
    pub fn constant(v: f64) -> Self {
        EdgeTrajectory { breakpoints: Vec::new(), values: vec![v] }
    }

    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidEnvironment(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidEnvironment("breakpoints not strictly increasing".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidEnvironment("negative or non-finite value".into()));
        }
        Ok(EdgeTrajectory { breakpoints, values })
    }

    /// Value at raw time `t` (cadlag).
    pub fn value_at(&self, t: f64) -> f64 {
        // partition_point counts breakpoints <= t, which is exactly the
        // index of the piece containing t under cadlag rules
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        self.values[idx]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    /// Pieces `(a, b, value)` clipped to `[a0, b0]`, in raw time.
    pub fn pieces_in(&self, window: &TimeWindow, a0: f64, b0: f64) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        let mut a = window.start;
        for i in 0..self.values.len() {
            let b = if i < self.breakpoints.len() { self.breakpoints[i] } else { window.end };
            let lo = a.max(a0);
            let hi = b.min(b0);
            if lo < hi {
                out.push((lo, hi, self.values[i]));
            }
            a = b;
        }
        out
    }

    /// Exact integral of the trajectory over `[a0, b0]` in raw time.
    pub fn integral(&self, window: &TimeWindow, a0: f64, b0: f64) -> f64 {
        self.pieces_in(window, a0, b0).iter().map(|(a, b, v)| (b - a) * v).sum()
    }

    fn reversed(&self) -> EdgeTrajectory {
        let breakpoints: Vec<f64> = self.breakpoints.iter().rev().map(|b| -b).collect();
        let values: Vec<f64> = self.values.iter().rev().cloned().collect();
        EdgeTrajectory { breakpoints, values }
    }
}

/// A dynamic conductance field over a whole lattice and window.
#[derive(Debug, Clone)]
pub struct ConductanceTrajectory {
    lattice: SharedLattice,
    raw_window: TimeWindow,
    time_offset: f64,
    edges: Vec<EdgeTrajectory>,
}

/// One edge-value change in absolute time, for generator sweeps.
#[derive(Debug, Clone, Copy)]
pub struct ChangeEvent {
    pub time: f64,
    pub edge: EdgeId,
    pub value: f64,
}

impl ConductanceTrajectory {
    pub fn new(
        lattice: SharedLattice,
        window: TimeWindow,
        edges: Vec<EdgeTrajectory>,
    ) -> Result<Self> {
        if edges.len() != lattice.edge_count() {
            return Err(Error::InvalidEnvironment(format!(
                "{} edge trajectories for {} edges",
                edges.len(),
                lattice.edge_count()
            )));
        }
        for e in &edges {
            if let Some(&first) = e.breakpoints.first() {
                let last = *e.breakpoints.last().unwrap();
                if first <= window.start || last >= window.end {
                    return Err(Error::InvalidEnvironment(
                        "breakpoints not interior to window".into(),
                    ));
                }
            }
            if e.values.len() != e.breakpoints.len() + 1 {
                return Err(Error::InvalidEnvironment("piece count mismatch".into()));
            }
        }
        Ok(ConductanceTrajectory { lattice, raw_window: window, time_offset: 0.0, edges })
    }

    pub fn lattice(&self) -> &SharedLattice {
        &self.lattice
    }

    /// Observation window in absolute time.
    pub fn window(&self) -> TimeWindow {
        TimeWindow {
            start: self.raw_window.start + self.time_offset,
            end: self.raw_window.end + self.time_offset,
        }
    }

    fn to_raw(&self, t: f64) -> f64 {
        t - self.time_offset
    }

    /// Conductance of `edge` at absolute time `t`.
    pub fn value(&self, edge: EdgeId, t: f64) -> f64 {
        self.edges[edge.0].value_at(self.to_raw(t))
    }

    pub fn edge_trajectory(&self, edge: EdgeId) -> &EdgeTrajectory {
        &self.edges[edge.0]
    }

    /// Total conductance of all edges incident to `x` at absolute time `t`.
    pub fn total_conductance(&self, x: Vertex, t: f64) -> Result<f64> {
        let vid = self.lattice.vertex_id(x)?;
        Ok(self.total_conductance_at(vid, t))
    }

    pub fn total_conductance_at(&self, vid: usize, t: f64) -> f64 {
        self.lattice.incident_ids(vid).iter().map(|e| self.value(*e, t)).sum()
    }

    /// Pieces of `edge` over `[a, b]` in absolute time.
    pub fn edge_pieces(&self, edge: EdgeId, a: f64, b: f64) -> Vec<(f64, f64, f64)> {
        self.edges[edge.0]
            .pieces_in(&self.raw_window, self.to_raw(a), self.to_raw(b))
            .into_iter()
            .map(|(lo, hi, v)| (lo + self.time_offset, hi + self.time_offset, v))
            .collect()
    }

    /// Exact integral of `edge`'s conductance over `[a, b]` absolute.
    pub fn edge_integral(&self, edge: EdgeId, a: f64, b: f64) -> f64 {
        self.edges[edge.0].integral(&self.raw_window, self.to_raw(a), self.to_raw(b))
    }

    /// Per-edge values at the window start.
    pub fn initial_values(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.values[0]).collect()
    }

    /// All edge-value changes sorted by absolute time (ties by edge id).
    pub fn change_events(&self) -> Vec<ChangeEvent> {
        let mut events = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (k, &b) in e.breakpoints.iter().enumerate() {
                events.push(ChangeEvent {
                    time: b + self.time_offset,
                    edge: EdgeId(i),
                    value: e.values[k + 1],
                });
            }
        }
        events.sort_by(|a, b| a.time.partial_cmp(&b.time).unwrap().then(a.edge.cmp(&b.edge)));
        events
    }

    /// Upper bound for the total jump rate at any vertex and time; the
    /// uniformization rate.
    pub fn max_vertex_rate_bound(&self) -> f64 {
        let mut best: f64 = 0.0;
        for vid in 0..self.lattice.vertex_count() {
            let r: f64 =
                self.lattice.incident_ids(vid).iter().map(|e| self.edges[e.0].max_value()).sum();
            best = best.max(r);
        }
        best
    }

    /// Time reversal: the output at time `t` equals the input at `-t`.
    /// An exact involution on representations.
    pub fn reverse(&self) -> ConductanceTrajectory {
        ConductanceTrajectory {
            lattice: Arc::clone(&self.lattice),
            raw_window: TimeWindow { start: -self.raw_window.end, end: -self.raw_window.start },
            time_offset: -self.time_offset,
            edges: self.edges.iter().map(EdgeTrajectory::reversed).collect(),
        }
    }

    /// Space-time shift: the output at `(e, s)` equals the input at
    /// `(e - x, s - t)`. Spatial shifts require a torus.
    pub fn shift(&self, x: Vertex, t: f64) -> Result<ConductanceTrajectory> {
        let edges = if x.coords == [0, 0] {
            self.edges.clone()
        } else {
            if !self.lattice.is_torus() {
                return Err(Error::SpatialShiftOnBox);
            }
            let minus_x = Vertex::new(-x.coords[0], -x.coords[1]);
            let mut out = Vec::with_capacity(self.edges.len());
            for id in 0..self.edges.len() {
                let src = self.lattice.translate_edge(EdgeId(id), minus_x)?;
                out.push(self.edges[src.0].clone());
            }
            out
        };
        Ok(ConductanceTrajectory {
            lattice: Arc::clone(&self.lattice),
            raw_window: self.raw_window,
            time_offset: self.time_offset + t,
            edges,
        })
    }
}

impl PartialEq for ConductanceTrajectory {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.spec() == other.lattice.spec()
            && self.raw_window == other.raw_window
            && self.time_offset == other.time_offset
            && self.edges == other.edges
    }
}

/// Time reversal map on trajectories.
pub fn reverse_environment(traj: &ConductanceTrajectory) -> ConductanceTrajectory {
    traj.reverse()
}

/// Space-time shift map on trajectories.
pub fn shift_environment(
    traj: &ConductanceTrajectory,
    x: Vertex,
    t: f64,
) -> Result<ConductanceTrajectory> {
    traj.shift(x, t)
}

/// Serialized trajectory schema:
/// `{lattice, window, edges: [{edge_id, breakpoints, values}]}` with times
/// in absolute coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryJson {
    pub lattice: LatticeSpec,
    pub window: TimeWindow,
    pub edges: Vec<EdgeTrajectoryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTrajectoryJson {
    pub edge_id: usize,
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl ConductanceTrajectory {
    pub fn to_json(&self) -> TrajectoryJson {
        TrajectoryJson {
            lattice: self.lattice.spec(),
            window: self.window(),
            edges: (0..self.edges.len())
                .map(|i| EdgeTrajectoryJson {
                    edge_id: i,
                    breakpoints: self.edges[i]
                        .breakpoints
                        .iter()
                        .map(|b| b + self.time_offset)
                        .collect(),
                    values: self.edges[i].values.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &TrajectoryJson) -> Result<ConductanceTrajectory> {
        let lattice = Arc::new(json.lattice.build()?);
        if json.edges.len() != lattice.edge_count() {
            return Err(Error::InvalidEnvironment("edge count mismatch".into()));
        }
        let mut edges = vec![EdgeTrajectory::constant(0.0); lattice.edge_count()];
        for e in &json.edges {
            if e.edge_id >= lattice.edge_count() {
                return Err(Error::InvalidEnvironment(format!("bad edge id {}", e.edge_id)));
            }
            edges[e.edge_id] = EdgeTrajectory::new(e.breakpoints.clone(), e.values.clone())?;
        }
        ConductanceTrajectory::new(lattice, json.window, edges)
    }
}

fn default_phase_step() -> f64 {
    0.01
}

/// The stationary environment families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnvKind {
    /// Every edge carries the constant conductance `c`.
    Static { c: f64 },
    /// Each edge refreshes independently at rate `mu`; the new state is open
    /// (value 1) with probability `p`; the initial state is Bernoulli(p).
    DynamicalPercolation { p: f64, mu: f64 },
    /// Particles at density `density` perform symmetric exclusion at
    /// `hop_rate`; an edge has value `high` when at least one endpoint is
    /// occupied and `low` otherwise.
    Exclusion { density: f64, hop_rate: f64, low: f64, high: f64 },
    /// All edges share the value `amplitude * (1 + sin(t + theta)) / 2` with
    /// a uniform random phase, discretized to a piecewise-constant grid of
    /// the given step. Markovian and reversible but not strongly reversible.
    DeterministicPhase {
        amplitude: f64,
        #[serde(default = "default_phase_step")]
        step: f64,
    },
}

/// A sampleable environment: family, lattice, and observation window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentSpec {
    #[serde(flatten)]
    pub kind: EnvKind,
    pub lattice: LatticeSpec,
    pub window: TimeWindow,
}

impl EnvironmentSpec {
    pub fn validate(&self) -> Result<()> {
        TimeWindow::new(self.window.start, self.window.end)?;
        match self.kind {
            EnvKind::Static { c } => {
                if !(c >= 0.0) || !c.is_finite() {
                    return Err(Error::InvalidEnvironment(format!("static c = {c}")));
                }
            }
            EnvKind::DynamicalPercolation { p, mu } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidEnvironment(format!("percolation p = {p}")));
                }
                if !(mu > 0.0) || !mu.is_finite() {
                    return Err(Error::InvalidEnvironment(format!("refresh rate mu = {mu}")));
                }
            }
            EnvKind::Exclusion { density, hop_rate, low, high } => {
                if !(0.0..=1.0).contains(&density) {
                    return Err(Error::InvalidEnvironment(format!("density = {density}")));
                }
                if !(hop_rate > 0.0) || !hop_rate.is_finite() {
                    return Err(Error::InvalidEnvironment(format!("hop rate = {hop_rate}")));
                }
                if !(0.0 <= low && low <= high) || !high.is_finite() {
                    return Err(Error::InvalidEnvironment(format!(
                        "conductance levels low = {low}, high = {high}"
                    )));
                }
            }
            EnvKind::DeterministicPhase { amplitude, step } => {
                if !(amplitude >= 0.0) || !amplitude.is_finite() {
                    return Err(Error::InvalidEnvironment(format!("amplitude = {amplitude}")));
                }
                if !(step > 0.0) || !step.is_finite() {
                    return Err(Error::InvalidEnvironment(format!("phase step = {step}")));
                }
            }
        }
        Ok(())
    }

    pub fn build_lattice(&self) -> Result<SharedLattice> {
        Ok(Arc::new(self.lattice.build()?))
    }
}

fn exp_sample(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    loop {
        let u: f64 = rng.gen::<f64>();
        let e = -(1.0 - u).ln() / rate;
        if e > 0.0 {
            return e;
        }
    }
}

// Stream tags under an environment seed.
const STREAM_PER_EDGE: u64 = 0;
const STREAM_GLOBAL: u64 = 1;

/// Draws trajectories from the stationary law of an [`EnvironmentSpec`].
///
/// Families whose edges are independent (or deterministic given a shared
/// phase) can be sampled edge by edge, on demand; the per-edge trajectory is
/// a pure function of `(spec, seed, edge_id)`, so lazily sampled fields
/// agree exactly with fully materialized ones.
pub struct EnvironmentSampler {
    kind: EnvKind,
    lattice: SharedLattice,
    window: TimeWindow,
    seed: RandomSeed,
    /// Shared phase for `DeterministicPhase`, drawn once per sampler seed.
    theta: f64,
}

impl EnvironmentSampler {
    pub fn new(spec: &EnvironmentSpec, seed: RandomSeed) -> Result<Self> {
        spec.validate()?;
        let lattice = spec.build_lattice()?;
        let theta = match spec.kind {
            EnvKind::DeterministicPhase { .. } => {
                seed.child(STREAM_GLOBAL).rng().gen::<f64>() * TAU
            }
            _ => 0.0,
        };
        Ok(EnvironmentSampler { kind: spec.kind, lattice, window: spec.window, seed, theta })
    }

    pub fn lattice(&self) -> &SharedLattice {
        &self.lattice
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }

    pub fn kind(&self) -> EnvKind {
        self.kind
    }

    /// Whether per-edge lazy sampling is available (everything except the
    /// exclusion process, whose edges are coupled through the particles).
    pub fn supports_lazy(&self) -> bool {
        !matches!(self.kind, EnvKind::Exclusion { .. })
    }

    /// Trajectory of a single edge. Requires [`Self::supports_lazy`].
    pub fn edge_trajectory(&self, edge: EdgeId) -> EdgeTrajectory {
        match self.kind {
            EnvKind::Static { c } => EdgeTrajectory::constant(c),
            EnvKind::DynamicalPercolation { p, mu } => {
                let mut rng = self.seed.child(STREAM_PER_EDGE).child(edge.0 as u64).rng();
                let mut breakpoints = Vec::new();
                let mut values = vec![if rng.gen::<f64>() < p { 1.0 } else { 0.0 }];
                let mut t = self.window.start;
                loop {
                    t += exp_sample(&mut rng, mu);
                    if t >= self.window.end {
                        break;
                    }
                    breakpoints.push(t);
                    values.push(if rng.gen::<f64>() < p { 1.0 } else { 0.0 });
                }
                EdgeTrajectory { breakpoints, values }
            }
            EnvKind::DeterministicPhase { amplitude, step } => {
                let mut breakpoints = Vec::new();
                let mut values = Vec::new();
                let mut t = self.window.start;
                loop {
                    values.push(amplitude * (1.0 + (t + self.theta).sin()) / 2.0);
                    t += step;
                    if t >= self.window.end {
                        break;
                    }
                    breakpoints.push(t);
                }
                EdgeTrajectory { breakpoints, values }
            }
            EnvKind::Exclusion { .. } => {
                unreachable!("exclusion environments cannot be sampled per edge")
            }
        }
    }

    /// Materialize the whole field.
    pub fn sample_all(&self) -> ConductanceTrajectory {
        let edges = match self.kind {
            EnvKind::Exclusion { density, hop_rate, low, high } => {
                self.sample_exclusion(density, hop_rate, low, high).0
            }
            _ => {
                (0..self.lattice.edge_count()).map(|i| self.edge_trajectory(EdgeId(i))).collect()
            }
        };
        ConductanceTrajectory {
            lattice: Arc::clone(&self.lattice),
            raw_window: self.window,
            time_offset: 0.0,
            edges,
        }
    }

    /// Stirring construction for the symmetric exclusion process: every edge
    /// rings at `hop_rate` and swaps the endpoint contents. Product
    /// Bernoulli(density) occupancy is stationary under this dynamics and
    /// the particle count is conserved. Returns the per-edge conductance
    /// trajectories plus the occupancy history (for conservation checks).
    fn sample_exclusion(
        &self,
        density: f64,
        hop_rate: f64,
        low: f64,
        high: f64,
    ) -> (Vec<EdgeTrajectory>, Vec<(f64, Vec<bool>)>) {
        let lat = &self.lattice;
        let mut rng = self.seed.child(STREAM_GLOBAL).rng();
        let mut occupied: Vec<bool> =
            (0..lat.vertex_count()).map(|_| rng.gen::<f64>() < density).collect();
        let edge_value = |occ: &[bool], e: usize| -> f64 {
            let (a, b) = lat.endpoints_of(EdgeId(e));
            if occ[a] || occ[b] {
                high
            } else {
                low
            }
        };
        let mut edges: Vec<EdgeTrajectory> = (0..lat.edge_count())
            .map(|e| EdgeTrajectory::constant(edge_value(&occupied, e)))
            .collect();
        let mut history = vec![(self.window.start, occupied.clone())];
        let total_rate = hop_rate * lat.edge_count() as f64;
        let mut t = self.window.start;
        loop {
            t += exp_sample(&mut rng, total_rate);
            if t >= self.window.end {
                break;
            }
            let swap = EdgeId(rng.gen_range(0..lat.edge_count()));
            let (a, b) = lat.endpoints_of(swap);
            if occupied[a] == occupied[b] {
                continue; // swap changes nothing
            }
            occupied.swap(a, b);
            history.push((t, occupied.clone()));
            for vid in [a, b] {
                for &e in lat.incident_ids(vid) {
                    let v = edge_value(&occupied, e.0);
                    let traj = &mut edges[e.0];
                    if *traj.values.last().unwrap() != v {
                        traj.breakpoints.push(t);
                        traj.values.push(v);
                    }
                }
            }
        }
        (edges, history)
    }
}

/// Draw a stationary trajectory for `spec`.
pub fn sample_environment(
    spec: &EnvironmentSpec,
    seed: RandomSeed,
) -> Result<ConductanceTrajectory> {
    Ok(EnvironmentSampler::new(spec, seed)?.sample_all())
}

/// A random piecewise-constant field with independent uniform values; not a
/// stationary family, but useful for exercising kernel identities on
/// arbitrary inhomogeneous environments.
pub fn random_piecewise_trajectory(
    lattice: SharedLattice,
    window: TimeWindow,
    max_pieces_per_edge: usize,
    max_value: f64,
    seed: RandomSeed,
) -> ConductanceTrajectory {
    let mut edges = Vec::with_capacity(lattice.edge_count());
    for e in 0..lattice.edge_count() {
        let mut rng = seed.child(e as u64).rng();
        let pieces = rng.gen_range(1..=max_pieces_per_edge.max(1));
        let mut breakpoints: Vec<f64> =
            (0..pieces - 1).map(|_| window.start + rng.gen::<f64>() * window.len()).collect();
        breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breakpoints.dedup();
        let values: Vec<f64> =
            (0..breakpoints.len() + 1).map(|_| rng.gen::<f64>() * max_value).collect();
        edges.push(EdgeTrajectory { breakpoints, values });
    }
    ConductanceTrajectory { lattice, raw_window: window, time_offset: 0.0, edges }
}

/// How an infinitesimal p-norm was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum NormMethod {
    Analytic,
    MonteCarlo { epsilon: f64, replicas: u64, half_epsilon_value: f64 },
}

/// The infinitesimal p-norm of an environment: the L^p size of the total
/// conductance at a vertex over shrinking time intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvNorm {
    pub p: usize,
    pub value: f64,
    #[serde(flatten)]
    pub method: NormMethod,
    pub ci_halfwidth: f64,
}

/// Closed-form p-norms for the built-in families, `p` in `{1, 2}`.
///
/// All families here are bounded and cadlag, so the norm equals the L^p norm
/// of the total conductance at the origin at a fixed time.
pub fn infinitesimal_norm(spec: &EnvironmentSpec, p: usize) -> Result<EnvNorm> {
    if p < 1 {
        return Err(Error::InvalidNormOrder);
    }
    spec.validate()?;
    let deg = 2.0 * spec.lattice.dimension as f64;
    let value = match (spec.kind, p) {
        (EnvKind::Static { c }, _) => deg * c,
        (EnvKind::DynamicalPercolation { p: open, .. }, 1) => deg * open,
        (EnvKind::DynamicalPercolation { p: open, .. }, 2) => {
            // second moment of Binomial(deg, open)
            (deg * open + deg * (deg - 1.0) * open * open).sqrt()
        }
        (EnvKind::Exclusion { density, low, high, .. }, 1) => {
            let open = 1.0 - (1.0 - density) * (1.0 - density);
            deg * (low + (high - low) * open)
        }
        (EnvKind::Exclusion { density, low, high, .. }, 2) => {
            // condition on the origin's occupancy: if occupied, all incident
            // edges are high; otherwise each edge is high independently when
            // its other endpoint is occupied
            let a = deg * low;
            let b = high - low;
            let k1 = deg * density;
            let k2 = deg * density * (1.0 - density) + k1 * k1;
            let m2_unocc = a * a + 2.0 * a * b * k1 + b * b * k2;
            let m2 = density * (deg * high) * (deg * high) + (1.0 - density) * m2_unocc;
            m2.sqrt()
        }
        (EnvKind::DeterministicPhase { amplitude, .. }, 1) => deg * amplitude / 2.0,
        (EnvKind::DeterministicPhase { amplitude, .. }, 2) => {
            // E[((1 + sin)/2)^2] = 3/8 over a uniform phase
            deg * amplitude * (3.0f64 / 8.0).sqrt()
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no closed form for p = {p}; use the Monte Carlo estimator"
            )))
        }
    };
    Ok(EnvNorm { p, value, method: NormMethod::Analytic, ci_halfwidth: 0.0 })
}

/// Monte Carlo estimate of the infinitesimal p-norm at a finite `epsilon`:
/// `(1/eps) * E[(int_0^eps total conductance at origin)^p]^(1/p)`, with a
/// delta-method 3-SE halfwidth and a sensitivity value at `epsilon / 2`.
pub fn infinitesimal_norm_mc(
    spec: &EnvironmentSpec,
    p: usize,
    epsilon: f64,
    replicas: u64,
    seed: RandomSeed,
) -> Result<EnvNorm> {
    if p < 1 {
        return Err(Error::InvalidNormOrder);
    }
    if !(epsilon > 0.0) || replicas == 0 {
        return Err(Error::InvalidArgument("epsilon and replicas must be positive".into()));
    }
    spec.validate()?;
    let mut small = spec.clone();
    small.window = TimeWindow::new(0.0, epsilon)?;
    let origin = Vertex::origin();

    let estimate = |eps: f64, tag: u64| -> Result<(f64, f64)> {
        let mut moments = Vec::with_capacity(replicas as usize);
        for r in 0..replicas {
            let traj = sample_environment(&small, seed.child(tag).child(r))?;
            let vid = traj.lattice().vertex_id(origin)?;
            let integral: f64 = traj
                .lattice()
                .incident_ids(vid)
                .iter()
                .map(|&e| traj.edge_integral(e, 0.0, eps))
                .sum();
            moments.push(integral.powi(p as i32));
        }
        let (mean, se) = crate::stats::mean_se(&moments);
        let value = mean.powf(1.0 / p as f64) / eps;
        let hw = if mean > 0.0 {
            3.0 * se * mean.powf(1.0 / p as f64 - 1.0) / (p as f64 * eps)
        } else {
            0.0
        };
        Ok((value, hw))
    };

    let (value, ci_halfwidth) = estimate(epsilon, 0)?;
    let (half_value, _) = estimate(epsilon / 2.0, 1)?;
    Ok(EnvNorm {
        p,
        value,
        method: NormMethod::MonteCarlo { epsilon, replicas, half_epsilon_value: half_value },
        ci_halfwidth,
    })
}
