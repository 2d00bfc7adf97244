use rand::Rng;

use super::geometry::{BoxGeometry, EdgeId, Vertex};
use crate::error::{Error, Result};
use crate::seed;

/// An open/closed assignment on the edges of a box. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    geometry: BoxGeometry,
    states: Vec<bool>,
    p: f64,
    seed: u64,
    stream: u64,
}

impl Config {
    /// Each edge independently open with probability `p`, drawn from stream 0 of `seed`.
    pub fn sample(geometry: BoxGeometry, p: f64, seed: u64) -> Result<Self> {
        Self::sample_stream(geometry, p, seed, 0)
    }

    /// As [`Config::sample`] but on an explicit generator stream.
    pub fn sample_stream(geometry: BoxGeometry, p: f64, seed: u64, stream: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidDensity(p));
        }
        let mut rng = seed::rng_for(seed, stream);
        let m = geometry.edge_count();
        let states = if p == 0.5 {
            // one random bit per edge
            let mut states = Vec::with_capacity(m);
            while states.len() < m {
                let word: u64 = rng.gen();
                let take = (m - states.len()).min(64);
                states.extend((0..take).map(|i| (word >> i) & 1 == 1));
            }
            states
        } else {
            (0..m).map(|_| rng.gen_bool(p)).collect()
        };
        Ok(Config { geometry, states, p, seed, stream })
    }

    /// Build from an explicit state vector (hand-made or enumerated configurations).
    pub fn from_states(geometry: BoxGeometry, states: Vec<bool>) -> Result<Self> {
        if states.len() != geometry.edge_count() {
            return Err(Error::StateLength { expected: geometry.edge_count(), got: states.len() });
        }
        Ok(Config { geometry, states, p: f64::NAN, seed: 0, stream: 0 })
    }

    /// Configuration whose edge `i` is open iff bit `i` of `mask` is set. Only for boxes
    /// with at most 64 edges.
    pub fn from_bits(geometry: BoxGeometry, mask: u64) -> Result<Self> {
        let m = geometry.edge_count();
        if m > 64 {
            return Err(Error::StateLength { expected: 64, got: m });
        }
        Self::from_states(geometry, (0..m).map(|i| (mask >> i) & 1 == 1).collect())
    }

    pub fn all_open(geometry: BoxGeometry) -> Self {
        let m = geometry.edge_count();
        Config { geometry, states: vec![true; m], p: 1.0, seed: 0, stream: 0 }
    }

    pub fn all_closed(geometry: BoxGeometry) -> Self {
        let m = geometry.edge_count();
        Config { geometry, states: vec![false; m], p: 0.0, seed: 0, stream: 0 }
    }

    /// Build by listing the open edges as vertex pairs; every other edge is closed.
    pub fn with_open_paths(geometry: BoxGeometry, paths: &[&[Vertex]]) -> Result<Self> {
        let mut states = vec![false; geometry.edge_count()];
        for path in paths {
            for w in path.windows(2) {
                let e = geometry
                    .edge_between(w[0], w[1])
                    .ok_or(Error::MalformedTargets("path steps must be lattice edges in the box"))?;
                states[e.index()] = true;
            }
        }
        Self::from_states(geometry, states)
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geometry
    }

    #[inline]
    pub fn is_open(&self, e: EdgeId) -> bool {
        self.states[e.index()]
    }

    pub fn states(&self) -> &[bool] {
        &self.states
    }

    /// Density used for sampling (NaN for hand-built configurations).
    pub fn density(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn open_count(&self) -> usize {
        self.states.iter().filter(|&&s| s).count()
    }

    /// Copy with some edge states replaced.
    pub fn with_edges(&self, changes: &[(EdgeId, bool)]) -> Self {
        let mut next = self.clone();
        for &(e, s) in changes {
            next.states[e.index()] = s;
        }
        next
    }

    /// Reflection x → -x of the whole configuration.
    pub fn mirrored(&self) -> Self {
        let g = self.geometry;
        let mut states = vec![false; self.states.len()];
        for e in g.edges() {
            let (a, b) = g.endpoints(e).expect("edge in range");
            let f = g
                .edge_between(Vertex::new(-a.x, a.y), Vertex::new(-b.x, b.y))
                .expect("reflection preserves the box");
            states[f.index()] = self.states[e.index()];
        }
        Config { states, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_densities() {
        let g = BoxGeometry::new(5).unwrap();
        let all = Config::sample(g, 1.0, 3).unwrap();
        assert_eq!(all.open_count(), g.edge_count());
        let none = Config::sample(g, 0.0, 3).unwrap();
        assert_eq!(none.open_count(), 0);
        assert!(Config::sample(g, 1.5, 3).is_err());
        assert!(Config::sample(g, -0.1, 3).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = BoxGeometry::new(16).unwrap();
        for p in [0.5, 0.3] {
            let a = Config::sample_stream(g, p, 99, 5).unwrap();
            let b = Config::sample_stream(g, p, 99, 5).unwrap();
            assert_eq!(a.states(), b.states());
            let c = Config::sample_stream(g, p, 99, 6).unwrap();
            assert_ne!(a.states(), c.states());
        }
    }

    #[test]
    fn critical_open_fraction_is_binomial() {
        // 10⁵ samples of B(1): 1.2·10⁶ Bernoulli(½) edges; 3σ = 3·√(m/4).
        let g = BoxGeometry::new(1).unwrap();
        let samples = 100_000u64;
        let open: usize = (0..samples)
            .map(|i| Config::sample_stream(g, 0.5, 11, i).unwrap().open_count())
            .sum();
        let m = (samples as usize * g.edge_count()) as f64;
        let dev = (open as f64 - m / 2.0).abs();
        assert!(dev < 3.0 * (m / 4.0).sqrt(), "deviation {dev}");
    }

    #[test]
    fn from_bits_round_trip() {
        let g = BoxGeometry::new(1).unwrap();
        let c = Config::from_bits(g, 0b1010_0000_0101).unwrap();
        assert!(c.is_open(EdgeId(0)) && !c.is_open(EdgeId(1)) && c.is_open(EdgeId(2)));
        assert_eq!(c.open_count(), 4);
        assert!(Config::from_bits(BoxGeometry::new(3).unwrap(), 0).is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let g = BoxGeometry::new(4).unwrap();
        let c = Config::sample(g, 0.5, 1).unwrap();
        assert_eq!(c.mirrored().mirrored().states(), c.states());
    }
}
