//! Information measures over discrete distributions and symbol grids, plus
//! enumeration of binary-property semantic spaces.
//!
//! Logarithms are base 2 throughout and `0 · log 0` is taken as 0.

use std::collections::HashMap;

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// Largest property count `enumerate_semantic_space` accepts.
pub const MAX_PROPERTIES: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no probabilities".into()));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "p[{i}] = {p} is not a non-negative finite value"
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Normalizes non-negative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) || !(total > 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be non-negative with a positive sum".into(),
            ));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDistribution("no probabilities".into()));
        }
        Ok(Self {
            probs: vec![1.0 / k as f64; k],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Shannon entropy in bits.
pub fn entropy(d: &Distribution) -> f64 {
    let h: f64 = d.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    // Rounding can push a certain outcome to -0.0 or a hair below zero.
    h.max(0.0)
}

pub fn max_entropy(d: &Distribution) -> f64 {
    (d.len() as f64).log2()
}

/// `1 − H/Hmax`: 0 for the uniform distribution, 1 for a certain outcome.
pub fn redundancy(d: &Distribution) -> Result<f64> {
    if d.len() < 2 {
        return Err(Error::UndefinedRedundancy(d.len()));
    }
    Ok((1.0 - entropy(d) / max_entropy(d)).clamp(0.0, 1.0))
}

/// Raster of discrete symbols in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolGrid {
    width: usize,
    height: usize,
    alphabet_size: usize,
    cells: Vec<u32>,
}

impl SymbolGrid {
    pub fn new(width: usize, height: usize, alphabet_size: usize, cells: Vec<u32>) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidGrid("alphabet size must be at least 1".into()));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidGrid(format!(
                "{} cells for a {width}x{height} grid",
                cells.len()
            )));
        }
        if let Some((i, &c)) = cells.iter().enumerate().find(|(_, &c)| c as usize >= alphabet_size) {
            return Err(Error::InvalidGrid(format!(
                "cell ({}, {}) holds symbol {c}, outside alphabet of size {alphabet_size}",
                i % width.max(1),
                i / width.max(1)
            )));
        }
        Ok(Self {
            width,
            height,
            alphabet_size,
            cells,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.cells[y * self.width + x]
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Relative frequency of each symbol, indexed by symbol id.
pub fn grid_symbol_distribution(g: &SymbolGrid) -> Result<Distribution> {
    if g.is_empty() {
        return Err(Error::InvalidGrid("grid has no cells".into()));
    }
    let mut counts = vec![0usize; g.alphabet_size];
    for &c in &g.cells {
        counts[c as usize] += 1;
    }
    let n = g.cells.len() as f64;
    Ok(Distribution {
        probs: counts.into_iter().map(|c| c as f64 / n).collect(),
    })
}

/// Entropy of the distribution of distinct block contents when the grid is
/// tiled by non-overlapping `block_w × block_h` blocks.
pub fn block_entropy(g: &SymbolGrid, block_w: usize, block_h: usize) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::InvalidGrid("grid has no cells".into()));
    }
    if block_w == 0 || block_h == 0 || !g.width.is_multiple_of(block_w) || !g.height.is_multiple_of(block_h) {
        return Err(Error::Tiling {
            block_w,
            block_h,
            width: g.width,
            height: g.height,
        });
    }
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut tile = Vec::with_capacity(block_w * block_h);
    for by in (0..g.height).step_by(block_h) {
        for bx in (0..g.width).step_by(block_w) {
            tile.clear();
            for y in by..by + block_h {
                let row = y * g.width;
                tile.extend_from_slice(&g.cells[row + bx..row + bx + block_w]);
            }
            *counts.entry(tile.clone()).or_default() += 1;
        }
    }
    let total = ((g.width / block_w) * (g.height / block_h)) as f64;
    // Sort so the summation order (and therefore the last bits) is fixed.
    let mut freqs: Vec<usize> = counts.into_values().collect();
    freqs.sort_unstable();
    let h: f64 = freqs
        .into_iter()
        .map(|c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    Ok(h.max(0.0))
}

/// One literal per property: the term (bit 0) or its antonym (bit 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticSpace {
    pub properties: Vec<(String, String)>,
    pub descriptions: Vec<Vec<String>>,
}

impl SemanticSpace {
    /// Number of state descriptions, `2^n`.
    pub fn q(&self) -> usize {
        self.descriptions.len()
    }
}

/// All `2^n` conjunctions of `n` binary properties. Entry `m` takes the
/// antonym of property `i` when bit `n-1-i` of `m` is set, so the first
/// property varies slowest.
pub fn enumerate_semantic_space(properties: &[(String, String)]) -> Result<SemanticSpace> {
    let n = properties.len();
    if n > MAX_PROPERTIES {
        return Err(Error::EnumerationTooLarge(n));
    }
    let q = 1usize << n;
    let descriptions = (0..q)
        .map(|m| {
            properties
                .iter()
                .enumerate()
                .map(|(i, (term, antonym))| {
                    if (m >> (n - 1 - i)) & 1 == 0 {
                        term.clone()
                    } else {
                        antonym.clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(SemanticSpace {
        properties: properties.to_vec(),
        descriptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    fn naive_entropy(p: &[f64]) -> f64 {
        let mut h = 0.0;
        for &x in p {
            if x > 0.0 {
                h -= x * x.ln() / std::f64::consts::LN_2;
            }
        }
        h
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&d(&[0.5, 0.5])), 1.0);
        assert_eq!(entropy(&d(&[1.0])), 0.0);
        let p = [0.5, 0.25, 0.25];
        assert!((entropy(&d(&p)) - naive_entropy(&p)).abs() < 1e-12);
        assert!((entropy(&d(&p)) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn invalid_distributions() {
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::new(vec![0.6, 0.6]).is_err());
        assert!(Distribution::new(vec![1.5, -0.5]).is_err());
        assert!(Distribution::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn redundancy_examples() {
        assert!(redundancy(&Distribution::uniform(4).unwrap()).unwrap().abs() < 1e-12);
        assert_eq!(redundancy(&d(&[1.0, 0.0, 0.0, 0.0])).unwrap(), 1.0);
        let expected = 1.0 - 1.5 / 3f64.log2();
        let r = redundancy(&d(&[0.5, 0.25, 0.25])).unwrap();
        assert!((r - expected).abs() < 1e-12);
        assert!((r - 0.0536).abs() < 5e-5);
        assert!(matches!(redundancy(&d(&[1.0])), Err(Error::UndefinedRedundancy(1))));
    }

    #[test]
    fn grid_distribution_examples() {
        let g = SymbolGrid::new(2, 2, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(grid_symbol_distribution(&g).unwrap().probs(), &[0.5, 0.5]);
        let g = SymbolGrid::new(3, 1, 3, vec![2, 2, 2]).unwrap();
        assert_eq!(grid_symbol_distribution(&g).unwrap().probs(), &[0.0, 0.0, 1.0]);

        let cells = vec![0, 1, 0, 2, 0, 0, 1, 2, 2, 0, 0, 1, 0, 2, 1, 0];
        let mut hist = [0usize; 3];
        for &c in &cells {
            hist[c as usize] += 1;
        }
        assert_eq!(hist, [8, 4, 4]);
        let g = SymbolGrid::new(4, 4, 3, cells).unwrap();
        assert_eq!(grid_symbol_distribution(&g).unwrap().probs(), &[0.5, 0.25, 0.25]);
    }

    #[test]
    fn grid_validation() {
        assert!(SymbolGrid::new(2, 2, 2, vec![0, 1, 0]).is_err());
        assert!(SymbolGrid::new(2, 1, 2, vec![0, 2]).is_err());
        assert!(SymbolGrid::new(1, 1, 0, vec![0]).is_err());
        let empty = SymbolGrid::new(0, 0, 1, vec![]).unwrap();
        assert!(grid_symbol_distribution(&empty).is_err());
    }

    #[test]
    fn block_entropy_examples() {
        let zeros = SymbolGrid::new(4, 4, 2, vec![0; 16]).unwrap();
        assert_eq!(block_entropy(&zeros, 2, 2).unwrap(), 0.0);

        let checker: Vec<u32> = (0..16).map(|i| ((i % 4 + i / 4) % 2) as u32).collect();
        let checker = SymbolGrid::new(4, 4, 2, checker).unwrap();
        // Every 2x2 tile at even offsets reads [0,1,1,0].
        assert_eq!(block_entropy(&checker, 2, 2).unwrap(), 0.0);
        assert_eq!(block_entropy(&checker, 1, 1).unwrap(), 1.0);

        let four = SymbolGrid::new(2, 2, 4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(block_entropy(&four, 1, 1).unwrap(), 2.0);
    }

    #[test]
    fn block_must_tile() {
        let g = SymbolGrid::new(4, 4, 2, vec![0; 16]).unwrap();
        assert!(matches!(block_entropy(&g, 3, 2), Err(Error::Tiling { .. })));
        assert!(matches!(block_entropy(&g, 0, 2), Err(Error::Tiling { .. })));
    }

    #[test]
    fn semantic_space_examples() {
        let props = |pairs: &[(&str, &str)]| -> Vec<(String, String)> {
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        let three = enumerate_semantic_space(&props(&[
            ("red", "blue"),
            ("sweet", "bitter"),
            ("attainable", "unattainable"),
        ]))
        .unwrap();
        assert_eq!(three.q(), 8);
        assert_eq!(three.descriptions[0], ["red", "sweet", "attainable"]);
        assert_eq!(three.descriptions[1], ["red", "sweet", "unattainable"]);
        assert_eq!(three.descriptions[7], ["blue", "bitter", "unattainable"]);

        let none = enumerate_semantic_space(&[]).unwrap();
        assert_eq!(none.q(), 1);
        assert!(none.descriptions[0].is_empty());

        let four = enumerate_semantic_space(&props(&[("a", "na"), ("b", "nb"), ("c", "nc"), ("d", "nd")])).unwrap();
        // Brute force: every subset of antonyms appears exactly once.
        let mut seen = std::collections::HashSet::new();
        for a in [false, true] {
            for b in [false, true] {
                for c in [false, true] {
                    for dd in [false, true] {
                        let want: Vec<String> = [("a", a), ("b", b), ("c", c), ("d", dd)]
                            .iter()
                            .map(|(p, neg)| if *neg { format!("n{p}") } else { p.to_string() })
                            .collect();
                        assert!(four.descriptions.contains(&want));
                        seen.insert(want);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 16);
        assert_eq!(four.q(), 16);

        let many: Vec<(String, String)> = (0..21).map(|i| (format!("p{i}"), format!("q{i}"))).collect();
        assert!(matches!(
            enumerate_semantic_space(&many),
            Err(Error::EnumerationTooLarge(21))
        ));
    }

    fn weights() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..10.0, 1..16).prop_filter("positive total", |w| w.iter().sum::<f64>() > 1e-6)
    }

    proptest! {
        #[test]
        fn entropy_is_bounded(w in weights()) {
            let dist = Distribution::from_weights(&w).unwrap();
            let h = entropy(&dist);
            prop_assert!(h >= 0.0);
            prop_assert!(h <= max_entropy(&dist) + 1e-12);
        }

        #[test]
        fn entropy_permutation_invariant(w in weights(), rot in 0usize..16) {
            let dist = Distribution::from_weights(&w).unwrap();
            let mut p = dist.probs().to_vec();
            p.reverse();
            let k = rot % p.len();
            p.rotate_left(k);
            let permuted = Distribution::new(p).unwrap();
            prop_assert!((entropy(&dist) - entropy(&permuted)).abs() < 1e-12);
            if dist.len() >= 2 {
                prop_assert!((redundancy(&dist).unwrap() - redundancy(&permuted).unwrap()).abs() < 1e-12);
            }
        }

        #[test]
        fn unit_blocks_match_symbol_entropy(
            cells in prop::collection::vec(0u32..4, 12),
            seed: u64,
        ) {
            let g = SymbolGrid::new(4, 3, 4, cells.clone()).unwrap();
            let h = entropy(&grid_symbol_distribution(&g).unwrap());
            prop_assert!((block_entropy(&g, 1, 1).unwrap() - h).abs() < 1e-12);

            let mut shuffled = cells;
            let mut rng = crate::rng::RngState::new(seed);
            for i in (1..shuffled.len()).rev() {
                let j = rng.next_index(i + 1);
                shuffled.swap(i, j);
            }
            let s = SymbolGrid::new(4, 3, 4, shuffled).unwrap();
            prop_assert_eq!(
                grid_symbol_distribution(&g).unwrap(),
                grid_symbol_distribution(&s).unwrap()
            );
        }

        #[test]
        fn semantic_space_is_complete(n in 0usize..10) {
            let props: Vec<(String, String)> =
                (0..n).map(|i| (format!("t{i}"), format!("a{i}"))).collect();
            let space = enumerate_semantic_space(&props).unwrap();
            prop_assert_eq!(space.q(), 1 << n);
            let unique: std::collections::HashSet<_> = space.descriptions.iter().collect();
            prop_assert_eq!(unique.len(), 1 << n);
            for desc in &space.descriptions {
                prop_assert_eq!(desc.len(), n);
                for (i, lit) in desc.iter().enumerate() {
                    prop_assert!(*lit == props[i].0 || *lit == props[i].1);
                }
            }
        }
    }
}
