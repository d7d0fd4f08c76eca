use super::gallery::icosahedron_adjacency;
use super::ConfigError;

/// Binary linear code with its generator matrix and (optionally) the full
/// list of codewords. Words are bitmasks; bit `i` is coordinate `i`.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub length: usize,
    pub dimension: usize,
    pub generator: Vec<u32>,
    pub codewords: Vec<u32>,
}

impl BinaryCode {
    /// Spans the generator rows; `codewords[k]` is the combination selected
    /// by the bits of `k`.
    pub fn from_generator(length: usize, generator: Vec<u32>) -> Self {
        let dimension = generator.len();
        let mut codewords = vec![0u32; 1 << dimension];
        for k in 1..codewords.len() {
            let low = k.trailing_zeros() as usize;
            codewords[k] = codewords[k & (k - 1)] ^ generator[low];
        }
        BinaryCode {
            length,
            dimension,
            generator,
            codewords,
        }
    }

    /// Counts of codewords of each weight `0..=length`.
    pub fn weight_distribution(&self) -> Vec<usize> {
        let mut dist = vec![0; self.length + 1];
        for w in &self.codewords {
            dist[w.count_ones() as usize] += 1;
        }
        dist
    }

    pub fn min_weight(&self) -> usize {
        self.codewords
            .iter()
            .filter(|w| **w != 0)
            .map(|w| w.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Every pair of generator rows has even overlap and `2k = n`.
    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension == self.length
            && self
                .generator
                .iter()
                .all(|a| self.generator.iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    pub fn words_of_weight(&self, w: u32) -> impl Iterator<Item = u32> + '_ {
        self.codewords
            .iter()
            .copied()
            .filter(move |c| c.count_ones() == w)
    }
}

/// The extended binary Golay code as the row space of `[I | J - A]`, with
/// `A` the icosahedron's adjacency matrix.
pub fn build_golay() -> Result<BinaryCode, ConfigError> {
    let adj = icosahedron_adjacency();
    let generator: Vec<u32> = (0..12)
        .map(|i| {
            let mut row = 1u32 << i;
            for (j, &a) in adj[i].iter().enumerate() {
                if !a {
                    row |= 1 << (12 + j);
                }
            }
            row
        })
        .collect();
    let code = BinaryCode::from_generator(24, generator);
    if code.min_weight() != 8 || !code.is_self_dual() {
        return Err(ConfigError::Invariant(format!(
            "Golay code check failed: min weight {}, self-dual {}",
            code.min_weight(),
            code.is_self_dual()
        )));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_weights() {
        let g = build_golay().unwrap();
        assert_eq!(g.codewords.len(), 4096);
        let d = g.weight_distribution();
        assert_eq!((d[0], d[8], d[12], d[16], d[24]), (1, 759, 2576, 759, 1));
        assert_eq!(d.iter().sum::<usize>(), 4096);
    }
}
