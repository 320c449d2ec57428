//! Brute-force ART1 reference simulator.
//!
//! Static formulation: all `m` category columns exist up front with
//! uncommitted weights, exactly as the textbook algorithm lays them out.
//! No lazy node materialization, no early exits, no shared code with the
//! production engine. Patterns are plain `0/1` byte slices.

/// Result of presenting one pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct RefOutcome {
    pub cluster: usize,
    pub forced: bool,
    pub ratio: f64,
}

/// Fixed-capacity ART1 network: `m` columns over `n`-bit inputs.
pub struct RefArt1 {
    n: usize,
    rho: f64,
    /// Bottom-up weights, one row per column.
    w: Vec<Vec<f64>>,
    /// Top-down weights (prototypes), one row per column.
    v: Vec<Vec<u8>>,
    /// Columns that have accepted at least one pattern.
    updated: Vec<bool>,
}

impl RefArt1 {
    pub fn new(n: usize, m: usize, rho: f64) -> Self {
        assert!(n >= 1 && m >= 1);
        assert!((0.0..1.0).contains(&rho));
        let init_w = 2.0 / (1.0 + n as f64);
        RefArt1 {
            n,
            rho,
            w: vec![vec![init_w; n]; m],
            v: vec![vec![1u8; n]; m],
            updated: vec![false; m],
        }
    }

    pub fn columns(&self) -> usize {
        self.w.len()
    }

    /// Present one pattern: winner search, similarity test, reset loop,
    /// weight update. Returns the column that finally absorbed the pattern.
    pub fn present(&mut self, p: &[u8]) -> RefOutcome {
        assert_eq!(p.len(), self.n);
        let norm: f64 = p.iter().map(|&b| f64::from(b)).sum();
        assert!(norm >= 1.0, "zero input vector");

        let m = self.columns();
        let mut active = vec![true; m];
        loop {
            // Matching scores over the remaining active columns; the best
            // score wins, ties go to the lowest column index.
            let mut winner = usize::MAX;
            let mut best = f64::NEG_INFINITY;
            for k in 0..m {
                if !active[k] {
                    continue;
                }
                let mut y = 0.0;
                for i in 0..self.n {
                    y += self.w[k][i] * f64::from(p[i]);
                }
                if y > best {
                    best = y;
                    winner = k;
                }
            }
            assert!(winner != usize::MAX, "no active column left");

            // Similarity test for the winner.
            let mut overlap = 0.0;
            for i in 0..self.n {
                overlap += f64::from(self.v[winner][i]) * f64::from(p[i]);
            }
            let ratio = overlap / norm;
            if ratio > self.rho {
                self.update(winner, p);
                return RefOutcome {
                    cluster: winner,
                    forced: false,
                    ratio,
                };
            }
            let n_active = active.iter().filter(|&&a| a).count();
            if n_active > 1 {
                // Reset: deactivate the winner and search again.
                active[winner] = false;
            } else {
                // Single active column left: absorb the pattern regardless.
                self.update(winner, p);
                return RefOutcome {
                    cluster: winner,
                    forced: true,
                    ratio,
                };
            }
        }
    }

    fn update(&mut self, j: usize, p: &[u8]) {
        let mut s = 0.0;
        for i in 0..self.n {
            s += f64::from(self.v[j][i]) * f64::from(p[i]);
        }
        for i in 0..self.n {
            self.w[j][i] = f64::from(self.v[j][i]) * f64::from(p[i]) / (0.5 + s);
        }
        for i in 0..self.n {
            self.v[j][i] *= p[i];
        }
        self.updated[j] = true;
    }

    /// Present each pattern once, in order.
    pub fn run_sequence(&mut self, seq: &[Vec<u8>]) -> Vec<RefOutcome> {
        seq.iter().map(|p| self.present(p)).collect()
    }

    /// Re-present the list until an epoch changes no prototype and repeats
    /// the previous epoch's assignments, or until `max_epochs`.
    pub fn train(&mut self, seq: &[Vec<u8>], max_epochs: usize) -> (Vec<RefOutcome>, usize) {
        assert!(max_epochs >= 1);
        let mut last_assign: Option<Vec<usize>> = None;
        let mut last_outs = Vec::new();
        let mut epochs_used = 0;
        for _ in 0..max_epochs {
            let before = self.v.clone();
            let outs = self.run_sequence(seq);
            let assign: Vec<usize> = outs.iter().map(|o| o.cluster).collect();
            epochs_used += 1;
            let stable = before == self.v && last_assign.as_deref() == Some(&assign[..]);
            last_outs = outs;
            if stable {
                break;
            }
            last_assign = Some(assign);
        }
        (last_outs, epochs_used)
    }

    /// Prototypes of the columns that accepted at least one pattern,
    /// in column order.
    pub fn committed_prototypes(&self) -> Vec<Vec<u8>> {
        self.v
            .iter()
            .zip(&self.updated)
            .filter(|(_, &u)| u)
            .map(|(row, _)| row.clone())
            .collect()
    }

    pub fn bottom_up(&self, j: usize) -> &[f64] {
        &self.w[j]
    }

    pub fn prototype(&self, j: usize) -> &[u8] {
        &self.v[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hand-computed fixtures: each expected value below was worked out on
    // paper from the update and similarity formulas.

    #[test]
    fn fresh_column_weights() {
        let net = RefArt1::new(4, 2, 0.5);
        assert_eq!(net.bottom_up(0), &[0.4, 0.4, 0.4, 0.4]);
        let net1 = RefArt1::new(1, 1, 0.0);
        assert_eq!(net1.bottom_up(0), &[1.0]);
        let net9 = RefArt1::new(9, 1, 0.0);
        assert_eq!(net9.bottom_up(0), &[0.2; 9]);
    }

    #[test]
    fn first_pattern_commits_first_column() {
        let mut net = RefArt1::new(4, 3, 0.5);
        let out = net.present(&[1, 0, 1, 0]);
        assert_eq!(out.cluster, 0);
        assert!(!out.forced);
        assert_eq!(out.ratio, 1.0);
        assert_eq!(net.prototype(0), &[1, 0, 1, 0]);
        // 1/(0.5+2) = 0.4 on the set positions.
        assert_eq!(net.bottom_up(0), &[0.4, 0.0, 0.4, 0.0]);
    }

    #[test]
    fn similarity_two_thirds_passes_half() {
        // Single column so the committed prototype must face the test.
        let mut net = RefArt1::new(4, 1, 0.5);
        net.present(&[1, 0, 1, 0]);
        let out = net.present(&[1, 1, 1, 0]);
        assert_eq!(out.cluster, 0);
        assert!(!out.forced);
        assert!((out.ratio - 2.0 / 3.0).abs() < 1e-15);
        // AND with a superset leaves the prototype untouched.
        assert_eq!(net.prototype(0), &[1, 0, 1, 0]);
        assert_eq!(net.bottom_up(0), &[0.4, 0.0, 0.4, 0.0]);
    }

    #[test]
    fn fresh_column_outscores_partial_match() {
        // 3 set bits score 1.2 on an uncommitted column but only 0.8 on the
        // committed one, so the pattern opens a new cluster.
        let mut net = RefArt1::new(4, 2, 0.5);
        net.present(&[1, 0, 1, 0]);
        let out = net.present(&[1, 1, 1, 0]);
        assert_eq!(out.cluster, 1);
        assert_eq!(net.prototype(1), &[1, 1, 1, 0]);
    }

    #[test]
    fn overlap_shrinks_prototype() {
        let mut net = RefArt1::new(4, 1, 0.0);
        net.present(&[1, 1, 0, 0]);
        let out = net.present(&[1, 0, 1, 0]);
        // overlap 1 of norm 2 -> ratio 0.5 > 0.0: accepted by column 0.
        assert_eq!(out.cluster, 0);
        assert!(!out.forced);
        assert_eq!(net.prototype(0), &[1, 0, 0, 0]);
        let w = net.bottom_up(0);
        assert!((w[0] - 1.0 / 1.5).abs() < 1e-15);
        assert_eq!(&w[1..], &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn disjoint_pattern_opens_new_column() {
        let mut net = RefArt1::new(4, 2, 0.5);
        net.present(&[1, 0, 1, 0]);
        let out = net.present(&[0, 1, 0, 1]);
        assert_eq!(out.cluster, 1);
        assert!(!out.forced);
        assert_eq!(net.prototype(1), &[0, 1, 0, 1]);
    }

    #[test]
    fn capacity_one_forces_and_zeroes() {
        let mut net = RefArt1::new(4, 1, 0.5);
        net.present(&[1, 0, 1, 0]);
        let out = net.present(&[0, 1, 0, 1]);
        assert_eq!(out.cluster, 0);
        assert!(out.forced);
        assert_eq!(out.ratio, 0.0);
        assert_eq!(net.prototype(0), &[0, 0, 0, 0]);
        assert_eq!(net.bottom_up(0), &[0.0; 4]);
    }

    #[test]
    fn identical_patterns_stabilize_after_second_epoch() {
        let mut net = RefArt1::new(4, 8, 0.3);
        let seq = vec![vec![1, 1, 0, 0]; 5];
        let (outs, epochs) = net.train(&seq, 10);
        assert_eq!(epochs, 2);
        assert!(outs.iter().all(|o| o.cluster == 0 && !o.forced));
        assert_eq!(net.committed_prototypes(), vec![vec![1, 1, 0, 0]]);
    }

    #[test]
    fn zero_similarity_fails_even_at_zero_vigilance() {
        let mut net = RefArt1::new(4, 2, 0.0);
        net.present(&[1, 0, 1, 0]);
        // Ratio 0 is not > 0, so the committed column resets and the
        // second column takes the pattern.
        let out = net.present(&[0, 1, 0, 1]);
        assert_eq!(out.cluster, 1);
    }
}
