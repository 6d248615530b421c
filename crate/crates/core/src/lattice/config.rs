//! Bit-packed spin configurations: one bit per site, `1` = healthy,
//! `0` = infected. 10^8 sites fit in 12.5 MB.

use crate::error::LatticeError;
use crate::lattice::region::Region;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    region: Region,
    /// bit set = healthy. Bits past `region.len()` are kept zero.
    words: Vec<u64>,
}

impl Config {
    fn word_count(len: usize) -> usize {
        len.div_ceil(64)
    }

    pub fn all_healthy(region: Region) -> Config {
        let len = region.len();
        let mut words = vec![!0u64; Self::word_count(len)];
        let tail = len % 64;
        if tail != 0 {
            *words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        Config { region, words }
    }

    pub fn all_infected(region: Region) -> Config {
        let len = region.len();
        Config {
            words: vec![0u64; Self::word_count(len)],
            region,
        }
    }

    pub fn from_infected_coords(
        region: Region,
        infected: &[&[i64]],
    ) -> Result<Config, LatticeError> {
        let mut cfg = Config::all_healthy(region);
        for coord in infected {
            let idx = cfg
                .region
                .index_of(coord)
                .ok_or(LatticeError::SiteOutsideRegion)?;
            cfg.set_state(idx, 0);
        }
        Ok(cfg)
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn len(&self) -> usize {
        self.region.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 0 = infected, 1 = healthy.
    #[inline]
    pub fn state(&self, idx: usize) -> u8 {
        debug_assert!(idx < self.len());
        ((self.words[idx >> 6] >> (idx & 63)) & 1) as u8
    }

    #[inline]
    pub fn is_infected(&self, idx: usize) -> bool {
        self.state(idx) == 0
    }

    #[inline]
    pub fn set_state(&mut self, idx: usize, state: u8) {
        debug_assert!(idx < self.len());
        let mask = 1u64 << (idx & 63);
        if state == 0 {
            self.words[idx >> 6] &= !mask;
        } else {
            self.words[idx >> 6] |= mask;
        }
    }

    pub fn state_at(&self, coord: &[i64]) -> Result<u8, LatticeError> {
        let idx = self
            .region
            .index_of(coord)
            .ok_or(LatticeError::SiteOutsideRegion)?;
        Ok(self.state(idx))
    }

    pub fn set_state_at(&mut self, coord: &[i64], state: u8) -> Result<(), LatticeError> {
        let idx = self
            .region
            .index_of(coord)
            .ok_or(LatticeError::SiteOutsideRegion)?;
        self.set_state(idx, state);
        Ok(())
    }

    /// Overwrite the `n_bits` low bits of storage word `word_idx`
    /// (healthy = set). For bulk writers that assemble words directly.
    pub(crate) fn set_word(&mut self, word_idx: usize, healthy_bits: u64, n_bits: usize) {
        debug_assert!(n_bits == 64 || healthy_bits >> n_bits == 0);
        if n_bits == 64 {
            self.words[word_idx] = healthy_bits;
        } else {
            let mask = (1u64 << n_bits) - 1;
            self.words[word_idx] = (self.words[word_idx] & !mask) | healthy_bits;
        }
    }

    pub fn infected_count(&self) -> usize {
        let healthy: u32 = self.words.iter().map(|w| w.count_ones()).sum();
        self.len() - healthy as usize
    }

    pub fn infected_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_infected(i)).collect()
    }

    /// Infected sites become healthy and vice versa.
    pub fn complemented(&self) -> Config {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        let tail = out.len() % 64;
        if tail != 0 {
            *out.words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        out
    }

    /// True when every infection of `self` is an infection of `other`.
    pub fn infections_subset_of(&self, other: &Config) -> bool {
        debug_assert_eq!(self.region, other.region);
        // infected = zero bit, so subset of infections means healthy bits are a superset
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_get() {
        let r = Region::rect2(5, 3).unwrap();
        let mut c = Config::all_healthy(r);
        assert_eq!(c.infected_count(), 0);
        c.set_state(7, 0);
        assert!(c.is_infected(7));
        assert_eq!(c.infected_count(), 1);
        c.set_state(7, 1);
        assert_eq!(c.infected_count(), 0);
    }

    #[test]
    fn all_infected_tail_bits() {
        let r = Region::rect2(7, 3).unwrap(); // 21 sites, ragged tail
        let c = Config::all_infected(r.clone());
        assert_eq!(c.infected_count(), 21);
        let h = Config::all_healthy(r);
        assert_eq!(h.infected_count(), 0);
        assert_eq!(h.complemented(), c);
    }

    #[test]
    fn subset_check() {
        let r = Region::rect2(4, 4).unwrap();
        let mut a = Config::all_healthy(r.clone());
        a.set_state(3, 0);
        let mut b = a.clone();
        b.set_state(9, 0);
        assert!(a.infections_subset_of(&b));
        assert!(!b.infections_subset_of(&a));
    }
}
