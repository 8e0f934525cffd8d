//! A bitset of consumed positive differences.
//!
//! Every construction in the crate keeps one of these next to the partial
//! set it is building: a difference may be claimed at most once, and the
//! ledger answers "is `d` still free?" in constant time.

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("difference {0} is already in use")]
    Duplicate(u32),
    #[error("difference {0} is not in use")]
    Absent(u32),
    #[error("difference {difference} exceeds ledger capacity {capacity}")]
    OutOfRange { difference: u32, capacity: u32 },
    #[error("zero is not a valid difference")]
    Zero,
}

/// Set of positive differences in `1..=capacity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffLedger {
    words: Vec<u64>,
    capacity: u32,
    len: usize,
}

impl DiffLedger {
    pub fn with_capacity(capacity: u32) -> Self {
        let words = vec![0; capacity as usize / WORD + 1];
        DiffLedger {
            words,
            capacity,
            len: 0,
        }
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Number of differences currently in use.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Raise the capacity to at least `capacity`. Never shrinks.
    pub fn grow(&mut self, capacity: u32) {
        if capacity <= self.capacity {
            return;
        }
        self.words.resize(capacity as usize / WORD + 1, 0);
        self.capacity = capacity;
    }

    #[inline]
    pub fn contains(&self, d: u32) -> bool {
        if d == 0 || d > self.capacity {
            return false;
        }
        let d = d as usize;
        self.words[d / WORD] >> (d % WORD) & 1 == 1
    }

    /// Whether `d` could be inserted right now.
    #[inline]
    pub fn is_free(&self, d: u32) -> bool {
        d != 0 && d <= self.capacity && !self.contains(d)
    }

    fn check(&self, d: u32) -> Result<(), LedgerError> {
        if d == 0 {
            return Err(LedgerError::Zero);
        }
        if d > self.capacity {
            return Err(LedgerError::OutOfRange {
                difference: d,
                capacity: self.capacity,
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, d: u32) -> Result<(), LedgerError> {
        self.check(d)?;
        if self.contains(d) {
            return Err(LedgerError::Duplicate(d));
        }
        let d = d as usize;
        self.words[d / WORD] |= 1 << (d % WORD);
        self.len += 1;
        Ok(())
    }

    pub fn remove(&mut self, d: u32) -> Result<(), LedgerError> {
        self.check(d)?;
        if !self.contains(d) {
            return Err(LedgerError::Absent(d));
        }
        let d = d as usize;
        self.words[d / WORD] &= !(1 << (d % WORD));
        self.len -= 1;
        Ok(())
    }

    /// Insert every difference in `diffs` or none of them.
    ///
    /// On failure the ledger is left untouched and the offending error is
    /// returned; a repeat inside `diffs` itself counts as a duplicate.
    pub fn insert_all(&mut self, diffs: &[u32]) -> Result<(), LedgerError> {
        for (idx, &d) in diffs.iter().enumerate() {
            if let Err(e) = self.insert(d) {
                for &undo in &diffs[..idx] {
                    self.remove(undo).expect("rollback of a fresh insert");
                }
                return Err(e);
            }
        }
        Ok(())
    }

    /// Remove every difference in `diffs`; all must be present.
    pub fn remove_all(&mut self, diffs: &[u32]) -> Result<(), LedgerError> {
        for (idx, &d) in diffs.iter().enumerate() {
            if let Err(e) = self.remove(d) {
                for &undo in &diffs[..idx] {
                    self.insert(undo).expect("rollback of a fresh removal");
                }
                return Err(e);
            }
        }
        Ok(())
    }

    /// Sum of the `count` smallest free differences, or `None` if fewer than
    /// `count` remain free within capacity.
    pub fn smallest_free_sum(&self, count: usize) -> Option<u64> {
        let mut sum = 0u64;
        let mut taken = 0;
        if count == 0 {
            return Some(0);
        }
        for (w, &word) in self.words.iter().enumerate() {
            let mut free = !word;
            if w == 0 {
                free &= !1;
            }
            while free != 0 {
                let bit = free.trailing_zeros() as usize;
                let d = w * WORD + bit;
                if d > self.capacity as usize {
                    return None;
                }
                sum += d as u64;
                taken += 1;
                if taken == count {
                    return Some(sum);
                }
                free &= free - 1;
            }
        }
        None
    }

    /// Smallest `d >= from` not in use. Values past capacity count as free.
    pub fn next_free(&self, from: u32) -> u32 {
        let from = from.max(1);
        if from > self.capacity {
            return from;
        }
        let start = from as usize;
        let mut w = start / WORD;
        let mut free = !self.words[w] & (!0u64 << (start % WORD));
        loop {
            if free != 0 {
                let d = (w * WORD + free.trailing_zeros() as usize) as u32;
                return d.min(self.capacity + 1).max(from);
            }
            w += 1;
            if w == self.words.len() {
                return self.capacity + 1;
            }
            free = !self.words[w];
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.capacity).filter(move |&d| self.contains(d))
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.len = 0;
    }
}
