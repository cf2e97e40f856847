//! Open-addressed transposition table.
//!
//! Linear probing over a power-of-two array. The table doubles when an
//! insertion would push the load factor above 3/4. Keys are the packed
//! `(S0, S1)` pair: one word when the graph has at most 32 vertices, two
//! words otherwise. Every entry stores a closed interval `[lo, hi]` known to
//! contain the exact value of the position; exact entries have `lo == hi`.

/// Bound meaning "no information" on that side.
pub const NO_LOWER: i16 = i16::MIN;
pub const NO_UPPER: i16 = i16::MAX;

const EMPTY: u64 = u64::MAX;
const MIN_CAPACITY: usize = 1 << 12;

/// A packed table key. `hi` is unused for narrow tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub lo: u64,
    pub hi: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lo: i16,
    pub hi: i16,
}

impl Bounds {
    pub fn exact(v: i16) -> Self {
        Bounds { lo: v, hi: v }
    }

    pub fn is_exact(self) -> bool {
        self.lo == self.hi
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    // splitmix64 finaliser
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub struct Table {
    wide: bool,
    keys_lo: Vec<u64>,
    keys_hi: Vec<u64>,
    bounds: Vec<Bounds>,
    len: usize,
    shift: u32,
    max_entries: Option<usize>,
}

/// Returned when an insertion would exceed the configured entry cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableFull;

impl Table {
    pub fn new(wide: bool, max_entries: Option<usize>) -> Self {
        Table::with_capacity(wide, MIN_CAPACITY, max_entries)
    }

    pub fn with_capacity(wide: bool, capacity: usize, max_entries: Option<usize>) -> Self {
        let cap = capacity.max(MIN_CAPACITY).next_power_of_two();
        Table {
            wide,
            keys_lo: vec![EMPTY; cap],
            keys_hi: if wide { vec![0; cap] } else { Vec::new() },
            bounds: vec![Bounds::exact(0); cap],
            len: 0,
            shift: 64 - cap.trailing_zeros(),
            max_entries,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.keys_lo.len()
    }

    pub fn is_wide(&self) -> bool {
        self.wide
    }

    #[inline]
    fn slot_of(&self, key: Key) -> usize {
        let h = if self.wide {
            mix(key.lo ^ mix(key.hi))
        } else {
            mix(key.lo)
        };
        (h >> self.shift) as usize
    }

    #[inline]
    fn matches(&self, i: usize, key: Key) -> bool {
        self.keys_lo[i] == key.lo && (!self.wide || self.keys_hi[i] == key.hi)
    }

    #[inline]
    pub fn get(&self, key: Key) -> Option<Bounds> {
        let mask = self.capacity() - 1;
        let mut i = self.slot_of(key);
        loop {
            if self.keys_lo[i] == EMPTY {
                return None;
            }
            if self.matches(i, key) {
                return Some(self.bounds[i]);
            }
            i = (i + 1) & mask;
        }
    }

    /// Inserts or overwrites the bounds stored for `key`.
    pub fn put(&mut self, key: Key, b: Bounds) -> Result<(), TableFull> {
        debug_assert!(key.lo != EMPTY);
        let mask = self.capacity() - 1;
        let mut i = self.slot_of(key);
        loop {
            if self.keys_lo[i] == EMPTY {
                break;
            }
            if self.matches(i, key) {
                self.bounds[i] = b;
                return Ok(());
            }
            i = (i + 1) & mask;
        }
        if self.max_entries.is_some_and(|cap| self.len >= cap) {
            return Err(TableFull);
        }
        if 4 * (self.len + 1) > 3 * self.capacity() {
            self.grow();
            return self.put(key, b);
        }
        self.keys_lo[i] = key.lo;
        if self.wide {
            self.keys_hi[i] = key.hi;
        }
        self.bounds[i] = b;
        self.len += 1;
        Ok(())
    }

    fn grow(&mut self) {
        let mut bigger = Table::with_capacity(self.wide, 2 * self.capacity(), None);
        for i in 0..self.capacity() {
            if self.keys_lo[i] != EMPTY {
                let key = Key {
                    lo: self.keys_lo[i],
                    hi: if self.wide { self.keys_hi[i] } else { 0 },
                };
                bigger.insert_fresh(key, self.bounds[i]);
            }
        }
        bigger.max_entries = self.max_entries;
        *self = bigger;
    }

    fn insert_fresh(&mut self, key: Key, b: Bounds) {
        let mask = self.capacity() - 1;
        let mut i = self.slot_of(key);
        while self.keys_lo[i] != EMPTY {
            i = (i + 1) & mask;
        }
        self.keys_lo[i] = key.lo;
        if self.wide {
            self.keys_hi[i] = key.hi;
        }
        self.bounds[i] = b;
        self.len += 1;
    }
}
