//! Word-sized set-of-sets operations for `B_n` with `n <= 6`: a family of
//! subsets is one `u64`, bit `m` standing for the mask `m`.

use crate::lattice::MAX_EXHAUSTIVE_GROUND;

#[derive(Clone, Debug)]
pub(crate) struct Tables {
    /// Supersets of `m`, including `m`.
    pub up: [u64; 64],
    /// Subsets of `m`, including `m`.
    pub down: [u64; 64],
    pub strict_up: [u64; 64],
    pub strict_down: [u64; 64],
    /// All masks of `B_n`.
    pub all: u64,
}

impl Tables {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_EXHAUSTIVE_GROUND, "bitset tables need n <= 6");
        let size = 1usize << n;
        let mut t = Tables {
            up: [0; 64],
            down: [0; 64],
            strict_up: [0; 64],
            strict_down: [0; 64],
            all: if size == 64 { u64::MAX } else { (1u64 << size) - 1 },
        };
        for x in 0..size {
            for y in 0..size {
                if x & !y == 0 {
                    t.up[x] |= 1 << y;
                    t.down[y] |= 1 << x;
                    if x != y {
                        t.strict_up[x] |= 1 << y;
                        t.strict_down[y] |= 1 << x;
                    }
                }
            }
        }
        t
    }

    #[inline]
    pub fn strict_up_of(&self, mut set: u64) -> u64 {
        let mut out = 0;
        while set != 0 {
            out |= self.strict_up[set.trailing_zeros() as usize];
            set &= set - 1;
        }
        out
    }

    #[inline]
    pub fn strict_down_of(&self, mut set: u64) -> u64 {
        let mut out = 0;
        while set != 0 {
            out |= self.strict_down[set.trailing_zeros() as usize];
            set &= set - 1;
        }
        out
    }

    /// Masks incomparable to `m`.
    #[inline]
    pub fn incomparable(&self, m: usize) -> u64 {
        self.all & !(self.up[m] | self.down[m])
    }
}

/// Iterates the set bits of a word, lowest first.
#[inline]
pub(crate) fn ones(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        }
    })
}
