use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Maximum number of ring variables (including auxiliary ones).
pub const MAX_VARS: usize = 16;

/// Exponent vector. Entries past the ring arity are always zero.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Self::one();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        assert!(e.len() <= MAX_VARS);
        let mut m = Self::one();
        m.exps[..e.len()].copy_from_slice(e);
        m.deg = e.iter().map(|&x| x as u32).sum();
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }

    /// Total degree in the variables selected by `mask`.
    pub fn degree_in(&self, mask: u32) -> u32 {
        let mut d = 0;
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                d += self.exps[i] as u32;
            }
        }
        d
    }

    /// Bitmask of variables with nonzero exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                s |= 1 << i;
            }
        }
        s
    }

    /// The part of this monomial in the variables selected by `mask`.
    pub fn restrict(&self, mask: u32) -> Monomial {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                m.exps[i] = self.exps[i];
                m.deg += self.exps[i] as u32;
            }
        }
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.deg -= other.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison restricted to `mask`.
    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    pub fn cmp_grevlex_masked(&self, other: &Monomial, mask: u32) -> Ordering {
        if mask == u32::MAX {
            return self.cmp_grevlex(other);
        }
        let (da, db) = if mask == u32::MAX {
            (self.deg, other.deg)
        } else {
            (self.degree_in(mask), other.degree_in(mask))
        };
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}
