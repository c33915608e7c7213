use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_ambient, Error, Result};

/// The Grassmannian `Gr(r,n)` of `r`-planes in an `n`-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Ambient {
    r: usize,
    n: usize,
}

impl Ambient {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        check_ambient(r, n)?;
        Ok(Ambient { r, n })
    }

    pub fn r(self) -> usize {
        self.r
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Rank of the quotient bundle, `n - r`.
    pub fn corank(self) -> usize {
        self.n - self.r
    }

    /// Complex dimension `r(n-r)`.
    pub fn dim(self) -> usize {
        self.r * (self.n - self.r)
    }

    pub(crate) fn ensure_same(self, other: Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.r, self.n, other.r, other.n))
        }
    }

    /// Every ambient with `1 <= r < n <= max_n`.
    pub fn all_up_to(max_n: usize) -> impl Iterator<Item = Ambient> {
        (2..=max_n).flat_map(|n| (1..n).map(move |r| Ambient { r, n }))
    }
}

impl TryFrom<[usize; 2]> for Ambient {
    type Error = Error;
    fn try_from(v: [usize; 2]) -> Result<Self> {
        Ambient::new(v[0], v[1])
    }
}

impl From<Ambient> for [usize; 2] {
    fn from(a: Ambient) -> Self {
        [a.r, a.n]
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.r, self.n)
    }
}
