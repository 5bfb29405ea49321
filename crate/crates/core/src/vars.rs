//! Indeterminate sets for the coefficient field.
//!
//! Each computation context declares its indeterminates up front (for
//! example `q,t,a`), which keeps exponent vectors short. A [`VarSet`] is
//! cheap to clone and compared by its list of names.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

/// Exponent vector; one entry per indeterminate of the owning [`VarSet`].
pub type Expo = SmallVec<[u32; 4]>;

/// An ordered set of indeterminate names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        VarSet {
            names: Arc::new(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    /// `Q(q,t)` — the base Macdonald field.
    pub fn qt() -> Self {
        Self::new(&["q", "t"])
    }

    /// `Q(q,t,a)`.
    pub fn qta() -> Self {
        Self::new(&["q", "t", "a"])
    }

    /// `Q(q,t,a,b)`.
    pub fn qtab() -> Self {
        Self::new(&["q", "t", "a", "b"])
    }

    /// `Q(q)` — used for specialised bases such as `q → q²`.
    pub fn q_only() -> Self {
        Self::new(&["q"])
    }

    /// `Q(α)` — the Jack parameter field.
    pub fn alpha() -> Self {
        Self::new(&["alpha"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Stable identifier used in cache headers.
    pub fn id(&self) -> String {
        self.names.join(",")
    }

    pub fn zero_expo(&self) -> Expo {
        SmallVec::from_elem(0, self.len())
    }

    pub fn unit_expo(&self, i: usize) -> Expo {
        let mut e = self.zero_expo();
        e[i] = 1;
        e
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet({})", self.id())
    }
}
