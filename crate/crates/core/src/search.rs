//! Shared budget accounting for the exponential searches.
//!
//! Induced-minor containment, path-family enumeration, and theta search are
//! NP-hard in general. Every such search takes a node budget and reports
//! exhaustion as a distinct outcome, never silently as "not found".

/// Node budget for a backtracking search.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn default_nodes() -> Self {
        Budget::new(Self::DEFAULT_NODES)
    }

    /// Consumes one node; returns false once the budget is exhausted.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// Outcome of a budgeted search. `NotFound` is an exhaustive "no";
/// `BudgetExceeded` means "unknown".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchResult<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchResult::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self, SearchResult::NotFound)
    }
}
