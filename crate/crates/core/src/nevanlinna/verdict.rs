use crate::funcexpr::ExtComplex;
use crate::scalar::Real;

/// `m`, `n`, `N` and `T` at one radius for one target value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NevanlinnaSample<T> {
    pub r: T,
    pub target: ExtComplex<T>,
    pub m: T,
    pub n: u32,
    pub big_n: T,
    /// `T(r, f)`, independent of the target.
    pub t: T,
    /// Whether a localization circle had to be moved to compute `N`.
    pub nudged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|lhs − rhs| ≤ bound`
    Equality,
    /// `lhs ≤ rhs + bound`
    AtMost,
    /// `lhs < rhs + bound`
    Below,
}

/// Outcome of one identity or inequality check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckVerdict<T> {
    pub check: String,
    pub relation: Relation,
    pub lhs: T,
    pub rhs: T,
    /// `lhs − rhs`
    pub residual: T,
    pub bound: T,
    pub pass: bool,
    /// Named intermediate values in the order they were computed.
    pub details: Vec<(String, T)>,
    /// Radius nudges, skipped sub-checks and similar remarks.
    pub notes: Vec<String>,
    pub subchecks: Vec<CheckVerdict<T>>,
}

impl<T: Real> CheckVerdict<T> {
    pub fn new(check: &str, relation: Relation, lhs: T, rhs: T, bound: T) -> Self {
        let residual = lhs - rhs;
        let pass = match relation {
            Relation::Equality => residual.abs() <= bound,
            Relation::AtMost => lhs <= rhs + bound,
            Relation::Below => lhs < rhs + bound,
        };
        CheckVerdict {
            check: check.to_string(),
            relation,
            lhs,
            rhs,
            residual,
            bound,
            pass,
            details: Vec::new(),
            notes: Vec::new(),
            subchecks: Vec::new(),
        }
    }

    pub fn equality(check: &str, lhs: T, rhs: T, bound: T) -> Self {
        Self::new(check, Relation::Equality, lhs, rhs, bound)
    }

    pub fn at_most(check: &str, lhs: T, rhs: T, bound: T) -> Self {
        Self::new(check, Relation::AtMost, lhs, rhs, bound)
    }

    /// A verdict that passes iff every sub-check passes. Its `lhs` is the
    /// largest excess over the allowed bound among the sub-checks, so it is
    /// `≤ 0` exactly when all of them pass.
    pub fn all_of(check: &str, subchecks: Vec<CheckVerdict<T>>) -> Self {
        let excess = subchecks.iter().map(|s| s.excess()).fold(T::neg_infinity(), T::max);
        let excess = if excess.is_finite() { excess } else { T::zero() };
        let mut v = Self::new(check, Relation::AtMost, excess, T::zero(), T::zero());
        v.pass = subchecks.iter().all(|s| s.pass);
        v.subchecks = subchecks;
        v
    }

    /// How far the check is from the edge of its allowed region (positive = failing).
    pub fn excess(&self) -> T {
        match self.relation {
            Relation::Equality => self.residual.abs() - self.bound,
            Relation::AtMost | Relation::Below => self.residual - self.bound,
        }
    }

    pub fn with(mut self, name: &str, value: T) -> Self {
        self.details.push((name.to_string(), value));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn detail(&self, name: &str) -> Option<T> {
        self.details.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn subcheck(&self, name: &str) -> Option<&CheckVerdict<T>> {
        self.subchecks.iter().find(|s| s.check == name)
    }
}
