//! Restriction classes `"H"` and `"H"(≤ k)`: which parts are allowed and how
//! often each may repeat.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::field::AlgInt;
use crate::ideals::{GlaisherData, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultBound {
    Unbounded,
    AtMost(u32),
}

impl MultBound {
    pub fn allows(&self, k: u32) -> bool {
        match self {
            MultBound::Unbounded => true,
            MultBound::AtMost(b) => k <= *b,
        }
    }
}

type PartPredicate = Arc<dyn Fn(&AlgInt) -> bool + Send + Sync>;

/// A set `H` of admissible parts (given by a predicate on totally positive
/// integers) together with a multiplicity bound.
#[derive(Clone)]
pub struct PartitionClass {
    label: String,
    pred: PartPredicate,
    mult: MultBound,
}

impl PartitionClass {
    pub fn new(
        label: impl Into<String>,
        pred: impl Fn(&AlgInt) -> bool + Send + Sync + 'static,
    ) -> Self {
        PartitionClass { label: label.into(), pred: Arc::new(pred), mult: MultBound::Unbounded }
    }

    /// Every totally positive integer.
    pub fn all() -> Self {
        Self::new("O+", |_| true)
    }

    /// Parts outside the ideal.
    pub fn avoiding_ideal(ideal: Ideal) -> Self {
        let label = format!("O+ \\ {ideal}");
        Self::new(label, move |a| !ideal.contains(a))
    }

    /// Parts lying in the ideal.
    pub fn inside_ideal(ideal: Ideal) -> Self {
        let label = format!("O+ ∩ {ideal}");
        Self::new(label, move |a| ideal.contains(a))
    }

    /// Parts not divisible by the rational integer `d` in the ring of integers.
    pub fn not_divisible_by(d: impl Into<BigInt>) -> Self {
        let d = d.into();
        Self::new(format!("O+_{d}"), move |a| a.divide_by_int(&d).is_none())
    }

    /// Parts in the set `S` attached to `(𝔞, d)`.
    pub fn glaisher_s(data: GlaisherData) -> Self {
        let label = format!("S({}, {})", data.ideal(), data.modulus());
        Self::new(label, move |a| data.in_s(a))
    }

    pub fn with_mult_bound(mut self, mult: MultBound) -> Self {
        if let MultBound::AtMost(k) = mult {
            self.label = format!("{}(≤{k})", self.label);
        }
        self.mult = mult;
        self
    }

    pub fn distinct(self) -> Self {
        self.with_mult_bound(MultBound::AtMost(1))
    }

    pub fn admits(&self, part: &AlgInt) -> bool {
        part.is_totally_positive() && (self.pred)(part)
    }

    pub fn mult_bound(&self) -> MultBound {
        self.mult
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartitionClass")
            .field("label", &self.label)
            .field("mult", &self.mult)
            .finish()
    }
}
