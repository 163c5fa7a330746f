//! Formal power sums `∑ c_δ q^δ` indexed by totally nonnegative integers,
//! truncated at a trace bound.
//!
//! Trace is additive and every totally positive integer has trace at least 1
//! (at least 2 in a quadratic field), so the coefficient of any `q^δ` with
//! `tr(δ) ≤ M` in a product only depends on factor coefficients of trace
//! `≤ M`. Truncating at trace `M` therefore loses nothing inside the window,
//! and infinite products over parts collapse to finite ones: factors indexed
//! by parts of trace `> M` are `1` in the window.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::class::{MultBound, PartitionClass};
use crate::enumeration::{trace_u64, TraceWindow};
use crate::error::{Error, Result};
use crate::field::{AlgInt, QuadField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSum {
    field: QuadField,
    max_trace: u64,
    // keys are totally nonnegative with trace ≤ max_trace; no zero values
    coeffs: BTreeMap<AlgInt, BigInt>,
}

impl QSum {
    pub fn zero(field: QuadField, max_trace: u64) -> Self {
        QSum { field, max_trace, coeffs: BTreeMap::new() }
    }

    pub fn one(field: QuadField, max_trace: u64) -> Self {
        Self::zero(field, max_trace).with_term(field.zero(), BigInt::one())
    }

    /// `c·q^δ`, or zero when `δ` lies outside the window.
    pub fn monomial(delta: &AlgInt, c: impl Into<BigInt>, max_trace: u64) -> Result<Self> {
        if !delta.is_totally_nonneg() {
            return Err(Error::NotTotallyPositive(delta.to_string()));
        }
        Ok(Self::zero(delta.field(), max_trace).with_term(delta.clone(), c.into()))
    }

    // Adds c·q^key, silently dropping keys beyond the window.
    fn with_term(mut self, key: AlgInt, c: BigInt) -> Self {
        self.add_term(key, c);
        self
    }

    fn add_term(&mut self, key: AlgInt, c: BigInt) {
        debug_assert!(key.is_totally_nonneg());
        if c.is_zero() || trace_u64(&key) > self.max_trace {
            return;
        }
        match self.coeffs.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn max_trace(&self) -> u64 {
        self.max_trace
    }

    /// Coefficient of `q^δ`; zero for absent keys.
    pub fn coefficient(&self, delta: &AlgInt) -> BigInt {
        self.coeffs.get(delta).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&AlgInt, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coefficient(&self.field.zero()).is_one()
    }

    fn check_window(&self, other: &QSum) -> Result<()> {
        if self.field != other.field || self.max_trace != other.max_trace {
            return Err(Error::WindowMismatch(format!(
                "{} trace ≤ {} vs {} trace ≤ {}",
                self.field, self.max_trace, other.field, other.max_trace
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &QSum) -> Result<QSum> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> QSum {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn sub(&self, other: &QSum) -> Result<QSum> {
        self.add(&other.neg())
    }

    /// Convolution `∑_γ (∑_{γ=α+β} c_α d_β) q^γ`, dropping `γ` beyond the window.
    pub fn mul(&self, other: &QSum) -> Result<QSum> {
        self.check_window(other)?;
        let lhs = self.by_trace();
        let rhs = other.by_trace();
        let mut acc: BTreeMap<AlgInt, BigInt> = BTreeMap::new();
        for (ta, a, ca) in &lhs {
            for (tb, b, cb) in &rhs {
                // both sides are sorted by trace
                if ta + tb > self.max_trace {
                    break;
                }
                *acc.entry(*a + *b).or_insert_with(BigInt::zero) += *ca * *cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(QSum { field: self.field, max_trace: self.max_trace, coeffs: acc })
    }

    fn by_trace(&self) -> Vec<(u64, &AlgInt, &BigInt)> {
        self.coeffs.iter().map(|(k, v)| (trace_u64(k), k, v)).collect()
    }

    /// Keeps only terms of trace ≤ `max_trace` and narrows the window.
    pub fn truncate(&self, max_trace: u64) -> QSum {
        let max_trace = max_trace.min(self.max_trace);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| trace_u64(k) <= max_trace)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        QSum { field: self.field, max_trace, coeffs }
    }
}

/// `1 + q^δ + q^{2δ} + ⋯` truncated to the window: the expansion of `1/(1 − q^δ)`.
pub fn geometric_factor(delta: &AlgInt, max_trace: u64) -> Result<QSum> {
    bounded_factor(delta, MultBound::Unbounded, max_trace)
}

/// `1 + q^δ + ⋯ + q^{kδ}` for `MultBound::AtMost(k)`, or the geometric
/// factor when unbounded.
pub fn bounded_factor(delta: &AlgInt, mult: MultBound, max_trace: u64) -> Result<QSum> {
    if !delta.is_totally_positive() {
        return Err(Error::NotTotallyPositive(delta.to_string()));
    }
    let step = trace_u64(delta);
    let mut out = QSum::one(delta.field(), max_trace);
    let mut k = 1u32;
    while mult.allows(k) && step * u64::from(k) <= max_trace {
        out.add_term(delta.scale(k), BigInt::one());
        k += 1;
    }
    Ok(out)
}

/// `1 − q^δ`.
pub fn one_minus(delta: &AlgInt, max_trace: u64) -> Result<QSum> {
    if !delta.is_totally_positive() {
        return Err(Error::NotTotallyPositive(delta.to_string()));
    }
    Ok(QSum::one(delta.field(), max_trace).with_term(delta.clone(), -BigInt::one()))
}

/// Product of the factors in order; the empty product is `1` in the given window.
pub fn product_over<I>(field: QuadField, max_trace: u64, factors: I) -> Result<QSum>
where
    I: IntoIterator<Item = QSum>,
{
    factors
        .into_iter()
        .try_fold(QSum::one(field, max_trace), |acc, f| acc.mul(&f))
}

/// `∏_{δ ∈ H, tr δ ≤ M} (1 + q^δ + ⋯ + q^{kδ})`, whose coefficient at `δ` is
/// the number of partitions of `δ` in the class.
pub fn partition_genfun(field: QuadField, class: &PartitionClass, max_trace: u64) -> QSum {
    let parts = TraceWindow::new(field, max_trace).elements();
    product_over(
        field,
        max_trace,
        parts
            .iter()
            .filter(|p| class.admits(p))
            .map(|p| bounded_factor(p, class.mult_bound(), max_trace).expect("totally positive")),
    )
    .expect("shared window")
}

impl fmt::Display for QSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_zero() {
                write!(f, "{v}")?;
            } else if v.is_one() {
                write!(f, "q^({k})")?;
            } else {
                write!(f, "{v}·q^({k})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{GlaisherData, Ideal};
    use proptest::prelude::*;

    fn q2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn addition_and_lookup() {
        let k = QuadField::rational();
        let one = k.one();
        let f = QSum::one(k, 4).add(&QSum::monomial(&one, 1, 4).unwrap()).unwrap();
        let g = QSum::monomial(&k.zero(), 2, 4)
            .unwrap()
            .add(&QSum::monomial(&one, -1, 4).unwrap())
            .unwrap();
        let s = f.add(&g).unwrap();
        assert_eq!(s, QSum::monomial(&k.zero(), 3, 4).unwrap());
        assert_eq!(s.num_terms(), 1);
        assert_eq!(QSum::zero(k, 4).coefficient(&one), big(0));
    }

    #[test]
    fn window_mismatch() {
        let k = q2();
        assert!(matches!(QSum::one(k, 4).mul(&QSum::one(k, 6)), Err(Error::WindowMismatch(_))));
        let q = QuadField::rational();
        assert!(QSum::one(k, 4).add(&QSum::one(q, 4)).is_err());
    }

    #[test]
    fn geometric_series_square() {
        let k = QuadField::rational();
        let g = geometric_factor(&k.one(), 4).unwrap();
        assert_eq!(g.to_string(), "1 + q^(1) + q^(2) + q^(3) + q^(4)");
        let sq = g.mul(&g).unwrap();
        assert_eq!(sq.coefficient(&k.elem(3, 0).unwrap()), big(4));
    }

    #[test]
    fn geometric_factor_examples() {
        let k = QuadField::rational();
        assert_eq!(geometric_factor(&k.one(), 3).unwrap().num_terms(), 4);
        assert!(geometric_factor(&k.elem(5, 0).unwrap(), 3).unwrap().is_one());
        let d = q2().elem(2, 1).unwrap();
        let g = geometric_factor(&d, 8).unwrap();
        assert_eq!(g.to_string(), "1 + q^(2+√2) + q^(4+2√2)");
        assert!(geometric_factor(&q2().omega().unwrap(), 8).is_err());
        assert!(geometric_factor(&q2().zero(), 8).is_err());
    }

    #[test]
    fn inverse_pair_is_one() {
        let k = q2();
        for d in TraceWindow::new(k, 10).elements() {
            let p = one_minus(&d, 10).unwrap().mul(&geometric_factor(&d, 10).unwrap()).unwrap();
            assert!(p.is_one(), "{d}: {p}");
        }
    }

    #[test]
    fn products() {
        let k = q2();
        assert!(product_over(k, 6, std::iter::empty()).unwrap().is_one());
        let all = partition_genfun(k, &PartitionClass::all(), 14);
        assert_eq!(all.coefficient(&k.elem(7, 4).unwrap()), big(6));
        assert_eq!(all.coefficient(&k.elem(6, 2).unwrap()), big(12));
        let distinct = partition_genfun(k, &PartitionClass::all().distinct(), 14);
        assert_eq!(distinct.coefficient(&k.elem(7, 4).unwrap()), big(4));
    }

    #[test]
    fn restricted_generating_functions() {
        let k = q2();
        let sqrt2 = Ideal::principal(&k.omega().unwrap()).unwrap();
        let lhs = partition_genfun(k, &PartitionClass::avoiding_ideal(sqrt2.clone()), 12);
        assert_eq!(lhs.coefficient(&k.elem(6, 2).unwrap()), big(4));
        let s = GlaisherData::new(sqrt2, 2).unwrap();
        let rhs = partition_genfun(k, &PartitionClass::glaisher_s(s).distinct(), 12);
        assert_eq!(rhs.coefficient(&k.elem(6, 2).unwrap()), big(4));

        let q = QuadField::rational();
        let odd = PartitionClass::new("odd", |a: &AlgInt| a.x() % 2 != BigInt::zero());
        assert_eq!(partition_genfun(q, &odd, 5).coefficient(&q.elem(5, 0).unwrap()), big(3));
    }

    // Euler's function times the partition generating function.
    #[test]
    fn euler_product_inverts_partition_genfun() {
        let k = QuadField::new(3).unwrap();
        let m = 10;
        for class in [
            PartitionClass::all(),
            PartitionClass::not_divisible_by(2),
            PartitionClass::avoiding_ideal(Ideal::principal(&k.elem(1, 1).unwrap()).unwrap()),
        ] {
            let f = partition_genfun(k, &class, m);
            let parts = TraceWindow::new(k, m).elements();
            let euler = product_over(
                k,
                m,
                parts.iter().filter(|p| class.admits(p)).map(|p| one_minus(p, m).unwrap()),
            )
            .unwrap();
            assert!(euler.mul(&f).unwrap().is_one(), "{}", class.label());
        }
    }

    #[test]
    fn truncation_is_exact() {
        for d in [2u64, 3, 5] {
            let k = QuadField::new(d).unwrap();
            let small = partition_genfun(k, &PartitionClass::all(), 10);
            let large = partition_genfun(k, &PartitionClass::all(), 12);
            assert_eq!(large.truncate(10), small);
        }
    }

    fn arb_qsum(field: QuadField, m: u64) -> impl Strategy<Value = QSum> {
        let mut keys = vec![field.zero()];
        keys.extend(TraceWindow::new(field, m).elements());
        prop::collection::vec((prop::sample::select(keys), -5i64..=5), 0..6).prop_map(
            move |terms| {
                let mut f = QSum::zero(field, m);
                for (k, c) in terms {
                    f.add_term(k, BigInt::from(c));
                }
                f
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 64,
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
            ..ProptestConfig::default()
        })]

        #[test]
        fn ring_laws(
            f in arb_qsum(q2(), 8),
            g in arb_qsum(q2(), 8),
            h in arb_qsum(q2(), 8),
        ) {
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(
                f.mul(&g).unwrap().mul(&h).unwrap(),
                f.mul(&g.mul(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(f.mul(&QSum::one(q2(), 8)).unwrap(), f.clone());
            prop_assert!(f.sub(&f).unwrap().is_zero());
        }
    }
}
