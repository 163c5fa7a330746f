//! Finite enumeration of totally positive integers of bounded trace.
//!
//! Over ℚ(√d) a totally positive `x + yω` has trace `t ≥ 2` and satisfies
//! `t² > d·v²` where `v` is its `√d`-coefficient scaled to be integral, so each
//! trace level is a finite interval of `y`.

use num_bigint::BigInt;
use num_integer::Roots;

use crate::field::{AlgInt, OmegaKind, QuadField};

/// All totally positive integers with trace at most `max_trace`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceWindow {
    pub field: QuadField,
    pub max_trace: u64,
}

impl TraceWindow {
    pub fn new(field: QuadField, max_trace: u64) -> Self {
        TraceWindow { field, max_trace }
    }

    pub fn elements(&self) -> Vec<AlgInt> {
        enumerate_totally_positive(self)
    }
}

/// Totally positive elements of exactly trace `t`, in canonical `(x, y)` order.
pub fn at_trace(field: QuadField, t: u64) -> Vec<AlgInt> {
    let d = field.radicand();
    let mut out = Vec::new();
    match field.omega_kind() {
        OmegaKind::Rational => {
            if t >= 1 {
                out.push(AlgInt::from_int(field, t));
            }
        }
        OmegaKind::Sqrt => {
            if t.is_multiple_of(2) && t > 0 {
                // x = t/2 and d·y² < x²
                let x = (t / 2) as u128;
                let bound = ((x * x) / d as u128).sqrt() as i128 + 1;
                for y in -bound..=bound {
                    if (d as u128) * ((y * y) as u128) < x * x {
                        out.push(coords(field, x as i128, y));
                    }
                }
            }
        }
        OmegaKind::Golden => {
            // trace = 2x + y, and the element is (t + y√d)/2, so d·y² < t²
            let tt = (t as u128) * (t as u128);
            let bound = (tt / d as u128).sqrt() as i128 + 1;
            // the canonical order sorts by x, which decreases as y grows
            for y in (-bound..=bound).rev() {
                if (t as i128 - y) % 2 == 0 && (d as u128) * ((y * y) as u128) < tt {
                    out.push(coords(field, (t as i128 - y) / 2, y));
                }
            }
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

fn coords(field: QuadField, x: i128, y: i128) -> AlgInt {
    AlgInt::from_coords(field, BigInt::from(x), BigInt::from(y)).expect("quadratic field")
}

/// Every totally positive integer with trace ≤ `window.max_trace`, each once,
/// in canonical `(trace, x, y)` order.
pub fn enumerate_totally_positive(window: &TraceWindow) -> Vec<AlgInt> {
    (1..=window.max_trace).flat_map(|t| at_trace(window.field, t)).collect()
}

/// All ordered pairs `(α, β)` of totally positive integers with `α + β = δ`.
/// Returns nothing unless `δ` is totally positive.
pub fn decompositions(delta: &AlgInt) -> Vec<(AlgInt, AlgInt)> {
    if !delta.is_totally_positive() {
        return Vec::new();
    }
    let field = delta.field();
    let t = trace_u64(delta);
    let window = TraceWindow::new(field, t.saturating_sub(field.min_positive_trace()));
    enumerate_totally_positive(&window)
        .into_iter()
        .filter_map(|a| {
            let b = delta - &a;
            b.is_totally_positive().then_some((a, b))
        })
        .collect()
}

/// Trace of a totally nonnegative element as `u64`.
///
/// Panics if the trace is negative or does not fit; enumeration windows are
/// desk-scale by construction.
pub(crate) fn trace_u64(a: &AlgInt) -> u64 {
    u64::try_from(a.trace()).expect("trace fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(v: &[AlgInt]) -> Vec<String> {
        v.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn small_windows() {
        let q2 = QuadField::new(2).unwrap();
        let q3 = QuadField::new(3).unwrap();
        let q = QuadField::rational();
        assert_eq!(show(&TraceWindow::new(q2, 4).elements()), ["1", "2-√2", "2", "2+√2"]);
        assert_eq!(show(&TraceWindow::new(q, 3).elements()), ["1", "2", "3"]);
        assert_eq!(show(&TraceWindow::new(q3, 4).elements()), ["1", "2-√3", "2", "2+√3"]);
    }

    #[test]
    fn golden_window() {
        let q5 = QuadField::new(5).unwrap();
        let v = TraceWindow::new(q5, 4).elements();
        // trace 3: (3±√5)/2; trace 4: 2 only (4² > 5·y² allows |y| ≤ 1, parity forces y even)
        assert_eq!(show(&v), ["1", "(3+√5)/2", "(3-√5)/2", "2"]);
        assert!(v.iter().all(AlgInt::is_totally_positive));
    }

    #[test]
    fn decompositions_examples() {
        let q2 = QuadField::new(2).unwrap();
        let q = QuadField::rational();
        let pairs = |d: AlgInt| -> Vec<(String, String)> {
            decompositions(&d).into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        assert_eq!(pairs(q2.elem(2, 0).unwrap()), [("1".into(), "1".into())]);
        assert_eq!(
            pairs(q.elem(3, 0).unwrap()),
            [("1".to_string(), "2".to_string()), ("2".into(), "1".into())]
        );
        let mut got = pairs(q2.elem(4, 0).unwrap());
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("1", "3"), ("3", "1"), ("2", "2"), ("2-√2", "2+√2"), ("2+√2", "2-√2"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(decompositions(&q2.elem(1, 0).unwrap()).is_empty());
    }

    // Independent completeness check over the coordinate rectangle.
    #[test]
    fn matches_rectangle_scan() {
        for d in [1u64, 2, 3, 5, 6, 7, 13] {
            let k = QuadField::new(d).unwrap();
            for m in 1..=24u64 {
                let listed = TraceWindow::new(k, m).elements();
                let ylim = if k.is_rational() { 0 } else { m as i64 };
                let mut scanned: Vec<AlgInt> = Vec::new();
                for x in -(m as i64)..=m as i64 {
                    for y in -ylim..=ylim {
                        let a = k.elem(x, y).unwrap();
                        if a.is_totally_positive() && a.trace() <= BigInt::from(m) {
                            scanned.push(a);
                        }
                    }
                }
                scanned.sort();
                assert_eq!(listed, scanned, "d={d} M={m}");
            }
        }
    }

    #[test]
    fn windows_are_nested() {
        let k = QuadField::new(3).unwrap();
        let mut prev = Vec::new();
        for m in 1..=16 {
            let cur = TraceWindow::new(k, m).elements();
            assert!(cur.len() >= prev.len());
            assert_eq!(&cur[..prev.len()], &prev[..]);
            prev = cur;
        }
    }

    #[test]
    fn decompositions_symmetric() {
        let k = QuadField::new(5).unwrap();
        for delta in TraceWindow::new(k, 10).elements() {
            let pairs = decompositions(&delta);
            for (a, b) in &pairs {
                assert_eq!(&(a + b), &delta);
                assert!(pairs.contains(&(b.clone(), a.clone())));
            }
        }
    }
}
