//! Ideals of the ring of integers as lattices in Hermite normal form.
//!
//! A nonzero ideal of a quadratic order is a rank-2 ℤ-module. We store the
//! unique basis `{a, b + c·ω}` with `a > 0`, `c > 0` and `0 ≤ b < a`, i.e. the
//! lower-triangular matrix `[[a, 0], [b, c]]` over `{1, ω}`. Over ℚ only `a`
//! is meaningful; `b = 0`, `c = 1` there and the second row is ignored.
//!
//! Ideals are never factored. Membership, products and powers are enough for
//! the valuation and for the set `S` on the bounded-multiplicity side of the
//! ideal form of Glaisher's theorem.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{AlgInt, QuadField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    field: QuadField,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Ideal {
    /// The ideal generated by `gens`, i.e. the ℤ-span of every `g` and `ω·g`.
    pub fn from_generators(gens: &[AlgInt]) -> Result<Ideal> {
        let field = match gens.first() {
            Some(g) => g.field(),
            None => return Err(Error::ZeroIdeal),
        };
        let mut vectors = Vec::with_capacity(gens.len() * 2);
        for g in gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
            vectors.push((g.x().clone(), g.y().clone()));
            if !field.is_rational() {
                let wg = g * &field.omega()?;
                vectors.push((wg.x().clone(), wg.y().clone()));
            }
        }
        Self::hnf(field, vectors)
    }

    pub fn principal(g: &AlgInt) -> Result<Ideal> {
        Self::from_generators(std::slice::from_ref(g))
    }

    /// The whole ring `𝒪`.
    pub fn unit(field: QuadField) -> Ideal {
        Ideal { field, a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    // Row reduction on the ω-column; the vectors with zero ω-part accumulate into `a`.
    fn hnf(field: QuadField, vectors: Vec<(BigInt, BigInt)>) -> Result<Ideal> {
        let mut a = BigInt::zero();
        let mut pivot: Option<(BigInt, BigInt)> = None;
        for (x, y) in vectors {
            if y.is_zero() {
                a = a.gcd(&x);
                continue;
            }
            pivot = Some(match pivot {
                None => (x, y),
                Some((px, py)) => {
                    let e = py.extended_gcd(&y);
                    let g = e.gcd;
                    // (y/g)·pivot − (py/g)·v has zero ω-part
                    let killed = &x * (&py / &g) - &px * (&y / &g);
                    a = a.gcd(&killed);
                    (&px * &e.x + &x * &e.y, g)
                }
            });
        }
        if field.is_rational() {
            if a.is_zero() {
                return Err(Error::ZeroIdeal);
            }
            return Ok(Ideal { field, a, b: BigInt::zero(), c: BigInt::one() });
        }
        let (mut b, mut c) = pivot.ok_or(Error::ZeroIdeal)?;
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if c.is_negative() {
            b = -b;
            c = -c;
        }
        b = b.mod_floor(&a);
        Ok(Ideal { field, a, b, c })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// HNF rows `[[a, 0], [b, c]]`.
    pub fn basis(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a.clone(), BigInt::zero()],
            [self.b.clone(), self.c.clone()],
        ]
    }

    /// The ℤ-basis as field elements.
    pub fn basis_elements(&self) -> Vec<AlgInt> {
        let first = AlgInt::from_int(self.field, self.a.clone());
        if self.field.is_rational() {
            return vec![first];
        }
        let second = AlgInt::from_coords(self.field, self.b.clone(), self.c.clone())
            .expect("quadratic field");
        vec![first, second]
    }

    /// Index `[𝒪 : I]`, which is the absolute norm of the ideal.
    pub fn index(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_unit(&self) -> bool {
        self.index().is_one()
    }

    /// Panics if `elem` belongs to a different field.
    pub fn contains(&self, elem: &AlgInt) -> bool {
        assert_eq!(self.field, elem.field(), "ideal and element fields differ");
        if self.field.is_rational() {
            return elem.x().is_multiple_of(&self.a);
        }
        if !elem.y().is_multiple_of(&self.c) {
            return false;
        }
        let k = elem.y() / &self.c;
        (elem.x() - k * &self.b).is_multiple_of(&self.a)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.basis_elements().iter().all(|g| self.contains(g))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut gens = Vec::new();
        for u in self.basis_elements() {
            for v in other.basis_elements() {
                gens.push(&u * &v);
            }
        }
        Self::from_generators(&gens)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.field);
        for _ in 0..k {
            acc = acc.product(self).expect("same field");
        }
        acc
    }

    /// `ν(δ)`: the largest `k` with `δ ∈ selfᵏ`.
    ///
    /// Defined for any proper nonzero ideal, but only additive
    /// (`ν(αβ) = ν(α) + ν(β)`) when the ideal is prime.
    pub fn valuation(&self, delta: &AlgInt) -> Result<u32> {
        if delta.is_zero() {
            return Err(Error::ZeroValuation);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut k = 0;
        let mut next = self.clone();
        while next.contains(delta) {
            k += 1;
            next = next.product(self)?;
        }
        Ok(k)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis_elements().iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩_Z", gens.join(", "))
    }
}

/// An ideal `𝔞` with a chosen rational integer `d ≥ 2` lying in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlaisherData {
    ideal: Ideal,
    modulus: BigInt,
}

impl GlaisherData {
    /// Fails unless `d ≥ 2` and `d ∈ 𝔞`. Any such `d` is accepted.
    pub fn new(ideal: Ideal, modulus: impl Into<BigInt>) -> Result<GlaisherData> {
        let modulus = modulus.into();
        let as_elem = AlgInt::from_int(ideal.field(), modulus.clone());
        if modulus < BigInt::from(2) || !ideal.contains(&as_elem) {
            return Err(Error::NotInIdeal(modulus.to_string()));
        }
        Ok(GlaisherData { ideal, modulus })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Membership in `S = 𝒪⁺ ∖ ⋃_{j≥0} (𝔞·(dʲ) ∖ (dʲ⁺¹))`.
    ///
    /// With `j₀` the exact power of `d` dividing `δ`, the only union term that
    /// can contain `δ` is `j = j₀`, so `δ ∉ S` iff `δ/d^{j₀} ∈ 𝔞`.
    pub fn in_s(&self, delta: &AlgInt) -> bool {
        if !delta.is_totally_positive() {
            return false;
        }
        let mut reduced = delta.clone();
        while let Some(q) = reduced.divide_by_int(&self.modulus) {
            reduced = q;
        }
        !self.ideal.contains(&reduced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::TraceWindow;

    fn q2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    fn q3() -> QuadField {
        QuadField::new(3).unwrap()
    }

    fn ideal(k: QuadField, gens: &[(i64, i64)]) -> Ideal {
        let gens: Vec<AlgInt> = gens.iter().map(|&(x, y)| k.elem(x, y).unwrap()).collect();
        Ideal::from_generators(&gens).unwrap()
    }

    fn rows(i: &Ideal) -> [[i64; 2]; 2] {
        let b = i.basis();
        let c = |v: &BigInt| i64::try_from(v).unwrap();
        [[c(&b[0][0]), c(&b[0][1])], [c(&b[1][0]), c(&b[1][1])]]
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(rows(&ideal(q2(), &[(0, 1)])), [[2, 0], [0, 1]]);
        assert_eq!(rows(&ideal(q2(), &[(2, 0)])), [[2, 0], [0, 2]]);
        assert_eq!(rows(&ideal(q3(), &[(1, 1)])), [[2, 0], [1, 1]]);
        // two generators: (2, 1+√3) is the same prime above 2
        assert_eq!(ideal(q3(), &[(2, 0), (1, 1)]), ideal(q3(), &[(1, 1)]));
        assert!(matches!(Ideal::from_generators(&[q2().zero()]), Err(Error::ZeroIdeal)));
        assert!(matches!(Ideal::from_generators(&[]), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn golden_ideal() {
        let k = QuadField::new(5).unwrap();
        // √5 = 2ω − 1 generates the ramified prime of index 5
        let p = ideal(k, &[(-1, 2)]);
        assert_eq!(p.index(), BigInt::from(5));
        assert_eq!(p.power(2), ideal(k, &[(5, 0)]));
    }

    #[test]
    fn rational_ideals() {
        let q = QuadField::rational();
        let i = ideal(q, &[(6, 0), (4, 0)]);
        assert_eq!(i, ideal(q, &[(2, 0)]));
        assert!(i.contains(&q.elem(10, 0).unwrap()));
        assert!(!i.contains(&q.elem(5, 0).unwrap()));
        assert_eq!(i.power(3), ideal(q, &[(8, 0)]));
        assert_eq!(i.valuation(&q.elem(24, 0).unwrap()).unwrap(), 3);
    }

    #[test]
    fn membership() {
        let sqrt2 = ideal(q2(), &[(0, 1)]);
        assert!(sqrt2.contains(&q2().elem(6, 2).unwrap()));
        assert!(!sqrt2.contains(&q2().elem(3, 2).unwrap()));
        assert!(sqrt2.contains(&q2().zero()));
        let p = ideal(q3(), &[(1, 1)]);
        assert!(!p.contains(&q3().elem(2, 1).unwrap()));
        for x in -6..6 {
            for y in -6..6 {
                let odd = (x + y) % 2 != 0;
                assert_eq!(p.contains(&q3().elem(x, y).unwrap()), !odd);
            }
        }
    }

    #[test]
    fn products_and_powers() {
        let k = q2();
        let sqrt2 = ideal(k, &[(0, 1)]);
        assert_eq!(sqrt2.power(2), ideal(k, &[(2, 0)]));
        assert_eq!(ideal(k, &[(0, 3)]), ideal(k, &[(3, 0)]).product(&sqrt2).unwrap());
        assert_eq!(sqrt2.product(&Ideal::unit(k)).unwrap(), sqrt2);
        assert_eq!(sqrt2.power(0), Ideal::unit(k));
    }

    #[test]
    fn valuations() {
        let k = q2();
        let sqrt2 = ideal(k, &[(0, 1)]);
        assert_eq!(sqrt2.valuation(&k.elem(6, 2).unwrap()).unwrap(), 2);
        assert_eq!(sqrt2.valuation(&k.elem(2, 1).unwrap()).unwrap(), 1);
        assert_eq!(sqrt2.valuation(&k.one()).unwrap(), 0);
        assert!(matches!(sqrt2.valuation(&k.zero()), Err(Error::ZeroValuation)));
        assert!(matches!(Ideal::unit(k).valuation(&k.one()), Err(Error::UnitIdeal)));
    }

    #[test]
    fn ideal_property_and_hnf_idempotence() {
        for (d, gens) in [
            (2u64, vec![(0, 1)]),
            (2, vec![(0, 3)]),
            (3, vec![(1, 1)]),
            (5, vec![(3, 1), (7, 0)]),
            (7, vec![(3, 1)]),
            (6, vec![(4, 2), (6, 0)]),
        ] {
            let k = QuadField::new(d).unwrap();
            let i = ideal(k, &gens);
            let w = k.omega().unwrap();
            for g in i.basis_elements() {
                assert!(i.contains(&(&g * &w)), "{i} not closed under ω");
            }
            assert_eq!(Ideal::from_generators(&i.basis_elements()).unwrap(), i);
            let [[a, _], [b, c]] = i.basis();
            assert!(a > BigInt::zero() && c > BigInt::zero());
            assert!(b >= BigInt::zero() && b < a);
        }
    }

    #[test]
    fn glaisher_data_requires_membership() {
        let k = q2();
        assert!(GlaisherData::new(ideal(k, &[(0, 1)]), 2).is_ok());
        assert!(GlaisherData::new(ideal(k, &[(0, 1)]), 3).is_err());
        assert!(GlaisherData::new(ideal(k, &[(0, 3)]), 6).is_ok());
        assert!(GlaisherData::new(ideal(k, &[(0, 3)]), 3).is_err());
    }

    #[test]
    fn s_membership_examples() {
        let k = q2();
        let g = GlaisherData::new(ideal(k, &[(0, 1)]), 2).unwrap();
        assert!(g.in_s(&k.elem(2, 0).unwrap()));
        assert!(!g.in_s(&k.elem(2, 1).unwrap()));
        let sqrt2 = ideal(k, &[(0, 1)]);
        for delta in TraceWindow::new(k, 20).elements() {
            assert_eq!(g.in_s(&delta), sqrt2.valuation(&delta).unwrap().is_multiple_of(2), "{delta}");
        }

        let g = GlaisherData::new(ideal(k, &[(0, 3)]), 6).unwrap();
        let three = ideal(k, &[(3, 0)]);
        for delta in TraceWindow::new(k, 20).elements() {
            let v2 = sqrt2.valuation(&delta).unwrap();
            let v3 = three.valuation(&delta).unwrap();
            // 2·ν₃ < ν₂ + 1 avoids the half-integer comparison
            let expected = v2.is_multiple_of(2) || 2 * v3 < v2 + 1;
            assert_eq!(g.in_s(&delta), expected, "{delta}");
        }

        let g = GlaisherData::new(ideal(k, &[(2, 0)]), 2).unwrap();
        assert!(TraceWindow::new(k, 20).elements().iter().all(|d| g.in_s(d)));
    }

    // Literal reading of the union: scan j up to the divisibility bound.
    fn in_s_by_union_scan(g: &GlaisherData, delta: &AlgInt) -> bool {
        let d = g.modulus();
        let k = delta.field();
        let norm = delta.norm().abs();
        let mut bound = 1u32;
        let mut p = d.clone();
        while p <= norm {
            p *= d;
            bound += 1;
        }
        for j in 0..=bound + 1 {
            let dj = AlgInt::from_int(k, d.pow(j));
            let dj1 = AlgInt::from_int(k, d.pow(j + 1));
            let scaled = g.ideal().product(&Ideal::principal(&dj).unwrap()).unwrap();
            if scaled.contains(delta) && !Ideal::principal(&dj1).unwrap().contains(delta) {
                return false;
            }
        }
        true
    }

    #[test]
    fn s_membership_matches_union_scan() {
        let k = q2();
        for (gens, d) in [(vec![(0, 1)], 2), (vec![(0, 3)], 6), (vec![(2, 0)], 2)] {
            let g = GlaisherData::new(ideal(k, &gens), d).unwrap();
            for delta in TraceWindow::new(k, 20).elements() {
                assert_eq!(g.in_s(&delta), in_s_by_union_scan(&g, &delta), "{delta}");
            }
        }
        let k = q3();
        let g = GlaisherData::new(ideal(k, &[(1, 1)]), 2).unwrap();
        for delta in TraceWindow::new(k, 20).elements() {
            assert_eq!(g.in_s(&delta), in_s_by_union_scan(&g, &delta), "{delta}");
        }
    }

    #[test]
    fn prime_valuations_are_additive() {
        let cases = [(2u64, (0i64, 1i64)), (2, (3, 0)), (3, (1, 1))];
        for (d, gen) in cases {
            let k = QuadField::new(d).unwrap();
            let p = ideal(k, &[gen]);
            let elems = TraceWindow::new(k, 20).elements();
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(5) {
                    let lhs = p.valuation(&(a * b)).unwrap();
                    assert_eq!(lhs, p.valuation(a).unwrap() + p.valuation(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn products_contain_products() {
        let k = QuadField::new(5).unwrap();
        let i = ideal(k, &[(3, 1)]);
        let j = ideal(k, &[(2, 0), (1, 1)]);
        let ij = i.product(&j).unwrap();
        let combos = |basis: Vec<AlgInt>| -> Vec<AlgInt> {
            let mut out = Vec::new();
            for s in -2..=2 {
                for t in -2..=2 {
                    out.push(basis[0].scale(s) + basis[1].scale(t));
                }
            }
            out
        };
        for a in combos(i.basis_elements()) {
            for b in combos(j.basis_elements()) {
                assert!(ij.contains(&(&a * &b)));
            }
        }
    }
}
