//! Four-slot presentation of currents and the convolution derived from it.
//!
//! A four-slot term [p, v ⊗ α ⊗ u] carries a group point, a left enveloping
//! word v, a wedge word α, and a right word u read in the negated algebra.
//! The span of such terms surjects onto currents through `reduce`, which
//! folds the right slot into the other two:
//!
//!   reduce [p, v⊗α⊗u] = Σ_{(u)} (p, (A_{p⁻¹} R(u₍₁₎))·v ⊗ [R(u₍₂₎), α])
//!
//! where R is the unsigned word reversal from the negated algebra back into
//! the base one (normalizing with the base bracket). Its companion
//! `to_right_form` rewrites a left slot into the right slot without changing
//! the reduced current:
//!
//!   [p, v⊗α⊗u] -> Σ_{(v)} [p, 1 ⊗ [A_p S(v₍₁₎), α] ⊗ (A_p R'(v₍₂₎))·u]
//!
//! with R' the reversal into the negated algebra and the product taken
//! there. On slot-pure terms two partial products are available:
//! `conv_basic` multiplies middle slots, `conv_mixed` additionally carries
//! a right factor past a left one. Chaining embed, to_right_form,
//! conv_mixed, and reduce recovers the convolution of currents exactly;
//! `derived_convolution` packages that chain.

use crate::context::Context;
use crate::currents::CurrentElement;
use crate::enveloping::{
    ad_extend_uea, mono_coproduct, uea_act_ext, uea_antipode, uea_mul, uea_reverse_into,
    PbwMonomial, UeaElement,
};
use crate::error::{Error, Result};
use crate::exterior::{ad_extend_ext, wedge, ExtElement, ExtMonomial};
use crate::groups::GroupElement;
use crate::linear::LinExpr;
use crate::scalar::Scalar;

/// Basis key of a four-slot term. The left word lives in the base
/// enveloping algebra, the right word in the negated one; both are kept in
/// their own normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FourKey {
    pub point: GroupElement,
    pub left: PbwMonomial,
    pub mid: ExtMonomial,
    pub right: PbwMonomial,
}

/// Finite rational combination of four-slot keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourSlotElement {
    pub(crate) ctx: u64,
    pub(crate) terms: LinExpr<FourKey>,
}

impl FourSlotElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FourKey, &Scalar)> {
        self.terms.terms()
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("adding four-slot terms from different contexts".into()));
        }
        Ok(FourSlotElement { ctx: self.ctx, terms: self.terms.plus(&other.terms) })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("subtracting four-slot terms from different contexts".into()));
        }
        Ok(FourSlotElement { ctx: self.ctx, terms: self.terms.minus(&other.terms) })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        FourSlotElement { ctx: self.ctx, terms: self.terms.scaled(c) }
    }

    pub fn neg(&self) -> Self {
        FourSlotElement { ctx: self.ctx, terms: self.terms.neg() }
    }

    /// True when every term has a unit left slot.
    pub fn left_slots_trivial(&self) -> bool {
        self.terms.keys().all(|k| k.left.is_unit())
    }

    /// True when every term has a unit right slot.
    pub fn right_slots_trivial(&self) -> bool {
        self.terms.keys().all(|k| k.right.is_unit())
    }
}

impl Context {
    fn check_four_key(&self, key: &FourKey) -> Result<()> {
        self.group().contains(&key.point)?;
        let dim = self.dim() as u8;
        for (slot, letter) in [
            ("left", key.left.max_letter()),
            ("wedge", key.mid.max_letter()),
            ("right", key.right.max_letter()),
        ] {
            if let Some(l) = letter {
                if l >= dim {
                    return Err(Error::Index(format!("{slot} letter {l} in dimension {dim}")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn check_fourslot(&self, x: &FourSlotElement) -> Result<()> {
        if x.ctx != self.id() {
            return Err(Error::Context(format!(
                "four-slot element built in another context used in context {}",
                self.label()
            )));
        }
        Ok(())
    }

    pub fn zero_fourslot(&self) -> FourSlotElement {
        FourSlotElement { ctx: self.id(), terms: LinExpr::zero() }
    }

    pub fn fourslot_term(
        &self,
        point: GroupElement,
        left: PbwMonomial,
        mid: ExtMonomial,
        right: PbwMonomial,
        coeff: Scalar,
    ) -> Result<FourSlotElement> {
        let key = FourKey { point, left, mid, right };
        self.check_four_key(&key)?;
        Ok(FourSlotElement { ctx: self.id(), terms: LinExpr::from_term(key, coeff) })
    }

    /// [p, v ⊗ α ⊗ u] expanded termwise over the three factors.
    pub fn fourslot_from_parts(
        &self,
        point: &GroupElement,
        left: &UeaElement,
        mid: &ExtElement,
        right: &UeaElement,
    ) -> Result<FourSlotElement> {
        self.group().contains(point)?;
        let mut out = self.zero_fourslot();
        for (v, cv) in left.terms() {
            for (x, cx) in mid.terms() {
                for (u, cu) in right.terms() {
                    let key = FourKey {
                        point: point.clone(),
                        left: v.clone(),
                        mid: x.clone(),
                        right: u.clone(),
                    };
                    self.check_four_key(&key)?;
                    out.terms.add_term(key, &(cv * cx) * cu);
                }
            }
        }
        Ok(out)
    }

    /// A current (p, v⊗α) as the four-slot term [p, v⊗α⊗1].
    pub fn embed(&self, x: &CurrentElement) -> Result<FourSlotElement> {
        self.check_current(x)?;
        let mut out = self.zero_fourslot();
        for (key, c) in x.terms() {
            out.terms.add_term(
                FourKey {
                    point: key.point.clone(),
                    left: key.even.clone(),
                    mid: key.odd.clone(),
                    right: PbwMonomial::unit(),
                },
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Fold the right slot back into a current. Right words are read in the
    /// negated algebra; the unsigned reversal returns each coproduct leg to
    /// the base algebra, where the first leg multiplies the left slot (after
    /// untwisting by the point) and the second acts on the wedge slot.
    pub fn reduce(&self, x: &FourSlotElement) -> Result<CurrentElement> {
        self.check_fourslot(x)?;
        let alg = self.algebra();
        let mut out = self.zero_current();
        for (key, c) in x.terms() {
            let a_pinv = self.act_matrix_inv(&key.point)?;
            let v_elem = UeaElement::from_term(key.left.clone(), Scalar::one());
            let alpha = ExtElement::from_term(key.mid.clone(), Scalar::one());
            for (u1, u2) in mono_coproduct(&key.right) {
                let r1 = uea_reverse_into(alg, &UeaElement::from_term(u1, Scalar::one()))?;
                let r2 = uea_reverse_into(alg, &UeaElement::from_term(u2, Scalar::one()))?;
                let left = uea_mul(alg, &ad_extend_uea(alg, &a_pinv, &r1)?, &v_elem)?;
                let mid = uea_act_ext(alg, &r2, &alpha)?;
                if mid.is_zero() {
                    continue;
                }
                out = out.plus(&self.current_from_parts(&key.point, &left, &mid)?.scaled(c))?;
            }
        }
        Ok(out)
    }

    /// Rewrite every left slot into the right slot. The reduced current is
    /// unchanged: reduce ∘ to_right_form = reduce.
    pub fn to_right_form(&self, x: &FourSlotElement) -> Result<FourSlotElement> {
        self.check_fourslot(x)?;
        let alg = self.algebra();
        let neg = self.algebra_neg();
        let mut out = self.zero_fourslot();
        for (key, c) in x.terms() {
            let a_p = self.act_matrix(&key.point)?;
            let alpha = ExtElement::from_term(key.mid.clone(), Scalar::one());
            let u_elem = UeaElement::from_term(key.right.clone(), Scalar::one());
            for (v1, v2) in mono_coproduct(&key.left) {
                let s_v1 = uea_antipode(alg, &UeaElement::from_term(v1, Scalar::one()))?;
                let mid = uea_act_ext(alg, &ad_extend_uea(alg, &a_p, &s_v1)?, &alpha)?;
                if mid.is_zero() {
                    continue;
                }
                let rev = uea_reverse_into(neg, &UeaElement::from_term(v2, Scalar::one()))?;
                let right = uea_mul(neg, &ad_extend_uea(neg, &a_p, &rev)?, &u_elem)?;
                out = out
                    .plus(&self.fourslot_from_parts(&key.point, &UeaElement::one(), &mid, &right)?.scaled(c))?;
            }
        }
        Ok(out)
    }

    /// Product of terms whose left and right slots are all units:
    /// [p, 1⊗α⊗1] ∗ [q, 1⊗β⊗1] = [pq, 1 ⊗ α∧A_p β ⊗ 1].
    pub fn conv_basic(&self, x: &FourSlotElement, y: &FourSlotElement) -> Result<FourSlotElement> {
        self.check_fourslot(x)?;
        self.check_fourslot(y)?;
        for (side, z) in [("left operand", x), ("right operand", y)] {
            if !z.left_slots_trivial() || !z.right_slots_trivial() {
                return Err(Error::Invalid(format!(
                    "conv_basic needs unit outer slots, the {side} has a non-unit one"
                )));
            }
        }
        let mut out = self.zero_fourslot();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let pq = self.group().mul(&a.point, &b.point)?;
                let twisted =
                    ad_extend_ext(&self.act_matrix(&a.point)?, &ExtElement::from_term(b.mid.clone(), Scalar::one()))?;
                let mid = wedge(&ExtElement::from_term(a.mid.clone(), Scalar::one()), &twisted);
                out = out.plus(
                    &self
                        .fourslot_from_parts(&pq, &UeaElement::one(), &mid, &UeaElement::one())?
                        .scaled(&(c * d)),
                )?;
            }
        }
        Ok(out)
    }

    /// Product of a right-form term with a left-form term:
    /// [p, 1⊗α⊗u] ∗ [q, w⊗β⊗1] = [pq, w ⊗ α∧A_p β ⊗ u].
    /// The outer slots pass to the outside untouched; only the wedge slots
    /// interact.
    pub fn conv_mixed(&self, x: &FourSlotElement, y: &FourSlotElement) -> Result<FourSlotElement> {
        self.check_fourslot(x)?;
        self.check_fourslot(y)?;
        if !x.left_slots_trivial() {
            return Err(Error::Invalid(
                "conv_mixed needs the left operand in right form (unit left slots)".into(),
            ));
        }
        if !y.right_slots_trivial() {
            return Err(Error::Invalid(
                "conv_mixed needs the right operand in left form (unit right slots)".into(),
            ));
        }
        let mut out = self.zero_fourslot();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let pq = self.group().mul(&a.point, &b.point)?;
                let twisted =
                    ad_extend_ext(&self.act_matrix(&a.point)?, &ExtElement::from_term(b.mid.clone(), Scalar::one()))?;
                let mid = wedge(&ExtElement::from_term(a.mid.clone(), Scalar::one()), &twisted);
                let left = UeaElement::from_term(b.left.clone(), Scalar::one());
                let right = UeaElement::from_term(a.right.clone(), Scalar::one());
                out = out.plus(
                    &self.fourslot_from_parts(&pq, &left, &mid, &right)?.scaled(&(c * d)),
                )?;
            }
        }
        Ok(out)
    }

    /// Convolution computed through the four-slot presentation: embed both
    /// currents, push the left factor into right form, take the mixed
    /// product, and reduce. Agrees with `convolve` on the nose.
    pub fn derived_convolution(
        &self,
        x: &CurrentElement,
        y: &CurrentElement,
    ) -> Result<CurrentElement> {
        let rx = self.to_right_form(&self.embed(x)?)?;
        let mixed = self.conv_mixed(&rx, &self.embed(y)?)?;
        self.reduce(&mixed)
    }

    /// Canonical text for four-slot elements: `[p | v | α | u]` per term.
    pub fn show_fourslot(&self, x: &FourSlotElement) -> String {
        let names = |w: &PbwMonomial| {
            if w.is_unit() {
                "1".to_string()
            } else {
                w.letters()
                    .iter()
                    .map(|&i| self.algebra().name_of(i).to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            }
        };
        crate::algebra::show_terms(x.terms().map(|(k, c)| {
            let mid = if k.mid.is_unit() {
                "1".to_string()
            } else {
                k.mid
                    .letters()
                    .iter()
                    .map(|&i| self.algebra().name_of(i).to_string())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            (
                format!(
                    "[{} | {} | {} | {}]",
                    self.show_group(&k.point),
                    names(&k.left),
                    mid,
                    names(&k.right)
                ),
                c.clone(),
            )
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::contexts;
    use crate::groups::unitriangular;

    fn word(letters: &[u8]) -> PbwMonomial {
        PbwMonomial::new(letters.to_vec()).unwrap()
    }

    fn wedge_word(letters: &[u8]) -> ExtMonomial {
        ExtMonomial::new(letters.to_vec()).unwrap()
    }

    fn current(ctx: &Context, p: &GroupElement, v: &[u8], a: &[u8]) -> CurrentElement {
        ctx.current_term(p.clone(), word(v), wedge_word(a), Scalar::one()).unwrap()
    }

    fn fourslot(
        ctx: &Context,
        p: &GroupElement,
        v: &[u8],
        a: &[u8],
        u: &[u8],
    ) -> FourSlotElement {
        ctx.fourslot_term(p.clone(), word(v), wedge_word(a), word(u), Scalar::one()).unwrap()
    }

    #[test]
    fn reduce_oracle_with_right_letter() {
        // reduce [e, 1 ⊗ e2 ⊗ e1] = (e, e1 ⊗ e2 + 1 ⊗ e3).
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let x = fourslot(&ctx, &e, &[], &[1], &[0]);
        let got = ctx.reduce(&x).unwrap();
        let expect = current(&ctx, &e, &[0], &[1])
            .plus(&current(&ctx, &e, &[], &[2]))
            .unwrap();
        assert_eq!(got, expect, "got {}", ctx.show_current(&got));
    }

    #[test]
    fn reduce_inverts_embed() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::from_int(2), Scalar::one(), Scalar::zero());
        let x = current(&ctx, &p, &[0, 1], &[1, 2])
            .plus(&current(&ctx, &p, &[], &[0]).scaled(&Scalar::ratio(-1, 3)))
            .unwrap();
        assert_eq!(ctx.reduce(&ctx.embed(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn right_form_oracle_for_single_letter() {
        // [e, e1 ⊗ 1 ⊗ 1] -> [e, 1 ⊗ 1 ⊗ e1]: the antipode leg dies on the
        // empty wedge and only the transported letter survives.
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let x = fourslot(&ctx, &e, &[0], &[], &[]);
        let got = ctx.to_right_form(&x).unwrap();
        assert_eq!(got, fourslot(&ctx, &e, &[], &[], &[0]));
        assert!(got.left_slots_trivial());
    }

    #[test]
    fn right_form_preserves_the_reduced_current() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::from_int(-2), Scalar::one());
        for (v, a, u) in [
            (vec![0u8, 1u8], vec![0u8], vec![]),
            (vec![1, 2], vec![1, 2], vec![2u8]),
            (vec![0], vec![0, 1, 2], vec![0, 1]),
        ] {
            let x = ctx
                .fourslot_term(p.clone(), word(&v), wedge_word(&a), word(&u), Scalar::one())
                .unwrap();
            let rewritten = ctx.to_right_form(&x).unwrap();
            assert!(rewritten.left_slots_trivial());
            assert_eq!(
                ctx.reduce(&rewritten).unwrap(),
                ctx.reduce(&x).unwrap(),
                "slot rewrite changed the current for {}",
                ctx.show_fourslot(&x)
            );
        }
    }

    #[test]
    fn basic_product_twists_the_second_wedge() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::zero(), Scalar::zero());
        let q = unitriangular(Scalar::zero(), Scalar::from_int(3), Scalar::one());
        let x = fourslot(&ctx, &p, &[], &[0], &[]);
        let y = fourslot(&ctx, &q, &[], &[1], &[]);
        let got = ctx.conv_basic(&x, &y).unwrap();
        // A_p e2 = e2 + a e3 with a = 1, so the wedge is e1∧e2 + e1∧e3.
        let pq = ctx.group().mul(&p, &q).unwrap();
        let expect = ctx
            .fourslot_term(pq.clone(), word(&[]), wedge_word(&[0, 1]), word(&[]), Scalar::one())
            .unwrap()
            .plus(
                &ctx.fourslot_term(pq, word(&[]), wedge_word(&[0, 2]), word(&[]), Scalar::one())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(got, expect, "got {}", ctx.show_fourslot(&got));
        // Non-unit outer slots are refused.
        let bad = fourslot(&ctx, &p, &[0], &[], &[]);
        assert!(ctx.conv_basic(&bad, &y).is_err());
        assert!(ctx.conv_mixed(&y, &bad).is_ok());
        assert!(ctx.conv_mixed(&bad, &y).is_err());
    }

    #[test]
    fn derived_convolution_matches_direct() {
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let p = unitriangular(Scalar::one(), Scalar::from_int(5), Scalar::zero());
        let q = unitriangular(Scalar::from_int(7), Scalar::one(), Scalar::zero());
        let pairs = [
            (current(&ctx, &e, &[0], &[]), current(&ctx, &e, &[], &[1])),
            (current(&ctx, &p, &[0], &[]), current(&ctx, &q, &[], &[1])),
            (current(&ctx, &p, &[0, 1], &[0]), current(&ctx, &q, &[1], &[1, 2])),
            (current(&ctx, &q, &[2, 2], &[0, 2]), current(&ctx, &p, &[0], &[])),
        ];
        for (x, y) in &pairs {
            let derived = ctx.derived_convolution(x, y).unwrap();
            let direct = ctx.convolve(x, y).unwrap();
            assert_eq!(
                derived,
                direct,
                "mismatch for {} and {}",
                ctx.show_current(x),
                ctx.show_current(y)
            );
        }
        let c3 = contexts::c3();
        let g = GroupElement::Cayley(1);
        let h = GroupElement::Cayley(4);
        let x = current(&c3, &g, &[0, 1], &[2]);
        let y = current(&c3, &h, &[2], &[0, 1]);
        assert_eq!(c3.derived_convolution(&x, &y).unwrap(), c3.convolve(&x, &y).unwrap());
    }

    #[test]
    fn rendering_shows_all_four_slots() {
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let x = fourslot(&ctx, &e, &[0], &[1, 2], &[2]).scaled(&Scalar::ratio(2, 3));
        assert_eq!(ctx.show_fourslot(&x), "2/3*[e | e1 | e2^e3 | e3]");
        assert_eq!(ctx.show_fourslot(&ctx.zero_fourslot()), "0");
    }

    #[test]
    fn cross_context_fourslots_are_rejected() {
        let a = contexts::c1();
        let b = contexts::c1();
        let x = a.zero_fourslot();
        assert!(b.reduce(&x).is_err());
        assert!(b.to_right_form(&x).is_err());
    }
}
